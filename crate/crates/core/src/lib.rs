//! Non-Hermitian oscillators built by a complex Darboux transformation of
//! the harmonic oscillator: potentials, bi-orthogonal eigenfunctions, the
//! quadratic and distorted ladder algebras, coherent states and their
//! Fock–Bargmann representation.

pub mod specfun;
pub mod model;
pub mod spectral;
pub mod algebra;
pub mod expm;
pub mod coherent;
pub mod bargmann;
