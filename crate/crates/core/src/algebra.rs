//! Truncated matrix representations on span{ψ₀, …, ψ_{N−1}} and checks of
//! the two ladder algebras.
//!
//! Ladder products reach two levels past the truncation, so identities are
//! compared on the leading (N−2)×(N−2) block.

use crate::spectral::oscillator_energy;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("index ({row}, {col}) out of bounds for dimension {dim}")]
    Bounds { row: usize, col: usize, dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("dimension {dim} too small, need at least {needed}")]
    TooSmall { dim: usize, needed: usize },
    #[error("parameter `{field}` = {value} out of range: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
}

/// Dense complex N×N operator with a label for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub dim: usize,
    pub entries: DMatrix<C64>,
    pub label: String,
}

impl TruncatedOperator {
    pub fn new(label: impl Into<String>, entries: DMatrix<C64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operators are square");
        Self { dim: entries.nrows(), entries, label: label.into() }
    }

    pub fn zeros(label: impl Into<String>, dim: usize) -> Self {
        Self::new(label, DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::new("I", DMatrix::identity(dim, dim))
    }

    pub fn from_real(label: impl Into<String>, dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        Self::new(label, DMatrix::from_fn(dim, dim, |r, c| C64::new(f(r, c), 0.0)))
    }

    pub fn diagonal(label: impl Into<String>, diag: &[f64]) -> Self {
        let dim = diag.len();
        Self::from_real(label, dim, |r, c| if r == c { diag[r] } else { 0.0 })
    }

    fn same_dim(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_dim(other)?;
        Ok(Self::new(format!("{}·{}", self.label, other.label), &self.entries * &other.entries))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_dim(other)?;
        Ok(Self::new(format!("{}+{}", self.label, other.label), &self.entries + &other.entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_dim(other)?;
        Ok(Self::new(format!("{}-{}", self.label, other.label), &self.entries - &other.entries))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(format!("{s}·{}", self.label), self.entries.map(|v| v * s))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(format!("{}†", self.label), self.entries.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self::new(format!("{}ᵀ", self.label), self.entries.transpose())
    }

    /// Action on a coefficient vector.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let col = nalgebra::DVector::from_column_slice(v);
        (&self.entries * col).iter().copied().collect()
    }

    /// Polynomial p(self) given coefficients c₀ + c₁M + c₂M² + ….
    pub fn polynomial(&self, coeffs: &[f64]) -> Self {
        let mut acc = DMatrix::<C64>::zeros(self.dim, self.dim);
        let mut power = DMatrix::<C64>::identity(self.dim, self.dim);
        for &c in coeffs {
            acc += power.map(|v| v * c);
            power = &power * &self.entries;
        }
        Self::new(format!("p({})", self.label), acc)
    }
}

/// Worst entry of a difference, with where it sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// max |entry| over the block that was checked
    pub value: f64,
    /// `value` divided by max(1, largest entry of the reference)
    pub relative: f64,
    pub row: usize,
    pub col: usize,
}

impl Residual {
    pub const ZERO: Residual = Residual { value: 0.0, relative: 0.0, row: 0, col: 0 };

    pub fn worse(self, other: Residual) -> Residual {
        if other.value > self.value {
            other
        } else {
            self
        }
    }
}

/// Compare `lhs` with `rhs` on the leading `block`×`block` entries.
pub fn block_residual(lhs: &DMatrix<C64>, rhs: &DMatrix<C64>, block: usize) -> Residual {
    let mut out = Residual::ZERO;
    let mut scale = 1.0f64;
    for c in 0..block {
        for r in 0..block {
            scale = scale.max(rhs[(r, c)].norm());
            let d = (lhs[(r, c)] - rhs[(r, c)]).norm();
            if d > out.value {
                out = Residual { value: d, relative: 0.0, row: r, col: c };
            }
        }
    }
    out.relative = out.value / scale;
    out
}

/// Leading block used for identity checks.
pub fn interior_block(dim: usize) -> usize {
    dim.saturating_sub(2)
}

fn require_dim(dim: usize, needed: usize) -> Result<(), AlgebraError> {
    if dim < needed {
        return Err(AlgebraError::TooSmall { dim, needed });
    }
    Ok(())
}

fn require_eps(eps: f64) -> Result<(), AlgebraError> {
    if !(eps < 1.0) {
        return Err(AlgebraError::Domain { field: "eps", value: eps, reason: "must be below 1" });
    }
    Ok(())
}

/// X^{n,m}: 1 at (n, m).
pub fn hubbard(n: usize, m: usize, dim: usize) -> Result<TruncatedOperator, AlgebraError> {
    if n >= dim || m >= dim {
        return Err(AlgebraError::Bounds { row: n, col: m, dim });
    }
    Ok(TruncatedOperator::from_real(format!("X^{{{n},{m}}}"), dim, |r, c| {
        if r == n && c == m {
            1.0
        } else {
            0.0
        }
    }))
}

/// diag(ε, 1, 3, 5, …).
pub fn hamiltonian_matrix(eps: f64, dim: usize) -> Result<TruncatedOperator, AlgebraError> {
    require_eps(eps)?;
    let diag: Vec<f64> = (0..dim)
        .map(|k| if k == 0 { eps } else { oscillator_energy(k - 1) })
        .collect();
    Ok(TruncatedOperator::diagonal("H", &diag))
}

/// g(n) = √(2(n+1)(Eₙ−ε)(Eₙ₊₁−ε)), the weight of 𝒜|ψₙ₊₂⟩ → |ψₙ₊₁⟩.
pub fn ladder_weight(n: usize, eps: f64) -> f64 {
    (2.0 * (n as f64 + 1.0) * (oscillator_energy(n) - eps) * (oscillator_energy(n + 1) - eps)).sqrt()
}

/// (𝒜, 𝒜⁺): 𝒜[n+1][n+2] = g(n), 𝒜⁺ its transpose; ψ₀ and ψ₁ are annihilated.
pub fn ladder_a(eps: f64, dim: usize) -> Result<(TruncatedOperator, TruncatedOperator), AlgebraError> {
    require_eps(eps)?;
    let lower = TruncatedOperator::from_real("A", dim, |r, c| {
        if r >= 1 && c == r + 1 {
            ladder_weight(r - 1, eps)
        } else {
            0.0
        }
    });
    let raise = TruncatedOperator::new("A+", lower.entries.transpose());
    Ok((lower, raise))
}

/// (𝒞_w, 𝒞_w⁺, I_w): 𝒞_w[n+1][n+2] = √(2(w+n)), I_w = diag(0, w, 1, 1, …).
pub fn ladder_cw(
    w: f64,
    dim: usize,
) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator), AlgebraError> {
    if !(w >= 0.0) || !w.is_finite() {
        return Err(AlgebraError::Domain { field: "w", value: w, reason: "must be non-negative" });
    }
    let lower = TruncatedOperator::from_real("C_w", dim, |r, c| {
        if r >= 1 && c == r + 1 {
            (2.0 * (w + (r - 1) as f64)).sqrt()
        } else {
            0.0
        }
    });
    let raise = TruncatedOperator::new("C_w+", lower.entries.transpose());
    let diag: Vec<f64> = (0..dim)
        .map(|k| match k {
            0 => 0.0,
            1 => w,
            _ => 1.0,
        })
        .collect();
    Ok((lower, raise, TruncatedOperator::diagonal("I_w", &diag)))
}

/// X = (𝒜⁺ + 𝒜)/2, P = i(𝒜⁺ − 𝒜)/2.
pub fn quadratures(eps: f64, dim: usize) -> Result<(TruncatedOperator, TruncatedOperator), AlgebraError> {
    let (a, ap) = ladder_a(eps, dim)?;
    let x = TruncatedOperator::new("X", (&ap.entries + &a.entries).map(|v| v * 0.5));
    let p = TruncatedOperator::new("P", (&ap.entries - &a.entries).map(|v| v * C64::new(0.0, 0.5)));
    Ok((x, p))
}

pub fn commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator, AlgebraError> {
    a.same_dim(b)?;
    let m = &a.entries * &b.entries - &b.entries * &a.entries;
    Ok(TruncatedOperator::new(format!("[{},{}]", a.label, b.label), m))
}

/// (3H − ε)(H − ε) as a matrix.
fn quadratic_in_h(h: &TruncatedOperator, eps: f64) -> TruncatedOperator {
    // (3H − ε)(H − ε) = 3H² − 4εH + ε²
    h.polynomial(&[eps * eps, -4.0 * eps, 3.0])
}

/// Residuals of the quadratic algebra, keyed by identity:
/// `Acomm1` [𝒜,𝒜⁺] = 2(3H−ε)(H−ε); `Acomm2` [H,𝒜] = −2𝒜, [H,𝒜⁺] = 2𝒜⁺;
/// `Acomm3` the same rules for the barred generators; `Acomm4` the X, P rules.
pub fn quadratic_algebra_residuals(eps: f64, dim: usize) -> Result<Vec<(&'static str, Residual)>, AlgebraError> {
    require_dim(dim, 5)?;
    let block = interior_block(dim);
    let h = hamiltonian_matrix(eps, dim)?;
    let (a, ap) = ladder_a(eps, dim)?;
    let q = quadratic_in_h(&h, eps);

    let rules = |a: &TruncatedOperator, ap: &TruncatedOperator, h: &TruncatedOperator| -> Result<(Residual, Residual), AlgebraError> {
        let comm = commutator(a, ap)?;
        let first = block_residual(&comm.entries, &q.entries.map(|v| v * 2.0), block);
        let ha = commutator(h, a)?;
        let hap = commutator(h, ap)?;
        let second = block_residual(&ha.entries, &a.entries.map(|v| -v * 2.0), block)
            .worse(block_residual(&hap.entries, &ap.entries.map(|v| v * 2.0), block));
        Ok((first, second))
    };
    let (acomm1, acomm2) = rules(&a, &ap, &h)?;

    // barred generators: Ā = (𝒜⁺)†, Ā⁺ = 𝒜†, H̄ = H†
    let (bar1, bar2) = rules(&ap.adjoint(), &a.adjoint(), &h.adjoint())?;
    let acomm3 = bar1.worse(bar2);

    let (x, p) = quadratures(eps, dim)?;
    let i = C64::new(0.0, 1.0);
    let xp = commutator(&x, &p)?;
    let hx = commutator(&h, &x)?;
    let hp = commutator(&h, &p)?;
    let acomm4 = block_residual(&xp.entries, &q.entries.map(|v| v * i), block)
        .worse(block_residual(&hx.entries, &p.entries.map(|v| v * (-2.0 * i)), block))
        .worse(block_residual(&hp.entries, &x.entries.map(|v| v * (2.0 * i)), block));

    Ok(vec![("Acomm1", acomm1), ("Acomm2", acomm2), ("Acomm3", acomm3), ("Acomm4", acomm4)])
}

/// Worst of [𝒜,𝒜⁺] − 2(3H−ε)(H−ε), [H,𝒜] + 2𝒜 and [H,𝒜⁺] − 2𝒜⁺ on the interior block.
pub fn verify_quadratic_algebra(eps: f64, dim: usize) -> Result<Residual, AlgebraError> {
    let all = quadratic_algebra_residuals(eps, dim)?;
    Ok(all[0].1.worse(all[1].1))
}

/// `rcom2` [𝒞_w,𝒞_w⁺] = 2I_w and `dist2` [H,𝒞_w] = −2𝒞_w, [H,𝒞_w⁺] = 2𝒞_w⁺.
pub fn distorted_algebra_residuals(w: f64, eps: f64, dim: usize) -> Result<Vec<(&'static str, Residual)>, AlgebraError> {
    require_dim(dim, 5)?;
    let block = interior_block(dim);
    let h = hamiltonian_matrix(eps, dim)?;
    let (c, cp, iw) = ladder_cw(w, dim)?;
    let rcom2 = block_residual(&commutator(&c, &cp)?.entries, &iw.entries.map(|v| v * 2.0), block);
    let dist2 = block_residual(&commutator(&h, &c)?.entries, &c.entries.map(|v| -v * 2.0), block)
        .worse(block_residual(&commutator(&h, &cp)?.entries, &cp.entries.map(|v| v * 2.0), block));
    Ok(vec![("rcom2", rcom2), ("dist2", dist2)])
}

pub fn verify_distorted_algebra(w: f64, eps: f64, dim: usize) -> Result<Residual, AlgebraError> {
    let all = distorted_algebra_residuals(w, eps, dim)?;
    Ok(all[0].1.worse(all[1].1))
}

/// 𝒪[m+1][n+1] = √((E_m−ε)(E_n−ε)) O[m][n]; the result is one larger.
pub fn transform_operator(o: &TruncatedOperator, eps: f64) -> Result<TruncatedOperator, AlgebraError> {
    require_eps(eps)?;
    let dim = o.dim + 1;
    let shift = |k: usize| (oscillator_energy(k) - eps).sqrt();
    let m = DMatrix::from_fn(dim, dim, |r, c| {
        if r == 0 || c == 0 {
            C64::new(0.0, 0.0)
        } else {
            o.entries[(r - 1, c - 1)] * (shift(r - 1) * shift(c - 1))
        }
    });
    Ok(TruncatedOperator::new(format!("B{}A", o.label), m))
}

/// 𝒪̄ = A†OB† in the barred basis: same weights applied to O† and then
/// adjointed back, so 𝒪̄ = transform(O†)†.
pub fn transform_operator_bar(o: &TruncatedOperator, eps: f64) -> Result<TruncatedOperator, AlgebraError> {
    Ok(transform_operator(&o.adjoint(), eps)?.adjoint())
}

/// `quad1` P² + X² = [H(H−ε) + 2](H−ε) on the interior block.
pub fn verify_quad1(eps: f64, dim: usize) -> Result<Residual, AlgebraError> {
    require_dim(dim, 5)?;
    let (x, p) = quadratures(eps, dim)?;
    let h = hamiltonian_matrix(eps, dim)?;
    let lhs = &p.entries * &p.entries + &x.entries * &x.entries;
    // [H(H−ε)+2](H−ε) = H³ − 2εH² + (ε² + 2)H − 2ε
    let rhs = h.polynomial(&[-2.0 * eps, eps * eps + 2.0, -2.0 * eps, 1.0]);
    Ok(block_residual(&lhs, &rhs.entries, interior_block(dim)))
}

/// Oscillator annihilator â on the φ-basis: â[n−1][n] = √(2n).
pub fn oscillator_annihilation(dim: usize) -> TruncatedOperator {
    TruncatedOperator::from_real("a", dim, |r, c| if c == r + 1 { (2.0 * c as f64).sqrt() } else { 0.0 })
}

pub fn oscillator_creation(dim: usize) -> TruncatedOperator {
    let a = oscillator_annihilation(dim);
    TruncatedOperator::new("a+", a.entries.transpose())
}

/// N̂ = diag(0, 1, 2, …).
pub fn number_operator(dim: usize) -> TruncatedOperator {
    let diag: Vec<f64> = (0..dim).map(|k| k as f64).collect();
    TruncatedOperator::diagonal("N", &diag)
}

/// ϑ_w(n, ε) = √(2(w+n) / ((2n+3−ε)(2n+1−ε))).
pub fn distortion_weight(w: f64, n: usize, eps: f64) -> f64 {
    let n = n as f64;
    (2.0 * (w + n) / ((2.0 * n + 3.0 - eps) * (2.0 * n + 1.0 - eps))).sqrt()
}

/// (𝒜_osc, 𝒞_osc) on the φ-basis: 𝒜_osc = (2N̂)â and 𝒞_osc = â_{f_w}†â² with
/// â_{f_w}†[n+1][n] = ϑ_w(n, −1).
pub fn oscillator_limit_ops(w: f64, dim: usize) -> Result<(TruncatedOperator, TruncatedOperator), AlgebraError> {
    if !(w > 0.0) {
        return Err(AlgebraError::Domain { field: "w", value: w, reason: "must be positive" });
    }
    let a = oscillator_annihilation(dim);
    let two_n = number_operator(dim).scale(C64::new(2.0, 0.0));
    let a_osc = TruncatedOperator::new("A_osc", &two_n.entries * &a.entries);
    let f_dag = TruncatedOperator::from_real("a_fw+", dim, |r, c| {
        if r == c + 1 {
            distortion_weight(w, c, -1.0)
        } else {
            0.0
        }
    });
    let c_osc = TruncatedOperator::new("C_osc", &f_dag.entries * &a.entries * &a.entries);
    Ok((a_osc, c_osc))
}

/// True when every entry of `m` outside the last two rows/columns is below `tol`.
pub fn supported_on_edges(m: &DMatrix<C64>, tol: f64) -> bool {
    let block = interior_block(m.nrows());
    (0..block).all(|c| (0..block).all(|r| m[(r, c)].norm() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn hubbard_rules() {
        let x00 = hubbard(0, 0, 5).unwrap();
        assert_eq!(x00.mul(&x00).unwrap().entries, x00.entries);
        let p = hubbard(1, 2, 5).unwrap().mul(&hubbard(2, 3, 5).unwrap()).unwrap();
        assert_eq!(p.entries, hubbard(1, 3, 5).unwrap().entries);
        let z = hubbard(1, 2, 5).unwrap().mul(&hubbard(3, 4, 5).unwrap()).unwrap();
        assert_eq!(max_abs(&z.entries), 0.0);
        assert!(matches!(hubbard(5, 0, 5), Err(AlgebraError::Bounds { .. })));
        let c = commutator(&hubbard(1, 2, 4).unwrap(), &hubbard(2, 1, 4).unwrap()).unwrap();
        let expect = hubbard(1, 1, 4).unwrap().sub(&hubbard(2, 2, 4).unwrap()).unwrap();
        assert_eq!(c.entries, expect.entries);
    }

    #[test]
    fn hamiltonian_examples() {
        let h = hamiltonian_matrix(-1.0, 4).unwrap();
        let d: Vec<f64> = (0..4).map(|k| h.entries[(k, k)].re).collect();
        assert_eq!(d, vec![-1.0, 1.0, 3.0, 5.0]);
        assert_eq!(hamiltonian_matrix(0.5, 4).unwrap().entries.trace().re, 9.5);
        let other = TruncatedOperator::diagonal("D", &[2.0, -1.0, 0.5, 7.0]);
        assert_eq!(max_abs(&commutator(&h, &other).unwrap().entries), 0.0);
        assert!(hamiltonian_matrix(1.0, 4).is_err());
    }

    #[test]
    fn ladder_a_structure() {
        assert_eq!(ladder_weight(0, -1.0), 4.0);
        let (a, ap) = ladder_a(-1.0, 8).unwrap();
        assert_eq!(a.entries[(1, 2)].re, 4.0);
        let e0 = vec![C64::new(1.0, 0.0), C64::default(), C64::default(), C64::default(), C64::default(), C64::default(), C64::default(), C64::default()];
        let mut e1 = e0.clone();
        e1.swap(0, 1);
        assert!(a.apply(&e0).iter().all(|v| v.norm() == 0.0));
        assert!(a.apply(&e1).iter().all(|v| v.norm() == 0.0));
        assert!(ap.apply(&e0).iter().all(|v| v.norm() == 0.0));
        assert_eq!(ap.entries, a.entries.transpose());
    }

    #[test]
    fn ladder_cw_structure() {
        let (c, cp, iw) = ladder_cw(1.0, 6).unwrap();
        for n in 0..4 {
            assert!((c.entries[(n + 1, n + 2)].re - (2.0 * n as f64 + 2.0).sqrt()).abs() < 1e-15);
        }
        let e = |k: usize| {
            let mut v = vec![C64::default(); 6];
            v[k] = C64::new(1.0, 0.0);
            v
        };
        assert!(c.apply(&e(0)).iter().chain(c.apply(&e(1)).iter()).all(|v| v.norm() == 0.0));
        assert!(cp.apply(&e(0)).iter().all(|v| v.norm() == 0.0));
        assert_eq!(iw.entries[(1, 1)].re, 1.0);
        let (_, _, iw0) = ladder_cw(0.0, 5).unwrap();
        let d: Vec<f64> = (0..5).map(|k| iw0.entries[(k, k)].re).collect();
        assert_eq!(d, vec![0.0, 0.0, 1.0, 1.0, 1.0]);
        assert!(ladder_cw(-0.1, 5).is_err());
    }

    #[test]
    fn quadrature_structure() {
        let (x, p) = quadratures(-3.0, 10).unwrap();
        for k in 0..10 {
            assert_eq!(x.entries[(0, k)].norm() + x.entries[(k, 0)].norm(), 0.0);
            assert_eq!(p.entries[(0, k)].norm() + p.entries[(k, 0)].norm(), 0.0);
        }
        assert_eq!(x.entries, x.entries.transpose());
        assert!(x.entries.iter().all(|v| v.im == 0.0));
        assert!(p.entries.iter().all(|v| v.re == 0.0));
        assert_eq!(p.entries, -p.entries.transpose());
    }

    #[test]
    fn algebras_hold_on_interior() {
        for eps in [0.5, -1.0, -3.0, -5.0] {
            for (tag, r) in quadratic_algebra_residuals(eps, 30).unwrap() {
                assert!(r.value < 1e-9, "{tag} eps {eps}: {r:?}");
            }
            assert!(verify_quad1(eps, 30).unwrap().value < 1e-9);
        }
        for w in [0.0, 0.1, 0.5, 1.0, 2.0, 3.0] {
            assert!(verify_distorted_algebra(w, -1.0, 30).unwrap().value < 1e-12);
        }
    }

    #[test]
    fn truncation_residue_sits_on_edges() {
        let eps = -3.0;
        let dim = 12;
        let h = hamiltonian_matrix(eps, dim).unwrap();
        let (a, ap) = ladder_a(eps, dim).unwrap();
        let q = quadratic_in_h(&h, eps);
        let diff = &commutator(&a, &ap).unwrap().entries - q.entries.map(|v| v * 2.0);
        assert!(supported_on_edges(&diff, 1e-12));
        assert!(max_abs(&diff) > 1.0);
    }

    #[test]
    fn transforms() {
        let eps = -3.0;
        let n = 6;
        let id = transform_operator(&TruncatedOperator::identity(n), eps).unwrap();
        let h = hamiltonian_matrix(eps, n + 1).unwrap();
        let h_minus = h.sub(&TruncatedOperator::identity(n + 1).scale(C64::new(eps, 0.0))).unwrap();
        let mut expect = h_minus.entries.clone();
        expect[(0, 0)] = C64::default();
        assert!(max_abs(&(&id.entries - &expect)) < 1e-14);

        let osc_h = TruncatedOperator::diagonal("H", &(0..n).map(oscillator_energy).collect::<Vec<_>>());
        let e = transform_operator(&osc_h, eps).unwrap();
        let expect = &h.entries * &h_minus.entries;
        let mut expect = expect.clone();
        expect[(0, 0)] = C64::default();
        assert!(max_abs(&(&e.entries - &expect)) < 1e-12);

        let a_t = transform_operator(&oscillator_annihilation(n), eps).unwrap();
        let (a, _) = ladder_a(eps, n + 1).unwrap();
        assert!(max_abs(&(&a_t.entries - &a.entries)) < 1e-12);

        let bar = transform_operator_bar(&oscillator_creation(n), eps).unwrap();
        assert!(max_abs(&(&bar.entries - &a_t.entries.adjoint())).abs() < 1e-12);
    }

    #[test]
    fn oscillator_limit_matches_ladders() {
        assert_eq!(distortion_weight(1.0, 0, -1.0), 0.5);
        for w in [0.1, 1.0, 1.5, 3.0] {
            let (a_osc, c_osc) = oscillator_limit_ops(w, 20).unwrap();
            let (a, _) = ladder_a(-1.0, 20).unwrap();
            let (c, _, _) = ladder_cw(w, 20).unwrap();
            assert!(max_abs(&(&a_osc.entries - &a.entries)) < 1e-12);
            assert!(max_abs(&(&c_osc.entries - &c.entries)) < 1e-12);
        }
    }
}
