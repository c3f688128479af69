use biosc_core::algebra::{
    block_residual, commutator, distorted_algebra_residuals, hamiltonian_matrix, hubbard, interior_block, ladder_a,
    ladder_cw, quadratic_algebra_residuals, supported_on_edges, transform_operator, transform_operator_bar,
    verify_quad1, TruncatedOperator,
};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

const EPS_SET: [f64; 4] = [0.5, -1.0, -3.0, -5.0];
const W_SET: [f64; 6] = [0.0, 0.1, 0.5, 1.0, 2.0, 3.0];

proptest! {
    #[test]
    fn hubbard_multiplication_rule(n in 0usize..12, m in 0usize..12, k in 0usize..12, l in 0usize..12) {
        let dim = 12;
        let lhs = hubbard(n, m, dim).unwrap().mul(&hubbard(k, l, dim).unwrap()).unwrap();
        let rhs = if m == k { hubbard(n, l, dim).unwrap().entries } else { DMatrix::zeros(dim, dim) };
        prop_assert_eq!(lhs.entries, rhs);
    }

    #[test]
    fn quadratic_algebra_any_ground_energy(eps in -8.0f64..0.99, dim in 6usize..40) {
        for (tag, r) in quadratic_algebra_residuals(eps, dim).unwrap() {
            prop_assert!(r.relative < 1e-12, "{} at eps {}: {:?}", tag, eps, r);
        }
        prop_assert!(verify_quad1(eps, dim).unwrap().relative < 1e-12);
    }

    #[test]
    fn transform_and_bar_are_adjoint_related(eps in -5.0f64..0.9, seed in 0u64..1000) {
        let dim = 8;
        let o = TruncatedOperator::new(
            "O",
            DMatrix::from_fn(dim, dim, |r, c| {
                let t = (seed as f64 + 1.0) * (r as f64 + 2.0 * c as f64 + 1.0);
                C64::new(t.sin(), (1.3 * t).cos())
            }),
        );
        let bar = transform_operator_bar(&o, eps).unwrap();
        let direct = transform_operator(&o.adjoint(), eps).unwrap().adjoint();
        prop_assert_eq!(&bar.entries, &direct.entries);
        // real weights: the transform commutes with †
        let t = transform_operator(&o, eps).unwrap();
        let diff = (&t.adjoint().entries - &transform_operator(&o.adjoint(), eps).unwrap().entries).iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-12);
    }
}

#[test]
fn algebra_residuals_over_the_full_table() {
    for dim in [10, 30, 100] {
        for eps in EPS_SET {
            for (tag, r) in quadratic_algebra_residuals(eps, dim).unwrap() {
                // N = 100 entries reach ~1e7, so absolute round-off is ~1e-9
                assert!(r.relative < 1e-9, "{tag} N={dim} eps={eps}: {r:?}");
            }
            assert!(verify_quad1(eps, dim).unwrap().relative < 1e-9);
            for w in W_SET {
                for (tag, r) in distorted_algebra_residuals(w, eps, dim).unwrap() {
                    assert!(r.value < 1e-9, "{tag} N={dim} w={w}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn truncation_errors_live_on_the_edge() {
    let dim = 20;
    for eps in EPS_SET {
        let h = hamiltonian_matrix(eps, dim).unwrap();
        let (a, ap) = ladder_a(eps, dim).unwrap();
        let q = h.polynomial(&[eps * eps, -4.0 * eps, 3.0]).scale(C64::new(2.0, 0.0));
        let gap = &commutator(&a, &ap).unwrap().entries - &q.entries;
        let scale = q.entries.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(supported_on_edges(&gap, 1e-13 * scale));
        assert!(!supported_on_edges(&gap.map(|v| v + 1.0), 1e-13 * scale));
        let r = block_residual(&commutator(&a, &ap).unwrap().entries, &q.entries, interior_block(dim));
        assert!(r.value < 1e-10);
    }
    for w in W_SET {
        let (c, cp, iw) = ladder_cw(w, dim).unwrap();
        let gap = &commutator(&c, &cp).unwrap().entries - &iw.entries.map(|v| v * 2.0);
        assert!(supported_on_edges(&gap, 1e-12));
    }
}
