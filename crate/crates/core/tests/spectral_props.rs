use biosc_core::model::{Grid, ModelParams};
use biosc_core::spectral::{biorthogonality_from, level_energy, SpectralCache};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ModelParams> {
    (-5.0f64..0.9, 0.2f64..2.0, 0.2f64..2.0, 0.0f64..0.9).prop_map(|(eps, a, c, frac)| {
        let b = frac * 2.0 * (a * c).sqrt();
        ModelParams::with_lambda_from_constraint(eps, a, b, c).unwrap()
    })
}

fn grid() -> Grid {
    Grid::new(-10.0, 10.0, 2001).unwrap()
}

fn fine_grid() -> Grid {
    Grid::new(-10.0, 10.0, 4001).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn excited_states_solve_the_partner_equation(p in params()) {
        // residuals are finite-difference error: either already tiny or shrinking at 4th order
        let coarse = SpectralCache::new(&p, &grid()).unwrap();
        let fine = SpectralCache::new(&p, &fine_grid()).unwrap();
        for n in 0..=8 {
            let st = coarse.psi_excited(n);
            prop_assert_eq!(st.energy, level_energy(n + 1, p.eps));
            let r = coarse.schrodinger_residual(&st).unwrap();
            let rf = fine.schrodinger_residual(&fine.psi_excited(n)).unwrap();
            prop_assert!(r < 1e-5 || rf < r / 10.0, "n = {}: {} then {}", n, r, rf);
            let r = coarse.reversal_residual(n).unwrap();
            let rf = fine.reversal_residual(n).unwrap();
            prop_assert!(r < 1e-6 || rf < r / 3.0, "n = {}: {} then {}", n, r, rf);
        }
    }

    #[test]
    fn gram_matrix_is_identity(p in params()) {
        let cache = SpectralCache::new(&p, &grid()).unwrap();
        let report = biorthogonality_from(&cache, 6).unwrap();
        prop_assert!(report.max_deviation < 1e-6, "{}", report.max_deviation);
    }

    #[test]
    fn ground_state_is_annihilated(p in params()) {
        let cache = SpectralCache::new(&p, &grid()).unwrap();
        let g = cache.psi_ground().unwrap();
        prop_assert_eq!(g.energy, p.eps);
        let r = cache.annihilation_residual(&g).unwrap();
        let fine = SpectralCache::new(&p, &fine_grid()).unwrap();
        let rf = fine.annihilation_residual(&fine.psi_ground().unwrap()).unwrap();
        prop_assert!(r < 1e-6 || rf < r / 3.0, "{} then {}", r, rf);
    }
}

#[test]
fn spectrum_is_ground_plus_oscillator_ladder() {
    let p = ModelParams::pt_symmetric(-3.0);
    let cache = SpectralCache::new(&p, &grid()).unwrap();
    let energies: Vec<f64> = cache.states(5).unwrap().iter().map(|s| s.energy).collect();
    assert_eq!(energies, vec![-3.0, 1.0, 3.0, 5.0, 7.0]);
}
