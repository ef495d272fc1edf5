use proptest::prelude::*;
use telecloning::cloner::{
    ansatz_state, gamma_matrix, normalization_residual, solve_weights, symmetric_fidelity, weights_from_beta,
    CloneWeights,
};
use telecloning::linalg::{hermitian_eig, DenseOperator, C64};
use telecloning::monogamy::{singlet_monogamy_gap, FractionProfile};

fn weights_strategy(max_clones: usize) -> impl Strategy<Value = CloneWeights> {
    prop::collection::vec(0.01f64..1.0, 1..=max_clones).prop_map(|raw| CloneWeights::normalize(raw).unwrap())
}

#[test]
fn symmetric_solutions_match_closed_form() {
    for n in 1..=6 {
        for d in 2..=5 {
            let sol = solve_weights(&CloneWeights::uniform(n).unwrap(), d).unwrap();
            assert!((sol.global_fidelity - symmetric_fidelity(n, d)).abs() < 1e-12);
        }
    }
}

fn p_of(alpha: &[f64], d: usize, k: usize) -> f64 {
    let w = CloneWeights::normalize(alpha.to_vec()).unwrap();
    solve_weights(&w, d).unwrap().singlet_fractions[k]
}

#[test]
fn raising_a_weight_never_lowers_its_fraction() {
    for d in 2..=3 {
        for a in 1..20 {
            let lo = a as f64 / 20.0;
            let hi = lo + 0.05;
            assert!(p_of(&[hi, 1.0 - hi], d, 0) >= p_of(&[lo, 1.0 - lo], d, 0) - 1e-12);
        }
        for a in 1..10 {
            for b in 1..10 {
                let base = [a as f64, b as f64, 5.0];
                let raised = [a as f64 + 1.0, b as f64, 5.0];
                assert!(p_of(&raised, d, 0) >= p_of(&base, d, 0) - 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn beta_round_trip(w in weights_strategy(5), d in 2usize..=4) {
        let sol = solve_weights(&w, d).unwrap();
        let back = weights_from_beta(&sol.betas, d).unwrap();
        for (a, b) in w.as_slice().iter().zip(back.as_slice()) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn solutions_saturate_monogamy(w in weights_strategy(6), d in 2usize..=5) {
        let sol = solve_weights(&w, d).unwrap();
        let profile = FractionProfile::new(d, sol.singlet_fractions.clone()).unwrap();
        prop_assert!(singlet_monogamy_gap(&profile).abs() < 1e-9);
        let weighted: f64 = w.as_slice().iter().zip(&sol.singlet_fractions).map(|(a, p)| a * p).sum();
        prop_assert!((weighted - sol.mu).abs() < 1e-12);
        prop_assert!(normalization_residual(&sol.betas, d).abs() < 1e-12);
        prop_assert!(sol.betas.iter().all(|b| *b >= 0.0));
    }

    #[test]
    fn positive_weights_have_simple_perron_root(w in weights_strategy(6), d in 2usize..=5) {
        let n = w.len();
        prop_assume!(n >= 2);
        let gamma = gamma_matrix(n, d).unwrap();
        let roots: Vec<f64> = w.as_slice().iter().map(|a| a.sqrt()).collect();
        let m = DenseOperator::from_fn(n, |i, j| C64::new(roots[i] * gamma.get(i, j) * roots[j], 0.0));
        let eig = hermitian_eig(&m).unwrap();
        prop_assert!(eig.values[0] - eig.values[1] > 1e-6);
        let sol = solve_weights(&w, d).unwrap();
        prop_assert!(sol.reduced_gap.unwrap() > 1e-6);
        prop_assert!(sol.betas.iter().all(|b| *b > 0.0));
    }

    #[test]
    fn normalized_betas_give_unit_states(raw in prop::collection::vec(0.0f64..1.0, 1..=4), d in 2usize..=3) {
        let q = normalization_residual(&raw, d) + d as f64;
        prop_assume!(q > 1e-6);
        let betas: Vec<f64> = raw.iter().map(|b| b * (d as f64 / q).sqrt()).collect();
        let psi = ansatz_state(&betas, d).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn rounding_negative_beta_counts_as_zero() {
    let w = weights_from_beta(&[-1e-16, 0.5, 0.5], 2).unwrap();
    assert_eq!(w.as_slice()[0], 0.0);
    assert!(weights_from_beta(&[-1e-3, 0.5, 0.5], 2).is_err());
}
