use proptest::prelude::*;
use telecloning::cloner::{ansatz_state, solve_weights, CloneWeights};
use telecloning::linalg::{bell_projector, RngSeed, StateVector};
use telecloning::monogamy::{
    concurrence, fully_entangled_fraction, max_last_fraction, pair_fractions, singlet_monogamy_gap,
    tangle_monogamy_curve, tradeoff_curve, FractionProfile,
};

#[test]
fn boundary_inverts_the_tradeoff_curve() {
    for d in [2, 3, 4] {
        for (p1, p2) in tradeoff_curve(d, 41).unwrap() {
            assert!((max_last_fraction(&[p2], d).unwrap() - p1).abs() < 1e-8, "d={d} p2={p2}");
        }
    }
}

#[test]
fn boundary_at_a_perfect_partner() {
    assert_eq!(max_last_fraction(&[1.0], 2).unwrap(), 0.25);
}

#[test]
fn curves_saturate_the_relation() {
    for d in [2, 3, 4, 100] {
        for (p1, p2) in tradeoff_curve(d, 101).unwrap() {
            let profile = FractionProfile::new(d, vec![p1, p2]).unwrap();
            assert!(singlet_monogamy_gap(&profile).abs() < 1e-9);
        }
    }
}

#[test]
fn singlet_curve_lies_inside_tangle_curve_at_symmetric_point() {
    let tangle = tangle_monogamy_curve(3).unwrap()[1];
    let singlet = tradeoff_curve(2, 3).unwrap()[1];
    assert!(singlet.0 < tangle.0);
    assert!((tangle.0 - 0.5 * (1.0 + 0.5f64.sqrt())).abs() < 1e-15);
}

#[test]
fn symmetric_pair_concurrence() {
    let s = 1.0 / 3f64.sqrt();
    let psi = ansatz_state(&[s, s], 2).unwrap();
    let rho = psi.reduced(&[0, 1]).unwrap();
    let c = concurrence(&rho).unwrap();
    assert!((1.0 + c) / 2.0 >= 0.75 - 1e-9);
    // Regression value for the reduced pair of the optimal symmetric cloner.
    assert!((c - 2.0 / 3.0).abs() < 1e-7, "concurrence {c}");
    let p = fully_entangled_fraction(&rho).unwrap();
    assert!(p.exact && (p.value - 0.75).abs() < 1e-12);
    assert!((bell_projector(2).unwrap().hs_inner(&rho).re - 0.75).abs() < 1e-12);
}

fn perturbed_resource(w: &CloneWeights, d: usize, seed: u64, eps: f64) -> StateVector {
    let sol = solve_weights(w, d).unwrap();
    let mut psi = ansatz_state(&sol.betas, d).unwrap();
    let noise = telecloning::linalg::haar_state(*psi.register(), &mut RngSeed(seed).rng());
    psi.add_scaled(telecloning::linalg::C64::new(eps, 0.0), &noise);
    psi.normalize().unwrap();
    psi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn qubit_states_never_violate_monogamy(
        raw in prop::collection::vec(0.01f64..1.0, 2..=4),
        seed in any::<u64>(),
        eps in 0.0f64..1.0,
    ) {
        let w = CloneWeights::normalize(raw).unwrap();
        let psi = perturbed_resource(&w, 2, seed, eps);
        let p: Vec<f64> = pair_fractions(&psi).unwrap().iter().map(|f| f.value.min(1.0)).collect();
        let gap = singlet_monogamy_gap(&FractionProfile::new(2, p).unwrap());
        prop_assert!(gap >= -1e-9, "gap {gap}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn qutrit_states_never_violate_monogamy(
        raw in prop::collection::vec(0.01f64..1.0, 2..=3),
        seed in any::<u64>(),
        eps in 0.0f64..1.0,
    ) {
        let w = CloneWeights::normalize(raw).unwrap();
        let psi = perturbed_resource(&w, 3, seed, eps);
        let p: Vec<f64> = pair_fractions(&psi).unwrap().iter().map(|f| f.value.min(1.0)).collect();
        let gap = singlet_monogamy_gap(&FractionProfile::new(3, p).unwrap());
        prop_assert!(gap >= -1e-9, "gap {gap}");
    }
}
