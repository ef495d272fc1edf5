use telecloning::cloner::{solve_weights, CloneWeights};
use telecloning::heisenberg::{anisotropic_bound, ground_energy_bound, LatticeSpec, Method};

#[test]
fn singlet_bound_is_tighter_for_every_coordination() {
    for c in 2..=12 {
        let s = ground_energy_bound(c, Method::Singlet).unwrap();
        let t = ground_energy_bound(c, Method::Tangle).unwrap();
        assert!(s > t, "c={c}");
    }
}

#[test]
fn equal_couplings_reduce_to_isotropic_bound() {
    for c in 1..=5 {
        let iso = ground_energy_bound(c, Method::Singlet).unwrap();
        let an = anisotropic_bound(&LatticeSpec::isotropic(c).unwrap()).unwrap();
        assert!((iso - an).abs() < 1e-10, "c={c}");
    }
}

/// Best `sum_n J_n p_n` over a grid of asymmetric cloners.
fn grid_best(j: [f64; 2], steps: usize) -> f64 {
    (0..=steps)
        .map(|k| {
            let a = k as f64 / steps as f64;
            let sol = solve_weights(&CloneWeights::new(vec![a, 1.0 - a]).unwrap(), 2).unwrap();
            j[0] * sol.singlet_fractions[0] + j[1] * sol.singlet_fractions[1]
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn proportional_weights_beat_a_grid_search() {
    for j1 in [0.2, 0.5, 1.0, 1.7, 3.0] {
        for j2 in [0.1, 0.5, 1.0, 2.5] {
            let j = [j1, j2];
            let bound = anisotropic_bound(&LatticeSpec::new(j.to_vec()).unwrap()).unwrap();
            let grid = 0.5 * (0.25 * (j1 + j2) - grid_best(j, 400));
            assert!(bound <= grid + 1e-12, "J=({j1},{j2}) bound {bound} grid {grid}");
            assert!(grid - bound < 1e-4, "J=({j1},{j2}) grid too far from bound");
        }
    }
}
