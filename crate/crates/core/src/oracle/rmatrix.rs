//! The figure-of-merit operator `R` for single-copy `1 -> N` cloning.
//!
//! Universal cloning averages
//! `|psi><psi|^T ⊗ sum_n alpha_n 1 ⊗ .. ⊗ |psi><psi|_n ⊗ .. ⊗ 1` over Haar
//! inputs `psi`. The twirl has the closed form
//! `R = sum_n alpha_n (1 + d |B_0><B_0|)_{0,n} / (d (d + 1))`, built exactly by
//! [`build_r`]; [`build_r_haar_mc`] estimates the same average by sampling.

use crate::cloner::CloneWeights;
use crate::error::{Error, Result};
use crate::linalg::{
    bell_projector, haar_qudit, hermitian_eig_blocked, DenseOperator, QuditRegister, StateVector, C64,
};
use crate::mc::McConfig;

/// Eigenvalues within this distance of the maximum count as degenerate.
pub const TOP_GAP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    pub register: QuditRegister,
    pub operator: DenseOperator,
}

impl RMatrix {
    pub fn num_clones(&self) -> usize {
        self.register.num_sites() - 1
    }

    pub fn local_dim(&self) -> usize {
        self.register.local_dim()
    }
}

fn r_register(num_clones: usize, d: usize) -> Result<QuditRegister> {
    let register = QuditRegister::new(num_clones + 1, d)?;
    crate::linalg::operator::check_dense(register.dim())?;
    Ok(register)
}

/// Two-qudit block `(1 + d |B_0><B_0|) / (d (d + 1))`.
pub fn pair_term(d: usize) -> Result<DenseOperator> {
    let df = d as f64;
    let mut term = DenseOperator::identity(d * d);
    term.add_scaled(C64::new(df, 0.0), &bell_projector(d)?);
    Ok(term.scale_real(1.0 / (df * (df + 1.0))))
}

pub fn build_r(weights: &CloneWeights, d: usize) -> Result<RMatrix> {
    let n = weights.len();
    let register = r_register(n, d)?;
    let term = pair_term(d)?;
    let mut operator = DenseOperator::zeros(register.dim());
    for (k, &alpha) in weights.as_slice().iter().enumerate() {
        if alpha == 0.0 {
            continue;
        }
        let embedded = DenseOperator::embed_pair(&term, (0, k + 1), &register)?;
        operator.add_scaled(C64::new(alpha, 0.0), &embedded);
    }
    Ok(RMatrix { register, operator })
}

/// Running sums of a Monte Carlo estimate of `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct McAccumulator {
    pub samples: usize,
    pub sum: DenseOperator,
    /// Entrywise sum of `|X|^2`.
    pub sum_sq: Vec<f64>,
}

impl McAccumulator {
    fn new(dim: usize) -> Self {
        Self {
            samples: 0,
            sum: DenseOperator::zeros(dim),
            sum_sq: vec![0.0; dim * dim],
        }
    }

    pub fn mean(&self) -> DenseOperator {
        self.sum.scale_real(1.0 / self.samples as f64)
    }

    pub fn merge(&mut self, other: &Self) {
        self.samples += other.samples;
        self.sum.add_scaled(C64::new(1.0, 0.0), &other.sum);
        for (a, b) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            *a += b;
        }
    }

    /// Standard error of the mean in Frobenius norm:
    /// `sqrt(sum_entries Var(X_e) / samples)`.
    pub fn standard_error(&self) -> f64 {
        let s = self.samples as f64;
        let total_var: f64 = self
            .sum
            .as_slice()
            .iter()
            .zip(&self.sum_sq)
            .map(|(m, q)| (q / s - (m / s).norm_sqr()).max(0.0))
            .sum();
        (total_var / s).sqrt()
    }
}

/// `|psi><psi|^T ⊗ Lambda_out(psi)` for one input.
pub fn r_sample(weights: &CloneWeights, psi: &StateVector) -> Result<DenseOperator> {
    let d = psi.dim();
    let n = weights.len();
    let clones = QuditRegister::new(n, d)?;
    let full = r_register(n, d)?;
    let amps = psi.amplitudes();
    // Lambda_out couples only basis states differing on at most one clone.
    let mut lambda = DenseOperator::zeros(clones.dim());
    for (k, &alpha) in weights.as_slice().iter().enumerate() {
        if alpha == 0.0 {
            continue;
        }
        let site_pv = clones.place_value(k);
        for j in 0..clones.dim() {
            let jk = clones.digit(j, k);
            let base = j - jk * site_pv;
            for kk in 0..d {
                lambda[(j, base + kk * site_pv)] += alpha * amps[jk] * amps[kk].conj();
            }
        }
    }
    let cd = clones.dim();
    Ok(DenseOperator::from_fn(full.dim(), |row, col| {
        let (j0, jr) = (row / cd, row % cd);
        let (k0, kr) = (col / cd, col % cd);
        // (|psi><psi|)^T[j0, k0] = psi_{k0} conj(psi_{j0})
        amps[k0] * amps[j0].conj() * lambda[(jr, kr)]
    }))
}

/// Accumulates `samples` Haar draws from the stream of worker `worker`.
pub fn mc_partial(
    weights: &CloneWeights,
    d: usize,
    config: &McConfig,
    worker: usize,
    samples: usize,
) -> Result<McAccumulator> {
    let register = r_register(weights.len(), d)?;
    let mut rng = config.seed.worker_rng(worker);
    let mut acc = McAccumulator::new(register.dim());
    for _ in 0..samples {
        let psi = haar_qudit(d, &mut rng)?;
        let x = r_sample(weights, &psi)?;
        acc.sum.add_scaled(C64::new(1.0, 0.0), &x);
        for (q, z) in acc.sum_sq.iter_mut().zip(x.as_slice()) {
            *q += z.norm_sqr();
        }
        acc.samples += 1;
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct McEstimate {
    pub r: RMatrix,
    pub standard_error: f64,
    pub samples: usize,
}

/// Empirical mean of `|psi><psi|^T ⊗ Lambda_out(psi)` over Haar inputs.
/// Deterministic for a given `(seed, samples, workers)`.
pub fn build_r_haar_mc(weights: &CloneWeights, d: usize, config: &McConfig) -> Result<McEstimate> {
    if config.samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let register = r_register(weights.len(), d)?;
    let parts = config.run(|w, share| mc_partial(weights, d, config, w, share));
    let mut total = McAccumulator::new(register.dim());
    for part in parts {
        total.merge(&part?);
    }
    Ok(McEstimate {
        r: RMatrix {
            register,
            operator: total.mean(),
        },
        standard_error: total.standard_error(),
        samples: total.samples,
    })
}

/// Maximum eigenpair of `R` by full diagonalization.
#[derive(Debug, Clone)]
pub struct BruteForce {
    pub lambda: f64,
    /// One maximal eigenvector.
    pub state: StateVector,
    /// Orthonormal basis of the top eigenspace.
    pub top_space: Vec<Vec<C64>>,
    pub degenerate: bool,
    /// Gap to the first eigenvalue outside the top eigenspace.
    pub gap: f64,
    pub spectrum_min: f64,
}

impl BruteForce {
    pub fn multiplicity(&self) -> usize {
        self.top_space.len()
    }

    /// Upper bound `d lambda` on the achievable fidelity.
    pub fn fidelity_bound(&self) -> f64 {
        self.state.register().local_dim() as f64 * self.lambda
    }

    /// Norm of the projection of `psi` onto the top eigenspace.
    pub fn top_overlap(&self, psi: &StateVector) -> f64 {
        self.top_space
            .iter()
            .map(|v| {
                v.iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| a.conj() * b)
                    .sum::<C64>()
                    .norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

pub fn brute_force_solve(r: &RMatrix) -> Result<BruteForce> {
    let eig = hermitian_eig_blocked(&r.operator)?;
    let k = eig.top_multiplicity(TOP_GAP_TOL);
    let top_space: Vec<Vec<C64>> = (0..k).map(|j| eig.vector(j)).collect();
    let state = StateVector::from_amplitudes(r.register, top_space[0].clone())?;
    let gap = if k < eig.dim() {
        eig.values[0] - eig.values[k]
    } else {
        f64::INFINITY
    };
    Ok(BruteForce {
        lambda: eig.max_eigenvalue(),
        state,
        top_space,
        degenerate: k > 1,
        gap,
        spectrum_min: *eig.values.last().expect("nonempty spectrum"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bell_state, RngSeed};

    #[test]
    fn teleportation_r() {
        let w = CloneWeights::uniform(1).unwrap();
        let r = build_r(&w, 2).unwrap();
        let eig = crate::linalg::hermitian_eig(&r.operator).unwrap();
        assert!((eig.values[0] - 0.5).abs() < 1e-14);
        for v in &eig.values[1..] {
            assert!((v - 1.0 / 6.0).abs() < 1e-14);
        }
        let bf = brute_force_solve(&r).unwrap();
        assert!(!bf.degenerate);
        assert!((bf.state.inner(&bell_state(2).unwrap()).norm() - 1.0).abs() < 1e-12);
        assert!((bf.fidelity_bound() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_spectra() {
        let cases = [(2, 2, 5.0 / 6.0), (3, 2, 7.0 / 9.0), (2, 3, 0.75)];
        for (n, d, f) in cases {
            let r = build_r(&CloneWeights::uniform(n).unwrap(), d).unwrap();
            let bf = brute_force_solve(&r).unwrap();
            assert!((bf.fidelity_bound() - f).abs() < 1e-12, "n={n} d={d}");
        }
    }

    #[test]
    fn r_is_hermitian_psd_with_fixed_trace() {
        let w = CloneWeights::normalize(vec![0.2, 0.5, 0.3]).unwrap();
        for d in 2..=3 {
            let r = build_r(&w, d).unwrap();
            assert!(r.operator.hermiticity_error() < 1e-12);
            let bf = brute_force_solve(&r).unwrap();
            assert!(bf.spectrum_min > -1e-10);
            let expected_trace = (d as f64).powi(2);
            assert!((r.operator.trace().re - expected_trace).abs() < 1e-12);
        }
    }

    #[test]
    fn single_sample_trace_is_input_independent() {
        let w = CloneWeights::normalize(vec![0.7, 0.3]).unwrap();
        let zero = StateVector::basis(QuditRegister::new(1, 2).unwrap(), 0).unwrap();
        let x = r_sample(&w, &zero).unwrap();
        let exact = build_r(&w, 2).unwrap();
        assert!((x.trace() - exact.operator.trace()).norm() < 1e-14);
        let mut rng = RngSeed(1).rng();
        let psi = haar_qudit(3, &mut rng).unwrap();
        let x = r_sample(&w, &psi).unwrap();
        assert!((x.trace().re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn mc_is_deterministic_and_splits_exactly() {
        let w = CloneWeights::uniform(2).unwrap();
        let cfg = McConfig::new(2000, 17).with_workers(2);
        let a = build_r_haar_mc(&w, 2, &cfg).unwrap();
        let b = build_r_haar_mc(&w, 2, &cfg).unwrap();
        assert_eq!(a.r, b.r);
        assert_eq!(a.standard_error, b.standard_error);

        let h0 = mc_partial(&w, 2, &cfg, 0, 1000).unwrap();
        let h1 = mc_partial(&w, 2, &cfg, 1, 1000).unwrap();
        let halves = (&h0.mean() + &h1.mean()).scale_real(0.5);
        assert!(halves.max_abs_diff(&a.r.operator) < 1e-15);

        assert!(build_r_haar_mc(&w, 2, &McConfig::new(0, 1)).is_err());
    }

    #[test]
    fn relabeling_clones_permutes_r() {
        let w = CloneWeights::normalize(vec![0.6, 0.1, 0.3]).unwrap();
        let swapped = CloneWeights::normalize(vec![0.1, 0.6, 0.3]).unwrap();
        let r = build_r(&w, 2).unwrap();
        let rs = build_r(&swapped, 2).unwrap();
        let reg = r.register;
        let perm = |i: usize| {
            let mut digits = reg.decode(i);
            digits.swap(1, 2);
            reg.encode(&digits)
        };
        let permuted = DenseOperator::from_fn(reg.dim(), |i, j| r.operator[(perm(i), perm(j))]);
        assert_eq!(permuted.max_abs_diff(&rs.operator), 0.0);
    }
}
