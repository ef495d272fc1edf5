//! Optimal asymmetric `1 -> N` universal cloners from the reduced
//! `N x N` eigenproblem.
//!
//! For weights `alpha` the cloner is described by amplitudes `beta` solving
//!
//! ```text
//! alpha_n d sum_m gamma_nm beta_m = (d (d + 1) lambda - 1) beta_n,
//! gamma_nm = (1 + delta_nm (d - 1)) / d,
//! ```
//!
//! normalized by `(sum beta)^2 + (d - 1) sum beta^2 = d`. The matrix
//! `diag(alpha) gamma` is not symmetric, so we diagonalize the similar
//! matrix `sqrt(alpha) gamma sqrt(alpha)` and map its Perron vector back.

pub mod ansatz;
pub mod iblisdir;

pub use ansatz::{ansatz_state, clone_branch, covering_state, normalization_residual};
pub use iblisdir::{iblisdir_family, IblisdirPoint};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, DenseOperator, C64};

/// Tolerance on `sum alpha = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Eigenvalues of the reduced matrix closer than this are treated as tied.
pub const REDUCED_GAP_TOL: f64 = 1e-10;

/// Convex asymmetry weights over the `N` clones.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneWeights(Vec<f64>);

impl CloneWeights {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        check_entries(&alphas)?;
        let sum: f64 = alphas.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self(alphas))
    }

    /// Rescales non-negative raw weights to sum to one.
    pub fn normalize(raw: Vec<f64>) -> Result<Self> {
        check_entries(&raw)?;
        let sum: f64 = raw.iter().sum();
        Ok(Self(raw.into_iter().map(|a| a / sum).collect()))
    }

    pub fn uniform(num_clones: usize) -> Result<Self> {
        if num_clones == 0 {
            return Err(Error::InvalidWeights("no clones".into()));
        }
        Ok(Self(vec![1.0 / num_clones as f64; num_clones]))
    }

    /// All weight on clone `k` (zero-based).
    pub fn unit(num_clones: usize, k: usize) -> Result<Self> {
        if k >= num_clones {
            return Err(Error::InvalidWeights(format!(
                "clone {k} out of range for {num_clones} clones"
            )));
        }
        let mut alphas = vec![0.0; num_clones];
        alphas[k] = 1.0;
        Ok(Self(alphas))
    }

    /// Uniformly distributed point of the simplex (flat Dirichlet draw).
    pub fn random<R: rand::Rng + ?Sized>(num_clones: usize, rng: &mut R) -> Result<Self> {
        if num_clones == 0 {
            return Err(Error::InvalidWeights("no clones".into()));
        }
        let raw: Vec<f64> = (0..num_clones)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        Self::normalize(raw)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&a| a > 0.0)
    }
}

fn check_entries(alphas: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidWeights("no clones".into()));
    }
    if let Some(bad) = alphas.iter().find(|a| !a.is_finite() || **a < 0.0) {
        return Err(Error::InvalidWeights(format!(
            "weights must be finite and non-negative, got {bad}"
        )));
    }
    if !alphas.iter().any(|&a| a > 0.0) {
        return Err(Error::InvalidWeights("all weights are zero".into()));
    }
    Ok(())
}

/// `gamma_nm = 1` on the diagonal and `1/d` elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaMatrix {
    num_clones: usize,
    d: usize,
}

impl GammaMatrix {
    pub fn num_clones(&self) -> usize {
        self.num_clones
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize) -> f64 {
        if n == m {
            1.0
        } else {
            1.0 / self.d as f64
        }
    }

    /// `(gamma beta)_n`.
    pub fn apply(&self, beta: &[f64]) -> Vec<f64> {
        let total: f64 = beta.iter().sum();
        let off = 1.0 / self.d as f64;
        beta.iter().map(|&b| b + off * (total - b)).collect()
    }

    /// `beta^T gamma beta`, which equals one exactly when the normalization
    /// condition holds.
    pub fn quadratic_form(&self, beta: &[f64]) -> f64 {
        beta.iter().zip(self.apply(beta)).map(|(b, g)| b * g).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.num_clones)
            .map(|n| (0..self.num_clones).map(|m| self.get(n, m)).collect())
            .collect()
    }
}

pub fn gamma_matrix(num_clones: usize, d: usize) -> Result<GammaMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if num_clones == 0 {
        return Err(Error::InvalidWeights("no clones".into()));
    }
    Ok(GammaMatrix { num_clones, d })
}

/// An optimal cloner for given weights.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneSolution {
    pub d: usize,
    pub weights: CloneWeights,
    /// Ansatz amplitudes, non-negative, satisfying the normalization condition.
    pub betas: Vec<f64>,
    /// Largest eigenvalue of `diag(alpha) gamma`.
    pub mu: f64,
    /// Largest eigenvalue of the full `R` operator predicted by the reduction.
    pub lambda: f64,
    /// Weighted fidelity `F = d lambda = sum alpha_n F_n`.
    pub global_fidelity: f64,
    pub clone_fidelities: Vec<f64>,
    pub singlet_fractions: Vec<f64>,
    /// Gap between the two largest reduced eigenvalues (`None` for one clone).
    pub reduced_gap: Option<f64>,
}

impl CloneSolution {
    pub fn num_clones(&self) -> usize {
        self.betas.len()
    }
}

/// Haar-averaged fidelity of a channel with singlet fraction `p`.
pub fn fidelity_from_singlet_fraction(p: f64, d: usize) -> f64 {
    let d = d as f64;
    (p * d + 1.0) / (d + 1.0)
}

pub fn singlet_fraction_from_fidelity(f: f64, d: usize) -> f64 {
    let d = d as f64;
    ((d + 1.0) * f - 1.0) / d
}

pub fn solve_weights(weights: &CloneWeights, d: usize) -> Result<CloneSolution> {
    let gamma = gamma_matrix(weights.len(), d)?;
    let n = weights.len();
    let roots: Vec<f64> = weights.as_slice().iter().map(|a| a.sqrt()).collect();
    let reduced = DenseOperator::from_fn(n, |i, j| C64::new(roots[i] * gamma.get(i, j) * roots[j], 0.0));
    let eig = hermitian_eig(&reduced)?;
    let mu = eig.max_eigenvalue();
    let reduced_gap = (n > 1).then(|| mu - eig.values[1]);

    // Perron vector; at boundary weights the top eigenvalue may tie, in which
    // case take the top-eigenspace direction maximizing sum_n beta_n.
    let ties = eig.top_multiplicity(REDUCED_GAP_TOL);
    let columns: Vec<Vec<f64>> = (0..ties).map(|k| real_column(&eig.vector(k))).collect();
    let mut w = if ties == 1 {
        columns[0].clone()
    } else {
        let coeffs: Vec<f64> = columns
            .iter()
            .map(|c| c.iter().zip(&roots).map(|(x, r)| x * r).sum())
            .collect();
        let mut w = vec![0.0; n];
        for (c, col) in coeffs.iter().zip(&columns) {
            for (wi, x) in w.iter_mut().zip(col) {
                *wi += c * x;
            }
        }
        if w.iter().all(|x| x.abs() < 1e-300) {
            columns[0].clone()
        } else {
            w
        }
    };
    let direction: f64 = w.iter().zip(&roots).map(|(x, r)| x * r).sum();
    if direction < 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }

    let mut betas: Vec<f64> = w
        .iter()
        .zip(&roots)
        .map(|(x, r)| (x * r).max(0.0))
        .collect();
    let q = gamma.quadratic_form(&betas);
    if !(q > 0.0) {
        return Err(Error::NumericalFailure(
            "reduced eigenvector has no support on the weighted clones".into(),
        ));
    }
    let scale = 1.0 / q.sqrt();
    betas.iter_mut().for_each(|b| *b *= scale);

    let df = d as f64;
    let lambda = (1.0 + df * mu) / (df * (df + 1.0));
    let singlet_fractions: Vec<f64> = gamma.apply(&betas).iter().map(|g| g * g).collect();
    let clone_fidelities = singlet_fractions
        .iter()
        .map(|&p| fidelity_from_singlet_fraction(p, d))
        .collect();
    Ok(CloneSolution {
        d,
        weights: weights.clone(),
        betas,
        mu,
        lambda,
        global_fidelity: df * lambda,
        clone_fidelities,
        singlet_fractions,
        reduced_gap,
    })
}

/// Real representative of an eigenvector of a real symmetric matrix.
fn real_column(v: &[C64]) -> Vec<f64> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(C64::new(1.0, 0.0));
    let phase = if pivot.norm() > 0.0 {
        pivot.conj() / pivot.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    v.iter().map(|z| (z * phase).re).collect()
}

/// Negative amplitudes down to this size are rounding and count as zero.
pub const BETA_ROUNDING_TOL: f64 = 1e-12;

/// Weights for which `beta` is the optimal cloner: `alpha_n ∝ beta_n / (gamma beta)_n`.
pub fn weights_from_beta(betas: &[f64], d: usize) -> Result<CloneWeights> {
    let gamma = gamma_matrix(betas.len().max(1), d)?;
    if betas.is_empty() {
        return Err(Error::InvalidCoefficients("empty beta".into()));
    }
    if let Some(bad) = betas.iter().find(|b| !b.is_finite() || **b < -BETA_ROUNDING_TOL) {
        return Err(Error::InvalidCoefficients(format!(
            "beta entries must be finite and non-negative, got {bad}"
        )));
    }
    let betas: Vec<f64> = betas.iter().map(|&b| b.max(0.0)).collect();
    if betas.iter().all(|&b| b == 0.0) {
        return Err(Error::InvalidCoefficients("beta is identically zero".into()));
    }
    let g = gamma.apply(&betas);
    let mut raw = Vec::with_capacity(betas.len());
    for (k, (&b, &gb)) in betas.iter().zip(&g).enumerate() {
        if b == 0.0 {
            raw.push(0.0);
        } else if gb == 0.0 {
            return Err(Error::DegenerateInput(format!(
                "(gamma beta)_{k} vanishes while beta_{k} > 0"
            )));
        } else {
            raw.push(b / gb);
        }
    }
    CloneWeights::normalize(raw)
}

/// Closed-form fidelity of the optimal symmetric `1 -> N` cloner.
pub fn symmetric_fidelity(num_clones: usize, d: usize) -> f64 {
    let (n, d) = (num_clones as f64, d as f64);
    1.0 / n + 2.0 * (n - 1.0) / (n * (d + 1.0))
}

/// Singlet fraction shared by every clone of the symmetric cloner,
/// `(N + d - 1) / (N d)`.
pub fn symmetric_singlet_fraction(num_clones: usize, d: usize) -> f64 {
    let (n, d) = (num_clones as f64, d as f64);
    (n + d - 1.0) / (n * d)
}
