//! Numerical checks of the cloner reduction against the full `R` operator.

use crate::cloner::{ansatz_state, clone_branch, gamma_matrix, solve_weights, CloneWeights};
use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, weyl_set, DenseOperator, QuditRegister, RngSeed, StateVector, C64};

use super::rmatrix::{brute_force_solve, build_r, pair_term, RMatrix};

/// Configurations where the ansatz is known to be a maximal eigenvector.
pub fn in_verified_range(d: usize, num_clones: usize) -> bool {
    (d == 2 && num_clones <= 5) || (d <= 5 && num_clones == 3)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzReport {
    pub d: usize,
    pub num_clones: usize,
    pub lambda_predicted: f64,
    pub lambda_brute: f64,
    pub solver_fidelity: f64,
    pub brute_fidelity: f64,
    /// `|| R psi - lambda_pred psi ||` for the ansatz state.
    pub eigen_residual: f64,
    /// Norm of the ansatz projected onto the top eigenspace of `R`.
    pub overlap: f64,
    pub multiplicity: usize,
    pub in_verified_range: bool,
}

pub fn verify_ansatz(weights: &CloneWeights, d: usize) -> Result<AnsatzReport> {
    let solution = solve_weights(weights, d)?;
    let psi = ansatz_state(&solution.betas, d)?;
    let r = build_r(weights, d)?;
    let mut residual = r.operator.matvec(psi.amplitudes());
    for (x, p) in residual.iter_mut().zip(psi.amplitudes()) {
        *x -= solution.lambda * p;
    }
    let eigen_residual = residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let brute = brute_force_solve(&r)?;
    Ok(AnsatzReport {
        d,
        num_clones: weights.len(),
        lambda_predicted: solution.lambda,
        lambda_brute: brute.lambda,
        solver_fidelity: solution.global_fidelity,
        brute_fidelity: brute.fidelity_bound(),
        eigen_residual,
        overlap: brute.top_overlap(&psi),
        multiplicity: brute.multiplicity(),
        in_verified_range: in_verified_range(d, weights.len()),
    })
}

/// `U^* ⊗ U^{⊗N}` applied from the left (`left = true`) or right.
fn apply_covariant(op: &mut DenseOperator, register: &QuditRegister, u: &DenseOperator, left: bool) {
    let uc = u.conj();
    for site in 0..register.num_sites() {
        let local = if site == 0 { &uc } else { u };
        if left {
            op.left_apply_local(register, site, local);
        } else {
            op.right_apply_local(register, site, local);
        }
    }
}

/// `[U^* ⊗ U^{⊗N}, A]` on the register of `A`.
pub fn covariant_commutator(a: &DenseOperator, register: &QuditRegister, u: &DenseOperator) -> DenseOperator {
    let mut wa = a.clone();
    apply_covariant(&mut wa, register, u, true);
    let mut aw = a.clone();
    apply_covariant(&mut aw, register, u, false);
    &wa - &aw
}

pub fn commutator_norm(r: &RMatrix, u: &DenseOperator) -> f64 {
    covariant_commutator(&r.operator, &r.register, u).frobenius_norm()
}

/// The `d^2` Weyl operators followed by `trials` seeded Haar unitaries.
pub fn covariance_probes(d: usize, trials: usize, seed: u64) -> Result<Vec<DenseOperator>> {
    let mut probes = weyl_set(d)?;
    let mut rng = RngSeed(seed).rng();
    for _ in 0..trials {
        probes.push(haar_unitary(d, &mut rng)?);
    }
    Ok(probes)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub max_weyl: f64,
    pub max_haar: f64,
}

impl ConditionReport {
    pub fn max_norm(&self) -> f64 {
        self.max_weyl.max(self.max_haar)
    }
}

pub fn verify_condition(weights: &CloneWeights, d: usize, trials: usize, seed: u64) -> Result<ConditionReport> {
    let r = build_r(weights, d)?;
    let probes = covariance_probes(d, trials, seed)?;
    let num_weyl = d * d;
    let mut report = ConditionReport {
        max_weyl: 0.0,
        max_haar: 0.0,
    };
    for (k, u) in probes.iter().enumerate() {
        let norm = commutator_norm(&r, u);
        if k < num_weyl {
            report.max_weyl = report.max_weyl.max(norm);
        } else {
            report.max_haar = report.max_haar.max(norm);
        }
    }
    Ok(report)
}

/// Gram matrices of the per-clone commutators `[W, T_{0,n}]` for a fixed
/// probe set, so that `|| [W, R(alpha)] ||_F = sqrt(alpha^T G alpha)` can be
/// evaluated for many weight vectors at once.
#[derive(Debug, Clone)]
pub struct CommutatorGram {
    pub d: usize,
    pub num_clones: usize,
    grams: Vec<Vec<f64>>,
}

impl CommutatorGram {
    pub fn new(num_clones: usize, d: usize, probes: &[DenseOperator]) -> Result<Self> {
        let register = QuditRegister::new(num_clones + 1, d)?;
        crate::linalg::operator::check_dense(register.dim())?;
        let term = pair_term(d)?;
        let embedded: Vec<DenseOperator> = (1..=num_clones)
            .map(|n| DenseOperator::embed_pair(&term, (0, n), &register))
            .collect::<Result<_>>()?;
        let mut grams = Vec::with_capacity(probes.len());
        for u in probes {
            if u.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: u.dim() });
            }
            let comms: Vec<DenseOperator> = embedded
                .iter()
                .map(|t| covariant_commutator(t, &register, u))
                .collect();
            let mut g = vec![0.0; num_clones * num_clones];
            for i in 0..num_clones {
                for j in i..num_clones {
                    let v = comms[i].hs_inner(&comms[j]).re;
                    g[i * num_clones + j] = v;
                    g[j * num_clones + i] = v;
                }
            }
            grams.push(g);
        }
        Ok(Self { d, num_clones, grams })
    }

    /// Commutator norm for every probe.
    pub fn norms(&self, weights: &CloneWeights) -> Result<Vec<f64>> {
        if weights.len() != self.num_clones {
            return Err(Error::DimensionMismatch {
                expected: self.num_clones,
                got: weights.len(),
            });
        }
        let a = weights.as_slice();
        let n = self.num_clones;
        Ok(self
            .grams
            .iter()
            .map(|g| {
                let mut q = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        q += a[i] * g[i * n + j] * a[j];
                    }
                }
                q.max(0.0).sqrt()
            })
            .collect())
    }

    pub fn max_norm(&self, weights: &CloneWeights) -> Result<f64> {
        Ok(self.norms(weights)?.into_iter().fold(0.0, f64::max))
    }
}

/// `(|B_0><B_0|)_{a,b} psi`.
pub fn project_bell_pair(psi: &StateVector, a: usize, b: usize) -> Result<StateVector> {
    let register = *psi.register();
    register.check_sites(&[a, b])?;
    let d = register.local_dim();
    let (pa, pb) = (register.place_value(a), register.place_value(b));
    let step = pa + pb;
    let inv_sqrt_d = 1.0 / (d as f64).sqrt();
    let amps = psi.amplitudes();
    let mut out = vec![C64::new(0.0, 0.0); register.dim()];
    for base in 0..register.dim() {
        if register.digit(base, a) != 0 || register.digit(base, b) != 0 {
            continue;
        }
        let c: C64 = (0..d).map(|i| amps[base + i * step]).sum::<C64>() * inv_sqrt_d;
        for i in 0..d {
            out[base + i * step] = c * inv_sqrt_d;
        }
    }
    StateVector::from_amplitudes(register, out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoveringEntry {
    pub n: usize,
    pub m: usize,
    pub gamma: f64,
    /// `|| P_m |branch_n> ||`.
    pub ratio: f64,
    /// `|<branch_m | P_m branch_n>| / || P_m branch_n ||`; 1 when the
    /// projected state is exactly the branch of clone `m`.
    pub state_overlap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoveringReport {
    pub num_clones: usize,
    pub d: usize,
    pub entries: Vec<CoveringEntry>,
}

impl CoveringReport {
    pub fn max_ratio_error(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| (e.ratio - e.gamma).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_state_overlap(&self) -> f64 {
        self.entries.iter().map(|e| e.state_overlap).fold(1.0, f64::min)
    }
}

pub fn verify_covering_projection(num_clones: usize, d: usize) -> Result<CoveringReport> {
    if num_clones == 0 || num_clones > 5 {
        return Err(Error::InvalidParameter(format!(
            "covering check supports 1..=5 clones, got {num_clones}"
        )));
    }
    if !(2..=5).contains(&d) {
        return Err(Error::InvalidDimension(d));
    }
    let gamma = gamma_matrix(num_clones, d)?;
    let branches: Vec<StateVector> = (1..=num_clones)
        .map(|n| clone_branch(n, num_clones, d))
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for n in 1..=num_clones {
        for m in 1..=num_clones {
            let projected = project_bell_pair(&branches[n - 1], 0, m)?;
            let ratio = projected.norm();
            let state_overlap = if ratio > 0.0 {
                branches[m - 1].inner(&projected).norm() / ratio
            } else {
                0.0
            };
            entries.push(CoveringEntry {
                n,
                m,
                gamma: gamma.get(n - 1, m - 1),
                ratio,
                state_overlap,
            });
        }
    }
    Ok(CoveringReport {
        num_clones,
        d,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bell_projector;

    #[test]
    fn bell_pair_projection_matches_dense_embedding() {
        let reg = QuditRegister::new(3, 2).unwrap();
        let mut rng = RngSeed(5).rng();
        let psi = crate::linalg::haar_state(reg, &mut rng);
        let dense = DenseOperator::embed_pair(&bell_projector(2).unwrap(), (2, 0), &reg).unwrap();
        let expected = psi.apply(&dense).unwrap();
        let got = project_bell_pair(&psi, 2, 0).unwrap();
        let diff = got
            .amplitudes()
            .iter()
            .zip(expected.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);
    }

    #[test]
    fn identity_probe_commutes_exactly() {
        let w = CloneWeights::normalize(vec![0.3, 0.7]).unwrap();
        let r = build_r(&w, 2).unwrap();
        assert_eq!(commutator_norm(&r, &DenseOperator::identity(2)), 0.0);
    }

    #[test]
    fn commutators_vanish() {
        let w = CloneWeights::normalize(vec![0.3, 0.7]).unwrap();
        let rep = verify_condition(&w, 2, 5, 3).unwrap();
        assert!(rep.max_norm() < 1e-10, "{rep:?}");
        let w = CloneWeights::uniform(3).unwrap();
        let rep = verify_condition(&w, 2, 20, 4).unwrap();
        assert!(rep.max_norm() < 1e-10, "{rep:?}");
    }

    #[test]
    fn gram_norms_match_direct_commutators() {
        let probes = covariance_probes(2, 3, 8).unwrap();
        let gram = CommutatorGram::new(2, 2, &probes).unwrap();
        // A non-covariant probe makes the check meaningful.
        let mut skew = probes.clone();
        skew.push(DenseOperator::diagonal(&[1.0, 2.0]));
        let skew_gram = CommutatorGram::new(2, 2, &skew).unwrap();
        let w = CloneWeights::normalize(vec![0.25, 0.75]).unwrap();
        let r = build_r(&w, 2).unwrap();
        let direct = commutator_norm(&r, skew.last().unwrap());
        let via_gram = *skew_gram.norms(&w).unwrap().last().unwrap();
        assert!(direct > 0.1);
        assert!((direct - via_gram).abs() < 1e-12);
        assert!(gram.max_norm(&w).unwrap() < 1e-10);
    }

    #[test]
    fn ansatz_report_small_cases() {
        let rep = verify_ansatz(&CloneWeights::uniform(2).unwrap(), 2).unwrap();
        assert!(rep.eigen_residual < 1e-12);
        assert!((rep.overlap - 1.0).abs() < 1e-9);
        assert!((rep.brute_fidelity - 5.0 / 6.0).abs() < 1e-12);
        assert!(rep.in_verified_range);
        assert!(!in_verified_range(3, 4));
    }

    #[test]
    fn covering_ratios_equal_gamma() {
        for (n, d) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let rep = verify_covering_projection(n, d).unwrap();
            assert!(rep.max_ratio_error() < 1e-12, "n={n} d={d}");
        }
        let rep = verify_covering_projection(3, 3).unwrap();
        let off = rep.entries.iter().find(|e| e.n != e.m).unwrap();
        assert!((off.ratio - 1.0 / 3.0).abs() < 1e-12);
        assert!(verify_covering_projection(6, 2).is_err());
    }
}
