//! Telecloning by teleportation into the port of a resource state.
//!
//! The input qudit `a` and the port (site 0 of the resource) are measured in
//! the Bell basis `|B_i> = (U_i ⊗ 1)|B_0>`; on outcome `i` every clone is
//! corrected by `U_i`. With this convention a one-clone resource `|B_0>`
//! reproduces the input exactly for every outcome.

use rand::Rng;

use crate::cloner::{ansatz_state, fidelity_from_singlet_fraction, solve_weights, CloneWeights};
use crate::error::{Error, Result};
use crate::linalg::{
    bell_state, haar_qudit, hermitian_eig, weyl_set, DenseOperator, QuditRegister, StateVector, C64,
};
use crate::mc::McConfig;

/// Outcomes below this probability have no defined post-measurement state.
pub const PROBABILITY_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct TelemapOutcome {
    pub outcome: usize,
    pub probability: f64,
    /// Corrected, normalized state of the clones; `None` when the outcome
    /// has (numerically) zero probability.
    pub post_state: Option<StateVector>,
}

fn check_resource(resource: &StateVector, d: usize) -> Result<usize> {
    let reg = resource.register();
    if reg.local_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: reg.local_dim(),
        });
    }
    if reg.num_sites() < 2 {
        return Err(Error::InvalidSites("resource needs a port and at least one clone".into()));
    }
    Ok(reg.num_sites() - 1)
}

/// `(<B_i| ⊗ 1) (|psi>_a ⊗ |Psi>)`, unnormalized, before correction.
fn project_outcome(psi_in: &[C64], resource: &StateVector, u: &DenseOperator, clones: QuditRegister) -> Result<StateVector> {
    let d = u.dim();
    let cd = clones.dim();
    let scale = 1.0 / (d as f64).sqrt();
    // a_y = sum_x conj(U[x, y]) psi_x / sqrt(d)
    let a: Vec<C64> = (0..d)
        .map(|y| (0..d).map(|x| u[(x, y)].conj() * psi_in[x]).sum::<C64>() * scale)
        .collect();
    let amps = resource.amplitudes();
    let chi = (0..cd)
        .map(|j| (0..d).map(|y| a[y] * amps[y * cd + j]).sum())
        .collect();
    StateVector::from_amplitudes(clones, chi)
}

fn correct(state: &mut StateVector, u: &DenseOperator) -> Result<()> {
    for site in 0..state.register().num_sites() {
        state.apply_local(site, u)?;
    }
    Ok(())
}

/// Runs the protocol for a fixed measurement outcome `outcome`.
pub fn teleport_once(psi_in: &StateVector, resource: &StateVector, outcome: usize) -> Result<TelemapOutcome> {
    if psi_in.register().num_sites() != 1 {
        return Err(Error::InvalidSites("input must be a single qudit".into()));
    }
    let d = psi_in.dim();
    let n = check_resource(resource, d)?;
    if outcome >= d * d {
        return Err(Error::InvalidIndex {
            index: outcome,
            dim: d * d,
        });
    }
    let u = crate::linalg::weyl_operator(d, outcome / d, outcome % d)?;
    telemap_with(psi_in.amplitudes(), resource, &u, outcome, QuditRegister::new(n, d)?)
}

fn telemap_with(
    psi_in: &[C64],
    resource: &StateVector,
    u: &DenseOperator,
    outcome: usize,
    clones: QuditRegister,
) -> Result<TelemapOutcome> {
    let mut chi = project_outcome(psi_in, resource, u, clones)?;
    let probability = chi.norm().powi(2);
    if probability < PROBABILITY_FLOOR {
        return Ok(TelemapOutcome {
            outcome,
            probability,
            post_state: None,
        });
    }
    chi.normalize()?;
    correct(&mut chi, u)?;
    Ok(TelemapOutcome {
        outcome,
        probability,
        post_state: Some(chi),
    })
}

/// Choi matrix of the outcome-averaged map from the input to one clone.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneChannel {
    /// Clone index in `1..=N`.
    pub clone: usize,
    pub d: usize,
    /// `(1 ⊗ Lambda_n)(|B_0><B_0|)`, reference qudit first.
    pub choi: DenseOperator,
}

impl CloneChannel {
    /// `<B_0| Choi |B_0>`.
    pub fn entanglement_fidelity(&self) -> Result<f64> {
        let b0 = bell_state(self.d)?;
        Ok(self.choi.sandwich(b0.amplitudes(), b0.amplitudes()).re)
    }

    /// Haar-averaged fidelity `(d F_e + 1) / (d + 1)`.
    pub fn average_fidelity(&self) -> Result<f64> {
        Ok(fidelity_from_singlet_fraction(self.entanglement_fidelity()?, self.d))
    }

    /// Largest entry of `Tr_out(Choi) - 1/d`.
    pub fn trace_preservation_error(&self) -> Result<f64> {
        let reg = QuditRegister::new(2, self.d)?;
        let reduced = self.choi.partial_trace(&reg, &[0])?;
        let target = DenseOperator::identity(self.d).scale_real(1.0 / self.d as f64);
        Ok(reduced.max_abs_diff(&target))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = hermitian_eig(&self.choi)?;
        Ok(*eig.values.last().expect("nonempty"))
    }
}

/// Choi matrices of all clones: half of `|B_0>_{r,a}` is sent through the
/// protocol and the unnormalized reduced states of `(r, n)` are summed over
/// the outcomes.
pub fn clone_channels(resource: &StateVector) -> Result<Vec<CloneChannel>> {
    let d = resource.register().local_dim();
    let n = check_resource(resource, d)?;
    let clones = QuditRegister::new(n, d)?;
    // Reference qudit in front of the clones.
    let joint = QuditRegister::new(n + 1, d)?;
    let cd = clones.dim();
    let amps = resource.amplitudes();
    let mut chois = vec![DenseOperator::zeros(d * d); n];
    for u in weyl_set(d)? {
        // chi[r, J] = sum_y conj(U[r, y]) Psi[y, J] / d
        let mut chi = vec![C64::new(0.0, 0.0); joint.dim()];
        for r in 0..d {
            for y in 0..d {
                let c = u[(r, y)].conj() / d as f64;
                if c == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..cd {
                    chi[r * cd + j] += c * amps[y * cd + j];
                }
            }
        }
        let mut chi = StateVector::from_amplitudes(joint, chi)?;
        for site in 1..=n {
            chi.apply_local(site, &u)?;
        }
        for (k, choi) in chois.iter_mut().enumerate() {
            choi.add_scaled(C64::new(1.0, 0.0), &chi.reduced(&[0, k + 1])?);
        }
    }
    Ok(chois
        .into_iter()
        .enumerate()
        .map(|(k, choi)| CloneChannel { clone: k + 1, d, choi })
        .collect())
}

pub fn clone_channel_choi(resource: &StateVector, clone: usize) -> Result<CloneChannel> {
    let n = resource.register().num_sites().saturating_sub(1);
    if clone == 0 || clone > n {
        return Err(Error::InvalidSites(format!("clone {clone} outside 1..={n}")));
    }
    Ok(clone_channels(resource)?.swap_remove(clone - 1))
}

pub fn average_clone_fidelity(resource: &StateVector, clone: usize) -> Result<f64> {
    clone_channel_choi(resource, clone)?.average_fidelity()
}

/// Monte Carlo estimate of the clone fidelities of the optimal resource.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolEstimate {
    pub samples: usize,
    pub clone_fidelities: Vec<f64>,
    pub clone_standard_errors: Vec<f64>,
    /// `sum_n alpha_n F_n` and its standard error.
    pub global_fidelity: f64,
    pub global_standard_error: f64,
    /// Upper bound `d lambda` from the solver.
    pub fidelity_bound: f64,
}

#[derive(Debug, Clone)]
struct ProtocolSums {
    samples: usize,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    global: f64,
    global_sq: f64,
}

impl ProtocolSums {
    fn new(n: usize) -> Self {
        Self {
            samples: 0,
            sum: vec![0.0; n],
            sum_sq: vec![0.0; n],
            global: 0.0,
            global_sq: 0.0,
        }
    }

    fn merge(&mut self, o: &Self) {
        self.samples += o.samples;
        for k in 0..self.sum.len() {
            self.sum[k] += o.sum[k];
            self.sum_sq[k] += o.sum_sq[k];
        }
        self.global += o.global;
        self.global_sq += o.global_sq;
    }
}

fn mean_and_se(sum: f64, sum_sq: f64, s: usize) -> (f64, f64) {
    let s = s as f64;
    let mean = sum / s;
    let var = (sum_sq / s - mean * mean).max(0.0);
    (mean, (var / s).sqrt())
}

/// Outcome probabilities `<B_i| psi psi^dagger ⊗ rho_port |B_i>`.
fn outcome_probabilities(psi: &[C64], port: &DenseOperator, weyl: &[DenseOperator]) -> Vec<f64> {
    let d = psi.len();
    weyl.iter()
        .map(|u| {
            // conj(a)_y with a_y = (U^dagger psi)_y
            let a: Vec<C64> = (0..d)
                .map(|y| (0..d).map(|x| u[(x, y)].conj() * psi[x]).sum::<C64>().conj())
                .collect();
            (port.sandwich(&a, &a).re / d as f64).max(0.0)
        })
        .collect()
}

fn sample_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let total: f64 = probs.iter().sum();
    let mut x = rng.random::<f64>() * total;
    for (i, p) in probs.iter().enumerate() {
        if x < *p {
            return i;
        }
        x -= p;
    }
    probs.iter().rposition(|p| *p > 0.0).unwrap_or(0)
}

/// Samples Haar inputs and measurement outcomes for the optimal cloner of
/// `weights`, recording the fidelity of every clone with the input.
pub fn simulate_protocol(weights: &CloneWeights, d: usize, config: &McConfig) -> Result<ProtocolEstimate> {
    if config.samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let solution = solve_weights(weights, d)?;
    let resource = ansatz_state(&solution.betas, d)?;
    let n = weights.len();
    let clones = QuditRegister::new(n, d)?;
    let port = resource.reduced(&[0])?;
    let weyl = weyl_set(d)?;
    let alphas = weights.as_slice();

    let run_worker = |worker: usize, share: usize| -> Result<ProtocolSums> {
        let mut rng = config.seed.worker_rng(worker);
        let mut sums = ProtocolSums::new(n);
        for _ in 0..share {
            let psi = haar_qudit(d, &mut rng)?;
            let probs = outcome_probabilities(psi.amplitudes(), &port, &weyl);
            let i = sample_index(&probs, &mut rng);
            let out = telemap_with(psi.amplitudes(), &resource, &weyl[i], i, clones)?;
            let post = out
                .post_state
                .ok_or_else(|| Error::NumericalFailure("sampled a zero-probability outcome".into()))?;
            let mut global = 0.0;
            for k in 0..n {
                let rho = post.reduced(&[k])?;
                let f = rho.sandwich(psi.amplitudes(), psi.amplitudes()).re;
                sums.sum[k] += f;
                sums.sum_sq[k] += f * f;
                global += alphas[k] * f;
            }
            sums.global += global;
            sums.global_sq += global * global;
            sums.samples += 1;
        }
        Ok(sums)
    };

    let mut total = ProtocolSums::new(n);
    for part in config.run(run_worker) {
        total.merge(&part?);
    }
    let (clone_fidelities, clone_standard_errors) = (0..n)
        .map(|k| mean_and_se(total.sum[k], total.sum_sq[k], total.samples))
        .unzip();
    let (global_fidelity, global_standard_error) = mean_and_se(total.global, total.global_sq, total.samples);
    Ok(ProtocolEstimate {
        samples: total.samples,
        clone_fidelities,
        clone_standard_errors,
        global_fidelity,
        global_standard_error,
        fidelity_bound: solution.global_fidelity,
    })
}
