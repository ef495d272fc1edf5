//! The subcommands, as functions from parsed arguments to output records.

use telecloning::cloner::{ansatz_state, solve_weights, CloneWeights};
use telecloning::heisenberg::{
    anisotropic_bound, ground_energy_bound, mean_field_accuracy, mean_field_crossover, tighter_mean_field_method,
    LatticeSpec, Method,
};
use telecloning::linalg::RngSeed;
use telecloning::mc::McConfig;
use telecloning::monogamy::{tangle_monogamy_curve, tradeoff_curve};
use telecloning::oracle::{
    brute_force_solve, build_r, build_r_haar_mc, covariance_probes, in_verified_range, verify_ansatz,
    verify_condition, verify_covering_projection, CommutatorGram,
};
use telecloning::telemap::{clone_channels, simulate_protocol};

use crate::output::{OutputRecord, Table};

/// Weights whose sum is further than this from one are reported as rescaled.
pub const WEIGHT_WARNING_TOL: f64 = 1e-9;
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-9;
pub const FIDELITY_TOL: f64 = 1e-9;
pub const OVERLAP_TOL: f64 = 1e-9;
pub const COMMUTATOR_TOL: f64 = 1e-10;
pub const COVERING_TOL: f64 = 1e-12;
pub const MC_SIGMAS: f64 = 5.0;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; exit code 2.
    Usage(String),
    /// A library computation failed on valid input; exit code 1.
    Failure(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<telecloning::Error> for CliError {
    fn from(e: telecloning::Error) -> Self {
        match e {
            telecloning::Error::NumericalFailure(_) => CliError::Failure(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Weights from either an explicit list or a symmetric clone count. The
/// second value is a warning when the list had to be rescaled.
pub fn parse_weights(alpha: Option<&[f64]>, symmetric: Option<usize>) -> CliResult<(CloneWeights, Option<String>)> {
    match (alpha, symmetric) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --alpha or --symmetric, not both".into())),
        (None, None) => Err(CliError::Usage("one of --alpha or --symmetric is required".into())),
        (None, Some(n)) => Ok((CloneWeights::uniform(n)?, None)),
        (Some(raw), None) => {
            if raw.is_empty() {
                return Err(CliError::Usage("--alpha needs at least one weight".into()));
            }
            if let Some(bad) = raw.iter().find(|a| !a.is_finite() || **a < 0.0) {
                return Err(CliError::Usage(format!("weights must be non-negative, got {bad}")));
            }
            let sum: f64 = raw.iter().sum();
            let weights = CloneWeights::normalize(raw.to_vec())?;
            let warning = ((sum - 1.0).abs() > WEIGHT_WARNING_TOL)
                .then(|| format!("weights sum to {sum}; rescaled to sum to 1"));
            Ok((weights, warning))
        }
    }
}

fn check_dim(d: usize) -> CliResult<()> {
    if d < 2 {
        return Err(CliError::Usage(format!("local dimension must be at least 2, got {d}")));
    }
    Ok(())
}

pub fn cmd_solve(d: usize, weights: &CloneWeights) -> CliResult<OutputRecord> {
    check_dim(d)?;
    let sol = solve_weights(weights, d)?;
    let mut rec = OutputRecord::new("solve");
    rec.input("d", d).input("alpha", weights.as_slice());
    rec.result("F", sol.global_fidelity)
        .result("lambda", sol.lambda)
        .result("F_n", sol.clone_fidelities.clone())
        .result("p_n", sol.singlet_fractions.clone())
        .result("beta", sol.betas.clone());
    Ok(rec)
}

pub fn cmd_curve(d: usize, points: usize, include_tangle: bool) -> CliResult<OutputRecord> {
    check_dim(d)?;
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if include_tangle && d != 2 {
        return Err(CliError::Usage("the tangle curve exists for qubits only (d = 2)".into()));
    }
    let curve = tradeoff_curve(d, points)?;
    let tangle = if include_tangle {
        Some(tangle_monogamy_curve(points)?)
    } else {
        None
    };
    let mut columns = vec!["p1".to_string(), "p2".to_string()];
    if tangle.is_some() {
        columns.extend(["p1_tangle".to_string(), "p2_tangle".to_string()]);
    }
    let rows = curve
        .iter()
        .enumerate()
        .map(|(k, &(p1, p2))| {
            let mut row = vec![p1, p2];
            if let Some(t) = &tangle {
                row.extend([t[k].0, t[k].1]);
            }
            row
        })
        .collect();
    let mut rec = OutputRecord::new("curve");
    rec.input("d", d).input("points", points).input("include_tangle", include_tangle);
    rec.table = Some(Table { columns, rows });
    Ok(rec)
}

#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub d: usize,
    pub num_clones: usize,
    pub trials: usize,
    pub seed: u64,
    pub mc_samples: usize,
    pub workers: usize,
}

/// Runs every oracle check; the second value lists the failed assertions.
pub fn cmd_verify(args: &VerifyArgs) -> CliResult<(OutputRecord, Vec<String>)> {
    let VerifyArgs {
        d,
        num_clones: n,
        trials,
        seed,
        mc_samples,
        workers,
    } = *args;
    check_dim(d)?;
    if n == 0 {
        return Err(CliError::Usage("--n-clones must be at least 1".into()));
    }
    let seed = RngSeed(seed);
    let verified = in_verified_range(d, n);
    let mut failures = Vec::new();

    let mut weights = vec![CloneWeights::uniform(n)?];
    let mut rng = seed.derive(1).rng();
    for _ in 0..trials {
        weights.push(CloneWeights::random(n, &mut rng)?);
    }

    let (mut max_residual, mut max_gap, mut min_overlap, mut max_excess) = (0.0f64, 0.0f64, 1.0f64, 0.0f64);
    for w in &weights {
        let rep = verify_ansatz(w, d)?;
        max_residual = max_residual.max(rep.eigen_residual);
        max_gap = max_gap.max((rep.brute_fidelity - rep.solver_fidelity).abs());
        min_overlap = min_overlap.min(rep.overlap);
        max_excess = max_excess.max(rep.lambda_predicted - rep.lambda_brute);
    }
    if max_residual >= EIGEN_RESIDUAL_TOL {
        failures.push(format!("ansatz eigen-residual {max_residual:.3e} >= {EIGEN_RESIDUAL_TOL:e}"));
    }
    if max_excess > 1e-10 {
        failures.push(format!("ansatz exceeds the largest eigenvalue by {max_excess:.3e}"));
    }
    if verified {
        if max_gap >= FIDELITY_TOL {
            failures.push(format!("brute-force fidelity differs from solver by {max_gap:.3e}"));
        }
        if 1.0 - min_overlap >= OVERLAP_TOL {
            failures.push(format!("top-eigenspace overlap {min_overlap:.15} below 1 - {OVERLAP_TOL:e}"));
        }
    }

    let probes = covariance_probes(d, trials, seed.derive(2).0)?;
    let gram = CommutatorGram::new(n, d, &probes)?;
    let (mut max_weyl, mut max_haar) = (0.0f64, 0.0f64);
    for w in &weights {
        let norms = gram.norms(w)?;
        max_weyl = norms[..d * d].iter().copied().fold(max_weyl, f64::max);
        max_haar = norms[d * d..].iter().copied().fold(max_haar, f64::max);
    }
    let direct = verify_condition(&weights[0], d, trials, seed.derive(2).0)?.max_norm();
    let commutator = max_weyl.max(max_haar).max(direct);
    if commutator >= COMMUTATOR_TOL {
        failures.push(format!("covariance commutator {commutator:.3e} >= {COMMUTATOR_TOL:e}"));
    }

    let covering = if n <= 5 && d <= 5 {
        let rep = verify_covering_projection(n, d)?;
        if rep.max_ratio_error() >= COVERING_TOL {
            failures.push(format!("covering projection ratio off by {:.3e}", rep.max_ratio_error()));
        }
        Some(rep)
    } else {
        None
    };

    let mc = if mc_samples > 0 {
        let cfg = McConfig::new(mc_samples, seed.derive(3).0).with_workers(workers);
        let est = build_r_haar_mc(&weights[0], d, &cfg)?;
        let exact = build_r(&weights[0], d)?;
        let err = (&est.r.operator - &exact.operator).frobenius_norm();
        if err >= MC_SIGMAS * est.standard_error {
            failures.push(format!(
                "Monte Carlo twirl error {err:.3e} outside {MC_SIGMAS} standard errors ({:.3e})",
                est.standard_error
            ));
        }
        Some((err, est.standard_error))
    } else {
        None
    };

    let brute = brute_force_solve(&build_r(&weights[0], d)?)?;

    let mut rec = OutputRecord::new("verify");
    rec.input("d", d)
        .input("n_clones", n)
        .input("trials", trials)
        .input("seed", seed.0)
        .input("mc_samples", mc_samples);
    rec.result("in_verified_range", verified)
        .result("weight_vectors", weights.len())
        .result("max_eigen_residual", max_residual)
        .result("max_fidelity_gap", max_gap)
        .result("min_top_overlap", min_overlap)
        .result("top_multiplicity_uniform", brute.multiplicity())
        .result("max_commutator_weyl", max_weyl)
        .result("max_commutator_haar", max_haar)
        .result("commutator_direct", direct);
    if let Some(rep) = &covering {
        rec.result("covering_max_ratio_error", rep.max_ratio_error())
            .result("covering_min_state_overlap", rep.min_state_overlap());
    }
    if let Some((err, se)) = mc {
        rec.result("mc_frobenius_error", err).result("mc_standard_error", se);
    }
    rec.result("failed_checks", failures.len());
    Ok((rec, failures))
}

pub fn cmd_heisenberg(c: Option<usize>, couplings: Option<&[f64]>, magnetization: f64) -> CliResult<OutputRecord> {
    let spec = match (c, couplings) {
        (_, Some(j)) => {
            if let Some(c) = c {
                if c != j.len() {
                    return Err(CliError::Usage(format!(
                        "--c {c} does not match {} couplings",
                        j.len()
                    )));
                }
            }
            LatticeSpec::new(j.to_vec())?
        }
        (Some(c), None) => LatticeSpec::isotropic(c)?,
        (None, None) => return Err(CliError::Usage("one of --c or --couplings is required".into())),
    };
    let c = spec.coordination();
    let j = spec.couplings();
    let uniform = j.iter().all(|x| *x == j[0]);

    let mut rec = OutputRecord::new("heisenberg");
    rec.input("c", c).input("couplings", j).input("magnetization", magnetization);
    rec.result("energy_bound_singlet", anisotropic_bound(&spec)?);
    if uniform {
        rec.result("energy_bound_tangle", j[0] * ground_energy_bound(c, Method::Tangle)?);
    }
    let method = match tighter_mean_field_method(c, magnetization)? {
        Method::Singlet => "singlet",
        Method::Tangle => "tangle",
    };
    rec.result("mean_field_singlet", mean_field_accuracy(c, magnetization, Method::Singlet)?)
        .result("mean_field_tangle", mean_field_accuracy(c, magnetization, Method::Tangle)?)
        .result("tighter_mean_field", method)
        .result("crossover_m2", mean_field_crossover(c)?);
    Ok(rec)
}

pub fn cmd_simulate(d: usize, weights: &CloneWeights, samples: usize, seed: u64, workers: usize) -> CliResult<OutputRecord> {
    check_dim(d)?;
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let sol = solve_weights(weights, d)?;
    let resource = ansatz_state(&sol.betas, d)?;
    let exact: Vec<f64> = clone_channels(&resource)?
        .iter()
        .map(|ch| ch.average_fidelity())
        .collect::<telecloning::Result<_>>()?;
    let est = simulate_protocol(weights, d, &McConfig::new(samples, seed).with_workers(workers))?;
    let within = exact
        .iter()
        .zip(est.clone_fidelities.iter().zip(&est.clone_standard_errors))
        .all(|(e, (m, se))| (e - m).abs() <= MC_SIGMAS * se)
        && (sol.global_fidelity - est.global_fidelity).abs() <= MC_SIGMAS * est.global_standard_error;

    let mut rec = OutputRecord::new("simulate");
    rec.input("d", d)
        .input("alpha", weights.as_slice())
        .input("samples", samples)
        .input("seed", seed);
    rec.result("F_exact", sol.global_fidelity)
        .result("F_n_exact", exact)
        .result("F_mc", est.global_fidelity)
        .result("F_mc_standard_error", est.global_standard_error)
        .result("F_n_mc", est.clone_fidelities)
        .result("F_n_mc_standard_error", est.clone_standard_errors)
        .result("within_5_sigma", within);
    Ok(rec)
}
