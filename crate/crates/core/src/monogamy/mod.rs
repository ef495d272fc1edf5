//! Singlet-fraction monogamy for pure states with a maximally entangled
//! reduction, its boundary, and the qubit tangle comparison curve.
//!
//! For a port qudit sharing singlet fractions `p_n` with `N` others, every
//! telecloning resource satisfies
//! `sum p <= (d - 1)/d + (sum sqrt p)^2 / (N + d - 1)`, with equality
//! exactly on the optimal cloners.

mod entanglement;

pub use entanglement::{
    concurrence, fully_entangled_fraction, fully_entangled_fraction_seeded, pair_fractions, tangle, FefEstimate,
    FEF_RESTARTS,
};

use crate::cloner::{solve_weights, CloneWeights};
use crate::error::{Error, Result};

/// Slack in the boundary quadratic's discriminant treated as a double root.
pub const DISCRIMINANT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FractionProfile {
    d: usize,
    fractions: Vec<f64>,
}

impl FractionProfile {
    pub fn new(d: usize, fractions: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        check_fractions(&fractions)?;
        Ok(Self { d, fractions })
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn fractions(&self) -> &[f64] {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }
}

fn check_fractions(fractions: &[f64]) -> Result<()> {
    match fractions.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        Some(p) => Err(Error::InvalidParameter(format!("singlet fraction {p} outside [0, 1]"))),
        None => Ok(()),
    }
}

/// Right-hand side minus left-hand side of the monogamy relation;
/// non-negative exactly when the relation holds.
pub fn singlet_monogamy_gap(profile: &FractionProfile) -> f64 {
    let d = profile.d as f64;
    let n = profile.len() as f64;
    let roots: f64 = profile.fractions.iter().map(|p| p.sqrt()).sum();
    let total: f64 = profile.fractions.iter().sum();
    (d - 1.0) / d + roots * roots / (n + d - 1.0) - total
}

/// Largest singlet fraction the first clone can have when the others have
/// `others`, i.e. the larger root of the saturated relation.
pub fn max_last_fraction(others: &[f64], d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    check_fractions(others)?;
    let df = d as f64;
    let k = (others.len() + 1) as f64 + df - 1.0;
    let s: f64 = others.iter().map(|p| p.sqrt()).sum();
    let t: f64 = others.iter().sum();
    // (k - 1) x^2 - 2 s x + (k t - k (d - 1)/d - s^2) = 0 with x = sqrt(p_1)
    let c = k * t - k * (df - 1.0) / df - s * s;
    let mut disc = s * s - (k - 1.0) * c;
    if disc < 0.0 {
        if disc < -DISCRIMINANT_TOL {
            return Err(Error::InfeasibleProfile(format!(
                "no admissible first fraction (discriminant {disc:.3e})"
            )));
        }
        disc = 0.0;
    }
    let x = (s + disc.sqrt()) / (k - 1.0);
    Ok((x * x).clamp(0.0, 1.0))
}

/// Footnoted PPT bound: fractions at or below `(N - 1)/(d (N + d - 2))` are
/// attainable by separable reductions.
pub fn ppt_threshold(num_clones: usize, d: usize) -> Result<f64> {
    if num_clones < 2 {
        return Err(Error::InvalidParameter("threshold needs at least two clones".into()));
    }
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let (n, d) = (num_clones as f64, d as f64);
    Ok((n - 1.0) / (d * (n + d - 2.0)))
}

/// Optimal two-clone trade-off: solver singlet fractions for
/// `alpha = (a, 1 - a)` with `a` on a uniform grid of `[0, 1]`.
pub fn tradeoff_curve(d: usize, num_points: usize) -> Result<Vec<(f64, f64)>> {
    if num_points < 2 {
        return Err(Error::InvalidParameter("a curve needs at least two points".into()));
    }
    (0..num_points)
        .map(|k| {
            let a = k as f64 / (num_points - 1) as f64;
            let w = CloneWeights::new(vec![a, 1.0 - a])?;
            let sol = solve_weights(&w, d)?;
            Ok((sol.singlet_fractions[0], sol.singlet_fractions[1]))
        })
        .collect()
}

/// Reconstructed qubit curve from tangle monogamy with unit total tangle, using the
/// singlet fraction `(1 + C)/2` reachable at concurrence `C`:
/// `(2 p_1 - 1)^2 + (2 p_2 - 1)^2 = 1`, traced from `(1/2, 1)` to `(1, 1/2)`.
pub fn tangle_monogamy_curve(num_points: usize) -> Result<Vec<(f64, f64)>> {
    if num_points < 2 {
        return Err(Error::InvalidParameter("a curve needs at least two points".into()));
    }
    Ok((0..num_points)
        .map(|k| {
            let theta = std::f64::consts::FRAC_PI_2 * k as f64 / (num_points - 1) as f64;
            (0.5 * (1.0 + theta.sin()), 0.5 * (1.0 + theta.cos()))
        })
        .collect())
}
