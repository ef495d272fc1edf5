//! Explicit resource state for the optimal cloner.
//!
//! Site 0 is the port qudit that receives the teleported input; sites
//! `1..=N` hold the clones. Branch `n` of the state places `|B_0>` on the
//! pair `(0, n)` and a covering state on the other `N - 1` clones:
//! a uniform superposition over all perfect matchings into `|B_0>` pairs,
//! with one spin left in `|0>` when their number is odd.

use crate::error::{Error, Result};
use crate::linalg::{bell_state, QuditRegister, StateVector, C64};

/// Tolerance on the normalization condition accepted by [`ansatz_state`].
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// `(sum beta)^2 + (d - 1) sum beta^2 - d`.
pub fn normalization_residual(betas: &[f64], d: usize) -> f64 {
    let sum: f64 = betas.iter().sum();
    let sq: f64 = betas.iter().map(|b| b * b).sum();
    sum * sum + (d as f64 - 1.0) * sq - d as f64
}

/// All perfect matchings of `sites` (which must have even length).
pub fn perfect_matchings(sites: &[usize]) -> Vec<Vec<(usize, usize)>> {
    match sites {
        [] => vec![Vec::new()],
        [first, rest @ ..] => {
            let mut out = Vec::new();
            for (k, &partner) in rest.iter().enumerate() {
                let remaining: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &s)| s)
                    .collect();
                for mut m in perfect_matchings(&remaining) {
                    m.insert(0, (*first, partner));
                    out.push(m);
                }
            }
            out
        }
    }
}

/// One covering term: matched pairs, plus the spin set to `|0>` if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Option<usize>,
}

/// Every covering of `sites`.
pub fn coverings(sites: &[usize]) -> Vec<Covering> {
    if sites.len() % 2 == 0 {
        return perfect_matchings(sites)
            .into_iter()
            .map(|pairs| Covering { pairs, unpaired: None })
            .collect();
    }
    let mut out = Vec::new();
    for &z in sites {
        let rest: Vec<usize> = sites.iter().copied().filter(|&s| s != z).collect();
        out.extend(perfect_matchings(&rest).into_iter().map(|pairs| Covering {
            pairs,
            unpaired: Some(z),
        }));
    }
    out
}

fn covering_term(register: QuditRegister, cover: &Covering, bell: &StateVector) -> Result<StateVector> {
    let zero = StateVector::basis(QuditRegister::new(1, register.local_dim())?, 0)?;
    let pair_sites: Vec<[usize; 2]> = cover.pairs.iter().map(|&(a, b)| [a, b]).collect();
    let unpaired = cover.unpaired.map(|z| [z]);
    let mut parts: Vec<(&StateVector, &[usize])> =
        pair_sites.iter().map(|s| (bell, &s[..])).collect();
    if let Some(z) = &unpaired {
        parts.push((&zero, &z[..]));
    }
    StateVector::product(register, &parts)
}

/// Normalized covering state on `num_spins` qudits. The coverings overlap,
/// so the normalization is computed from the summed vector.
pub fn covering_state(num_spins: usize, d: usize) -> Result<StateVector> {
    if num_spins == 0 {
        return Err(Error::InvalidSites("covering needs at least one spin".into()));
    }
    let register = QuditRegister::new(num_spins, d)?;
    let bell = bell_state(d)?;
    let sites: Vec<usize> = (0..num_spins).collect();
    let mut total = StateVector::zeros(register);
    for cover in coverings(&sites) {
        total.add_scaled(C64::new(1.0, 0.0), &covering_term(register, &cover, &bell)?);
    }
    total.normalize()?;
    Ok(total)
}

/// Branch `|B_0>_{0,n} |Phi>_{rest}` on `num_clones + 1` qudits, for clone
/// `n` in `1..=num_clones`.
pub fn clone_branch(n: usize, num_clones: usize, d: usize) -> Result<StateVector> {
    if n == 0 || n > num_clones {
        return Err(Error::InvalidSites(format!(
            "clone {n} outside 1..={num_clones}"
        )));
    }
    let register = QuditRegister::new(num_clones + 1, d)?;
    let bell = bell_state(d)?;
    let pair = [0, n];
    let rest: Vec<usize> = (1..=num_clones).filter(|&m| m != n).collect();
    if rest.is_empty() {
        return StateVector::product(register, &[(&bell, &pair)]);
    }
    let phi = covering_state(rest.len(), d)?;
    StateVector::product(register, &[(&bell, &pair), (&phi, &rest)])
}

/// `|Psi> = sum_n beta_n |B_0>_{0,n} |Phi>_{rest}`; requires `beta` to
/// satisfy the normalization condition.
pub fn ansatz_state(betas: &[f64], d: usize) -> Result<StateVector> {
    if betas.is_empty() {
        return Err(Error::InvalidCoefficients("empty beta".into()));
    }
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let residual = normalization_residual(betas, d);
    if !(residual.abs() <= NORMALIZATION_TOL) {
        return Err(Error::InvalidCoefficients(format!(
            "normalization condition violated by {residual:.3e}"
        )));
    }
    let num_clones = betas.len();
    let register = QuditRegister::new(num_clones + 1, d)?;
    let mut psi = StateVector::zeros(register);
    for (k, &b) in betas.iter().enumerate() {
        if b != 0.0 {
            psi.add_scaled(C64::new(b, 0.0), &clone_branch(k + 1, num_clones, d)?);
        }
    }
    Ok(psi)
}
