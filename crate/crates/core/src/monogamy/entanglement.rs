//! Fully entangled fraction, concurrence and tangle of two-qudit states.

use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, hermitian_eig, DenseOperator, RngSeed, StateVector, C64};

/// Random restarts of the local-unitary ascent, after the identity start.
pub const FEF_RESTARTS: usize = 20;
const FEF_SEED: u64 = 0x5EED_FEF0;
const ASCENT_STEPS: usize = 500;
const ASCENT_TOL: f64 = 1e-14;
const STATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FefEstimate {
    pub value: f64,
    /// `true` for the closed-form qubit value; otherwise `value` is a lower
    /// bound reached by local-unitary ascent.
    pub exact: bool,
}

fn local_dim_of(rho: &DenseOperator) -> Result<usize> {
    let dim = rho.dim();
    let d = (dim as f64).sqrt().round() as usize;
    if d * d != dim || d < 2 {
        return Err(Error::InvalidState(format!("dimension {dim} is not a square of d >= 2")));
    }
    Ok(d)
}

fn check_density(rho: &DenseOperator) -> Result<usize> {
    let d = local_dim_of(rho)?;
    if rho.hermiticity_error() > STATE_TOL {
        return Err(Error::InvalidState("not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    let eig = hermitian_eig(rho)?;
    let min = *eig.values.last().expect("nonempty");
    if min < -STATE_TOL {
        return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
    }
    Ok(d)
}

fn magic_basis() -> DenseOperator {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (r, i) = (C64::new(s, 0.0), C64::new(0.0, s));
    let z = C64::new(0.0, 0.0);
    // Columns: (|00>+|11>), i(|00>-|11>), i(|01>+|10>), (|01>-|10>), over sqrt 2.
    let cols = [[r, z, z, r], [i, z, z, -i], [z, i, i, z], [z, r, -r, z]];
    DenseOperator::from_fn(4, |row, col| cols[col][row])
}

/// `<B_0| (W ⊗ 1) rho (W ⊗ 1)^dagger |B_0> = vec(W)^dagger rho vec(W) / d`.
fn overlap(rho: &DenseOperator, w: &DenseOperator) -> f64 {
    rho.sandwich(w.as_slice(), w.as_slice()).re / w.dim() as f64
}

/// Unitary factor of the polar decomposition, `G (G^dagger G)^{-1/2}`.
fn polar_unitary(g: &DenseOperator) -> Option<DenseOperator> {
    let eig = hermitian_eig(&(&g.dagger() * g)).ok()?;
    let top = eig.values[0];
    if !(top > 0.0) || *eig.values.last()? <= 1e-24 * top {
        return None;
    }
    let d = g.dim();
    let inv_sqrt = DenseOperator::from_fn(d, |i, j| {
        (0..d)
            .map(|k| eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() / eig.values[k].sqrt())
            .sum()
    });
    Some(g * &inv_sqrt)
}

/// Monotone ascent `W <- polar(reshape(rho vec W))`; the objective is convex
/// in `vec W`, so each step cannot decrease it.
fn ascend(rho: &DenseOperator, start: DenseOperator) -> f64 {
    let d = start.dim();
    let mut w = start;
    let mut value = overlap(rho, &w);
    for _ in 0..ASCENT_STEPS {
        let g = DenseOperator::from_vec(d, rho.matvec(w.as_slice())).expect("square");
        let Some(next) = polar_unitary(&g) else { break };
        let next_value = overlap(rho, &next);
        if next_value <= value + ASCENT_TOL {
            value = value.max(next_value);
            break;
        }
        w = next;
        value = next_value;
    }
    value
}

/// Fully entangled fraction `max_{U,V} <B_0| U ⊗ V rho U^dagger ⊗ V^dagger |B_0>`.
pub fn fully_entangled_fraction(rho: &DenseOperator) -> Result<FefEstimate> {
    fully_entangled_fraction_seeded(rho, FEF_SEED)
}

pub fn fully_entangled_fraction_seeded(rho: &DenseOperator, seed: u64) -> Result<FefEstimate> {
    let d = check_density(rho)?;
    if d == 2 {
        let m = magic_basis();
        let in_magic = &(&m.dagger() * rho) * &m;
        let real = DenseOperator::from_fn(4, |i, j| C64::new(in_magic[(i, j)].re, 0.0));
        let value = hermitian_eig(&real)?.max_eigenvalue();
        return Ok(FefEstimate { value, exact: true });
    }
    let mut best = ascend(rho, DenseOperator::identity(d));
    let mut rng = RngSeed(seed).rng();
    for _ in 0..FEF_RESTARTS {
        best = best.max(ascend(rho, haar_unitary(d, &mut rng)?));
    }
    Ok(FefEstimate {
        value: best,
        exact: false,
    })
}

/// Singlet fractions of the port with every clone of a resource state.
pub fn pair_fractions(resource: &StateVector) -> Result<Vec<FefEstimate>> {
    let n = resource.register().num_sites();
    (1..n)
        .map(|k| fully_entangled_fraction(&resource.reduced(&[0, k])?))
        .collect()
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &DenseOperator) -> Result<f64> {
    let d = local_dim_of(rho)?;
    if d != 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    check_density(rho)?;
    let y = DenseOperator::from_fn(2, |i, j| match (i, j) {
        (0, 1) => C64::new(0.0, -1.0),
        (1, 0) => C64::new(0.0, 1.0),
        _ => C64::new(0.0, 0.0),
    });
    let yy = y.kron(&y);
    let flipped = &(&yy * &rho.conj()) * &yy;
    let eig = hermitian_eig(rho)?;
    let root = DenseOperator::from_fn(4, |i, j| {
        (0..4)
            .map(|k| eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() * eig.values[k].max(0.0).sqrt())
            .sum()
    });
    let m = &(&root * &flipped) * &root;
    let m = (&m + &m.dagger()).scale_real(0.5);
    let l: Vec<f64> = hermitian_eig(&m)?.values.iter().map(|v| v.max(0.0).sqrt()).collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Tangle `C^2`.
pub fn tangle(rho: &DenseOperator) -> Result<f64> {
    Ok(concurrence(rho)?.powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bell_projector, haar_state, QuditRegister};

    fn pure(amps: &[f64]) -> DenseOperator {
        let v: Vec<C64> = amps.iter().map(|&a| C64::new(a, 0.0)).collect();
        DenseOperator::outer(&v, &v)
    }

    #[test]
    fn qubit_fef_examples() {
        let b0 = bell_projector(2).unwrap();
        let f = fully_entangled_fraction(&b0).unwrap();
        assert!(f.exact && (f.value - 1.0).abs() < 1e-12);
        let mixed = DenseOperator::identity(4).scale_real(0.25);
        assert!((fully_entangled_fraction(&mixed).unwrap().value - 0.25).abs() < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = pure(&[0.0, s, -s, 0.0]);
        assert!(b0.hs_inner(&singlet).re.abs() < 1e-15);
        assert!((fully_entangled_fraction(&singlet).unwrap().value - 1.0).abs() < 1e-12);
        assert!((fully_entangled_fraction(&pure(&[1.0, 0.0, 0.0, 0.0])).unwrap().value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ascent_agrees_with_magic_basis_on_qubits() {
        let mut rng = RngSeed(13).rng();
        let reg = QuditRegister::new(3, 2).unwrap();
        for _ in 0..5 {
            let psi = haar_state(reg, &mut rng);
            let rho = psi.reduced(&[0, 1]).unwrap();
            let exact = fully_entangled_fraction(&rho).unwrap().value;
            let mut best = ascend(&rho, DenseOperator::identity(2));
            for _ in 0..FEF_RESTARTS {
                best = best.max(ascend(&rho, haar_unitary(2, &mut rng).unwrap()));
            }
            assert!(best <= exact + 1e-12);
            assert!(best > exact - 1e-6, "ascent {best} vs exact {exact}");
        }
    }

    #[test]
    fn qutrit_fef_recovers_rotated_bell_state() {
        let mut rng = RngSeed(3).rng();
        let u = haar_unitary(3, &mut rng).unwrap();
        let v = haar_unitary(3, &mut rng).unwrap();
        let uv = u.kron(&v);
        let rho = &(&uv * &bell_projector(3).unwrap()) * &uv.dagger();
        let f = fully_entangled_fraction(&rho).unwrap();
        assert!(!f.exact);
        assert!((f.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_states_rejected() {
        let not_unit = DenseOperator::identity(4);
        assert!(matches!(fully_entangled_fraction(&not_unit), Err(Error::InvalidState(_))));
        let negative = DenseOperator::diagonal(&[1.5, -0.5, 0.0, 0.0]);
        assert!(matches!(fully_entangled_fraction(&negative), Err(Error::InvalidState(_))));
        assert!(fully_entangled_fraction(&DenseOperator::identity(3).scale_real(1.0 / 3.0)).is_err());
    }

    #[test]
    fn concurrence_examples() {
        let b0 = bell_projector(2).unwrap();
        assert!((concurrence(&b0).unwrap() - 1.0).abs() < 1e-7);
        assert!((tangle(&b0).unwrap() - 1.0).abs() < 1e-7);
        assert!(concurrence(&pure(&[1.0, 0.0, 0.0, 0.0])).unwrap() < 1e-7);
        // cos t |00> + sin t |11> has C = sin 2t.
        let t: f64 = 0.3;
        let c = concurrence(&pure(&[t.cos(), 0.0, 0.0, t.sin()])).unwrap();
        assert!((c - (2.0 * t).sin()).abs() < 1e-7);
        let qutrits = DenseOperator::identity(9).scale_real(1.0 / 9.0);
        assert!(matches!(concurrence(&qutrits), Err(Error::UnsupportedDimension(3))));
    }
}
