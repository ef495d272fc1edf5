//! Ground-state energy and mean-field bounds for spin-1/2 Heisenberg
//! lattices, with `H = 1/4 sum_<ij> (XX + YY + ZZ)` per bond.
//!
//! A bond's energy is `1/4 - p` in terms of its singlet fraction `p`, so any
//! cap on the singlet fractions one spin can share with its `c` neighbours
//! caps the energy per site.

use crate::cloner::{solve_weights, symmetric_singlet_fraction, CloneWeights};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Singlet-fraction monogamy, i.e. optimal asymmetric cloning.
    Singlet,
    /// Tangle monogamy with the concurrence bound on the singlet fraction.
    Tangle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    couplings: Vec<f64>,
}

impl LatticeSpec {
    /// `c` equal unit couplings.
    pub fn isotropic(coordination: usize) -> Result<Self> {
        Self::new(vec![1.0; coordination])
    }

    pub fn new(couplings: Vec<f64>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidParameter("coordination number must be at least 1".into()));
        }
        if let Some(j) = couplings.iter().find(|j| !(**j > 0.0 && j.is_finite())) {
            return Err(Error::InvalidParameter(format!("coupling {j} must be positive")));
        }
        Ok(Self { couplings })
    }

    pub fn coordination(&self) -> usize {
        self.couplings.len()
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }
}

fn check_coordination(c: usize) -> Result<f64> {
    if c == 0 {
        return Err(Error::InvalidParameter("coordination number must be at least 1".into()));
    }
    Ok(c as f64)
}

/// Energy `1/4 - p` of one bond with singlet fraction `p`.
pub fn bond_energy_from_p(p: f64) -> f64 {
    0.25 - p
}

/// Energy per site of a translation-invariant state whose bonds all have
/// singlet fraction `p`.
pub fn site_energy(c: usize, p: f64) -> Result<f64> {
    Ok(0.5 * check_coordination(c)? * bond_energy_from_p(p))
}

/// Largest singlet fraction one spin can share with each of `c` neighbours.
pub fn max_singlet_fraction(c: usize, method: Method) -> Result<f64> {
    let cf = check_coordination(c)?;
    Ok(match method {
        Method::Singlet => symmetric_singlet_fraction(c, 2),
        Method::Tangle => 0.5 * (1.0 + 1.0 / cf.sqrt()),
    })
}

/// Lower bound on the ground-state energy per site.
pub fn ground_energy_bound(c: usize, method: Method) -> Result<f64> {
    site_energy(c, max_singlet_fraction(c, method)?)
}

/// Bound on the mean-field error `epsilon` at magnetization `m`.
pub fn mean_field_accuracy(c: usize, m: f64, method: Method) -> Result<f64> {
    let cf = check_coordination(c)?;
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::InvalidParameter(format!("magnetization {m} outside [0, 1]")));
    }
    Ok(match method {
        Method::Tangle => (1.0 - m * m) / (4.0 * cf).sqrt(),
        Method::Singlet => 1.0 / (2.0 * cf),
    })
}

/// Method giving the smaller mean-field error bound; the singlet bound wins
/// for `m^2 <= 1 - 1/sqrt(c)`.
pub fn tighter_mean_field_method(c: usize, m: f64) -> Result<Method> {
    let singlet = mean_field_accuracy(c, m, Method::Singlet)?;
    let tangle = mean_field_accuracy(c, m, Method::Tangle)?;
    Ok(if singlet <= tangle {
        Method::Singlet
    } else {
        Method::Tangle
    })
}

/// Crossover magnetization squared, `1 - 1/sqrt(c)`.
pub fn mean_field_crossover(c: usize) -> Result<f64> {
    Ok(1.0 - 1.0 / check_coordination(c)?.sqrt())
}

/// Energy bound per site for direction-dependent couplings `J_n`, from the
/// asymmetric cloner with weights `alpha = J / sum J`:
/// `E >= (1/4 sum J - max sum J_n p_n) / 2`.
pub fn anisotropic_bound(spec: &LatticeSpec) -> Result<f64> {
    let total: f64 = spec.couplings.iter().sum();
    let weights = CloneWeights::normalize(spec.couplings.clone())?;
    let sol = solve_weights(&weights, 2)?;
    let weighted: f64 = total * (3.0 * sol.global_fidelity - 1.0) / 2.0;
    Ok(0.5 * (0.25 * total - weighted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bond_energies() {
        assert_eq!(bond_energy_from_p(1.0), -0.75);
        assert_eq!(bond_energy_from_p(0.25), 0.0);
        assert!((site_energy(2, 0.75).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn isotropic_bounds() {
        assert!((ground_energy_bound(2, Method::Singlet).unwrap() + 0.5).abs() < 1e-12);
        let t = 0.25 - 0.5 * (1.0 + std::f64::consts::FRAC_1_SQRT_2);
        assert!((ground_energy_bound(2, Method::Tangle).unwrap() - t).abs() < 1e-12);
        assert!((ground_energy_bound(4, Method::Singlet).unwrap() + 0.75).abs() < 1e-12);
        assert!((ground_energy_bound(4, Method::Tangle).unwrap() + 1.0).abs() < 1e-12);
        assert!(ground_energy_bound(0, Method::Singlet).is_err());
    }

    #[test]
    fn mean_field_examples() {
        assert_eq!(mean_field_accuracy(4, 0.0, Method::Tangle).unwrap(), 0.25);
        assert_eq!(mean_field_accuracy(4, 0.0, Method::Singlet).unwrap(), 0.125);
        assert_eq!(mean_field_accuracy(4, 1.0, Method::Tangle).unwrap(), 0.0);
        assert_eq!(tighter_mean_field_method(4, 0.5f64.sqrt() - 1e-6).unwrap(), Method::Singlet);
        assert_eq!(tighter_mean_field_method(4, 0.5f64.sqrt() + 1e-6).unwrap(), Method::Tangle);
        assert!(mean_field_accuracy(4, 1.5, Method::Tangle).is_err());
    }

    #[test]
    fn anisotropic_examples() {
        let b = anisotropic_bound(&LatticeSpec::new(vec![1.0, 1.0]).unwrap()).unwrap();
        assert!((b + 0.5).abs() < 1e-12);
        let b = anisotropic_bound(&LatticeSpec::new(vec![1.0, 1e-12]).unwrap()).unwrap();
        assert!((b + 0.375).abs() < 1e-9);
        let b = anisotropic_bound(&LatticeSpec::new(vec![2.0; 4]).unwrap()).unwrap();
        assert!((b + 1.5).abs() < 1e-12);
        assert!(LatticeSpec::new(vec![1.0, 0.0]).is_err());
        assert!(LatticeSpec::new(vec![]).is_err());
    }
}
