use super::operator::DenseOperator;
use super::register::QuditRegister;
use super::C64;
use crate::error::{Error, Result};

/// Pure state of a qudit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: QuditRegister,
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(register: QuditRegister, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != register.dim() {
            return Err(Error::DimensionMismatch {
                expected: register.dim(),
                got: amps.len(),
            });
        }
        Ok(Self { register, amps })
    }

    /// Wraps and normalizes raw amplitudes.
    pub fn normalized(register: QuditRegister, amps: Vec<C64>) -> Result<Self> {
        let mut state = Self::from_amplitudes(register, amps)?;
        state.normalize()?;
        Ok(state)
    }

    pub fn zeros(register: QuditRegister) -> Self {
        Self {
            register,
            amps: vec![C64::new(0.0, 0.0); register.dim()],
        }
    }

    pub fn basis(register: QuditRegister, index: usize) -> Result<Self> {
        if index >= register.dim() {
            return Err(Error::InvalidIndex {
                index,
                dim: register.dim(),
            });
        }
        let mut state = Self::zeros(register);
        state.amps[index] = C64::new(1.0, 0.0);
        Ok(state)
    }

    /// Tensor product of sub-states placed on disjoint site lists that
    /// together cover `register`. Each part's own site order follows the
    /// order of its list.
    pub fn product(register: QuditRegister, parts: &[(&StateVector, &[usize])]) -> Result<Self> {
        let mut covered = Vec::new();
        for (part, sites) in parts {
            register.check_sites(sites)?;
            if part.register.local_dim() != register.local_dim()
                || part.register.num_sites() != sites.len()
            {
                return Err(Error::DimensionMismatch {
                    expected: register.local_dim().pow(sites.len() as u32),
                    got: part.dim(),
                });
            }
            covered.extend_from_slice(sites);
        }
        register.check_sites(&covered)?;
        if covered.len() != register.num_sites() {
            return Err(Error::InvalidSites(format!(
                "parts cover {} of {} sites",
                covered.len(),
                register.num_sites()
            )));
        }
        let mut amps = vec![C64::new(1.0, 0.0)];
        let mut offsets = vec![0usize];
        for (part, sites) in parts {
            let local = register.offsets(sites);
            let mut next_amps = Vec::with_capacity(amps.len() * local.len());
            let mut next_offsets = Vec::with_capacity(amps.len() * local.len());
            for (&a, &o) in amps.iter().zip(&offsets) {
                for (&b, &l) in part.amps.iter().zip(&local) {
                    next_amps.push(a * b);
                    next_offsets.push(o + l);
                }
            }
            amps = next_amps;
            offsets = next_offsets;
        }
        let mut out = Self::zeros(register);
        for (a, o) in amps.into_iter().zip(offsets) {
            out.amps[o] = a;
        }
        Ok(out)
    }

    #[inline]
    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> Result<f64> {
        let norm = self.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NumericalFailure(format!(
                "cannot normalize a state of norm {norm}"
            )));
        }
        let inv = 1.0 / norm;
        self.amps.iter_mut().for_each(|z| *z *= inv);
        Ok(norm)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim(), "state dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: C64, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "state dimension mismatch");
        for (a, &b) in self.amps.iter_mut().zip(&other.amps) {
            *a += factor * b;
        }
    }

    pub fn scale(&mut self, factor: C64) {
        self.amps.iter_mut().for_each(|z| *z *= factor);
    }

    /// Applies a full-register operator (no renormalization).
    pub fn apply(&self, op: &DenseOperator) -> Result<Self> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: op.dim(),
            });
        }
        Ok(Self {
            register: self.register,
            amps: op.matvec(&self.amps),
        })
    }

    /// Applies a single-qudit operator to `site` in place.
    pub fn apply_local(&mut self, site: usize, u: &DenseOperator) -> Result<()> {
        let d = self.register.local_dim();
        if site >= self.register.num_sites() {
            return Err(Error::InvalidSites(format!("site {site} out of range")));
        }
        if u.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: u.dim(),
            });
        }
        let n = self.dim();
        let pv = self.register.place_value(site);
        let mut buf = vec![C64::new(0.0, 0.0); d];
        for hi in (0..n).step_by(d * pv) {
            for lo in 0..pv {
                for (x, slot) in buf.iter_mut().enumerate() {
                    *slot = (0..d).map(|y| u[(x, y)] * self.amps[hi + y * pv + lo]).sum();
                }
                for (x, &v) in buf.iter().enumerate() {
                    self.amps[hi + x * pv + lo] = v;
                }
            }
        }
        Ok(())
    }

    /// `|psi><psi|`.
    pub fn density(&self) -> DenseOperator {
        DenseOperator::outer(&self.amps, &self.amps)
    }

    /// Reduced density operator on `keep`, in the given site order.
    pub fn reduced(&self, keep: &[usize]) -> Result<DenseOperator> {
        self.register.check_sites(keep)?;
        let ok = self.register.offsets(keep);
        let oe = self.register.offsets(&self.register.complement(keep));
        let mut rho = DenseOperator::zeros(ok.len());
        for &e in &oe {
            for (a, &ka) in ok.iter().enumerate() {
                let va = self.amps[ka + e];
                if va == C64::new(0.0, 0.0) {
                    continue;
                }
                for (b, &kb) in ok.iter().enumerate() {
                    rho[(a, b)] += va * self.amps[kb + e].conj();
                }
            }
        }
        Ok(rho)
    }
}
