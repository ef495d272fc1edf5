use crate::error::{Error, Result};

/// A register of `num_sites` qudits that all share the local dimension `d`.
///
/// Basis indices are big-endian: site 0 is the most significant digit, so
/// site `s` carries the place value `d^(num_sites - 1 - s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuditRegister {
    num_sites: usize,
    local_dim: usize,
    dim: usize,
}

impl QuditRegister {
    /// Largest total Hilbert-space dimension a register may have.
    pub const MAX_DIM: usize = 1 << 20;

    pub fn new(num_sites: usize, local_dim: usize) -> Result<Self> {
        if local_dim < 2 {
            return Err(Error::InvalidDimension(local_dim));
        }
        if num_sites == 0 {
            return Err(Error::InvalidSites("a register needs at least one site".into()));
        }
        let mut dim: usize = 1;
        for _ in 0..num_sites {
            dim = dim
                .checked_mul(local_dim)
                .filter(|&v| v <= Self::MAX_DIM)
                .ok_or_else(|| {
                    Error::TooLarge(format!(
                        "{local_dim}^{num_sites} exceeds {}",
                        Self::MAX_DIM
                    ))
                })?;
        }
        Ok(Self {
            num_sites,
            local_dim,
            dim,
        })
    }

    #[inline]
    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    #[inline]
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Total dimension `d^num_sites`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn place_value(&self, site: usize) -> usize {
        self.local_dim.pow((self.num_sites - 1 - site) as u32)
    }

    /// Digit of basis index `index` at `site`.
    #[inline]
    pub fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.place_value(site)) % self.local_dim
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.num_sites];
        for slot in digits.iter_mut().rev() {
            *slot = index % self.local_dim;
            index /= self.local_dim;
        }
        digits
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .fold(0, |acc, &digit| acc * self.local_dim + digit)
    }

    /// Checks that `sites` is a nonempty list of distinct, in-range sites.
    pub fn check_sites(&self, sites: &[usize]) -> Result<()> {
        if sites.is_empty() {
            return Err(Error::InvalidSites("empty site set".into()));
        }
        for (k, &s) in sites.iter().enumerate() {
            if s >= self.num_sites {
                return Err(Error::InvalidSites(format!(
                    "site {s} outside register of {} sites",
                    self.num_sites
                )));
            }
            if sites[..k].contains(&s) {
                return Err(Error::InvalidSites(format!("site {s} listed twice")));
            }
        }
        Ok(())
    }

    /// Register over a subset of the sites, in the order given.
    pub fn subregister(&self, sites: &[usize]) -> Result<Self> {
        self.check_sites(sites)?;
        Self::new(sites.len(), self.local_dim)
    }

    /// Full-register index offsets of every basis state of the subregister
    /// spanned by `sites`, enumerated big-endian in the given site order.
    ///
    /// Adding the offsets of two disjoint site lists that together cover the
    /// register yields the full index.
    pub fn offsets(&self, sites: &[usize]) -> Vec<usize> {
        let mut offsets = vec![0usize];
        for &s in sites {
            let pv = self.place_value(s);
            offsets = offsets
                .iter()
                .flat_map(|&base| (0..self.local_dim).map(move |x| base + x * pv))
                .collect();
        }
        offsets
    }

    /// Sites not contained in `sites`, ascending.
    pub fn complement(&self, sites: &[usize]) -> Vec<usize> {
        (0..self.num_sites).filter(|s| !sites.contains(s)).collect()
    }
}
