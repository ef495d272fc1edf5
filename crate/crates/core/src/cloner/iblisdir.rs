//! The known `1 -> 1 + N` qubit cloner family, parametrized by `x^2 + y^2 = 1`:
//!
//! ```text
//! F_1 = 1 - 2 y^2 / 3
//! F_N = 1/2 + (y^2 + sqrt(N (N + 2)) x y) / (3 N)
//! ```
//!
//! In terms of ansatz amplitudes, `y^2 = N (N + 2) beta_N^2 / 4` and
//! `x = beta_1 + N beta_N / 2`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IblisdirPoint {
    pub y: f64,
    pub x: f64,
    /// Fidelity of the single distinguished clone.
    pub f1: f64,
    /// Fidelity of each of the `N` symmetric clones.
    pub f_n: f64,
    pub beta_1: f64,
    pub beta_n: f64,
    pub num_symmetric: usize,
}

impl IblisdirPoint {
    /// Ansatz amplitudes over all `N + 1` clones, distinguished clone first.
    pub fn betas(&self) -> Vec<f64> {
        std::iter::once(self.beta_1)
            .chain(std::iter::repeat(self.beta_n).take(self.num_symmetric))
            .collect()
    }

    /// Whether the point corresponds to non-negative amplitudes, i.e. to an
    /// optimal cloner for some non-negative weights.
    pub fn is_attainable(&self) -> bool {
        self.beta_1 >= 0.0 && self.beta_n >= 0.0
    }
}

/// Largest `y^2` for which `beta_1 >= 0`: `(N + 2) / (2 N + 2)`.
pub fn attainable_y_squared_limit(num_symmetric: usize) -> f64 {
    let n = num_symmetric as f64;
    (n + 2.0) / (2.0 * n + 2.0)
}

pub fn iblisdir_family(y: f64, num_symmetric: usize) -> Result<IblisdirPoint> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::InvalidParameter(format!("y = {y} outside [0, 1]")));
    }
    if num_symmetric == 0 {
        return Err(Error::InvalidParameter("need at least one symmetric clone".into()));
    }
    let n = num_symmetric as f64;
    let x = (1.0 - y * y).max(0.0).sqrt();
    let root = (n * (n + 2.0)).sqrt();
    let beta_n = 2.0 * y / root;
    Ok(IblisdirPoint {
        y,
        x,
        f1: 1.0 - 2.0 * y * y / 3.0,
        f_n: 0.5 + (y * y + root * x * y) / (3.0 * n),
        beta_1: x - n * beta_n / 2.0,
        beta_n,
        num_symmetric,
    })
}
