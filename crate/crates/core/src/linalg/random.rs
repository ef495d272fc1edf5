//! Seeded sampling of Haar-random states and unitaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::operator::DenseOperator;
use super::register::QuditRegister;
use super::state::StateVector;
use super::C64;
use crate::error::{Error, Result};

/// Seed for every randomized routine; identical seeds give bit-identical streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent stream for worker `worker` of a partitioned run.
    pub fn worker_rng(self, worker: usize) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(worker as u64 + 1);
        rng
    }

    /// Derived seed, used to give sub-tasks their own reproducible stream.
    pub fn derive(self, tag: u64) -> RngSeed {
        // splitmix64 finalizer
        let mut z = self.0 ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RngSeed(z ^ (z >> 31))
    }
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state of a register: normalized i.i.d. complex Gaussians.
pub fn haar_state<R: Rng + ?Sized>(register: QuditRegister, rng: &mut R) -> StateVector {
    loop {
        let amps = (0..register.dim()).map(|_| complex_gaussian(rng)).collect();
        if let Ok(state) = StateVector::normalized(register, amps) {
            return state;
        }
    }
}

/// Haar-random single-qudit state.
pub fn haar_qudit<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<StateVector> {
    Ok(haar_state(QuditRegister::new(1, d)?, rng))
}

/// Haar-random `d x d` unitary from the QR decomposition of a complex
/// Gaussian matrix, with the phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DenseOperator> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let g = DenseOperator::from_fn(d, |_, _| complex_gaussian(rng));
    let (mut q, r) = qr_decompose(&g);
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Random Hermitian matrix with Gaussian entries (GUE-like), for tests and
/// solver self-checks.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DenseOperator {
    let g = DenseOperator::from_fn(dim, |_, _| complex_gaussian(rng));
    (&g + &g.dagger()).scale_real(0.5)
}

/// Householder QR of a square complex matrix: returns unitary `Q` and upper
/// triangular `R` with `A = Q R`.
pub fn qr_decompose(a: &DenseOperator) -> (DenseOperator, DenseOperator) {
    let n = a.dim();
    let mut r = a.clone();
    let mut q = DenseOperator::identity(n);
    for k in 0..n.saturating_sub(1) {
        let norm_x = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        // v = x + phase * |x| e_k, which avoids cancellation.
        let mut v: Vec<C64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] += phase * norm_x;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vnorm);

        // R <- (I - 2 v v^dagger) R on rows k..n.
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * r[(k + t, j)])
                .sum();
            for (t, vt) in v.iter().enumerate() {
                r[(k + t, j)] -= 2.0 * vt * dot;
            }
        }
        // Q <- Q (I - 2 v v^dagger) on columns k..n.
        for i in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| q[(i, k + t)] * vt)
                .sum();
            for (t, vt) in v.iter().enumerate() {
                q[(i, k + t)] -= 2.0 * dot * vt.conj();
            }
        }
        for i in (k + 1)..n {
            r[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    (q, r)
}
