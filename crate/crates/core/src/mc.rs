//! Partitioning of Monte Carlo runs across workers.
//!
//! A run is fully determined by `(seed, samples, workers)`: worker `w` draws
//! its share of the samples from its own stream of the seed, and the partial
//! sums are combined in worker order.

use crate::linalg::RngSeed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: RngSeed,
    pub workers: usize,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed: RngSeed(seed),
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Number of samples assigned to each worker.
    pub fn shares(&self) -> Vec<usize> {
        let workers = self.workers.max(1);
        let base = self.samples / workers;
        let extra = self.samples % workers;
        (0..workers).map(|w| base + usize::from(w < extra)).collect()
    }

    /// Runs `task(worker, share)` for every worker, on scoped threads when
    /// there is more than one, and returns the results in worker order.
    pub fn run<T, F>(&self, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, usize) -> T + Sync,
    {
        let shares = self.shares();
        if shares.len() == 1 {
            return vec![task(0, shares[0])];
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = shares
                .iter()
                .enumerate()
                .map(|(w, &share)| {
                    let task = &task;
                    scope.spawn(move || task(w, share))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("Monte Carlo worker panicked"))
                .collect()
        })
    }
}

/// Worker count from the `SM_TOOLKIT_THREADS` environment variable, if set
/// to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var("SM_TOOLKIT_THREADS")
        .ok()?
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&w| w > 0)
}
