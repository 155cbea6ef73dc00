//! Deterministic parallel reduction over sample indices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 42;

/// Samples per work unit. Fixed so the reduction tree never depends on the
/// number of threads.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCConfig {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
}

impl MCConfig {
    pub fn new(seed: u64, samples: u64, workers: usize) -> Result<Self> {
        if samples == 0 {
            return Err(Error::validation("samples", "must be at least 1"));
        }
        if workers == 0 {
            return Err(Error::validation("workers", "must be at least 1"));
        }
        Ok(MCConfig { seed, samples, workers })
    }

    /// Uses every available core.
    pub fn with_seed(seed: u64, samples: u64) -> Result<Self> {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        MCConfig::new(seed, samples, workers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub value: f64,
    pub stderr: f64,
    pub n: u64,
}

impl MCEstimate {
    /// Number of standard errors separating the estimate from `target`.
    /// A zero standard error gives 0 on exact agreement and infinity otherwise.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.value - target).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.stderr
        }
    }

    /// Whether `target` lies within `k` standard errors.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        self.z_score(target) <= k
    }
}

/// Streaming mean and centered second moment (Welford, merged with Chan's
/// update).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Moments {
    pub n: u64,
    pub mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.n as f64 * w;
        self.n = n;
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        }
    }

    /// Sample standard error of the mean.
    pub fn estimate(&self) -> MCEstimate {
        MCEstimate {
            value: self.mean,
            stderr: (self.variance() / self.n as f64).sqrt(),
            n: self.n,
        }
    }

    /// Estimate of a probability with the binomial standard error.
    pub fn proportion(&self) -> MCEstimate {
        let p = self.mean.clamp(0.0, 1.0);
        MCEstimate {
            value: p,
            stderr: (p * (1.0 - p) / self.n as f64).sqrt(),
            n: self.n,
        }
    }
}

/// Per-chunk state combined in chunk order.
pub trait Merge: Clone + Send + Sync {
    fn merge(&mut self, other: Self);
}

impl Merge for Moments {
    fn merge(&mut self, other: Self) {
        Moments::merge(self, &other);
    }
}

impl<const K: usize> Merge for [Moments; K] {
    fn merge(&mut self, other: Self) {
        for (m, o) in self.iter_mut().zip(other.iter()) {
            m.merge(o);
        }
    }
}

impl Merge for Vec<Moments> {
    fn merge(&mut self, other: Self) {
        for (m, o) in self.iter_mut().zip(other.iter()) {
            m.merge(o);
        }
    }
}

impl<const K: usize> Merge for [f64; K] {
    fn merge(&mut self, other: Self) {
        for (s, x) in self.iter_mut().zip(other) {
            *s += x;
        }
    }
}

impl<A: Merge, B: Merge> Merge for (A, B) {
    fn merge(&mut self, other: Self) {
        self.0.merge(other.0);
        self.1.merge(other.1);
    }
}

impl Merge for bool {
    fn merge(&mut self, other: Self) {
        *self |= other;
    }
}

/// Calls `draw(i, acc)` for every sample index `i` in `0..cfg.samples`,
/// starting each chunk from a copy of `empty`, then merges chunks in order.
/// Output is bit-identical for any `cfg.workers`.
pub fn run<A, F>(cfg: &MCConfig, empty: &A, draw: F) -> A
where
    A: Merge,
    F: Fn(u64, &mut A) + Sync,
{
    let chunks = cfg.samples.div_ceil(CHUNK);
    let work = |c: u64| {
        let mut acc = empty.clone();
        let end = ((c + 1) * CHUNK).min(cfg.samples);
        for i in c * CHUNK..end {
            draw(i, &mut acc);
        }
        acc
    };
    let parts: Vec<A> = if cfg.workers <= 1 || chunks == 1 {
        (0..chunks).map(work).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build() {
            Ok(pool) => pool.install(|| (0..chunks).into_par_iter().map(work).collect()),
            Err(_) => (0..chunks).map(work).collect(),
        }
    };
    let mut total = empty.clone();
    for p in parts {
        total.merge(p);
    }
    total
}
