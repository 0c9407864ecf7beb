//! Enumeration controls: candidate caps and deterministic worker scans.

use crate::error::{Error, Result};

/// Environment variable capping the worker count used by enumeration scans.
pub const WORKERS_ENV: &str = "MDL_BELL_WORKERS";

/// Default cap on enumerated candidates.
pub const DEFAULT_CAP: u128 = 100_000_000;

/// Controls for the exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Upper bound on the number of enumerated candidates.
    pub cap: u128,
    /// Worker threads for partitioned scans. Results are identical for any
    /// worker count; only wall time changes.
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cap: DEFAULT_CAP,
            workers: 1,
        }
    }
}

impl ScanOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    /// Workers from `MDL_BELL_WORKERS`, defaulting to the available
    /// parallelism (capped at 8).
    pub fn from_env() -> Self {
        ScanOptions::default().with_workers(workers_from_env())
    }

    pub fn check_cap(&self, required: u128) -> Result<()> {
        if required > self.cap {
            return Err(Error::TooLarge {
                required,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Resolve the worker count from the environment.
pub fn workers_from_env() -> usize {
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
}

/// A maximizer candidate: value plus the enumeration index that produced it.
/// Ties prefer the smaller index, making reductions order-independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Best {
    pub value: f64,
    pub index: u64,
}

impl Best {
    pub const NONE: Best = Best {
        value: f64::NEG_INFINITY,
        index: u64::MAX,
    };

    pub fn take(&mut self, value: f64, index: u64) {
        if value > self.value || (value == self.value && index < self.index) {
            self.value = value;
            self.index = index;
        }
    }

    pub fn merge(&mut self, other: Best) {
        self.take(other.value, other.index);
    }
}

/// Split `[0, n)` into at most `workers` contiguous chunks.
pub fn split_range(n: u64, workers: usize) -> Vec<(u64, u64)> {
    let workers = workers.max(1) as u64;
    let chunks = workers.min(n.max(1));
    let base = n / chunks;
    let extra = n % chunks;
    let mut ranges = Vec::with_capacity(chunks as usize);
    let mut start = 0;
    for i in 0..chunks {
        let len = base + u64::from(i < extra);
        ranges.push((start, start + len));
        start += len;
    }
    ranges
}

/// Scan `[0, n)` with `eval`, partitioned across workers, returning the
/// maximum with the smallest attaining index.
pub fn parallel_argmax<F>(n: u64, workers: usize, eval: F) -> Best
where
    F: Fn(u64) -> f64 + Sync,
{
    let ranges = split_range(n, workers);
    if ranges.len() <= 1 {
        let mut best = Best::NONE;
        for i in 0..n {
            best.take(eval(i), i);
        }
        return best;
    }
    let eval = &eval;
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|(start, end)| {
                scope.spawn(move || {
                    let mut best = Best::NONE;
                    for i in start..end {
                        best.take(eval(i), i);
                    }
                    best
                })
            })
            .collect();
        let mut best = Best::NONE;
        for handle in handles {
            best.merge(handle.join().expect("scan worker panicked"));
        }
        best
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_range() {
        for n in [0u64, 1, 7, 100] {
            for workers in [1usize, 3, 4, 13] {
                let ranges = split_range(n, workers);
                let mut next = 0;
                for (start, end) in &ranges {
                    assert_eq!(*start, next);
                    assert!(end >= start);
                    next = *end;
                }
                assert_eq!(next, n);
            }
        }
    }

    #[test]
    fn argmax_independent_of_workers() {
        let eval = |i: u64| ((i as f64) * 0.7).sin();
        let single = parallel_argmax(10_000, 1, eval);
        for workers in [2, 4, 7] {
            assert_eq!(parallel_argmax(10_000, workers, eval), single);
        }
    }

    #[test]
    fn ties_prefer_smallest_index() {
        let best = parallel_argmax(100, 4, |i| f64::from(i % 10 == 3));
        assert_eq!(best.index, 3);
        assert_eq!(best.value, 1.0);
    }

    #[test]
    fn cap_enforced() {
        let opts = ScanOptions::default().with_cap(10);
        assert!(opts.check_cap(10).is_ok());
        assert!(matches!(opts.check_cap(11), Err(Error::TooLarge { .. })));
    }
}
