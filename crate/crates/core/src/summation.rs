//! Compensated summation with a reproducible parallel reduction.
//!
//! [`block_sum`] splits an index range into fixed-length blocks, sums each
//! block with a [`CompensatedSum`] and merges the per-block accumulators in
//! block order. The block boundaries never depend on the number of worker
//! threads, so the result is bit-identical for any pool size, including the
//! single-threaded case.

use std::ops::Range;

use rayon::prelude::*;

/// Number of terms handled by one task in [`block_sum`].
pub const BLOCK_LEN: usize = 4096;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// `Σ_{i ∈ range} term(i)` with deterministic blocked reduction.
pub fn block_sum<F>(range: Range<usize>, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let Range { start, end } = range;
    if end <= start {
        return 0.0;
    }
    let blocks = (end - start).div_ceil(BLOCK_LEN);
    let partials: Vec<CompensatedSum> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = start + b * BLOCK_LEN;
            let hi = (lo + BLOCK_LEN).min(end);
            (lo..hi).map(&term).collect()
        })
        .collect();
    let mut total = CompensatedSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let acc: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn harmonic_sum_beats_naive() {
        let n = 1_000_000;
        // H_n = ln n + γ + 1/(2n) - 1/(12n²) + 1/(120n⁴) - …
        let nf = n as f64;
        let exact = nf.ln() + 0.577_215_664_901_532_9 + 0.5 / nf - 1.0 / (12.0 * nf * nf);
        let comp: CompensatedSum = (1..=n).map(|i| 1.0 / i as f64).collect();
        let mut naive = 0.0;
        for i in 1..=n {
            naive += 1.0 / i as f64;
        }
        let comp_err = (comp.value() - exact).abs();
        assert!(comp_err <= 2.0 * f64::EPSILON * exact, "{comp_err}");
        assert!(comp_err < (naive - exact).abs());
    }

    #[test]
    fn block_sum_of_integers_is_exact() {
        let s = block_sum(0..100_001, |i| i as f64);
        assert_eq!(s, 100_000.0 * 100_001.0 / 2.0);
        assert_eq!(block_sum(5..5, |_| 1.0), 0.0);
    }

    #[test]
    fn block_sum_ignores_pool_size() {
        let term = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| block_sum(3..250_003, term))
        };
        let one = run(1);
        for threads in [2, 3, 8] {
            assert_eq!(one.to_bits(), run(threads).to_bits());
        }
    }
}
