//! Compensated summation.
//!
//! Expectation sweeps add up to 2^20 probability-weighted payouts; plain
//! accumulation would leak enough rounding error to blur the 1e-12
//! agreement we demand against the naive definition. The accumulator below
//! is Neumaier's variant of Kahan summation: the running compensation also
//! captures the case where the incoming term is larger than the sum so far.

/// Error-compensated accumulator for `f64` sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator in. Order matters for bit-reproducibility:
    /// callers must merge partials in a fixed sequence.
    pub fn merge(&mut self, other: KahanSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
