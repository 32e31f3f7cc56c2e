/// Compensated accumulator using Neumaier's variant of Kahan summation.
///
/// Carries a running correction term so that adding many terms of mixed
/// magnitude loses far less precision than a bare `f64` sum. The prime
/// product code sums tens of thousands of logarithms near zero, where
/// the compensation costs a few extra adds per term and buys several
/// digits at the large truncation bounds.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
