use crate::error::{Error, Result};

/// A comparison function: nondecreasing on `[0,∞)` with `φ^(n)(t) → 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum ComparisonFunction {
    /// `φ(t) = c·t`, `0 <= c < 1`.
    Linear(f64),
    /// Piecewise-linear through `(args[i], values[i])`, extended past the
    /// last sample by the ray through the origin and the last sample.
    Table { args: Vec<f64>, values: Vec<f64> },
    /// Pointwise maximum of the members.
    Max(Vec<ComparisonFunction>),
}

/// Outcome of the numeric comparison-function check.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonCheck {
    pub nondecreasing: bool,
    pub vanishing: bool,
    /// Largest `φ^(n_max)(t)` over the sampled `t`.
    pub worst_tail: f64,
}

impl ComparisonCheck {
    pub fn passed(&self) -> bool {
        self.nondecreasing && self.vanishing
    }
}

impl ComparisonFunction {
    pub fn linear(c: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&c) {
            return Err(Error::InvalidComparison(format!("linear factor {c} not in [0,1)")));
        }
        Ok(ComparisonFunction::Linear(c))
    }

    pub fn table(args: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if args.len() < 2 || args.len() != values.len() {
            return Err(Error::InvalidComparison("table needs at least two matching samples".into()));
        }
        if args[0] != 0.0 || values[0] != 0.0 {
            return Err(Error::InvalidComparison("table must start at (0, 0)".into()));
        }
        if args.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidComparison("arguments must increase strictly".into()));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidComparison("values must be nondecreasing".into()));
        }
        let (t, v) = (args[args.len() - 1], values[values.len() - 1]);
        if v >= t {
            return Err(Error::InvalidComparison("last value must lie below the diagonal".into()));
        }
        Ok(ComparisonFunction::Table { args, values })
    }

    pub fn max_of(members: Vec<ComparisonFunction>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidComparison("max of nothing".into()));
        }
        Ok(ComparisonFunction::Max(members))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ComparisonFunction::Linear(c) => c * t,
            ComparisonFunction::Table { args, values } => {
                let last = args.len() - 1;
                if t >= args[last] {
                    return values[last] * t / args[last];
                }
                let i = args.partition_point(|&a| a <= t).saturating_sub(1);
                let w = (t - args[i]) / (args[i + 1] - args[i]);
                values[i] + w * (values[i + 1] - values[i])
            }
            ComparisonFunction::Max(ms) => ms.iter().map(|m| m.eval(t)).fold(0.0, f64::max),
        }
    }

    /// Monotonicity on the sorted samples and `φ^(n_max)(t) <= tol` for each.
    pub fn check(&self, samples: &[f64], n_max: usize, tol: f64) -> ComparisonCheck {
        let mut ts = samples.to_vec();
        ts.sort_by(f64::total_cmp);
        let vals: Vec<f64> = ts.iter().map(|&t| self.eval(t)).collect();
        let nondecreasing = vals.windows(2).all(|w| w[1] >= w[0]);
        let worst_tail = ts
            .iter()
            .map(|&t| (0..n_max).fold(t, |acc, _| self.eval(acc)))
            .fold(0.0, f64::max);
        ComparisonCheck { nondecreasing, vanishing: worst_tail <= tol, worst_tail }
    }
}
