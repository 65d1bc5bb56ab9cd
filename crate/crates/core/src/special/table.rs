use rayon::prelude::*;
use rug::Float;

use crate::coefficients::log10_coefficient;
use crate::error::{Error, Result};
use crate::precision::PrecisionPlan;
use crate::scalar::{BigFloat, Real};
use crate::special::{
    abs_from_rel, bits_for, log10_abs_f64, log_2xi_entry, log_2xi_even_f64, log_bernoulli_entry,
    log_bernoulli_even_f64, LogConstants, Route, XiLogCache,
};

/// `log 2xi(2m)` for `m = 1..=n_max`, each entry with its own absolute
/// accuracy. Immutable once built.
#[derive(Clone, Debug)]
pub struct XiLogTable {
    entries: Vec<BigFloat>,
    accuracy: Vec<u32>,
    digits: u32,
    route: Route,
}

/// `ln |B_2m|` for `m = 1..=n_max`, same layout as [`XiLogTable`].
#[derive(Clone, Debug)]
pub struct BernoulliLogTable {
    entries: Vec<BigFloat>,
    accuracy: Vec<u32>,
}

fn constants_for(accuracy: &[u32]) -> LogConstants {
    let top = accuracy.iter().copied().max().unwrap_or(1);
    let n = accuracy.len().max(1) as f64;
    LogConstants::new(bits_for(f64::from(top) + 3.0 + n.log10(), 1.0))
}

/// Per-entry accuracy needed by the sum for index `plan.n`.
pub(crate) fn plan_accuracy(plan: &PrecisionPlan, value: impl Fn(usize) -> f64) -> Vec<u32> {
    (1..=plan.n)
        .map(|m| plan.entry_accuracy(m, log10_coefficient(plan.n, m), log10_abs_f64(value(m))))
        .collect()
}

impl XiLogTable {
    /// Builds entries `m = 1..=accuracy.len()`, entry m good to
    /// `accuracy[m-1]` decimals. Cached entries are reused and new ones
    /// written back.
    pub fn build(accuracy: Vec<u32>, route: Route, cache: Option<&XiLogCache>) -> Result<Self> {
        let c = constants_for(&accuracy);
        let computed: Vec<(Float, u32)> = accuracy
            .par_iter()
            .enumerate()
            .map(|(i, &acc)| {
                let m = i + 1;
                if let Some(cache) = cache {
                    if let Some(hit) = cache.get(m, acc)? {
                        return Ok(hit);
                    }
                }
                let v = log_2xi_entry(m, f64::from(acc), route, &c)?;
                if let Some(cache) = cache {
                    cache.put(m, acc, &v)?;
                }
                Ok((v, acc))
            })
            .collect::<Result<_>>()?;
        let digits = accuracy.iter().copied().max().unwrap_or(0);
        let (entries, accuracy) = computed
            .into_iter()
            .map(|(v, a)| (BigFloat::from_float(v), a))
            .unzip();
        Ok(XiLogTable {
            entries,
            accuracy,
            digits,
            route,
        })
    }

    /// Every entry to `digits` significant digits.
    pub fn uniform(n_max: usize, digits: u32, route: Route) -> Result<Self> {
        let accuracy = (1..=n_max)
            .map(|m| abs_from_rel(digits, log_2xi_even_f64(m)).ceil() as u32)
            .collect();
        let mut t = Self::build(accuracy, route, None)?;
        t.digits = digits;
        Ok(t)
    }

    /// Entries exactly as accurate as the sum for `plan.n` needs. The same
    /// table serves every smaller n planned with the same target.
    pub fn for_plan(plan: &PrecisionPlan, route: Route, cache: Option<&XiLogCache>) -> Result<Self> {
        let mut t = Self::build(plan_accuracy(plan, log_2xi_even_f64), route, cache)?;
        t.digits = plan.working_digits;
        Ok(t)
    }

    pub fn n_max(&self) -> usize {
        self.entries.len()
    }

    /// Precision tag: the working digits the table was built for.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// `log 2xi(2m)`, m >= 1.
    pub fn get(&self, m: usize) -> &BigFloat {
        &self.entries[m - 1]
    }

    /// Decimals entry m is good to.
    pub fn accuracy(&self, m: usize) -> u32 {
        self.accuracy[m - 1]
    }

    pub fn entries(&self) -> &[BigFloat] {
        &self.entries
    }

    /// Fails unless the table covers `m = 1..=need.len()` with at least the
    /// given accuracies.
    pub fn check(&self, need: &[u32]) -> Result<()> {
        check_against(&self.accuracy, need)
    }
}

fn check_against(have: &[u32], need: &[u32]) -> Result<()> {
    if need.len() > have.len() {
        return Err(Error::TableCoverage {
            need: need.len(),
            have: have.len(),
        });
    }
    for (i, (&h, &n)) in have.iter().zip(need).enumerate() {
        if h < n {
            return Err(Error::PrecisionShortfall {
                m: i + 1,
                have: h,
                need: n,
            });
        }
    }
    Ok(())
}

impl BernoulliLogTable {
    pub fn build(accuracy: Vec<u32>) -> Self {
        let c = constants_for(&accuracy);
        let entries = accuracy
            .par_iter()
            .enumerate()
            .map(|(i, &acc)| BigFloat::from_float(log_bernoulli_entry(i + 1, f64::from(acc), &c)))
            .collect();
        BernoulliLogTable { entries, accuracy }
    }

    /// Accuracy profile for the `u`/`v` forms at `plan.n`.
    pub fn for_plan(plan: &PrecisionPlan) -> Self {
        Self::build(plan_accuracy(plan, log_bernoulli_even_f64))
    }

    pub fn n_max(&self) -> usize {
        self.entries.len()
    }

    /// `ln |B_2m|`, m >= 1.
    pub fn get(&self, m: usize) -> &BigFloat {
        &self.entries[m - 1]
    }

    pub fn accuracy(&self, m: usize) -> u32 {
        self.accuracy[m - 1]
    }

    pub fn check(&self, need: &[u32]) -> Result<()> {
        check_against(&self.accuracy, need)
    }
}

impl XiLogTable {
    /// Entries rounded to f64.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Real::to_f64).collect()
    }
}
