//! Precision budget for the alternating sums.
//!
//! The summands of the closed form grow like `10^(n * varpi(m/n))` while the
//! sum itself stays of order `log n`, so every summand has to be carried with
//! about `log10 |s_m|` digits plus the digits wanted in the result. The
//! limiting profile `varpi` peaks at `r = 1/sqrt 2` with value
//! `log10(3 + 2 sqrt 2)`.

use num_traits::Float;

use crate::error::{Error, Result};

/// `log10(3 + 2 sqrt 2)`, the peak of [`varpi`].
pub const PEAK_RATIO: f64 = 0.765_551_370_675_726_2;

/// Guard digits added on top of the requested accuracy.
pub const BASE_GUARD_DIGITS: u32 = 15;

fn xlog10x<F: Float>(x: F) -> F {
    if x == F::zero() {
        F::zero()
    } else {
        x * x.log10()
    }
}

/// Limiting digits-per-n profile of the summand magnitudes at `r = m/n`.
pub fn varpi<F: Float>(r: F) -> Result<F> {
    if !(r >= F::zero() && r <= F::one()) {
        return Err(Error::Domain(format!(
            "varpi needs r in [0, 1], got {}",
            r.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let two = F::one() + F::one();
    Ok(-two * xlog10x(r) + xlog10x(F::one() + r) - xlog10x(F::one() - r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionPlan {
    pub n: usize,
    pub target_digits: u32,
    pub working_digits: u32,
    pub guard_digits: u32,
    pub peak_ratio: f64,
    /// `profile[m - 1]` = digits needed by summand m, m = 1..=n.
    profile: Vec<u32>,
}

/// Working precision for computing the n-th coefficient to `target_digits`
/// decimals.
pub fn plan_for(n: usize, target_digits: u32) -> Result<PrecisionPlan> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if target_digits == 0 {
        return Err(Error::Domain("target digits must be at least 1".into()));
    }
    let nf = n as f64;
    let guard_digits = target_digits + BASE_GUARD_DIGITS + (nf + 1.0).log10().ceil() as u32;
    let working_digits = (PEAK_RATIO * nf).ceil() as u32 + guard_digits;
    let profile = (1..=n)
        .map(|m| {
            let r = m as f64 / nf;
            (nf * varpi(r).expect("r in range")).ceil().max(0.0) as u32
        })
        .collect();
    Ok(PrecisionPlan {
        n,
        target_digits,
        working_digits,
        guard_digits,
        peak_ratio: PEAK_RATIO,
        profile,
    })
}

impl PrecisionPlan {
    /// Required digits for summand `m` (1-based).
    pub fn profile(&self, m: usize) -> u32 {
        self.profile[m - 1]
    }

    pub fn profile_slice(&self) -> &[u32] {
        &self.profile
    }

    pub fn peak_profile(&self) -> u32 {
        self.profile.iter().copied().max().unwrap_or(0)
    }

    /// Raise the working precision. Requests below the plan are ignored;
    /// the surplus is credited to the guard digits.
    pub fn with_working_digits(mut self, digits: u32) -> Self {
        if digits > self.working_digits {
            self.guard_digits += digits - self.working_digits;
            self.working_digits = digits;
        }
        self
    }

    /// Same plan with the working precision scaled by `factor` (>= 1).
    pub fn scaled(&self, factor: f64) -> Self {
        let digits = (f64::from(self.working_digits) * factor).ceil() as u32;
        self.clone().with_working_digits(digits)
    }

    /// Digits an entry must carry when its summand is known to reach
    /// `10^measured` (the larger of this and the profile wins).
    pub fn entry_digits(&self, m: usize, measured: f64) -> u32 {
        let measured = measured.ceil().max(0.0) as u32;
        self.profile(m).max(measured) + self.guard_digits
    }

    /// Decimals after the point to which a factor of size `10^log10_value`
    /// must be known when it enters summand m with a weight of size
    /// `10^log10_weight`.
    pub fn entry_accuracy(&self, m: usize, log10_weight: f64, log10_value: f64) -> u32 {
        let rel = f64::from(self.entry_digits(m, log10_weight + log10_value));
        (rel - log10_value.floor()).max(1.0) as u32
    }
}
