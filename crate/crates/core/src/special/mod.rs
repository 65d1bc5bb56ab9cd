//! `log 2xi(2m)` and the special values behind it.
//!
//! `2xi(2m) = 2m (2m-1) pi^-m (m-1)! zeta(2m) = |B_2m| (2 pi)^m / (2m-3)!!`.
//! Entries are computed to a requested *absolute* accuracy, which is what the
//! alternating sums consume: summand m needs `log10 |A_nm| + guard` digits
//! after the point, and that number varies by thousands across a row.

pub mod bernoulli;
pub mod completed;
pub mod gamma;

mod cache;
mod table;

pub use cache::XiLogCache;
pub use table::{BernoulliLogTable, XiLogTable};
pub(crate) use table::plan_accuracy;

use std::f64::consts::{LN_10, LOG2_10, PI};

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::bigfloat::ratio_to_rational;
use crate::error::{Error, Result};
use crate::scalar::BigFloat;
use bernoulli::bernoulli_2m;
use gamma::ln_gamma_real;

/// How `log 2xi(2m)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Exact `(m-1)!`, `m ln pi` and `ln zeta(2m)`.
    GammaZeta,
    /// Exact rational `B_2m` and `(2m-3)!!`.
    Bernoulli,
}

/// Longest Dirichlet series used for `zeta(2m)`; beyond it the exact
/// Bernoulli closed form takes over.
pub const MAX_SERIES_TERMS: f64 = 20_000.0;

/// The Bernoulli route builds exact rationals up to `B_2m`; past this the
/// cost is prohibitive.
pub const BERNOULLI_ROUTE_MAX_M: usize = 2_000;

/// Bits for a value of magnitude about `10^mag` known to `10^-abs_digits`.
pub(crate) fn bits_for(abs_digits: f64, mag: f64) -> u32 {
    ((abs_digits + mag.max(0.0) + 3.0) * LOG2_10).ceil() as u32 + 16
}

/// `zeta(2m)` in f64.
pub fn zeta_even_f64(m: usize) -> f64 {
    match m {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        _ => {
            let s = 2 * m as i32;
            let terms: Vec<f64> = (2..100_000)
                .map(|k| (k as f64).powi(-s))
                .take_while(|&t| t > 1e-20)
                .collect();
            1.0 + terms.iter().rev().sum::<f64>()
        }
    }
}

/// `log 2xi(2m)` in f64, about 1e-14 relative.
pub fn log_2xi_even_f64(m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let mf = m as f64;
    (2.0 * mf * (2.0 * mf - 1.0)).ln() + ln_gamma_real(mf) - mf * PI.ln() + zeta_even_f64(m).ln()
}

/// `ln |B_2m|` in f64.
pub fn log_bernoulli_even_f64(m: usize) -> f64 {
    let mf = m as f64;
    2f64.ln() + ln_gamma_real(2.0 * mf + 1.0) + zeta_even_f64(m).ln() - 2.0 * mf * (2.0 * PI).ln()
}

fn abs_from_rel(rel_digits: u32, estimate: f64) -> f64 {
    // |x| ~ 10^e; e digits are used before the point
    let e = estimate.abs().log10();
    (f64::from(rel_digits) - e.floor()).max(1.0)
}

/// `zeta(2m) - 1` with absolute error below `10^-abs_digits`.
///
/// Sums `k^-2m` for `k = 2..=K` with the tail bound `K^(1-2m)/(2m-1)`; each
/// term is formed at just the precision its size warrants. When K would
/// exceed [`MAX_SERIES_TERMS`], falls back to
/// `zeta(2m) = |B_2m| (2 pi)^2m / (2 (2m)!)`.
pub(crate) fn zeta_even_minus_one(m: usize, abs_digits: f64) -> Float {
    let a = abs_digits + 1.0;
    let s = 2.0 * m as f64;
    let acc_bits = ((a + 2.0) * LOG2_10).ceil() as u32 + 24;
    // K^(1-s)/(s-1) < 10^-a / 2
    let log10_k = (a + 0.31 - (s - 1.0).log10()) / (s - 1.0);
    if log10_k > MAX_SERIES_TERMS.log10() {
        let bits = acc_bits + 16;
        let b = Float::with_val(bits, ratio_to_rational(&bernoulli_2m(m))).abs();
        let two_pi = Float::with_val(bits, rug::float::Constant::Pi) * 2u32;
        let fact = Integer::from(Integer::factorial(2 * m as u32));
        let z = b * two_pi.pow(2 * m as u32) / Float::with_val(bits, fact) / 2u32;
        return z - 1u32;
    }
    let k_max = 10f64.powf(log10_k).ceil().max(1.0) as u64;
    let mut acc = Float::new(acc_bits);
    let extra = (k_max as f64).log2().ceil() as i64 + 8;
    for k in (2..=k_max).rev() {
        let bits = (i64::from(acc_bits) - (s * (k as f64).log2()) as i64 + extra).max(16) as u32;
        let term = Float::with_val(bits, k).pow(-(2 * m as i32));
        acc += term;
    }
    acc
}

/// `zeta(2m)` with absolute error below `10^-digits`.
pub fn zeta_even(m: usize, digits: u32) -> Result<BigFloat> {
    if m == 0 {
        return Err(Error::Domain("zeta_even needs m >= 1".into()));
    }
    let z = zeta_even_minus_one(m, f64::from(digits));
    let bits = bits_for(f64::from(digits), 1.0);
    Ok(BigFloat::from_float(Float::with_val(bits, z + 1u32)))
}

/// Precomputed `ln pi`, `ln 2 pi` that are rounded down on demand.
pub(crate) struct LogConstants {
    ln_pi: Float,
    ln_2pi: Float,
}

impl LogConstants {
    pub(crate) fn new(bits: u32) -> Self {
        let pi = Float::with_val(bits + 16, rug::float::Constant::Pi);
        let ln_pi = Float::with_val(bits, pi.clone().ln());
        let ln_2pi = Float::with_val(bits, (pi * 2u32).ln());
        LogConstants { ln_pi, ln_2pi }
    }

    fn pick(stored: &Float, bits: u32, two: bool) -> Float {
        if stored.prec() >= bits {
            Float::with_val(bits, stored)
        } else {
            let pi = Float::with_val(bits + 16, rug::float::Constant::Pi);
            let x = if two { pi * 2u32 } else { pi };
            Float::with_val(bits, x.ln())
        }
    }

    pub(crate) fn ln_pi(&self, bits: u32) -> Float {
        Self::pick(&self.ln_pi, bits, false)
    }

    pub(crate) fn ln_2pi(&self, bits: u32) -> Float {
        Self::pick(&self.ln_2pi, bits, true)
    }
}

fn ln_integer(x: &Integer, abs_digits: f64) -> Float {
    let mag = (x.significant_bits() as f64 * std::f64::consts::LN_2).max(1.0).log10();
    Float::with_val(bits_for(abs_digits, mag), x).ln()
}

/// `ln k!!` for odd `k >= -1`, with `(-1)!! = 1`.
pub(crate) fn ln_double_factorial(k: i64, abs_digits: f64) -> Float {
    if k <= 1 {
        return Float::new(bits_for(abs_digits, 0.0));
    }
    ln_integer(&Integer::from(Integer::factorial_2(k as u32)), abs_digits)
}

/// One entry of the table: `log 2xi(2m)` to `10^-abs_digits` absolute.
pub(crate) fn log_2xi_entry(m: usize, abs_digits: f64, route: Route, c: &LogConstants) -> Result<Float> {
    let a = abs_digits + 1.0;
    let out_bits = bits_for(a, log_2xi_even_f64(m).abs().log10());
    if m == 0 {
        return Ok(Float::new(out_bits));
    }
    let mf = m as f64;
    let value = match route {
        Route::GammaZeta => {
            let mut int = Integer::from(Integer::factorial(m as u32 - 1));
            int *= 2 * m as u64 * (2 * m as u64 - 1);
            let ln_int = ln_integer(&int, a + 1.0);
            let ln_pi = c.ln_pi(bits_for(a + 1.0 + mf.log10(), 1.0)) * m as u64;
            let ln_zeta = zeta_even_minus_one(m, a + 1.0).ln_1p();
            ln_int - ln_pi + ln_zeta
        }
        Route::Bernoulli => {
            if m > BERNOULLI_ROUTE_MAX_M {
                return Err(Error::Domain(format!(
                    "bernoulli route limited to m <= {BERNOULLI_ROUTE_MAX_M}, got {m}"
                )));
            }
            let mag = log_bernoulli_even_f64(m).abs().max(1.0).log10();
            let b = Float::with_val(bits_for(a + 1.0, mag), ratio_to_rational(&bernoulli_2m(m)));
            let ln_b = b.abs().ln();
            let ln_2pi = c.ln_2pi(bits_for(a + 1.0 + mf.log10(), 1.0)) * m as u64;
            ln_b + ln_2pi - ln_double_factorial(2 * m as i64 - 3, a + 1.0)
        }
    };
    Ok(Float::with_val(out_bits, value))
}

/// `ln |B_2m|` to `10^-abs_digits` absolute, from
/// `|B_2m| = 2 (2m)! zeta(2m) / (2 pi)^2m`.
pub(crate) fn log_bernoulli_entry(m: usize, abs_digits: f64, c: &LogConstants) -> Float {
    let a = abs_digits + 1.0;
    let mf = m as f64;
    let mut int = Integer::from(Integer::factorial(2 * m as u32));
    int *= 2u32;
    let ln_int = ln_integer(&int, a + 1.0);
    let ln_2pi = c.ln_2pi(bits_for(a + 1.0 + (2.0 * mf).log10(), 1.0)) * (2 * m as u64);
    let ln_zeta = zeta_even_minus_one(m, a + 1.0).ln_1p();
    let out_bits = bits_for(a, log_bernoulli_even_f64(m).abs().log10());
    Float::with_val(out_bits, ln_int - ln_2pi + ln_zeta)
}

/// `log 2xi(2m)` to `digits` relative digits (exactly 0 for m = 0).
pub fn log_2xi_even(m: usize, digits: u32) -> BigFloat {
    log_2xi_even_via(m, digits, Route::GammaZeta).expect("gamma-zeta route is total")
}

/// [`log_2xi_even`] by an explicit route.
pub fn log_2xi_even_via(m: usize, digits: u32, route: Route) -> Result<BigFloat> {
    if m == 0 {
        return Ok(BigFloat::from_float(Float::new(bits_for(f64::from(digits), 0.0))));
    }
    let a = abs_from_rel(digits, log_2xi_even_f64(m));
    let c = LogConstants::new(bits_for(a + 2.0 + (m as f64).log10(), 1.0));
    log_2xi_entry(m, a, route, &c).map(BigFloat::from_float)
}

/// `ln |B_2m|` to `digits` relative digits.
pub fn log_bernoulli_even(m: usize, digits: u32) -> Result<BigFloat> {
    if m == 0 {
        return Err(Error::Domain("log_bernoulli_even needs m >= 1".into()));
    }
    let a = abs_from_rel(digits, log_bernoulli_even_f64(m));
    let c = LogConstants::new(bits_for(a + 2.0 + (m as f64).log10(), 1.0));
    Ok(BigFloat::from_float(log_bernoulli_entry(m, a, &c)))
}

pub(crate) fn log10_abs_f64(x: f64) -> f64 {
    x.abs().ln() / LN_10
}
