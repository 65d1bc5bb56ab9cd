//! Centered variant around `x = 1/2`:
//! `Lambda0_n(w) = sum_(m=1..n) 2/(r_m+1)^2 prod_(k=0..n)(r_m+r_k) / prod_(k!=m)(r_m-r_k) log 2xi(2m)`
//! with `r_m = sqrt(1 + (4m-1)^2 / w)`.
//!
//! `r_m^2 - r_k^2 = 8(m-k)(2m+2k-1)/w`, so each difference is rewritten as
//! `8(m-k)(2m+2k-1) / (w (r_m + r_k))` and the weights become products of
//! positive factors over an exact integer. The sum still cancels about as
//! many digits as `Lambda_n` does.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lambda::constant_c;
use crate::precision::BASE_GUARD_DIGITS;
use crate::scalar::{BigFloat, Precision, Real};
use crate::special::{log_2xi_even_f64, Route, XiLogCache, XiLogTable};

/// `4 min |Im rho|^2` over the zeros.
pub const W_TILDE_MAX: f64 = 799.1618;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenteredConfig {
    w_tilde: f64,
}

impl CenteredConfig {
    pub fn new(w_tilde: f64) -> Result<Self> {
        if !(w_tilde > 0.0 && w_tilde < W_TILDE_MAX) {
            return Err(Error::Domain(format!(
                "w = {w_tilde} must lie in (0, {W_TILDE_MAX})"
            )));
        }
        Ok(CenteredConfig { w_tilde })
    }

    pub fn w_tilde(&self) -> f64 {
        self.w_tilde
    }

    pub fn r_f64(&self, m: usize) -> f64 {
        let a = 4.0 * m as f64 - 1.0;
        (1.0 + a * a / self.w_tilde).sqrt()
    }

    pub fn r<T: Real>(&self, m: usize, prec: Precision) -> T {
        let a = T::from_i64_prec(4 * m as i64 - 1, prec);
        let w = T::from_f64_prec(self.w_tilde, prec);
        (T::from_i64_prec(1, prec) + a.clone() * a / w).sqrt()
    }

    /// `r_0, ..., r_n`.
    pub fn r_values<T: Real>(&self, n: usize, prec: Precision) -> Vec<T> {
        (0..=n).map(|m| self.r(m, prec)).collect()
    }
}

/// `|8(m-k)(2m+2k-1)|`.
fn gap(m: usize, k: usize) -> f64 {
    8.0 * (m as f64 - k as f64).abs() * (2.0 * (m + k) as f64 - 1.0)
}

/// `log10 |W_m|` for m = 1..=n, evaluated as sums of logs.
pub fn log10_weights(n: usize, cfg: &CenteredConfig) -> Vec<f64> {
    let r: Vec<f64> = (0..=n).map(|m| cfg.r_f64(m)).collect();
    let lw = cfg.w_tilde.log10();
    (1..=n)
        .into_par_iter()
        .map(|m| {
            let rm = r[m];
            let mut s = (4.0 * rm / ((rm + 1.0) * (rm + 1.0))).log10();
            for (k, rk) in r.iter().enumerate() {
                if k != m {
                    s += 2.0 * (rm + rk).log10() + lw - gap(m, k).log10();
                }
            }
            s
        })
        .collect()
}

fn weight_mp(m: usize, n: usize, r: &[BigFloat], w: &BigFloat, prec: Precision) -> BigFloat {
    let rm = &r[m];
    let one = BigFloat::from_i64_prec(1, prec);
    let rp1 = rm.clone() + one;
    let mut v = BigFloat::from_i64_prec(4, prec) * rm.clone() / (rp1.clone() * rp1);
    for (k, rk) in r.iter().enumerate().take(n + 1) {
        if k != m {
            let s = rm.clone() + rk.clone();
            v = v * s.clone() * s * w.clone() / BigFloat::from_f64_prec(gap(m, k), prec);
        }
    }
    if (n - m) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Signed weights `W_m`, m = 1..=n, at precision `prec`.
pub fn weights(n: usize, cfg: &CenteredConfig, prec: Precision) -> Vec<BigFloat> {
    let r = cfg.r_values(n, prec);
    let w = BigFloat::from_f64_prec(cfg.w_tilde, prec);
    (1..=n).into_par_iter().map(|m| weight_mp(m, n, &r, &w, prec)).collect()
}

/// Precision budget for one n.
#[derive(Clone, Debug, PartialEq)]
pub struct CenteredPlan {
    pub n: usize,
    pub target_digits: u32,
    pub guard_digits: u32,
    pub working_digits: u32,
    /// Decimals `log 2xi(2m)` must be known to, m = 1..=n.
    pub accuracy: Vec<u32>,
}

fn guard(target: u32, n: usize) -> u32 {
    target + BASE_GUARD_DIGITS + ((n as f64 + 1.0).log10().ceil() as u32)
}

fn plan_from_log_weights(n: usize, target: u32, lw: &[f64], extra: u32) -> CenteredPlan {
    let guard_digits = guard(target, n) + extra;
    let accuracy: Vec<u32> = lw
        .iter()
        .map(|&w| guard_digits + w.ceil().max(0.0) as u32)
        .collect();
    let peak = lw
        .iter()
        .enumerate()
        .map(|(i, &w)| w + log_2xi_even_f64(i + 1).abs().max(1e-300).log10())
        .fold(0.0, f64::max);
    CenteredPlan {
        n,
        target_digits: target,
        guard_digits,
        working_digits: guard_digits + peak.ceil() as u32 + 5,
        accuracy,
    }
}

/// Plan from measured weight magnitudes.
pub fn centered_plan(n: usize, cfg: &CenteredConfig, target_digits: u32) -> Result<CenteredPlan> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(plan_from_log_weights(n, target_digits, &log10_weights(n, cfg), 0))
}

impl CenteredPlan {
    /// Same plan with every digit count scaled by `factor` (>= 1).
    pub fn scaled(&self, factor: f64) -> Self {
        let bump = (f64::from(self.working_digits) * (factor - 1.0)).ceil().max(0.0) as u32;
        CenteredPlan {
            guard_digits: self.guard_digits + bump,
            working_digits: self.working_digits + bump,
            accuracy: self.accuracy.iter().map(|a| a + bump).collect(),
            ..self.clone()
        }
    }
}

pub fn centered_table(plan: &CenteredPlan, route: Route, cache: Option<&XiLogCache>) -> Result<XiLogTable> {
    XiLogTable::build(plan.accuracy.clone(), route, cache)
}

/// `sqrt(w) (log n + C)`.
pub fn centered_asymptote(n: usize, cfg: &CenteredConfig, prec: Precision) -> BigFloat {
    let w = BigFloat::from_f64_prec(cfg.w_tilde, prec).sqrt();
    w * (BigFloat::from_i64_prec(n as i64, prec).ln() + constant_c::<BigFloat>(prec))
}

fn weighted_sum(w: &[BigFloat], table: &XiLogTable, prec: Precision) -> BigFloat {
    let mut acc = BigFloat::from_i64_prec(0, prec);
    for (i, wm) in w.iter().enumerate() {
        acc = acc + wm.clone() * table.get(i + 1).clone();
    }
    acc
}

/// `Lambda0_n(w)` under an explicit plan.
pub fn centered_lambda_planned(cfg: &CenteredConfig, plan: &CenteredPlan, table: &XiLogTable) -> Result<BigFloat> {
    table.check(&plan.accuracy)?;
    let prec = Precision::digits(plan.working_digits);
    let w = weights(plan.n, cfg, prec);
    Ok(weighted_sum(&w, table, prec))
}

/// `Lambda0_n(w)` to about `digits` decimals.
pub fn centered_lambda(n: usize, cfg: &CenteredConfig, table: &XiLogTable, digits: u32) -> Result<BigFloat> {
    centered_lambda_planned(cfg, &centered_plan(n, cfg, digits)?, table)
}

#[derive(Clone, Debug)]
pub struct CenteredRecord {
    pub n: usize,
    pub value: BigFloat,
    /// `value - sqrt(w) (log n + C)`.
    pub remainder: BigFloat,
}

/// `Lambda0_n(w)` for n in `from..=to`. One table serves the whole range;
/// the weights are carried from n to n+1 by the factor
/// `w (r_m + r_(n+1))^2 / (8 (m-n-1)(2m+2n+1))`.
pub fn centered_scan(
    from: usize,
    to: usize,
    cfg: &CenteredConfig,
    digits: u32,
    cache: Option<&XiLogCache>,
) -> Result<Vec<CenteredRecord>> {
    if from > to {
        return Ok(Vec::new());
    }
    let from = from.max(1);
    // accuracy needed by any n in range, from log weights carried upward
    let r64: Vec<f64> = (0..=to + 1).map(|m| cfg.r_f64(m)).collect();
    let lw_w = cfg.w_tilde.log10();
    let mut lw = log10_weights(from, cfg);
    let drift = ((to - from + 2) as f64).log10().ceil() as u32 + 1;
    let mut plan = plan_from_log_weights(from, digits, &lw, drift);
    for n in from + 1..=to {
        lw.par_iter_mut().enumerate().for_each(|(i, l)| {
            let m = i + 1;
            *l += 2.0 * (r64[m] + r64[n]).log10() + lw_w - gap(m, n).log10();
        });
        lw.push(log10_weights(n, cfg)[n - 1]);
        let p = plan_from_log_weights(n, digits, &lw, drift);
        plan.accuracy.resize(n, 0);
        for (a, b) in plan.accuracy.iter_mut().zip(&p.accuracy) {
            *a = (*a).max(*b);
        }
        plan.working_digits = plan.working_digits.max(p.working_digits);
        plan.n = n;
    }
    let table = centered_table(&plan, Route::GammaZeta, cache)?;
    let prec = Precision::digits(plan.working_digits);
    let r: Vec<BigFloat> = cfg.r_values(to + 1, prec);
    let w = BigFloat::from_f64_prec(cfg.w_tilde, prec);
    let mut wts = weights(from, cfg, prec);
    let mut out = Vec::with_capacity(to - from + 1);
    for n in from..=to {
        if n > from {
            wts.par_iter_mut().enumerate().for_each(|(i, v)| {
                let m = i + 1;
                let s = r[m].clone() + r[n].clone();
                let f = s.clone() * s * w.clone() / BigFloat::from_f64_prec(gap(m, n), prec);
                *v = -(v.clone() * f);
            });
            wts.push(weight_mp(n, n, &r, &w, prec));
        }
        let value = weighted_sum(&wts, &table, prec);
        let out_prec = Precision::digits(digits + 10);
        let remainder = (value.clone() - centered_asymptote(n, cfg, prec)).with_precision(out_prec);
        out.push(CenteredRecord {
            n,
            value: value.with_precision(out_prec),
            remainder,
        });
    }
    Ok(out)
}

/// CSV with header `n,centered_lambda,remainder`.
pub fn write_centered_csv<W: Write>(records: &[CenteredRecord], decimals: usize, mut out: W) -> Result<()> {
    writeln!(out, "n,centered_lambda,remainder")?;
    for r in records {
        writeln!(out, "{},{},{}", r.n, r.value.to_fixed(decimals), r.remainder.to_fixed(decimals))?;
    }
    Ok(())
}
