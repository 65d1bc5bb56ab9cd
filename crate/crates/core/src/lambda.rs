//! `Lambda_n` by the direct sum and by the two Bernoulli rearrangements,
//! plus the remainder against `log n + C`.
//!
//! - direct: `(-1)^n sum (-1)^m A_nm log 2xi(2m)`
//! - u: `1/2 ln 2pi + (-1)^n [sum (-1)^m A_nm ln(|B_2m| / (2m-3)!!) + ln(2pi)/(2 A_n0)]`
//! - v: `1/2 ln pi + (-1)^n [sum (-1)^m A_nm ln(|B_2m| / Gamma(m-1/2))
//!   + (1/A_n0 - A_n0) ln 2 + (1/A_n0 - A_n0/2) ln pi]`

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::coefficients::{coefficient_row, CoefficientRow};
use crate::error::{Error, Result};
use crate::precision::{plan_for, PrecisionPlan};
use crate::scalar::{BigFloat, Precision, Real};
use crate::special::{
    ln_double_factorial, log_2xi_even_f64, log_bernoulli_even_f64, plan_accuracy,
    BernoulliLogTable, Route, XiLogCache, XiLogTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Direct,
    UForm,
    VForm,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Direct => "direct",
            Form::UForm => "u",
            Form::VForm => "v",
        })
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Form::Direct),
            "u" | "u-form" | "u_form" => Ok(Form::UForm),
            "v" | "v-form" | "v_form" => Ok(Form::VForm),
            _ => Err(Error::Domain(format!("unknown form '{s}' (direct, u, v)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LambdaRecord<T = BigFloat> {
    pub n: usize,
    pub value: T,
    /// `value - (ln n + C)`.
    pub delta: T,
    pub form: Form,
    pub digits_used: u32,
    pub elapsed: Duration,
}

/// `C = (gamma - ln pi - 1) / 2`, the constant of `Lambda_n ~ log n + C`.
pub fn constant_c<T: Real>(prec: Precision) -> T {
    let half = T::from_f64_prec(0.5, prec);
    (T::euler_gamma(prec) - T::pi(prec).ln() - T::from_i64_prec(1, prec)) * half
}

/// `c = C - ln(2)/2`, the constant of Keiper's `lambda_n ~ (ln n)/2 + c`.
pub fn constant_c_keiper<T: Real>(prec: Precision) -> T {
    constant_c::<T>(prec) - T::ln_2(prec) * T::from_f64_prec(0.5, prec)
}

/// `ln n + C`.
pub fn asymptote<T: Real>(n: usize, prec: Precision) -> T {
    T::from_i64_prec(n as i64, prec).ln() + constant_c(prec)
}

fn signed<T: Real>(x: T, negative: bool) -> T {
    if negative {
        -x
    } else {
        x
    }
}

/// `(-1)^n sum_(m=1..n) (-1)^m A_nm x_m`, ascending in m, with `x[m-1]` the
/// factor of `A_nm`.
pub fn alternating_sum<T: Real>(row: &CoefficientRow, x: &[T], prec: Precision) -> T {
    let n = row.n();
    let mut acc = T::from_i64_prec(0, prec);
    for (m, xm) in (1..=n).zip(x) {
        let a = T::from_ratio(row.get(m), prec);
        let term = a * xm.clone();
        acc = if m % 2 == 0 { acc + term } else { acc - term };
    }
    signed(acc, n % 2 == 1)
}

/// Direct form from precomputed `log 2xi(2m)`, any scalar.
pub fn lambda_direct_from<T: Real>(row: &CoefficientRow, logs: &[T], prec: Precision) -> T {
    alternating_sum(row, logs, prec)
}

/// u-form from `ln |B_2m|` and `ln (2m-3)!!`.
pub fn lambda_u_from<T: Real>(row: &CoefficientRow, ln_b: &[T], ln_dfact: &[T], prec: Precision) -> T {
    let x: Vec<T> = ln_b
        .iter()
        .zip(ln_dfact)
        .map(|(b, d)| b.clone() - d.clone())
        .collect();
    let n = row.n();
    let a0 = T::from_ratio(row.a0(), prec);
    let two = T::from_i64_prec(2, prec);
    let ln_2pi = (T::pi(prec) * two.clone()).ln();
    let bracket = signed(alternating_sum(row, &x, prec), n % 2 == 1)
        + ln_2pi.clone() / (two.clone() * a0);
    ln_2pi / two + signed(bracket, n % 2 == 1)
}

/// v-form from `ln |B_2m|` and `ln (2m-3)!!`, using
/// `ln Gamma(m-1/2) = ln (2m-3)!! + ln(pi)/2 - (m-1) ln 2`.
pub fn lambda_v_from<T: Real>(row: &CoefficientRow, ln_b: &[T], ln_dfact: &[T], prec: Precision) -> T {
    let half = T::from_f64_prec(0.5, prec);
    let ln_pi = T::pi(prec).ln();
    let ln2 = T::ln_2(prec);
    let x: Vec<T> = ln_b
        .iter()
        .zip(ln_dfact)
        .enumerate()
        .map(|(i, (b, d))| {
            let ln_gamma = d.clone() + ln_pi.clone() * half.clone()
                - ln2.clone() * T::from_i64_prec(i as i64, prec);
            b.clone() - ln_gamma
        })
        .collect();
    let n = row.n();
    let a0 = T::from_ratio(row.a0(), prec);
    let inv = T::from_i64_prec(1, prec) / a0.clone();
    let bracket = signed(alternating_sum(row, &x, prec), n % 2 == 1)
        + (inv.clone() - a0.clone()) * ln2
        + (inv - a0 * half.clone()) * ln_pi.clone();
    ln_pi * half + signed(bracket, n % 2 == 1)
}

/// f64 evaluation of the direct form. The sum cancels about `0.77 n`
/// digits, so this is only meaningful for n up to about 12.
pub fn lambda_f64(n: usize) -> Result<f64> {
    let row = coefficient_row(n)?;
    let logs: Vec<f64> = (1..=n).map(log_2xi_even_f64).collect();
    Ok(lambda_direct_from(&row, &logs, Precision::F64))
}

fn sum_precision(plan: &PrecisionPlan) -> Precision {
    Precision::digits(plan.working_digits)
}

fn check_plan(n: usize, plan: &PrecisionPlan) -> Result<()> {
    if plan.n != n {
        return Err(Error::Domain(format!("plan is for n = {}, asked for n = {n}", plan.n)));
    }
    Ok(())
}

fn record(n: usize, value: BigFloat, form: Form, plan: &PrecisionPlan, start: Instant) -> LambdaRecord {
    let prec = value.precision();
    let delta = &value - &asymptote::<BigFloat>(n, prec);
    LambdaRecord {
        n,
        value,
        delta,
        form,
        digits_used: plan.working_digits,
        elapsed: start.elapsed(),
    }
}

/// Direct form. The table must hold every entry to the accuracy `plan`
/// asks for; a table built for a larger n with the same target does.
pub fn lambda_direct(n: usize, plan: &PrecisionPlan, table: &XiLogTable) -> Result<LambdaRecord> {
    let start = Instant::now();
    check_plan(n, plan)?;
    table.check(&plan_accuracy(plan, log_2xi_even_f64))?;
    let row = coefficient_row(n)?;
    let value = lambda_direct_from(&row, &table.entries()[..n], sum_precision(plan));
    Ok(record(n, value, Form::Direct, plan, start))
}

/// The Bernoulli forms sum terms larger by a factor `|ln B_2m| / log 2xi(2m)`
/// than the direct form, so they carry a few more working digits.
fn bernoulli_form_precision(plan: &PrecisionPlan) -> Precision {
    let extra = log_bernoulli_even_f64(plan.n).abs().max(10.0).log10().ceil() as u32 + 2;
    Precision::digits(plan.working_digits + extra)
}

fn ln_dfact_column(need: &[u32]) -> Vec<BigFloat> {
    need.par_iter()
        .enumerate()
        .map(|(i, &acc)| BigFloat::from_float(ln_double_factorial(2 * i as i64 - 1, f64::from(acc))))
        .collect()
}

fn bernoulli_form(n: usize, plan: &PrecisionPlan, table: &BernoulliLogTable, form: Form) -> Result<LambdaRecord> {
    let start = Instant::now();
    check_plan(n, plan)?;
    let need = plan_accuracy(plan, log_bernoulli_even_f64);
    table.check(&need)?;
    let row = coefficient_row(n)?;
    let ln_b: Vec<BigFloat> = (1..=n).map(|m| table.get(m).clone()).collect();
    let ln_d = ln_dfact_column(&need);
    let prec = bernoulli_form_precision(plan);
    let value = match form {
        Form::UForm => lambda_u_from(&row, &ln_b, &ln_d, prec),
        _ => lambda_v_from(&row, &ln_b, &ln_d, prec),
    };
    Ok(record(n, value, form, plan, start))
}

pub fn lambda_u_form(n: usize, plan: &PrecisionPlan, table: &BernoulliLogTable) -> Result<LambdaRecord> {
    bernoulli_form(n, plan, table, Form::UForm)
}

pub fn lambda_v_form(n: usize, plan: &PrecisionPlan, table: &BernoulliLogTable) -> Result<LambdaRecord> {
    bernoulli_form(n, plan, table, Form::VForm)
}

/// `delta Lambda_n = Lambda_n - (ln n + C)` at the record's precision.
pub fn delta_lambda(record: &LambdaRecord) -> BigFloat {
    let prec = record.value.precision();
    &record.value - &asymptote::<BigFloat>(record.n, prec)
}

/// `(delta_n + delta_(n-1)) / 2`.
pub fn averaged_delta<T: Real>(delta_n: &T, delta_prev: &T) -> T {
    (delta_n.clone() + delta_prev.clone()) / T::from_i64_prec(2, delta_n.precision())
}

/// Builds whatever tables `form` needs and evaluates `Lambda_n` once.
pub fn compute(n: usize, plan: &PrecisionPlan, form: Form, cache: Option<&XiLogCache>) -> Result<LambdaRecord> {
    match form {
        Form::Direct => {
            let table = XiLogTable::for_plan(plan, Route::GammaZeta, cache)?;
            lambda_direct(n, plan, &table)
        }
        Form::UForm => lambda_u_form(n, plan, &BernoulliLogTable::for_plan(plan)),
        Form::VForm => lambda_v_form(n, plan, &BernoulliLogTable::for_plan(plan)),
    }
}

/// Every form in one go, sharing nothing but the plan.
pub fn compute_all_forms(n: usize, plan: &PrecisionPlan) -> Result<[LambdaRecord; 3]> {
    let xi = XiLogTable::for_plan(plan, Route::GammaZeta, None)?;
    let bern = BernoulliLogTable::for_plan(plan);
    Ok([
        lambda_direct(n, plan, &xi)?,
        lambda_u_form(n, plan, &bern)?,
        lambda_v_form(n, plan, &bern)?,
    ])
}

/// `Lambda_n` for `n = from..=to`, all from one table built for `to`.
/// `working_digits`, if given, raises every per-n plan.
pub fn scan(
    from: usize,
    to: usize,
    target_digits: u32,
    working_digits: Option<u32>,
    cache: Option<&XiLogCache>,
) -> Result<Vec<LambdaRecord>> {
    if from > to {
        return Ok(Vec::new());
    }
    let plan_n = |n: usize| -> Result<PrecisionPlan> {
        let p = plan_for(n, target_digits)?;
        Ok(match working_digits {
            Some(w) => p.with_working_digits(w),
            None => p,
        })
    };
    let top = plan_n(to)?;
    let table = XiLogTable::for_plan(&top, Route::GammaZeta, cache)?;
    (from.max(1)..=to)
        .into_par_iter()
        .map(|n| lambda_direct(n, &plan_n(n)?, &table))
        .collect()
}

/// CSV `n,lambda,delta,n_avg_delta`; the last column needs the record for
/// n-1 immediately before and is left empty otherwise.
pub fn write_csv<W: Write>(records: &[LambdaRecord], decimals: usize, mut out: W) -> Result<()> {
    writeln!(out, "n,lambda,delta,n_avg_delta")?;
    let mut prev: Option<&LambdaRecord> = None;
    for r in records {
        let avg = match prev {
            Some(p) if p.n + 1 == r.n => {
                let prec = r.delta.precision();
                let v = averaged_delta(&r.delta, &p.delta) * BigFloat::from_i64_prec(r.n as i64, prec);
                v.to_fixed(decimals)
            }
            _ => String::new(),
        };
        writeln!(
            out,
            "{},{},{},{}",
            r.n,
            r.value.to_fixed(decimals),
            r.delta.to_fixed(decimals),
            avg
        )?;
        prev = Some(r);
    }
    Ok(())
}

/// Digits the u/v forms need for ln |B_2m| entries; exposed for callers that
/// build their own [`BernoulliLogTable`].
pub fn bernoulli_accuracy(plan: &PrecisionPlan) -> Vec<u32> {
    plan_accuracy(plan, log_bernoulli_even_f64)
}

/// Same for `log 2xi(2m)` entries.
pub fn xi_accuracy(plan: &PrecisionPlan) -> Vec<u32> {
    plan_accuracy(plan, log_2xi_even_f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(n: usize, digits: u32) -> LambdaRecord {
        let plan = plan_for(n, digits).unwrap();
        compute(n, &plan, Form::Direct, None).unwrap()
    }

    #[test]
    fn first_three_values() {
        for (n, want) in [(1, 0.069176395771), (2, 0.22745427267), (3, 0.45671413349)] {
            let got = lam(n, 12).value.to_f64();
            assert!((got - want).abs() < 1e-11, "n = {n}: {got}");
        }
    }

    #[test]
    fn lambda_one_closed_form() {
        let r = lam(1, 40);
        let p = Precision::digits(50);
        let want = (BigFloat::pi(p) / BigFloat::from_i64_prec(3, p)).ln() * BigFloat::from_f64_prec(1.5, p);
        assert!((&r.value - &want).abs().to_f64() < 1e-40);
    }

    #[test]
    fn delta_for_n_one() {
        let r = lam(1, 20);
        assert_eq!(r.delta.to_fixed(6), "0.852934");
        assert!((&delta_lambda(&r) - &r.delta).abs().to_f64() == 0.0);
        let c: BigFloat = constant_c(Precision::digits(30));
        assert_eq!(c.to_fixed(12), "-0.783757110474");
        let ck: BigFloat = constant_c_keiper(Precision::digits(30));
        assert_eq!(ck.to_fixed(12), "-1.130330700754");
    }

    #[test]
    fn forms_agree_small() {
        for n in [1, 2, 3, 7, 40] {
            let plan = plan_for(n, 20).unwrap();
            let [d, u, v] = compute_all_forms(n, &plan).unwrap();
            assert!((&d.value - &u.value).abs().to_f64() < 1e-20, "u, n = {n}");
            assert!((&d.value - &v.value).abs().to_f64() < 1e-20, "v, n = {n}");
            assert_eq!(u.form, Form::UForm);
        }
    }

    #[test]
    fn f64_path_for_small_n() {
        for n in 1..=6 {
            let hi = lam(n, 15).value.to_f64();
            assert!((lambda_f64(n).unwrap() - hi).abs() < 1e-11, "n = {n}");
        }
    }

    #[test]
    fn shortfall_is_reported() {
        let small = plan_for(10, 10).unwrap();
        let table = XiLogTable::for_plan(&small, Route::GammaZeta, None).unwrap();
        let big = plan_for(20, 10).unwrap();
        assert!(matches!(lambda_direct(20, &big, &table), Err(Error::TableCoverage { .. })));
        let sharper = plan_for(10, 40).unwrap();
        assert!(matches!(
            lambda_direct(10, &sharper, &table),
            Err(Error::PrecisionShortfall { .. })
        ));
        assert!(lambda_direct(9, &small, &table).is_err());
    }

    #[test]
    fn one_table_serves_a_scan() {
        let rows = scan(1, 30, 12, None, None).unwrap();
        assert_eq!(rows.len(), 30);
        for r in [&rows[0], &rows[29]] {
            let fresh = lam(r.n, 12);
            assert!((&fresh.value - &r.value).abs().to_f64() < 1e-12);
        }
        assert!(scan(5, 4, 12, None, None).unwrap().is_empty());
    }

    #[test]
    fn averaged_delta_of_equal_values() {
        let d = BigFloat::from_f64_prec(0.125, Precision::digits(20));
        assert_eq!(averaged_delta(&d, &d), d);
        assert_eq!(averaged_delta(&0.25f64, &0.75), 0.5);
    }

    #[test]
    fn csv_layout() {
        let rows = scan(1, 3, 12, None, None).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, 6, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,lambda,delta,n_avg_delta");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,0.069176,0.852934,"));
        assert!(lines[1].ends_with(','));
        assert!(!lines[2].ends_with(','));
    }

    #[test]
    fn form_names() {
        assert_eq!("u".parse::<Form>().unwrap(), Form::UForm);
        assert_eq!(Form::VForm.to_string(), "v");
        assert!("w".parse::<Form>().is_err());
    }
}
