//! Exact rational weights `A_nm` of the closed-form alternating sum.
//!
//! `A_nm = 2^(-2n)/(2m-1) * C(2(n+m), n+m) * C(n+m, 2m)` for `m = 0..=n`.
//! The row is generated from the integer part `N_m = C(2(n+m), n+m) C(n+m, 2m)`
//! through the exact recurrence
//! `N_(m+1) = N_m * 2 (2n+2m+1)(n-m) / ((2m+1)(2m+2))`, so only divisions by
//! small integers and by powers of two are ever needed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Precision, Real};
use crate::special::gamma::ln_gamma_real;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientRow {
    n: usize,
    values: Vec<BigRational>,
}

impl CoefficientRow {
    /// Wraps arbitrary values (used to probe [`check_sum_rules`]).
    pub fn from_values(n: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != n + 1 {
            return Err(Error::Domain(format!(
                "row for n = {n} needs {} values, got {}",
                n + 1,
                values.len()
            )));
        }
        Ok(CoefficientRow { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, m: usize) -> &BigRational {
        &self.values[m]
    }

    pub fn a0(&self) -> &BigRational {
        &self.values[0]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `log10 |A_nm|` to within a bit.
    pub fn log10_abs(&self, m: usize) -> f64 {
        let v = &self.values[m];
        if v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = v.numer().bits() as f64 - v.denom().bits() as f64;
        if bits.abs() < 900.0 {
            v.to_f64().map(|x| x.abs().log10()).unwrap_or(bits * 2f64.log10())
        } else {
            bits * 2f64.log10()
        }
    }

    /// Row converted to the scalar type (entry m at index m).
    pub fn to_reals<T: Real>(&self, prec: Precision) -> Vec<T> {
        self.values.iter().map(|v| T::from_ratio(v, prec)).collect()
    }
}

fn reduced(numer: &BigUint, odd: u64, pow2: u64, negative: bool) -> BigRational {
    // numer / (2^pow2 * odd), odd > 0 odd
    let g = (numer % odd).to_u64().unwrap().gcd(&odd);
    let mut num = numer / g;
    let odd = odd / g;
    let tz = num.trailing_zeros().unwrap_or(0).min(pow2);
    num >>= tz;
    let den = BigUint::from(odd) << (pow2 - tz);
    let num = BigInt::from(num);
    BigRational::new_raw(if negative { -num } else { num }, BigInt::from(den))
}

/// Exact row `A_n0 ..= A_nn`.
pub fn coefficient_row(n: usize) -> Result<CoefficientRow> {
    if n == 0 {
        return Err(Error::Domain("coefficient rows start at n = 1".into()));
    }
    let nn = n as u64;
    let mut big_n: BigUint = num_integer::binomial(BigUint::from(2 * nn), BigUint::from(nn));
    let pow2 = 2 * nn;
    let mut values = Vec::with_capacity(n + 1);
    for m in 0..=nn {
        let odd = if m == 0 { 1 } else { 2 * m - 1 };
        values.push(reduced(&big_n, odd, pow2, m == 0));
        if m < nn {
            big_n *= 2 * (2 * nn + 2 * m + 1) * (nn - m);
            big_n /= (2 * m + 1) * (2 * m + 2);
        }
    }
    Ok(CoefficientRow { n, values })
}

/// Both exact identities tying the row to the normalization `F_n(inf) = 0`
/// and `F_n(x) ~ -1/x`.
pub fn check_sum_rules(row: &CoefficientRow) -> bool {
    let a0 = row.a0();
    if a0.is_zero() {
        return false;
    }
    let inv_a0 = a0.recip();
    let mut alternating = BigRational::zero();
    let mut weighted = BigRational::zero();
    for (m, a) in row.values().iter().enumerate() {
        let term = if m % 2 == 0 { a.clone() } else { -a.clone() };
        weighted += &term * BigRational::from_integer(BigInt::from(m));
        alternating += term;
    }
    let sign_n = if row.n() % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let two = BigRational::from_integer(BigInt::from(2));
    alternating == inv_a0 && two * weighted == sign_n + inv_a0
}

/// `log10 |A_nm|` from log-gamma, for planning without building rows.
pub fn log10_coefficient(n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let ln = 2.0 * mf * std::f64::consts::LN_2 + ln_gamma_real(nf + mf + 0.5)
        - (2.0 * mf - 1.0).abs().ln()
        - ln_gamma_real(nf - mf + 1.0)
        - ln_gamma_real(2.0 * mf + 1.0)
        - 0.5 * std::f64::consts::PI.ln();
    ln / std::f64::consts::LN_10
}

/// Sign of `A_nm`: negative only for m = 0.
pub fn coefficient_is_negative(row: &CoefficientRow, m: usize) -> bool {
    row.get(m).is_negative()
}
