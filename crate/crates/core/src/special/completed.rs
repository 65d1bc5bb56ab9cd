//! Complex `zeta` and `2xi` for spot checks away from the even integers.
//!
//! Uses Hasse's globally convergent series
//! `zeta(s) = 1/(1 - 2^(1-s)) sum_n 2^-(n+1) sum_k (-1)^k C(n,k) (k+1)^-s`.
//! Quadratic in the number of terms and loses about one bit per term to
//! cancellation, so it is only meant for diagnostics at modest precision.

use num_bigint::BigInt;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cexp, cln, cscale, Precision, Real};
use crate::special::gamma::ln_gamma_complex;

fn lift<T: Real>(z: &Complex<T>, prec: Precision) -> Complex<T> {
    let one = T::from_i64_prec(1, prec);
    Complex::new(z.re.clone() * one.clone(), z.im.clone() * one)
}

/// `zeta(s)` for complex `s != 1`, about `digits` correct digits for
/// moderate |s|.
pub fn zeta_complex<T: Real>(s: &Complex<T>, digits: u32) -> Result<Complex<T>> {
    let (re, im) = (s.re.to_f64(), s.im.to_f64());
    if re == 1.0 && im == 0.0 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    let growth = (re.abs() + im.abs() + 2.0).log2() * (1.0 + (-re).max(0.0));
    let terms = ((f64::from(digits) + 5.0) * std::f64::consts::LOG2_10 + growth + 16.0) as usize;
    let prec = Precision::digits(digits + 10).plus_bits(terms as u32 + 32);
    let s = lift(s, prec);
    let neg_s = Complex::new(-s.re.clone(), -s.im.clone());
    let powers: Vec<Complex<T>> = (0..=terms)
        .map(|k| {
            let ln = T::from_i64_prec(k as i64 + 1, prec).ln();
            cexp(&cscale(&neg_s, &ln))
        })
        .collect();
    let zero = || Complex::new(T::from_i64_prec(0, prec), T::from_i64_prec(0, prec));
    let mut total = zero();
    let mut binom: Vec<BigInt> = vec![BigInt::from(1)];
    for n in 0..=terms {
        let mut inner = zero();
        for (k, c) in binom.iter().enumerate() {
            let term = cscale(&powers[k], &T::from_bigint(c, prec));
            inner = if k % 2 == 0 { inner + term } else { inner - term };
        }
        let weight = T::from_i64_prec(1, prec).mul_pow2(-(n as i32 + 1));
        total = total + cscale(&inner, &weight);
        let mut next = Vec::with_capacity(binom.len() + 1);
        next.push(BigInt::from(1));
        for w in binom.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        binom = next;
    }
    let ln2 = T::ln_2(prec);
    let one_minus_s = Complex::new(T::from_i64_prec(1, prec) - s.re.clone(), -s.im.clone());
    let pow2 = cexp(&cscale(&one_minus_s, &ln2));
    let denom = Complex::new(T::from_i64_prec(1, prec) - pow2.re, -pow2.im);
    Ok(total / denom)
}

/// `2xi(x) = x (x-1) pi^(-x/2) Gamma(x/2) zeta(x)`.
pub fn completed_xi<T: Real>(x: &Complex<T>, digits: u32) -> Result<Complex<T>> {
    let (re, im) = (x.re.to_f64(), x.im.to_f64());
    let prec = Precision::digits(digits + 10);
    let x = lift(x, prec);
    let one = T::from_i64_prec(1, prec);
    if im == 0.0 && (re == 0.0 || re == 1.0) {
        return Ok(Complex::new(one, T::from_i64_prec(0, prec)));
    }
    let half = T::from_f64_prec(0.5, prec);
    let x_half = cscale(&x, &half);
    let ln_g = ln_gamma_complex(&x_half, digits + 5)?;
    let ln_pi = T::pi(prec).ln();
    let expo = ln_g - cscale(&x_half, &ln_pi);
    let xm1 = Complex::new(x.re.clone() - one, x.im.clone());
    let z = zeta_complex(&x, digits + 5)?;
    Ok(x.clone() * xm1 * cexp(&expo) * z)
}

/// `log 2xi(x)` on the principal branch (diagnostic use).
pub fn log_completed_xi<T: Real>(x: &Complex<T>, digits: u32) -> Result<Complex<T>> {
    Ok(cln(&completed_xi(x, digits)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;

    fn c(re: f64, im: f64, p: Precision) -> Complex<BigFloat> {
        Complex::new(BigFloat::from_f64_prec(re, p), BigFloat::from_f64_prec(im, p))
    }

    fn dist(a: &Complex<BigFloat>, b: &Complex<BigFloat>) -> f64 {
        let d = a.clone() - b.clone();
        d.re.to_f64().hypot(d.im.to_f64())
    }

    #[test]
    fn zeta_at_known_points() {
        let p = Precision::digits(40);
        let z2 = zeta_complex(&c(2.0, 0.0, p), 30).unwrap();
        let want = std::f64::consts::PI.powi(2) / 6.0;
        assert!((z2.re.to_f64() - want).abs() < 1e-15 && z2.im.to_f64().abs() < 1e-28);
        // zeta(-1) = -1/12, zeta(0) = -1/2
        let zm1 = zeta_complex(&c(-1.0, 0.0, p), 30).unwrap();
        assert!((zm1.re.to_f64() + 1.0 / 12.0).abs() < 1e-25);
        let z0 = zeta_complex(&c(0.0, 0.0, p), 30).unwrap();
        assert!((z0.re.to_f64() + 0.5).abs() < 1e-25);
        assert!(zeta_complex(&c(1.0, 0.0, p), 30).is_err());
    }

    #[test]
    fn first_zero_is_a_zero() {
        let p = Precision::digits(40);
        let z = zeta_complex(&c(0.5, 14.134_725_141_734_693, p), 25).unwrap();
        assert!(z.re.to_f64().hypot(z.im.to_f64()) < 1e-13);
    }

    #[test]
    fn functional_equation() {
        let digits = 30;
        let p = Precision::digits(50);
        let x = c(2.5, 0.3, p);
        let one_minus_x = c(1.0, 0.0, p) - x.clone();
        let a = completed_xi(&x, digits).unwrap();
        let b = completed_xi(&one_minus_x, digits).unwrap();
        assert!(dist(&a, &b) < 10f64.powi(-(digits as i32) + 5), "{}", dist(&a, &b));
    }

    #[test]
    fn completed_xi_at_two_is_pi_over_three() {
        let p = Precision::digits(40);
        let v = completed_xi(&c(2.0, 0.0, p), 30).unwrap();
        assert!((v.re.to_f64() - std::f64::consts::PI / 3.0).abs() < 1e-15);
        let one = completed_xi(&c(1.0, 0.0, p), 30).unwrap();
        assert_eq!(one.re.to_f64(), 1.0);
    }
}
