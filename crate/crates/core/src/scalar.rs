//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! [`Real`] is implemented for the primitive floats (through
//! [`num_traits::Float`]) and for the multiple-precision [`BigFloat`]. Values
//! that cannot be represented exactly are always constructed with an explicit
//! [`Precision`]; the primitive floats ignore it.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

pub use crate::bigfloat::BigFloat;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision, stored in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const F64: Precision = Precision(53);

    pub fn bits(bits: u32) -> Self {
        Precision(bits.max(2))
    }

    /// Precision holding at least `digits` significant decimal digits.
    pub fn digits(digits: u32) -> Self {
        Precision::bits((f64::from(digits) * BITS_PER_DIGIT).ceil() as u32 + 2)
    }

    pub fn in_bits(self) -> u32 {
        self.0
    }

    pub fn in_digits(self) -> u32 {
        (f64::from(self.0.saturating_sub(2)) / BITS_PER_DIGIT).floor() as u32
    }

    pub fn plus_bits(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    pub fn max(self, other: Precision) -> Self {
        Precision(self.0.max(other.0))
    }
}

/// Real scalar usable by the generic kernels.
///
/// Arithmetic between values of different precision is carried out at the
/// larger of the two precisions. `zero()` and `one()` are exact.
pub trait Real:
    Num + Clone + PartialOrd + Neg<Output = Self> + Debug + Display + Send + Sync + 'static
{
    fn from_f64_prec(value: f64, prec: Precision) -> Self;
    fn from_i64_prec(value: i64, prec: Precision) -> Self;
    fn from_bigint(value: &BigInt, prec: Precision) -> Self;
    fn from_ratio(value: &BigRational, prec: Precision) -> Self;

    fn pi(prec: Precision) -> Self;
    fn euler_gamma(prec: Precision) -> Self;
    fn ln_2(prec: Precision) -> Self;

    fn precision(&self) -> Precision;

    fn ln(&self) -> Self;
    fn ln_1p(&self) -> Self;
    fn exp(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn powi(&self, exp: i32) -> Self;
    fn digamma(&self) -> Self;

    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// `x * 2^k`, exact.
    fn mul_pow2(&self, k: i32) -> Self {
        let two = Self::from_i64_prec(2, self.precision());
        self.clone() * two.powi(k)
    }
}

impl<F> Real for F
where
    F: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static,
{
    fn from_f64_prec(value: f64, _prec: Precision) -> Self {
        F::from_f64(value).expect("f64 conversion")
    }

    fn from_i64_prec(value: i64, _prec: Precision) -> Self {
        F::from_i64(value).expect("i64 conversion")
    }

    fn from_bigint(value: &BigInt, _prec: Precision) -> Self {
        F::from_f64(value.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
    }

    fn from_ratio(value: &BigRational, _prec: Precision) -> Self {
        F::from_f64(value.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
    }

    fn pi(_prec: Precision) -> Self {
        F::PI()
    }

    fn euler_gamma(_prec: Precision) -> Self {
        F::from_f64(0.577_215_664_901_532_9).unwrap()
    }

    fn ln_2(_prec: Precision) -> Self {
        F::LN_2()
    }

    fn precision(&self) -> Precision {
        Precision::bits(F::epsilon().log2().abs().to_u32().unwrap_or(52) + 1)
    }

    fn ln(&self) -> Self {
        Float::ln(*self)
    }

    fn ln_1p(&self) -> Self {
        Float::ln_1p(*self)
    }

    fn exp(&self) -> Self {
        Float::exp(*self)
    }

    fn sqrt(&self) -> Self {
        Float::sqrt(*self)
    }

    fn sin(&self) -> Self {
        Float::sin(*self)
    }

    fn cos(&self) -> Self {
        Float::cos(*self)
    }

    fn atan2(&self, x: &Self) -> Self {
        Float::atan2(*self, *x)
    }

    fn abs(&self) -> Self {
        Float::abs(*self)
    }

    fn powi(&self, exp: i32) -> Self {
        Float::powi(*self, exp)
    }

    fn digamma(&self) -> Self {
        digamma_float(*self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_finite(&self) -> bool {
        Float::is_finite(*self)
    }
}

/// Digamma for primitive floats: upward recurrence to x >= 10, then the
/// asymptotic series; reflection below zero.
fn digamma_float<F: Float + FloatConst + FromPrimitive>(x: F) -> F {
    let c = |v: f64| F::from_f64(v).unwrap();
    if x <= F::zero() && x == x.floor() {
        return F::nan();
    }
    if x < F::zero() {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        let pix = F::PI() * x;
        return digamma_float(F::one() - x) - F::PI() * pix.cos() / pix.sin();
    }
    let mut acc = F::zero();
    let mut y = x;
    while y < c(10.0) {
        acc = acc - y.recip();
        y = y + F::one();
    }
    let inv2 = (y * y).recip();
    // B_2k / (2k) for k = 1..6
    let coeffs = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
    ];
    let mut series = F::zero();
    let mut pow = inv2;
    for k in coeffs {
        series = series + c(k) * pow;
        pow = pow * inv2;
    }
    acc + y.ln() - c(0.5) / y - series
}

// ---------------------------------------------------------------------------
// complex helpers

pub fn cadd_real<T: Real>(z: &Complex<T>, r: &T) -> Complex<T> {
    Complex::new(z.re.clone() + r.clone(), z.im.clone())
}

pub fn cscale<T: Real>(z: &Complex<T>, r: &T) -> Complex<T> {
    Complex::new(z.re.clone() * r.clone(), z.im.clone() * r.clone())
}

pub fn cabs<T: Real>(z: &Complex<T>) -> T {
    (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt()
}

/// Principal logarithm, argument in (-pi, pi].
pub fn cln<T: Real>(z: &Complex<T>) -> Complex<T> {
    let modsq = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
    let half = T::one() / (T::one() + T::one());
    Complex::new(modsq.ln() * half, z.im.atan2(&z.re))
}

pub fn cexp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

pub fn cinv<T: Real>(z: &Complex<T>) -> Complex<T> {
    let modsq = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
    Complex::new(z.re.clone() / modsq.clone(), -z.im.clone() / modsq)
}

/// `log sin z`, stable for large |Im z| (only defined modulo 2 pi i).
pub fn cln_sin<T: Real>(z: &Complex<T>) -> Complex<T> {
    let prec = z.re.precision().max(z.im.precision());
    let two = T::from_i64_prec(2, prec);
    if z.im.is_negative() {
        let flipped = Complex::new(z.re.clone(), -z.im.clone());
        return cln_sin(&flipped).conj();
    }
    // sin z = (i/2) e^{-iz} (1 - e^{2iz}) for Im z >= 0
    let minus_iz = Complex::new(z.im.clone(), -z.re.clone());
    let two_iz = Complex::new(-(z.im.clone() * two.clone()), z.re.clone() * two.clone());
    let e = cexp(&two_iz);
    let one_minus = Complex::new(T::one() - e.re, -e.im);
    let ln_half_i = Complex::new(-T::ln_2(prec), T::pi(prec) / two);
    minus_iz + cln(&one_minus) + ln_half_i
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_round_trip() {
        let p = Precision::digits(100);
        assert!(p.in_bits() >= 333);
        assert!(p.in_digits() >= 100);
        assert_eq!(Precision::bits(0).in_bits(), 2);
    }

    #[test]
    fn digamma_f64_known_values() {
        let gamma = 0.577_215_664_901_532_9;
        assert!((digamma_float(1.0f64) + gamma).abs() < 1e-14);
        // psi(1/2) = -gamma - 2 ln 2
        let want = -gamma - 2.0 * std::f64::consts::LN_2;
        assert!((digamma_float(0.5f64) - want).abs() < 1e-14);
        // psi(-1/2) = psi(1/2) + 2
        assert!((digamma_float(-0.5f64) - (want + 2.0)).abs() < 1e-13);
        assert!(digamma_float(-2.0f64).is_nan());
    }

    #[test]
    fn complex_log_sin_matches_direct_for_moderate_arguments() {
        for &(re, im) in &[(0.3, 0.2), (1.7, -2.5), (-0.4, 4.0), (2.0, 0.0)] {
            let z = Complex::new(re, im);
            let direct = z.sin();
            let via = cexp(&cln_sin(&z));
            assert!((direct - via).norm() < 1e-12 * direct.norm().max(1.0), "{z}");
        }
    }

    #[test]
    fn complex_log_sin_survives_huge_imaginary_part() {
        let z = Complex::new(0.4, 1.0e6);
        let l = cln_sin(&z);
        // |sin z| ~ e^{Im z}/2
        assert!((l.re - (1.0e6 - std::f64::consts::LN_2)).abs() < 1e-6);
    }

    #[test]
    fn f32_is_a_real() {
        let x: f32 = Real::from_f64_prec(2.0, Precision::F64);
        assert!((Real::ln(&x) - std::f32::consts::LN_2).abs() < 1e-6);
    }
}
