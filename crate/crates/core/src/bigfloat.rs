//! Multiple-precision binary float backed by MPFR.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rug::float::{Constant, Round};
use rug::integer::Order;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::scalar::{Precision, Real};

/// An MPFR float whose precision travels with the value.
///
/// Binary operations round to the larger operand precision, so exact
/// constants such as `BigFloat::one()` never degrade a high-precision
/// computation.
#[derive(Clone, Debug)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn new(prec: Precision, value: f64) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), value))
    }

    pub fn from_float(value: Float) -> Self {
        BigFloat(value)
    }

    pub fn from_integer(value: &Integer, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), value))
    }

    pub fn from_rational(value: &Rational, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), value))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    /// Rounded copy at a different precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), &self.0))
    }

    /// Parses a decimal string at the given precision.
    pub fn parse(text: &str, prec: Precision) -> Option<Self> {
        let parsed = Float::parse(text.trim()).ok()?;
        Some(BigFloat(Float::with_val(prec.in_bits(), parsed)))
    }

    /// Decimal exponent e such that 10^(e-1) <= |x| < 10^e (0 for zero).
    pub fn decimal_exponent(&self) -> i64 {
        if self.0.is_zero() {
            return 0;
        }
        let l = Float::with_val(64, self.0.abs_ref()).log10();
        l.to_f64().floor() as i64 + 1
    }

    /// Fixed-point decimal rendering with `decimals` digits after the point,
    /// rounded to nearest.
    pub fn to_fixed(&self, decimals: usize) -> String {
        if !self.0.is_finite() {
            return self.0.to_string();
        }
        let mag = self.decimal_exponent().max(0) as u32;
        let bits = self
            .0
            .prec()
            .max(((mag as usize + decimals + 20) as f64 * std::f64::consts::LOG2_10) as u32);
        let scale = Integer::from(10).pow(decimals as u32);
        let scaled = Float::with_val(bits, &self.0 * &scale);
        let (int, _) = scaled
            .to_integer_round(Round::Nearest)
            .expect("finite value");
        let negative = int < 0;
        let mut digits = int.abs().to_string();
        if digits.len() <= decimals {
            digits = "0".repeat(decimals + 1 - digits.len()) + &digits;
        }
        let split = digits.len() - decimals;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&digits[..split]);
        if decimals > 0 {
            out.push('.');
            out.push_str(&digits[split..]);
        }
        out
    }

    /// Scientific rendering with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        let (neg, mantissa, exp) = self.0.to_sign_string_exp(10, Some(digits.max(1)));
        match exp {
            None => mantissa,
            Some(e) => {
                let (head, tail) = mantissa.split_at(1);
                format!(
                    "{}{}{}{}e{}",
                    if neg { "-" } else { "" },
                    head,
                    if tail.is_empty() { "" } else { "." },
                    tail,
                    e - 1
                )
            }
        }
    }
}

fn bigint_to_integer(value: &BigInt) -> Integer {
    let (sign, digits) = value.to_u64_digits();
    let magnitude = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -magnitude
    } else {
        magnitude
    }
}

pub(crate) fn ratio_to_rational(value: &BigRational) -> Rational {
    Rational::from((
        bigint_to_integer(value.numer()),
        bigint_to_integer(value.denom()),
    ))
}

fn join_prec(a: &Float, b: &Float) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                let p = join_prec(&self.0, &rhs.0);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }

        impl<'a> $trait<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &'a BigFloat) -> BigFloat {
                let p = join_prec(&self.0, &rhs.0);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);
binop!(Rem, rem, %);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::new(2))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(2, 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = rug::float::ParseFloatError;

    fn from_str_radix(text: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(text, radix as i32)?;
        let bits = ((text.len() as f64) * f64::from(radix).log2()).ceil() as u32 + 16;
        Ok(BigFloat(Float::with_val(bits, parsed)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(decimals) => f.write_str(&self.to_fixed(decimals)),
            None => {
                let digits = Precision::bits(self.0.prec()).in_digits().max(1) as usize;
                f.write_str(&self.to_sci(digits))
            }
        }
    }
}

impl Real for BigFloat {
    fn from_f64_prec(value: f64, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), value))
    }

    fn from_i64_prec(value: i64, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), value))
    }

    fn from_bigint(value: &BigInt, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), bigint_to_integer(value)))
    }

    fn from_ratio(value: &BigRational, prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), ratio_to_rational(value)))
    }

    fn pi(prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), Constant::Pi))
    }

    fn euler_gamma(prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), Constant::Euler))
    }

    fn ln_2(prec: Precision) -> Self {
        BigFloat(Float::with_val(prec.in_bits(), Constant::Log2))
    }

    fn precision(&self) -> Precision {
        Precision::bits(self.0.prec())
    }

    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }

    fn ln_1p(&self) -> Self {
        BigFloat(self.0.clone().ln_1p())
    }

    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }

    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }

    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }

    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }

    fn atan2(&self, x: &Self) -> Self {
        let p = join_prec(&self.0, &x.0);
        BigFloat(Float::with_val(p, self.0.atan2_ref(&x.0)))
    }

    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }

    fn powi(&self, exp: i32) -> Self {
        BigFloat(self.0.clone().pow(exp))
    }

    fn digamma(&self) -> Self {
        BigFloat(self.0.clone().digamma())
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn mul_pow2(&self, k: i32) -> Self {
        BigFloat(self.0.clone() << k)
    }
}
