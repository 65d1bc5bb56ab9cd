//! Log-gamma: an f64 version for planning and a generic complex Stirling
//! series for diagnostics.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cadd_real, cinv, cln, Precision, Real};
use crate::special::bernoulli::bernoulli_even;

/// `ln Gamma(x)` for real x > 0, to about 1e-14 relative.
pub fn ln_gamma_real(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 12.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // B_2k / (2k (2k-1)) for k = 1..7
    let c = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let mut series = 0.0;
    let mut pow = inv;
    for ck in c {
        series += ck * pow;
        pow *= inv2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

/// Principal-branch `ln Gamma(z)` (continuous off the negative real axis)
/// with absolute error around `10^-digits`.
///
/// The argument is shifted up until Stirling's series converges far enough,
/// then the shift is undone with `ln Gamma(z) = ln Gamma(z+N) - sum ln(z+j)`.
/// The logs are summed individually, so the result can differ from the
/// principal value by a multiple of `2 pi i` for large negative Re z.
pub fn ln_gamma_complex<T: Real>(z: &Complex<T>, digits: u32) -> Result<Complex<T>> {
    let prec = Precision::digits(digits + 10);
    let zf = (z.re.to_f64(), z.im.to_f64());
    if zf.1 == 0.0 && zf.0 <= 0.0 && zf.0 == zf.0.floor() {
        return Err(Error::Domain(format!("log-gamma pole at {}", zf.0)));
    }
    let d = f64::from(digits) + 5.0;
    // radius where the smallest Stirling term is below 10^-d
    let radius = (d * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI)).max(8.0) + 2.0;
    let mut w = Complex::new(z.re.clone(), z.im.clone());
    let mut correction = Complex::new(T::zero(), T::zero());
    let one = T::from_i64_prec(1, prec);
    while (w.re.to_f64().powi(2) + w.im.to_f64().powi(2)).sqrt() < radius || w.re.to_f64() < 1.0 {
        correction = correction + cln(&w);
        w = cadd_real(&w, &one);
    }
    let half = T::from_f64_prec(0.5, prec);
    let two_pi = T::pi(prec) * T::from_i64_prec(2, prec);
    let ln_w = cln(&w);
    let mut acc = Complex::new(w.re.clone() - half.clone(), w.im.clone()) * ln_w - w.clone();
    acc.re = acc.re + two_pi.ln() * half;
    let inv = cinv(&w);
    let inv2 = inv.clone() * inv.clone();
    let mut pow = inv;
    let threshold = 10f64.powf(-d);
    let wabs = (w.re.to_f64().powi(2) + w.im.to_f64().powi(2)).sqrt();
    // the smallest term sits near k = pi |w|; at |w| >= radius the threshold
    // is crossed before k = 2d
    let kmax = (std::f64::consts::PI * wabs).min(2.0 * d + 10.0).floor().max(2.0) as usize;
    let bern = bernoulli_even(kmax);
    for k in 1..=kmax {
        let coef = T::from_ratio(&bern[k], prec)
            / T::from_i64_prec((2 * k * (2 * k - 1)) as i64, prec);
        let term = Complex::new(pow.re.clone() * coef.clone(), pow.im.clone() * coef);
        let size = term.re.to_f64().hypot(term.im.to_f64());
        acc = acc + term;
        if size < threshold {
            break;
        }
        pow = pow * inv2.clone();
    }
    Ok(acc - correction)
}
