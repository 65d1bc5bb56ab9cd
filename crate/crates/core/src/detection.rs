//! Order-of-magnitude estimates for when a zero off the critical line would
//! show up in `Lambda_n`, and the endpoint slopes of the phase `Theta_n`.
//!
//! Logarithms and constants are neglected against powers, so thresholds are
//! reported as decimal magnitudes only.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{BigFloat, Precision, Real};
use crate::zeros::modulus_estimate;
use crate::Complex64;

/// Height up to which all zeros are known to lie on the line.
pub const DEFAULT_T0: f64 = 2.4e12;

/// A hypothetical zero `rho = 1/2 + t + iT`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViolationHypothesis {
    t: f64,
    big_t: f64,
    t0: f64,
}

impl ViolationHypothesis {
    pub fn new(t: f64, big_t: f64) -> Result<Self> {
        Self::with_t0(t, big_t, DEFAULT_T0)
    }

    /// `t = 1/2` and `T = T0` are accepted as the limiting best case.
    pub fn with_t0(t: f64, big_t: f64, t0: f64) -> Result<Self> {
        if !(t > 0.0 && t <= 0.5) {
            return Err(Error::Domain(format!("offset t = {t} must lie in (0, 1/2]")));
        }
        if !(t0 >= 0.0 && t0.is_finite()) {
            return Err(Error::Domain(format!("T0 = {t0} must be a non-negative height")));
        }
        if !(big_t >= t0 && big_t > 0.0 && big_t.is_finite()) {
            return Err(Error::Domain(format!("T = {big_t} must be at least T0 = {t0}")));
        }
        Ok(ViolationHypothesis { t, big_t, t0 })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn height(&self) -> f64 {
        self.big_t
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn rho(&self) -> Complex64 {
        Complex64::new(0.5 + self.t, self.big_t)
    }
}

/// Positive number kept as its decimal logarithm.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Magnitude {
    pub log10: f64,
}

impl Magnitude {
    /// `base^exponent`.
    pub fn power(base: f64, exponent: f64) -> Self {
        Magnitude {
            log10: exponent * base.log10(),
        }
    }

    pub fn exponent(&self) -> i64 {
        self.log10.floor() as i64
    }

    pub fn mantissa(&self) -> f64 {
        10f64.powf(self.log10 - self.log10.floor())
    }

    /// `(mantissa, decimal exponent)`.
    pub fn parts(&self) -> (f64, i64) {
        (self.mantissa(), self.exponent())
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.parts();
        write!(f, "{m:.2}e{e}")
    }
}

/// Exponent `1 + 2/t` of the plain crossover `n ~ T^(1+2/t)`.
pub fn tn_exponent(t: f64) -> f64 {
    1.0 + 2.0 / t
}

/// Exponent `1 + 1/t` once the period-2 averaging removes the leading
/// oscillation.
pub fn tni_exponent(t: f64) -> f64 {
    1.0 + 1.0 / t
}

/// n beyond which the signal of `h` exceeds the `log n` background.
pub fn threshold_tn(h: &ViolationHypothesis) -> Magnitude {
    Magnitude::power(h.big_t, tn_exponent(h.t))
}

/// Same for the averaged increments.
pub fn threshold_tni(h: &ViolationHypothesis) -> Magnitude {
    Magnitude::power(h.big_t, tni_exponent(h.t))
}

/// `|F_n(rho)| ~ (2n/T)^t / (T^2 log n)`; n is real since the interesting
/// values are far beyond any integer type.
pub fn signal_magnitude(h: &ViolationHypothesis, n: f64) -> f64 {
    modulus_estimate(h.rho(), n)
}

/// `Theta_n'(0) = n(2n+1)` and `Theta_n'(pi) = sum_(m=1..n) 1/(4m-1)`, the
/// latter also through `(psi(n+3/4) + gamma + 3 log 2 - pi/2) / 4`.
#[derive(Clone, Debug)]
pub struct EndpointSlopes {
    pub n: usize,
    pub slope0: u128,
    pub slope_pi: BigFloat,
    pub slope_pi_digamma: BigFloat,
}

pub fn theta_endpoint_slopes(n: usize, digits: u32) -> Result<EndpointSlopes> {
    if n == 0 {
        return Err(Error::Domain("endpoint slopes need n >= 1".into()));
    }
    let prec = Precision::digits(digits + 10 + ((n as f64).log10().ceil() as u32));
    let one = BigFloat::from_i64_prec(1, prec);
    let mut sum = BigFloat::from_i64_prec(0, prec);
    for m in 1..=n {
        sum = sum + one.clone() / BigFloat::from_i64_prec(4 * m as i64 - 1, prec);
    }
    let arg = BigFloat::from_i64_prec(4 * n as i64 + 3, prec) / BigFloat::from_i64_prec(4, prec);
    let three_ln2 = BigFloat::ln_2(prec) * BigFloat::from_i64_prec(3, prec);
    let half_pi = BigFloat::pi(prec) / BigFloat::from_i64_prec(2, prec);
    let via_psi = (arg.digamma() + BigFloat::euler_gamma(prec) + three_ln2 - half_pi)
        / BigFloat::from_i64_prec(4, prec);
    let nn = n as u128;
    Ok(EndpointSlopes {
        n,
        slope0: nn * (2 * nn + 1),
        slope_pi: sum,
        slope_pi_digamma: via_psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn validation() {
        assert!(ViolationHypothesis::new(0.0, 3e12).is_err());
        assert!(ViolationHypothesis::new(0.6, 3e12).is_err());
        assert!(ViolationHypothesis::new(0.25, 1e12).is_err());
        assert!(ViolationHypothesis::new(0.5, 2.4e12).is_ok());
        assert!(ViolationHypothesis::new(0.5, 2.5e12).is_ok());
        assert!(ViolationHypothesis::with_t0(0.25, 1e6, 1e3).is_ok());
    }

    #[test]
    fn best_case_thresholds() {
        let h = ViolationHypothesis::new(0.5, 2.4e12).unwrap();
        let tn = threshold_tn(&h);
        assert_eq!(tn.exponent(), 61);
        assert!((tn.mantissa() - 7.96).abs() < 0.01, "{tn}");
        let tni = threshold_tni(&h);
        assert_eq!(tni.exponent(), 37);
        assert!((tni.mantissa() - 1.38).abs() < 0.01, "{tni}");
        assert_eq!(tn_exponent(0.5), 5.0);
        assert_eq!(tni_exponent(0.5), 3.0);
        assert_eq!(tni_exponent(0.25), 5.0);
    }

    #[test]
    fn quarter_offset() {
        let h = ViolationHypothesis::with_t0(0.25, 1e6, 1e3).unwrap();
        assert!((threshold_tn(&h).log10 - 54.0).abs() < 1e-12);
        assert_eq!(format!("{}", threshold_tn(&h)), "1.00e54");
    }

    #[test]
    fn crossover_at_threshold() {
        let h = ViolationHypothesis::with_t0(0.5, DEFAULT_T0, 0.0).unwrap();
        let n = 10f64.powf(threshold_tn(&h).log10);
        // (2n/T)^(1/2) / T^2 = sqrt(2) at n = T^5
        let s = signal_magnitude(&h, n) * n.ln();
        assert!((s - 2f64.sqrt()).abs() < 1e-9, "{s}");
    }

    #[test]
    fn slopes_small_n() {
        let s1 = theta_endpoint_slopes(1, 30).unwrap();
        assert_eq!(s1.slope0, 3);
        assert!((s1.slope_pi.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        let s2 = theta_endpoint_slopes(2, 30).unwrap();
        assert_eq!(s2.slope0, 10);
        assert!((s2.slope_pi.to_f64() - 10.0 / 21.0).abs() < 1e-16);
        assert!(theta_endpoint_slopes(0, 30).is_err());
    }

    #[test]
    fn slope_pi_exact_oracle() {
        // rational sum as the independent reference
        for n in [1usize, 5, 17, 40] {
            let exact: BigRational = (1..=n)
                .map(|m| BigRational::new(1.into(), (4 * m as i64 - 1).into()))
                .sum();
            let s = theta_endpoint_slopes(n, 40).unwrap();
            let p = Precision::digits(60);
            let d = (s.slope_pi_digamma.clone() - BigFloat::from_ratio(&exact, p)).abs();
            assert!(d.to_f64() < 1e-35, "n = {n}");
        }
    }
}
