//! Riemann-zero side: the primitive `F_n`, its large-n asymptotics, the
//! zero-sum representation of `Lambda_n`, and Keiper's sequence from zeros.
//!
//! `F_n(x) = (-1)^n [ -(1/A_n0) log(x-1) + sum_(m=0..n) (-1)^m A_nm log(x-2m) ]`
//! is analytic off the cut `[0, 2n]` and behaves like `-1/x` at infinity.
//! Evaluating it directly cancels as badly as `Lambda_n` itself, so large
//! |x| goes through the exact Laurent expansion
//! `F_n(x) = sum_(k>=1) c_k x^-k`, `c_k = (-1)^n/k (1/A_n0 - sum_m (-1)^m A_nm (2m)^k)`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use num_complex::Complex;
use rayon::prelude::*;

use crate::coefficients::{coefficient_row, CoefficientRow};
use crate::error::{Error, Result};
use crate::scalar::{cln, cln_sin, BigFloat, Precision, Real};
use crate::special::gamma::ln_gamma_complex;
use crate::{Complex64, ComplexMp};

/// Ascending positive ordinates of zeros `1/2 + i gamma`.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: Option<PathBuf>,
}

impl ZeroTable {
    /// Validates an in-memory list (1-based positions in errors).
    pub fn from_ordinates(ordinates: Vec<f64>) -> Result<Self> {
        validate(&ordinates, Path::new("<memory>"), |i| i + 1)?;
        Ok(ZeroTable {
            ordinates,
            source: None,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    /// The first `pairs` ordinates.
    pub fn take(&self, pairs: usize) -> Result<&[f64]> {
        if pairs > self.count() {
            return Err(Error::InsufficientZeros {
                requested: pairs,
                available: self.count(),
            });
        }
        Ok(&self.ordinates[..pairs])
    }
}

fn validate(values: &[f64], path: &Path, line_of: impl Fn(usize) -> usize) -> Result<()> {
    let bad = |i: usize, reason: String| Error::ZeroFile {
        path: path.to_path_buf(),
        line: line_of(i),
        reason,
    };
    for (i, &v) in values.iter().enumerate() {
        if !(v.is_finite() && v > 0.0) {
            return Err(bad(i, format!("ordinate {v} is not positive")));
        }
        if i > 0 && v <= values[i - 1] {
            return Err(bad(i, format!("ordinate {v} does not exceed the previous {}", values[i - 1])));
        }
    }
    Ok(())
}

/// Reads one ordinate per line; blank lines and `#` comments are skipped.
pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v: f64 = content.parse().map_err(|_| Error::ZeroFile {
            path: path.to_path_buf(),
            line: i + 1,
            reason: format!("cannot parse '{content}'"),
        })?;
        values.push(v);
        lines.push(i + 1);
    }
    validate(&values, path, |i| lines[i])?;
    Ok(ZeroTable {
        ordinates: values,
        source: Some(path.to_path_buf()),
    })
}

#[derive(Clone, Debug)]
pub struct FnEvaluation {
    pub n: usize,
    pub x: ComplexMp,
    pub value: ComplexMp,
    pub branch_note: String,
}

/// Precomputed row of `F_n`; the Laurent data is built on first f64 use.
#[derive(Clone, Debug)]
pub struct FnKernel {
    n: usize,
    row: CoefficientRow,
    peak10: f64,
    c2: f64,
    series: OnceLock<Laurent>,
}

#[derive(Clone, Debug)]
struct Laurent {
    coeffs: Vec<f64>,
    radius: f64,
}

fn mp(prec: Precision, v: f64) -> BigFloat {
    BigFloat::from_f64_prec(v, prec)
}

/// Exact `c_k`.
fn laurent_exact(row: &CoefficientRow, k: u32) -> BigRational {
    let mut s = BigRational::zero();
    for (m, am) in row.values().iter().enumerate().skip(1) {
        let t = am * BigRational::from_integer(BigInt::from(2 * m).pow(k));
        s = if m % 2 == 0 { s + t } else { s - t };
    }
    let c = (row.a0().recip() - s) / BigRational::from_integer(BigInt::from(k));
    if row.n() % 2 == 1 {
        -c
    } else {
        c
    }
}

impl Laurent {
    fn build(row: &CoefficientRow, peak10: f64) -> Self {
        let n = row.n();
        let nf = n as f64;
        let sum_abs10 = peak10 + ((n + 2) as f64).log10();
        // terms are bounded by sum|A| (2n/|x|)^k / k; at |x| >= 16n the ratio
        // is 1/8
        let base = 16.0 * nf.max(1.0);
        let terms = ((sum_abs10 + 20.0 + base.log10()) / 8f64.log10()).ceil() as u32 + 2;
        let digits = (sum_abs10 + f64::from(terms) * (2.0 * nf).log10() + 25.0).ceil() as u32;
        let prec = Precision::digits(digits);
        let a: Vec<BigFloat> = row.to_reals(prec);
        let inv_a0 = BigFloat::from_i64_prec(1, prec) / a[0].clone();
        let coeffs: Vec<f64> = (1..=terms)
            .into_par_iter()
            .map(|k| {
                let mut s = BigFloat::from_i64_prec(0, prec);
                for (m, am) in a.iter().enumerate().skip(1) {
                    let t = am.clone() * BigFloat::from_i64_prec(2 * m as i64, prec).powi(k as i32);
                    s = if m % 2 == 0 { s + t } else { s - t };
                }
                let c = (inv_a0.clone() - s) / BigFloat::from_i64_prec(i64::from(k), prec);
                let c = if n % 2 == 1 { -c } else { c };
                c.to_f64()
            })
            .collect();
        // push the switch-over out until f64 rounding in the series stays
        // below 1e-9 of the 1/x^2 term
        let mut radius = base;
        loop {
            let mass: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.abs() * radius.powi(-(i as i32 + 1)))
                .sum();
            if mass * 1e-16 <= 1e-9 / (radius * radius) || radius > 1e12 {
                break;
            }
            radius *= 2.0;
        }
        Laurent { coeffs, radius }
    }
}

impl FnKernel {
    pub fn new(n: usize) -> Result<Self> {
        let row = coefficient_row(n)?;
        let peak10 = (0..=n).map(|m| row.log10_abs(m)).fold(0.0, f64::max);
        let c2 = laurent_exact(&row, 2).to_f64().unwrap_or(f64::NAN);
        Ok(FnKernel {
            n,
            row,
            peak10,
            c2,
            series: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn series(&self) -> &Laurent {
        self.series.get_or_init(|| Laurent::build(&self.row, self.peak10))
    }

    /// `c_1, c_2, ...` of the expansion at infinity (`c_1 = -1`). The first
    /// call costs O(n^2) multiple-precision products.
    pub fn laurent_coefficients(&self) -> &[f64] {
        &self.series().coeffs
    }

    /// `c_2`, exact up to the final rounding.
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// |x| from which [`FnKernel::eval`] uses the Laurent series.
    pub fn laurent_radius(&self) -> f64 {
        self.series().radius
    }

    /// Direct evaluation with principal logs, about `digits` correct
    /// significant digits for |x| >= 1.
    pub fn eval_mp(&self, x: &ComplexMp, digits: u32) -> Result<FnEvaluation> {
        let (re, im) = (x.re.to_f64(), x.im.to_f64());
        let n = self.n;
        let two_n = 2.0 * n as f64;
        if im == 0.0 && (0.0..=two_n).contains(&re) {
            return Err(Error::Domain(format!("x = {re} lies on the cut [0, {two_n}]")));
        }
        let size = re.hypot(im).max(1.0);
        let work = f64::from(digits) + self.peak10 + size.log10() + (size.ln() + 1.0).log10() + 12.0;
        let prec = Precision::digits(work.ceil() as u32);
        let lift = |v: &BigFloat| v.clone() * BigFloat::from_i64_prec(1, prec);
        let x = Complex::new(lift(&x.re), lift(&x.im));
        let on_axis = im == 0.0;
        let log_at = |a: i64| -> ComplexMp {
            let z = Complex::new(x.re.clone() - BigFloat::from_i64_prec(a, prec), x.im.clone());
            if on_axis {
                Complex::new(z.re.abs().ln(), BigFloat::from_i64_prec(0, prec))
            } else {
                cln(&z)
            }
        };
        let a: Vec<BigFloat> = self.row.to_reals(prec);
        let inv_a0 = BigFloat::from_i64_prec(1, prec) / a[0].clone();
        let mut acc = log_at(1) * Complex::new(-inv_a0, BigFloat::from_i64_prec(0, prec));
        for (m, am) in a.iter().enumerate() {
            let term = log_at(2 * m as i64) * Complex::new(am.clone(), BigFloat::from_i64_prec(0, prec));
            acc = if m % 2 == 0 { acc + term } else { acc - term };
        }
        if n % 2 == 1 {
            acc = -acc;
        }
        let note = if !on_axis {
            "principal logs off the real axis"
        } else if re > two_n {
            "real axis right of the cut: real logs"
        } else {
            "real axis left of the cut: log|x-a|, the i*pi parts cancel exactly"
        };
        let out = Precision::digits(digits + 5);
        Ok(FnEvaluation {
            n,
            x: x.clone(),
            value: Complex::new(acc.re.with_precision(out), acc.im.with_precision(out)),
            branch_note: note.to_string(),
        })
    }

    /// f64 evaluation: Laurent series for |x| beyond [`Self::laurent_radius`],
    /// direct multiple-precision logs otherwise.
    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        let series = self.series();
        if x.norm() >= series.radius {
            let inv = x.inv();
            let mut acc = Complex64::new(0.0, 0.0);
            for c in series.coeffs.iter().rev() {
                acc = (acc + c) * inv;
            }
            return Ok(acc);
        }
        let prec = Precision::digits(20);
        let xm = Complex::new(mp(prec, x.re), mp(prec, x.im));
        let v = self.eval_mp(&xm, 17)?.value;
        Ok(Complex64::new(v.re.to_f64(), v.im.to_f64()))
    }
}

/// `F_n(x)` to about `digits` significant digits.
pub fn f_n(x: &ComplexMp, n: usize, digits: u32) -> Result<FnEvaluation> {
    FnKernel::new(n)?.eval_mp(x, digits)
}

fn is_even_integer(x: Complex64) -> bool {
    x.im == 0.0 && x.re == x.re.round() && (x.re as i64) % 2 == 0
}

/// `g(x) = sqrt(pi) 2^(x-1) / (sin(pi x / 2) Gamma(x))`, evaluated through
/// logs so that large |Im x| does not overflow.
pub fn g_function(x: Complex64) -> Result<Complex64> {
    if is_even_integer(x) && x.re > 0.0 {
        return Err(Error::Domain(format!("g has a pole at x = {}", x.re)));
    }
    if x.im == 0.0 && x.re <= 0.0 && x.re == x.re.round() {
        // Gamma poles: g vanishes at negative odd integers, finite limit at
        // non-positive even ones
        if (x.re as i64) % 2 != 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = (-x.re) as i32 / 2;
        // sin(pi x/2) Gamma(x) -> (pi/2) (-1)^k / (2k)! * (-1)^(2k) ... as x -> -2k
        let fact: f64 = (1..=2 * k).map(f64::from).product();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let limit = std::f64::consts::FRAC_PI_2 * sign / fact;
        return Ok(Complex64::new(
            std::f64::consts::PI.sqrt() * 2f64.powf(x.re - 1.0) / limit,
            0.0,
        ));
    }
    let half_pi_x = x * std::f64::consts::FRAC_PI_2;
    let ln_sin = cln_sin(&half_pi_x);
    let ln_gamma = ln_gamma_complex(&x, 14)?;
    let ln_g = Complex64::new(0.5 * std::f64::consts::PI.ln(), 0.0) + (x - 1.0) * std::f64::consts::LN_2
        - ln_sin
        - ln_gamma;
    Ok(ln_g.exp())
}

/// `F_n(rho) ~ g(rho) / (rho (rho - 1)) (-1)^n n^(rho - 1/2) / log n`.
pub fn f_n_asymptotic(rho: Complex64, n: usize) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::Domain("the asymptotic form needs n >= 2".into()));
    }
    if is_even_integer(rho) || (rho.im == 0.0 && rho.re == 1.0) {
        return Err(Error::Domain(format!("pole at rho = {}", rho.re)));
    }
    let ln_n = (n as f64).ln();
    let g = g_function(rho)?;
    // n^(rho-1/2) via logs; the modulus can be far outside f64 range only
    // for absurd inputs
    let power = ((rho - 0.5) * ln_n).exp();
    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    Ok(g / (rho * (rho - 1.0)) * power * (sign / ln_n))
}

/// `|F_n(rho)| ~ (2n/T)^t / (T^2 log n)` for `rho = 1/2 + t + iT`,
/// `n >> T >> 1`.
pub fn modulus_estimate(rho: Complex64, n: f64) -> f64 {
    let t = rho.re - 0.5;
    let big_t = rho.im.abs();
    (2.0 * n / big_t).powf(t) / (big_t * big_t * n.ln())
}

/// Result of a truncated zero sum.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSum {
    pub n: usize,
    pub pairs: usize,
    pub value: f64,
    /// Heuristic size of the omitted pairs (not rigorous).
    pub tail_bound: f64,
}

/// Safety factor on the asymptotic tail estimate.
pub const TAIL_SAFETY: f64 = 2.0;

/// `sum_(gamma > T) 2 Re F_n(1/2 + i gamma)` is about
/// `-(1 + 2 c_2) sum 1/gamma^2`, and the zero density `log(T/2pi)/2pi`
/// turns the latter into `(log(T/2pi) + 1)/(2 pi T)`.
pub fn tail_estimate(kernel: &FnKernel, last_ordinate: f64) -> f64 {
    let t = last_ordinate.max(14.0);
    let c2 = kernel.c2;
    let density = ((t / (2.0 * std::f64::consts::PI)).ln().max(0.0) + 1.0) / (2.0 * std::f64::consts::PI * t);
    TAIL_SAFETY * (1.0 + 2.0 * c2).abs() * density
}

/// Per-pair contributions `2 Re F_n(1/2 + i gamma_k)`, in table order.
pub fn pair_terms(kernel: &FnKernel, ordinates: &[f64]) -> Result<Vec<f64>> {
    ordinates
        .par_iter()
        .map(|&g| Ok(2.0 * kernel.eval(Complex64::new(0.5, g))?.re))
        .collect()
}

/// Zero sums truncated after each of `checkpoints` pairs (ascending), in one
/// pass; summation is sequential in ascending gamma.
pub fn zero_sum_checkpoints(n: usize, table: &ZeroTable, checkpoints: &[usize]) -> Result<Vec<ZeroSum>> {
    let top = checkpoints.iter().copied().max().unwrap_or(0);
    let ords = table.take(top)?;
    let kernel = FnKernel::new(n)?;
    let terms = pair_terms(&kernel, ords)?;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &k in checkpoints {
        let value: f64 = terms[..k].iter().sum();
        let last = if k == 0 { 14.0 } else { ords[k - 1] };
        out.push(ZeroSum {
            n,
            pairs: k,
            value,
            tail_bound: tail_estimate(&kernel, last),
        });
    }
    Ok(out)
}

/// `sum_(k <= pairs) 2 Re F_n(1/2 + i gamma_k)` with its heuristic tail.
pub fn zero_sum_lambda(n: usize, table: &ZeroTable, pairs: usize) -> Result<ZeroSum> {
    Ok(zero_sum_checkpoints(n, table, &[pairs])?.remove(0))
}

/// Keiper's `lambda_n^K = (1/n) sum 4 sin^2(n atan(1/(2 gamma)))`, the paired
/// form of `(1/n) sum [1 - (1 - 1/rho)^n]` for zeros on the line.
pub fn keiper_lambda(n: usize, table: &ZeroTable, pairs: usize) -> Result<f64> {
    let ords = table.take(pairs)?;
    let nf = n as f64;
    let terms: Vec<f64> = ords
        .par_iter()
        .map(|&g| {
            let s = (nf * (0.5 / g).atan()).sin();
            4.0 * s * s
        })
        .collect();
    Ok(terms.iter().sum::<f64>() / nf)
}

/// Li's normalization `lambda_n^L = n lambda_n^K`.
pub fn li_lambda(n: usize, table: &ZeroTable, pairs: usize) -> Result<f64> {
    Ok(n as f64 * keiper_lambda(n, table, pairs)?)
}

/// Complex number at a given precision from f64 parts.
pub fn complex_mp(re: f64, im: f64, digits: u32) -> ComplexMp {
    let p = Precision::digits(digits);
    Complex::new(mp(p, re), mp(p, im))
}

/// Complex number from decimal strings (exact to the given precision).
pub fn complex_mp_parse(re: &str, im: &str, digits: u32) -> Option<ComplexMp> {
    let p = Precision::digits(digits);
    Some(Complex::new(BigFloat::parse(re, p)?, BigFloat::parse(im, p)?))
}
