use explicit_li::lambda::{compute, Form};
use explicit_li::precision::plan_for;
use explicit_li::scalar::{cln, Precision};
use explicit_li::zeros::*;
use explicit_li::{BigFloat, Complex64, ComplexMp, Real};
use num_complex::Complex;

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_100k.txt");
const GAMMA1: f64 = 14.134_725_141_734_693;

fn fixture() -> ZeroTable {
    load_zeros(FIXTURE).unwrap()
}

fn to_c64(z: &ComplexMp) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

fn direct(n: usize) -> f64 {
    compute(n, &plan_for(n, 20).unwrap(), Form::Direct, None)
        .unwrap()
        .value
        .to_f64()
}

/// `G_n(y) = prod_(m=1..n) (y + 2m - 1) / (y - 2m)`.
fn g_product(n: usize, y: Complex64) -> Complex64 {
    (1..=n).fold(Complex64::new(1.0, 0.0), |acc, m| {
        acc * (y + (2 * m - 1) as f64) / (y - (2 * m) as f64)
    })
}

/// `F_n(x) = -i int_0^inf G_n(x+is) / ((x+is)(x+is-1)) ds`, with
/// `s = u/(1-u)` and composite Simpson on `u in [0, 1]`.
fn quadrature(n: usize, x: Complex64) -> Complex64 {
    let f = |u: f64| -> Complex64 {
        if u >= 1.0 {
            // G -> 1 and the integrand times ds/du -> -1
            return Complex64::new(-1.0, 0.0);
        }
        let s = u / (1.0 - u);
        let y = x + Complex64::new(0.0, s);
        g_product(n, y) / (y * (y - 1.0)) / ((1.0 - u) * (1.0 - u))
    };
    let steps = 200_000;
    let h = 1.0 / steps as f64;
    let mut acc = f(0.0) + f(1.0);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(i as f64 * h) * w;
    }
    acc * (h / 3.0) * Complex64::new(0.0, -1.0)
}

#[test]
fn fixture_loads() {
    let t = fixture();
    assert_eq!(t.count(), 100_000);
    assert!((t.ordinates()[0] - GAMMA1).abs() < 1e-6);
}

#[test]
fn fn_matches_quadrature() {
    for (n, x) in [
        (2, Complex64::new(0.5, 14.134725)),
        (1, Complex64::new(0.5, 3.0)),
        (3, Complex64::new(-2.0, 1.5)),
        (5, Complex64::new(12.0, 0.5)),
    ] {
        let v = to_c64(&f_n(&complex_mp(x.re, x.im, 40), n, 20).unwrap().value);
        let q = quadrature(n, x);
        assert!((v - q).norm() < 1e-10 * v.norm().max(1e-3), "n = {n}, x = {x}: {v} vs {q}");
    }
}

#[test]
fn f1_closed_form_at_twenty_points() {
    let digits = 40;
    let p = Precision::digits(digits + 20);
    let mut checked = 0;
    for radius in [4.0, 10.0, 100.0, 1000.0] {
        for angle in [0.3f64, 1.1, 2.0, 2.9, -1.7] {
            let (re, im) = (radius * angle.cos(), radius * angle.sin());
            let x = complex_mp(re, im, digits + 20);
            let one = BigFloat::from_i64_prec(1, p);
            let two = BigFloat::from_i64_prec(2, p);
            let xm1 = Complex::new(x.re.clone() - one, x.im.clone());
            let xm2 = Complex::new(x.re.clone() - two, x.im.clone());
            let num = x.clone() * xm2.clone() * xm2.clone() * xm2;
            let den = xm1.clone() * xm1.clone() * xm1.clone() * xm1;
            let half = BigFloat::from_f64_prec(0.5, p);
            let closed = cln(&(num / den));
            let closed = Complex::new(closed.re * half.clone(), closed.im * half);
            let v = f_n(&x, 1, digits).unwrap().value;
            let d = v - closed;
            let err = d.re.to_f64().hypot(d.im.to_f64());
            assert!(err < 1e-36, "x = ({re}, {im}): {err:e}");
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
}

#[test]
fn decay_law() {
    for n in [1usize, 5, 20] {
        let kernel = FnKernel::new(n).unwrap();
        let angles: Vec<f64> = (0..48).map(|i| std::f64::consts::PI * (i as f64 / 24.0 - 1.0) + 0.01).collect();
        let scaled = |r: f64, a: f64| -> f64 {
            let x = complex_mp(r * a.cos(), r * a.sin(), 60);
            let v = to_c64(&kernel.eval_mp(&x, 35).unwrap().value);
            let xf = Complex64::new(r * a.cos(), r * a.sin());
            r * r * (v + xf.inv()).norm()
        };
        let k = angles.iter().map(|&a| scaled(100.0, a)).fold(0.0, f64::max) * 1.01;
        for r in [1e3, 1e4] {
            for &a in &angles {
                let s = scaled(r, a + 0.05);
                assert!(s <= k, "n = {n}, |x| = {r}: {s} > K = {k}");
            }
        }
    }
}

#[test]
fn asymptotic_ratio_improves_with_n() {
    let rho = Complex64::new(0.5, GAMMA1);
    let x = complex_mp(0.5, GAMMA1, 40);
    let gap = |n: usize| {
        let exact = to_c64(&f_n(&x, n, 12).unwrap().value);
        (f_n_asymptotic(rho, n).unwrap() / exact - 1.0).norm()
    };
    let (a, b) = (gap(100), gap(1000));
    assert!(b < a, "{a} then {b}");
}

#[test]
fn zero_sum_examples() {
    let t = fixture();
    let l1 = direct(1);
    let z = zero_sum_lambda(1, &t, 2000).unwrap();
    assert!((z.value - l1).abs() < 0.01);
    assert!((z.value - l1).abs() <= z.tail_bound);
    let empty = zero_sum_lambda(1, &t, 0).unwrap();
    assert_eq!(empty.value, 0.0);
    assert!(empty.tail_bound >= l1);
    // 1e5 pairs leave a genuine truncation error of 1.2e-3 at n = 5; it sits
    // inside the reported tail bound
    let z5 = zero_sum_lambda(5, &t, 100_000).unwrap();
    let err = (z5.value - direct(5)).abs();
    assert!(err < 1.5e-3 && err <= z5.tail_bound, "{err} vs {}", z5.tail_bound);
}

#[test]
fn discrepancy_shrinks_as_pairs_double() {
    let t = fixture();
    for n in 1..=10 {
        let d = direct(n);
        let sums = zero_sum_checkpoints(n, &t, &[25_000, 50_000, 100_000]).unwrap();
        let errs: Vec<f64> = sums.iter().map(|s| (s.value - d).abs()).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "n = {n}: {errs:?}");
        assert!(errs[2] <= sums[2].tail_bound.max(1e-2), "n = {n}");
    }
}

#[test]
fn keiper_examples() {
    let t = fixture();
    let k1 = keiper_lambda(1, &t, 100_000).unwrap();
    // the untruncated value is 0.0230957...; the omitted tail is about 2.2e-5
    assert!((k1 - 0.023096).abs() < 5e-5, "{k1}");
    let doubled = keiper_lambda(1, &t, 50_000).unwrap();
    assert!(doubled < k1);
    let k100 = keiper_lambda(100, &t, 100_000).unwrap();
    let law = 0.5 * 100f64.ln() - 1.130_330_700_754;
    assert!((k100 - law).abs() < 0.05, "{k100} vs {law}");
}
