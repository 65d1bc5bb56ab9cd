//! One line per acceptance criterion. Criterion 2 and the large-n anchors of
//! criterion 5 take minutes and only run with `EXPLICIT_LI_SLOW=1`.

use std::process::ExitCode;
use std::time::Instant;

use explicit_li::centered::{centered_lambda, centered_plan, centered_scan, centered_table, CenteredConfig};
use explicit_li::coefficients::{check_sum_rules, coefficient_row};
use explicit_li::detection::{threshold_tn, threshold_tni, ViolationHypothesis};
use explicit_li::lambda::{
    averaged_delta, compute, compute_all_forms, lambda_direct, scan, Form, LambdaRecord,
};
use explicit_li::precision::{plan_for, varpi, PEAK_RATIO};
use explicit_li::scalar::cln;
use explicit_li::special::{Route, XiLogTable};
use explicit_li::zeros::{complex_mp, f_n, load_zeros, zero_sum_checkpoints, FnKernel};
use explicit_li::{BigFloat, Complex64, Precision, Real};
use num_complex::Complex;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rayon::prelude::*;

const ZEROS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zeros_100k.txt");
const TARGET: u32 = 20;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn diff(a: &BigFloat, b: &BigFloat) -> f64 {
    (a.clone() - b.clone()).abs().to_f64()
}

fn slow() -> bool {
    std::env::var("EXPLICIT_LI_SLOW").is_ok_and(|v| v == "1")
}

fn first_values() -> Outcome {
    let start = Instant::now();
    let want = [(1, 0.069_176_395_771), (2, 0.227_454_272_67), (3, 0.456_714_133_49)];
    let mut worst: f64 = 0.0;
    for (n, v) in want {
        let r = compute(n, &plan_for(n, TARGET).unwrap(), Form::Direct, None).unwrap();
        worst = worst.max((r.value.to_f64() - v).abs());
    }
    // Lambda_1 = (3/2) log(pi/3) exactly
    let p = Precision::digits(40);
    let r1 = compute(1, &plan_for(1, 30).unwrap(), Form::Direct, None).unwrap();
    let closed = (BigFloat::pi(p) / BigFloat::from_i64_prec(3, p)).ln() * BigFloat::from_f64_prec(1.5, p);
    let exact = diff(&r1.value, &closed);
    let secs = start.elapsed().as_secs_f64();
    check(
        worst < 1e-11 && exact < 1e-30 && secs < 1.0,
        format!("Lambda_1..3 max err {worst:.1e} (tol 1e-11), closed form {exact:.1e}, {secs:.2} s (limit 1 s)"),
    )
}

fn large_n() -> Outcome {
    if !slow() {
        return Outcome::Skip("Lambda_10000 needs ~7700 digits; set EXPLICIT_LI_SLOW=1".into());
    }
    let start = Instant::now();
    let r = compute(10_000, &plan_for(10_000, TARGET).unwrap(), Form::Direct, None).unwrap();
    let ev = (r.value.to_f64() - 8.428_662_659_671_506).abs();
    let ed = (r.delta.to_f64() - 0.002_079_4).abs();
    check(
        ev < 1e-12 && ed < 5e-8,
        format!(
            "Lambda_10000 = {} (err {ev:.1e}, tol 1e-12), delta = {} (err {ed:.1e}), {:.0} s",
            r.value.to_fixed(16),
            r.delta.to_fixed(8),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn sum_rules() -> Outcome {
    let start = Instant::now();
    let bad: Vec<usize> = (1..=500usize)
        .into_par_iter()
        .filter(|&n| !check_sum_rules(&coefficient_row(n).unwrap()))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    check(
        bad.is_empty() && secs < 30.0,
        format!("exact sum rules for n <= 500: {} failures, {secs:.1} s (limit 30 s)", bad.len()),
    )
}

fn form_set() -> Vec<usize> {
    (1..=50).chain([100, 200, 500]).collect()
}

fn form_equivalence() -> (Outcome, Vec<LambdaRecord>) {
    let tol = 10f64.powi(-(TARGET as i32 - 5));
    let results: Vec<(usize, f64, LambdaRecord)> = form_set()
        .into_par_iter()
        .map(|n| {
            let [d, u, v] = compute_all_forms(n, &plan_for(n, TARGET).unwrap()).unwrap();
            let worst = diff(&d.value, &u.value).max(diff(&d.value, &v.value));
            (n, worst, d)
        })
        .collect();
    let (worst_n, worst) = results
        .iter()
        .map(|(n, w, _)| (*n, *w))
        .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let records = results.into_iter().map(|(_, _, d)| d).collect();
    (
        check(
            worst <= tol,
            format!("direct/u/v agree on {} values of n: worst {worst:.1e} at n = {worst_n} (tol {tol:.0e})", form_set().len()),
        ),
        records,
    )
}

fn asymptotic_law(records: &[LambdaRecord]) -> Outcome {
    let worst_delta = records.iter().map(|r| r.delta.to_f64().abs()).fold(0.0, f64::max);
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for w in records.windows(2) {
        if w[1].n >= 1000 {
            let v = averaged_delta(&w[1].delta, &w[0].delta).to_f64() * w[1].n as f64;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let mut detail = format!(
        "max |Lambda_n - (log n + C)| on [500, 2000] = {worst_delta:.4} (tol 0.05); n avg delta in [{lo:.4}, {hi:.4}] on [1000, 2000] (band [0.1, 0.5])"
    );
    let mut ok = worst_delta < 0.05 && lo >= 0.1 && hi <= 0.5;
    if slow() {
        for (n, anchor) in [(10_000usize, 0.27027), (20_000, 0.23970)] {
            let pair = scan(n - 1, n, TARGET, None, None).unwrap();
            let v = averaged_delta(&pair[1].delta, &pair[0].delta).to_f64() * n as f64;
            ok &= (v - anchor).abs() < 5e-5;
            detail.push_str(&format!("; n = {n}: {v:.5} (reference {anchor})"));
        }
    } else {
        detail.push_str("; n = 10000/20000 anchors skipped (EXPLICIT_LI_SLOW=1)");
    }
    check(ok, detail)
}

fn zero_sums() -> Outcome {
    let table = match load_zeros(ZEROS) {
        Ok(t) => t,
        Err(e) => return Outcome::Fail(format!("cannot load zeros: {e}")),
    };
    let mut ok = table.count() >= 100_000;
    let mut worst_ratio: f64 = 0.0;
    for n in 1..=10 {
        let direct = compute(n, &plan_for(n, TARGET).unwrap(), Form::Direct, None).unwrap().value.to_f64();
        let sums = zero_sum_checkpoints(n, &table, &[25_000, 50_000, 100_000]).unwrap();
        let errs: Vec<f64> = sums.iter().map(|s| (s.value - direct).abs()).collect();
        let allowed = sums[2].tail_bound.max(1e-2);
        ok &= errs[2] <= allowed && errs[0] > errs[1] && errs[1] > errs[2];
        worst_ratio = worst_ratio.max(errs[2] / allowed);
    }
    check(
        ok,
        format!("n = 1..10 with 1e5 pairs: worst |zero sum - direct| / max(1e-2, tail) = {worst_ratio:.3}; discrepancy shrinks over 2.5e4, 5e4, 1e5 pairs"),
    )
}

fn decay_and_closed_form() -> Outcome {
    let mut ok = true;
    let mut worst_k_ratio: f64 = 0.0;
    for n in [1usize, 5, 20] {
        let kernel = FnKernel::new(n).unwrap();
        let angles: Vec<f64> = (0..48).map(|i| std::f64::consts::PI * (i as f64 / 24.0 - 1.0) + 0.01).collect();
        let scaled = |r: f64, a: f64| -> f64 {
            let v = kernel.eval_mp(&complex_mp(r * a.cos(), r * a.sin(), 60), 35).unwrap().value;
            let v = Complex64::new(v.re.to_f64(), v.im.to_f64());
            r * r * (v + Complex64::from_polar(r, a).inv()).norm()
        };
        let k = angles.iter().map(|&a| scaled(100.0, a)).fold(0.0, f64::max) * 1.01;
        for r in [1e3, 1e4] {
            for &a in &angles {
                let s = scaled(r, a + 0.05) / k;
                worst_k_ratio = worst_k_ratio.max(s);
                ok &= s <= 1.0;
            }
        }
    }
    let digits = 40;
    let p = Precision::digits(digits + 20);
    let mut worst_f1: f64 = 0.0;
    let mut points = 0;
    for radius in [4.0, 10.0, 100.0, 1000.0] {
        for angle in [0.3f64, 1.1, 2.0, 2.9, -1.7] {
            let x = complex_mp(radius * angle.cos(), radius * angle.sin(), digits + 20);
            let shift = |a: i64| Complex::new(x.re.clone() - BigFloat::from_i64_prec(a, p), x.im.clone());
            let (x1, x2) = (shift(1), shift(2));
            let ratio = x.clone() * x2.clone() * x2.clone() * x2 / (x1.clone() * x1.clone() * x1.clone() * x1);
            let c = cln(&ratio);
            let v = f_n(&x, 1, digits).unwrap().value;
            let half = BigFloat::from_f64_prec(0.5, p);
            let d = v - Complex::new(c.re * half.clone(), c.im * half);
            worst_f1 = worst_f1.max(d.re.to_f64().hypot(d.im.to_f64()));
            points += 1;
        }
    }
    ok &= worst_f1 < 1e-36 && points == 20;
    check(
        ok,
        format!("|F_n + 1/x| |x|^2 / K <= {worst_k_ratio:.3} at |x| = 1e3, 1e4 (K from |x| = 100) for n = 1, 5, 20; F_1 closed form at {points} points, worst {worst_f1:.1e} (40 digits)"),
    )
}

fn precision_model(records: &[LambdaRecord]) -> Outcome {
    let steps = 2_000_000;
    let (best_r, best) = (0..=steps)
        .map(|i| {
            let r = i as f64 / steps as f64;
            (r, varpi(r).unwrap())
        })
        .fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    let peak_err = (best_r - std::f64::consts::FRAC_1_SQRT_2).abs().max((best - (3.0 + 8f64.sqrt()).log10()).abs());
    let mut ok = peak_err < 1e-6 && (PEAK_RATIO - 0.76555).abs() < 1e-5;
    // every value of suites 1, 4, 5 against a 25% richer plan
    let top = plan_for(2000, TARGET).unwrap().scaled(1.25);
    let table = XiLogTable::for_plan(&top, Route::GammaZeta, None).unwrap();
    let worst = records
        .par_iter()
        .map(|r| {
            let bumped = lambda_direct(r.n, &plan_for(r.n, TARGET).unwrap().scaled(1.25), &table);
            bumped.map(|b| diff(&b.value, &r.value)).unwrap_or(f64::INFINITY)
        })
        .reduce(|| 0.0, f64::max);
    let tol = 10f64.powi(-(TARGET as i32));
    ok &= worst < tol;
    check(
        ok,
        format!(
            "varpi peak at r = {best_r:.7}, value {best:.7} (err {peak_err:.1e}, tol 1e-6); {} values stable under +25% working digits: worst {worst:.1e} (tol {tol:.0e})",
            records.len()
        ),
    )
}

fn centered() -> Outcome {
    let one = CenteredConfig::new(1.0).unwrap();
    let rows = centered_scan(100, 1000, &one, 10, None).unwrap();
    let worst = rows.iter().map(|r| r.remainder.to_f64().abs()).fold(0.0, f64::max);
    let four = CenteredConfig::new(4.0).unwrap();
    let plan = centered_plan(500, &four, 10).unwrap();
    let table = centered_table(&plan, Route::GammaZeta, None).unwrap();
    let v4 = centered_lambda(500, &four, &table, 10).unwrap().to_f64();
    let v1 = rows[400].value.to_f64();
    let rel = (v4 / 2.0 - v1).abs() / v1;
    check(
        worst < 0.2 && rel < 0.25 && rows.len() == 901,
        format!("max |Lambda0_n(1) - (log n + C)| on [100, 1000] = {worst:.4} (tol 0.2); Lambda0_500(4)/2 vs Lambda0_500(1): {rel:.2e} relative (tol 0.25)"),
    )
}

fn thresholds() -> Outcome {
    let t0 = 2.4e12;
    let h = ViolationHypothesis::new(0.5, t0).unwrap();
    let tn = threshold_tn(&h);
    let tni = threshold_tni(&h);
    let t5 = 5.0 * f64::log10(t0);
    let t3 = 3.0 * f64::log10(t0);
    let mut ok = (tn.log10 - t5).abs() < 1e-9 && (tni.log10 - t3).abs() < 1e-9;
    ok &= tni.exponent() == 37 && (tni.mantissa() - 1.4).abs() < 0.05;
    // order of magnitude of the n >~ 2e36 quoted for the averaged test
    ok &= (tni.log10 - 2e36f64.log10()).abs() < 1.0;
    let mut runner = TestRunner::deterministic();
    let strategy = (1e-3f64..=0.5, 12.39f64..40.0);
    let mut ordered = 0;
    for _ in 0..100 {
        let (t, lt) = strategy.new_tree(&mut runner).unwrap().current();
        let h = ViolationHypothesis::new(t, 10f64.powf(lt)).unwrap();
        if threshold_tni(&h) < threshold_tn(&h) {
            ordered += 1;
        }
    }
    ok &= ordered == 100;
    check(
        ok,
        format!("TN(1/2, 2.4e12) = {tn} = T^5, TNI = {tni} = T^3; TNI < TN for {ordered}/100 random hypotheses"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut clock = Instant::now();
    let mut lap = || {
        let s = clock.elapsed().as_secs_f64();
        clock = Instant::now();
        s
    };
    lines.push((1, "first values", first_values(), lap()));
    lines.push((2, "large n", large_n(), lap()));
    lines.push((3, "sum rules", sum_rules(), lap()));
    let (forms, mut records) = form_equivalence();
    lines.push((4, "form equivalence", forms, lap()));
    let law_records = scan(500, 2000, TARGET, None, None).unwrap();
    lines.push((5, "asymptotic law", asymptotic_law(&law_records), lap()));
    lines.push((6, "zero sums", zero_sums(), lap()));
    lines.push((7, "F_n decay", decay_and_closed_form(), lap()));
    records.extend(law_records);
    records.extend((1..=3).map(|n| compute(n, &plan_for(n, TARGET).unwrap(), Form::Direct, None).unwrap()));
    lines.push((8, "precision model", precision_model(&records), lap()));
    lines.push((9, "centered variant", centered(), lap()));
    lines.push((10, "thresholds", thresholds(), lap()));

    let mut failed = 0;
    for (i, name, outcome, secs) in &lines {
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("{tag} [{i:>2}] {name}: {detail} [{secs:.1} s]");
    }
    println!(
        "acceptance: {} passed, {failed} failed, {} skipped in {:.1} s",
        lines.iter().filter(|l| matches!(l.2, Outcome::Pass(_))).count(),
        lines.iter().filter(|l| matches!(l.2, Outcome::Skip(_))).count(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
