use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use explicit_li::centered::{
    centered_lambda, centered_plan, centered_scan, centered_table, write_centered_csv, CenteredConfig,
};
use explicit_li::coefficients::{check_sum_rules, coefficient_row};
use explicit_li::detection::{
    signal_magnitude, threshold_tn, threshold_tni, tn_exponent, tni_exponent, ViolationHypothesis, DEFAULT_T0,
};
use explicit_li::lambda::{compute, compute_all_forms, scan, write_csv, xi_accuracy, Form};
use explicit_li::precision::{plan_for, varpi, PrecisionPlan};
use explicit_li::special::{Route, XiLogCache};
use explicit_li::zeros::{load_zeros, zero_sum_lambda};
use explicit_li::{BigFloat, Error, Real};

#[derive(Parser)]
#[command(name = "explicit-li", version, about = "Explicit Keiper-Li variant sequence at arbitrary precision")]
struct Cli {
    /// Directory for cached log 2xi(2m) entries.
    #[arg(long, global = true, env = "EXPLICIT_LI_CACHE")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lambda_n for one n.
    Compute {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        prec: PrecArgs,
        #[arg(long, default_value = "direct")]
        form: Form,
        /// Also print form, working digits, delta and timing.
        #[arg(long)]
        details: bool,
    },
    /// CSV `n,lambda,delta,n_avg_delta` over a range.
    Scan {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        prec: PrecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the direct value with the truncated sum over zeros.
    ZeroSum {
        #[arg(long)]
        n: usize,
        /// Last n of a range starting at --n.
        #[arg(long)]
        to: Option<usize>,
        #[arg(long)]
        zeros: PathBuf,
        /// Pairs to sum (default: all in the file).
        #[arg(long)]
        pairs: Option<usize>,
        #[command(flatten)]
        prec: PrecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Crossover estimates for a zero at 1/2 + t + iT.
    Threshold {
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        #[arg(long = "height", default_value_t = DEFAULT_T0)]
        height: f64,
        #[arg(long, default_value_t = DEFAULT_T0)]
        t0: f64,
    },
    /// Centered variant; one value with --n, CSV `n,centered_lambda,remainder` with --from/--to.
    Centered {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        w: f64,
        #[command(flatten)]
        prec: PrecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Working-precision budget for one n.
    PrecisionReport {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        prec: PrecArgs,
        /// Per-entry CSV `m,r,profile_digits,entry_accuracy`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum rules, form agreement, precision stability and (with --zeros) the
    /// zero sum, as one pass/fail report.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[arg(long)]
        pairs: Option<usize>,
        #[command(flatten)]
        prec: PrecArgs,
    },
}

#[derive(Args, Clone)]
struct RangeArgs {
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
}

#[derive(Args, Clone)]
struct PrecArgs {
    /// Target decimal digits, or `auto` (print precision + 3).
    #[arg(long, default_value = "auto")]
    digits: Digits,
    /// Decimals printed.
    #[arg(long, default_value_t = 15)]
    print: usize,
    /// Raise the working precision above the plan.
    #[arg(long)]
    working_digits: Option<u32>,
}

#[derive(Clone, Copy, Debug)]
enum Digits {
    Auto,
    Fixed(u32),
}

impl FromStr for Digits {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Digits::Auto);
        }
        match s.parse::<u32>() {
            Ok(d) if d > 0 => Ok(Digits::Fixed(d)),
            _ => Err(format!("expected a positive digit count or 'auto', got '{s}'")),
        }
    }
}

impl PrecArgs {
    fn target(&self) -> u32 {
        match self.digits {
            Digits::Auto => self.print as u32 + 3,
            Digits::Fixed(d) => d,
        }
    }

    fn plan(&self, n: usize) -> Result<PrecisionPlan, Failure> {
        let p = plan_for(n, self.target())?;
        Ok(match self.working_digits {
            Some(w) => p.with_working_digits(w),
            None => p,
        })
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => 2,
        Error::Io(_) | Error::Cache { .. } => 3,
        Error::ZeroFile { .. } | Error::InsufficientZeros { .. } => 4,
        Error::TableCoverage { .. } | Error::PrecisionShortfall { .. } => 5,
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_cache(dir: &Option<PathBuf>) -> Result<Option<XiLogCache>, Failure> {
    Ok(match dir {
        Some(d) => Some(XiLogCache::open(d)?),
        None => None,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cache = open_cache(&cli.cache)?;
    let cache = cache.as_ref();
    match cli.command {
        Command::Compute { n, prec, form, details } => {
            let plan = prec.plan(n)?;
            let r = compute(n, &plan, form, cache)?;
            let mut out = output(&None)?;
            writeln!(out, "{}", r.value.to_fixed(prec.print))?;
            if details {
                writeln!(out, "n = {n}")?;
                writeln!(out, "form = {}", r.form)?;
                writeln!(out, "working digits = {}", r.digits_used)?;
                writeln!(out, "delta = {}", r.delta.to_fixed(prec.print))?;
                writeln!(out, "elapsed = {:.3} s", r.elapsed.as_secs_f64())?;
            }
            out.flush()?;
        }
        Command::Scan { range, prec, out } => {
            let records = scan(range.from, range.to, prec.target(), prec.working_digits, cache)?;
            let mut w = output(&out)?;
            write_csv(&records, prec.print, &mut w)?;
            w.flush()?;
        }
        Command::ZeroSum { n, to, zeros, pairs, prec, out } => {
            let table = load_zeros(&zeros)?;
            let pairs = pairs.unwrap_or(table.count());
            let to = to.unwrap_or(n);
            if to < n {
                return Err(Failure::Usage(format!("--to {to} is below --n {n}")));
            }
            let d = prec.print;
            let mut w = output(&out)?;
            writeln!(w, "n,direct,zero_sum,tail_bound")?;
            for k in n..=to {
                let direct = compute(k, &prec.plan(k)?, Form::Direct, cache)?;
                let z = zero_sum_lambda(k, &table, pairs)?;
                writeln!(w, "{k},{},{:.d$},{:.3e}", direct.value.to_fixed(d), z.value, z.tail_bound)?;
            }
            w.flush()?;
        }
        Command::Threshold { t, height, t0 } => {
            let h = ViolationHypothesis::with_t0(t, height, t0)?;
            let tn = threshold_tn(&h);
            let tni = threshold_tni(&h);
            let mut w = output(&None)?;
            writeln!(w, "rho = 1/2 + {t} + i {height:e} (T0 = {t0:e})")?;
            writeln!(w, "TN:  n >~ T^{:.4} = {tn}", tn_exponent(t))?;
            writeln!(w, "TNI: n >~ T^{:.4} = {tni}", tni_exponent(t))?;
            let n_tn = 10f64.powf(tn.log10);
            if n_tn.is_finite() {
                writeln!(w, "|F_n(rho)| at n = TN: {:.3e}", signal_magnitude(&h, n_tn))?;
            }
            w.flush()?;
        }
        Command::Centered { n, from, to, w, prec, out } => {
            let cfg = CenteredConfig::new(w)?;
            let target = prec.target();
            match (n, from, to) {
                (Some(n), None, None) => {
                    let plan = centered_plan(n, &cfg, target)?;
                    let table = centered_table(&plan, Route::GammaZeta, cache)?;
                    let v = centered_lambda(n, &cfg, &table, target)?;
                    let mut o = output(&out)?;
                    writeln!(o, "{}", v.to_fixed(prec.print))?;
                    o.flush()?;
                }
                (None, Some(a), Some(b)) => {
                    let rows = centered_scan(a, b, &cfg, target, cache)?;
                    let mut o = output(&out)?;
                    write_centered_csv(&rows, prec.print, &mut o)?;
                    o.flush()?;
                }
                _ => return Err(Failure::Usage("centered needs either --n or both --from and --to".into())),
            }
        }
        Command::PrecisionReport { n, prec, out } => {
            let plan = prec.plan(n)?;
            let nf = n as f64;
            let peak_m = (1..=n)
                .max_by(|&a, &b| varpi(a as f64 / nf).unwrap().total_cmp(&varpi(b as f64 / nf).unwrap()))
                .unwrap_or(1);
            let mut w = output(&None)?;
            writeln!(w, "n = {n}")?;
            writeln!(w, "target digits = {}", plan.target_digits)?;
            writeln!(w, "guard digits = {}", plan.guard_digits)?;
            writeln!(w, "working digits = {}", plan.working_digits)?;
            writeln!(w, "peak ratio = {:.6}", plan.peak_ratio)?;
            writeln!(w, "peak summand m = {peak_m} (r = {:.4}), {} digits", peak_m as f64 / n as f64, plan.profile(peak_m))?;
            w.flush()?;
            if out.is_some() {
                let acc = xi_accuracy(&plan);
                let mut o = output(&out)?;
                writeln!(o, "m,r,profile_digits,entry_accuracy")?;
                for m in 1..=n {
                    writeln!(o, "{m},{:.6},{},{}", m as f64 / n as f64, plan.profile(m), acc[m - 1])?;
                }
                o.flush()?;
            }
        }
        Command::Verify { n, zeros, pairs, prec } => {
            let failures = verify(n, zeros, pairs, &prec)?;
            if failures > 0 {
                return Err(Failure::Verify(failures));
            }
        }
    }
    Ok(())
}

fn verify(n: usize, zeros: Option<PathBuf>, pairs: Option<usize>, prec: &PrecArgs) -> Result<usize, Failure> {
    let mut out = output(&None)?;
    let mut failures = 0;
    let mut report = |ok: bool, line: String| -> io::Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {line}", if ok { "PASS" } else { "FAIL" })
    };
    let row = coefficient_row(n)?;
    report(check_sum_rules(&row), format!("sum rules n={n} (exact)"))?;

    let target = prec.target();
    let plan = prec.plan(n)?;
    let forms = compute_all_forms(n, &plan)?;
    let diff = |a: &BigFloat, b: &BigFloat| (a.clone() - b.clone()).abs().to_f64();
    let form_tol = 10f64.powi(-(target as i32 - 5));
    for r in &forms[1..] {
        let d = diff(&forms[0].value, &r.value);
        report(d <= form_tol, format!("form {} vs direct: {d:.2e} (tol {form_tol:.0e})", r.form))?;
    }
    let bumped = compute(n, &plan.scaled(1.25), Form::Direct, None)?;
    let d = diff(&forms[0].value, &bumped.value);
    let tol = 10f64.powi(-(target as i32));
    report(d <= tol, format!("stability under +25% working digits: {d:.2e} (tol {tol:.0e})"))?;

    if let Some(path) = zeros {
        let table = load_zeros(&path)?;
        let pairs = pairs.unwrap_or(table.count());
        let z = zero_sum_lambda(n, &table, pairs)?;
        let d = (forms[0].value.to_f64() - z.value).abs();
        report(
            d <= z.tail_bound,
            format!("zero sum over {pairs} pairs: |direct - zero_sum| = {d:.3e}, tail bound {:.3e}", z.tail_bound),
        )?;
    }
    writeln!(out, "Lambda_{n} = {}", forms[0].value.to_fixed(prec.print))?;
    out.flush()?;
    Ok(failures)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Verify(k)) => {
            eprintln!("verify: {k} check(s) failed");
            ExitCode::from(6)
        }
    }
}
