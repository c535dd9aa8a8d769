//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input, 3 theorem hypothesis
//! violated, 4 two independent computations disagreed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cm::{
    newcomb, newcomb_row, segre_regularity_cm, segre_veronese_regularity, veronese,
    zero_dim_product_degree, zero_dim_segre_regularity, GradedCMModule, NewcombQuery,
};
use crate::error::{Error, Result};
use crate::format::{format_rational, CoeffRepr, SeriesFile};
use crate::laurent::{LaurentPoly, Rational};
use crate::segre::{
    multi_degree_bounds, segre_closed, segre_degree_bounds, segre_fold, segre_monomial,
    segre_multi_hvector, segre_oracle,
};
use crate::series::RationalGF;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "segre", version, about = "Exact Hilbert-series arithmetic for Segre and Veronese products")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Perturb closed-form results before cross-checking (exercises exit code 4).
    #[arg(long, hide = true, global = true)]
    pub inject_fault: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Oracle,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of a series.
    Normalize { file: PathBuf },
    /// Print the coefficients a_from..=a_to.
    Expand {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Reconstruct a series from a window of its coefficients.
    Hvector {
        /// JSON array of coefficients a_start, a_start+1, ...
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        start: i64,
        #[arg(long)]
        pole_order: u32,
    },
    /// Segre transform of two series.
    Segre {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Segre product of several series via the nested h-vector sum.
    /// Every input needs 0 <= sigma <= r < d.
    SegreMulti {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// t^i/(1-t)^d1 (x) t^j/(1-t)^d2.
    Monomial {
        #[arg(long)]
        d1: u32,
        #[arg(long = "i", allow_hyphen_values = true)]
        i: i64,
        #[arg(long)]
        d2: u32,
        #[arg(long = "j", allow_hyphen_values = true)]
        j: i64,
        #[arg(long)]
        verify: bool,
    },
    /// n-th Veronese transform.
    Veronese {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Postulation number deg h - d.
    Postulation { file: PathBuf },
    /// Hilbert polynomial in the monomial basis.
    HilbertPoly { file: PathBuf },
    /// Degree bounds for a Segre product of two or more series.
    Bounds {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Regularity of a Segre (or Segre-Veronese) product of CM modules.
    Regularity {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Comma-separated Veronese degrees, one per module.
        #[arg(long, value_delimiter = ',')]
        veronese: Option<Vec<u32>>,
        #[arg(long)]
        verify: bool,
    },
    /// Simon Newcomb numbers A([b], k).
    Newcomb {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long)]
        verify: bool,
    },
}

/// Outcome of a cross-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verification {
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "passed")]
    Passed,
    #[serde(rename = "FAILED")]
    Failed { expected: String, actual: String },
}

impl Verification {
    fn compare(expected: impl ToString, actual: impl ToString) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        if e == a {
            Verification::Passed
        } else {
            Verification::Failed {
                expected: e,
                actual: a,
            }
        }
    }

    fn and(self, other: Verification) -> Verification {
        match self {
            Verification::Failed { .. } => self,
            Verification::Skipped => other,
            Verification::Passed => match other {
                Verification::Skipped => Verification::Passed,
                o => o,
            },
        }
    }
}

/// Machine-readable record of one invocation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub result: Value,
    pub verification: Verification,
    pub elapsed_us: u64,
}

/// What the process prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Hypothesis { .. } => EXIT_HYPOTHESIS,
        Error::Verification { .. } => EXIT_VERIFICATION,
        Error::NotDivisible
        | Error::WindowTooShort { .. }
        | Error::ZeroSeries(_)
        | Error::InvalidArgument(_) => EXIT_MALFORMED,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    run(&cli, &echo)
}

pub fn run(cli: &Cli, echo: &str) -> Outcome {
    let started = Instant::now();
    match execute(cli) {
        Ok((result, text, verification)) => {
            let code = if matches!(verification, Verification::Failed { .. }) {
                EXIT_VERIFICATION
            } else {
                EXIT_OK
            };
            let stdout = match cli.format {
                Format::Text => {
                    let mut out = text;
                    if !out.ends_with('\n') {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "verification: {}", render_verification(&verification));
                    out
                }
                Format::Json => {
                    let report = RunReport {
                        command: echo.to_string(),
                        result,
                        verification,
                        elapsed_us: started.elapsed().as_micros() as u64,
                    };
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

fn render_verification(v: &Verification) -> String {
    match v {
        Verification::Skipped => "skipped".into(),
        Verification::Passed => "passed".into(),
        Verification::Failed { expected, actual } => {
            format!("FAILED (expected {expected}, got {actual})")
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_series(path: &Path) -> Result<RationalGF> {
    SeriesFile::parse(&read_file(path)?)?.to_series()
}

fn load_module(path: &Path) -> Result<GradedCMModule> {
    SeriesFile::parse(&read_file(path)?)?.to_module()
}

fn series_value(a: &RationalGF) -> Value {
    serde_json::to_value(SeriesFile::from_series(a)).expect("series serializes")
}

// Adds a stray top-degree term so that any cross-check must fail.
fn perturb(a: &RationalGF) -> RationalGF {
    let top = a.top_degree().unwrap_or(0) + 1;
    let extra = LaurentPoly::monomial(Rational::one(), top);
    RationalGF::new(a.numerator() + &extra, a.pole_order())
}

type Executed = (Value, String, Verification);

fn series_result(a: &RationalGF, v: Verification) -> Result<Executed> {
    Ok((series_value(a), a.to_string(), v))
}

fn execute(cli: &Cli) -> Result<Executed> {
    let fault = cli.inject_fault;
    let maybe_perturb = |a: RationalGF| if fault { perturb(&a) } else { a };
    match &cli.command {
        Command::Normalize { file } => series_result(&load_series(file)?, Verification::Skipped),

        Command::Expand { file, from, to } => {
            if from > to {
                return Err(Error::InvalidArgument(format!("--from {from} exceeds --to {to}")));
            }
            let a = load_series(file)?;
            let coeffs = a.expand(*from, *to);
            let mut text = String::new();
            for (k, c) in (*from..=*to).zip(&coeffs) {
                let _ = writeln!(text, "{k} {c}");
            }
            let value = json!({
                "from": from,
                "to": to,
                "coefficients": coeffs.iter().map(format_rational).collect::<Vec<_>>(),
            });
            Ok((value, text, Verification::Skipped))
        }

        Command::Hvector {
            coeffs,
            start,
            pole_order,
        } => {
            let raw: Vec<CoeffRepr> = serde_json::from_str(&read_file(coeffs)?)
                .map_err(|e| Error::InvalidArgument(format!("malformed coefficient file: {e}")))?;
            let values = raw
                .iter()
                .map(CoeffRepr::to_rational)
                .collect::<Result<Vec<_>>>()?;
            let a = RationalGF::from_coefficients(&values, *start, *pole_order)?;
            series_result(&a, Verification::Skipped)
        }

        Command::Segre { a, b, method } => {
            let (a, b) = (load_series(a)?, load_series(b)?);
            match method {
                Method::Closed => series_result(&maybe_perturb(segre_closed(&a, &b)?), Verification::Skipped),
                Method::Oracle => series_result(&segre_oracle(&a, &b), Verification::Skipped),
                Method::Both => {
                    let closed = maybe_perturb(segre_closed(&a, &b)?);
                    let oracle = segre_oracle(&a, &b);
                    let v = Verification::compare(&oracle, &closed);
                    series_result(&closed, v)
                }
            }
        }

        Command::SegreMulti { files, verify } => {
            let series = files
                .iter()
                .map(|f| load_series(f))
                .collect::<Result<Vec<_>>>()?;
            let multi = maybe_perturb(segre_multi_hvector(&series)?);
            let mut v = Verification::Skipped;
            if *verify {
                let folded = segre_fold(&series)?;
                let mut oracle = series[0].clone();
                for x in &series[1..] {
                    oracle = segre_oracle(&oracle, x);
                }
                v = Verification::compare(&folded, &multi).and(Verification::compare(&oracle, &multi));
            }
            series_result(&multi, v)
        }

        Command::Monomial { d1, i, d2, j, verify } => {
            let m = maybe_perturb(segre_monomial(*d1, *i, *d2, *j)?);
            let v = if *verify {
                let oracle = segre_oracle(&RationalGF::monomial(*i, *d1), &RationalGF::monomial(*j, *d2));
                Verification::compare(&oracle, &m)
            } else {
                Verification::Skipped
            };
            series_result(&m, v)
        }

        Command::Veronese { file, n, verify } => {
            let a = load_series(file)?;
            let v_series = maybe_perturb(veronese(&a, *n)?);
            let v = if *verify {
                // Brute force: every n-th coefficient of a long expansion.
                let len = v_series.top_degree().unwrap_or(0).max(0) + 2 * a.pole_order() as i64 + 8;
                let step = *n as i64;
                let dense = a.expand(0, step * len);
                let expected: Vec<String> = (0..=len)
                    .map(|l| dense[(l * step) as usize].to_string())
                    .collect();
                let actual: Vec<String> = v_series.expand(0, len).iter().map(|c| c.to_string()).collect();
                Verification::compare(expected.join(","), actual.join(","))
            } else {
                Verification::Skipped
            };
            series_result(&v_series, v)
        }

        Command::Postulation { file } => {
            let beta = load_series(file)?.postulation_number()?;
            Ok((json!(beta), beta.to_string(), Verification::Skipped))
        }

        Command::HilbertPoly { file } => {
            let phi = load_series(file)?.hilbert_polynomial();
            let value = json!({
                "degree": phi.degree(),
                "coefficients": phi.coefficients().iter().map(format_rational).collect::<Vec<_>>(),
            });
            Ok((value, format!("Phi(n) = {phi}"), Verification::Skipped))
        }

        Command::Bounds { files } => {
            let series = files
                .iter()
                .map(|f| load_series(f))
                .collect::<Result<Vec<_>>>()?;
            let report = if series.len() == 2 {
                segre_degree_bounds(&series[0], &series[1])?
            } else {
                multi_degree_bounds(&series)?
            };
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok((value, report.to_string(), Verification::Passed))
        }

        Command::Regularity {
            files,
            veronese: ns,
            verify,
        } => {
            let modules = files
                .iter()
                .map(|f| load_module(f))
                .collect::<Result<Vec<_>>>()?;
            regularity_command(&modules, ns.as_deref(), *verify, fault)
        }

        Command::Newcomb { b, k, verify } => {
            let mut values: Vec<(i64, BigInt)> = match k {
                Some(k) => vec![(*k, newcomb(&NewcombQuery::new(b.clone(), *k)?))],
                None => newcomb_row(b)?.into_iter().enumerate().map(|(k, v)| (k as i64, v)).collect(),
            };
            if fault {
                for (_, v) in values.iter_mut() {
                    *v += 1;
                }
            }
            let v = if *verify {
                let rings: Vec<RationalGF> = b.iter().map(|&x| RationalGF::monomial(0, x + 1)).collect();
                let mut product = rings[0].clone();
                for r in &rings[1..] {
                    product = segre_oracle(&product, r);
                }
                let expected: Vec<String> = values
                    .iter()
                    .map(|(k, _)| product.numerator().coeff(*k).to_string())
                    .collect();
                let actual: Vec<String> = values.iter().map(|(_, v)| v.to_string()).collect();
                Verification::compare(expected.join(","), actual.join(","))
            } else {
                Verification::Skipped
            };
            let mut text = String::from("k A\n");
            for (k, v) in &values {
                let _ = writeln!(text, "{k} {v}");
            }
            let value = json!({
                "b": b,
                "values": values
                    .iter()
                    .map(|(k, v)| json!({"k": k, "value": v.to_string()}))
                    .collect::<Vec<_>>(),
            });
            Ok((value, text, v))
        }
    }
}

fn regularity_command(
    modules: &[GradedCMModule],
    ns: Option<&[u32]>,
    verify: bool,
    fault: bool,
) -> Result<Executed> {
    let bump = i64::from(fault);
    if modules.iter().any(|m| m.dim() == 0) {
        let reg = zero_dim_segre_regularity(modules, verify)? + bump;
        let product_degree = zero_dim_product_degree(modules)?;
        let v = if verify {
            match product_degree {
                Some(deg) if deg > reg => Verification::Failed {
                    expected: format!("<= {reg}"),
                    actual: deg.to_string(),
                },
                _ => Verification::Passed,
            }
        } else {
            Verification::Skipped
        };
        let mut text = format!("regularity: {reg}\ntheorem: zero-dimensional\n");
        match product_degree {
            Some(d) => {
                let _ = write!(text, "product_degree: {d}");
            }
            None => text.push_str("product_degree: none"),
        }
        let value = json!({
            "regularity": reg,
            "theorem": "zero-dimensional",
            "product_degree": product_degree,
        });
        return Ok((value, text, v));
    }

    let (reg, theorem, series) = match ns {
        Some(ns) => {
            let reg = segre_veronese_regularity(modules, ns, verify)?;
            let series = if verify {
                modules
                    .iter()
                    .zip(ns)
                    .map(|(m, &n)| veronese(m.hilbert(), n))
                    .collect::<Result<Vec<_>>>()?
            } else {
                Vec::new()
            };
            (reg, "segre-veronese", series)
        }
        None => {
            let reg = segre_regularity_cm(modules, verify)?;
            let series = if verify {
                modules.iter().map(|m| m.hilbert().clone()).collect()
            } else {
                Vec::new()
            };
            (reg, "segre", series)
        }
    };
    let reg = reg + bump;
    let v = if verify {
        let product = segre_fold(&series)?;
        let deg = product.top_degree().ok_or(Error::ZeroSeries("regularity"))?;
        Verification::compare(deg, reg)
    } else {
        Verification::Skipped
    };
    let text = format!("regularity: {reg}\ntheorem: {theorem}");
    let value = json!({"regularity": reg, "theorem": theorem});
    Ok((value, text, v))
}
