//! Command-line driver: `verify <suite>` and `emit <artifact>`.
//!
//! Exit status is 0 when every check passes, 1 when any check fails or a
//! suite cannot finish, 2 on bad usage.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::discrete::{solve_weights, DiscreteParams};
use crate::hankel::moments_of_mu;
use crate::measures::{DensityParams, QuadPolicy, TruncationPolicy};
use crate::report::CheckRecord;
use crate::suites::{run_all, run_suite, Suite, SuiteConfig};

pub const TOL_ENV: &str = "QCHIHARA_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qchihara", version, about = "Exact and numeric checks for q-Hermite and Al-Salam-Chihara identities")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; defaults to json, or csv for `emit density`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit densities, moments or a discrete measure.
    #[command(subcommand)]
    Emit(EmitCommand),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Hankel,
    Measures,
    Discrete,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,

    /// Degree bound replacing every default bound of the suite.
    #[arg(long)]
    pub n_max: Option<usize>,

    /// Tolerance replacing every numeric default (also read from QCHIHARA_TOL).
    #[arg(long)]
    pub tol: Option<f64>,

    #[command(flatten)]
    pub numerics: NumericArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct NumericArgs {
    /// Stop infinite products once factors are within epsilon*(1-|q|) of 1.
    #[arg(long, default_value_t = TruncationPolicy::default().epsilon)]
    pub epsilon: f64,

    #[arg(long, default_value_t = TruncationPolicy::default().max_factors)]
    pub max_factors: usize,

    /// Agreement required between successive quadrature refinements.
    #[arg(long, default_value_t = QuadPolicy::default().tol)]
    pub quad_tol: f64,

    #[arg(long, default_value_t = QuadPolicy::default().max_levels)]
    pub quad_levels: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    Hermite,
    Mu,
    Asc,
}

#[derive(Subcommand, Debug)]
pub enum EmitCommand {
    /// Samples of a density across its support.
    Density {
        #[arg(long, value_enum)]
        kind: DensityKind,
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        numerics: NumericArgs,
    },
    /// Moments m_0..m_n of mu(.|rho,y) as polynomials in rho, y, q.
    Moments {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// The discrete solution for q > 1 with rho^2 = q^(-m).
    Measure {
        #[arg(long)]
        q: f64,
        #[arg(long, required_unless_present = "rho")]
        m: Option<usize>,
        /// Alternative to --m: any rho with rho^2 = q^(-m).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "m")]
        rho: Option<f64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        y: f64,
        /// Use rho = -q^(-m/2).
        #[arg(long)]
        negative_rho: bool,
    },
}

impl NumericArgs {
    fn truncation(&self) -> TruncationPolicy {
        TruncationPolicy { epsilon: self.epsilon, max_factors: self.max_factors }
    }

    fn quad(&self) -> QuadPolicy {
        QuadPolicy { tol: self.quad_tol, max_levels: self.quad_levels, ..QuadPolicy::default() }
    }

    fn validate(&self) -> Result<(), String> {
        if !(self.epsilon > 0.0 && self.quad_tol > 0.0) {
            return Err("--epsilon and --quad-tol must be positive".into());
        }
        if self.max_factors == 0 || self.quad_levels < 2 {
            return Err("--max-factors must be >= 1 and --quad-levels >= 2".into());
        }
        Ok(())
    }
}

/// Outcome of one invocation, before it is written anywhere.
enum Outcome {
    Report(Vec<CheckRecord>),
    Artifact(String),
}

#[derive(Serialize)]
struct Summary<'a> {
    passed: bool,
    total: usize,
    failed: usize,
    records: &'a [CheckRecord],
}

/// Parse `argv`, run, write the result; returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_tol = std::env::var(TOL_ENV).ok();
    run_with_env(argv, env_tol.as_deref(), stdout, stderr)
}

/// [`run`] with the tolerance override passed in rather than read from the
/// environment.
pub fn run_with_env<I, T>(argv: I, env_tol: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = cfg.format.unwrap_or(match cfg.command {
        Command::Emit(EmitCommand::Density { .. }) => Format::Csv,
        _ => Format::Json,
    });
    let outcome = match execute(&cfg.command, env_tol, format) {
        Ok(o) => o,
        Err((code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return code;
        }
    };
    let (text, code) = match outcome {
        Outcome::Artifact(text) => (text, EXIT_OK),
        Outcome::Report(records) => {
            for r in records.iter().filter(|r| !r.passed()) {
                let _ = writeln!(stderr, "FAIL {}: {}", r.check_id, r.paper_ref);
            }
            let code = if records.iter().all(CheckRecord::passed) { EXIT_OK } else { EXIT_FAILED };
            match render_records(&records, format) {
                Ok(t) => (t, code),
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_FAILED;
                }
            }
        }
    };
    let written = match &cfg.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            w.write_all(text.as_bytes())?;
            w.flush()
        }),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILED;
    }
    code
}

type Failure = (i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    (EXIT_USAGE, msg.into())
}

fn resolve_tol(flag: Option<f64>, env_tol: Option<&str>) -> Result<Option<f64>, Failure> {
    let tol = match (flag, env_tol) {
        (Some(t), _) => Some(t),
        (None, Some(s)) => Some(s.trim().parse::<f64>().map_err(|_| usage(format!("{TOL_ENV}={s} is not a number")))?),
        (None, None) => None,
    };
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(usage(format!("tolerance must be positive, got {t}"))),
        _ => Ok(tol),
    }
}

fn execute(cmd: &Command, env_tol: Option<&str>, format: Format) -> Result<Outcome, Failure> {
    match cmd {
        Command::Verify(args) => {
            args.numerics.validate().map_err(usage)?;
            if args.n_max == Some(0) {
                return Err(usage("--n-max must be >= 1"));
            }
            let cfg = SuiteConfig {
                n_max: args.n_max,
                tol: resolve_tol(args.tol, env_tol)?,
                truncation: args.numerics.truncation(),
                quad: args.numerics.quad(),
            };
            let records = match args.suite {
                SuiteArg::All => run_all(&cfg),
                SuiteArg::Identities => run_suite(Suite::Identities, &cfg),
                SuiteArg::Hankel => run_suite(Suite::Hankel, &cfg),
                SuiteArg::Measures => run_suite(Suite::Measures, &cfg),
                SuiteArg::Discrete => run_suite(Suite::Discrete, &cfg),
            }
            .map_err(|e| (EXIT_FAILED, e.to_string()))?;
            Ok(Outcome::Report(records))
        }
        Command::Emit(EmitCommand::Density { kind, q, rho, y, a, b, points, numerics }) => {
            numerics.validate().map_err(usage)?;
            let need = |v: &Option<f64>, name: &str| v.ok_or_else(|| usage(format!("--kind {kind:?} needs --{name}")));
            let params = match kind {
                DensityKind::Hermite => DensityParams::Hermite { q: *q },
                DensityKind::Mu => DensityParams::Mu { q: *q, rho: need(rho, "rho")?, y: need(y, "y")? },
                DensityKind::Asc => DensityParams::Asc { q: *q, a: need(a, "a")?, b: need(b, "b")? },
            };
            let samples = params.sample(*points, &numerics.truncation()).map_err(|e| usage(e.to_string()))?;
            Ok(Outcome::Artifact(render_density(&samples, format).map_err(|e| (EXIT_FAILED, e))?))
        }
        Command::Emit(EmitCommand::Moments { n_max }) => {
            let moments = moments_of_mu(*n_max);
            let text = match format {
                Format::Json => {
                    let list: Vec<String> = moments.iter().map(|m| m.render()).collect();
                    json_line(&list)?
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let _ = w.write_record(["k", "moment"]);
                    for (k, m) in moments.iter().enumerate() {
                        let _ = w.write_record([k.to_string(), m.render()]);
                    }
                    csv_string(w)?
                }
                Format::Text => moments.iter().enumerate().map(|(k, m)| format!("m_{k} = {m}\n")).collect(),
            };
            Ok(Outcome::Artifact(text))
        }
        Command::Emit(EmitCommand::Measure { q, m, rho, y, negative_rho }) => {
            let params = match (m, rho) {
                (Some(m), _) => DiscreteParams::new(*q, *m, *y, *negative_rho),
                (None, Some(r)) => DiscreteParams::from_rho(*q, *r, *y),
                (None, None) => return Err(usage("need --m or --rho")),
            }
            .map_err(|e| usage(e.to_string()))?;
            let measure = solve_weights(&params).map_err(|e| (EXIT_FAILED, e.to_string()))?;
            let text = match format {
                Format::Json => json_line(&measure)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let _ = w.write_record(["x", "weight"]);
                    for (x, l) in measure.support.iter().zip(&measure.weights) {
                        let _ = w.write_record([format!("{x:.16e}"), format!("{l:.16e}")]);
                    }
                    csv_string(w)?
                }
                Format::Text => measure
                    .support
                    .iter()
                    .zip(&measure.weights)
                    .map(|(x, l)| format!("{x:.16e} {l:.16e}\n"))
                    .collect(),
            };
            Ok(Outcome::Artifact(text))
        }
    }
}

fn json_line<T: Serialize + ?Sized>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| (EXIT_FAILED, e.to_string()))
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| (EXIT_FAILED, e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| (EXIT_FAILED, e.to_string()))
}

/// `x,density` rows with 17 significant digits.
pub fn render_density(samples: &[(f64, f64)], format: Format) -> Result<String, String> {
    match format {
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x", "density"]).map_err(|e| e.to_string())?;
            for (x, d) in samples {
                w.write_record([format!("{x:.16e}"), format!("{d:.16e}")]).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: f64,
                density: f64,
            }
            let rows: Vec<Row> = samples.iter().map(|&(x, density)| Row { x, density }).collect();
            serde_json::to_string_pretty(&rows).map(|s| s + "\n").map_err(|e| e.to_string())
        }
    }
}

pub fn render_records(records: &[CheckRecord], format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let failed = records.iter().filter(|r| !r.passed()).count();
            let summary = Summary { passed: failed == 0, total: records.len(), failed, records };
            serde_json::to_string_pretty(&summary).map(|s| s + "\n").map_err(|e| e.to_string())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "check_id", "paper_ref", "status", "residual", "elapsed_ms"])
                .map_err(|e| e.to_string())?;
            for r in records {
                let status = if r.passed() { "pass" } else { "fail" };
                w.write_record([
                    r.suite.as_str(),
                    r.check_id.as_str(),
                    r.paper_ref.as_str(),
                    status,
                    &format!("{:e}", r.residual),
                    &format!("{:.3}", r.elapsed_ms),
                ])
                .map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Format::Text => {
            let mut s = String::new();
            for r in records {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                s += &format!("{status} {} residual={:e}", r.check_id, r.residual);
                if let Some(d) = &r.detail {
                    s += &format!(" ({d})");
                }
                s.push('\n');
            }
            let failed = records.iter().filter(|r| !r.passed()).count();
            s += &format!("{} checks, {} failed\n", records.len(), failed);
            Ok(s)
        }
    }
}

/// Entry point for the binary.
pub fn main_with_stdio() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
