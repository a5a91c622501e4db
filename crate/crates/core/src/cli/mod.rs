//! Command-line front end: JSON I/O, pipeline runs and verification reports.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check or a module
//! error, 2 on unreadable input, malformed JSON or a bad flag.

pub mod json;
pub mod pipeline;
pub mod report;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::canonical::factorize;
use crate::classical::{q_substitute, stieltjes_string};
use crate::debranges::{moments, HermiteBiehlerFrame};
use crate::error::Error;
use crate::screw::{pd_check, uniform_grid, ScrewFunctionData};
use crate::spectra::measure_from_q;

use self::json::{
    measure_to_json, poly_from_json, poly_to_json, HamiltonianJson, NevanlinnaJson, PolynomialJson, RationalFunctionJson,
    RealJson, ScrewJson, StringJson, TransferJson,
};
use self::pipeline::{run_appendix, run_g0, run_pw, PipelineOptions};

#[derive(Parser, Debug)]
#[command(name = "screwline", version, about = "Screw functions, de Branges spaces and canonical systems")]
pub struct Cli {
    /// Seed for every randomized probe.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    G0,
    Pw,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every check of an example and emit a verification report.
    Pipeline {
        #[arg(long, value_enum)]
        example: Example,
        /// Override for every numeric tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 2000)]
        trunc: usize,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
        range: Option<Vec<f64>>,
    },
    /// Factorize a transfer matrix into a step Hamiltonian.
    Factorize { input: PathBuf },
    /// Krein string of a rational string function.
    String {
        input: PathBuf,
        /// Treat the input as an odd Q and pass to q(z) = Q(√z)/√z first.
        #[arg(long)]
        from_odd: bool,
    },
    /// Herglotz representation (a, b, μ) of a rational Nevanlinna function.
    Measure { input: PathBuf },
    /// Dump {E, A, B, mu, moments} for a Hermite-Biehler polynomial.
    Frame { input: PathBuf },
    /// Positive-definiteness of G_g on a uniform grid; g₀ when no input is given.
    PdCheck {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
        range: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Krein string, Lévy-Khintchine and mean-periodicity checks.
    AppendixChecks {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Paley-Wiener family checks.
    Pw {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 2000)]
        trunc: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    /// A library error on well-formed input.
    Module(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Module(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Module(e) => write!(f, "error: {e}"),
        }
    }
}

fn read_json<T: for<'de> serde::Deserialize<'de>>(path: &PathBuf) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))
}

/// Schema-level conversion failures count as input errors.
fn schema<T>(r: crate::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(e.to_string()))
}

fn module<T>(r: crate::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::Module)
}

fn range(r: &Option<Vec<f64>>, default: (f64, f64)) -> Result<(f64, f64), CliError> {
    match r.as_deref() {
        None => Ok(default),
        Some([lo, hi]) if lo < hi => Ok((*lo, *hi)),
        Some(_) => Err(CliError::Input("--range needs LO < HI".into())),
    }
}

#[derive(Serialize)]
struct FrameDump {
    #[serde(rename = "E")]
    e: PolynomialJson,
    #[serde(rename = "A")]
    a: PolynomialJson,
    #[serde(rename = "B")]
    b: PolynomialJson,
    mu: json::MeasureJson,
    moments: Vec<RealJson>,
}

/// Runs a parsed command. Returns the JSON output and the exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let report = |r: report::VerificationReport| (json::to_string(&r), r.exit_code());
    Ok(match &cli.command {
        Command::Pipeline { example, tol, r, trunc, grid, range: rg } => {
            let opts = PipelineOptions {
                seed: cli.seed,
                tol: *tol,
                r: *r,
                trunc: *trunc,
                grid: *grid,
                range: range(rg, (-6.0, 6.0))?,
                ..PipelineOptions::default()
            };
            match example {
                Example::G0 => report(run_g0(&opts)),
                Example::Pw => report(run_pw(&opts)),
            }
        }
        Command::Factorize { input } => {
            let w = schema(read_json::<TransferJson>(input)?.to_domain())?;
            let h = module(factorize(&w))?;
            (json::to_string(&HamiltonianJson::from_domain(&h)), 0)
        }
        Command::String { input, from_odd } => {
            let mut q = schema(read_json::<RationalFunctionJson>(input)?.to_domain())?;
            if *from_odd {
                q = module(q_substitute(&q))?;
            }
            let s = module(stieltjes_string(&q))?;
            (json::to_string(&StringJson::from_domain(&s)), 0)
        }
        Command::Measure { input } => {
            let q = schema(read_json::<RationalFunctionJson>(input)?.to_domain())?;
            let d = module(measure_from_q(&q))?;
            (json::to_string(&NevanlinnaJson::from_domain(&d)), 0)
        }
        Command::Frame { input } => {
            let e = schema(poly_from_json(&read_json::<PolynomialJson>(input)?))?;
            let f = module(HermiteBiehlerFrame::new(e))?;
            let dump = FrameDump {
                e: poly_to_json(f.e()),
                a: poly_to_json(f.a()),
                b: poly_to_json(f.b()),
                mu: measure_to_json(f.mu()),
                moments: moments(&f).moments.iter().map(RealJson::from_domain).collect(),
            };
            (json::to_string(&dump), 0)
        }
        Command::PdCheck { input, grid, range: rg, tol } => {
            let g = match input {
                Some(p) => schema(read_json::<ScrewJson>(p)?.to_domain())?,
                None => ScrewFunctionData::example_g0(),
            };
            if *grid == 0 {
                return Err(CliError::Input("--grid must be positive".into()));
            }
            let (lo, hi) = range(rg, (-6.0, 6.0))?;
            let pd = pd_check(&g, &uniform_grid(lo, hi, *grid), *tol);
            (json::to_string(&json!(pd)), if pd.pass { 0 } else { 1 })
        }
        Command::AppendixChecks { tol } => {
            report(run_appendix(&PipelineOptions { seed: cli.seed, tol: Some(*tol), ..PipelineOptions::default() }))
        }
        Command::Pw { r, trunc, tol } => {
            report(run_pw(&PipelineOptions { seed: cli.seed, tol: *tol, r: *r, trunc: *trunc, ..PipelineOptions::default() }))
        }
    })
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, text + "\n"),
                None => {
                    println!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("input error: cannot write output: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
