use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddhilbert_cli::commands::{self, SpectrumConfig};
use ddhilbert_cli::config::{self, default_ns, Example, Format, Solver, StudyConfig};
use ddhilbert_cli::selftest;
use ddhilbert_cli::CliResult;

#[derive(Parser)]
#[command(
    name = "ddhilbert",
    version,
    about = "Finite Hilbert transform discretization studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for one N and write the nodal profile
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long = "N", default_value_t = 10)]
        n: u64,
    },
    /// Solve for a sequence of N and write error norms with fitted rates
    Study {
        #[command(flatten)]
        common: Common,
        /// comma separated, e.g. 10,30,90
        #[arg(long = "Ns")]
        ns: Option<String>,
        /// extend the default sequence to N = 7290
        #[arg(long)]
        large: bool,
    },
    /// Sample the numerical range and resolvent of the M×M section
    Spectrum {
        #[arg(long = "M", default_value_t = 15)]
        m: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// random right-hand sides per λ
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// `re,im`; repeat for several values
        #[arg(long, allow_hyphen_values = true)]
        lambda: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the fast invariant checks
    Selftest {
        #[arg(long, hide = true)]
        corrupt_sign: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, allow_hyphen_values = true, default_value_t = config::DEFAULT_A)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = config::DEFAULT_B)]
    b: f64,
    /// `re,im` or a real number
    #[arg(long, allow_hyphen_values = true, default_value = "2,0")]
    lambda: String,
    #[arg(long, value_enum, default_value_t = Example::Const)]
    example: Example,
    #[arg(long, allow_hyphen_values = true, default_value_t = config::DEFAULT_ALPHA)]
    alpha: f64,
    /// `lo,hi`
    #[arg(long, allow_hyphen_values = true, default_value = "0,1.2")]
    interior: String,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Solver::Auto)]
    solver: Solver,
}

impl Common {
    fn into_config(self, ns: Vec<u64>) -> CliResult<StudyConfig> {
        Ok(StudyConfig {
            a: self.a,
            b: self.b,
            lambda: config::parse_complex(&self.lambda)?,
            example: self.example,
            alpha: self.alpha,
            ns,
            interior: config::parse_pair(&self.interior)?,
            out: self.out,
            format: self.format,
            seed: self.seed,
            solver: self.solver,
        })
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let written = match cli.command {
        Command::Solve { common, n } => commands::cmd_solve(&common.into_config(vec![n])?)?,
        Command::Study { common, ns, large } => {
            let ns = match ns {
                Some(s) => config::parse_ns(&s)?,
                None => default_ns(large),
            };
            commands::cmd_study(&common.into_config(ns)?)?
        }
        Command::Spectrum {
            m,
            samples,
            trials,
            lambda,
            seed,
            out,
        } => {
            let lambdas = lambda
                .iter()
                .map(|s| config::parse_complex(s))
                .collect::<CliResult<Vec<_>>>()?;
            vec![commands::cmd_spectrum(&SpectrumConfig {
                m,
                samples,
                trials,
                lambdas,
                seed,
                out,
            })?]
        }
        Command::Selftest { corrupt_sign } => {
            return Ok(selftest::run_and_print(&selftest::Options { corrupt_sign }));
        }
    };
    for path in written {
        println!("{}", path.display());
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
