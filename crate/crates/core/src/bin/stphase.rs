//! Command-line runner: `run`, `coeffs`, `--version`.
//!
//! Exit codes: 0 slope verdict passed, 1 verdict failed, 2 configuration
//! error, 3 oracle failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stphase::config::RunConfig;
use stphase::runner::{build_expansion, coefficient_table, run};
use stphase::{Error, Variant};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "stphase",
    version,
    about = "Asymptotic expansions of degenerate oscillatory integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Paper => Variant::Paper,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare the expansion with quadrature over the configured λ grid
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's full-line sign convention
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Overrides the config's output_path; without either, CSV goes to stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the coefficient table only
    Coeffs {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            variant,
            output,
        } => run_command(&config, variant, output),
        Command::Coeffs { config, variant } => coeffs_command(&config, variant),
    }
}

fn load(path: &Path) -> Result<RunConfig, ExitCode> {
    RunConfig::load(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_CONFIG)
    })
}

fn coeffs_command(path: &Path, variant: Option<VariantArg>) -> ExitCode {
    let config = match load(path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let variant = variant.map_or(config.variant, Variant::from);
    match build_expansion(&config, variant) {
        Ok(e) => {
            print!("{}", coefficient_table(&e));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn run_command(path: &Path, variant: Option<VariantArg>, output: Option<PathBuf>) -> ExitCode {
    let config = match load(path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let variant = variant.map_or(config.variant, Variant::from);
    let report = match run(&config, variant) {
        Ok(r) => r,
        Err(e @ Error::OracleConvergence { .. }) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ORACLE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    print!("{}", coefficient_table(&report.expansion));
    let written = match output.or(config.output_path.clone()) {
        Some(path) => File::create(&path).and_then(|f| {
            let mut w = BufWriter::new(f);
            report.write_csv(&mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write_csv(&mut lock)
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write CSV: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }

    match report.slope {
        Some(s) => eprintln!(
            "slope {s:.4} vs expected {:.4}: {}",
            report.expected_slope(),
            if report.passed() { "pass" } else { "fail" }
        ),
        None => eprintln!("slope could not be fitted: fail"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
