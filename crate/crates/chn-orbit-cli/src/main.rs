//! Command-line interface for exact curvature analysis of homogeneous
//! submanifolds of complex hyperbolic space.
//!
//! Exit codes: 0 success, 1 suite/comparison failure, 2 usage or parse
//! error, 3 closure failure of the input generators.

use chn_orbit_cli::{commands, CliError};
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "chn-orbit",
    about = "Exact second-fundamental-form and minimality analysis for orbits in complex hyperbolic space",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the adapted basis, its bracket table and the metric Gram data.
    Basis {
        /// Complex dimension of the ambient space (n >= 2).
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Analyze a subalgebra file: decomposition, curvature, classification.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Report floating-point values (epsilon = 1e-12) alongside the
        /// exact data.
        #[arg(long)]
        float: bool,
        /// Close non-closed generator sets automatically.
        #[arg(long)]
        span: bool,
    },
    /// Write a subalgebra file for a canonical family.
    Generate {
        /// Family: a, b, or twisted.
        #[arg(long)]
        family: String,
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Subspace spec: totally-real:K, complex:K,
        /// constant-angle:COS:SIN:K, hyperplane, dim:K.
        #[arg(long)]
        spec: Option<String>,
        /// Include the center direction in a twisted family.
        #[arg(long)]
        with_z: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification suite.
    Selfcheck {
        /// Range of ambient dimensions, e.g. 2..6.
        #[arg(long, default_value = "2..6")]
        n_range: String,
        /// Corpus seed; overrides CHN_ORBIT_SEED.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the second-fundamental-form formulas pairwise on a file.
    OracleCompare {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Close non-closed generator sets automatically.
        #[arg(long)]
        span: bool,
    },
}

const DEFAULT_SEED: u64 = 7;

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("CHN_ORBIT_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_SEED)
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let err = || CliError::Usage(format!("invalid n-range `{text}`; expected LO..HI"));
    let (lo, hi) = text.split_once("..").ok_or_else(err)?;
    let lo: usize = lo.parse().map_err(|_| err())?;
    let hi: usize = hi.parse().map_err(|_| err())?;
    if lo < 2 || hi < lo {
        return Err(CliError::Usage(format!(
            "invalid n-range `{text}`; need 2 <= LO <= HI"
        )));
    }
    Ok((lo, hi))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Basis { n, json } => {
            print!("{}", commands::cmd_basis(n, json)?);
            Ok(0)
        }
        Command::Analyze {
            file,
            json,
            float,
            span,
        } => {
            let opts = commands::AnalyzeOpts { json, float, span };
            print!("{}", commands::cmd_analyze(&file, &opts)?);
            if json {
                println!();
            }
            Ok(0)
        }
        Command::Generate {
            family,
            n,
            spec,
            with_z,
            out,
        } => {
            let opts = commands::GenerateOpts {
                family,
                n,
                spec,
                with_z,
                out,
            };
            print!("{}", commands::cmd_generate(&opts)?);
            Ok(0)
        }
        Command::Selfcheck {
            n_range,
            seed,
            json,
        } => {
            let (n_lo, n_hi) = parse_range(&n_range)?;
            let opts = commands::SelfcheckOpts {
                n_lo,
                n_hi,
                seed: resolve_seed(seed),
                json,
            };
            let (output, all_pass) = commands::cmd_selfcheck(&opts)?;
            print!("{output}");
            if json {
                println!();
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::OracleCompare { file, json, span } => {
            let (output, all_equal) = commands::cmd_oracle_compare(&file, json, span)?;
            print!("{output}");
            if json {
                println!();
            }
            Ok(if all_equal { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
