use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tsp::cli_bench::{self, CliError, Config, Method, Table};

#[derive(Parser)]
#[command(name = "tsp", version, about = "Tempered stable residue-series pricing and Fourier cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price one European call.
    Price {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "mellin")]
        method: Method,
        /// Truncation order, one value or one per summation index.
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Series density against Fourier inversion on an x grid.
    Density {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated x values; defaults to 21 points on [0.1, 5].
        #[arg(long)]
        x: Option<String>,
        /// Time horizon; defaults to the config maturity, else 1.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Series error against an oracle over a list of truncation orders.
    Convergence {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "N", default_value = "5,10,15,20,25,30,40,50")]
        n: String,
        /// Oracle method.
        #[arg(long, value_enum, default_value = "gil_pelaez")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Six-model, four-method comparison on the S0 = 1, K = 1.5, T = 1.2 market.
    Table4 {
        /// JSON file with the six two-sided parameters; defaults to the printed set.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Use the set with λ₊ = 3.5, λ₋ = 2.0 instead of the printed one.
        #[arg(long, conflicts_with = "config")]
        validated: bool,
        #[arg(long, value_enum, value_delimiter = ',')]
        methods: Option<Vec<Method>>,
        #[arg(long, alias = "method", value_enum, hide = true)]
        method: Option<Method>,
        /// JSON reference values keyed by method then model.
        #[arg(long)]
        paper: Option<PathBuf>,
        #[arg(long)]
        allow_row_errors: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest order and median runtime reaching each accuracy target.
    Timing {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "1e-5,1e-6,1e-7,1e-8,1e-9")]
        targets: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(table: &Table, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => table.write_to(std::fs::File::create(path)?),
        None => table.write_to(std::io::stdout().lock()),
    }
}

fn finish(table: Table, out: Option<&PathBuf>, allow_row_errors: bool) -> Result<(), CliError> {
    emit(&table, out)?;
    let failed = table.failures();
    if failed.is_empty() || allow_row_errors {
        Ok(())
    } else {
        Err(CliError::Rows(failed))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Price { config, method, n, out } => {
            let cfg = Config::load(&config)?;
            finish(cli_bench::cmd_price(&cfg, method, n.as_deref())?, out.as_ref(), false)
        }
        Command::Density { config, x, t, out } => {
            let cfg = Config::load(&config)?;
            let xs = match x {
                Some(s) => cli_bench::parse_f64_list("--x", &s)?,
                None => cli_bench::default_density_grid(),
            };
            let t = t.or(cfg.market.map(|m| m.maturity)).unwrap_or(1.0);
            finish(cli_bench::cmd_density(&cfg, &xs, t)?, out.as_ref(), false)
        }
        Command::Convergence { config, n, method, out } => {
            let cfg = Config::load(&config)?;
            let ns = cli_bench::parse_usize_list(&n)?;
            finish(cli_bench::cmd_convergence(&cfg, &ns, method)?, out.as_ref(), false)
        }
        Command::Table4 { config, validated, methods, method, paper, allow_row_errors, out } => {
            let params = match config {
                Some(path) => {
                    let s = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                    serde_json::from_str(&s).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
                }
                None if validated => cli_bench::validated_params(),
                None => cli_bench::printed_params(),
            };
            let methods = methods.or(method.map(|m| vec![m])).unwrap_or_else(|| Method::ALL.to_vec());
            let paper = paper.as_deref().map(cli_bench::load_paper_values).transpose()?;
            finish(cli_bench::cmd_table4(&params, &methods, paper.as_ref()), out.as_ref(), allow_row_errors)
        }
        Command::Timing { config, targets, out } => {
            let cfg = Config::load(&config)?;
            let targets = cli_bench::parse_f64_list("--targets", &targets)?;
            finish(cli_bench::cmd_timing(&cfg, &targets)?, out.as_ref(), false)
        }
    }
}

fn main() -> ExitCode {
    cli_bench::init_thread_pool();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tsp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
