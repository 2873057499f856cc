mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_HYPOTHESIS: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "monogenic", version, about = "Construct and certify monogenic polynomials")]
struct Cli {
    /// TOML run configuration (overrides $MONOGENIC_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    trial_bound: Option<u64>,
    #[arg(long, global = true)]
    rho_iterations: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long)]
    pub q0: u64,
    #[arg(long)]
    pub q1: u64,
    /// Defaults to q0 + q1 - 1
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub q2: u64,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Plot {
    None,
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Method {
    Ore,
    Jk,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build F0, F and the C/D values for a parameter tuple
    Construct(ParamArgs),
    /// Emit a monogenicity certificate; searches for p when it is absent
    VerifyMonogenic(ParamArgs),
    /// Index bounds for the Stirling family at p
    NonMonogenic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value = "none")]
        plot: Plot,
    },
    /// phi-Newton polygon of a polynomial given as an ascending coefficient list
    Newton {
        #[arg(long)]
        f: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "[0, 1]")]
        phi: String,
        #[arg(long, value_enum, default_value = "ascii")]
        plot: Plot,
    },
    /// Lower bounds on the p-part of the index of a monic polynomial
    IndexBound {
        #[arg(long)]
        f: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, value_enum, default_value = "none")]
        plot: Plot,
    },
    /// Stirling numbers of the first kind (unsigned)
    Stirling {
        /// Print row n
        #[arg(long, conflicts_with_all = ["p", "family"])]
        row: Option<usize>,
        /// Valuation report for the regular prime p
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1, requires = "p")]
        a: u64,
        /// Print the Stirling family polynomial for --p and this s
        #[arg(long, requires = "p")]
        family: Option<u32>,
    },
    /// Bernoulli numbers B_0..B_n, or regularity of a prime
    Bernoulli {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        regular: Option<u64>,
    },
    /// Partial density product for f of a parameter tuple
    Density {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Discriminant of a polynomial given as an ascending coefficient list
    Discriminant {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Also factor the discriminant
        #[arg(long)]
        factor: bool,
    },
    /// Primes p for which f(p) is squarefree and coprime to q*m
    SearchPrimes {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Re-verify every stored certificate in the corpus
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let mut config = match RunConfig::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(b) = cli.trial_bound {
        config.trial_bound = b;
    }
    if let Some(r) = cli.rho_iterations {
        config.rho_iterations = r;
    }
    if let Err(msg) = config.check() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match cli.command {
        Command::Construct(p) => commands::construct(&p),
        Command::VerifyMonogenic(p) => commands::verify_monogenic(&config, &p),
        Command::NonMonogenic { p, s, plot } => commands::non_monogenic(p, s, plot),
        Command::Newton { f, p, phi, plot } => commands::newton(&f, p, &phi, plot),
        Command::IndexBound { f, p, method, plot } => commands::index_bound(&f, p, method, plot),
        Command::Stirling { row, p, a, family } => commands::stirling(&config, row, p, a, family),
        Command::Bernoulli { n, regular } => commands::bernoulli(&config, n, regular),
        Command::Density { params, bound } => commands::density(&config, &params, bound),
        Command::Discriminant { f, factor } => commands::discriminant(&config, &f, factor),
        Command::SearchPrimes {
            params,
            limit,
            count,
        } => commands::search_primes(&config, &params, limit, count),
        Command::Corpus { dir } => commands::corpus(&config, dir),
    };
    match result {
        Ok(out) => {
            print!("{}", output::render(&out.value, config.format));
            ExitCode::from(out.code)
        }
        Err(fail) => {
            if let Some(v) = &fail.value {
                print!("{}", output::render(v, config.format));
            }
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
