use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pptlab_cli::cache::{Cache, CACHE_ENV};
use pptlab_cli::corpus;
use pptlab_cli::run::{render_text, run, CliError, Command, Request, DEFAULT_DEPTH, DEFAULT_EMAX};
use pptlab_cli::expand_vars;
use pptlab_core::Limits;

#[derive(Parser)]
#[command(
    name = "pptlab",
    version,
    about = "Splitting-order sequences, perfectoid purity and perfectoid pure thresholds of hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cache directory (defaults to $PPTLAB_CACHE; no caching if unset).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Ignore any configured cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute s_0, s_1, ..., s_depth.
    Sequence(Input),
    /// Exact perfectoid pure threshold.
    Ppt(Input),
    /// Perfectoid purity verdict.
    Classify(Input),
    /// Quasi-F-split height read from the sequence.
    QfsHeight(Input),
    /// ν_f(p^e) table and F-pure threshold approximation of f mod p.
    Fpt(Input),
    /// Quick criteria, regularity, and Fermat family detection.
    Criteria(Input),
    /// Run the built-in examples and compare with stored values.
    Corpus {
        /// Only rows whose name or tags contain this string.
        #[arg(long, default_value = "")]
        filter: String,
    },
}

#[derive(Args)]
struct Input {
    /// The prime p (at most 13).
    #[arg(long)]
    p: u32,
    /// Variables: comma-separated, `x1..x5` expands to five names.
    #[arg(long)]
    vars: String,
    /// The polynomial, e.g. "x^2 + y^2" or "x1^4 + x2^4 + p*x1*x2".
    #[arg(long)]
    f: String,
    /// Number of sequence entries after s_0 (1 to 24).
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Largest e for the ν table.
    #[arg(long, default_value_t = DEFAULT_EMAX)]
    emax: u32,
    /// Report r = 1 non-purity patterns as inconclusive.
    #[arg(long)]
    strict_r1: bool,
    /// Include the ideals I(s_1, ..., s_n) of each step.
    #[arg(long)]
    trace: bool,
    /// Cap on distinct monomials in one linear-algebra workspace.
    #[arg(long)]
    max_monomials: Option<usize>,
    /// Cap on generators of one ideal.
    #[arg(long)]
    max_generators: Option<usize>,
}

impl Input {
    fn request(self, command: Command) -> Result<Request, CliError> {
        let defaults = Limits::default();
        Ok(Request {
            command,
            p: self.p,
            vars: expand_vars(&self.vars).map_err(CliError::Usage)?,
            f: self.f,
            depth: self.depth,
            emax: self.emax,
            strict_r1: self.strict_r1,
            trace: self.trace,
            limits: Limits {
                max_monomials: self.max_monomials.unwrap_or(defaults.max_monomials),
                max_generators: self.max_generators.unwrap_or(defaults.max_generators),
            },
        })
    }
}

fn open_cache(cli: &Cli) -> Option<Cache> {
    if cli.no_cache {
        return None;
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))?;
    Cache::open(&dir)
}

fn report_error(e: &CliError, json: bool) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&e.to_record()).expect("error record serializes")
        );
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let cache = open_cache(&cli);

    let (input, command) = match cli.command {
        Cmd::Corpus { filter } => {
            let results = corpus::run_corpus(&filter, cache.as_ref());
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&results).expect("corpus results serialize")
                );
            } else {
                print!("{}", corpus::render_table(&results));
            }
            return match corpus::check(&results) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            };
        }
        Cmd::Sequence(i) => (i, Command::Sequence),
        Cmd::Ppt(i) => (i, Command::Ppt),
        Cmd::Classify(i) => (i, Command::Classify),
        Cmd::QfsHeight(i) => (i, Command::QfsHeight),
        Cmd::Fpt(i) => (i, Command::Fpt),
        Cmd::Criteria(i) => (i, Command::Criteria),
    };

    let result = input
        .request(command)
        .and_then(|req| run(&req, cache.as_ref()));
    match result {
        Ok(rec) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rec).expect("record serializes")
                );
            } else {
                print!("{}", render_text(&rec));
            }
            ExitCode::SUCCESS
        }
        Err(e) => report_error(&e, json),
    }
}
