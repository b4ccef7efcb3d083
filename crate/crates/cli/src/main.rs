use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use prisma_cli::cache::Cache;
use prisma_cli::{Options, Request, COMMANDS};

/// Exact saturation, closure and prismality computations on submonoids of
/// Z^n. Reads one JSON document and writes one JSON document.
#[derive(Parser)]
#[command(name = "prisma", version)]
struct Cli {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    /// Suite name for `verify`.
    suite: Option<String>,
    /// Input file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Sampling box bound.
    #[arg(long = "box", allow_negative_numbers = false)]
    box_bound: Option<i64>,
    /// Multipliers for purity probes, comma separated.
    #[arg(long, value_delimiter = ',')]
    multipliers: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    /// Neither read nor write the result cache.
    #[arg(long)]
    no_cache: bool,
    /// Recompute and compare against the cached result.
    #[arg(long, conflicts_with = "no_cache")]
    check_cache: bool,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = if cli.command == "verify" {
        None
    } else {
        let text = match &cli.input {
            Some(p) => std::fs::read_to_string(p),
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map(|_| s)
            }
        };
        match text {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("prisma: cannot read input: {e}");
                return ExitCode::from(2);
            }
        }
    };
    let req = Request {
        command: cli.command,
        suite: cli.suite,
        input,
        options: Options {
            box_bound: cli.box_bound,
            multipliers: cli.multipliers,
            seed: cli.seed,
            trials: cli.trials,
            max_vertices: cli.max_vertices,
            dim: cli.dim,
        },
    };
    let cache = if cli.no_cache {
        None
    } else {
        Cache::locate(cli.cache_dir.as_deref())
    };
    let out = match (&cache, cli.check_cache) {
        (Some(c), true) => prisma_cli::check_cache(&req, c),
        (c, _) => prisma_cli::run(&req, c.as_ref()),
    };
    print!("{}", out.stdout);
    if out.code != 0 {
        eprintln!("prisma: exit {}", out.code);
    }
    ExitCode::from(out.code as u8)
}
