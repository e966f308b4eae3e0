//! Command-line front end: matrix solving, tree benchmarks and experiment runs.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gut_core::gut::{fixed_levels_tree, random_levels, time_compare};
use gut_core::harness::{report, run_batch, suite, ReportFormat, ScenarioConfig, SUITES};
use gut_core::matgame::{format_solution, parse_matrix, solve, DEFAULT_EPS};

#[derive(Parser)]
#[command(name = "gut", version, about = "Game-theoretic utility trees and the explorer/alien simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Table => ReportFormat::Table,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a zero-sum matrix game read from a file or stdin.
    Solve {
        /// Matrix file (`l m` header then rows); `-` or absent reads stdin.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Time tree descent against the flattened game; prints CSV of medians.
    GutBench {
        /// Tree depths to try.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
        depths: Vec<usize>,
        /// Square level sizes to try.
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one scenario file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a bundled scenario suite.
    Batch {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn emit(text: &str, out: Option<PathBuf>) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_all(cfgs: Vec<ScenarioConfig>, trials: Option<usize>, format: Format, out: Option<PathBuf>) -> Res<()> {
    let mut summaries = Vec::with_capacity(cfgs.len());
    for mut c in cfgs {
        if let Some(t) = trials {
            c.trials = t;
        }
        summaries.push(run_batch(&c)?);
    }
    emit(&report(&summaries, format.into())?, out)
}

fn bench(depths: &[usize], sizes: &[usize], repeats: usize, seed: u64) -> Res<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    println!("depth,size,flat_rows,flat_cols,gut_median_us,flat_median_us,ratio");
    for &w in depths {
        for &k in sizes {
            let shapes = vec![(k, k); w];
            let tree = fixed_levels_tree(&shapes)?;
            let (r, c) = tree.flat_shape();
            let ctx = random_levels(&shapes, &mut rng);
            let (g, f) = match time_compare(&tree, &ctx, repeats) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("skipping depth {w} size {k}: {e}");
                    continue;
                }
            };
            let (g, f) = (g.as_secs_f64() * 1e6, f.as_secs_f64() * 1e6);
            println!("{w},{k},{r},{c},{g:.3},{f:.3},{:.4}", g / f);
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Res<()> {
    match cli.cmd {
        Cmd::Solve { file, eps } => {
            let text = match file {
                Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)?,
                _ => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let m = parse_matrix(&text)?;
            print!("{}", format_solution(&solve(&m, eps)?));
            Ok(())
        }
        Cmd::GutBench { depths, sizes, repeats, seed } => bench(&depths, &sizes, repeats, seed),
        Cmd::Run { config, seed, trials, out, format } => {
            let mut cfg = ScenarioConfig::parse(&fs::read_to_string(config)?)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            run_all(vec![cfg], trials, format, out)
        }
        Cmd::Batch { suite: name, seed, trials, out, format } => run_all(suite(&name, seed)?, trials, format, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
