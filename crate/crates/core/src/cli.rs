//! Command-line frontend: factorize a dataset, enumerate its concepts, or
//! benchmark the algorithms against each other.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitmatrix::BooleanMatrix;
use crate::concepts::{canonical_stream, enumerate_concepts};
use crate::error::{check_epsilon, BmfError, Result};
use crate::factorization::Factorization;
use crate::grecon2::grecon2_factorize;
use crate::grecon3::{grecon3_factorize_with, Grecon3Options, DEFAULT_SMALL_THRESHOLD};
use crate::grecond::grecond_factorize;
use crate::io::{self, FimiOptions, IndexBase, OutputFormat};
use crate::oracle::naive_grecon_with;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

/// Environment variable seeding the synthetic matrix generator.
pub const SEED_VAR: &str = "BMF_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "grecon",
    version,
    about = "From-below Boolean matrix factorization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorize a matrix and print a JSON summary.
    Factorize(FactorizeArgs),
    /// Enumerate and count the formal concepts of a matrix.
    Concepts(ConceptsArgs),
    /// Report minimal wall times over repeated runs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Grecond,
    Grecon2,
    Grecon3,
    Naive,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Grecond => "grecond",
            Algorithm::Grecon2 => "grecon2",
            Algorithm::Grecon3 => "grecon3",
            Algorithm::Naive => "naive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Fimi,
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Dataset file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "fimi")]
    pub format: InputFormat,
    /// First item id in FIMI files (0 or 1).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub index_base: u8,
    /// Declared attribute count for FIMI files.
    #[arg(long)]
    pub n_cols: Option<usize>,
}

impl InputArgs {
    pub fn load(&self) -> Result<BooleanMatrix> {
        match self.format {
            InputFormat::Dense => io::load_dense(&self.input),
            InputFormat::Fimi => io::load_fimi(
                &self.input,
                FimiOptions {
                    index_base: if self.index_base == 0 {
                        IndexBase::Zero
                    } else {
                        IndexBase::One
                    },
                    n_cols: self.n_cols,
                },
            ),
        }
    }
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "grecon3")]
    pub algorithm: Algorithm,
    /// Stop once this fraction of the ones is covered.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    /// Extent size from which candidates are indexed incrementally.
    #[arg(long, default_value_t = DEFAULT_SMALL_THRESHOLD)]
    pub small_threshold: usize,
    /// Write the factors to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub output_format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct ConceptsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also print every concept as `extent | intent`.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Dataset file; omit together with `--synthetic`.
    #[arg(long, required_unless_present = "synthetic")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fimi")]
    pub format: InputFormat,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub index_base: u8,
    #[arg(long)]
    pub n_cols: Option<usize>,
    /// Benchmark a random matrix seeded by BMF_SEED instead of a file.
    #[arg(long, conflicts_with = "input")]
    pub synthetic: bool,
    #[arg(long, default_value_t = 2000)]
    pub rows: usize,
    #[arg(long, default_value_t = 120)]
    pub cols: usize,
    #[arg(long, default_value_t = 0.4)]
    pub density: f64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub runs: u32,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.75,0.8,0.85,0.9,0.95,1.0"
    )]
    pub epsilons: Vec<f64>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "grecond,grecon2,grecon3"
    )]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = DEFAULT_SMALL_THRESHOLD)]
    pub small_threshold: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub output_format: TextOrJson,
}

/// Result of one timed run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub factorization: Factorization,
    /// Concepts enumerated, for concept-based algorithms.
    pub concept_count: Option<usize>,
    /// Time spent enumerating and ordering concepts.
    pub enumeration_ms: f64,
    /// Enumeration plus factorization.
    pub wall_ms: f64,
}

/// Enumerates concepts when the algorithm needs them, then factorizes.
pub fn run_algorithm(
    algorithm: Algorithm,
    matrix: &BooleanMatrix,
    epsilon: f64,
    small_threshold: usize,
) -> Result<RunOutcome> {
    check_epsilon(epsilon)?;
    let start = Instant::now();
    let mut enumeration_ms = 0.0;
    let since_start = || start.elapsed().as_secs_f64() * 1e3;
    let (factorization, concept_count) = match algorithm {
        Algorithm::Grecond => (grecond_factorize(matrix, epsilon)?, None),
        Algorithm::Naive => {
            let concepts = enumerate_concepts(matrix);
            let count = concepts.len();
            enumeration_ms = since_start();
            (naive_grecon_with(matrix, concepts, epsilon)?, Some(count))
        }
        Algorithm::Grecon2 | Algorithm::Grecon3 => {
            let concepts = enumerate_concepts(matrix);
            let count = concepts.len();
            let stream = canonical_stream(concepts);
            enumeration_ms = since_start();
            let f = if algorithm == Algorithm::Grecon2 {
                grecon2_factorize(matrix, stream, epsilon)?
            } else {
                grecon3_factorize_with(matrix, stream, epsilon, Grecon3Options { small_threshold })?
            };
            (f, Some(count))
        }
    };
    Ok(RunOutcome {
        factorization,
        concept_count,
        enumeration_ms,
        wall_ms: since_start(),
    })
}

/// Summary printed by `factorize`.
#[derive(Debug, Serialize)]
pub struct FactorizeSummary {
    pub algorithm: Algorithm,
    pub rows: usize,
    pub cols: usize,
    pub ones: u64,
    pub epsilon: f64,
    pub concept_count: Option<usize>,
    pub k: usize,
    pub error: u64,
    pub coverage_ratio: f64,
    pub coverage_per_factor: Vec<u64>,
    pub cell_appends: u64,
    pub peak_list_entries: u64,
    pub peak_slots: u64,
    pub wall_ms: f64,
}

/// One line of a benchmark report: the fastest of `runs` runs.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub runs: u32,
    pub min_ms: f64,
    /// Enumeration share of the fastest run.
    pub enumeration_ms: f64,
    pub k: usize,
    pub error: u64,
    pub concept_count: Option<usize>,
    pub cell_appends: u64,
    pub peak_list_entries: u64,
    pub peak_slots: u64,
    pub coverage_per_factor: Vec<u64>,
}

/// Uniform random matrix drawn from a seeded generator.
pub fn synthetic_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> BooleanMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BooleanMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density))
}

fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| BmfError::Parse {
            path: SEED_VAR.to_string(),
            line: 0,
            message: format!("not an unsigned integer: {s:?}"),
        }),
    }
}

pub fn bench(matrix: &BooleanMatrix, args: &BenchArgs) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &algorithm in &args.algorithms {
        for &epsilon in &args.epsilons {
            let mut best: Option<RunOutcome> = None;
            for _ in 0..args.runs {
                let run = run_algorithm(algorithm, matrix, epsilon, args.small_threshold)?;
                if best.as_ref().is_none_or(|b| run.wall_ms < b.wall_ms) {
                    best = Some(run);
                }
            }
            let best = best.expect("at least one run");
            let f = &best.factorization;
            rows.push(BenchRow {
                algorithm,
                epsilon,
                runs: args.runs,
                min_ms: best.wall_ms,
                enumeration_ms: best.enumeration_ms,
                k: f.k(),
                error: f.error,
                concept_count: best.concept_count,
                cell_appends: f.stats.cell_appends,
                peak_list_entries: f.stats.peak_list_entries,
                peak_slots: f.stats.peak_slots,
                coverage_per_factor: f.new_coverage.clone(),
            });
        }
    }
    Ok(rows)
}

pub fn render_bench_table(rows: &[BenchRow]) -> String {
    let header = [
        "algorithm",
        "epsilon",
        "min_ms",
        "enum_ms",
        "k",
        "error",
        "concepts",
        "appends",
        "peak_cells",
        "peak_slots",
    ];
    let body: Vec<[String; 10]> = rows
        .iter()
        .map(|r| {
            [
                r.algorithm.name().to_string(),
                format!("{:.2}", r.epsilon),
                format!("{:.3}", r.min_ms),
                format!("{:.3}", r.enumeration_ms),
                r.k.to_string(),
                r.error.to_string(),
                r.concept_count.map_or("-".into(), |c| c.to_string()),
                r.cell_appends.to_string(),
                r.peak_list_entries.to_string(),
                r.peak_slots.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(p, (c, w))| {
                if p == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &body {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn exit_code(err: &BmfError) -> i32 {
    match err {
        BmfError::Io { .. } | BmfError::Parse { .. } | BmfError::EmptyInput(_) => EXIT_IO,
        BmfError::DimensionMismatch(_) => EXIT_IO,
        BmfError::Incomplete { .. } => EXIT_INCOMPLETE,
        _ => EXIT_USAGE,
    }
}

fn write_line(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| BmfError::io("<stdout>", e))
}

fn cmd_factorize(args: &FactorizeArgs, out: &mut dyn Write) -> Result<()> {
    check_epsilon(args.epsilon)?;
    let matrix = args.input.load()?;
    let run = run_algorithm(args.algorithm, &matrix, args.epsilon, args.small_threshold)?;
    let f = &run.factorization;
    if let Some(path) = &args.output {
        let format = match args.output_format {
            TextOrJson::Text => OutputFormat::Text,
            TextOrJson::Json => OutputFormat::Json,
        };
        io::write_factorization(f, format, path, run.wall_ms)?;
    }
    let summary = FactorizeSummary {
        algorithm: args.algorithm,
        rows: matrix.rows(),
        cols: matrix.cols(),
        ones: matrix.ones_count(),
        epsilon: args.epsilon,
        concept_count: run.concept_count,
        k: f.k(),
        error: f.error,
        coverage_ratio: f.coverage_ratio(),
        coverage_per_factor: f.new_coverage.clone(),
        cell_appends: f.stats.cell_appends,
        peak_list_entries: f.stats.peak_list_entries,
        peak_slots: f.stats.peak_slots,
        wall_ms: run.wall_ms,
    };
    write_line(out, &serde_json::to_string_pretty(&summary)?)
}

fn cmd_concepts(args: &ConceptsArgs, out: &mut dyn Write) -> Result<()> {
    let matrix = args.input.load()?;
    let concepts = enumerate_concepts(&matrix);
    write_line(out, &format!("{}", concepts.len()))?;
    if args.dump {
        let mut f = Factorization::empty(0);
        f.factors = concepts;
        write_line(out, render_concepts(&f).trim_end())?;
    }
    Ok(())
}

fn render_concepts(f: &Factorization) -> String {
    io::render_factorization(f, OutputFormat::Text, 0.0).unwrap_or_default()
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    for &e in &args.epsilons {
        check_epsilon(e)?;
    }
    let matrix = if args.synthetic {
        if !(0.0..=1.0).contains(&args.density) {
            return Err(BmfError::InvalidEpsilon(args.density));
        }
        synthetic_matrix(args.rows, args.cols, args.density, seed_from_env()?)
    } else {
        InputArgs {
            input: args.input.clone().expect("required by clap"),
            format: args.format,
            index_base: args.index_base,
            n_cols: args.n_cols,
        }
        .load()?
    };
    let rows = bench(&matrix, args)?;
    match args.output_format {
        TextOrJson::Text => write_line(out, render_bench_table(&rows).trim_end()),
        TextOrJson::Json => write_line(out, &serde_json::to_string_pretty(&rows)?),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match &cli.command {
        Command::Factorize(a) => cmd_factorize(a, out),
        Command::Concepts(a) => cmd_concepts(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_aligned() {
        let row = BenchRow {
            algorithm: Algorithm::Grecon3,
            epsilon: 1.0,
            runs: 1,
            min_ms: 12.5,
            enumeration_ms: 2.0,
            k: 3,
            error: 0,
            concept_count: Some(5),
            cell_appends: 0,
            peak_list_entries: 0,
            peak_slots: 4,
            coverage_per_factor: vec![4, 2, 1],
        };
        let table = render_bench_table(&[
            row.clone(),
            BenchRow {
                min_ms: 1234.0,
                ..row
            },
        ]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1].len(), lines[2].len());
        assert!(lines[0].starts_with("algorithm"));
    }

    #[test]
    fn synthetic_is_seeded() {
        let a = synthetic_matrix(30, 20, 0.4, 7);
        assert_eq!(a, synthetic_matrix(30, 20, 0.4, 7));
        assert_ne!(a, synthetic_matrix(30, 20, 0.4, 8));
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["grecon", "factorize"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["grecon", "nonsense"], &mut out, &mut err), EXIT_USAGE);
    }
}
