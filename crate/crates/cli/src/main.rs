use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use rsel_cli::bench::{self, ReportFormat, Strategy, DEFAULT_REPS, DEFAULT_SEED};
use rsel_cli::dataset::{self, Dataset, ElementKind};
use rsel_cli::error::CliError;
use rsel_cli::run::{self, OutputFormat};
use rsel_core::QueryRequest;

/// Sorted range selection over array datasets.
///
/// Indices are 1-based and ranges inclusive: `query -i 2 -j 7 -k 3` reports
/// the 3 smallest values among positions 2..=7 in non-decreasing order, one
/// `value,index` line each. Results go to stdout, diagnostics to stderr.
///
/// Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 range error,
/// 4 parse or dataset-format error, 5 verification mismatch.
#[derive(Parser)]
#[command(
    name = "rsel",
    version,
    about = "Sorted range selection over array datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse raw values and persist them as a dataset
    Ingest {
        /// Raw input file: one value per line, or packed values with --binary
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        /// Element type of the input values
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Treat the input as packed little-endian 8-byte values
        #[arg(long)]
        binary: bool,
        /// Where to write the persisted dataset
        #[arg(long, value_name = "PATH")]
        dataset: PathBuf,
    },
    /// Report the k smallest values of positions i..=j in sorted order
    Query {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        coords: QueryCoords,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        /// Cross-check the answer against the brute-force oracle
        #[arg(long)]
        verify: bool,
    },
    /// Run every query of a batch file (three integers "i j k" per line)
    Batch {
        #[command(flatten)]
        source: SourceArgs,
        /// Batch file path
        #[arg(long, value_name = "PATH")]
        queries: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        /// Cross-check every answer against the brute-force oracle
        #[arg(long)]
        verify: bool,
    },
    /// Query or batch with oracle cross-checking always on
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        coords: OptionalQueryCoords,
        /// Batch file path (switches to batch mode)
        #[arg(long, value_name = "PATH", conflicts_with_all = ["start", "end", "count"])]
        queries: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Timing and instrumentation benchmarks
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["dataset", "input"])))]
struct SourceArgs {
    /// Persisted dataset file (see `ingest`)
    #[arg(long, value_name = "PATH")]
    dataset: Option<PathBuf>,
    /// Raw input file: one value per line, or packed values with --binary
    #[arg(long, value_name = "PATH", requires = "kind")]
    input: Option<PathBuf>,
    /// Element type of raw --input values
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Treat --input as packed little-endian 8-byte values
    #[arg(long, requires = "input")]
    binary: bool,
}

#[derive(Args)]
struct QueryCoords {
    /// Range start (1-based, inclusive)
    #[arg(short = 'i', long = "start", value_name = "I")]
    start: usize,
    /// Range end (1-based, inclusive)
    #[arg(short = 'j', long = "end", value_name = "J")]
    end: usize,
    /// Number of smallest elements to report
    #[arg(short = 'k', long = "count", value_name = "K")]
    count: usize,
}

#[derive(Args)]
struct OptionalQueryCoords {
    /// Range start (1-based, inclusive)
    #[arg(short = 'i', long = "start", value_name = "I")]
    start: Option<usize>,
    /// Range end (1-based, inclusive)
    #[arg(short = 'j', long = "end", value_name = "J")]
    end: Option<usize>,
    /// Number of smallest elements to report
    #[arg(short = 'k', long = "count", value_name = "K")]
    count: Option<usize>,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Time index construction across input sizes
    Preprocess {
        /// Comma-separated input sizes, ascending
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Timed repetitions per measurement (the median is reported)
        #[arg(long, default_value_t = DEFAULT_REPS)]
        reps: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormatArg,
    },
    /// Time queries at fixed n across k values and strategies
    Query {
        /// Data size
        #[arg(long)]
        n: usize,
        /// Comma-separated k values (each must be ≤ n)
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
        /// Comma-separated subset of the known strategies
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_values_t = [StrategyArg::Paper, StrategyArg::SortBaseline]
        )]
        strategies: Vec<StrategyArg>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Timed repetitions per measurement (the median is reported)
        #[arg(long, default_value_t = DEFAULT_REPS)]
        reps: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormatArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Int64,
    Float64,
}

impl From<KindArg> for ElementKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Int64 => ElementKind::Int64,
            KindArg::Float64 => ElementKind::Float64,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Csv,
    Jsonlines,
}

impl From<FormatArg> for OutputFormat {
    fn from(format: FormatArg) -> Self {
        match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Jsonlines => OutputFormat::JsonLines,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Paper,
    #[value(name = "sort_baseline")]
    SortBaseline,
}

impl From<StrategyArg> for Strategy {
    fn from(strategy: StrategyArg) -> Self {
        match strategy {
            StrategyArg::Paper => Strategy::Paper,
            StrategyArg::SortBaseline => Strategy::SortBaseline,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum ReportFormatArg {
    #[default]
    Table,
    Csv,
}

impl From<ReportFormatArg> for ReportFormat {
    fn from(format: ReportFormatArg) -> Self {
        match format {
            ReportFormatArg::Table => ReportFormat::Table,
            ReportFormatArg::Csv => ReportFormat::Csv,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest {
            input,
            kind,
            binary,
            dataset: out_path,
        } => {
            let dataset = dataset::ingest(&input, kind.into(), binary)?;
            if dataset.is_empty() {
                eprintln!(
                    "warning: {} is empty; writing an empty dataset",
                    input.display()
                );
            }
            dataset::save(&dataset, &out_path)?;
            eprintln!(
                "ingested {} {} values into {}",
                dataset.len(),
                dataset.kind().name(),
                out_path.display()
            );
            Ok(())
        }
        Command::Query {
            source,
            coords,
            format,
            verify,
        } => {
            let dataset = resolve_dataset(&source)?;
            let request = QueryRequest::new(coords.start, coords.end, coords.count);
            with_stdout(|out| run::run_query(&dataset, request, format.into(), verify, out))
        }
        Command::Batch {
            source,
            queries,
            format,
            verify,
        } => {
            let dataset = resolve_dataset(&source)?;
            let batch = read_batch(&queries)?;
            with_stdout(|out| run::run_batch(&dataset, &batch, format.into(), verify, out))
        }
        Command::Verify {
            source,
            coords,
            queries,
            format,
        } => {
            let dataset = resolve_dataset(&source)?;
            if let Some(path) = queries {
                let batch = read_batch(&path)?;
                with_stdout(|out| run::run_batch(&dataset, &batch, format.into(), true, out))
            } else {
                let (start, end, count) = match (coords.start, coords.end, coords.count) {
                    (Some(i), Some(j), Some(k)) => (i, j, k),
                    _ => {
                        Cli::command()
                            .error(
                                clap::error::ErrorKind::MissingRequiredArgument,
                                "verify needs either --queries or all of -i, -j, -k",
                            )
                            .exit();
                    }
                };
                let request = QueryRequest::new(start, end, count);
                with_stdout(|out| run::run_query(&dataset, request, format.into(), true, out))
            }
        }
        Command::Bench(command) => run_bench(command),
    }
}

fn run_bench(command: BenchCommand) -> Result<(), CliError> {
    match command {
        BenchCommand::Preprocess {
            mut sizes,
            seed,
            reps,
            format,
        } => {
            let given = sizes.clone();
            sizes.sort_unstable();
            sizes.dedup();
            if sizes != given {
                eprintln!("note: sizes reordered ascending and deduplicated");
            }
            eprintln!("seed: {seed}");
            let report = bench::bench_preprocess(&sizes, seed, reps);
            for (n, ratio) in report.doubling_ratios() {
                eprintln!("preprocess doubling to n={n}: {ratio:.2}x");
            }
            print!("{}", bench::render_report(&report, format.into()));
            Ok(())
        }
        BenchCommand::Query {
            n,
            ks,
            strategies,
            seed,
            reps,
            format,
        } => {
            eprintln!("seed: {seed}");
            let strategies: Vec<Strategy> = strategies.into_iter().map(Into::into).collect();
            let report = bench::bench_query(n, &ks, &strategies, seed, reps)?;
            print!("{}", bench::render_report(&report, format.into()));
            Ok(())
        }
    }
}

fn resolve_dataset(source: &SourceArgs) -> Result<Dataset, CliError> {
    if let Some(path) = &source.dataset {
        return dataset::load(path);
    }
    let input = source
        .input
        .as_ref()
        .expect("clap enforces the source group");
    let kind = source.kind.expect("clap enforces --kind with --input");
    let dataset = dataset::ingest(input, kind.into(), source.binary)?;
    if dataset.is_empty() {
        eprintln!("warning: {} is empty", input.display());
    }
    Ok(dataset)
}

fn read_batch(path: &PathBuf) -> Result<Vec<run::BatchEntry>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    run::parse_batch(&path.display().to_string(), &text)
}

fn with_stdout(
    body: impl FnOnce(&mut BufWriter<std::io::StdoutLock<'_>>) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    body(&mut out)?;
    out.flush().map_err(|source| CliError::Io {
        context: "flushing results".to_string(),
        source,
    })
}
