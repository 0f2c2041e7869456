use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotmarket::core::braid::BraidWord;
use knotmarket::core::classify::{bundled_table, lookup};
use knotmarket::core::invariants::{alexander_from_conway, conway_of_word, Limits};
use knotmarket::core::link::close_braid;
use knotmarket::ingest::{parse_date, read_price_table};
use knotmarket::parallel::{jones_parallel, worker_count};
use knotmarket::report::{run_pipeline, windowed_report, PipelineOptions, PolyRecord};
use serde::Serialize;

const INPUT_ERROR: u8 = 2;
const REFUSED: u8 = 3;

#[derive(Parser)]
#[command(name = "knotmarket", version, about = "Braid and knot invariants of stock price crossings")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one window of a price table.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated subset of tickers.
        #[arg(long, value_delimiter = ',')]
        tickers: Option<Vec<String>>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Compute invariants on the unreduced word.
        #[arg(long)]
        skip_reduction: bool,
    },
    /// Rolling windows over trading rows.
    Windows {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        tickers: Option<Vec<String>>,
        /// Window length in trading rows.
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Json)]
        format: SeriesFormat,
    },
    /// Invariants of a braid word given directly, e.g. "s1 s1".
    Invariant {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Json,
    Csv,
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(INPUT_ERROR, e.to_string())
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("KNOTMARKET_MAX_CROSSINGS") {
        limits.max_crossings = v
            .trim()
            .parse()
            .map_err(|_| Failure(INPUT_ERROR, format!("KNOTMARKET_MAX_CROSSINGS must be a number, got {v:?}")))?;
    }
    Ok(limits)
}

fn date_arg(s: &Option<String>) -> Result<Option<chrono::NaiveDate>, Failure> {
    s.as_deref()
        .map(|v| parse_date(v).ok_or_else(|| Failure(INPUT_ERROR, format!("bad date {v:?}"))))
        .transpose()
}

#[derive(Serialize)]
struct WordInvariants {
    schema_version: u32,
    word: String,
    strand_count: usize,
    letters: Vec<i32>,
    writhe: i64,
    component_count: usize,
    pd_code: String,
    jones: Option<PolyRecord>,
    conway: Option<PolyRecord>,
    alexander: Option<PolyRecord>,
    classification: Vec<String>,
    refusal: Option<String>,
}

fn invariant(word: &str, strands: Option<usize>, limits: &Limits, workers: usize) -> Result<(WordInvariants, bool), Failure> {
    let w = BraidWord::parse(word, strands)?;
    let d = close_braid(&w);
    let mut refusals = Vec::new();
    let jones = jones_parallel(&d, limits, workers).map_err(|e| refusals.push(format!("jones: {e}"))).ok();
    let conway = if d.crossing_count() > limits.max_crossings {
        refusals.push(format!("conway: {} crossings exceed the limit of {}", d.crossing_count(), limits.max_crossings));
        None
    } else {
        conway_of_word(&w, limits).map_err(|e| refusals.push(format!("conway: {e}"))).ok()
    };
    let alexander = conway.as_ref().map(alexander_from_conway).transpose()?;
    let classification = match &alexander {
        Some(a) => lookup(&bundled_table(), a, jones.as_ref(), d.component_count()).iter().map(|m| m.describe()).collect(),
        None => Vec::new(),
    };
    let refused = !refusals.is_empty();
    Ok((
        WordInvariants {
            schema_version: knotmarket::report::SCHEMA_VERSION,
            word: w.to_string(),
            strand_count: w.strands(),
            letters: w.letters().to_vec(),
            writhe: w.writhe(),
            component_count: d.component_count(),
            pd_code: d.pd_code(),
            jones: jones.as_ref().map(|p| PolyRecord::new(p, "t")),
            conway: conway.as_ref().map(|p| PolyRecord::new(p, "z")),
            alexander: alexander.as_ref().map(|p| PolyRecord::new(p, "t")),
            classification,
            refusal: refused.then(|| refusals.join("; ")),
        },
        refused,
    ))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limits = limits_from_env()?;
    let workers = cli.threads.unwrap_or_else(worker_count).max(1);
    match cli.command {
        Command::Analyze { input, tickers, from, to, format, skip_reduction } => {
            let table = read_price_table(&input, tickers.as_deref())?;
            let window = match (date_arg(&from)?, date_arg(&to)?) {
                (None, None) => None,
                (f, t) => Some((f.unwrap_or(table.dates()[0]), t.unwrap_or(table.dates()[table.len() - 1]))),
            };
            let opts = PipelineOptions { limits, workers, skip_reduction };
            let report = run_pipeline(&table, window, &opts)?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(if report.refused() { REFUSED } else { 0 })
        }
        Command::Windows { input, tickers, length, stride, format } => {
            let table = read_price_table(&input, tickers.as_deref())?;
            let opts = PipelineOptions { limits, workers, skip_reduction: false };
            let w = windowed_report(&table, length, stride, &opts)?;
            match format {
                SeriesFormat::Json => println!("{}", w.to_json()),
                SeriesFormat::Csv => print!("{}", w.summary_csv()),
            }
            for warn in &w.warnings {
                eprintln!("warning: {warn}");
            }
            Ok(if w.reports.iter().any(|r| r.refused()) { REFUSED } else { 0 })
        }
        Command::Invariant { word, strands, format } => {
            let (inv, refused) = invariant(&word, strands, &limits, workers)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&inv)?),
                Format::Text => {
                    let show = |p: &Option<PolyRecord>| p.as_ref().map_or("(not computed)".to_string(), |p| p.text.clone());
                    println!("word        {} on {} strands", inv.word, inv.strand_count);
                    println!("components  {}", inv.component_count);
                    println!("writhe      {}", inv.writhe);
                    println!("pd          {}", inv.pd_code);
                    println!("jones       {}", show(&inv.jones));
                    println!("conway      {}", show(&inv.conway));
                    println!("alexander   {}", show(&inv.alexander));
                    let cls = if inv.classification.is_empty() { "unrecognized".to_string() } else { inv.classification.join("; ") };
                    println!("type        {cls}");
                    if let Some(r) = &inv.refusal {
                        println!("refused     {r}");
                    }
                }
            }
            Ok(if refused { REFUSED } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
