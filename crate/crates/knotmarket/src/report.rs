//! The full chain from a price window to a classified closed braid.

use std::fmt::Write as _;
use std::thread;

use chrono::NaiveDate;
use knotmarket_core::braid::{BraidError, BraidWord, TickerTrend};
use knotmarket_core::classify::{bundled_table, lookup, KnotTableEntry};
use knotmarket_core::crossings::{detect_crossings, CrossingEvent};
use knotmarket_core::invariants::{alexander_from_conway, conway_of_word, InvariantError, Limits};
use knotmarket_core::link::close_braid;
use knotmarket_core::market::{rank_sequence, MarketError, PriceTable};
use knotmarket_core::poly::render;
use knotmarket_core::LaurentPoly;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::parallel::jones_parallel;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("window needs at least 2 trading rows, found {0}")]
    WindowTooShort(usize),
    #[error("window length must be at least 2 rows")]
    BadLength,
    #[error("stride must be at least 1 row")]
    BadStride,
    #[error(transparent)]
    Market(#[from] MarketError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub limits: Limits,
    /// Threads for the state sum. `windowed_report` spreads windows over
    /// threads instead and uses one per window.
    pub workers: usize,
    /// Compute invariants on the raw word instead of its cyclic reduction.
    /// Slower; the values are the same.
    pub skip_reduction: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { limits: Limits::default(), workers: 1, skip_reduction: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowRecord {
    pub start: String,
    pub end: String,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventRecord {
    pub date_from: String,
    pub date_to: String,
    pub position: usize,
    pub left: String,
    pub right: String,
    pub delta_left: String,
    pub delta_right: String,
    pub sign: String,
}

impl From<&CrossingEvent> for EventRecord {
    fn from(e: &CrossingEvent) -> Self {
        EventRecord {
            date_from: iso(e.date_from),
            date_to: iso(e.date_to),
            position: e.position,
            left: e.left.clone(),
            right: e.right.clone(),
            delta_left: e.delta_left.to_string(),
            delta_right: e.delta_right.to_string(),
            sign: e.sign.as_str().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordRecord {
    pub strand_count: usize,
    pub letters: Vec<i32>,
    pub text: String,
    pub latex: String,
    /// Generators named after the ticker on the over strand.
    pub named: String,
}

impl WordRecord {
    fn new(w: &BraidWord, labels: &[String]) -> Result<Self, BraidError> {
        Ok(WordRecord {
            strand_count: w.strands(),
            letters: w.letters().to_vec(),
            text: w.to_string(),
            latex: w.to_latex_style(),
            named: w.to_named(labels)?,
        })
    }
}

/// A polynomial as text plus `[quarter_exponent, coefficient]` pairs,
/// highest exponent first. Coefficients beyond 64 bits are strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyRecord {
    pub text: String,
    pub pairs: Vec<(i64, serde_json::Value)>,
}

impl PolyRecord {
    pub fn new(p: &LaurentPoly, var: &str) -> Self {
        let pairs = p
            .terms()
            .rev()
            .map(|(e, c)| {
                let v = match c.to_i64() {
                    Some(n) => serde_json::Value::from(n),
                    None => serde_json::Value::from(c.to_string()),
                };
                (e, v)
            })
            .collect();
        PolyRecord { text: render(p, var), pairs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRecord {
    pub ticker: String,
    pub came_over: u32,
    pub came_under: u32,
    pub over_strand: u32,
    pub under_strand: u32,
    pub net: i64,
    pub trend: String,
}

impl From<&TickerTrend> for TrendRecord {
    fn from(t: &TickerTrend) -> Self {
        TrendRecord {
            ticker: t.ticker.clone(),
            came_over: t.came_over,
            came_under: t.came_under,
            over_strand: t.over_strand,
            under_strand: t.under_strand,
            net: t.net(),
            trend: t.trend.as_str().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub schema_version: u32,
    pub window: WindowRecord,
    pub tickers: Vec<String>,
    pub crossing_events: Vec<EventRecord>,
    pub braid_word: WordRecord,
    pub reduced_word: WordRecord,
    pub writhe: i64,
    pub component_count: usize,
    pub jones: Option<PolyRecord>,
    pub conway: Option<PolyRecord>,
    pub alexander: Option<PolyRecord>,
    /// `recognized`, `ambiguous`, `unrecognized` or `not computed`.
    pub classification_status: String,
    pub classification: Vec<String>,
    pub trend_summary: Vec<TrendRecord>,
    pub warnings: Vec<String>,
    /// Set when an invariant was refused for size.
    pub refusal: Option<String>,
}

impl PipelineReport {
    pub fn refused(&self) -> bool {
        self.refusal.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &self.window;
        let _ = writeln!(s, "window      {} .. {} ({} rows)", w.start, w.end, w.rows);
        let _ = writeln!(s, "tickers     {}", self.tickers.join(", "));
        let _ = writeln!(s, "crossings   {}", self.crossing_events.len());
        for e in &self.crossing_events {
            let _ = writeln!(
                s,
                "  {} -> {}  pos {}  {} x {}  d={} vs {}  {}",
                e.date_from, e.date_to, e.position, e.left, e.right, e.delta_left, e.delta_right, e.sign
            );
        }
        let _ = writeln!(s, "word        {}", self.braid_word.text);
        let _ = writeln!(s, "named       {}", self.braid_word.named);
        let _ = writeln!(s, "reduced     {}", self.reduced_word.text);
        let _ = writeln!(s, "writhe      {}", self.writhe);
        let _ = writeln!(s, "components  {}", self.component_count);
        let show = |p: &Option<PolyRecord>| p.as_ref().map_or("(not computed)".to_string(), |p| p.text.clone());
        let _ = writeln!(s, "jones       {}", show(&self.jones));
        let _ = writeln!(s, "conway      {}", show(&self.conway));
        let _ = writeln!(s, "alexander   {}", show(&self.alexander));
        let cls = if self.classification.is_empty() { self.classification_status.clone() } else { self.classification.join("; ") };
        let _ = writeln!(s, "type        {cls}");
        for t in &self.trend_summary {
            let _ = writeln!(s, "  {:<6} {:<8} net {:+}  (over strand {}, under strand {})", t.ticker, t.trend, t.net, t.over_strand, t.under_strand);
        }
        for warn in &self.warnings {
            let _ = writeln!(s, "warning: {warn}");
        }
        s
    }
}

fn iso(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

struct Invariants {
    jones: Option<LaurentPoly>,
    conway: Option<LaurentPoly>,
    alexander: Option<LaurentPoly>,
    refusals: Vec<String>,
}

fn compute_invariants(word: &BraidWord, opts: &PipelineOptions) -> Invariants {
    let mut refusals = Vec::new();
    let mut note = |what: &str, e: InvariantError| refusals.push(format!("{what} not computed: {e}"));
    let d = close_braid(word);
    let jones = jones_parallel(&d, &opts.limits, opts.workers).map_err(|e| note("jones", e)).ok();
    let conway = if d.crossing_count() > opts.limits.max_crossings {
        note("conway", InvariantError::TooManyCrossings { crossings: d.crossing_count(), max: opts.limits.max_crossings });
        None
    } else {
        conway_of_word(word, &opts.limits).map_err(|e| note("conway", e)).ok()
    };
    let alexander = conway.as_ref().and_then(|c| alexander_from_conway(c).map_err(|e| note("alexander", e)).ok());
    Invariants { jones, conway, alexander, refusals }
}

/// Splits a word at every generator index it never uses. The closure is the
/// split union of the blocks' closures.
pub fn split_blocks(word: &BraidWord) -> Vec<BraidWord> {
    let n = word.strands();
    let mut used = vec![false; n];
    for g in word.letters() {
        used[g.unsigned_abs() as usize] = true;
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for cut in 1..=n {
        if cut < n && used[cut] {
            continue;
        }
        let letters = word
            .letters()
            .iter()
            .filter(|g| (start + 1..cut).contains(&(g.unsigned_abs() as usize)))
            .map(|&g| g - g.signum() * start as i32)
            .collect();
        blocks.push(BraidWord::new(cut - start, letters).expect("block letters in range"));
        start = cut;
    }
    blocks
}

fn classify_word(table: &[KnotTableEntry], word: &BraidWord, limits: &Limits) -> Option<Vec<String>> {
    let d = close_braid(word);
    let jones = jones_parallel(&d, limits, 1).ok()?;
    let alex = alexander_from_conway(&conway_of_word(word, limits).ok()?).ok()?;
    Some(lookup(table, &alex, Some(&jones), d.component_count()).iter().map(|m| m.describe()).collect())
}

fn classify(
    table: &[KnotTableEntry],
    word: &BraidWord,
    components: usize,
    inv: &Invariants,
    limits: &Limits,
) -> (String, Vec<String>) {
    let Some(alex) = &inv.alexander else {
        return ("not computed".to_string(), Vec::new());
    };
    let mut names: Vec<String> =
        lookup(table, alex, inv.jones.as_ref(), components).iter().map(|m| m.describe()).collect();
    let blocks = split_blocks(word);
    if names.is_empty() && blocks.len() > 1 {
        // every combination of the blocks' candidates, as a split union
        let mut combos = vec![String::new()];
        for b in &blocks {
            let Some(parts) = classify_word(table, b, limits) else {
                combos.clear();
                break;
            };
            combos = combos
                .iter()
                .flat_map(|c| parts.iter().map(move |p| if c.is_empty() { p.clone() } else { format!("{c} ⊔ {p}") }))
                .collect();
        }
        names = combos;
    }
    let status = match names.len() {
        0 => "unrecognized",
        1 => "recognized",
        _ => "ambiguous",
    };
    (status.to_string(), names)
}

/// Runs the chain on the rows of `table` dated within `window` (inclusive),
/// or on the whole table.
pub fn run_pipeline(
    table: &PriceTable,
    window: Option<(NaiveDate, NaiveDate)>,
    opts: &PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let t = match window {
        Some((from, to)) => table.window(from, to)?,
        None => table.clone(),
    };
    report_for(&t, opts, &bundled_table())
}

fn report_for(t: &PriceTable, opts: &PipelineOptions, knots: &[KnotTableEntry]) -> Result<PipelineReport, PipelineError> {
    if t.len() < 2 {
        return Err(PipelineError::WindowTooShort(t.len()));
    }
    let labels = t.tickers().to_vec();
    let events = detect_crossings(t, &rank_sequence(t));
    let word = BraidWord::from_crossings(&events, t.ticker_count())?;
    let reduced = word.cyclic_reduce();
    let target = if opts.skip_reduction { &word } else { &reduced };
    let inv = compute_invariants(target, opts);
    let components = close_braid(target).component_count();
    let (status, classification) = classify(knots, target, components, &inv, &opts.limits);

    let mut warnings: Vec<String> = events
        .iter()
        .filter(|e| e.tie)
        .map(|e| {
            format!(
                "tie: {} and {} both moved {} between {} and {}; classified as under",
                e.left, e.right, e.delta_left, iso(e.date_from), iso(e.date_to)
            )
        })
        .collect();
    warnings.extend(inv.refusals.iter().cloned());
    let refusal = if inv.refusals.is_empty() { None } else { Some(inv.refusals.join("; ")) };

    Ok(PipelineReport {
        schema_version: SCHEMA_VERSION,
        window: WindowRecord { start: iso(t.dates()[0]), end: iso(t.dates()[t.len() - 1]), rows: t.len() },
        tickers: labels.clone(),
        crossing_events: events.iter().map(EventRecord::from).collect(),
        braid_word: WordRecord::new(&word, &labels)?,
        reduced_word: WordRecord::new(&reduced, &labels)?,
        writhe: word.writhe(),
        component_count: components,
        jones: inv.jones.as_ref().map(|p| PolyRecord::new(p, "t")),
        conway: inv.conway.as_ref().map(|p| PolyRecord::new(p, "z")),
        alexander: inv.alexander.as_ref().map(|p| PolyRecord::new(p, "t")),
        classification_status: status,
        classification,
        trend_summary: word.interpret(&labels)?.iter().map(TrendRecord::from).collect(),
        warnings,
        refusal,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub start: String,
    pub end: String,
    pub crossings: usize,
    pub writhe: i64,
    pub word_length: usize,
    pub reduced_length: usize,
    pub components: usize,
    pub classification: String,
    pub refused: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowedReport {
    pub schema_version: u32,
    pub length: usize,
    pub stride: usize,
    pub reports: Vec<PipelineReport>,
    pub summary: Vec<SummaryRow>,
    /// One entry per window that could not be processed.
    pub warnings: Vec<String>,
}

impl WindowedReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.summary {
            w.serialize(row).expect("summary row serializes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }
}

/// Windows of `length` trading rows starting every `stride` rows. The last
/// window must fit entirely; a table shorter than `length` gives one window
/// over all of it.
pub fn window_starts(rows: usize, length: usize, stride: usize) -> Vec<usize> {
    if rows < length {
        return vec![0];
    }
    (0..=rows - length).step_by(stride).collect()
}

pub fn windowed_report(
    table: &PriceTable,
    length: usize,
    stride: usize,
    opts: &PipelineOptions,
) -> Result<WindowedReport, PipelineError> {
    if length < 2 {
        return Err(PipelineError::BadLength);
    }
    if stride == 0 {
        return Err(PipelineError::BadStride);
    }
    let starts = window_starts(table.len(), length, stride);
    let knots = bundled_table();
    let per_window = PipelineOptions { workers: 1, ..opts.clone() };
    let threads = opts.workers.clamp(1, starts.len().max(1));
    let chunk = starts.len().div_ceil(threads);
    // results come back in chunk order, so output follows window start
    let results: Vec<Result<PipelineReport, String>> = thread::scope(|s| {
        let handles: Vec<_> = starts
            .chunks(chunk.max(1))
            .map(|part| {
                let (knots, per_window) = (&knots, &per_window);
                s.spawn(move || {
                    part.iter()
                        .map(|&st| {
                            let end = (st + length).min(table.len());
                            table
                                .slice(st, end)
                                .map_err(PipelineError::from)
                                .and_then(|t| report_for(&t, per_window, knots))
                                .map_err(|e| format!("window at row {st}: {e}"))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("window worker panicked")).collect()
    });

    let mut reports = Vec::new();
    let mut warnings = Vec::new();
    if table.len() < length {
        warnings.push(format!("only {} rows, using a single window instead of length {length}", table.len()));
    }
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => warnings.push(e),
        }
    }
    let summary = reports
        .iter()
        .map(|r| SummaryRow {
            start: r.window.start.clone(),
            end: r.window.end.clone(),
            crossings: r.crossing_events.len(),
            writhe: r.writhe,
            word_length: r.braid_word.letters.len(),
            reduced_length: r.reduced_word.letters.len(),
            components: r.component_count,
            classification: if r.classification.is_empty() {
                r.classification_status.clone()
            } else {
                r.classification.join("; ")
            },
            refused: r.refused(),
        })
        .collect();
    Ok(WindowedReport { schema_version: SCHEMA_VERSION, length, stride, reports, summary, warnings })
}
