//! CSV price tables: `date,SYM1,SYM2,...`, one row per trading day.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use knotmarket_core::market::{MarketError, Price, PriceTable};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("header must start with a `date` column")]
    MissingDateColumn,
    #[error("line {line}: unrecognized date {value:?} (use YYYY-MM-DD or M/D/YYYY)")]
    BadDate { line: u64, value: String },
    #[error("line {line}, column {ticker}: {source}")]
    BadPrice { line: u64, ticker: String, source: MarketError },
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount { line: u64, expected: usize, found: usize },
    #[error("ticker {0} not found in header")]
    UnknownTicker(String),
    #[error(transparent)]
    Table(#[from] MarketError),
}

pub fn parse_date(s: &str) -> Option<NaiveDate> {
    let s = s.trim();
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .or_else(|_| NaiveDate::parse_from_str(s, "%m/%d/%Y"))
        .ok()
}

/// Reads a price table. Rows may be in either date order. With a filter,
/// only the named columns are kept; the result is always arranged so the
/// first date's prices ascend.
pub fn parse_price_table<R: Read>(source: R, tickers: Option<&[String]>) -> Result<PriceTable, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);
    let header = rdr.headers()?.clone();
    if !header.get(0).is_some_and(|h| h.eq_ignore_ascii_case("date")) {
        return Err(IngestError::MissingDateColumn);
    }
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let columns: Vec<usize> = match tickers {
        None => (0..names.len()).collect(),
        Some(wanted) => wanted
            .iter()
            .map(|t| names.iter().position(|n| n == t).ok_or_else(|| IngestError::UnknownTicker(t.clone())))
            .collect::<Result<_, _>>()?,
    };

    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != names.len() + 1 {
            return Err(IngestError::FieldCount { line, expected: names.len() + 1, found: rec.len() });
        }
        let date = parse_date(&rec[0]).ok_or_else(|| IngestError::BadDate { line, value: rec[0].to_string() })?;
        let mut prices = Vec::with_capacity(columns.len());
        for &c in &columns {
            let price: Price = rec[c + 1]
                .parse()
                .map_err(|source| IngestError::BadPrice { line, ticker: names[c].clone(), source })?;
            prices.push(price);
        }
        rows.push((date, prices));
    }
    let kept = columns.iter().map(|&c| names[c].clone()).collect();
    Ok(PriceTable::new(kept, rows)?)
}

pub fn read_price_table(path: &Path, tickers: Option<&[String]>) -> Result<PriceTable, IngestError> {
    let io = |source| IngestError::Io { path: path.display().to_string(), source };
    let file = std::fs::File::open(path).map_err(io)?;
    parse_price_table(std::io::BufReader::new(file), tickers)
}

/// Oldest-first CSV with ISO dates and two-decimal prices.
pub fn to_csv(table: &PriceTable) -> String {
    let mut out = String::from("date");
    for t in table.tickers() {
        out.push(',');
        out.push_str(t);
    }
    out.push('\n');
    for (date, row) in table.rows() {
        let _ = write!(out, "{}", date.format("%Y-%m-%d"));
        for p in row {
            let _ = write!(out, ",{p}");
        }
        out.push('\n');
    }
    out
}

/// The four-stock window bundled with the crate, AXP, HD, WMT and PG from
/// 2013-05-15 to 2013-06-07.
pub const BUNDLED_CSV: &str = include_str!("../data/djia_2013.csv");

pub fn bundled_table() -> PriceTable {
    parse_price_table(BUNDLED_CSV.as_bytes(), None).expect("bundled csv is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<PriceTable, IngestError> {
        parse_price_table(s.as_bytes(), None)
    }

    #[test]
    fn bundled_first_row() {
        let t = bundled_table();
        assert_eq!(t.tickers(), ["AXP", "HD", "WMT", "PG"]);
        let first: Vec<String> = t.row(0).iter().map(|p| p.to_string()).collect();
        assert_eq!(first, ["72.78", "77.88", "79.86", "80.68"]);
        assert_eq!(t.dates()[0], NaiveDate::from_ymd_opt(2013, 5, 15).unwrap());
        assert_eq!(t.len(), 17);
    }

    #[test]
    fn date_formats_and_order() {
        let a = parse("date,X,Y\n2013-05-16,2,1\n2013-05-15,1,2\n").unwrap();
        let b = parse("Date,X,Y\n5/15/2013,1,2\n5/16/2013,2,1\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn columns_sorted_by_first_row() {
        let t = parse("date,B,A\n2020-01-01,5.00,3.00\n").unwrap();
        assert_eq!(t.tickers(), ["A", "B"]);
    }

    #[test]
    fn filter() {
        let src = "date,A,B,C\n2020-01-01,3,2,1\n";
        let t = parse_price_table(src.as_bytes(), Some(&["A".into(), "C".into()])).unwrap();
        assert_eq!(t.tickers(), ["C", "A"]);
        let err = parse_price_table(src.as_bytes(), Some(&["Q".into()])).unwrap_err();
        assert!(matches!(err, IngestError::UnknownTicker(t) if t == "Q"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("when,A\n2020-01-01,1\n"), Err(IngestError::MissingDateColumn)));
        assert!(matches!(parse("date,A\nyesterday,1\n"), Err(IngestError::BadDate { line: 2, .. })));
        assert!(matches!(parse("date,A\n2020-01-01,abc\n"), Err(IngestError::BadPrice { .. })));
        assert!(matches!(parse("date,A\n2020-01-01,1.234\n"), Err(IngestError::BadPrice { .. })));
        assert!(matches!(parse("date,A\n2020-01-01,0\n"), Err(IngestError::Table(MarketError::NonPositivePrice { .. }))));
        assert!(matches!(parse("date,A\n2020-01-01,-3\n"), Err(IngestError::Table(_))));
        assert!(matches!(
            parse("date,A\n2020-01-01,1\n2020-01-01,2\n"),
            Err(IngestError::Table(MarketError::DuplicateDate(_)))
        ));
        assert!(matches!(parse("date,A,B\n2020-01-01,1\n"), Err(IngestError::FieldCount { .. })));
    }

    #[test]
    fn csv_round_trip() {
        let t = bundled_table();
        assert_eq!(parse(&to_csv(&t)).unwrap(), t);
    }
}
