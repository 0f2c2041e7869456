//! Price tables and per-date rank orders.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use chrono::NaiveDate;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MarketError {
    #[error("price table has no tickers")]
    NoTickers,
    #[error("price table has no rows")]
    NoRows,
    #[error("duplicate ticker {0}")]
    DuplicateTicker(String),
    #[error("row for {date} has {found} prices, expected {expected}")]
    RaggedRow { date: NaiveDate, found: usize, expected: usize },
    #[error("duplicate date {0}")]
    DuplicateDate(NaiveDate),
    #[error("price for {ticker} on {date} is not positive")]
    NonPositivePrice { date: NaiveDate, ticker: String },
    #[error("unknown ticker {0}")]
    UnknownTicker(String),
    #[error("invalid price {0:?}")]
    InvalidPrice(String),
}

/// Exact price in hundredths of a currency unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Price(i64);

impl Price {
    pub const fn from_cents(cents: i64) -> Self {
        Price(cents)
    }

    pub const fn cents(self) -> i64 {
        self.0
    }

    /// `|self - other|`, exact.
    pub fn abs_diff(self, other: Price) -> Price {
        Price((self.0 - other.0).abs())
    }
}

impl FromStr for Price {
    type Err = MarketError;

    /// Accepts `123`, `123.4` and `123.45`, optionally signed. Anything with
    /// more than two decimals (other than trailing zeros) is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MarketError::InvalidPrice(String::from(s));
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) || (body.contains('.') && frac.is_empty()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > 2 {
            return Err(bad());
        }
        let whole: i64 = int.parse().map_err(|_| bad())?;
        let mut cents: i64 = 0;
        for (i, b) in frac.bytes().enumerate() {
            cents += i64::from(b - b'0') * if i == 0 { 10 } else { 1 };
        }
        let total = whole.checked_mul(100).and_then(|w| w.checked_add(cents)).ok_or_else(bad)?;
        Ok(Price(if neg { -total } else { total }))
    }
}

impl fmt::Display for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.abs();
        write!(f, "{}{}.{:02}", sign, a / 100, a % 100)
    }
}

/// Daily closing prices, one row per date and one column per ticker.
///
/// Rows are strictly ascending in time and columns are arranged so the
/// first date's prices ascend from left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceTable {
    tickers: Vec<String>,
    dates: Vec<NaiveDate>,
    prices: Vec<Vec<Price>>,
}

impl PriceTable {
    /// Validates and canonicalizes. Rows may come in any date order.
    pub fn new(
        tickers: Vec<String>,
        rows: Vec<(NaiveDate, Vec<Price>)>,
    ) -> Result<Self, MarketError> {
        if tickers.is_empty() {
            return Err(MarketError::NoTickers);
        }
        if rows.is_empty() {
            return Err(MarketError::NoRows);
        }
        for (i, t) in tickers.iter().enumerate() {
            if tickers[..i].contains(t) {
                return Err(MarketError::DuplicateTicker(t.clone()));
            }
        }
        let n = tickers.len();
        let mut rows = rows;
        for (date, row) in &rows {
            if row.len() != n {
                return Err(MarketError::RaggedRow { date: *date, found: row.len(), expected: n });
            }
            if let Some(col) = row.iter().position(|p| p.cents() <= 0) {
                return Err(MarketError::NonPositivePrice {
                    date: *date,
                    ticker: tickers[col].clone(),
                });
            }
        }
        rows.sort_by_key(|(d, _)| *d);
        if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(MarketError::DuplicateDate(w[0].0));
        }

        let first = &rows[0].1;
        let columns = sorted_order(first, &tickers);
        let tickers: Vec<String> = columns.iter().map(|&c| tickers[c].clone()).collect();
        let (dates, prices) = rows
            .into_iter()
            .map(|(d, row)| (d, columns.iter().map(|&c| row[c]).collect()))
            .unzip();
        Ok(PriceTable { tickers, dates, prices })
    }

    pub fn tickers(&self) -> &[String] {
        &self.tickers
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn rows(&self) -> impl Iterator<Item = (NaiveDate, &[Price])> + '_ {
        self.dates.iter().copied().zip(self.prices.iter().map(Vec::as_slice))
    }

    pub fn row(&self, index: usize) -> &[Price] {
        &self.prices[index]
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn ticker_count(&self) -> usize {
        self.tickers.len()
    }

    pub fn column(&self, ticker: &str) -> Option<usize> {
        self.tickers.iter().position(|t| t == ticker)
    }

    pub fn date_index(&self, date: NaiveDate) -> Option<usize> {
        self.dates.binary_search(&date).ok()
    }

    pub fn price(&self, ticker: &str, date: NaiveDate) -> Option<Price> {
        Some(self.prices[self.date_index(date)?][self.column(ticker)?])
    }

    /// Keeps only the listed tickers, in the given order before the
    /// first-row arrangement is reapplied.
    pub fn select(&self, tickers: &[&str]) -> Result<PriceTable, MarketError> {
        let cols = tickers
            .iter()
            .map(|t| self.column(t).ok_or_else(|| MarketError::UnknownTicker(String::from(*t))))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = self.rows().map(|(d, r)| (d, cols.iter().map(|&c| r[c]).collect())).collect();
        PriceTable::new(tickers.iter().map(|t| String::from(*t)).collect(), rows)
    }

    /// Rows with `from <= date <= to`, re-arranged by the window's first row.
    pub fn window(&self, from: NaiveDate, to: NaiveDate) -> Result<PriceTable, MarketError> {
        let rows: Vec<_> = self
            .rows()
            .filter(|(d, _)| *d >= from && *d <= to)
            .map(|(d, r)| (d, r.to_vec()))
            .collect();
        PriceTable::new(self.tickers.clone(), rows)
    }

    /// Rows `start..end` by index.
    pub fn slice(&self, start: usize, end: usize) -> Result<PriceTable, MarketError> {
        let rows = self.rows().skip(start).take(end.saturating_sub(start)).map(|(d, r)| (d, r.to_vec())).collect();
        PriceTable::new(self.tickers.clone(), rows)
    }
}

/// Column indices ordered by ascending price, ties broken by ticker symbol.
fn sorted_order(row: &[Price], tickers: &[String]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..row.len()).collect();
    idx.sort_by(|&a, &b| match row[a].cmp(&row[b]) {
        Ordering::Equal => tickers[a].cmp(&tickers[b]),
        o => o,
    });
    idx
}

/// For every date, the column indices ordered from cheapest to dearest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSequence {
    orders: Vec<Vec<usize>>,
}

impl RankSequence {
    /// Column indices at positions `0..n` on date `index`.
    pub fn order(&self, index: usize) -> &[usize] {
        &self.orders[index]
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.orders.iter().map(Vec::as_slice)
    }

    /// The order on date `index` as a 1-based permutation of `1..=n`.
    pub fn permutation(&self, index: usize) -> Vec<usize> {
        self.orders[index].iter().map(|c| c + 1).collect()
    }
}

pub fn rank_sequence(table: &PriceTable) -> RankSequence {
    RankSequence {
        orders: table.prices.iter().map(|row| sorted_order(row, &table.tickers)).collect(),
    }
}
