//! Adjacent-pair crossings between consecutive dates.
//!
//! A crossing happens when two neighbouring stocks swap places in the sorted
//! arrangement. The stock that moved more between the two closes passes
//! over the other.

use alloc::string::String;
use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::market::{Price, PriceTable, RankSequence};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CrossingError {
    #[error("ticker {0} not in table")]
    UnknownTicker(String),
    #[error("date {0} not in table")]
    UnknownDate(NaiveDate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// The left stock passes over its right neighbour.
    Over,
    /// The left stock passes under its right neighbour.
    Under,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Over => 1,
            Sign::Under => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Over => Sign::Under,
            Sign::Under => Sign::Over,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Over => "over",
            Sign::Under => "under",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingEvent {
    pub date_from: NaiveDate,
    pub date_to: NaiveDate,
    /// 1-based; the swap involves positions `position` and `position + 1`
    /// of the arrangement just before it.
    pub position: usize,
    pub left: String,
    pub right: String,
    pub delta_left: Price,
    pub delta_right: Price,
    pub sign: Sign,
    /// Both stocks moved by the same amount; classified as under.
    pub tie: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub delta_left: Price,
    pub delta_right: Price,
    pub sign: Sign,
    pub tie: bool,
}

/// Over if the left stock's absolute move is larger, under if smaller, and
/// under with `tie = true` when they are equal.
pub fn classify_crossing(
    table: &PriceTable,
    left: &str,
    right: &str,
    date_from: NaiveDate,
    date_to: NaiveDate,
) -> Result<Classification, CrossingError> {
    let col = |t: &str| table.column(t).ok_or_else(|| CrossingError::UnknownTicker(String::from(t)));
    let row = |d: NaiveDate| table.date_index(d).ok_or(CrossingError::UnknownDate(d));
    let (l, r) = (col(left)?, col(right)?);
    let (a, b) = (row(date_from)?, row(date_to)?);
    Ok(classify_moves(
        table.row(a)[l].abs_diff(table.row(b)[l]),
        table.row(a)[r].abs_diff(table.row(b)[r]),
    ))
}

fn classify_moves(delta_left: Price, delta_right: Price) -> Classification {
    let sign = if delta_left > delta_right { Sign::Over } else { Sign::Under };
    Classification { delta_left, delta_right, sign, tie: delta_left == delta_right }
}

/// Decomposes the change from arrangement `from` to arrangement `to` (both
/// listing the same items by position) into adjacent swaps, by repeated
/// left-to-right bubble-sort passes. Returns 0-based swap positions.
pub fn bubble_decompose(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut target = alloc::vec![0usize; from.len()];
    for (pos, &item) in to.iter().enumerate() {
        target[item] = pos;
    }
    let mut cur: Vec<usize> = from.iter().map(|&item| target[item]).collect();
    let mut swaps = Vec::new();
    loop {
        let mut swapped = false;
        for j in 0..cur.len().saturating_sub(1) {
            if cur[j] > cur[j + 1] {
                cur.swap(j, j + 1);
                swaps.push(j);
                swapped = true;
            }
        }
        if !swapped {
            return swaps;
        }
    }
}

/// All crossings in time order. Every swap at a date boundary is classified
/// with the two closing prices on either side of that boundary.
pub fn detect_crossings(table: &PriceTable, ranks: &RankSequence) -> Vec<CrossingEvent> {
    let dates = table.dates();
    let mut events = Vec::new();
    for k in 1..ranks.len() {
        let (before, after) = (table.row(k - 1), table.row(k));
        let mut arrangement = ranks.order(k - 1).to_vec();
        for j in bubble_decompose(ranks.order(k - 1), ranks.order(k)) {
            let (l, r) = (arrangement[j], arrangement[j + 1]);
            let c = classify_moves(before[l].abs_diff(after[l]), before[r].abs_diff(after[r]));
            events.push(CrossingEvent {
                date_from: dates[k - 1],
                date_to: dates[k],
                position: j + 1,
                left: table.tickers()[l].clone(),
                right: table.tickers()[r].clone(),
                delta_left: c.delta_left,
                delta_right: c.delta_right,
                sign: c.sign,
                tie: c.tie,
            });
            arrangement.swap(j, j + 1);
        }
    }
    events
}

/// Number of pairs ordered differently by `from` and `to`.
pub fn inversions(from: &[usize], to: &[usize]) -> usize {
    let mut target = alloc::vec![0usize; from.len()];
    for (pos, &item) in to.iter().enumerate() {
        target[item] = pos;
    }
    let mapped: Vec<usize> = from.iter().map(|&i| target[i]).collect();
    let mut count = 0;
    for i in 0..mapped.len() {
        for j in i + 1..mapped.len() {
            if mapped[i] > mapped[j] {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::rank_sequence;
    use alloc::string::ToString;
    use alloc::vec;

    fn d(m: u32, day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(2013, m, day).unwrap()
    }

    fn p(s: &str) -> Price {
        s.parse().unwrap()
    }

    fn table(rows: &[(NaiveDate, &[&str])], names: &[&str]) -> PriceTable {
        PriceTable::new(
            names.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|(d, r)| (*d, r.iter().map(|s| p(s)).collect())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rule_applied_directly() {
        let t = table(&[(d(1, 1), &["10.00", "11.00"]), (d(1, 2), &["12.00", "11.50"])], &["L", "R"]);
        let c = classify_crossing(&t, "L", "R", d(1, 1), d(1, 2)).unwrap();
        assert_eq!((c.delta_left, c.delta_right, c.sign, c.tie), (p("2"), p("0.5"), Sign::Over, false));
    }

    #[test]
    fn tie_is_under_with_flag() {
        let t = table(&[(d(1, 1), &["10.00", "11.00"]), (d(1, 2), &["11.00", "10.00"])], &["L", "R"]);
        let c = classify_crossing(&t, "L", "R", d(1, 1), d(1, 2)).unwrap();
        assert_eq!((c.sign, c.tie), (Sign::Under, true));
        let ev = detect_crossings(&t, &rank_sequence(&t));
        assert_eq!(ev.len(), 1);
        assert!(ev[0].tie);
    }

    #[test]
    fn relabeling_flips_sign() {
        let t = table(&[(d(1, 1), &["10.00", "11.00"]), (d(1, 2), &["12.00", "11.50"])], &["L", "R"]);
        let a = classify_crossing(&t, "L", "R", d(1, 1), d(1, 2)).unwrap();
        let b = classify_crossing(&t, "R", "L", d(1, 1), d(1, 2)).unwrap();
        assert_eq!(a.sign.flip(), b.sign);
    }

    #[test]
    fn unknown_inputs() {
        let t = table(&[(d(1, 1), &["10.00"])], &["L"]);
        assert_eq!(
            classify_crossing(&t, "L", "Q", d(1, 1), d(1, 1)),
            Err(CrossingError::UnknownTicker("Q".to_string()))
        );
        assert_eq!(
            classify_crossing(&t, "L", "L", d(1, 1), d(1, 9)),
            Err(CrossingError::UnknownDate(d(1, 9)))
        );
    }

    #[test]
    fn no_swap_no_events() {
        let t = table(&[(d(1, 1), &["1", "2"]), (d(1, 2), &["1.5", "2.5"])], &["A", "B"]);
        assert!(detect_crossings(&t, &rank_sequence(&t)).is_empty());
    }

    #[test]
    fn full_reversal_of_three() {
        assert_eq!(bubble_decompose(&[0, 1, 2], &[2, 1, 0]), vec![0, 1, 0]);
        let t = table(&[(d(1, 1), &["1", "2", "3"]), (d(1, 2), &["3.5", "2.5", "1.5"])], &["A", "B", "C"]);
        let ev = detect_crossings(&t, &rank_sequence(&t));
        assert_eq!(ev.len(), 3);
        assert_eq!(ev.iter().map(|e| e.position).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!((ev[0].left.as_str(), ev[0].right.as_str()), ("A", "B"));
        assert_eq!((ev[1].left.as_str(), ev[1].right.as_str()), ("A", "C"));
        assert_eq!((ev[2].left.as_str(), ev[2].right.as_str()), ("B", "C"));
    }
}
