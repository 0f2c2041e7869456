//! Braid words over the Artin generators.
//!
//! A letter `g` with `g > 0` is `σ_g`: the strand at position `g` passes over
//! the strand at `g + 1` as they swap. `g < 0` is `σ_|g|^-1`, the same swap
//! with the left strand passing under. Positions are 1-based and letters are
//! in time order, earliest first.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::crossings::CrossingEvent;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("generator {letter} out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("cannot parse braid word token {0:?}")]
    Parse(String),
    #[error("labeling has {found} tickers, braid has {expected} strands")]
    LabelingMismatch { found: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(&letter) = letters.iter().find(|g| **g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(BraidError::OutOfRange { letter, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// Letter `k` is `position_k` signed by the crossing's over/under sign.
    pub fn from_crossings(events: &[CrossingEvent], strands: usize) -> Result<Self, BraidError> {
        let letters = events.iter().map(|e| e.sign.value() * e.position as i32).collect();
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concatenate(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|g| -g).collect() }
    }

    /// Same braid with every crossing switched.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|g| -g).collect() }
    }

    /// Deletes adjacent `g, -g` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Free reduction followed by cancelling inverse pairs across the ends
    /// of the word, which meet once the braid is closed.
    pub fn cyclic_reduce(&self) -> BraidWord {
        let mut w = self.free_reduce();
        while w.letters.len() >= 2 && w.letters[0] == -w.letters[w.letters.len() - 1] {
            w.letters.pop();
            w.letters.remove(0);
            w = w.free_reduce();
        }
        w
    }

    /// Exponent sum; equal to the writhe of the closure because all strands
    /// run in the same direction.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|g| i64::from(g.signum())).sum()
    }

    /// `perm[p]` is the final position (0-based) of the strand that starts
    /// at position `p`.
    pub fn underlying_permutation(&self) -> Vec<usize> {
        // at[q] = starting position of the strand currently at q
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (end, &start) in at.iter().enumerate() {
            perm[start] = end;
        }
        perm
    }

    /// Cycles of the underlying permutation, each starting at its smallest
    /// position, ordered by that position.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        permutation_cycles(&self.underlying_permutation())
    }

    /// Cyclic rotation: moves the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Markov stabilization: adds a strand and appends `σ_n^±1`.
    pub fn stabilize(&self, positive: bool) -> BraidWord {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Replaces letter `index` with its inverse.
    pub fn switch_at(&self, index: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        letters[index] = -letters[index];
        BraidWord { strands: self.strands, letters }
    }

    /// Deletes letter `index` (the oriented smoothing of that crossing).
    pub fn smooth_at(&self, index: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.remove(index);
        BraidWord { strands: self.strands, letters }
    }

    /// Parses `"s2 s3 s3' s1'"`. A trailing `'` or `^-1` marks an inverse.
    /// `"e"` or an empty string is the identity. When `strands` is `None` the
    /// smallest sufficient strand count is used.
    pub fn parse(src: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        for tok in src.split(|c: char| c.is_whitespace() || c == ',' || c == '·' || c == '*') {
            if tok.is_empty() || tok == "e" {
                continue;
            }
            let bad = || BraidError::Parse(String::from(tok));
            let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ')).ok_or_else(bad)?;
            let (digits, inv) = if let Some(d) = body.strip_suffix('\'') {
                (d, true)
            } else if let Some(d) = body.strip_suffix("^-1") {
                (d, true)
            } else {
                (body, false)
            };
            let i: i32 = digits.parse().map_err(|_| bad())?;
            if i <= 0 {
                return Err(bad());
            }
            letters.push(if inv { -i } else { i });
        }
        let needed = letters.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Self::new(strands.unwrap_or(needed), letters)
    }

    /// `σ2·σ3²·σ3⁻¹·σ1⁻¹` style, grouping repeated letters into powers.
    pub fn to_latex_style(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let g = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == g {
                run += 1;
            }
            if !out.is_empty() {
                out.push('·');
            }
            let _ = write!(out, "σ{}", g.unsigned_abs());
            let exp = if g < 0 { -(run as i64) } else { run as i64 };
            if exp != 1 {
                out.push_str(&superscript(exp));
            }
            i += run;
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }

    /// Generators named after the ticker on the over strand, e.g.
    /// `sHD sHD sPG sPG' sWMT'`. `labels[p]` is the ticker starting at
    /// position `p`.
    pub fn to_named(&self, labels: &[String]) -> Result<String, BraidError> {
        self.check_labels(labels)?;
        let mut at: Vec<&str> = labels.iter().map(String::as_str).collect();
        let mut out = String::new();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            let over = if g > 0 { at[i] } else { at[i + 1] };
            if !out.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "s{}{}", over, if g > 0 { "" } else { "'" });
            at.swap(i, i + 1);
        }
        if out.is_empty() {
            out.push('e');
        }
        Ok(out)
    }

    fn check_labels(&self, labels: &[String]) -> Result<(), BraidError> {
        if labels.len() != self.strands {
            return Err(BraidError::LabelingMismatch { found: labels.len(), expected: self.strands });
        }
        Ok(())
    }

    /// Per-ticker reading of the word, tracking each ticker's position.
    pub fn interpret(&self, labels: &[String]) -> Result<Vec<TickerTrend>, BraidError> {
        self.check_labels(labels)?;
        let mut trends: Vec<TickerTrend> = labels.iter().map(|t| TickerTrend::new(t.clone())).collect();
        // at[q] = index into `trends` of the ticker currently at position q
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            let (l, r) = (at[i], at[i + 1]);
            trends[l].came_over += 1;
            trends[r].came_under += 1;
            let (over, under) = if g > 0 { (l, r) } else { (r, l) };
            trends[over].over_strand += 1;
            trends[under].under_strand += 1;
            at.swap(i, i + 1);
        }
        for t in &mut trends {
            t.trend = match t.came_over.cmp(&t.came_under) {
                core::cmp::Ordering::Greater => Trend::Bullish,
                core::cmp::Ordering::Less => Trend::Bearish,
                core::cmp::Ordering::Equal => Trend::Flat,
            };
        }
        Ok(trends)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}{}", g.unsigned_abs(), if *g < 0 { "'" } else { "" })?;
        }
        Ok(())
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    let mut buf = [0u8; 20];
    let mut m = n.unsigned_abs();
    let mut len = 0;
    loop {
        buf[len] = (m % 10) as u8;
        len += 1;
        m /= 10;
        if m == 0 {
            break;
        }
    }
    for &d in buf[..len].iter().rev() {
        s.push(DIGITS[d as usize]);
    }
    s
}

/// Cycles of a permutation given as `perm[p] = image of p`.
pub fn permutation_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            cycle.push(p);
            p = perm[p];
        }
        cycles.push(cycle);
    }
    cycles
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trend {
    Bullish,
    Bearish,
    Flat,
}

impl Trend {
    pub fn as_str(self) -> &'static str {
        match self {
            Trend::Bullish => "bullish",
            Trend::Bearish => "bearish",
            Trend::Flat => "flat",
        }
    }
}

/// How one ticker moved through a braid word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TickerTrend {
    pub ticker: String,
    /// Crossings where this ticker's price came over its right neighbour.
    pub came_over: u32,
    /// Crossings where this ticker's price came under its left neighbour.
    pub came_under: u32,
    /// Crossings where this ticker's strand lies on top.
    pub over_strand: u32,
    pub under_strand: u32,
    pub trend: Trend,
}

impl TickerTrend {
    fn new(ticker: String) -> Self {
        TickerTrend { ticker, came_over: 0, came_under: 0, over_strand: 0, under_strand: 0, trend: Trend::Flat }
    }

    pub fn net(&self) -> i64 {
        i64::from(self.came_over) - i64::from(self.came_under)
    }
}
