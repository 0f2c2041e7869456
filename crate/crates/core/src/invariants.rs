//! Kauffman bracket, Jones, Conway and Alexander polynomials.
//!
//! Two independent routes are implemented:
//!
//! - the Kauffman bracket state sum over a planar diagram, which gives the
//!   Jones polynomial after writhe normalization with `A = t^(-1/4)`;
//! - skein recursion on braid words, terminating on descending diagrams,
//!   which gives the Conway polynomial and, as a cross-check, the Jones
//!   polynomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;

use crate::braid::BraidWord;
use crate::link::{close_braid, Dsu, LinkDiagram};
use crate::poly::{alexander_normalize, conway_to_alexander, z_in_t, LaurentPoly, PolyError};

pub const DEFAULT_MAX_CROSSINGS: usize = 24;
pub const DEFAULT_RECURSION_BUDGET: u64 = 1 << 20;

/// Hard ceiling on the state sum regardless of configuration; `2^c` states
/// must fit the `u64` state index.
pub const ABSOLUTE_MAX_CROSSINGS: usize = 40;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings, above the state-sum limit of {max}")]
    TooManyCrossings { crossings: usize, max: usize },
    #[error("skein recursion exceeded its budget of {0} expansions")]
    BudgetExceeded(u64),
    #[error("diagram is not a braid closure")]
    NotABraidClosure,
    #[error("crossing index {index} out of range for {len} crossings")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("quarter powers of t survived writhe normalization")]
    QuarterPowers,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_crossings: usize,
    pub recursion_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_crossings: DEFAULT_MAX_CROSSINGS, recursion_budget: DEFAULT_RECURSION_BUDGET }
    }
}

/// `-A^2 - A^-2` written in `t` (`A = t^(-1/4)`).
fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(-2, -1), (2, -1)])
}

/// Histogram of smoothing states: `counts[a][loops]` is the number of states
/// with `a` A-smoothings whose smoothed diagram has `loops` circles (free
/// loops excluded). Partial histograms over disjoint state ranges add up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateCounts {
    crossings: usize,
    free_loops: usize,
    counts: Vec<Vec<u64>>,
}

impl StateCounts {
    fn empty(d: &LinkDiagram) -> Self {
        let c = d.crossing_count();
        StateCounts { crossings: c, free_loops: d.free_loops(), counts: vec![vec![0; d.arc_count() + 2]; c + 1] }
    }

    pub fn merge(&mut self, other: &StateCounts) {
        for (row, orow) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in row.iter_mut().zip(orow) {
                *x += y;
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// `sum A^(a-b) (-A^2 - A^-2)^(loops - 1)`.
    pub fn into_bracket(self) -> LaurentPoly {
        let c = self.crossings as i64;
        let delta = loop_value();
        let mut powers: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        let mut out = LaurentPoly::zero();
        for (a, row) in self.counts.iter().enumerate() {
            let a_minus_b = 2 * a as i64 - c;
            for (loops, &n) in row.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                let circles = loops + self.free_loops;
                while powers.len() < circles {
                    let next = powers.last().unwrap() * &delta;
                    powers.push(next);
                }
                // A^(a-b) = t^(-(a-b)/4)
                out += powers[circles - 1].shift(-a_minus_b).scale(&BigInt::from(n));
            }
        }
        out
    }
}

fn check_size(d: &LinkDiagram, limits: &Limits) -> Result<(), InvariantError> {
    let max = limits.max_crossings.min(ABSOLUTE_MAX_CROSSINGS);
    if d.crossing_count() > max {
        return Err(InvariantError::TooManyCrossings { crossings: d.crossing_count(), max });
    }
    Ok(())
}

/// Number of smoothing states, `2^crossings`.
pub fn state_count(d: &LinkDiagram, limits: &Limits) -> Result<u64, InvariantError> {
    check_size(d, limits)?;
    Ok(1u64 << d.crossing_count())
}

/// State-sum histogram over the states in `range`. Bit `k` of a state index
/// selects the B-smoothing at crossing `k`.
pub fn bracket_state_counts(
    d: &LinkDiagram,
    range: Range<u64>,
    limits: &Limits,
) -> Result<StateCounts, InvariantError> {
    let total = state_count(d, limits)?;
    let range = range.start.min(total)..range.end.min(total);
    let mut counts = StateCounts::empty(d);
    let c = d.crossing_count();
    let mut dsu = Dsu::new(d.max_edge() + 1);
    let edges = d.arc_count();
    let xs = d.crossings();
    for state in range {
        dsu.reset();
        let mut merged = 0;
        for (k, x) in xs.iter().enumerate() {
            let [a, b, cc, dd] = x.edges.map(|e| e as usize);
            if state >> k & 1 == 0 {
                merged += usize::from(dsu.union(a, b)) + usize::from(dsu.union(cc, dd));
            } else {
                merged += usize::from(dsu.union(a, dd)) + usize::from(dsu.union(b, cc));
            }
        }
        let b_count = state.count_ones() as usize;
        counts.counts[c - b_count][edges - merged] += 1;
    }
    Ok(counts)
}

/// Kauffman bracket `<D>` by exhaustive state sum, returned in `t` via
/// `A = t^(-1/4)`. Unknot diagram with no crossings is `1`.
pub fn kauffman_bracket(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    let total = state_count(d, limits)?;
    if d.crossing_count() == 0 {
        let delta = loop_value();
        return Ok(delta.pow(d.free_loops().saturating_sub(1) as u32));
    }
    Ok(bracket_state_counts(d, 0..total, limits)?.into_bracket())
}

/// Rewrites a polynomial stored in `t` as one in `A = t^(-1/4)`, so that
/// rendering with variable `"A"` shows integer powers of `A`.
pub fn in_variable_a(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(e, c)| (-4 * e, c.clone())))
}

/// `(-A)^(-3w) <D>` with `A = t^(-1/4)`.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly, InvariantError> {
    // (-A)^(-3w) = (-1)^w t^(3w/4)
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let v = bracket.shift(3 * writhe).scale(&BigInt::from(sign));
    if !v.exponents_divisible_by(2) {
        return Err(InvariantError::QuarterPowers);
    }
    Ok(v)
}

/// Jones polynomial via the Kauffman bracket.
pub fn jones(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    jones_from_bracket(&kauffman_bracket(d, limits)?, d.writhe())
}

/// The first crossing met from below on its under strand when the closure's
/// components are traversed in order, each from the bottom of its smallest
/// position. `None` means the diagram is descending, hence an unlink.
pub fn first_ascending_crossing(word: &BraidWord) -> Option<usize> {
    let letters = word.letters();
    let mut seen = vec![false; letters.len()];
    for cycle in word.cycles() {
        let start = cycle[0];
        let mut pos = start;
        loop {
            for (k, &g) in letters.iter().enumerate() {
                let i = g.unsigned_abs() as usize - 1;
                if pos != i && pos != i + 1 {
                    continue;
                }
                if !seen[k] {
                    seen[k] = true;
                    let over = (g > 0) == (pos == i);
                    if !over {
                        return Some(k);
                    }
                }
                pos = if pos == i { i + 1 } else { i };
            }
            if pos == start {
                break;
            }
        }
    }
    None
}

/// How a skein-defined invariant treats unlinks and one crossing change.
trait SkeinRule {
    fn unlink(&self, components: usize) -> LaurentPoly;
    /// Value of the current diagram given the values with that crossing
    /// switched and smoothed. `sign` is the current crossing's sign.
    fn combine(&self, sign: i32, switched: &LaurentPoly, smoothed: &LaurentPoly) -> LaurentPoly;
}

struct ConwayRule;

impl SkeinRule for ConwayRule {
    fn unlink(&self, components: usize) -> LaurentPoly {
        if components == 1 { LaurentPoly::one() } else { LaurentPoly::zero() }
    }

    fn combine(&self, sign: i32, switched: &LaurentPoly, smoothed: &LaurentPoly) -> LaurentPoly {
        // C(L+) = C(L-) + z C(L0)
        let z_term = &LaurentPoly::var() * smoothed;
        if sign > 0 { switched + &z_term } else { switched - &z_term }
    }
}

struct JonesRule;

impl SkeinRule for JonesRule {
    fn unlink(&self, components: usize) -> LaurentPoly {
        // -(t^(1/2) + t^(-1/2)) per extra component
        loop_value().pow(components.saturating_sub(1) as u32)
    }

    fn combine(&self, sign: i32, switched: &LaurentPoly, smoothed: &LaurentPoly) -> LaurentPoly {
        let mid = &z_in_t() * smoothed;
        if sign > 0 {
            // V+ = t^2 V- + t (t^(1/2) - t^(-1/2)) V0
            switched.shift(8) + mid.shift(4)
        } else {
            // V- = t^-2 V+ - t^-1 (t^(1/2) - t^(-1/2)) V0
            switched.shift(-8) - mid.shift(-4)
        }
    }
}

struct SkeinEngine<R> {
    rule: R,
    budget: u64,
    spent: u64,
    memo: BTreeMap<BraidWord, LaurentPoly>,
}

impl<R: SkeinRule> SkeinEngine<R> {
    fn new(rule: R, budget: u64) -> Self {
        SkeinEngine { rule, budget, spent: 0, memo: BTreeMap::new() }
    }

    fn eval(&mut self, word: &BraidWord) -> Result<LaurentPoly, InvariantError> {
        if let Some(v) = self.memo.get(word) {
            return Ok(v.clone());
        }
        self.spent += 1;
        if self.spent > self.budget {
            return Err(InvariantError::BudgetExceeded(self.budget));
        }
        let value = match first_ascending_crossing(word) {
            None => self.rule.unlink(word.cycles().len()),
            Some(k) => {
                let sign = word.letters()[k].signum();
                let switched = self.eval(&word.switch_at(k))?;
                let smoothed = self.eval(&word.smooth_at(k))?;
                self.rule.combine(sign, &switched, &smoothed)
            }
        };
        self.memo.insert(word.clone(), value.clone());
        Ok(value)
    }
}

fn braid_of(d: &LinkDiagram) -> Result<&BraidWord, InvariantError> {
    d.source_word().ok_or(InvariantError::NotABraidClosure)
}

/// Conway polynomial in `z` (stored as powers of the single variable) by
/// skein recursion.
pub fn conway(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    conway_of_word(braid_of(d)?, limits)
}

pub fn conway_of_word(word: &BraidWord, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    SkeinEngine::new(ConwayRule, limits.recursion_budget).eval(word)
}

/// Jones polynomial by skein recursion alone, independent of the state sum.
pub fn jones_by_skein(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    jones_by_skein_of_word(braid_of(d)?, limits)
}

pub fn jones_by_skein_of_word(word: &BraidWord, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    SkeinEngine::new(JonesRule, limits.recursion_budget).eval(word)
}

/// Normalized Alexander polynomial; zero for split links.
pub fn alexander(d: &LinkDiagram, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    alexander_from_conway(&conway(d, limits)?)
}

pub fn alexander_from_conway(conway: &LaurentPoly) -> Result<LaurentPoly, InvariantError> {
    let raw = conway_to_alexander(conway)?;
    if raw.is_zero() {
        return Ok(raw);
    }
    Ok(alexander_normalize(&raw)?.poly)
}

/// Three diagrams differing only at one crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinTriple {
    pub plus: LinkDiagram,
    pub minus: LinkDiagram,
    pub zero: LinkDiagram,
}

/// Switches and smooths crossing `index` of a braid closure.
pub fn skein_decompose(d: &LinkDiagram, index: usize) -> Result<SkeinTriple, InvariantError> {
    let word = braid_of(d)?;
    if index >= word.len() {
        return Err(InvariantError::IndexOutOfRange { index, len: word.len() });
    }
    let switched = close_braid(&word.switch_at(index));
    let zero = close_braid(&word.smooth_at(index));
    let (plus, minus) = if word.letters()[index] > 0 { (d.clone(), switched) } else { (switched, d.clone()) };
    Ok(SkeinTriple { plus, minus, zero })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(n: usize, l: &[i32]) -> LinkDiagram {
        close_braid(&BraidWord::new(n, l.to_vec()).unwrap())
    }

    fn t(q: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, q)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(kauffman_bracket(&close(1, &[]), &lim()).unwrap(), LaurentPoly::one());
        // -A^2 - A^-2
        let unlink = kauffman_bracket(&close(2, &[]), &lim()).unwrap();
        assert_eq!(in_variable_a(&unlink), LaurentPoly::from_terms([(8, -1), (-8, -1)]));
        // four states of the Hopf diagram: AA gives A^2 d, AB and BA give one
        // loop each (2), BB gives A^-2 d, with d = -A^2 - A^-2:
        // A^2(-A^2 - A^-2) + 2 + A^-2(-A^2 - A^-2) = -A^4 - A^-4
        let hopf = kauffman_bracket(&close(2, &[1, 1]), &lim()).unwrap();
        assert_eq!(in_variable_a(&hopf), LaurentPoly::from_terms([(16, -1), (-16, -1)]));
    }

    #[test]
    fn jones_examples() {
        assert_eq!(jones(&close(1, &[]), &lim()).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&close(2, &[]), &lim()).unwrap(), -(t(2) + t(-2)));
        assert_eq!(jones(&close(2, &[1, 1]), &lim()).unwrap(), -t(10) - t(2));
        assert_eq!(jones(&close(2, &[1, 1, 1]), &lim()).unwrap(), -t(16) + t(12) + t(4));
    }

    #[test]
    fn conway_examples() {
        assert_eq!(conway(&close(1, &[]), &lim()).unwrap(), LaurentPoly::one());
        assert_eq!(conway(&close(2, &[]), &lim()).unwrap(), LaurentPoly::zero());
        assert_eq!(conway(&close(2, &[1, 1]), &lim()).unwrap(), LaurentPoly::var());
        assert_eq!(conway(&close(2, &[1, 1, 1]), &lim()).unwrap(), t(8) + LaurentPoly::one());
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&close(2, &[1, 1]), &lim()).unwrap(), t(2) - t(-2));
        assert_eq!(alexander(&close(1, &[]), &lim()).unwrap(), LaurentPoly::one());
        assert_eq!(alexander(&close(2, &[1, 1, 1]), &lim()).unwrap(), t(4) - LaurentPoly::one() + t(-4));
        assert!(alexander(&close(3, &[]), &lim()).unwrap().is_zero());
    }

    #[test]
    fn refuses_large_diagrams() {
        let d = close(2, &[1; 30]);
        let l = Limits { max_crossings: 24, ..lim() };
        assert_eq!(
            kauffman_bracket(&d, &l),
            Err(InvariantError::TooManyCrossings { crossings: 30, max: 24 })
        );
    }

    #[test]
    fn budget_is_enforced() {
        let d = close(3, &[1, -2, 1, -2, 1, -2, 1, -2]);
        let l = Limits { recursion_budget: 3, ..lim() };
        assert_eq!(conway(&d, &l), Err(InvariantError::BudgetExceeded(3)));
    }

    #[test]
    fn skein_decompose_examples() {
        let tre = close(2, &[1, 1, 1]);
        let s = skein_decompose(&tre, 2).unwrap();
        assert_eq!(s.plus, tre);
        assert_eq!(s.minus.source_word().unwrap().letters(), &[1, 1, -1]);
        assert_eq!(s.zero.source_word().unwrap().letters(), &[1, 1]);

        let one = close(2, &[1]);
        let s = skein_decompose(&one, 0).unwrap();
        assert_eq!(s.minus.source_word().unwrap().letters(), &[-1]);
        assert!(s.zero.source_word().unwrap().is_empty());
        assert_eq!(s.zero.source_word().unwrap().strands(), 2);

        assert_eq!(skein_decompose(&one, 1), Err(InvariantError::IndexOutOfRange { index: 1, len: 1 }));
        let pd = LinkDiagram::from_pd(one.crossings().to_vec(), 0).unwrap();
        assert_eq!(skein_decompose(&pd, 0), Err(InvariantError::NotABraidClosure));
    }

    #[test]
    fn descending_detection() {
        // single positive letter: strand from position 1 goes over
        assert_eq!(first_ascending_crossing(&BraidWord::new(2, vec![1]).unwrap()), None);
        assert_eq!(first_ascending_crossing(&BraidWord::new(2, vec![1, 1]).unwrap()), Some(1));
    }

    #[test]
    fn partial_state_sums_add_up() {
        let d = close(3, &[1, -2, 1, -2, 2]);
        let total = state_count(&d, &lim()).unwrap();
        let mut a = bracket_state_counts(&d, 0..total / 3, &lim()).unwrap();
        let b = bracket_state_counts(&d, total / 3..total, &lim()).unwrap();
        a.merge(&b);
        assert_eq!(a.total(), total);
        assert_eq!(a.into_bracket(), kauffman_bracket(&d, &lim()).unwrap());
    }
}
