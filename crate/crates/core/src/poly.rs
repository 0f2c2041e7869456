//! Exact Laurent polynomials in a single variable with exponents in `Z/4`.
//!
//! Every invariant in this crate lives in one ring: integer coefficients over
//! quarter-integer powers of `t`. The Kauffman bracket variable `A = t^(-1/4)`
//! needs quarter powers, Jones polynomials of even-component links need half
//! powers, and Conway polynomials in `z` only ever use integer powers, so a
//! single fixed denominator keeps all of them comparable.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent denominator: an exponent stored as `k` means `t^(k/4)`.
pub const DENOMINATOR: i64 = 4;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("conway polynomial has a non-integer or negative power of z at exponent {0}/4")]
    NotConway(i64),
    #[error("cannot normalize the zero polynomial")]
    Zero,
    #[error("malformed polynomial text at byte {pos}: {reason}")]
    Parse { pos: usize, reason: &'static str },
}

/// Sparse Laurent polynomial; keys are exponents in quarters, values are
/// never zero.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * t^(quarters/4)`.
    pub fn monomial(coeff: impl Into<BigInt>, quarters: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(quarters, coeff.into());
        p
    }

    /// The variable itself, `t` (or `z` when read as a Conway polynomial).
    pub fn var() -> Self {
        Self::monomial(1, DENOMINATOR)
    }

    /// Builds a polynomial from `(quarter_exponent, coefficient)` pairs,
    /// summing repeated exponents.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Coefficients for consecutive exponents `lowest, lowest + step, ...`.
    pub fn from_coeffs(lowest: i64, step: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (lowest + step * i as i64, c)))
    }

    fn add_term(&mut self, quarters: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(quarters) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, quarters: i64) -> BigInt {
        self.terms.get(&quarters).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^(quarters/4)`.
    pub fn shift(&self, quarters: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + quarters, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Substitutes `t -> t^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at `t = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// True if every exponent is a multiple of `quarters`.
    pub fn exponents_divisible_by(&self, quarters: i64) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(quarters) == 0)
    }

    /// Textual rendering with a chosen variable name.
    pub fn display_in<'a>(&'a self, var: &'a str) -> Rendered<'a> {
        Rendered { poly: self, var }
    }

    /// Parses the textual rendering produced by [`LaurentPoly::display_in`].
    pub fn parse_in(src: &str, var: &str) -> Result<Self, PolyError> {
        Parser { src: src.as_bytes(), pos: 0, var: var.as_bytes() }.parse()
    }
}

/// `t^(1/2) - t^(-1/2)`, the image of `z`.
pub fn z_in_t() -> LaurentPoly {
    LaurentPoly::from_terms([(2, 1), (-2, -1)])
}

/// Rewrites a Conway polynomial in `z` as an Alexander polynomial in `t` via
/// `z = t^(1/2) - t^(-1/2)`.
pub fn conway_to_alexander(conway: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    let mut out = LaurentPoly::zero();
    let z = z_in_t();
    for (e, c) in conway.terms() {
        if e < 0 || e % DENOMINATOR != 0 {
            return Err(PolyError::NotConway(e));
        }
        let power = z.pow((e / DENOMINATOR) as u32);
        out += power.scale(c);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `c(e) = c(-e)` for every exponent.
    Palindromic,
    /// `c(e) = -c(-e)`; what even-component links produce.
    AntiPalindromic,
    /// No unit `±t^(k/2)` makes the polynomial symmetric.
    NonPalindromic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Normalized {
    pub poly: LaurentPoly,
    pub symmetry: Symmetry,
}

/// Canonical representative of `p` up to units `±t^(k/2)`.
///
/// The exponent range is centred on zero when a half-integer shift allows it
/// and the top coefficient is made positive. Otherwise the lowest exponent is
/// moved into `[0, 1/2)`.
pub fn alexander_normalize(p: &LaurentPoly) -> Result<Normalized, PolyError> {
    let (lo, hi) = match (p.min_exponent(), p.max_exponent()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(PolyError::Zero),
    };
    let half = DENOMINATOR / 2;
    let sum = lo + hi;
    let shift = if sum % (2 * half) == 0 { -sum / 2 } else { -(lo - lo.rem_euclid(half)) };
    let mut poly = p.shift(shift);
    if poly.terms.values().next_back().is_some_and(|c| c.is_negative()) {
        poly = -poly;
    }
    let symmetry = symmetry_of(&poly);
    Ok(Normalized { poly, symmetry })
}

fn symmetry_of(p: &LaurentPoly) -> Symmetry {
    let mirrored = p.mirror();
    if mirrored == *p {
        Symmetry::Palindromic
    } else if mirrored == -p.clone() {
        Symmetry::AntiPalindromic
    } else {
        Symmetry::NonPalindromic
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() + (-rhs.clone())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl core::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("t").fmt(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

pub struct Rendered<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            f.write_str(self.var)?;
            let g = e.gcd(&DENOMINATOR);
            let (num, den) = (e / g, DENOMINATOR / g);
            match (num, den) {
                (1, 1) => {}
                (n, 1) => write!(f, "^{}", n)?,
                (n, d) => write!(f, "^({}/{})", n, d)?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl Parser<'_> {
    fn err(&self, reason: &'static str) -> PolyError {
        PolyError::Parse { pos: self.pos, reason }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).ok()?;
        digits.parse().ok()
    }

    fn signed_i64(&mut self) -> Result<i64, PolyError> {
        let neg = self.eat(b'-');
        let v = self.int().ok_or_else(|| self.err("expected integer"))?;
        let v: i64 = i64::try_from(v).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        if !self.eat(b'^') {
            return Ok(DENOMINATOR);
        }
        if self.eat(b'(') {
            let num = self.signed_i64()?;
            let den = if self.eat(b'/') { self.signed_i64()? } else { 1 };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            if den <= 0 || (num * DENOMINATOR) % den != 0 {
                return Err(self.err("exponent is not a multiple of 1/4"));
            }
            Ok(num * DENOMINATOR / den)
        } else {
            Ok(self.signed_i64()? * DENOMINATOR)
        }
    }

    fn parse(mut self) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero();
        self.skip_ws();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.src.len() {
                if first {
                    return Err(self.err("empty input"));
                }
                break;
            }
            let mut neg = false;
            if self.eat(b'-') {
                neg = true;
            } else if self.eat(b'+') {
                if first {
                    return Err(self.err("leading '+'"));
                }
            } else if !first {
                return Err(self.err("expected '+' or '-'"));
            }
            self.skip_ws();
            let coeff = self.int();
            let has_var = self.src[self.pos..].starts_with(self.var);
            let (coeff, exp) = if has_var {
                self.pos += self.var.len();
                (coeff.unwrap_or_else(BigInt::one), self.exponent()?)
            } else {
                (coeff.ok_or_else(|| self.err("expected coefficient or variable"))?, 0)
            };
            out.add_term(exp, if neg { -coeff } else { coeff });
            first = false;
        }
        Ok(out)
    }
}

/// Renders a polynomial as `[[quarter_exponent, coefficient], ...]` pairs in
/// descending exponent order.
pub fn to_pairs(p: &LaurentPoly) -> Vec<(i64, BigInt)> {
    p.terms().rev().map(|(e, c)| (e, c.clone())).collect()
}

/// Renders a polynomial with the default variable, for callers that only
/// need a `String`.
pub fn render(p: &LaurentPoly, var: &str) -> String {
    use alloc::string::ToString;
    p.display_in(var).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn t(q: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, q)
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = t(2);
        assert!((a.clone() + (-a)).is_zero());
    }

    #[test]
    fn cancellation_in_sum() {
        let a = t(4) - LaurentPoly::one();
        let b = LaurentPoly::one() + t(-4);
        assert_eq!(a + b, t(4) + t(-4));
    }

    #[test]
    fn hopf_jones_as_sum() {
        let p = -t(10) + -t(2);
        assert_eq!(p.to_string(), "-t^(5/2) - t^(1/2)");
    }

    #[test]
    fn binomial_square() {
        let z = z_in_t();
        assert_eq!(&z * &z, t(4) - LaurentPoly::from(2) + t(-4));
        assert_eq!(&LaurentPoly::one() * &z, z);
    }

    #[test]
    fn product_inside_skein_example() {
        let lhs = &t(4) * &(-t(2) - t(-2));
        assert_eq!(lhs, -t(6) - t(2));
    }

    #[test]
    fn conway_substitution_examples() {
        assert_eq!(conway_to_alexander(&t(4)).unwrap(), z_in_t());
        assert_eq!(conway_to_alexander(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
        let trefoil = t(8) + LaurentPoly::one();
        assert_eq!(
            conway_to_alexander(&trefoil).unwrap(),
            t(4) - LaurentPoly::one() + t(-4)
        );
    }

    #[test]
    fn conway_rejects_fractional_powers() {
        assert_eq!(conway_to_alexander(&t(2)), Err(PolyError::NotConway(2)));
        assert_eq!(conway_to_alexander(&t(-4)), Err(PolyError::NotConway(-4)));
    }

    #[test]
    fn normalize_examples() {
        let trefoil = t(4) - LaurentPoly::one() + t(-4);
        let n = alexander_normalize(&trefoil).unwrap();
        assert_eq!(n.poly, trefoil);
        assert_eq!(n.symmetry, Symmetry::Palindromic);

        let raw = -t(6) + t(2);
        let n = alexander_normalize(&raw).unwrap();
        assert_eq!(n.poly, t(2) - t(-2));
        assert_eq!(n.symmetry, Symmetry::AntiPalindromic);

        let n = alexander_normalize(&LaurentPoly::one()).unwrap();
        assert_eq!(n.poly, LaurentPoly::one());
        assert_eq!(alexander_normalize(&LaurentPoly::zero()), Err(PolyError::Zero));
    }

    #[test]
    fn normalize_fallback_when_centre_unreachable() {
        // exponent range 0..1/4 has centre 1/8, unreachable by half shifts
        let p = LaurentPoly::from_terms([(3, -1), (2, 2)]);
        let n = alexander_normalize(&p).unwrap();
        assert_eq!(n.symmetry, Symmetry::NonPalindromic);
        assert_eq!(n.poly, LaurentPoly::from_terms([(1, 1), (0, -2)]));
        assert_eq!(alexander_normalize(&n.poly).unwrap(), n);
    }

    #[test]
    fn rendering() {
        let p = t(4) - LaurentPoly::from(3) + t(-4);
        assert_eq!(p.to_string(), "t - 3 + t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let q = LaurentPoly::from_terms([(8, 2), (-2, -5), (1, 1)]);
        assert_eq!(q.to_string(), "2t^2 + t^(1/4) - 5t^(-1/2)");
        assert_eq!((t(8) + LaurentPoly::one()).display_in("z").to_string(), "z^2 + 1");
    }

    #[test]
    fn parse_accepts_rendered_forms() {
        for s in ["-t^(5/2) - t^(1/2)", "t - 3 + t^-1", "2t^2 + t^(1/4) - 5t^(-1/2)", "0", "-7", "t^(4/2)"] {
            let p = LaurentPoly::parse_in(s, "t").unwrap();
            let back = LaurentPoly::parse_in(&p.to_string(), "t").unwrap();
            assert_eq!(p, back, "{s}");
        }
        assert_eq!(LaurentPoly::parse_in("t^(4/2)", "t").unwrap(), t(8));
        assert!(LaurentPoly::parse_in("t^(1/3)", "t").is_err());
        assert!(LaurentPoly::parse_in("", "t").is_err());
        assert!(LaurentPoly::parse_in("t t", "t").is_err());
    }

    #[test]
    fn eval_and_mirror() {
        let p = t(4) - LaurentPoly::from(3) + t(-4);
        assert_eq!(p.eval_at_one(), BigInt::from(-1));
        assert_eq!((t(10) + t(2)).mirror(), t(-10) + t(-2));
    }
}
