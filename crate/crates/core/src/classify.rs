//! Knot and link identification by invariant lookup.
//!
//! # Table format (version 1)
//!
//! One entry per line, `|`-separated:
//!
//! ```text
//! name|components|crossing_number|alexander|jones|alias|note
//! ```
//!
//! - `alexander` and `jones` are coefficient lists written as
//!   `offset:c0,c1,...`, where `offset` is the lowest exponent of `t`
//!   (an integer or a fraction such as `-1/2`) and consecutive coefficients
//!   step the exponent by one. `0` is the zero polynomial.
//! - `jones`, `alias` and `note` may be empty; trailing empty fields may be
//!   omitted.
//! - Lines starting with `#` are comments. A comment `#version N` declares
//!   the format version; only version 1 is understood.
//!
//! Alexander polynomials are stored in the canonical form produced by
//! [`alexander_normalize`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::poly::{alexander_normalize, LaurentPoly, DENOMINATOR};

pub const FORMAT_VERSION: u32 = 1;

/// The table shipped with the crate.
pub const BUNDLED_TABLE: &str = include_str!("../data/knot_table.txt");

/// Braid words the bundled table was generated from:
/// `(name, components, crossing_number, strands, word, alias)`.
pub const REFERENCE_BRAIDS: &[(&str, usize, u32, usize, &str, &str)] = &[
    ("0_1", 1, 0, 1, "", "unknot"),
    ("3_1", 1, 3, 2, "s1 s1 s1", "trefoil"),
    ("4_1", 1, 4, 3, "s1 s2' s1 s2'", "figure-eight knot"),
    ("5_1", 1, 5, 2, "s1 s1 s1 s1 s1", ""),
    ("5_2", 1, 5, 3, "s1 s1 s1 s2 s1' s2", ""),
    ("6_1", 1, 6, 4, "s1 s1 s2 s1' s3' s2 s3'", ""),
    ("6_2", 1, 6, 3, "s1 s1 s1 s2' s1 s2'", ""),
    ("6_3", 1, 6, 3, "s1 s1 s2' s1 s2' s2'", ""),
    ("7_1", 1, 7, 2, "s1 s1 s1 s1 s1 s1 s1", ""),
    ("7_2", 1, 7, 4, "s1 s1 s1 s2 s1' s2 s3 s2' s3", ""),
    ("7_3", 1, 7, 3, "s1 s1 s1 s1 s1 s2 s1' s2", ""),
    ("7_4", 1, 7, 4, "s1 s1 s2 s1' s2 s2 s3 s2' s3", ""),
    ("7_5", 1, 7, 3, "s1 s1 s1 s1 s2 s1' s2 s2", ""),
    ("7_6", 1, 7, 4, "s1 s1 s2' s1 s3 s2' s3", ""),
    ("7_7", 1, 7, 4, "s1 s2' s1 s2' s3 s2' s3", ""),
    ("8_1", 1, 8, 5, "s1 s1 s2 s1' s2 s3 s2' s4' s3 s4'", ""),
    ("8_2", 1, 8, 3, "s1 s1 s1 s1 s1 s2' s1 s2'", ""),
    ("8_3", 1, 8, 5, "s1 s1 s2 s1' s3' s2 s3' s4' s3 s4'", ""),
    ("8_4", 1, 8, 4, "s1 s1 s1 s2 s3' s2' s1 s2' s3'", ""),
    ("8_5", 1, 8, 3, "s1 s1 s1 s2' s1 s1 s1 s2'", ""),
    ("8_6", 1, 8, 4, "s1 s1 s1 s1 s2 s1' s3' s2 s3'", ""),
    ("8_7", 1, 8, 3, "s1 s1 s1 s1 s2' s1 s2' s2'", ""),
    ("8_8", 1, 8, 4, "s1 s1 s1 s2 s1' s3' s2 s3' s3'", ""),
    ("8_9", 1, 8, 3, "s1 s1 s1 s2' s1 s2' s2' s2'", ""),
    ("8_10", 1, 8, 3, "s1 s1 s1 s2' s1 s1 s2' s2'", ""),
    ("8_11", 1, 8, 4, "s1 s1 s2 s1' s2 s2 s3' s2 s3'", ""),
    ("8_12", 1, 8, 5, "s1 s2' s1 s3 s2' s4' s3 s4'", ""),
    ("8_13", 1, 8, 4, "s1 s1 s2 s1' s2 s3' s2 s3' s3'", ""),
    ("8_14", 1, 8, 4, "s1 s1 s1 s2 s1' s2 s3' s2 s3'", ""),
    ("8_15", 1, 8, 4, "s1 s1 s2' s1 s3 s2 s2 s2 s3", ""),
    ("8_16", 1, 8, 3, "s1 s1 s2' s1 s1 s2' s1 s2'", ""),
    ("8_17", 1, 8, 3, "s1 s1 s2' s1 s2' s1 s2' s2'", ""),
    ("8_18", 1, 8, 3, "s1 s2' s1 s2' s1 s2' s1 s2'", ""),
    ("8_19", 1, 8, 3, "s1 s1 s1 s2 s1 s1 s1 s2", ""),
    ("8_20", 1, 8, 3, "s1 s1 s1 s2' s1' s1' s1' s2'", ""),
    ("8_21", 1, 8, 3, "s1 s1 s1 s2 s1' s1' s2 s2", ""),
    ("0_1^2", 2, 0, 2, "", "2-component unlink"),
    ("L2a1", 2, 2, 2, "s1 s1", "positive Hopf link"),
    ("L4a1", 2, 4, 2, "s1 s1 s1 s1", "(2,4) torus link"),
];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("knot table line {line}: {reason}")]
pub struct TableError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotTableEntry {
    pub name: String,
    pub components: usize,
    pub crossing_number: u32,
    pub alexander: LaurentPoly,
    pub jones: Option<LaurentPoly>,
    pub alias: String,
    pub chirality_note: String,
}

impl KnotTableEntry {
    pub fn label(&self) -> String {
        if self.alias.is_empty() {
            self.name.clone()
        } else {
            format!("{} / {}", self.name, self.alias)
        }
    }

    /// One line of the table file.
    pub fn to_line(&self) -> String {
        let jones = self.jones.as_ref().map(encode_coeffs).unwrap_or_default();
        format!(
            "{}|{}|{}|{}|{}|{}|{}",
            self.name,
            self.components,
            self.crossing_number,
            encode_coeffs(&self.alexander),
            jones,
            self.alias,
            self.chirality_note
        )
    }
}

/// `offset:c0,c1,...` with unit exponent steps, or `0`.
pub fn encode_coeffs(p: &LaurentPoly) -> String {
    let (lo, hi) = match (p.min_exponent(), p.max_exponent()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return "0".to_string(),
    };
    let mut s = fraction(lo);
    s.push(':');
    let mut e = lo;
    let mut first = true;
    while e <= hi {
        if !first {
            s.push(',');
        }
        s.push_str(&p.coeff(e).to_string());
        first = false;
        e += DENOMINATOR;
    }
    s
}

fn fraction(quarters: i64) -> String {
    use num_integer::Integer;
    let g = quarters.gcd(&DENOMINATOR);
    let (n, d) = (quarters / g, DENOMINATOR / g);
    if d == 1 { n.to_string() } else { format!("{}/{}", n, d) }
}

pub fn decode_coeffs(s: &str) -> Result<LaurentPoly, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(LaurentPoly::zero());
    }
    let (offset, coeffs) = s.split_once(':').ok_or_else(|| format!("expected offset:coeffs, got {s:?}"))?;
    let lowest = match offset.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| format!("bad offset {offset:?}"))?;
            let d: i64 = d.trim().parse().map_err(|_| format!("bad offset {offset:?}"))?;
            if d <= 0 || (n * DENOMINATOR) % d != 0 {
                return Err(format!("offset {offset:?} is not a multiple of 1/4"));
            }
            n * DENOMINATOR / d
        }
        None => offset.trim().parse::<i64>().map_err(|_| format!("bad offset {offset:?}"))? * DENOMINATOR,
    };
    let mut terms = Vec::new();
    for (i, c) in coeffs.split(',').enumerate() {
        let c: num_bigint::BigInt = c.trim().parse().map_err(|_| format!("bad coefficient {c:?}"))?;
        terms.push((lowest + DENOMINATOR * i as i64, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn load_table(src: &str) -> Result<Vec<KnotTableEntry>, TableError> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let err = |reason: String| TableError { line, reason };
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("version") {
                let v: u32 = v.trim().parse().map_err(|_| err(format!("bad version {v:?}")))?;
                if v != FORMAT_VERSION {
                    return Err(err(format!("unsupported table version {v}")));
                }
            }
            continue;
        }
        let fields: Vec<&str> = text.split('|').map(str::trim).collect();
        if fields.len() < 4 || fields.len() > 7 {
            return Err(err(format!("expected 4 to 7 fields, found {}", fields.len())));
        }
        let field = |i: usize| fields.get(i).copied().unwrap_or("");
        let name = field(0);
        if name.is_empty() {
            return Err(err("empty name".to_string()));
        }
        let components: usize = field(1).parse().map_err(|_| err(format!("bad component count {:?}", field(1))))?;
        if components == 0 {
            return Err(err("component count must be at least 1".to_string()));
        }
        let crossing_number: u32 =
            field(2).parse().map_err(|_| err(format!("bad crossing number {:?}", field(2))))?;
        let alexander = decode_coeffs(field(3)).map_err(err)?;
        if !alexander.is_zero() {
            let canon = alexander_normalize(&alexander).map_err(|e| err(e.to_string()))?;
            if canon.poly != alexander {
                return Err(err(format!("alexander polynomial {} is not in canonical form", alexander)));
            }
        }
        let jones = match field(4) {
            "" => None,
            s => Some(decode_coeffs(s).map_err(err)?),
        };
        out.push(KnotTableEntry {
            name: name.to_string(),
            components,
            crossing_number,
            alexander,
            jones,
            alias: field(5).to_string(),
            chirality_note: field(6).to_string(),
        });
    }
    Ok(out)
}

pub fn bundled_table() -> Vec<KnotTableEntry> {
    load_table(BUNDLED_TABLE).expect("bundled knot table is valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub name: String,
    pub label: String,
    /// Matched the entry's mirror image (`t -> 1/t` in Jones).
    pub mirrored: bool,
    pub chirality_note: String,
}

impl Match {
    pub fn describe(&self) -> String {
        if self.mirrored {
            format!("{} (mirror image)", self.label)
        } else {
            self.label.clone()
        }
    }
}

/// Entries with the same component count and Alexander polynomial, further
/// filtered by Jones (directly or mirrored) when one is given. The query
/// Alexander polynomial is normalized first. An empty result means
/// unrecognized; more than one means ambiguous.
pub fn lookup(
    table: &[KnotTableEntry],
    alexander: &LaurentPoly,
    jones: Option<&LaurentPoly>,
    components: usize,
) -> Vec<Match> {
    let query = if alexander.is_zero() {
        LaurentPoly::zero()
    } else {
        match alexander_normalize(alexander) {
            Ok(n) => n.poly,
            Err(_) => return Vec::new(),
        }
    };
    let mut out = Vec::new();
    for e in table.iter().filter(|e| e.components == components && e.alexander == query) {
        let mirrored = match (jones, &e.jones) {
            (Some(q), Some(v)) if v == q => false,
            (Some(q), Some(v)) if &v.mirror() == q => true,
            (Some(_), Some(_)) => continue,
            _ => false,
        };
        out.push(Match { name: e.name.clone(), label: e.label(), mirrored, chirality_note: e.chirality_note.clone() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, q)
    }

    #[test]
    fn coefficient_codec() {
        let hopf = t(2) - t(-2);
        assert_eq!(encode_coeffs(&hopf), "-1/2:-1,1");
        assert_eq!(decode_coeffs("-1/2:-1,1").unwrap(), hopf);
        let tre = t(4) - LaurentPoly::one() + t(-4);
        assert_eq!(encode_coeffs(&tre), "-1:1,-1,1");
        assert_eq!(decode_coeffs("0").unwrap(), LaurentPoly::zero());
        assert_eq!(encode_coeffs(&LaurentPoly::zero()), "0");
        assert!(decode_coeffs("1:x").is_err());
        assert!(decode_coeffs("1/3:1").is_err());
        assert!(decode_coeffs("12").is_err());
    }

    #[test]
    fn empty_table() {
        let table = load_table("").unwrap();
        assert!(table.is_empty());
        assert!(lookup(&table, &LaurentPoly::one(), None, 1).is_empty());
    }

    #[test]
    fn malformed_lines() {
        assert_eq!(load_table("a|b").unwrap_err().line, 1);
        assert!(load_table("x|0|0|0:1").is_err());
        assert!(load_table("#version 2\n").is_err());
        // not canonical: t^2 - t + 1
        assert!(load_table("x|1|3|0:1,-1,1").is_err());
        let ok = load_table("# comment\n#version 1\nU|1|0|0:1||unknot\n").unwrap();
        assert_eq!(ok[0].label(), "U / unknot");
    }

    #[test]
    fn bundled_contains_basics() {
        let table = bundled_table();
        let tre = table.iter().find(|e| e.name == "3_1").unwrap();
        assert_eq!(tre.alexander, t(4) - LaurentPoly::one() + t(-4));
        let unknot = table.iter().find(|e| e.name == "0_1").unwrap();
        assert_eq!(unknot.alexander, LaurentPoly::one());
    }

    #[test]
    fn lookup_examples() {
        let table = bundled_table();
        let tre_alex = t(4) - LaurentPoly::one() + t(-4);
        let tre_jones = -t(16) + t(12) + t(4);
        let m = lookup(&table, &tre_alex, Some(&tre_jones), 1);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].name, "3_1");
        let m = lookup(&table, &tre_alex, Some(&tre_jones.mirror()), 1);
        assert!(m[0].mirrored);

        let m = lookup(&table, &(t(2) - t(-2)), Some(&(-t(10) - t(2))), 2);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].label, "L2a1 / positive Hopf link");
        assert!(!m[0].mirrored);

        let m = lookup(&table, &LaurentPoly::one(), Some(&LaurentPoly::one()), 1);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].name, "0_1");

        // unit multiples of the query are normalized away
        let shifted = (t(4) - LaurentPoly::one() + t(-4)).shift(6);
        assert_eq!(lookup(&table, &-shifted, None, 1)[0].name, "3_1");
    }
}
