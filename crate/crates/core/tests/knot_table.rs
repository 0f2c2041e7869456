use knotmarket_core::braid::BraidWord;
use knotmarket_core::classify::{bundled_table, load_table, lookup, KnotTableEntry, REFERENCE_BRAIDS};
use knotmarket_core::invariants::{alexander, jones, Limits};
use knotmarket_core::link::close_braid;
use knotmarket_core::LaurentPoly;

// Rolfsen-style rows: constant term first, then the coefficient shared by
// t^k and t^-k for k = 1, 2, ...
const CLASSICAL: &[(&str, &[i64])] = &[
    ("3_1", &[1, -1]),
    ("4_1", &[3, -1]),
    ("5_2", &[3, -2]),
    ("6_1", &[5, -2]),
    ("6_3", &[5, -3, 1]),
    ("7_1", &[1, -1, 1, -1]),
    ("7_4", &[7, -4]),
    ("7_6", &[7, -5, 1]),
    ("7_7", &[9, -5, 1]),
    ("8_1", &[7, -3]),
    ("8_3", &[9, -4]),
    ("8_4", &[5, -5, 2]),
    ("8_5", &[5, -4, 3, -1]),
    ("8_6", &[7, -6, 2]),
    ("8_7", &[5, -5, 3, -1]),
    ("8_8", &[9, -6, 2]),
    ("8_9", &[7, -5, 3, -1]),
    ("8_10", &[7, -6, 3, -1]),
    ("8_11", &[9, -7, 2]),
    ("8_12", &[13, -7, 1]),
    ("8_13", &[11, -7, 2]),
    ("8_14", &[11, -8, 2]),
    ("8_15", &[11, -8, 3]),
    ("8_16", &[9, -8, 4, -1]),
    ("8_18", &[13, -10, 5, -1]),
    ("8_19", &[1, 0, -1, 1]),
    ("8_20", &[3, -2, 1]),
    ("8_21", &[5, -4, 1]),
];

fn symmetric(row: &[i64]) -> LaurentPoly {
    let mut terms = vec![(0, row[0])];
    for (k, &c) in row.iter().enumerate().skip(1) {
        terms.push((4 * k as i64, c));
        terms.push((-4 * k as i64, c));
    }
    LaurentPoly::from_terms(terms)
}

fn entry(table: &[KnotTableEntry], name: &str) -> KnotTableEntry {
    table.iter().find(|e| e.name == name).unwrap_or_else(|| panic!("{name} missing")).clone()
}

#[test]
fn bundled_file_matches_reference_braids() {
    let table = bundled_table();
    assert_eq!(table.len(), REFERENCE_BRAIDS.len());
    let lim = Limits::default();
    for &(name, components, crossings, strands, word, _) in REFERENCE_BRAIDS {
        let d = close_braid(&BraidWord::parse(word, Some(strands)).unwrap());
        let e = entry(&table, name);
        assert_eq!(e.components, components, "{name}");
        assert_eq!(e.crossing_number, crossings, "{name}");
        assert_eq!(e.alexander, alexander(&d, &lim).unwrap(), "{name}");
        assert_eq!(e.jones.as_ref(), Some(&jones(&d, &lim).unwrap()), "{name}");
    }
}

#[test]
fn classical_alexander_coefficients() {
    let table = bundled_table();
    for &(name, row) in CLASSICAL {
        let want = symmetric(row);
        let got = entry(&table, name).alexander;
        assert!(got == want || got == -want.clone(), "{name}: {got:?}");
    }
}

#[test]
fn knots_have_span_matching_crossings_when_alternating() {
    // every knot here up to 8_18 is alternating, so the Jones span equals
    // the crossing number
    let table = bundled_table();
    for e in table.iter().filter(|e| e.components == 1 && e.crossing_number > 0) {
        let j = e.jones.as_ref().unwrap();
        let span = (j.max_exponent().unwrap() - j.min_exponent().unwrap()) / 4;
        if ["8_19", "8_20", "8_21"].contains(&e.name.as_str()) {
            assert!(span < e.crossing_number as i64, "{}", e.name);
        } else {
            assert_eq!(span, e.crossing_number as i64, "{}", e.name);
        }
    }
}

#[test]
fn no_two_knots_share_both_polynomials() {
    let table = bundled_table();
    for (i, a) in table.iter().enumerate() {
        for b in &table[i + 1..] {
            let ja = a.jones.as_ref().unwrap();
            let jb = b.jones.as_ref().unwrap();
            let same = a.alexander == b.alexander && (ja == jb || &ja.mirror() == jb);
            assert!(!same || a.components != b.components, "{} vs {}", a.name, b.name);
        }
    }
}

#[test]
fn every_entry_finds_itself() {
    let table = bundled_table();
    for e in &table {
        let hits = lookup(&table, &e.alexander, e.jones.as_ref(), e.components);
        assert_eq!(hits.len(), 1, "{}", e.name);
        assert_eq!(hits[0].name, e.name);
        let mirrored = lookup(&table, &e.alexander, e.jones.as_ref().map(|j| j.mirror()).as_ref(), e.components);
        assert_eq!(mirrored[0].name, e.name);
    }
}

#[test]
fn lines_round_trip() {
    let table = bundled_table();
    let text: String = table.iter().map(|e| e.to_line() + "\n").collect();
    assert_eq!(load_table(&format!("#version 1\n{text}")).unwrap(), table);
}
