//! Regenerates `data/knot_table.txt` from the reference braid words.
//!
//! `cargo run -p knotmarket-core --example gen_table > crates/core/data/knot_table.txt`

use knotmarket_core::braid::BraidWord;
use knotmarket_core::classify::{KnotTableEntry, FORMAT_VERSION, REFERENCE_BRAIDS};
use knotmarket_core::invariants::{alexander, jones, Limits};
use knotmarket_core::link::close_braid;

fn main() {
    let limits = Limits::default();
    println!("#version {FORMAT_VERSION}");
    println!("# name|components|crossing_number|alexander|jones|alias|note");
    println!("# Generated by `cargo run -p knotmarket-core --example gen_table` from the");
    println!("# braid words in classify::REFERENCE_BRAIDS. Alexander polynomials were");
    println!("# spot-checked against the classical Rolfsen coefficients. Source rows whose");
    println!("# sign pattern cannot belong to a symmetric polynomial (5_1, 6_2, 7_2, 7_3,");
    println!("# 7_5, 8_2, 8_17) were left out of the check. Jones is given for the closure");
    println!("# of the listed braid; lookup also accepts its mirror (t -> 1/t).");
    for &(name, components, crossings, strands, word, alias) in REFERENCE_BRAIDS {
        let w = BraidWord::parse(word, Some(strands)).expect("reference braid parses");
        let d = close_braid(&w);
        assert_eq!(d.component_count(), components, "{name}");
        let entry = KnotTableEntry {
            name: name.to_string(),
            components,
            crossing_number: crossings,
            alexander: alexander(&d, &limits).expect("alexander"),
            jones: Some(jones(&d, &limits).expect("jones")),
            alias: alias.to_string(),
            chirality_note: format!("closure of {}", if word.is_empty() { "e" } else { word }),
        };
        println!("{}", entry.to_line());
    }
}
