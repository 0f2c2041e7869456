//! Core algorithms for turning a table of closing prices into a braid, closing
//! the braid into a link and computing exact polynomial invariants of it.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the report
//! pipeline and the command line live in the `knotmarket` crate.
//!
//! Pipeline, bottom up:
//!
//! - [`market`]: validated price tables and per-date rank orders.
//! - [`crossings`]: adjacent swaps between consecutive dates, classified as
//!   over- or undercrossings by the size of each stock's move.
//! - [`braid`]: braid words over Artin generators.
//! - [`link`]: braid closures as planar diagrams.
//! - [`invariants`]: Kauffman bracket, Jones, Conway and Alexander polynomials.
//! - [`classify`]: lookup against a bundled knot table.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod braid;
pub mod classify;
pub mod crossings;
pub mod invariants;
pub mod link;
pub mod market;
pub mod poly;

pub use braid::BraidWord;
pub use crossings::{CrossingEvent, Sign};
pub use link::LinkDiagram;
pub use market::{Price, PriceTable, RankSequence};
pub use poly::LaurentPoly;
