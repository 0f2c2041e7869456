//! Closed braids as planar diagrams.
//!
//! Crossings use the usual PD convention: `X[a, b, c, d]` lists the four
//! incident edges counter-clockwise starting from the incoming under-edge,
//! so the under strand runs `a -> c`. The over strand runs `d -> b` at a
//! positive crossing and `b -> d` at a negative one.
//!
//! Time runs up the page. For a letter at position `i` the incoming edges are
//! bottom-left (position `i`) and bottom-right (`i + 1`), the outgoing ones
//! top-left and top-right. A positive letter has the strand from the left
//! on top, which is a positive crossing with this orientation.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::braid::BraidWord;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("edge {0} appears {1} times; every edge must appear exactly twice")]
    EdgeIncidence(u32, usize),
    #[error("crossing sign must be +1 or -1, got {0}")]
    BadSign(i32),
    #[error("edge {0} is not traversed consistently")]
    Orientation(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdCrossing {
    pub sign: i32,
    pub edges: [u32; 4],
}

impl PdCrossing {
    pub fn incoming_over(&self) -> u32 {
        if self.sign > 0 { self.edges[3] } else { self.edges[1] }
    }

    pub fn outgoing_over(&self) -> u32 {
        if self.sign > 0 { self.edges[1] } else { self.edges[3] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<PdCrossing>,
    arc_count: usize,
    free_loops: usize,
    component_count: usize,
    source_word: Option<BraidWord>,
}

impl LinkDiagram {
    /// Builds a diagram from signed PD crossings plus a number of crossingless
    /// circles.
    pub fn from_pd(crossings: Vec<PdCrossing>, free_loops: usize) -> Result<Self, LinkError> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &crossings {
            if x.sign != 1 && x.sign != -1 {
                return Err(LinkError::BadSign(x.sign));
            }
            for &e in &x.edges {
                *count.entry(e).or_default() += 1;
            }
        }
        if let Some((&e, &n)) = count.iter().find(|(_, n)| **n != 2) {
            return Err(LinkError::EdgeIncidence(e, n));
        }
        // each edge must leave exactly one crossing and enter exactly one
        let mut ins: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &crossings {
            *ins.entry(x.edges[0]).or_default() += 1;
            *ins.entry(x.incoming_over()).or_default() += 1;
        }
        if let Some(&e) = count.keys().find(|e| ins.get(e) != Some(&1)) {
            return Err(LinkError::Orientation(e));
        }
        let mut d = LinkDiagram {
            crossings,
            arc_count: count.len(),
            free_loops,
            component_count: 0,
            source_word: None,
        };
        d.component_count = d.trace_components();
        Ok(d)
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Components that meet no crossing at all.
    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn source_word(&self) -> Option<&BraidWord> {
        self.source_word.as_ref()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| i64::from(x.sign)).sum()
    }

    /// Counts closed loops by following edges through crossings: the under
    /// strand joins slots 0 and 2, the over strand slots 1 and 3.
    fn trace_components(&self) -> usize {
        let mut dsu = Dsu::new(self.max_edge() + 1);
        for x in &self.crossings {
            dsu.union(x.edges[0] as usize, x.edges[2] as usize);
            dsu.union(x.edges[1] as usize, x.edges[3] as usize);
        }
        let mut roots: Vec<usize> = self.crossings.iter().map(|x| dsu.find(x.edges[0] as usize)).collect();
        for x in &self.crossings {
            roots.push(dsu.find(x.edges[1] as usize));
        }
        roots.sort_unstable();
        roots.dedup();
        roots.len() + self.free_loops
    }

    pub(crate) fn max_edge(&self) -> usize {
        self.crossings.iter().flat_map(|x| x.edges).max().unwrap_or(0) as usize
    }

    /// `PD[X[1,4,2,5], X[3,6,4,1], ...]`. Crossingless components are not
    /// representable and are omitted.
    pub fn pd_code(&self) -> String {
        let mut s = String::from("PD[");
        for (k, x) in self.crossings.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let [a, b, c, d] = x.edges;
            let _ = write!(s, "X[{},{},{},{}]", a, b, c, d);
        }
        s.push(']');
        s
    }
}

/// Joins each strand's top end to its bottom end at the same position.
///
/// Edges are numbered from 1 consecutively along each component, components
/// taken in order of their smallest starting position.
pub fn close_braid(word: &BraidWord) -> LinkDiagram {
    let n = word.strands();
    // raw edge ids: 0..n are the bottom edges, then two per crossing
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut next = n as u32;
    let mut raw: Vec<PdCrossing> = Vec::with_capacity(word.len());
    for &g in word.letters() {
        let i = g.unsigned_abs() as usize - 1;
        let (bl, br) = (cur[i], cur[i + 1]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        let edges = if g > 0 { [br, tr, tl, bl] } else { [bl, br, tr, tl] };
        raw.push(PdCrossing { sign: g.signum(), edges });
        cur[i] = tl;
        cur[i + 1] = tr;
    }
    // closing: the last edge at each position is the bottom edge there
    let mut alias: Vec<u32> = (0..next).collect();
    for (p, &top) in cur.iter().enumerate() {
        alias[top as usize] = p as u32;
    }
    for x in &mut raw {
        for e in &mut x.edges {
            *e = alias[*e as usize];
        }
    }

    // successor of each edge along its strand
    let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
    for x in &raw {
        succ.insert(x.edges[0], x.edges[2]);
        succ.insert(x.incoming_over(), x.outgoing_over());
    }
    let mut label: BTreeMap<u32, u32> = BTreeMap::new();
    let mut free_loops = 0;
    for cycle in word.cycles() {
        let start = cycle[0] as u32;
        if !succ.contains_key(&start) {
            free_loops += 1;
            continue;
        }
        let mut e = start;
        loop {
            let id = label.len() as u32 + 1;
            label.insert(e, id);
            e = succ[&e];
            if e == start {
                break;
            }
        }
    }
    for x in &mut raw {
        for e in &mut x.edges {
            *e = label[e];
        }
    }
    let mut d = LinkDiagram {
        arc_count: label.len(),
        crossings: raw,
        free_loops,
        component_count: 0,
        source_word: Some(word.clone()),
    };
    d.component_count = d.trace_components();
    d
}

pub fn component_count(d: &LinkDiagram) -> usize {
    d.component_count()
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[allow(dead_code)]
fn edge_histogram(d: &LinkDiagram) -> Vec<usize> {
    let mut h = vec![0; d.max_edge() + 1];
    for x in d.crossings() {
        for &e in &x.edges {
            h[e as usize] += 1;
        }
    }
    h
}
