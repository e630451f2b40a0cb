//! Exhaustive subset traversal in binary-reflected Gray-code order.

use rayon::prelude::*;

use crate::chamber_graph::ChamberGraph;
use crate::error::{Error, Result};

/// Gray codeword with index `i`.
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Edge boundary of a vertex mask from scratch.
pub fn boundary_of(masks: &[u64], set: u64) -> u32 {
    let mut rest = set;
    let mut total = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += (masks[v] & !set).count_ones();
    }
    total
}

/// Walks Gray codewords over the low `bits` vertices, keeping `|∂S|` current in `O(1)` words per step.
#[derive(Clone, Debug)]
pub struct GrayWalker<'a> {
    masks: &'a [u64],
    index: u64,
    set: u64,
    boundary: u32,
}

impl<'a> GrayWalker<'a> {
    pub fn new(masks: &'a [u64], start: u64) -> Self {
        let set = gray(start);
        GrayWalker {
            masks,
            index: start,
            set,
            boundary: boundary_of(masks, set),
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn set(&self) -> u64 {
        self.set
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    /// Advances to the next codeword, which differs in exactly one vertex.
    pub fn step(&mut self) {
        self.index += 1;
        let v = self.index.trailing_zeros() as usize;
        let nb = self.masks[v];
        let inside = (nb & self.set).count_ones();
        let deg = nb.count_ones();
        if self.set >> v & 1 == 1 {
            self.boundary = self.boundary + 2 * inside - deg;
        } else {
            self.boundary = self.boundary + deg - 2 * inside;
        }
        self.set ^= 1 << v;
    }
}

/// Per-size minima of `|∂S|` over every chamber set, with the first witness in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeMinima {
    pub min: Vec<u32>,
    pub witness: Vec<u64>,
}

#[derive(Clone, Debug)]
struct Partial {
    min: Vec<u32>,
    witness: Vec<u64>,
}

impl Partial {
    fn new(len: usize) -> Self {
        Partial {
            min: vec![u32::MAX; len],
            witness: vec![0; len],
        }
    }

    fn record(&mut self, set: u64, boundary: u32) {
        let s = set.count_ones() as usize;
        if boundary < self.min[s] {
            self.min[s] = boundary;
            self.witness[s] = set;
        }
    }

    /// `self` precedes `later` in traversal order, so it wins ties.
    fn merge(mut self, later: Partial) -> Partial {
        for s in 0..self.min.len() {
            if later.min[s] < self.min[s] {
                self.min[s] = later.min[s];
                self.witness[s] = later.witness[s];
            }
        }
        self
    }
}

const CHUNKS: u64 = 1024;

/// Exhaustive per-size minima for graphs with at most 64 vertices.
///
/// The last vertex is held outside the set; sets containing it are covered by
/// their complements, which have the same boundary.
pub fn exhaustive_minima(g: &ChamberGraph, budget: u128) -> Result<SizeMinima> {
    let masks = g.neighbor_masks().ok_or(Error::BudgetExceeded {
        what: "vertices for bitmask search",
        needed: g.vertex_count() as u128,
        budget: 64,
    })?;
    let v = g.vertex_count();
    if v == 0 {
        return Ok(SizeMinima {
            min: vec![0],
            witness: vec![0],
        });
    }
    let free = (v - 1) as u32;
    let total: u128 = 1u128 << free;
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: "subsets in exhaustive search",
            needed: total,
            budget,
        });
    }
    let total = total as u64;
    let chunks = CHUNKS.min(total);
    let per = total / chunks;
    let partial = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * per;
            let end = if c + 1 == chunks { total } else { start + per };
            let mut acc = Partial::new(v + 1);
            let mut w = GrayWalker::new(masks, start);
            acc.record(w.set(), w.boundary());
            while w.index() + 1 < end {
                w.step();
                acc.record(w.set(), w.boundary());
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(Partial::merge)
        .expect("at least one chunk");
    let full = if v == 64 { u64::MAX } else { (1u64 << v) - 1 };
    let mut min = vec![u32::MAX; v + 1];
    let mut witness = vec![0u64; v + 1];
    for s in 0..=v {
        min[s] = partial.min[s];
        witness[s] = partial.witness[s];
        let c = v - s;
        if partial.min[c] < min[s] {
            min[s] = partial.min[c];
            witness[s] = full & !partial.witness[c];
        }
    }
    Ok(SizeMinima { min, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ChamberGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, i)).collect();
        ChamberGraph::from_edges(n, &edges)
    }

    #[test]
    fn walker_matches_scratch_on_cycle() {
        let g = cycle(10);
        let masks = g.neighbor_masks().unwrap();
        let mut w = GrayWalker::new(masks, 0);
        for _ in 0..(1 << 10) - 1 {
            w.step();
            assert_eq!(w.set(), gray(w.index()));
            assert_eq!(w.boundary(), boundary_of(masks, w.set()));
        }
    }

    #[test]
    fn cycle_minima() {
        let g = cycle(8);
        let m = exhaustive_minima(&g, u128::MAX).unwrap();
        assert_eq!(m.min[0], 0);
        assert_eq!(m.min[8], 0);
        for s in 1..8 {
            assert_eq!(m.min[s], 2);
            assert_eq!(m.witness[s].count_ones() as usize, s);
        }
    }

    #[test]
    fn budget_guard() {
        assert!(exhaustive_minima(&cycle(12), 100).is_err());
    }
}
