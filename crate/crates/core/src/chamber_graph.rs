//! The chamber graph: chambers joined across shared facets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use crate::arrangement::{Arrangement, Face};
use crate::bitset::ChamberSet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sign::{IndexSet, Sign, SignVector};

/// Default cap on `n` for the `3^n` convex-set scan.
pub const CONVEX_SCAN_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// The separating hyperplane.
    pub label: usize,
}

#[derive(Debug)]
pub struct ChamberGraph {
    signs: Vec<SignVector>,
    index: HashMap<SignVector, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    neighbor_masks: Option<Vec<u64>>,
    distances: OnceLock<Vec<Vec<u32>>>,
}

/// Adjacency requires an explicit witness for the shared facet.
pub fn build_graph<T: Scalar>(arr: &Arrangement<T>, chambers: &[Face<T>]) -> ChamberGraph {
    let signs: Vec<SignVector> = chambers.iter().map(|c| c.signs).collect();
    let index: HashMap<SignVector, usize> = signs.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut edges = Vec::new();
    for (u, s) in signs.iter().enumerate() {
        for e in 0..arr.len() {
            let Some(&v) = index.get(&s.flipped(e)) else { continue };
            if v < u {
                continue;
            }
            let strict: Vec<(usize, Sign)> = (0..arr.len()).filter(|&f| f != e).map(|f| (f, s.get(f))).collect();
            if arr.feasible_witness(IndexSet::singleton(e), &strict).is_some() {
                edges.push(Edge { u, v, label: e });
            }
        }
    }
    ChamberGraph::from_parts(signs, index, edges)
}

impl ChamberGraph {
    fn from_parts(signs: Vec<SignVector>, index: HashMap<SignVector, usize>, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        let mut adjacency = vec![Vec::new(); signs.len()];
        for e in &edges {
            adjacency[e.u].push((e.v, e.label));
            adjacency[e.v].push((e.u, e.label));
        }
        for a in &mut adjacency {
            a.sort();
        }
        let neighbor_masks = (signs.len() <= 64).then(|| {
            adjacency
                .iter()
                .map(|a| a.iter().fold(0u64, |m, &(v, _)| m | 1 << v))
                .collect()
        });
        ChamberGraph {
            signs,
            index,
            edges,
            adjacency,
            neighbor_masks,
            distances: OnceLock::new(),
        }
    }

    /// A graph given directly by its edges; sign vectors are left empty.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize, usize)]) -> Self {
        let edges = edges
            .iter()
            .map(|&(a, b, label)| Edge {
                u: a.min(b),
                v: a.max(b),
                label,
            })
            .collect();
        Self::from_parts(vec![SignVector::new(0); vertices], HashMap::new(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn signs(&self, v: usize) -> &SignVector {
        &self.signs[v]
    }

    pub fn index_of(&self, s: &SignVector) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Sorted `(neighbor, label)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Neighbor bitmasks, present when there are at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<&[u64]> {
        self.neighbor_masks.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// Size of the edge boundary of `s`.
    pub fn boundary_size(&self, s: &ChamberSet) -> usize {
        if let Some(masks) = &self.neighbor_masks {
            let m = s.mask();
            return s.iter().map(|v| (masks[v] & !m).count_ones() as usize).sum();
        }
        s.iter()
            .map(|v| self.adjacency[v].iter().filter(|(w, _)| !s.contains(*w)).count())
            .sum()
    }

    /// Boundary size and the boundary edges in sorted order.
    pub fn edge_boundary(&self, s: &ChamberSet) -> (usize, Vec<Edge>) {
        let list: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) != s.contains(e.v))
            .copied()
            .collect();
        (list.len(), list)
    }

    /// `vol(S) = Σ_{v∈S} deg v`.
    pub fn volume(&self, s: &ChamberSet) -> usize {
        s.iter().map(|v| self.degree(v)).sum()
    }

    fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs graph distances, computed once.
    pub fn distances(&self) -> &[Vec<u32>] {
        self.distances
            .get_or_init(|| (0..self.vertex_count()).map(|s| self.bfs(s)).collect())
    }

    /// Every shortest path between two members stays inside `s`.
    pub fn is_graph_convex(&self, s: &ChamberSet) -> bool {
        let dist = self.distances();
        let members: Vec<usize> = s.iter().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let dab = dist[a][b];
                if dab == u32::MAX {
                    return false;
                }
                for w in 0..self.vertex_count() {
                    if !s.contains(w) && dist[a][w].saturating_add(dist[w][b]) == dab {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertex_count(),
            "edges": self.edges.iter().map(|e| [e.u, e.v, e.label]).collect::<Vec<_>>(),
        })
    }

    /// One `"u v label"` line per edge.
    pub fn to_edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|e| format!("{} {} {}\n", e.u, e.v, e.label))
            .collect()
    }
}

/// Every nonempty set `{C : C agrees with a partial sign condition}`, sorted and deduplicated.
pub fn enumerate_convex_sets(g: &ChamberGraph, n: usize, cap: usize) -> Result<Vec<ChamberSet>> {
    if n > cap {
        return Err(Error::BudgetExceeded {
            what: "convex-set sign conditions (3^n)",
            needed: 3u128.pow(n as u32),
            budget: 3u128.pow(cap as u32),
        });
    }
    let v = g.vertex_count();
    let mut sides = vec![[ChamberSet::empty(v), ChamberSet::empty(v)]; n];
    for c in 0..v {
        for (e, side) in sides.iter_mut().enumerate() {
            match g.signs(c).get(e) {
                Sign::Neg => side[0].insert(c),
                _ => side[1].insert(c),
            };
        }
    }
    let mut out = BTreeSet::new();
    let mut stack = vec![(0usize, ChamberSet::full(v))];
    while let Some((e, cur)) = stack.pop() {
        if cur.is_empty() {
            continue;
        }
        if e == n {
            out.insert(cur);
            continue;
        }
        stack.push((e + 1, cur.intersection(&sides[e][0])));
        stack.push((e + 1, cur.intersection(&sides[e][1])));
        stack.push((e + 1, cur));
    }
    Ok(out.into_iter().collect())
}
