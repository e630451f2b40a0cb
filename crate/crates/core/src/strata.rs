//! Stratification of the thickening `T_S` of a chamber set.
//!
//! A face belongs to `T_S` iff every chamber whose closure contains it is in
//! `S`. The stratum on the flat `L_A` is the union of member faces whose zero
//! set contains `A`; its components come from union-find over closure pairs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arrangement::{Arrangement, Face};
use crate::bitset::ChamberSet;
use crate::chamber_graph::ChamberGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sign::{IndexSet, Sign, SignVector};

/// Face incidence data for one arrangement, shared by every `stratify` call.
#[derive(Debug)]
pub struct Stratifier {
    d: usize,
    n: usize,
    /// Largest zero set among the faces; exceeds `d` only without general position.
    max_codim: usize,
    signs: Vec<SignVector>,
    incident: Vec<ChamberSet>,
    /// `below[f]`: faces in the closure of face `f`, itself excluded.
    below: Vec<Vec<u32>>,
    above: Vec<Vec<u32>>,
    by_zero_set: BTreeMap<IndexSet, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stratification {
    pub size: usize,
    /// Face ids in `T_S`, ascending.
    pub members: Vec<usize>,
    /// Sorted by size, then lexicographically.
    pub support: Vec<IndexSet>,
    /// Components of each stratum as sorted face-id lists, ordered by smallest face id.
    pub components: BTreeMap<IndexSet, Vec<Vec<usize>>>,
    pub bounding: BTreeMap<IndexSet, IndexSet>,
    /// `conn_counts[i] = Σ_{|A|=i} |conn(T_S(A))|`.
    pub conn_counts: Vec<usize>,
}

impl Stratification {
    pub fn is_strata_connected(&self) -> bool {
        self.components.values().all(|c| c.len() == 1)
    }

    pub fn component_total(&self) -> usize {
        self.conn_counts.iter().sum()
    }

    /// `Σ_{A∈supp(S)} |b(A)|`.
    pub fn bounding_total(&self) -> usize {
        self.bounding.values().map(|b| b.len()).sum()
    }

    pub fn in_support(&self, a: IndexSet) -> bool {
        self.components.contains_key(&a)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let components: BTreeMap<String, usize> =
            self.components.iter().map(|(a, c)| (a.to_string(), c.len())).collect();
        let bounding: BTreeMap<String, Vec<usize>> =
            self.bounding.iter().map(|(a, b)| (a.to_string(), b.to_vec())).collect();
        serde_json::json!({
            "support": self.support.iter().map(|a| a.to_vec()).collect::<Vec<_>>(),
            "components": components,
            "bounding": bounding,
            "connCounts": self.conn_counts,
        })
    }
}

/// The bipartite graph gluing the two sides of `H_e` inside `L_A` through `T_S(A ∪ {e})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GluingGraph {
    pub e: usize,
    pub a: IndexSet,
    /// Components of `T_{S+}(A)`.
    pub left: Vec<Vec<usize>>,
    /// Components of `T_{S-}(A)`.
    pub right: Vec<Vec<usize>>,
    /// `(left, right)` endpoints of each component of `T_S(A ∪ {e})`, in component order.
    pub edges: Vec<(usize, usize)>,
    pub component_count: usize,
    /// `|conn(T_S(A))|`.
    pub stratum_components: usize,
}

impl GluingGraph {
    /// Components of the gluing graph match those of the stratum.
    pub fn bijection_holds(&self) -> bool {
        self.component_count == self.stratum_components
    }

    /// `(|conn⁺| + |conn⁻|, |conn(A)| + |conn(A∪{e})|)`.
    pub fn inequality_sides(&self) -> (usize, usize) {
        (
            self.left.len() + self.right.len(),
            self.stratum_components + self.edges.len(),
        )
    }

    pub fn inequality_holds(&self) -> bool {
        let (l, r) = self.inequality_sides();
        l <= r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftViolation {
    pub e: usize,
    pub a: IndexSet,
    pub f: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub checked: usize,
    pub violations: Vec<LiftViolation>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Keeps the smaller root.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi as usize] = lo;
        true
    }
}

impl Stratifier {
    /// `faces` must list every face of the arrangement (codimension up to `d`).
    pub fn new<T: Scalar>(arr: &Arrangement<T>, faces: &[Face<T>], g: &ChamberGraph) -> Result<Self> {
        let signs: Vec<SignVector> = faces.iter().map(|f| f.signs).collect();
        let universe = g.vertex_count();
        let mut incident = Vec::with_capacity(signs.len());
        for f in &signs {
            let mut set = ChamberSet::empty(universe);
            for v in 0..universe {
                if f.conforms_to(g.signs(v)) {
                    set.insert(v);
                }
            }
            if set.is_empty() {
                return Err(Error::InvalidArrangement(format!(
                    "face {f} has no incident chamber in the graph"
                )));
            }
            incident.push(set);
        }
        let mut below = vec![Vec::new(); signs.len()];
        let mut above = vec![Vec::new(); signs.len()];
        for (fi, f) in signs.iter().enumerate() {
            for (gi, gs) in signs.iter().enumerate() {
                // conformity puts the open segment from G's witness to F's inside F, so G ⊂ closure(F)
                if gi != fi && gs.conforms_to(f) {
                    below[fi].push(gi as u32);
                    above[gi].push(fi as u32);
                }
            }
        }
        let mut by_zero_set: BTreeMap<IndexSet, Vec<usize>> = BTreeMap::new();
        for (i, f) in signs.iter().enumerate() {
            by_zero_set.entry(f.zero_set()).or_default().push(i);
        }
        let max_codim = signs.iter().map(|s| s.zero_set().len()).max().unwrap_or(0);
        Ok(Stratifier {
            d: arr.dim(),
            n: arr.len(),
            max_codim,
            signs,
            incident,
            below,
            above,
            by_zero_set,
        })
    }

    pub fn face_count(&self) -> usize {
        self.signs.len()
    }

    pub fn face_signs(&self, f: usize) -> &SignVector {
        &self.signs[f]
    }

    /// Chambers whose closure contains face `f`.
    pub fn incident_chambers(&self, f: usize) -> &ChamberSet {
        &self.incident[f]
    }

    /// Faces whose zero set is exactly `a`.
    pub fn faces_on(&self, a: IndexSet) -> &[usize] {
        self.by_zero_set.get(&a).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn membership(&self, s: &ChamberSet) -> Vec<bool> {
        self.incident.iter().map(|c| c.is_subset(s)).collect()
    }

    fn support_of(&self, member: &[bool]) -> BTreeSet<IndexSet> {
        let tops: BTreeSet<IndexSet> = (0..member.len())
            .filter(|&f| member[f])
            .map(|f| self.signs[f].zero_set())
            .collect();
        tops.iter().flat_map(|z| z.subsets()).collect()
    }

    fn components_of(&self, member: &[bool], a: IndexSet, uf: &mut UnionFind) -> Vec<Vec<usize>> {
        let faces: Vec<usize> = (0..member.len())
            .filter(|&f| member[f] && a.is_subset(self.signs[f].zero_set()))
            .collect();
        for &f in &faces {
            uf.parent[f] = f as u32;
        }
        for &f in &faces {
            for &g in &self.below[f] {
                if member[g as usize] {
                    uf.union(f as u32, g);
                }
            }
        }
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &f in &faces {
            let root = uf.find(f as u32);
            groups.entry(root).or_default().push(f);
        }
        groups.into_values().collect()
    }

    fn bounding_of(&self, member: &[bool], a: IndexSet) -> IndexSet {
        let mut all_pos = u64::MAX;
        let mut all_neg = u64::MAX;
        let mut touched = 0u64;
        for f in 0..member.len() {
            if !member[f] || !a.is_subset(self.signs[f].zero_set()) {
                continue;
            }
            all_pos &= self.signs[f].positive().bits();
            all_neg &= self.signs[f].negative().bits();
            touched |= self.signs[f].zero_set().bits();
            for &g in &self.below[f] {
                touched |= self.signs[g as usize].zero_set().bits();
            }
        }
        IndexSet((all_pos | all_neg) & touched & !a.bits())
    }

    pub fn stratify(&self, s: &ChamberSet) -> Stratification {
        self.stratify_members(s.len(), &self.membership(s))
    }

    fn stratify_members(&self, size: usize, member: &[bool]) -> Stratification {
        let support = self.support_of(member);
        let mut uf = UnionFind::new(member.len());
        let mut components = BTreeMap::new();
        let mut bounding = BTreeMap::new();
        let mut conn_counts = vec![0usize; self.d.min(self.n).max(self.max_codim) + 1];
        for &a in &support {
            let comps = self.components_of(member, a, &mut uf);
            conn_counts[a.len()] += comps.len();
            components.insert(a, comps);
            bounding.insert(a, self.bounding_of(member, a));
        }
        Stratification {
            size,
            members: (0..member.len()).filter(|&f| member[f]).collect(),
            support: support.into_iter().collect(),
            components,
            bounding,
            conn_counts,
        }
    }

    fn side(&self, s: &ChamberSet, g: &ChamberGraph, e: usize, sign: Sign) -> ChamberSet {
        ChamberSet::from_indices(s.universe(), s.iter().filter(|&c| g.signs(c).get(e) == sign))
    }

    pub fn gluing_graph(&self, g: &ChamberGraph, s: &ChamberSet, e: usize, a: IndexSet) -> Result<GluingGraph> {
        if a.contains(e) {
            return Err(Error::HyperplaneInSet { e, set: a });
        }
        let member = self.membership(s);
        if !self.support_of(&member).contains(&a) {
            return Err(Error::NotInSupport(a));
        }
        let mut uf = UnionFind::new(member.len());
        let stratum = self.components_of(&member, a, &mut uf);
        let crossing = self.components_of(&member, a.with(e), &mut uf);
        let plus = self.components_of(&self.membership(&self.side(s, g, e, Sign::Pos)), a, &mut uf);
        let minus = self.components_of(&self.membership(&self.side(s, g, e, Sign::Neg)), a, &mut uf);
        let locate = |comps: &[Vec<usize>], piece: &[usize]| -> Result<usize> {
            let mut owner = vec![usize::MAX; member.len()];
            for (i, c) in comps.iter().enumerate() {
                for &f in c {
                    owner[f] = i;
                }
            }
            let hits: BTreeSet<usize> = piece
                .iter()
                .flat_map(|&gface| self.above[gface].iter().map(|&f| owner[f as usize]))
                .filter(|&o| o != usize::MAX)
                .collect();
            match hits.len() {
                1 => Ok(*hits.first().unwrap()),
                k => Err(Error::AmbiguousGluing(format!(
                    "crossing component touches {k} components on one side of hyperplane {e}"
                ))),
            }
        };
        let mut edges = Vec::with_capacity(crossing.len());
        for piece in &crossing {
            edges.push((locate(&plus, piece)?, locate(&minus, piece)?));
        }
        let mut guf = UnionFind::new(plus.len() + minus.len());
        let mut count = plus.len() + minus.len();
        for &(l, r) in &edges {
            if guf.union(l as u32, (plus.len() + r) as u32) {
                count -= 1;
            }
        }
        Ok(GluingGraph {
            e,
            a,
            left: plus,
            right: minus,
            edges,
            component_count: count,
            stratum_components: stratum.len(),
        })
    }

    /// Checks that every bounding hyperplane of `T_S(A)`, `e ∈ A`, bounds both
    /// half-strata `T_{S±}(A∖{e})` or bounds one and meets the other.
    pub fn check_bound_lifts(&self, g: &ChamberGraph, s: &ChamberSet) -> Result<LiftReport> {
        let strat = self.stratify(s);
        if !strat.is_strata_connected() {
            return Err(Error::InvalidParams("set is not strata-connected".into()));
        }
        let mut report = LiftReport::default();
        for e in 0..self.n {
            if !strat.in_support(IndexSet::singleton(e)) {
                continue;
            }
            let plus = self.stratify(&self.side(s, g, e, Sign::Pos));
            let minus = self.stratify(&self.side(s, g, e, Sign::Neg));
            for (&a, b) in &strat.bounding {
                if !a.contains(e) {
                    continue;
                }
                let a_prime = a.without(e);
                for f in b.iter() {
                    report.checked += 1;
                    let bounds = |t: &Stratification| t.bounding.get(&a_prime).is_some_and(|bb| bb.contains(f));
                    let meets = |t: &Stratification| t.in_support(a_prime.with(f));
                    let ok = (bounds(&plus) && bounds(&minus))
                        || (bounds(&plus) && meets(&minus))
                        || (bounds(&minus) && meets(&plus));
                    if !ok {
                        report.violations.push(LiftViolation { e, a, f });
                    }
                }
            }
        }
        Ok(report)
    }

    /// Number of strata with `|A| = i` that cover their whole flat, per `i`.
    pub fn full_flat_counts(&self, strat: &Stratification) -> Vec<usize> {
        let member: BTreeSet<usize> = strat.members.iter().copied().collect();
        let mut counts = vec![0usize; strat.conn_counts.len()];
        for &a in strat.components.keys() {
            let full = self
                .by_zero_set
                .iter()
                .filter(|(z, _)| a.is_subset(**z))
                .all(|(_, fs)| fs.iter().all(|f| member.contains(f)));
            if full {
                counts[a.len()] += 1;
            }
        }
        counts
    }

    /// `(L, M)`: whole lines and whole planes inside `T_S` of a 3-dimensional arrangement.
    pub fn full_flats(&self, strat: &Stratification) -> Result<(usize, usize)> {
        if self.d != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                actual: self.d,
            });
        }
        let counts = self.full_flat_counts(strat);
        Ok((counts.get(2).copied().unwrap_or(0), counts.get(1).copied().unwrap_or(0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_chambers, enumerate_faces, Hyperplane};
    use crate::chamber_graph::build_graph;
    use crate::scalar::rational;

    fn line(a: i64, b: i64, c: i64) -> Hyperplane {
        Hyperplane::new(vec![rational(a, 1), rational(b, 1)], rational(c, 1)).unwrap()
    }

    fn setup(arr: &Arrangement) -> (ChamberGraph, Stratifier) {
        let g = build_graph(arr, &enumerate_chambers(arr));
        let st = Stratifier::new(arr, &enumerate_faces(arr, arr.dim()), &g).unwrap();
        (g, st)
    }

    #[test]
    fn everything_has_full_support_and_no_boundary() {
        let arr = Arrangement::new(2, vec![line(0, 1, 1), line(-1, 1, 0), line(1, 1, 0)]).unwrap();
        let (g, st) = setup(&arr);
        let s = st.stratify(&ChamberSet::full(g.vertex_count()));
        assert_eq!(s.support.len(), 7);
        assert!(s.bounding.values().all(|b| b.is_empty()));
        assert!(s.is_strata_connected());
    }

    #[test]
    fn opposite_quadrants_disconnected() {
        let arr = Arrangement::new(2, vec![line(1, 0, 0), line(0, 1, 0)]).unwrap();
        let (g, st) = setup(&arr);
        let pp = g.index_of(&SignVector::from_signs(&[Sign::Pos, Sign::Pos])).unwrap();
        let nn = g.index_of(&SignVector::from_signs(&[Sign::Neg, Sign::Neg])).unwrap();
        let s = st.stratify(&ChamberSet::from_indices(4, [pp, nn]));
        assert!(!s.is_strata_connected());
        assert_eq!(s.components[&IndexSet::EMPTY].len(), 2);
        assert!(st.stratify(&ChamberSet::from_indices(4, [pp])).is_strata_connected());
    }

    #[test]
    fn gluing_errors() {
        let arr = Arrangement::new(2, vec![line(1, 0, 0), line(0, 1, 0)]).unwrap();
        let (g, st) = setup(&arr);
        let s = ChamberSet::from_indices(4, [0]);
        assert!(matches!(
            st.gluing_graph(&g, &s, 0, IndexSet::singleton(0)),
            Err(Error::HyperplaneInSet { .. })
        ));
        assert!(matches!(
            st.gluing_graph(&g, &s, 0, IndexSet::singleton(1)),
            Err(Error::NotInSupport(_))
        ));
    }

    #[test]
    fn full_flats_requires_dimension_three() {
        let arr = Arrangement::new(2, vec![line(1, 0, 0)]).unwrap();
        let (g, st) = setup(&arr);
        let s = st.stratify(&ChamberSet::full(g.vertex_count()));
        assert!(st.full_flats(&s).is_err());
        assert_eq!(st.full_flat_counts(&s), vec![1, 1]);
    }
}
