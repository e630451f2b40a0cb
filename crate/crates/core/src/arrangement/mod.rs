//! Exact affine hyperplane arrangements: chambers, faces and general position.

mod generate;
mod io;

pub use generate::{
    circle_interior, circle_points, circle_side_lines, generate, Family, GeneratorSpec, DEFAULT_COEFFICIENT_BOUND,
};
pub use io::{ArrangementFile, HyperplaneFile};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{self, Constraint, Relation};
use crate::linalg::{dot, rank};
use crate::scalar::{Rational, Scalar};
use crate::sign::{IndexSet, Sign, SignVector, MAX_HYPERPLANES};

/// The hyperplane `{x : normal · x = offset}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<T = Rational> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Hyperplane<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Result<Self> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidArrangement("zero normal vector".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Exact sign of `normal · x - offset`.
    pub fn sign_at(&self, x: &[T]) -> Result<Sign> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        let v = dot(&self.normal, x) - self.offset.clone();
        Ok(if v.is_positive() {
            Sign::Pos
        } else if v.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        })
    }

    fn constraint(&self, sign: Sign) -> Constraint<T> {
        match sign {
            Sign::Zero => Constraint::new(self.normal.clone(), Relation::Eq, self.offset.clone()),
            Sign::Pos => Constraint::new(self.normal.clone(), Relation::Gt, self.offset.clone()),
            Sign::Neg => Constraint::new(
                self.normal.iter().map(|c| -c.clone()).collect(),
                Relation::Gt,
                -self.offset.clone(),
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Normals of at most `d` hyperplanes are linearly dependent.
    RankDeficient,
    /// `d + 1` hyperplanes share a common point.
    CommonPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: IndexSet,
}

/// Proof that every `k <= d` hyperplanes meet in a `(d-k)`-flat and no `d+1` share a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subsets_checked: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralPosition {
    Certified(Certificate),
    Violated(Violation),
}

/// `n` hyperplanes in `R^d`, indexed `0..n`.
#[derive(Clone, Debug)]
pub struct Arrangement<T = Rational> {
    dim: usize,
    hyperplanes: Vec<Hyperplane<T>>,
    labels: Vec<String>,
    general_position: GeneralPosition,
}

impl<T: Scalar> Arrangement<T> {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane<T>>) -> Result<Self> {
        let labels = (1..=hyperplanes.len()).map(|i| format!("H{i}")).collect();
        Self::with_labels(dim, hyperplanes, labels)
    }

    pub fn with_labels(dim: usize, hyperplanes: Vec<Hyperplane<T>>, labels: Vec<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArrangement("dimension must be at least 1".into()));
        }
        if hyperplanes.is_empty() || hyperplanes.len() > MAX_HYPERPLANES {
            return Err(Error::InvalidArrangement(format!(
                "need 1..={MAX_HYPERPLANES} hyperplanes, got {}",
                hyperplanes.len()
            )));
        }
        if labels.len() != hyperplanes.len() {
            return Err(Error::InvalidArrangement("one label per hyperplane".into()));
        }
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: h.dim(),
                });
            }
            if h.normal.iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidArrangement("zero normal vector".into()));
            }
        }
        let general_position = check_general_position(dim, &hyperplanes);
        Ok(Arrangement {
            dim,
            hyperplanes,
            labels,
            general_position,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane<T>] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, e: usize) -> &Hyperplane<T> {
        &self.hyperplanes[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn general_position(&self) -> GeneralPosition {
        self.general_position
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self.general_position {
            GeneralPosition::Certified(c) => Some(c),
            GeneralPosition::Violated(_) => None,
        }
    }

    pub fn is_general_position(&self) -> bool {
        self.certificate().is_some()
    }

    /// Refuses arrangements without a general-position certificate.
    pub fn require_general_position(&self) -> Result<Certificate> {
        match self.general_position {
            GeneralPosition::Certified(c) => Ok(c),
            GeneralPosition::Violated(v) => Err(Error::NotGeneralPosition(v.indices)),
        }
    }

    pub fn sign_vector(&self, x: &[T]) -> Result<SignVector> {
        let mut sv = SignVector::new(self.len());
        for (e, h) in self.hyperplanes.iter().enumerate() {
            sv.set(e, h.sign_at(x)?);
        }
        Ok(sv)
    }

    /// A point in the relatively open polyhedron cut out by `equalities` and the
    /// strict sign conditions, if it is nonempty.
    pub fn feasible_witness(&self, equalities: IndexSet, strict: &[(usize, Sign)]) -> Option<Vec<T>> {
        debug_assert!(strict.iter().all(|&(e, s)| s != Sign::Zero && !equalities.contains(e)));
        let mut cs: Vec<Constraint<T>> = equalities
            .iter()
            .map(|e| self.hyperplanes[e].constraint(Sign::Zero))
            .collect();
        cs.extend(strict.iter().map(|&(e, s)| self.hyperplanes[e].constraint(s)));
        feasibility::solve(self.dim, &cs)
    }

    /// Witness for a (possibly partial) covector given on the first `signs.len()` hyperplanes.
    pub fn realize(&self, signs: &SignVector) -> Option<Vec<T>> {
        let strict: Vec<(usize, Sign)> = signs.signs().enumerate().filter(|(_, s)| *s != Sign::Zero).collect();
        self.feasible_witness(signs.zero_set(), &strict)
    }

    /// True when the closed chamber with sign vector `signs` contains no ray.
    pub fn is_bounded_region(&self, signs: &SignVector) -> bool {
        let mut cs: Vec<Constraint<T>> = Vec::new();
        for (e, s) in signs.signs().enumerate() {
            let h = &self.hyperplanes[e];
            let coeffs: Vec<T> = match s {
                Sign::Pos => h.normal.clone(),
                Sign::Neg => h.normal.iter().map(|c| -c.clone()).collect(),
                Sign::Zero => {
                    cs.push(Constraint::new(h.normal.clone(), Relation::Eq, T::zero()));
                    continue;
                }
            };
            cs.push(Constraint::new(coeffs, Relation::Ge, T::zero()));
        }
        for j in 0..self.dim {
            for unit in [T::one(), -T::one()] {
                let mut coeffs = vec![T::zero(); self.dim];
                coeffs[j] = unit;
                let mut all = cs.clone();
                all.push(Constraint::new(coeffs, Relation::Ge, T::one()));
                if feasibility::solve(self.dim, &all).is_some() {
                    return false;
                }
            }
        }
        true
    }
}

fn check_general_position<T: Scalar>(dim: usize, hs: &[Hyperplane<T>]) -> GeneralPosition {
    let n = hs.len();
    let mut checked = 0u64;
    for k in 1..=dim.min(n) {
        for subset in combinations(n, k) {
            checked += 1;
            let rows: Vec<Vec<T>> = subset.iter().map(|&e| hs[e].normal.clone()).collect();
            if rank(&rows) < k {
                return GeneralPosition::Violated(Violation {
                    kind: ViolationKind::RankDeficient,
                    indices: IndexSet::from_indices(subset),
                });
            }
        }
    }
    if n > dim {
        for subset in combinations(n, dim + 1) {
            checked += 1;
            let rows: Vec<Vec<T>> = subset
                .iter()
                .map(|&e| {
                    let mut r = hs[e].normal.clone();
                    r.push(hs[e].offset.clone());
                    r
                })
                .collect();
            if rank(&rows) <= dim {
                return GeneralPosition::Violated(Violation {
                    kind: ViolationKind::CommonPoint,
                    indices: IndexSet::from_indices(subset),
                });
            }
        }
    }
    GeneralPosition::Certified(Certificate {
        subsets_checked: checked,
    })
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// A cell of the arrangement together with a point in its relative interior.
#[derive(Clone, Debug, PartialEq)]
pub struct Face<T = Rational> {
    pub signs: SignVector,
    pub witness: Vec<T>,
}

impl<T> Face<T> {
    pub fn zero_set(&self) -> IndexSet {
        self.signs.zero_set()
    }

    /// Dimension `d - |A|`; exact under general position.
    pub fn dim(&self, d: usize) -> usize {
        d.saturating_sub(self.zero_set().len())
    }
}

/// All faces whose zero set has at most `max_codim` elements, ordered by
/// zero set (size, then lexicographic) and then by sign vector.
///
/// Built incrementally: each realizable covector on the first `e`
/// hyperplanes is extended by every realizable sign on hyperplane `e`.
pub fn enumerate_faces<T: Scalar>(arr: &Arrangement<T>, max_codim: usize) -> Vec<Face<T>> {
    let mut cells: Vec<(SignVector, Vec<T>)> = vec![(SignVector::new(0), vec![T::zero(); arr.dim()])];
    for e in 0..arr.len() {
        let h = arr.hyperplane(e);
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (sv, w) in cells {
            let current = h.sign_at(&w).expect("witness has arrangement dimension");
            let zeros = sv.zero_set().len();
            for option in [Sign::Neg, Sign::Zero, Sign::Pos] {
                if option == Sign::Zero && zeros >= max_codim {
                    continue;
                }
                let ext = sv.push(option);
                if option == current {
                    next.push((ext, w.clone()));
                } else if let Some(x) = arr.realize(&ext) {
                    next.push((ext, x));
                }
            }
        }
        cells = next;
    }
    let mut faces: Vec<Face<T>> = cells
        .into_iter()
        .map(|(signs, witness)| Face { signs, witness })
        .collect();
    faces.sort_by(|a, b| a.zero_set().cmp(&b.zero_set()).then(a.signs.cmp(&b.signs)));
    faces
}

/// All chambers in lexicographic sign order (`-` before `+`).
pub fn enumerate_chambers<T: Scalar>(arr: &Arrangement<T>) -> Vec<Face<T>> {
    enumerate_faces(arr, 0)
}

/// Face indices grouped by zero set.
pub fn group_by_zero_set<T>(faces: &[Face<T>]) -> BTreeMap<IndexSet, Vec<usize>> {
    let mut out: BTreeMap<IndexSet, Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        out.entry(f.zero_set()).or_default().push(i);
    }
    out
}

/// `Σ_{i=0}^{d} C(n, i)`: the number of chambers of `n` hyperplanes in general position in `R^d`.
pub fn general_position_chamber_count(n: usize, d: usize) -> u128 {
    (0..=d).map(|i| crate::bounds::binom_exact(n as u64, i as u64)).sum()
}
