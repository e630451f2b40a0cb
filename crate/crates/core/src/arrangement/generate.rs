use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rng::{self, GENERATOR};
use crate::scalar::Rational;

pub const DEFAULT_COEFFICIENT_BOUND: i64 = 50;
pub const RETRY_BUDGET: usize = 1000;
/// Denominator grid for the rational circle parametrisation.
const CIRCLE_GRID: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `n` hyperplanes in `R^d` with integer coefficients in `[-bound, bound]`, in general position.
    Random { d: usize, n: usize, bound: i64 },
    /// `counts[j]` hyperplanes `x_j = 1, ..., counts[j]` orthogonal to axis `j`.
    Grid { counts: Vec<usize> },
    /// All lines through pairs of `k` points in convex position near the unit circle.
    CircleDegenerate { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn random(d: usize, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family: Family::Random {
                d,
                n,
                bound: DEFAULT_COEFFICIENT_BOUND,
            },
            seed,
        }
    }

    pub fn grid(counts: &[usize]) -> Self {
        GeneratorSpec {
            family: Family::Grid {
                counts: counts.to_vec(),
            },
            seed: 0,
        }
    }

    pub fn circle(k: usize, seed: u64) -> Self {
        GeneratorSpec {
            family: Family::CircleDegenerate { k },
            seed,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Arrangement> {
    match &spec.family {
        Family::Random { d, n, bound } => random(*d, *n, *bound, spec.seed),
        Family::Grid { counts } => grid(counts),
        Family::CircleDegenerate { k } => circle(*k, spec.seed),
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn random(d: usize, n: usize, bound: i64, seed: u64) -> Result<Arrangement> {
    if d == 0 || n == 0 || n > crate::sign::MAX_HYPERPLANES || bound < 1 {
        return Err(Error::InvalidParams(format!(
            "random family needs d >= 1, 1 <= n <= 64, bound >= 1 (got d={d}, n={n}, bound={bound})"
        )));
    }
    let mut rng = rng::stream(seed, GENERATOR);
    for _ in 0..RETRY_BUDGET {
        let mut hs = Vec::with_capacity(n);
        while hs.len() < n {
            let normal: Vec<Rational> = (0..d).map(|_| int(rng.gen_range(-bound..=bound))).collect();
            let offset = int(rng.gen_range(-bound..=bound));
            if let Ok(h) = Hyperplane::new(normal, offset) {
                hs.push(h);
            }
        }
        let arr = Arrangement::new(d, hs)?;
        if arr.is_general_position() {
            return Ok(arr);
        }
    }
    Err(Error::RetryBudgetExhausted(RETRY_BUDGET))
}

fn grid(counts: &[usize]) -> Result<Arrangement> {
    let d = counts.len();
    let n: usize = counts.iter().sum();
    if d == 0 || n == 0 || n > crate::sign::MAX_HYPERPLANES {
        return Err(Error::InvalidParams(format!(
            "grid family needs at least one axis and 1..=64 hyperplanes (got {counts:?})"
        )));
    }
    let mut hs = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (axis, &c) in counts.iter().enumerate() {
        for t in 1..=c {
            let mut normal = vec![int(0); d];
            normal[axis] = int(1);
            hs.push(Hyperplane::new(normal, int(t as i64))?);
            labels.push(format!("x{}={t}", axis + 1));
        }
    }
    Arrangement::with_labels(d, hs, labels)
}

/// The `k` rational points used by the circle family, in counter-clockwise order.
///
/// Points are `((q²-p²)/(q²+p²), 2pq/(q²+p²))` for `t = p/q` approximating
/// `tan(θ/2)`; they lie exactly on the unit circle, so no three are collinear.
pub fn circle_points(k: usize, seed: u64) -> Result<Vec<[Rational; 2]>> {
    if !(4..=11).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "circle family needs 4 <= k <= 11 (got {k})"
        )));
    }
    let mut rng = rng::stream(seed, GENERATOR);
    let step = std::f64::consts::TAU / k as f64;
    for _ in 0..RETRY_BUDGET {
        let pts: Vec<[Rational; 2]> = (0..k)
            .map(|i| {
                let jitter = rng.gen_range(-0.2..0.2) * step;
                let theta = -std::f64::consts::PI + (i as f64 + 0.5) * step + jitter;
                let p = ((theta / 2.0).tan() * CIRCLE_GRID as f64).round() as i64;
                let q = CIRCLE_GRID;
                let den = q * q + p * p;
                [
                    Rational::new((q * q - p * p).into(), den.into()),
                    Rational::new((2 * p * q).into(), den.into()),
                ]
            })
            .collect();
        if diagonals_generic(&pts) {
            return Ok(pts);
        }
    }
    Err(Error::RetryBudgetExhausted(RETRY_BUDGET))
}

/// Index pairs `(i, j)`, `i < j`, in the order the circle family emits its lines.
pub fn circle_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
}

/// Indices (into the circle family's line list) of the polygon's sides.
pub fn circle_side_lines(k: usize) -> Vec<usize> {
    circle_pairs(k)
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| j == i + 1 || (i == 0 && j == k - 1))
        .map(|(idx, _)| idx)
        .collect()
}

fn line_through(a: &[Rational; 2], b: &[Rational; 2]) -> Hyperplane {
    let normal = vec![b[1].clone() - a[1].clone(), a[0].clone() - b[0].clone()];
    let offset = normal[0].clone() * a[0].clone() + normal[1].clone() * a[1].clone();
    primitive(normal, offset)
}

/// Rescales to coprime integer coefficients.
fn primitive(normal: Vec<Rational>, offset: Rational) -> Hyperplane {
    let all: Vec<&Rational> = normal.iter().chain(std::iter::once(&offset)).collect();
    let lcm = all.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = all
        .iter()
        .map(|r| (*r * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let scale = |v: &BigInt| Rational::from_integer(v / &gcd);
    Hyperplane {
        normal: ints[..normal.len()].iter().map(scale).collect(),
        offset: scale(&ints[normal.len()]),
    }
}

/// No two lines parallel and no three lines on disjoint point pairs concurrent.
fn diagonals_generic(pts: &[[Rational; 2]]) -> bool {
    let pairs = circle_pairs(pts.len());
    let lines: Vec<Hyperplane> = pairs.iter().map(|&(i, j)| line_through(&pts[i], &pts[j])).collect();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if rank(&[lines[a].normal.clone(), lines[b].normal.clone()]) < 2 {
                return false;
            }
        }
    }
    let disjoint = |x: (usize, usize), y: (usize, usize)| x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1;
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if !disjoint(pairs[a], pairs[b]) {
                continue;
            }
            for c in b + 1..lines.len() {
                if !disjoint(pairs[a], pairs[c]) || !disjoint(pairs[b], pairs[c]) {
                    continue;
                }
                let rows: Vec<Vec<Rational>> = [a, b, c]
                    .iter()
                    .map(|&l| {
                        vec![
                            lines[l].normal[0].clone(),
                            lines[l].normal[1].clone(),
                            lines[l].offset.clone(),
                        ]
                    })
                    .collect();
                if rank(&rows) < 3 {
                    return false;
                }
            }
        }
    }
    true
}

fn circle(k: usize, seed: u64) -> Result<Arrangement> {
    let pts = circle_points(k, seed)?;
    let pairs = circle_pairs(k);
    let hs = pairs.iter().map(|&(i, j)| line_through(&pts[i], &pts[j])).collect();
    let labels = pairs.iter().map(|&(i, j)| format!("p{i}p{j}")).collect();
    Arrangement::with_labels(2, hs, labels)
}

/// Chamber sign vectors inside the convex polygon of the circle family.
pub fn circle_interior(arr: &Arrangement, k: usize, seed: u64, chambers: &[super::Face]) -> Result<Vec<usize>> {
    let pts = circle_points(k, seed)?;
    let kq = Rational::from_integer(BigInt::from(k));
    let centroid = [
        pts.iter().map(|p| p[0].clone()).fold(Rational::zero(), |a, b| a + b) / kq.clone(),
        pts.iter().map(|p| p[1].clone()).fold(Rational::zero(), |a, b| a + b) / kq,
    ];
    let reference = arr.sign_vector(&centroid)?;
    let sides = circle_side_lines(k);
    Ok(chambers
        .iter()
        .enumerate()
        .filter(|(_, c)| sides.iter().all(|&e| c.signs.get(e) == reference.get(e)))
        .map(|(i, _)| i)
        .collect())
}
