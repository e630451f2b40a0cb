//! Exhaustive check of the real-parameter Kruskal–Katona inequalities on small ground sets.

use serde::Serialize;

use super::gen_binom;
use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 5;
/// Values available to each weight in a checked sequence.
pub const WEIGHT_LATTICE: [f64; 5] = [1.0, 0.75, 0.5, 0.25, 0.0];
const TOLERANCE: f64 = 1e-9;

/// A subset-closed family on `0..ground`; bit `s` of `family` marks the subset with mask `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DownSet {
    pub ground: usize,
    pub family: u32,
}

impl DownSet {
    pub fn contains(&self, set: u32) -> bool {
        self.family >> set & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.family.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.family == 0
    }

    /// `profile[i] = |D^(i)|`.
    pub fn profile(&self) -> Vec<u64> {
        let mut p = vec![0u64; self.ground + 1];
        for s in 0..1u32 << self.ground {
            if self.contains(s) {
                p[s.count_ones() as usize] += 1;
            }
        }
        p
    }

    /// Largest member size, or `None` for the empty family.
    pub fn rank(&self) -> Option<usize> {
        (0..1u32 << self.ground)
            .filter(|&s| self.contains(s))
            .map(|s| s.count_ones() as usize)
            .max()
    }

    pub fn is_down_closed(&self) -> bool {
        (0..1u32 << self.ground)
            .filter(|&s| self.contains(s))
            .all(|s| (0..self.ground).all(|i| s >> i & 1 == 0 || self.contains(s & !(1 << i))))
    }
}

/// Every down-set on `0..ground`, the empty family included.
pub fn enumerate_down_sets(ground: usize) -> Result<Vec<DownSet>> {
    if ground > MAX_GROUND {
        return Err(Error::BudgetExceeded {
            what: "down-set ground size",
            needed: ground as u128,
            budget: MAX_GROUND as u128,
        });
    }
    let mut order: Vec<u32> = (0..1u32 << ground).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    let mut out = Vec::new();
    extend(ground, &order, 0, 0, &mut out);
    Ok(out)
}

fn extend(ground: usize, order: &[u32], idx: usize, family: u32, out: &mut Vec<DownSet>) {
    let Some(&s) = order.get(idx) else {
        out.push(DownSet { ground, family });
        return;
    };
    extend(ground, order, idx + 1, family, out);
    let closed = (0..ground).all(|i| s >> i & 1 == 0 || family >> (s & !(1 << i)) & 1 == 1);
    if closed {
        extend(ground, order, idx + 1, family | 1 << s, out);
    }
}

/// Smallest `x >= m-1` with `Σ_{i=r}^{m} C(x, i) >= target`.
fn smallest_x(target: f64, r: usize, m: usize) -> f64 {
    let f = |x: f64| (r..=m).map(|i| gen_binom(&x, i)).sum::<f64>();
    let lo0 = m as f64 - 1.0;
    if f(lo0) >= target {
        return lo0;
    }
    let (mut lo, mut hi) = (lo0, lo0 + 1.0);
    while f(hi) < target {
        lo = hi;
        hi *= 2.0;
        hi += 1.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Non-increasing sequences of length `len` over [`WEIGHT_LATTICE`].
pub fn weight_sequences(len: usize) -> Vec<Vec<f64>> {
    fn rec(len: usize, start: usize, cur: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for j in start..WEIGHT_LATTICE.len() {
            cur.push(WEIGHT_LATTICE[j]);
            rec(len, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KkMode {
    /// `|D| <= Σ_{i<=m} C(x,i)` implies `|D^(m)| <= C(x,m)`.
    TopLevel,
    /// Weighted tail sums dominate the binomial tail when the unweighted tails agree.
    WeightedTail,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KkCounterexample {
    pub family: u32,
    pub m: usize,
    pub r: Option<usize>,
    pub x: f64,
    pub weights: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KkReport {
    pub ground: usize,
    pub m: usize,
    pub down_sets: usize,
    pub top_level_checks: u64,
    pub weighted_checks: u64,
    /// `(D, r)` pairs for which no `x >= m-1` satisfies the tail equality.
    pub hypothesis_vacuous: u64,
    pub counterexamples: Vec<KkCounterexample>,
}

/// Checks every down-set of rank at most `m` on `0..ground`.
pub fn kk_oracle(ground: usize, m: usize, mode: KkMode) -> Result<KkReport> {
    let all = enumerate_down_sets(ground)?;
    let mut report = KkReport {
        ground,
        m,
        down_sets: 0,
        top_level_checks: 0,
        weighted_checks: 0,
        hypothesis_vacuous: 0,
        counterexamples: Vec::new(),
    };
    let weights: Vec<Vec<Vec<f64>>> = (0..=m + 1).map(weight_sequences).collect();
    for ds in all.into_iter().filter(|ds| ds.rank().is_none_or(|r| r <= m)) {
        report.down_sets += 1;
        let mut profile = ds.profile();
        profile.resize(m.max(ground) + 1, 0);
        if mode != KkMode::WeightedTail {
            report.top_level_checks += 1;
            let x = smallest_x(ds.len() as f64, 0, m);
            let rhs = gen_binom(&x, m);
            let lhs = profile[m] as f64;
            if lhs > rhs + TOLERANCE * (1.0 + rhs) {
                report.counterexamples.push(KkCounterexample {
                    family: ds.family,
                    m,
                    r: None,
                    x,
                    weights: Vec::new(),
                    lhs,
                    rhs,
                });
            }
        }
        if mode == KkMode::TopLevel {
            continue;
        }
        for r in 0..=m {
            let tail: u64 = profile[r..=m].iter().sum();
            let floor: f64 = (r..=m).map(|i| gen_binom(&(m as f64 - 1.0), i)).sum();
            if (tail as f64) < floor {
                report.hypothesis_vacuous += 1;
                continue;
            }
            let x = smallest_x(tail as f64, r, m);
            for w in &weights[m - r + 1] {
                report.weighted_checks += 1;
                let lhs: f64 = (r..=m).map(|i| w[i - r] * profile[i] as f64).sum();
                let rhs: f64 = (r..=m).map(|i| w[i - r] * gen_binom(&x, i)).sum();
                if lhs < rhs - TOLERANCE * (1.0 + rhs.abs()) {
                    report.counterexamples.push(KkCounterexample {
                        family: ds.family,
                        m,
                        r: Some(r),
                        x,
                        weights: w.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all families: the subset-closed ones.
    fn brute_count(ground: usize) -> usize {
        (0..1u64 << (1 << ground))
            .filter(|&f| {
                DownSet {
                    ground,
                    family: f as u32,
                }
                .is_down_closed()
            })
            .count()
    }

    #[test]
    fn down_set_counts_match_brute_force() {
        for g in 0..=4 {
            let ds = enumerate_down_sets(g).unwrap();
            assert_eq!(ds.len(), brute_count(g), "ground {g}");
            assert!(ds.iter().all(|d| d.is_down_closed()));
        }
        assert_eq!(enumerate_down_sets(5).unwrap().len(), 7581);
        assert!(enumerate_down_sets(6).is_err());
    }

    #[test]
    fn ground_three_rank_two() {
        let r = kk_oracle(3, 2, KkMode::Both).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(r.down_sets >= 18);
    }

    #[test]
    fn power_set_is_tight() {
        let full = DownSet {
            ground: 3,
            family: 0xff,
        };
        assert_eq!(full.profile(), vec![1, 3, 3, 1]);
        assert_eq!(smallest_x(8.0, 0, 3), 3.0);
        assert_eq!(gen_binom(&3.0f64, 3), 1.0);
    }

    #[test]
    fn empty_set_only() {
        let d = DownSet { ground: 3, family: 1 };
        assert_eq!(d.rank(), Some(0));
        for m in 0..=3 {
            let x = smallest_x(1.0, 0, m);
            let top = if m == 0 { 1.0 } else { 0.0 };
            assert!(top <= gen_binom(&x, m) + 1e-12);
        }
    }

    #[test]
    fn weight_sequence_count() {
        // multisets of size len from 5 values
        assert_eq!(weight_sequences(1).len(), 5);
        assert_eq!(weight_sequences(3).len(), 35);
        assert!(weight_sequences(4).iter().all(|w| w.windows(2).all(|p| p[0] >= p[1])));
    }
}
