//! Numeric checks of the two binomial lemmas behind the weighted convex bound.

use serde::Serialize;

use super::{binom_prefix, gen_binom};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const TOLERANCE: f64 = 1e-9;

fn choose<T: Scalar>(n: usize, i: usize) -> T {
    T::from_u128(super::binom_exact(n as u64, i as u64)).expect("binomial fits the scalar type")
}

/// `A(b,k) = Σ_{i<=d-b} C(n-b,i) + Σ_{i=d-b+1}^{d} C(k,i)` and
/// `B(b,k) = Σ_{i<=d-b} b·C(n-b,i) + Σ_{i=d-b+1}^{d-1} (d-i)·C(k,i)`.
pub fn weighted_ab<T: Scalar>(n: usize, d: usize, b: usize, k: &T) -> Result<(T, T)> {
    if !(0 < d && d < n) || !(1..=d).contains(&b) {
        return Err(Error::InvalidParams(format!(
            "need 0 < d < n and 1 <= b <= d (n={n}, d={d}, b={b})"
        )));
    }
    let bt = T::from_int(b as i64);
    let mut a = T::zero();
    let mut bb = T::zero();
    for i in 0..=d - b {
        let c: T = choose(n - b, i);
        a = a + c.clone();
        bb = bb + bt.clone() * c;
    }
    for i in d - b + 1..=d {
        let c = gen_binom(k, i);
        a = a + c.clone();
        if i < d {
            bb = bb + T::from_int((d - i) as i64) * c;
        }
    }
    Ok((a, bb))
}

fn a_value(n: usize, d: usize, b: usize, k: f64) -> f64 {
    weighted_ab(n, d, b, &k).expect("validated parameters").0
}

/// Admissible range of `A(b, ·)` over `k ∈ [d-1, n-d]`.
pub fn a_range(n: usize, d: usize, b: usize) -> (f64, f64) {
    (a_value(n, d, b, d as f64 - 1.0), a_value(n, d, b, (n - d) as f64))
}

/// The `k_b ∈ [d-1, n-d]` with `A(b, k_b) = target`.
pub fn solve_kb(n: usize, d: usize, b: usize, target: f64) -> Result<f64> {
    weighted_ab(n, d, b, &0.0)?;
    let (lo_k, hi_k) = (d as f64 - 1.0, (n - d) as f64);
    if lo_k > hi_k {
        return Err(Error::RootOutOfRange {
            k: f64::NAN,
            lo: lo_k,
            hi: hi_k,
        });
    }
    let (alo, ahi) = a_range(n, d, b);
    let slack = TOLERANCE * target.abs().max(1.0);
    if target < alo - slack || target > ahi + slack {
        let k = if target < alo { f64::NEG_INFINITY } else { f64::INFINITY };
        return Err(Error::RootOutOfRange { k, lo: lo_k, hi: hi_k });
    }
    let (mut lo, mut hi) = (lo_k, hi_k);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if a_value(n, d, b, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepCheck {
    pub b: usize,
    pub target: f64,
    pub k_b: f64,
    pub k_next: f64,
    pub b_value: f64,
    pub b_next: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetReport {
    pub n: usize,
    pub d: usize,
    pub target: f64,
    /// `k_b` for `b = 1..=d`, absent where the root leaves `[d-1, n-d]`.
    pub k: Vec<Option<f64>>,
    pub steps: Vec<StepCheck>,
}

impl TargetReport {
    pub fn violations(&self) -> usize {
        self.steps.iter().filter(|s| !s.holds).count()
    }
}

/// Solves `k_b` for every `b` and checks `B(b,k_b) >= B(b+1,k_{b+1})` where both roots exist.
pub fn verify_ab_chain(n: usize, d: usize, target: f64) -> Result<TargetReport> {
    weighted_ab(n, d, 1, &0.0)?;
    let k: Vec<Option<f64>> = (1..=d).map(|b| solve_kb(n, d, b, target).ok()).collect();
    let mut steps = Vec::new();
    for b in 1..d {
        if let (Some(kb), Some(kn)) = (k[b - 1], k[b]) {
            steps.push(step(n, d, b, target, kb, kn));
        }
    }
    Ok(TargetReport { n, d, target, k, steps })
}

fn step(n: usize, d: usize, b: usize, target: f64, kb: f64, kn: f64) -> StepCheck {
    let bv = weighted_ab(n, d, b, &kb).expect("validated").1;
    let bn = weighted_ab(n, d, b + 1, &kn).expect("validated").1;
    StepCheck {
        b,
        target,
        k_b: kb,
        k_next: kn,
        b_value: bv,
        b_next: bn,
        holds: bv >= bn - TOLERANCE * bv.abs().max(1.0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub n: usize,
    pub d: usize,
    /// Targets in the common range of every `A(b, ·)`; the full chain is checked.
    pub chain_targets: Vec<TargetReport>,
    /// Per consecutive pair `(b, b+1)`, targets drawn from the pair's common range.
    pub pair_steps: Vec<StepCheck>,
    /// Consecutive pairs whose `A` ranges do not overlap.
    pub incomparable_pairs: Vec<usize>,
}

impl MonotonicityReport {
    pub fn violations(&self) -> usize {
        self.chain_targets.iter().map(TargetReport::violations).sum::<usize>()
            + self.pair_steps.iter().filter(|s| !s.holds).count()
    }

    pub fn checks(&self) -> usize {
        self.chain_targets.iter().map(|t| t.steps.len()).sum::<usize>() + self.pair_steps.len()
    }
}

fn spread(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|j| lo + (hi - lo) * (j as f64 + 0.5) / count as f64)
        .collect()
}

/// `targets` values of `A` per range, spread over the interior of each admissible range.
pub fn verify_monotonicity(n: usize, d: usize, targets: usize) -> Result<MonotonicityReport> {
    weighted_ab(n, d, 1, &0.0)?;
    if d == 0 || d as f64 - 1.0 > (n - d) as f64 {
        return Err(Error::InvalidParams(format!("empty k range for n={n}, d={d}")));
    }
    let ranges: Vec<(f64, f64)> = (1..=d).map(|b| a_range(n, d, b)).collect();
    let lo = ranges.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let hi = ranges.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let mut report = MonotonicityReport {
        n,
        d,
        chain_targets: Vec::new(),
        pair_steps: Vec::new(),
        incomparable_pairs: Vec::new(),
    };
    if lo < hi {
        for t in spread(lo, hi, targets) {
            report.chain_targets.push(verify_ab_chain(n, d, t)?);
        }
    }
    for b in 1..d {
        let (plo, phi) = (ranges[b - 1].0.max(ranges[b].0), ranges[b - 1].1.min(ranges[b].1));
        if plo >= phi {
            report.incomparable_pairs.push(b);
            continue;
        }
        for t in spread(plo, phi, targets) {
            let kb = solve_kb(n, d, b, t)?;
            let kn = solve_kb(n, d, b + 1, t)?;
            report.pair_steps.push(step(n, d, b, t, kb, kn));
        }
    }
    Ok(report)
}

/// Whether `n >= d²/ln 2 + 2d`, the range where the half-size inequality is claimed.
pub fn half_size_applies(n: usize, d: usize) -> bool {
    n as f64 >= (d * d) as f64 / std::f64::consts::LN_2 + 2.0 * d as f64
}

/// Exact check of `2·Σ_{i<=d} C(n-d,i) >= Σ_{i<=d} C(n,i)`.
pub fn half_size_holds(n: usize, d: usize) -> bool {
    2 * binom_prefix((n - d) as u64, d as u64) >= binom_prefix(n as u64, d as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSizeReport {
    pub checked: usize,
    pub violations: Vec<(usize, usize)>,
}

/// Every `1 <= d < n <= max_n` in the applicable range.
pub fn verify_half_size(max_n: usize) -> HalfSizeReport {
    let mut report = HalfSizeReport {
        checked: 0,
        violations: Vec::new(),
    };
    for n in 2..=max_n {
        for d in 1..n {
            if half_size_applies(n, d) {
                report.checked += 1;
                if !half_size_holds(n, d) {
                    report.violations.push((n, d));
                }
            }
        }
    }
    report
}
