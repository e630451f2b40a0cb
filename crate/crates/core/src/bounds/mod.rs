//! Closed-form bounds: generalized binomials, the `k` solver, conjectured and
//! convex-set boundary bounds, plus exhaustive checks of the Kruskal–Katona
//! form used by those bounds and of two binomial lemmas.

pub mod binomial;
pub mod kk;

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Margin subtracted from real-valued bounds before comparing with integer boundary sizes.
pub const BOUND_MARGIN: f64 = 1e-6;
/// Relative residual accepted from [`solve_k`].
pub const K_TOLERANCE: f64 = 1e-10;

/// Exact `C(n, k)`.
pub fn binom_exact(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `Σ_{i=0}^{d} C(n, i)` exactly.
pub fn binom_prefix(n: u64, d: u64) -> u128 {
    (0..=d).map(|i| binom_exact(n, i)).sum()
}

/// `x(x-1)...(x-i+1) / i!` for real `x`.
pub fn gen_binom<T: Scalar>(x: &T, i: usize) -> T {
    let mut acc = T::one();
    let mut shifted = x.clone();
    for j in 1..=i {
        acc = acc * shifted.clone() / T::from_int(j as i64);
        shifted = shifted - T::one();
    }
    acc
}

fn gb(x: f64, i: usize) -> f64 {
    gen_binom(&x, i)
}

/// `Σ_{i=0}^{d} C(k, i)`.
pub fn size_formula(k: f64, d: usize) -> f64 {
    (0..=d).map(|i| gb(k, i)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KSolution {
    pub size: u64,
    pub d: usize,
    pub k: f64,
    pub residual: f64,
}

/// The real `k >= d-1` with `Σ_{i=0}^{d} C(k, i) = size`.
///
/// Integer roots are found exactly; otherwise bisection between consecutive integers.
pub fn solve_k(size: u64, d: usize) -> Result<KSolution> {
    let min = binom_prefix(d.saturating_sub(1) as u64, d as u64);
    if (size as u128) < min {
        return Err(Error::BelowRange {
            value: size as f64,
            min: min as f64,
        });
    }
    let mut lo = d.saturating_sub(1) as u64;
    loop {
        let at = binom_prefix(lo + 1, d as u64);
        if at > size as u128 {
            break;
        }
        lo += 1;
    }
    if binom_prefix(lo, d as u64) == size as u128 {
        return Ok(KSolution {
            size,
            d,
            k: lo as f64,
            residual: 0.0,
        });
    }
    let target = size as f64;
    let (mut a, mut b) = (lo as f64, lo as f64 + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if size_formula(mid, d) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    let (ra, rb) = ((size_formula(a, d) - target).abs(), (size_formula(b, d) - target).abs());
    let (k, residual) = if ra <= rb { (a, ra) } else { (b, rb) };
    debug_assert!(residual <= K_TOLERANCE * target.max(1.0));
    Ok(KSolution { size, d, k, residual })
}

/// Conjectured lower bound `Σ_{i=0}^{d-1} C(k, i)` on the boundary of a set of `size` chambers.
pub fn conjecture_bound(size: u64, d: usize) -> Result<f64> {
    let k = solve_k(size, d)?.k;
    Ok((0..d).map(|i| gb(k, i)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexVariant {
    /// `Σ_{i<d} C(k, i)`, for every proper convex set.
    Basic,
    /// `Σ_{i<d} (d-i+1) C(k, i)`, for bounded convex sets.
    Bounded,
    /// `Σ_{i<d} (d-i) C(k, i)`, for convex sets of size at most `Σ_{i<=d} C(n-d, i)`.
    Weighted,
}

impl ConvexVariant {
    pub const ALL: [ConvexVariant; 3] = [ConvexVariant::Basic, ConvexVariant::Bounded, ConvexVariant::Weighted];

    fn weight(self, d: usize, i: usize) -> f64 {
        match self {
            ConvexVariant::Basic => 1.0,
            ConvexVariant::Bounded => (d - i + 1) as f64,
            ConvexVariant::Weighted => (d - i) as f64,
        }
    }
}

/// Largest size for which the weighted convex bound applies.
pub fn weighted_size_limit(n: usize, d: usize) -> u128 {
    if n < d {
        return 0;
    }
    binom_prefix((n - d) as u64, d as u64)
}

pub fn convex_bound(size: u64, d: usize, n: usize, variant: ConvexVariant) -> Result<f64> {
    if variant == ConvexVariant::Weighted && size as u128 > weighted_size_limit(n, d) {
        return Err(Error::InvalidParams(format!(
            "weighted bound needs size <= {} for n={n}, d={d} (got {size})",
            weighted_size_limit(n, d)
        )));
    }
    let k = solve_k(size, d)?.k;
    Ok((0..d).map(|i| variant.weight(d, i) * gb(k, i)).sum())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub size: u64,
    pub d: usize,
    pub n: usize,
    pub k: f64,
    pub conjecture_bound: f64,
    pub basic: f64,
    pub bounded: f64,
    /// Absent when the size exceeds the weighted bound's range.
    pub weighted: Option<f64>,
}

pub fn bound_row(size: u64, d: usize, n: usize) -> Result<BoundRow> {
    let k = solve_k(size, d)?.k;
    Ok(BoundRow {
        size,
        d,
        n,
        k,
        conjecture_bound: conjecture_bound(size, d)?,
        basic: convex_bound(size, d, n, ConvexVariant::Basic)?,
        bounded: convex_bound(size, d, n, ConvexVariant::Bounded)?,
        weighted: convex_bound(size, d, n, ConvexVariant::Weighted).ok(),
    })
}

/// Bound table for every admissible size up to `max_size`.
pub fn bound_table(d: usize, n: usize, max_size: u64) -> Vec<BoundRow> {
    (1..=max_size).filter_map(|s| bound_row(s, d, n).ok()).collect()
}

pub fn write_bound_csv<W: Write>(rows: &[BoundRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "size",
        "d",
        "n",
        "k",
        "conjecture_bound",
        "basic",
        "bounded",
        "weighted",
    ])
    .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.size.to_string(),
            r.d.to_string(),
            r.n.to_string(),
            format!("{:.12}", r.k),
            format!("{:.12}", r.conjecture_bound),
            format!("{:.12}", r.basic),
            format!("{:.12}", r.bounded),
            r.weighted.map(|v| format!("{v:.12}")).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn gen_binom_examples() {
        assert_eq!(gen_binom(&7.5f64, 0), 1.0);
        assert_abs_diff_eq!(gen_binom(&2.5f64, 2), 1.875, epsilon = 1e-15);
        assert_eq!(gen_binom(&3.0f64, 2), 3.0);
        assert_eq!(gen_binom(&rational(5, 2), 2), rational(15, 8));
        assert_eq!(gen_binom(&Rational::from_integer(2.into()), 3), rational(0, 1));
    }

    #[test]
    fn exact_binomials() {
        assert_eq!(binom_exact(5, 2), 10);
        assert_eq!(binom_exact(60, 30), 118264581564861424);
        assert_eq!(binom_exact(3, 4), 0);
        assert_eq!(binom_prefix(4, 3), 15);
    }

    #[test]
    fn solve_k_examples() {
        assert_eq!(solve_k(7, 2).unwrap().k, 3.0);
        assert_eq!(solve_k(8, 3).unwrap().k, 3.0);
        assert_eq!(solve_k(4, 3).unwrap().k, 2.0);
        assert!(matches!(solve_k(3, 3), Err(Error::BelowRange { .. })));
        let s = solve_k(10, 2).unwrap();
        assert!(s.k > 3.0 && s.k < 4.0);
        assert!(s.residual <= K_TOLERANCE * 10.0);
    }

    #[test]
    fn conjecture_examples() {
        assert_abs_diff_eq!(conjecture_bound(7, 2).unwrap(), 4.0, epsilon = 1e-9);
        assert_abs_diff_eq!(conjecture_bound(16, 2).unwrap(), 6.0, epsilon = 1e-9);
        assert_abs_diff_eq!(conjecture_bound(8, 3).unwrap(), 7.0, epsilon = 1e-9);
    }

    #[test]
    fn convex_examples() {
        assert_abs_diff_eq!(
            convex_bound(7, 2, 5, ConvexVariant::Basic).unwrap(),
            4.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            convex_bound(7, 2, 5, ConvexVariant::Bounded).unwrap(),
            9.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            convex_bound(7, 2, 5, ConvexVariant::Weighted).unwrap(),
            5.0,
            epsilon = 1e-9
        );
        assert!(convex_bound(8, 2, 5, ConvexVariant::Weighted).is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut buf = Vec::new();
        write_bound_csv(&bound_table(2, 5, 8), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("size,d,n,k,conjecture_bound,basic,bounded,weighted\n"));
        // sizes below 2 are under the range of d = 2
        assert_eq!(text.lines().count(), 8);
    }

    proptest! {
        #[test]
        fn gen_binom_increasing(x in 0.0f64..30.0, dx in 1e-3f64..5.0, i in 0usize..7) {
            prop_assume!(x >= i as f64 - 1.0);
            prop_assert!(gen_binom(&(x + dx), i) >= gen_binom(&x, i));
            if i >= 1 {
                prop_assert!(gen_binom(&(x + dx), i) > gen_binom(&x, i));
            }
        }

        #[test]
        fn solve_k_inverts_integer_sizes(d in 1usize..6, k in 0u64..40) {
            prop_assume!(k + 1 >= d as u64);
            let size = binom_prefix(k, d as u64) as u64;
            let s = solve_k(size, d).unwrap();
            prop_assert!((s.k - k as f64).abs() < 1e-9);
        }

        #[test]
        fn solve_k_residual(d in 1usize..6, size in 1u64..100_000) {
            if let Ok(s) = solve_k(size, d) {
                prop_assert!(s.residual <= K_TOLERANCE * size as f64);
                prop_assert!(s.k >= d as f64 - 1.0);
            }
        }
    }
}
