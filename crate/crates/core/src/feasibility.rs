//! Exact feasibility of mixed systems of equalities, weak and strict
//! inequalities, with a deterministic witness.
//!
//! Equalities are removed by Gaussian substitution; the remaining
//! inequalities go through Fourier–Motzkin elimination, and a witness is
//! rebuilt by back-substitution choosing midpoints of the admissible
//! intervals. Intended for the small dimensions (d <= 4) and hyperplane
//! counts this engine works with.

use crate::linalg::dot;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// `coeffs · x  (relation)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn new(coeffs: Vec<T>, relation: Relation, rhs: T) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn holds(&self, x: &[T]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

#[derive(Clone, Debug)]
struct Ineq<T> {
    coeffs: Vec<T>,
    rhs: T,
    strict: bool,
}

impl<T: Scalar> Ineq<T> {
    /// Scales so that the first nonzero coefficient has absolute value one.
    fn normalize(&mut self) {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c = c.clone() / lead.clone();
            }
            self.rhs = self.rhs.clone() / lead;
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `0 >= rhs` or `0 > rhs`.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.rhs < T::zero()
        } else {
            self.rhs <= T::zero()
        }
    }

    /// Value of `(rhs - Σ_{k≠v} a_k x_k) / a_v`.
    fn bound_for(&self, v: usize, x: &[T]) -> T {
        let mut rest = self.rhs.clone();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k != v && !a.is_zero() {
                rest = rest - a.clone() * x[k].clone();
            }
        }
        rest / self.coeffs[v].clone()
    }
}

struct Level<T> {
    var: usize,
    lower: Vec<Ineq<T>>,
    upper: Vec<Ineq<T>>,
}

/// Finds a point satisfying every constraint, or `None` if the system is infeasible.
pub fn solve<T: Scalar>(nvars: usize, constraints: &[Constraint<T>]) -> Option<Vec<T>> {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for c in constraints {
        debug_assert_eq!(c.coeffs.len(), nvars);
        match c.relation {
            Relation::Eq => eqs.push((c.coeffs.clone(), c.rhs.clone())),
            Relation::Ge | Relation::Gt => ineqs.push(Ineq {
                coeffs: c.coeffs.clone(),
                rhs: c.rhs.clone(),
                strict: c.relation == Relation::Gt,
            }),
        }
    }

    // Gaussian substitution: each pivot reads x_var = rhs - Σ_{k≠var} coeffs_k x_k.
    let mut pivots: Vec<(usize, Vec<T>, T)> = Vec::new();
    let mut pending = eqs;
    while !pending.is_empty() {
        let (mut coeffs, mut rhs) = pending.remove(0);
        let Some(var) = coeffs.iter().position(|c| !c.is_zero()) else {
            if rhs.is_zero() {
                continue;
            }
            return None;
        };
        let lead = coeffs[var].clone();
        for c in &mut coeffs {
            *c = c.clone() / lead.clone();
        }
        rhs = rhs / lead;
        for (other, orhs) in &mut pending {
            substitute(other, orhs, var, &coeffs, &rhs);
        }
        for q in &mut ineqs {
            substitute(&mut q.coeffs, &mut q.rhs, var, &coeffs, &rhs);
        }
        pivots.push((var, coeffs, rhs));
    }

    let pivoted: Vec<bool> = {
        let mut p = vec![false; nvars];
        for (v, _, _) in &pivots {
            p[*v] = true;
        }
        p
    };

    let mut levels: Vec<Level<T>> = Vec::new();
    let mut current = prune(ineqs)?;
    for var in (0..nvars).filter(|&v| !pivoted[v]) {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in current {
            if q.coeffs[var].is_positive() {
                lower.push(q);
            } else if q.coeffs[var].is_negative() {
                upper.push(q);
            } else {
                rest.push(q);
            }
        }
        for lo in &lower {
            for up in &upper {
                let alpha = lo.coeffs[var].clone();
                let beta = -up.coeffs[var].clone();
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(a, b)| beta.clone() * a.clone() + alpha.clone() * b.clone())
                    .collect();
                rest.push(Ineq {
                    coeffs,
                    rhs: beta.clone() * lo.rhs.clone() + alpha * up.rhs.clone(),
                    strict: lo.strict || up.strict,
                });
            }
        }
        levels.push(Level { var, lower, upper });
        current = prune(rest)?;
    }
    debug_assert!(current.is_empty());

    let mut x = vec![T::zero(); nvars];
    for level in levels.iter().rev() {
        x[level.var] = pick(level, &x);
    }
    for (var, coeffs, rhs) in pivots.iter().rev() {
        let mut value = rhs.clone();
        for (k, a) in coeffs.iter().enumerate() {
            if k != *var && !a.is_zero() {
                value = value - a.clone() * x[k].clone();
            }
        }
        x[*var] = value;
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)), "witness check");
    Some(x)
}

fn substitute<T: Scalar>(coeffs: &mut [T], rhs: &mut T, var: usize, pivot: &[T], prhs: &T) {
    let a = coeffs[var].clone();
    if a.is_zero() {
        return;
    }
    for (c, p) in coeffs.iter_mut().zip(pivot) {
        *c = c.clone() - a.clone() * p.clone();
    }
    *rhs = rhs.clone() - a * prhs.clone();
}

/// Checks constant rows, normalizes, and keeps the tightest copy of each direction.
fn prune<T: Scalar>(ineqs: Vec<Ineq<T>>) -> Option<Vec<Ineq<T>>> {
    let mut out: Vec<Ineq<T>> = Vec::with_capacity(ineqs.len());
    for mut q in ineqs {
        if q.is_constant() {
            if !q.constant_holds() {
                return None;
            }
            continue;
        }
        q.normalize();
        match out.iter_mut().find(|o| o.coeffs == q.coeffs) {
            Some(o) => {
                if q.rhs > o.rhs || (q.rhs == o.rhs && q.strict) {
                    *o = q;
                }
            }
            None => out.push(q),
        }
    }
    Some(out)
}

fn pick<T: Scalar>(level: &Level<T>, x: &[T]) -> T {
    let v = level.var;
    let tightest = |qs: &[Ineq<T>], want_max: bool| -> Option<(T, bool)> {
        let mut best: Option<(T, bool)> = None;
        for q in qs {
            let b = q.bound_for(v, x);
            best = match best {
                None => Some((b, q.strict)),
                Some((cur, s)) => {
                    let better = if want_max { b > cur } else { b < cur };
                    if better {
                        Some((b, q.strict))
                    } else if b == cur {
                        Some((cur, s || q.strict))
                    } else {
                        Some((cur, s))
                    }
                }
            };
        }
        best
    };
    let lo = tightest(&level.lower, true);
    let hi = tightest(&level.upper, false);
    match (lo, hi) {
        (Some((l, _)), Some((h, _))) => {
            if l < h {
                (l + h) / T::two()
            } else {
                l
            }
        }
        (Some((l, _)), None) => l + T::one(),
        (None, Some((h, _))) => h - T::one(),
        (None, None) => T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint<Rational> {
        Constraint::new(coeffs.iter().map(|&v| rational(v, 1)).collect(), rel, rational(rhs, 1))
    }

    #[test]
    fn open_triangle_is_feasible() {
        // x > 0, y > 0, x + y < 1
        let cs = [
            c(&[1, 0], Relation::Gt, 0),
            c(&[0, 1], Relation::Gt, 0),
            c(&[-1, -1], Relation::Gt, -1),
        ];
        let x = solve(2, &cs).unwrap();
        assert!(cs.iter().all(|k| k.holds(&x)));
    }

    #[test]
    fn strictness_matters() {
        // x >= 1 and x <= 1 is feasible, x > 1 and x <= 1 is not
        let weak = [c(&[1], Relation::Ge, 1), c(&[-1], Relation::Ge, -1)];
        assert_eq!(solve(1, &weak).unwrap(), vec![rational(1, 1)]);
        let strict = [c(&[1], Relation::Gt, 1), c(&[-1], Relation::Ge, -1)];
        assert!(solve(1, &strict).is_none());
    }

    #[test]
    fn equalities_pin_the_point() {
        // x + y = 2, x - y = 0
        let cs = [c(&[1, 1], Relation::Eq, 2), c(&[1, -1], Relation::Eq, 0)];
        assert_eq!(solve(2, &cs).unwrap(), vec![rational(1, 1), rational(1, 1)]);
        let bad = [c(&[1, 1], Relation::Eq, 2), c(&[2, 2], Relation::Eq, 3)];
        assert!(solve(2, &bad).is_none());
    }

    #[test]
    fn equality_with_strict_sides() {
        // on the line y = 0 with x > 3 and x < 4 and z free
        let cs = [
            c(&[0, 1, 0], Relation::Eq, 0),
            c(&[1, 0, 0], Relation::Gt, 3),
            c(&[-1, 0, 0], Relation::Gt, -4),
        ];
        let x = solve(3, &cs).unwrap();
        assert_eq!(x[0], rational(7, 2));
    }

    #[test]
    fn deterministic() {
        let cs = [
            c(&[2, -1, 3], Relation::Gt, 1),
            c(&[-1, 4, 1], Relation::Gt, -2),
            c(&[1, 1, -5], Relation::Ge, 0),
        ];
        assert_eq!(solve(3, &cs), solve(3, &cs));
    }
}
