//! Exhaustive basis enumeration for small instances.
//!
//! Shares nothing with the solver's factorization: each candidate basis is
//! solved by its own Gaussian elimination.

use itertools::Itertools;

use crate::lp::StandardFormLP;
use crate::scalar::{dot, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome<S> {
    Optimal { z: S, x: Vec<S>, basis: Vec<usize> },
    Unbounded,
    Infeasible,
}

impl<S: Scalar> OracleOutcome<S> {
    pub fn z(&self) -> Option<&S> {
        match self {
            OracleOutcome::Optimal { z, .. } => Some(z),
            _ => None,
        }
    }
}

fn pivot_threshold<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_f64(1e-11).expect("finite")
    }
}

/// Solves the square system `rows · x = rhs` or returns `None` if singular.
fn gauss<S: Scalar>(mut rows: Vec<Vec<S>>, mut rhs: Vec<S>) -> Option<Vec<S>> {
    let k = rows.len();
    let scale = rows
        .iter()
        .flatten()
        .fold(S::zero(), |acc, v| acc.max_of(v.abs()));
    let eps = pivot_threshold::<S>() * scale.max_of(S::one());
    for col in 0..k {
        let p = (col..k).max_by(|&a, &b| {
            rows[a][col]
                .abs()
                .partial_cmp(&rows[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if rows[p][col].abs() <= eps {
            return None;
        }
        rows.swap(col, p);
        rhs.swap(col, p);
        for r in col + 1..k {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / rows[col][col].clone();
            for c in col..k {
                let v = rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - f.clone() * v;
            }
            let v = rhs[col].clone();
            rhs[r] = rhs[r].clone() - f * v;
        }
    }
    let mut x = vec![S::zero(); k];
    for r in (0..k).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..k {
            acc = acc - rows[r][c].clone() * x[c].clone();
        }
        x[r] = acc / rows[r][r].clone();
    }
    Some(x)
}

fn nonnegative<S: Scalar>(v: &S) -> bool {
    if S::EXACT {
        !v.is_negative()
    } else {
        v.to_f64() >= -1e-9 * (1.0 + v.to_f64().abs())
    }
}

/// Minimum of `cᵀx` over all basic feasible solutions, or a certificate
/// that the objective is unbounded below.
pub fn brute_force<S: Scalar>(lp: &StandardFormLP<S>) -> OracleOutcome<S> {
    let (m, n) = (lp.m(), lp.n());
    let mut best: Option<(S, Vec<S>, Vec<usize>)> = None;
    for subset in (0..n).combinations(m) {
        let rows = (0..m)
            .map(|i| subset.iter().map(|&j| lp.a.get(i, j).clone()).collect())
            .collect();
        let Some(xb) = gauss(rows, lp.b.clone()) else {
            continue;
        };
        if !xb.iter().all(nonnegative) {
            continue;
        }
        let mut x = vec![S::zero(); n];
        for (&j, v) in subset.iter().zip(xb) {
            x[j] = v;
        }
        let z = dot(&lp.c, &x);
        if best.as_ref().is_none_or(|(bz, _, _)| z < *bz) {
            best = Some((z, x, subset));
        }
    }
    let Some((z, x, basis)) = best else {
        return OracleOutcome::Infeasible;
    };
    if has_improving_ray(lp) {
        return OracleOutcome::Unbounded;
    }
    OracleOutcome::Optimal { z, x, basis }
}

/// Minimizes `cᵀd` over `{A d = 0, 1ᵀd = 1, d ≥ 0}` by enumerating its
/// basic solutions; a negative minimum is an improving ray.
pub fn has_improving_ray<S: Scalar>(lp: &StandardFormLP<S>) -> bool {
    let (m, n) = (lp.m(), lp.n());
    let mut rhs = vec![S::zero(); m];
    rhs.push(S::one());
    let zero = S::zero();
    for subset in (0..n).combinations(m + 1) {
        let mut rows: Vec<Vec<S>> = (0..m)
            .map(|i| subset.iter().map(|&j| lp.a.get(i, j).clone()).collect())
            .collect();
        rows.push(vec![S::one(); m + 1]);
        let Some(d) = gauss(rows, rhs.clone()) else {
            continue;
        };
        if !d.iter().all(nonnegative) {
            continue;
        }
        let cost = subset
            .iter()
            .zip(&d)
            .fold(S::zero(), |acc, (&j, v)| acc + lp.c[j].clone() * v.clone());
        let negative = if S::EXACT {
            cost < zero
        } else {
            cost.to_f64() < -1e-9
        };
        if negative {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::DenseMatrix;
    use crate::problems::km_standard;
    use crate::scalar::Rational;

    #[test]
    fn cube_optimum() {
        let (lp, _) = km_standard::<Rational>(3);
        let out = brute_force(&lp);
        assert_eq!(out.z(), Some(&Rational::from_integer((-7).into())));
    }

    #[test]
    fn detects_ray() {
        // min -x2  s.t.  x1 - x2 = 1
        let a = DenseMatrix::from_rows(vec![vec![1.0, -1.0]]).unwrap();
        let lp = StandardFormLP::new(a, vec![1.0], vec![0.0, -1.0]).unwrap();
        assert_eq!(brute_force(&lp), OracleOutcome::Unbounded);
    }

    #[test]
    fn detects_infeasible() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, 1.0]]).unwrap();
        let lp = StandardFormLP::new(a, vec![-1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(brute_force(&lp), OracleOutcome::Infeasible);
    }
}
