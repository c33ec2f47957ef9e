//! Redundant-row elimination for constraints normalized to
//! `a1·x1 + a2·x2 ≤ 1`, `x ≥ 0`.
//!
//! Rows are split by sign pattern into five groups and each group is thinned
//! independently. A row is only dropped when another row of its own group
//! implies it on the nonnegative quadrant, so the feasible polygon never
//! changes.

use std::cmp::Ordering;

use crate::scalar::Scalar;

/// A positive-row constraint after division by its (positive) right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedRow<S> {
    /// Row index in the sub-problem.
    pub row: usize,
    pub a1: S,
    pub a2: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Pos,
    Zero,
    Neg,
}

fn sign<S: Scalar>(v: &S) -> Sign {
    if v.is_positive() {
        Sign::Pos
    } else if v.is_negative() {
        Sign::Neg
    } else {
        Sign::Zero
    }
}

/// Returns the rows that may still bind, sorted by row index. Signs are
/// read exactly; callers zero out negligible entries beforehand.
pub fn prune_redundant<S: Scalar>(rows: &[NormalizedRow<S>]) -> Vec<usize> {
    let mut both_pos = Vec::new();
    let mut pos_neg = Vec::new();
    let mut neg_pos = Vec::new();
    let mut pos_zero = Vec::new();
    let mut zero_pos = Vec::new();
    for r in rows {
        match (sign(&r.a1), sign(&r.a2)) {
            (Sign::Pos, Sign::Pos) => both_pos.push(r),
            (Sign::Pos, Sign::Neg) => pos_neg.push(r),
            (Sign::Neg, Sign::Pos) => neg_pos.push(r),
            (Sign::Pos, Sign::Zero) => pos_zero.push(r),
            (Sign::Zero, Sign::Pos) => zero_pos.push(r),
            // Rows without a positive entry never reach here; keep them if they do.
            _ => both_pos.push(r),
        }
    }

    let mut kept = prune_both_positive(&both_pos);
    kept.extend(sweep(&pos_neg, |r| &r.a1, |r| &r.a2));
    kept.extend(sweep(&neg_pos, |r| &r.a2, |r| &r.a1));
    kept.extend(smallest_intercept(&pos_zero, |r| &r.a1));
    kept.extend(smallest_intercept(&zero_pos, |r| &r.a2));
    kept.sort_unstable();
    kept.dedup();
    kept
}

/// First row with the largest coefficient (smallest axis intercept).
fn argmax_by<'a, S: Scalar>(
    rows: &[&'a NormalizedRow<S>],
    key: impl Fn(&NormalizedRow<S>) -> &S,
) -> Option<&'a NormalizedRow<S>> {
    let mut best: Option<&NormalizedRow<S>> = None;
    for &r in rows {
        match best {
            Some(b) if key(r) <= key(b) => {}
            _ => best = Some(r),
        }
    }
    best
}

/// Both coefficients positive: the rows with the smallest x1- and
/// x2-intercepts bound a quadrilateral with the origin; any other row that
/// holds at their intersection holds on the whole quadrilateral.
fn prune_both_positive<S: Scalar>(rows: &[&NormalizedRow<S>]) -> Vec<usize> {
    let (Some(ix), Some(iy)) = (argmax_by(rows, |r| &r.a1), argmax_by(rows, |r| &r.a2)) else {
        return Vec::new();
    };
    if ix.row == iy.row {
        return vec![ix.row];
    }
    let mut kept = vec![ix.row, iy.row];
    let det = ix.a1.clone() * iy.a2.clone() - ix.a2.clone() * iy.a1.clone();
    if det.is_zero() {
        return kept;
    }
    let x1 = (iy.a2.clone() - ix.a2.clone()) / det.clone();
    let x2 = (ix.a1.clone() - iy.a1.clone()) / det;
    for r in rows {
        if r.row == ix.row || r.row == iy.row {
            continue;
        }
        if r.a1.clone() * x1.clone() + r.a2.clone() * x2.clone() > S::one() {
            kept.push(r.row);
        }
    }
    kept
}

/// Mixed signs. Each row reads `u ≤ 1/a_u + |a_v/a_u|·v` in its own axis
/// pair `(u, v)`. Rows are ordered by intercept `1/a_u`; a later row whose
/// slope `|a_v/a_u|` is at least that of an earlier surviving row is looser
/// everywhere on `v ≥ 0` and is removed. In the intercept/inverse-slope
/// table `[1/a_u, |a_u/a_v|]` this removes later rows with a smaller second
/// column.
fn sweep<S: Scalar>(
    rows: &[&NormalizedRow<S>],
    coef_u: impl Fn(&NormalizedRow<S>) -> &S,
    coef_v: impl Fn(&NormalizedRow<S>) -> &S,
) -> Vec<usize> {
    if rows.len() <= 1 {
        return rows.iter().map(|r| r.row).collect();
    }
    // (row, intercept, inverse slope)
    let mut table: Vec<(usize, S, S)> = rows
        .iter()
        .map(|r| {
            let u = coef_u(r).clone();
            let v = coef_v(r).clone();
            (r.row, S::one() / u.clone(), (u / v).abs())
        })
        .collect();
    table.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(Ordering::Equal)
            .then(a.0.cmp(&b.0))
    });
    let mut j = 0;
    while j < table.len() {
        let pivot = table[j].2.clone();
        let mut k = 0;
        table.retain(|entry| {
            let keep = k <= j || entry.2 >= pivot;
            k += 1;
            keep
        });
        j += 1;
    }
    table.into_iter().map(|(row, _, _)| row).collect()
}

/// One coefficient zero: only the row with the smallest intercept matters.
fn smallest_intercept<S: Scalar>(
    rows: &[&NormalizedRow<S>],
    coef: impl Fn(&NormalizedRow<S>) -> &S,
) -> Option<usize> {
    argmax_by(rows, coef).map(|r| r.row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[(f64, f64)]) -> Vec<NormalizedRow<f64>> {
        v.iter()
            .enumerate()
            .map(|(row, &(a1, a2))| NormalizedRow { row, a1, a2 })
            .collect()
    }

    fn prune(v: &[(f64, f64)]) -> Vec<usize> {
        prune_redundant(&rows(v))
    }

    #[test]
    fn both_positive_drops_row_below_intersection() {
        // Intersection of (2,1) and (1,2) is (1/3, 1/3); (1,1) gives 2/3 <= 1 there.
        assert_eq!(prune(&[(2.0, 1.0), (1.0, 2.0), (1.0, 1.0)]), vec![0, 1]);
    }

    #[test]
    fn both_positive_keeps_row_cutting_the_corner() {
        // (1.4, 1.4) gives 2.8/3 ≈ 0.93 at (1/3,1/3): redundant; (1.6,1.6) gives 1.07: kept.
        assert_eq!(prune(&[(2.0, 1.0), (1.0, 2.0), (1.4, 1.4)]), vec![0, 1]);
        assert_eq!(prune(&[(2.0, 1.0), (1.0, 2.0), (1.6, 1.6)]), vec![0, 1, 2]);
    }

    #[test]
    fn dominating_row_alone() {
        assert_eq!(prune(&[(3.0, 3.0), (1.0, 2.0), (2.0, 1.0)]), vec![0]);
    }

    #[test]
    fn axis_parallel_rows_keep_smallest_intercept() {
        assert_eq!(prune(&[(3.0, 0.0), (1.0, 0.0)]), vec![0]);
        assert_eq!(prune(&[(0.0, 1.0), (0.0, 4.0)]), vec![1]);
    }

    #[test]
    fn single_row_is_kept() {
        assert_eq!(prune(&[(1.0, -2.0)]), vec![0]);
        assert_eq!(prune(&[(-1.0, 2.0)]), vec![0]);
        assert_eq!(prune(&[(1.0, 2.0)]), vec![0]);
    }

    #[test]
    fn mixed_sign_sweep() {
        // x1 <= 1 + x2, x1 <= 2 + 0.2 x2 cross; x1 <= 2 + 2 x2 is looser than the first.
        assert_eq!(prune(&[(1.0, -1.0), (0.5, -0.1), (0.5, -1.0)]), vec![0, 1]);
        // Same rows in the other orientation.
        assert_eq!(prune(&[(-1.0, 1.0), (-0.1, 0.5), (-1.0, 0.5)]), vec![0, 1]);
    }

    #[test]
    fn mixed_sign_keeps_flatter_later_row() {
        // x2 <= 1 + x1 and x2 <= 2 + 0.1 x1: the second binds for x1 > 10/9.
        assert_eq!(prune(&[(-1.0, 1.0), (-0.05, 0.5)]), vec![0, 1]);
    }
}
