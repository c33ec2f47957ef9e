//! Entering-variable selection and the ratio test.
//!
//! Positions returned by the entering rules index into the nonbasic list
//! `N`, which is always sorted, so "lowest position" and "lowest global
//! column index" coincide for tie-breaking.

use std::cmp::Ordering;

use crate::lp::{Basis, StandardFormLP, Tolerances};
use crate::scalar::Scalar;

/// Outcome of a ratio test along one column.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioResult<S> {
    Bounded { leaving_row: usize, step: S },
    Unbounded,
}

impl<S: Scalar> RatioResult<S> {
    pub fn step(&self) -> Option<&S> {
        match self {
            RatioResult::Bounded { step, .. } => Some(step),
            RatioResult::Unbounded => None,
        }
    }

    pub fn leaving_row(&self) -> Option<usize> {
        match self {
            RatioResult::Bounded { leaving_row, .. } => Some(*leaving_row),
            RatioResult::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, RatioResult::Unbounded)
    }

    /// Orders step lengths with `Unbounded` as `+∞`.
    pub fn cmp_step(&self, other: &Self) -> Ordering {
        match (self.step(), other.step()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

/// The pair of entering variables chosen by a double-pivot rule.
#[derive(Clone, Debug, PartialEq)]
pub struct EnteringChoice<S> {
    /// Global column index of the first pick.
    pub j1: usize,
    pub j2: Option<usize>,
    pub step_j1: RatioResult<S>,
    pub step_j2: Option<RatioResult<S>>,
}

/// Most negative reduced cost below `-eps_cost`; ties go to the lowest index.
pub fn dantzig_entering<S: Scalar>(cbar_n: &[S], tol: &Tolerances<S>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (p, v) in cbar_n.iter().enumerate() {
        if !tol.is_improving(v) {
            continue;
        }
        match best {
            Some(b) if *v >= cbar_n[b] => {}
            _ => best = Some(p),
        }
    }
    best
}

/// Lowest-index improving reduced cost (Bland).
pub fn bland_entering<S: Scalar>(cbar_n: &[S], tol: &Tolerances<S>) -> Option<usize> {
    cbar_n.iter().position(|v| tol.is_improving(v))
}

/// Positions of the two most negative reduced costs below `-eps_cost`.
pub fn two_most_negative<S: Scalar>(
    cbar_n: &[S],
    tol: &Tolerances<S>,
) -> Option<(usize, Option<usize>)> {
    let mut improving: Vec<usize> = (0..cbar_n.len())
        .filter(|&p| tol.is_improving(&cbar_n[p]))
        .collect();
    // Stable sort keeps the lowest index first among equal values.
    improving.sort_by(|&a, &b| cbar_n[a].partial_cmp(&cbar_n[b]).unwrap_or(Ordering::Equal));
    let first = *improving.first()?;
    Some((first, improving.get(1).copied()))
}

/// Minimum ratio `b̄_i / ā_i` over rows with `ā_i > eps_ratio`; ties go to the
/// lowest row.
pub fn ratio_test<S: Scalar>(b_bar: &[S], column: &[S], tol: &Tolerances<S>) -> RatioResult<S> {
    assert_eq!(b_bar.len(), column.len());
    let mut best: Option<(usize, S)> = None;
    for (i, (b, a)) in b_bar.iter().zip(column).enumerate() {
        if !tol.is_positive_entry(a) {
            continue;
        }
        // Tiny negative basics are clamped so the step is never negative.
        let b = if b.is_negative() { S::zero() } else { b.clone() };
        let ratio = b / a.clone();
        match &best {
            Some((_, s)) if ratio >= *s => {}
            _ => best = Some((i, ratio)),
        }
    }
    match best {
        Some((leaving_row, step)) => RatioResult::Bounded { leaving_row, step },
        None => RatioResult::Unbounded,
    }
}

/// Ratio test whose ties go to the row holding the lowest basic column index.
pub fn ratio_test_bland<S: Scalar>(
    b_bar: &[S],
    column: &[S],
    basic: &[usize],
    tol: &Tolerances<S>,
) -> RatioResult<S> {
    let RatioResult::Bounded { step, .. } = ratio_test(b_bar, column, tol) else {
        return RatioResult::Unbounded;
    };
    let leaving_row = (0..b_bar.len())
        .filter(|&i| tol.is_positive_entry(&column[i]))
        .filter(|&i| {
            let b = if b_bar[i].is_negative() { S::zero() } else { b_bar[i].clone() };
            let r = b / column[i].clone();
            tol.objective_tie(&r, &step)
        })
        .min_by_key(|&i| basic[i])
        .expect("minimizing row is among the ties");
    RatioResult::Bounded { leaving_row, step }
}

/// An improving nonbasic column with its transformed column and ratio test.
#[derive(Clone, Debug)]
pub struct Candidate<S> {
    /// Position in `N`.
    pub pos: usize,
    /// Global column index.
    pub col: usize,
    pub cbar: S,
    pub column: Vec<S>,
    pub ratio: RatioResult<S>,
}

/// Computes `ā_j` and the ratio test for every improving nonbasic column.
pub fn improving_candidates<S: Scalar>(
    lp: &StandardFormLP<S>,
    basis: &Basis<S>,
    b_bar: &[S],
    cbar_n: &[S],
    tol: &Tolerances<S>,
) -> Vec<Candidate<S>> {
    basis
        .nonbasic()
        .iter()
        .enumerate()
        .filter(|(p, _)| tol.is_improving(&cbar_n[*p]))
        .map(|(pos, &col)| {
            let column = basis.transformed_column(lp, col);
            let ratio = ratio_test(b_bar, &column, tol);
            Candidate {
                pos,
                col,
                cbar: cbar_n[pos].clone(),
                column,
                ratio,
            }
        })
        .collect()
}

/// Index into `candidates` of the longest step, skipping column `exclude`.
/// Unbounded steps win; ties go to the lowest column index.
pub fn longest_among<S: Scalar>(candidates: &[Candidate<S>], exclude: Option<usize>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, cand) in candidates.iter().enumerate() {
        if Some(cand.col) == exclude {
            continue;
        }
        match best {
            Some(b) if cand.ratio.cmp_step(&candidates[b].ratio) != Ordering::Greater => {}
            _ => best = Some(k),
        }
    }
    best
}

/// Index into `candidates` of the Dantzig pick. Equal reduced costs go to
/// the shortest ratio-test step, then the lowest column index. On the
/// standard-form cube (all costs -1) this tie-break walks every vertex.
pub fn dantzig_among<S: Scalar>(candidates: &[Candidate<S>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, cand) in candidates.iter().enumerate() {
        let better = match best {
            None => true,
            Some(b) => {
                let cur = &candidates[b];
                match cand.cbar.partial_cmp(&cur.cbar).unwrap_or(Ordering::Equal) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => cand.ratio.cmp_step(&cur.ratio) == Ordering::Less,
                }
            }
        };
        if better {
            best = Some(k);
        }
    }
    best
}

/// Longest-step entering column: returns the `N` position and its ratio test
/// (`Unbounded` standing for an infinite step).
pub fn longest_step_entering<S: Scalar>(
    lp: &StandardFormLP<S>,
    basis: &Basis<S>,
    b_bar: &[S],
    cbar_n: &[S],
    exclude: Option<usize>,
    tol: &Tolerances<S>,
) -> Option<(usize, RatioResult<S>)> {
    let candidates = improving_candidates(lp, basis, b_bar, cbar_n, tol);
    longest_among(&candidates, exclude).map(|k| (candidates[k].pos, candidates[k].ratio.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{basic_solution, factor_basis, reduced_costs};
    use crate::problems::km_standard;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn dantzig_picks_most_negative() {
        assert_eq!(dantzig_entering(&[-1.0, -3.0, 2.0], &tol()), Some(1));
        assert_eq!(dantzig_entering(&[0.5, 2.0], &tol()), None);
        assert_eq!(dantzig_entering(&[-1.0, -1.0, -1.0], &tol()), Some(0));
        assert_eq!(dantzig_entering(&[-1e-12, 3.0], &tol()), None);
    }

    #[test]
    fn two_most_negative_examples() {
        assert_eq!(two_most_negative(&[-5.0, -2.0, -7.0, 1.0], &tol()), Some((2, Some(0))));
        assert_eq!(two_most_negative(&[-1.0, 3.0], &tol()), Some((0, None)));
        assert_eq!(two_most_negative(&[-1.0, -1.0, -1.0], &tol()), Some((0, Some(1))));
        assert_eq!(two_most_negative(&[1.0, 3.0], &tol()), None);
    }

    #[test]
    fn ratio_test_examples() {
        let r = ratio_test(&[1.0, 3.0, 7.0], &[1.0, 2.0, 2.0], &tol());
        assert_eq!(r, RatioResult::Bounded { leaving_row: 0, step: 1.0 });
        let r = ratio_test(&[1.0, 3.0, 7.0], &[-1.0, 0.0, -2.0], &tol());
        assert_eq!(r, RatioResult::Unbounded);
        let r = ratio_test(&[1.0, 3.0, 7.0], &[0.0, 0.0, 1.0], &tol());
        assert_eq!(r, RatioResult::Bounded { leaving_row: 2, step: 7.0 });
        // tie: 2/1 and 4/2 -> lowest row
        let r = ratio_test(&[2.0, 4.0], &[1.0, 2.0], &tol());
        assert_eq!(r, RatioResult::Bounded { leaving_row: 0, step: 2.0 });
    }

    #[test]
    fn bland_ratio_ties_by_basic_index() {
        let r = ratio_test_bland(&[2.0, 4.0], &[1.0, 2.0], &[5, 3], &tol());
        assert_eq!(r, RatioResult::Bounded { leaving_row: 1, step: 2.0 });
    }

    #[test]
    fn longest_step_on_km_standard() {
        let (lp, b0) = km_standard::<f64>(3);
        let t = tol();
        let basis = factor_basis(&lp, &b0, &t).unwrap();
        let bb = basic_solution(&lp, &basis);
        let cb = reduced_costs(&lp, &basis);
        // Hand ratio tests: x1 -> min(1/1, 3/2, 7/2) = 1; x2 -> min(3/1, 7/2) = 3; x3 -> 7/1 = 7.
        let (pos, r) = longest_step_entering(&lp, &basis, &bb, &cb, None, &t).unwrap();
        assert_eq!(basis.nonbasic()[pos], 2);
        assert_eq!(r.step(), Some(&7.0));
        let (pos, r) = longest_step_entering(&lp, &basis, &bb, &cb, Some(2), &t).unwrap();
        assert_eq!(basis.nonbasic()[pos], 1);
        assert_eq!(r.step(), Some(&3.0));
    }

    #[test]
    fn unbounded_column_wins_longest_step() {
        use crate::lp::DenseMatrix;
        let a = DenseMatrix::from_rows(vec![vec![1.0, -1.0, 0.0], vec![0.0, -2.0, 1.0]]).unwrap();
        let lp = StandardFormLP::new(a, vec![1.0, 1.0], vec![0.0, -1.0, 0.0]).unwrap();
        let t = tol();
        let basis = factor_basis(&lp, &[0, 2], &t).unwrap();
        let bb = basic_solution(&lp, &basis);
        let cb = reduced_costs(&lp, &basis);
        let (pos, r) = longest_step_entering(&lp, &basis, &bb, &cb, None, &t).unwrap();
        assert_eq!(basis.nonbasic()[pos], 1);
        assert!(r.is_unbounded());
    }
}
