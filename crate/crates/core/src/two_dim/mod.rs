//! Exact solution of the two-variable sub-problem
//!
//! ```text
//! min  cost1·x1 + cost2·x2
//! s.t. col1_i·x1 + col2_i·x2 ≤ rhs_i   for every row i
//!      x1, x2 ≥ 0
//! ```
//!
//! by enumerating the vertices of the feasible polygon.

mod prune;

pub use prune::{prune_redundant, NormalizedRow};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lp::Tolerances;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TwoDimLP<S> {
    pub col1: Vec<S>,
    pub col2: Vec<S>,
    pub rhs: Vec<S>,
    pub cost1: S,
    pub cost2: S,
}

impl<S: Scalar> TwoDimLP<S> {
    pub fn new(col1: Vec<S>, col2: Vec<S>, rhs: Vec<S>, cost1: S, cost2: S) -> Result<Self> {
        if col1.len() != rhs.len() || col2.len() != rhs.len() {
            return Err(Error::Dimension("sub-problem columns and rhs differ in length".into()));
        }
        if !cost1.is_negative() || !cost2.is_negative() {
            return Err(Error::Domain("sub-problem costs must be negative".into()));
        }
        Ok(Self {
            col1,
            col2,
            rhs,
            cost1,
            cost2,
        })
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn objective(&self, x1: &S, x2: &S) -> S {
        self.cost1.clone() * x1.clone() + self.cost2.clone() * x2.clone()
    }

    fn row_value(&self, i: usize, x1: &S, x2: &S) -> S {
        self.col1[i].clone() * x1.clone() + self.col2[i].clone() * x2.clone()
    }

    /// Feasible for every row and for `x ≥ 0`, within the feasibility band.
    pub fn is_feasible(&self, x1: &S, x2: &S, tol: &Tolerances<S>) -> bool {
        tol.is_feasible_value(x1)
            && tol.is_feasible_value(x2)
            && (0..self.rows()).all(|i| tol.leq_feas(&self.row_value(i, x1, x2), &self.rhs[i]))
    }
}

/// A candidate solution of the sub-problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex2D<S> {
    pub x1: S,
    pub x2: S,
    /// Tight rows that define the vertex, sorted.
    pub binding: Vec<usize>,
    pub obj: S,
}

impl<S: Scalar> Vertex2D<S> {
    pub fn origin() -> Self {
        Self {
            x1: S::zero(),
            x2: S::zero(),
            binding: Vec::new(),
            obj: S::zero(),
        }
    }

    /// `(step, 0)`, limited by `row`.
    pub fn on_first_axis(p: &TwoDimLP<S>, step: S, row: usize) -> Self {
        let obj = p.cost1.clone() * step.clone();
        Self {
            x1: step,
            x2: S::zero(),
            binding: vec![row],
            obj,
        }
    }

    /// `(0, step)`, limited by `row`.
    pub fn on_second_axis(p: &TwoDimLP<S>, step: S, row: usize) -> Self {
        let obj = p.cost2.clone() * step.clone();
        Self {
            x1: S::zero(),
            x2: step,
            binding: vec![row],
            obj,
        }
    }

    pub fn is_origin(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }
}

/// Sign split of the sub-problem rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPartition {
    /// Rows with at least one entry above `eps_ratio`.
    pub pos_rows: Vec<usize>,
    /// All other rows; they cannot bind for `x ≥ 0`.
    pub nonpos_rows: Vec<usize>,
    /// Positive rows whose rhs is within `eps_feas` of zero.
    pub degenerate_rows: Vec<usize>,
}

pub fn partition_rows<S: Scalar>(p: &TwoDimLP<S>, tol: &Tolerances<S>) -> RowPartition {
    let mut part = RowPartition {
        pos_rows: Vec::new(),
        nonpos_rows: Vec::new(),
        degenerate_rows: Vec::new(),
    };
    for i in 0..p.rows() {
        if tol.is_positive_entry(&p.col1[i]) || tol.is_positive_entry(&p.col2[i]) {
            part.pos_rows.push(i);
            if !tol.is_positive_value(&p.rhs[i]) {
                part.degenerate_rows.push(i);
            }
        } else {
            part.nonpos_rows.push(i);
        }
    }
    part
}

/// Positive, nondegenerate rows divided by their rhs. Entries that are zero
/// within `eps_ratio` are set to exactly zero first, so the signs seen by
/// pruning match the classification of the raw rows.
pub fn normalized_rows<S: Scalar>(
    p: &TwoDimLP<S>,
    part: &RowPartition,
    tol: &Tolerances<S>,
) -> Vec<NormalizedRow<S>> {
    let clean = |v: &S| {
        if tol.is_positive_entry(v) || tol.is_negative_entry(v) {
            v.clone()
        } else {
            S::zero()
        }
    };
    part.pos_rows
        .iter()
        .filter(|i| !part.degenerate_rows.contains(i))
        .map(|&i| NormalizedRow {
            row: i,
            a1: clean(&p.col1[i]) / p.rhs[i].clone(),
            a2: clean(&p.col2[i]) / p.rhs[i].clone(),
        })
        .collect()
}

/// The two axis vertices `(θ1, 0)` and `(0, θ2)` from ratio tests on each column.
pub fn axis_vertices<S: Scalar>(
    p: &TwoDimLP<S>,
    tol: &Tolerances<S>,
) -> (Option<Vertex2D<S>>, Option<Vertex2D<S>>) {
    use crate::pivot_rules::{ratio_test, RatioResult};
    let first = match ratio_test(&p.rhs, &p.col1, tol) {
        RatioResult::Bounded { leaving_row, step } => Some(Vertex2D::on_first_axis(p, step, leaving_row)),
        RatioResult::Unbounded => None,
    };
    let second = match ratio_test(&p.rhs, &p.col2, tol) {
        RatioResult::Bounded { leaving_row, step } => Some(Vertex2D::on_second_axis(p, step, leaving_row)),
        RatioResult::Unbounded => None,
    };
    (first, second)
}

/// Whether some `d ≥ 0, d ≠ 0` keeps every row satisfied (`col·d ≤ 0`).
/// With both costs negative such a ray is improving.
pub fn has_improving_ray<S: Scalar>(p: &TwoDimLP<S>, tol: &Tolerances<S>) -> bool {
    let rows = 0..p.rows();
    if rows.clone().all(|i| !tol.is_positive_entry(&p.col1[i]))
        || rows.clone().all(|i| !tol.is_positive_entry(&p.col2[i]))
    {
        return true;
    }
    // Direction (1, t), t > 0: every row needs col1 + col2·t ≤ 0.
    let mut lo = S::zero();
    let mut hi: Option<S> = None;
    for i in rows {
        let (a1, a2) = (&p.col1[i], &p.col2[i]);
        if tol.is_positive_entry(a2) {
            if !tol.is_negative_entry(a1) {
                return false;
            }
            let bound = -(a1.clone() / a2.clone());
            hi = Some(match hi {
                Some(h) => h.min_of(bound),
                None => bound,
            });
        } else if tol.is_negative_entry(a2) {
            lo = lo.max_of(a1.clone() / -a2.clone());
        } else if tol.is_positive_entry(a1) {
            return false;
        }
    }
    match hi {
        Some(h) => lo <= h && h.is_positive(),
        None => true,
    }
}

/// Pairwise intersections of the given rows plus the supplied axis vertices
/// and the origin, keeping only points feasible for every row.
pub fn enumerate_vertices<S: Scalar>(
    p: &TwoDimLP<S>,
    kept: &[usize],
    special1: Option<&Vertex2D<S>>,
    special2: Option<&Vertex2D<S>>,
    tol: &Tolerances<S>,
) -> Vec<Vertex2D<S>> {
    let mut out = Vec::new();
    for (a, &i) in kept.iter().enumerate() {
        for &k in &kept[a + 1..] {
            if let Some(v) = intersect(p, i, k, tol) {
                if p.is_feasible(&v.x1, &v.x2, tol) {
                    out.push(v);
                }
            }
        }
    }
    for s in [special1, special2].into_iter().flatten() {
        if p.is_feasible(&s.x1, &s.x2, tol) {
            out.push(s.clone());
        }
    }
    out.push(Vertex2D::origin());
    out
}

fn intersect<S: Scalar>(p: &TwoDimLP<S>, i: usize, k: usize, tol: &Tolerances<S>) -> Option<Vertex2D<S>> {
    let (a, b) = (&p.col1[i], &p.col2[i]);
    let (c, d) = (&p.col1[k], &p.col2[k]);
    let det = a.clone() * d.clone() - b.clone() * c.clone();
    // Scale by each row's own magnitude: rows of very different size are
    // still far from parallel.
    let scale = a.abs().max_of(b.abs()) * c.abs().max_of(d.abs());
    if det.is_zero() || det.abs() <= tol.eps_sing.clone() * scale {
        return None;
    }
    let x1 = (p.rhs[i].clone() * d.clone() - p.rhs[k].clone() * b.clone()) / det.clone();
    let x2 = (a.clone() * p.rhs[k].clone() - c.clone() * p.rhs[i].clone()) / det;
    let obj = p.objective(&x1, &x2);
    Some(Vertex2D {
        x1,
        x2,
        binding: vec![i.min(k), i.max(k)],
        obj,
    })
}

/// Preference order: lower objective, then fewer binding rows, then the
/// lexicographically smaller binding set, then larger `x1`.
///
/// Objectives count as tied within `eps_sing` relative. The looser cost
/// tolerance would merge genuinely different vertices once objective
/// magnitudes reach ~1e9, as they do on the larger Klee-Minty cubes.
pub fn compare_vertices<S: Scalar>(a: &Vertex2D<S>, b: &Vertex2D<S>, tol: &Tolerances<S>) -> Ordering {
    let scale = a.obj.abs().max_of(b.obj.abs());
    let band = tol.eps_sing.clone() * (S::one() + scale);
    if (a.obj.clone() - b.obj.clone()).abs() > band {
        return a.obj.partial_cmp(&b.obj).unwrap_or(Ordering::Equal);
    }
    a.binding
        .len()
        .cmp(&b.binding.len())
        .then_with(|| a.binding.cmp(&b.binding))
        .then_with(|| b.x1.partial_cmp(&a.x1).unwrap_or(Ordering::Equal))
}

/// Whether redundant rows are removed before pair enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pruning {
    #[default]
    On,
    Off,
}

/// All feasible vertices, best first. Missing special vertices are replaced
/// by the axis vertices from [`axis_vertices`].
pub fn ranked_vertices<S: Scalar>(
    p: &TwoDimLP<S>,
    part: &RowPartition,
    special1: Option<&Vertex2D<S>>,
    special2: Option<&Vertex2D<S>>,
    pruning: Pruning,
    tol: &Tolerances<S>,
) -> Result<Vec<Vertex2D<S>>> {
    if has_improving_ray(p, tol) {
        return Err(Error::UnboundedSubproblem);
    }
    let mut rows: Vec<usize> = match pruning {
        Pruning::On => prune_redundant(&normalized_rows(p, part, tol)),
        Pruning::Off => part
            .pos_rows
            .iter()
            .filter(|i| !part.degenerate_rows.contains(i))
            .copied()
            .collect(),
    };
    rows.extend(&part.degenerate_rows);
    rows.sort_unstable();
    rows.dedup();

    let (axis1, axis2) = match (special1, special2) {
        (Some(_), Some(_)) => (None, None),
        _ => axis_vertices(p, tol),
    };
    let special1 = special1.or(axis1.as_ref());
    let special2 = special2.or(axis2.as_ref());
    let mut pool = enumerate_vertices(p, &rows, special1, special2, tol);
    // Selection order: the tolerance-based tie rule is not a strict weak
    // order, so avoid the library sorts.
    let mut ranked = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let mut best = 0;
        for k in 1..pool.len() {
            if compare_vertices(&pool[k], &pool[best], tol) == Ordering::Less {
                best = k;
            }
        }
        ranked.push(pool.swap_remove(best));
    }
    Ok(ranked)
}

/// Minimizing vertex of the sub-problem.
pub fn solve_2d<S: Scalar>(
    p: &TwoDimLP<S>,
    part: &RowPartition,
    special1: Option<&Vertex2D<S>>,
    special2: Option<&Vertex2D<S>>,
    pruning: Pruning,
    tol: &Tolerances<S>,
) -> Result<Vertex2D<S>> {
    let ranked = ranked_vertices(p, part, special1, special2, pruning, tol)?;
    Ok(ranked.into_iter().next().expect("origin is always feasible"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn lp(rows: &[(f64, f64, f64)], c1: f64, c2: f64) -> TwoDimLP<f64> {
        TwoDimLP::new(
            rows.iter().map(|r| r.0).collect(),
            rows.iter().map(|r| r.1).collect(),
            rows.iter().map(|r| r.2).collect(),
            c1,
            c2,
        )
        .unwrap()
    }

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn partition_examples() {
        let p = lp(&[(1.0, 0.0, 1.0), (-1.0, -1.0, 1.0), (0.0, 2.0, 1.0)], -1.0, -1.0);
        let part = partition_rows(&p, &tol());
        assert_eq!(part.pos_rows, vec![0, 2]);
        assert_eq!(part.nonpos_rows, vec![1]);

        let p = lp(&[(-1.0, 0.0, 1.0), (0.0, -3.0, 1.0)], -1.0, -1.0);
        assert!(partition_rows(&p, &tol()).pos_rows.is_empty());

        let p = lp(&[(1.0, 1.0, 0.0), (1.0, 0.0, 2.0)], -1.0, -1.0);
        assert_eq!(partition_rows(&p, &tol()).degenerate_rows, vec![0]);
    }

    #[test]
    fn intersection_vertex_checked_against_all_rows() {
        // x1 <= 1, 2x1 + x2 <= 7 meet at (1, 5).
        let p = lp(&[(1.0, 0.0, 1.0), (2.0, 1.0, 7.0)], -1.0, -1.0);
        let v = enumerate_vertices(&p, &[0, 1], None, None, &tol());
        assert_eq!(v[0].x1, 1.0);
        assert_eq!(v[0].x2, 5.0);
        assert_eq!(v[0].binding, vec![0, 1]);
        // An extra row cutting (1,5) off makes it infeasible.
        let p = lp(&[(1.0, 0.0, 1.0), (2.0, 1.0, 7.0), (0.0, 1.0, 4.0)], -1.0, -1.0);
        let v = enumerate_vertices(&p, &[0, 1], None, None, &tol());
        assert_eq!(v.len(), 1);
        assert!(v[0].is_origin());
    }

    #[test]
    fn parallel_rows_are_skipped() {
        let p = lp(&[(1.0, 1.0, 1.0), (2.0, 2.0, 3.0)], -1.0, -1.0);
        let v = enumerate_vertices(&p, &[0, 1], None, None, &tol());
        assert_eq!(v, vec![Vertex2D::origin()]);
    }

    #[test]
    fn no_rows_gives_origin_only() {
        let p = lp(&[(1.0, 1.0, 1.0)], -1.0, -1.0);
        assert_eq!(enumerate_vertices(&p, &[], None, None, &tol()), vec![Vertex2D::origin()]);
    }

    #[test]
    fn km3_subproblem_picks_tall_vertex() {
        // Columns of x1 and x3 in the m=3 cube, slack basis.
        let p = lp(&[(1.0, 0.0, 1.0), (2.0, 0.0, 3.0), (2.0, 1.0, 7.0)], -1.0, -1.0);
        let part = partition_rows(&p, &tol());
        assert_eq!(part.pos_rows, vec![0, 1, 2]);
        let s1 = Vertex2D::on_first_axis(&p, 1.0, 0);
        let s2 = Vertex2D::on_second_axis(&p, 7.0, 2);
        let all = ranked_vertices(&p, &part, Some(&s1), Some(&s2), Pruning::Off, &tol()).unwrap();
        let mut pts: Vec<(f64, f64)> = all.iter().map(|v| (v.x1, v.x2)).collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pts, vec![(0.0, 0.0), (0.0, 7.0), (1.0, 0.0), (1.0, 5.0)]);
        let best = solve_2d(&p, &part, Some(&s1), Some(&s2), Pruning::On, &tol()).unwrap();
        assert_eq!((best.x1, best.x2, best.obj), (0.0, 7.0, -7.0));
        assert_eq!(best.binding, vec![2]);
    }

    #[test]
    fn symmetric_tie_prefers_larger_x1() {
        let p = lp(&[(1.0, 1.0, 1.0)], -1.0, -1.0);
        let part = partition_rows(&p, &tol());
        let s1 = Vertex2D::on_first_axis(&p, 1.0, 0);
        let s2 = Vertex2D::on_second_axis(&p, 1.0, 0);
        let best = solve_2d(&p, &part, Some(&s1), Some(&s2), Pruning::On, &tol()).unwrap();
        assert_eq!((best.x1, best.x2), (1.0, 0.0));
    }

    #[test]
    fn ray_detection() {
        let p = lp(&[(1.0, 0.0, 1.0), (2.0, -1.0, 3.0)], -1.0, -1.0);
        let part = partition_rows(&p, &tol());
        assert!(matches!(
            solve_2d(&p, &part, None, None, Pruning::On, &tol()),
            Err(Error::UnboundedSubproblem)
        ));
        // Both columns have positive entries, yet (1,1) is a ray.
        let p = lp(&[(1.0, -1.0, 1.0), (-1.0, 1.0, 1.0)], -1.0, -1.0);
        assert!(has_improving_ray(&p, &tol()));
        let p = lp(&[(1.0, -1.0, 1.0), (-1.0, 2.0, 1.0)], -1.0, -1.0);
        assert!(!has_improving_ray(&p, &tol()));
    }

    #[test]
    fn exact_backend_solves_same_problem() {
        let q = |v: i64| Rational::from_i64(v);
        let p = TwoDimLP::new(
            vec![q(1), q(2), q(2)],
            vec![q(0), q(0), q(1)],
            vec![q(1), q(3), q(7)],
            q(-1),
            q(-1),
        )
        .unwrap();
        let t = Tolerances::exact();
        let part = partition_rows(&p, &t);
        let best = solve_2d(&p, &part, None, None, Pruning::On, &t).unwrap();
        // No special vertices given: the axis vertex (0, 7) is still found.
        assert_eq!((best.x1, best.x2, best.obj), (q(0), q(7), q(-7)));
    }
}
