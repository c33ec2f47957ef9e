//! Single iterations of the simplex loop.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{factor_basis, Iterate, StandardFormLP, Tolerances};
use crate::pivot_rules::{
    dantzig_among, improving_candidates, longest_among, ratio_test, ratio_test_bland,
    two_most_negative, Candidate, RatioResult,
};
use crate::scalar::Scalar;
use crate::two_dim::{
    compare_vertices, partition_rows, ranked_vertices, Pruning, TwoDimLP, Vertex2D,
};

/// Which path an iteration took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Single pivot on the most negative reduced cost.
    Dantzig,
    /// Single pivot on the longest ratio-test step.
    LongestStep,
    /// Least-index pivot chosen by the anti-stall guard.
    Bland,
    /// Double-pivot rule with exactly one improving column.
    OnlyCandidate,
    /// Double-pivot rule where a single row restricts the pair; the better
    /// axis vertex is taken.
    SingleRow,
    /// Two variables entered, two left.
    DoubleExchange,
    /// The sub-problem optimum lies on an axis, so one variable entered.
    SingleExchange,
    /// Every sub-problem vertex failed to factor; single Dantzig pivot.
    Fallback,
}

/// Record of one accepted iteration. Column indices are 0-based.
#[derive(Clone, Debug)]
pub struct IterationReport<S> {
    pub k: usize,
    pub branch: Branch,
    pub z_before: S,
    pub z_after: S,
    pub entering: Vec<usize>,
    pub leaving: Vec<usize>,
    /// Values taken by the entering variables.
    pub steps: Vec<S>,
    /// Objective decreases of the two axis vertices `(θ1,0)` and `(0,θ2)`
    /// of the pair that was considered, for double-pivot iterations.
    pub special_decreases: Option<(S, S)>,
}

impl<S: Scalar> IterationReport<S> {
    pub fn decrease(&self) -> S {
        self.z_before.clone() - self.z_after.clone()
    }
}

pub enum PivotOutcome<S> {
    Moved(Box<Iterate<S>>, IterationReport<S>),
    Unbounded,
}

fn report<S: Scalar>(
    it: &Iterate<S>,
    next: &Iterate<S>,
    branch: Branch,
    entering: Vec<usize>,
    leaving: Vec<usize>,
    steps: Vec<S>,
) -> IterationReport<S> {
    IterationReport {
        k: 0,
        branch,
        z_before: it.z.clone(),
        z_after: next.z.clone(),
        entering,
        leaving,
        steps,
        special_decreases: None,
    }
}

/// Rebuilds the iterate for a new basic set, rejecting singular or
/// infeasible outcomes.
fn rebuild<S: Scalar>(lp: &StandardFormLP<S>, basic: &[usize], tol: &Tolerances<S>) -> Result<Iterate<S>> {
    let basis = factor_basis(lp, basic, tol)?;
    let next = Iterate::new(lp, basis);
    if let Some(row) = next.first_infeasible_row(tol) {
        return Err(Error::InfeasibleStart {
            row: row + 1,
            value: next.x_b[row].to_f64(),
        });
    }
    Ok(next)
}

fn exchange<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    cand: &Candidate<S>,
    ratio: &RatioResult<S>,
    branch: Branch,
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let RatioResult::Bounded { leaving_row, step } = ratio else {
        return Ok(PivotOutcome::Unbounded);
    };
    let mut basic = it.basis.basic().to_vec();
    let leaving = basic[*leaving_row];
    basic[*leaving_row] = cand.col;
    let next = rebuild(lp, &basic, tol)?;
    let rep = report(it, &next, branch, vec![cand.col], vec![leaving], vec![step.clone()]);
    Ok(PivotOutcome::Moved(Box::new(next), rep))
}

/// Standard exchange on nonbasic column `j` at its ratio-test row.
pub fn single_pivot_step<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    j: usize,
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let pos = it
        .basis
        .nonbasic()
        .iter()
        .position(|&c| c == j)
        .ok_or_else(|| Error::InvalidBasis(format!("column {} is basic", j + 1)))?;
    if !tol.is_improving(&it.cbar_n[pos]) {
        return Err(Error::Domain(format!("column {} does not improve", j + 1)));
    }
    let column = it.basis.transformed_column(lp, j);
    let ratio = ratio_test(&it.x_b, &column, tol);
    let cand = Candidate {
        pos,
        col: j,
        cbar: it.cbar_n[pos].clone(),
        column,
        ratio: ratio.clone(),
    };
    exchange(lp, it, &cand, &ratio, Branch::Dantzig, tol)
}

pub(crate) fn dantzig_step<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    cands: &[Candidate<S>],
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let cand = &cands[dantzig_among(cands).expect("caller checked for candidates")];
    exchange(lp, it, cand, &cand.ratio, Branch::Dantzig, tol)
}

pub(crate) fn longest_step<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    cands: &[Candidate<S>],
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let k = longest_among(cands, None).expect("caller checked for candidates");
    exchange(lp, it, &cands[k], &cands[k].ratio, Branch::LongestStep, tol)
}

pub(crate) fn bland_step<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    cands: &[Candidate<S>],
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    // Candidates are in ascending column order already.
    let cand = &cands[0];
    let ratio = ratio_test_bland(&it.x_b, &cand.column, it.basis.basic(), tol);
    exchange(lp, it, cand, &ratio, Branch::Bland, tol)
}

/// Which pair of columns a double-pivot rule feeds to the sub-problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PairRule {
    /// Dantzig pick plus longest step among the others.
    DantzigLongest,
    /// Two most negative reduced costs. A vertex at which both columns
    /// enter is taken ahead of any single-entry vertex.
    TwoMostNegative,
}

fn special_decrease<S: Scalar>(cand: &Candidate<S>) -> Option<S> {
    cand.ratio.step().map(|s| -(cand.cbar.clone() * s.clone()))
}

pub(crate) fn double_step<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    cands: &[Candidate<S>],
    rule: PairRule,
    pruning: Pruning,
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let by_pos = |pos: usize| cands.iter().position(|c| c.pos == pos).expect("candidate for position");
    let (k1, k2) = match rule {
        PairRule::DantzigLongest => {
            let k1 = dantzig_among(cands).expect("candidates exist");
            (k1, longest_among(cands, Some(cands[k1].col)))
        }
        PairRule::TwoMostNegative => {
            let (p1, p2) = two_most_negative(&it.cbar_n, tol).expect("candidates exist");
            (by_pos(p1), p2.map(by_pos))
        }
    };
    let c1 = &cands[k1];
    let Some(k2) = k2 else {
        // One improving column: Dantzig and longest step coincide.
        let outcome = exchange(lp, it, c1, &c1.ratio, Branch::OnlyCandidate, tol)?;
        return Ok(with_specials(outcome, special_decrease(c1), special_decrease(c1)));
    };
    let c2 = &cands[k2];
    let (RatioResult::Bounded { leaving_row: r1, step: t1 }, RatioResult::Bounded { leaving_row: r2, step: t2 }) =
        (&c1.ratio, &c2.ratio)
    else {
        return Ok(PivotOutcome::Unbounded);
    };

    let rhs: Vec<S> = it
        .x_b
        .iter()
        .map(|v| if v.is_negative() { S::zero() } else { v.clone() })
        .collect();
    let sub = TwoDimLP::new(
        c1.column.clone(),
        c2.column.clone(),
        rhs,
        c1.cbar.clone(),
        c2.cbar.clone(),
    )?;
    let part = partition_rows(&sub, tol);
    let s1 = Vertex2D::on_first_axis(&sub, t1.clone(), *r1);
    let s2 = Vertex2D::on_second_axis(&sub, t2.clone(), *r2);
    let specials = (special_decrease(c1), special_decrease(c2));

    if part.pos_rows.len() == 1 {
        let (cand, branch) = if compare_vertices(&s2, &s1, tol) == std::cmp::Ordering::Less {
            (c2, Branch::SingleRow)
        } else {
            (c1, Branch::SingleRow)
        };
        let outcome = exchange(lp, it, cand, &cand.ratio, branch, tol)?;
        return Ok(with_specials(outcome, specials.0, specials.1));
    }

    let mut ranked = match ranked_vertices(&sub, &part, Some(&s1), Some(&s2), pruning, tol) {
        Ok(r) => r,
        Err(Error::UnboundedSubproblem) => return Ok(PivotOutcome::Unbounded),
        Err(e) => return Err(e),
    };
    if rule == PairRule::TwoMostNegative {
        // Both chosen columns enter whenever some vertex allows it; the
        // stable sort keeps objective order within each group.
        ranked.sort_by_key(|v| !is_double_vertex(v, tol));
    }
    for v in &ranked {
        match apply_vertex(lp, it, c1, c2, v, tol) {
            Ok(outcome) => return Ok(with_specials(outcome, specials.0, specials.1)),
            Err(Error::SingularBasis) | Err(Error::InfeasibleStart { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut outcome = exchange(lp, it, c1, &c1.ratio, Branch::Fallback, tol)?;
    if let PivotOutcome::Moved(_, rep) = &mut outcome {
        rep.branch = Branch::Fallback;
    }
    Ok(with_specials(outcome, specials.0, specials.1))
}

fn with_specials<S: Scalar>(outcome: PivotOutcome<S>, d1: Option<S>, d2: Option<S>) -> PivotOutcome<S> {
    match outcome {
        PivotOutcome::Moved(next, mut rep) => {
            if let (Some(a), Some(b)) = (d1, d2) {
                rep.special_decreases = Some((a, b));
            }
            PivotOutcome::Moved(next, rep)
        }
        other => other,
    }
}

fn is_double_vertex<S: Scalar>(v: &Vertex2D<S>, tol: &Tolerances<S>) -> bool {
    v.binding.len() == 2 && tol.is_positive_value(&v.x1) && tol.is_positive_value(&v.x2)
}

fn apply_vertex<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    c1: &Candidate<S>,
    c2: &Candidate<S>,
    v: &Vertex2D<S>,
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let pos1 = tol.is_positive_value(&v.x1);
    let pos2 = tol.is_positive_value(&v.x2);
    match (pos1, pos2) {
        _ if is_double_vertex(v, tol) => {
            let (i1, i2) = (v.binding[0], v.binding[1]);
            let mut basic = it.basis.basic().to_vec();
            let leaving = vec![basic[i1], basic[i2]];
            basic[i1] = c1.col;
            basic[i2] = c2.col;
            let next = rebuild(lp, &basic, tol)?;
            let rep = report(
                it,
                &next,
                Branch::DoubleExchange,
                vec![c1.col, c2.col],
                leaving,
                vec![v.x1.clone(), v.x2.clone()],
            );
            Ok(PivotOutcome::Moved(Box::new(next), rep))
        }
        (_, true) if !pos1 => exchange(lp, it, c2, &c2.ratio, Branch::SingleExchange, tol),
        // Axis vertex on x1, or the origin when every step is zero.
        _ => exchange(lp, it, c1, &c1.ratio, Branch::SingleExchange, tol),
    }
}

/// One iteration of the double-pivot rule: Dantzig column plus longest-step
/// column, resolved by the two-variable sub-problem.
pub fn double_pivot_step<S: Scalar>(
    lp: &StandardFormLP<S>,
    it: &Iterate<S>,
    pruning: Pruning,
    tol: &Tolerances<S>,
) -> Result<PivotOutcome<S>> {
    let cands = improving_candidates(lp, &it.basis, &it.x_b, &it.cbar_n, tol);
    if cands.is_empty() {
        return Err(Error::Domain("iterate is already optimal".into()));
    }
    if cands.iter().any(|c| c.ratio.is_unbounded()) && cands.len() == 1 {
        return Ok(PivotOutcome::Unbounded);
    }
    double_step(lp, it, &cands, PairRule::DantzigLongest, pruning, tol)
}
