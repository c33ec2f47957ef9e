//! Simplex iteration loops: the double-pivot method and single-pivot
//! baselines.

mod stall;
mod step;

use serde::{Deserialize, Serialize};

pub use stall::{AntiStall, RuleOverride};
pub use step::{double_pivot_step, single_pivot_step, Branch, IterationReport, PivotOutcome};

use crate::error::{Error, Result};
use crate::lp::{factor_basis, Iterate, StandardFormLP, Tolerances};
use crate::pivot_rules::{improving_candidates, Candidate};
use crate::scalar::Scalar;
use crate::two_dim::Pruning;
use step::{bland_step, dantzig_step, double_step, longest_step, PairRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotRule {
    Dantzig,
    LongestStep,
    /// Two most negative reduced costs resolved by the two-variable LP.
    TwoMostNegativeDouble,
    /// Dantzig column plus longest-step column resolved by the two-variable LP.
    PaperDouble,
}

impl PivotRule {
    pub const ALL: [PivotRule; 4] = [
        PivotRule::Dantzig,
        PivotRule::LongestStep,
        PivotRule::TwoMostNegativeDouble,
        PivotRule::PaperDouble,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PivotRule::Dantzig => "dantzig",
            PivotRule::LongestStep => "longest-step",
            PivotRule::TwoMostNegativeDouble => "two-most-negative",
            PivotRule::PaperDouble => "double",
        }
    }

    pub fn is_double(self) -> bool {
        matches!(self, PivotRule::TwoMostNegativeDouble | PivotRule::PaperDouble)
    }
}

impl std::fmt::Display for PivotRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PivotRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dantzig" => Ok(PivotRule::Dantzig),
            "longest-step" | "longest" => Ok(PivotRule::LongestStep),
            "two-most-negative" | "tmn" => Ok(PivotRule::TwoMostNegativeDouble),
            "double" | "paper-double" => Ok(PivotRule::PaperDouble),
            other => Err(format!("unknown pivot rule `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveLimits {
    pub max_iterations: usize,
    pub stall_window: usize,
}

impl Default for SolveLimits {
    fn default() -> Self {
        Self {
            max_iterations: 1_000_000,
            stall_window: 50,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions<S> {
    pub rule: PivotRule,
    pub limits: SolveLimits,
    pub tol: Tolerances<S>,
    pub pruning: Pruning,
}

impl<S: Scalar> SolverOptions<S> {
    pub fn new(rule: PivotRule) -> Self {
        Self {
            rule,
            limits: SolveLimits::default(),
            tol: Tolerances::default(),
            pruning: Pruning::On,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    Unbounded,
    IterationLimit,
    NumericalFailure,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Optimal => "Optimal",
            Status::Unbounded => "Unbounded",
            Status::IterationLimit => "IterationLimit",
            Status::NumericalFailure => "NumericalFailure",
        })
    }
}

/// Run constants feeding the iteration bounds. Kept in the solve's own
/// scalar type: Klee-Minty data under the rational backend exceeds the
/// double range.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackerStats<S> {
    /// Largest `|c̄_j|` over improving columns at the start.
    pub gamma_d0: Option<S>,
    /// Smallest per-iteration minimum `|c̄_j|` over improving columns.
    pub delta_d: Option<S>,
    /// Smallest per-iteration longest finite ratio-test step.
    pub gamma_ell: Option<S>,
    /// Objective before the first iteration and after each one.
    pub per_iteration_obj: Vec<S>,
}

impl<S: Scalar> TrackerStats<S> {
    fn record(&mut self, k: usize, cands: &[Candidate<S>]) {
        let mut min_abs: Option<S> = None;
        let mut max_abs: Option<S> = None;
        let mut longest: Option<S> = None;
        for c in cands {
            let a = c.cbar.abs();
            min_abs = Some(min_abs.map_or(a.clone(), |m| m.min_of(a.clone())));
            max_abs = Some(max_abs.map_or(a.clone(), |m| m.max_of(a.clone())));
            if let Some(s) = c.ratio.step() {
                longest = Some(longest.map_or(s.clone(), |l| l.max_of(s.clone())));
            }
        }
        if k == 0 {
            self.gamma_d0 = max_abs;
        }
        if let Some(v) = min_abs {
            self.delta_d = Some(self.delta_d.take().map_or(v.clone(), |d| d.min_of(v)));
        }
        if let Some(v) = longest {
            self.gamma_ell = Some(self.gamma_ell.take().map_or(v.clone(), |g| g.min_of(v)));
        }
    }

    /// Positive `δ_D` and `γ_ℓ`: every iteration moved a strictly positive
    /// distance along its longest candidate.
    pub fn nondegenerate(&self) -> bool {
        matches!((&self.delta_d, &self.gamma_ell), (Some(d), Some(g)) if d.is_positive() && g.is_positive())
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult<S> {
    pub status: Status,
    pub x: Vec<S>,
    pub z: S,
    pub iterations: usize,
    pub double_pivots: usize,
    pub single_pivots: usize,
    pub trackers: TrackerStats<S>,
    pub basis: Vec<usize>,
}

impl<S: Scalar> SolveResult<S> {
    pub fn z0(&self) -> &S {
        &self.trackers.per_iteration_obj[0]
    }
}

/// Solves from `initial_basis`, which must be primal feasible.
pub fn solve<S: Scalar>(
    lp: &StandardFormLP<S>,
    initial_basis: &[usize],
    opts: &SolverOptions<S>,
) -> Result<SolveResult<S>> {
    solve_observed(lp, initial_basis, opts, |_| {})
}

/// Like [`solve`], calling `observer` after every accepted iteration.
pub fn solve_observed<S: Scalar>(
    lp: &StandardFormLP<S>,
    initial_basis: &[usize],
    opts: &SolverOptions<S>,
    mut observer: impl FnMut(&IterationReport<S>),
) -> Result<SolveResult<S>> {
    if opts.limits.max_iterations == 0 || opts.limits.stall_window == 0 {
        return Err(Error::Domain("iteration limit and stall window must be >= 1".into()));
    }
    let tol = &opts.tol;
    let basis = factor_basis(lp, initial_basis, tol)?;
    let mut it = Iterate::new(lp, basis);
    if let Some(row) = it.first_infeasible_row(tol) {
        return Err(Error::InfeasibleStart {
            row: row + 1,
            value: it.x_b[row].to_f64(),
        });
    }

    let mut trackers = TrackerStats {
        gamma_d0: None,
        delta_d: None,
        gamma_ell: None,
        per_iteration_obj: vec![it.z.clone()],
    };
    let mut guard = AntiStall::new(opts.limits.stall_window);
    let (mut doubles, mut singles) = (0, 0);
    let mut k = 0;

    let status = loop {
        let cands = improving_candidates(lp, &it.basis, &it.x_b, &it.cbar_n, tol);
        if cands.is_empty() {
            break Status::Optimal;
        }
        if k >= opts.limits.max_iterations {
            break Status::IterationLimit;
        }
        trackers.record(k, &cands);

        let outcome = match (guard.mode(), opts.rule) {
            (RuleOverride::Bland, _) => bland_step(lp, &it, &cands, tol),
            (_, PivotRule::Dantzig) => dantzig_step(lp, &it, &cands, tol),
            (_, PivotRule::LongestStep) => longest_step(lp, &it, &cands, tol),
            (_, PivotRule::PaperDouble) => {
                double_step(lp, &it, &cands, PairRule::DantzigLongest, opts.pruning, tol)
            }
            (_, PivotRule::TwoMostNegativeDouble) => {
                double_step(lp, &it, &cands, PairRule::TwoMostNegative, opts.pruning, tol)
            }
        };
        let (next, mut rep) = match outcome {
            Ok(PivotOutcome::Moved(next, rep)) => (next, rep),
            Ok(PivotOutcome::Unbounded) => break Status::Unbounded,
            Err(Error::SingularBasis) | Err(Error::InfeasibleStart { .. }) => {
                break Status::NumericalFailure
            }
            Err(e) => return Err(e),
        };
        rep.k = k;
        if rep.branch == Branch::DoubleExchange {
            doubles += 1;
        } else {
            singles += 1;
        }
        guard.observe(&rep.z_before, &rep.z_after, tol);
        trackers.per_iteration_obj.push(rep.z_after.clone());
        observer(&rep);
        it = *next;
        k += 1;
    };

    Ok(SolveResult {
        status,
        x: it.full_x(lp.n()),
        z: it.z.clone(),
        iterations: k,
        double_pivots: doubles,
        single_pivots: singles,
        trackers,
        basis: it.basis.basic().to_vec(),
    })
}
