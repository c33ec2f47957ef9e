//! Dense simplex solver with a double-pivot entering rule.
//!
//! Each iteration of the double-pivot rule picks one column by Dantzig's
//! rule and a second by the longest ratio-test step, then moves to the best
//! vertex of the two-variable LP those columns span. Classic single-pivot
//! rules, Klee-Minty and random instance generators, iteration-bound
//! formulas and a brute-force oracle are included for comparison.
//!
//! ```
//! use dpsimplex::{km_standard, solve, PivotRule, SolverOptions, Status};
//!
//! let (lp, basis) = km_standard::<f64>(5);
//! let res = solve(&lp, &basis, &SolverOptions::new(PivotRule::PaperDouble)).unwrap();
//! assert_eq!(res.status, Status::Optimal);
//! assert_eq!(res.iterations, 1);
//! assert_eq!(res.z, -31.0);
//! ```

pub mod bounds;
pub mod engine;
pub mod error;
pub mod lp;
pub mod oracle;
pub mod pivot_rules;
pub mod problems;
pub mod scalar;
pub mod two_dim;

pub use bounds::{audit_run, AuditReport};
pub use engine::{
    solve, solve_observed, Branch, IterationReport, PivotRule, SolveLimits, SolveResult,
    SolverOptions, Status, TrackerStats,
};
pub use error::{Error, Result};
pub use lp::{DenseMatrix, InequalityLP, StandardFormLP, Tolerances};
pub use problems::{
    klee_minty, km_standard, known_optimum, random_lp, to_standard_form, KleeMintyVariant,
    KnownOptimum, RandomSpec,
};
pub use scalar::{Rational, Scalar};
pub use two_dim::{Pruning, TwoDimLP, Vertex2D};
