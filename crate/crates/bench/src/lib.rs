//! Shared fixtures for the benchmark harness.

use dpsimplex::{
    klee_minty, random_lp, to_standard_form, KleeMintyVariant, PivotRule, RandomSpec, Scalar,
    SolverOptions, StandardFormLP, Status,
};

pub struct Case<S> {
    pub name: String,
    pub lp: StandardFormLP<S>,
    pub basis: Vec<usize>,
}

pub fn km_case<S: Scalar>(variant: KleeMintyVariant, m: usize) -> Case<S> {
    let p = klee_minty::<S>(variant, m).expect("cube fits the backend");
    let (lp, basis) = to_standard_form(&p).expect("cube converts");
    Case {
        name: format!("km-{variant}-m{m}"),
        lp,
        basis,
    }
}

pub fn random_case<S: Scalar>(m: usize, seed: u64) -> Case<S> {
    let (lp, basis) = random_lp::<S>(RandomSpec { m, seed }).expect("random instance");
    Case {
        name: format!("random-m{m}-s{seed}"),
        lp,
        basis,
    }
}

/// First seed at or after `from` whose instance has a finite optimum.
pub fn bounded_seed(m: usize, from: u64) -> u64 {
    (from..)
        .find(|&seed| {
            let c = random_case::<f64>(m, seed);
            let res = dpsimplex::solve(&c.lp, &c.basis, &SolverOptions::new(PivotRule::Dantzig));
            matches!(res, Ok(r) if r.status == Status::Optimal)
        })
        .expect("some seed is bounded")
}

/// Solves and returns the iteration count.
pub fn iterations<S: Scalar>(case: &Case<S>, rule: PivotRule) -> usize {
    dpsimplex::solve(&case.lp, &case.basis, &SolverOptions::new(rule))
        .expect("solve")
        .iterations
}
