//! Iteration-bound formulas and a post-hoc audit of finished runs.
//!
//! All logarithms are natural logarithms.

use serde::Serialize;

use crate::engine::{SolveResult, Status};
use crate::error::{Error, Result};
use crate::lp::StandardFormLP;
use crate::scalar::{norm_1, Scalar};

/// `⌈(z0 - z*) / (δ_D γ_ℓ)⌉`.
pub fn bound_theorem1<S: Scalar>(z0: &S, z_star: &S, delta_d: &S, gamma_ell: &S) -> Result<u64> {
    let denom = delta_d.clone() * gamma_ell.clone();
    if !denom.is_positive() {
        return Err(Error::Domain("δ_D·γ_ℓ must be positive".into()));
    }
    let gap = z0.clone() - z_star.clone();
    if gap.is_negative() {
        return Err(Error::Domain("z0 must not be below z*".into()));
    }
    Ok((gap / denom).ceil_u64())
}

/// `⌈γ_D⁰ ‖x*‖₁ / (δ_D γ_ℓ)⌉`, an upper estimate of [`bound_theorem1`].
pub fn bound_theorem1_rhs<S: Scalar>(gamma_d0: &S, x_star_l1: &S, delta_d: &S, gamma_ell: &S) -> Result<u64> {
    let denom = delta_d.clone() * gamma_ell.clone();
    if !denom.is_positive() {
        return Err(Error::Domain("δ_D·γ_ℓ must be positive".into()));
    }
    Ok((gamma_d0.clone() * x_star_l1.clone() / denom).ceil_u64())
}

/// `(n - m)·⌈t ln t⌉`, with the ceiling clamped to at least 1.
fn scaled_log_bound(m: usize, n: usize, t: f64) -> Result<u64> {
    if n <= m {
        return Err(Error::Domain(format!("need n > m (got m={m}, n={n})")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("bound argument {t} is not a positive finite number")));
    }
    let inner = (t * t.ln()).ceil();
    let inner = if inner >= 1.0 { inner } else { 1.0 };
    let total = (n - m) as f64 * inner;
    Ok(if total >= u64::MAX as f64 { u64::MAX } else { total as u64 })
}

/// `(n - m)·⌈m(γ/δ) ln(m γ/δ)⌉` for basic values confined to `[δ, γ]`.
pub fn bound_theorem3(m: usize, n: usize, gamma: f64, delta: f64) -> Result<u64> {
    if !(delta > 0.0) || gamma < delta {
        return Err(Error::Domain(format!("need 0 < δ <= γ (got δ={delta}, γ={gamma})")));
    }
    scaled_log_bound(m, n, m as f64 * (gamma / delta))
}

/// Totally unimodular `A` with integral `b`: `(n - m)·⌈m‖b‖₁ ln(m‖b‖₁)⌉`.
pub fn bound_corollary_tu(m: usize, n: usize, b_l1: f64) -> Result<u64> {
    if !(b_l1 >= 1.0) {
        return Err(Error::Domain(format!("‖b‖₁ must be >= 1 (got {b_l1})")));
    }
    scaled_log_bound(m, n, m as f64 * b_l1)
}

/// Totally unimodular `A` and `b`: `(n - m)·⌈m² ln(m²)⌉`.
pub fn bound_corollary_tu_unimodular_b(m: usize, n: usize) -> Result<u64> {
    scaled_log_bound(m, n, (m * m) as f64)
}

/// Discounted MDP with discount `θ`: `(n - m)·⌈m²/(1-θ) ln(m²/(1-θ))⌉`.
pub fn bound_corollary_mdp(m: usize, n: usize, theta: f64) -> Result<u64> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::Domain(format!("discount must lie in [0, 1) (got {theta})")));
    }
    scaled_log_bound(m, n, (m * m) as f64 / (1.0 - theta))
}

/// `⌈(2m ln 2)·2^m⌉`, the closed form quoted for Dantzig's rule on the
/// variant-3 cube in standard form.
pub fn km_specialized_bound(m: usize) -> u64 {
    let v = (2.0 * m as f64 * std::f64::consts::LN_2 * (m as f64).exp2()).ceil();
    if v >= u64::MAX as f64 {
        u64::MAX
    } else {
        v as u64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub iterations: usize,
    pub z0: f64,
    pub z_star: f64,
    pub delta_d: Option<f64>,
    pub gamma_ell: Option<f64>,
    pub gamma_d0: Option<f64>,
    /// `None` when the run was degenerate and the bound is undefined.
    pub bound: Option<u64>,
    pub bound_rhs: Option<u64>,
    pub nondegenerate: bool,
    pub pass: bool,
}

/// Compares the iteration count of an optimal run against the bound built
/// from its own trackers. `z_star` defaults to the run's final objective.
pub fn audit_run<S: Scalar>(
    result: &SolveResult<S>,
    _lp: &StandardFormLP<S>,
    z_star: Option<&S>,
) -> Result<AuditReport> {
    if result.status != Status::Optimal {
        return Err(Error::Domain(format!("cannot audit a run with status {}", result.status)));
    }
    let t = &result.trackers;
    let z_star = z_star.unwrap_or(&result.z);
    let z0 = result.z0();
    let mut report = AuditReport {
        iterations: result.iterations,
        z0: z0.to_f64(),
        z_star: z_star.to_f64(),
        delta_d: t.delta_d.as_ref().map(Scalar::to_f64),
        gamma_ell: t.gamma_ell.as_ref().map(Scalar::to_f64),
        gamma_d0: t.gamma_d0.as_ref().map(Scalar::to_f64),
        bound: None,
        bound_rhs: None,
        nondegenerate: result.iterations == 0 || t.nondegenerate(),
        pass: false,
    };
    if result.iterations == 0 {
        report.bound = Some(0);
        report.bound_rhs = Some(0);
        report.pass = true;
        return Ok(report);
    }
    if let (Some(d), Some(g), Some(g0)) = (&t.delta_d, &t.gamma_ell, &t.gamma_d0) {
        if t.nondegenerate() {
            let bound = bound_theorem1(z0, z_star, d, g)?;
            report.bound = Some(bound);
            report.bound_rhs = Some(bound_theorem1_rhs(g0, &norm_1(&result.x), d, g)?);
            report.pass = result.iterations as u64 <= bound;
        }
    }
    Ok(report)
}
