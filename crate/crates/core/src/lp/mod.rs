//! LP instance types, dense linear algebra and basis bookkeeping.

mod basis;
mod lu;
mod matrix;

pub use basis::{basic_solution, factor_basis, objective, reduced_costs, Basis, Iterate};
pub use lu::LuFactors;
pub use matrix::DenseMatrix;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `min cᵀx  s.t.  A x = b, x ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardFormLP<S> {
    pub a: DenseMatrix<S>,
    pub b: Vec<S>,
    pub c: Vec<S>,
}

impl<S: Scalar> StandardFormLP<S> {
    pub fn new(a: DenseMatrix<S>, b: Vec<S>, c: Vec<S>) -> Result<Self> {
        let (m, n) = (a.rows(), a.cols());
        if m == 0 {
            return Err(Error::Dimension("at least one constraint row is required".into()));
        }
        if m >= n {
            return Err(Error::Dimension(format!(
                "standard form needs m < n (got m={}, n={})",
                m, n
            )));
        }
        if b.len() != m {
            return Err(Error::Dimension(format!("b has {} entries, expected {}", b.len(), m)));
        }
        if c.len() != n {
            return Err(Error::Dimension(format!("c has {} entries, expected {}", c.len(), n)));
        }
        Ok(Self { a, b, c })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        self.a.col(j)
    }

    /// `‖A x − b‖∞`.
    pub fn residual_inf(&self, x: &[S]) -> S {
        let ax = self.a.mul_vec(x);
        ax.into_iter()
            .zip(&self.b)
            .fold(S::zero(), |acc, (l, r)| acc.max_of((l - r.clone()).abs()))
    }

    /// Finds, for every row, a column equal to the matching unit vector.
    /// Later columns win, so appended slacks are preferred.
    pub fn identity_basis(&self) -> Option<Vec<usize>> {
        let m = self.m();
        let mut basis = vec![None; m];
        for j in 0..self.n() {
            let mut hit = None;
            let mut is_unit = true;
            for i in 0..m {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if *v == S::one() && hit.is_none() {
                    hit = Some(i);
                } else {
                    is_unit = false;
                    break;
                }
            }
            if let (true, Some(i)) = (is_unit, hit) {
                basis[i] = Some(j);
            }
        }
        basis.into_iter().collect()
    }

    pub fn to_f64(&self) -> StandardFormLP<f64> {
        StandardFormLP {
            a: self.a.map(Scalar::to_f64),
            b: crate::scalar::to_f64_vec(&self.b),
            c: crate::scalar::to_f64_vec(&self.c),
        }
    }
}

/// `min cᵀx  s.t.  A x ≤ b, x ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityLP<S> {
    pub a: DenseMatrix<S>,
    pub b: Vec<S>,
    pub c: Vec<S>,
}

impl<S: Scalar> InequalityLP<S> {
    pub fn new(a: DenseMatrix<S>, b: Vec<S>, c: Vec<S>) -> Result<Self> {
        if b.len() != a.rows() || c.len() != a.cols() {
            return Err(Error::Dimension(format!(
                "A is {}x{}, b has {}, c has {}",
                a.rows(),
                a.cols(),
                b.len(),
                c.len()
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn d(&self) -> usize {
        self.a.cols()
    }
}

/// Zero-tolerance thresholds under the exact backend.
///
/// Each threshold is relative: a quantity `q` is compared against
/// `eps * (1 + |q|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances<S> {
    pub eps_cost: S,
    pub eps_ratio: S,
    pub eps_feas: S,
    pub eps_sing: S,
}

pub const DEFAULT_EPS_COST: f64 = 1e-9;
pub const DEFAULT_EPS_RATIO: f64 = 1e-9;
pub const DEFAULT_EPS_FEAS: f64 = 1e-7;
pub const DEFAULT_EPS_SING: f64 = 1e-12;

impl<S: Scalar> Default for Tolerances<S> {
    fn default() -> Self {
        if S::EXACT {
            Self::exact()
        } else {
            Self::from_f64(
                DEFAULT_EPS_COST,
                DEFAULT_EPS_RATIO,
                DEFAULT_EPS_FEAS,
                DEFAULT_EPS_SING,
            )
            .expect("default tolerances are finite")
        }
    }
}

impl<S: Scalar> Tolerances<S> {
    pub fn exact() -> Self {
        Self {
            eps_cost: S::zero(),
            eps_ratio: S::zero(),
            eps_feas: S::zero(),
            eps_sing: S::zero(),
        }
    }

    pub fn from_f64(cost: f64, ratio: f64, feas: f64, sing: f64) -> Result<Self> {
        let conv = |v: f64, name: &str| {
            if v < 0.0 {
                return Err(Error::Domain(format!("tolerance {} must be >= 0", name)));
            }
            S::from_f64(v).ok_or_else(|| Error::Domain(format!("tolerance {} is not finite", name)))
        };
        Ok(Self {
            eps_cost: conv(cost, "eps_cost")?,
            eps_ratio: conv(ratio, "eps_ratio")?,
            eps_feas: conv(feas, "eps_feas")?,
            eps_sing: conv(sing, "eps_sing")?,
        })
    }

    fn band(eps: &S, q: &S) -> S {
        if eps.is_zero() {
            S::zero()
        } else {
            eps.clone() * (S::one() + q.abs())
        }
    }

    /// Reduced cost that signals an improving direction.
    pub fn is_improving(&self, cbar: &S) -> bool {
        *cbar < -Self::band(&self.eps_cost, cbar)
    }

    /// Column entry that takes part in a ratio test.
    pub fn is_positive_entry(&self, a: &S) -> bool {
        *a > Self::band(&self.eps_ratio, a)
    }

    pub fn is_negative_entry(&self, a: &S) -> bool {
        *a < -Self::band(&self.eps_ratio, a)
    }

    /// Primal value that counts as nonnegative.
    pub fn is_feasible_value(&self, x: &S) -> bool {
        *x >= -Self::band(&self.eps_feas, x)
    }

    /// Primal value that is meaningfully above zero.
    pub fn is_positive_value(&self, x: &S) -> bool {
        *x > Self::band(&self.eps_feas, x)
    }

    /// `lhs ≤ rhs` up to the feasibility band of `rhs`.
    pub fn leq_feas(&self, lhs: &S, rhs: &S) -> bool {
        *lhs <= rhs.clone() + Self::band(&self.eps_feas, rhs)
    }

    /// `after` is strictly below `before` by more than the cost band.
    pub fn decreased(&self, before: &S, after: &S) -> bool {
        *after < before.clone() - Self::band(&self.eps_cost, before)
    }

    /// Two objective values that are indistinguishable.
    pub fn objective_tie(&self, a: &S, b: &S) -> bool {
        let scale = a.abs().max_of(b.abs());
        (a.clone() - b.clone()).abs() <= Self::band(&self.eps_cost, &scale)
    }
}
