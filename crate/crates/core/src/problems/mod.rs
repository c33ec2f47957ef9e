//! Instance generators, standard-form conversion and the text format.

mod io;
mod random;

use serde::{Deserialize, Serialize};

pub use io::{format_lp, parse_lp, read_lp, write_lp};
pub use random::{random_lp, random_lp_with_columns, RandomSpec};

use crate::error::{Error, Result};
use crate::lp::{DenseMatrix, InequalityLP, StandardFormLP};
use crate::scalar::Scalar;

/// The three Klee-Minty cube families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KleeMintyVariant {
    /// Rows `Σ_{j<i} 2^{i-j+1} x_j + x_i ≤ 5^i`, cost `-2^{m-i}`.
    V1,
    /// Rows `2 Σ_{j<i} 10^{i-j} x_j + x_i ≤ 100^{i-1}`, cost `-10^{m-i}`.
    V2,
    /// Rows `2 Σ_{j<k} x_j + x_k ≤ 2^k - 1`, cost `-1`.
    V3,
}

impl KleeMintyVariant {
    pub const ALL: [KleeMintyVariant; 3] = [Self::V1, Self::V2, Self::V3];

    pub fn name(self) -> &'static str {
        match self {
            Self::V1 => "v1",
            Self::V2 => "v2",
            Self::V3 => "v3",
        }
    }
}

impl std::fmt::Display for KleeMintyVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for KleeMintyVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "v1" | "1" => Ok(Self::V1),
            "v2" | "2" => Ok(Self::V2),
            "v3" | "3" => Ok(Self::V3),
            other => Err(format!("unknown Klee-Minty variant `{other}`")),
        }
    }
}

fn checked<S: Scalar>(v: S, what: &str) -> Result<S> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "{what} is not representable in the {} backend",
            S::NAME
        )))
    }
}

/// `min cᵀx  s.t.  Ax ≤ b, x ≥ 0` for the chosen cube, with 1-based row `i`
/// stored at index `i-1`.
pub fn klee_minty<S: Scalar>(variant: KleeMintyVariant, m: usize) -> Result<InequalityLP<S>> {
    if m == 0 {
        return Err(Error::Dimension("Klee-Minty cubes need m >= 1".into()));
    }
    let mu = m as u32;
    let mut a = DenseMatrix::zeros(m, m);
    let mut b = Vec::with_capacity(m);
    let mut c = Vec::with_capacity(m);
    for i in 1..=mu {
        let row = (i - 1) as usize;
        a.set(row, row, S::one());
        for j in 1..i {
            let v = match variant {
                KleeMintyVariant::V1 => S::int_pow(2, i - j + 1),
                KleeMintyVariant::V2 => S::from_i64(2) * S::int_pow(10, i - j),
                KleeMintyVariant::V3 => S::from_i64(2),
            };
            a.set(row, (j - 1) as usize, checked(v, "constraint coefficient")?);
        }
        let (rhs, cost) = match variant {
            KleeMintyVariant::V1 => (S::int_pow(5, i), S::int_pow(2, mu - i)),
            KleeMintyVariant::V2 => (S::int_pow(100, i - 1), S::int_pow(10, mu - i)),
            KleeMintyVariant::V3 => (S::int_pow(2, i) - S::one(), S::one()),
        };
        b.push(checked(rhs, "right-hand side")?);
        c.push(-checked(cost, "cost coefficient")?);
    }
    InequalityLP::new(a, b, c)
}

/// Appends a slack per row: `A ← [A | I]`, `c ← (c, 0)`. The returned basis
/// holds the slack columns, which is feasible exactly when `b ≥ 0`.
pub fn to_standard_form<S: Scalar>(p: &InequalityLP<S>) -> Result<(StandardFormLP<S>, Vec<usize>)> {
    let (m, d) = (p.m(), p.d());
    let a = p.a.hcat(&DenseMatrix::identity(m))?;
    let mut c = p.c.clone();
    c.extend(std::iter::repeat_n(S::zero(), m));
    let lp = StandardFormLP::new(a, p.b.clone(), c)?;
    Ok((lp, (d..d + m).collect()))
}

/// Variant-3 cube in standard form with its slack basis, built directly.
///
/// `x_1 + x_{m+1} = 1`, `2 Σ_{i<k} x_i + x_k + x_{m+k} = 2^k - 1`.
pub fn km_standard<S: Scalar>(m: usize) -> (StandardFormLP<S>, Vec<usize>) {
    assert!(m >= 1, "km_standard needs m >= 1");
    let n = 2 * m;
    let mut a = DenseMatrix::zeros(m, n);
    let mut b = Vec::with_capacity(m);
    for k in 0..m {
        for i in 0..k {
            a.set(k, i, S::from_i64(2));
        }
        a.set(k, k, S::one());
        a.set(k, m + k, S::one());
        b.push(S::int_pow(2, k as u32 + 1) - S::one());
    }
    let mut c = vec![-S::one(); m];
    c.extend(std::iter::repeat_n(S::zero(), m));
    let lp = StandardFormLP::new(a, b, c).expect("dimensions are consistent");
    (lp, (m..n).collect())
}

/// Closed-form optimizer of a cube in its original variables.
#[derive(Clone, Debug, PartialEq)]
pub struct KnownOptimum<S> {
    pub x_star: Vec<S>,
    pub z_star: S,
}

impl<S: Scalar> KnownOptimum<S> {
    /// Optimizer extended with slack values `b - A x*`.
    pub fn standard_x(&self, p: &InequalityLP<S>) -> Vec<S> {
        let ax = p.a.mul_vec(&self.x_star);
        let mut x = self.x_star.clone();
        x.extend(p.b.iter().zip(ax).map(|(b, v)| b.clone() - v));
        x
    }
}

/// Every cube is optimized at `(0, …, 0, b_m)`.
pub fn known_optimum<S: Scalar>(variant: KleeMintyVariant, m: usize) -> Result<KnownOptimum<S>> {
    if m == 0 {
        return Err(Error::Dimension("Klee-Minty cubes need m >= 1".into()));
    }
    let last = match variant {
        KleeMintyVariant::V1 => S::int_pow(5, m as u32),
        KleeMintyVariant::V2 => S::int_pow(10, 2 * (m as u32 - 1)),
        KleeMintyVariant::V3 => S::int_pow(2, m as u32) - S::one(),
    };
    let last = checked(last, "optimal value")?;
    let mut x_star = vec![S::zero(); m];
    x_star[m - 1] = last.clone();
    Ok(KnownOptimum { x_star, z_star: -last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn ints(v: &[i64]) -> Vec<f64> {
        v.iter().map(|&x| x as f64).collect()
    }

    #[test]
    fn variant_three_small() {
        let p = klee_minty::<f64>(KleeMintyVariant::V3, 2).unwrap();
        assert_eq!(p.a.row(0), &[1.0, 0.0]);
        assert_eq!(p.a.row(1), &[2.0, 1.0]);
        assert_eq!(p.b, ints(&[1, 3]));
        assert_eq!(p.c, ints(&[-1, -1]));
    }

    #[test]
    fn variant_one_small() {
        let p = klee_minty::<f64>(KleeMintyVariant::V1, 2).unwrap();
        assert_eq!(p.a.row(0), &[1.0, 0.0]);
        assert_eq!(p.a.row(1), &[4.0, 1.0]);
        assert_eq!(p.b, ints(&[5, 25]));
        assert_eq!(p.c, ints(&[-2, -1]));
        let p = klee_minty::<f64>(KleeMintyVariant::V1, 3).unwrap();
        assert_eq!(p.a.row(2), &[8.0, 4.0, 1.0]);
    }

    #[test]
    fn variant_two_small() {
        let p = klee_minty::<f64>(KleeMintyVariant::V2, 2).unwrap();
        assert_eq!(p.a.row(1), &[20.0, 1.0]);
        assert_eq!(p.b, ints(&[1, 100]));
        assert_eq!(p.c, ints(&[-10, -1]));
    }

    #[test]
    fn variant_two_overflows_doubles() {
        assert!(matches!(
            klee_minty::<f64>(KleeMintyVariant::V2, 200),
            Err(Error::Overflow(_))
        ));
        assert!(klee_minty::<f64>(KleeMintyVariant::V2, 150).is_ok());
        assert!(klee_minty::<Rational>(KleeMintyVariant::V2, 200).is_ok());
    }

    #[test]
    fn standard_form_paths_agree() {
        let p = klee_minty::<f64>(KleeMintyVariant::V3, 2).unwrap();
        let (lp, basis) = to_standard_form(&p).unwrap();
        let (direct, direct_basis) = km_standard::<f64>(2);
        assert_eq!(lp, direct);
        assert_eq!(basis, direct_basis);
        assert_eq!(lp.a.row(1), &[2.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn single_row_standard_form() {
        let p = klee_minty::<f64>(KleeMintyVariant::V3, 1).unwrap();
        let (lp, basis) = to_standard_form(&p).unwrap();
        assert_eq!((lp.m(), lp.n()), (1, 2));
        assert_eq!(basis, vec![1]);
    }

    #[test]
    fn known_optima() {
        let o = known_optimum::<f64>(KleeMintyVariant::V1, 3).unwrap();
        assert_eq!(o.x_star, vec![0.0, 0.0, 125.0]);
        assert_eq!(o.z_star, -125.0);
        assert_eq!(known_optimum::<f64>(KleeMintyVariant::V2, 3).unwrap().z_star, -1e4);
        assert_eq!(known_optimum::<f64>(KleeMintyVariant::V3, 4).unwrap().z_star, -15.0);
    }

    #[test]
    fn optimizer_makes_last_row_tight() {
        for variant in KleeMintyVariant::ALL {
            for m in 1..=8 {
                let p = klee_minty::<Rational>(variant, m).unwrap();
                let opt = known_optimum::<Rational>(variant, m).unwrap();
                let x = opt.standard_x(&p);
                assert!(x.iter().all(|v| !v.is_negative()));
                assert!(x[2 * m - 1].is_zero());
            }
        }
    }
}
