use crate::error::{Error, Result};
use crate::lp::{DenseMatrix, LuFactors, StandardFormLP, Tolerances};
use crate::scalar::{dot, Scalar};

/// Ordered basic index set with a factorization of `A_B`.
///
/// Position `i` of `basic` pairs with row `i` of every solve. `nonbasic` is
/// the sorted complement. Indices are 0-based.
#[derive(Clone, Debug)]
pub struct Basis<S> {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    lu: LuFactors<S>,
}

impl<S: Scalar> Basis<S> {
    pub fn basic(&self) -> &[usize] {
        &self.basic
    }

    pub fn nonbasic(&self) -> &[usize] {
        &self.nonbasic
    }

    /// `A_B y = v`.
    pub fn solve(&self, v: &[S]) -> Vec<S> {
        self.lu.solve(v)
    }

    /// `A_Bᵀ y = v`.
    pub fn solve_transpose(&self, v: &[S]) -> Vec<S> {
        self.lu.solve_transpose(v)
    }

    /// `ā_j = A_B⁻¹ a_j`.
    pub fn transformed_column(&self, lp: &StandardFormLP<S>, j: usize) -> Vec<S> {
        self.solve(&lp.column(j))
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.basic.contains(&j)
    }
}

/// Factors `A_B` for the given ordered basic indices.
pub fn factor_basis<S: Scalar>(
    lp: &StandardFormLP<S>,
    basic: &[usize],
    tol: &Tolerances<S>,
) -> Result<Basis<S>> {
    let (m, n) = (lp.m(), lp.n());
    if basic.len() != m {
        return Err(Error::InvalidBasis(format!(
            "basis has {} indices, expected {}",
            basic.len(),
            m
        )));
    }
    if let Some(&j) = basic.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidBasis(format!(
            "column index {} out of range 1..={}",
            j + 1,
            n
        )));
    }
    let mut in_basis = vec![false; n];
    for &j in basic {
        if in_basis[j] {
            // A repeated column makes A_B rank deficient.
            return Err(Error::SingularBasis);
        }
        in_basis[j] = true;
    }
    let mut ab = DenseMatrix::zeros(m, m);
    for (pos, &j) in basic.iter().enumerate() {
        for i in 0..m {
            ab.set(i, pos, lp.a.get(i, j).clone());
        }
    }
    let lu = LuFactors::factor(&ab, &tol.eps_sing)?;
    let nonbasic = (0..n).filter(|&j| !in_basis[j]).collect();
    Ok(Basis {
        basic: basic.to_vec(),
        nonbasic,
        lu,
    })
}

/// `b̄ = A_B⁻¹ b`.
pub fn basic_solution<S: Scalar>(lp: &StandardFormLP<S>, basis: &Basis<S>) -> Vec<S> {
    basis.solve(&lp.b)
}

/// `c̄_N = c_N − A_Nᵀ A_B⁻ᵀ c_B`, ordered like `basis.nonbasic()`.
pub fn reduced_costs<S: Scalar>(lp: &StandardFormLP<S>, basis: &Basis<S>) -> Vec<S> {
    let cb: Vec<S> = basis.basic.iter().map(|&j| lp.c[j].clone()).collect();
    let y = basis.solve_transpose(&cb);
    basis
        .nonbasic
        .iter()
        .map(|&j| lp.c[j].clone() - dot(&lp.column(j), &y))
        .collect()
}

/// `cᵀx`.
pub fn objective<S: Scalar>(lp: &StandardFormLP<S>, x: &[S]) -> S {
    dot(&lp.c, x)
}

/// A basic solution together with its reduced costs.
#[derive(Clone, Debug)]
pub struct Iterate<S> {
    pub basis: Basis<S>,
    pub x_b: Vec<S>,
    pub z: S,
    pub cbar_n: Vec<S>,
}

impl<S: Scalar> Iterate<S> {
    pub fn new(lp: &StandardFormLP<S>, basis: Basis<S>) -> Self {
        let x_b = basic_solution(lp, &basis);
        let z = basis
            .basic
            .iter()
            .zip(&x_b)
            .fold(S::zero(), |acc, (&j, x)| acc + lp.c[j].clone() * x.clone());
        let cbar_n = reduced_costs(lp, &basis);
        Self {
            basis,
            x_b,
            z,
            cbar_n,
        }
    }

    /// Full primal vector with nonbasic entries at zero.
    pub fn full_x(&self, n: usize) -> Vec<S> {
        let mut x = vec![S::zero(); n];
        for (&j, v) in self.basis.basic.iter().zip(&self.x_b) {
            x[j] = v.clone();
        }
        x
    }

    /// First row whose basic value violates nonnegativity.
    pub fn first_infeasible_row(&self, tol: &Tolerances<S>) -> Option<usize> {
        self.x_b.iter().position(|v| !tol.is_feasible_value(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn lp_from(rows: &[&[f64]], b: &[f64], c: &[f64]) -> StandardFormLP<f64> {
        StandardFormLP::new(
            DenseMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap(),
            b.to_vec(),
            c.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn identity_basis_solves_trivially() {
        let lp = lp_from(
            &[&[1.0, 0.0, 2.0, 3.0], &[0.0, 1.0, -1.0, 5.0]],
            &[4.0, 6.0],
            &[0.0, 0.0, -1.0, 1.0],
        );
        let basis = factor_basis(&lp, &[0, 1], &Tolerances::default()).unwrap();
        assert_eq!(basis.solve(&[3.0, -2.0]), vec![3.0, -2.0]);
        assert_eq!(basis.nonbasic(), &[2, 3]);
        assert_eq!(basic_solution(&lp, &basis), vec![4.0, 6.0]);
        // c_B = 0 leaves c_N untouched.
        assert_eq!(reduced_costs(&lp, &basis), vec![-1.0, 1.0]);
    }

    #[test]
    fn diagonal_basis_solution() {
        let lp = lp_from(&[&[2.0, 0.0, 1.0], &[0.0, 4.0, 1.0]], &[2.0, 8.0], &[1.0, 1.0, 1.0]);
        let basis = factor_basis(&lp, &[0, 1], &Tolerances::default()).unwrap();
        assert_eq!(basic_solution(&lp, &basis), vec![1.0, 2.0]);
    }

    #[test]
    fn duplicate_index_is_singular() {
        let lp = lp_from(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]], &[1.0, 1.0], &[0.0; 3]);
        assert!(matches!(
            factor_basis(&lp, &[0, 0], &Tolerances::default()),
            Err(Error::SingularBasis)
        ));
        assert!(matches!(
            factor_basis(&lp, &[0], &Tolerances::default()),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            factor_basis(&lp, &[0, 7], &Tolerances::default()),
            Err(Error::InvalidBasis(_))
        ));
    }

    #[test]
    fn objective_of_zero_is_zero() {
        let lp = lp_from(&[&[1.0, 1.0]], &[1.0], &[3.0, -2.0]);
        assert_eq!(objective(&lp, &[0.0, 0.0]), 0.0);
        assert_eq!(objective(&lp, &[1.0, 2.0]), -1.0);
    }

    #[test]
    fn reduced_costs_exact_backend() {
        let q = |v: i64| Rational::from_i64(v);
        let a = DenseMatrix::from_rows(vec![
            vec![q(1), q(2), q(1), q(0)],
            vec![q(3), q(1), q(0), q(1)],
        ])
        .unwrap();
        let lp = StandardFormLP::new(a, vec![q(4), q(6)], vec![q(-1), q(-1), q(0), q(0)]).unwrap();
        let basis = factor_basis(&lp, &[0, 1], &Tolerances::exact()).unwrap();
        // y = A_B^{-T} c_B with A_B = [[1,2],[3,1]], c_B = (-1,-1): y = (-2/5, -1/5).
        let expect = vec![Rational::new(2.into(), 5.into()), Rational::new(1.into(), 5.into())];
        assert_eq!(reduced_costs(&lp, &basis), expect);
    }
}
