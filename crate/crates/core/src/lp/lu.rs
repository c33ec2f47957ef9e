//! LU factorization with partial pivoting, `P A = L U`.

use crate::error::{Error, Result};
use crate::lp::matrix::DenseMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct LuFactors<S> {
    n: usize,
    /// Packed factors: strict lower part is `L` (unit diagonal), upper part is `U`.
    lu: Vec<S>,
    /// `perm[i]` is the original row that ended up at position `i`.
    perm: Vec<usize>,
}

impl<S: Scalar> LuFactors<S> {
    /// Factors a square matrix. A pivot with magnitude `<= eps_sing * max|a_ij|`
    /// is reported as [`Error::SingularBasis`].
    pub fn factor(a: &DenseMatrix<S>, eps_sing: &S) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::Dimension("LU of a non-square matrix".into()));
        }
        let scale = a.max_abs();
        let threshold = eps_sing.clone() * scale;
        let mut lu: Vec<S> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).clone())
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let mut best = k;
            let mut best_abs = lu[k * n + k].abs();
            for i in k + 1..n {
                let v = lu[i * n + k].abs();
                if v > best_abs {
                    best = i;
                    best_abs = v;
                }
            }
            if best_abs.is_zero() || best_abs <= threshold {
                return Err(Error::SingularBasis);
            }
            if best != k {
                for j in 0..n {
                    lu.swap(k * n + j, best * n + j);
                }
                perm.swap(k, best);
            }
            let pivot = lu[k * n + k].clone();
            for i in k + 1..n {
                if lu[i * n + k].is_zero() {
                    continue;
                }
                let factor = lu[i * n + k].clone() / pivot.clone();
                for j in k + 1..n {
                    if lu[k * n + j].is_zero() {
                        continue;
                    }
                    let upd = lu[i * n + j].clone() - factor.clone() * lu[k * n + j].clone();
                    lu[i * n + j] = upd;
                }
                lu[i * n + k] = factor;
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<S> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            let mut acc = x[i].clone();
            for j in 0..i {
                let l = &self.lu[i * n + j];
                if !l.is_zero() && !x[j].is_zero() {
                    acc = acc - l.clone() * x[j].clone();
                }
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i].clone();
            for j in i + 1..n {
                let u = &self.lu[i * n + j];
                if !u.is_zero() && !x[j].is_zero() {
                    acc = acc - u.clone() * x[j].clone();
                }
            }
            x[i] = acc / self.lu[i * n + i].clone();
        }
        x
    }

    /// Solves `Aᵀ y = c`.
    pub fn solve_transpose(&self, c: &[S]) -> Vec<S> {
        let n = self.n;
        assert_eq!(c.len(), n);
        // Aᵀ = Uᵀ Lᵀ P, so solve Uᵀ w = c, Lᵀ v = w, then y = Pᵀ v.
        let mut w: Vec<S> = c.to_vec();
        for i in 0..n {
            let mut acc = w[i].clone();
            for j in 0..i {
                let u = &self.lu[j * n + i];
                if !u.is_zero() && !w[j].is_zero() {
                    acc = acc - u.clone() * w[j].clone();
                }
            }
            w[i] = acc / self.lu[i * n + i].clone();
        }
        for i in (0..n).rev() {
            let mut acc = w[i].clone();
            for j in i + 1..n {
                let l = &self.lu[j * n + i];
                if !l.is_zero() && !w[j].is_zero() {
                    acc = acc - l.clone() * w[j].clone();
                }
            }
            w[i] = acc;
        }
        let mut y = vec![S::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            y[p] = w[i].clone();
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn mat(rows: &[&[f64]]) -> DenseMatrix<f64> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn solves_with_pivoting() {
        let a = mat(&[&[0.0, 2.0, 1.0], &[1.0, 1.0, 0.0], &[3.0, 0.0, 1.0]]);
        let lu = LuFactors::factor(&a, &1e-12).unwrap();
        let b = [3.0, 2.0, 4.0];
        let x = lu.solve(&b);
        let r = a.mul_vec(&x);
        for (ri, bi) in r.iter().zip(b) {
            assert!((ri - bi).abs() < 1e-12);
        }
        let y = lu.solve_transpose(&b);
        for j in 0..3 {
            let s: f64 = (0..3).map(|i| a.get(i, j) * y[i]).sum();
            assert!((s - b[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn detects_singular() {
        let a = mat(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            LuFactors::factor(&a, &1e-12),
            Err(Error::SingularBasis)
        ));
        let q = a.map(|v| Rational::from_f64(*v).unwrap());
        assert!(LuFactors::factor(&q, &Rational::from_i64(0)).is_err());
    }

    #[test]
    fn exact_under_rationals() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]).map(|v| Rational::from_f64(*v).unwrap());
        let lu = LuFactors::factor(&a, &Rational::from_i64(0)).unwrap();
        let b = vec![Rational::from_i64(1), Rational::from_i64(0)];
        let x = lu.solve(&b);
        assert_eq!(a.mul_vec(&x), b);
    }
}
