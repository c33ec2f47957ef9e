use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{DenseMatrix, StandardFormLP};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub m: usize,
    pub seed: u64,
}

/// Uniform on `[0, 1)` with 53 random bits: `(next_u64 >> 11) · 2^-53`.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `A = [M | I]`, `b > 0`, `c = (c₁, 0)` with `n = 2m`.
///
/// The stream is ChaCha8 seeded by `seed_from_u64(seed)`. Draws are taken
/// in the order `M` (row-major), `b`, `c₁`; `M` and `c₁` entries are
/// `2u - 1 ∈ [-1, 1)` and `b` entries are `1 - u ∈ (0, 1]`.
pub fn random_lp<S: Scalar>(spec: RandomSpec) -> Result<(StandardFormLP<S>, Vec<usize>)> {
    random_lp_with_columns(spec.m, 2 * spec.m, spec.seed)
}

/// Same construction with `n - m` structural columns.
pub fn random_lp_with_columns<S: Scalar>(
    m: usize,
    n: usize,
    seed: u64,
) -> Result<(StandardFormLP<S>, Vec<usize>)> {
    if m == 0 || n <= m {
        return Err(Error::Dimension(format!("random LP needs 1 <= m < n (got m={m}, n={n})")));
    }
    let d = n - m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conv = |v: f64| S::from_f64(v).expect("draws are finite");
    let mut m_entries = Vec::with_capacity(m * d);
    for _ in 0..m * d {
        m_entries.push(conv(2.0 * unit(&mut rng) - 1.0));
    }
    let b: Vec<S> = (0..m).map(|_| conv(1.0 - unit(&mut rng))).collect();
    let mut c: Vec<S> = (0..d).map(|_| conv(2.0 * unit(&mut rng) - 1.0)).collect();
    c.extend(std::iter::repeat_n(S::zero(), m));

    let structural = DenseMatrix::from_row_major(m, d, m_entries)?;
    let a = structural.hcat(&DenseMatrix::identity(m))?;
    Ok((StandardFormLP::new(a, b, c)?, (d..n).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn deterministic_per_seed() {
        let spec = RandomSpec { m: 6, seed: 42 };
        let (a, ba) = random_lp::<f64>(spec).unwrap();
        let (b, bb) = random_lp::<f64>(spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(ba, bb);
        let (c, _) = random_lp::<f64>(RandomSpec { m: 6, seed: 43 }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn ranges_and_shape() {
        let (lp, basis) = random_lp::<f64>(RandomSpec { m: 8, seed: 7 }).unwrap();
        assert_eq!((lp.m(), lp.n()), (8, 16));
        assert_eq!(basis, (8..16).collect::<Vec<_>>());
        assert!(lp.b.iter().all(|&v| v > 0.0 && v <= 1.0));
        assert!(lp.c[..8].iter().all(|&v| (-1.0..1.0).contains(&v)));
        assert!(lp.c[8..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rational_copy_is_exact() {
        let spec = RandomSpec { m: 3, seed: 9 };
        let (d, _) = random_lp::<f64>(spec).unwrap();
        let (r, _) = random_lp::<Rational>(spec).unwrap();
        assert_eq!(r.to_f64(), d);
    }

    #[test]
    fn general_column_count() {
        let (lp, basis) = random_lp_with_columns::<f64>(3, 7, 1).unwrap();
        assert_eq!((lp.m(), lp.n()), (3, 7));
        assert_eq!(basis, vec![4, 5, 6]);
        assert!(random_lp_with_columns::<f64>(3, 3, 1).is_err());
    }
}
