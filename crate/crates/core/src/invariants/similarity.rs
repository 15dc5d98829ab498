use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinatorics::next_permutation;
use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

pub const SIMILARITY_LIMIT: usize = 5;

/// Exact determinant by fraction-valued Gaussian elimination.
fn determinant(m: &SymmetricMatrix<BigRational>, size: usize) -> BigRational {
    let mut a: Vec<Vec<BigRational>> = (0..size)
        .map(|i| (0..size).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = &row[col] / &pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_positive_definite(m: &SymmetricMatrix<BigRational>) -> bool {
    (1..=m.order()).all(|k| determinant(m, k).is_positive())
}

/// Whether `PᵀS₁P == S₂` for some permutation matrix `P`, by exhaustive
/// search. Both inputs must be positive definite and of order at most
/// [`SIMILARITY_LIMIT`].
pub fn permutational_similarity_brute(
    s1: &SymmetricMatrix<BigRational>,
    s2: &SymmetricMatrix<BigRational>,
) -> Result<bool> {
    let n = s1.order();
    if n != s2.order() {
        return Err(Error::OrderMismatch {
            left: n,
            right: s2.order(),
        });
    }
    if n > SIMILARITY_LIMIT {
        return Err(Error::LimitExceeded {
            what: "permutational similarity order",
            value: n,
            limit: SIMILARITY_LIMIT,
        });
    }
    if !is_positive_definite(s1) || !is_positive_definite(s2) {
        return Err(Error::InvalidMatrix("matrix is not positive definite".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if s1.select(&perm) == *s2 {
            return Ok(true);
        }
        if !next_permutation(&mut perm) {
            return Ok(false);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[i64]) -> SymmetricMatrix<BigRational> {
        SymmetricMatrix::from_upper_fn(v.len(), |i, j| {
            BigRational::from_integer(if i == j { v[i].into() } else { 0.into() })
        })
    }

    #[test]
    fn diagonal_cases() {
        assert!(permutational_similarity_brute(&diag(&[1, 2]), &diag(&[2, 1])).unwrap());
        assert!(!permutational_similarity_brute(&diag(&[1, 2]), &diag(&[1, 3])).unwrap());
        assert!(permutational_similarity_brute(&diag(&[1, 0]), &diag(&[0, 1])).is_err());
        assert!(permutational_similarity_brute(&diag(&[1; 6]), &diag(&[1; 6])).is_err());
    }

    #[test]
    fn relabeled_matrix() {
        let s = SymmetricMatrix::from_upper_fn(4, |i, j| {
            BigRational::from_integer(if i == j {
                (10 + i as i64).into()
            } else {
                ((i + 2 * j) as i64 % 3).into()
            })
        });
        let p = s.select(&[2, 0, 3, 1]);
        assert!(permutational_similarity_brute(&s, &p).unwrap());
    }
}
