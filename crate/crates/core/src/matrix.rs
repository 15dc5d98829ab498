//! Dense symmetric matrices over exact scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Square symmetric matrix stored row-major in full.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

pub type SymmetricIntMatrix = SymmetricMatrix<BigInt>;
pub type SymmetricRationalMatrix = SymmetricMatrix<BigRational>;

impl<T: Clone + PartialEq> SymmetricMatrix<T> {
    /// Builds from row-major entries, rejecting non-square or asymmetric input.
    pub fn from_row_major(order: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(Error::InvalidMatrix(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidMatrix("rows are not all of equal length".into()));
        }
        Self::from_row_major(order, rows.into_iter().flatten().collect())
    }

    /// Builds from `f(i, j)` for `i <= j` and mirrors it.
    pub fn from_upper_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries: Vec<Option<T>> = vec![None; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[j * order + i] = Some(v.clone());
                entries[i * order + j] = Some(v);
            }
        }
        Self {
            order,
            entries: entries.into_iter().map(|v| v.expect("filled")).collect(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries
            .chunks(self.order.max(1))
            .take(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> U) -> SymmetricMatrix<U> {
        SymmetricMatrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Simultaneous row/column selection: result[a][b] = self[idx[a]][idx[b]].
    /// Indices may repeat.
    pub fn select(&self, idx: &[usize]) -> Self {
        let n = idx.len();
        let mut entries = Vec::with_capacity(n * n);
        for &r in idx {
            for &c in idx {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { order: n, entries }
    }
}

impl<T: Clone + PartialEq + Zero> SymmetricMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![T::zero(); order * order],
        }
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.order + other.order;
        Self::from_upper_fn(n, |i, j| {
            if i < self.order && j < self.order {
                self.get(i, j).clone()
            } else if i >= self.order && j >= self.order {
                other.get(i - self.order, j - self.order).clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.order).all(|i| self.get(i, i).is_zero())
    }
}

impl<T> SymmetricMatrix<T>
where
    T: Clone + PartialEq + Zero + std::ops::Add<Output = T>,
{
    pub fn add_diagonal(&self, shift: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            let idx = i * self.order + i;
            out.entries[idx] = out.entries[idx].clone() + shift.clone();
        }
        out
    }
}

impl<T> SymmetricMatrix<T>
where
    T: Clone + PartialEq + std::ops::Mul<Output = T>,
{
    pub fn scale(&self, c: &T) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|v| c.clone() * v.clone()).collect(),
        }
    }
}

impl<T: ToPrimitive> SymmetricMatrix<T> {
    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.order, self.order, |i, j| {
            self.entries[i * self.order + j].to_f64().unwrap_or(f64::NAN)
        })
    }
}

impl SymmetricMatrix<BigInt> {
    pub fn to_rational(&self) -> SymmetricRationalMatrix {
        self.map(|v| BigRational::from_integer(v.clone()))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric() {
        let err = SymmetricMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidMatrix(_)));
    }

    #[test]
    fn direct_sum_layout() {
        let a = SymmetricMatrix::from_rows(vec![vec![0i64, 1], vec![1, 0]]).unwrap();
        let s = a.direct_sum(&a);
        assert_eq!(s.order(), 4);
        assert_eq!(*s.get(2, 3), 1);
        assert_eq!(*s.get(0, 2), 0);
        assert_eq!(*s.get(0, 1), 1);
    }

    #[test]
    fn select_repeats_rows() {
        let a = SymmetricMatrix::from_rows(vec![vec![0i64, 5], vec![5, 0]]).unwrap();
        let e = a.select(&[0, 0, 1]);
        assert_eq!(e.rows(), vec![vec![0, 0, 5], vec![0, 0, 5], vec![5, 5, 0]]);
    }
}
