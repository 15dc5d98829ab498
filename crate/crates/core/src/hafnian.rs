//! Exact hafnians.
//!
//! [`hafnian_oracle`] walks every perfect pairing and is the reference.
//! [`hafnian_fast`] evaluates the multilinear coefficient of
//! `q(x)^{n/2} / (n/2)!`, with `q(x) = Σ_{i<j} a_ij x_i x_j`, by
//! inclusion–exclusion over index subsets:
//!
//! ```text
//! haf(A) = 1/(n/2)! · Σ_{S ⊆ [n]} (−1)^{n−|S|} q(1_S)^{n/2}
//! ```
//!
//! Subsets are visited in Gray-code order so `q(1_S)` updates in `O(n)`.
//! When the magnitudes allow, the sum runs in `i128` with a power table;
//! otherwise it falls back to `BigInt`.
//!
//! Odd orders have no perfect pairing, so their hafnian is 0. The empty
//! matrix has hafnian 1. Diagonal entries never contribute.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

pub const DEFAULT_ORACLE_LIMIT: usize = 14;
pub const DEFAULT_FAST_CEILING: usize = 32;

/// Orders at or above this split the subset sum across the rayon pool.
const PARALLEL_ORDER: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HafnianLimits {
    pub oracle: usize,
    pub fast: usize,
}

impl Default for HafnianLimits {
    fn default() -> Self {
        Self {
            oracle: DEFAULT_ORACLE_LIMIT,
            fast: DEFAULT_FAST_CEILING,
        }
    }
}

/// Reference hafnian: sum over all `(n−1)!!` perfect pairings.
pub fn hafnian_oracle<T>(m: &SymmetricMatrix<T>) -> Result<T>
where
    T: Clone + PartialEq + Zero + One,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    hafnian_oracle_with_limit(m, DEFAULT_ORACLE_LIMIT)
}

pub fn hafnian_oracle_with_limit<T>(m: &SymmetricMatrix<T>, limit: usize) -> Result<T>
where
    T: Clone + PartialEq + Zero + One,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    let n = m.order();
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "hafnian oracle order (use hafnian_fast)",
            value: n,
            limit,
        });
    }
    if n % 2 == 1 {
        return Ok(T::zero());
    }

    fn pairings<T>(m: &SymmetricMatrix<T>, free: &mut Vec<usize>, acc: &T, total: &mut T)
    where
        T: Clone + PartialEq + Zero + One,
        for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
    {
        if free.is_empty() {
            *total = &*total + acc;
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            let w = m.get(first, partner);
            if !w.is_zero() {
                let next = acc * w;
                pairings(m, free, &next, total);
            }
            free.insert(k, partner);
        }
        free.insert(0, first);
    }

    let mut free: Vec<usize> = (0..n).collect();
    let mut total = T::zero();
    pairings(m, &mut free, &T::one(), &mut total);
    Ok(total)
}

/// Production hafnian over integers; equals [`hafnian_oracle`] exactly.
pub fn hafnian_fast(m: &SymmetricMatrix<BigInt>) -> Result<BigInt> {
    hafnian_fast_with_ceiling(m, DEFAULT_FAST_CEILING)
}

pub fn hafnian_fast_with_ceiling(m: &SymmetricMatrix<BigInt>, ceiling: usize) -> Result<BigInt> {
    if m.order() > ceiling {
        return Err(Error::LimitExceeded {
            what: "hafnian order",
            value: m.order(),
            limit: ceiling,
        });
    }
    let small: Option<Vec<i64>> = m.entries().iter().map(ToPrimitive::to_i64).collect();
    Ok(match small {
        Some(entries) => haf_i64(m.order(), &entries),
        None => haf_bigint(m.order(), m.entries()),
    })
}

/// Hafnian of a rational matrix: scales to integers by the common
/// denominator `d` of the off-diagonal entries and divides by `d^{n/2}`.
pub fn hafnian_rational(m: &SymmetricMatrix<BigRational>) -> Result<BigRational> {
    let n = m.order();
    let mut d = BigInt::one();
    for i in 0..n {
        for j in (i + 1)..n {
            d = d.lcm(m.get(i, j).denom());
        }
    }
    let scaled = SymmetricMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            BigInt::zero()
        } else {
            (m.get(i, j) * BigRational::from_integer(d.clone())).to_integer()
        }
    });
    let h = hafnian_fast(&scaled)?;
    Ok(BigRational::new(h, num_traits::pow(d, n / 2)))
}

/// Hafnian of a row-major `i64` matrix of order `n` (symmetry assumed).
pub(crate) fn haf_i64(n: usize, a: &[i64]) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    match n {
        0 => return BigInt::one(),
        2 => return BigInt::from(a[1]),
        4 => {
            let v = i128::from(a[1]) * i128::from(a[11])
                + i128::from(a[2]) * i128::from(a[7])
                + i128::from(a[3]) * i128::from(a[6]);
            return BigInt::from(v);
        }
        _ => {}
    }
    for i in 0..n {
        if (0..n).all(|j| i == j || a[i * n + j] == 0) {
            return BigInt::zero();
        }
    }

    let half = n / 2;
    let mut pos_weight: u128 = 0;
    let mut neg_weight: u128 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = a[i * n + j];
            if v >= 0 {
                pos_weight += v as u128;
            } else {
                neg_weight += v.unsigned_abs() as u128;
            }
        }
    }
    let w = pos_weight.max(neg_weight).max(1) as f64;
    // |Σ| ≤ 2^n · W^{n/2} must stay below 2^126.
    let bits = (half as f64) * w.log2() + n as f64 + 1.0;
    if bits < 126.0 {
        let table_span = pos_weight + neg_weight + 1;
        let sum = if table_span <= 1 << 16 {
            let offset = neg_weight as i128;
            let pow: Vec<i128> = (0..table_span as i128).map(|q| (q - offset).pow(half as u32)).collect();
            subset_sum_i128(n, a, |q| pow[(q + offset) as usize])
        } else {
            subset_sum_i128(n, a, |q| q.pow(half as u32))
        };
        let fact: i128 = (1..=half as i128).product();
        debug_assert_eq!(sum % fact, 0);
        return BigInt::from(sum / fact);
    }
    let entries: Vec<BigInt> = a.iter().map(|&v| BigInt::from(v)).collect();
    haf_bigint(n, &entries)
}

/// Σ_S (−1)^{n−|S|} power(q(1_S)) over all subsets, Gray-code ordered and
/// split into independent chunks by the top bits.
fn subset_sum_i128(n: usize, a: &[i64], power: impl Fn(i128) -> i128 + Sync) -> i128 {
    let split = if n >= PARALLEL_ORDER { 6 } else { 0 };
    let low = n - split;
    let chunk = |hi: u64| -> i128 {
        // Fixed high bits `hi` on indices low..n; Gray code over 0..low.
        let mut inside = vec![false; n];
        for b in 0..split {
            inside[low + b] = (hi >> b) & 1 == 1;
        }
        // row_sum[v] = Σ_{u ∈ S} a_uv
        let mut row_sum = vec![0i128; n];
        let mut q: i128 = 0;
        for u in 0..n {
            if inside[u] {
                for v in 0..n {
                    if v != u {
                        row_sum[v] += i128::from(a[u * n + v]);
                    }
                }
            }
        }
        for u in 0..n {
            if inside[u] {
                q += row_sum[u];
            }
        }
        q /= 2;
        let mut size = inside.iter().filter(|&&b| b).count();
        let sign = |size: usize| if (n - size).is_multiple_of(2) { 1i128 } else { -1 };
        let mut acc = sign(size) * power(q);
        for step in 1u64..(1u64 << low) {
            let v = step.trailing_zeros() as usize;
            if inside[v] {
                inside[v] = false;
                size -= 1;
                q -= row_sum[v];
                for u in 0..n {
                    if u != v {
                        row_sum[u] -= i128::from(a[v * n + u]);
                    }
                }
            } else {
                inside[v] = true;
                size += 1;
                q += row_sum[v];
                for u in 0..n {
                    if u != v {
                        row_sum[u] += i128::from(a[v * n + u]);
                    }
                }
            }
            acc += sign(size) * power(q);
        }
        acc
    };
    if split == 0 {
        chunk(0)
    } else {
        (0u64..(1 << split)).into_par_iter().map(chunk).sum()
    }
}

fn haf_bigint(n: usize, a: &[BigInt]) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    let half = n / 2;
    let mut inside = vec![false; n];
    let mut row_sum = vec![BigInt::zero(); n];
    let mut q = BigInt::zero();
    let mut size = 0usize;
    let term = |q: &BigInt, size: usize| {
        let p = num_traits::pow(q.clone(), half);
        if (n - size).is_multiple_of(2) {
            p
        } else {
            -p
        }
    };
    let mut acc = term(&q, size);
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        if inside[v] {
            inside[v] = false;
            size -= 1;
            q -= &row_sum[v];
            for u in 0..n {
                if u != v {
                    row_sum[u] -= &a[v * n + u];
                }
            }
        } else {
            inside[v] = true;
            size += 1;
            q += &row_sum[v];
            for u in 0..n {
                if u != v {
                    row_sum[u] += &a[v * n + u];
                }
            }
        }
        acc += term(&q, size);
    }
    let fact: BigInt = (1..=half).map(BigInt::from).product();
    debug_assert!((&acc % &fact).is_zero());
    acc / fact
}

/// Result of checking `haf(c(A⊕A + kI)) == c^M · haf(A)²` for `A` of order `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingIdentity {
    pub holds: bool,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

/// Evaluates both sides of the doubling identity exactly. The left side is
/// computed on the full `2M × 2M` rational matrix (pairing oracle when the
/// order allows, otherwise the subset-sum path).
pub fn hafnian_squared_identity_check(
    a: &SymmetricMatrix<BigInt>,
    c: &BigRational,
    k: &BigInt,
) -> Result<DoublingIdentity> {
    let m = a.order();
    if m % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "doubling identity needs an even order, got {m}"
        )));
    }
    let doubled = a.direct_sum(a).add_diagonal(k).to_rational().scale(c);
    let lhs = if doubled.order() <= DEFAULT_ORACLE_LIMIT {
        hafnian_oracle(&doubled)?
    } else {
        hafnian_rational(&doubled)?
    };
    let h = BigRational::from_integer(hafnian_fast(a)?);
    let rhs = num_traits::pow(c.clone(), m) * &h * &h;
    Ok(DoublingIdentity {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Largest absolute entry, used by callers sizing work.
pub fn max_abs_entry(m: &SymmetricMatrix<BigInt>) -> BigInt {
    m.entries().iter().map(|v| v.abs()).max().unwrap_or_default()
}
