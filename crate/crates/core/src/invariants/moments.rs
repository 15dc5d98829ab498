//! Gaussian moments `μ(n, B) = ∂^n exp(½xᵀBx)|₀` and sums built on them.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial, DetectionEvent, Orbit};
use crate::error::{Error, Result};
use crate::gbs::GbsEncoding;
use crate::matrix::SymmetricMatrix;
use crate::scan::scan_orbit;

pub const MOMENT_PHOTON_LIMIT: u64 = 12;

fn check_moment_args(n: &DetectionEvent, order: usize) -> Result<()> {
    if n.modes() != order {
        return Err(Error::OrderMismatch {
            left: order,
            right: n.modes(),
        });
    }
    if n.total() > MOMENT_PHOTON_LIMIT {
        return Err(Error::LimitExceeded {
            what: "moment photon total",
            value: n.total() as usize,
            limit: MOMENT_PHOTON_LIMIT as usize,
        });
    }
    Ok(())
}

fn rational_factorial(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(factorial(n)))
}

/// `μ(n, B)`, exact.
///
/// Every pairing of the index multiset `{1^{n_1}, 2^{n_2}, …}` is a
/// multigraph with degree sequence `n` (a pair of equal indices is a loop).
/// The pairings realizing a multigraph with edge counts `e_pq` and loop
/// counts `l_p` number `n! / (Π_{p<q} e_pq! · Π_p l_p! 2^{l_p})`, each
/// contributing `Π b_pq^{e_pq} Π b_pp^{l_p}`.
pub fn moment(n: &DetectionEvent, b: &SymmetricMatrix<BigRational>) -> Result<BigRational> {
    check_moment_args(n, b.order())?;
    if n.total() % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let m = b.order();
    let mut remaining: Vec<u32> = n.counts().to_vec();
    let mut total = BigRational::zero();

    // Walks the upper triangle (p, q ≥ p) row by row.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        b: &SymmetricMatrix<BigRational>,
        m: usize,
        p: usize,
        q: usize,
        remaining: &mut Vec<u32>,
        weight: &BigRational,
        denom: &BigUint,
        total: &mut BigRational,
    ) {
        if p == m {
            *total += weight / BigRational::from_integer(BigInt::from(denom.clone()));
            return;
        }
        if q == m {
            // Row p must be fully used before moving on.
            if remaining[p] == 0 {
                walk(b, m, p + 1, p + 1, remaining, weight, denom, total);
            }
            return;
        }
        let entry = b.get(p, q);
        if p == q {
            let max_loops = remaining[p] / 2;
            let mut w = weight.clone();
            let mut d = denom.clone();
            for l in 0..=max_loops {
                if l > 0 {
                    if entry.is_zero() {
                        break;
                    }
                    w *= entry;
                    d *= BigUint::from(2 * l);
                }
                remaining[p] -= 2 * l;
                walk(b, m, p, q + 1, remaining, &w, &d, total);
                remaining[p] += 2 * l;
            }
        } else {
            let max_edges = remaining[p].min(remaining[q]);
            let mut w = weight.clone();
            let mut d = denom.clone();
            for e in 0..=max_edges {
                if e > 0 {
                    if entry.is_zero() {
                        break;
                    }
                    w *= entry;
                    d *= BigUint::from(e);
                }
                remaining[p] -= e;
                remaining[q] -= e;
                walk(b, m, p, q + 1, remaining, &w, &d, total);
                remaining[p] += e;
                remaining[q] += e;
            }
        }
    }

    walk(
        b,
        m,
        0,
        0,
        &mut remaining,
        &BigRational::one(),
        &BigUint::one(),
        &mut total,
    );
    Ok(total * BigRational::from_integer(BigInt::from(n.factorial())))
}

/// `μ(n, tI + A)` for zero-diagonal `A`, expanded in powers of `t`:
///
/// ```text
/// Σ_m t^{|m|} Π_i n_i! / (m_i! 2^{m_i} (n_i − 2m_i)!) · μ(n − 2m, A)
/// ```
///
/// over all `m` with `2m_i ≤ n_i`.
pub fn moment_diagonal_shift(
    n: &DetectionEvent,
    a: &SymmetricMatrix<BigRational>,
    t: &BigRational,
) -> Result<BigRational> {
    Ok(moment_shift_coefficients(n, a)?
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * t + c))
}

/// Coefficients of `μ(n, tI + A)` as a polynomial in `t`, constant term first.
pub fn moment_shift_coefficients(n: &DetectionEvent, a: &SymmetricMatrix<BigRational>) -> Result<Vec<BigRational>> {
    check_moment_args(n, a.order())?;
    if !a.has_zero_diagonal() {
        return Err(Error::InvalidMatrix(
            "diagonal-shift expansion needs a zero-diagonal matrix".into(),
        ));
    }
    let half = (n.total() / 2) as usize;
    let mut coeffs = vec![BigRational::zero(); half + 1];
    if n.total() % 2 == 1 {
        return Ok(coeffs);
    }
    let counts = n.counts();
    let mut loops = vec![0u32; counts.len()];
    loop {
        let reduced: Vec<u32> = counts.iter().zip(&loops).map(|(&c, &l)| c - 2 * l).collect();
        let mu = moment(&DetectionEvent::new(reduced), a)?;
        if !mu.is_zero() {
            let mut coef = BigRational::one();
            for (&c, &l) in counts.iter().zip(&loops) {
                coef *= rational_factorial(c.into())
                    / (rational_factorial(l.into())
                        * BigRational::from_integer(BigInt::one() << l)
                        * rational_factorial((c - 2 * l).into()));
            }
            let power: u32 = loops.iter().sum();
            coeffs[power as usize] += coef * mu;
        }
        // Odometer over 0 ≤ loops[i] ≤ counts[i]/2.
        let mut i = 0;
        while i < loops.len() {
            if 2 * (loops[i] + 1) <= counts[i] {
                loops[i] += 1;
                break;
            }
            loops[i] = 0;
            i += 1;
        }
        if i == loops.len() {
            break;
        }
    }
    Ok(coeffs)
}

/// `Σ_{σ ∈ S_M} haf(A⊘J_{σ(n)}) = |Stab(n)| · Σ_{m ∈ O} haf(A⊘J_m)`.
///
/// Hafnians of 0/1 matrices are non-negative and `√p(m)` is proportional
/// to `haf(A⊘J_m)` with a factor constant on the orbit, so this integer is
/// the symmetrized sum of `√p` up to that common factor.
pub fn symmetrized_moment_sum(e: &GbsEncoding, o: &Orbit) -> Result<BigInt> {
    if o.modes() != e.modes() {
        return Err(Error::OrderMismatch {
            left: e.modes(),
            right: o.modes(),
        });
    }
    if o.is_forced_zero() {
        return Ok(BigInt::zero());
    }
    let sum = scan_orbit(e, o, None, BigInt::zero, |acc, _, h| *acc += h, |a, b| a + b)?;
    Ok(sum * BigInt::from(o.stabilizer_size()))
}
