//! Parallel map-reduce over the elements of an orbit.

use num_bigint::{BigInt, BigUint};
use rayon::iter::{ParallelBridge, ParallelIterator};

use crate::combinatorics::{DetectionEvent, Orbit};
use crate::error::{Error, Result};
use crate::gbs::GbsEncoding;

/// Orbits at or below this size are scanned on the calling thread.
const SEQUENTIAL_LIMIT: u64 = 512;

/// Folds `(event, haf(A⊘J_{|n|}))` over every element of `o`. Reductions must
/// be commutative and associative; the visiting order is unspecified.
pub(crate) fn scan_orbit<A, I, F, R>(
    e: &GbsEncoding,
    o: &Orbit,
    budget: Option<u64>,
    init: I,
    fold: F,
    reduce: R,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &DetectionEvent, &BigInt) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    if let Some(b) = budget {
        if o.size() > &BigUint::from(b) {
            return Err(Error::OrbitBudget {
                orbit: o.representative().counts().to_vec(),
                size: o.size().to_string(),
                budget: b,
            });
        }
    }
    // Every element shares the representative's total, so one probe covers
    // the size limits of the whole orbit.
    e.event_hafnian(o.representative())?;

    if o.size() <= &BigUint::from(SEQUENTIAL_LIMIT) {
        let mut acc = init();
        for n in o.elements() {
            let h = e.event_hafnian(&n)?;
            fold(&mut acc, &n, &h);
        }
        return Ok(acc);
    }
    o.elements()
        .par_bridge()
        .try_fold(&init, |mut acc, n| {
            let h = e.event_hafnian(&n)?;
            fold(&mut acc, &n, &h);
            Ok(acc)
        })
        .try_reduce(&init, |a, b| Ok(reduce(a, b)))
}
