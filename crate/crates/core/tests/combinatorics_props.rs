mod common;

use common::{all_labeled_graphs, strategies};
use gbsiso::combinatorics::{kron_reduced, orbit_size, orbits, partitions, DetectionEvent, Orbit};
use gbsiso::graphs::apply_permutation;
use gbsiso::hafnian::{hafnian_fast, hafnian_oracle};
use gbsiso::SymmetricMatrix;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use proptest::prelude::*;

/// Number of weak compositions of `t` into `m` parts, by direct enumeration.
fn weak_compositions(t: u32, m: usize) -> u64 {
    if m == 0 {
        return u64::from(t == 0);
    }
    (0..=t).map(|first| weak_compositions(t - first, m - 1)).sum()
}

#[test]
fn orbit_sizes_cover_compositions() {
    for t in (0..=8u64).step_by(2) {
        for m in 1..=9usize {
            let total: BigUint = partitions(t, m).unwrap().iter().map(orbit_size).sum();
            assert_eq!(total, BigUint::from(weak_compositions(t as u32, m)), "t={t} m={m}");
        }
    }
}

#[test]
fn orbit_structure() {
    for t in (0..=10u64).step_by(2) {
        for m in 1..=7usize {
            let mut seen = std::collections::BTreeSet::new();
            for o in orbits(t, m).unwrap() {
                let rep = o.representative().counts();
                assert!(rep.windows(2).all(|w| w[0] <= w[1]));
                let mult = o.multiplicities();
                assert_eq!(mult.iter().map(|(&j, &k)| u64::from(j) * k as u64).sum::<u64>(), t);
                assert_eq!(mult.values().sum::<usize>(), m);
                let elements: Vec<DetectionEvent> = o.elements().collect();
                assert_eq!(BigUint::from(elements.len()), *o.size());
                assert!(elements.windows(2).all(|w| w[0] < w[1]), "lex order");
                for e in elements {
                    assert_eq!(e.total(), t);
                    assert!(seen.insert(e));
                }
            }
            assert_eq!(seen.len() as u64, weak_compositions(t as u32, m));
        }
    }
}

/// Forced-zero events have zero hafnian for every zero-diagonal 0/1 matrix.
#[test]
fn forced_zero_events_exhaustive() {
    for m in 1..=5usize {
        let graphs = all_labeled_graphs(m);
        for t in (2..=8u64).step_by(2) {
            for o in orbits(t, m).unwrap() {
                if !o.is_forced_zero() {
                    continue;
                }
                for n in o.elements() {
                    for g in &graphs {
                        let a: SymmetricMatrix<BigInt> = g.adjacency_matrix();
                        assert!(hafnian_fast(&kron_reduced(&a, &n).unwrap()).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forced_zero_random_weights(
        m in strategies::int_matrix(1, 5, -4, 4),
        raw in strategies::event(5, 10),
    ) {
        let a = SymmetricMatrix::from_upper_fn(m.order(), |i, j| if i == j { BigInt::zero() } else { m.get(i, j).clone() });
        let n = DetectionEvent::new(raw[..m.order()].to_vec());
        if n.total().is_multiple_of(2) && n.is_forced_zero() && n.total() <= 10 {
            prop_assert!(hafnian_fast(&kron_reduced(&a, &n).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn scaling_on_doubled_expansion(
        m in strategies::int_matrix(1, 3, -3, 3),
        raw in strategies::event(3, 4),
        num in -5i64..6, den in 1i64..6,
    ) {
        let c = BigRational::new(num.into(), den.into());
        let a = m.map(|v| BigRational::from_integer(v.clone()));
        let doubled = a.direct_sum(&a);
        let n = DetectionEvent::new(raw[..m.order()].to_vec());
        let nn = DetectionEvent::new([n.counts(), n.counts()].concat());
        let lhs = hafnian_oracle(&kron_reduced(&doubled.scale(&c), &nn).unwrap()).unwrap();
        let rhs = c.clone().pow(n.total() as i32) * hafnian_oracle(&kron_reduced(&doubled, &nn).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(kron_reduced(&a.scale(&c), &n).unwrap(), kron_reduced(&a, &n).unwrap().scale(&c));
    }

    #[test]
    fn direct_sum_compatible(
        a in strategies::int_matrix(1, 4, -3, 3),
        raw in strategies::event(4, 6),
    ) {
        let b = a.map(|v| v * 2 + 1);
        let n = DetectionEvent::new(raw[..a.order()].to_vec());
        let nn = DetectionEvent::new([n.counts(), n.counts()].concat());
        prop_assert_eq!(
            kron_reduced(&a.direct_sum(&b), &nn).unwrap(),
            kron_reduced(&a, &n).unwrap().direct_sum(&kron_reduced(&b, &n).unwrap())
        );
    }

    #[test]
    fn permutation_commutes(
        (g, p) in strategies::graph_and_permutation(1, 6),
        raw in strategies::event(6, 8),
    ) {
        let m = g.order();
        let n = DetectionEvent::new(raw[..m].to_vec());
        let h = apply_permutation(&g, &p).unwrap();
        let a: SymmetricMatrix<BigInt> = g.adjacency_matrix();
        let b: SymmetricMatrix<BigInt> = h.adjacency_matrix();
        let moved = DetectionEvent::new(p.permute(n.counts()));
        let lhs = hafnian_fast(&kron_reduced(&a, &n).unwrap()).unwrap();
        let rhs = hafnian_fast(&kron_reduced(&b, &moved).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(Orbit::of(&moved).key(), Orbit::of(&n).key());
    }
}

#[test]
fn permutation_convention_is_consistent() {
    // p.permute moves event counts the same way apply_permutation moves vertices.
    let g = gbsiso::graphs::path(4);
    let p = gbsiso::graphs::VertexPermutation::new(vec![2, 0, 3, 1]).unwrap();
    let h = apply_permutation(&g, &p).unwrap();
    let a: SymmetricMatrix<BigInt> = g.adjacency_matrix();
    let b: SymmetricMatrix<BigInt> = h.adjacency_matrix();
    for o in orbits(4, 4).unwrap() {
        for n in o.elements() {
            let moved = DetectionEvent::new(p.permute(n.counts()));
            assert_eq!(
                hafnian_fast(&kron_reduced(&a, &n).unwrap()).unwrap(),
                hafnian_fast(&kron_reduced(&b, &moved).unwrap()).unwrap(),
                "{n}"
            );
        }
    }
}
