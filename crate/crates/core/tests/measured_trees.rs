use std::collections::BTreeSet;

use eqtrees::lie::lie_character;
use eqtrees::perm::Perm;
use eqtrees::tree::{enumerate_trees, f_inverse, f_map, measured_tree_to_partition_chain, MeasuredTree};
use eqtrees::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// A tree on `n` leaves, lengths `k/q` in (0, 1], with the edge `top` set to 1.
fn measured_tree(n: usize) -> impl Strategy<Value = MeasuredTree> {
    let trees = enumerate_trees(n, 16).unwrap();
    (0..trees.len(), prop::collection::vec((1i64..=12, 1i64..=12), 6), any::<prop::sample::Index>()).prop_map(
        move |(i, raw, top)| {
            let tree = trees[i].clone();
            let edges = tree.clusters().len();
            let mut lengths: Vec<Rational> = raw
                .iter()
                .take(edges)
                .map(|&(a, b)| Rational::new(a.min(b).into(), a.max(b).into()))
                .collect();
            lengths[top.index(edges)] = Rational::one();
            MeasuredTree::new(tree, lengths).unwrap()
        },
    )
}

fn sized_tree() -> impl Strategy<Value = MeasuredTree> {
    (3usize..=6).prop_flat_map(measured_tree)
}

fn permutation(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trip_recovers_tree(m in sized_tree()) {
        let point = f_map(&m);
        prop_assert!(point.validate().is_ok());
        prop_assert_eq!(f_inverse(&point).unwrap(), m);
    }

    #[test]
    fn coordinates_are_gaps_between_distinct_lengths(m in sized_tree()) {
        let point = f_map(&m);
        let distinct: BTreeSet<Rational> = m.lengths().iter().cloned().collect();
        prop_assert_eq!(point.trees.len(), distinct.len());
        let total: Rational = point.coordinates.iter().cloned().sum();
        prop_assert!(total.is_one());
        prop_assert!(point.coordinates.iter().all(|c| *c > Rational::zero()));
        // The chain starts at the tree itself and loses edges as it goes.
        prop_assert_eq!(&point.trees[0], m.tree());
        for w in point.trees.windows(2) {
            prop_assert!(w[1].clusters().len() < w[0].clusters().len());
        }
    }

    #[test]
    fn f_commutes_with_relabelling((m, sigma) in (3usize..=6).prop_flat_map(|n| (measured_tree(n), permutation(n)))) {
        prop_assert_eq!(f_map(&m.image(&sigma)), f_map(&m).image(&sigma));
        prop_assert_eq!(f_inverse(&f_map(&m).image(&sigma)).unwrap(), m.image(&sigma));
    }

    #[test]
    fn partition_chain_coarsens_with_depth(m in sized_tree()) {
        let (parts, weights) = measured_tree_to_partition_chain(&m);
        prop_assert_eq!(parts.len(), weights.len());
        for w in parts.windows(2) {
            prop_assert!(w[0].coarsens(&w[1]) && w[0] != w[1]);
        }
        prop_assert!(weights.iter().all(|w| *w > Rational::zero()));
        prop_assert!(weights.iter().cloned().sum::<Rational>().is_one());
    }
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Closed form: nonzero only when every cycle has the same length `d`, where
/// it equals `mu(d) (n/d - 1)! d^(n/d - 1)`.
fn lie_value_closed_form(cycle_type: &[usize]) -> i64 {
    let d = cycle_type[0];
    if cycle_type.iter().any(|&c| c != d) {
        return 0;
    }
    let k = cycle_type.len();
    let fact: i64 = (1..k as i64).product();
    mobius(d) * fact * (d as i64).pow(k as u32 - 1)
}

#[test]
fn lie_character_matches_closed_form() {
    for n in 2..=6 {
        let chi = lie_character(n).unwrap();
        for (cycle_type, value) in &chi.by_cycle_type {
            let mut full = cycle_type.clone();
            full.resize(full.len() + (n - full.iter().sum::<usize>()), 1);
            assert_eq!(*value, lie_value_closed_form(&full), "n = {n}, type {cycle_type:?}");
        }
    }
}
