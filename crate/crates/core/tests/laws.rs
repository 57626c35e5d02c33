use std::collections::BTreeSet;

use eqtrees::gset::GSet;
use eqtrees::homology::{character, homology, order_complex, reduced_homology, vertex_action, SimplicialComplex};
use eqtrees::partition::{all_partitions, build_partition_poset, Partition};
use eqtrees::perm::{all_subgroups, generate_group, Group, Perm};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

/// A group generated by one or two random permutations of 2..=5 points.
fn small_group() -> impl Strategy<Value = Group> {
    (2usize..=5).prop_flat_map(|n| prop::collection::vec(permutation(n), 1..=2).prop_map(move |g| generate_group(&g, n).unwrap()))
}

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n, n).prop_map(move |labels| {
        let mut blocks = vec![Vec::new(); n];
        for (p, &b) in labels.iter().enumerate() {
            blocks[b].push(p);
        }
        blocks.retain(|b| !b.is_empty());
        Partition::from_blocks(n, &blocks).unwrap()
    })
}

/// Facets on up to 7 vertices, each of size 1..=4.
fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 1..=6)
        .prop_map(|facets| SimplicialComplex::from_facets(7, facets.into_iter().map(|f| f.into_iter().collect())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subgroup_orders_divide_group_order(g in small_group()) {
        for h in all_subgroups(&g).unwrap() {
            prop_assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn orbit_times_stabilizer_is_group_order(g in small_group()) {
        let a = GSet::natural(&g);
        for orbit in a.orbits() {
            let stab = a.stabilizer(orbit[0]).unwrap();
            prop_assert_eq!(orbit.len() * stab.order(), g.order());
        }
    }

    #[test]
    fn burnside_counts_orbits(g in small_group()) {
        let a = GSet::natural(&g);
        let fixed: usize = g.elements().iter().map(|p| (0..a.size()).filter(|&x| p.apply(x) == x).count()).sum();
        prop_assert_eq!(fixed, a.orbits().len() * g.order());
    }

    #[test]
    fn sign_is_multiplicative((p, q) in (2usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        prop_assert_eq!(p.inverse().sign(), p.sign());
    }

    #[test]
    fn boundary_of_boundary_vanishes(k in complex()) {
        prop_assert!(k.verify_boundaries().is_ok());
    }

    #[test]
    fn euler_characteristic_from_betti_numbers(k in complex()) {
        prop_assert_eq!(homology(&k).euler_characteristic(), k.euler_characteristic());
        prop_assert_eq!(reduced_homology(&k).euler_characteristic(), k.euler_characteristic() - 1);
    }

    #[test]
    fn meet_and_join_are_bounds((p, q) in (1usize..=7).prop_flat_map(|n| (partition(n), partition(n)))) {
        let meet = p.meet(&q);
        let join = p.join(&q);
        prop_assert!(p.coarsens(&meet) && q.coarsens(&meet));
        prop_assert!(join.coarsens(&p) && join.coarsens(&q));
        prop_assert_eq!(p.meet(&join), p.clone());
        prop_assert_eq!(p.join(&meet), p.clone());
        prop_assert_eq!(q.meet(&p), meet);
    }

    #[test]
    fn images_preserve_refinement((p, q, s) in (1usize..=7).prop_flat_map(|n| (partition(n), partition(n), permutation(n)))) {
        prop_assert_eq!(p.coarsens(&q), p.image(&s).coarsens(&q.image(&s)));
        prop_assert_eq!(p.image(&s).block_count(), p.block_count());
    }
}

#[test]
fn partition_counts_are_bell_numbers() {
    let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
    for (n, &b) in bell.iter().enumerate().skip(1) {
        let parts = all_partitions(n).unwrap();
        assert_eq!(parts.len(), b);
        assert_eq!(parts.iter().collect::<BTreeSet<_>>().len(), b);
    }
}

/// Characters of real representations satisfy `chi(g) = chi(g^-1)`.
#[test]
fn homology_characters_are_real() {
    for gens in ["(1 2);(1 2 3 4)", "(1 2 3 4)", "(1 2 3);(1 2)"] {
        let g = Group::parse(gens, None).unwrap();
        let p = build_partition_poset(&GSet::natural(&g)).unwrap();
        let k = order_complex(&p).unwrap();
        let top = reduced_homology(&k).concentrated_in().unwrap() as usize;
        let chi = character(&k, &g, &vertex_action(&p), top).unwrap();
        for x in 0..g.order() {
            assert_eq!(chi.values[x], chi.values[g.inv(x)], "{gens}");
        }
        assert!(chi.is_class_function(&g));
    }
}
