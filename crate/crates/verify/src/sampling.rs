//! Seeded random measured trees.

use eqtrees::tree::{MeasuredTree, ReducedTree};
use eqtrees::Rational;
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest denominator used for random edge lengths.
pub const MAX_DENOMINATOR: i64 = 12;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly chosen tree from `trees` with lengths `k/q`, `1 ≤ k ≤ q ≤ 12`;
/// one uniformly chosen edge is stretched to length 1.
pub fn random_measured_tree<R: Rng>(trees: &[ReducedTree], rng: &mut R) -> MeasuredTree {
    let tree = trees[rng.random_range(0..trees.len())].clone();
    let edges = tree.inner_edge_count();
    let mut lengths: Vec<Rational> = (0..edges)
        .map(|_| {
            let q = rng.random_range(1..=MAX_DENOMINATOR);
            let k = rng.random_range(1..=q);
            Rational::new(BigInt::from(k), BigInt::from(q))
        })
        .collect();
    lengths[rng.random_range(0..edges)] = Rational::from_integer(BigInt::from(1));
    MeasuredTree::new(tree, lengths).expect("lengths lie in (0, 1] with maximum 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqtrees::tree::enumerate_trees;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let trees = enumerate_trees(5, 7).unwrap();
        let draw = |seed| {
            let mut rng = rng_from_seed(seed);
            (0..20).map(|_| random_measured_tree(&trees, &mut rng)).collect::<Vec<_>>()
        };
        let a = draw(0);
        assert_eq!(a, draw(0));
        assert_ne!(a, draw(1));
        let one = Rational::from_integer(BigInt::from(1));
        for m in &a {
            assert!(m.lengths().iter().any(|l| *l == one));
        }
    }
}
