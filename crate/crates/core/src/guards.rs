//! Size limits that keep exhaustive constructions at desk scale.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest group whose full multiplication table is stored.
    pub group_order: usize,
    /// Largest group whose subgroup lattice is enumerated.
    pub subgroup_search: usize,
    /// Largest ground set for partition enumeration.
    pub partition_points: usize,
    /// Largest leaf set for tree enumeration.
    pub tree_leaves: usize,
    /// Largest number of chains materialized in a chain poset.
    pub chain_count: usize,
    /// Largest arity of the multilinear Lie representation.
    pub lie_degree: usize,
    /// Largest G-set for the tree homology module comparison.
    pub lie_homology_points: usize,
    /// Largest `d * m` for the Weyl normalizer scans.
    pub weyl_points: usize,
    /// Node budget for poset isomorphism search.
    pub iso_nodes: usize,
    /// Largest complex (total simplices) for induced-map rank checks.
    pub realization_simplices: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            group_order: 2048,
            subgroup_search: 512,
            partition_points: 9,
            tree_leaves: 7,
            chain_count: 5_000_000,
            lie_degree: 7,
            lie_homology_points: 6,
            weyl_points: 8,
            iso_nodes: 10_000_000,
            realization_simplices: 400_000,
        }
    }
}

impl Guards {
    pub const KEYS: [&'static str; 10] = [
        "group_order",
        "subgroup_search",
        "partition_points",
        "tree_leaves",
        "chain_count",
        "lie_degree",
        "lie_homology_points",
        "weyl_points",
        "iso_nodes",
        "realization_simplices",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut usize> {
        Some(match key {
            "group_order" => &mut self.group_order,
            "subgroup_search" => &mut self.subgroup_search,
            "partition_points" => &mut self.partition_points,
            "tree_leaves" => &mut self.tree_leaves,
            "chain_count" => &mut self.chain_count,
            "lie_degree" => &mut self.lie_degree,
            "lie_homology_points" => &mut self.lie_homology_points,
            "weyl_points" => &mut self.weyl_points,
            "iso_nodes" => &mut self.iso_nodes,
            "realization_simplices" => &mut self.realization_simplices,
            _ => return None,
        })
    }

    /// Overrides one limit by name; unknown names are rejected.
    pub fn set(&mut self, key: &str, value: usize) -> std::result::Result<(), String> {
        match self.slot(key) {
            Some(s) => {
                *s = value;
                Ok(())
            }
            None => Err(format!(
                "unknown guard `{key}` (expected one of {})",
                Self::KEYS.join(", ")
            )),
        }
    }

    pub fn entries(&self) -> Vec<(&'static str, usize)> {
        let mut copy = self.clone();
        Self::KEYS
            .iter()
            .map(|k| (*k, *copy.slot(k).expect("listed key")))
            .collect()
    }
}

pub(crate) fn ensure(guard: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded {
            guard,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
