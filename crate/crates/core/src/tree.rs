//! Reduced labeled trees, their face poset, layered trees from partition
//! chains, the space of measured trees and its identification with chains
//! of trees.
//!
//! A reduced tree on `n` labeled leaves is stored as the set of leaf sets
//! ("clusters") below its non-root internal vertices. Each cluster is the
//! upper end of exactly one inner edge, so contracting inner edges removes
//! clusters, and two trees are label-isomorphic exactly when their cluster
//! sets agree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::guards::{ensure, Guards};
use crate::gset::GSet;
use crate::homology::{fixed_point_complex, SimplicialComplex};
use crate::partition::{all_partitions_within, Partition};
use crate::perm::{Perm, Subgroup};
use crate::poset::{compare_posets, ActedPoset, FixedPointComparison};
use crate::Rational;

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_image(mask: u64, perm: &Perm) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        out |= 1 << perm.apply(p);
        m &= m - 1;
    }
    out
}

fn compatible(a: u64, b: u64) -> bool {
    a & b == 0 || a & !b == 0 || b & !a == 0
}

/// A reduced tree with leaves labeled by `0..n`, corolla excluded.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedTree {
    n: usize,
    clusters: Vec<u64>,
}

impl ReducedTree {
    /// Clusters must be pairwise nested or disjoint, with between 2 and
    /// `n - 1` leaves each; at least one is required.
    pub fn new(n: usize, clusters: Vec<u64>) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::InvalidTree("the corolla has no inner edge".into()));
        }
        Self::with_clusters(n, clusters)
    }

    fn with_clusters(n: usize, mut clusters: Vec<u64>) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidTree(format!("{n} leaves exceed the 64-leaf representation")));
        }
        clusters.sort_unstable();
        clusters.dedup();
        for &c in &clusters {
            let k = c.count_ones() as usize;
            if k < 2 || k >= n || c & !full_mask(n) != 0 {
                return Err(Error::InvalidTree(format!("cluster {c:#b} is not a proper vertex of a {n}-leaf tree")));
            }
        }
        for (i, &a) in clusters.iter().enumerate() {
            if let Some(&b) = clusters[i + 1..].iter().find(|&&b| !compatible(a, b)) {
                return Err(Error::InvalidTree(format!("clusters {a:#b} and {b:#b} overlap")));
            }
        }
        Ok(ReducedTree { n, clusters })
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    /// Leaf sets of the non-root internal vertices, one per inner edge.
    pub fn clusters(&self) -> &[u64] {
        &self.clusters
    }

    pub fn inner_edge_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn has_cluster(&self, c: u64) -> bool {
        self.clusters.binary_search(&c).is_ok()
    }

    /// Binary trees have the maximal number `n - 2` of inner edges.
    pub fn is_binary(&self) -> bool {
        self.clusters.len() + 2 == self.n
    }

    /// Index of the smallest cluster strictly containing cluster `i`, or `None` for the root.
    pub fn parent_of_cluster(&self, i: usize) -> Option<usize> {
        let c = self.clusters[i];
        self.clusters
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d != c && c & !d == 0)
            .min_by_key(|&(_, &d)| d.count_ones())
            .map(|(j, _)| j)
    }

    /// Children of the vertex with leaf set `mask` (the root is the full set):
    /// maximal clusters strictly inside, then the remaining single leaves.
    pub fn children(&self, mask: u64) -> (Vec<u64>, Vec<usize>) {
        let inside: Vec<u64> = self
            .clusters
            .iter()
            .copied()
            .filter(|&d| d != mask && d & !mask == 0)
            .collect();
        let maximal: Vec<u64> = inside
            .iter()
            .copied()
            .filter(|&d| !inside.iter().any(|&e| e != d && d & !e == 0))
            .collect();
        let covered = maximal.iter().fold(0u64, |m, &d| m | d);
        let leaves = (0..self.n).filter(|&p| (mask & !covered) >> p & 1 == 1).collect();
        (maximal, leaves)
    }

    /// Contracts the inner edges below the given clusters.
    pub fn contract(&self, edges: &[u64]) -> Result<ReducedTree> {
        let kept: Vec<u64> = self.clusters.iter().copied().filter(|c| !edges.contains(c)).collect();
        ReducedTree::new(self.n, kept)
    }

    /// All trees obtained by contracting a nonempty set of inner edges while
    /// keeping at least one.
    pub fn faces(&self) -> Vec<ReducedTree> {
        let k = self.clusters.len();
        let mut out: Vec<ReducedTree> = (1..(1u64 << k) - 1)
            .map(|keep| ReducedTree {
                n: self.n,
                clusters: (0..k).filter(|&i| keep >> i & 1 == 1).map(|i| self.clusters[i]).collect(),
            })
            .collect();
        out.sort();
        out
    }

    /// `self` is obtained from `other` by contracting a nonempty set of inner edges.
    pub fn is_face_of(&self, other: &ReducedTree) -> bool {
        self.n == other.n
            && self.clusters.len() < other.clusters.len()
            && self.clusters.iter().all(|&c| other.has_cluster(c))
    }

    /// Relabels leaves through `perm`.
    pub fn image(&self, perm: &Perm) -> ReducedTree {
        let mut clusters: Vec<u64> = self.clusters.iter().map(|&c| mask_image(c, perm)).collect();
        clusters.sort_unstable();
        ReducedTree { n: self.n, clusters }
    }

    /// The tree keeping only inner edge `c`.
    pub fn single_edge(&self, c: u64) -> ReducedTree {
        ReducedTree { n: self.n, clusters: vec![c] }
    }

    /// Canonical nested-parentheses code, children sorted by their codes.
    pub fn canonical_code(&self, names: &[String]) -> String {
        self.subtree_code(full_mask(self.n), names)
    }

    /// Canonical code of the subtree below the vertex with leaf set `mask`.
    pub fn subtree_code(&self, mask: u64, names: &[String]) -> String {
        let (clusters, leaves) = self.children(mask);
        let mut parts: Vec<String> = leaves.iter().map(|&p| names[p].clone()).collect();
        parts.extend(clusters.iter().map(|&c| self.subtree_code(c, names)));
        parts.sort();
        format!("({})", parts.join(" "))
    }

    /// Leaf sets of the maximal clusters with the remaining singletons,
    /// i.e. the partition read off the root's children.
    pub fn root_partition(&self) -> Partition {
        let (clusters, leaves) = self.children(full_mask(self.n));
        let mut blocks = clusters;
        blocks.extend(leaves.iter().map(|&p| 1u64 << p));
        Partition::from_masks(self.n, blocks).expect("children partition the leaves")
    }
}

fn numeric_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl ReducedTree {
    /// Nested-parentheses rendering with children ordered by their least leaf.
    pub fn render(&self, names: &[String]) -> String {
        self.render_below(full_mask(self.n), names, &|_| String::new())
    }

    fn render_below(&self, mask: u64, names: &[String], suffix: &dyn Fn(u64) -> String) -> String {
        let (clusters, leaves) = self.children(mask);
        let mut parts: Vec<(u32, String)> = leaves.iter().map(|&p| (p as u32, names[p].clone())).collect();
        parts.extend(
            clusters
                .iter()
                .map(|&c| (c.trailing_zeros(), format!("{}{}", self.render_below(c, names, suffix), suffix(c)))),
        );
        parts.sort();
        let body: Vec<String> = parts.into_iter().map(|p| p.1).collect();
        format!("({})", body.join(" "))
    }
}

impl fmt::Display for ReducedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&numeric_names(self.n)))
    }
}

impl fmt::Debug for ReducedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All laminar families of clusters strictly inside `mask`, including the empty one.
fn families_inside(mask: u64, memo: &mut HashMap<u64, Vec<Vec<u64>>>) -> Vec<Vec<u64>> {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let points: Vec<usize> = (0..64).filter(|&p| mask >> p & 1 == 1).collect();
    let mut out = Vec::new();
    if points.len() >= 2 {
        for p in all_partitions_within(points.len(), 64).expect("small block") {
            if p.block_count() < 2 {
                continue;
            }
            out.extend(families_under_root(&p, &points, memo));
        }
    } else {
        out.push(Vec::new());
    }
    memo.insert(mask, out.clone());
    out
}

/// Families whose maximal clusters are the non-singleton blocks of `p`.
fn families_under_root(p: &Partition, points: &[usize], memo: &mut HashMap<u64, Vec<Vec<u64>>>) -> Vec<Vec<u64>> {
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for i in 0..p.block_count() {
        let block: u64 = p.block_points(i).iter().fold(0, |m, &j| m | 1 << points[j]);
        if block.count_ones() < 2 {
            continue;
        }
        let inner = families_inside(block, memo);
        acc = acc
            .iter()
            .flat_map(|f| {
                inner.iter().map(move |g| {
                    let mut h = f.clone();
                    h.push(block);
                    h.extend_from_slice(g);
                    h
                })
            })
            .collect();
    }
    acc
}

/// All reduced trees on the points of `a`, corolla excluded, sorted.
pub fn enumerate_reduced_trees(a: &GSet) -> Result<Vec<ReducedTree>> {
    enumerate_trees(a.size(), Guards::default().tree_leaves)
}

/// All reduced trees with `n` leaves, built root-partition first.
pub fn enumerate_trees(n: usize, max_leaves: usize) -> Result<Vec<ReducedTree>> {
    ensure("tree_leaves", max_leaves, n)?;
    if n < 3 {
        return Ok(Vec::new());
    }
    let points: Vec<usize> = (0..n).collect();
    let roots: Vec<Partition> = all_partitions_within(n, 64)?
        .into_iter()
        .filter(|p| p.block_count() >= 2)
        .collect();
    let merged: BTreeSet<ReducedTree> = roots
        .par_iter()
        .map(|p| {
            let mut memo = HashMap::new();
            families_under_root(p, &points, &mut memo)
                .into_iter()
                .filter(|f| !f.is_empty())
                .map(|f| ReducedTree::with_clusters(n, f).expect("laminar by construction"))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            x
        });
    Ok(merged.into_iter().collect())
}

/// The poset of reduced trees on `a`, a tree lying above its faces, acted on
/// by leaf relabeling.
pub fn build_tree_poset(a: &GSet) -> Result<ActedPoset<ReducedTree>> {
    let trees = enumerate_reduced_trees(a)?;
    ActedPoset::new(
        trees,
        |x, y| x == y || x.is_face_of(y),
        a.group(),
        |g, t| t.image(a.alpha(g)),
    )
}

/// An action of a subgroup on the vertices of a tree by root-preserving
/// automorphisms, extending the leaf action.
///
/// Vertices are numbered leaves `0..n`, root `n`, then cluster `i` as `n + 1 + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantTreeStructure {
    pub tree: ReducedTree,
    /// Group elements (indices into the parent group), in subgroup order.
    pub elements: Vec<usize>,
    /// `vertex_action[k][v]` is the image of vertex `v` under `elements[k]`.
    pub vertex_action: Vec<Vec<usize>>,
}

impl EquivariantTreeStructure {
    pub fn vertex_count(&self) -> usize {
        self.tree.n + 1 + self.tree.clusters.len()
    }

    fn parent_vertex(&self, v: usize) -> Option<usize> {
        let n = self.tree.n;
        if v == n {
            return None;
        }
        let mask = if v < n { 1u64 << v } else { self.tree.clusters[v - n - 1] };
        let parent = self
            .tree
            .clusters
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d != mask && mask & !d == 0)
            .min_by_key(|&(_, &d)| d.count_ones());
        Some(parent.map_or(n, |(j, _)| n + 1 + j))
    }

    /// Each element fixes the root and preserves the parent relation.
    pub fn verify(&self) -> Result<()> {
        let n = self.tree.n;
        for map in &self.vertex_action {
            if map[n] != n {
                return Err(Error::InvalidTree("root is moved".into()));
            }
            for v in 0..self.vertex_count() {
                if self.parent_vertex(v).map(|p| map[p]) != self.parent_vertex(map[v]) {
                    return Err(Error::InvalidTree(format!("vertex {v} loses its parent")));
                }
            }
        }
        Ok(())
    }
}

/// Extends the leaf action of `h` on `a` to the tree, matching internal
/// vertices through canonical codes of relabeled subtrees. `None` when some
/// element does not extend. The extension is unique: an internal vertex is
/// determined by the leaves below it.
pub fn equivariant_structure(t: &ReducedTree, a: &GSet, h: &Subgroup) -> Option<EquivariantTreeStructure> {
    let n = t.n;
    let names = numeric_names(n);
    let codes: HashMap<String, usize> = t
        .clusters
        .iter()
        .enumerate()
        .map(|(i, &c)| (t.subtree_code(c, &names), n + 1 + i))
        .collect();
    let mut vertex_action = Vec::with_capacity(h.order());
    for &g in h.members() {
        let perm = a.alpha(g);
        let relabeled: Vec<String> = (0..n).map(|p| names[perm.apply(p)].clone()).collect();
        let mut map: Vec<usize> = (0..n).map(|p| perm.apply(p)).collect();
        map.push(n);
        for &c in &t.clusters {
            map.push(*codes.get(&t.subtree_code(c, &relabeled))?);
        }
        vertex_action.push(map);
    }
    Some(EquivariantTreeStructure {
        tree: t.clone(),
        elements: h.members().to_vec(),
        vertex_action,
    })
}

/// Trees admitting an `h`-action compatible with the labels, a tree lying
/// above the contractions of its `h`-stable sets of inner edges. Trivial group.
pub fn equivariant_tree_poset(a: &GSet, h: &Subgroup) -> Result<ActedPoset<ReducedTree>> {
    if !h.parent().same_as(a.group()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let objects: Vec<ReducedTree> = enumerate_reduced_trees(a)?
        .into_iter()
        .filter(|t| equivariant_structure(t, a, h).is_some())
        .collect();
    let gens: Vec<&Perm> = h.generators().iter().map(|&g| a.alpha(g)).collect();
    let stable = |edges: &[u64]| {
        gens.iter()
            .all(|g| edges.iter().all(|&c| edges.contains(&mask_image(c, g))))
    };
    ActedPoset::without_action(
        objects,
        |x, y| {
            if x == y {
                return true;
            }
            if !x.is_face_of(y) {
                return false;
            }
            let contracted: Vec<u64> = y.clusters.iter().copied().filter(|&c| !x.has_cluster(c)).collect();
            stable(&contracted)
        },
        a.group().degree(),
    )
}

/// Compares the `h`-fixed subposet of the tree poset with the direct construction.
pub fn verify_tree_fixed_points(a: &GSet, h: &Subgroup) -> Result<FixedPointComparison> {
    let fixed = build_tree_poset(a)?.fixed_subposet(h)?;
    let direct = equivariant_tree_poset(a, h)?;
    compare_posets(&fixed, &direct)
}

/// A tree with a layer structure: a strict chain of non-trivial partitions,
/// finest first. Level `i` has one vertex per block of the `i`-th partition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LayeredTree {
    n: usize,
    levels: Vec<Partition>,
}

impl LayeredTree {
    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    /// Blocks of level `i` merging at least two vertices of the level above
    /// (the leaves above level 0).
    pub fn non_unary_blocks(&self, i: usize) -> Vec<u64> {
        let above = if i == 0 {
            Partition::discrete(self.n)
        } else {
            self.levels[i - 1].clone()
        };
        self.levels[i]
            .blocks()
            .iter()
            .copied()
            .filter(|&b| above.blocks().iter().filter(|&&c| c & !b == 0).count() >= 2)
            .collect()
    }

    /// Every level has exactly one non-unary vertex.
    pub fn is_elementary(&self) -> bool {
        (0..self.levels.len()).all(|i| self.non_unary_blocks(i).len() == 1)
    }

    /// Every level's non-unary vertices form a single orbit under `a`'s group.
    pub fn is_g_elementary(&self, a: &GSet) -> bool {
        (0..self.levels.len()).all(|i| {
            let blocks: BTreeSet<u64> = self.non_unary_blocks(i).into_iter().collect();
            let Some(&first) = blocks.iter().next() else {
                return false;
            };
            let orbit: BTreeSet<u64> = (0..a.group().order()).map(|g| mask_image(first, a.alpha(g))).collect();
            orbit == blocks
        })
    }

    /// Drops level `i` (the face contracting that layer).
    pub fn face(&self, i: usize) -> Option<LayeredTree> {
        if self.levels.len() < 2 || i >= self.levels.len() {
            return None;
        }
        let mut levels = self.levels.clone();
        levels.remove(i);
        Some(LayeredTree { n: self.n, levels })
    }
}

/// The layered tree of a strict chain of non-trivial partitions, finest first.
pub fn chain_to_layered(chain: &[Partition]) -> Result<LayeredTree> {
    let Some(first) = chain.first() else {
        return Err(Error::InvalidTree("empty chain".into()));
    };
    let n = first.points();
    for p in chain {
        if p.points() != n || p.is_trivial() {
            return Err(Error::InvalidTree(format!("{p} is not a non-trivial partition of {n} points")));
        }
    }
    for w in chain.windows(2) {
        if w[0] == w[1] || !w[1].coarsens(&w[0]) {
            return Err(Error::InvalidTree(format!("{} does not strictly coarsen {}", w[1], w[0])));
        }
    }
    Ok(LayeredTree { n, levels: chain.to_vec() })
}

/// Forgets layers and collapses unary vertices.
pub fn layered_to_tree(l: &LayeredTree) -> ReducedTree {
    let clusters: Vec<u64> = l
        .levels
        .iter()
        .flat_map(|p| p.blocks().iter().copied())
        .filter(|b| b.count_ones() >= 2)
        .collect();
    ReducedTree::new(l.n, clusters).expect("non-trivial partitions give a non-corolla tree")
}

/// The space of measured trees: one vertex per single-edge tree, one simplex
/// per tree spanned by its single-edge contractions.
#[derive(Clone, Debug)]
pub struct TreeSpace {
    pub complex: SimplicialComplex,
    /// Cluster of each vertex.
    pub vertices: Vec<u64>,
    /// Vertex permutation of each group element.
    pub action: Vec<Perm>,
}

impl TreeSpace {
    pub fn vertex_of(&self, cluster: u64) -> Option<usize> {
        self.vertices.binary_search(&cluster).ok()
    }

    /// Simplex (sorted vertex indices) of a tree.
    pub fn simplex_of(&self, t: &ReducedTree) -> Option<Vec<u32>> {
        let mut s: Vec<u32> = t
            .clusters()
            .iter()
            .map(|&c| self.vertex_of(c).map(|v| v as u32))
            .collect::<Option<_>>()?;
        s.sort_unstable();
        Some(s)
    }
}

pub fn build_tree_space(a: &GSet) -> Result<TreeSpace> {
    let trees = enumerate_reduced_trees(a)?;
    let mut vertices: Vec<u64> = trees
        .iter()
        .filter(|t| t.inner_edge_count() == 1)
        .map(|t| t.clusters[0])
        .collect();
    vertices.sort_unstable();
    let index: HashMap<u64, u32> = vertices.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let simplices = trees.iter().map(|t| {
        let s: Vec<u32> = t.clusters.iter().map(|c| index[c]).collect();
        debug_assert_eq!(
            s.iter().collect::<BTreeSet<_>>().len(),
            s.len(),
            "single-edge contractions are distinct"
        );
        s
    });
    let complex = SimplicialComplex::from_closed_family(vertices.len(), simplices)?;
    let action = (0..a.group().order())
        .map(|g| {
            Perm::new(
                vertices
                    .iter()
                    .map(|&c| index[&mask_image(c, a.alpha(g))] as usize)
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeSpace { complex, vertices, action })
}

/// Fixed points of `h` on the tree space. Each vertex is an `h`-orbit of
/// clusters, listed as its sorted cluster masks.
pub fn fixed_tree_space(space: &TreeSpace, h: &Subgroup) -> (SimplicialComplex, Vec<Vec<u64>>) {
    let perms: Vec<Perm> = h.generators().iter().map(|&g| space.action[g].clone()).collect();
    let (k, orbits) = fixed_point_complex(&space.complex, &perms);
    let labels = orbits
        .iter()
        .map(|o| {
            let mut cs: Vec<u64> = o.iter().map(|&v| space.vertices[v as usize]).collect();
            cs.sort_unstable();
            cs
        })
        .collect();
    (k, labels)
}

/// Independent builder for the space of `h`-measured trees: vertices are
/// `h`-orbits of clusters forming a tree with one orbit of inner edges,
/// simplices are sets of such orbits that are pairwise compatible.
pub fn equivariant_tree_space_by_orbits(a: &GSet, h: &Subgroup) -> Result<(SimplicialComplex, Vec<Vec<u64>>)> {
    let n = a.size();
    ensure("tree_leaves", 6, n)?;
    let full = full_mask(n);
    let mut seen = BTreeSet::new();
    let mut orbits: Vec<Vec<u64>> = Vec::new();
    for c in 1..full {
        let k = c.count_ones() as usize;
        if k < 2 || k >= n || seen.contains(&c) {
            continue;
        }
        let orbit: BTreeSet<u64> = h.members().iter().map(|&g| mask_image(c, a.alpha(g))).collect();
        seen.extend(orbit.iter().copied());
        let list: Vec<u64> = orbit.into_iter().collect();
        if list.iter().all(|&x| list.iter().all(|&y| compatible(x, y))) {
            orbits.push(list);
        }
    }
    orbits.sort();
    let m = orbits.len();
    let fits = |i: usize, j: usize| orbits[i].iter().all(|&x| orbits[j].iter().all(|&y| compatible(x, y)));
    let adjacent: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| fits(i, j)).collect()).collect();
    let mut simplices = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn cliques(start: usize, adj: &[Vec<bool>], stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for v in start..adj.len() {
            if stack.iter().all(|&u| adj[u as usize][v]) {
                stack.push(v as u32);
                out.push(stack.clone());
                cliques(v + 1, adj, stack, out);
                stack.pop();
            }
        }
    }
    cliques(0, &adjacent, &mut stack, &mut simplices);
    Ok((SimplicialComplex::from_closed_family(m, simplices)?, orbits))
}

/// Faces of a complex whose vertices are cluster orbits, written with the
/// orbits themselves so that differently numbered complexes compare.
pub fn labelled_faces(k: &SimplicialComplex, labels: &[Vec<u64>]) -> BTreeSet<Vec<Vec<u64>>> {
    (0..=k.dim().max(-1))
        .flat_map(|d| k.faces(d as usize).to_vec())
        .map(|s| {
            let mut v: Vec<Vec<u64>> = s.iter().map(|&x| labels[x as usize].clone()).collect();
            v.sort();
            v
        })
        .collect()
}

/// A reduced tree with inner-edge lengths in `(0, 1]`, the longest equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MeasuredTree {
    tree: ReducedTree,
    lengths: Vec<Rational>,
}

impl MeasuredTree {
    /// `lengths[i]` belongs to `tree.clusters()[i]`.
    pub fn new(tree: ReducedTree, lengths: Vec<Rational>) -> Result<Self> {
        if lengths.len() != tree.clusters.len() {
            return Err(Error::InvalidCoordinates(format!(
                "{} lengths for {} inner edges",
                lengths.len(),
                tree.clusters.len()
            )));
        }
        if lengths.iter().any(|l| *l <= Rational::zero() || *l > Rational::one()) {
            return Err(Error::InvalidCoordinates("lengths must lie in (0, 1]".into()));
        }
        if !lengths.iter().any(One::is_one) {
            return Err(Error::InvalidCoordinates("some inner edge must have length 1".into()));
        }
        Ok(MeasuredTree { tree, lengths })
    }

    /// Builds from `(cluster, length)` pairs.
    pub fn from_edges(n: usize, edges: &[(u64, Rational)]) -> Result<Self> {
        let tree = ReducedTree::new(n, edges.iter().map(|e| e.0).collect())?;
        if tree.clusters.len() != edges.len() {
            return Err(Error::InvalidTree("repeated inner edge".into()));
        }
        let lengths = tree
            .clusters
            .iter()
            .map(|c| edges.iter().find(|e| e.0 == *c).expect("present").1.clone())
            .collect();
        MeasuredTree::new(tree, lengths)
    }

    pub fn tree(&self) -> &ReducedTree {
        &self.tree
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn length_of(&self, cluster: u64) -> Option<&Rational> {
        self.tree.clusters.binary_search(&cluster).ok().map(|i| &self.lengths[i])
    }

    /// Relabels leaves through `perm`, carrying lengths along.
    pub fn image(&self, perm: &Perm) -> MeasuredTree {
        let edges: Vec<(u64, Rational)> = self
            .tree
            .clusters
            .iter()
            .zip(&self.lengths)
            .map(|(&c, l)| (mask_image(c, perm), l.clone()))
            .collect();
        MeasuredTree::from_edges(self.tree.n, &edges).expect("relabeling preserves validity")
    }

    /// Nested-parentheses rendering with `@length` after every inner vertex.
    pub fn code(&self, names: &[String]) -> String {
        self.tree
            .render_below(full_mask(self.tree.n), names, &|c| format!("@{}", self.length_of(c).expect("cluster")))
    }
}

impl fmt::Display for MeasuredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code(&numeric_names(self.tree.n)))
    }
}

/// A point of the realization of the tree poset: a strict chain, largest
/// tree first, each tree a face of the previous one, with barycentric weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeChainPoint {
    pub trees: Vec<ReducedTree>,
    pub coordinates: Vec<Rational>,
}

impl TreeChainPoint {
    pub fn validate(&self) -> Result<()> {
        if self.trees.is_empty() || self.trees.len() != self.coordinates.len() {
            return Err(Error::InvalidCoordinates("one coordinate per tree is required".into()));
        }
        if self.coordinates.iter().any(|c| *c <= Rational::zero()) {
            return Err(Error::InvalidCoordinates("coordinates must be positive".into()));
        }
        if !self.coordinates.iter().cloned().sum::<Rational>().is_one() {
            return Err(Error::InvalidCoordinates("coordinates must sum to 1".into()));
        }
        for w in self.trees.windows(2) {
            if !w[1].is_face_of(&w[0]) {
                return Err(Error::InvalidCoordinates(format!("{} is not a face of {}", w[1], w[0])));
            }
        }
        Ok(())
    }

    pub fn image(&self, perm: &Perm) -> TreeChainPoint {
        TreeChainPoint {
            trees: self.trees.iter().map(|t| t.image(perm)).collect(),
            coordinates: self.coordinates.clone(),
        }
    }
}

/// Sends a measured tree to the chain of trees `S(t)` obtained by
/// contracting the inner edges shorter than `t`, weighting each by the
/// measure of the `t` for which it occurs.
pub fn f_map(m: &MeasuredTree) -> TreeChainPoint {
    let levels: BTreeSet<Rational> = m.lengths.iter().cloned().collect();
    let mut previous = Rational::zero();
    let mut trees = Vec::new();
    let mut coordinates = Vec::new();
    for level in levels {
        let kept: Vec<u64> = m
            .tree
            .clusters
            .iter()
            .zip(&m.lengths)
            .filter(|(_, l)| **l >= level)
            .map(|(&c, _)| c)
            .collect();
        trees.push(ReducedTree::new(m.tree.n, kept).expect("edges of length 1 survive"));
        coordinates.push(&level - &previous);
        previous = level;
    }
    TreeChainPoint { trees, coordinates }
}

/// Inverse of [`f_map`]: edges of the last tree get length 1, edges first
/// contracted after position `k` get `1 - (sum of the weights after k)`.
pub fn f_inverse(point: &TreeChainPoint) -> Result<MeasuredTree> {
    point.validate()?;
    let last = point.trees.len() - 1;
    let mut lengths: BTreeMap<u64, Rational> = BTreeMap::new();
    for &c in point.trees[last].clusters() {
        lengths.insert(c, Rational::one());
    }
    let mut tail = Rational::zero();
    for k in (0..last).rev() {
        tail += &point.coordinates[k + 1];
        for &c in point.trees[k].clusters() {
            lengths.entry(c).or_insert_with(|| Rational::one() - &tail);
        }
    }
    let tree = point.trees[0].clone();
    let values = tree.clusters.iter().map(|c| lengths[c].clone()).collect();
    MeasuredTree::new(tree, values)
}

/// The measured tree read as a weighted chain of partitions: vertex depths
/// (sums of inner-edge lengths from the root) are scaled so the deepest is 1,
/// and level `s` groups the leaves whose lowest common vertex has depth at
/// least `s`. Partitions are listed as `s` increases, coarsest first.
pub fn measured_tree_to_partition_chain(m: &MeasuredTree) -> (Vec<Partition>, Vec<Rational>) {
    let depth: Vec<Rational> = m
        .tree
        .clusters
        .iter()
        .map(|&c| {
            m.tree
                .clusters
                .iter()
                .zip(&m.lengths)
                .filter(|(&d, _)| c & !d == 0)
                .map(|(_, l)| l.clone())
                .sum()
        })
        .collect();
    let deepest = depth.iter().max().expect("at least one inner edge").clone();
    let scaled: Vec<Rational> = depth.iter().map(|d| d / &deepest).collect();
    let levels: BTreeSet<Rational> = scaled.iter().cloned().collect();
    let mut previous = Rational::zero();
    let mut partitions = Vec::new();
    let mut weights = Vec::new();
    for level in levels {
        let kept: Vec<u64> = m
            .tree
            .clusters
            .iter()
            .zip(&scaled)
            .filter(|(_, d)| **d >= level)
            .map(|(&c, _)| c)
            .collect();
        let maximal: Vec<u64> = kept
            .iter()
            .copied()
            .filter(|&c| !kept.iter().any(|&d| d != c && c & !d == 0))
            .collect();
        let covered = maximal.iter().fold(0u64, |x, &c| x | c);
        let mut blocks = maximal;
        blocks.extend((0..m.tree.n).filter(|&p| covered >> p & 1 == 0).map(|p| 1u64 << p));
        partitions.push(Partition::from_masks(m.tree.n, blocks).expect("leaf blocks"));
        weights.push(&level - &previous);
        previous = level;
    }
    (partitions, weights)
}

struct TreeParser<'a> {
    text: &'a str,
    pos: usize,
    names: &'a [String],
}

struct ParsedNode {
    mask: u64,
    clusters: Vec<(u64, Option<Rational>)>,
}

impl<'a> TreeParser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn token(&mut self) -> &'a str {
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| c.is_whitespace() || "()@".contains(c))
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn node(&mut self, measured: bool, is_root: bool) -> Result<ParsedNode> {
        self.skip_ws();
        if !self.text[self.pos..].starts_with('(') {
            return Err(self.error("expected `(`"));
        }
        self.pos += 1;
        let mut mask = 0u64;
        let mut clusters = Vec::new();
        let mut children = 0;
        loop {
            self.skip_ws();
            let rest = &self.text[self.pos..];
            if rest.starts_with(')') {
                self.pos += 1;
                break;
            }
            if rest.is_empty() {
                return Err(self.error("unclosed `(`"));
            }
            children += 1;
            if rest.starts_with('(') {
                let child = self.node(measured, false)?;
                if mask & child.mask != 0 {
                    return Err(self.error("repeated leaf label"));
                }
                mask |= child.mask;
                clusters.extend(child.clusters);
            } else {
                let start = self.pos;
                let label = self.token();
                if label.is_empty() {
                    return Err(self.error("expected a leaf label"));
                }
                let Some(p) = self.names.iter().position(|n| n == label) else {
                    self.pos = start;
                    return Err(self.error(format!("unknown leaf label `{label}`")));
                };
                if mask >> p & 1 == 1 {
                    return Err(self.error(format!("repeated leaf label `{label}`")));
                }
                mask |= 1 << p;
            }
        }
        if children < 2 {
            return Err(self.error("every vertex needs at least two children"));
        }
        let mut length = None;
        if !is_root {
            self.skip_ws();
            if self.text[self.pos..].starts_with('@') {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                let raw = self.token();
                let value = Rational::from_str(raw).map_err(|_| {
                    self.pos = start;
                    self.error(format!("bad length `{raw}`"))
                })?;
                length = Some(value);
            } else if measured {
                return Err(self.error("inner vertex without `@length`"));
            }
            clusters.push((mask, length));
        }
        Ok(ParsedNode { mask, clusters })
    }

    fn parse(text: &'a str, names: &'a [String], measured: bool) -> Result<Vec<(u64, Option<Rational>)>> {
        let mut parser = TreeParser { text, pos: 0, names };
        let root = parser.node(measured, true)?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        if root.mask != full_mask(names.len()) {
            return Err(parser.error("not every leaf label occurs"));
        }
        Ok(root.clusters)
    }
}

/// Parses a tree literal such as `((x ix)((y -y)(iy -iy)))` over the given leaf names.
pub fn parse_tree(text: &str, names: &[String]) -> Result<ReducedTree> {
    let clusters = TreeParser::parse(text, names, false)?;
    ReducedTree::new(names.len(), clusters.into_iter().map(|c| c.0).collect())
}

/// Parses a measured tree literal such as `((1 2)@1/2 ((3 4)@1/2 (5 6)@2/3)@1)`.
pub fn parse_measured_tree(text: &str, names: &[String]) -> Result<MeasuredTree> {
    let clusters = TreeParser::parse(text, names, true)?;
    let edges: Vec<(u64, Rational)> = clusters
        .into_iter()
        .map(|(c, l)| (c, l.expect("measured parse records lengths")))
        .collect();
    MeasuredTree::from_edges(names.len(), &edges)
}

/// Leaf names `1..=n`.
pub fn default_leaf_names(n: usize) -> Vec<String> {
    numeric_names(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::parse_orbit_sum;
    use crate::homology::{order_complex, reduced_homology};
    use crate::perm::Group;
    use crate::poset::Poset;

    fn points(n: usize) -> GSet {
        GSet::trivial(&Group::trivial(0), n)
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn small_tree_counts() {
        let counts: Vec<usize> = (2..=5).map(|n| enumerate_reduced_trees(&points(n)).unwrap().len()).collect();
        assert_eq!(counts, vec![0, 3, 25, 235]);
        let four = enumerate_reduced_trees(&points(4)).unwrap();
        assert_eq!(four.iter().filter(|t| t.inner_edge_count() == 1).count(), 10);
        assert_eq!(four.iter().filter(|t| t.is_binary()).count(), 15);
        assert!(enumerate_trees(8, 7).is_err());
    }

    #[test]
    fn faces_of_small_trees() {
        let names = default_leaf_names(4);
        let binary = parse_tree("(1 (2 (3 4)))", &names).unwrap();
        assert_eq!(binary.faces().len(), 2);
        assert!(binary.faces().iter().all(|f| f.inner_edge_count() == 1));
        assert!(binary.faces()[0].faces().is_empty());
    }

    #[test]
    fn four_leaf_poset() {
        let p = build_tree_poset(&points(4)).unwrap();
        assert_eq!(p.len(), 25);
        assert_eq!(p.covers().len(), 30);
        let k = order_complex(&p).unwrap();
        assert_eq!(k.euler_characteristic(), -5);
        assert_eq!(reduced_homology(&k).nonzero_betti(), vec![(1, 6)]);
    }

    #[test]
    fn canonical_codes_ignore_child_order() {
        let names = default_leaf_names(5);
        let a = parse_tree("((1 2) (3 (4 5)))", &names).unwrap();
        let b = parse_tree("(((5 4) 3) (2 1))", &names).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_code(&names), b.canonical_code(&names));
        assert_eq!(a.to_string(), "((1 2) (3 (4 5)))");
    }

    #[test]
    fn parse_errors() {
        let names = default_leaf_names(3);
        assert!(parse_tree("(1 2 3)", &names).is_err());
        assert!(parse_tree("((1 2))", &names).is_err());
        assert!(parse_tree("((1 2) 4)", &names).is_err());
        assert!(parse_tree("((1 2) 3", &names).is_err());
        assert!(parse_tree("((1 2) 1)", &names).is_err());
        assert!(parse_measured_tree("((1 2) 3)", &names).is_err());
        assert!(parse_measured_tree("((1 2)@1 3)", &names).is_ok());
    }

    #[test]
    fn layered_trees_from_chains() {
        let p = |blocks: &[&[usize]]| {
            Partition::from_blocks(6, &blocks.iter().map(|b| b.iter().map(|x| x - 1).collect()).collect::<Vec<_>>())
                .unwrap()
        };
        let chain = vec![
            p(&[&[1], &[2], &[3, 4], &[5], &[6]]),
            p(&[&[1, 2], &[3, 4], &[5, 6]]),
            p(&[&[1, 2], &[3, 4, 5, 6]]),
        ];
        let l = chain_to_layered(&chain).unwrap();
        assert!(!l.is_elementary());
        let t = layered_to_tree(&l);
        assert_eq!(t.to_string(), "((1 2) ((3 4) (5 6)))");
        let d0 = l.face(0).unwrap();
        assert_eq!(d0.levels().len(), 2);
        assert!(!d0.is_elementary());
        assert_eq!(layered_to_tree(&d0), t);
        assert!(chain_to_layered(&[chain[1].clone(), chain[0].clone()]).is_err());

        let single = chain_to_layered(&chain[1..2]).unwrap();
        assert_eq!(layered_to_tree(&single).inner_edge_count(), 3);
    }

    #[test]
    fn tree_space_small() {
        let s3 = build_tree_space(&points(3)).unwrap();
        assert_eq!(s3.complex.face_counts(), vec![3]);
        let s4 = build_tree_space(&points(4)).unwrap();
        assert_eq!(s4.complex.face_counts(), vec![10, 15]);
        assert_eq!(reduced_homology(&s4.complex).nonzero_betti(), vec![(1, 6)]);
    }

    #[test]
    fn worked_measured_example() {
        let names = default_leaf_names(6);
        let m = parse_measured_tree("((1 2)@1/2 ((3 4)@1/2 (5 6)@2/3)@1)", &names).unwrap();
        let point = f_map(&m);
        assert_eq!(point.coordinates, vec![r(1, 2), r(1, 6), r(1, 3)]);
        let codes: Vec<String> = point.trees.iter().map(|t| t.to_string()).collect();
        assert_eq!(codes, vec!["((1 2) ((3 4) (5 6)))", "(1 2 (3 4 (5 6)))", "(1 2 (3 4 5 6))"]);
        assert_eq!(f_inverse(&point).unwrap(), m);
    }

    #[test]
    fn unit_lengths_give_a_vertex() {
        let names = default_leaf_names(5);
        let m = parse_measured_tree("((1 2)@1 (3 (4 5)@1)@1)", &names).unwrap();
        let point = f_map(&m);
        assert_eq!(point.trees, vec![m.tree().clone()]);
        assert_eq!(point.coordinates, vec![Rational::one()]);
    }

    #[test]
    fn caterpillar_partition_chain() {
        let names = default_leaf_names(4);
        let m = parse_measured_tree("(1 (2 (3 4)@1)@1)", &names).unwrap();
        let (parts, weights) = measured_tree_to_partition_chain(&m);
        let shown: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["(1)(2 3 4)", "(1)(2)(3 4)"]);
        assert_eq!(weights, vec![r(1, 2), r(1, 2)]);
    }

    #[test]
    fn inverse_rejects_bad_points() {
        let names = default_leaf_names(4);
        let t = parse_tree("(1 (2 (3 4)))", &names).unwrap();
        let f = t.faces()[0].clone();
        let bad_sum = TreeChainPoint { trees: vec![t.clone(), f.clone()], coordinates: vec![r(1, 2), r(1, 3)] };
        assert!(matches!(f_inverse(&bad_sum), Err(Error::InvalidCoordinates(_))));
        let bad_order = TreeChainPoint { trees: vec![f, t], coordinates: vec![r(1, 2), r(1, 2)] };
        assert!(f_inverse(&bad_order).is_err());
    }

    fn same_complex(a: &(SimplicialComplex, Vec<Vec<u64>>), b: &(SimplicialComplex, Vec<Vec<u64>>)) -> bool {
        labelled_faces(&a.0, &a.1) == labelled_faces(&b.0, &b.1)
    }

    #[test]
    fn fixed_points_match_direct_constructions() {
        let s4 = Group::symmetric(4).unwrap();
        let a = GSet::natural(&s4);
        let space = build_tree_space(&a).unwrap();
        for h in crate::perm::all_subgroups(&s4).unwrap() {
            let report = verify_tree_fixed_points(&a, &h).unwrap();
            assert!(report.holds(), "{}", h.describe());
            let fixed = fixed_tree_space(&space, &h);
            let oracle = equivariant_tree_space_by_orbits(&a, &h).unwrap();
            assert!(same_complex(&fixed, &oracle), "{}", h.describe());
        }
    }

    #[test]
    fn free_involution_fixed_trees_by_brute_force() {
        let g = Group::parse("(1 2)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + G/e").unwrap();
        let full = Subgroup::full(&g);
        let direct = equivariant_tree_poset(&a, &full).unwrap();
        let swap = a.alpha(1);
        let brute = enumerate_reduced_trees(&a)
            .unwrap()
            .into_iter()
            .filter(|t| t.clusters().iter().all(|&c| t.has_cluster(mask_image(c, swap))))
            .count();
        assert_eq!(direct.len(), brute);
    }

    #[test]
    fn c4_tree_is_fixed_but_its_single_contraction_is_not() {
        let g = Group::parse("(1 2 3 4)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/(1 3)(2 4) + G/e").unwrap();
        let names = vec!["x", "ix", "y", "iy", "-y", "-iy"].into_iter().map(String::from).collect::<Vec<_>>();
        let a = a.with_names(names.clone()).unwrap();
        let t = parse_tree("((x ix) ((y -y) (iy -iy)))", &names).unwrap();
        let full = Subgroup::full(&g);
        let structure = equivariant_structure(&t, &a, &full).expect("fixed tree");
        structure.verify().unwrap();
        let c = t.clusters().iter().copied().find(|&c| c == 0b010100).expect("{y,-y}");
        let contracted = t.contract(&[c]).unwrap();
        assert!(equivariant_structure(&contracted, &a, &full).is_none());
        let direct = equivariant_tree_poset(&a, &full).unwrap();
        assert!(direct.index_of(&t).is_some());
        assert!(direct.index_of(&contracted).is_none());
    }
}
