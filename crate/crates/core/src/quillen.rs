//! Fiber checks for equivariant homotopy finality and initiality of poset
//! maps, and a homological comparison of fixed-point realizations.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::guards::{ensure, Guards};
use crate::homology::{
    induced_map_rank, order_complex, reduced_homology, HomologyResult, SimplicialComplex,
};
use crate::partition::Partition;
use crate::perm::{all_subgroups, Subgroup};
use crate::poset::{is_subchain, ActedPoset, ChainPoset, Poset, PosetObject};
use crate::tree::{chain_to_layered, layered_to_tree, ReducedTree};
use crate::Rational;

/// How the arrows of a category relate to the stored order of its poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowConvention {
    /// An arrow `x → y` exists when `x ≤ y`.
    AlongOrder,
    /// An arrow `x → y` exists when `y ≤ x`.
    AgainstOrder,
}

impl fmt::Display for ArrowConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowConvention::AlongOrder => "arrows along the order",
            ArrowConvention::AgainstOrder => "arrows against the order",
        })
    }
}

/// Undercategories `d ↓ F` or overcategories `F ↓ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberKind {
    Under,
    Over,
}

/// Posets that can serve as the source of a checked map.
pub trait FiberSource: Poset {
    /// Pairs `x ≤ y` generating the order.
    fn generating_relations(&self) -> Vec<(usize, usize)>;
    /// A complex homotopy equivalent to the full subposet on `members`.
    fn subposet_complex(&self, members: &[usize]) -> Result<SimplicialComplex>;
    /// Order complex of the full subposet on `members`; vertex `i` is `members[i]`.
    fn subposet_order_complex(&self, members: &[usize]) -> Result<SimplicialComplex>;
}

impl<O: PosetObject> FiberSource for ActedPoset<O> {
    fn generating_relations(&self) -> Vec<(usize, usize)> {
        self.covers()
    }

    fn subposet_complex(&self, members: &[usize]) -> Result<SimplicialComplex> {
        self.subposet_order_complex(members)
    }

    fn subposet_order_complex(&self, members: &[usize]) -> Result<SimplicialComplex> {
        order_complex(&self.subposet(members))
    }
}

impl FiberSource for ChainPoset {
    fn generating_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.chains().iter().enumerate() {
            if c.len() < 2 {
                continue;
            }
            for k in 0..c.len() {
                let mut sub = c.clone();
                sub.remove(k);
                out.push((self.index_of(&sub).expect("subchains are chains"), i));
            }
        }
        out
    }

    /// A subchain-closed set of chains is the face poset of the complex whose
    /// simplices are those chains, so that complex is used directly.
    fn subposet_complex(&self, members: &[usize]) -> Result<SimplicialComplex> {
        let set: std::collections::HashSet<&[u32]> = members.iter().map(|&i| self.chain(i)).collect();
        let closed = members.iter().all(|&i| {
            let c = self.chain(i);
            c.len() < 2
                || (0..c.len()).all(|k| {
                    let mut sub = c.to_vec();
                    sub.remove(k);
                    set.contains(sub.as_slice())
                })
        });
        if closed {
            SimplicialComplex::from_closed_family(self.base_len(), members.iter().map(|&i| self.chain(i).to_vec()))
        } else {
            self.subposet_order_complex(members)
        }
    }

    fn subposet_order_complex(&self, members: &[usize]) -> Result<SimplicialComplex> {
        ensure("chain_count", 20_000, members.len())?;
        let chains: Vec<Vec<u32>> = members.iter().map(|&i| self.chain(i).to_vec()).collect();
        let p = ActedPoset::without_action(chains, |a, b| is_subchain(a, b), self.group().degree())?;
        order_complex(&p)
    }
}

/// A monotone, equivariant map between posets acted on by the same group.
pub struct PosetMap<'a, S: FiberSource, T: FiberSource> {
    pub source: &'a S,
    pub target: &'a T,
    pub object_map: Vec<usize>,
}

impl<'a, S: FiberSource, T: FiberSource> PosetMap<'a, S, T> {
    pub fn new(source: &'a S, target: &'a T, object_map: Vec<usize>) -> Result<Self> {
        if object_map.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} objects",
                object_map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = object_map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::InvalidMap(format!("image {bad} is not a target object")));
        }
        if !source.group().same_as(target.group()) {
            return Err(Error::GroupMismatch);
        }
        let map = PosetMap { source, target, object_map };
        map.verify()?;
        Ok(map)
    }

    fn verify(&self) -> Result<()> {
        for (x, y) in self.source.generating_relations() {
            if !self.target.leq(self.object_map[x], self.object_map[y]) {
                return Err(Error::InvalidMap(format!("not monotone on {x} ≤ {y}")));
            }
        }
        for &g in self.source.group().generators() {
            for x in 0..self.source.len() {
                if self.object_map[self.source.act(g, x)] != self.target.act(g, self.object_map[x]) {
                    return Err(Error::InvalidMap(format!("not equivariant at object {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn image(&self, x: usize) -> usize {
        self.object_map[x]
    }

    /// Source objects of the under- or overcategory at target object `d`.
    pub fn fiber(&self, d: usize, kind: FiberKind, convention: ArrowConvention) -> Vec<usize> {
        let above = matches!(
            (kind, convention),
            (FiberKind::Under, ArrowConvention::AlongOrder) | (FiberKind::Over, ArrowConvention::AgainstOrder)
        );
        (0..self.source.len())
            .filter(|&c| {
                let f = self.object_map[c];
                if above {
                    self.target.leq(d, f)
                } else {
                    self.target.leq(f, d)
                }
            })
            .collect()
    }

    /// Stabilizer of a target object.
    pub fn target_stabilizer(&self, d: usize) -> Subgroup {
        let g = self.target.group();
        let members: Vec<usize> = (0..g.order()).filter(|&x| self.target.act(x, d) == d).collect();
        Subgroup::from_members(g, &members).expect("stabilizers are subgroups")
    }
}

/// An under- or overcategory as a poset on source indices, acted on by the
/// stabilizer of its target object.
pub fn fiber_poset<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    d: usize,
    kind: FiberKind,
    convention: ArrowConvention,
) -> Result<ActedPoset<usize>> {
    let members = map.fiber(d, kind, convention);
    let stab = map.target_stabilizer(d);
    let local = stab.to_group();
    let parent = map.source.group();
    let lift: Vec<usize> = local
        .elements()
        .iter()
        .map(|p| parent.index_of(p).expect("stabilizer element"))
        .collect();
    ActedPoset::new(members, |a, b| map.source.leq(*a, *b), &local, |g, x| map.source.act(lift[g], *x))
}

/// `d ↓ F`.
pub fn undercategory<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    d: usize,
    convention: ArrowConvention,
) -> Result<ActedPoset<usize>> {
    fiber_poset(map, d, FiberKind::Under, convention)
}

/// `F ↓ d`.
pub fn overcategory<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    d: usize,
    convention: ArrowConvention,
) -> Result<ActedPoset<usize>> {
    fiber_poset(map, d, FiberKind::Over, convention)
}

/// Evidence that a fixed fiber is contractible, or why it is not certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Least or greatest element (a source index).
    ConePoint(usize),
    /// Connected with vanishing reduced integral homology.
    Acyclic,
    Empty,
    NotAcyclic(HomologyResult),
}

impl Certificate {
    pub fn passes(&self) -> bool {
        matches!(self, Certificate::ConePoint(_) | Certificate::Acyclic)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ConePoint(x) => write!(f, "cone point {x}"),
            Certificate::Acyclic => f.write_str("connected and acyclic"),
            Certificate::Empty => f.write_str("empty"),
            Certificate::NotAcyclic(h) => write!(f, "not acyclic: {h}"),
        }
    }
}

/// One `(target orbit, subgroup)` fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberResult {
    pub target: usize,
    pub orbit_size: usize,
    pub subgroup: String,
    pub subgroup_order: usize,
    pub fiber_size: usize,
    pub certificate: Certificate,
}

/// Outcome of scanning every fixed fiber of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCheckReport {
    pub kind: FiberKind,
    pub convention: ArrowConvention,
    pub fibers: Vec<FiberResult>,
    /// `(d, g, holds)`: `g` carries the fiber over `d` onto the fiber over `g·d`.
    pub translation_samples: Vec<(usize, usize, bool)>,
}

impl FiberCheckReport {
    pub fn passed(&self) -> bool {
        self.fibers.iter().all(|f| f.certificate.passes()) && self.translation_samples.iter().all(|s| s.2)
    }

    pub fn cone_count(&self) -> usize {
        self.fibers
            .iter()
            .filter(|f| matches!(f.certificate, Certificate::ConePoint(_)))
            .count()
    }
}

fn target_orbit_reps<T: Poset>(t: &T) -> Vec<(usize, usize)> {
    let mut seen = vec![false; t.len()];
    let mut out = Vec::new();
    for x in 0..t.len() {
        if seen[x] {
            continue;
        }
        let mut size = 0;
        for g in 0..t.group().order() {
            let y = t.act(g, x);
            if !seen[y] {
                seen[y] = true;
                size += 1;
            }
        }
        out.push((x, size));
    }
    out
}

/// Greatest or least element of the full subposet on `members`.
pub fn cone_point<P: Poset + ?Sized>(p: &P, members: &[usize]) -> Option<usize> {
    let &first = members.first()?;
    let mut top = first;
    while let Some(&y) = members.iter().find(|&&y| y != top && p.leq(top, y)) {
        top = y;
    }
    if members.iter().all(|&x| p.leq(x, top)) {
        return Some(top);
    }
    let mut bottom = first;
    while let Some(&y) = members.iter().find(|&&y| y != bottom && p.leq(y, bottom)) {
        bottom = y;
    }
    members.iter().all(|&x| p.leq(bottom, x)).then_some(bottom)
}

fn certify<S: FiberSource>(source: &S, members: &[usize]) -> Result<Certificate> {
    if members.is_empty() {
        return Ok(Certificate::Empty);
    }
    if let Some(c) = cone_point(source, members) {
        return Ok(Certificate::ConePoint(c));
    }
    let k = source.subposet_complex(members)?;
    let h = reduced_homology(&k);
    if h.is_acyclic() && k.is_connected() {
        Ok(Certificate::Acyclic)
    } else {
        Ok(Certificate::NotAcyclic(h))
    }
}

fn check_fibers<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    kind: FiberKind,
    convention: ArrowConvention,
) -> Result<FiberCheckReport> {
    let group = map.target.group();
    let subgroups = all_subgroups(group)?;
    let reps = target_orbit_reps(map.target);
    let fibers_by_rep: Vec<Vec<usize>> = reps.par_iter().map(|&(d, _)| map.fiber(d, kind, convention)).collect();

    let mut jobs = Vec::new();
    for (i, &(d, _)) in reps.iter().enumerate() {
        let stab = map.target_stabilizer(d);
        for (j, h) in subgroups.iter().enumerate() {
            if h.is_subgroup_of(&stab) {
                jobs.push((i, j));
            }
        }
    }
    let fibers = jobs
        .par_iter()
        .map(|&(i, j)| {
            let (d, orbit_size) = reps[i];
            let h = &subgroups[j];
            let gens = h.generators();
            let fixed: Vec<usize> = fibers_by_rep[i]
                .iter()
                .copied()
                .filter(|&c| gens.iter().all(|&g| map.source.act(g, c) == c))
                .collect();
            Ok(FiberResult {
                target: d,
                orbit_size,
                subgroup: h.describe(),
                subgroup_order: h.order(),
                fiber_size: fixed.len(),
                certificate: certify(map.source, &fixed)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let translation_samples = reps
        .iter()
        .zip(&fibers_by_rep)
        .filter_map(|(&(d, _), fiber)| {
            let g = (0..group.order()).find(|&g| map.target.act(g, d) != d)?;
            let mut moved: Vec<usize> = fiber.iter().map(|&c| map.source.act(g, c)).collect();
            moved.sort_unstable();
            let expected = map.fiber(map.target.act(g, d), kind, convention);
            Some((d, g, moved == expected))
        })
        .collect();

    Ok(FiberCheckReport {
        kind,
        convention,
        fibers,
        translation_samples,
    })
}

/// Every fixed undercategory `(d ↓ F)^H`, `H ≤ G_d`, is contractible.
pub fn check_g_finality<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    convention: ArrowConvention,
) -> Result<FiberCheckReport> {
    check_fibers(map, FiberKind::Under, convention)
}

/// Every fixed overcategory `(F ↓ d)^H`, `H ≤ G_d`, is contractible.
pub fn check_g_initiality<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    convention: ArrowConvention,
) -> Result<FiberCheckReport> {
    check_fibers(map, FiberKind::Over, convention)
}

/// Homology comparison of the `H`-fixed source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComparison {
    pub subgroup: String,
    pub subgroup_order: usize,
    pub source_homology: HomologyResult,
    pub target_homology: HomologyResult,
    /// Rank over ℚ of the induced map in each degree with nonzero Betti
    /// number on either side; `None` when the source order complex exceeds
    /// the size guard.
    pub map_ranks: Option<Vec<(isize, usize)>>,
}

impl FixedComparison {
    pub fn betti_equal(&self) -> bool {
        self.source_homology.nonzero_betti() == self.target_homology.nonzero_betti()
    }

    /// The induced map is an isomorphism on rational homology, when checked.
    pub fn map_is_isomorphism(&self) -> Option<bool> {
        self.map_ranks.as_ref().map(|ranks| {
            ranks.iter().all(|&(d, r)| {
                r == self.source_homology.betti(d) && r == self.target_homology.betti(d)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub comparisons: Vec<FixedComparison>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.comparisons
            .iter()
            .all(|c| c.betti_equal() && c.map_is_isomorphism() != Some(false))
    }
}

/// For every subgroup `H`, compares the homology of the `H`-fixed source and
/// target and the rank of the map they induce.
pub fn check_realization_equivalence<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
) -> Result<RealizationReport> {
    check_realization_equivalence_within(map, Guards::default().realization_simplices)
}

pub fn check_realization_equivalence_within<S: FiberSource, T: FiberSource>(
    map: &PosetMap<'_, S, T>,
    max_simplices: usize,
) -> Result<RealizationReport> {
    let subgroups = all_subgroups(map.source.group())?;
    let comparisons = subgroups
        .par_iter()
        .map(|h| {
            let gens = h.generators();
            let fixed_in = |p: &dyn Fn(usize, usize) -> usize, len: usize| -> Vec<usize> {
                (0..len).filter(|&x| gens.iter().all(|&g| p(g, x) == x)).collect()
            };
            let src = fixed_in(&|g, x| map.source.act(g, x), map.source.len());
            let tgt = fixed_in(&|g, x| map.target.act(g, x), map.target.len());
            let source_homology = reduced_homology(&map.source.subposet_complex(&src)?);
            let target_complex = map.target.subposet_order_complex(&tgt)?;
            let target_homology = reduced_homology(&target_complex);

            let map_ranks = match map.source.subposet_order_complex(&src) {
                Ok(k) if k.simplex_count() <= max_simplices => {
                    let position: HashMap<usize, u32> =
                        tgt.iter().enumerate().map(|(i, &y)| (y, i as u32)).collect();
                    let vertex_map: Vec<u32> = src.iter().map(|&c| position[&map.object_map[c]]).collect();
                    let mut degrees: Vec<isize> = source_homology
                        .nonzero_betti()
                        .into_iter()
                        .chain(target_homology.nonzero_betti())
                        .map(|(d, _)| d)
                        .filter(|&d| d >= 0)
                        .collect();
                    degrees.sort_unstable();
                    degrees.dedup();
                    let ranks = degrees
                        .into_iter()
                        .map(|d| {
                            induced_map_rank::<Rational>(&k, &target_complex, &vertex_map, d as usize).map(|r| (d, r))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Some(ranks)
                }
                Ok(_) | Err(Error::GuardExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(FixedComparison {
                subgroup: h.describe(),
                subgroup_order: h.order(),
                source_homology,
                target_homology,
                map_ranks,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RealizationReport { comparisons })
}

/// Object map of the functor sending a chain of partitions to its tree.
pub fn layered_tree_map(
    partitions: &ActedPoset<Partition>,
    chains: &ChainPoset,
    trees: &ActedPoset<ReducedTree>,
) -> Result<Vec<usize>> {
    chains
        .chains()
        .par_iter()
        .map(|c| {
            let parts: Vec<Partition> = c.iter().map(|&x| partitions.object(x as usize).clone()).collect();
            let t = layered_to_tree(&chain_to_layered(&parts)?);
            trees
                .index_of(&t)
                .ok_or_else(|| Error::InvalidMap(format!("{t} is not in the tree poset")))
        })
        .collect()
}

/// Object map sending a chain to its last (largest) element.
pub fn last_vertex_map(chains: &ChainPoset) -> Vec<usize> {
    chains.chains().iter().map(|c| *c.last().expect("nonempty") as usize).collect()
}

/// Identity map of a poset.
pub fn identity_map<O: PosetObject>(p: &ActedPoset<O>) -> Result<PosetMap<'_, ActedPoset<O>, ActedPoset<O>>> {
    PosetMap::new(p, p, (0..p.len()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::{parse_orbit_sum, GSet};
    use crate::partition::build_partition_poset;
    use crate::perm::Group;
    use crate::tree::build_tree_poset;

    fn involution_on_four() -> GSet {
        let g = Group::parse("(1 2)(3 4)", Some(4)).unwrap();
        GSet::natural(&g)
    }

    #[test]
    fn identity_has_cone_fibers() {
        let p = build_partition_poset(&involution_on_four()).unwrap();
        let id = identity_map(&p).unwrap();
        let r = check_g_finality(&id, ArrowConvention::AlongOrder).unwrap();
        assert!(r.passed());
        assert_eq!(r.cone_count(), r.fibers.len());
        let under = undercategory(&id, 0, ArrowConvention::AlongOrder).unwrap();
        assert_eq!(under.has_cone_point().map(|i| *under.object(i)), Some(0));
        assert!(check_realization_equivalence(&id).unwrap().passed());
    }

    #[test]
    fn rejects_non_monotone_maps() {
        let p = build_partition_poset(&GSet::trivial(&Group::trivial(0), 4)).unwrap();
        let mut reversed: Vec<usize> = (0..p.len()).collect();
        reversed.reverse();
        assert!(PosetMap::new(&p, &p, reversed).is_err());
    }

    #[test]
    fn tree_functor_on_four_points_is_final() {
        let a = involution_on_four();
        let p = build_partition_poset(&a).unwrap();
        let chains = p.chain_poset().unwrap();
        let trees = build_tree_poset(&a).unwrap();
        let phi = PosetMap::new(&chains, &trees, layered_tree_map(&p, &chains, &trees).unwrap()).unwrap();
        let r = check_g_finality(&phi, ArrowConvention::AgainstOrder).unwrap();
        assert!(r.passed(), "{:?}", r.fibers.iter().find(|f| !f.certificate.passes()));
        let real = check_realization_equivalence(&phi).unwrap();
        assert!(real.passed());
        assert!(real.comparisons.iter().all(|c| c.map_is_isomorphism() == Some(true)));
    }

    #[test]
    fn last_vertex_is_initial() {
        let g = Group::parse("(1 2)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + 1").unwrap();
        let p = build_partition_poset(&a).unwrap();
        let chains = p.chain_poset().unwrap();
        let last = PosetMap::new(&chains, &p, last_vertex_map(&chains)).unwrap();
        let r = check_g_initiality(&last, ArrowConvention::AlongOrder).unwrap();
        assert!(r.passed());
        let wrong = check_g_initiality(&last, ArrowConvention::AgainstOrder).unwrap();
        assert!(wrong.fibers.iter().all(|f| f.fiber_size > 0));
    }

    #[test]
    fn fiber_filters() {
        let t = Group::trivial(0);
        let p = build_partition_poset(&GSet::trivial(&t, 3)).unwrap();
        let chains = p.chain_poset().unwrap();
        let last = PosetMap::new(&chains, &p, last_vertex_map(&chains)).unwrap();
        let over = overcategory(&last, 0, ArrowConvention::AlongOrder).unwrap();
        assert_eq!(over.len(), 1);
    }
}
