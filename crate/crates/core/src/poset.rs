//! Finite posets with an order-preserving group action, and their chains.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::guards::{ensure, Guards};
use crate::perm::{all_subgroups, Group, Subgroup};

/// Anything usable as a canonical poset object.
pub trait PosetObject: Clone + Eq + Hash + Ord + Debug + Send + Sync {}

impl<T: Clone + Eq + Hash + Ord + Debug + Send + Sync> PosetObject for T {}

/// Read access shared by explicit posets and chain posets.
pub trait Poset: Sync {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn leq(&self, a: usize, b: usize) -> bool;
    fn group(&self) -> &Group;
    /// Index of `g · x`.
    fn act(&self, g: usize, x: usize) -> usize;
}

/// A finite poset on canonical objects with a group acting by automorphisms.
#[derive(Clone)]
pub struct ActedPoset<O> {
    objects: Vec<O>,
    index: HashMap<O, usize>,
    up: Vec<FixedBitSet>,
    group: Group,
    action: Vec<u32>,
}

impl<O: PosetObject> Debug for ActedPoset<O> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ActedPoset({} objects, {} relations, group order {})",
            self.len(),
            self.relation_count(),
            self.group.order()
        )
    }
}

impl<O: PosetObject> ActedPoset<O> {
    /// Builds the poset; `leq` is evaluated on all pairs and `act` on all
    /// (element, object) pairs. Images outside `objects` are rejected.
    pub fn new(
        objects: Vec<O>,
        leq: impl Fn(&O, &O) -> bool + Sync,
        group: &Group,
        act: impl Fn(usize, &O) -> O + Sync,
    ) -> Result<Self> {
        let n = objects.len();
        let index: HashMap<O, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        if index.len() != n {
            return Err(Error::NotAPartialOrder("duplicate objects".into()));
        }
        let up: Vec<FixedBitSet> = objects
            .par_iter()
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, y) in objects.iter().enumerate() {
                    if leq(x, y) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let action: Vec<Vec<u32>> = (0..group.order())
            .into_par_iter()
            .map(|g| {
                objects
                    .iter()
                    .map(|o| {
                        let image = act(g, o);
                        index.get(&image).map(|&i| i as u32).ok_or_else(|| {
                            Error::NotAnAction(format!("image {image:?} of {o:?} is not an object"))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Ok(ActedPoset {
            objects,
            index,
            up,
            group: group.clone(),
            action: action.into_iter().flatten().collect(),
        })
    }

    /// Poset with the trivial group of the given degree.
    pub fn without_action(objects: Vec<O>, leq: impl Fn(&O, &O) -> bool + Sync, degree: usize) -> Result<Self> {
        Self::new(objects, leq, &Group::trivial(degree), |_, o| o.clone())
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &O {
        &self.objects[i]
    }

    pub fn index_of(&self, o: &O) -> Option<usize> {
        self.index.get(o).copied()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up[a].contains(b)
    }

    /// `{y : x ≤ y}`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y ≤ x}`.
    pub fn down_set(&self, x: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for y in 0..self.len() {
            if self.up[y].contains(x) {
                s.insert(y);
            }
        }
        s
    }

    /// Number of pairs `x < y`.
    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum::<usize>() - self.len()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if y == x {
                    continue;
                }
                let between = self.up[x]
                    .ones()
                    .any(|z| z != x && z != y && self.up[z].contains(y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn verify_partial_order(&self) -> Result<()> {
        for x in 0..self.len() {
            if !self.up[x].contains(x) {
                return Err(Error::NotAPartialOrder(format!("{:?} not reflexive", self.objects[x])));
            }
            for y in self.up[x].ones() {
                if y != x && self.up[y].contains(x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{:?} and {:?} violate antisymmetry",
                        self.objects[x], self.objects[y]
                    )));
                }
                if !self.up[y].is_subset(&self.up[x]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails above {:?}",
                        self.objects[x]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that the action is a homomorphism by order automorphisms.
    /// Generators suffice: the table is defined on every element.
    pub fn verify_action(&self) -> Result<()> {
        let g = &self.group;
        for x in 0..self.len() {
            if self.act(g.identity(), x) != x {
                return Err(Error::NotAnAction("identity moves an object".into()));
            }
        }
        for &s in g.generators() {
            for h in 0..g.order() {
                let sh = g.mul(s, h);
                for x in 0..self.len() {
                    if self.act(sh, x) != self.act(s, self.act(h, x)) {
                        return Err(Error::NotAnAction("not a homomorphism".into()));
                    }
                }
            }
            for x in 0..self.len() {
                for y in 0..self.len() {
                    if self.leq(x, y) != self.leq(self.act(s, x), self.act(s, y)) {
                        return Err(Error::NotAnAction(format!(
                            "{} is not an order automorphism",
                            g.element(s)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full subposet on `keep`, with the trivial group.
    pub fn subposet(&self, keep: &[usize]) -> ActedPoset<O> {
        let objects: Vec<O> = keep.iter().map(|&i| self.objects[i].clone()).collect();
        let up = keep
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(keep.len());
                for (k, &j) in keep.iter().enumerate() {
                    if self.up[i].contains(j) {
                        row.insert(k);
                    }
                }
                row
            })
            .collect();
        ActedPoset {
            index: objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect(),
            objects,
            up,
            group: Group::trivial(self.group.degree()),
            action: (0..keep.len() as u32).collect(),
        }
    }

    /// Full subposet on an `h`-stable set, acted on by `h` as a standalone group.
    pub fn subposet_with_group(&self, keep: &[usize], h: &Subgroup) -> Result<ActedPoset<O>> {
        if !h.parent().same_as(&self.group) {
            return Err(Error::NotASubgroup("subgroup of a different group".into()));
        }
        let mut sub = self.subposet(keep);
        let hg = h.to_group();
        let position: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut action = Vec::with_capacity(hg.order() * keep.len());
        for p in hg.elements() {
            let g = self.group.index_of(p).expect("subgroup element");
            for &i in keep {
                let image = self.act(g, i);
                let k = position
                    .get(&image)
                    .ok_or_else(|| Error::NotAnAction("kept set is not stable".into()))?;
                action.push(*k as u32);
            }
        }
        sub.group = hg;
        sub.action = action;
        Ok(sub)
    }

    /// Objects fixed by every element of `h`, with the trivial group.
    pub fn fixed_subposet(&self, h: &Subgroup) -> Result<ActedPoset<O>> {
        Ok(self.subposet(&self.fixed_objects(h)?))
    }

    pub fn fixed_objects(&self, h: &Subgroup) -> Result<Vec<usize>> {
        if !h.parent().same_as(&self.group) {
            return Err(Error::NotASubgroup("subgroup of a different group".into()));
        }
        let gens = h.generators();
        Ok((0..self.len())
            .filter(|&x| gens.iter().all(|&g| self.act(g, x) == x))
            .collect())
    }

    /// Stabilizer of an object.
    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let fixing: Vec<usize> = (0..self.group.order()).filter(|&g| self.act(g, x) == x).collect();
        Subgroup::from_members(&self.group, &fixing).expect("stabilizers are subgroups")
    }

    /// Orbits of the action, ordered by least index.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut o: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, x)).collect();
            o.sort_unstable();
            o.dedup();
            for &y in &o {
                seen[y] = true;
            }
            out.push(o);
        }
        out
    }

    /// The same objects with the order reversed.
    pub fn opposite(&self) -> ActedPoset<O> {
        let n = self.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in self.up[x].ones() {
                up[y].insert(x);
            }
        }
        ActedPoset {
            objects: self.objects.clone(),
            index: self.index.clone(),
            up,
            group: self.group.clone(),
            action: self.action.clone(),
        }
    }

    /// Least or greatest element, if any (least preferred).
    pub fn has_cone_point(&self) -> Option<usize> {
        let n = self.len();
        (0..n)
            .find(|&x| self.up[x].count_ones(..) == n)
            .or_else(|| (0..n).find(|&x| self.up.iter().all(|r| r.contains(x))))
    }

    /// All nonempty strict chains.
    pub fn chain_poset(&self) -> Result<ChainPoset> {
        self.chain_poset_filtered(|_| true, Guards::default().chain_count)
    }

    /// Strict chains through objects satisfying `filter`, with a count limit.
    pub fn chain_poset_filtered(&self, filter: impl Fn(usize) -> bool + Sync, max_chains: usize) -> Result<ChainPoset> {
        let allowed: Vec<bool> = (0..self.len()).map(&filter).collect();
        let per_start: Vec<Vec<Vec<u32>>> = (0..self.len())
            .into_par_iter()
            .map(|start| {
                let mut out = Vec::new();
                if allowed[start] {
                    let mut stack = vec![start as u32];
                    self.extend_chains(&allowed, &mut stack, &mut out, max_chains);
                }
                out
            })
            .collect();
        let total: usize = per_start.iter().map(Vec::len).sum();
        ensure("chain_count", max_chains, total)?;
        let mut chains: Vec<Vec<u32>> = per_start.into_iter().flatten().collect();
        chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(ChainPoset::from_chains(
            self.len(),
            chains,
            self.group.clone(),
            self.action.clone(),
        ))
    }

    fn extend_chains(&self, allowed: &[bool], stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) {
        if out.len() > cap {
            return;
        }
        out.push(stack.clone());
        let top = *stack.last().expect("nonempty") as usize;
        for y in self.up[top].ones() {
            if y != top && allowed[y] {
                stack.push(y as u32);
                self.extend_chains(allowed, stack, out, cap);
                stack.pop();
            }
        }
    }

    /// Relabels the objects through `f`, keeping order and action.
    pub fn map_objects<P: PosetObject>(&self, f: impl Fn(&O) -> P) -> Result<ActedPoset<P>> {
        let objects: Vec<P> = self.objects.iter().map(f).collect();
        let index: HashMap<P, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        if index.len() != objects.len() {
            return Err(Error::InvalidMap("relabeling is not injective".into()));
        }
        Ok(ActedPoset {
            objects,
            index,
            up: self.up.clone(),
            group: self.group.clone(),
            action: self.action.clone(),
        })
    }
}

impl<O: PosetObject> Poset for ActedPoset<O> {
    fn len(&self) -> usize {
        self.objects.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    fn group(&self) -> &Group {
        &self.group
    }

    fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.objects.len() + x] as usize
    }
}

/// Nonempty strict chains of a base poset ordered by subchain containment.
/// Chains are listed bottom to top, sorted by length then lexicographically.
#[derive(Clone)]
pub struct ChainPoset {
    base_len: usize,
    chains: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    group: Group,
    base_action: Vec<u32>,
    action: Vec<u32>,
}

impl Debug for ChainPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainPoset({} chains over {} objects)", self.chains.len(), self.base_len)
    }
}

impl ChainPoset {
    fn from_chains(base_len: usize, chains: Vec<Vec<u32>>, group: Group, base_action: Vec<u32>) -> Self {
        let index: HashMap<Vec<u32>, usize> = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let action: Vec<u32> = (0..group.order())
            .into_par_iter()
            .flat_map_iter(|g| {
                let chains = &chains;
                let index = &index;
                let base_action = &base_action;
                chains.iter().map(move |c| {
                    let image: Vec<u32> = c.iter().map(|&x| base_action[g * base_len + x as usize]).collect();
                    index[&image] as u32
                })
            })
            .collect();
        ChainPoset {
            base_len,
            chains,
            index,
            group,
            base_action,
            action,
        }
    }

    pub fn chains(&self) -> &[Vec<u32>] {
        &self.chains
    }

    pub fn chain(&self, i: usize) -> &[u32] {
        &self.chains[i]
    }

    pub fn index_of(&self, chain: &[u32]) -> Option<usize> {
        self.index.get(chain).copied()
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    /// Number of chains with `k` elements, for `k = 1, 2, ...`.
    pub fn length_counts(&self) -> Vec<usize> {
        let longest = self.chains.iter().map(Vec::len).max().unwrap_or(0);
        let mut counts = vec![0; longest];
        for c in &self.chains {
            counts[c.len() - 1] += 1;
        }
        counts
    }

    /// Chains fixed by `h`; these are exactly the chains of the fixed subposet.
    pub fn fixed_chains(&self, h: &Subgroup) -> Result<Vec<usize>> {
        if !h.parent().same_as(&self.group) {
            return Err(Error::NotASubgroup("subgroup of a different group".into()));
        }
        let gens = h.generators();
        Ok((0..self.chains.len())
            .filter(|&c| gens.iter().all(|&g| self.act(g, c) == c))
            .collect())
    }

    /// Image of a base object under a group element.
    pub fn act_base(&self, g: usize, x: usize) -> usize {
        self.base_action[g * self.base_len + x] as usize
    }

    /// The chain poset as an explicit poset on chains (quadratic memory).
    pub fn to_acted_poset(&self) -> Result<ActedPoset<Vec<u32>>> {
        ensure("chain_count", 20_000, self.chains.len())?;
        ActedPoset::new(
            self.chains.clone(),
            |a, b| is_subchain(a, b),
            &self.group,
            |g, c| c.iter().map(|&x| self.base_action[g * self.base_len + x as usize]).collect(),
        )
    }
}

/// Every element of `a` occurs in `b`.
pub fn is_subchain(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && a.iter().all(|x| b.contains(x))
}

impl Poset for ChainPoset {
    fn len(&self) -> usize {
        self.chains.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        is_subchain(&self.chains[a], &self.chains[b])
    }

    fn group(&self) -> &Group {
        &self.group
    }

    fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.chains.len() + x] as usize
    }
}

/// Order isomorphism `P → Q` as an index map, if one exists.
pub fn poset_isomorphic<O: PosetObject, P: PosetObject>(
    p: &ActedPoset<O>,
    q: &ActedPoset<P>,
) -> Result<Option<Vec<usize>>> {
    poset_isomorphic_with_hint(p, q, |_| None, Guards::default().iso_nodes)
}

/// As [`poset_isomorphic`], trying `hint(x)` first as the image of `x`.
pub fn poset_isomorphic_with_hint<O: PosetObject, P: PosetObject>(
    p: &ActedPoset<O>,
    q: &ActedPoset<P>,
    hint: impl Fn(usize) -> Option<usize>,
    node_cap: usize,
) -> Result<Option<Vec<usize>>> {
    let n = p.len();
    if n != q.len() || p.relation_count() != q.relation_count() {
        return Ok(None);
    }
    let (cp, cq) = refine_colors(p, q);
    let mut class_p: HashMap<usize, usize> = HashMap::new();
    let mut class_q: HashMap<usize, usize> = HashMap::new();
    for &c in &cp {
        *class_p.entry(c).or_default() += 1;
    }
    for &c in &cq {
        *class_q.entry(c).or_default() += 1;
    }
    if class_p != class_q {
        return Ok(None);
    }

    // Most constrained first: small classes, then neighbours of placed vertices.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&x| !placed[x])
            .min_by_key(|&x| {
                let linked = order.iter().any(|&y| p.leq(x, y) || p.leq(y, x));
                (!linked, class_p[&cp[x]], x)
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for &x in &order {
        let mut c: Vec<usize> = (0..n).filter(|&y| cq[y] == cp[x]).collect();
        if let Some(h) = hint(x) {
            if let Some(pos) = c.iter().position(|&y| y == h) {
                c.remove(pos);
                c.insert(0, h);
            }
        }
        candidates.push(c);
    }

    let mut image = vec![usize::MAX; n];
    let found = backtrack(p, q, &order, &candidates, &mut image, node_cap)?;
    Ok(found.then_some(image))
}

/// Depth-first search over `candidates[depth]` for `order[depth]`, kept on
/// an explicit stack since large posets would exhaust the call stack.
fn backtrack<O: PosetObject, P: PosetObject>(
    p: &ActedPoset<O>,
    q: &ActedPoset<P>,
    order: &[usize],
    candidates: &[Vec<usize>],
    image: &mut [usize],
    cap: usize,
) -> Result<bool> {
    let n = order.len();
    let mut used = vec![false; n];
    let mut cursor = vec![0usize; n];
    let mut nodes = 0usize;
    let mut depth = 0usize;
    loop {
        if depth == n {
            return Ok(true);
        }
        let x = order[depth];
        if image[x] != usize::MAX {
            used[image[x]] = false;
            image[x] = usize::MAX;
        }
        let mut advanced = false;
        while cursor[depth] < candidates[depth].len() {
            let y = candidates[depth][cursor[depth]];
            cursor[depth] += 1;
            if used[y] {
                continue;
            }
            nodes += 1;
            if nodes > cap {
                return Err(Error::SearchBudgetExceeded(cap));
            }
            let consistent = order[..depth].iter().all(|&z| {
                let w = image[z];
                p.leq(x, z) == q.leq(y, w) && p.leq(z, x) == q.leq(w, y)
            });
            if consistent {
                image[x] = y;
                used[y] = true;
                advanced = true;
                break;
            }
        }
        if advanced {
            depth += 1;
            if depth < n {
                cursor[depth] = 0;
            }
        } else if depth == 0 {
            return Ok(false);
        } else {
            depth -= 1;
        }
    }
}

/// Joint color refinement on both posets: colors agree across the two
/// posets exactly when the refined neighbourhood signatures agree.
fn refine_colors<O: PosetObject, P: PosetObject>(p: &ActedPoset<O>, q: &ActedPoset<P>) -> (Vec<usize>, Vec<usize>) {
    let n = p.len();
    let mut cp = vec![0usize; n];
    let mut cq = vec![0usize; n];
    let mut classes = 1;
    loop {
        let mut ids: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
        let sig_p: Vec<_> = (0..n).map(|x| signature(p, &cp, x)).collect();
        let sig_q: Vec<_> = (0..n).map(|x| signature(q, &cq, x)).collect();
        let mut all: Vec<_> = sig_p.iter().chain(sig_q.iter()).cloned().collect();
        all.sort();
        all.dedup();
        for (i, s) in all.into_iter().enumerate() {
            ids.insert(s, i);
        }
        let next_p: Vec<usize> = sig_p.iter().map(|s| ids[s]).collect();
        let next_q: Vec<usize> = sig_q.iter().map(|s| ids[s]).collect();
        let count = ids.len();
        cp = next_p;
        cq = next_q;
        if count == classes {
            return (cp, cq);
        }
        classes = count;
    }
}

fn signature<T: Poset>(p: &T, colors: &[usize], x: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let mut above = Vec::new();
    let mut below = Vec::new();
    for y in 0..p.len() {
        if y == x {
            continue;
        }
        if p.leq(x, y) {
            above.push(colors[y]);
        } else if p.leq(y, x) {
            below.push(colors[y]);
        }
    }
    above.sort_unstable();
    below.sort_unstable();
    (colors[x], above, below)
}

/// Result of comparing the `H`-fixed subposet with the direct construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointComparison {
    pub fixed_objects: usize,
    pub fixed_relations: usize,
    pub direct_objects: usize,
    pub direct_relations: usize,
    /// Image in the direct construction of each fixed object, if isomorphic.
    pub isomorphism: Option<Vec<usize>>,
}

impl FixedPointComparison {
    pub fn holds(&self) -> bool {
        self.isomorphism.is_some()
    }
}

/// Compares a fixed subposet with an independently built one, using object
/// equality as the search hint.
pub fn compare_posets<O: PosetObject>(
    fixed: &ActedPoset<O>,
    direct: &ActedPoset<O>,
) -> Result<FixedPointComparison> {
    let isomorphism = poset_isomorphic_with_hint(
        fixed,
        direct,
        |x| direct.index_of(fixed.object(x)),
        Guards::default().iso_nodes,
    )?;
    Ok(FixedPointComparison {
        fixed_objects: fixed.len(),
        fixed_relations: fixed.relation_count(),
        direct_objects: direct.len(),
        direct_relations: direct.relation_count(),
        isomorphism,
    })
}

/// The subgroups `K` with `H < K < G`, ordered by inclusion.
pub fn between_subgroup_poset(g: &Group, h: &Subgroup) -> Result<ActedPoset<Subgroup>> {
    if !h.parent().same_as(g) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let objects: Vec<Subgroup> = all_subgroups(g)?
        .into_iter()
        .filter(|k| h.is_subgroup_of(k) && k.order() > h.order() && !k.is_full())
        .collect();
    ActedPoset::without_action(objects, |a, b| a.is_subgroup_of(b), g.degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> ActedPoset<u8> {
        ActedPoset::without_action(vec![0u8, 1], |a, b| a <= b, 0).unwrap()
    }

    fn antichain(n: u8) -> ActedPoset<u8> {
        ActedPoset::without_action((0..n).collect(), |a, b| a == b, 0).unwrap()
    }

    #[test]
    fn chains_of_small_posets() {
        let c = chain2().chain_poset().unwrap();
        assert_eq!(c.chains(), &[vec![0], vec![1], vec![0, 1]]);
        assert_eq!(antichain(3).chain_poset().unwrap().len(), 3);
    }

    #[test]
    fn cone_points() {
        assert_eq!(chain2().has_cone_point(), Some(0));
        assert_eq!(antichain(2).has_cone_point(), None);
    }

    #[test]
    fn isomorphism_search() {
        let p = chain2();
        assert_eq!(poset_isomorphic(&p, &p).unwrap(), Some(vec![0, 1]));
        let three = ActedPoset::without_action(vec![0u8, 1, 2], |a, b| a <= b, 0).unwrap();
        assert_eq!(poset_isomorphic(&three, &antichain(3)).unwrap(), None);
        let rev = ActedPoset::without_action(vec![0u8, 1], |a, b| a >= b, 0).unwrap();
        assert_eq!(poset_isomorphic(&p, &rev).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn subgroup_intervals() {
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(between_subgroup_poset(&s3, &Subgroup::trivial(&s3)).unwrap().len(), 4);
        let c4 = Group::cyclic(4).unwrap();
        assert_eq!(between_subgroup_poset(&c4, &Subgroup::trivial(&c4)).unwrap().len(), 1);
        let c2 = Group::cyclic(2).unwrap();
        assert!(between_subgroup_poset(&c2, &Subgroup::trivial(&c2)).unwrap().is_empty());
    }

    #[test]
    fn action_on_a_cycle_of_points() {
        let c3 = Group::cyclic(3).unwrap();
        let p = ActedPoset::new((0..3usize).collect(), |a, b| a == b, &c3, |g, &x| c3.element(g).apply(x)).unwrap();
        assert!(p.verify_action().is_ok());
        assert!(p.fixed_subposet(&Subgroup::full(&c3)).unwrap().is_empty());
        assert_eq!(p.orbits().len(), 1);
    }
}
