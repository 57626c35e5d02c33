//! Permutations and finite permutation groups with full element tables.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::guards::{ensure, Guards};

/// A bijection of `{0, ..., degree - 1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds from disjoint 0-based cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::PointOutOfRange {
                        point: a,
                        size: degree,
                    });
                }
                if used[a] {
                    return Err(Error::NotAPermutation(cycle.clone()));
                }
                used[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::new(images)
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2)(3 4)`.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text, 0)?;
        let needed = cycles.iter().flatten().map(|a| a + 1).max().unwrap_or(0);
        let degree = degree.unwrap_or(needed);
        if needed > degree {
            return Err(Error::PointOutOfRange {
                point: needed,
                size: degree,
            });
        }
        Perm::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|a| (a + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

/// Parses 1-based cycles into 0-based point lists. `offset` shifts reported
/// columns when `text` is a slice of a longer line.
pub fn parse_cycles(text: &str, offset: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number: Option<(usize, usize)> = None;
    let mut seen = HashSet::new();
    let chars: Vec<char> = text.chars().collect();
    let mut finish_number = |number: &mut Option<(usize, usize)>,
                             current: &mut Option<Vec<usize>>|
     -> Result<()> {
        if let Some((value, col)) = number.take() {
            if value == 0 {
                return Err(parse_error(col, "points are numbered from 1"));
            }
            if !seen.insert(value) {
                return Err(parse_error(col, format!("point {value} repeated")));
            }
            current
                .as_mut()
                .ok_or_else(|| parse_error(col, "point outside a cycle"))?
                .push(value - 1);
        }
        Ok(())
    };
    for (k, &ch) in chars.iter().enumerate() {
        let col = offset + k + 1;
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(parse_error(col, "nested parenthesis"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                finish_number(&mut number, &mut current)?;
                let cycle = current
                    .take()
                    .ok_or_else(|| parse_error(col, "unmatched `)`"))?;
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            d if d.is_ascii_digit() => {
                let digit = d.to_digit(10).expect("digit") as usize;
                number = Some(match number {
                    Some((v, c)) => (v * 10 + digit, c),
                    None => (digit, col),
                });
            }
            ' ' | '\t' | ',' => finish_number(&mut number, &mut current)?,
            other => return Err(parse_error(col, format!("unexpected character `{other}`"))),
        }
    }
    if current.is_some() {
        return Err(parse_error(offset + chars.len() + 1, "unclosed `(`"));
    }
    Ok(cycles)
}

/// Parses `;`-separated generators in 1-based cycle notation. The degree is
/// the largest point mentioned unless `degree` is given.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Perm>> {
    let mut parsed = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        if !piece.trim().is_empty() {
            parsed.push(parse_cycles(piece, offset)?);
        }
        offset += piece.chars().count() + 1;
    }
    let needed = parsed
        .iter()
        .flatten()
        .flatten()
        .map(|a| a + 1)
        .max()
        .unwrap_or(0);
    let degree = degree.unwrap_or(needed);
    if needed > degree {
        return Err(Error::PointOutOfRange {
            point: needed,
            size: degree,
        });
    }
    parsed
        .iter()
        .map(|cycles| Perm::from_cycles(cycles, degree))
        .collect()
}

struct GroupData {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
}

/// A finite permutation group with its full multiplication table.
///
/// Elements are listed breadth-first from the identity (index 0) over the
/// sorted generators; each layer is in lexicographic order of image arrays.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

/// Closure of `gens` under composition, with the default order limit.
pub fn generate_group(gens: &[Perm], degree: usize) -> Result<Group> {
    generate_group_within(gens, degree, Guards::default().group_order)
}

pub fn generate_group_within(gens: &[Perm], degree: usize, max_order: usize) -> Result<Group> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let mut sorted: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    sorted.sort();
    sorted.dedup();

    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id.clone(), 0usize)]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for x in &frontier {
            for s in &sorted {
                let y = s.compose(x);
                if !index.contains_key(&y) {
                    next.insert(y);
                }
            }
        }
        for y in &next {
            index.insert(y.clone(), elements.len());
            elements.push(y.clone());
        }
        ensure("group_order", max_order, elements.len())?;
        frontier = next.into_iter().collect();
    }

    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for (a, ea) in elements.iter().enumerate() {
        for (b, eb) in elements.iter().enumerate() {
            mul[a * n + b] = index[&ea.compose(eb)] as u32;
        }
    }
    let inv = elements.iter().map(|e| index[&e.inverse()] as u32).collect();
    let generators = sorted.iter().map(|g| index[g]).collect();
    Ok(Group(Arc::new(GroupData {
        degree,
        elements,
        index,
        mul,
        inv,
        generators,
    })))
}

impl Group {
    pub fn trivial(degree: usize) -> Group {
        generate_group(&[], degree).expect("trivial group")
    }

    /// The full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Group> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(&[vec![0, 1]], n)?);
            gens.push(Perm::from_cycles(&[(0..n).collect()], n)?);
        }
        generate_group(&gens, n)
    }

    /// The cyclic group generated by an `n`-cycle.
    pub fn cyclic(n: usize) -> Result<Group> {
        let gens = if n >= 2 {
            vec![Perm::from_cycles(&[(0..n).collect()], n)?]
        } else {
            Vec::new()
        };
        generate_group(&gens, n)
    }

    /// Parses `;`-separated 1-based generators, e.g. `(1 2);(1 2 3)`.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Group> {
        let gens = parse_generators(text, degree)?;
        let degree = gens.first().map_or(degree.unwrap_or(0), Perm::degree);
        generate_group(&gens, degree)
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.0.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.0.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.0.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    /// Same underlying table (cheap pointer test, then by elements).
    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.0.elements == other.0.elements)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.element(i).order()
    }

    /// Conjugacy classes ordered by least element index, members ascending.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        classes
    }

    /// Class id of every element, consistent with [`Group::conjugacy_classes`].
    pub fn class_index(&self) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for (k, class) in self.conjugacy_classes().iter().enumerate() {
            for &m in class {
                out[m] = k;
            }
        }
        out
    }

    /// Generators in 1-based cycle notation separated by `;`.
    pub fn describe(&self) -> String {
        self.generators()
            .iter()
            .map(|&g| self.element(g).to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group(order {}, degree {}, <{}>)",
            self.order(),
            self.degree(),
            self.describe()
        )
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Group {}

/// Indices of the subgroup generated by `seeds`.
fn closure(g: &Group, seeds: &[usize]) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(g.order());
    mask.insert(0);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for &s in seeds {
            let y = g.mul(x, s);
            if !mask.contains(y) {
                mask.insert(y);
                queue.push(y);
            }
        }
    }
    mask
}

/// A subgroup of a [`Group`], stored as a set of element indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Vec<usize>,
    mask: FixedBitSet,
}

impl Subgroup {
    fn from_mask(parent: &Group, mask: FixedBitSet) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: mask.ones().collect(),
            mask,
        }
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Self::generated(parent, &[])
    }

    pub fn full(parent: &Group) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(parent.order());
        mask.insert_range(..);
        Self::from_mask(parent, mask)
    }

    /// Subgroup generated by element indices.
    pub fn generated(parent: &Group, seeds: &[usize]) -> Subgroup {
        Self::from_mask(parent, closure(parent, seeds))
    }

    /// Subgroup generated by permutations, which must lie in `parent`.
    pub fn generated_by_perms(parent: &Group, perms: &[Perm]) -> Result<Subgroup> {
        let seeds = perms
            .iter()
            .map(|p| {
                parent
                    .index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated(parent, &seeds))
    }

    /// Validates that `members` is closed and contains the identity.
    pub fn from_members(parent: &Group, members: &[usize]) -> Result<Subgroup> {
        let mut mask = FixedBitSet::with_capacity(parent.order());
        for &m in members {
            if m >= parent.order() {
                return Err(Error::NotASubgroup(format!("index {m} out of range")));
            }
            mask.insert(m);
        }
        if !mask.contains(0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for a in mask.ones() {
            if !mask.contains(parent.inv(a)) {
                return Err(Error::NotASubgroup("not closed under inverses".into()));
            }
            for b in mask.ones() {
                if !mask.contains(parent.mul(a, b)) {
                    return Err(Error::NotASubgroup("not closed under composition".into()));
                }
            }
        }
        Ok(Self::from_mask(parent, mask))
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn contains(&self, element: usize) -> bool {
        self.mask.contains(element)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent.same_as(&other.parent) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent.same_as(&other.parent) && self.mask.is_subset(&other.mask)
    }

    /// `g H g⁻¹`.
    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.parent.order());
        for &h in &self.members {
            mask.insert(self.parent.conjugate(g, h));
        }
        Self::from_mask(&self.parent, mask)
    }

    /// A small generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = closure(&self.parent, &gens);
        for &m in &self.members {
            if !span.contains(m) {
                gens.push(m);
                span = closure(&self.parent, &gens);
            }
        }
        gens
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut seeds = self.generators();
        seeds.extend(other.generators());
        Ok(Self::generated(&self.parent, &seeds))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        Ok(Self::from_mask(&self.parent, mask))
    }

    /// The subgroup as a standalone permutation group on the same points.
    pub fn to_group(&self) -> Group {
        let gens: Vec<Perm> = self
            .generators()
            .iter()
            .map(|&g| self.parent.element(g).clone())
            .collect();
        generate_group(&gens, self.parent.degree()).expect("subgroup of a guarded group")
    }

    /// Least member list over all conjugates; equal keys mean conjugate subgroups.
    pub fn conjugacy_key(&self) -> Vec<usize> {
        (0..self.parent.order())
            .map(|g| self.conjugate_by(g).members)
            .min()
            .expect("nonempty group")
    }

    /// Generators in 1-based cycle notation separated by `;` (`e` if trivial).
    pub fn describe(&self) -> String {
        let gens = self.generators();
        if gens.is_empty() {
            return "e".into();
        }
        gens.iter()
            .map(|&g| self.parent.element(g).to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.parent.same_as(&other.parent)
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.members).cmp(&(other.order(), &other.members))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, <{}>)", self.order(), self.describe())
    }
}

/// Every subgroup once, sorted by order then member set.
pub fn all_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    all_subgroups_within(g, Guards::default().subgroup_search)
}

pub fn all_subgroups_within(g: &Group, max_order: usize) -> Result<Vec<Subgroup>> {
    ensure("subgroup_search", max_order, g.order())?;
    let mut cyclic: Vec<(FixedBitSet, usize)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in 0..g.order() {
        let c = closure(g, &[x]);
        if seen_cyclic.insert(c.clone()) {
            cyclic.push((c, x));
        }
    }

    let trivial = closure(g, &[]);
    let mut found: Vec<(FixedBitSet, Vec<usize>)> = vec![(trivial.clone(), Vec::new())];
    let mut seen = HashSet::from([trivial]);
    let mut k = 0;
    while k < found.len() {
        let (mask, seeds) = found[k].clone();
        for (c, x) in &cyclic {
            if c.is_subset(&mask) {
                continue;
            }
            let mut next_seeds = seeds.clone();
            next_seeds.push(*x);
            let joined = closure(g, &next_seeds);
            if seen.insert(joined.clone()) {
                found.push((joined, next_seeds));
            }
        }
        k += 1;
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(mask, _)| Subgroup::from_mask(g, mask))
        .collect();
    out.sort();
    Ok(out)
}

fn check_member(g: &Group, h: &Subgroup) -> Result<()> {
    if h.parent().same_as(g) {
        Ok(())
    } else {
        Err(Error::NotASubgroup("subgroup belongs to a different group".into()))
    }
}

/// `N_G(H) = {g : g H g⁻¹ = H}`.
pub fn normalizer(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    check_member(g, h)?;
    let gens = h.generators();
    let mut mask = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() {
        if gens.iter().all(|&s| h.contains(g.conjugate(x, s))) {
            mask.insert(x);
        }
    }
    Ok(Subgroup::from_mask(g, mask))
}

/// `W_G(H) = N_G(H)/H`, realized by its action on the cosets of `H` in `N_G(H)`.
pub fn weyl_group(g: &Group, h: &Subgroup) -> Result<Group> {
    let n = normalizer(g, h)?;
    let coset_of = |x: usize| -> usize {
        h.members()
            .iter()
            .map(|&k| g.mul(x, k))
            .min()
            .expect("nonempty subgroup")
    };
    let reps: BTreeSet<usize> = n.members().iter().map(|&x| coset_of(x)).collect();
    let reps: Vec<usize> = reps.into_iter().collect();
    let position: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let gens = n
        .generators()
        .iter()
        .map(|&s| Perm::new(reps.iter().map(|&r| position[&coset_of(g.mul(s, r))]).collect()))
        .collect::<Result<Vec<_>>>()?;
    generate_group(&gens, reps.len())
}

/// Subgroup generated by all commutators of `s`, closed under conjugation by `s`.
fn commutator_subgroup(s: &Subgroup) -> Subgroup {
    let g = s.parent();
    let gens = s.generators();
    let mut seeds = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            seeds.push(c);
        }
    }
    loop {
        let current = closure(g, &seeds);
        let mut grew = false;
        for &x in &gens {
            for c in current.ones().collect::<Vec<_>>() {
                let y = g.conjugate(x, c);
                if !current.contains(y) {
                    seeds.push(y);
                    grew = true;
                    break;
                }
            }
        }
        if !grew {
            return Subgroup::from_mask(g, current);
        }
    }
}

/// True when the derived series reaches the trivial group.
pub fn is_solvable(g: &Group) -> bool {
    let mut s = Subgroup::full(g);
    loop {
        if s.is_trivial() {
            return true;
        }
        let d = commutator_subgroup(&s);
        if d.order() == s.order() {
            return false;
        }
        s = d;
    }
}

pub fn is_normal(h: &Subgroup, g: &Group) -> Result<bool> {
    check_member(g, h)?;
    Ok(g.generators().iter().all(|&x| h.conjugate_by(x) == *h))
}

pub fn are_conjugate(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    h.check_parent(k)?;
    if h.order() != k.order() {
        return Ok(false);
    }
    Ok((0..h.parent().order()).any(|x| h.conjugate_by(x) == *k))
}

/// Some conjugate of `h` lies inside `k`.
pub fn is_subconjugate(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    h.check_parent(k)?;
    if k.order() % h.order() != 0 {
        return Ok(false);
    }
    let g = h.parent();
    Ok((0..g.order()).any(|x| h.members().iter().all(|&y| k.contains(g.conjugate(x, y)))))
}
