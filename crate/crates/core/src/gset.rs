//! Finite G-sets given by explicit action tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{are_conjugate, is_subconjugate, parse_generators, Group, Perm, Subgroup};

/// A finite set with an action homomorphism `α: G → Σ_n`.
#[derive(Clone)]
pub struct GSet {
    group: Group,
    size: usize,
    action: Arc<Vec<Perm>>,
    names: Option<Arc<Vec<String>>>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GSet(size {}, group order {}, orbits {:?})",
            self.size,
            self.group.order(),
            self.orbits()
        )
    }
}

/// Multiset of orbit types: stabilizer conjugacy class (as its least
/// conjugate's member list) with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitTypeSignature {
    pub entries: Vec<(Vec<usize>, usize)>,
}

impl OrbitTypeSignature {
    /// `Σ multiplicity · |G| / |stabilizer|`.
    pub fn total_size(&self, group_order: usize) -> usize {
        self.entries
            .iter()
            .map(|(key, m)| m * group_order / key.len())
            .sum()
    }

    /// Every orbit type of `other` occurs here at least as often.
    pub fn contains(&self, other: &OrbitTypeSignature) -> bool {
        other.entries.iter().all(|(k, m)| {
            self.entries
                .iter()
                .any(|(k2, m2)| k2 == k && m2 >= m)
        })
    }
}

impl GSet {
    /// Validates that `action` is a homomorphism indexed by group elements.
    pub fn new(group: &Group, action: Vec<Perm>) -> Result<GSet> {
        if action.len() != group.order() {
            return Err(Error::NotAnAction(format!(
                "{} images for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let size = action.first().map_or(0, Perm::degree);
        let set = GSet::unchecked(group, size, action);
        set.verify_action()?;
        Ok(set)
    }

    fn unchecked(group: &Group, size: usize, action: Vec<Perm>) -> GSet {
        GSet {
            group: group.clone(),
            size,
            action: Arc::new(action),
            names: None,
        }
    }

    /// Full table check of the homomorphism property.
    pub fn verify_action(&self) -> Result<()> {
        let g = &self.group;
        if self.action.iter().any(|p| p.degree() != self.size) {
            return Err(Error::NotAnAction("images of different degrees".into()));
        }
        if !self.action[g.identity()].is_identity() {
            return Err(Error::NotAnAction("identity does not act trivially".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.action[g.mul(a, b)] != self.action[a].compose(&self.action[b]) {
                    return Err(Error::NotAnAction(format!(
                        "α({}∘{}) differs from α({})∘α({})",
                        g.element(a),
                        g.element(b),
                        g.element(a),
                        g.element(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The defining action of a permutation group on its points.
    pub fn natural(group: &Group) -> GSet {
        GSet::unchecked(group, group.degree(), group.elements().to_vec())
    }

    /// `n` fixed points.
    pub fn trivial(group: &Group, n: usize) -> GSet {
        GSet::unchecked(group, n, vec![Perm::identity(n); group.order()])
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<GSet> {
        if names.len() != self.size {
            return Err(Error::DegreeMismatch {
                expected: self.size,
                found: names.len(),
            });
        }
        self.names = Some(Arc::new(names));
        Ok(self)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `α(g)`.
    pub fn alpha(&self, g: usize) -> &Perm {
        &self.action[g]
    }

    pub fn act(&self, g: usize, point: usize) -> usize {
        self.action[g].apply(point)
    }

    /// Display label of a point (1-based number unless names were given).
    pub fn name(&self, point: usize) -> String {
        match &self.names {
            Some(n) => n[point].clone(),
            None => (point + 1).to_string(),
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.size).map(|p| self.name(p)).collect()
    }

    /// Parity of `α(g)`.
    pub fn sign(&self, g: usize) -> i64 {
        self.action[g].sign()
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point < self.size {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                point,
                size: self.size,
            })
        }
    }

    fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.parent().same_as(&self.group) {
            Ok(())
        } else {
            Err(Error::NotASubgroup("subgroup of a different group".into()))
        }
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        let mut o: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, point)).collect();
        o.sort_unstable();
        o.dedup();
        Ok(o)
    }

    /// Orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for p in 0..self.size {
            if seen[p] {
                continue;
            }
            let o = self.orbit(p).expect("in range");
            for &q in &o {
                seen[q] = true;
            }
            out.push(o);
        }
        out
    }

    pub fn stabilizer(&self, point: usize) -> Result<Subgroup> {
        self.check_point(point)?;
        let fixing: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.act(g, point) == point)
            .collect();
        Subgroup::from_members(&self.group, &fixing)
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Result<Vec<usize>> {
        self.check_subgroup(h)?;
        Ok((0..self.size)
            .filter(|&p| h.members().iter().all(|&g| self.act(g, p) == p))
            .collect())
    }

    pub fn signature(&self) -> OrbitTypeSignature {
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for orbit in self.orbits() {
            let key = self.stabilizer(orbit[0]).expect("in range").conjugacy_key();
            *counts.entry(key).or_default() += 1;
        }
        OrbitTypeSignature {
            entries: counts.into_iter().collect(),
        }
    }

    /// The same points viewed as an `H`-set, `H` as a standalone group.
    pub fn restrict(&self, h: &Subgroup) -> Result<GSet> {
        self.check_subgroup(h)?;
        let hg = h.to_group();
        let action = hg
            .elements()
            .iter()
            .map(|p| self.action[self.group.index_of(p).expect("subgroup element")].clone())
            .collect();
        Ok(GSet {
            group: hg,
            size: self.size,
            action: Arc::new(action),
            names: self.names.clone(),
        })
    }
}

/// Left translation on the left cosets `gH`, ordered by least element index.
pub fn coset_gset(g: &Group, h: &Subgroup) -> Result<GSet> {
    if !h.parent().same_as(g) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let (reps, coset_of) = coset_reps(g, h);
    let position: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let action = (0..g.order())
        .map(|x| {
            Perm::new(
                reps.iter()
                    .map(|&r| position[&coset_of(g.mul(x, r))])
                    .collect(),
            )
            .expect("translation is a bijection")
        })
        .collect();
    let suffix = if h.is_trivial() { "" } else { "H" };
    let names = reps
        .iter()
        .map(|&r| {
            let element = if r == g.identity() { "e".to_string() } else { g.element(r).to_string() };
            format!("{element}{suffix}")
        })
        .collect();
    GSet::unchecked(g, reps.len(), action).with_names(names)
}

/// Coset representatives (least index in each coset) and the map to them.
fn coset_reps<'a>(g: &'a Group, h: &'a Subgroup) -> (Vec<usize>, impl Fn(usize) -> usize + 'a) {
    let coset_of = move |x: usize| -> usize {
        h.members()
            .iter()
            .map(|&k| g.mul(x, k))
            .min()
            .expect("nonempty subgroup")
    };
    let mut reps: Vec<usize> = (0..g.order()).map(&coset_of).collect();
    reps.sort_unstable();
    reps.dedup();
    (reps, coset_of)
}

/// `A ⊔ B`, points of `B` after those of `A`.
pub fn disjoint_union(a: &GSet, b: &GSet) -> Result<GSet> {
    if !a.group.same_as(&b.group) {
        return Err(Error::GroupMismatch);
    }
    let n = a.size + b.size;
    let action = (0..a.group.order())
        .map(|g| {
            let mut images: Vec<usize> = a.action[g].images().to_vec();
            images.extend(b.action[g].images().iter().map(|&i| i + a.size));
            Perm::new(images).expect("union of bijections")
        })
        .collect();
    let mut names = a.names();
    names.extend(b.names());
    GSet::unchecked(&a.group, n, action).with_names(names)
}

/// Induction `G ×_H A'` for an `H`-set whose group has exactly the
/// permutations of `h`.
pub fn induce(a: &GSet, h: &Subgroup) -> Result<GSet> {
    let g = h.parent();
    if a.group.order() != h.order()
        || a
            .group
            .elements()
            .iter()
            .any(|p| g.index_of(p).map_or(true, |i| !h.contains(i)))
    {
        return Err(Error::NotASubgroup(
            "the G-set's group is not the given subgroup".into(),
        ));
    }
    let (reps, coset_of) = coset_reps(g, h);
    let position: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let m = a.size;
    let action = (0..g.order())
        .map(|x| {
            let mut images = vec![0; reps.len() * m];
            for (i, &r) in reps.iter().enumerate() {
                let moved = g.mul(x, r);
                let rj = coset_of(moved);
                let hk = g.mul(g.inv(rj), moved);
                let local = a
                    .group
                    .index_of(g.element(hk))
                    .expect("element of the subgroup");
                for p in 0..m {
                    images[i * m + p] = position[&rj] * m + a.act(local, p);
                }
            }
            Perm::new(images).expect("induced action is a bijection")
        })
        .collect();
    let names = reps
        .iter()
        .flat_map(|&r| (0..m).map(move |p| (r, p)))
        .map(|(r, p)| format!("[{}, {}]", g.element(r), a.name(p)))
        .collect();
    GSet::unchecked(g, reps.len() * m, action).with_names(names)
}

/// Isomorphic as G-sets, decided by orbit-type signatures.
pub fn gset_isomorphic(a: &GSet, b: &GSet) -> Result<bool> {
    if !a.group.same_as(&b.group) {
        return Err(Error::GroupMismatch);
    }
    Ok(a.size == b.size && a.signature() == b.signature())
}

/// `Some(H)` when every orbit has stabilizer conjugate to `H`.
pub fn isovariance_class(a: &GSet) -> Option<Subgroup> {
    let orbits = a.orbits();
    let first = a.stabilizer(orbits.first()?[0]).ok()?;
    orbits[1..]
        .iter()
        .all(|o| are_conjugate(&first, &a.stabilizer(o[0]).expect("in range")).unwrap_or(false))
        .then_some(first)
}

/// A G-map `A → G/H` exists: every stabilizer is subconjugate to `H`.
pub fn is_induced(a: &GSet, h: &Subgroup) -> Result<bool> {
    a.check_subgroup(h)?;
    for orbit in a.orbits() {
        if !is_subconjugate(&a.stabilizer(orbit[0])?, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses an orbit sum such as `G/e + G/(1 3)(2 4) + 2`.
///
/// Terms: an integer (that many fixed points), `natural` (the defining
/// action), `G/e`, `G/G`, or `G/` followed by `;`-separated generators of a
/// subgroup in 1-based cycle notation.
pub fn parse_orbit_sum(group: &Group, text: &str) -> Result<GSet> {
    let err = |column: usize, message: String| Error::Parse {
        line: 1,
        column,
        message,
    };
    if text.trim().is_empty() {
        return Err(err(1, "empty orbit sum".into()));
    }
    let mut total = GSet::trivial(group, 0);
    let mut offset = 0;
    for raw in text.split('+') {
        let lead = raw.len() - raw.trim_start().len();
        let term = raw.trim();
        let column = offset + lead + 1;
        let part = if term.is_empty() {
            return Err(err(column, "empty term".into()));
        } else if let Ok(k) = term.parse::<usize>() {
            GSet::trivial(group, k)
        } else if term == "natural" {
            GSet::natural(group)
        } else if let Some(rest) = term.strip_prefix("G/") {
            let sub = match rest.trim() {
                "e" | "1" => Subgroup::trivial(group),
                "G" => Subgroup::full(group),
                gens => {
                    let perms = parse_generators(gens, Some(group.degree())).map_err(|e| match e {
                        Error::Parse {
                            column: c, message, ..
                        } => err(column + 2 + c - 1, message),
                        other => err(column, other.to_string()),
                    })?;
                    Subgroup::generated_by_perms(group, &perms)
                        .map_err(|e| err(column, e.to_string()))?
                }
            };
            coset_gset(group, &sub)?
        } else {
            return Err(err(column, format!("unrecognized term `{term}`")));
        };
        total = disjoint_union(&total, &part)?;
        offset += raw.len() + 1;
    }
    // Summands may repeat coset labels; points are numbered instead.
    total.names = None;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4_scenario() -> (Group, GSet) {
        let g = Group::parse("(1 2 3 4)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + G/(1 3)(2 4)").unwrap();
        (g, a)
    }

    #[test]
    fn c4_orbits_and_stabilizers() {
        let (g, a) = c4_scenario();
        assert_eq!(a.size(), 6);
        let sizes: Vec<usize> = a.orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 2]);
        assert_eq!(a.fixed_points(&Subgroup::trivial(&g)).unwrap().len(), 6);
        assert_eq!(a.stabilizer(4).unwrap().order(), 2);
        assert!(a.verify_action().is_ok());
        assert!(isovariance_class(&a).is_none());
    }

    #[test]
    fn restriction_and_induction() {
        let (g, _) = c4_scenario();
        let c2 = Subgroup::generated_by_perms(&g, &[Perm::parse("(1 3)(2 4)", Some(4)).unwrap()]).unwrap();
        let regular = coset_gset(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(regular.restrict(&c2).unwrap().orbits().len(), 2);

        let point = GSet::trivial(&c2.to_group(), 1);
        let induced = induce(&point, &c2).unwrap();
        assert!(induced.verify_action().is_ok());
        assert!(gset_isomorphic(&induced, &coset_gset(&g, &c2).unwrap()).unwrap());
    }

    #[test]
    fn induction_from_trivial_group_is_free() {
        let c2 = Group::parse("(1 2)", None).unwrap();
        let e = Subgroup::trivial(&c2);
        let two = GSet::trivial(&e.to_group(), 2);
        let free = induce(&two, &e).unwrap();
        assert_eq!(free.size(), 4);
        assert_eq!(free.orbits().len(), 2);
        let expected = parse_orbit_sum(&c2, "G/e + G/e").unwrap();
        assert!(gset_isomorphic(&free, &expected).unwrap());
        assert!(!gset_isomorphic(&free, &GSet::trivial(&c2, 4)).unwrap());
        assert!(isovariance_class(&free).unwrap().is_trivial());
        assert!(is_induced(&free, &e).unwrap());
    }

    #[test]
    fn signature_ignores_order_of_summands() {
        let (g, a) = c4_scenario();
        let b = parse_orbit_sum(&g, "G/(1 3)(2 4) + G/e").unwrap();
        assert!(gset_isomorphic(&a, &b).unwrap());
        assert_eq!(a.signature().total_size(g.order()), 6);
    }

    #[test]
    fn orbit_sum_terms() {
        let trivial = Group::parse("", None).unwrap();
        let three = parse_orbit_sum(&trivial, "3").unwrap();
        assert_eq!(three.size(), 3);
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(parse_orbit_sum(&s3, "natural").unwrap().orbits().len(), 1);
        assert_eq!(parse_orbit_sum(&s3, "G/(1 2);(1 2 3)").unwrap().size(), 1);
        assert!(matches!(
            parse_orbit_sum(&s3, "G/e + G/(1 4)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_orbit_sum(&s3, "G/e + bogus"), Err(Error::Parse { column: 7, .. })));
    }

    #[test]
    fn broken_action_rejected() {
        let c2 = Group::parse("(1 2)", None).unwrap();
        let bad = vec![Perm::parse("(1 2)", Some(2)).unwrap(); 2];
        assert!(matches!(GSet::new(&c2, bad), Err(Error::NotAnAction(_))));
    }
}
