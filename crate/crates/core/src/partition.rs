//! Set partitions, the partition posets of a G-set and their fixed points,
//! and the isovariant splitting data.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::guards::{ensure, Guards};
use crate::gset::{coset_gset, disjoint_union, GSet};
use crate::homology::{order_complex, reduced_homology, HomologyResult};
use crate::perm::{all_subgroups, weyl_group, Group, Perm, Subgroup};
use crate::poset::{between_subgroup_poset, compare_posets, ActedPoset, FixedPointComparison, Poset};
use crate::Rational;

/// A set partition of `{0, ..., n-1}`; blocks are bit masks sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<u64>,
}

impl Partition {
    /// Blocks must be disjoint, nonempty and cover the ground set.
    pub fn from_masks(n: usize, mut blocks: Vec<u64>) -> Result<Self> {
        if n > 64 {
            return Err(Error::GuardExceeded {
                guard: "partition_points",
                limit: 64,
                actual: n,
            });
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut seen = 0u64;
        for &b in &blocks {
            if b == 0 || b & seen != 0 || b & !full != 0 {
                return Err(Error::InvalidMap(format!("blocks {blocks:?} do not partition {n} points")));
            }
            seen |= b;
        }
        if seen != full {
            return Err(Error::InvalidMap(format!("blocks {blocks:?} do not cover {n} points")));
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Partition { n, blocks })
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let masks = blocks
            .iter()
            .map(|b| {
                b.iter().try_fold(0u64, |m, &p| {
                    if p >= n {
                        Err(Error::PointOutOfRange { point: p, size: n })
                    } else {
                        Ok(m | 1 << p)
                    }
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::from_masks(n, masks)
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        Partition {
            n,
            blocks: if n == 0 { Vec::new() } else { vec![(1u64 << n) - 1] },
        }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Points of block `i`, ascending.
    pub fn block_points(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|p| self.blocks[i] >> p & 1 == 1).collect()
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b >> point & 1 == 1)
            .expect("blocks cover the ground set")
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn is_indiscrete(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// Discrete or indiscrete.
    pub fn is_trivial(&self) -> bool {
        self.is_discrete() || self.is_indiscrete()
    }

    /// Every block of `finer` lies inside a block of `self`.
    pub fn coarsens(&self, finer: &Partition) -> bool {
        finer
            .blocks
            .iter()
            .all(|&b| self.blocks.iter().any(|&c| b & !c == 0))
    }

    /// Direct image of the blocks under a permutation of the points.
    pub fn image(&self, perm: &Perm) -> Partition {
        let blocks = self
            .blocks
            .iter()
            .map(|&b| {
                (0..self.n)
                    .filter(|p| b >> p & 1 == 1)
                    .fold(0u64, |m, p| m | 1 << perm.apply(p))
            })
            .collect();
        Partition::from_masks(self.n, blocks).expect("image of a partition")
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let mut blocks = Vec::new();
        for &a in &self.blocks {
            for &b in &other.blocks {
                if a & b != 0 {
                    blocks.push(a & b);
                }
            }
        }
        Partition::from_masks(self.n, blocks).expect("meet of partitions")
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut blocks: Vec<u64> = self.blocks.clone();
        for &b in &other.blocks {
            let (touching, rest): (Vec<u64>, Vec<u64>) = blocks.into_iter().partition(|&c| c & b != 0);
            let merged = touching.into_iter().fold(b, |m, c| m | c);
            blocks = rest;
            blocks.push(merged);
        }
        Partition::from_masks(self.n, blocks).expect("join of partitions")
    }

    /// `g` maps every block onto a block.
    pub fn is_invariant_under(&self, perm: &Perm) -> bool {
        self.image(perm) == *self
    }

    /// Renders blocks with the given point names, e.g. `(x y)(ix iy)`.
    pub fn display_with(&self, names: &[String]) -> String {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let pts: Vec<&str> = self.block_points(i).iter().map(|&p| names[p].as_str()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| i.to_string()).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n` points, in restricted-growth-string order.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    all_partitions_within(n, Guards::default().partition_points)
}

pub fn all_partitions_within(n: usize, max_points: usize) -> Result<Vec<Partition>> {
    ensure("partition_points", max_points, n)?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = rgs.len();
        if i == n {
            let mut blocks = vec![0u64; max + 1];
            for (p, &b) in rgs.iter().enumerate() {
                blocks[b] |= 1 << p;
            }
            blocks.retain(|&b| b != 0);
            out.push(Partition::from_masks(n, blocks).expect("restricted growth string"));
            return;
        }
        for b in 0..=(max + 1).min(if i == 0 { 0 } else { max + 1 }) {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        return Ok(vec![Partition::discrete(0)]);
    }
    rec(0, 0, &mut rgs, &mut out);
    Ok(out)
}

fn coarsening_order(x: &Partition, y: &Partition) -> bool {
    y.coarsens(x)
}

/// Non-trivial partitions of the underlying set of `a`, ordered by
/// coarsening (`x ≤ y` when `y` coarsens `x`), acted on by direct image.
pub fn build_partition_poset(a: &GSet) -> Result<ActedPoset<Partition>> {
    build_partition_poset_within(a, Guards::default().partition_points)
}

pub fn build_partition_poset_within(a: &GSet, max_points: usize) -> Result<ActedPoset<Partition>> {
    let objects: Vec<Partition> = all_partitions_within(a.size(), max_points)?
        .into_iter()
        .filter(|p| !p.is_trivial())
        .collect();
    ActedPoset::new(objects, coarsening_order, a.group(), |g, p| p.image(a.alpha(g)))
}

/// Non-trivial `h`-invariant partitions of the underlying set, ordered by
/// coarsening, with the trivial group.
pub fn build_equivariant_partition_poset(a: &GSet, h: &Subgroup) -> Result<ActedPoset<Partition>> {
    if !h.parent().same_as(a.group()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let gens: Vec<&Perm> = h.generators().iter().map(|&g| a.alpha(g)).collect();
    let objects: Vec<Partition> = all_partitions(a.size())?
        .into_iter()
        .filter(|p| !p.is_trivial() && gens.iter().all(|g| p.is_invariant_under(g)))
        .collect();
    ActedPoset::without_action(objects, coarsening_order, a.group().degree())
}

/// Fiber partitions of all `h`-equivariant surjections from `a` onto
/// `h`-sets with between 2 and `|a| - 1` points. Built from transitive
/// `h`-sets and orbitwise maps; independent of the invariance filter.
pub fn invariant_partitions_via_surjections(a: &GSet, h: &Subgroup) -> Result<BTreeSet<Partition>> {
    ensure("partition_points", 6, a.size())?;
    let local = a.restrict(h)?;
    let hg = local.group().clone();
    let mut types: Vec<GSet> = Vec::new();
    let mut keys = HashSet::new();
    for k in all_subgroups(&hg)? {
        if keys.insert(k.conjugacy_key()) {
            types.push(coset_gset(&hg, &k)?);
        }
    }
    let orbit_reps: Vec<usize> = local.orbits().iter().map(|o| o[0]).collect();
    let rep_stabs: Vec<Subgroup> = orbit_reps.iter().map(|&r| local.stabilizer(r)).collect::<Result<_>>()?;
    let n = a.size();
    let mut out = BTreeSet::new();

    // multisets of transitive types with total size in 2..n
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(0, Vec::new(), 0)];
    while let Some((start, chosen, size)) = stack.pop() {
        if size >= 2 && size < n {
            let b = chosen
                .iter()
                .try_fold(GSet::trivial(&hg, 0), |acc, &t| disjoint_union(&acc, &types[t]))?;
            collect_surjection_fibers(&local, &b, &orbit_reps, &rep_stabs, &mut out)?;
        }
        for t in start..types.len() {
            if size + types[t].size() < n {
                let mut next = chosen.clone();
                next.push(t);
                stack.push((t, next, size + types[t].size()));
            }
        }
    }
    Ok(out)
}

fn collect_surjection_fibers(
    a: &GSet,
    b: &GSet,
    reps: &[usize],
    stabs: &[Subgroup],
    out: &mut BTreeSet<Partition>,
) -> Result<()> {
    let g = a.group();
    let choices: Vec<Vec<usize>> = stabs
        .iter()
        .map(|s| {
            (0..b.size())
                .filter(|&y| s.members().iter().all(|&x| b.act(x, y) == y))
                .collect()
        })
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let mut pick = vec![0usize; reps.len()];
    loop {
        let mut f = vec![usize::MAX; a.size()];
        for (i, &r) in reps.iter().enumerate() {
            let target = choices[i][pick[i]];
            for x in 0..g.order() {
                f[a.act(x, r)] = b.act(x, target);
            }
        }
        let image: HashSet<usize> = f.iter().copied().collect();
        if image.len() == b.size() {
            let mut blocks = vec![0u64; b.size()];
            for (p, &y) in f.iter().enumerate() {
                blocks[y] |= 1 << p;
            }
            out.insert(Partition::from_masks(a.size(), blocks)?);
        }
        let mut i = 0;
        loop {
            if i == reps.len() {
                return Ok(());
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Compares `𝒫(A)^H` with the directly built poset of invariant partitions.
pub fn verify_fixed_point_equivalence(a: &GSet, h: &Subgroup) -> Result<FixedPointComparison> {
    let full = build_partition_poset(a)?;
    let fixed = full.fixed_subposet(h)?;
    let direct = build_equivariant_partition_poset(a, h)?;
    compare_posets(&fixed, &direct)
}

/// Number of orbits of blocks under the action of `a`'s group.
pub fn block_orbit_count(p: &Partition, a: &GSet) -> usize {
    let k = p.block_count();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &g in a.group().generators() {
        for i in 0..k {
            let point = p.blocks()[i].trailing_zeros() as usize;
            let j = p.block_of(a.act(g, point));
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
    }
    (0..k).filter(|&i| find(&mut parent, i) == i).count()
}

/// Full subposet of invariant partitions with at least two block orbits.
pub fn two_orbit_subposet(pg: &ActedPoset<Partition>, a: &GSet) -> ActedPoset<Partition> {
    let keep: Vec<usize> = (0..pg.len())
        .filter(|&i| block_orbit_count(pg.object(i), a) >= 2)
        .collect();
    pg.subposet(&keep)
}

/// Partition into orbits.
pub fn orbit_partition(a: &GSet) -> Partition {
    Partition::from_blocks(a.size(), &a.orbits()).expect("orbits partition the set")
}

/// Objects sharing neither an upper nor a lower bound with `alpha` inside `pg`.
pub fn orthogonal_complement(pg: &ActedPoset<Partition>, alpha: usize) -> Vec<usize> {
    let up_a = pg.up_set(alpha).clone();
    let down_a = pg.down_set(alpha);
    (0..pg.len())
        .filter(|&b| {
            let mut up = up_a.clone();
            up.intersect_with(pg.up_set(b));
            let mut down = down_a.clone();
            down.intersect_with(&pg.down_set(b));
            up.count_ones(..) == 0 && down.count_ones(..) == 0
        })
        .collect()
}

/// Same complement read in the partition lattice: meet discrete and join
/// indiscrete. Agrees with [`orthogonal_complement`] on posets of invariant
/// partitions, since meets and joins of invariant partitions are invariant.
pub fn orthogonal_complement_by_lattice(pg: &ActedPoset<Partition>, alpha: usize) -> Vec<usize> {
    let a = pg.object(alpha);
    (0..pg.len())
        .filter(|&b| {
            let p = pg.object(b);
            a.meet(p).is_discrete() && a.join(p).is_indiscrete()
        })
        .collect()
}

/// `m` disjoint copies of `G/H`.
pub fn isovariant_gset(g: &Group, h: &Subgroup, m: usize) -> Result<GSet> {
    let orbit = coset_gset(g, h)?;
    (0..m).try_fold(GSet::trivial(g, 0), |acc, _| disjoint_union(&acc, &orbit))
}

/// Predicted reduced Betti numbers of the invariant partition complex of
/// `m` copies of `G/H`, from the wedge of smashed unreduced suspensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgePrediction {
    pub weyl_order: usize,
    pub copies: BigInt,
    pub subgroup_homology: HomologyResult,
    pub partition_homology: HomologyResult,
    /// `(degree, betti)` with nonzero Betti number.
    pub predicted: Vec<(isize, BigInt)>,
    /// `H = G`: the complex is the classical one, no suspension.
    pub degenerate: bool,
    /// Both factors torsion-free, so the integral prediction is exact.
    pub torsion_free: bool,
}

pub fn isovariant_wedge_prediction(g: &Group, h: &Subgroup, m: usize) -> Result<WedgePrediction> {
    if m < 2 {
        return Err(Error::InvalidMap("the orbit count must be at least 2".into()));
    }
    let weyl_order = weyl_group(g, h)?.order();
    let trivial = Group::trivial(0);
    let pm = build_partition_poset(&GSet::trivial(&trivial, m))?;
    let partition_homology = reduced_homology(&order_complex(&pm)?);
    let subgroup_homology = reduced_homology(&order_complex(&between_subgroup_poset(g, h)?)?);
    let torsion_free = partition_homology.is_torsion_free() && subgroup_homology.is_torsion_free();

    if h.is_full() {
        let predicted = partition_homology
            .nonzero_betti()
            .into_iter()
            .map(|(d, b)| (d, BigInt::from(b)))
            .collect();
        return Ok(WedgePrediction {
            weyl_order,
            copies: BigInt::one(),
            subgroup_homology,
            partition_homology,
            predicted,
            degenerate: true,
            torsion_free,
        });
    }

    let copies = BigInt::from(weyl_order).pow((m - 1) as u32);
    let mut predicted: std::collections::BTreeMap<isize, BigInt> = std::collections::BTreeMap::new();
    for (i, bi) in subgroup_homology.nonzero_betti() {
        for (j, bj) in partition_homology.nonzero_betti() {
            *predicted.entry(i + j + 2).or_default() += &copies * BigInt::from(bi * bj);
        }
    }
    Ok(WedgePrediction {
        weyl_order,
        copies,
        subgroup_homology,
        partition_homology,
        predicted: predicted.into_iter().collect(),
        degenerate: false,
        torsion_free,
    })
}

/// Reduced homology of the invariant partition complex of `m` copies of `G/H`.
pub fn isovariant_direct_homology(g: &Group, h: &Subgroup, m: usize) -> Result<HomologyResult> {
    let a = isovariant_gset(g, h, m)?;
    let pg = build_equivariant_partition_poset(&a, &Subgroup::full(g))?;
    Ok(reduced_homology(&order_complex(&pg)?))
}

/// Both sides of the Weyl-group counting identity for `m` copies of `G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylIdentityReport {
    pub d: usize,
    pub m: usize,
    /// `|W_{Σ_{dm}}(G)|` for the diagonal image of `G`.
    pub weyl_in_sigma_dm: usize,
    /// `|W_{Σ_d}(G)|` for the image of `G` acting on `G/H`.
    pub weyl_in_sigma_d: usize,
    pub m_factorial: usize,
    /// `|W_G(H)|`.
    pub weyl_g_h: usize,
    /// `|W_{Σ_{dm}}(G)| / (|W_{Σ_d}(G)| · m!)`.
    pub left: Rational,
    /// `|W_G(H)|^{m-1}` (exponent read as the orbit count minus one).
    pub right_orbit_reading: BigInt,
    /// `|W_G(H)|^{dm-1}` (exponent read as the point count minus one).
    pub right_point_reading: BigInt,
}

/// Computes every quantity by exhaustive normalizer scans; asserts nothing.
pub fn weyl_identity_check(g: &Group, h: &Subgroup, m: usize) -> Result<WeylIdentityReport> {
    weyl_identity_check_within(g, h, m, Guards::default().weyl_points)
}

pub fn weyl_identity_check_within(g: &Group, h: &Subgroup, m: usize, max_points: usize) -> Result<WeylIdentityReport> {
    let cosets = coset_gset(g, h)?;
    let d = cosets.size();
    ensure("weyl_points", max_points, d * m)?;
    let image: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| cosets.alpha(x).images().to_vec()).collect();
    let diagonal: BTreeSet<Vec<usize>> = image
        .iter()
        .map(|p| (0..d * m).map(|i| (i / d) * d + p[i % d]).collect())
        .collect();
    let weyl_in_sigma_d = normalizer_order_in_symmetric(&image, d) / image.len();
    let weyl_in_sigma_dm = normalizer_order_in_symmetric(&diagonal, d * m) / diagonal.len();
    let m_factorial: usize = (1..=m).product();
    let weyl_g_h = weyl_group(g, h)?.order();
    let left = Rational::new(
        BigInt::from(weyl_in_sigma_dm),
        BigInt::from(weyl_in_sigma_d * m_factorial),
    );
    let base = BigInt::from(weyl_g_h);
    Ok(WeylIdentityReport {
        d,
        m,
        weyl_in_sigma_dm,
        weyl_in_sigma_d,
        m_factorial,
        weyl_g_h,
        left,
        right_orbit_reading: base.pow((m - 1) as u32),
        right_point_reading: base.pow((d * m).saturating_sub(1) as u32),
    })
}

/// `|N_{Σ_n}(K)|` for a permutation group `K` given as its set of image arrays.
fn normalizer_order_in_symmetric(k: &BTreeSet<Vec<usize>>, n: usize) -> usize {
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut count = 0;
    loop {
        let mut inv = vec![0; n];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s] = i;
        }
        let normalizes = k.iter().all(|p| {
            let conj: Vec<usize> = (0..n).map(|i| sigma[p[inv[i]]]).collect();
            k.contains(&conj)
        });
        if normalizes {
            count += 1;
        }
        if !next_permutation(&mut sigma) {
            return count;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `|W_G(H)|` as a small integer helper for reports.
pub fn weyl_order(g: &Group, h: &Subgroup) -> Result<usize> {
    Ok(weyl_group(g, h)?.order())
}

/// Exact integer value of a rational known to be integral.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::parse_orbit_sum;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=6).map(|n| all_partitions(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
        assert!(all_partitions(10).is_err());
    }

    #[test]
    fn lattice_operations() {
        let p = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let q = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(p.join(&q).to_string(), "(1 2 3)(4)");
        assert!(p.meet(&q).is_discrete());
        assert!(p.join(&q).coarsens(&p));
        assert!(!p.coarsens(&q));
    }

    #[test]
    fn small_partition_posets() {
        let t = Group::trivial(0);
        assert_eq!(build_partition_poset(&GSet::trivial(&t, 3)).unwrap().relation_count(), 0);
        assert_eq!(build_partition_poset(&GSet::trivial(&t, 4)).unwrap().len(), 13);
        assert!(build_partition_poset(&GSet::trivial(&t, 2)).unwrap().is_empty());
    }

    #[test]
    fn free_c2_on_four_points() {
        let g = Group::parse("(1 2)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + G/e").unwrap();
        let pg = build_equivariant_partition_poset(&a, &Subgroup::full(&g)).unwrap();
        assert_eq!(pg.len(), 5);
        let top = pg.index_of(&orbit_partition(&a)).unwrap();
        let into_top = pg.covers().iter().filter(|&&(_, y)| y == top).count();
        assert_eq!(into_top, 2);
        let comp = orthogonal_complement(&pg, top);
        assert_eq!(comp, orthogonal_complement_by_lattice(&pg, top));
        assert_eq!(comp.len(), 2);
        assert!(comp.iter().all(|&b| pg.object(b).block_count() == 2 && block_orbit_count(pg.object(b), &a) == 1));
        let two = two_orbit_subposet(&pg, &a);
        assert_eq!(two.len(), 3);
    }

    #[test]
    fn orbit_and_point() {
        let g = Group::parse("(1 2)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + 1").unwrap();
        let pg = build_equivariant_partition_poset(&a, &Subgroup::full(&g)).unwrap();
        assert_eq!(pg.len(), 1);
        assert_eq!(pg.has_cone_point(), Some(0));
        assert_eq!(two_orbit_subposet(&pg, &a).len(), 1);
    }

    #[test]
    fn surjection_oracle_agrees() {
        let g = Group::parse("(1 2)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + G/e").unwrap();
        let h = Subgroup::full(&g);
        let direct: BTreeSet<Partition> = build_equivariant_partition_poset(&a, &h).unwrap().objects().iter().cloned().collect();
        assert_eq!(invariant_partitions_via_surjections(&a, &h).unwrap(), direct);
    }

    #[test]
    fn weyl_identity_small_cases() {
        let c2 = Group::parse("(1 2)", None).unwrap();
        let r = weyl_identity_check(&c2, &Subgroup::trivial(&c2), 2).unwrap();
        assert_eq!((r.weyl_in_sigma_dm, r.weyl_in_sigma_d, r.m_factorial), (4, 1, 2));
        assert_eq!(r.left, Rational::from_integer(2.into()));
        assert_eq!(r.right_orbit_reading, BigInt::from(2));
        assert_eq!(r.right_point_reading, BigInt::from(8));

        let same = weyl_identity_check(&c2, &Subgroup::full(&c2), 2).unwrap();
        assert_eq!(same.left, Rational::from_integer(1.into()));
        assert_eq!(same.right_orbit_reading, BigInt::from(1));

        let e = Group::trivial(1);
        let triv = weyl_identity_check(&e, &Subgroup::full(&e), 3).unwrap();
        assert_eq!(triv.left, Rational::from_integer(1.into()));
    }

    #[test]
    fn partition_complex_homology() {
        let t = Group::trivial(0);
        for (n, deg, b) in [(3, 0, 2), (4, 1, 6), (5, 2, 24)] {
            let pm = build_partition_poset(&GSet::trivial(&t, n)).unwrap();
            let h = reduced_homology(&order_complex(&pm).unwrap());
            assert_eq!(h.nonzero_betti(), vec![(deg, b)]);
        }
    }

    #[test]
    fn wedge_prediction_matches_direct() {
        for (gens, m) in [("(1 2)", 2), ("(1 2)", 3), ("(1 2 3)", 2)] {
            let g = Group::parse(gens, None).unwrap();
            let e = Subgroup::trivial(&g);
            let pred = isovariant_wedge_prediction(&g, &e, m).unwrap();
            let direct = isovariant_direct_homology(&g, &e, m).unwrap();
            let got: Vec<(isize, BigInt)> = direct.nonzero_betti().into_iter().map(|(d, b)| (d, BigInt::from(b))).collect();
            assert_eq!(pred.predicted, got, "{gens} m={m}");
        }
    }

    #[test]
    fn next_permutation_counts() {
        let mut v = vec![0, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
