//! Abstract simplicial complexes, reduced integral homology and induced
//! actions on rational homology.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form_exact, DenseMatrix, EchelonBasis, SparseMatrix, SparseVec};
use crate::perm::{Group, Perm};
use crate::poset::{ActedPoset, ChainPoset, PosetObject};
use crate::scalar::Field;
use crate::Rational;

/// A finite simplicial complex with simplices stored as sorted vertex tuples,
/// grouped by dimension and sorted lexicographically within each dimension.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(face counts {:?})", self.face_counts())
    }
}

impl SimplicialComplex {
    pub fn empty(vertex_count: usize) -> Self {
        SimplicialComplex {
            vertex_count,
            faces: Vec::new(),
            index: Vec::new(),
        }
    }

    /// The downward closure of the given simplices (vertices in any order).
    pub fn from_facets(vertex_count: usize, facets: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        Self::from_sorted_sets(vertex_count, by_dim)
    }

    /// Builds from a family that must already be closed under taking faces.
    pub fn from_closed_family(vertex_count: usize, simplices: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(s);
        }
        let k = Self::from_sorted_sets(vertex_count, by_dim);
        for d in 1..k.faces.len() {
            for s in &k.faces[d] {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !k.index[d - 1].contains_key(&f) {
                        return Err(Error::NotSimplicial(format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
        }
        Ok(k)
    }

    fn from_sorted_sets(vertex_count: usize, by_dim: Vec<BTreeSet<Vec<u32>>>) -> Self {
        let faces: Vec<Vec<Vec<u32>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = faces
            .iter()
            .map(|fs| fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        SimplicialComplex {
            vertex_count,
            faces,
            index,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self, d: usize) -> &[Vec<u32>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn face_index(&self, simplex: &[u32]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        self.index.get(d)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.face_index(simplex).is_some()
    }

    /// Number of faces in dimensions `0..=dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn simplex_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Maximal faces, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut covered: Vec<Vec<bool>> = self.faces.iter().map(|f| vec![false; f.len()]).collect();
        for d in 1..self.faces.len() {
            for s in &self.faces[d] {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    covered[d - 1][self.index[d - 1][&f]] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (d, fs) in self.faces.iter().enumerate() {
            for (i, s) in fs.iter().enumerate() {
                if !covered[d][i] {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Flat text: one maximal face per line, vertices separated by spaces.
    pub fn export_facets(&self) -> String {
        let mut out = String::new();
        for f in self.facets() {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Unreduced Euler characteristic from face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| if d % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }

    /// `∂_d : C_d → C_{d-1}`; for `d = 0` the augmentation `C_0 → ℤ`.
    pub fn boundary_matrix(&self, d: usize) -> SparseMatrix<i64> {
        let cols = self.faces(d).len();
        if d == 0 {
            return SparseMatrix::from_triplets(1, cols, (0..cols).map(|j| (0, j, 1)));
        }
        let rows = self.faces(d - 1).len();
        let mut triplets = Vec::with_capacity(cols * (d + 1));
        for (j, s) in self.faces(d).iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                triplets.push((self.index[d - 1][&f], j, sign));
            }
        }
        SparseMatrix::from_triplets(rows, cols, triplets)
    }

    /// Boundary of a `d`-simplex as a sparse vector over a field.
    fn boundary_vec<F: Field>(&self, d: usize, simplex: &[u32]) -> SparseVec<F> {
        if d == 0 {
            return vec![(0, F::one())];
        }
        let mut v: Vec<(usize, F)> = (0..simplex.len())
            .map(|i| {
                let mut f = simplex.to_vec();
                f.remove(i);
                let sign = if i % 2 == 0 { F::one() } else { -F::one() };
                (self.index[d - 1][&f], sign)
            })
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Exact check that `∂_{d-1} ∘ ∂_d = 0` for every `d`.
    pub fn verify_boundaries(&self) -> Result<()> {
        for d in 1..self.faces.len() {
            let prod = self.boundary_matrix(d - 1).mul(&self.boundary_matrix(d));
            if !prod.is_zero() {
                return Err(Error::NotSimplicial(format!("∂∘∂ ≠ 0 in degree {d}")));
            }
        }
        Ok(())
    }

    /// Connected and nonempty.
    pub fn is_connected(&self) -> bool {
        let verts = self.faces(0);
        if verts.is_empty() {
            return false;
        }
        let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, v)| (v[0], i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.faces(1) {
            let a = find(&mut parent, pos[&e[0]]);
            let b = find(&mut parent, pos[&e[1]]);
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..verts.len()).all(|v| find(&mut parent, v) == root)
    }

    /// Image of a simplex under a vertex map, sorted, with the sign of the
    /// sorting permutation; `None` when two vertices collapse.
    pub fn map_simplex(simplex: &[u32], vertex_map: impl Fn(u32) -> u32) -> Option<(Vec<u32>, i64)> {
        let image: Vec<u32> = simplex.iter().map(|&v| vertex_map(v)).collect();
        let mut sign = 1;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                match image[i].cmp(&image[j]) {
                    std::cmp::Ordering::Greater => sign = -sign,
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        let mut sorted = image;
        sorted.sort_unstable();
        Some((sorted, sign))
    }

    /// Checks that a vertex permutation maps simplices to simplices.
    pub fn verify_automorphism(&self, sigma: &Perm) -> Result<()> {
        if sigma.degree() != self.vertex_count {
            return Err(Error::NotSimplicial(format!(
                "permutation of degree {} on {} vertices",
                sigma.degree(),
                self.vertex_count
            )));
        }
        for fs in &self.faces {
            for s in fs {
                let (image, _) = Self::map_simplex(s, |v| sigma.apply(v as usize) as u32).expect("injective");
                if !self.contains(&image) {
                    return Err(Error::NotSimplicial(format!("{s:?} maps to non-simplex {image:?}")));
                }
            }
        }
        Ok(())
    }
}

/// Simplices are the strict chains of the poset (as sets of object indices).
pub fn order_complex<O: PosetObject>(p: &ActedPoset<O>) -> Result<SimplicialComplex> {
    Ok(chains_as_complex(&p.chain_poset()?))
}

/// The chains of a chain poset, read as a simplicial complex.
pub fn chains_as_complex(c: &ChainPoset) -> SimplicialComplex {
    SimplicialComplex::from_closed_family(c.base_len(), c.chains().iter().cloned())
        .expect("chains are closed under subchains")
}

/// Vertex permutations `α(g)` of a poset action, one per group element.
pub fn vertex_action<O: PosetObject>(p: &ActedPoset<O>) -> Vec<Perm> {
    use crate::poset::Poset;
    (0..p.group().order())
        .map(|g| Perm::new((0..p.len()).map(|x| p.act(g, x)).collect()).expect("action by bijections"))
        .collect()
}

/// Homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: isize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Homology in degrees `-1..=dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    fn at(&self, d: isize) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == d)
    }

    pub fn betti(&self, d: isize) -> usize {
        self.at(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: isize) -> &[BigInt] {
        self.at(d).map_or(&[], |h| h.torsion.as_slice())
    }

    /// `(degree, betti)` for the nonzero Betti numbers.
    pub fn nonzero_betti(&self) -> Vec<(isize, usize)> {
        self.degrees
            .iter()
            .filter(|h| h.betti > 0)
            .map(|h| (h.degree, h.betti))
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|h| h.torsion.is_empty())
    }

    /// All groups vanish.
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|h| h.betti == 0 && h.torsion.is_empty())
    }

    /// The single degree carrying homology, if exactly one does.
    pub fn concentrated_in(&self) -> Option<isize> {
        let nonzero: Vec<isize> = self
            .degrees
            .iter()
            .filter(|h| h.betti > 0 || !h.torsion.is_empty())
            .map(|h| h.degree)
            .collect();
        (nonzero.len() == 1).then(|| nonzero[0])
    }

    /// Alternating Betti sum.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| if h.degree.rem_euclid(2) == 0 { h.betti as i64 } else { -(h.betti as i64) })
            .sum()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .filter(|h| h.betti > 0 || !h.torsion.is_empty())
            .map(|h| {
                let mut s = format!("H{}: Z^{}", h.degree, h.betti);
                for t in &h.torsion {
                    s.push_str(&format!(" + Z/{t}"));
                }
                s
            })
            .collect();
        if parts.is_empty() {
            write!(f, "acyclic")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Reduced integral homology of the augmented chain complex.
pub fn reduced_homology(k: &SimplicialComplex) -> HomologyResult {
    let top = k.faces.len();
    // ranks[d] = rank ∂_d for d = 0..top (∂_0 is the augmentation); torsion from ∂_{d+1}
    let forms: Vec<(usize, Vec<BigInt>)> = (0..top)
        .into_par_iter()
        .map(|d| {
            let s = smith_normal_form_exact(&k.boundary_matrix(d));
            (s.rank, s.torsion())
        })
        .collect();
    let rank = |d: usize| forms.get(d).map_or(0, |f| f.0);
    let mut degrees = vec![DegreeHomology {
        degree: -1,
        betti: 1 - rank(0),
        torsion: forms.first().map_or(Vec::new(), |f| f.1.clone()),
    }];
    for d in 0..top {
        degrees.push(DegreeHomology {
            degree: d as isize,
            betti: k.faces[d].len() - rank(d) - rank(d + 1),
            torsion: forms.get(d + 1).map_or(Vec::new(), |f| f.1.clone()),
        });
    }
    HomologyResult {
        reduced: true,
        degrees,
    }
}

/// Unreduced homology, derived from the reduced groups.
pub fn homology(k: &SimplicialComplex) -> HomologyResult {
    let mut h = reduced_homology(k);
    h.reduced = false;
    h.degrees.retain(|d| d.degree >= 0);
    if !k.is_empty() {
        h.degrees[0].betti += 1;
    }
    h
}

/// A basis of reduced `H_d(K; F)` by cycle representatives, able to express
/// any cycle in that basis.
pub struct HomologyBasis<F> {
    degree: usize,
    reduction: EchelonBasis<F>,
    representatives: Vec<SparseVec<F>>,
}

impl<F: Field> HomologyBasis<F> {
    pub fn new(k: &SimplicialComplex, degree: usize) -> Self {
        let cycles = crate::linalg::kernel_basis(
            &k.faces(degree)
                .iter()
                .map(|s| k.boundary_vec::<F>(degree, s))
                .collect::<Vec<_>>(),
        );
        let mut reduction = EchelonBasis::new();
        for s in k.faces(degree + 1) {
            reduction.insert(&k.boundary_vec::<F>(degree + 1, s), Vec::new());
        }
        let mut representatives = Vec::new();
        for z in cycles {
            let tag = vec![(representatives.len(), F::one())];
            if reduction.insert(&z, tag) {
                representatives.push(z);
            }
        }
        HomologyBasis {
            degree,
            reduction,
            representatives,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec<F>] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle.
    pub fn coordinates(&self, cycle: &SparseVec<F>) -> Result<SparseVec<F>> {
        let (residue, coords) = self.reduction.reduce(cycle);
        if !residue.is_empty() {
            return Err(Error::NotSimplicial("vector is not a cycle".into()));
        }
        Ok(coords)
    }

    /// Matrix of the action of a simplicial automorphism on this basis.
    pub fn action_matrix(&self, k: &SimplicialComplex, sigma: &Perm) -> Result<DenseMatrix<F>> {
        let faces = k.faces(self.degree);
        let columns = self
            .representatives
            .iter()
            .map(|z| {
                let image = push_forward(k, faces, z, |v| sigma.apply(v as usize) as u32)?;
                self.coordinates(&image)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix::from_columns(self.rank(), &columns))
    }
}

/// Image of a chain under a vertex map that is injective on its simplices.
fn push_forward<F: Field>(
    k: &SimplicialComplex,
    faces: &[Vec<u32>],
    chain: &SparseVec<F>,
    map: impl Fn(u32) -> u32,
) -> Result<SparseVec<F>> {
    let mut acc: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
    for (i, c) in chain {
        let (image, sign) = SimplicialComplex::map_simplex(&faces[*i], &map)
            .ok_or_else(|| Error::NotSimplicial("vertex map collapses a simplex".into()))?;
        let j = k
            .face_index(&image)
            .ok_or_else(|| Error::NotSimplicial(format!("{image:?} is not a simplex")))?;
        let term = if sign > 0 { c.clone() } else { -c.clone() };
        let e = acc.entry(j).or_insert_with(F::zero);
        *e = e.clone() + term;
    }
    Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

/// Action of `sigma` on rational reduced homology in degree `d`.
pub fn induced_homology_action(k: &SimplicialComplex, sigma: &Perm, d: usize) -> Result<DenseMatrix<Rational>> {
    k.verify_automorphism(sigma)?;
    HomologyBasis::<Rational>::new(k, d).action_matrix(k, sigma)
}

/// Traces of a group action on reduced homology, one per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    pub degree: usize,
    pub values: Vec<Rational>,
}

impl CharacterVector {
    /// Value on each conjugacy class of `group`, in class order.
    pub fn class_values(&self, group: &Group) -> Vec<Rational> {
        group
            .conjugacy_classes()
            .iter()
            .map(|c| self.values[c[0]].clone())
            .collect()
    }

    /// Constant on classes.
    pub fn is_class_function(&self, group: &Group) -> bool {
        group
            .conjugacy_classes()
            .iter()
            .all(|c| c.iter().all(|&x| self.values[x] == self.values[c[0]]))
    }
}

/// Character of the action `action[g]` (vertex permutations indexed by the
/// elements of `group`) on rational reduced homology in degree `d`. Traces
/// are computed once per conjugacy class.
pub fn character(k: &SimplicialComplex, group: &Group, action: &[Perm], d: usize) -> Result<CharacterVector> {
    character_over::<Rational>(k, group, action, d).map(|values| CharacterVector { degree: d, values })
}

/// Class-wise traces over any field, expanded to one value per element.
pub fn character_over<F: Field>(k: &SimplicialComplex, group: &Group, action: &[Perm], d: usize) -> Result<Vec<F>> {
    if action.len() != group.order() {
        return Err(Error::NotAnAction("one vertex permutation per element expected".into()));
    }
    for &s in group.generators() {
        k.verify_automorphism(&action[s])?;
    }
    let basis = HomologyBasis::<F>::new(k, d);
    let classes = group.conjugacy_classes();
    let traces = classes
        .par_iter()
        .map(|c| basis.action_matrix(k, &action[c[0]]).map(|m| m.trace()))
        .collect::<Result<Vec<F>>>()?;
    let mut values = vec![F::zero(); group.order()];
    for (c, t) in classes.iter().zip(traces) {
        for &x in c {
            values[x] = t.clone();
        }
    }
    Ok(values)
}

/// Fixed points of a simplicial action of the group generated by `perms`.
///
/// Vertices of the result are the vertex orbits spanning a simplex; its
/// simplices come from invariant simplices, one vertex per orbit they contain.
/// Returns the complex and the orbit (sorted vertex list) behind each vertex.
pub fn fixed_point_complex(k: &SimplicialComplex, perms: &[Perm]) -> (SimplicialComplex, Vec<Vec<u32>>) {
    let invariant: Vec<&Vec<u32>> = (0..=k.dim().max(-1))
        .flat_map(|d| k.faces(d as usize).iter())
        .filter(|s| {
            perms.iter().all(|p| {
                let mut image: Vec<u32> = s.iter().map(|&v| p.apply(v as usize) as u32).collect();
                image.sort_unstable();
                image == **s
            })
        })
        .collect();
    let mut orbit_of: HashMap<u32, usize> = HashMap::new();
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for s in &invariant {
        let v = s[0];
        if orbit_of.contains_key(&v) {
            continue;
        }
        let mut orbit = BTreeSet::from([v]);
        let mut frontier = vec![v];
        while let Some(x) = frontier.pop() {
            for p in perms {
                let y = p.apply(x as usize) as u32;
                if orbit.insert(y) {
                    frontier.push(y);
                }
            }
        }
        if k.contains(&orbit.iter().copied().collect::<Vec<_>>()) {
            orbits.push(orbit.iter().copied().collect());
        }
        for &x in &orbit {
            orbit_of.entry(x).or_insert(usize::MAX);
        }
    }
    orbits.sort();
    orbit_of.clear();
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of.insert(x, i);
        }
    }
    let simplices = invariant.iter().map(|s| {
        let set: BTreeSet<u32> = s.iter().map(|v| orbit_of[v] as u32).collect();
        set.into_iter().collect::<Vec<u32>>()
    });
    let complex = SimplicialComplex::from_closed_family(orbits.len(), simplices)
        .expect("invariant simplices are closed under orbit faces");
    (complex, orbits)
}

/// Alternating sum over `d ≥ -1` of the trace of `sigma` on the chain groups
/// of the augmented complex. Equals the alternating sum of homology traces.
pub fn reduced_lefschetz_number(k: &SimplicialComplex, sigma: &Perm) -> i64 {
    let mut total = -1i64;
    for (d, fs) in k.faces.iter().enumerate() {
        let mut trace = 0i64;
        for s in fs {
            if let Some((image, sign)) = SimplicialComplex::map_simplex(s, |v| sigma.apply(v as usize) as u32) {
                if &image == s {
                    trace += sign;
                }
            }
        }
        total += if d % 2 == 0 { trace } else { -trace };
    }
    total
}

/// Rank over `F` of the map on reduced `H_d` induced by a simplicial map.
pub fn induced_map_rank<F: Field>(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: &[u32],
    d: usize,
) -> Result<usize> {
    for fs in &source.faces {
        for s in fs {
            let mut image: Vec<u32> = s.iter().map(|&v| vertex_map[v as usize]).collect();
            image.sort_unstable();
            image.dedup();
            if !target.contains(&image) {
                return Err(Error::NotSimplicial(format!("{s:?} maps to non-simplex {image:?}")));
            }
        }
    }
    let source_basis = HomologyBasis::<F>::new(source, d);
    let mut span = EchelonBasis::<F>::new();
    for s in target.faces(d + 1) {
        span.insert(&target.boundary_vec::<F>(d + 1, s), Vec::new());
    }
    let boundaries = span.rank();
    let faces = source.faces(d);
    for z in source_basis.representatives() {
        let mut acc: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
        for (i, c) in z {
            if let Some((image, sign)) = SimplicialComplex::map_simplex(&faces[*i], |v| vertex_map[v as usize]) {
                let j = target.face_index(&image).expect("checked above");
                let term = if sign > 0 { c.clone() } else { -c.clone() };
                let e = acc.entry(j).or_insert_with(F::zero);
                *e = e.clone() + term;
            }
        }
        let image: SparseVec<F> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        span.insert(&image, Vec::new());
    }
    Ok(span.rank() - boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Group;
    use num_traits::{ToPrimitive, Zero};

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]])
    }

    #[test]
    fn circle() {
        let h = reduced_homology(&triangle_boundary());
        assert_eq!(h.nonzero_betti(), vec![(1, 1)]);
        assert!(h.is_torsion_free());
        assert_eq!(homology(&triangle_boundary()).betti(0), 1);
    }

    #[test]
    fn empty_complex_has_minus_one_class() {
        let h = reduced_homology(&SimplicialComplex::empty(0));
        assert_eq!(h.nonzero_betti(), vec![(-1, 1)]);
    }

    #[test]
    fn projective_plane_torsion() {
        // six-vertex triangulation of RP^2
        let facets = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let k = SimplicialComplex::from_facets(6, facets.iter().map(|f| f.to_vec()));
        let h = reduced_homology(&k);
        assert!(h.nonzero_betti().is_empty());
        assert_eq!(h.torsion(1), &[BigInt::from(2)]);
        assert!(k.verify_boundaries().is_ok());
    }

    #[test]
    fn antipodal_swap_on_two_points() {
        let k = SimplicialComplex::from_facets(2, vec![vec![0], vec![1]]);
        let swap = Perm::parse("(1 2)", Some(2)).unwrap();
        let m = induced_homology_action(&k, &swap, 0).unwrap();
        assert_eq!(m.trace(), Rational::from_integer((-1).into()));
        assert_eq!(reduced_lefschetz_number(&k, &swap), -1);
    }

    #[test]
    fn rotation_of_a_circle() {
        let k = triangle_boundary();
        let c3 = Group::cyclic(3).unwrap();
        let chi = character(&k, &c3, c3.elements(), 1).unwrap();
        assert!(chi.values.iter().all(|v| v.to_integer().to_i64() == Some(1)));
        let reflection = Perm::parse("(2 3)", Some(3)).unwrap();
        assert_eq!(induced_homology_action(&k, &reflection, 1).unwrap().trace(), Rational::from_integer((-1).into()));
    }

    #[test]
    fn facet_export() {
        let k = SimplicialComplex::from_facets(4, vec![vec![2, 0, 1], vec![3]]);
        assert_eq!(k.export_facets(), "3\n0 1 2\n");
        assert_eq!(k.euler_characteristic(), 2);
        assert!(!k.is_connected());
    }

    #[test]
    fn collapsing_map_kills_the_circle() {
        let k = triangle_boundary();
        let segment = SimplicialComplex::from_facets(2, vec![vec![0, 1]]);
        assert_eq!(induced_map_rank::<Rational>(&k, &segment, &[0, 1, 1], 1).unwrap(), 0);
        assert_eq!(induced_map_rank::<Rational>(&k, &k, &[1, 2, 0], 1).unwrap(), 1);
        assert!(Rational::zero().is_zero());
    }
}
