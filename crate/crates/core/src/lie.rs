//! The multilinear part of the free Lie algebra as a representation of the
//! symmetric group, the sign character of a G-set, and the comparison with
//! the top homology of the space of measured trees.
//!
//! Lie elements are expanded into the multilinear associative span, whose
//! basis is the `n!` words using each letter once.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::guards::{ensure, Guards};
use crate::gset::GSet;
use crate::homology::{character, reduced_homology};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::perm::{Group, Perm};
use crate::scalar::Field;
use crate::tree::build_tree_space;
use crate::Rational;

/// A word in distinct letters `0..n`.
pub type Word = Vec<u8>;

/// A right-normed bracket `[x_{s(0)}, [x_{s(1)}, [ ..., [x_{s(n-2)}, x_{n-1}]]]]`
/// with its expansion into words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasisElement {
    /// Order of the first `n - 1` letters.
    pub letters: Vec<u8>,
    /// Integer combination of words; `2^{n-1}` terms with coefficients `±1`.
    pub expansion: Vec<(Word, i64)>,
}

/// Expansion of the right-normed bracket of `letters` followed by `last`.
pub fn right_normed_expansion(letters: &[u8], last: u8) -> Vec<(Word, i64)> {
    let Some((&head, rest)) = letters.split_first() else {
        return vec![(vec![last], 1)];
    };
    let inner = right_normed_expansion(rest, last);
    let mut out = Vec::with_capacity(2 * inner.len());
    for (w, c) in &inner {
        let mut left = vec![head];
        left.extend_from_slice(w);
        out.push((left, *c));
    }
    for (w, c) in inner {
        let mut right = w;
        right.push(head);
        out.push((right, -c));
    }
    out
}

/// Expansion of the left-normed bracket `[[...[x_{w0}, x_{w1}], ...], x_{wk}]`.
pub fn left_normed_expansion(word: &[u8]) -> Vec<(Word, i64)> {
    let mut acc: Vec<(Word, i64)> = vec![(vec![word[0]], 1)];
    for &letter in &word[1..] {
        let mut next = Vec::with_capacity(2 * acc.len());
        for (w, c) in &acc {
            let mut a = w.clone();
            a.push(letter);
            next.push((a, *c));
            let mut b = vec![letter];
            b.extend_from_slice(w);
            next.push((b, -c));
        }
        acc = next;
    }
    acc
}

fn all_words(letters: &[u8]) -> Vec<Word> {
    if letters.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in letters.iter().enumerate() {
        let mut rest = letters.to_vec();
        rest.remove(i);
        for mut w in all_words(&rest) {
            w.insert(0, x);
            out.push(w);
        }
    }
    out
}

/// Indexing of the `n!` multilinear words.
struct WordIndex {
    index: HashMap<Word, usize>,
}

impl WordIndex {
    fn new(n: usize) -> Self {
        let letters: Vec<u8> = (0..n as u8).collect();
        let index = all_words(&letters).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
        WordIndex { index }
    }

    fn vector<F: Field>(&self, expansion: &[(Word, i64)]) -> SparseVec<F> {
        let mut v: Vec<(usize, F)> = expansion
            .iter()
            .map(|(w, c)| (self.index[w], F::from_i64(*c)))
            .collect();
        v.sort_by_key(|e| e.0);
        let mut merged: SparseVec<F> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.clone() + c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        merged
    }
}

fn relabel(expansion: &[(Word, i64)], sigma: &Perm) -> Vec<(Word, i64)> {
    expansion
        .iter()
        .map(|(w, c)| (w.iter().map(|&x| sigma.apply(x as usize) as u8).collect(), *c))
        .collect()
}

/// The `(n-1)!` right-normed brackets ending in the last letter. Their
/// linear independence is checked by a rank computation.
pub fn lie_basis(n: usize) -> Result<Vec<LieBasisElement>> {
    ensure("lie_degree", Guards::default().lie_degree, n)?;
    if n < 2 {
        return Err(Error::InvalidMap("the Lie representation needs at least two letters".into()));
    }
    let first: Vec<u8> = (0..(n - 1) as u8).collect();
    let basis: Vec<LieBasisElement> = all_words(&first)
        .into_iter()
        .map(|letters| {
            let expansion = right_normed_expansion(&letters, (n - 1) as u8);
            LieBasisElement { letters, expansion }
        })
        .collect();
    let words = WordIndex::new(n);
    let vectors: Vec<SparseVec<Rational>> = basis.iter().map(|b| words.vector(&b.expansion)).collect();
    let r = crate::linalg::rank(&vectors);
    if r != basis.len() {
        return Err(Error::InvalidMap(format!("bracket basis has rank {r}, expected {}", basis.len())));
    }
    Ok(basis)
}

/// Character of the symmetric group on the Lie representation, keyed by
/// cycle type (descending part sizes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCharacter {
    pub n: usize,
    pub by_cycle_type: BTreeMap<Vec<usize>, i64>,
}

impl LieCharacter {
    pub fn value(&self, sigma: &Perm) -> i64 {
        self.by_cycle_type[&sorted_cycle_type(sigma)]
    }
}

fn sorted_cycle_type(sigma: &Perm) -> Vec<usize> {
    let mut t = sigma.cycle_type();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// Trace of `sigma` on the Lie representation: each permuted basis element
/// is re-expressed in the basis by exact elimination.
pub fn lie_trace_over<F: Field>(basis: &[LieBasisElement], n: usize, sigma: &Perm) -> Result<F> {
    let words = WordIndex::new(n);
    let mut echelon = EchelonBasis::<F>::new();
    for (j, b) in basis.iter().enumerate() {
        echelon.insert(&words.vector(&b.expansion), vec![(j, F::one())]);
    }
    let mut trace = F::zero();
    for (j, b) in basis.iter().enumerate() {
        let image = words.vector::<F>(&relabel(&b.expansion, sigma));
        let (residue, coords) = echelon.reduce(&image);
        if !residue.is_empty() {
            return Err(Error::InvalidMap("permuted bracket left the Lie span".into()));
        }
        if let Some((_, c)) = coords.iter().find(|e| e.0 == j) {
            trace = trace + c.clone();
        }
    }
    Ok(trace)
}

/// Character of the Lie representation of degree `n`, one value per cycle type.
pub fn lie_character(n: usize) -> Result<LieCharacter> {
    let basis = lie_basis(n)?;
    let classes = cycle_type_representatives(n)?;
    let values = classes
        .par_iter()
        .map(|(t, sigma)| {
            let tr: Rational = lie_trace_over(&basis, n, sigma)?;
            let v = integral(&tr)?;
            Ok((t.clone(), v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LieCharacter {
        n,
        by_cycle_type: values.into_iter().collect(),
    })
}

fn integral(r: &Rational) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::InvalidMap(format!("non-integral trace {r}")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidMap(format!("trace {r} out of range")))
}

/// One permutation of each cycle type of `n` points, cycles on consecutive points.
pub fn cycle_type_representatives(n: usize) -> Result<Vec<(Vec<usize>, Perm)>> {
    fn parts(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in (1..=max.min(n)).rev() {
            for mut rest in parts(n - k, k) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
        out
    }
    parts(n, n)
        .into_iter()
        .map(|t| {
            let mut cycles = Vec::new();
            let mut start = 0;
            for &k in &t {
                cycles.push((start..start + k).collect::<Vec<usize>>());
                start += k;
            }
            Ok((t, Perm::from_cycles(&cycles, n)?))
        })
        .collect()
}

/// The Lie character composed with the action map, one value per group element.
pub fn restricted_lie_character(a: &GSet) -> Result<Vec<i64>> {
    let chi = lie_character(a.size())?;
    Ok((0..a.group().order()).map(|g| chi.value(a.alpha(g))).collect())
}

/// Parity of each action permutation, one value per group element.
pub fn sign_character(a: &GSet) -> Vec<i64> {
    (0..a.group().order()).map(|g| a.sign(g)).collect()
}

/// One conjugacy class in the comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassComparison {
    pub representative: String,
    pub class_size: usize,
    pub homology_trace: Rational,
    pub sign: i64,
    pub lie: i64,
}

impl ClassComparison {
    pub fn agrees(&self) -> bool {
        self.homology_trace == Rational::from_integer((self.sign * self.lie).into())
    }
}

/// Top homology of the space of measured trees against sign ⊗ Lie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeModuleReport {
    pub degree: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub concentrated: bool,
    pub torsion_free: bool,
    pub classes: Vec<ClassComparison>,
}

impl TreeModuleReport {
    pub fn holds(&self) -> bool {
        self.concentrated
            && self.torsion_free
            && self.rank == self.expected_rank
            && self.classes.iter().all(ClassComparison::agrees)
    }
}

/// Compares the character of the group on `H_{n-3}` of the tree space of
/// `a` (rational coefficients) with the sign character times the
/// restricted Lie character, class by class.
pub fn verify_tree_homology_module(a: &GSet) -> Result<TreeModuleReport> {
    verify_tree_homology_module_within(a, Guards::default().lie_homology_points)
}

pub fn verify_tree_homology_module_within(a: &GSet, max_points: usize) -> Result<TreeModuleReport> {
    let n = a.size();
    ensure("lie_homology_points", max_points, n)?;
    if n < 3 {
        return Err(Error::InvalidMap("the tree space needs at least three leaves".into()));
    }
    let degree = n - 3;
    let space = build_tree_space(a)?;
    let h = reduced_homology(&space.complex);
    let group: &Group = a.group();
    let chars = character(&space.complex, group, &space.action, degree)?;
    let sign = sign_character(a);
    let lie = restricted_lie_character(a)?;
    let classes = group
        .conjugacy_classes()
        .iter()
        .map(|c| ClassComparison {
            representative: group.element(c[0]).to_string(),
            class_size: c.len(),
            homology_trace: chars.values[c[0]].clone(),
            sign: sign[c[0]],
            lie: lie[c[0]],
        })
        .collect();
    Ok(TreeModuleReport {
        degree,
        rank: h.betti(degree as isize),
        expected_rank: (1..n).product(),
        concentrated: h.concentrated_in() == Some(degree as isize),
        torsion_free: h.is_torsion_free(),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::parse_orbit_sum;

    /// Trace of `sigma` composed with the Dynkin projection `θ/n` on the
    /// whole word space, where `θ` is left-normed bracketing.
    fn dynkin_trace(n: usize, sigma: &Perm) -> Rational {
        let letters: Vec<u8> = (0..n as u8).collect();
        let mut total = 0i64;
        for w in all_words(&letters) {
            let moved: Word = w.iter().map(|&x| sigma.apply(x as usize) as u8).collect();
            total += left_normed_expansion(&moved)
                .iter()
                .filter(|(v, _)| *v == w)
                .map(|(_, c)| c)
                .sum::<i64>();
        }
        Rational::new(total.into(), (n as i64).into())
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(lie_basis(2).unwrap()[0].expansion, vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
        let sizes: Vec<usize> = (2..=5).map(|n| lie_basis(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 6, 24]);
        assert!(lie_basis(4).unwrap().iter().all(|b| b.expansion.len() == 8));
        assert!(lie_basis(8).is_err());
    }

    #[test]
    fn left_normed_with_fixed_last_letter_is_not_a_basis() {
        let n = 4;
        let words = WordIndex::new(n);
        let vectors: Vec<SparseVec<Rational>> = all_words(&[0, 1, 2])
            .into_iter()
            .map(|mut w| {
                w.push(3);
                words.vector(&left_normed_expansion(&w))
            })
            .collect();
        assert_eq!(crate::linalg::rank(&vectors), 2);
    }

    #[test]
    fn small_characters() {
        let three = lie_character(3).unwrap();
        assert_eq!(three.by_cycle_type[&vec![1, 1, 1]], 2);
        assert_eq!(three.by_cycle_type[&vec![2, 1]], 0);
        assert_eq!(three.by_cycle_type[&vec![3]], -1);
        let four = lie_character(4).unwrap();
        assert_eq!(four.by_cycle_type[&vec![2, 2]], -2);
        assert_eq!(four.by_cycle_type[&vec![1, 1, 1, 1]], 6);
    }

    #[test]
    fn characters_match_the_dynkin_projection() {
        for n in 2..=5 {
            let chi = lie_character(n).unwrap();
            for (t, sigma) in cycle_type_representatives(n).unwrap() {
                assert_eq!(Rational::from_integer(chi.by_cycle_type[&t].into()), dynkin_trace(n, &sigma), "n={n} {t:?}");
            }
        }
    }

    #[test]
    fn sign_characters() {
        let g = Group::parse("(1 2 3 4)", None).unwrap();
        let a = parse_orbit_sum(&g, "G/e + G/(1 3)(2 4)").unwrap();
        let generator = (0..g.order()).find(|&x| g.element_order(x) == 4).unwrap();
        assert_eq!(sign_character(&a)[generator], 1);
        let c2 = Group::parse("(1 2)", None).unwrap();
        assert!(sign_character(&parse_orbit_sum(&c2, "G/e + G/e").unwrap()).iter().all(|&s| s == 1));
        assert!(sign_character(&GSet::trivial(&c2, 3)).iter().all(|&s| s == 1));
    }

    #[test]
    fn tree_homology_small() {
        for n in 3..=4 {
            let a = GSet::natural(&Group::symmetric(n).unwrap());
            let r = verify_tree_homology_module(&a).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}
