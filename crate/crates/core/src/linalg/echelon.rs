use std::collections::{BTreeMap, HashMap};

use crate::scalar::Field;

/// Sorted `(index, value)` pairs without explicit zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// `y + a * x`.
pub fn axpy<F: Field>(y: &SparseVec<F>, a: &F, x: &SparseVec<F>) -> SparseVec<F> {
    let mut acc: BTreeMap<usize, F> = y.iter().cloned().collect();
    add_into(&mut acc, a, x);
    acc.into_iter().collect()
}

fn add_into<F: Field>(acc: &mut BTreeMap<usize, F>, a: &F, x: &[(usize, F)]) {
    for (i, v) in x {
        let term = a.clone() * v.clone();
        match acc.get_mut(i) {
            Some(e) => {
                *e = e.clone() + term;
                if e.is_zero() {
                    acc.remove(i);
                }
            }
            None => {
                if !term.is_zero() {
                    acc.insert(*i, term);
                }
            }
        }
    }
}

/// Incremental row-echelon basis keyed by leading (largest) index.
///
/// Every stored vector carries a tag: its expression as a combination of
/// the generators that were inserted. Reducing a vector returns both the
/// residue and the combination of tags that was subtracted, which is how
/// coordinates and kernel vectors are read off.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    pivots: HashMap<usize, usize>,
    vectors: Vec<SparseVec<F>>,
    tags: Vec<SparseVec<F>>,
}

impl<F: Field> Default for EchelonBasis<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> EchelonBasis<F> {
    pub fn new() -> Self {
        EchelonBasis {
            pivots: HashMap::new(),
            vectors: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Returns `(residue, coords)` with `v = residue + sum(coords-weighted generators)`.
    /// The residue is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut r: BTreeMap<usize, F> = v.iter().cloned().collect();
        let mut coords: BTreeMap<usize, F> = BTreeMap::new();
        while let Some((&lead, c)) = r.iter().next_back() {
            let Some(&k) = self.pivots.get(&lead) else {
                break;
            };
            let c = c.clone();
            add_into(&mut r, &(-c.clone()), &self.vectors[k]);
            add_into(&mut coords, &c, &self.tags[k]);
        }
        (r.into_iter().collect(), coords.into_iter().collect())
    }

    /// Inserts `v`, a combination `tag` of generators. Returns whether it was
    /// independent of the current span.
    pub fn insert(&mut self, v: &SparseVec<F>, tag: SparseVec<F>) -> bool {
        let (r, coords) = self.reduce(v);
        let Some((lead, c)) = r.last().cloned() else {
            return false;
        };
        let inv = F::one() / c;
        let scaled: SparseVec<F> = r.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        let mut t: BTreeMap<usize, F> = tag.into_iter().collect();
        add_into(&mut t, &(-F::one()), &coords);
        let t: SparseVec<F> = t.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        self.pivots.insert(lead, self.vectors.len());
        self.vectors.push(scaled);
        self.tags.push(t);
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Basis of the kernel of the matrix whose columns are given.
pub fn kernel_basis<F: Field>(columns: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut basis = EchelonBasis::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let tag = vec![(j, F::one())];
        let (r, coords) = basis.reduce(col);
        if r.is_empty() {
            kernel.push(axpy(&tag, &(-F::one()), &coords));
        } else {
            basis.insert(col, tag);
        }
    }
    kernel
}

/// Rank of the span of the given vectors.
pub fn rank<F: Field>(vectors: &[SparseVec<F>]) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v, Vec::new());
    }
    basis.rank()
}

/// Row-major dense matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Matrix whose `j`-th column is the `j`-th sparse vector.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, cur + a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn column(&self, j: usize) -> SparseVec<F> {
        (0..self.rows)
            .filter(|&i| !self.get(i, j).is_zero())
            .map(|i| (i, self.get(i, j).clone()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        let cols: Vec<SparseVec<F>> = (0..self.cols).map(|j| self.column(j)).collect();
        rank(&cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type F7 = Fp<7>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn coordinates_recover_combination() {
        let mut b = EchelonBasis::<BigRational>::new();
        let g0 = vec![(0, q(1)), (1, q(1))];
        let g1 = vec![(1, q(1)), (2, q(2))];
        assert!(b.insert(&g0, vec![(0, q(1))]));
        assert!(b.insert(&g1, vec![(1, q(1))]));
        let w = axpy(&axpy(&Vec::new(), &q(3), &g0), &q(-2), &g1);
        let (r, coords) = b.reduce(&w);
        assert!(r.is_empty());
        assert_eq!(coords, vec![(0, q(3)), (1, q(-2))]);
        assert!(!b.insert(&w, vec![]));
    }

    #[test]
    fn kernel_of_triangle_boundary() {
        let cols: Vec<SparseVec<F7>> = vec![
            vec![(0, F7::new(-1)), (1, F7::new(1))],
            vec![(0, F7::new(-1)), (2, F7::new(1))],
            vec![(1, F7::new(-1)), (2, F7::new(1))],
        ];
        let k = kernel_basis(&cols);
        assert_eq!(k.len(), 1);
        let image = k[0].iter().fold(Vec::new(), |acc, (j, c)| axpy(&acc, c, &cols[*j]));
        assert!(image.is_empty());
    }

    #[test]
    fn dense_product_and_trace() {
        let mut m = DenseMatrix::<BigRational>::zeros(2, 2);
        m.set(0, 1, q(1));
        m.set(1, 0, q(1));
        let sq = m.mul(&m);
        assert_eq!(sq, DenseMatrix::identity(2));
        assert_eq!(m.trace(), q(0));
        assert_eq!(m.rank(), 2);
    }
}
