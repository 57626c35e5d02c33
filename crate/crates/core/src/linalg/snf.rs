//! Smith normal form.
//!
//! The sparse driver first eliminates unit pivots (the bulk of any boundary
//! matrix) straight on the column lists, choosing the shortest column from a
//! lazy heap and, within it, the unit entry whose row is least populated.
//! Whatever survives is small and is finished by a dense Euclidean reduction.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeSet};

use num_bigint::BigInt;

use super::SparseMatrix;
use crate::error::Overflow;
use crate::scalar::{checked_add, checked_mul, checked_sub, EuclideanRing};

/// Nonzero invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub rank: usize,
    pub factors: Vec<T>,
}

impl<T: EuclideanRing> SmithForm<T> {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithDecomposition<T> {
    pub u: Vec<Vec<T>>,
    pub d: Vec<Vec<T>>,
    pub v: Vec<Vec<T>>,
}

/// Invariant factors over `T`, reporting overflow instead of wrapping.
pub fn smith_normal_form<T: EuclideanRing>(m: &SparseMatrix<T>) -> Result<SmithForm<T>, Overflow> {
    let mut cols: Vec<Vec<(usize, T)>> = m.columns().to_vec();
    let units = eliminate_unit_pivots(m.rows(), &mut cols)?;

    let rest: Vec<&Vec<(usize, T)>> = cols.iter().filter(|c| !c.is_empty()).collect();
    let rows: BTreeSet<usize> = rest.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).collect();
    let row_pos: std::collections::HashMap<usize, usize> =
        rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut dense = vec![vec![T::zero(); rest.len()]; rows.len()];
    for (j, col) in rest.iter().enumerate() {
        for (r, v) in col.iter() {
            dense[row_pos[r]][j] = v.clone();
        }
    }
    let tail = dense_snf(&mut dense, None, None)?;

    let mut factors = vec![T::one(); units];
    factors.extend(tail);
    Ok(SmithForm {
        rank: factors.len(),
        factors,
    })
}

/// Runs over `T` first and redoes the computation with big integers if a
/// machine-width intermediate overflowed.
pub fn smith_normal_form_exact<T: EuclideanRing>(m: &SparseMatrix<T>) -> SmithForm<BigInt> {
    match smith_normal_form(m) {
        Ok(f) => SmithForm {
            rank: f.rank,
            factors: f
                .factors
                .iter()
                .map(|d| d.to_bigint().expect("integer type"))
                .collect(),
        },
        Err(Overflow) => {
            let wide = m.map(|v| v.to_bigint().expect("integer type"));
            smith_normal_form(&wide).expect("big integers do not overflow")
        }
    }
}

/// Dense Smith form with both unimodular transforms.
pub fn smith_with_transforms<T: EuclideanRing>(
    m: &[Vec<T>],
) -> Result<SmithDecomposition<T>, Overflow> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    dense_snf(&mut d, Some(&mut u), Some(&mut v))?;
    Ok(SmithDecomposition { u, d, v })
}

fn identity<T: EuclideanRing>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// `y - a * x` on sorted sparse columns.
fn sub_scaled<T: EuclideanRing>(
    y: &[(usize, T)],
    a: &T,
    x: &[(usize, T)],
) -> Result<Vec<(usize, T)>, Overflow> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = checked_mul(a, &x[j].1)?;
            out.push((x[j].0, checked_sub(&T::zero(), &v)?));
            j += 1;
        } else {
            let v = checked_sub(&y[i].1, &checked_mul(a, &x[j].1)?)?;
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Removes unit pivots with their rows and columns; returns how many.
fn eliminate_unit_pivots<T: EuclideanRing>(
    rows: usize,
    cols: &mut [Vec<(usize, T)>],
) -> Result<usize, Overflow> {
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for (r, _) in col {
            row_cols[*r].push(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = cols
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| Reverse((c.len(), j)))
        .collect();
    let mut eliminated = 0;

    while let Some(Reverse((len, c))) = heap.pop() {
        if !alive[c] || cols[c].len() != len || len == 0 {
            continue;
        }
        let pivot = cols[c]
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(r, _)| row_cols[*r].len())
            .cloned();
        let Some((r, u)) = pivot else {
            continue;
        };
        let mut others: Vec<usize> = std::mem::take(&mut row_cols[r]);
        others.sort_unstable();
        others.dedup();
        let pivot_col = cols[c].clone();
        for j in others {
            if j == c || !alive[j] {
                continue;
            }
            let Ok(k) = cols[j].binary_search_by_key(&r, |(row, _)| *row) else {
                continue;
            };
            let factor = checked_mul(&cols[j][k].1, &u)?;
            let updated = sub_scaled(&cols[j], &factor, &pivot_col)?;
            for (row, _) in &updated {
                if cols[j].binary_search_by_key(row, |(x, _)| *x).is_err() {
                    row_cols[*row].push(j);
                }
            }
            cols[j] = updated;
            if !cols[j].is_empty() {
                heap.push(Reverse((cols[j].len(), j)));
            }
        }
        alive[c] = false;
        cols[c].clear();
        eliminated += 1;
    }
    Ok(eliminated)
}

struct Dense<'a, T> {
    a: &'a mut Vec<Vec<T>>,
    u: Option<&'a mut Vec<Vec<T>>>,
    v: Option<&'a mut Vec<Vec<T>>>,
}

impl<T: EuclideanRing> Dense<'_, T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = self.u.as_deref_mut() {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_deref_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        fn apply<T: EuclideanRing>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Result<(), Overflow> {
            for k in 0..m[i].len() {
                if !m[j][k].is_zero() {
                    m[i][k] = checked_sub(&m[i][k], &checked_mul(q, &m[j][k])?)?;
                }
            }
            Ok(())
        }
        apply(self.a, i, j, q)?;
        if let Some(u) = self.u.as_deref_mut() {
            apply(u, i, j, q)?;
        }
        Ok(())
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        fn apply<T: EuclideanRing>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Result<(), Overflow> {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    row[i] = checked_sub(&row[i], &checked_mul(q, &row[j])?)?;
                }
            }
            Ok(())
        }
        apply(self.a, i, j, q)?;
        if let Some(v) = self.v.as_deref_mut() {
            apply(v, i, j, q)?;
        }
        Ok(())
    }

    /// row_i += row_j
    fn row_add(&mut self, i: usize, j: usize) -> Result<(), Overflow> {
        fn apply<T: EuclideanRing>(m: &mut [Vec<T>], i: usize, j: usize) -> Result<(), Overflow> {
            for k in 0..m[i].len() {
                m[i][k] = checked_add(&m[i][k], &m[j][k])?;
            }
            Ok(())
        }
        apply(self.a, i, j)?;
        if let Some(u) = self.u.as_deref_mut() {
            apply(u, i, j)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        if let Some(u) = self.u.as_deref_mut() {
            for x in u[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// In-place dense Smith form; returns the nonzero diagonal.
fn dense_snf<T: EuclideanRing>(
    a: &mut Vec<Vec<T>>,
    u: Option<&mut Vec<Vec<T>>>,
    v: Option<&mut Vec<Vec<T>>>,
) -> Result<Vec<T>, Overflow> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut w = Dense { a, u, v };
    let mut diag = Vec::new();

    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.a[i][j];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut moved = false;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_sub(i, t, &q)?;
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    moved = true;
                }
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_sub(j, t, &q)?;
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    moved = true;
                }
            }
            if moved
                || (t + 1..m).any(|i| !w.a[i][t].is_zero())
                || (t + 1..n).any(|j| !w.a[t][j].is_zero())
            {
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_add(t, i)?,
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        diag.push(w.a[t][t].clone());
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn factors(dense: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseMatrix::from_dense(dense)).unwrap().factors
    }

    #[test]
    fn coprime_diagonal() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_has_no_factors() {
        assert!(factors(&[vec![0, 0], vec![0, 0]]).is_empty());
    }

    #[test]
    fn triangle_boundary() {
        // edges 01, 02, 12 against vertices 0, 1, 2
        let d1 = [vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        assert_eq!(factors(&d1), vec![1, 1]);
    }

    #[test]
    fn torsion_survives() {
        let m = [vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(factors(&m), vec![2, 6, 12]);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let m = SparseMatrix::from_dense(&[vec![big, big - 1], vec![big - 1, big]]);
        let f = smith_normal_form_exact(&m);
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(big - 1) * BigInt::from(big - 1);
        assert_eq!(f.factors, vec![BigInt::one(), det]);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_with_transforms(&m).unwrap();
        let prod = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
            (0..x.len())
                .map(|i| (0..y[0].len()).map(|j| (0..y.len()).map(|k| x[i][k] * y[k][j]).sum()).collect())
                .collect()
        };
        assert_eq!(prod(&prod(&s.u, &m), &s.v), s.d);
        assert_eq!(s.d[0][0], 2);
        assert_eq!(s.d[1][1], 6);
        assert_eq!(s.d[2][2], 12);
    }
}
