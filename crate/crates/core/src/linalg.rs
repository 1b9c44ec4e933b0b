//! Exact row reduction over `Q`.
//!
//! [`Rref`] keeps a reduced row echelon basis of a subspace of `Q^ncols` and grows
//! it one vector at a time. Rows are sparse; vectors being reduced are dense.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseRow = Vec<(usize, BigRational)>;

/// A subspace of `Q^ncols` in reduced row echelon form.
///
/// Every row has leading coefficient 1 at its pivot and is zero in every other
/// row's pivot column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rref {
    ncols: usize,
    /// pivot column -> row
    rows: BTreeMap<usize, SparseRow>,
}

fn get(row: &SparseRow, col: usize) -> Option<&BigRational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// `row -= factor * other`, both sparse and sorted.
fn axpy(row: &SparseRow, factor: &BigRational, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (row.iter().peekable(), other.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ca, _)), Some((cb, _))) if ca < cb => out.push(a.next().unwrap().clone()),
            (Some((ca, _)), Some((cb, _))) if ca > cb => {
                let (c, v) = b.next().unwrap();
                out.push((*c, -(factor * v)));
            }
            (Some(_), Some(_)) => {
                let (c, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let v = x - factor * y;
                if !v.is_zero() {
                    out.push((*c, v));
                }
            }
            (Some(_), None) => out.push(a.next().unwrap().clone()),
            (None, Some(_)) => {
                let (c, v) = b.next().unwrap();
                out.push((*c, -(factor * v)));
            }
            (None, None) => break,
        }
    }
    out
}

pub fn to_sparse(v: &[BigRational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(row: &SparseRow, ncols: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); ncols];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    /// Row-reduces the given vectors.
    pub fn from_rows<I>(ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigRational>>,
    {
        let mut r = Rref::new(ncols);
        for v in rows {
            r.insert(v);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.values()
    }

    /// Reduces `v` to its normal form: the unique representative of `v + span`
    /// that vanishes on every pivot column.
    pub fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        debug_assert_eq!(v.len(), self.ncols);
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in row {
                v[*c] -= &f * x;
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &v[p];
        let new: SparseRow = v
            .iter()
            .enumerate()
            .skip(p)
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x * &inv))
            .collect();
        for row in self.rows.values_mut() {
            if let Some(f) = get(row, p).cloned() {
                *row = axpy(row, &f, &new);
            }
        }
        self.rows.insert(p, new);
        true
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Rref) -> bool {
        self.ncols == other.ncols
            && self
                .rows
                .values()
                .all(|r| other.contains(&to_dense(r, self.ncols)))
    }

    pub fn dense_rows(&self) -> Vec<Vec<BigRational>> {
        self.rows.values().map(|r| to_dense(r, self.ncols)).collect()
    }
}

/// Rank of a dense matrix.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    Rref::from_rows(ncols, rows.iter().cloned()).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn small_rank() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]), 2);
        assert_eq!(rank(&[v(&[0, 0]), v(&[0, 0])]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn reduce_normal_form() {
        let r = Rref::from_rows(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(r.pivots(), vec![0, 1]);
        assert_eq!(r.non_pivots(), vec![2]);
        // (0,0,1) is not in the span; its normal form is itself
        assert_eq!(r.reduce(v(&[0, 0, 1])), v(&[0, 0, 1]));
        assert!(r.contains(&v(&[1, 2, 1])));
        assert!(!r.contains(&v(&[1, 0, 0])));
    }

    fn vec_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..7)
    }

    proptest! {
        #[test]
        fn rref_is_reduced_and_spans(rows in vec_strategy()) {
            let dense: Vec<_> = rows.iter().map(|r| v(r)).collect();
            let e = Rref::from_rows(5, dense.iter().cloned());
            let pivots = e.pivots();
            for row in e.dense_rows() {
                let lead = row.iter().position(|x| !x.is_zero()).unwrap();
                prop_assert!(row[lead].is_one());
                for &p in &pivots {
                    if p != lead {
                        prop_assert!(row[p].is_zero());
                    }
                }
            }
            for d in &dense {
                prop_assert!(e.contains(d));
            }
            // rank is independent of insertion order
            let rev = Rref::from_rows(5, dense.iter().rev().cloned());
            prop_assert_eq!(rev.dim(), e.dim());
            prop_assert!(rev.is_subspace_of(&e) && e.is_subspace_of(&rev));
        }
    }
}
