//! Exact Gaussian elimination over a [`Field`].
//!
//! Vectors are sparse maps from an arbitrary ordered key to a coefficient, so
//! callers can hand in coordinates of algebra elements without fixing a
//! column numbering first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Incrementally maintained row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone, F: Field> {
    /// Rows keyed by pivot; each row has coefficient 1 at its pivot and 0 at
    /// every other pivot.
    rows: BTreeMap<K, BTreeMap<K, F>>,
}

impl<K: Ord + Clone, F: Field> Default for EchelonBasis<K, F> {
    fn default() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, F: Field> EchelonBasis<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BTreeMap<K, F>) -> BTreeMap<K, F> {
        let mut v: BTreeMap<K, F> = v.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
        for (pivot, row) in &self.rows {
            let Some(c) = v.get(pivot).cloned() else { continue };
            axpy(&mut v, row, &-c);
        }
        v
    }

    pub fn contains(&self, v: &BTreeMap<K, F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &BTreeMap<K, F>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        for c in r.values_mut() {
            *c = c.clone() * inv.clone();
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &r, &-c);
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}

fn axpy<K: Ord + Clone, F: Field>(v: &mut BTreeMap<K, F>, row: &BTreeMap<K, F>, s: &F) {
    for (k, c) in row {
        let t = c.clone() * s.clone();
        let e = v.entry(k.clone()).or_insert_with(F::zero);
        *e = e.clone() + t;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<'a, K: Ord + Clone + 'a, F: Field>(vectors: impl IntoIterator<Item = &'a BTreeMap<K, F>>) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Dense square matrix over a field.
pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(F::zero(), |acc, l| acc + a[i][l].clone() * b[l][j].clone()))
                .collect()
        })
        .collect()
}

pub fn mat_add<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() + y.clone()).collect())
        .collect()
}

/// Solves `a · x = b` for square invertible `a` (b may have several columns).
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::Invalid("solve: dimension mismatch".into()));
    }
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(r, s)| r.iter().chain(s.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::Invalid("solve: singular matrix".into()))?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inv()?;
        for x in aug[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, p) in aug[r].iter_mut().zip(pivot_row) {
                    *x = x.clone() - p * f.clone();
                }
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn v(entries: &[(u32, i64)]) -> BTreeMap<u32, Q> {
        entries.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn rank_of_dependent_family() {
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 1)]);
        let c = v(&[(0, 1), (1, 4), (2, 2)]);
        assert_eq!(rank([&a, &b, &c]), 2);
        assert_eq!(rank([&a, &b]), 2);
        assert_eq!(rank(std::iter::empty::<&BTreeMap<u32, Q>>()), 0);
    }

    #[test]
    fn membership() {
        let mut basis = EchelonBasis::new();
        basis.insert(&v(&[(0, 1), (1, 1)]));
        assert!(basis.contains(&v(&[(0, 3), (1, 3)])));
        assert!(!basis.contains(&v(&[(0, 1)])));
        assert!(basis.contains(&BTreeMap::new()));
    }

    #[test]
    fn solve_two_by_two() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let b = vec![vec![q(3)], vec![q(2)]];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![vec![q(1)], vec![q(1)]]);
        assert_eq!(mat_mul(&a, &x), b);
        let sing = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve(&sing, &b).is_err());
    }
}
