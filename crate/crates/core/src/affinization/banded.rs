//! Row- and column-finite `ℕ×ℕ` matrices given by finitely many lazily
//! evaluated diagonals plus a finite correction.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::coeff::CoefficientAlgebra;
use crate::scalar::Field;

/// Entry generator of a diagonal: `i ↦` the entry at `(i, i + d)`. Only
/// queried where `i + d ≥ 0`.
pub type EntryFn<E> = Arc<dyn Fn(u64) -> E + Send + Sync>;

/// Coefficient algebras whose elements can fill lazily evaluated diagonals.
pub trait LazyAlgebra<F: Field>: CoefficientAlgebra<F, Elem: Send + Sync + 'static> + Send + Sync + 'static {}

impl<F: Field, A> LazyAlgebra<F> for A where A: CoefficientAlgebra<F, Elem: Send + Sync + 'static> + Send + Sync + 'static {}

pub struct BandedOperator<F: Field, A: LazyAlgebra<F>> {
    alg: Arc<A>,
    diagonals: BTreeMap<i64, EntryFn<A::Elem>>,
    finite: BTreeMap<(u64, u64), A::Elem>,
    _f: PhantomData<fn() -> F>,
}

impl<F: Field, A: LazyAlgebra<F>> Clone for BandedOperator<F, A> {
    fn clone(&self) -> Self {
        BandedOperator {
            alg: self.alg.clone(),
            diagonals: self.diagonals.clone(),
            finite: self.finite.clone(),
            _f: PhantomData,
        }
    }
}

impl<F: Field, A: LazyAlgebra<F>> fmt::Debug for BandedOperator<F, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BandedOperator")
            .field("offsets", &self.offsets())
            .field("finite", &self.finite)
            .finish()
    }
}

fn index(i: u64, d: i64) -> Option<u64> {
    let j = i as i64 + d;
    (j >= 0).then_some(j as u64)
}

impl<F: Field, A: LazyAlgebra<F>> BandedOperator<F, A> {
    pub fn zero(alg: Arc<A>) -> Self {
        BandedOperator {
            alg,
            diagonals: BTreeMap::new(),
            finite: BTreeMap::new(),
            _f: PhantomData,
        }
    }

    pub fn finite(alg: Arc<A>, entries: impl IntoIterator<Item = ((u64, u64), A::Elem)>) -> Self {
        let mut out = Self::zero(alg);
        for ((i, j), e) in entries {
            out.add_finite(i, j, &e);
        }
        out
    }

    pub fn unit(alg: Arc<A>, a: A::Elem, i: u64, j: u64) -> Self {
        Self::finite(alg, [((i, j), a)])
    }

    /// The diagonal at offset `d` with entry `f(i)` at `(i, i + d)`.
    pub fn diagonal(alg: Arc<A>, d: i64, f: EntryFn<A::Elem>) -> Self {
        let mut out = Self::zero(alg);
        out.diagonals.insert(d, f);
        out
    }

    /// The identity matrix `Σ (1)_{i,i}`.
    pub fn identity(alg: Arc<A>) -> Self {
        let one = alg.one();
        Self::diagonal(alg, 0, Arc::new(move |_| one.clone()))
    }

    pub fn algebra(&self) -> &Arc<A> {
        &self.alg
    }

    /// Offsets of the lazily stored diagonals, ascending.
    pub fn offsets(&self) -> Vec<i64> {
        self.diagonals.keys().copied().collect()
    }

    /// Largest `|d|` over the stored diagonals, or `None` for a finite matrix.
    pub fn band_width(&self) -> Option<u64> {
        self.diagonals.keys().map(|d| d.unsigned_abs()).max()
    }

    pub fn is_finite(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn finite_part(&self) -> &BTreeMap<(u64, u64), A::Elem> {
        &self.finite
    }

    /// Largest row or column index of the finite part.
    pub fn finite_extent(&self) -> Option<u64> {
        self.finite.keys().map(|&(i, j)| i.max(j)).max()
    }

    pub fn entry(&self, i: u64, j: u64) -> A::Elem {
        let d = j as i64 - i as i64;
        let mut e = self.diagonals.get(&d).map_or_else(|| self.alg.zero(), |f| f(i));
        if let Some(c) = self.finite.get(&(i, j)) {
            e = self.alg.add(&e, c);
        }
        e
    }

    /// The top-left `n × n` block.
    pub fn window(&self, n: u64) -> Vec<Vec<A::Elem>> {
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    fn add_finite(&mut self, i: u64, j: u64, e: &A::Elem) {
        if self.alg.is_zero(e) {
            return;
        }
        let alg = self.alg.clone();
        match self.finite.get_mut(&(i, j)) {
            Some(c) => {
                *c = alg.add(c, e);
                if alg.is_zero(c) {
                    self.finite.remove(&(i, j));
                }
            }
            None => {
                self.finite.insert((i, j), e.clone());
            }
        }
    }

    fn add_diagonal(&mut self, d: i64, f: EntryFn<A::Elem>) {
        let g = match self.diagonals.remove(&d) {
            Some(h) => {
                let alg = self.alg.clone();
                Arc::new(move |i| alg.add(&h(i), &f(i))) as EntryFn<A::Elem>
            }
            None => f,
        };
        self.diagonals.insert(d, g);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, f) in &other.diagonals {
            out.add_diagonal(d, f.clone());
        }
        for (&(i, j), e) in &other.finite {
            out.add_finite(i, j, e);
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.alg.clone());
        if c.is_zero() {
            return out;
        }
        for (&d, f) in &self.diagonals {
            let (alg, f, c) = (self.alg.clone(), f.clone(), c.clone());
            out.diagonals.insert(d, Arc::new(move |i| alg.scale(&c, &f(i))));
        }
        for (&(i, j), e) in &self.finite {
            out.add_finite(i, j, &self.alg.scale(c, e));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The product: offsets add, diagonal generators compose pointwise and
    /// every product involving the finite part is evaluated eagerly.
    pub fn mul(&self, other: &Self) -> Self {
        let alg = &self.alg;
        let mut out = Self::zero(alg.clone());
        for (&d1, f) in &self.diagonals {
            for (&d2, g) in &other.diagonals {
                let (alg, f, g) = (alg.clone(), f.clone(), g.clone());
                out.add_diagonal(
                    d1 + d2,
                    Arc::new(move |i| match index(i, d1) {
                        Some(j) => alg.mul(&f(i), &g(j)),
                        None => alg.zero(),
                    }),
                );
            }
        }
        for (&(j, k), y) in &other.finite {
            for (&d, f) in &self.diagonals {
                if let Some(i) = index(j, -d) {
                    out.add_finite(i, k, &alg.mul(&f(i), y));
                }
            }
        }
        for (&(i, j), x) in &self.finite {
            for (&d, g) in &other.diagonals {
                if let Some(k) = index(j, d) {
                    out.add_finite(i, k, &alg.mul(x, &g(j)));
                }
            }
            for (&(j2, k), y) in other.finite.range((j, 0)..=(j, u64::MAX)) {
                debug_assert_eq!(j, j2);
                out.add_finite(i, k, &alg.mul(x, y));
            }
        }
        out
    }

    /// Moves row `i` to row `i + k`; rows pushed above 0 are dropped and
    /// vacated rows are zero. `t^k·M` for `k ≥ 0`, `(t⁻¹)^{-k}·M` otherwise.
    pub fn shift_rows(&self, k: i64) -> Self {
        let mut out = Self::zero(self.alg.clone());
        for (&d, f) in &self.diagonals {
            let (f, zero) = (f.clone(), self.alg.zero());
            let g: EntryFn<A::Elem> = Arc::new(move |i| match index(i, -k) {
                Some(i0) => f(i0),
                None => zero.clone(),
            });
            out.diagonals.insert(d - k, g);
        }
        for (&(i, j), e) in &self.finite {
            if let Some(i2) = index(i, k) {
                out.add_finite(i2, j, e);
            }
        }
        out
    }

    /// Moves column `j` to column `j + k`; columns pushed left of 0 are
    /// dropped. `M·(t⁻¹)^k` for `k ≥ 0`, `M·t^{-k}` otherwise.
    pub fn shift_cols(&self, k: i64) -> Self {
        let mut out = Self::zero(self.alg.clone());
        for (&d, f) in &self.diagonals {
            let (f, zero) = (f.clone(), self.alg.zero());
            let g: EntryFn<A::Elem> = Arc::new(move |i| match index(i, d) {
                Some(_) => f(i),
                None => zero.clone(),
            });
            out.diagonals.insert(d + k, g);
        }
        for (&(i, j), e) in &self.finite {
            if let Some(j2) = index(j, k) {
                out.add_finite(i, j2, e);
            }
        }
        out
    }

    /// Entrywise equality on the top-left `n × n` block.
    pub fn eq_on_window(&self, other: &Self, n: u64) -> bool {
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == other.entry(i, j)))
    }
}

/// Truncated product of two `n × n` blocks, the brute-force reference for
/// [`BandedOperator::mul`].
pub fn window_mul<F: Field, A: CoefficientAlgebra<F>>(alg: &A, x: &[Vec<A::Elem>], y: &[Vec<A::Elem>]) -> Vec<Vec<A::Elem>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| (0..n).fold(alg.zero(), |acc, j| alg.add(&acc, &alg.mul(&x[i][j], &y[j][k]))))
                .collect()
        })
        .collect()
}
