//! Coefficient algebras: the algebra `A` whose elements fill the matrix
//! ideal of a wreath product.
//!
//! An instance is a unital associative algebra over a [`Field`] together with
//! a named family `ℰ` of pairwise orthogonal idempotents and a (possibly
//! finite) generator sequence `a₀, a₁, …`.

pub mod poly;
pub mod ratfun;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::Rng;

use crate::scalar::Field;
use poly::Poly;
use ratfun::RationalFunction;

pub trait CoefficientAlgebra<F: Field> {
    type Elem: Clone + Eq + Hash + Debug;
    /// Index set of a linear basis, used by rank computations.
    type Basis: Clone + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// The designated pairwise orthogonal idempotents `ℰ`, by name.
    fn idempotents(&self) -> Vec<(String, Self::Elem)>;

    fn idempotent(&self, name: &str) -> Option<Self::Elem> {
        self.idempotents().into_iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    /// `i`-th algebra generator, `None` past the end of a finite list.
    fn generator(&self, i: usize) -> Option<Self::Elem>;

    /// Coordinates with respect to the basis `Self::Basis`.
    fn coordinates(&self, x: &Self::Elem) -> BTreeMap<Self::Basis, F>;

    fn sample(&self, rng: &mut StdRng) -> Self::Elem;

    fn format(&self, x: &Self::Elem) -> String;
}

/// Exhaustively checks that `ℰ` consists of pairwise orthogonal idempotents.
/// Returns the names of offending pairs.
pub fn idempotent_violations<F: Field, A: CoefficientAlgebra<F>>(alg: &A) -> Vec<(String, String)> {
    let idem = alg.idempotents();
    let mut bad = Vec::new();
    for (n1, e1) in &idem {
        for (n2, e2) in &idem {
            let p = alg.mul(e1, e2);
            let ok = if n1 == n2 { p == *e1 } else { alg.is_zero(&p) };
            if !ok {
                bad.push((n1.clone(), n2.clone()));
            }
        }
    }
    bad
}

/// The ground field as a one-dimensional algebra; `ℰ = {1}`.
#[derive(Clone, Debug, Default)]
pub struct ScalarAlgebra;

impl<F: Field> CoefficientAlgebra<F> for ScalarAlgebra {
    type Elem = F;
    type Basis = ();

    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn is_zero(&self, x: &F) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &F, y: &F) -> F {
        x.clone() + y.clone()
    }
    fn neg(&self, x: &F) -> F {
        -x.clone()
    }
    fn mul(&self, x: &F, y: &F) -> F {
        x.clone() * y.clone()
    }
    fn scale(&self, c: &F, x: &F) -> F {
        c.clone() * x.clone()
    }
    fn idempotents(&self) -> Vec<(String, F)> {
        vec![("1".into(), F::one())]
    }
    fn generator(&self, _i: usize) -> Option<F> {
        None
    }
    fn coordinates(&self, x: &F) -> BTreeMap<(), F> {
        let mut m = BTreeMap::new();
        if !x.is_zero() {
            m.insert((), x.clone());
        }
        m
    }
    fn sample(&self, rng: &mut StdRng) -> F {
        F::sample(rng)
    }
    fn format(&self, x: &F) -> String {
        x.to_string()
    }
}

/// `F^n` with componentwise product; the coordinate vectors are the
/// idempotents, named by the caller.
#[derive(Clone, Debug)]
pub struct DiagonalAlgebra {
    names: Vec<String>,
}

impl DiagonalAlgebra {
    pub fn new(names: Vec<String>) -> Self {
        DiagonalAlgebra { names }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit<F: Field>(&self, i: usize) -> Vec<F> {
        (0..self.names.len()).map(|j| if i == j { F::one() } else { F::zero() }).collect()
    }
}

impl<F: Field> CoefficientAlgebra<F> for DiagonalAlgebra {
    type Elem = Vec<F>;
    type Basis = usize;

    fn zero(&self) -> Vec<F> {
        vec![F::zero(); self.names.len()]
    }
    fn one(&self) -> Vec<F> {
        vec![F::one(); self.names.len()]
    }
    fn is_zero(&self, x: &Vec<F>) -> bool {
        x.iter().all(Field::is_zero)
    }
    fn add(&self, x: &Vec<F>, y: &Vec<F>) -> Vec<F> {
        x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
    }
    fn neg(&self, x: &Vec<F>) -> Vec<F> {
        x.iter().map(|a| -a.clone()).collect()
    }
    fn mul(&self, x: &Vec<F>, y: &Vec<F>) -> Vec<F> {
        x.iter().zip(y).map(|(a, b)| a.clone() * b.clone()).collect()
    }
    fn scale(&self, c: &F, x: &Vec<F>) -> Vec<F> {
        x.iter().map(|a| c.clone() * a.clone()).collect()
    }
    fn idempotents(&self) -> Vec<(String, Vec<F>)> {
        self.names.iter().enumerate().map(|(i, n)| (n.clone(), self.unit(i))).collect()
    }
    fn generator(&self, i: usize) -> Option<Vec<F>> {
        (i < self.names.len()).then(|| self.unit(i))
    }
    fn coordinates(&self, x: &Vec<F>) -> BTreeMap<usize, F> {
        x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    }
    fn sample(&self, rng: &mut StdRng) -> Vec<F> {
        (0..self.names.len()).map(|_| F::sample(rng)).collect()
    }
    fn format(&self, x: &Vec<F>) -> String {
        let terms: crate::lincomb::LinComb<usize, F> = x.iter().cloned().enumerate().collect();
        terms.format_with(|&i| self.names[i].clone(), |&i| i)
    }
}

/// The polynomial algebra `F[x]`, generated by `x`, with `ℰ = {1}`.
#[derive(Clone, Debug, Default)]
pub struct PolyAlgebra;

impl<F: Field> CoefficientAlgebra<F> for PolyAlgebra {
    type Elem = Poly<F>;
    type Basis = usize;

    fn zero(&self) -> Poly<F> {
        Poly::zero()
    }
    fn one(&self) -> Poly<F> {
        Poly::one()
    }
    fn is_zero(&self, x: &Poly<F>) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Poly<F>, y: &Poly<F>) -> Poly<F> {
        x + y
    }
    fn neg(&self, x: &Poly<F>) -> Poly<F> {
        -x
    }
    fn mul(&self, x: &Poly<F>, y: &Poly<F>) -> Poly<F> {
        x * y
    }
    fn scale(&self, c: &F, x: &Poly<F>) -> Poly<F> {
        x.scale(c)
    }
    fn idempotents(&self) -> Vec<(String, Poly<F>)> {
        vec![("1".into(), Poly::one())]
    }
    fn generator(&self, i: usize) -> Option<Poly<F>> {
        (i == 0).then(Poly::var)
    }
    fn coordinates(&self, x: &Poly<F>) -> BTreeMap<usize, F> {
        x.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    }
    fn sample(&self, rng: &mut StdRng) -> Poly<F> {
        let d = rng.gen_range(0..=2);
        Poly::new((0..=d).map(|_| F::sample(rng)).collect())
    }
    fn format(&self, x: &Poly<F>) -> String {
        x.format_var("x")
    }
}

/// An algebra that may lack a unit. [`Unitization`] turns it into a
/// [`CoefficientAlgebra`].
pub trait RawAlgebra<F: Field> {
    type Elem: Clone + Eq + Hash + Debug;
    type Basis: Clone + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem;
    fn generator(&self, i: usize) -> Option<Self::Elem>;
    fn coordinates(&self, x: &Self::Elem) -> BTreeMap<Self::Basis, F>;
    fn sample(&self, rng: &mut StdRng) -> Self::Elem;
    fn format(&self, x: &Self::Elem) -> String;
}

/// `F·1 + R`: pairs `(λ, r)` with `(λ, r)(μ, s) = (λμ, λs + μr + rs)`.
/// `ℰ = {1}`; the generators are those of `R`.
#[derive(Clone, Debug)]
pub struct Unitization<R> {
    inner: R,
}

impl<R> Unitization<R> {
    pub fn new(inner: R) -> Self {
        Unitization { inner }
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }
}

impl<F: Field, R: RawAlgebra<F>> CoefficientAlgebra<F> for Unitization<R> {
    type Elem = (F, R::Elem);
    type Basis = Option<R::Basis>;

    fn zero(&self) -> Self::Elem {
        (F::zero(), self.inner.zero())
    }
    fn one(&self) -> Self::Elem {
        (F::one(), self.inner.zero())
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.0.is_zero() && self.inner.is_zero(&x.1)
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (x.0.clone() + y.0.clone(), self.inner.add(&x.1, &y.1))
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        (-x.0.clone(), self.inner.neg(&x.1))
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let r = self.inner.add(
            &self.inner.add(&self.inner.scale(&x.0, &y.1), &self.inner.scale(&y.0, &x.1)),
            &self.inner.mul(&x.1, &y.1),
        );
        (x.0.clone() * y.0.clone(), r)
    }
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        (c.clone() * x.0.clone(), self.inner.scale(c, &x.1))
    }
    fn idempotents(&self) -> Vec<(String, Self::Elem)> {
        vec![("1".into(), CoefficientAlgebra::one(self))]
    }
    fn generator(&self, i: usize) -> Option<Self::Elem> {
        self.inner.generator(i).map(|g| (F::zero(), g))
    }
    fn coordinates(&self, x: &Self::Elem) -> BTreeMap<Self::Basis, F> {
        let mut m: BTreeMap<Self::Basis, F> = self.inner.coordinates(&x.1).into_iter().map(|(k, c)| (Some(k), c)).collect();
        if !x.0.is_zero() {
            m.insert(None, x.0.clone());
        }
        m
    }
    fn sample(&self, rng: &mut StdRng) -> Self::Elem {
        (F::sample(rng), self.inner.sample(rng))
    }
    fn format(&self, x: &Self::Elem) -> String {
        match (x.0.is_zero(), self.inner.is_zero(&x.1)) {
            (true, true) => "0".into(),
            (false, true) => x.0.to_string(),
            (true, false) => self.inner.format(&x.1),
            (false, false) => format!("{} + {}", x.0, self.inner.format(&x.1)),
        }
    }
}

/// The non-unital radical algebra `A₀ = { f/g : f(0) = 0, g(0) = 1 }` of
/// rational functions.
///
/// Generators are `t/g_i` where `g_0 = 1, g_1 = 1 + t, g_2 = 1 - t, …`
/// enumerates the polynomials with `g(0) = 1` and coefficients in
/// `{0, ±1, ±2}` (see [`a0_denominator`]). Coordinates are Taylor coefficients
/// at 0 up to `taylor_order`; this map is injective on `A₀` and exact on any
/// finite family whose common-denominator numerators have degree below the
/// order.
#[derive(Clone, Debug)]
pub struct A0Algebra {
    pub taylor_order: usize,
}

impl Default for A0Algebra {
    fn default() -> Self {
        A0Algebra { taylor_order: 48 }
    }
}

/// `i`-th polynomial with constant term 1: the base-5 digits of `i` pick the
/// coefficients of `t, t², …` from `[0, 1, -1, 2, -2]`.
pub fn a0_denominator<F: Field>(mut i: usize) -> Poly<F> {
    const DIGITS: [i64; 5] = [0, 1, -1, 2, -2];
    let mut cs = vec![1i64];
    while i > 0 {
        cs.push(DIGITS[i % 5]);
        i /= 5;
    }
    Poly::from_i64s(&cs)
}

impl<F: Field> RawAlgebra<F> for A0Algebra {
    type Elem = RationalFunction<F>;
    type Basis = usize;

    fn zero(&self) -> Self::Elem {
        <RationalFunction<F> as Field>::zero()
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.clone() + y.clone()
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        -x.clone()
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.clone() * y.clone()
    }
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        RationalFunction::constant(c.clone()) * x.clone()
    }
    fn generator(&self, i: usize) -> Option<Self::Elem> {
        Some(RationalFunction::new(Poly::var(), a0_denominator(i)).expect("g(0) = 1"))
    }
    fn coordinates(&self, x: &Self::Elem) -> BTreeMap<usize, F> {
        x.taylor(self.taylor_order)
            .expect("A0 elements are defined at 0")
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
    fn sample(&self, rng: &mut StdRng) -> Self::Elem {
        RationalFunction::sample_a0(rng)
    }
    fn format(&self, x: &Self::Elem) -> String {
        x.to_string()
    }
}

/// `F·1 + A₀`, the unital algebra used by the affinization example.
pub type LocalRationalAlgebra = Unitization<A0Algebra>;
