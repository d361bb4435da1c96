//! The loop wreath `A wr L(c)` viewed as `F[t, t⁻¹] + M_{ℕ×ℕ}(A)` with
//! `t = c`, `t⁻¹ = c*`, and the bridge path `cⁱe` labelled by `i`. Elements
//! carry a [`BandedOperator`] matrix part, so row- and column-finite matrices
//! such as `a = Σ (aᵢ)_{i,i}` are available too.

pub mod banded;
pub mod prop3;
pub mod radical;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use banded::{BandedOperator, EntryFn, LazyAlgebra};

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::cohn::{CohnElement, Monomial};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Path};
use crate::report::Report;
use crate::scalar::Field;
use crate::wreath::samples::loop_wreath;
use crate::wreath::{BridgeIndex, ExtendedGraph, WreathElement};

/// `Σ λₖ tᵏ + M` with `t⁰ = v` and `t⁻ᵏ = (c*)ᵏ`.
pub struct AffineElement<F: Field, A: LazyAlgebra<F>> {
    laurent: BTreeMap<i64, F>,
    matrix: BandedOperator<F, A>,
}

impl<F: Field, A: LazyAlgebra<F>> Clone for AffineElement<F, A> {
    fn clone(&self) -> Self {
        AffineElement {
            laurent: self.laurent.clone(),
            matrix: self.matrix.clone(),
        }
    }
}

impl<F: Field, A: LazyAlgebra<F>> fmt::Debug for AffineElement<F, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineElement")
            .field("laurent", &self.laurent)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl<F: Field, A: LazyAlgebra<F>> AffineElement<F, A> {
    pub fn laurent(&self) -> &BTreeMap<i64, F> {
        &self.laurent
    }

    pub fn matrix(&self) -> &BandedOperator<F, A> {
        &self.matrix
    }

    /// True iff the matrix part has finitely many nonzero entries.
    pub fn has_finite_matrix(&self) -> bool {
        self.matrix.is_finite()
    }

    fn add_laurent(&mut self, k: i64, c: F) {
        let sum = self.laurent.remove(&k).unwrap_or_else(F::zero) + c;
        if !sum.is_zero() {
            self.laurent.insert(k, sum);
        }
    }
}

/// The algebra handle: the coefficient algebra, the loop extended graph with
/// one bridge `e: v → 1`, and the named elements `t`, `tinv`, `v`.
pub struct Affinization<F: Field, A: LazyAlgebra<F>> {
    alg: Arc<A>,
    wreath: ExtendedGraph<F, A>,
    c: EdgeId,
    e: EdgeId,
}

impl<F: Field, A: LazyAlgebra<F> + Clone> Affinization<F, A> {
    /// Requires `1 ∈ ℰ`, so that the bridge corner `r(e)·A·r(e)` is all of `A`.
    pub fn new(alg: A) -> Result<Self> {
        let one = alg.one();
        let (name, _) = alg
            .idempotents()
            .into_iter()
            .find(|(_, e)| *e == one)
            .ok_or_else(|| Error::Hypothesis("the unit of A must be a designated idempotent".into()))?;
        let wreath = loop_wreath(alg.clone(), &name);
        let c = wreath.tilde().edge("c")?;
        let e = wreath.tilde().edge("e")?;
        Ok(Affinization {
            alg: Arc::new(alg),
            wreath,
            c,
            e,
        })
    }
}

impl<F: Field, A: LazyAlgebra<F>> Affinization<F, A> {
    pub fn algebra(&self) -> &Arc<A> {
        &self.alg
    }

    pub fn wreath(&self) -> &ExtendedGraph<F, A> {
        &self.wreath
    }

    pub fn zero(&self) -> AffineElement<F, A> {
        self.from_matrix(BandedOperator::zero(self.alg.clone()))
    }

    /// `tᵏ`, read as `(c*)^{-k}` for negative `k`.
    pub fn power(&self, k: i64) -> AffineElement<F, A> {
        let mut x = self.zero();
        x.laurent.insert(k, F::one());
        x
    }

    pub fn v(&self) -> AffineElement<F, A> {
        self.power(0)
    }

    pub fn t(&self) -> AffineElement<F, A> {
        self.power(1)
    }

    pub fn tinv(&self) -> AffineElement<F, A> {
        self.power(-1)
    }

    pub fn from_matrix(&self, m: BandedOperator<F, A>) -> AffineElement<F, A> {
        AffineElement {
            laurent: BTreeMap::new(),
            matrix: m,
        }
    }

    /// The matrix unit `(a)_{i,j}`.
    pub fn unit(&self, a: A::Elem, i: u64, j: u64) -> AffineElement<F, A> {
        self.from_matrix(BandedOperator::unit(self.alg.clone(), a, i, j))
    }

    /// `(1)_{i,j}`.
    pub fn one_unit(&self, i: u64, j: u64) -> AffineElement<F, A> {
        self.unit(self.alg.one(), i, j)
    }

    /// `Σᵢ (f(i))_{i,i}`.
    pub fn diagonal(&self, f: EntryFn<A::Elem>) -> AffineElement<F, A> {
        self.from_matrix(BandedOperator::diagonal(self.alg.clone(), 0, f))
    }

    /// `a = Σᵢ (aᵢ)_{i,i}` over the generators of `A`; missing generators
    /// are zero.
    pub fn generator_diagonal(&self) -> AffineElement<F, A> {
        let alg = self.alg.clone();
        self.diagonal(Arc::new(move |i| alg.generator(i as usize).unwrap_or_else(|| alg.zero())))
    }

    pub fn add(&self, x: &AffineElement<F, A>, y: &AffineElement<F, A>) -> AffineElement<F, A> {
        let mut out = AffineElement {
            laurent: x.laurent.clone(),
            matrix: x.matrix.add(&y.matrix),
        };
        for (&k, c) in &y.laurent {
            out.add_laurent(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F, x: &AffineElement<F, A>) -> AffineElement<F, A> {
        AffineElement {
            laurent: x
                .laurent
                .iter()
                .map(|(&k, a)| (k, c.clone() * a.clone()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
            matrix: x.matrix.scale(c),
        }
    }

    pub fn sub(&self, x: &AffineElement<F, A>, y: &AffineElement<F, A>) -> AffineElement<F, A> {
        self.add(x, &self.scale(&-F::one(), y))
    }

    /// `tᵃ·tᵇ = t^{a+b}`, except that for `a > 0 > b` the correction
    /// `-Σ_{k=1}^{min(a,-b)} (1)_{a-k,-b-k}` appears.
    fn laurent_mul(&self, a: i64, b: i64, c: &F, out: &mut AffineElement<F, A>) {
        out.add_laurent(a + b, c.clone());
        if a > 0 && b < 0 {
            let corr = (1..=a.min(-b)).map(|k| {
                (((a - k) as u64, (-b - k) as u64), self.alg.scale(&-c.clone(), &self.alg.one()))
            });
            out.matrix = out.matrix.add(&BandedOperator::finite(self.alg.clone(), corr));
        }
    }

    pub fn mul(&self, x: &AffineElement<F, A>, y: &AffineElement<F, A>) -> AffineElement<F, A> {
        let mut out = self.from_matrix(x.matrix.mul(&y.matrix));
        for (&a, c) in &x.laurent {
            for (&b, d) in &y.laurent {
                self.laurent_mul(a, b, &(c.clone() * d.clone()), &mut out);
            }
            out.matrix = out.matrix.add(&y.matrix.shift_rows(a).scale(c));
        }
        for (&b, d) in &y.laurent {
            out.matrix = out.matrix.add(&x.matrix.shift_cols(-b).scale(d));
        }
        out
    }

    /// Product of a nonempty sequence; the empty product is zero.
    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a AffineElement<F, A>>) -> AffineElement<F, A>
    where
        F: 'a,
        A: 'a,
    {
        let mut it = xs.into_iter();
        let Some(first) = it.next() else {
            return self.zero();
        };
        it.fold(first.clone(), |acc, y| self.mul(&acc, y))
    }

    pub fn pow(&self, x: &AffineElement<F, A>, n: u32) -> AffineElement<F, A> {
        (1..n).fold(x.clone(), |acc, _| self.mul(&acc, x))
    }

    /// Equal Laurent parts and equal matrix entries on the `n × n` window.
    pub fn eq_on_window(&self, x: &AffineElement<F, A>, y: &AffineElement<F, A>, n: u64) -> bool {
        x.laurent == y.laurent && x.matrix.eq_on_window(&y.matrix, n)
    }

    /// Exact equality for elements with finite matrix parts.
    pub fn eq_finite(&self, x: &AffineElement<F, A>, y: &AffineElement<F, A>) -> Option<bool> {
        (x.matrix.is_finite() && y.matrix.is_finite())
            .then(|| x.laurent == y.laurent && x.matrix.finite_part() == y.matrix.finite_part())
    }

    /// The bridge path `cⁱe`.
    pub fn index(&self, i: u64) -> BridgeIndex {
        let mut edges = vec![self.c; i as usize];
        edges.push(self.e);
        BridgeIndex::Path(Path::from_edges(self.wreath.tilde(), &edges).expect("cⁱe is a path"))
    }

    /// Inverse of [`Affinization::index`]; `None` for `x₀`.
    pub fn index_of(&self, x: &BridgeIndex) -> Option<u64> {
        let p = x.path()?;
        let (last, init) = p.edges().split_last()?;
        (*last == self.e && init.iter().all(|&c| c == self.c)).then_some(init.len() as u64)
    }

    fn laurent_monomial(&self, k: i64) -> Monomial {
        let g = self.wreath.base();
        let c = g.edge("c").expect("loop edge");
        let p = match k {
            0 => Path::vertex(g.source(c)),
            k => Path::from_edges(g, &vec![c; k.unsigned_abs() as usize]).expect("loop path"),
        };
        if k >= 0 {
            Monomial::path(p)
        } else {
            Monomial::ghost_path(p)
        }
    }

    /// The same element in the general wreath; requires a finite matrix part.
    pub fn to_wreath(&self, x: &AffineElement<F, A>) -> Result<WreathElement<F, A::Elem>> {
        if !x.matrix.is_finite() {
            return Err(Error::Invalid("matrix part has infinitely many entries".into()));
        }
        let mut cohn = CohnElement::zero();
        for (&k, c) in &x.laurent {
            cohn.add_term(self.laurent_monomial(k), c.clone());
        }
        let mut out = self.wreath.from_cohn(&cohn);
        for (&(i, j), a) in x.matrix.finite_part() {
            let u = self.wreath.matrix_unit(a.clone(), self.index(i), self.index(j))?;
            out = self.wreath.add(&out, &u);
        }
        Ok(out)
    }

    /// Reads a general wreath element in the `ℕ`-indexed picture; entries in
    /// the `x₀` row or column have no place there.
    pub fn from_wreath(&self, x: &WreathElement<F, A::Elem>) -> Result<AffineElement<F, A>> {
        let mut out = self.zero();
        for (m, c) in x.leavitt().terms().iter() {
            let k = if m.q().is_vertex() {
                m.p().len() as i64
            } else if m.p().is_vertex() {
                -(m.q().len() as i64)
            } else {
                return Err(Error::Invalid("Leavitt part is not in normal form".into()));
            };
            out.add_laurent(k, c.clone());
        }
        let mut entries = Vec::new();
        for ((x, y), a) in x.matrix() {
            match (self.index_of(x), self.index_of(y)) {
                (Some(i), Some(j)) => entries.push(((i, j), a.clone())),
                _ => return Err(Error::Invalid("entry in the x0 row or column".into())),
            }
        }
        out.matrix = BandedOperator::finite(self.alg.clone(), entries);
        Ok(out)
    }

    /// `2·t - tinv + [x @ 0, 1] + diag(0)`; lazily stored diagonals are
    /// listed by offset only.
    pub fn format(&self, x: &AffineElement<F, A>) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (&k, c) in x.laurent.iter().rev() {
            let name = match k {
                0 => "v".to_string(),
                1 => "t".to_string(),
                -1 => "tinv".to_string(),
                k if k > 0 => format!("t^{k}"),
                k => format!("tinv^{}", -k),
            };
            terms.push(if c.is_one() {
                name
            } else if *c == -F::one() {
                format!("-{name}")
            } else {
                format!("{c}·{name}")
            });
        }
        for (&(i, j), a) in x.matrix.finite_part() {
            let text = self.alg.format(a);
            terms.push(match text.strip_prefix('-') {
                Some(_) => format!("-[{} @ {i}, {j}]", self.alg.format(&self.alg.neg(a))),
                None => format!("[{text} @ {i}, {j}]"),
            });
        }
        for d in x.matrix.offsets() {
            terms.push(format!("diag({d})"));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        out
    }
}

/// The six shift relations, each checked on random `(a)_{i,j}` with
/// `i, j < window` both in the general wreath and in the banded arithmetic.
pub fn relations_check<F: Field, A: LazyAlgebra<F>>(aff: &Affinization<F, A>, window: u64, seed: u64) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let alg = aff.algebra();
    let eg = aff.wreath();
    let zero = aff.zero();
    let (t, tinv, v) = (aff.t(), aff.tinv(), aff.v());
    let agree = |lhs: (&AffineElement<F, A>, &AffineElement<F, A>), rhs: &AffineElement<F, A>| -> bool {
        let banded = aff.eq_finite(&aff.mul(lhs.0, lhs.1), rhs) == Some(true);
        let general = match (aff.to_wreath(lhs.0), aff.to_wreath(lhs.1), aff.to_wreath(rhs)) {
            (Ok(x), Ok(y), Ok(z)) => eg.mul(&x, &y) == z,
            _ => false,
        };
        banded && general
    };
    let mut report = Report::new();
    let e00 = aff.one_unit(0, 0);
    report.push("tinv·t = v", agree((&tinv, &t), &v), "");
    report.push("t·tinv = v - (1)_{0,0}", agree((&t, &tinv), &aff.sub(&v, &e00)), "");
    let mut ok = [true; 4];
    for i in 0..window {
        for j in 0..window {
            let a = alg.sample(&mut rng);
            let u = |i, j| aff.unit(a.clone(), i, j);
            ok[0] &= agree((&t, &u(i, j)), &u(i + 1, j));
            ok[1] &= i > 0 || agree((&tinv, &u(0, j)), &zero);
            ok[2] &= agree((&u(i, j), &tinv), &u(i, j + 1));
            ok[3] &= j > 0 || agree((&u(i, 0), &t), &zero);
        }
    }
    let detail = format!("i, j < {window}");
    report.push("t·a_{i,j} = a_{i+1,j}", ok[0], detail.clone());
    report.push("tinv·a_{0,j} = 0", ok[1], detail.clone());
    report.push("a_{i,j}·tinv = a_{i,j+1}", ok[2], detail.clone());
    report.push("a_{i,0}·t = 0", ok[3], detail);
    report
}

#[cfg(test)]
mod tests;
