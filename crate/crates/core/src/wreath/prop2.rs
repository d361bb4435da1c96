//! `L(Γ) ≅ L(Γ(W)) wr L(Γ/W)` for a hereditary saturated `W`.
//!
//! The coefficient algebra is `A = L(Γ(W))` with `ℰ` the vertices of `W`;
//! the bridges are the edges `E(V∖W, W)`, keeping their names. A monomial
//! `p₁p₂*` of `L(Γ)` is split at the first entry of each path into `W`:
//!
//! ```text
//! both paths outside W        ↦ p₁p₂*                 (reduced in Γ/W)
//! p₁ = a₁e₁b₁, p₂ = a₂e₂b₂    ↦ (b₁b₂*)_{a₁e₁, a₂e₂}
//! p₁ = a₁e₁b₁, p₂ inside W    ↦ (b₁p₂*)_{a₁e₁, 0}
//! p₁ inside W, p₂ = a₂e₂b₂    ↦ (p₁b₂*)_{0, a₂e₂}
//! both inside W               ↦ (p₁p₂*)_{0, 0}
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::{BridgeIndex, BridgeSpec, ExtendedGraph, WreathElement};
use crate::cohn::{self, CohnElement, Monomial};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexSubset};
use crate::leavitt::{Leavitt, LeavittElement};
use crate::linalg::EchelonBasis;
use crate::report::Report;
use crate::scalar::Field;

/// The pieces of the decomposition `a′ + Σ p a_{pq} q* + Σ p b_p + Σ c_q q* + d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Parts<F: Field> {
    /// Over `Γ/W`, not yet reduced there.
    pub a_prime: CohnElement<F>,
    pub a: BTreeMap<(BridgeIndex, BridgeIndex), LeavittElement<F>>,
    pub b: BTreeMap<BridgeIndex, LeavittElement<F>>,
    pub c: BTreeMap<BridgeIndex, LeavittElement<F>>,
    pub d: LeavittElement<F>,
}

/// `Γ`, `W` and the wreath product `L(Γ(W)) wr L(Γ/W)`.
#[derive(Clone, Debug)]
pub struct Prop2Setup<F: Field> {
    pub leavitt: Leavitt,
    pub w: VertexSubset,
    pub wreath: ExtendedGraph<F, Leavitt>,
}

/// Re-expresses `p` in `dst` by vertex and edge names.
fn translate(src: &Graph, p: &Path, dst: &Graph) -> Path {
    if p.is_vertex() {
        return Path::vertex(dst.vertex(src.vertex_name(p.source())).expect("vertex kept"));
    }
    let edges: Vec<_> = p
        .edges()
        .iter()
        .map(|&e| dst.edge(src.edge_name(e)).expect("edge kept"))
        .collect();
    Path::from_edges(dst, &edges).expect("still a path")
}

fn acc<K: Ord, F: Field>(m: &mut BTreeMap<K, LeavittElement<F>>, k: K, v: LeavittElement<F>) {
    let e = m.entry(k).or_insert_with(LeavittElement::zero);
    *e = e.plus(&v);
}

enum Piece {
    Outside(Path),
    /// `(a·e, b)` with `a·e` entering `W` at its last edge.
    Entering(Path, Path),
    Inside(Path),
}

impl<F: Field> Prop2Setup<F> {
    pub fn new(g: &Graph, w: &VertexSubset) -> Result<Self> {
        if !g.is_hereditary_saturated(w)? {
            return Err(Error::NotHereditarySaturated);
        }
        let bridges: Vec<BridgeSpec> = g
            .edges()
            .filter(|&e| !w.contains(&g.source(e)) && w.contains(&g.range(e)))
            .map(|e| BridgeSpec::new(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))))
            .collect();
        let inner = Leavitt::new(g.restrict(w)?);
        let wreath = ExtendedGraph::new(g.quotient(w)?, inner, &bridges)?;
        Ok(Prop2Setup {
            leavitt: Leavitt::new(Arc::new(g.clone())),
            w: w.clone(),
            wreath,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.leavitt.graph()
    }

    fn inner(&self) -> &Leavitt {
        self.wreath.algebra()
    }

    fn split(&self, p: &Path) -> Piece {
        let g = self.graph();
        if self.w.contains(&p.source()) {
            assert!(p.vertices(g).all(|v| self.w.contains(&v)), "W is hereditary");
            return Piece::Inside(p.clone());
        }
        match p.edges().iter().position(|&e| self.w.contains(&g.range(e))) {
            None => Piece::Outside(p.clone()),
            Some(i) => {
                let rest = p.suffix(g, i + 1);
                assert!(rest.vertices(g).all(|v| self.w.contains(&v)), "W is hereditary");
                Piece::Entering(p.prefix(g, i + 1), rest)
            }
        }
    }

    fn index(&self, entering: &Path) -> BridgeIndex {
        BridgeIndex::Path(translate(self.graph(), entering, self.wreath.tilde()))
    }

    fn inner_monomial(&self, p: &Path, q: &Path, c: &F) -> LeavittElement<F> {
        let ig = self.inner().graph();
        let m = Monomial::new(translate(self.graph(), p, ig), translate(self.graph(), q, ig)).expect("common range");
        self.inner().from_monomial::<F>(m).scale(c)
    }

    /// Splits a normal-form element of `L(Γ)` into its five kinds of terms.
    pub fn decompose(&self, x: &LeavittElement<F>) -> Prop2Parts<F> {
        let mut parts = Prop2Parts {
            a_prime: CohnElement::zero(),
            a: BTreeMap::new(),
            b: BTreeMap::new(),
            c: BTreeMap::new(),
            d: LeavittElement::zero(),
        };
        for (m, c) in x.terms() {
            match (self.split(m.p()), self.split(m.q())) {
                (Piece::Outside(p), Piece::Outside(q)) => {
                    let base = self.wreath.base();
                    let mq = Monomial::new(translate(self.graph(), &p, base), translate(self.graph(), &q, base))
                        .expect("common range");
                    parts.a_prime.add_term(mq, c.clone());
                }
                (Piece::Entering(p, b1), Piece::Entering(q, b2)) => {
                    acc(&mut parts.a, (self.index(&p), self.index(&q)), self.inner_monomial(&b1, &b2, c))
                }
                (Piece::Entering(p, b1), Piece::Inside(q)) => acc(&mut parts.b, self.index(&p), self.inner_monomial(&b1, &q, c)),
                (Piece::Inside(p), Piece::Entering(q, b2)) => acc(&mut parts.c, self.index(&q), self.inner_monomial(&p, &b2, c)),
                (Piece::Inside(p), Piece::Inside(q)) => parts.d = parts.d.plus(&self.inner_monomial(&p, &q, c)),
                _ => unreachable!("r(p₁) = r(p₂) lies either in W or outside it"),
            }
        }
        parts.a.retain(|_, v| !v.is_zero());
        parts.b.retain(|_, v| !v.is_zero());
        parts.c.retain(|_, v| !v.is_zero());
        parts
    }

    /// The isomorphism `L(Γ) → L(Γ(W)) wr L(Γ/W)`.
    pub fn phi(&self, x: &LeavittElement<F>) -> WreathElement<F, LeavittElement<F>> {
        let eg = &self.wreath;
        let parts = self.decompose(x);
        let mut out = eg.from_cohn(&parts.a_prime);
        let mut put = |e: LeavittElement<F>, p: BridgeIndex, q: BridgeIndex| {
            let unit = eg.matrix_unit(e, p, q).expect("entries sit in their corners");
            out = eg.add(&out, &unit);
        };
        for ((p, q), e) in parts.a {
            put(e, p, q);
        }
        for (p, e) in parts.b {
            put(e, p, BridgeIndex::Zero);
        }
        for (q, e) in parts.c {
            put(e, BridgeIndex::Zero, q);
        }
        put(parts.d, BridgeIndex::Zero, BridgeIndex::Zero);
        out
    }

    /// A preimage of `(b₁b₂*)_{x,y}` under `phi`: `(x·b₁)(y·b₂)*` in `L(Γ)`.
    fn entry_preimage(&self, m: &Monomial, x: &BridgeIndex, y: &BridgeIndex) -> Option<LeavittElement<F>> {
        let ig = self.inner().graph();
        let g = self.graph();
        let lift = |x: &BridgeIndex, b: &Path| -> Option<Path> {
            let b = translate(ig, b, g);
            match x {
                BridgeIndex::Zero => Some(b),
                BridgeIndex::Path(p) => translate(self.wreath.tilde(), p, g).concat(&b),
            }
        };
        let p = lift(x, m.p())?;
        let q = lift(y, m.q())?;
        Some(self.leavitt.from_monomial(Monomial::new(p, q).ok()?))
    }

    /// Runs linearity, multiplicativity, injectivity and surjectivity checks.
    pub fn verify(&self, maxlen: usize, samples: usize, seed: u64) -> Report {
        let mut report = Report::new();
        let eg = &self.wreath;
        let l = &self.leavitt;
        let mut rng = StdRng::seed_from_u64(seed);

        let mut linear = None;
        let mut mult = None;
        for _ in 0..samples {
            let x: LeavittElement<F> = l.random_element(&mut rng, 3, maxlen.div_ceil(2));
            let y: LeavittElement<F> = l.random_element(&mut rng, 3, maxlen.div_ceil(2));
            let (fx, fy) = (self.phi(&x), self.phi(&y));
            let alpha = F::sample(&mut rng);
            let lhs = self.phi(&x.plus(&y.scale(&alpha)));
            if linear.is_none() && lhs != eg.add(&fx, &eg.scale(&alpha, &fy)) {
                linear = Some(format!("x = {}, y = {}", l.format(&x), l.format(&y)));
            }
            if mult.is_none() && self.phi(&l.mul(&x, &y)) != eg.mul(&fx, &fy) {
                mult = Some(format!("x = {}, y = {}", l.format(&x), l.format(&y)));
            }
        }
        report.push("linearity", linear.is_none(), linear.unwrap_or_else(|| format!("{samples} pairs")));
        report.push("multiplicativity", mult.is_none(), mult.unwrap_or_else(|| format!("{samples} pairs")));

        let basis = l.basis_monomials(maxlen);
        let mut ech = EchelonBasis::new();
        for m in &basis {
            ech.insert(&eg.coordinates(&self.phi(&l.from_monomial(m.clone()))));
        }
        report.push(
            "injectivity",
            ech.rank() == basis.len(),
            format!("rank {} of {} monomials", ech.rank(), basis.len()),
        );

        let (hit, total, miss) = self.surjectivity(maxlen);
        report.push(
            "surjectivity",
            miss.is_none(),
            miss.unwrap_or_else(|| format!("{hit} of {total} basis elements")),
        );
        report
    }

    /// Hits every Leavitt monomial of `Γ/W` with total length `≤ maxlen` and
    /// every matrix unit with index length and entry length `≤ maxlen / 2`.
    fn surjectivity(&self, maxlen: usize) -> (usize, usize, Option<String>) {
        let eg = &self.wreath;
        let g = self.graph();
        let base = eg.base();
        let mut hit = 0;
        let mut total = 0;
        let mut miss = None;
        let mut record = |ok: bool, what: String| {
            total += 1;
            if ok {
                hit += 1;
            } else if miss.is_none() {
                miss = Some(format!("no preimage for {what}"));
            }
        };
        for m in eg.leavitt().basis_monomials(maxlen) {
            let target = eg.monomial(m.clone());
            let lifted = Monomial::new(translate(base, m.p(), g), translate(base, m.q(), g)).expect("common range");
            let pre: LeavittElement<F> = self.leavitt.from_monomial(lifted);
            record(self.phi(&pre) == target, m.format(base));
        }
        let half = (maxlen / 2).max(1);
        let indices = eg.enumerate_bridge_paths(half);
        let inner = self.inner();
        let entries = inner.basis_monomials(half);
        for x in &indices {
            for y in &indices {
                for m in &entries {
                    let fits = |i: &BridgeIndex, p: &Path| {
                        i.path().is_none_or(|i| eg.tilde().vertex_name(i.range()) == inner.graph().vertex_name(p.source()))
                    };
                    if !fits(x, m.p()) || !fits(y, m.q()) {
                        continue;
                    }
                    let entry: LeavittElement<F> = inner.from_monomial(m.clone());
                    let target = eg.matrix_unit(entry, x.clone(), y.clone()).expect("corner");
                    let ok = self.entry_preimage(m, x, y).is_some_and(|pre| self.phi(&pre) == target);
                    record(ok, eg.format(&target));
                }
            }
        }
        (hit, total, miss)
    }
}

/// `prop2_verify` as a free function; fails if `w` is not hereditary and saturated.
pub fn prop2_verify<F: Field>(g: &Graph, w: &VertexSubset, maxlen: usize, samples: usize, seed: u64) -> Result<Report> {
    Ok(Prop2Setup::<F>::new(g, w)?.verify(maxlen, samples, seed))
}

/// `L(Γ′) ≅ L(Γ′(W)) wr L(C)` for a balloon vertex `v` with `W = V∖{v}`.
pub fn balloon_iso_check<F: Field>(g: &Graph, v: &str, maxlen: usize, samples: usize, seed: u64) -> Result<Report> {
    let vid = g.vertex(v)?;
    let mut w = g.all_vertices();
    w.remove(&vid);
    if !g.is_balloon(vid, &w)? {
        return Err(Error::NotBalloon(v.into()));
    }
    let setup = Prop2Setup::<F>::new(g, &w)?;
    let q = setup.wreath.base();
    let is_loop = q.vertex_count() == 1 && q.edge_count() == 1 && q.edges().all(|e| q.source(e) == q.range(e));
    let mut report = Report::new();
    report.push("quotient is a loop", is_loop, cohn_text(q));
    report.extend(setup.verify(maxlen, samples, seed));
    Ok(report)
}

fn cohn_text(q: &Graph) -> String {
    cohn::generators(q).iter().map(|m| m.format(q)).collect::<Vec<_>>().join(", ")
}
