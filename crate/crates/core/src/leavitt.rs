//! The Leavitt path algebra `L(Γ) = C(Γ)/N`, computed by rewriting.
//!
//! For every non-sink vertex `v` one outgoing edge `γ(v)` is fixed (the
//! lexicographically least by name). The relation `CK(v)′ = 0` is oriented as
//!
//! ```text
//! (p·γ)(q·γ)*  →  p q*  -  Σ_{f ∈ s⁻¹(v), f ≠ γ} (p·f)(q·f)*
//! ```
//!
//! which strictly shortens the only monomial that can still be reducible.
//! Irreducible monomials form a basis of `L(Γ)`, so the normal form of `x` is
//! zero exactly when `x ∈ N`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::coeff::CoefficientAlgebra;
use crate::cohn::{self, CohnElement, Monomial};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::report::Report;
use crate::scalar::Field;

/// A Cohn element known to be in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LeavittElement<F: Field>(CohnElement<F>);

impl<F: Field> LeavittElement<F> {
    pub fn zero() -> Self {
        LeavittElement(CohnElement::zero())
    }

    pub(crate) fn from_reduced(x: CohnElement<F>) -> Self {
        LeavittElement(x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> &CohnElement<F> {
        &self.0
    }

    pub fn into_inner(self) -> CohnElement<F> {
        self.0
    }

    pub fn plus(&self, other: &Self) -> Self {
        LeavittElement(self.0.plus(&other.0))
    }

    pub fn minus(&self, other: &Self) -> Self {
        LeavittElement(self.0.minus(&other.0))
    }

    pub fn scale(&self, c: &F) -> Self {
        LeavittElement(self.0.scale(c))
    }
}

impl<F: Field> Default for LeavittElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Order in which the step-by-step rewriter picks redexes.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    /// The smallest reducible monomial in key order.
    First,
    /// The largest reducible monomial in key order.
    Last,
    /// A pseudo-random reducible monomial.
    Random(u64),
}

/// Multiset of total lengths of the reducible monomials, sorted descending.
pub type Measure = Vec<usize>;

/// Dershowitz–Manna ordering on multisets of naturals: `a > b` iff they
/// differ and every element where `b` has more copies is dominated by a
/// larger element where `a` has more copies.
pub fn multiset_greater(a: &[usize], b: &[usize]) -> bool {
    let count = |m: &[usize]| {
        let mut c: BTreeMap<usize, i64> = BTreeMap::new();
        for &x in m {
            *c.entry(x).or_default() += 1;
        }
        c
    };
    let (ca, cb) = (count(a), count(b));
    let keys: std::collections::BTreeSet<usize> = ca.keys().chain(cb.keys()).copied().collect();
    let diff = |k: &usize| ca.get(k).copied().unwrap_or(0) - cb.get(k).copied().unwrap_or(0);
    if keys.iter().all(|k| diff(k) == 0) {
        return false;
    }
    keys.iter()
        .filter(|k| diff(k) < 0)
        .all(|k| keys.iter().any(|y| y > k && diff(y) > 0))
}

/// `L(Γ)` for a fixed graph, with its special-edge choice.
#[derive(Clone, Debug)]
pub struct Leavitt {
    graph: Arc<Graph>,
    special: Vec<Option<EdgeId>>,
}

impl Leavitt {
    pub fn new(graph: impl Into<Arc<Graph>>) -> Leavitt {
        let graph = graph.into();
        let special = graph
            .vertices()
            .map(|v| graph.out_edges(v).iter().copied().min_by(|a, b| graph.edge_name(*a).cmp(graph.edge_name(*b))))
            .collect();
        Leavitt { graph, special }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// `γ(v)`, the lexicographically least edge leaving `v`.
    pub fn special_edge(&self, v: VertexId) -> Result<EdgeId> {
        self.special[v.index()].ok_or_else(|| Error::Sink(self.graph.vertex_name(v).into()))
    }

    /// If `m = (p·γ)(q·γ)*` with `γ = γ(s(γ))`, returns `s(γ)` and `γ`.
    pub fn redex(&self, m: &Monomial) -> Option<(VertexId, EdgeId)> {
        let a = m.p().last_edge()?;
        let b = m.q().last_edge()?;
        let v = self.graph.source(a);
        (a == b && self.special[v.index()] == Some(a)).then_some((v, a))
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.redex(m).is_none()
    }

    /// One rewrite step on `c·m`, adding the result to `out`. `emit` receives
    /// the stripped prefixes, the vertex and the coefficient so that callers
    /// can record extra terms (the wreath product adds matrix units here).
    /// Returns the shortened monomial, which may itself be reducible.
    fn step<F: Field>(
        &self,
        m: &Monomial,
        c: &F,
        out: &mut CohnElement<F>,
        emit: &mut dyn FnMut(&Path, &Path, VertexId, &F),
    ) -> Monomial {
        let g = &*self.graph;
        let (v, gamma) = self.redex(m).expect("step on a reducible monomial");
        let p = m.p().without_last(g).expect("nonempty");
        let q = m.q().without_last(g).expect("nonempty");
        for &f in g.out_edges(v) {
            if f != gamma {
                out.add_term(Monomial::new_unchecked(p.extended(g, f), q.extended(g, f)), -c.clone());
            }
        }
        emit(&p, &q, v, c);
        Monomial::new_unchecked(p, q)
    }

    /// Normal form of a Cohn element, reporting every rewrite step to `emit`.
    pub fn reduce_with<F: Field>(
        &self,
        x: &CohnElement<F>,
        emit: &mut dyn FnMut(&Path, &Path, VertexId, &F),
    ) -> CohnElement<F> {
        let mut out = CohnElement::zero();
        for (m, c) in x {
            let mut cur = m.clone();
            while self.redex(&cur).is_some() {
                cur = self.step(&cur, c, &mut out, emit);
            }
            out.add_term(cur, c.clone());
        }
        out
    }

    pub fn normal_form<F: Field>(&self, x: &CohnElement<F>) -> LeavittElement<F> {
        LeavittElement(self.reduce_with(x, &mut |_, _, _, _| {}))
    }

    /// Rewrites one redex at a time in the order chosen by `strategy`,
    /// recording the termination measure before every step and after the
    /// last. Returns the normal form together with the measure trace.
    pub fn rewrite_traced<F: Field>(
        &self,
        x: &CohnElement<F>,
        strategy: Strategy,
        emit: &mut dyn FnMut(&Path, &Path, VertexId, &F),
    ) -> (CohnElement<F>, Vec<Measure>) {
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        };
        let mut cur = x.clone();
        let mut trace: Vec<Measure> = Vec::new();
        loop {
            let redexes: Vec<Monomial> = cur.keys().filter(|m| self.redex(m).is_some()).cloned().collect();
            let mut measure: Measure = redexes.iter().map(Monomial::total_len).collect();
            measure.sort_unstable_by(|a, b| b.cmp(a));
            if let Some(prev) = trace.last() {
                debug_assert!(multiset_greater(prev, &measure), "measure did not decrease");
            }
            trace.push(measure);
            if redexes.is_empty() {
                return (cur, trace);
            }
            let pick = match (strategy, rng.as_mut()) {
                (Strategy::First, _) => redexes[0].clone(),
                (Strategy::Last, _) => redexes[redexes.len() - 1].clone(),
                (Strategy::Random(_), Some(r)) => redexes.choose(r).expect("nonempty").clone(),
                (Strategy::Random(_), None) => unreachable!(),
            };
            let c = cur.coefficient(&pick);
            cur.add_term(pick.clone(), -c.clone());
            let mut added = CohnElement::zero();
            let shorter = self.step(&pick, &c, &mut added, emit);
            added.add_term(shorter, c);
            cur.add_assign(&added);
        }
    }

    /// On `count` random Cohn elements: two random rewriting orders reach the
    /// direct normal form and the measure strictly decreases at every step.
    pub fn rewriting_check<F: Field>(&self, count: usize, seed: u64) -> Report {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = &*self.graph;
        let mut steps = 0;
        let mut termination = None;
        let mut confluence = None;
        for i in 0..count as u64 {
            let x: CohnElement<F> = cohn::random_element(g, &mut rng, 4, 4);
            let direct = self.normal_form(&x);
            for strategy in [Strategy::Random(seed ^ i), Strategy::Random(seed ^ (i + (1 << 32)))] {
                let (y, trace) = self.rewrite_traced(&x, strategy, &mut |_, _, _, _| {});
                steps += trace.len() - 1;
                if termination.is_none() {
                    if let Some(w) = trace.windows(2).find(|w| !multiset_greater(&w[0], &w[1])) {
                        termination = Some(format!("{:?} !> {:?} on {}", w[0], w[1], cohn::format(g, &x)));
                    }
                }
                if confluence.is_none() && &y != direct.terms() {
                    confluence = Some(format!("{} has two normal forms", cohn::format(g, &x)));
                }
            }
        }
        let mut report = Report::new();
        report.push(
            "termination",
            termination.is_none(),
            termination.unwrap_or_else(|| format!("{steps} steps decrease the measure")),
        );
        report.push(
            "confluence",
            confluence.is_none(),
            confluence.unwrap_or_else(|| format!("{count} elements, 2 random orders each")),
        );
        report
    }

    pub fn mul<F: Field>(&self, x: &LeavittElement<F>, y: &LeavittElement<F>) -> LeavittElement<F> {
        self.normal_form(&cohn::mul(&x.0, &y.0))
    }

    /// Homogeneous component of degree `n` for `deg(pq*) = len p - len q`.
    pub fn graded_component<F: Field>(&self, x: &LeavittElement<F>, n: i64) -> LeavittElement<F> {
        LeavittElement(x.0.filter(|m| m.degree() == n))
    }

    /// Whether `Γ` has no hereditary saturated subsets besides `∅` and `V`.
    pub fn graded_simple(&self, bound: usize) -> Result<bool> {
        let all = self.graph.enumerate_hsat(bound)?;
        let full = self.graph.all_vertices();
        Ok(all.iter().all(|w| w.is_empty() || *w == full))
    }

    /// Irreducible monomials `pq*` with `len p + len q ≤ max_total_len`.
    pub fn basis_monomials(&self, max_total_len: usize) -> Vec<Monomial> {
        let g = &*self.graph;
        let paths = g.enumerate_paths(max_total_len);
        let mut by_range: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
        for p in &paths {
            by_range.entry(p.range()).or_default().push(p);
        }
        let mut out = Vec::new();
        for ps in by_range.values() {
            for p in ps {
                for q in ps {
                    if p.len() + q.len() <= max_total_len {
                        let m = Monomial::new_unchecked((*p).clone(), (*q).clone());
                        if self.is_normal(&m) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out.sort_by_cached_key(|m| m.canonical_key(g));
        out
    }

    /// Random element in normal form.
    pub fn random_element<F: Field>(&self, rng: &mut StdRng, terms: usize, max_len: usize) -> LeavittElement<F> {
        self.normal_form(&cohn::random_element(&self.graph, rng, terms, max_len))
    }

    pub fn vertex<F: Field>(&self, v: VertexId) -> LeavittElement<F> {
        LeavittElement(CohnElement::basis(Monomial::vertex(v)))
    }

    pub fn from_monomial<F: Field>(&self, m: Monomial) -> LeavittElement<F> {
        self.normal_form(&CohnElement::basis(m))
    }

    pub fn one<F: Field>(&self) -> LeavittElement<F> {
        LeavittElement(self.graph.vertices().map(|v| (Monomial::vertex(v), F::one())).collect())
    }

    pub fn format<F: Field>(&self, x: &LeavittElement<F>) -> String {
        cohn::format(&self.graph, &x.0)
    }
}

/// `L(Γ)` as a coefficient algebra for wreath products: `ℰ` is the vertex
/// set, the generators are `V ∪ E ∪ E*`.
impl<F: Field> CoefficientAlgebra<F> for Leavitt {
    type Elem = LeavittElement<F>;
    type Basis = Monomial;

    fn zero(&self) -> Self::Elem {
        LeavittElement::zero()
    }
    fn one(&self) -> Self::Elem {
        Leavitt::one(self)
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.plus(y)
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        x.scale(&-F::one())
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Leavitt::mul(self, x, y)
    }
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        x.scale(c)
    }
    fn idempotents(&self) -> Vec<(String, Self::Elem)> {
        self.graph
            .vertices()
            .map(|v| (self.graph.vertex_name(v).to_string(), self.vertex(v)))
            .collect()
    }
    fn generator(&self, i: usize) -> Option<Self::Elem> {
        cohn::generators(&self.graph).into_iter().nth(i).map(|m| self.from_monomial(m))
    }
    fn coordinates(&self, x: &Self::Elem) -> BTreeMap<Monomial, F> {
        x.0.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
    }
    fn sample(&self, rng: &mut StdRng) -> Self::Elem {
        let terms = rng.gen_range(1..=3);
        self.random_element(rng, terms, 2)
    }
    fn format(&self, x: &Self::Elem) -> String {
        Leavitt::format(self, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::idempotent_violations;
    use crate::graph::samples::*;
    use crate::scalar::Q;

    type C = CohnElement<Q>;

    fn m(g: &Graph, p: &str, q: &str) -> Monomial {
        Monomial::new(g.parse_path(p).unwrap(), g.parse_path(q).unwrap()).unwrap()
    }

    fn nf(l: &Leavitt, x: &C) -> String {
        l.format(&l.normal_form(x))
    }

    #[test]
    fn special_edges() {
        let l = Leavitt::new(loop_graph());
        assert_eq!(l.graph().edge_name(l.special_edge(VertexId(0)).unwrap()), "c");
        let t = Leavitt::new(toeplitz());
        let u = t.graph().vertex("u").unwrap();
        assert_eq!(t.graph().edge_name(t.special_edge(u).unwrap()), "c");
        let line = Leavitt::new(line());
        let v = line.graph().vertex("v").unwrap();
        assert!(matches!(line.special_edge(v), Err(Error::Sink(_))));
    }

    #[test]
    fn normal_form_examples() {
        let l = Leavitt::new(loop_graph());
        let g = l.graph().clone();
        assert_eq!(nf(&l, &C::basis(m(&g, "c", "c"))), "v");
        assert_eq!(nf(&l, &C::basis(m(&g, "c.c", "c"))), "c");
        let t = Leavitt::new(toeplitz());
        let g = t.graph().clone();
        assert_eq!(nf(&t, &C::basis(m(&g, "c", "c"))), "u - f.f^*");
    }

    #[test]
    fn product_examples() {
        let l = Leavitt::new(loop_graph());
        let g = l.graph().clone();
        let c = l.from_monomial::<Q>(m(&g, "c", "v"));
        let cs = l.from_monomial::<Q>(m(&g, "v", "c"));
        assert_eq!(l.format(&l.mul(&c, &cs)), "v");
        assert_eq!(l.format(&l.mul(&cs, &c)), "v");
        let t = Leavitt::new(toeplitz());
        let g = t.graph().clone();
        let fs = t.from_monomial::<Q>(m(&g, "v", "f"));
        let u = t.vertex::<Q>(g.vertex("u").unwrap());
        let cc = t.from_monomial::<Q>(m(&g, "c", "c"));
        assert_eq!(t.format(&t.mul(&fs, &u.minus(&cc))), "f^*");
    }

    #[test]
    fn graded_components() {
        let l = Leavitt::new(loop_graph());
        let g = l.graph().clone();
        let x = l.normal_form::<Q>(&C::basis(m(&g, "c", "v")).plus(&C::basis(m(&g, "v", "v"))));
        assert_eq!(l.format(&l.graded_component(&x, 0)), "v");
        assert_eq!(l.format(&l.graded_component(&x, 1)), "c");
        assert!(l.graded_component(&l.vertex::<Q>(VertexId(0)), 2).is_zero());
    }

    #[test]
    fn graded_simplicity() {
        assert!(Leavitt::new(loop_graph()).graded_simple(16).unwrap());
        assert!(!Leavitt::new(toeplitz()).graded_simple(16).unwrap());
        assert!(Leavitt::new(two_cycle()).graded_simple(16).unwrap());
    }

    #[test]
    fn loop_basis_in_degree_window() {
        let l = Leavitt::new(loop_graph());
        let g = l.graph().clone();
        let got: Vec<String> = l
            .basis_monomials(10)
            .into_iter()
            .filter(|m| (-3..=3).contains(&m.degree()))
            .map(|m| m.format(&g))
            .collect();
        assert_eq!(got, ["c^*.c^*.c^*", "c^*.c^*", "c^*", "v", "c", "c.c", "c.c.c"]);
    }

    #[test]
    fn multiset_order() {
        assert!(multiset_greater(&[4], &[2, 2, 2]));
        assert!(multiset_greater(&[4, 1], &[4]));
        assert!(!multiset_greater(&[2], &[2]));
        assert!(!multiset_greater(&[2], &[3]));
        assert!(multiset_greater(&[3], &[]));
    }

    #[test]
    fn deterministic_strategies_agree() {
        let mut rng = StdRng::seed_from_u64(14);
        for (_, g) in all() {
            let l = Leavitt::new(g.clone());
            for _ in 0..100 {
                let x: C = cohn::random_element(&g, &mut rng, 4, 4);
                let (a, _) = l.rewrite_traced(&x, Strategy::First, &mut |_, _, _, _| {});
                let (b, _) = l.rewrite_traced(&x, Strategy::Last, &mut |_, _, _, _| {});
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn confluence_and_termination() {
        for (name, g) in all() {
            let report = Leavitt::new(g).rewriting_check::<Q>(500, 11);
            assert!(report.passed(), "{name}: {report}");
        }
    }

    #[test]
    fn normal_form_properties() {
        let mut rng = StdRng::seed_from_u64(12);
        for (name, g) in all() {
            let l = Leavitt::new(g.clone());
            for _ in 0..100 {
                let x: C = cohn::random_element(&g, &mut rng, 3, 3);
                let y: C = cohn::random_element(&g, &mut rng, 3, 3);
                let nx = l.normal_form(&x);
                assert_eq!(l.normal_form(nx.terms()), nx, "{name}: idempotence");
                let lhs = l.normal_form(&cohn::mul(&x, &y));
                let rhs = l.mul(&nx, &l.normal_form(&y));
                assert_eq!(lhs, rhs, "{name}: compatibility");
            }
        }
    }

    #[test]
    fn ck_multiples_vanish() {
        for (name, g) in all() {
            let l = Leavitt::new(g.clone());
            let paths = g.enumerate_paths(3);
            for v in g.vertices().filter(|v| !g.is_sink(*v)) {
                for p in paths.iter().filter(|p| p.range() == v) {
                    for q in paths.iter().filter(|q| q.range() == v) {
                        let x: C = cohn::sandwich_ck_prime(&g, p, q).unwrap();
                        assert!(l.normal_form(&x).is_zero(), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn grading_additive_on_homogeneous_products() {
        let mut rng = StdRng::seed_from_u64(13);
        for (_, g) in all() {
            let l = Leavitt::new(g.clone());
            for _ in 0..100 {
                let x: LeavittElement<Q> = l.random_element(&mut rng, 3, 3);
                let y: LeavittElement<Q> = l.random_element(&mut rng, 3, 3);
                for a in -3..=3 {
                    let xa = l.graded_component(&x, a);
                    for b in -3..=3 {
                        let yb = l.graded_component(&y, b);
                        let p = l.mul(&xa, &yb);
                        assert_eq!(l.graded_component(&p, a + b), p);
                    }
                }
            }
        }
    }

    #[test]
    fn vertices_are_orthogonal_idempotents() {
        for (_, g) in all() {
            let l = Leavitt::new(g);
            assert!(idempotent_violations::<Q, _>(&l).is_empty());
        }
    }
}
