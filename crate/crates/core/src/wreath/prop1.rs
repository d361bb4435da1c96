//! Finite generation: `A wr L(Γ)` is generated by `V`, `E`, `E*`, the
//! matrices `(aᵢ)_{0,0}` for generators `aᵢ` of `A`, and `(r(e))_{e,0}`,
//! `(r(e))_{0,e}` for every bridge `e`.

use super::{BridgeIndex, ExtendedGraph, WreathElement};
use crate::coeff::CoefficientAlgebra;
use crate::cohn::Monomial;
use crate::graph::Path;
use crate::report::Report;
use crate::scalar::Field;

/// The generator list with the position of each kind.
#[derive(Clone, Debug)]
pub struct Prop1Generators<F: Field, E> {
    pub names: Vec<String>,
    pub elements: Vec<WreathElement<F, E>>,
    vertex: Vec<usize>,
    edge: Vec<usize>,
    ghost: Vec<usize>,
    coeff: Vec<usize>,
    /// `(r(e))_{e,0}` per bridge.
    down: Vec<usize>,
    /// `(r(e))_{0,e}` per bridge.
    up: Vec<usize>,
}

impl<F: Field, E: Clone> Prop1Generators<F, E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join(" · ")
    }

    pub fn format_sum(&self, words: &[Vec<usize>]) -> String {
        words.iter().map(|w| self.format_word(w)).collect::<Vec<_>>().join(" + ")
    }
}

pub fn prop1_generators<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    a_gens: &[A::Elem],
) -> Prop1Generators<F, A::Elem> {
    let g = eg.base();
    let mut out = Prop1Generators {
        names: Vec::new(),
        elements: Vec::new(),
        vertex: Vec::new(),
        edge: Vec::new(),
        ghost: Vec::new(),
        coeff: Vec::new(),
        down: Vec::new(),
        up: Vec::new(),
    };
    let push = |out: &mut Prop1Generators<F, A::Elem>, x: WreathElement<F, A::Elem>| {
        out.names.push(eg.format(&x));
        out.elements.push(x);
        out.elements.len() - 1
    };
    for v in g.vertices() {
        let i = push(&mut out, eg.monomial(Monomial::vertex(v)));
        out.vertex.push(i);
    }
    for e in g.edges() {
        let i = push(&mut out, eg.monomial(Monomial::edge(g, e)));
        out.edge.push(i);
    }
    for e in g.edges() {
        let i = push(&mut out, eg.monomial(Monomial::ghost(g, e)));
        out.ghost.push(i);
    }
    for a in a_gens {
        let x = eg
            .matrix_unit(a.clone(), BridgeIndex::Zero, BridgeIndex::Zero)
            .expect("x₀ corner is all of A");
        let i = push(&mut out, x);
        out.coeff.push(i);
    }
    for b in eg.bridges() {
        let e = BridgeIndex::Path(Path::edge(eg.tilde(), b.edge));
        let r = eg.range_idempotent(&e);
        let i = push(&mut out, eg.matrix_unit(r.clone(), e.clone(), BridgeIndex::Zero).expect("corner"));
        out.down.push(i);
        let i = push(&mut out, eg.matrix_unit(r, BridgeIndex::Zero, e).expect("corner"));
        out.up.push(i);
    }
    out
}

fn edge_word<F: Field, E: Clone>(gens: &Prop1Generators<F, E>, p: &Path) -> Vec<usize> {
    p.edges().iter().map(|e| gens.edge[e.index()]).collect()
}

fn ghost_word<F: Field, E: Clone>(gens: &Prop1Generators<F, E>, q: &Path) -> Vec<usize> {
    q.edges().iter().rev().map(|e| gens.ghost[e.index()]).collect()
}

fn bridge_position<F: Field, A: CoefficientAlgebra<F>>(eg: &ExtendedGraph<F, A>, p: &Path) -> (Path, usize) {
    let last = p.last_edge().expect("bridge path");
    let i = eg.bridges().iter().position(|b| b.edge == last).expect("bridge edge");
    (p.without_last(eg.tilde()).expect("nonempty"), i)
}

/// A generator word for `pq*`.
pub fn leavitt_witness<F: Field, E: Clone>(gens: &Prop1Generators<F, E>, m: &Monomial) -> Vec<usize> {
    if m.is_vertex() {
        return vec![gens.vertex[m.range().index()]];
    }
    let mut w = edge_word(gens, m.p());
    w.extend(ghost_word(gens, m.q()));
    w
}

/// Generator words summing to `(r(x)·a_{k₁}⋯a_{kₘ}·r(y))_{x,y}`: walk to
/// the bridge with edges, drop to `x₀`, apply the coefficient generators,
/// climb back. `(1)_{0,0}` is `Σ (r(e))_{0,e}·(r(e))_{e,0}` over one bridge
/// per idempotent.
pub fn matrix_witness<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    gens: &Prop1Generators<F, A::Elem>,
    x: &BridgeIndex,
    y: &BridgeIndex,
    a_word: &[usize],
) -> Vec<Vec<usize>> {
    if a_word.is_empty() && x.is_zero() && y.is_zero() {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for (i, b) in eg.bridges().iter().enumerate() {
            if !seen.contains(&b.idempotent) {
                seen.push(b.idempotent);
                out.push(vec![gens.up[i], gens.down[i]]);
            }
        }
        return out;
    }
    let mut w = Vec::new();
    if let BridgeIndex::Path(p) = x {
        let (a, b) = bridge_position(eg, p);
        w.extend(edge_word(gens, &a));
        w.push(gens.down[b]);
    }
    w.extend(a_word.iter().map(|&k| gens.coeff[k]));
    if let BridgeIndex::Path(q) = y {
        let (a, b) = bridge_position(eg, q);
        w.push(gens.up[b]);
        w.extend(ghost_word(gens, &a));
    }
    vec![w]
}

fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..k {
                let mut w2: Vec<usize> = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every Leavitt monomial with total length `≤ index_len` and every
/// `(r(x)·w·r(y))_{x,y}` with bridge paths of length `≤ index_len` and `w` a
/// word of length `≤ entry_len` in `a_gens` must equal the product of its
/// witness word, which may use at most `max_word` generators.
pub fn prop1_check<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    a_gens: &[A::Elem],
    index_len: usize,
    entry_len: usize,
    max_word: usize,
) -> Report {
    let gens = prop1_generators(eg, a_gens);
    let a = eg.algebra();
    let mut report = Report::new();
    let mut checked = 0;
    let mut longest = 0;
    let mut failure: Option<String> = None;
    let mut verify = |target: WreathElement<F, A::Elem>, words: Vec<Vec<usize>>| {
        if failure.is_some() {
            return;
        }
        checked += 1;
        let len = words.iter().map(Vec::len).max().unwrap_or(0);
        longest = longest.max(len);
        let value = words.iter().fold(WreathElement::zero(), |acc, w| {
            eg.add(&acc, &eg.product(w.iter().map(|&i| &gens.elements[i])))
        });
        if len > max_word || value != target {
            failure = Some(format!("{} via {} (length {len})", eg.format(&target), gens.format_sum(&words)));
        }
    };
    for m in eg.leavitt().basis_monomials(index_len) {
        verify(eg.monomial(m.clone()), vec![leavitt_witness(&gens, &m)]);
    }
    let indices = eg.enumerate_bridge_paths(index_len);
    for w in words(a_gens.len(), entry_len) {
        let entry = w.iter().fold(a.one(), |acc, &k| a.mul(&acc, &a_gens[k]));
        for x in &indices {
            for y in &indices {
                let e = eg.corner_projection(x, y, &entry);
                let target = eg.matrix_unit(e, x.clone(), y.clone()).expect("projected");
                verify(target, matrix_witness(eg, &gens, x, y, &w));
            }
        }
    }
    report.push(
        "generated",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} targets, longest witness {longest}")),
    );
    report
}
