//! The wreath product `B = A wr L(Γ) = (C(Γ) + I)/J`.
//!
//! The graph `Γ` is extended to `Γ̃` by one vertex per idempotent of `ℰ ⊂ A`
//! and by bridge edges from `V` into those vertices. Matrix indices are the
//! bridge paths `p·e` together with a distinguished point `x₀`. Elements of
//! `B` are stored as a Leavitt part and a matrix part; since `J ∩ I = 0` this
//! split is canonical once the Leavitt part is in normal form.

pub mod lemmas;
pub mod prop1;
pub mod prop2;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::Rng;

use crate::action::{self, add_entry, ActionElement, PointedBiset};
use crate::coeff::CoefficientAlgebra;
use crate::cohn::{self, random_path_into, CohnElement, Monomial};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::leavitt::{Leavitt, LeavittElement, Strategy};
use crate::lincomb::LinComb;
use crate::scalar::Field;

/// A matrix index: `x₀` or a bridge path `p·e`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BridgeIndex {
    Zero,
    Path(Path),
}

impl BridgeIndex {
    pub fn is_zero(&self) -> bool {
        matches!(self, BridgeIndex::Zero)
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            BridgeIndex::Zero => None,
            BridgeIndex::Path(p) => Some(p),
        }
    }

    /// Number of edges including the bridge; `x₀` has length 0.
    pub fn len(&self) -> usize {
        self.path().map_or(0, Path::len)
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }
}

/// Input description of one bridge edge `name: source → idempotent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeSpec {
    pub name: String,
    pub source: String,
    pub idempotent: String,
}

impl BridgeSpec {
    pub fn new(name: &str, source: &str, idempotent: &str) -> Self {
        BridgeSpec {
            name: name.into(),
            source: source.into(),
            idempotent: idempotent.into(),
        }
    }
}

/// Contents of an extension file:
///
/// ```text
/// idem <name>
/// bridge <edge-id> <vertex-id> <idem-name>
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extension {
    pub idempotents: Vec<String>,
    pub bridges: Vec<BridgeSpec>,
}

impl Extension {
    pub fn parse(text: &str) -> Result<Extension> {
        let mut out = Extension::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.into(),
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["idem", name] => {
                    if out.idempotents.iter().any(|n| n == name) {
                        return Err(err(&format!("duplicate idempotent `{name}`")));
                    }
                    out.idempotents.push(name.to_string());
                }
                ["bridge", e, v, idem] => out.bridges.push(BridgeSpec::new(e, v, idem)),
                ["idem", ..] => return Err(err("expected `idem <name>`")),
                ["bridge", ..] => return Err(err("expected `bridge <edge-id> <vertex-id> <idem-name>`")),
                _ => return Err(err(&format!("unknown directive `{}`", words[0]))),
            }
        }
        Ok(out)
    }
}

/// A validated bridge edge of `Γ̃`.
#[derive(Clone, Debug)]
pub struct Bridge {
    pub name: String,
    /// The edge id in `Γ̃`.
    pub edge: EdgeId,
    pub source: VertexId,
    /// Position in the idempotent list of the coefficient algebra.
    pub idempotent: usize,
}

/// `Γ̃` together with the coefficient algebra `A`.
///
/// `Γ̃` lists the vertices and edges of `Γ` first, so their ids agree and
/// every path of `Γ` is also a path of `Γ̃`.
#[derive(Clone, Debug)]
pub struct ExtendedGraph<F: Field, A: CoefficientAlgebra<F>> {
    leavitt: Leavitt,
    algebra: A,
    idempotents: Vec<(String, A::Elem)>,
    bridges: Vec<Bridge>,
    bridges_at: Vec<Vec<usize>>,
    tilde: Graph,
    _field: PhantomData<fn() -> F>,
}

/// Raw elements of `C(Γ) + I`, before reduction modulo `J`.
pub type RawWreath<F, E> = ActionElement<F, Monomial, BridgeIndex, E>;

pub type MatrixPart<E> = BTreeMap<(BridgeIndex, BridgeIndex), E>;

/// An element of `A wr L(Γ)` in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WreathElement<F: Field, E> {
    leavitt: LeavittElement<F>,
    matrix: MatrixPart<E>,
}

impl<F: Field, E: Clone> WreathElement<F, E> {
    pub fn zero() -> Self {
        WreathElement {
            leavitt: LeavittElement::zero(),
            matrix: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.leavitt.is_zero() && self.matrix.is_empty()
    }

    pub fn leavitt(&self) -> &LeavittElement<F> {
        &self.leavitt
    }

    pub fn matrix(&self) -> &MatrixPart<E> {
        &self.matrix
    }

    pub fn is_pure_matrix(&self) -> bool {
        self.leavitt.is_zero()
    }

    pub fn raw(&self) -> RawWreath<F, E> {
        ActionElement {
            semi: self.leavitt.terms().clone(),
            matrix: self.matrix.clone(),
        }
    }
}

/// Basis keys of `B`: normal-form monomials of `L(Γ)` and matrix units with
/// an entry from the basis of `A`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum WreathKey<K> {
    Leavitt(Monomial),
    Entry(BridgeIndex, BridgeIndex, K),
}

/// `𝒫` with the left action of `S` by multiplication in `C(Γ̃)` and the
/// right action `p.s = s*·p`.
pub struct BridgeBiset<'a, F: Field, A: CoefficientAlgebra<F>> {
    eg: &'a ExtendedGraph<F, A>,
    /// Longest path drawn by the samplers.
    pub sample_len: usize,
}

impl<F: Field, A: CoefficientAlgebra<F>> PointedBiset for BridgeBiset<'_, F, A> {
    type S = Monomial;
    type X = BridgeIndex;

    fn s_mul(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        a.mul(b)
    }
    fn zero_point(&self) -> BridgeIndex {
        BridgeIndex::Zero
    }
    fn act_left(&self, s: &Monomial, x: &BridgeIndex) -> BridgeIndex {
        self.eg.act_left(s, x)
    }
    fn act_right(&self, x: &BridgeIndex, s: &Monomial) -> BridgeIndex {
        self.eg.act_right(x, s)
    }
    fn sample_s(&self, rng: &mut StdRng) -> Monomial {
        self.eg.random_monomial(rng, self.sample_len)
    }
    fn sample_x(&self, rng: &mut StdRng) -> BridgeIndex {
        self.eg.random_bridge_index(rng, self.sample_len)
    }
    fn format_s(&self, s: &Monomial) -> String {
        s.format(self.eg.base())
    }
    fn format_x(&self, x: &BridgeIndex) -> String {
        self.eg.format_index(x)
    }
}

impl<F: Field, A: CoefficientAlgebra<F>> ExtendedGraph<F, A> {
    /// Builds `Γ̃`. Fails on a bridge at a sink of `Γ`, an idempotent not
    /// in `ℰ`, or a name clash.
    pub fn new(g: impl Into<Arc<Graph>>, algebra: A, bridges: &[BridgeSpec]) -> Result<Self> {
        let g: Arc<Graph> = g.into();
        let idempotents = algebra.idempotents();
        let mut b = Graph::builder();
        for v in g.vertices() {
            b.vertex(g.vertex_name(v))?;
        }
        for e in g.edges() {
            b.edge(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)))?;
        }
        for (name, _) in &idempotents {
            b.vertex(name)?;
        }
        let mut out = Vec::new();
        let mut bridges_at = vec![Vec::new(); g.vertex_count()];
        for spec in bridges {
            let source = g.vertex(&spec.source)?;
            if g.is_sink(source) {
                return Err(Error::BridgeAtSink {
                    bridge: spec.name.clone(),
                    vertex: spec.source.clone(),
                });
            }
            let idempotent = idempotents
                .iter()
                .position(|(n, _)| *n == spec.idempotent)
                .ok_or_else(|| Error::UnknownIdempotent(spec.idempotent.clone()))?;
            let edge = b.edge(&spec.name, &spec.source, &spec.idempotent)?;
            bridges_at[source.index()].push(out.len());
            out.push(Bridge {
                name: spec.name.clone(),
                edge,
                source,
                idempotent,
            });
        }
        Ok(ExtendedGraph {
            leavitt: Leavitt::new(g),
            algebra,
            idempotents,
            bridges: out,
            bridges_at,
            tilde: b.build(),
            _field: PhantomData,
        })
    }

    pub fn base(&self) -> &Graph {
        self.leavitt.graph()
    }

    pub fn tilde(&self) -> &Graph {
        &self.tilde
    }

    pub fn leavitt(&self) -> &Leavitt {
        &self.leavitt
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn bridges(&self) -> &[Bridge] {
        &self.bridges
    }

    pub fn bridges_at(&self, v: VertexId) -> impl Iterator<Item = &Bridge> + '_ {
        self.bridges_at[v.index()].iter().map(move |&i| &self.bridges[i])
    }

    pub fn bridge(&self, name: &str) -> Result<&Bridge> {
        self.bridges
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| Error::UnknownEdge(name.into()))
    }

    pub fn biset(&self) -> BridgeBiset<'_, F, A> {
        BridgeBiset { eg: self, sample_len: 3 }
    }

    fn bridge_of_edge(&self, e: EdgeId) -> Option<&Bridge> {
        let first = self.base().edge_count();
        (e.index() >= first).then(|| &self.bridges[e.index() - first])
    }

    /// `r(x)`: the idempotent at the end of the bridge, or `1` for `x₀`.
    pub fn range_idempotent(&self, x: &BridgeIndex) -> A::Elem {
        match x {
            BridgeIndex::Zero => self.algebra.one(),
            BridgeIndex::Path(p) => {
                let b = self.bridge_of_edge(p.last_edge().expect("bridge path")).expect("bridge");
                self.idempotents[b.idempotent].1.clone()
            }
        }
    }

    /// `p·e` for a path `p` of `Γ` ending at the source of `e`.
    pub fn bridge_index(&self, p: &Path, bridge: &Bridge) -> Result<BridgeIndex> {
        if p.range() != bridge.source {
            return Err(Error::InvalidPath(format!(
                "{} does not end at the source of {}",
                self.base().format_path(p),
                bridge.name
            )));
        }
        Ok(BridgeIndex::Path(p.extended(&self.tilde, bridge.edge)))
    }

    /// Parses `0` or a dot-separated edge list ending in a bridge edge.
    pub fn parse_index(&self, text: &str) -> Result<BridgeIndex> {
        let text = text.trim();
        if text == "0" {
            return Ok(BridgeIndex::Zero);
        }
        let p = self.tilde.parse_path(text)?;
        let ok = p.last_edge().is_some_and(|e| self.bridge_of_edge(e).is_some())
            && p.edges()[..p.len() - 1].iter().all(|e| self.bridge_of_edge(*e).is_none());
        if !ok {
            return Err(Error::InvalidPath(format!("`{text}` is not a bridge path")));
        }
        Ok(BridgeIndex::Path(p))
    }

    pub fn format_index(&self, x: &BridgeIndex) -> String {
        match x {
            BridgeIndex::Zero => "0".into(),
            BridgeIndex::Path(p) => self.tilde.format_path(p),
        }
    }

    fn index_cmp(&self, a: &BridgeIndex, b: &BridgeIndex) -> Ordering {
        match (a, b) {
            (BridgeIndex::Zero, BridgeIndex::Zero) => Ordering::Equal,
            (BridgeIndex::Zero, _) => Ordering::Less,
            (_, BridgeIndex::Zero) => Ordering::Greater,
            (BridgeIndex::Path(p), BridgeIndex::Path(q)) => self.tilde.path_cmp(p, q),
        }
    }

    /// `x₀` followed by every bridge path with at most `max_len` edges, by
    /// length and then edge names.
    pub fn enumerate_bridge_paths(&self, max_len: usize) -> Vec<BridgeIndex> {
        let g = self.base();
        let mut out = vec![BridgeIndex::Zero];
        let mut paths: Vec<Path> = Vec::new();
        for p in g.enumerate_paths(max_len.saturating_sub(1)) {
            for b in self.bridges_at(p.range()) {
                paths.push(p.extended(&self.tilde, b.edge));
            }
        }
        paths.sort_by(|a, b| self.tilde.path_cmp(a, b));
        out.extend(paths.into_iter().map(BridgeIndex::Path));
        out
    }

    /// `s·x` evaluated in `C(Γ̃)`: for `s = pq*`, `p·x′` when `x = q·x′` and
    /// `x₀` otherwise.
    pub fn act_left(&self, s: &Monomial, x: &BridgeIndex) -> BridgeIndex {
        let BridgeIndex::Path(r) = x else { return BridgeIndex::Zero };
        match r.strip_prefix(s.q()) {
            Some(rest) => BridgeIndex::Path(s.p().concat(&rest).expect("r(p) = r(q)")),
            None => BridgeIndex::Zero,
        }
    }

    /// `x.s = s*·x`.
    pub fn act_right(&self, x: &BridgeIndex, s: &Monomial) -> BridgeIndex {
        self.act_left(&s.star(), x)
    }

    /// Checks that every entry at `(p, q)` lies in `r(p)·A·r(q)`.
    pub fn check_corners(&self, m: &MatrixPart<A::Elem>) -> Result<()> {
        let a = &self.algebra;
        for ((x, y), e) in m {
            let proj = a.mul(&a.mul(&self.range_idempotent(x), e), &self.range_idempotent(y));
            if proj != *e {
                return Err(Error::CornerViolation {
                    row: self.format_index(x),
                    col: self.format_index(y),
                });
            }
        }
        Ok(())
    }

    /// `r(x)·a·r(y)`.
    pub fn corner_projection(&self, x: &BridgeIndex, y: &BridgeIndex, e: &A::Elem) -> A::Elem {
        let a = &self.algebra;
        a.mul(&a.mul(&self.range_idempotent(x), e), &self.range_idempotent(y))
    }

    /// `CK(v) = CK(v)′ − Σ_{e ∈ E(v, ℰ)} (r(e))_{e,e}`, unreduced.
    pub fn ck_full(&self, v: VertexId) -> Result<RawWreath<F, A::Elem>> {
        let g = self.base();
        let mut out = ActionElement::from_semi(cohn::ck_prime(g, v)?);
        for b in self.bridges_at(v) {
            let x = BridgeIndex::Path(Path::edge(&self.tilde, b.edge));
            let e = self.algebra.neg(&self.idempotents[b.idempotent].1);
            add_entry(&self.algebra, &mut out.matrix, x.clone(), x, &e);
        }
        Ok(out)
    }

    fn emit_into<'m>(&'m self, matrix: &'m mut MatrixPart<A::Elem>) -> impl FnMut(&Path, &Path, VertexId, &F) + 'm {
        move |p, q, v, c| {
            for b in self.bridges_at(v) {
                let e = self.algebra.scale(&-c.clone(), &self.idempotents[b.idempotent].1);
                let x = BridgeIndex::Path(p.extended(&self.tilde, b.edge));
                let y = BridgeIndex::Path(q.extended(&self.tilde, b.edge));
                add_entry(&self.algebra, matrix, x, y, &e);
            }
        }
    }

    /// Reduces modulo `J`: Leavitt rewriting in which each step at `v` also
    /// subtracts `c·(r(e))_{p·e, q·e}` for every bridge `e` at `v`.
    pub fn normal_form(&self, raw: &RawWreath<F, A::Elem>) -> Result<WreathElement<F, A::Elem>> {
        self.check_corners(&raw.matrix)?;
        let mut matrix = raw.matrix.clone();
        let semi = self.leavitt.reduce_with(&raw.semi, &mut self.emit_into(&mut matrix));
        Ok(WreathElement {
            leavitt: LeavittElement::from_reduced(semi),
            matrix,
        })
    }

    /// Same as [`normal_form`](Self::normal_form) but one redex at a time.
    pub fn normal_form_with_strategy(
        &self,
        raw: &RawWreath<F, A::Elem>,
        strategy: Strategy,
    ) -> Result<WreathElement<F, A::Elem>> {
        self.check_corners(&raw.matrix)?;
        let mut matrix = raw.matrix.clone();
        let (semi, _) = self.leavitt.rewrite_traced(&raw.semi, strategy, &mut self.emit_into(&mut matrix));
        Ok(WreathElement {
            leavitt: LeavittElement::from_reduced(semi),
            matrix,
        })
    }

    /// Product of raw elements in `C(Γ) + I`, without reduction.
    pub fn raw_mul(&self, x: &RawWreath<F, A::Elem>, y: &RawWreath<F, A::Elem>) -> RawWreath<F, A::Elem> {
        action::action_mul(&self.biset(), &self.algebra, x, y)
    }

    pub fn mul(&self, x: &WreathElement<F, A::Elem>, y: &WreathElement<F, A::Elem>) -> WreathElement<F, A::Elem> {
        self.normal_form(&self.raw_mul(&x.raw(), &y.raw()))
            .expect("products keep entries in their corners")
    }

    /// Product of a nonempty sequence; the empty product is `0` because the
    /// vertex sum does not act as a unit on the `x₀` row and column.
    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a WreathElement<F, A::Elem>>) -> WreathElement<F, A::Elem>
    where
        A::Elem: 'a,
    {
        let mut it = xs.into_iter();
        let Some(first) = it.next() else { return WreathElement::zero() };
        it.fold(first.clone(), |acc, x| self.mul(&acc, x))
    }

    pub fn add(&self, x: &WreathElement<F, A::Elem>, y: &WreathElement<F, A::Elem>) -> WreathElement<F, A::Elem> {
        let mut matrix = x.matrix.clone();
        for ((p, q), e) in &y.matrix {
            add_entry(&self.algebra, &mut matrix, p.clone(), q.clone(), e);
        }
        WreathElement {
            leavitt: x.leavitt.plus(&y.leavitt),
            matrix,
        }
    }

    pub fn scale(&self, c: &F, x: &WreathElement<F, A::Elem>) -> WreathElement<F, A::Elem> {
        let mut matrix = BTreeMap::new();
        for ((p, q), e) in &x.matrix {
            add_entry(&self.algebra, &mut matrix, p.clone(), q.clone(), &self.algebra.scale(c, e));
        }
        WreathElement {
            leavitt: x.leavitt.scale(c),
            matrix,
        }
    }

    pub fn sub(&self, x: &WreathElement<F, A::Elem>, y: &WreathElement<F, A::Elem>) -> WreathElement<F, A::Elem> {
        self.add(x, &self.scale(&-F::one(), y))
    }

    pub fn from_cohn(&self, x: &CohnElement<F>) -> WreathElement<F, A::Elem> {
        self.normal_form(&ActionElement::from_semi(x.clone())).expect("no matrix part")
    }

    pub fn monomial(&self, m: Monomial) -> WreathElement<F, A::Elem> {
        self.from_cohn(&LinComb::basis(m))
    }

    /// Sum of the vertices of `Γ`; the unit when `Γ` is finite.
    pub fn one(&self) -> WreathElement<F, A::Elem> {
        self.from_cohn(&self.base().vertices().map(|v| (Monomial::vertex(v), F::one())).collect())
    }

    /// `(a)_{x,y}`; the entry must lie in the corner `r(x)·A·r(y)`.
    pub fn matrix_unit(&self, a: A::Elem, x: BridgeIndex, y: BridgeIndex) -> Result<WreathElement<F, A::Elem>> {
        let mut matrix = BTreeMap::new();
        add_entry(&self.algebra, &mut matrix, x, y, &a);
        self.check_corners(&matrix)?;
        Ok(WreathElement {
            leavitt: LeavittElement::zero(),
            matrix,
        })
    }

    pub fn coordinates(&self, x: &WreathElement<F, A::Elem>) -> BTreeMap<WreathKey<A::Basis>, F> {
        let mut out = BTreeMap::new();
        for (m, c) in x.leavitt.terms() {
            out.insert(WreathKey::Leavitt(m.clone()), c.clone());
        }
        for ((p, q), e) in &x.matrix {
            for (k, c) in self.algebra.coordinates(e) {
                out.insert(WreathKey::Entry(p.clone(), q.clone(), k), c);
            }
        }
        out
    }

    /// Renders as `v - c.c^* + [a @ p, q]` with `0` for `x₀`.
    pub fn format(&self, x: &WreathElement<F, A::Elem>) -> String {
        let mut out = if x.leavitt.is_zero() {
            String::new()
        } else {
            cohn::format(self.base(), x.leavitt.terms())
        };
        let mut entries: Vec<_> = x.matrix.iter().collect();
        entries.sort_by(|((p1, q1), _), ((p2, q2), _)| self.index_cmp(p1, p2).then_with(|| self.index_cmp(q1, q2)));
        for ((p, q), e) in entries {
            let text = self.algebra.format(e);
            let (neg, body) = if text.starts_with('-') {
                (true, self.algebra.format(&self.algebra.neg(e)))
            } else {
                (false, text)
            };
            let unit = format!("[{body} @ {}, {}]", self.format_index(p), self.format_index(q));
            match (out.is_empty(), neg) {
                (true, false) => out = unit,
                (true, true) => out = format!("-{unit}"),
                (false, false) => out = format!("{out} + {unit}"),
                (false, true) => out = format!("{out} - {unit}"),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// Random monomial `pq*` of `Γ` with `len p, len q ≤ max_len`.
    pub fn random_monomial(&self, rng: &mut StdRng, max_len: usize) -> Monomial {
        let g = self.base();
        let v = VertexId(rng.gen_range(0..g.vertex_count() as u32));
        let (lp, lq) = (rng.gen_range(0..=max_len), rng.gen_range(0..=max_len));
        let p = random_path_into(g, rng, v, lp);
        let q = random_path_into(g, rng, v, lq);
        Monomial::new(p, q).expect("common range")
    }

    /// `x₀` with probability about 1/4, otherwise a random bridge path.
    pub fn random_bridge_index(&self, rng: &mut StdRng, max_len: usize) -> BridgeIndex {
        if self.bridges.is_empty() || rng.gen_range(0..4) == 0 {
            return BridgeIndex::Zero;
        }
        let b = &self.bridges[rng.gen_range(0..self.bridges.len())];
        let len = rng.gen_range(0..max_len.max(1));
        let p = random_path_into(self.base(), rng, b.source, len);
        BridgeIndex::Path(p.extended(&self.tilde, b.edge))
    }

    /// Random entry projected into the corner at `(x, y)`; may be zero.
    pub fn random_matrix_unit(&self, rng: &mut StdRng, max_len: usize) -> WreathElement<F, A::Elem> {
        let x = self.random_bridge_index(rng, max_len);
        let y = self.random_bridge_index(rng, max_len);
        let a = self.corner_projection(&x, &y, &self.algebra.sample(rng));
        self.matrix_unit(a, x, y).expect("projected into the corner")
    }

    /// Random element with up to three Leavitt terms and two matrix units.
    pub fn random_element(&self, rng: &mut StdRng) -> WreathElement<F, A::Elem> {
        let terms = rng.gen_range(0..=3);
        let mut x = self.from_cohn(&cohn::random_element(self.base(), rng, terms, 2));
        for _ in 0..rng.gen_range(0..=2) {
            x = self.add(&x, &self.random_matrix_unit(rng, 3));
        }
        x
    }

    /// All monomials `pq*` of `Γ` with `len p + len q ≤ max_total`.
    pub fn monomials(&self, max_total: usize) -> Vec<Monomial> {
        let g = self.base();
        let paths = g.enumerate_paths(max_total);
        let mut out = Vec::new();
        for p in &paths {
            for q in paths.iter().filter(|q| q.range() == p.range() && p.len() + q.len() <= max_total) {
                out.push(Monomial::new(p.clone(), q.clone()).expect("common range"));
            }
        }
        out
    }
}

/// Reference configurations.
pub mod samples {
    use super::*;
    use crate::graph::samples::{loop_graph, three_vertex, toeplitz};

    /// The loop `c` at `v` with one bridge `e: v → idem`.
    pub fn loop_wreath<F: Field, A: CoefficientAlgebra<F>>(algebra: A, idem: &str) -> ExtendedGraph<F, A> {
        ExtendedGraph::new(loop_graph(), algebra, &[BridgeSpec::new("e", "v", idem)]).expect("valid")
    }

    /// `L(Γ(W)) wr L(Γ/W)` for the Toeplitz graph and `W = {v}`.
    pub fn toeplitz_w<F: Field>() -> ExtendedGraph<F, Leavitt> {
        let g = toeplitz();
        let w = g.subset(&["v"]).expect("vertex v");
        prop2::Prop2Setup::new(&g, &w).expect("hereditary and saturated").wreath
    }

    /// `L(Γ(W)) wr L(Γ/W)` for the three-vertex graph and `W = {v, w}`.
    pub fn three_vertex_w<F: Field>() -> ExtendedGraph<F, Leavitt> {
        let g = three_vertex();
        let w = g.hsat_closure(&g.subset(&["w"]).expect("vertex w")).expect("valid");
        prop2::Prop2Setup::new(&g, &w).expect("hereditary and saturated").wreath
    }
}

#[cfg(test)]
mod tests;
