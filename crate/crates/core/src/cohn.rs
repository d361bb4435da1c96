//! The path semigroup `S = {pq*} ∪ {0}` and the Cohn algebra `C(Γ) = F₀[S]`.
//!
//! A monomial `pq*` is stored as the pair of paths `(p, q)` with `r(p) = r(q)`.
//! The semigroup zero is represented by `None` wherever a product may vanish;
//! Cohn elements never store it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::lincomb::LinComb;
use crate::linalg;
use crate::scalar::Field;
use rand::rngs::StdRng;
use rand::Rng;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    p: Path,
    q: Path,
}

/// An element of `C(Γ)`: finite combination of monomials.
pub type CohnElement<F> = LinComb<Monomial, F>;

impl Monomial {
    pub fn new(p: Path, q: Path) -> Result<Monomial> {
        if p.range() != q.range() {
            return Err(Error::InvalidPath("pq* needs r(p) = r(q)".into()));
        }
        Ok(Monomial { p, q })
    }

    pub(crate) fn new_unchecked(p: Path, q: Path) -> Monomial {
        debug_assert_eq!(p.range(), q.range());
        Monomial { p, q }
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            p: Path::vertex(v),
            q: Path::vertex(v),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Monomial {
        Monomial::path(Path::edge(g, e))
    }

    pub fn ghost(g: &Graph, e: EdgeId) -> Monomial {
        Monomial::ghost_path(Path::edge(g, e))
    }

    /// `p = p·r(p)*`.
    pub fn path(p: Path) -> Monomial {
        let v = Path::vertex(p.range());
        Monomial { p, q: v }
    }

    /// `q* = r(q)·q*`.
    pub fn ghost_path(q: Path) -> Monomial {
        let v = Path::vertex(q.range());
        Monomial { p: v, q }
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    pub fn into_parts(self) -> (Path, Path) {
        (self.p, self.q)
    }

    /// The common range `r(p) = r(q)`.
    pub fn range(&self) -> VertexId {
        self.p.range()
    }

    /// `deg(pq*) = len(p) - len(q)`.
    pub fn degree(&self) -> i64 {
        self.p.len() as i64 - self.q.len() as i64
    }

    pub fn total_len(&self) -> usize {
        self.p.len() + self.q.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.p.is_vertex() && self.q.is_vertex()
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// `(pq*)(rs*)`: `p·r₁·s*` if `r = q·r₁`, `p·(s·q₁)*` if `q = r·q₁`,
    /// zero otherwise.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(r1) = other.p.strip_prefix(&self.q) {
            let p = self.p.concat(&r1).expect("r(q) = s(r₁)");
            return Some(Monomial { p, q: other.q.clone() });
        }
        if let Some(q1) = self.q.strip_prefix(&other.p) {
            let q = other.q.concat(&q1).expect("r(r) = s(q₁)");
            return Some(Monomial { p: self.p.clone(), q });
        }
        None
    }

    /// Sort key for printing: degree, `len(p)`, edge names of `p`, edge names
    /// of `q`, then the range vertex.
    pub fn canonical_key(&self, g: &Graph) -> (i64, usize, Vec<String>, Vec<String>, VertexId) {
        let names = |p: &Path| p.edges().iter().map(|&e| g.edge_name(e).to_string()).collect::<Vec<_>>();
        (self.degree(), self.p.len(), names(&self.p), names(&self.q), self.range())
    }

    /// Renders in the expression syntax: `c.c^*`, `v`, `f^*`.
    pub fn format(&self, g: &Graph) -> String {
        if self.is_vertex() {
            return g.vertex_name(self.range()).to_string();
        }
        let mut parts: Vec<String> = self.p.edges().iter().map(|&e| g.edge_name(e).to_string()).collect();
        parts.extend(self.q.edges().iter().rev().map(|&e| format!("{}^*", g.edge_name(e))));
        parts.join(".")
    }
}

/// Semigroup product, with `None` as the zero.
pub fn sg_mul(x: Option<&Monomial>, y: Option<&Monomial>) -> Option<Monomial> {
    x?.mul(y?)
}

/// Bilinear extension of the monomial product.
pub fn mul<F: Field>(x: &CohnElement<F>, y: &CohnElement<F>) -> CohnElement<F> {
    let mut out = CohnElement::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some(m) = a.mul(b) {
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
    }
    out
}

/// The involution `(pq*)* = qp*`, extended linearly.
pub fn star<F: Field>(x: &CohnElement<F>) -> CohnElement<F> {
    x.iter().map(|(m, c)| (m.star(), c.clone())).collect()
}

/// `CK(v)′ = v - Σ_{s(f) = v} ff*`.
pub fn ck_prime<F: Field>(g: &Graph, v: VertexId) -> Result<CohnElement<F>> {
    if g.is_sink(v) {
        return Err(Error::Sink(g.vertex_name(v).into()));
    }
    let mut out = CohnElement::basis(Monomial::vertex(v));
    for &f in g.out_edges(v) {
        let fp = Path::edge(g, f);
        out.add_term(Monomial::new_unchecked(fp.clone(), fp), -F::one());
    }
    Ok(out)
}

/// `p·CK(v)′·q*` expanded in the monomial basis, for `r(p) = r(q) = v`.
pub fn sandwich_ck_prime<F: Field>(g: &Graph, p: &Path, q: &Path) -> Result<CohnElement<F>> {
    let v = p.range();
    if q.range() != v {
        return Err(Error::InvalidPath("p and q must end at the same vertex".into()));
    }
    let ck = ck_prime::<F>(g, v)?;
    Ok(ck
        .iter()
        .map(|(m, c)| {
            let (a, b) = m.clone().into_parts();
            (Monomial::new_unchecked(p.concat(&a).unwrap(), q.concat(&b).unwrap()), c.clone())
        })
        .collect())
}

pub fn format<F: Field>(g: &Graph, x: &CohnElement<F>) -> String {
    x.format_with(|m| m.format(g), |m| m.canonical_key(g))
}

/// Generators `V ∪ E ∪ E*` of the Cohn presentation, as monomials.
pub fn generators(g: &Graph) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = g.vertices().map(Monomial::vertex).collect();
    out.extend(g.edges().map(|e| Monomial::edge(g, e)));
    out.extend(g.edges().map(|e| Monomial::ghost(g, e)));
    out
}

/// Checks every defining relation of `C(Γ)` on the generators and returns
/// the ones that fail, described in words.
pub fn relation_violations<F: Field>(g: &Graph) -> Vec<String> {
    let one = |m: Monomial| CohnElement::<F>::basis(m);
    let mut bad = Vec::new();
    let mut check = |what: String, lhs: CohnElement<F>, rhs: CohnElement<F>| {
        if lhs != rhs {
            bad.push(what);
        }
    };
    for v in g.vertices() {
        for w in g.vertices() {
            let lhs = mul(&one(Monomial::vertex(v)), &one(Monomial::vertex(w)));
            let rhs = if v == w { one(Monomial::vertex(v)) } else { CohnElement::zero() };
            check(format!("{} {}", g.vertex_name(v), g.vertex_name(w)), lhs, rhs);
        }
    }
    for e in g.edges() {
        let ee = one(Monomial::edge(g, e));
        let es = one(Monomial::ghost(g, e));
        let s = one(Monomial::vertex(g.source(e)));
        let r = one(Monomial::vertex(g.range(e)));
        let n = g.edge_name(e);
        check(format!("s({n}){n} = {n}"), mul(&s, &ee), ee.clone());
        check(format!("{n} r({n}) = {n}"), mul(&ee, &r), ee.clone());
        check(format!("{n}* s({n}) = {n}*"), mul(&es, &s), es.clone());
        check(format!("r({n}) {n}* = {n}*"), mul(&r, &es), es.clone());
        check(format!("{n}* {n} = r({n})"), mul(&es, &ee), r.clone());
        for f in g.edges().filter(|&f| f != e) {
            let ff = one(Monomial::edge(g, f));
            check(format!("{n}* {} = 0", g.edge_name(f)), mul(&es, &ff), CohnElement::zero());
        }
    }
    bad
}

/// One vertex's share of the data in the linear independence statement for
/// the elements `p·CK(v)′·q*`, `p′·CK(v)′`, `CK(v)′·q′*`, `CK(v)′`.
#[derive(Clone, Debug)]
pub struct CkFamily {
    pub vertex: VertexId,
    pub both: Vec<(Path, Path)>,
    pub left: Vec<Path>,
    pub right: Vec<Path>,
    pub bare: bool,
}

impl CkFamily {
    pub fn new(vertex: VertexId) -> Self {
        CkFamily {
            vertex,
            both: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            bare: false,
        }
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        let name = g.vertex_name(self.vertex);
        let check = |p: &Path| {
            if p.is_vertex() {
                Err(Error::Hypothesis(format!("paths must have length >= 1 (family at {name})")))
            } else if p.range() != self.vertex {
                Err(Error::Hypothesis(format!("path {} does not end at {name}", g.format_path(p))))
            } else {
                Ok(())
            }
        };
        for (p, q) in &self.both {
            check(p)?;
            check(q)?;
        }
        self.left.iter().try_for_each(check)?;
        self.right.iter().try_for_each(check)?;
        let distinct = |n: usize, m: usize, what: &str| {
            if n != m {
                Err(Error::Hypothesis(format!("duplicate {what} at {name}")))
            } else {
                Ok(())
            }
        };
        distinct(self.both.iter().collect::<std::collections::BTreeSet<_>>().len(), self.both.len(), "pairs")?;
        distinct(self.left.iter().collect::<std::collections::BTreeSet<_>>().len(), self.left.len(), "left paths")?;
        distinct(self.right.iter().collect::<std::collections::BTreeSet<_>>().len(), self.right.len(), "right paths")?;
        if g.is_sink(self.vertex) {
            return Err(Error::Sink(name.into()));
        }
        Ok(())
    }

    fn expansions<F: Field>(&self, g: &Graph) -> Result<Vec<CohnElement<F>>> {
        let v = Path::vertex(self.vertex);
        let mut out = Vec::new();
        for (p, q) in &self.both {
            out.push(sandwich_ck_prime(g, p, q)?);
        }
        for p in &self.left {
            out.push(sandwich_ck_prime(g, p, &v)?);
        }
        for q in &self.right {
            out.push(sandwich_ck_prime(g, &v, q)?);
        }
        if self.bare {
            out.push(sandwich_ck_prime(g, &v, &v)?);
        }
        Ok(out)
    }
}

/// Decides whether the listed elements `p·CK(v)′·q*` etc. are linearly
/// independent in `C(Γ)`, by exact rank of their expansions in the monomial
/// basis. Validates the distinctness/length/range hypotheses first.
pub fn ck_independence<F: Field>(g: &Graph, families: &[CkFamily]) -> Result<bool> {
    let mut seen = std::collections::BTreeSet::new();
    for fam in families {
        if !seen.insert(fam.vertex) {
            return Err(Error::Hypothesis(format!("vertex {} listed twice", g.vertex_name(fam.vertex))));
        }
        fam.validate(g)?;
    }
    let mut vectors: Vec<BTreeMap<Monomial, F>> = Vec::new();
    for fam in families {
        for x in fam.expansions::<F>(g)? {
            vectors.push(x.iter().map(|(m, c)| (m.clone(), c.clone())).collect());
        }
    }
    Ok(linalg::rank(&vectors) == vectors.len())
}

/// A random path ending at `v` with at most `len` edges.
pub fn random_path_into(g: &Graph, rng: &mut StdRng, v: VertexId, len: usize) -> Path {
    let mut p = Path::vertex(v);
    for _ in 0..len {
        let incoming = g.in_edges(p.source());
        if incoming.is_empty() {
            break;
        }
        let e = incoming[rng.gen_range(0..incoming.len())];
        p = Path::edge(g, e).concat(&p).unwrap();
    }
    p
}

/// Random combination of `terms` monomials with paths of length at most
/// `max_len`.
pub fn random_element<F: Field>(g: &Graph, rng: &mut StdRng, terms: usize, max_len: usize) -> CohnElement<F> {
    let mut out = CohnElement::zero();
    for _ in 0..terms {
        let v = VertexId(rng.gen_range(0..g.vertex_count()) as u32);
        let a = rng.gen_range(0..=max_len);
        let b = rng.gen_range(0..=max_len);
        let p = random_path_into(g, rng, v, a);
        let qq = random_path_into(g, rng, v, b);
        out.add_term(Monomial::new_unchecked(p, qq), Field::sample_nonzero(rng));
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;
    use crate::scalar::Q;
    use proptest::prelude::*;
    use rand::SeedableRng;

    type C = CohnElement<Q>;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn m(g: &Graph, p: &str, qq: &str) -> Monomial {
        Monomial::new(g.parse_path(p).unwrap(), g.parse_path(qq).unwrap()).unwrap()
    }

    #[test]
    fn semigroup_examples() {
        let g = loop_graph();
        // c*·c = v
        assert_eq!(m(&g, "v", "c").mul(&m(&g, "c", "v")), Some(m(&g, "v", "v")));
        // c·c = cc
        assert_eq!(m(&g, "c", "v").mul(&m(&g, "c", "v")), Some(m(&g, "c.c", "v")));
        let t = toeplitz();
        // c*·f = 0
        assert_eq!(m(&t, "u", "c").mul(&m(&t, "f", "v")), None);
        assert_eq!(sg_mul(None, Some(&m(&t, "u", "u"))), None);
    }

    #[test]
    fn star_examples() {
        let g = loop_graph();
        let c = C::basis(m(&g, "c", "v"));
        assert_eq!(star(&c), C::basis(m(&g, "v", "c")));
        let v = C::basis(m(&g, "v", "v"));
        assert_eq!(star(&v), v);
        let x = C::single(m(&g, "c", "c"), q(2));
        assert_eq!(star(&x), x);
    }

    #[test]
    fn product_examples() {
        let g = loop_graph();
        let c = C::basis(m(&g, "c", "v"));
        let ck = ck_prime::<Q>(&g, g.vertex("v").unwrap()).unwrap();
        assert!(mul(&ck, &c).is_zero());
        // e·e* stays a basis monomial in C(Γ)
        let cs = C::basis(m(&g, "v", "c"));
        assert_eq!(mul(&c, &cs), C::basis(m(&g, "c", "c")));
        assert!(mul(&c, &C::zero()).is_zero());
    }

    #[test]
    fn ck_prime_examples() {
        let g = loop_graph();
        let ck = ck_prime::<Q>(&g, g.vertex("v").unwrap()).unwrap();
        assert_eq!(format(&g, &ck), "v - c.c^*");
        let t = toeplitz();
        let ck = ck_prime::<Q>(&t, t.vertex("u").unwrap()).unwrap();
        assert_eq!(format(&t, &ck), "u - c.c^* - f.f^*");
        let l = line();
        assert!(matches!(ck_prime::<Q>(&l, l.vertex("v").unwrap()), Err(Error::Sink(_))));
    }

    #[test]
    fn relations_hold_on_samples() {
        for (name, g) in all() {
            assert!(relation_violations::<Q>(&g).is_empty(), "{name}");
        }
    }

    #[test]
    fn associativity_exhaustive() {
        for (name, g) in all() {
            let paths = g.enumerate_paths(3);
            let monos: Vec<Monomial> = paths
                .iter()
                .flat_map(|p| paths.iter().filter(|q| q.range() == p.range()).map(move |q| Monomial::new_unchecked(p.clone(), q.clone())))
                .filter(|m| m.total_len() <= 3)
                .collect();
            for a in &monos {
                for b in &monos {
                    let ab = a.mul(b);
                    for c in &monos {
                        let lhs = sg_mul(ab.as_ref(), Some(c));
                        let rhs = sg_mul(Some(a), b.mul(c).as_ref());
                        assert_eq!(lhs, rhs, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn grading_is_multiplicative() {
        for (_, g) in all() {
            let paths = g.enumerate_paths(3);
            let monos: Vec<Monomial> = paths
                .iter()
                .flat_map(|p| paths.iter().filter(|q| q.range() == p.range()).map(move |q| Monomial::new_unchecked(p.clone(), q.clone())))
                .collect();
            for a in &monos {
                for b in &monos {
                    if let Some(ab) = a.mul(b) {
                        assert_eq!(ab.degree(), a.degree() + b.degree());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn star_is_an_anti_automorphism(seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            for (_, g) in all() {
                let x: C = random_element(&g, &mut rng, 3, 3);
                let y: C = random_element(&g, &mut rng, 3, 3);
                prop_assert_eq!(star(&mul(&x, &y)), mul(&star(&y), &star(&x)));
            }
        }
    }

    #[test]
    fn ck_independence_examples() {
        let g = loop_graph();
        let v = g.vertex("v").unwrap();
        let c = g.parse_path("c").unwrap();
        let mut fam = CkFamily::new(v);
        fam.both.push((c.clone(), c.clone()));
        assert!(ck_independence::<Q>(&g, &[fam]).unwrap());
        assert!(ck_independence::<Q>(&g, &[]).unwrap());

        let t = toeplitz();
        let u = t.vertex("u").unwrap();
        let mut fam = CkFamily::new(u);
        fam.left.push(t.parse_path("c").unwrap());
        fam.bare = true;
        assert!(ck_independence::<Q>(&t, &[fam]).unwrap());
    }

    #[test]
    fn ck_independence_large_family() {
        let g = loop_graph();
        let v = g.vertex("v").unwrap();
        let paths: Vec<Path> = g.enumerate_paths(3).into_iter().filter(|p| !p.is_vertex()).collect();
        let mut fam = CkFamily::new(v);
        for p in &paths {
            for qq in &paths {
                fam.both.push((p.clone(), qq.clone()));
            }
        }
        fam.left = paths.clone();
        fam.right = paths.clone();
        fam.bare = true;
        assert!(ck_independence::<Q>(&g, &[fam]).unwrap());
    }

    #[test]
    fn ck_independence_hypotheses() {
        let g = loop_graph();
        let v = g.vertex("v").unwrap();
        let c = g.parse_path("c").unwrap();
        let mut dup = CkFamily::new(v);
        dup.left = vec![c.clone(), c.clone()];
        assert!(matches!(ck_independence::<Q>(&g, &[dup]), Err(Error::Hypothesis(_))));
        let mut short = CkFamily::new(v);
        short.left = vec![Path::vertex(v)];
        assert!(matches!(ck_independence::<Q>(&g, &[short]), Err(Error::Hypothesis(_))));
        let t = toeplitz();
        let mut wrong = CkFamily::new(t.vertex("u").unwrap());
        wrong.left = vec![t.parse_path("f").unwrap()];
        assert!(matches!(ck_independence::<Q>(&t, &[wrong]), Err(Error::Hypothesis(_))));
        assert!(matches!(
            ck_independence::<Q>(&g, &[CkFamily::new(v), CkFamily::new(v)]),
            Err(Error::Hypothesis(_))
        ));
    }
}
