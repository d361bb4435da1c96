//! A semigroup with zero acting on both sides of a pointed set `X`, and the
//! algebra `F₀[S] + M_{X×X}(A)` built from it.
//!
//! Products follow the rules
//!
//! ```text
//! s · a_{x,y} = a_{sx,y}   (0 if sx = x₀)
//! a_{x,y} · s = a_{x,ys}   (0 if ys = x₀)
//! a_{x,y} · b_{z,t} = δ_{y,z} (ab)_{x,t}
//! ```

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::coeff::CoefficientAlgebra;
use crate::lincomb::LinComb;
use crate::scalar::{display_negative, Field};

/// A semigroup `S ∪ {0}` acting on a pointed set. The semigroup zero is not
/// an element of `S`; products that vanish return `None`.
pub trait PointedBiset {
    type S: Clone + Ord + Hash + Debug;
    type X: Clone + Ord + Hash + Debug;

    fn s_mul(&self, a: &Self::S, b: &Self::S) -> Option<Self::S>;
    fn zero_point(&self) -> Self::X;
    fn act_left(&self, s: &Self::S, x: &Self::X) -> Self::X;
    fn act_right(&self, x: &Self::X, s: &Self::S) -> Self::X;
    fn sample_s(&self, rng: &mut StdRng) -> Self::S;
    fn sample_x(&self, rng: &mut StdRng) -> Self::X;
    fn format_s(&self, s: &Self::S) -> String;
    fn format_x(&self, x: &Self::X) -> String;
}

/// Element of `F₀[S] + M_{X×X}(A)`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionElement<F: Field, S: Ord, X: Ord, E> {
    pub semi: LinComb<S, F>,
    pub matrix: BTreeMap<(X, X), E>,
}

impl<F: Field, S: Ord + Clone, X: Ord + Clone, E: Clone> ActionElement<F, S, X, E> {
    pub fn zero() -> Self {
        ActionElement {
            semi: LinComb::zero(),
            matrix: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.semi.is_zero() && self.matrix.is_empty()
    }

    pub fn from_semi(semi: LinComb<S, F>) -> Self {
        ActionElement {
            semi,
            matrix: BTreeMap::new(),
        }
    }

    /// Number of stored terms (semigroup terms plus matrix entries).
    pub fn term_count(&self) -> usize {
        self.semi.len() + self.matrix.len()
    }
}

/// Adds `e` at `(x, y)`, dropping the entry if it becomes zero.
pub fn add_entry<F, A, X>(a: &A, m: &mut BTreeMap<(X, X), A::Elem>, x: X, y: X, e: &A::Elem)
where
    F: Field,
    A: CoefficientAlgebra<F>,
    X: Ord,
{
    if a.is_zero(e) {
        return;
    }
    let key = (x, y);
    let sum = match m.get(&key) {
        Some(old) => a.add(old, e),
        None => e.clone(),
    };
    if a.is_zero(&sum) {
        m.remove(&key);
    } else {
        m.insert(key, sum);
    }
}

pub fn matrix_unit<F, A, B>(a: &A, e: A::Elem, x: B::X, y: B::X) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut out = ActionElement::zero();
    add_entry(a, &mut out.matrix, x, y, &e);
    out
}

pub fn semigroup_element<F, A, B>(s: B::S) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    ActionElement::from_semi(LinComb::basis(s))
}

pub fn action_add<F, A, B>(
    a: &A,
    u: &ActionElement<F, B::S, B::X, A::Elem>,
    v: &ActionElement<F, B::S, B::X, A::Elem>,
) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut out = u.clone();
    out.semi.add_assign(&v.semi);
    for ((x, y), e) in &v.matrix {
        add_entry(a, &mut out.matrix, x.clone(), y.clone(), e);
    }
    out
}

pub fn action_scale<F, A, B>(
    a: &A,
    c: &F,
    u: &ActionElement<F, B::S, B::X, A::Elem>,
) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut out = ActionElement::from_semi(u.semi.scale(c));
    for ((x, y), e) in &u.matrix {
        add_entry(a, &mut out.matrix, x.clone(), y.clone(), &a.scale(c, e));
    }
    out
}

pub fn action_sub<F, A, B>(
    a: &A,
    u: &ActionElement<F, B::S, B::X, A::Elem>,
    v: &ActionElement<F, B::S, B::X, A::Elem>,
) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    action_add::<F, A, B>(a, u, &action_scale::<F, A, B>(a, &-F::one(), v))
}

/// The product in `F₀[S] + M_{X×X}(A)`.
pub fn action_mul<F, A, B>(
    b: &B,
    a: &A,
    u: &ActionElement<F, B::S, B::X, A::Elem>,
    v: &ActionElement<F, B::S, B::X, A::Elem>,
) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let x0 = b.zero_point();
    let mut out = ActionElement::zero();
    for (s, c) in &u.semi {
        for (t, d) in &v.semi {
            if let Some(st) = b.s_mul(s, t) {
                out.semi.add_term(st, c.clone() * d.clone());
            }
        }
        for ((x, y), e) in &v.matrix {
            let sx = b.act_left(s, x);
            if sx != x0 {
                add_entry(a, &mut out.matrix, sx, y.clone(), &a.scale(c, e));
            }
        }
    }
    for ((x, y), e) in &u.matrix {
        for (t, d) in &v.semi {
            let yt = b.act_right(y, t);
            if yt != x0 {
                add_entry(a, &mut out.matrix, x.clone(), yt, &a.scale(d, e));
            }
        }
        for ((_, w), f) in v.matrix.iter().filter(|((z, _), _)| z == y) {
            add_entry(a, &mut out.matrix, x.clone(), w.clone(), &a.mul(e, f));
        }
    }
    out
}

/// Renders `2*s + (a)_{x,y} - ...` with semigroup terms first.
pub fn format_element<F, A, B>(b: &B, a: &A, u: &ActionElement<F, B::S, B::X, A::Elem>) -> String
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut parts: Vec<String> = u
        .semi
        .iter()
        .map(|(s, c)| {
            let name = b.format_s(s);
            if c.is_one() {
                name
            } else if (-c.clone()).is_one() {
                format!("-{name}")
            } else {
                format!("{c}*{name}")
            }
        })
        .collect();
    for ((x, y), e) in &u.matrix {
        parts.push(format!("({})_{{{},{}}}", a.format(e), b.format_x(x), b.format_x(y)));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) if display_negative::<F>(&-F::one()) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            _ => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

/// Every violation of the pointed biset axioms on the given samples.
pub fn biset_axioms_check<B: PointedBiset>(b: &B, ss: &[B::S], xs: &[B::X]) -> Vec<String> {
    let x0 = b.zero_point();
    let mut out = Vec::new();
    let fs = |s: &B::S| b.format_s(s);
    let fx = |x: &B::X| b.format_x(x);
    for s in ss {
        if b.act_left(s, &x0) != x0 {
            out.push(format!("{}·x0 != x0", fs(s)));
        }
        if b.act_right(&x0, s) != x0 {
            out.push(format!("x0·{} != x0", fs(s)));
        }
        for x in xs {
            let xs_ = b.act_right(x, s);
            let back = b.act_left(s, &xs_);
            if back == x0 && xs_ != x0 || back != x0 && back != *x {
                out.push(format!("s(x s) is neither x nor x0 consistently for s = {}, x = {}", fs(s), fx(x)));
            }
            let sx = b.act_left(s, x);
            let back = b.act_right(&sx, s);
            if back == x0 && sx != x0 || back != x0 && back != *x {
                out.push(format!("(s x)s is neither x nor x0 consistently for s = {}, x = {}", fs(s), fx(x)));
            }
            for t in ss {
                let st = b.s_mul(s, t);
                let left = st.as_ref().map_or(x0.clone(), |st| b.act_left(st, x));
                if b.act_left(s, &b.act_left(t, x)) != left {
                    out.push(format!("{}({} {}) != ({} {}){}", fs(s), fs(t), fx(x), fs(s), fs(t), fx(x)));
                }
                let right = st.as_ref().map_or(x0.clone(), |st| b.act_right(x, st));
                if b.act_right(&b.act_right(x, s), t) != right {
                    out.push(format!("({} {}){} != {}({} {})", fx(x), fs(s), fs(t), fx(x), fs(s), fs(t)));
                }
            }
        }
    }
    out
}

/// Outcome of an associativity probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Random element with up to two semigroup terms and two matrix entries.
pub fn random_action_element<F, A, B>(b: &B, a: &A, rng: &mut StdRng) -> ActionElement<F, B::S, B::X, A::Elem>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut out = ActionElement::zero();
    for _ in 0..rng.gen_range(0..=2) {
        out.semi.add_term(b.sample_s(rng), F::sample_nonzero(rng));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let (x, y) = (b.sample_x(rng), b.sample_x(rng));
        add_entry(a, &mut out.matrix, x, y, &a.sample(rng));
    }
    out
}

type BisetElement<F, A, B> = ActionElement<F, <B as PointedBiset>::S, <B as PointedBiset>::X, <A as CoefficientAlgebra<F>>::Elem>;

fn single_terms<F, A, B>(u: &BisetElement<F, A, B>) -> Vec<BisetElement<F, A, B>>
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut out: Vec<_> = u
        .semi
        .iter()
        .map(|(s, c)| ActionElement::from_semi(LinComb::single(s.clone(), c.clone())))
        .collect();
    for (k, e) in &u.matrix {
        let mut m = BTreeMap::new();
        m.insert(k.clone(), e.clone());
        out.push(ActionElement {
            semi: LinComb::zero(),
            matrix: m,
        });
    }
    out
}

/// Checks `(uv)w = u(vw)` on `samples` random triples. A failure is reduced
/// to a triple of single terms, which exists by trilinearity.
pub fn associativity_probe<F, A, B>(b: &B, a: &A, samples: usize, seed: u64) -> ProbeReport
where
    F: Field,
    A: CoefficientAlgebra<F>,
    B: PointedBiset,
{
    let mut rng = StdRng::seed_from_u64(seed);
    let mul = |u: &ActionElement<_, _, _, _>, v: &ActionElement<_, _, _, _>| action_mul::<F, A, B>(b, a, u, v);
    for i in 0..samples {
        let u = random_action_element::<F, A, B>(b, a, &mut rng);
        let v = random_action_element::<F, A, B>(b, a, &mut rng);
        let w = random_action_element::<F, A, B>(b, a, &mut rng);
        if mul(&mul(&u, &v), &w) == mul(&u, &mul(&v, &w)) {
            continue;
        }
        let mut msg = "non-monomial counterexample".to_string();
        'search: for u1 in single_terms::<F, A, B>(&u) {
            for v1 in single_terms::<F, A, B>(&v) {
                for w1 in single_terms::<F, A, B>(&w) {
                    let lhs = mul(&mul(&u1, &v1), &w1);
                    let rhs = mul(&u1, &mul(&v1, &w1));
                    if lhs != rhs {
                        let f = |x: &ActionElement<_, _, _, _>| format_element::<F, A, B>(b, a, x);
                        msg = format!(
                            "({} · {}) · {} = {} but {} · ({} · {}) = {}",
                            f(&u1),
                            f(&v1),
                            f(&w1),
                            f(&lhs),
                            f(&u1),
                            f(&v1),
                            f(&w1),
                            f(&rhs)
                        );
                        break 'search;
                    }
                }
            }
        }
        return ProbeReport {
            checked: i + 1,
            counterexample: Some(msg),
        };
    }
    ProbeReport {
        checked: samples,
        counterexample: None,
    }
}

/// Matrix units `E_ij` of size `n` acting on `{1..n} ∪ {0}` by
/// `E_ij·k = δ_jk i` and `k·E_ij = δ_ki j`.
#[derive(Clone, Debug)]
pub struct MatrixUnitBiset {
    pub n: u32,
}

impl PointedBiset for MatrixUnitBiset {
    type S = (u32, u32);
    type X = u32;

    fn s_mul(&self, a: &(u32, u32), b: &(u32, u32)) -> Option<(u32, u32)> {
        (a.1 == b.0).then_some((a.0, b.1))
    }
    fn zero_point(&self) -> u32 {
        0
    }
    fn act_left(&self, s: &(u32, u32), x: &u32) -> u32 {
        if *x == s.1 {
            s.0
        } else {
            0
        }
    }
    fn act_right(&self, x: &u32, s: &(u32, u32)) -> u32 {
        if *x == s.0 {
            s.1
        } else {
            0
        }
    }
    fn sample_s(&self, rng: &mut StdRng) -> (u32, u32) {
        (rng.gen_range(1..=self.n), rng.gen_range(1..=self.n))
    }
    fn sample_x(&self, rng: &mut StdRng) -> u32 {
        rng.gen_range(0..=self.n)
    }
    fn format_s(&self, s: &(u32, u32)) -> String {
        format!("E{}{}", s.0, s.1)
    }
    fn format_x(&self, x: &u32) -> String {
        if *x == 0 {
            "x0".into()
        } else {
            x.to_string()
        }
    }
}

impl MatrixUnitBiset {
    pub fn all_s(&self) -> Vec<(u32, u32)> {
        (1..=self.n).flat_map(|i| (1..=self.n).map(move |j| (i, j))).collect()
    }

    pub fn all_x(&self) -> Vec<u32> {
        (0..=self.n).collect()
    }
}

/// Wraps a biset so that the left action of every `s` sends each live
/// point to the same fixed point. Used as a negative control.
#[derive(Clone, Debug)]
pub struct CorruptedBiset<B: PointedBiset> {
    pub inner: B,
    pub fixed: B::X,
}

impl<B: PointedBiset> PointedBiset for CorruptedBiset<B> {
    type S = B::S;
    type X = B::X;

    fn s_mul(&self, a: &B::S, b: &B::S) -> Option<B::S> {
        self.inner.s_mul(a, b)
    }
    fn zero_point(&self) -> B::X {
        self.inner.zero_point()
    }
    fn act_left(&self, _s: &B::S, x: &B::X) -> B::X {
        if *x == self.inner.zero_point() {
            x.clone()
        } else {
            self.fixed.clone()
        }
    }
    fn act_right(&self, x: &B::X, s: &B::S) -> B::X {
        self.inner.act_right(x, s)
    }
    fn sample_s(&self, rng: &mut StdRng) -> B::S {
        self.inner.sample_s(rng)
    }
    fn sample_x(&self, rng: &mut StdRng) -> B::X {
        self.inner.sample_x(rng)
    }
    fn format_s(&self, s: &B::S) -> String {
        self.inner.format_s(s)
    }
    fn format_x(&self, x: &B::X) -> String {
        self.inner.format_x(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{DiagonalAlgebra, PolyAlgebra, ScalarAlgebra};
    use crate::scalar::{Gf, Q};

    type B = MatrixUnitBiset;
    const MU: MatrixUnitBiset = MatrixUnitBiset { n: 3 };

    fn corrupted() -> CorruptedBiset<B> {
        CorruptedBiset { inner: MU, fixed: 1 }
    }

    #[test]
    fn matrix_unit_biset_axioms() {
        assert!(biset_axioms_check(&MU, &MU.all_s(), &MU.all_x()).is_empty());
        assert!(biset_axioms_check(&MU, &[], &[]).is_empty());
    }

    #[test]
    fn corrupted_biset_fails_cancellation() {
        let report = biset_axioms_check(&corrupted(), &MU.all_s(), &MU.all_x());
        assert!(report.iter().any(|r| r.starts_with("s(x s)")), "{report:?}");
    }

    #[test]
    fn product_rules() {
        let a = ScalarAlgebra;
        let two = Q::from_i64(2);
        // E12 · 1 = x0, so E12 · a_{1,2} = 0
        let s = semigroup_element::<Q, ScalarAlgebra, B>((1, 2));
        let m = matrix_unit::<Q, _, B>(&a, two.clone(), 1, 2);
        assert!(action_mul(&MU, &a, &s, &m).is_zero());
        // E21 · a_{1,2} = a_{2,2}
        let s = semigroup_element::<Q, ScalarAlgebra, B>((2, 1));
        assert_eq!(action_mul(&MU, &a, &s, &m), matrix_unit::<Q, _, B>(&a, two.clone(), 2, 2));
        // a_{x,y} a_{y,z} = (a²)_{x,z}
        let m2 = matrix_unit::<Q, _, B>(&a, two.clone(), 2, 3);
        assert_eq!(action_mul(&MU, &a, &m, &m2), matrix_unit::<Q, _, B>(&a, Q::from_i64(4), 1, 3));
        assert!(action_mul(&MU, &a, &m2, &m).is_zero());
        // a_{x,x0} · s = 0
        let m0 = matrix_unit::<Q, _, B>(&a, two, 1, 0);
        for s in MU.all_s() {
            let s = semigroup_element::<Q, ScalarAlgebra, B>(s);
            assert!(action_mul(&MU, &a, &m0, &s).is_zero());
        }
    }

    #[test]
    fn semigroup_part_multiplies() {
        let a = ScalarAlgebra;
        let s = semigroup_element::<Q, ScalarAlgebra, B>((1, 2));
        let t = semigroup_element::<Q, ScalarAlgebra, B>((2, 3));
        assert_eq!(action_mul(&MU, &a, &s, &t), semigroup_element::<Q, ScalarAlgebra, B>((1, 3)));
        assert!(action_mul(&MU, &a, &t, &s).is_zero());
    }

    #[test]
    fn formatting() {
        let a = ScalarAlgebra;
        let s = semigroup_element::<Q, ScalarAlgebra, B>((1, 2));
        let m = matrix_unit::<Q, _, B>(&a, Q::from_i64(3), 1, 0);
        let x = action_sub::<Q, _, B>(&a, &s, &m);
        assert_eq!(format_element(&MU, &a, &x), "E12 + (-3)_{1,x0}");
        assert_eq!(format_element(&MU, &a, &ActionElement::<Q, _, _, Q>::zero()), "0");
    }

    #[test]
    fn associativity_on_matrix_units() {
        assert!(associativity_probe::<Q, _, _>(&MU, &ScalarAlgebra, 10_000, 42).passed());
        assert!(associativity_probe::<Q, _, _>(&MU, &PolyAlgebra, 2_000, 7).passed());
        assert!(associativity_probe::<Gf<7>, _, _>(&MU, &DiagonalAlgebra::new(vec!["a".into(), "b".into()]), 2_000, 8).passed());
        assert_eq!(associativity_probe::<Q, _, _>(&MU, &ScalarAlgebra, 0, 1).checked, 0);
    }

    #[test]
    fn corrupted_biset_breaks_associativity() {
        let r = associativity_probe::<Q, _, _>(&corrupted(), &ScalarAlgebra, 10_000, 42);
        let msg = r.counterexample.expect("counterexample");
        // reduced to single terms, one of them a semigroup element
        assert!(msg.contains('E'), "{msg}");
    }
}
