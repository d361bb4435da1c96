//! The affine algebra `B = ⟨t, t⁻¹, a, (1)_{0,0}⟩` with `a = Σ (aᵢ)_{i,i}`:
//! explicit words showing `F[t, t⁻¹] + M_{ℕ×ℕ}(A) ⊆ B`, a band check showing
//! `B ⊆ F[t, t⁻¹] + M̃_{ℕ×ℕ}(A)`, and spans of bounded-degree products.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{AffineElement, Affinization, LazyAlgebra};
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::report::Report;
use crate::scalar::Field;

/// Largest degree accepted by [`affine_span`].
pub const AFFINE_SPAN_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BGen {
    T,
    TInv,
    A,
    E00,
}

impl fmt::Display for BGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BGen::T => "t",
            BGen::TInv => "tinv",
            BGen::A => "a",
            BGen::E00 => "(1)_{0,0}",
        })
    }
}

pub fn format_word(w: &[BGen]) -> String {
    if w.is_empty() {
        return "(empty)".into();
    }
    w.iter().map(BGen::to_string).collect::<Vec<_>>().join(" · ")
}

/// The four generators of `B`; `a` may be replaced, e.g. by a corrupted
/// diagonal.
pub struct AffineGenerators<F: Field, A: LazyAlgebra<F>> {
    pub t: AffineElement<F, A>,
    pub tinv: AffineElement<F, A>,
    pub a: AffineElement<F, A>,
    pub e00: AffineElement<F, A>,
}

impl<F: Field, A: LazyAlgebra<F>> AffineGenerators<F, A> {
    pub fn standard(aff: &Affinization<F, A>) -> Self {
        Self::with_a(aff, aff.generator_diagonal())
    }

    pub fn with_a(aff: &Affinization<F, A>, a: AffineElement<F, A>) -> Self {
        AffineGenerators {
            t: aff.t(),
            tinv: aff.tinv(),
            a,
            e00: aff.one_unit(0, 0),
        }
    }

    pub fn get(&self, g: BGen) -> &AffineElement<F, A> {
        match g {
            BGen::T => &self.t,
            BGen::TInv => &self.tinv,
            BGen::A => &self.a,
            BGen::E00 => &self.e00,
        }
    }

    pub fn all(&self) -> [&AffineElement<F, A>; 4] {
        [&self.t, &self.tinv, &self.a, &self.e00]
    }

    pub fn evaluate(&self, aff: &Affinization<F, A>, w: &[BGen]) -> AffineElement<F, A> {
        aff.product(w.iter().map(|&g| self.get(g)))
    }
}

/// `(1)_{i,k} = tⁱ·(1)_{0,0}·tinvᵏ`.
pub fn transporter(i: u64, k: u64) -> Vec<BGen> {
    let mut w = vec![BGen::T; i as usize];
    w.push(BGen::E00);
    w.extend(std::iter::repeat_n(BGen::TInv, k as usize));
    w
}

/// A word for `(a_{k₁}⋯a_{kₘ})_{i,j}`:
/// `(1)_{i,k₁}·a·(1)_{k₁,k₂}·a ⋯ a·(1)_{kₘ,j}`.
pub fn prop3_witness(i: u64, word: &[u64], j: u64) -> Vec<BGen> {
    let mut stops = vec![i];
    stops.extend(word);
    stops.push(j);
    let mut w = Vec::new();
    for (n, pair) in stops.windows(2).enumerate() {
        if n > 0 {
            w.push(BGen::A);
        }
        w.extend(transporter(pair[0], pair[1]));
    }
    w
}

/// A word for `tᵏ`; `t⁰ = v = tinv·t`.
pub fn laurent_witness(k: i64) -> Vec<BGen> {
    match k {
        0 => vec![BGen::TInv, BGen::T],
        k if k > 0 => vec![BGen::T; k as usize],
        k => vec![BGen::TInv; k.unsigned_abs() as usize],
    }
}

pub fn format_target(i: u64, word: &[u64], j: u64) -> String {
    let entry = if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|k| format!("a{k}")).collect::<Vec<_>>().join("·")
    };
    format!("({entry})_{{{i},{j}}}")
}

/// `(a_{k₁}⋯a_{kₘ})_{i,j}` built from the generators of `A`.
pub fn target<F: Field, A: LazyAlgebra<F>>(
    aff: &Affinization<F, A>,
    i: u64,
    word: &[u64],
    j: u64,
) -> Result<AffineElement<F, A>> {
    let alg = aff.algebra();
    let mut e = alg.one();
    for &k in word {
        let g = alg
            .generator(k as usize)
            .ok_or_else(|| Error::Invalid(format!("A has no generator a{k}")))?;
        e = alg.mul(&e, &g);
    }
    Ok(aff.unit(e, i, j))
}

fn index_words(letters: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| {
                (0..letters).map(move |k| {
                    let mut w2 = w.clone();
                    w2.push(k);
                    w2
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

type Visit<'a, F, A> = dyn FnMut(&[usize], &AffineElement<F, A>) + 'a;

/// Calls `visit` on the product of every nonempty word of length
/// `≤ degree`, reusing prefix products.
fn for_each_product<F: Field, A: LazyAlgebra<F>>(
    aff: &Affinization<F, A>,
    gens: &[&AffineElement<F, A>],
    degree: usize,
    visit: &mut Visit<'_, F, A>,
) {
    fn go<F: Field, A: LazyAlgebra<F>>(
        aff: &Affinization<F, A>,
        gens: &[&AffineElement<F, A>],
        degree: usize,
        word: &mut Vec<usize>,
        value: &AffineElement<F, A>,
        visit: &mut Visit<'_, F, A>,
    ) {
        visit(word, value);
        if word.len() == degree {
            return;
        }
        for (k, g) in gens.iter().enumerate() {
            word.push(k);
            go(aff, gens, degree, word, &aff.mul(value, g), visit);
            word.pop();
        }
    }
    if degree == 0 {
        return;
    }
    for (k, g) in gens.iter().enumerate() {
        let mut word = vec![k];
        go(aff, gens, degree, &mut word, g, visit);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpanKey<B> {
    Laurent(i64),
    Entry(u64, u64, B),
}

/// Linear span of all products of at most `degree` generators, compared
/// through their Laurent parts and their entries on an `n × n` window.
pub struct AffineSpan<F: Field, A: LazyAlgebra<F>> {
    pub basis: Vec<AffineElement<F, A>>,
    echelon: EchelonBasis<SpanKey<A::Basis>, F>,
    window: u64,
}

impl<F: Field, A: LazyAlgebra<F>> AffineSpan<F, A> {
    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn contains(&self, aff: &Affinization<F, A>, x: &AffineElement<F, A>) -> bool {
        self.echelon.contains(&coordinates(aff, x, self.window))
    }
}

pub fn coordinates<F: Field, A: LazyAlgebra<F>>(
    aff: &Affinization<F, A>,
    x: &AffineElement<F, A>,
    n: u64,
) -> BTreeMap<SpanKey<A::Basis>, F> {
    let alg = aff.algebra();
    let mut out: BTreeMap<SpanKey<A::Basis>, F> =
        x.laurent().iter().map(|(&k, c)| (SpanKey::Laurent(k), c.clone())).collect();
    for i in 0..n {
        for j in 0..n {
            for (b, c) in alg.coordinates(&x.matrix().entry(i, j)) {
                out.insert(SpanKey::Entry(i, j, b), c);
            }
        }
    }
    out
}

/// Basis of the span of products of `1..=degree` generators. The comparison
/// window is `window + degree` plus the largest finite-part index and band
/// width among the generators, so that every entry a product of `≤ degree`
/// generators can move into the `window × window` block is seen.
pub fn affine_span<F: Field, A: LazyAlgebra<F>>(
    aff: &Affinization<F, A>,
    gens: &[AffineElement<F, A>],
    degree: usize,
    window: u64,
) -> Result<AffineSpan<F, A>> {
    if degree > AFFINE_SPAN_CAP {
        return Err(Error::Invalid(format!("degree {degree} exceeds the span cap {AFFINE_SPAN_CAP}")));
    }
    let reach = gens
        .iter()
        .map(|g| {
            let m = g.matrix();
            m.finite_extent().map_or(0, |e| e + 1) + m.band_width().unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let n = window + degree as u64 + reach;
    let mut span = AffineSpan {
        basis: Vec::new(),
        echelon: EchelonBasis::new(),
        window: n,
    };
    let mut level: Vec<AffineElement<F, A>> = Vec::new();
    for d in 1..=degree {
        let candidates: Vec<AffineElement<F, A>> = if d == 1 {
            gens.to_vec()
        } else {
            level.iter().flat_map(|x| gens.iter().map(move |g| aff.mul(x, g))).collect()
        };
        level.clear();
        for x in candidates {
            if span.echelon.insert(&coordinates(aff, &x, n)) {
                span.basis.push(x.clone());
                level.push(x);
            }
        }
    }
    Ok(span)
}

/// Lower containment: every `tᵏ` with `|k| ≤ degree` and every
/// `(a_{k₁}⋯a_{kₘ})_{i,j}` with `m ≤ 2` and `i, j, kₗ < window` equals the
/// product of its witness word. Upper containment: every product of at most
/// `degree` generators has Laurent degrees and band offsets bounded by
/// `degree`. Witnesses longer than `degree` are counted but not failed.
pub fn prop3_check<F: Field, A: LazyAlgebra<F>>(
    aff: &Affinization<F, A>,
    gens: &AffineGenerators<F, A>,
    degree: usize,
    window: u64,
) -> Report {
    let mut report = Report::new();
    let d = degree as i64;

    let mut laurent_fail = None;
    for k in -d..=d {
        let w = laurent_witness(k);
        let value = gens.evaluate(aff, &w);
        if aff.eq_finite(&value, &aff.power(k)) != Some(true) {
            laurent_fail = Some(format!("t^{k} via {}", format_word(&w)));
            break;
        }
    }
    report.push(
        "laurent witnesses",
        laurent_fail.is_none(),
        laurent_fail.unwrap_or_else(|| format!("t^k for |k| <= {degree}")),
    );

    let letters = (0..window).take_while(|&k| aff.algebra().generator(k as usize).is_some()).count() as u64;
    let mut checked = 0;
    let mut within = 0;
    let mut longest = 0;
    let mut failure = None;
    'outer: for word in index_words(letters, 2) {
        for i in 0..window {
            for j in 0..window {
                let w = prop3_witness(i, &word, j);
                let expected = target(aff, i, &word, j).expect("letters index existing generators");
                let value = gens.evaluate(aff, &w);
                checked += 1;
                longest = longest.max(w.len());
                if w.len() <= degree {
                    within += 1;
                }
                if aff.eq_finite(&value, &expected) != Some(true) {
                    failure = Some(format!(
                        "{} via {} gives {}",
                        format_target(i, &word, j),
                        format_word(&w),
                        aff.format(&value)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.push(
        "lower containment",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{checked} matrix units, longest witness {longest}")),
    );
    let complete = if within == checked { "complete" } else { "incomplete" };
    report.push(
        "witnesses within degree",
        true,
        format!("{within} of {checked} ({complete})"),
    );

    let mut products = 0;
    let mut violation = None;
    let all = gens.all();
    for_each_product(aff, &all, degree, &mut |word, x| {
        products += 1;
        if violation.is_some() {
            return;
        }
        let laurent_ok = x.laurent().keys().all(|k| k.unsigned_abs() <= degree as u64);
        let band_ok = x.matrix().band_width().is_none_or(|b| b <= degree as u64);
        if !(laurent_ok && band_ok) {
            let w: Vec<BGen> = word.iter().map(|&k| [BGen::T, BGen::TInv, BGen::A, BGen::E00][k]).collect();
            violation = Some(format!("{} has offsets {:?}", format_word(&w), x.matrix().offsets()));
        }
    });
    report.push(
        "upper containment",
        violation.is_none(),
        violation.unwrap_or_else(|| format!("{products} products of degree <= {degree} banded")),
    );
    report
}

/// `a` with its diagonal entry at index `skip` replaced by zero.
pub fn corrupted_diagonal<F: Field, A: LazyAlgebra<F>>(aff: &Affinization<F, A>, skip: u64) -> AffineElement<F, A> {
    let alg = aff.algebra().clone();
    aff.diagonal(Arc::new(move |i| {
        if i == skip {
            alg.zero()
        } else {
            alg.generator(i as usize).unwrap_or_else(|| alg.zero())
        }
    }))
}
