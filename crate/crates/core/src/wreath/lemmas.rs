//! Report-producing probes for the structural lemmas of `A wr L(Γ)`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{BridgeBiset, BridgeIndex, ExtendedGraph, RawWreath};
use crate::action::{self, biset_axioms_check, ActionElement};
use crate::coeff::CoefficientAlgebra;
use crate::cohn::{random_path_into, Monomial};
use crate::graph::VertexId;
use crate::lincomb::LinComb;
use crate::report::Report;
use crate::scalar::Field;

/// `s·x` and `x·s` land in the bridge paths or `x₀` for every monomial `s`
/// with total length `≤ s_len` and index `x` with length `≤ x_len`, and the
/// pointed biset axioms hold on the same samples.
pub fn action_closure_check<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    s_len: usize,
    x_len: usize,
) -> Report {
    let ss = eg.monomials(s_len);
    let xs = eg.enumerate_bridge_paths(x_len);
    let g = eg.base();
    let valid = |x: &BridgeIndex| match x {
        BridgeIndex::Zero => true,
        BridgeIndex::Path(p) => eg.parse_index(&eg.tilde().format_path(p)).is_ok(),
    };
    let mut bad = None;
    'outer: for s in &ss {
        for x in &xs {
            for y in [eg.act_left(s, x), eg.act_right(x, s)] {
                if !valid(&y) {
                    bad = Some(format!("{} acting on {}", s.format(g), eg.format_index(x)));
                    break 'outer;
                }
            }
        }
    }
    let mut report = Report::new();
    let pairs = ss.len() * xs.len();
    report.push(
        "action closure",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{pairs} pairs, |s| <= {s_len}, |x| <= {x_len}")),
    );
    let violations = biset_axioms_check(&eg.biset(), &ss, &xs);
    report.push(
        "biset axioms",
        violations.is_empty(),
        violations
            .first()
            .cloned()
            .unwrap_or_else(|| format!("{} monomials, {} indices", ss.len(), xs.len())),
    );
    report
}

/// `CK(v)·m = 0 = m·CK(v)` for every non-sink `v` and every matrix unit `m`
/// with indices of length `≤ index_len` and a random corner entry.
pub fn ck_annihilation_check<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    index_len: usize,
    seed: u64,
) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let g = eg.base();
    let xs = eg.enumerate_bridge_paths(index_len);
    let mut checked = 0;
    let mut bad = None;
    'outer: for v in g.vertices().filter(|&v| !g.is_sink(v)) {
        let ck = eg.ck_full(v).expect("non-sink");
        for x in &xs {
            for y in &xs {
                let a = eg.corner_projection(x, y, &eg.algebra().sample(&mut rng));
                let m = eg.matrix_unit(a, x.clone(), y.clone()).expect("projected").raw();
                checked += 1;
                if !eg.raw_mul(&ck, &m).is_zero() || !eg.raw_mul(&m, &ck).is_zero() {
                    bad = Some(format!(
                        "CK({}) with ({}, {})",
                        g.vertex_name(v),
                        eg.format_index(x),
                        eg.format_index(y)
                    ));
                    break 'outer;
                }
            }
        }
    }
    let mut report = Report::new();
    report.push(
        "CK annihilates matrix units",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{checked} units, index length <= {index_len}")),
    );
    report
}

/// Random `Σ α·p·CK(v)·q*` with `|p|, |q| ≤ 3`.
pub fn random_j_element<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    rng: &mut StdRng,
) -> RawWreath<F, A::Elem> {
    let g = eg.base();
    let non_sinks: Vec<VertexId> = g.vertices().filter(|&v| !g.is_sink(v)).collect();
    let mut j = RawWreath::<F, A::Elem>::zero();
    if non_sinks.is_empty() {
        return j;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let v = non_sinks[rng.gen_range(0..non_sinks.len())];
        let (lp, lq) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let p = random_path_into(g, rng, v, lp);
        let q = random_path_into(g, rng, v, lq);
        let left = ActionElement::from_semi(LinComb::basis(Monomial::path(p)));
        let right = ActionElement::from_semi(LinComb::basis(Monomial::ghost_path(q)));
        let term = eg.raw_mul(&eg.raw_mul(&left, &eg.ck_full(v).expect("non-sink")), &right);
        let alpha = F::sample(rng);
        let scaled = action::action_scale::<F, A, BridgeBiset<F, A>>(eg.algebra(), &alpha, &term);
        j = action::action_add::<F, A, BridgeBiset<F, A>>(eg.algebra(), &j, &scaled);
    }
    j
}

/// `count` random elements of `J` have normal form zero.
pub fn j_reduction_check<F: Field, A: CoefficientAlgebra<F>>(
    eg: &ExtendedGraph<F, A>,
    count: usize,
    seed: u64,
) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut bad = None;
    let mut nontrivial = 0;
    for i in 0..count {
        let j = random_j_element(eg, &mut rng);
        if !j.is_zero() {
            nontrivial += 1;
        }
        match eg.normal_form(&j) {
            Ok(x) if x.is_zero() => {}
            Ok(x) => {
                bad = Some(format!("sample {i} reduces to {}", eg.format(&x)));
                break;
            }
            Err(e) => {
                bad = Some(format!("sample {i}: {e}"));
                break;
            }
        }
    }
    let mut report = Report::new();
    report.push(
        "J reduces to zero",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{count} elements, {nontrivial} nonzero before reduction")),
    );
    report
}

/// On `count` random pairs: the Leavitt part is multiplicative, products
/// respect the corners, matrix elements form a two-sided ideal, and the
/// product is associative.
pub fn quotient_check<F: Field, A: CoefficientAlgebra<F>>(eg: &ExtendedGraph<F, A>, count: usize, seed: u64) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let l = eg.leavitt();
    let mut fails: [Option<String>; 4] = Default::default();
    let mut note = |k: usize, msg: String| {
        if fails[k].is_none() {
            fails[k] = Some(msg);
        }
    };
    for i in 0..count {
        let x = eg.random_element(&mut rng);
        let y = eg.random_element(&mut rng);
        let xy = eg.mul(&x, &y);
        if xy.leavitt() != &l.mul(x.leavitt(), y.leavitt()) {
            note(0, format!("sample {i}: {} · {}", eg.format(&x), eg.format(&y)));
        }
        if let Err(e) = eg.check_corners(xy.matrix()) {
            note(1, format!("sample {i}: {e}"));
        }
        let m = eg.random_matrix_unit(&mut rng, 3);
        if !eg.mul(&m, &y).is_pure_matrix() || !eg.mul(&x, &m).is_pure_matrix() {
            note(2, format!("sample {i}: {}", eg.format(&m)));
        }
        let z = eg.random_element(&mut rng);
        if eg.mul(&xy, &z) != eg.mul(&x, &eg.mul(&y, &z)) {
            note(3, format!("sample {i}"));
        }
    }
    let names = ["quotient multiplicative", "corners preserved", "matrix ideal", "associative"];
    let mut report = Report::new();
    for (name, fail) in names.into_iter().zip(fails) {
        report.push(name, fail.is_none(), fail.unwrap_or_else(|| format!("{count} samples")));
    }
    report
}
