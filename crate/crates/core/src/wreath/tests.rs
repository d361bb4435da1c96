use rand::SeedableRng;

use super::lemmas::*;
use super::prop1::{prop1_check, prop1_generators};
use super::prop2::{balloon_iso_check, prop2_verify, Prop2Setup};
use super::samples::*;
use super::*;
use crate::action::associativity_probe;
use crate::coeff::{DiagonalAlgebra, PolyAlgebra, ScalarAlgebra};
use crate::coeff::poly::Poly;
use crate::report::Report;
use crate::graph::samples::{line, loop_graph, three_vertex, toeplitz, two_cycle};
use crate::scalar::Q;

type LoopEg = ExtendedGraph<Q, ScalarAlgebra>;

fn lw() -> LoopEg {
    loop_wreath(ScalarAlgebra, "1")
}

fn mono<F: Field, A: CoefficientAlgebra<F>>(eg: &ExtendedGraph<F, A>, p: &str, q: &str) -> Monomial {
    let g = eg.base();
    Monomial::new(g.parse_path(p).unwrap(), g.parse_path(q).unwrap()).unwrap()
}

fn idx<F: Field, A: CoefficientAlgebra<F>>(eg: &ExtendedGraph<F, A>, s: &str) -> BridgeIndex {
    eg.parse_index(s).unwrap()
}

fn unit(eg: &LoopEg, p: &str, q: &str) -> WreathElement<Q, Q> {
    eg.matrix_unit(Q::from_i64(1), idx(eg, p), idx(eg, q)).unwrap()
}

#[test]
fn extension_validation() {
    let eg = lw();
    assert_eq!(eg.bridges().len(), 1);
    let err = ExtendedGraph::<Q, _>::new(line(), ScalarAlgebra, &[BridgeSpec::new("e", "v", "1")]).unwrap_err();
    assert!(matches!(err, Error::BridgeAtSink { .. }));
    let err = ExtendedGraph::<Q, _>::new(loop_graph(), ScalarAlgebra, &[BridgeSpec::new("e", "v", "2")]).unwrap_err();
    assert_eq!(err, Error::UnknownIdempotent("2".into()));
    let err = ExtendedGraph::<Q, _>::new(loop_graph(), ScalarAlgebra, &[BridgeSpec::new("c", "v", "1")]).unwrap_err();
    assert_eq!(err, Error::DuplicateId("c".into()));
    let empty = ExtendedGraph::<Q, _>::new(loop_graph(), ScalarAlgebra, &[]).unwrap();
    assert_eq!(empty.enumerate_bridge_paths(3), vec![BridgeIndex::Zero]);
}

#[test]
fn extension_file() {
    let ext = Extension::parse("# loop\nidem 1\nbridge e v 1\n").unwrap();
    assert_eq!(ext.idempotents, ["1"]);
    assert_eq!(ext.bridges, [BridgeSpec::new("e", "v", "1")]);
    assert!(matches!(Extension::parse("idem\n"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(Extension::parse("idem a\nfoo\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(Extension::parse("idem a\nidem a\n"), Err(Error::Parse { line: 2, .. })));
}

#[test]
fn bridge_path_enumeration() {
    let eg = lw();
    let names = |v: Vec<BridgeIndex>| v.iter().map(|x| eg.format_index(x)).collect::<Vec<_>>();
    assert_eq!(names(eg.enumerate_bridge_paths(3)), ["0", "e", "c.e", "c.c.e"]);
    assert_eq!(names(eg.enumerate_bridge_paths(1)), ["0", "e"]);
    let t = toeplitz_w::<Q>();
    let names: Vec<String> = t.enumerate_bridge_paths(3).iter().map(|x| t.format_index(x)).collect();
    assert_eq!(names, ["0", "f", "c.f", "c.c.f"]);
}

#[test]
fn index_parsing() {
    let eg = lw();
    assert_eq!(idx(&eg, "0"), BridgeIndex::Zero);
    assert_eq!(eg.format_index(&idx(&eg, "c.e")), "c.e");
    assert!(eg.parse_index("c").is_err());
    assert!(eg.parse_index("e.c").is_err());
}

#[test]
fn actions() {
    let eg = lw();
    let e = idx(&eg, "e");
    assert_eq!(eg.act_left(&mono(&eg, "c", "v"), &e), idx(&eg, "c.e"));
    assert_eq!(eg.act_left(&mono(&eg, "v", "c"), &e), BridgeIndex::Zero);
    assert_eq!(eg.act_left(&mono(&eg, "c", "c"), &idx(&eg, "c.e")), idx(&eg, "c.e"));
    assert_eq!(eg.act_right(&idx(&eg, "c.e"), &mono(&eg, "c", "v")), e);
    assert_eq!(eg.act_left(&mono(&eg, "c", "v"), &BridgeIndex::Zero), BridgeIndex::Zero);
}

#[test]
fn ck_full_examples() {
    let eg = lw();
    let ck = eg.ck_full(VertexId(0)).unwrap();
    assert_eq!(cohn::format(eg.base(), &ck.semi), "v - c.c^*");
    assert_eq!(ck.matrix.len(), 1);
    assert_eq!(ck.matrix[&(idx(&eg, "e"), idx(&eg, "e"))], Q::from_i64(-1));
    let no_bridge = ExtendedGraph::<Q, _>::new(loop_graph(), ScalarAlgebra, &[]).unwrap();
    assert!(no_bridge.ck_full(VertexId(0)).unwrap().matrix.is_empty());
    let t = toeplitz_w::<Q>();
    assert!(t.ck_full(VertexId(0)).is_ok());
    let three = ExtendedGraph::<Q, _>::new(toeplitz(), ScalarAlgebra, &[]).unwrap();
    assert!(matches!(three.ck_full(three.base().vertex("v").unwrap()), Err(Error::Sink(_))));
}

#[test]
fn normal_form_examples() {
    let eg = lw();
    assert_eq!(eg.format(&eg.monomial(mono(&eg, "c", "c"))), "v - [1 @ e, e]");
    assert_eq!(eg.format(&eg.monomial(mono(&eg, "c.c", "c.c"))), "v - [1 @ e, e] - [1 @ c.e, c.e]");
    let x = eg.add(&eg.monomial(mono(&eg, "c", "v")), &unit(&eg, "e", "0"));
    assert_eq!(eg.normal_form(&x.raw()).unwrap(), x);
    assert_eq!(eg.format(&x), "c + [1 @ e, 0]");
}

#[test]
fn product_examples() {
    let eg = lw();
    let c = eg.monomial(mono(&eg, "c", "v"));
    let cs = eg.monomial(mono(&eg, "v", "c"));
    let ee = unit(&eg, "e", "e");
    assert_eq!(eg.mul(&c, &ee), unit(&eg, "c.e", "e"));
    assert_eq!(eg.mul(&ee, &ee), ee);
    assert_eq!(eg.format(&eg.mul(&cs, &c)), "v");
    assert_eq!(eg.format(&eg.mul(&c, &cs)), "v - [1 @ e, e]");
    let ck = eg.ck_full(VertexId(0)).unwrap();
    for m in [unit(&eg, "e", "e"), unit(&eg, "c.e", "0"), unit(&eg, "0", "e")] {
        assert!(eg.normal_form(&eg.raw_mul(&ck, &m.raw())).unwrap().is_zero());
        assert!(eg.normal_form(&eg.raw_mul(&m.raw(), &ck)).unwrap().is_zero());
    }
}

#[test]
fn corner_constraint() {
    let eg = ExtendedGraph::<Q, _>::new(
        toeplitz(),
        DiagonalAlgebra::new(vec!["a".into(), "b".into()]),
        &[BridgeSpec::new("e1", "u", "a"), BridgeSpec::new("e2", "u", "b")],
    )
    .unwrap();
    let e1 = idx(&eg, "e1");
    let e2 = idx(&eg, "e2");
    let a = eg.algebra().unit::<Q>(0);
    assert!(eg.matrix_unit(a.clone(), e1.clone(), e1.clone()).is_ok());
    assert!(eg.matrix_unit(a.clone(), BridgeIndex::Zero, e1.clone()).is_ok());
    assert!(matches!(eg.matrix_unit(a, e1, e2), Err(Error::CornerViolation { .. })));
}

fn assert_pass(report: Report) {
    assert!(report.passed(), "{report}");
}

#[test]
fn bridge_action_closure_and_biset_axioms() {
    assert_pass(action_closure_check(&lw(), 8, 4));
    assert_pass(action_closure_check(&toeplitz_w::<Q>(), 8, 4));
    assert_pass(action_closure_check(&three_vertex_w::<Q>(), 4, 4));
}

#[test]
fn associativity_on_wreath_bisets() {
    let eg = lw();
    assert!(associativity_probe::<Q, _, _>(&eg.biset(), eg.algebra(), 1000, 42).passed());
    let t = toeplitz_w::<Q>();
    assert!(associativity_probe::<Q, _, _>(&t.biset(), t.algebra(), 300, 43).passed());
}

#[test]
fn ck_annihilates_matrix_units() {
    assert_pass(ck_annihilation_check(&lw(), 4, 1));
    assert_pass(ck_annihilation_check(&loop_wreath::<Q, _>(PolyAlgebra, "1"), 4, 2));
    assert_pass(ck_annihilation_check(&toeplitz_w::<Q>(), 4, 3));
    assert_pass(ck_annihilation_check(&three_vertex_w::<Q>(), 4, 4));
}

#[test]
fn random_elements_of_j_reduce_to_zero() {
    assert_pass(j_reduction_check(&lw(), 200, 5));
    assert_pass(j_reduction_check(&toeplitz_w::<Q>(), 100, 6));
    assert_pass(j_reduction_check(&three_vertex_w::<Q>(), 100, 7));
}

#[test]
fn strategy_independence() {
    let eg = lw();
    let mut rng = StdRng::seed_from_u64(8);
    for i in 0..200 {
        let x = eg.random_element(&mut rng);
        let y = eg.random_element(&mut rng);
        let raw = eg.raw_mul(&x.raw(), &y.raw());
        let a = eg.normal_form(&raw).unwrap();
        assert_eq!(eg.normal_form_with_strategy(&raw, Strategy::Random(i)).unwrap(), a);
        assert_eq!(eg.normal_form_with_strategy(&raw, Strategy::Last).unwrap(), a);
    }
}

#[test]
fn quotient_is_leavitt_and_matrices_form_an_ideal() {
    assert_pass(quotient_check(&lw(), 300, 9));
    assert_pass(quotient_check(&loop_wreath::<Q, _>(PolyAlgebra, "1"), 100, 10));
    assert_pass(quotient_check(&toeplitz_w::<Q>(), 100, 11));
    assert_pass(quotient_check(&three_vertex_w::<Q>(), 100, 12));
}

#[test]
fn prop1_generator_list() {
    let eg = loop_wreath::<Q, _>(PolyAlgebra, "1");
    let gens = prop1_generators(&eg, &[Poly::var()]);
    assert_eq!(gens.names, ["v", "c", "c^*", "[x @ 0, 0]", "[1 @ e, 0]", "[1 @ 0, e]"]);
    let bare = prop1_generators(&eg, &[]);
    assert_eq!(bare.names, ["v", "c", "c^*", "[1 @ e, 0]", "[1 @ 0, e]"]);
    let two = ExtendedGraph::<Q, _>::new(
        loop_graph(),
        DiagonalAlgebra::new(vec!["a".into(), "b".into()]),
        &[BridgeSpec::new("e1", "v", "a"), BridgeSpec::new("e2", "v", "b")],
    )
    .unwrap();
    let names = prop1_generators(&two, &[]).names;
    assert_eq!(names, ["v", "c", "c^*", "[a @ e1, 0]", "[a @ 0, e1]", "[b @ e2, 0]", "[b @ 0, e2]"]);
}

#[test]
fn prop1_loop_with_polynomials() {
    let eg = loop_wreath::<Q, _>(PolyAlgebra, "1");
    let r = prop1_check(&eg, &[Poly::var()], 3, 2, 8);
    assert!(r.passed(), "{r}");
}

#[test]
fn prop1_with_two_idempotents() {
    let eg = ExtendedGraph::<Q, _>::new(
        toeplitz(),
        DiagonalAlgebra::new(vec!["a".into(), "b".into()]),
        &[BridgeSpec::new("e1", "u", "a"), BridgeSpec::new("e2", "u", "b")],
    )
    .unwrap();
    let gens: Vec<Vec<Q>> = vec![eg.algebra().unit(0), eg.algebra().unit(1)];
    let r = prop1_check(&eg, &gens, 2, 1, 8);
    assert!(r.passed(), "{r}");
}

#[test]
fn prop2_examples() {
    let g = toeplitz();
    let w = g.subset(&["v"]).unwrap();
    let s = Prop2Setup::<Q>::new(&g, &w).unwrap();
    let l = &s.leavitt;
    let m = |p: &str, q: &str| l.from_monomial::<Q>(Monomial::new(g.parse_path(p).unwrap(), g.parse_path(q).unwrap()).unwrap());
    let eg = &s.wreath;

    let parts = s.decompose(&m("f", "v"));
    assert_eq!(parts.b.len(), 1);
    let (p, bp) = parts.b.iter().next().unwrap();
    assert_eq!(eg.format_index(p), "f");
    assert_eq!(eg.algebra().format(bp), "v");
    assert_eq!(eg.format(&s.phi(&m("f", "v"))), "[v @ f, 0]");

    let parts = s.decompose(&m("u", "u"));
    assert_eq!(cohn::format(eg.base(), &parts.a_prime), "u");
    assert_eq!(eg.format(&s.phi(&m("u", "u"))), "u");

    assert_eq!(eg.format(&s.phi(&m("f", "f"))), "[v @ f, f]");
    assert_eq!(eg.format(&s.phi(&m("v", "v"))), "[v @ 0, 0]");
    assert_eq!(eg.format(&s.phi(&m("c", "c"))), "u - [v @ f, f]");
}

#[test]
fn prop2_verification() {
    let g = toeplitz();
    let r = prop2_verify::<Q>(&g, &g.subset(&["v"]).unwrap(), 4, 100, 7).unwrap();
    assert!(r.passed(), "{r}");
    let g = three_vertex();
    let w = g.hsat_closure(&g.subset(&["w"]).unwrap()).unwrap();
    assert_eq!(g.subset_names(&w), ["v", "w"]);
    let r = prop2_verify::<Q>(&g, &w, 4, 50, 7).unwrap();
    assert!(r.passed(), "{r}");
    let bad = g.subset(&["v"]).unwrap();
    assert_eq!(prop2_verify::<Q>(&g, &bad, 4, 10, 7).unwrap_err(), Error::NotHereditarySaturated);
}

#[test]
fn balloons() {
    let r = balloon_iso_check::<Q>(&toeplitz(), "u", 4, 50, 1).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(
        balloon_iso_check::<Q>(&two_cycle(), "u", 4, 10, 1).unwrap_err(),
        Error::NotBalloon("u".into())
    );
    assert_eq!(
        balloon_iso_check::<Q>(&loop_graph(), "v", 4, 10, 1).unwrap_err(),
        Error::NotBalloon("v".into())
    );
}
