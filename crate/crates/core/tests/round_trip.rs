//! Printed normal forms parse back to the same element.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use leavitt_wreath::coeff::{DiagonalAlgebra, PolyAlgebra};
use leavitt_wreath::cohn;
use leavitt_wreath::expr::{eval_str, CohnRing, CoeffRing, WreathRing};
use leavitt_wreath::graph::samples::{all, toeplitz};
use leavitt_wreath::graph::Graph;
use leavitt_wreath::leavitt::Leavitt;
use leavitt_wreath::scalar::{Gf, Q};
use leavitt_wreath::wreath::samples::{loop_wreath, three_vertex_w, toeplitz_w};
use leavitt_wreath::wreath::{BridgeSpec, Extension, ExtendedGraph};

fn graph_index() -> impl Strategy<Value = usize> {
    0..all().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trips(i in graph_index()) {
        let g = &all()[i].1;
        let back = Graph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), g.to_text());
    }

    #[test]
    fn cohn_format_round_trips(i in graph_index(), seed in any::<u64>()) {
        let g = &all()[i].1;
        let mut rng = StdRng::seed_from_u64(seed);
        let x = cohn::random_element::<Q>(g, &mut rng, 4, 3);
        let text = cohn::format(g, &x);
        prop_assert_eq!(eval_str(&CohnRing::<Q>::new(g), &text).unwrap(), x);
    }

    #[test]
    fn leavitt_format_round_trips(i in graph_index(), seed in any::<u64>()) {
        let l = Leavitt::new(all()[i].1.clone());
        let mut rng = StdRng::seed_from_u64(seed);
        let x = l.random_element::<Q>(&mut rng, 4, 3);
        let text = l.format(&x);
        prop_assert_eq!(eval_str(&CoeffRing::<Q, _>::new(&l), &text).unwrap(), x);
    }

    #[test]
    fn leavitt_format_round_trips_over_gf7(i in graph_index(), seed in any::<u64>()) {
        let l = Leavitt::new(all()[i].1.clone());
        let mut rng = StdRng::seed_from_u64(seed);
        let x = l.random_element::<Gf<7>>(&mut rng, 4, 3);
        prop_assert_eq!(eval_str(&CoeffRing::<Gf<7>, _>::new(&l), &l.format(&x)).unwrap(), x);
    }

    #[test]
    fn wreath_format_round_trips(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let poly = loop_wreath::<Q, _>(PolyAlgebra, "1");
        let x = poly.random_element(&mut rng);
        prop_assert_eq!(eval_str(&WreathRing { wreath: &poly }, &poly.format(&x)).unwrap(), x);

        let tw = toeplitz_w::<Q>();
        let y = tw.random_element(&mut rng);
        prop_assert_eq!(eval_str(&WreathRing { wreath: &tw }, &tw.format(&y)).unwrap(), y);

        let vw = three_vertex_w::<Q>();
        let z = vw.random_element(&mut rng);
        prop_assert_eq!(eval_str(&WreathRing { wreath: &vw }, &vw.format(&z)).unwrap(), z);
    }

    #[test]
    fn diagonal_wreath_format_round_trips(seed in any::<u64>()) {
        let ext = Extension::parse("idem p\nidem q\nbridge e1 u p\nbridge e2 u q\n").unwrap();
        let eg = ExtendedGraph::<Q, _>::new(toeplitz(), DiagonalAlgebra::new(ext.idempotents), &ext.bridges).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let x = eg.random_element(&mut rng);
        prop_assert_eq!(eval_str(&WreathRing { wreath: &eg }, &eg.format(&x)).unwrap(), x);
    }
}

#[test]
fn extension_file_matches_builder() {
    let ext = Extension::parse("# comment\nidem p\nbridge e1 u p   # trailing\n").unwrap();
    assert_eq!(ext.idempotents, ["p"]);
    assert_eq!(ext.bridges, [BridgeSpec::new("e1", "u", "p")]);
}
