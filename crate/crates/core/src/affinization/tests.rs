use super::prop3::*;
use super::radical::*;
use super::*;
use crate::coeff::poly::Poly;
use crate::coeff::ratfun::RationalFunction;
use crate::coeff::{A0Algebra, CoefficientAlgebra, DiagonalAlgebra, LocalRationalAlgebra, PolyAlgebra, ScalarAlgebra};
use crate::scalar::{Gf, Q};
use rand::Rng;

type Rf = RationalFunction<Q>;

fn scalar() -> Affinization<Q, ScalarAlgebra> {
    Affinization::new(ScalarAlgebra).unwrap()
}

fn poly() -> Affinization<Q, PolyAlgebra> {
    Affinization::new(PolyAlgebra).unwrap()
}

fn local() -> Affinization<Q, LocalRationalAlgebra> {
    Affinization::new(LocalRationalAlgebra::new(A0Algebra::default())).unwrap()
}

#[test]
fn tinv_t_is_v() {
    let aff = scalar();
    let x = aff.mul(&aff.tinv(), &aff.t());
    assert_eq!(aff.format(&x), "v");
    let eg = aff.wreath();
    let w = eg.mul(&aff.to_wreath(&aff.tinv()).unwrap(), &aff.to_wreath(&aff.t()).unwrap());
    assert_eq!(eg.format(&w), "v");
}

#[test]
fn t_tinv_is_v_minus_corner_unit() {
    let aff = scalar();
    let x = aff.mul(&aff.t(), &aff.tinv());
    assert_eq!(aff.format(&x), "v - [1 @ 0, 0]");
    let eg = aff.wreath();
    let w = eg.mul(&aff.to_wreath(&aff.t()).unwrap(), &aff.to_wreath(&aff.tinv()).unwrap());
    assert_eq!(eg.format(&w), "v - [1 @ e, e]");
    assert_eq!(aff.eq_finite(&aff.from_wreath(&w).unwrap(), &x), Some(true));
    // The Laurent polynomials are not closed under the product.
    assert!(!x.matrix().finite_part().is_empty());
}

#[test]
fn t_shifts_units_down() {
    let aff = poly();
    for i in 0..4 {
        for j in 0..4 {
            let x = aff.mul(&aff.t(), &aff.one_unit(i, j));
            assert_eq!(aff.eq_finite(&x, &aff.one_unit(i + 1, j)), Some(true));
        }
    }
}

#[test]
fn index_relabelling_round_trips() {
    let aff = scalar();
    for i in 0..6 {
        assert_eq!(aff.index_of(&aff.index(i)), Some(i));
    }
    assert_eq!(aff.index_of(&BridgeIndex::Zero), None);
    assert_eq!(aff.wreath().format_index(&aff.index(2)), "c.c.e");
}

#[test]
fn x0_entries_have_no_natural_index() {
    let aff = scalar();
    let eg = aff.wreath();
    let u = eg.matrix_unit(Q::from_i64(1), BridgeIndex::Zero, aff.index(0)).unwrap();
    assert!(aff.from_wreath(&u).is_err());
}

#[test]
fn unit_must_be_designated() {
    let d = DiagonalAlgebra::new(vec!["p".into(), "q".into()]);
    assert!(matches!(Affinization::<Q, _>::new(d), Err(Error::Hypothesis(_))));
}

fn random_finite(aff: &Affinization<Q, PolyAlgebra>, rng: &mut StdRng) -> AffineElement<Q, PolyAlgebra> {
    let mut x = aff.zero();
    for _ in 0..rng.gen_range(0..3) {
        let k = rng.gen_range(-3..=3);
        x = aff.add(&x, &aff.scale(&Q::sample_nonzero(rng), &aff.power(k)));
    }
    for _ in 0..rng.gen_range(0..3) {
        let a = CoefficientAlgebra::<Q>::sample(&PolyAlgebra, rng);
        x = aff.add(&x, &aff.unit(a, rng.gen_range(0..4), rng.gen_range(0..4)));
    }
    x
}

#[test]
fn banded_arithmetic_agrees_with_wreath_normal_form() {
    let aff = poly();
    let eg = aff.wreath();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let x = random_finite(&aff, &mut rng);
        let y = random_finite(&aff, &mut rng);
        let z = aff.mul(&x, &y);
        let w = eg.mul(&aff.to_wreath(&x).unwrap(), &aff.to_wreath(&y).unwrap());
        assert_eq!(aff.to_wreath(&z).unwrap(), w, "{} * {}", aff.format(&x), aff.format(&y));
    }
}

#[test]
fn laurent_products_carry_corrections() {
    let aff = scalar();
    let x = aff.mul(&aff.power(3), &aff.power(-2));
    assert_eq!(aff.format(&x), "t - [1 @ 1, 0] - [1 @ 2, 1]");
    let y = aff.mul(&aff.power(-2), &aff.power(3));
    assert_eq!(aff.format(&y), "t");
}

#[test]
fn relations_hold_for_shipped_algebras() {
    for r in [
        relations_check(&scalar(), 4, 0),
        relations_check(&poly(), 4, 1),
        relations_check(&local(), 3, 2),
        relations_check(&Affinization::<Gf<5>, _>::new(ScalarAlgebra).unwrap(), 4, 3),
    ] {
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 6);
    }
}

#[test]
fn finite_matrices_form_an_ideal() {
    let aff = local();
    let gens = AffineGenerators::standard(&aff);
    let m = aff.add(
        &aff.unit((Q::from_i64(2), Rf::t()), 1, 2),
        &aff.one_unit(3, 0),
    );
    let mut x = gens.a.clone();
    for g in [BGen::T, BGen::A, BGen::TInv, BGen::TInv, BGen::A] {
        x = aff.mul(&x, gens.get(g));
        for y in [aff.mul(&x, &m), aff.mul(&m, &x)] {
            assert!(y.has_finite_matrix());
            let full = aff.from_matrix(BandedOperator::finite(aff.algebra().clone(), y.matrix().finite_part().clone()));
            assert!(aff.eq_on_window(&y, &full, 12));
        }
    }
}

#[test]
fn span_of_shifts() {
    let aff = scalar();
    let span = affine_span(&aff, &[aff.t(), aff.tinv()], 2, 4).unwrap();
    for x in [aff.v(), aff.t(), aff.power(2), aff.tinv(), aff.power(-2), aff.one_unit(0, 0)] {
        assert!(span.contains(&aff, &x), "{}", aff.format(&x));
    }
    assert!(!span.contains(&aff, &aff.power(3)));
    assert!(!span.contains(&aff, &aff.one_unit(1, 1)));
    assert_eq!(span.basis.len(), 6);
}

#[test]
fn span_edge_cases() {
    let aff = scalar();
    assert!(affine_span(&aff, &[aff.t()], 0, 4).unwrap().basis.is_empty());
    let e = aff.one_unit(0, 0);
    let span = affine_span(&aff, std::slice::from_ref(&e), 3, 4).unwrap();
    assert_eq!(span.basis.len(), 1);
    assert!(span.contains(&aff, &e));
    assert!(affine_span(&aff, &[aff.t()], AFFINE_SPAN_CAP + 1, 4).is_err());
}

#[test]
fn witness_words() {
    assert_eq!(format_word(&prop3_witness(0, &[0], 0)), "(1)_{0,0} · a · (1)_{0,0}");
    assert_eq!(format_word(&prop3_witness(1, &[], 0)), "t · (1)_{0,0}");
    assert_eq!(
        prop3_witness(0, &[2, 1], 3),
        [transporter(0, 2), vec![BGen::A], transporter(2, 1), vec![BGen::A], transporter(1, 3)].concat()
    );
    assert_eq!(format_target(0, &[2, 1], 3), "(a2·a1)_{0,3}");
}

#[test]
fn witness_evaluates_to_target() {
    let aff = local();
    let gens = AffineGenerators::standard(&aff);
    for (i, w, j) in [(0, vec![0], 0), (1, vec![], 0), (0, vec![2, 1], 3), (3, vec![4, 4], 1)] {
        let value = gens.evaluate(&aff, &prop3_witness(i, &w, j));
        let expected = target(&aff, i, &w, j).unwrap();
        assert_eq!(aff.eq_finite(&value, &expected), Some(true), "{}", format_target(i, &w, j));
    }
}

#[test]
fn prop3_passes_on_local_rational_algebra() {
    let aff = local();
    let r = prop3_check(&aff, &AffineGenerators::standard(&aff), 6, 4);
    assert!(r.passed(), "{r}");
    assert!(r.check("upper containment").unwrap().detail.starts_with("5460 products"));
}

#[test]
fn prop3_at_degree_one_reports_incomplete_witnesses() {
    let aff = local();
    let r = prop3_check(&aff, &AffineGenerators::standard(&aff), 1, 2);
    assert!(r.passed(), "{r}");
    assert!(r.check("witnesses within degree").unwrap().detail.ends_with("(incomplete)"));
}

#[test]
fn prop3_negative_control() {
    let aff = local();
    let gens = AffineGenerators::with_a(&aff, corrupted_diagonal(&aff, 0));
    let r = prop3_check(&aff, &gens, 6, 4);
    assert!(!r.passed());
    let c = r.check("lower containment").unwrap();
    assert!(!c.passed);
    assert!(c.detail.starts_with("(a0)_{0,0} via (1)_{0,0} · a · (1)_{0,0}"), "{}", c.detail);
}

#[test]
fn products_are_banded_by_degree() {
    let aff = local();
    let gens = AffineGenerators::standard(&aff);
    let w = [BGen::T, BGen::A, BGen::T, BGen::A, BGen::TInv];
    let x = gens.evaluate(&aff, &w);
    // t·a·t·a·tinv = Σ_{i≥1} (aᵢ·aᵢ₋₁)_{i+1,i}.
    assert_eq!(x.matrix().offsets(), vec![-1]);
    let alg = aff.algebra();
    let g = |i| alg.generator(i).unwrap();
    assert_eq!(x.matrix().entry(2, 1), alg.mul(&g(1), &g(0)));
    assert_eq!(x.matrix().entry(4, 3), alg.mul(&g(3), &g(2)));
    assert!(alg.is_zero(&x.matrix().entry(1, 0)));
}

fn rf(num: &[i64], den: &[i64]) -> Rf {
    Rf::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
}

#[test]
fn quasi_inverse_examples() {
    let m = vec![vec![Rf::t()]];
    let y = radical_matrix_quasi_inverse(&m).unwrap();
    assert_eq!(y.entries(), vec![vec![rf(&[0, -1], &[1, 1])]]);
    assert_eq!(y.entries()[0][0], Rf::t().a0_quasi_inverse().unwrap());
    assert!(is_matrix_quasi_inverse_pair(&m, &y));

    let zero = <Rf as Field>::zero();
    let m = vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero.clone()]];
    assert_eq!(radical_matrix_quasi_inverse(&m).unwrap().entries(), m);

    let m = vec![vec![zero.clone(), Rf::t()], vec![zero.clone(), zero.clone()]];
    let y = radical_matrix_quasi_inverse(&m).unwrap();
    assert_eq!(y.entries(), vec![vec![zero.clone(), -Rf::t()], vec![zero.clone(), zero]]);
    assert!(is_matrix_quasi_inverse_pair(&m, &y));
}

#[test]
fn quasi_inverse_matches_field_solve() {
    use crate::linalg::{identity, mat_add, mat_mul, solve};
    let mut rng = StdRng::seed_from_u64(11);
    for n in 1..=2 {
        for _ in 0..10 {
            let m = random_a0_matrix::<Q>(&mut rng, n);
            let y = radical_matrix_quasi_inverse(&m).unwrap().entries();
            let neg: Vec<Vec<Rf>> = m.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect();
            assert_eq!(solve(&mat_add(&identity(n), &m), &neg).unwrap(), y);
            let s = mat_add(&m, &y);
            assert!(mat_add(&s, &mat_mul(&m, &y)).iter().flatten().all(Rf::is_zero));
            assert!(mat_add(&s, &mat_mul(&y, &m)).iter().flatten().all(Rf::is_zero));
        }
    }
}

#[test]
fn corrupted_quasi_inverse_is_rejected() {
    let m = vec![vec![Rf::t(), Rf::t()], vec![<Rf as Field>::zero(), Rf::t()]];
    let mut y = radical_matrix_quasi_inverse(&m).unwrap();
    assert!(is_matrix_quasi_inverse_pair(&m, &y));
    y.num[0][1] = &y.num[0][1] + &Poly::var();
    assert!(!is_matrix_quasi_inverse_pair(&m, &y));
}

#[test]
fn quasi_inverse_rejects_units() {
    let m = vec![vec![rf(&[1, 1], &[1])]];
    assert!(radical_matrix_quasi_inverse(&m).is_err());
}

#[test]
fn radical_probes_pass() {
    let r = radical_check::<Q>(200, 100, 4, 20, 0);
    assert!(r.passed(), "{r}");
}

#[test]
fn corner_power_is_not_nilpotent() {
    assert_eq!(non_nil_failure::<Q>(&local(), 20), None);
}
