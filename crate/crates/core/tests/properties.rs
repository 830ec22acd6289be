use std::sync::Arc;

use cyclecalc::cycle::{intersection_product, AffineScheme, Cycle};
use cyclecalc::forms::{cartier_inverse, dlog, AlgElem, DifferentialForm, FiniteField, FpAlgebra};
use cyclecalc::groebner::{groebner_polys, normal_form_poly};
use cyclecalc::local::LocalField;
use cyclecalc::snf::invariant_factors;
use cyclecalc::{FieldSpec, Ideal, MonomialOrder, PolyRing, Polynomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn plane() -> Arc<PolyRing> {
    PolyRing::new(FieldSpec::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
}

fn poly_terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -5i64..=5), 1..=max_terms)
}

fn build(r: &Arc<PolyRing>, terms: &[((u32, u32), i64)]) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(r, terms.iter().map(|((a, b), c)| (vec![*a, *b], f.from_i64(*c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly_terms(3, 4), b in poly_terms(3, 4), c in poly_terms(3, 4)) {
        let r = plane();
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn reduced_basis_is_canonical(a in poly_terms(2, 3), b in poly_terms(2, 3), c in poly_terms(1, 3)) {
        let r = plane();
        let (f, g) = (build(&r, &a), build(&r, &b));
        let gb = groebner_polys(&r, &[f.clone(), g.clone()]).unwrap();
        for p in [&f, &g, &(&f * &build(&r, &c))] {
            prop_assert!(normal_form_poly(p, &gb).is_zero());
        }
        let mut swapped = groebner_polys(&r, &[g.clone(), &f + &g]).unwrap();
        let mut gb = gb;
        gb.sort();
        swapped.sort();
        prop_assert_eq!(gb, swapped);
    }

    #[test]
    fn intersection_is_bilinear_and_symmetric(l1 in (-4i64..=4, -4i64..=4), l2 in (-4i64..=4, -4i64..=4), v in -4i64..=4) {
        let r = plane();
        let a2 = AffineScheme::affine_space(&r);
        let line = |(m, b): (i64, i64)| build(&r, &[((0, 1), 1), ((1, 0), -m), ((0, 0), -b)]);
        let prime = |f: Polynomial| Cycle::prime(&a2, &Ideal::principal(&f)).unwrap();
        let c1 = prime(line(l1));
        let c2 = prime(line(l2));
        let d = prime(build(&r, &[((1, 0), 1), ((0, 0), -v)]));
        let lhs = intersection_product(&c1.add(&c2).unwrap(), &d).unwrap();
        let rhs = intersection_product(&c1, &d).unwrap().add(&intersection_product(&c2, &d).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.degree().unwrap(), 2);
        prop_assert_eq!(intersection_product(&d, &c1).unwrap(), intersection_product(&c1, &d).unwrap());
    }

    #[test]
    fn integer_invariants_survive_transpose(m in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..=4)) {
        let t: Vec<Vec<i64>> = (0..3).map(|j| m.iter().map(|row| row[j]).collect()).collect();
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&t));
    }

    #[test]
    fn local_inverse_and_valuation(a in 1i64..10_000, b in 1i64..10_000, k in 0i64..1000) {
        let fp = FiniteField::prime(5).unwrap();
        let lf = LocalField::unramified(&fp, 12).unwrap();
        let (a, b) = (a * 5 + 1, b * 5 + 2);
        let x = lf.from_int(BigInt::from(a));
        let y = lf.from_int(BigInt::from(b));
        let back = lf.mul(&lf.mul(&x, &y), &lf.inverse(&y).unwrap());
        prop_assert_eq!(lf.key(&back), lf.key(&x));
        prop_assert_eq!(lf.valuation(&lf.from_int(BigInt::from(25 * (5 * k + 1)))), 2);
    }
}

fn f3_algebra() -> Arc<FpAlgebra> {
    let fp = FiniteField::prime(3).unwrap();
    let plain = FpAlgebra::polynomial(&fp, &["x", "y"]).unwrap();
    let inv = vec![plain.var_poly(0), plain.var_poly(1), plain.poly(&[(vec![0, 0], 1), (vec![1, 1], -1)])];
    FpAlgebra::new(&fp, &["x", "y"], inv).unwrap()
}

fn elem(alg: &Arc<FpAlgebra>, terms: &[((u32, u32), i64)]) -> AlgElem {
    alg.elem(alg.poly(&terms.iter().map(|((a, b), c)| (vec![*a, *b], *c)).collect::<Vec<_>>()))
}

fn unit(alg: &Arc<FpAlgebra>, exps: &[i32; 3], c: i64) -> AlgElem {
    let mut u = alg.from_i64(c);
    for (k, &e) in exps.iter().enumerate() {
        let base = if e < 0 { alg.inverse_of_inverted(k) } else { alg.elem(alg.inverted()[k].clone()) };
        u = alg.mul(&u, &alg.pow(&base, e.unsigned_abs()));
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn de_rham_relations(f in poly_terms(3, 4), g in poly_terms(3, 4)) {
        let alg = f3_algebra();
        let (f, g) = (elem(&alg, &f), elem(&alg, &g));
        let w = DifferentialForm::from_terms(&alg, 1, vec![(vec![0], f.clone()), (vec![1], g.clone())]);
        prop_assert!(w.d().d().is_zero());
        let df = DifferentialForm::function(&alg, f.clone()).d();
        prop_assert!(df.is_closed());
        // Leibniz
        let lhs = DifferentialForm::function(&alg, alg.mul(&f, &g)).d();
        let rhs = df.mul_fn(&g).add(&DifferentialForm::function(&alg, g.clone()).d().mul_fn(&f));
        prop_assert_eq!(lhs, rhs);
        if w.d().is_zero() {
            prop_assert!(cartier_inverse(&w).is_closed());
        }
        prop_assert!(cartier_inverse(&df).d().is_zero());
    }

    #[test]
    fn dlog_is_a_homomorphism(a in [-3i32..4, -3i32..4, -3i32..4], b in [-3i32..4, -3i32..4, -3i32..4], c in 1i64..3, e in 1i64..3) {
        let alg = f3_algebra();
        let u = unit(&alg, &a, c);
        let v = unit(&alg, &b, e);
        let lhs = dlog(&alg, &alg.mul(&u, &v)).unwrap();
        let rhs = dlog(&alg, &u).unwrap().add(&dlog(&alg, &v).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(lhs.is_closed());
        let cube = dlog(&alg, &alg.pow(&u, 3)).unwrap();
        prop_assert!(cube.is_zero());
    }
}
