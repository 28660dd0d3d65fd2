use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::linalg::mat_mul;
use crate::presentation::Presentation;
use crate::ring::QuotientRing;

const BOUNDS: Bounds = Bounds { max_hdeg: 6, max_idim: 8 };

fn ring<F: Field>(field: F, spec: FieldSpec, vars: &[(&str, u32)], rels: &[&str]) -> Arc<QuotientRing<F>> {
    let p = Presentation::new(spec, vars, rels, 0).unwrap();
    Arc::new(QuotientRing::new(field, &p, BOUNDS.max_idim))
}

/// Over k[x,y]/(x^2): `a`, `b` kill x and y, `c` kills the cycle x*a and
/// `e` is a free odd variable in degree 3.
fn sample_tower<F: Field>(field: F, spec: FieldSpec, flavor: TowerFlavor) -> ExtensionTower<F> {
    let r = ring(field, spec, &[("x", 1), ("y", 1)], &["x^2"]);
    let t = ExtensionTower::new(r, flavor, BOUNDS);
    let t = t
        .adjoin(vec![
            NewVariable { name: "a".into(), hdeg: 1, wdeg: 1, differential: t.base_var(0) },
            NewVariable { name: "b".into(), hdeg: 1, wdeg: 1, differential: t.base_var(1) },
        ])
        .unwrap();
    let xa = t.multiply(&t.base_var(0), &t.var(0)).unwrap();
    let t = t
        .adjoin(vec![NewVariable { name: "c".into(), hdeg: 2, wdeg: 2, differential: xa }])
        .unwrap();
    t.adjoin(vec![NewVariable { name: "e".into(), hdeg: 3, wdeg: 3, differential: Element::zero() }])
        .unwrap()
}

fn free_even<F: Field>(field: F, spec: FieldSpec, flavor: TowerFlavor) -> ExtensionTower<F> {
    let r = ring(field, spec, &[("x", 1)], &[]);
    let t = ExtensionTower::new(r, flavor, Bounds { max_hdeg: 30, max_idim: 30 });
    t.adjoin(vec![NewVariable { name: "z".into(), hdeg: 2, wdeg: 1, differential: Element::zero() }])
        .unwrap()
}

#[test]
fn divided_power_products() {
    let t = free_even(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma);
    let p = t.multiply(&t.power(0, 2), &t.power(0, 3)).unwrap();
    assert_eq!(p, t.power(0, 5).scale(t.field(), &Rationals.from_i64(10)));
    assert_eq!(t.format_element(&p), "10*z^(5)");

    let f2 = PrimeField::new(2).unwrap();
    let t = free_even(f2, FieldSpec::prime(2).unwrap(), TowerFlavor::Gamma);
    assert!(t.multiply(&t.var(0), &t.var(0)).unwrap().is_zero());

    let t = free_even(Rationals, FieldSpec::Rationals, TowerFlavor::Plain);
    assert_eq!(t.multiply(&t.var(0), &t.var(0)).unwrap(), t.power(0, 2));
}

#[test]
fn exterior_variables_square_to_zero() {
    let t = sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma);
    assert!(t.multiply(&t.var(0), &t.var(0)).unwrap().is_zero());
    let ab = t.multiply(&t.var(0), &t.var(1)).unwrap();
    let ba = t.multiply(&t.var(1), &t.var(0)).unwrap();
    assert_eq!(ab, ba.scale(t.field(), &Rationals.from_i64(-1)));
}

#[test]
fn differential_examples() {
    let t = sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma);
    assert_eq!(t.format_element(&t.differential(&t.var(0)).unwrap()), "x");
    let ab = t.multiply(&t.var(0), &t.var(1)).unwrap();
    assert_eq!(t.format_element(&t.differential(&ab).unwrap()), "-y*a + x*b");
    // d(c^(2)) = d(c) c
    let dc2 = t.differential(&t.power(2, 2)).unwrap();
    assert_eq!(t.format_element(&dc2), "x*a*c");
    assert!(t.differential(&t.base_var(1)).unwrap().is_zero());

    let p = t.differential(&t.power(2, 2)).unwrap();
    assert!(t.differential(&p).unwrap().is_zero());
}

#[test]
fn plain_powers_pick_up_the_exponent() {
    let r = ring(Rationals, FieldSpec::Rationals, &[("x", 1)], &["x^2"]);
    let t = ExtensionTower::new(r, TowerFlavor::Plain, BOUNDS);
    let t = t
        .adjoin(vec![NewVariable { name: "a".into(), hdeg: 1, wdeg: 1, differential: t.base_var(0) }])
        .unwrap();
    let xa = t.multiply(&t.base_var(0), &t.var(0)).unwrap();
    let t = t
        .adjoin(vec![NewVariable { name: "c".into(), hdeg: 2, wdeg: 2, differential: xa }])
        .unwrap();
    assert_eq!(t.format_element(&t.differential(&t.power(1, 3)).unwrap()), "3*x*a*c^2");
}

#[test]
fn koszul_piece_basis_and_matrix() {
    let r = ring(Rationals, FieldSpec::Rationals, &[("x", 1), ("y", 1)], &[]);
    let t = ExtensionTower::new(r, TowerFlavor::Plain, BOUNDS);
    let x2 = t.multiply(&t.base_var(0), &t.base_var(0)).unwrap();
    let y2 = t.multiply(&t.base_var(1), &t.base_var(1)).unwrap();
    let t = t
        .adjoin(vec![
            NewVariable { name: "y1".into(), hdeg: 1, wdeg: 2, differential: x2 },
            NewVariable { name: "y2".into(), hdeg: 1, wdeg: 2, differential: y2 },
        ])
        .unwrap();
    let b = t.piece_basis(1, 3).unwrap();
    let names: Vec<String> = b.words.iter().map(|w| t.format_word(w)).collect();
    assert_eq!(names, ["x*y1", "y*y1", "x*y2", "y*y2"]);

    let m = t.differential_matrix(1, 3).unwrap();
    assert_eq!((m.rows, m.cols), (4, 4));
    let tgt = t.piece_basis(0, 3).unwrap();
    let col0: Vec<String> = m.columns[0].iter().map(|(i, _)| t.format_word(&tgt.words[*i])).collect();
    assert_eq!(col0, ["x^3"]);

    let m0 = t.differential_matrix(0, 2).unwrap();
    assert_eq!((m0.rows, m0.cols), (0, 3));
    assert!(t.piece_basis(7, 0).is_err());
    assert!(t.piece_basis(0, 9).is_err());
}

#[test]
fn adjoin_rejects_bad_boundaries() {
    let t = sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma);
    let wrong = t.var(0);
    let err = t.adjoin(vec![NewVariable { name: "w".into(), hdeg: 3, wdeg: 1, differential: wrong }]);
    assert!(err.is_err());
    let other = sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma)
        .adjoin(vec![NewVariable { name: "f".into(), hdeg: 1, wdeg: 1, differential: Element::zero() }])
        .unwrap();
    let foreign = other.var(4);
    assert!(t.multiply(&foreign, &t.var(0)).is_err());
    assert!(t.differential(&foreign).is_err());
}

#[test]
fn dump_lists_variables() {
    let t = sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma);
    let d = t.dump();
    assert_eq!(d.len(), 4);
    assert_eq!(d[2].name, "c");
    assert_eq!(d[2].flavor, VarKind::DividedPower);
    assert_eq!(d[2].differential, "x*a");
    let json = serde_json::to_string(&d[0]).unwrap();
    assert_eq!(json, r#"{"name":"a","hdeg":1,"idim":1,"flavor":"exterior","differential":"x"}"#);
}

fn square_is_zero<F: Field>(t: &ExtensionTower<F>) {
    for n in 2..=t.bounds().max_hdeg {
        for d in 0..=t.bounds().max_idim {
            let outer = t.differential_matrix(n - 1, d).unwrap();
            let inner = t.differential_matrix(n, d).unwrap();
            assert!(mat_mul(t.field(), &outer, &inner).is_zero(), "d^2 != 0 at ({n}, {d})");
        }
    }
}

#[test]
fn differential_squares_to_zero_on_pieces() {
    square_is_zero(&sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Gamma));
    square_is_zero(&sample_tower(Rationals, FieldSpec::Rationals, TowerFlavor::Plain));
    square_is_zero(&sample_tower(PrimeField::new(2).unwrap(), FieldSpec::prime(2).unwrap(), TowerFlavor::Gamma));
    square_is_zero(&sample_tower(PrimeField::new(5).unwrap(), FieldSpec::prime(5).unwrap(), TowerFlavor::Plain));
}

/// A random homogeneous element of the sample tower, drawn from the basis
/// of a bidegree with small integer coefficients.
fn random_element<F: Field>(t: &ExtensionTower<F>, n: u32, d: u32, coeffs: &[i64]) -> Element<F::Elem> {
    let b = t.piece_basis(n, d).unwrap();
    let f = t.field();
    Element::from_terms(f, b.words.iter().zip(coeffs.iter().cycle()).map(|(w, c)| (w.clone(), f.from_i64(*c))))
}

fn sign<F: Field>(f: &F, k: u32) -> F::Elem {
    if k.is_multiple_of(2) {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

fn check_algebra_laws<F: Field>(t: &ExtensionTower<F>, degs: [(u32, u32); 3], coeffs: &[i64]) {
    let f = t.field();
    let (a, b, c) = (
        random_element(t, degs[0].0, degs[0].1, coeffs),
        random_element(t, degs[1].0, degs[1].1, &coeffs[1..]),
        random_element(t, degs[2].0, degs[2].1, &coeffs[2..]),
    );
    let ab = t.multiply(&a, &b).unwrap();
    let ba = t.multiply(&b, &a).unwrap();
    assert_eq!(t.multiply(&ab, &c).unwrap(), t.multiply(&a, &t.multiply(&b, &c).unwrap()).unwrap());
    assert_eq!(ab, ba.scale(f, &sign(f, degs[0].0 * degs[1].0)));
    if degs[0].0 % 2 == 1 {
        assert!(t.multiply(&a, &a).unwrap().is_zero());
    }
    let lhs = t.differential(&ab).unwrap();
    let rhs = t
        .multiply(&t.differential(&a).unwrap(), &b)
        .unwrap()
        .add(f, &t.multiply(&a, &t.differential(&b).unwrap()).unwrap().scale(f, &sign(f, degs[0].0)));
    assert_eq!(lhs, rhs);
    assert!(t.differential(&t.differential(&ab).unwrap()).unwrap().is_zero());
}

fn bidegree() -> impl Strategy<Value = (u32, u32)> {
    (0u32..=3, 0u32..=3).prop_map(|(n, extra)| (n, n + extra))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algebra_laws_hold(
        degs in [bidegree(), bidegree(), bidegree()],
        coeffs in proptest::collection::vec(-3i64..=3, 8),
        gamma in any::<bool>(),
    ) {
        let flavor = if gamma { TowerFlavor::Gamma } else { TowerFlavor::Plain };
        check_algebra_laws(&sample_tower(Rationals, FieldSpec::Rationals, flavor), degs, &coeffs);
        check_algebra_laws(&sample_tower(PrimeField::new(2).unwrap(), FieldSpec::prime(2).unwrap(), flavor), degs, &coeffs);
        check_algebra_laws(&sample_tower(PrimeField::new(5).unwrap(), FieldSpec::prime(5).unwrap(), flavor), degs, &coeffs);
    }

    #[test]
    fn divided_power_law(i in 0u32..=6, j in 0u32..=6) {
        fn check<F: Field>(f: F, spec: FieldSpec, i: u32, j: u32) {
            let t = free_even(f.clone(), spec, TowerFlavor::Gamma);
            let lhs = t.multiply(&t.power(0, i), &t.power(0, j)).unwrap();
            let rhs = t.power(0, i + j).scale(&f, &f.binomial((i + j) as u64, i as u64));
            assert_eq!(lhs, rhs);
        }
        check(Rationals, FieldSpec::Rationals, i, j);
        check(PrimeField::new(2).unwrap(), FieldSpec::prime(2).unwrap(), i, j);
        check(PrimeField::new(5).unwrap(), FieldSpec::prime(5).unwrap(), i, j);
    }
}
