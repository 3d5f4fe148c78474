//! Kähler and de Rham-Witt forms.

mod common;

use common::*;
use proptest::prelude::*;
use somekawa_core::ghost_form::{
    gform_d, gform_frobenius, gform_mul, gform_trace, gform_verschiebung, GhostForm,
};
use somekawa_core::kaehler::{d_elem, d_form, dlog_elem, dlog_product, trace_form, wedge, DifferentialForm};
use somekawa_core::witt::{TruncationSet, WittRing, WittVector};
use somekawa_core::{Elem, Field};

fn form0(k: &Field, x: Elem) -> DifferentialForm {
    DifferentialForm::function(k, x)
}

/// `ℚ(t)(a)` with `a² = 2`, finite over `ℚ(t)`.
fn qt_sqrt2() -> Field {
    let k = q_t();
    Field::algebraic(&k, vec![k.from_i64(-2), k.zero(), k.one()], "a").unwrap()
}

fn gform(k: &Field, set: &TruncationSet, a: &[(i64, i64)], b: &[(i64, i64)]) -> GhostForm {
    let coords = set
        .elems()
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let mut num = a.to_vec();
            num.rotate_left(i % a.len());
            form0(k, element(k, &num, b))
        })
        .collect();
    GhostForm::from_coords(set, coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squares_to_zero(a in coeffs(6), b in coeffs(4), c in coeffs(6)) {
        let k = qx_t();
        let f = element(&k, &a, &b);
        prop_assert!(d_form(&d_elem(&k, &f)).is_zero());
        let w = wedge(&form0(&k, element(&k, &c, &a)), &d_elem(&k, &f)).unwrap();
        prop_assert!(d_form(&d_form(&w)).is_zero());
    }

    #[test]
    fn leibniz(a in coeffs(6), b in coeffs(4), c in coeffs(6)) {
        let k = qx_t();
        let (f, g) = (element(&k, &a, &b), element(&k, &c, &a));
        let lhs = d_elem(&k, &k.mul(&f, &g));
        let rhs = d_elem(&k, &g).scale(&f).add(&d_elem(&k, &f).scale(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// `x·dlog x + (1−x)·dlog(1−x) = 0`.
    #[test]
    fn cathelineau_identity(a in coeffs(6), b in coeffs(4)) {
        let k = qx_t();
        let x = element(&k, &a, &b);
        let y = k.sub(&k.one(), &x);
        prop_assume!(!k.is_zero(&x) && !k.is_zero(&y));
        let sum = dlog_elem(&k, &x).unwrap().scale(&x).add(&dlog_elem(&k, &y).unwrap().scale(&y)).unwrap();
        prop_assert!(sum.is_zero());
    }

    /// `x·dlog x₁∧…` vanishes when two entries agree.
    #[test]
    fn repeated_entries_vanish(a in coeffs(6), b in coeffs(4), c in coeffs(4)) {
        let k = qx_t();
        let (x, y, z) = (element(&k, &a, &b), element(&k, &b, &c), element(&k, &c, &a));
        prop_assume!(!k.is_zero(&y) && !k.is_zero(&z));
        prop_assert!(dlog_product(&k, &x, &[y.clone(), y.clone()]).unwrap().is_zero());
        prop_assert!(dlog_product(&k, &x, &[y.clone(), z, y]).unwrap().is_zero());
    }

    #[test]
    fn ghost_form_leibniz_and_d_squared(a in coeffs(6), b in coeffs(4), c in coeffs(6)) {
        let k = q_t();
        let set = TruncationSet::new(&[1, 2]).unwrap();
        let (u, v) = (gform(&k, &set, &a, &b), gform(&k, &set, &c, &a));
        let lhs = gform_d(&gform_mul(&u, &v).unwrap()).unwrap();
        let rhs = gform_mul(&gform_d(&u).unwrap(), &v).unwrap().add(&gform_mul(&u, &gform_d(&v).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(gform_d(&gform_d(&u).unwrap()).unwrap().is_zero());
    }

    /// Degree-0 ghost forms are Witt vectors.
    #[test]
    fn degree_zero_round_trip(a in coeffs(6), b in coeffs(3)) {
        let k = q_t();
        let set = TruncationSet::range(6);
        let comps = (0..set.len()).map(|i| element(&k, &a[i % a.len()..], &b)).collect();
        let w = WittVector::from_components(&set, &WittRing::Field(k.clone()), comps).unwrap();
        let g = GhostForm::from_witt(&w).unwrap();
        prop_assert_eq!(g.to_witt().unwrap(), w.clone());
        let w2 = w.mul(&w).unwrap();
        prop_assert_eq!(GhostForm::from_witt(&w2).unwrap(), gform_mul(&g, &g).unwrap());
    }

    #[test]
    fn frobenius_verschiebung_on_forms(a in coeffs(6), b in coeffs(4)) {
        let k = q_t();
        let set = TruncationSet::range(6);
        let src = set.divided_by(3).unwrap();
        let w = gform_d(&gform(&k, &src, &a, &b)).unwrap();
        let lhs = gform_frobenius(2, &gform_verschiebung(3, &w, &set).unwrap()).unwrap();
        let rhs = gform_verschiebung(3, &gform_frobenius(2, &w).unwrap(), &set.divided_by(2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let f6 = gform_frobenius(6, &gform(&k, &set, &a, &b)).unwrap();
        let f23 = gform_frobenius(3, &gform_frobenius(2, &gform(&k, &set, &a, &b)).unwrap()).unwrap();
        prop_assert_eq!(f6, f23);
    }

    /// The trace `ℚ(t)(√2) → ℚ(t)` commutes with d on 0-forms, F_n and V_n.
    #[test]
    fn trace_commutes(a in coeffs(9), b in coeffs(3)) {
        let (e, f) = (qt_sqrt2(), q_t());
        let set = TruncationSet::range(4);
        let w = gform(&e, &set, &a, &b);
        let tr = |x: &GhostForm| gform_trace(&e, &f, x).unwrap();
        prop_assert_eq!(tr(&gform_frobenius(2, &w).unwrap()), gform_frobenius(2, &tr(&w)).unwrap());
        let src = set.divided_by(2).unwrap();
        let v = gform(&e, &src, &b, &a);
        prop_assert_eq!(tr(&gform_verschiebung(2, &v, &set).unwrap()), gform_verschiebung(2, &tr(&v), &set).unwrap());
        // on 0-forms the trace is the field trace in each coordinate
        let c0 = &w.coords()[0].coeff(&[]);
        prop_assert_eq!(tr(&w).coords()[0].coeff(&[]), e.trace_to(c0, &f).unwrap());
        let one = form0(&e, e.one());
        prop_assert_eq!(trace_form(&e, &f, &one).unwrap(), form0(&f, f.from_i64(2)));
    }
}
