//! Field axioms, canonical forms, traces and norms, Laurent inversion.

mod common;

use common::*;
use proptest::prelude::*;
use somekawa_core::laurent::LaurentSeries;
use somekawa_core::Field;

fn fields() -> Vec<Field> {
    vec![q(), Field::prime(5).unwrap(), sqrt2(), sqrt2_sqrt3(), q_t(), qx_t()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(which in 0usize..6, a in coeffs(6), b in coeffs(6), c in coeffs(6), d in coeffs(3)) {
        let k = &fields()[which];
        let (x, y, z) = (element(k, &a, &d), element(k, &b, &d), element(k, &c, &a));
        prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
        prop_assert_eq!(k.add(&k.add(&x, &y), &z), k.add(&x, &k.add(&y, &z)));
        prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
        prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
        if let Some(xi) = k.inv(&x) {
            prop_assert!(k.is_one(&k.mul(&x, &xi)));
        } else {
            prop_assert!(k.is_zero(&x));
        }
        prop_assert!(k.is_zero(&k.add(&x, &k.neg(&x))));
    }

    /// Equal values have identical payloads however they were computed.
    #[test]
    fn canonical_forms(which in 0usize..6, a in coeffs(6), b in coeffs(6), c in coeffs(4)) {
        let k = &fields()[which];
        let (x, y, z) = (element(k, &a, &c), element(k, &b, &a), element(k, &c, &b));
        prop_assert_eq!(k.sub(&k.add(&x, &y), &y), x.clone());
        if let Some(q) = k.div(&k.mul(&x, &z), &z) {
            prop_assert_eq!(q, x.clone());
        }
        prop_assert!(k.validate(&k.mul(&x, &y)));
    }

    #[test]
    fn trace_transitive_and_linear(a in coeffs(4), b in coeffs(4), n in -5i64..5) {
        let (e2, e1, f) = (sqrt2_sqrt3(), sqrt2(), q());
        let (x, y) = (combo(&e2, &a), combo(&e2, &b));
        let direct = e2.trace_to(&x, &f).unwrap();
        let stepwise = e1.trace_to(&e2.trace_to(&x, &e1).unwrap(), &f).unwrap();
        prop_assert_eq!(direct.clone(), stepwise);
        let lin = e2.add(&e2.mul_int(&x, n), &y);
        prop_assert_eq!(e2.trace_to(&lin, &f).unwrap(), f.add(&f.mul_int(&direct, n), &e2.trace_to(&y, &f).unwrap()));
        // degree-4 tower: Tr(1) = 4
        prop_assert_eq!(e2.trace_to(&e2.one(), &f).unwrap(), f.from_i64(4));
    }

    #[test]
    fn norm_multiplicative_and_transitive(a in coeffs(4), b in coeffs(4)) {
        let (e2, e1, f) = (sqrt2_sqrt3(), sqrt2(), q());
        let (x, y) = (combo(&e2, &a), combo(&e2, &b));
        let nxy = e2.norm_to(&e2.mul(&x, &y), &f).unwrap();
        prop_assert_eq!(nxy, f.mul(&e2.norm_to(&x, &f).unwrap(), &e2.norm_to(&y, &f).unwrap()));
        prop_assert_eq!(e2.norm_to(&x, &f).unwrap(), e1.norm_to(&e2.norm_to(&x, &e1).unwrap(), &f).unwrap());
    }

    /// Norm from `ℚ(√2)` against the closed form `u² − 2v²`.
    #[test]
    fn quadratic_norm(u in -30i64..30, v in -30i64..30) {
        let e = sqrt2();
        let x = e.add(&e.from_i64(u), &e.mul_int(&e.named("a").unwrap(), v));
        prop_assert_eq!(e.norm_to(&x, &q()).unwrap(), q().from_i64(u * u - 2 * v * v));
        prop_assert_eq!(e.trace_to(&x, &q()).unwrap(), q().from_i64(2 * u));
    }

    #[test]
    fn laurent_inverse(order in -4i64..4, c in coeffs(6)) {
        let k = q();
        let mut cs: Vec<_> = c.iter().map(|x| rat(&k, *x)).collect();
        if k.is_zero(&cs[0]) {
            cs[0] = k.one();
        }
        let prec = order + 12;
        let s = LaurentSeries::new(&k, order, cs, prec);
        let p = s.checked_mul(&s.inv().unwrap()).unwrap();
        prop_assert!(p.agrees_with(&LaurentSeries::one(&k, p.precision())));
        prop_assert!(p.precision() >= 12 - 1);
    }
}
