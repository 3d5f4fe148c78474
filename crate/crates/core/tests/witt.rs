//! Big Witt vector identities over ℚ, ℤ and 𝔽₅.

mod common;

use common::*;
use proptest::prelude::*;
use somekawa_core::witt::{
    frobenius, ghost, restrict, teichmuller, unghost, verschiebung, TruncationSet, WittRing, WittVector,
};
use somekawa_core::{Elem, Field};

fn s6() -> TruncationSet {
    TruncationSet::range(6)
}

fn vector(k: &Field, set: &TruncationSet, c: &[(i64, i64)]) -> WittVector {
    let comps = (0..set.len()).map(|i| rat(k, c[i % c.len()])).collect();
    WittVector::from_components(set, &WittRing::Field(k.clone()), comps).unwrap()
}

fn rings() -> Vec<Field> {
    vec![q(), Field::prime(5).unwrap()]
}

/// `gh_s(w) = Σ_{d | s} d·w_d^{s/d}`, written out directly.
fn ghost_oracle(w: &WittVector) -> Vec<Elem> {
    let k = q();
    let set = w.set().elems();
    set.iter()
        .map(|&s| {
            set.iter().filter(|&&d| s % d == 0).fold(k.zero(), |acc, &d| {
                let term = k.pow_u(w.component(d).unwrap(), s / d);
                k.add(&acc, &k.mul_int(&term, d as i64))
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ghost_is_a_ring_map(a in coeffs(6), b in coeffs(6)) {
        let k = q();
        let set = s6();
        let (x, y) = (vector(&k, &set, &a), vector(&k, &set, &b));
        let (gx, gy) = (ghost_oracle(&x), ghost_oracle(&y));
        prop_assert_eq!(ghost(&x), gx.clone());
        let sum: Vec<Elem> = gx.iter().zip(&gy).map(|(u, v)| k.add(u, v)).collect();
        let prod: Vec<Elem> = gx.iter().zip(&gy).map(|(u, v)| k.mul(u, v)).collect();
        prop_assert_eq!(ghost(&x.add(&y).unwrap()), sum);
        prop_assert_eq!(ghost(&x.mul(&y).unwrap()), prod);
    }

    #[test]
    fn unghost_inverts_ghost(a in coeffs(6), ints in prop::collection::vec(-20i64..20, 6)) {
        let set = s6();
        let x = vector(&q(), &set, &a);
        prop_assert_eq!(unghost(&ghost(&x), &set, x.ring()).unwrap(), x);
        let z = WittVector::from_integers(&set, &ints).unwrap();
        prop_assert_eq!(unghost(&ghost(&z), &set, &WittRing::Integers).unwrap(), z);
    }

    #[test]
    fn frobenius_and_verschiebung_compose(which in 0usize..2, a in coeffs(6)) {
        let k = &rings()[which];
        let set = s6();
        let x = vector(k, &set, &a);
        prop_assert_eq!(frobenius(1, &x).unwrap(), x.clone());
        prop_assert_eq!(frobenius(3, &frobenius(2, &x).unwrap()).unwrap(), frobenius(6, &x).unwrap());
        let one = TruncationSet::trivial();
        let y = vector(k, &one, &a);
        let s23 = set.divided_by(2).unwrap();
        let vv = verschiebung(2, &verschiebung(3, &y, &s23).unwrap(), &set).unwrap();
        prop_assert_eq!(vv, verschiebung(6, &y, &set).unwrap());
    }

    /// `w = Σ_s V_s([w_s])`.
    #[test]
    fn teichmuller_expansion(which in 0usize..2, a in coeffs(6)) {
        let k = &rings()[which];
        let ring = WittRing::Field(k.clone());
        let set = s6();
        let x = vector(k, &set, &a);
        let mut acc = WittVector::zero(&set, &ring);
        for &s in set.elems() {
            let src = set.divided_by(s).unwrap();
            let t = teichmuller(x.component(s).unwrap(), &ring, &src);
            acc = acc.add(&verschiebung(s, &t, &set).unwrap()).unwrap();
        }
        prop_assert_eq!(acc, x);
    }

    /// `F_2 V_3 = V_3 F_2`, `F_n V_n = n`, `[a]·V_n(w) = V_n([a]ⁿ·w)`.
    #[test]
    fn mixed_identities(which in 0usize..2, a in coeffs(6), c in (-9i64..=9, 1i64..=4), n in 1u64..=6) {
        let k = &rings()[which];
        let ring = WittRing::Field(k.clone());
        let set = s6();
        let x = vector(k, &set.divided_by(3).unwrap(), &a);
        let lhs = frobenius(2, &verschiebung(3, &x, &set).unwrap()).unwrap();
        let s2 = set.divided_by(2).unwrap();
        let rhs = verschiebung(3, &frobenius(2, &x).unwrap(), &s2).unwrap();
        prop_assert_eq!(lhs, rhs);

        let src = set.divided_by(n).unwrap();
        let y = vector(k, &src, &a);
        prop_assert_eq!(frobenius(n, &verschiebung(n, &y, &set).unwrap()).unwrap(), y.scale_int(n as i64));

        let t = rat(k, c);
        let left = teichmuller(&t, &ring, &set).mul(&verschiebung(n, &y, &set).unwrap()).unwrap();
        let tn = teichmuller(&k.pow_u(&t, n), &ring, &src);
        let right = verschiebung(n, &tn.mul(&y).unwrap(), &set).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Arithmetic over 𝔽₅ is reduction of arithmetic over ℤ, whatever lift
    /// is used.
    #[test]
    fn lift_independence(a in prop::collection::vec(0i64..5, 6), b in prop::collection::vec(0i64..5, 6),
                         shift in prop::collection::vec(-3i64..3, 12)) {
        let f5 = Field::prime(5).unwrap();
        let ring = WittRing::Field(f5.clone());
        let set = s6();
        let mk = |c: &[i64]| WittVector::from_components(&set, &ring, c.iter().map(|&v| f5.from_i64(v)).collect()).unwrap();
        let (x, y) = (mk(&a), mk(&b));
        let reduce = |w: &WittVector| -> Vec<Elem> {
            w.components().iter().map(|c| match c {
                Elem::Rat(r) => f5.from_rational(r).unwrap(),
                other => panic!("{other:?}"),
            }).collect()
        };
        for lift in [&shift[..6], &shift[6..]] {
            let lx: Vec<i64> = a.iter().zip(lift).map(|(v, s)| v + 5 * s).collect();
            let ly: Vec<i64> = b.iter().zip(lift.iter().rev()).map(|(v, s)| v + 5 * s).collect();
            let (zx, zy) = (WittVector::from_integers(&set, &lx).unwrap(), WittVector::from_integers(&set, &ly).unwrap());
            prop_assert_eq!(reduce(&zx.mul(&zy).unwrap()), x.mul(&y).unwrap().components().to_vec());
            prop_assert_eq!(reduce(&zx.add(&zy).unwrap()), x.add(&y).unwrap().components().to_vec());
        }
    }

    #[test]
    fn restriction_is_a_ring_map(a in coeffs(6), b in coeffs(6)) {
        let set = s6();
        let t = TruncationSet::new(&[1, 2, 4]).unwrap();
        let (x, y) = (vector(&q(), &set, &a), vector(&q(), &set, &b));
        let r = |w: &WittVector| restrict(w, &t).unwrap();
        prop_assert_eq!(r(&x.mul(&y).unwrap()), r(&x).mul(&r(&y)).unwrap());
        prop_assert_eq!(r(&x.add(&y).unwrap()), r(&x).add(&r(&y)).unwrap());
    }
}
