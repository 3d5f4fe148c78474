//! Residues, tame symbols and ψ on randomized factored data over ℚ(t).

mod common;

use common::*;
use proptest::prelude::*;
use somekawa_core::ghost_form::{gform_d, gform_mul, GhostForm};
use somekawa_core::kaehler::{d_elem, DifferentialForm};
use somekawa_core::milnor::{boundary, tame_symbol, tameres_square, weil_reciprocity_product, MilnorSymbol};
use somekawa_core::places::{residue_theorem_check_ghost, witt_evaluate, witt_local_symbol, Place};
use somekawa_core::somekawa::{dlog_presentation, gamma_ghost, phi, psi, psi_witt, SomekawaSymbol};
use somekawa_core::witt::{TruncationSet, WittRing, WittVector};
use somekawa_core::{Elem, Field, FieldElement};

/// `t`, `t − 1`, `t + 2`, `t² + 1`.
fn factors(k: &Field) -> Vec<Elem> {
    let t = k.named("t").unwrap();
    vec![t.clone(), k.sub(&t, &k.one()), k.add(&t, &k.from_i64(2)), k.add(&k.mul(&t, &t), &k.one())]
}

fn places(k: &Field) -> Vec<Place> {
    factors(k).iter().map(|f| Place::from_element(&FieldElement::new(k, f.clone())).unwrap()).collect()
}

fn factored(k: &Field, c: (i64, i64), exps: &[i64]) -> Elem {
    factors(k).iter().zip(exps).fold(rat(k, c), |acc, (f, &e)| k.mul(&acc, &k.pow(f, e).unwrap()))
}

fn nonzero() -> impl Strategy<Value = (i64, i64)> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5)
}

fn exps() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `Σ_P Tr ∂_P(ω) = 0` for `ω = [g]·d[h]`.
    #[test]
    fn residue_theorem(c in nonzero(), e in exps(), c2 in nonzero(), e2 in exps(), two in any::<bool>()) {
        let k = q_t();
        let set = if two { TruncationSet::new(&[1, 2]).unwrap() } else { TruncationSet::trivial() };
        let g = GhostForm::teichmuller(&factored(&k, c, &e), &k, &set).unwrap();
        let h = GhostForm::teichmuller(&factored(&k, c2, &e2), &k, &set).unwrap();
        let w = gform_mul(&g, &gform_d(&h).unwrap()).unwrap();
        prop_assert!(residue_theorem_check_ghost(&w, &places(&k)).unwrap().is_zero());
    }

    /// `∂_P(w, f) = v_P(f)·w(P)` for `P`-integral `w`.
    #[test]
    fn local_symbol_of_integral_vector(a in coeffs(6), c in nonzero(), e in exps(), which in 0usize..4) {
        let k = q_t();
        let set = TruncationSet::new(&[1, 2, 3]).unwrap();
        let t = k.named("t").unwrap();
        // polynomial components are integral at every finite place
        let comps = (0..3).map(|i| {
            a.iter().skip(i).enumerate().fold(k.zero(), |acc, (j, x)| k.add(&acc, &k.mul(&rat(&k, *x), &k.pow_u(&t, j as u64))))
        }).collect();
        let w = WittVector::from_components(&set, &WittRing::Field(k.clone()), comps).unwrap();
        let f = FieldElement::new(&k, factored(&k, c, &e));
        let p = &places(&k)[which];
        let v = p.valuation_elem(f.value()).unwrap();
        prop_assert_eq!(v, e[which]);
        prop_assert_eq!(witt_local_symbol(&w, &f, p).unwrap(), witt_evaluate(&w, p).unwrap().scale_int(v));
    }

    #[test]
    fn tame_symbols(c in nonzero(), e in exps(), c2 in nonzero(), e2 in exps()) {
        let k = q_t();
        let f = FieldElement::new(&k, factored(&k, c, &e));
        let g = FieldElement::new(&k, factored(&k, c2, &e2));
        let sym = MilnorSymbol::from_elements(&[f.clone(), g.clone()]).unwrap();
        let set = TruncationSet::new(&[1, 2]).unwrap();
        for p in places(&k) {
            let b = boundary(&sym, &p).unwrap().as_unit().unwrap();
            prop_assert_eq!(b, tame_symbol(&f, &g, &p).unwrap().into_value());
            let (lhs, rhs) = tameres_square(&sym, &p, &set).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert!(weil_reciprocity_product(&f, &g, &places(&k)).unwrap().is_one());
    }

    /// ψ∘φ is the identity on dlog-presented forms.
    #[test]
    fn psi_after_phi(a in coeffs(4), b in coeffs(3), c in coeffs(4), two in any::<bool>()) {
        let k = qx_t();
        let (f, g) = (element(&k, &a, &b), element(&k, &c, &a));
        let (dx, dt) = (d_elem(&k, &k.named("x").unwrap()), d_elem(&k, &k.named("t").unwrap()));
        let w = if two {
            DifferentialForm::monomial(&k, f, &[0, 1])
        } else {
            dx.scale(&f).add(&dt.scale(&g)).unwrap()
        };
        let arity = w.degree();
        let sym = phi(&k, arity, &dlog_presentation(&w)).unwrap();
        prop_assert_eq!(psi(&sym).unwrap(), w);
    }

    /// `ψ(γ_s x) = gh_s ψ(x)`.
    #[test]
    fn ghost_components_intertwine_psi(a in coeffs(6), b in coeffs(3), c in coeffs(4)) {
        let k = q_t();
        let set = TruncationSet::new(&[1, 2, 3, 6]).unwrap();
        let comps = (0..4).map(|i| element(&k, &a[i % a.len()..], &b)).collect();
        let w = WittVector::from_components(&set, &WittRing::Field(k.clone()), comps).unwrap();
        let y = element(&k, &c, &b);
        prop_assume!(!k.is_zero(&y));
        let sym = SomekawaSymbol::new(&k, &k, w, vec![y]).unwrap();
        let image = psi_witt(&sym).unwrap();
        for &s in set.elems() {
            prop_assert_eq!(&psi(&gamma_ghost(&sym, s).unwrap()).unwrap(), image.coord(s).unwrap());
        }
    }
}
