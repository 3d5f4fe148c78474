use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use somekawa_core::field::{Elem, Field, FieldElement};
use somekawa_core::ghost_form::{gform_d, gform_dlog_teich, gform_mul, GhostForm};
use somekawa_core::kaehler::DifferentialForm;
use somekawa_core::laurent::LaurentSeries;
use somekawa_core::places::{
    ramified_pullback_check, refined_residue, refined_residue_ghost, residue_formula_g, residue_formula_g_series,
    residue_theorem_check_ghost, trace_residue_square_check, with_infinity, LocalForm, Place,
};
use somekawa_core::witt::TruncationSet;
use somekawa_core::Result;

use super::{Outcome, Tally};
use crate::gen::{self, Gen};

fn q_y() -> Field {
    Field::function_field(&Field::rationals(), &["y"]).unwrap()
}

fn q_t() -> Field {
    Field::function_field(&Field::rationals(), &["t"]).unwrap()
}

fn qx_t() -> Field {
    let qx = Field::function_field(&Field::rationals(), &["x"]).unwrap();
    Field::function_field(&qx, &["t"]).unwrap()
}

/// Polynomial in `s = 1/u`, exact below `prec`.
fn poly_in_inverse(g: &mut Gen, k: &Field, deg: i64, prec: i64) -> LaurentSeries {
    let mut c: Vec<Elem> = (0..=deg).map(|_| gen::small_elem(g, k)).collect();
    c.reverse();
    LaurentSeries::new(k, -deg, c, prec)
}

fn zero_form(k: &Field, degree: usize) -> DifferentialForm {
    DifferentialForm::zero(k, degree)
}

pub fn c05(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c05");
    let k = q_y();
    let u = 1;
    for _ in 0..100 {
        t.sample();
        let deg = g.gen_range(1..=2);
        let w1 = gen::local_form(&mut g, &k, deg, -3, 1, 3);
        let w2 = gen::local_form(&mut g, &k, deg, -3, 1, 3);
        let (Some(r1), Some(r2)) = (t.get("Res", w1.residue()), t.get("Res", w2.residue())) else { continue };
        t.nontrivial(!r1.is_zero());

        // (a) k-linearity
        let c = gen::small_elem(&mut g, &Field::rationals());
        let cq = k.embed(&c, &Field::rationals()).unwrap();
        let comb = w1.add(&w2.scale(&LaurentSeries::constant(&k, cq.clone(), 3)).unwrap()).unwrap();
        let want = r1.add(&r2.scale(&cq)).unwrap();
        t.check("Res linear", comb.residue(), &want);

        // (d) invariance under u ↦ σ(u), σ = c₀u + c₁u² + ..., c₀ ≠ 0
        let mut sc: Vec<Elem> = vec![gen::nonzero_small(&mut g, &k)];
        sc.extend((0..5).map(|_| gen::small_elem(&mut g, &k)));
        let sigma = LaurentSeries::new(&k, 1, sc, 7);
        t.check("Res(σ*ω) = Res ω", w1.substitute(&sigma).and_then(|x| x.residue()), &r1);

        // (e) no residue on A[[u]] coefficients
        let int = gen::local_form(&mut g, &k, deg, 0, 2, 3);
        t.check("Res on k(y)[[u]]", int.residue(), &zero_form(&k, deg - 1));

        // (e) nor on forms in s = 1/u: A(s)·dB(s), A(s)·dB(s)∧dC(s)
        let a = LocalForm::monomial(poly_in_inverse(&mut g, &k, 3, 12), &[]);
        let b = LocalForm::monomial(poly_in_inverse(&mut g, &k, 3, 12), &[]);
        let mut w = t.get("A dB", b.d().and_then(|db| a.wedge(&db)));
        if deg == 2 {
            let c = LocalForm::monomial(poly_in_inverse(&mut g, &k, 2, 12), &[]);
            w = w.and_then(|w| t.get("∧ dC", c.d().and_then(|dc| w.wedge(&dc))));
        }
        if let Some(w) = w {
            t.check("Res on k(y)[1/u]", w.residue(), &zero_form(&k, deg - 1));
        }

        // (f) Res(ω ∧ du/u) = ω(0) for ω over k(y)[[u]] without du
        let mut om = LocalForm::zero(&k, deg - 1);
        let head: Vec<usize> = if deg == 2 { vec![0] } else { vec![] };
        let s = gen::series(&mut g, &k, 0, 0, 3);
        let s0 = s.coeff(0).unwrap();
        om.add_term(&head, s);
        let du_u = LocalForm::monomial(LaurentSeries::monomial(&k, k.one(), -1, 3), &[u]);
        let mut want = zero_form(&k, deg - 1);
        want.add_term(&head, s0);
        t.check("Res(ω∧dlog u) = ω(0)", om.wedge(&du_u).and_then(|x| x.residue()), &want);
    }

    // (g) the closed formula against a direct series computation
    let q = Field::rationals();
    let set = TruncationSet::range(6);
    let nz = [-3i64, -2, -1, 1, 2, 3];
    for n in 1..=3u64 {
        for m in 1..=3u64 {
            for &i in &nz {
                for &j in &nz {
                    t.sample();
                    let a = FieldElement::new(&q, gen::nonzero_small(&mut g, &q));
                    let b = FieldElement::new(&q, gen::nonzero_small(&mut g, &q));
                    let Some(closed) = t.get("closed formula", residue_formula_g(n, m, j, i, &a, &b, &set)) else { continue };
                    t.nontrivial(!closed.is_zero());
                    t.check(&format!("formula n={n} m={m} i={i} j={j}"), residue_formula_g_series(n, m, j, i, &a, &b, &set), &closed);
                }
            }
        }
    }
    t.finish(json!({
        "field": "Q(y)((u))",
        "random_forms": 100,
        "properties": ["linearity", "change of uniformizer", "vanishing on A[[u]] and A[1/u]", "Res(w dlog u) = w(0)", "closed formula"],
        "closed_formula": {"n_m": "{1,2,3}^2", "i_j": "[-3,3] minus 0", "set": "{1..6}"},
    }))
}

struct Setting {
    k_t: Field,
    places: Vec<Place>,
    polys: Vec<Vec<Elem>>,
}

fn setting(g: &mut Gen, k_t: &Field, size: usize) -> Setting {
    let k = k_t.base().unwrap();
    let polys = gen::place_pool(g, k, size);
    let places = gen::places(k_t, &polys).unwrap();
    let places = with_infinity(k_t, &places).unwrap();
    Setting { k_t: k_t.clone(), places, polys }
}

/// `[a]·d[b] + [c]·dlog[h]`, optionally wedged with `dlog[h']`; exponents
/// are at most `e` in absolute value.
fn random_ghost_form(g: &mut Gen, st: &Setting, set: &TruncationSet, degree: usize, e: i64) -> Result<GhostForm> {
    let k_t = &st.k_t;
    let a = gen::factored(g, k_t, &st.polys, e, e);
    let b = gen::factored(g, k_t, &st.polys, 1, 1);
    let c = gen::with_poles(g, k_t, &st.polys, e);
    let h = gen::factored(g, k_t, &st.polys, e, e);
    let teich = |x: &Elem| GhostForm::teichmuller(x, k_t, set);
    let first = gform_mul(&teich(&a)?, &gform_d(&teich(&b)?)?)?;
    let second = gform_mul(&teich(&c)?, &gform_dlog_teich(&h, k_t, set)?)?;
    let w = first.add(&second)?;
    if degree == 1 {
        return Ok(w);
    }
    let h2 = gen::factored(g, k_t, &st.polys, 1, 1);
    gform_mul(&w, &gform_dlog_teich(&h2, k_t, set)?)
}

pub fn c06(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c06");
    let sets = [TruncationSet::trivial(), TruncationSet::new(&[1, 2]).unwrap()];
    // (field, forms, max degree, max exponent, max places)
    let runs = [(q_t(), 100usize, 1usize, 2i64, 4usize), (qx_t(), 25, 2, 1, 3)];
    for (k_t, count, max_deg, e, max_places) in &runs {
        let k = k_t.base().unwrap();
        for i in 0..*count {
            t.sample();
            let set = sets.choose(&mut g).unwrap().clone();
            let degree = 1 + i % max_deg;
            let size = g.gen_range(2..=*max_places);
            let st = setting(&mut g, k_t, size);
            let Some(w) = t.get("form", random_ghost_form(&mut g, &st, &set, degree, *e)) else { continue };
            let local = st.places.iter().any(|p| refined_residue_ghost(&w, p).is_ok_and(|r| !r.is_zero()));
            t.nontrivial(local);
            let zero = GhostForm::zero(&set, k, degree - 1).unwrap();
            t.check("sum of traced residues", residue_theorem_check_ghost(&w, &st.places), &zero);
        }
    }
    t.finish(json!({
        "forms": {"Q(t)": 100, "Q(x)(t)": 25},
        "sets": ["{1}", "{1,2}"],
        "shape": "[a] d[b] + [c] dlog[h] (wedge dlog[h'] in degree 2)",
    }))
}

pub fn c08(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c08");
    let k = q_y();
    for _ in 0..50 {
        let deg = g.gen_range(1..=2);
        let w = gen::local_form(&mut g, &k, deg, -4, 1, 3);
        for e in 1..=5 {
            t.sample();
            let Some((lhs, rhs)) = t.get("ramify", ramified_pullback_check(&w, e)) else { continue };
            t.nontrivial(!rhs.is_zero());
            // independent oracle: e times the u^{-1}du coefficient read off directly
            let mut direct = zero_form(&k, deg - 1);
            for (key, s) in w.terms() {
                if key.last() == Some(&w.u_index()) {
                    direct.add_term(&key[..key.len() - 1], k.mul_int(&s.coeff(-1).unwrap(), e));
                }
            }
            t.eq(&format!("Res(pullback, e={e}) = e Res"), &lhs, &rhs);
            t.eq("e Res matches coefficient", &rhs, &direct);
        }
    }
    t.finish(json!({"forms": 50, "e": [1, 2, 3, 4, 5], "field": "Q(y)((u))"}))
}

pub fn c12(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c12");
    for (i, k_t) in [q_t(), qx_t()].iter().cycle().take(50).enumerate() {
        t.sample();
        let k = k_t.base().unwrap();
        let st = setting(&mut g, k_t, 3);
        let tv = k_t.generator_index("t").unwrap();
        let mut w = DifferentialForm::monomial(k_t, gen::with_poles(&mut g, k_t, &st.polys, 3), &[tv]);
        if tv > 0 {
            w.add_term(&[0], gen::factored(&mut g, k_t, &st.polys, 2, 2));
        }
        let mut acc = k.zero();
        let mut any = false;
        for p in &st.places {
            let Some(r) = t.get("refined residue", refined_residue(&w, p)) else { continue };
            let c = r.coeff(&[]);
            any |= !p.residue_field().is_zero(&c);
            if let Some(tr) = t.get("trace", p.residue_field().trace_to(&c, k)) {
                acc = k.add(&acc, &tr);
            }
        }
        t.nontrivial(any);
        t.eq(&format!("sum of traces (form {i})"), &acc, &k.zero());
    }

    // trace commutes with the residue on local forms over Q(y)(√y)
    let k = q_y();
    let y = k.named("y").unwrap();
    let e = Field::algebraic(&k, vec![k.neg(&y), k.zero(), k.one()], "a").unwrap();
    for _ in 0..50 {
        t.sample();
        let deg = g.gen_range(1..=2);
        let w = gen::local_form(&mut g, &e, deg, -3, 1, 3);
        if let Some((lhs, rhs)) = t.get("trres", trace_residue_square_check(&k, &w)) {
            t.nontrivial(!rhs.is_zero());
            t.eq("Res Tr = Tr Res", &lhs, &rhs);
        }
    }
    t.finish(json!({
        "one_forms": {"Q(t) and Q(x)(t)": 50},
        "local_trace_forms": 50,
        "local_extension": "Q(y)(a), a^2 = y",
    }))
}
