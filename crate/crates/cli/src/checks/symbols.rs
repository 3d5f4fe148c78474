use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use somekawa_core::field::{Elem, Field, FieldElement};
use somekawa_core::kaehler::{dlog_elem, DifferentialForm};
use somekawa_core::milnor::{tame_symbol, tameres_square, weil_reciprocity_product, MilnorSymbol};
use somekawa_core::places::{witt_evaluate, witt_local_symbol, with_infinity, Place};
use somekawa_core::somekawa::{
    cathelineau_instance, dlog_presentation, gamma_ghost, pf_generator_eval, phi, psi, psi_witt, wr_generator_eval,
    PfSlot, SomekawaSymbol, WrDatum,
};
use somekawa_core::witt::{ghost, TruncationSet, WittRing, WittVector};
use somekawa_core::{Error, Result};

use super::{Outcome, Tally};
use crate::gen::{self, Gen};

fn func(k: &Field, var: &str) -> Field {
    Field::function_field(k, &[var]).unwrap()
}

fn q_y() -> Field {
    func(&Field::rationals(), "y")
}

fn q_t() -> Field {
    func(&Field::rationals(), "t")
}

fn qx_t() -> Field {
    func(&func(&Field::rationals(), "x"), "t")
}

fn pool_places(g: &mut Gen, k_t: &Field, size: usize) -> (Vec<Vec<Elem>>, Vec<Place>) {
    let polys = gen::place_pool(g, k_t.base().unwrap(), size);
    let places = with_infinity(k_t, &gen::places(k_t, &polys).unwrap()).unwrap();
    (polys, places)
}

pub fn c07(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c07");
    for (k_t, count) in [(q_t(), 100), (qx_t(), 25)] {
        let k = k_t.base().unwrap().clone();
        for _ in 0..count {
            t.sample();
            let size = g.gen_range(2..=4);
            let (polys, places) = pool_places(&mut g, &k_t, size);
            let f = FieldElement::new(&k_t, gen::factored(&mut g, &k_t, &polys, 2, 2));
            let h = FieldElement::new(&k_t, gen::factored(&mut g, &k_t, &polys, 2, 2));
            let local = places.iter().any(|p| tame_symbol(&f, &h, p).is_ok_and(|x| !x.is_one()));
            t.nontrivial(local);
            t.check("product of normed tame symbols", weil_reciprocity_product(&f, &h, &places), &FieldElement::one(&k));
            let set = TruncationSet::trivial();
            if let Some(sym) = t.get("symbol", MilnorSymbol::from_elements(&[f, h])) {
                for p in &places {
                    if let Some((lhs, rhs)) = t.get("tameres", tameres_square(&sym, p, &set)) {
                        t.eq(&format!("dlog ∂ = ∂ dlog on the pair at {p}"), &lhs, &rhs);
                    }
                }
            }
        }
    }

    // dlog ∘ ∂_P = ∂_P ∘ dlog on symbols {f} over Q(t) and {f, h} over Q(x)(t)
    let sets = [TruncationSet::trivial(), TruncationSet::new(&[1, 2]).unwrap()];
    for (k_t, arity) in [(q_t(), 1), (qx_t(), 2)] {
        for _ in 0..50 {
            t.sample();
            let set = sets.choose(&mut g).unwrap();
            let (polys, places) = pool_places(&mut g, &k_t, 3);
            let entries: Vec<FieldElement> =
                (0..arity).map(|_| FieldElement::new(&k_t, gen::factored(&mut g, &k_t, &polys, 2, 2))).collect();
            let Some(sym) = t.get("symbol", MilnorSymbol::from_elements(&entries)) else { continue };
            for p in &places {
                if let Some((lhs, rhs)) = t.get("tameres", tameres_square(&sym, p, set)) {
                    t.nontrivial(!rhs.is_zero());
                    t.eq(&format!("dlog ∂ = ∂ dlog at {p}"), &lhs, &rhs);
                }
            }
        }
    }
    t.finish(json!({
        "weil_pairs": {"Q(t)": 100, "Q(x)(t)": 25},
        "tameres": {"Q(t), one entry": 50, "Q(x)(t), two entries": 50, "sets": ["{1}", "{1,2}"]},
    }))
}

struct Tower {
    k: Field,
    e1: Field,
    e2: Field,
}

fn tower() -> Tower {
    let k = q_y();
    let y = k.named("y").unwrap();
    let e1 = Field::algebraic(&k, vec![k.neg(&y), k.zero(), k.one()], "a").unwrap();
    let c = e1.embed(&k.add(&y, &k.one()), &k).unwrap();
    let e2 = Field::algebraic(&e1, vec![e1.neg(&c), e1.zero(), e1.one()], "b").unwrap();
    Tower { k, e1, e2 }
}

fn nonzero_entries(g: &mut Gen, k: &Field, n: usize) -> Vec<Elem> {
    (0..n).map(|_| gen::nonzero_small(g, k)).collect()
}

/// Root blocks `A`, `B` with equal power sums `p_1..p_{b−1}`, so that
/// `v_∞(1 − Π(t−a)/Π(t−b)) = b`.
const BLOCKS: [(&[i64], &[i64], i64); 3] = [
    (&[0, 4, 5], &[1, 2, 6], 3),
    (&[0, 4, 7, 11], &[1, 2, 9, 10], 4),
    (&[0, 5, 6, 16, 17, 22], &[1, 2, 10, 12, 20, 21], 6),
];

/// Roots of a ratio of monic polynomials with a known order of contact at ∞.
struct Ratio {
    num: Vec<Elem>,
    den: Vec<Elem>,
    budget: i64,
}

fn block_ratio(g: &mut Gen, k: &Field, shift: &Elem, budget_at_least: i64) -> Ratio {
    let &(a, b, budget) = BLOCKS.iter().find(|b| b.2 >= budget_at_least).unwrap_or(&BLOCKS[2]);
    let lam = k.from_i64(*[1i64, -1, 2, 3].choose(g).unwrap());
    let map = |xs: &[i64]| xs.iter().map(|&x| k.add(&k.mul(&lam, &k.from_i64(x)), shift)).collect();
    Ratio { num: map(a), den: map(b), budget }
}

fn free_ratio(a: &Elem, b: &Elem) -> Ratio {
    Ratio { num: vec![a.clone()], den: vec![b.clone()], budget: 1 }
}

/// `Π(t−a)/Π(t−b)`, or its pullback along `t ↦ 1/t`: `Π(1−at)/Π(1−bt)`.
fn ratio_elem(k_t: &Field, r: &Ratio, inverted: bool) -> Elem {
    let k = k_t.base().unwrap();
    let lin = |a: &Elem| if inverted { vec![k.one(), k.neg(a)] } else { vec![k.neg(a), k.one()] };
    let prod = |xs: &[Elem]| xs.iter().fold(k_t.one(), |acc, a| k_t.mul(&acc, &k_t.frac_from_polys(&lin(a), &[k.one()]).unwrap()));
    k_t.div(&prod(&r.num), &prod(&r.den)).unwrap()
}

fn ratio_places(k_t: &Field, r: &Ratio, inverted: bool) -> Result<Vec<Place>> {
    let k = k_t.base().unwrap();
    r.num
        .iter()
        .chain(&r.den)
        .map(|a| {
            let root = if inverted { k.inv(a).ok_or(Error::DivisionByZero)? } else { a.clone() };
            Place::finite(k_t, &gen::linear(k, &root))
        })
        .collect()
}

/// Polynomial `p(t)` or `p(1/t)`.
fn poly_elem(k_t: &Field, c: &[Elem], inverted: bool) -> Elem {
    let k = k_t.base().unwrap();
    if !inverted {
        return k_t.frac_from_polys(c, &[k.one()]).unwrap();
    }
    let mut rev = c.to_vec();
    rev.reverse();
    let mut den = vec![k.zero(); c.len() - 1];
    den.push(k.one());
    k_t.frac_from_polys(&rev, &den).unwrap()
}

/// Shapes of `g₀`: truncation set and component degrees.
const SHAPES: [(&[u64], &[usize]); 6] = [
    (&[1], &[1]),
    (&[1], &[2]),
    (&[1, 2], &[0, 1]),
    (&[1, 2], &[1, 0]),
    (&[1, 3], &[0, 1]),
    (&[1, 2], &[1, 1]),
];

/// Pole order of `gh_s(g₀)` at the non-integral place, bounded by degrees.
fn pole_bound(set: &[u64], degs: &[usize]) -> i64 {
    set.iter()
        .map(|&s| set.iter().zip(degs).filter(|(&d, _)| s % d == 0).map(|(&d, &e)| (s / d) as i64 * e as i64).max().unwrap_or(0))
        .max()
        .unwrap()
}

/// An admissible (WR) datum: `g₀` polynomial, `f` (and `g₁`) from root
/// blocks whose contact with `1` at `∞` pays for the modulus.
fn admissible(g: &mut Gen, arity: usize) -> Result<WrDatum> {
    let k = if arity == 0 { Field::rationals() } else { q_y() };
    let k_t = func(&k, "t");
    let inverted = g.gen_bool(0.3);
    let &(s_elems, degs) = SHAPES.choose(g).unwrap();
    let set = TruncationSet::new(s_elems)?;
    let m = set.max() as i64;
    let need = (m + 1) * pole_bound(s_elems, degs);
    let ring = WittRing::Field(k_t.clone());
    let comps = degs
        .iter()
        .map(|&d| {
            let mut c: Vec<Elem> = (0..=d).map(|_| gen::small_elem(g, &k)).collect();
            c[d] = gen::nonzero_small(g, &k);
            poly_elem(&k_t, &c, inverted)
        })
        .collect();
    let g0 = WittVector::from_components(&set, &ring, comps)?;

    // shifts keep every root nonzero and the two supports apart
    let f_shift = k.from_i64(g.gen_range(1..=3) * 100 + 7);
    let (f_ratio, g_ratio) = if arity == 0 {
        (block_ratio(g, &k, &f_shift, need), None)
    } else {
        let y = k.named("y").unwrap();
        let g_shift = k.add(&y, &k.from_i64(g.gen_range(1..=5)));
        let want = g.gen_range(1..=need);
        let f_ratio = block_ratio(g, &k, &f_shift, want);
        let rest = need - f_ratio.budget;
        let g_ratio = if rest <= 1 {
            free_ratio(&g_shift, &k.add(&g_shift, &k.one()))
        } else {
            block_ratio(g, &k, &g_shift, rest)
        };
        (f_ratio, Some(g_ratio))
    };
    let mut places = ratio_places(&k_t, &f_ratio, inverted)?;
    let f = FieldElement::new(&k_t, ratio_elem(&k_t, &f_ratio, inverted));
    let mut gs = Vec::new();
    if let Some(r) = &g_ratio {
        places.extend(ratio_places(&k_t, r, inverted)?);
        gs.push(FieldElement::new(&k_t, ratio_elem(&k_t, r, inverted)));
    }
    if inverted {
        places.push(Place::finite(&k_t, &gen::linear(&k, &k.zero()))?);
    }
    WrDatum::new(f, g0, gs, places)
}

pub fn c09(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c09");
    let tw = tower();
    let sets = [TruncationSet::trivial(), TruncationSet::new(&[1, 2]).unwrap()];

    // (PF) generators of both kinds
    for i in 0..50 {
        t.sample();
        let set = sets.choose(&mut g).unwrap();
        let (e1, e2) = if g.gen_bool(0.5) { (&tw.k, &tw.e1) } else { (&tw.e1, &tw.e2) };
        let arity = g.gen_range(1..=2);
        let slot = if i % 2 == 0 {
            PfSlot::Witt { x: gen::witt(&mut g, set, e2), entries: nonzero_entries(&mut g, e1, arity) }
        } else {
            let i0 = g.gen_range(0..arity);
            let y = gen::nonzero_elem(&mut g, e2);
            PfSlot::Mult { w: gen::witt(&mut g, set, e1), entries: nonzero_entries(&mut g, e1, arity - 1), i0, y }
        };
        if let Some((lhs, rhs)) = t.get("PF", pf_generator_eval(&tw.k, e1, e2, &slot)) {
            t.nontrivial(!lhs.is_zero());
            t.eq(&format!("projection formula ({})", if i % 2 == 0 { "Witt slot" } else { "G_m slot" }), &lhs, &rhs);
        }
    }

    // admissible (WR) data sum to zero
    for i in 0..50 {
        t.sample();
        let Some(d) = t.get("WR datum", admissible(&mut g, i % 2)) else { continue };
        if let Some(ev) = t.get("WR", wr_generator_eval(&d)) {
            t.nontrivial(ev.terms.iter().any(|x| !x.value.is_zero()));
            let zero = ev.total.scale_int(0);
            t.eq("sum of local terms", &ev.total, &zero);
        }
    }

    // a datum violating the modulus is refused
    let k_t = q_t();
    let tv = k_t.named("t").unwrap();
    let g0 = WittVector::from_components(&TruncationSet::trivial(), &WittRing::Field(k_t.clone()), vec![k_t.pow_u(&tv, 3)]).unwrap();
    let q = Field::rationals();
    let r = free_ratio(&q.from_i64(2), &q.from_i64(3));
    let f = FieldElement::new(&k_t, ratio_elem(&k_t, &r, false));
    let bad = WrDatum::new(f, g0, vec![], ratio_places(&k_t, &r, false).unwrap()).and_then(|d| wr_generator_eval(&d));
    t.ok("g0 = t^3 with f = (t-2)/(t-3) is refused", matches!(bad, Err(Error::ModulusViolation { .. })));

    // Cathelineau's relation
    let qy = q_y();
    let y = qy.named("y").unwrap();
    let cases: Vec<(FieldElement, bool)> = vec![
        (FieldElement::from_ratio(&q, 1, 3).unwrap(), false),
        (FieldElement::from_ratio(&q, 2, 5).unwrap(), false),
        (FieldElement::from_i64(&q, -1), false),
        (FieldElement::from_ratio(&q, 1, 2).unwrap(), false),
        (FieldElement::new(&qy, y.clone()), true),
    ];
    for (x, generic) in &cases {
        let k = x.field().clone();
        for arity in [1usize, 2] {
            t.sample();
            let tail: Vec<FieldElement> = (1..arity).map(|_| FieldElement::from_i64(&k, 3)).collect();
            let Some(ev) = t.get("cathelineau", cathelineau_instance(x, &tail).and_then(|d| wr_generator_eval(&d))) else { continue };
            t.ok(&format!("Cathelineau x = {x}, q = {}", arity + 1), ev.total.is_zero());
            if *generic && arity == 1 {
                // oracle: the two nonzero terms are x dlog x = dy and (1-x) dlog(1-x) = -dy
                let dy = DifferentialForm::monomial(&k, k.one(), &[0]);
                let mut vals: Vec<DifferentialForm> =
                    ev.terms.iter().filter(|x| !x.value.is_zero()).map(|x| x.value.coords()[0].clone()).collect();
                vals.sort_by_key(|w| format!("{w:?}"));
                let mut want = vec![dy.clone(), dy.neg()];
                want.sort_by_key(|w| format!("{w:?}"));
                t.nontrivial(true);
                t.eq("Cathelineau local values", &vals, &want);
            }
        }
    }

    // ψ ∘ φ = Id on forms over Q(x, y)
    let kxy = Field::function_field(&Field::rationals(), &["x", "y"]).unwrap();
    for _ in 0..50 {
        t.sample();
        let deg = g.gen_range(1..=2);
        let mut w = DifferentialForm::zero(&kxy, deg);
        let keys: &[&[usize]] = if deg == 1 { &[&[0], &[1]] } else { &[&[0, 1]] };
        for key in keys {
            w.add_term(key, gen::elem(&mut g, &kxy));
        }
        t.nontrivial(!w.is_zero());
        t.check("psi(phi(w)) = w", phi(&kxy, deg, &dlog_presentation(&w)).and_then(|s| psi(&s)), &w);
        // φ on a single dlog term against the form computed by hand
        let x = gen::nonzero_elem(&mut g, &kxy);
        let x1 = gen::nonzero_elem(&mut g, &kxy);
        if let Some(want) = t.get("dlog", dlog_elem(&kxy, &x1)) {
            t.check("psi{x, x1} = x dlog x1", phi(&kxy, 1, &[(x.clone(), vec![x1])]).and_then(|s| psi(&s)), &want.scale(&x));
        }
    }
    t.finish(json!({
        "pf_generators": 50,
        "wr_data": {"count": 50, "construction": "equal power sum root blocks, optionally pulled back along t -> 1/t"},
        "modulus_violation": "g0 = t^3, f = (t-2)/(t-3)",
        "cathelineau": ["1/3", "2/5", "-1", "1/2", "y over Q(y)"],
        "psi_phi_forms": 50,
    }))
}

/// `Res_{u=0}(G·F'/F)` straight from the expansions at `P`, with just enough
/// precision for the `u⁻¹` coefficient.
fn series_local_symbol(gh: &Elem, f: &Elem, p: &Place) -> Result<Elem> {
    let pole = p.valuation_elem(gh).map_or(0, |v| (-v).max(0));
    let prec = pole + p.valuation_elem(f)?.abs() + 4;
    let gs = p.expand(gh, prec)?;
    let fs = p.expand(f, prec)?;
    let l = fs.derivative().checked_div(&fs)?;
    gs.checked_mul(&l)?.coeff(-1)
}

pub fn c10(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c10");
    let tw = tower();
    let set = TruncationSet::new(&[1, 2, 3, 6]).unwrap();

    // gh_s ∘ ψ_W = ψ ∘ γ_s
    for _ in 0..50 {
        t.sample();
        let ext = if g.gen_bool(0.5) { &tw.k } else { &tw.e1 };
        let arity = g.gen_range(0..=2);
        let w = gen::witt(&mut g, &set, ext);
        let Some(sym) = t.get("symbol", SomekawaSymbol::new(&tw.k, ext, w, nonzero_entries(&mut g, ext, arity))) else { continue };
        let Some(pw) = t.get("psi_W", psi_witt(&sym)) else { continue };
        t.nontrivial(!pw.is_zero());
        for &s in set.elems() {
            t.check(&format!("gh_{s} psi_W = psi gamma_{s}"), gamma_ghost(&sym, s).and_then(|x| psi(&x)), pw.coord(s).unwrap());
        }
    }

    // ghost components of local symbols against series residues
    let k_t = q_t();
    let sets = [TruncationSet::new(&[1, 2]).unwrap(), set.clone()];
    for i in 0..50 {
        t.sample();
        let st = &sets[i % 2];
        let (polys, places) = pool_places(&mut g, &k_t, 3);
        let ring = WittRing::Field(k_t.clone());
        let comps = st.elems().iter().map(|_| gen::with_poles(&mut g, &k_t, &polys, 1)).collect();
        let w = WittVector::from_components(st, &ring, comps).unwrap();
        let f = FieldElement::new(&k_t, gen::factored(&mut g, &k_t, &polys, 2, 2));
        let gh = ghost(&w);
        for p in &places {
            let Some(sym) = t.get("local symbol", witt_local_symbol(&w, &f, p)) else { continue };
            t.nontrivial(!sym.is_zero());
            for (j, s) in st.elems().iter().enumerate() {
                if let Some(want) = t.get("series", series_local_symbol(&gh[j], f.value(), p)) {
                    t.eq(&format!("gh_{s} of local symbol at {p}"), &ghost(&sym)[j], &want);
                }
            }
        }

        // integral oracle: ∂_P(w, f) = v_P(f)·w(P)
        let comps = st.elems().iter().map(|_| gen::factored(&mut g, &k_t, &polys, 0, 2)).collect();
        let w = WittVector::from_components(st, &ring, comps).unwrap();
        for p in places.iter().filter(|p| !p.is_infinite()) {
            let (Some(v), Some(val)) = (t.get("valuation", p.valuation_elem(f.value())), t.get("w(P)", witt_evaluate(&w, p))) else {
                continue;
            };
            t.check(&format!("integral local symbol at {p}"), witt_local_symbol(&w, &f, p), &val.scale_int(v));
        }
    }
    t.finish(json!({
        "gamma_vs_psi_W": {"samples": 50, "set": "{1,2,3,6}", "base": "Q(y)", "extensions": ["Q(y)", "Q(y)(a), a^2 = y"]},
        "local_symbols": {"samples": 50, "sets": ["{1,2}", "{1,2,3,6}"], "oracles": ["series residue of G F'/F", "v_P(f) w(P) for integral w"]},
    }))
}
