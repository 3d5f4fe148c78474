use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use somekawa_core::field::{Elem, Field};
use somekawa_core::ghost_form::{gform_frobenius, gform_mul, gform_restrict, gform_trace, gform_verschiebung, GhostForm};
use somekawa_core::kaehler::DifferentialForm;
use somekawa_core::witt::{
    frobenius, ghost, lift, p_typical_decompose, p_typical_recompose, restrict, teichmuller, verschiebung,
    witt_arith, witt_arith_lifted, witt_trace, TruncationSet, WittOp, WittRing, WittVector,
};
use somekawa_core::{Error, Result};

use super::{Outcome, Tally};
use crate::gen::{self, Gen};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn sets() -> Vec<TruncationSet> {
    vec![
        TruncationSet::trivial(),
        TruncationSet::new(&[1, 2]).unwrap(),
        TruncationSet::new(&[1, 2, 3, 6]).unwrap(),
        TruncationSet::range(6),
    ]
}

/// `V_n(x)` into `S`, or zero when `S/n` is empty.
fn v_or_zero(n: u64, x: Result<WittVector>, set: &TruncationSet, ring: &WittRing) -> Result<WittVector> {
    match set.divided_by(n) {
        Err(Error::EmptyTruncation) => Ok(WittVector::zero(set, ring)),
        Err(e) => Err(e),
        Ok(_) => verschiebung(n, &x?, set),
    }
}

fn pick(g: &mut Gen, s: &TruncationSet) -> u64 {
    *s.elems().choose(g).unwrap()
}

fn teich_pow(a: &Elem, e: u64, ring: &WittRing, set: &TruncationSet) -> WittVector {
    let k = ring.arith_field();
    teichmuller(&k.pow_u(a, e), ring, set)
}

fn witt_sample(t: &mut Tally, g: &mut Gen, k: &Field, set: &TruncationSet) -> Option<()> {
    let ring = WittRing::Field(k.clone());
    let w = gen::witt(g, set, k);
    let w2 = gen::witt(g, set, k);
    let a = gen::elem(g, k);
    let b = gen::elem(g, k);
    t.sample();

    // ghost is a ring map; Teichmüller is multiplicative
    let (gw, gw2) = (ghost(&w), ghost(&w2));
    let sum = t.get("w + w'", w.add(&w2))?;
    let prod = t.get("w w'", w.mul(&w2))?;
    let gs: Vec<Elem> = gw.iter().zip(&gw2).map(|(x, y)| k.add(x, y)).collect();
    let gp: Vec<Elem> = gw.iter().zip(&gw2).map(|(x, y)| k.mul(x, y)).collect();
    t.eq("gh(w+w')", &ghost(&sum), &gs);
    t.eq("gh(ww')", &ghost(&prod), &gp);
    let ta = teichmuller(&a, &ring, set);
    let tb = teichmuller(&b, &ring, set);
    t.check("[a][b] = [ab]", ta.mul(&tb), &teichmuller(&k.mul(&a, &b), &ring, set));

    // (i)
    t.check("F_1 = Id", frobenius(1, &w), &w);
    t.check("V_1 = Id", verschiebung(1, &w, set), &w);
    let n = pick(g, set);
    let m = pick(g, &set.divided_by(n).unwrap());
    let fmn = t.get("F_m F_n", frobenius(n, &w).and_then(|x| frobenius(m, &x)))?;
    t.check("F_m F_n = F_mn", frobenius(m * n, &w), &fmn);
    let x = gen::witt(g, &set.divided_by(m * n).unwrap(), k);
    let vv = t.get("V_m V_n", verschiebung(n, &x, &set.divided_by(m).unwrap()).and_then(|y| verschiebung(m, &y, set)))?;
    t.check("V_m V_n = V_mn", verschiebung(m * n, &x, set), &vv);

    // (ii)
    let mut acc = WittVector::zero(set, &ring);
    for (&s, c) in set.elems().iter().zip(w.components()) {
        let v = t.get("V_s([w_s])", verschiebung(s, &teichmuller(c, &ring, &set.divided_by(s).unwrap()), set))?;
        acc = t.get("sum", acc.add(&v))?;
    }
    t.eq("w = sum V_s([w_s])", &acc, &w);

    // (iii) and (iv)
    let coprime: Vec<(u64, u64)> = set
        .elems()
        .iter()
        .flat_map(|&a| set.elems().iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| gcd(a, b) == 1 && set.contains(a * b))
        .collect();
    let &(m, n) = coprime.choose(g).unwrap();
    let y = gen::witt(g, &set.divided_by(n).unwrap(), k);
    let lhs = t.get("F_m V_n", verschiebung(n, &y, set).and_then(|z| frobenius(m, &z)))?;
    let rhs = t.get("V_n F_m", frobenius(m, &y).and_then(|z| verschiebung(n, &z, &set.divided_by(m).unwrap())))?;
    t.eq("F_m V_n = V_n F_m", &lhs, &rhs);
    let n = pick(g, set);
    let y = gen::witt(g, &set.divided_by(n).unwrap(), k);
    let fv = t.get("F_n V_n", verschiebung(n, &y, set).and_then(|z| frobenius(n, &z)))?;
    t.eq("F_n V_n = n", &fv, &y.scale_int(n as i64));

    // (v)
    let (m, n) = (pick(g, set), pick(g, set));
    let d = gcd(m, n);
    let sm = set.divided_by(m).unwrap();
    let lhs = t.get("F_m V_n [a]", verschiebung(n, &teichmuller(&a, &ring, &set.divided_by(n).unwrap()), set).and_then(|z| frobenius(m, &z)))?;
    let inner = sm.divided_by(n / d).map(|src| teich_pow(&a, m / d, &ring, &src));
    let rhs = t.get("V([a]^(m/d))", v_or_zero(n / d, inner, &sm, &ring))?;
    t.eq("F_m V_n [a] = d V_{n/d}([a]^{m/d})", &lhs, &rhs.scale_int(d as i64));

    // (vi)
    let (n, r) = (pick(g, set), pick(g, set));
    let d = gcd(n, r);
    let l = n * r / d;
    let va = t.get("V_n[a]", verschiebung(n, &teichmuller(&a, &ring, &set.divided_by(n).unwrap()), set))?;
    let vb = t.get("V_r[b]", verschiebung(r, &teichmuller(&b, &ring, &set.divided_by(r).unwrap()), set))?;
    let lhs = t.get("V_n[a] V_r[b]", va.mul(&vb))?;
    let inner = set.divided_by(l).map(|src| {
        let c = k.mul(&k.pow_u(&a, r / d), &k.pow_u(&b, n / d));
        teichmuller(&c, &ring, &src)
    });
    let rhs = t.get("V_l(...)", v_or_zero(l, inner, set, &ring))?;
    t.eq("V_n[a] V_r[b]", &lhs, &rhs.scale_int(d as i64));

    // (vii)
    let n = pick(g, set);
    let src = set.divided_by(n).unwrap();
    let y = gen::witt(g, &src, k);
    let lhs = t.get("[a] V_n(y)", verschiebung(n, &y, set).and_then(|z| ta.mul(&z)))?;
    let rhs = t.get("V_n([a]^n y)", teich_pow(&a, n, &ring, &src).mul(&y).and_then(|z| verschiebung(n, &z, set)))?;
    t.eq("[a] V_n(y) = V_n([a]^n y)", &lhs, &rhs);
    Some(())
}

pub fn c01(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c01");
    let fields = [Field::rationals(), Field::prime(5).unwrap()];
    for k in &fields {
        for set in sets() {
            for _ in 0..200 {
                witt_sample(&mut t, &mut g, k, &set);
            }
        }
    }
    t.finish(json!({"fields": ["Q", "F_5"], "sets": ["{1}", "{1,2}", "{1,2,3,6}", "{1..6}"], "per_set": 200}))
}

/// A second lift of `w ∈ W_S(F_p)`: canonical lift plus `p·r`.
fn other_lift(g: &mut Gen, w: &WittVector, p: u64) -> Result<WittVector> {
    let WittRing::Field(k) = w.ring() else { unreachable!() };
    let q = lift::lift_field(k)?;
    let comps = w
        .components()
        .iter()
        .map(|c| {
            let l = lift::lift_elem(k, c)?;
            Ok(q.add(&l, &q.from_i64(p as i64 * g.gen_range(-3..=3))))
        })
        .collect::<Result<Vec<_>>>()?;
    WittVector::from_components(w.set(), &WittRing::Field(q), comps)
}

fn canonical_lift(w: &WittVector) -> Result<WittVector> {
    let WittRing::Field(k) = w.ring() else { unreachable!() };
    let q = lift::lift_field(k)?;
    let comps = w.components().iter().map(|c| lift::lift_elem(k, c)).collect::<Result<Vec<_>>>()?;
    WittVector::from_components(w.set(), &WittRing::Field(q), comps)
}

fn reduce(w: &WittVector, ring: &WittRing) -> Result<WittVector> {
    let WittRing::Field(k) = ring else { unreachable!() };
    w.map_components(ring, |c| lift::reduce_elem(k, c))
}

pub fn c02(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c02");
    let all = sets();
    for i in 0..100 {
        let p = if i % 2 == 0 { 3 } else { 5 };
        let k = Field::prime(p).unwrap();
        let ring = WittRing::Field(k.clone());
        let set = all.choose(&mut g).unwrap().clone();
        let (a, b) = (gen::witt(&mut g, &set, &k), gen::witt(&mut g, &set, &k));
        t.sample();
        let Some((a1, b1)) = t.get("lift", canonical_lift(&a).and_then(|x| Ok((x, canonical_lift(&b)?)))) else { continue };
        let Some((a2, b2)) = t.get("lift", other_lift(&mut g, &a, p).and_then(|x| Ok((x, other_lift(&mut g, &b, p)?)))) else { continue };
        t.nontrivial(a1 != a2 || b1 != b2);
        for op in [WittOp::Add, WittOp::Mul] {
            let direct = t.get("direct", witt_arith(&a, &b, op));
            let r1 = t.get("lift 1", witt_arith_lifted(&a1, &b1, op, &ring));
            let r2 = t.get("lift 2", witt_arith_lifted(&a2, &b2, op, &ring));
            if let (Some(d), Some(r1), Some(r2)) = (direct, r1, r2) {
                t.eq(&format!("{op:?}: lift 1 vs lift 2"), &r1, &r2);
                t.eq(&format!("{op:?}: lift vs direct"), &r1, &d);
            }
        }
        let n = pick(&mut g, &set);
        let f_direct = t.get("F_n", frobenius(n, &a));
        let f_lift = t.get("F_n on lift", frobenius(n, &a2).and_then(|x| reduce(&x, &ring)));
        if let (Some(x), Some(y)) = (f_direct, f_lift) {
            t.eq("F_n lift independence", &x, &y);
        }
    }
    t.finish(json!({"samples": 100, "primes": [3, 5], "ops": ["add", "mul", "F_n"]}))
}

pub fn c03(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c03");
    let q = Field::rationals();
    let set = TruncationSet::range(6);
    for p in [3u64, 5] {
        for _ in 0..100 {
            let w = gen::witt(&mut g, &set, &q);
            let w2 = gen::witt(&mut g, &set, &q);
            t.sample();
            let Some(parts) = t.get("decompose", p_typical_decompose(&w, p)) else { continue };
            t.check("recompose(decompose(w)) = w", p_typical_recompose(&parts, &set, p), &w);
            let Some(parts2) = t.get("decompose", p_typical_decompose(&w2, p)) else { continue };
            let Some(prod) = t.get("product", w.mul(&w2).and_then(|x| p_typical_decompose(&x, p))) else { continue };
            for ((j, x), ((_, y), (_, z))) in parts.iter().zip(parts2.iter().zip(&prod)) {
                t.check(&format!("component {j} is multiplicative"), x.mul(y), z);
            }
        }
    }
    t.finish(json!({"set": "{1..6}", "primes": [3, 5], "samples_per_prime": 100}))
}

struct Tower {
    f: Field,
    e1: Field,
    e2: Field,
}

fn number_tower() -> Tower {
    let f = Field::rationals();
    let e1 = Field::algebraic(&f, vec![f.from_i64(-2), f.zero(), f.one()], "a").unwrap();
    let e2 = Field::algebraic(&e1, vec![e1.from_i64(-3), e1.zero(), e1.one()], "b").unwrap();
    Tower { f, e1, e2 }
}

fn function_tower() -> Tower {
    let f = Field::function_field(&Field::rationals(), &["y"]).unwrap();
    let y = f.named("y").unwrap();
    let e1 = Field::algebraic(&f, vec![f.neg(&y), f.zero(), f.one()], "a").unwrap();
    let c = e1.embed(&f.add(&y, &f.one()), &f).unwrap();
    let e2 = Field::algebraic(&e1, vec![e1.neg(&c), e1.zero(), e1.one()], "b").unwrap();
    Tower { f, e1, e2 }
}

/// Random degree-1 ghost form over a field with one transcendental generator.
fn one_form(g: &mut Gen, k: &Field, set: &TruncationSet) -> GhostForm {
    let coords = set.elems().iter().map(|_| DifferentialForm::monomial(k, gen::elem(g, k), &[0])).collect();
    GhostForm::from_coords(set, coords).unwrap()
}

pub fn c04(seed: u64) -> Outcome {
    let mut t = Tally::default();
    let mut g = gen::stream(seed, "c04");
    let nt = number_tower();
    let ft = function_tower();
    let f5 = Field::prime(5).unwrap();
    let f25 = Field::algebraic(&f5, vec![f5.from_i64(-2), f5.zero(), f5.one()], "c").unwrap();
    let all = sets();
    for _ in 0..100 {
        t.sample();
        let set = all.choose(&mut g).unwrap().clone();
        let one = TruncationSet::trivial();

        // (a): W_{1} trace is the field trace, also over finite fields
        for (e, f) in [(&nt.e2, &nt.f), (&f25, &f5)] {
            let x = gen::elem(&mut g, e);
            let w = WittVector::from_components(&one, &WittRing::Field(e.clone()), vec![x.clone()]).unwrap();
            if let (Some(tw), Some(tf)) = (t.get("witt trace", witt_trace(e, f, &w)), t.get("field trace", e.trace_to(&x, f))) {
                t.eq("degree-0 trace = field trace", &tw.components()[0], &tf);
            }
        }

        // (c) on Witt vectors over Q ⊂ Q(√2) ⊂ Q(√2,√3)
        let w = gen::witt(&mut g, &set, &nt.e2);
        let direct = t.get("Tr E2/F", witt_trace(&nt.e2, &nt.f, &w));
        let staged = t.get("Tr E1/F Tr E2/E1", witt_trace(&nt.e2, &nt.e1, &w).and_then(|x| witt_trace(&nt.e1, &nt.f, &x)));
        if let (Some(a), Some(b)) = (direct, staged) {
            t.eq("transitivity (Witt)", &a, &b);
        }

        // (c) on 1-forms over Q(y) ⊂ Q(y,√y) ⊂ Q(y,√y,√(y+1))
        let fs = if set.len() > 2 { TruncationSet::new(&[1, 2]).unwrap() } else { set.clone() };
        let om = one_form(&mut g, &ft.e2, &fs);
        let direct = t.get("Tr E2/F", gform_trace(&ft.e2, &ft.f, &om));
        let staged = t.get("staged", gform_trace(&ft.e2, &ft.e1, &om).and_then(|x| gform_trace(&ft.e1, &ft.f, &x)));
        if let (Some(a), Some(b)) = (direct, staged) {
            t.eq("transitivity (forms)", &a, &b);
        }

        // (b): Tr(x·ω) = Tr(x)·ω for ω over the base
        let x = gen::witt(&mut g, &fs, &ft.e1);
        let base_form = one_form(&mut g, &ft.f, &fs);
        let lifted = base_form.map_coords(|c| c.embed_into(&ft.e1));
        let lhs = lifted
            .and_then(|l| gform_mul(&GhostForm::from_witt(&x)?, &l))
            .and_then(|p| gform_trace(&ft.e1, &ft.f, &p));
        let rhs = witt_trace(&ft.e1, &ft.f, &x).and_then(|tx| gform_mul(&GhostForm::from_witt(&tx)?, &base_form));
        if let (Some(a), Some(b)) = (t.get("Tr(x w)", lhs), t.get("Tr(x) w", rhs)) {
            t.eq("projection formula", &a, &b);
        }

        // (d): commutation with F_n, V_n and restriction
        let n = pick(&mut g, &fs);
        let w = gen::witt(&mut g, &set, &nt.e1);
        let n2 = pick(&mut g, &set);
        let a = t.get("Tr F_n", frobenius(n2, &w).and_then(|x| witt_trace(&nt.e1, &nt.f, &x)));
        let b = t.get("F_n Tr", witt_trace(&nt.e1, &nt.f, &w).and_then(|x| frobenius(n2, &x)));
        if let (Some(a), Some(b)) = (a, b) {
            t.eq("trace commutes with F_n (Witt)", &a, &b);
        }
        let src = set.divided_by(n2).unwrap();
        let v = gen::witt(&mut g, &src, &nt.e1);
        let a = t.get("Tr V_n", verschiebung(n2, &v, &set).and_then(|x| witt_trace(&nt.e1, &nt.f, &x)));
        let b = t.get("V_n Tr", witt_trace(&nt.e1, &nt.f, &v).and_then(|x| verschiebung(n2, &x, &set)));
        if let (Some(a), Some(b)) = (a, b) {
            t.eq("trace commutes with V_n (Witt)", &a, &b);
        }
        let sub = set.divided_by(set.max()).unwrap();
        let a = t.get("Tr R", restrict(&w, &sub).and_then(|x| witt_trace(&nt.e1, &nt.f, &x)));
        let b = t.get("R Tr", witt_trace(&nt.e1, &nt.f, &w).and_then(|x| restrict(&x, &sub)));
        if let (Some(a), Some(b)) = (a, b) {
            t.eq("trace commutes with restriction (Witt)", &a, &b);
        }
        let om = one_form(&mut g, &ft.e1, &fs);
        let a = t.get("Tr F_n", gform_frobenius(n, &om).and_then(|x| gform_trace(&ft.e1, &ft.f, &x)));
        let b = t.get("F_n Tr", gform_trace(&ft.e1, &ft.f, &om).and_then(|x| gform_frobenius(n, &x)));
        if let (Some(a), Some(b)) = (a, b) {
            t.eq("trace commutes with F_n (forms)", &a, &b);
        }
        let small = one_form(&mut g, &ft.e1, &fs.divided_by(n).unwrap());
        let a = t.get("Tr V_n", gform_verschiebung(n, &small, &fs).and_then(|x| gform_trace(&ft.e1, &ft.f, &x)));
        let b = t.get("V_n Tr", gform_trace(&ft.e1, &ft.f, &small).and_then(|x| gform_verschiebung(n, &x, &fs)));
        if let (Some(a), Some(b)) = (a, b) {
            t.eq("trace commutes with V_n (forms)", &a, &b);
        }
        let a = t.get("Tr R", gform_restrict(&om, &one).and_then(|x| gform_trace(&ft.e1, &ft.f, &x)));
        let b = t.get("R Tr", gform_trace(&ft.e1, &ft.f, &om).and_then(|x| gform_restrict(&x, &one)));
        if let (Some(a), Some(b)) = (a, b) {
            t.eq("trace commutes with restriction (forms)", &a, &b);
        }
    }
    t.finish(json!({
        "samples": 100,
        "towers": ["Q < Q(a) < Q(a,b), a^2=2, b^2=3", "Q(y) < Q(y)(a) < Q(y)(a,b), a^2=y, b^2=y+1", "F_5 < F_25"],
    }))
}

pub fn c11(_seed: u64) -> Outcome {
    let mut t = Tally::default();
    for (p, r) in [(3u64, 2i64), (5, 2)] {
        let k = Field::prime(p).unwrap();
        let e = Field::algebraic(&k, vec![k.from_i64(-r), k.zero(), k.one()], "c").unwrap();
        let set = TruncationSet::new(&[1, p]).unwrap();
        let ring = WittRing::Field(e.clone());
        let mut image = std::collections::BTreeSet::new();
        let pi = p as i64;
        for code in 0..pi.pow(4) {
            let digit = |i: u32| k.from_i64((code / pi.pow(i)) % pi);
            let c0 = e.alg_from_coeffs(vec![digit(0), digit(1)]).unwrap();
            let c1 = e.alg_from_coeffs(vec![digit(2), digit(3)]).unwrap();
            let w = WittVector::from_components(&set, &ring, vec![c0, c1]).unwrap();
            t.sample();
            if let Some(tw) = t.get("trace", witt_trace(&e, &k, &w)) {
                image.insert(format!("{tw}"));
            }
        }
        t.eq(&format!("|Tr(W_2(F_{}))|", p * p), &image.len(), &((p * p) as usize));
    }
    t.finish(json!({"primes": [3, 5], "n": 2, "m": 2, "enumeration": "exhaustive"}))
}
