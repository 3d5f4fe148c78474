//! Seeded random inputs.
//!
//! Rationals have numerator and denominator of absolute value at most 100,
//! polynomials have degree at most 4 and ramification indices are at most 5.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use somekawa_core::field::{Elem, Field};
use somekawa_core::laurent::LaurentSeries;
use somekawa_core::places::{LocalForm, Place};
use somekawa_core::witt::{TruncationSet, WittRing, WittVector};
use somekawa_core::Result;

pub type Gen = ChaCha8Rng;

/// Independent stream for one check, derived from the run seed.
pub fn stream(seed: u64, tag: &str) -> Gen {
    let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn rational(g: &mut Gen, bound: i64) -> BigRational {
    let n = g.gen_range(-bound..=bound);
    let d = g.gen_range(1..=bound);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational(g: &mut Gen, bound: i64) -> BigRational {
    loop {
        let r = rational(g, bound);
        if r != BigRational::from_integer(0.into()) {
            return r;
        }
    }
}

/// A random element of `k`: a small polynomial in the generators for
/// function fields, a random coordinate vector for algebraic steps.
pub fn elem(g: &mut Gen, k: &Field) -> Elem {
    use somekawa_core::FieldKind;
    match k.kind() {
        FieldKind::Rational => k.from_rational(&rational(g, 100)).unwrap(),
        FieldKind::Prime(p) => k.from_i64(g.gen_range(0..*p as i64)),
        FieldKind::Algebraic { base, minpoly, .. } => {
            let n = minpoly.len() - 1;
            let coeffs = (0..n).map(|_| small_elem(g, base)).collect();
            k.alg_from_coeffs(coeffs).unwrap()
        }
        FieldKind::Function { base, .. } => {
            let deg = g.gen_range(0..=2);
            let c: Vec<Elem> = (0..=deg).map(|_| small_elem(g, base)).collect();
            k.frac_from_polys(&c, &[base.one()]).unwrap()
        }
    }
}

/// Like [`elem`] with smaller rationals, for nested coefficients.
pub fn small_elem(g: &mut Gen, k: &Field) -> Elem {
    use somekawa_core::FieldKind;
    match k.kind() {
        FieldKind::Rational => k.from_rational(&rational(g, 9)).unwrap(),
        FieldKind::Function { base, .. } => {
            let deg = g.gen_range(0..=1);
            let c: Vec<Elem> = (0..=deg).map(|_| small_elem(g, base)).collect();
            k.frac_from_polys(&c, &[base.one()]).unwrap()
        }
        _ => elem(g, k),
    }
}

pub fn nonzero_elem(g: &mut Gen, k: &Field) -> Elem {
    loop {
        let x = elem(g, k);
        if !k.is_zero(&x) {
            return x;
        }
    }
}

pub fn nonzero_small(g: &mut Gen, k: &Field) -> Elem {
    loop {
        let x = small_elem(g, k);
        if !k.is_zero(&x) {
            return x;
        }
    }
}

pub fn witt(g: &mut Gen, set: &TruncationSet, k: &Field) -> WittVector {
    let comps = set.elems().iter().map(|_| elem(g, k)).collect();
    WittVector::from_components(set, &WittRing::Field(k.clone()), comps).unwrap()
}

/// Monic polynomial `t − r`.
pub fn linear(k: &Field, r: &Elem) -> Vec<Elem> {
    vec![k.neg(r), k.one()]
}

/// A pool of pairwise coprime monic irreducible polynomials over `k`,
/// together with `∞`. Over `ℚ` the pool has linear and quadratic members;
/// over `ℚ(x)` it also contains `t² − x`.
pub fn place_pool(g: &mut Gen, k: &Field, size: usize) -> Vec<Vec<Elem>> {
    let mut pool: Vec<Vec<Elem>> = Vec::new();
    let quads: Vec<Vec<Elem>> = match k.generators().first() {
        Some(x) => {
            let x = k.named(x).unwrap();
            vec![
                vec![k.neg(&x), k.zero(), k.one()],
                vec![k.from_i64(1), k.zero(), k.one()],
                vec![k.add(&x, &k.one()), k.one(), k.one()],
            ]
        }
        None => vec![
            vec![k.from_i64(1), k.zero(), k.one()],
            vec![k.from_i64(-2), k.zero(), k.one()],
            vec![k.from_i64(1), k.from_i64(1), k.one()],
            vec![k.from_i64(3), k.zero(), k.one()],
        ],
    };
    let mut roots: Vec<Elem> = Vec::new();
    while pool.len() < size {
        if g.gen_bool(0.3) {
            let q = quads.choose(g).unwrap().clone();
            if !pool.contains(&q) {
                pool.push(q);
            }
            continue;
        }
        let r = small_elem(g, k);
        if !roots.contains(&r) {
            roots.push(r.clone());
            pool.push(linear(k, &r));
        }
    }
    pool
}

pub fn places(k_t: &Field, polys: &[Vec<Elem>]) -> Result<Vec<Place>> {
    polys.iter().map(|p| Place::finite(k_t, p)).collect()
}

/// `c·Π πᵢ^{eᵢ}` with exponents in `[−lo, hi]`.
pub fn factored(g: &mut Gen, k_t: &Field, polys: &[Vec<Elem>], lo: i64, hi: i64) -> Elem {
    let k = k_t.base().unwrap();
    let c = nonzero_small(g, k);
    let mut acc = k_t.embed(&c, k).unwrap();
    for p in polys {
        let e = g.gen_range(-lo..=hi);
        let pe = k_t.frac_from_polys(p, &[k.one()]).unwrap();
        acc = k_t.mul(&acc, &k_t.pow(&pe, e).unwrap());
    }
    acc
}

/// `num(t)/Π πᵢ^{eᵢ}` with a random numerator of degree at most 4.
pub fn with_poles(g: &mut Gen, k_t: &Field, polys: &[Vec<Elem>], max_pole: i64) -> Elem {
    let k = k_t.base().unwrap();
    let deg = g.gen_range(0..=4);
    let num: Vec<Elem> = (0..=deg).map(|_| small_elem(g, k)).collect();
    let mut acc = k_t.frac_from_polys(&num, &[k.one()]).unwrap();
    for p in polys {
        let e = g.gen_range(0..=max_pole);
        let pe = k_t.frac_from_polys(p, &[k.one()]).unwrap();
        acc = k_t.div(&acc, &k_t.pow_u(&pe, e as u64)).unwrap_or(acc);
    }
    acc
}

/// A Laurent series of order in `[lo, hi]`, exact below `prec`.
pub fn series(g: &mut Gen, k: &Field, lo: i64, hi: i64, prec: i64) -> LaurentSeries {
    let order = g.gen_range(lo..=hi);
    let n = (prec - order).max(0) as usize;
    let coeffs = (0..n).map(|_| small_elem(g, k)).collect();
    LaurentSeries::new(k, order, coeffs, prec)
}

/// A random `q`-form over `k((u))` with `q ∈ {1, 2}` when `k` has one generator.
pub fn local_form(g: &mut Gen, k: &Field, degree: usize, lo: i64, hi: i64, prec: i64) -> LocalForm {
    let r = k.num_generators();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    let all: Vec<usize> = (0..=r).collect();
    collect_keys(&all, degree, 0, &mut Vec::new(), &mut keys);
    let mut w = LocalForm::zero(k, degree);
    for key in keys {
        if g.gen_bool(0.8) {
            w.add_term(&key, series(g, k, lo, hi, prec));
        }
    }
    w
}

fn collect_keys(all: &[usize], degree: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == degree {
        out.push(cur.clone());
        return;
    }
    for i in start..all.len() {
        cur.push(all[i]);
        collect_keys(all, degree, i + 1, cur, out);
        cur.pop();
    }
}
