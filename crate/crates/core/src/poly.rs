//! Dense univariate polynomials over a [`Field`], stored low degree first.
//!
//! All functions expect and return trimmed coefficient vectors: the zero
//! polynomial is the empty vector and the last entry is never zero.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Elem, Field, FieldKind};
use crate::modgcd;

pub(crate) fn trim(f: &Field, mut a: Vec<Elem>) -> Vec<Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub(crate) fn degree(a: &[Elem]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn constant(f: &Field, c: Elem) -> Vec<Elem> {
    trim(f, vec![c])
}

pub(crate) fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(f, out)
}

pub(crate) fn neg(f: &Field, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub(crate) fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub(crate) fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &prod);
        }
    }
    trim(f, out)
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = f.inv(&b[db]).expect("leading coefficient is a unit");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul(&c, bc);
            rem[i + shift] = f.sub(&rem[i + shift], &t);
        }
        quot[shift] = c;
        // The leading term cancels exactly; drop it even if the field
        // arithmetic left a canonical zero in place.
        rem.pop();
        rem = trim(f, rem);
    }
    (trim(f, quot), rem)
}

pub(crate) fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    divrem(f, a, b).1
}

/// Exact quotient; panics in debug builds if the division leaves a remainder.
pub(crate) fn div_exact(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (q, r) = divrem(f, a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub(crate) fn monic(f: &Field, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Modulus of the coprimality test in [`gcd`].
const P: u64 = 2_147_483_647;

/// Evaluation points for the nested variables of a function field tower.
const POINTS: [u64; 4] = [1_234_567, 7_654_321, 19_283_746, 5_647_382];

fn mod_inv(a: u64) -> u64 {
    mod_pow(a, P - 2)
}

fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % P as u128) as u64;
        }
        a = ((a as u128 * a as u128) % P as u128) as u64;
        e >>= 1;
    }
    acc
}

fn big_mod(n: &BigInt) -> u64 {
    let m = (n % BigInt::from(P)).to_i64().unwrap();
    m.rem_euclid(P as i64) as u64
}

/// Image of `x` under `ℚ(x₁)…(x_r) ⊇ R → 𝔽_P`, evaluating the variables at
/// fixed points; `None` where a denominator vanishes or the tower has an
/// algebraic or finite step.
fn image(f: &Field, x: &Elem, depth: usize) -> Option<u64> {
    match (f.kind(), x) {
        (FieldKind::Rational, Elem::Rat(r)) => {
            let d = big_mod(r.denom());
            (d != 0).then(|| ((big_mod(r.numer()) as u128 * mod_inv(d) as u128) % P as u128) as u64)
        }
        (FieldKind::Function { base, .. }, Elem::Frac(n, d)) => {
            let pt = POINTS[depth % POINTS.len()];
            let n = eval_mod(&image_poly(base, n, depth + 1)?, pt);
            let d = eval_mod(&image_poly(base, d, depth + 1)?, pt);
            (d != 0).then(|| ((n as u128 * mod_inv(d) as u128) % P as u128) as u64)
        }
        _ => None,
    }
}

fn image_poly(f: &Field, a: &[Elem], depth: usize) -> Option<Vec<u64>> {
    a.iter().map(|c| image(f, c, depth)).collect()
}

fn eval_mod(a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % P as u128) as u64)
}

fn degree_of_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = mod_inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = ((*a.last().unwrap() as u128 * inv as u128) % P as u128) as u64;
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = ((c as u128 * bc as u128) % P as u128) as u64;
                a[i + shift] = (a[i + shift] + P - t) % P;
            }
            a.pop();
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `a` and `b` are certainly coprime: their images modulo `P`
/// keep their degrees and are coprime, so the resultant does not vanish.
fn coprime_by_image(f: &Field, a: &[Elem], b: &[Elem]) -> bool {
    if matches!(f.kind(), FieldKind::Algebraic { .. } | FieldKind::Prime(_)) {
        return false;
    }
    let (Some(ia), Some(ib)) = (image_poly(f, a, 0), image_poly(f, b, 0)) else { return false };
    if ia.last() == Some(&0) || ib.last() == Some(&0) {
        return false;
    }
    degree_of_gcd_mod(ia, ib) == 0
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub(crate) fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if degree(a) == Some(0) || degree(b) == Some(0) {
        return vec![f.one()];
    }
    if !a.is_empty() && !b.is_empty() && coprime_by_image(f, a, b) {
        return vec![f.one()];
    }
    if let (FieldKind::Function { base, .. }, false, false) = (f.kind(), a.is_empty(), b.is_empty()) {
        if matches!(base.kind(), FieldKind::Rational) {
            if let Some(g) = modular_gcd(f, base, a, b) {
                return g;
            }
        }
        return gcd_over_function_field(f, base, a, b);
    }
    if let (FieldKind::Rational, false, false) = (f.kind(), a.is_empty(), b.is_empty()) {
        if let Some(g) = heuristic_gcd(f, a, b) {
            return g;
        }
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

fn rat(c: &Elem) -> &BigRational {
    match c {
        Elem::Rat(r) => r,
        _ => unreachable!("rational coefficient expected"),
    }
}

/// Integer primitive part of a polynomial over `ℚ`.
fn integer_primitive(a: &[Elem]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(rat(c).denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| rat(c).numer() * (&l / rat(c).denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Heuristic gcd over `ℤ[x]` (evaluation at a large integer, `ξ`-adic
/// reconstruction, trial division); `None` when the attempts run out.
fn heuristic_gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Option<Vec<Elem>> {
    let (pa, pb) = (integer_primitive(a), integer_primitive(b));
    let norm = |p: &[BigInt]| p.iter().map(|c| c.abs()).max().unwrap();
    let mut xi: BigInt = norm(&pa).min(norm(&pb)) * 2 + 29;
    for _ in 0..6 {
        let eval = |p: &[BigInt]| p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xi + c);
        let gamma = eval(&pa).gcd(&eval(&pb));
        if gamma.is_zero() {
            return None;
        }
        // symmetric ξ-adic digits of γ
        let mut digits = Vec::new();
        let mut rest = gamma;
        let half = &xi / 2;
        while !rest.is_zero() {
            let mut d = rest.mod_floor(&xi);
            if d > half {
                d -= &xi;
            }
            rest = (rest - &d) / &xi;
            digits.push(d);
        }
        let cand: Vec<Elem> = digits.into_iter().map(|d| Elem::Rat(BigRational::from_integer(d))).collect();
        let cand = trim(f, cand);
        if !cand.is_empty() {
            let g = monic(f, &cand);
            // a constant candidate proves nothing here: the modular test
            // already suggested a common factor
            if degree(&g) != Some(0) && divrem(f, a, &g).1.is_empty() && divrem(f, b, &g).1.is_empty() {
                return Some(g);
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Polynomial in the outer variable with coefficients in `B[x]`, where the
/// function field is `B(x)`.
type Nested = Vec<Vec<Elem>>;

/// Clears denominators of a polynomial over `B(x)`.
fn clear_denominators(f: &Field, base: &Field, a: &[Elem]) -> Nested {
    let parts: Vec<(&[Elem], &[Elem])> = a.iter().map(|c| f.frac_parts(c).expect("function field element")).collect();
    let mut l: Vec<Elem> = vec![base.one()];
    for (_, d) in &parts {
        let g = gcd(base, &l, d);
        l = mul(base, &div_exact(base, &l, &g), d);
    }
    parts.iter().map(|(n, d)| mul(base, n, &div_exact(base, &l, d))).collect()
}

/// Divides out the content in `B[x]` and normalizes the leading scalar.
fn primitive(base: &Field, p: Nested) -> Nested {
    let mut content: Vec<Elem> = Vec::new();
    for c in p.iter().filter(|c| !c.is_empty()) {
        content = if content.is_empty() { monic(base, c) } else { gcd(base, &content, c) };
        if degree(&content) == Some(0) {
            break;
        }
    }
    let p: Nested = if degree(&content).unwrap_or(0) > 0 {
        p.iter().map(|c| div_exact(base, c, &content)).collect()
    } else {
        p
    };
    let lead = p.last().and_then(|c| c.last()).cloned();
    match lead.and_then(|l| base.inv(&l)) {
        Some(inv) => p.iter().map(|c| scale(base, c, &inv)).collect(),
        None => p,
    }
}

fn is_one(f: &Field, a: &[Elem]) -> bool {
    a.len() == 1 && f.is_one(&a[0])
}

/// Pseudo-remainder of `a` by `b` up to a factor from `B[x]`.
fn pseudo_rem(base: &Field, a: &Nested, b: &Nested) -> Nested {
    let lb = b.last().unwrap();
    let mut r = a.clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        if !is_one(base, lb) {
            for x in r.iter_mut() {
                *x = mul(base, x, lb);
            }
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = sub(base, &r[i + shift], &mul(base, &c, bc));
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_empty()) {
            r.pop();
        }
    }
    r
}

/// Clears denominators of a polynomial over `ℚ(x)` down to `ℤ[x]`.
fn integer_nested(f: &Field, base: &Field, a: &[Elem]) -> modgcd::IntBi {
    let n = clear_denominators(f, base, a);
    let l = n.iter().flatten().fold(BigInt::one(), |l, c| l.lcm(rat(c).denom()));
    n.iter().map(|c| c.iter().map(|x| rat(x).numer() * (&l / rat(x).denom())).collect()).collect()
}

fn modular_gcd(f: &Field, base: &Field, a: &[Elem], b: &[Elem]) -> Option<Vec<Elem>> {
    let g = modgcd::gcd(&integer_nested(f, base, a), &integer_nested(f, base, b))?;
    let g: Vec<Elem> = g
        .into_iter()
        .map(|c| {
            let c: Vec<Elem> = c.into_iter().map(Elem::Rat).collect();
            f.frac_from_polys(&trim(base, c), &[base.one()]).unwrap()
        })
        .collect();
    Some(monic(f, &trim(f, g)))
}

/// Primitive remainder sequence over `B[x]`, avoiding rational functions in
/// `x` during the Euclidean steps.
fn gcd_over_function_field(f: &Field, base: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    // the content of the larger input does not affect the gcd, and the first
    // pseudo-remainder usually makes it much smaller
    let mut x = clear_denominators(f, base, a);
    let mut y = primitive(base, clear_denominators(f, base, b));
    while y.len() > 1 {
        let r = pseudo_rem(base, &x, &y);
        if r.is_empty() {
            break;
        }
        x = y;
        y = primitive(base, r);
    }
    if y.len() <= 1 {
        return vec![f.one()];
    }
    let g: Vec<Elem> = y.iter().map(|c| f.frac_from_polys(c, &[base.one()]).unwrap()).collect();
    monic(f, &g)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub(crate) fn ext_gcd_left(f: &Field, a: &[Elem], m: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Elem>, Vec<Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            (scale(f, &r0, &inv), scale(f, &s0, &inv))
        }
    }
}

/// Formal derivative with respect to the polynomial variable.
pub(crate) fn derivative(f: &Field, a: &[Elem]) -> Vec<Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul_int(c, i as i64))
        .collect();
    trim(f, out)
}

/// Applies `map` to every coefficient, landing in `target`.
pub(crate) fn map_coeffs(target: &Field, a: &[Elem], mut map: impl FnMut(&Elem) -> Elem) -> Vec<Elem> {
    trim(target, a.iter().map(&mut map).collect())
}

/// Horner evaluation at `x`, where the coefficients are first embedded
/// into the field of `x` by `embed`.
pub(crate) fn eval_in(
    target: &Field,
    a: &[Elem],
    x: &Elem,
    mut embed: impl FnMut(&Elem) -> Elem,
) -> Elem {
    let mut acc = target.zero();
    for c in a.iter().rev() {
        acc = target.mul(&acc, x);
        acc = target.add(&acc, &embed(c));
    }
    acc
}

/// Resultant `res(a, b)` over a field; both polynomials nonzero.
pub(crate) fn resultant(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    let da = degree(a).expect("nonzero polynomial");
    let db = degree(b).expect("nonzero polynomial");
    if db == 0 {
        return f.pow_u(&b[0], da as u64);
    }
    let r = rem(f, a, b);
    let Some(dr) = degree(&r) else {
        return f.zero();
    };
    let mut out = f.mul(&f.pow_u(&b[db], (da - dr) as u64), &resultant(f, b, &r));
    if (da * db) % 2 == 1 {
        out = f.neg(&out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qx() -> Field {
        Field::function_field(&Field::rationals(), &["x"]).unwrap()
    }

    /// Polynomial in `t` over `ℚ(x)` with small integer coefficients in `x`.
    fn poly_in(f: &Field, c: &[Vec<i64>]) -> Vec<Elem> {
        let base = Field::rationals();
        let coeffs = c
            .iter()
            .map(|xs| {
                let num: Vec<Elem> = xs.iter().map(|&v| base.from_i64(v)).collect();
                f.frac_from_polys(&trim(&base, num), &[base.one()]).unwrap_or_else(|_| f.zero())
            })
            .collect();
        trim(f, coeffs)
    }

    fn coeffs() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-5i64..=5, 1..=3), 1..=3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn modular_gcd_matches_prs(a in coeffs(), b in coeffs(), c in coeffs()) {
            let f = qx();
            let base = Field::rationals();
            let (a, b, c) = (poly_in(&f, &a), poly_in(&f, &b), poly_in(&f, &c));
            prop_assume!(!a.is_empty() && !b.is_empty() && !c.is_empty());
            let (ac, bc) = (mul(&f, &a, &c), mul(&f, &b, &c));
            let prs = gcd_over_function_field(&f, &base, &ac, &bc);
            if let Some(m) = modular_gcd(&f, &base, &ac, &bc) {
                prop_assert_eq!(&m, &prs);
            }
            prop_assert!(rem(&f, &prs, &monic(&f, &c)).is_empty() || degree(&c) == Some(0));
            prop_assert_eq!(gcd(&f, &ac, &bc), prs);
        }
    }
}
