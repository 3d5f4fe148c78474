#![allow(dead_code)]

use proptest::prelude::*;
use somekawa_core::{Elem, Field};

pub fn q() -> Field {
    Field::rationals()
}

pub fn q_t() -> Field {
    Field::function_field(&q(), &["t"]).unwrap()
}

pub fn qx_t() -> Field {
    Field::function_field(&q(), &["x", "t"]).unwrap()
}

/// `ℚ(√2)` with generator `a`.
pub fn sqrt2() -> Field {
    Field::algebraic(&q(), vec![q().from_i64(-2), q().zero(), q().one()], "a").unwrap()
}

/// `ℚ(√2, √3)` with generators `a`, `b`.
pub fn sqrt2_sqrt3() -> Field {
    let e = sqrt2();
    Field::algebraic(&e, vec![e.from_i64(-3), e.zero(), e.one()], "b").unwrap()
}

/// `n/d`, or `n` when `d` vanishes in `k`.
pub fn rat(k: &Field, (n, d): (i64, i64)) -> Elem {
    let n = k.from_i64(n);
    k.div(&n, &k.from_i64(d)).unwrap_or(n)
}

/// `Σ cᵢ mᵢ` where `mᵢ` runs through monomials in the tower's names with
/// exponents the base-3 digits of `i`.
pub fn combo(k: &Field, coeffs: &[(i64, i64)]) -> Elem {
    let gens: Vec<Elem> = k.names().iter().map(|n| k.named(n).unwrap()).collect();
    let mut acc = k.zero();
    for (i, c) in coeffs.iter().enumerate() {
        let mut m = rat(k, *c);
        let mut j = i;
        for g in &gens {
            m = k.mul(&m, &k.pow_u(g, (j % 3) as u64));
            j /= 3;
        }
        acc = k.add(&acc, &m);
    }
    acc
}

pub fn coeffs(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=6), 1..=len)
}

/// Random element of `k`: a combination, divided by another one when `k`
/// has transcendental variables.
pub fn element(k: &Field, num: &[(i64, i64)], den: &[(i64, i64)]) -> Elem {
    let n = combo(k, num);
    if k.num_generators() == 0 {
        return n;
    }
    let d = combo(k, den);
    k.div(&n, &d).unwrap_or(n)
}
