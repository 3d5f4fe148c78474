//! Modular gcd in `ℚ(x)[t]`.
//!
//! Inputs are cleared to `ℤ[x][t]`. Modulo each prime the gcd is computed at
//! many points `x = α`, scaled by the gcd of the leading coefficients and
//! interpolated in `x`. Images are combined by Chinese remaindering and
//! rational reconstruction, and the candidate is checked by pseudo-division.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `t` with coefficients in `ℤ[x]`, both low degree first.
pub(crate) type IntBi = Vec<Vec<BigInt>>;

const PRIMES: [u64; 40] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497, 2147483489,
    2147483477, 2147483423, 2147483399, 2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059, 2147483053, 2147483033, 2147483029,
    2147482951, 2147482949, 2147482943, 2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801,
];

/// Extra evaluation points tried beyond the degree bound before a prime is
/// abandoned.
const SLACK: u64 = 64;

#[derive(Clone, Copy)]
struct Zp(u64);

impl Zp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }

    fn reduce(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }

    fn trim(self, mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn eval(self, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    fn monic(self, a: Vec<u64>) -> Vec<u64> {
        match a.last() {
            Some(&l) => {
                let inv = self.inv(l);
                a.into_iter().map(|c| self.mul(c, inv)).collect()
            }
            None => a,
        }
    }

    /// Monic gcd of univariate polynomials.
    fn gcd(self, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
        let (mut a, mut b) = (self.trim(a), self.trim(b));
        while !b.is_empty() {
            let inv = self.inv(*b.last().unwrap());
            while a.len() >= b.len() {
                let c = self.mul(*a.last().unwrap(), inv);
                let shift = a.len() - b.len();
                for (i, &bc) in b.iter().enumerate() {
                    a[i + shift] = self.sub(a[i + shift], self.mul(c, bc));
                }
                a.pop();
                a = self.trim(a);
            }
            core::mem::swap(&mut a, &mut b);
        }
        self.monic(a)
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    fn interpolate(self, xs: &[u64], ys: &[u64]) -> Vec<u64> {
        let mut poly: Vec<u64> = Vec::new();
        let mut basis: Vec<u64> = vec![1];
        for (&x, &y) in xs.iter().zip(ys) {
            let c = self.mul(self.sub(y, self.eval(&poly, x)), self.inv(self.eval(&basis, x)));
            if poly.len() < basis.len() {
                poly.resize(basis.len(), 0);
            }
            for (p, &b) in poly.iter_mut().zip(&basis) {
                *p = self.add(*p, self.mul(c, b));
            }
            // basis ← basis·(X − x)
            let mut next = vec![0; basis.len() + 1];
            for (i, &b) in basis.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], b);
                next[i] = self.sub(next[i], self.mul(b, x));
            }
            basis = next;
        }
        self.trim(poly)
    }
}

fn degree_x(a: &IntBi) -> usize {
    a.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
}

/// Image of the gcd modulo `p`, normalized so that the leading coefficient
/// in `x` of its leading coefficient in `t` is 1. `None` for a prime that
/// lowers a degree or runs out of good points.
fn image_gcd(zp: Zp, a: &IntBi, b: &IntBi) -> Option<Vec<Vec<u64>>> {
    let red = |p: &IntBi| -> Vec<Vec<u64>> { p.iter().map(|c| zp.trim(c.iter().map(|x| zp.reduce(x)).collect())).collect() };
    let (ap, bp) = (red(a), red(b));
    let (la, lb) = (ap.last()?, bp.last()?);
    if la.is_empty() || lb.is_empty() {
        return None;
    }
    let gamma = zp.gcd(la.clone(), lb.clone());
    let bound = gamma.len() - 1 + degree_x(a).min(degree_x(b));
    let mut dmin = usize::MAX;
    let mut xs: Vec<u64> = Vec::new();
    let mut vals: Vec<Vec<u64>> = Vec::new();
    let mut alpha = 0u64;
    while xs.len() <= bound {
        alpha += 1;
        if alpha > bound as u64 + SLACK + dmin.min(64) as u64 {
            return None;
        }
        if zp.eval(la, alpha) == 0 || zp.eval(lb, alpha) == 0 {
            continue;
        }
        let at = |p: &[Vec<u64>]| p.iter().map(|c| zp.eval(c, alpha)).collect::<Vec<u64>>();
        let g = zp.gcd(at(&ap), at(&bp));
        let d = g.len() - 1;
        if d == 0 {
            return Some(vec![vec![1]]);
        }
        if d > dmin {
            continue;
        }
        if d < dmin {
            dmin = d;
            xs.clear();
            vals.clear();
        }
        let s = zp.eval(&gamma, alpha);
        xs.push(alpha);
        vals.push(g.into_iter().map(|c| zp.mul(c, s)).collect());
    }
    let mut out: Vec<Vec<u64>> =
        (0..=dmin).map(|j| zp.interpolate(&xs, &vals.iter().map(|v| v[j]).collect::<Vec<_>>())).collect();
    let lead = *out.last()?.last()?;
    let inv = zp.inv(lead);
    for c in out.iter_mut() {
        for x in c.iter_mut() {
            *x = zp.mul(*x, inv);
        }
    }
    Some(out)
}

/// `r/s ≡ u (mod m)` with `|r|, s ≤ √(m/2)`.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = core::mem::replace(&mut r1, r2);
        s0 = core::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// True when `h` divides `a` in `ℚ(x)[t]`, by pseudo-division in `ℤ[x][t]`.
fn divides(h: &IntBi, a: &IntBi) -> bool {
    let lh = h.last().unwrap();
    let mut r = a.clone();
    while r.len() >= h.len() {
        let c = r.last().unwrap().clone();
        let shift = r.len() - h.len();
        for x in r.iter_mut() {
            *x = poly_mul(x, lh);
        }
        for (i, hc) in h.iter().enumerate() {
            r[i + shift] = poly_sub(&r[i + shift], &poly_mul(&c, hc));
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_empty()) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Gcd of nonzero `a` and `b` in `ℚ(x)[t]`, as a polynomial in `t` over
/// `ℚ[x]` (any normalization); `None` if the primes run out.
pub(crate) fn gcd(a: &IntBi, b: &IntBi) -> Option<Vec<Vec<BigRational>>> {
    let mut best = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut last: Option<Vec<Vec<BigRational>>> = None;
    for &p in &PRIMES {
        let zp = Zp(p);
        let Some(img) = image_gcd(zp, a, b) else { continue };
        if img.len() == 1 {
            return Some(vec![vec![BigRational::one()]]);
        }
        let d = img.len() - 1;
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            modulus = BigInt::one();
            acc = vec![Vec::new(); d + 1];
            last = None;
        }
        // Chinese remaindering coefficientwise
        let pb = BigInt::from(p);
        let minv = BigInt::from(zp.inv(zp.reduce(&modulus)));
        for (c, im) in acc.iter_mut().zip(&img) {
            let n = c.len().max(im.len());
            c.resize(n, BigInt::zero());
            for (i, x) in c.iter_mut().enumerate() {
                let v = BigInt::from(im.get(i).copied().unwrap_or(0));
                let delta = ((v - &*x) * &minv).mod_floor(&pb);
                *x += &modulus * delta;
            }
        }
        modulus *= &pb;
        let cand: Option<Vec<Vec<BigRational>>> = acc
            .iter()
            .map(|c| c.iter().map(|x| rational_reconstruction(x, &modulus)).collect::<Option<Vec<_>>>())
            .collect();
        let Some(cand) = cand else { continue };
        if last.as_ref() == Some(&cand) {
            let den = cand.iter().flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let h: IntBi = cand
                .iter()
                .map(|c| {
                    let mut v: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
                    while v.last().is_some_and(|x| x.is_zero()) {
                        v.pop();
                    }
                    v
                })
                .collect();
            if divides(&h, a) && divides(&h, b) {
                return Some(cand);
            }
        }
        last = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[&[i64]]) -> IntBi {
        v.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[1]);
        let inv7 = BigInt::from(7).extended_gcd(&m).x;
        let u = (BigInt::from(-3) * inv7).mod_floor(&m);
        assert_eq!(rational_reconstruction(&u, &m), Some(BigRational::new((-3).into(), 7.into())));
    }

    #[test]
    fn common_linear_factor() {
        // a = (t + x)(t − 2), b = (t + x)(x·t + 1)
        let a = z(&[&[0, -2], &[-2, 1], &[1]]);
        let b = z(&[&[0, 1], &[1, 0, 1], &[0, 1]]);
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g.len(), 2);
        // proportional to t + x
        assert_eq!(g[0].len(), 2);
        assert!(g[0][0].is_zero());
        assert_eq!(g[0][1], g[1][0]);
    }

    #[test]
    fn coprime_inputs() {
        let a = z(&[&[1], &[0, 1]]);
        let b = z(&[&[0, 0, 3], &[1]]);
        assert_eq!(gcd(&a, &b).unwrap(), vec![vec![BigRational::one()]]);
    }

    #[test]
    fn divisibility_check() {
        let a = z(&[&[0, -2], &[-2, 1], &[1]]);
        assert!(divides(&z(&[&[0, 1], &[1]]), &a));
        assert!(!divides(&z(&[&[1], &[1]]), &a));
    }
}
