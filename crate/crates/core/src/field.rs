//! Towers of exact fields.
//!
//! A [`Field`] is a cheaply clonable handle on a descriptor: the rationals, a
//! prime field, a simple algebraic extension `base[θ]/(m)` or a rational
//! function field `base(v)` in one variable. Several variables are obtained
//! by nesting, so `ℚ(x, y)` is `ℚ(x)(y)`. Elements ([`Elem`]) are kept in a
//! canonical reduced form, so two elements are equal iff their payloads are
//! identical.
//!
//! The transcendental variables of a tower (innermost first) are its
//! *generators*; they index the basis `dv` of absolute Kähler differentials.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly;

/// Canonical payload of a field element. The variant is determined by the
/// field the element belongs to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Element of ℚ.
    Rat(BigRational),
    /// Residue in `0..p`.
    Mod(u64),
    /// Polynomial of degree `< deg(minpoly)` in the generator, low degree first.
    Alg(Vec<Elem>),
    /// Reduced fraction `num/den` of polynomials in the variable, `den` monic.
    Frac(Vec<Elem>, Vec<Elem>),
}

#[derive(Debug, PartialEq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    Algebraic {
        base: Field,
        minpoly: Vec<Elem>,
        generator: String,
    },
    Function {
        base: Field,
        var: String,
    },
}

/// Shared handle on a field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.describe())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rational))
    }

    /// The prime field `𝔽_p` for an odd prime `p < 2³¹`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// Simple extension `base[gen]/(minpoly)`; `minpoly` holds base
    /// coefficients, low degree first. It must be monic and squarefree;
    /// irreducibility is the caller's responsibility.
    pub fn algebraic(base: &Field, minpoly: Vec<Elem>, generator: &str) -> Result<Field> {
        let minpoly = poly::trim(base, minpoly);
        let deg = poly::degree(&minpoly).unwrap_or(0);
        if deg < 1 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        if minpoly[deg] != base.one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let g = poly::gcd(base, &minpoly, &poly::derivative(base, &minpoly));
        if poly::degree(&g) != Some(0) {
            return Err(Error::InvalidField("minimal polynomial must be squarefree".into()));
        }
        base.check_fresh_name(generator)?;
        Ok(Field(Arc::new(FieldKind::Algebraic {
            base: base.clone(),
            minpoly,
            generator: generator.to_owned(),
        })))
    }

    /// Number field `ℚ[gen]/(minpoly)` from rational coefficients.
    pub fn number_field(minpoly: &[BigRational], generator: &str) -> Result<Field> {
        let q = Field::rationals();
        let coeffs = minpoly.iter().map(|c| Elem::Rat(c.clone())).collect();
        Field::algebraic(&q, coeffs, generator)
    }

    /// Rational function field `base(v₁, …, vₙ)`, built as nested
    /// one-variable function fields.
    pub fn function_field(base: &Field, vars: &[&str]) -> Result<Field> {
        let mut f = base.clone();
        for v in vars {
            f.check_fresh_name(v)?;
            f = Field(Arc::new(FieldKind::Function {
                base: f.clone(),
                var: (*v).to_owned(),
            }));
        }
        Ok(f)
    }

    fn check_fresh_name(&self, name: &str) -> Result<()> {
        let valid = name.chars().next().is_some_and(|c| c.is_alphabetic())
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::InvalidField(format!("`{name}` is not an identifier")));
        }
        if self.names().iter().any(|n| n == name) {
            return Err(Error::InvalidField(format!("name `{name}` already used in the tower")));
        }
        Ok(())
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    /// The field this one is built on, if any.
    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Algebraic { base, .. } | FieldKind::Function { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Algebraic { base, .. } | FieldKind::Function { base, .. } => base.characteristic(),
        }
    }

    /// All generator and variable names in the tower, innermost first.
    pub fn names(&self) -> Vec<String> {
        match &*self.0 {
            FieldKind::Rational | FieldKind::Prime(_) => Vec::new(),
            FieldKind::Algebraic { base, generator, .. } => {
                let mut v = base.names();
                v.push(generator.clone());
                v
            }
            FieldKind::Function { base, var } => {
                let mut v = base.names();
                v.push(var.clone());
                v
            }
        }
    }

    /// Transcendental variables of the tower, innermost first.
    pub fn generators(&self) -> Vec<String> {
        match &*self.0 {
            FieldKind::Rational | FieldKind::Prime(_) => Vec::new(),
            FieldKind::Algebraic { base, .. } => base.generators(),
            FieldKind::Function { base, var } => {
                let mut v = base.generators();
                v.push(var.clone());
                v
            }
        }
    }

    pub fn num_generators(&self) -> usize {
        match &*self.0 {
            FieldKind::Rational | FieldKind::Prime(_) => 0,
            FieldKind::Algebraic { base, .. } => base.num_generators(),
            FieldKind::Function { base, .. } => base.num_generators() + 1,
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators().iter().position(|g| g == name)
    }

    /// Degree of the defining polynomial for an algebraic step.
    pub fn step_degree(&self) -> Option<usize> {
        match &*self.0 {
            FieldKind::Algebraic { minpoly, .. } => Some(minpoly.len() - 1),
            _ => None,
        }
    }

    pub fn minpoly(&self) -> Option<&[Elem]> {
        match &*self.0 {
            FieldKind::Algebraic { minpoly, .. } => Some(minpoly),
            _ => None,
        }
    }

    /// `[self : sub]` when `self` is reached from `sub` by algebraic steps.
    pub fn degree_over(&self, sub: &Field) -> Option<usize> {
        if self == sub {
            return Some(1);
        }
        match &*self.0 {
            FieldKind::Algebraic { base, minpoly, .. } => {
                base.degree_over(sub).map(|d| d * (minpoly.len() - 1))
            }
            _ => None,
        }
    }

    /// True if `sub` occurs in the tower below (or equal to) `self`.
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_subfield(sub))
    }

    /// Number of elements for finite fields.
    pub fn finite_order(&self) -> Option<BigInt> {
        match &*self.0 {
            FieldKind::Prime(p) => Some(BigInt::from(*p)),
            FieldKind::Algebraic { base, minpoly, .. } => {
                base.finite_order().map(|q| num_traits::pow(q, minpoly.len() - 1))
            }
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &*self.0 {
            FieldKind::Rational => "Q".into(),
            FieldKind::Prime(p) => format!("F_{p}"),
            FieldKind::Algebraic { base, minpoly, generator } => {
                format!("{}[{}]/({})", base.describe(), generator, base.fmt_poly(minpoly, generator))
            }
            FieldKind::Function { base, var } => format!("{}({})", base.describe(), var),
        }
    }

    // ---------------------------------------------------------------- constants

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rational => Elem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Mod(0),
            FieldKind::Algebraic { .. } => Elem::Alg(Vec::new()),
            FieldKind::Function { base, .. } => Elem::Frac(Vec::new(), vec![base.one()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rational => Elem::Rat(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Elem::Mod(n.mod_floor(&BigInt::from(*p)).to_u64().unwrap()),
            FieldKind::Algebraic { base, .. } => Elem::Alg(poly::constant(base, base.from_bigint(n))),
            FieldKind::Function { base, .. } => {
                Elem::Frac(poly::constant(base, base.from_bigint(n)), vec![base.one()])
            }
        }
    }

    /// Image of a rational number; `None` if its denominator vanishes here.
    pub fn from_rational(&self, r: &BigRational) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Rational => Some(Elem::Rat(r.clone())),
            FieldKind::Prime(_) => {
                let n = self.from_bigint(r.numer());
                let d = self.from_bigint(r.denom());
                self.div(&n, &d)
            }
            FieldKind::Algebraic { base, .. } => {
                Some(Elem::Alg(poly::constant(base, base.from_rational(r)?)))
            }
            FieldKind::Function { base, .. } => {
                Some(Elem::Frac(poly::constant(base, base.from_rational(r)?), vec![base.one()]))
            }
        }
    }

    /// The adjoined generator or variable of the outermost step.
    pub fn gen(&self) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Algebraic { base, minpoly, .. } => {
                if minpoly.len() == 2 {
                    // degree one: the generator is the root -m₀
                    Some(Elem::Alg(poly::constant(base, base.neg(&minpoly[0]))))
                } else {
                    Some(Elem::Alg(vec![base.zero(), base.one()]))
                }
            }
            FieldKind::Function { base, .. } => Some(Elem::Frac(vec![base.zero(), base.one()], vec![base.one()])),
            _ => None,
        }
    }

    /// Looks up a named generator or variable anywhere in the tower.
    pub fn named(&self, name: &str) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Rational | FieldKind::Prime(_) => None,
            FieldKind::Algebraic { base, generator, .. } => {
                if generator == name {
                    self.gen()
                } else {
                    base.named(name).map(|c| self.embed_from_base(&c))
                }
            }
            FieldKind::Function { base, var } => {
                if var == name {
                    self.gen()
                } else {
                    base.named(name).map(|c| self.embed_from_base(&c))
                }
            }
        }
    }

    // --------------------------------------------------------------- predicates

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(m) => *m == 0,
            Elem::Alg(c) => c.is_empty(),
            Elem::Frac(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// Checks that `a` is a well-formed canonical element of this field.
    pub fn validate(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (FieldKind::Rational, Elem::Rat(_)) => true,
            (FieldKind::Prime(p), Elem::Mod(m)) => m < p,
            (FieldKind::Algebraic { base, minpoly, .. }, Elem::Alg(c)) => {
                c.len() < minpoly.len()
                    && c.last().is_none_or(|l| !base.is_zero(l))
                    && c.iter().all(|x| base.validate(x))
            }
            (FieldKind::Function { base, .. }, Elem::Frac(n, d)) => {
                d.last().is_some_and(|l| base.is_one(l))
                    && n.last().is_none_or(|l| !base.is_zero(l))
                    && n.iter().chain(d.iter()).all(|x| base.validate(x))
                    && (n.is_empty() && d.len() == 1 || poly::degree(&poly::gcd(base, n, d)) == Some(0))
            }
            _ => false,
        }
    }

    // --------------------------------------------------------------- arithmetic

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            (FieldKind::Algebraic { base, .. }, Elem::Alg(x), Elem::Alg(y)) => Elem::Alg(poly::add(base, x, y)),
            (FieldKind::Function { base, .. }, Elem::Frac(an, ad), Elem::Frac(bn, bd)) => {
                if an.is_empty() {
                    return b.clone();
                }
                if bn.is_empty() {
                    return a.clone();
                }
                // Any common factor of the new numerator and denominator
                // divides gcd(ad, bd), so only that needs to be cancelled.
                let g = poly::gcd(base, ad, bd);
                let ad_g = poly::div_exact(base, ad, &g);
                let bd_g = poly::div_exact(base, bd, &g);
                let n = poly::add(base, &poly::mul(base, an, &bd_g), &poly::mul(base, bn, &ad_g));
                if n.is_empty() {
                    return self.zero();
                }
                let h = poly::gcd(base, &n, &g);
                let (n, g) = if h.len() > 1 {
                    (poly::div_exact(base, &n, &h), poly::div_exact(base, &g, &h))
                } else {
                    (n, g)
                };
                self.frac_make_monic(n, poly::mul(base, &poly::mul(base, &ad_g, &bd_g), &g))
            }
            _ => panic!("element does not belong to field {}", self.describe()),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldKind::Rational, Elem::Rat(x)) => Elem::Rat(-x),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod((p - x) % p),
            (FieldKind::Algebraic { base, .. }, Elem::Alg(x)) => Elem::Alg(poly::neg(base, x)),
            (FieldKind::Function { base, .. }, Elem::Frac(n, d)) => Elem::Frac(poly::neg(base, n), d.clone()),
            _ => panic!("element does not belong to field {}", self.describe()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Algebraic { base, minpoly, .. }, Elem::Alg(x), Elem::Alg(y)) => {
                Elem::Alg(poly::rem(base, &poly::mul(base, x, y), minpoly))
            }
            (FieldKind::Function { base, .. }, Elem::Frac(an, ad), Elem::Frac(bn, bd)) => {
                if an.is_empty() || bn.is_empty() {
                    return self.zero();
                }
                let g1 = poly::gcd(base, an, bd);
                let g2 = poly::gcd(base, bn, ad);
                let n = poly::mul(base, &poly::div_exact(base, an, &g1), &poly::div_exact(base, bn, &g2));
                let d = poly::mul(base, &poly::div_exact(base, ad, &g2), &poly::div_exact(base, bd, &g1));
                self.frac_make_monic(n, d)
            }
            _ => panic!("element does not belong to field {}", self.describe()),
        }
    }

    pub fn mul_int(&self, a: &Elem, n: i64) -> Elem {
        self.mul(a, &self.from_i64(n))
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (FieldKind::Rational, Elem::Rat(x)) => Some(Elem::Rat(x.recip())),
            (FieldKind::Prime(p), Elem::Mod(x)) => mod_inv(*x, *p).map(Elem::Mod),
            (FieldKind::Algebraic { base, minpoly, .. }, Elem::Alg(x)) => {
                let (g, s) = poly::ext_gcd_left(base, x, minpoly);
                if poly::degree(&g) != Some(0) {
                    return None;
                }
                Some(Elem::Alg(poly::rem(base, &s, minpoly)))
            }
            (FieldKind::Function { .. }, Elem::Frac(n, d)) => Some(self.frac_make_monic(d.clone(), n.clone())),
            _ => panic!("element does not belong to field {}", self.describe()),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow_u(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn pow(&self, a: &Elem, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow_u(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow_u(&ai, e.unsigned_abs()))
        }
    }

    fn frac_make_monic(&self, n: Vec<Elem>, d: Vec<Elem>) -> Elem {
        let FieldKind::Function { base, .. } = &*self.0 else { unreachable!() };
        if n.is_empty() {
            return self.zero();
        }
        let lc = d.last().expect("nonzero denominator").clone();
        if base.is_one(&lc) {
            return Elem::Frac(n, d);
        }
        let inv = base.inv(&lc).expect("unit leading coefficient");
        Elem::Frac(poly::scale(base, &n, &inv), poly::scale(base, &d, &inv))
    }

    fn frac_normalize(&self, n: Vec<Elem>, d: Vec<Elem>) -> Elem {
        let FieldKind::Function { base, .. } = &*self.0 else { unreachable!() };
        if n.is_empty() {
            return self.zero();
        }
        let g = poly::gcd(base, &n, &d);
        let (n, d) = if g.len() > 1 {
            (poly::div_exact(base, &n, &g), poly::div_exact(base, &d, &g))
        } else {
            (n, d)
        };
        self.frac_make_monic(n, d)
    }

    /// Builds `num/den` in a function field from base polynomials in the variable.
    pub fn frac_from_polys(&self, num: &[Elem], den: &[Elem]) -> Result<Elem> {
        let FieldKind::Function { base, .. } = &*self.0 else {
            return Err(Error::InvalidField("not a function field".into()));
        };
        let n = poly::trim(base, num.to_vec());
        let d = poly::trim(base, den.to_vec());
        if d.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.frac_normalize(n, d))
    }

    /// Numerator and denominator of a function field element.
    pub fn frac_parts<'a>(&self, a: &'a Elem) -> Option<(&'a [Elem], &'a [Elem])> {
        match (&*self.0, a) {
            (FieldKind::Function { .. }, Elem::Frac(n, d)) => Some((n, d)),
            _ => None,
        }
    }

    /// Coefficients of an algebraic element in the power basis.
    pub fn alg_coeffs<'a>(&self, a: &'a Elem) -> Option<&'a [Elem]> {
        match (&*self.0, a) {
            (FieldKind::Algebraic { .. }, Elem::Alg(c)) => Some(c),
            _ => None,
        }
    }

    /// Builds an algebraic element from base coefficients, reducing modulo
    /// the minimal polynomial.
    pub fn alg_from_coeffs(&self, coeffs: Vec<Elem>) -> Result<Elem> {
        let FieldKind::Algebraic { base, minpoly, .. } = &*self.0 else {
            return Err(Error::InvalidField("not an algebraic extension".into()));
        };
        let c = poly::trim(base, coeffs);
        Ok(Elem::Alg(poly::rem(base, &c, minpoly)))
    }

    // ------------------------------------------------------------- embeddings

    fn embed_from_base(&self, c: &Elem) -> Elem {
        match &*self.0 {
            FieldKind::Algebraic { base, .. } => Elem::Alg(poly::constant(base, c.clone())),
            FieldKind::Function { base, .. } => {
                if base.is_zero(c) {
                    self.zero()
                } else {
                    Elem::Frac(vec![c.clone()], vec![base.one()])
                }
            }
            _ => unreachable!("prime fields have no base"),
        }
    }

    /// Image of `x ∈ sub` under the tower inclusion `sub ⊆ self`.
    pub fn embed(&self, x: &Elem, sub: &Field) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match self.base() {
            Some(b) => Ok(self.embed_from_base(&b.embed(x, sub)?)),
            None => Err(Error::DescriptorMismatch),
        }
    }

    /// Inverse of [`Field::embed`] on elements that lie in `sub`.
    pub fn restrict_to(&self, x: &Elem, sub: &Field) -> Option<Elem> {
        if self == sub {
            return Some(x.clone());
        }
        let base = self.base()?;
        let c = match x {
            Elem::Alg(c) if c.len() <= 1 => c.first().cloned().unwrap_or_else(|| base.zero()),
            Elem::Frac(n, d) if n.len() <= 1 && d.len() == 1 => n.first().cloned().unwrap_or_else(|| base.zero()),
            _ => return None,
        };
        base.restrict_to(&c, sub)
    }

    // ------------------------------------------------------------ trace, norm

    /// Trace of one algebraic step `self/base`.
    fn trace_step(&self, x: &Elem) -> Elem {
        let FieldKind::Algebraic { base, minpoly, .. } = &*self.0 else { unreachable!() };
        let Elem::Alg(c) = x else { panic!("element does not belong to {}", self.describe()) };
        let sums = power_sums(base, minpoly);
        c.iter()
            .zip(sums.iter())
            .fold(base.zero(), |acc, (a, s)| base.add(&acc, &base.mul(a, s)))
    }

    /// Norm of one algebraic step, as the resultant `res(minpoly, x)`.
    fn norm_step(&self, x: &Elem) -> Elem {
        let FieldKind::Algebraic { base, minpoly, .. } = &*self.0 else { unreachable!() };
        let Elem::Alg(c) = x else { panic!("element does not belong to {}", self.describe()) };
        if c.is_empty() {
            return base.zero();
        }
        poly::resultant(base, minpoly, c)
    }

    /// Trace `Tr_{self/sub}` along the chain of algebraic steps.
    pub fn trace_to(&self, x: &Elem, sub: &Field) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match &*self.0 {
            FieldKind::Algebraic { base, .. } => base.trace_to(&self.trace_step(x), sub),
            _ => Err(Error::NotAFiniteExtension),
        }
    }

    /// Norm `N_{self/sub}` along the chain of algebraic steps.
    pub fn norm_to(&self, x: &Elem, sub: &Field) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match &*self.0 {
            FieldKind::Algebraic { base, .. } => base.norm_to(&self.norm_step(x), sub),
            _ => Err(Error::NotAFiniteExtension),
        }
    }

    // ------------------------------------------------------------- derivations

    /// Partial derivative `∂x/∂v` where `v` is the generator with index `g`
    /// (see [`Field::generators`]). Algebraic generators are differentiated
    /// implicitly through their minimal polynomial.
    pub fn derive(&self, x: &Elem, g: usize) -> Elem {
        match (&*self.0, x) {
            (FieldKind::Rational, _) | (FieldKind::Prime(_), _) => self.zero(),
            (FieldKind::Function { base, .. }, Elem::Frac(n, d)) => {
                let own = base.num_generators();
                if g > own || n.is_empty() {
                    return self.zero();
                }
                let (dn, dd) = if g == own {
                    (poly::derivative(base, n), poly::derivative(base, d))
                } else {
                    (
                        poly::map_coeffs(base, n, |c| base.derive(c, g)),
                        poly::map_coeffs(base, d, |c| base.derive(c, g)),
                    )
                };
                let num = poly::sub(base, &poly::mul(base, &dn, d), &poly::mul(base, n, &dd));
                let den = poly::mul(base, d, d);
                self.frac_normalize(num, den)
            }
            (FieldKind::Algebraic { base, minpoly, .. }, Elem::Alg(c)) => {
                if g >= base.num_generators() || c.is_empty() {
                    return self.zero();
                }
                let coeff_part = Elem::Alg(poly::map_coeffs(base, c, |a| base.derive(a, g)));
                let dy = self.derive_generator(base, minpoly, g);
                let formal = Elem::Alg(poly::derivative(base, c));
                self.add(&coeff_part, &self.mul(&formal, &dy))
            }
            _ => panic!("element does not belong to field {}", self.describe()),
        }
    }

    /// `∂y/∂v = −m^∂(y)/m'(y)` for the adjoined root `y` of `m`.
    fn derive_generator(&self, base: &Field, minpoly: &[Elem], g: usize) -> Elem {
        let md = Elem::Alg(poly::rem(base, &poly::map_coeffs(base, minpoly, |a| base.derive(a, g)), minpoly));
        let mprime = Elem::Alg(poly::rem(base, &poly::derivative(base, minpoly), minpoly));
        let q = self.div(&md, &mprime).expect("separable minimal polynomial");
        self.neg(&q)
    }

    // ---------------------------------------------------------------- display

    pub fn fmt_elem(&self, x: &Elem) -> String {
        match (&*self.0, x) {
            (FieldKind::Rational, Elem::Rat(r)) => r.to_string(),
            (FieldKind::Prime(_), Elem::Mod(m)) => m.to_string(),
            (FieldKind::Algebraic { base, generator, .. }, Elem::Alg(c)) => base.fmt_poly(c, generator),
            (FieldKind::Function { base, var }, Elem::Frac(n, d)) => {
                let ns = base.fmt_poly(n, var);
                if d.len() == 1 {
                    ns
                } else {
                    format!("({})/({})", ns, base.fmt_poly(d, var))
                }
            }
            _ => format!("<{x:?} not in {}>", self.describe()),
        }
    }

    /// Formats a polynomial with coefficients in `self`.
    pub fn fmt_poly(&self, c: &[Elem], var: &str) -> String {
        if c.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in c.iter().enumerate().rev() {
            if self.is_zero(a) {
                continue;
            }
            let mut s = self.fmt_elem(a);
            let compound = s.contains([' ', '(', '+']) || s[1..].contains('-');
            let negative = s.starts_with('-') && !compound;
            if negative {
                s.remove(0);
            }
            let sign = if out.is_empty() {
                if negative { "-" } else { "" }
            } else if negative {
                " - "
            } else {
                " + "
            };
            out.push_str(sign);
            let mono = match i {
                0 => String::new(),
                1 => var.to_owned(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else if compound {
                out.push_str(&format!("({s})*{mono}"));
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        out
    }
}

/// Power sums `p_j = Σ αʲ` of the roots of a monic polynomial, `j < deg`.
fn power_sums(base: &Field, m: &[Elem]) -> Vec<Elem> {
    let n = m.len() - 1;
    let mut p: Vec<Elem> = Vec::with_capacity(n);
    if n == 0 {
        return p;
    }
    p.push(base.from_i64(n as i64));
    for k in 1..n {
        // Newton: p_k = -(Σ_{i=1}^{k-1} c_{n-i} p_{k-i}) - k c_{n-k}
        let mut acc = base.mul_int(&m[n - k], k as i64);
        for i in 1..k {
            acc = base.add(&acc, &base.mul(&m[n - i], &p[k - i]));
        }
        p.push(base.neg(&acc));
    }
    p
}

/// A field element paired with its descriptor.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.fmt_elem(&self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_elem(&self.value))
    }
}

/// The four field operations of [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact `a op b`.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Self {
        debug_assert!(field.validate(&value), "non-canonical element for {}", field.describe());
        FieldElement { field: field.clone(), value }
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, field.zero())
    }

    pub fn one(field: &Field) -> Self {
        Self::new(field, field.one())
    }

    pub fn from_i64(field: &Field, n: i64) -> Self {
        Self::new(field, field.from_i64(n))
    }

    pub fn from_rational(field: &Field, r: &BigRational) -> Result<Self> {
        field.from_rational(r).map(|v| Self::new(field, v)).ok_or(Error::DivisionByZero)
    }

    pub fn from_ratio(field: &Field, n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::from_rational(field, &BigRational::new(n.into(), d.into()))
    }

    /// A named generator or variable of the tower.
    pub fn named(field: &Field, name: &str) -> Result<Self> {
        field.named(name).map(|v| Self::new(field, v)).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.value)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::new(&self.field, self.field.add(&self.value, &o.value)))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::new(&self.field, self.field.sub(&self.value, &o.value)))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::new(&self.field, self.field.mul(&self.value, &o.value)))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let v = self.field.div(&self.value, &o.value).ok_or(Error::DivisionByZero)?;
        Ok(Self::new(&self.field, v))
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.field.inv(&self.value).ok_or(Error::DivisionByZero)?;
        Ok(Self::new(&self.field, v))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let v = self.field.pow(&self.value, e).ok_or(Error::DivisionByZero)?;
        Ok(Self::new(&self.field, v))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.field.neg(&self.value))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        Self::new(&self.field, self.field.mul_int(&self.value, n))
    }

    /// Image in an overfield of the tower.
    pub fn embed_into(&self, target: &Field) -> Result<Self> {
        Ok(Self::new(target, target.embed(&self.value, &self.field)?))
    }
}

impl core::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.checked_add(o).expect("field mismatch")
    }
}

impl core::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.checked_sub(o).expect("field mismatch")
    }
}

impl core::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.checked_mul(o).expect("field mismatch")
    }
}

impl core::ops::Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self.checked_div(o).expect("division by zero or field mismatch")
    }
}

impl core::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// `Tr_{E/F}(x)`.
pub fn field_trace(e: &Field, f: &Field, x: &FieldElement) -> Result<FieldElement> {
    if x.field() != e {
        return Err(Error::DescriptorMismatch);
    }
    Ok(FieldElement::new(f, e.trace_to(x.value(), f)?))
}

/// `N_{E/F}(x)`.
pub fn field_norm(e: &Field, f: &Field, x: &FieldElement) -> Result<FieldElement> {
    if x.field() != e {
        return Err(Error::DescriptorMismatch);
    }
    Ok(FieldElement::new(f, e.norm_to(x.value(), f)?))
}

/// `∂f/∂var` in a function field tower.
pub fn partial_derivative(f: &FieldElement, var: &str) -> Result<FieldElement> {
    let g = f.field().generator_index(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
    Ok(FieldElement::new(f.field(), f.field().derive(f.value(), g)))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn qi() -> Field {
        Field::number_field(&[ratio(1, 1), ratio(0, 1), ratio(1, 1)], "i").unwrap()
    }

    fn sqrt2() -> Field {
        Field::number_field(&[ratio(-2, 1), ratio(0, 1), ratio(1, 1)], "r").unwrap()
    }

    #[test]
    fn rational_sum() {
        let f = q();
        let a = FieldElement::from_ratio(&f, 1, 3).unwrap();
        let b = FieldElement::from_ratio(&f, 1, 6).unwrap();
        assert_eq!(&a + &b, FieldElement::from_ratio(&f, 1, 2).unwrap());
    }

    #[test]
    fn gaussian_square() {
        let f = qi();
        let i = FieldElement::named(&f, "i").unwrap();
        assert_eq!(&i * &i, FieldElement::from_i64(&f, -1));
    }

    #[test]
    fn fraction_cancels() {
        let f = Field::function_field(&q(), &["x"]).unwrap();
        let x = FieldElement::named(&f, "x").unwrap();
        let one = FieldElement::one(&f);
        let num = &(&x * &x) - &one;
        let den = &x - &one;
        assert_eq!(&num / &den, &x + &one);
    }

    #[test]
    fn mismatch_and_zero_division() {
        let a = FieldElement::one(&q());
        let b = FieldElement::one(&qi());
        assert_eq!(field_arith(&a, &b, ArithOp::Add), Err(Error::DescriptorMismatch));
        let z = FieldElement::zero(&q());
        assert_eq!(field_arith(&a, &z, ArithOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_field_checks() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        let f = Field::prime(7).unwrap();
        let three = FieldElement::from_i64(&f, 3);
        assert_eq!(&three * &three.inv().unwrap(), FieldElement::one(&f));
        assert_eq!(FieldElement::from_ratio(&f, 1, 2).unwrap(), FieldElement::from_i64(&f, 4));
    }

    #[test]
    fn minpoly_validation() {
        let f = q();
        let sq = vec![f.one(), f.from_i64(2), f.one()]; // (y+1)^2
        assert!(Field::algebraic(&f, sq, "y").is_err());
        let not_monic = vec![f.one(), f.from_i64(2)];
        assert!(Field::algebraic(&f, not_monic, "y").is_err());
        let k = Field::function_field(&f, &["x"]).unwrap();
        assert!(Field::function_field(&k, &["x"]).is_err());
    }

    #[test]
    fn traces_and_norms() {
        let e = qi();
        let i = FieldElement::named(&e, "i").unwrap();
        assert!(field_trace(&e, &q(), &i).unwrap().is_zero());
        let one_plus_i = &FieldElement::one(&e) + &i;
        assert_eq!(field_norm(&e, &q(), &one_plus_i).unwrap(), FieldElement::from_i64(&q(), 2));
        let s = sqrt2();
        let r = FieldElement::named(&s, "r").unwrap();
        let x = &FieldElement::from_i64(&s, 3) + &r;
        assert_eq!(field_trace(&s, &q(), &x).unwrap(), FieldElement::from_i64(&q(), 6));
        assert_eq!(field_norm(&s, &q(), &r).unwrap(), FieldElement::from_i64(&q(), -2));
        assert_eq!(field_trace(&s, &s, &x).unwrap(), x);
        let k = Field::function_field(&q(), &["x"]).unwrap();
        assert_eq!(
            field_trace(&k, &q(), &FieldElement::one(&k)),
            Err(Error::NotAFiniteExtension)
        );
    }

    #[test]
    fn partials() {
        let f = Field::function_field(&q(), &["x", "y"]).unwrap();
        let x = FieldElement::named(&f, "x").unwrap();
        let y = FieldElement::named(&f, "y").unwrap();
        let x2y = &(&x * &x) * &y;
        assert_eq!(partial_derivative(&x2y, "x").unwrap(), (&x * &y).scale_int(2));
        let inv = x.inv().unwrap();
        assert_eq!(partial_derivative(&inv, "x").unwrap(), (&inv * &inv).neg());
        let q = &x / &(&x + &y);
        let expected = (&x / &(&(&x + &y) * &(&x + &y))).neg();
        assert_eq!(partial_derivative(&q, "y").unwrap(), expected);
        assert_eq!(partial_derivative(&q, "z"), Err(Error::UnknownVariable("z".into())));
    }

    #[test]
    fn implicit_derivative() {
        // y^2 = x  =>  dy/dx = 1/(2y)
        let k = Field::function_field(&q(), &["x"]).unwrap();
        let x = k.named("x").unwrap();
        let m = vec![k.neg(&x), k.zero(), k.one()];
        let e = Field::algebraic(&k, m, "y").unwrap();
        let y = FieldElement::named(&e, "y").unwrap();
        let dy = partial_derivative(&y, "x").unwrap();
        assert_eq!(&dy * &y.scale_int(2), FieldElement::one(&e));
    }

    #[test]
    fn display() {
        let f = Field::function_field(&q(), &["x"]).unwrap();
        let x = FieldElement::named(&f, "x").unwrap();
        let e = &(&x * &x) - &FieldElement::from_i64(&f, 1);
        assert_eq!(e.to_string(), "x^2 - 1");
        assert_eq!(x.inv().unwrap().to_string(), "(1)/(x)");
    }
}
