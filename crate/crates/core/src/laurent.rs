//! Truncated Laurent series `Σ a_k u^k` with explicit precision.
//!
//! A series knows its coefficients for exponents `< precision`; everything
//! from `precision` on is unknown. Arithmetic tracks precision
//! pessimistically.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    order: i64,
    coeffs: Vec<Elem>,
    precision: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let k = self.order + i as i64;
            let cs = self.field.fmt_elem(c);
            parts.push(match k {
                0 => cs,
                1 => format!("({cs})*u"),
                _ => format!("({cs})*u^{k}"),
            });
        }
        parts.push(format!("O(u^{})", self.precision));
        f.write_str(&parts.join(" + "))
    }
}

/// Operations of [`laurent_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
    /// Inverts the first operand; the second is ignored.
    Inv,
}

pub fn laurent_arith(a: &LaurentSeries, b: &LaurentSeries, op: LaurentOp) -> Result<LaurentSeries> {
    match op {
        LaurentOp::Add => a.checked_add(b),
        LaurentOp::Mul => a.checked_mul(b),
        LaurentOp::Inv => a.inv(),
    }
}

impl LaurentSeries {
    /// Series with `coeffs[i]` at exponent `order + i`, known below `precision`.
    /// Coefficients beyond the precision are dropped, missing ones are zero.
    pub fn new(field: &Field, order: i64, mut coeffs: Vec<Elem>, precision: i64) -> Self {
        let known = (precision - order).max(0) as usize;
        coeffs.truncate(known);
        coeffs.resize(known, field.zero());
        let mut s = LaurentSeries { field: field.clone(), order, coeffs, precision };
        s.normalize();
        s
    }

    pub fn zero(field: &Field, precision: i64) -> Self {
        LaurentSeries { field: field.clone(), order: precision, coeffs: Vec::new(), precision }
    }

    pub fn constant(field: &Field, c: Elem, precision: i64) -> Self {
        Self::new(field, 0, vec![c], precision)
    }

    pub fn one(field: &Field, precision: i64) -> Self {
        Self::constant(field, field.one(), precision)
    }

    /// `c·u^k`.
    pub fn monomial(field: &Field, c: Elem, k: i64, precision: i64) -> Self {
        Self::new(field, k, vec![c], precision)
    }

    /// The uniformizer `u` itself.
    pub fn uniformizer(field: &Field, precision: i64) -> Self {
        Self::monomial(field, field.one(), 1, precision)
    }

    /// Polynomial `Σ c_i u^i` truncated at `precision`.
    pub fn from_poly(field: &Field, c: &[Elem], precision: i64) -> Self {
        Self::new(field, 0, c.to_vec(), precision)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !self.field.is_zero(c));
        match lead {
            None => {
                self.coeffs.clear();
                self.order = self.precision;
            }
            Some(0) => {}
            Some(i) => {
                self.coeffs.drain(..i);
                self.order += i as i64;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Lowest exponent with a nonzero coefficient (equals the precision for
    /// a series that is zero as far as known).
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, or `ZeroLeadingTerm` if no nonzero coefficient is known.
    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::ZeroLeadingTerm)
        } else {
            Ok(self.order)
        }
    }

    /// Coefficient of `u^k`.
    pub fn coeff(&self, k: i64) -> Result<Elem> {
        if k >= self.precision {
            return Err(Error::InsufficientPrecision { needed: k, have: self.precision });
        }
        if k < self.order {
            return Ok(self.field.zero());
        }
        Ok(self.coeffs[(k - self.order) as usize].clone())
    }

    pub fn coefficient(&self, k: i64) -> Result<FieldElement> {
        Ok(FieldElement::new(&self.field, self.coeff(k)?))
    }

    pub fn leading_coeff(&self) -> Result<Elem> {
        self.coeffs.first().cloned().ok_or(Error::ZeroLeadingTerm)
    }

    /// Coefficients of the known part, starting at [`order`](Self::order).
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Lowers the precision (never raises it).
    pub fn truncate(&self, precision: i64) -> Self {
        let p = precision.min(self.precision);
        Self::new(&self.field, self.order.min(p), self.shifted_coeffs(self.order.min(p)), p)
    }

    fn shifted_coeffs(&self, from: i64) -> Vec<Elem> {
        let mut out = vec![self.field.zero(); (self.order - from).max(0) as usize];
        out.extend(self.coeffs.iter().cloned());
        out
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let p = self.precision.min(o.precision);
        let start = self.order.min(o.order).min(p);
        let n = (p - start) as usize;
        let f = &self.field;
        let coeffs = (0..n)
            .map(|i| {
                let k = start + i as i64;
                f.add(&self.coeff(k).unwrap(), &o.coeff(k).unwrap())
            })
            .collect();
        Ok(Self::new(f, start, coeffs, p))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LaurentSeries { field: self.field.clone(), order: self.order, coeffs, precision: self.precision }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let p = (self.precision + o.order).min(o.precision + self.order);
        let order = self.order + o.order;
        if self.is_zero() || o.is_zero() || p <= order {
            return Ok(Self::zero(&self.field, p));
        }
        let n = (p - order) as usize;
        let f = &self.field;
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Ok(Self::new(f, order, out, p))
    }

    /// Multiplies by a constant.
    pub fn scale(&self, c: &Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(&self.field, self.order, coeffs, self.precision)
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field.clone(),
            order: self.order + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let f = &self.field;
        let lead = self.leading_coeff()?;
        let lead_inv = f.inv(&lead).ok_or(Error::ZeroLeadingTerm)?;
        let rel = (self.precision - self.order) as usize;
        // b_0 = 1/a_0, b_k = -(Σ_{i=1..k} a_i b_{k-i}) / a_0
        let mut b: Vec<Elem> = Vec::with_capacity(rel);
        for k in 0..rel {
            if k == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut acc = f.zero();
            for i in 1..=k {
                acc = f.add(&acc, &f.mul(&self.coeffs[i], &b[k - i]));
            }
            b.push(f.neg(&f.mul(&acc, &lead_inv)));
        }
        Ok(Self::new(f, -self.order, b, self.precision - 2 * self.order))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(&self.field, self.precision - self.order));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Formal derivative `d/du`.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul_int(c, self.order + i as i64))
            .collect();
        Self::new(f, self.order - 1, coeffs, self.precision - 1)
    }

    /// Substitutes `u ↦ u^e` for `e ≥ 1`.
    pub fn ramify(&self, e: i64) -> Self {
        assert!(e >= 1, "ramification index must be positive");
        let f = &self.field;
        let mut coeffs = vec![f.zero(); ((self.precision - self.order) * e).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e as usize] = c.clone();
        }
        Self::new(f, self.order * e, coeffs, self.precision * e)
    }

    /// Substitutes `u ↦ τ` where `τ` has positive order.
    pub fn compose(&self, tau: &Self) -> Result<Self> {
        self.check(tau)?;
        let e = tau.valuation()?;
        if e < 1 {
            return Err(Error::Invalid("substituted series must have positive order".into()));
        }
        let f = &self.field;
        let mut acc = Self::zero(f, self.precision.saturating_mul(e));
        if self.is_zero() {
            return Ok(acc);
        }
        let mut power = tau.pow(self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.checked_mul(tau)?;
            }
            if !f.is_zero(c) {
                acc = acc.checked_add(&power.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Applies a map to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &Field, mut g: impl FnMut(&Elem) -> Result<Elem>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(&mut g).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, self.order, coeffs, self.precision))
    }

    /// Equality of the parts known in both series.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let p = self.precision.min(o.precision);
        let lo = self.order.min(o.order);
        self.field == o.field && (lo..p).all(|k| self.coeff(k).ok() == o.coeff(k).ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn geometric_series() {
        let f = q();
        let one_minus_u = LaurentSeries::from_poly(&f, &[f.one(), f.from_i64(-1)], 8);
        let inv = laurent_arith(&one_minus_u, &one_minus_u, LaurentOp::Inv).unwrap();
        assert_eq!(inv.precision(), 8);
        for k in 0..8 {
            assert_eq!(inv.coeff(k).unwrap(), f.one());
        }
        assert!(inv.coeff(8).is_err());
    }

    #[test]
    fn uniformizer_inverse() {
        let f = q();
        let u = LaurentSeries::uniformizer(&f, 6);
        let ui = u.inv().unwrap();
        assert_eq!(ui.order(), -1);
        let one = laurent_arith(&u, &ui, LaurentOp::Mul).unwrap();
        assert_eq!(one.coeff(0).unwrap(), f.one());
        let s = LaurentSeries::from_poly(&f, &[f.zero(), f.one(), f.one()], 6);
        let t = s.checked_mul(&ui).unwrap();
        assert_eq!(t.coeff(0).unwrap(), f.one());
        assert_eq!(t.coeff(1).unwrap(), f.one());
        assert_eq!(t.coeff(2).unwrap(), f.zero());
    }

    #[test]
    fn zero_inverse_fails() {
        let z = LaurentSeries::zero(&q(), 4);
        assert_eq!(z.inv(), Err(Error::ZeroLeadingTerm));
    }

    #[test]
    fn compose_with_unit_multiple() {
        // 1/u under u ↦ u + u² is u^{-1} - 1 + u - ...
        let f = q();
        let ui = LaurentSeries::monomial(&f, f.one(), -1, 5);
        let tau = LaurentSeries::from_poly(&f, &[f.zero(), f.one(), f.one()], 7);
        let c = ui.compose(&tau).unwrap();
        assert_eq!(c.coeff(-1).unwrap(), f.one());
        assert_eq!(c.coeff(0).unwrap(), f.from_i64(-1));
        assert_eq!(c.coeff(1).unwrap(), f.one());
    }

    #[test]
    fn ramify_and_derive() {
        let f = q();
        let s = LaurentSeries::from_poly(&f, &[f.one(), f.from_i64(2)], 3);
        let r = s.ramify(3);
        assert_eq!(r.coeff(3).unwrap(), f.from_i64(2));
        assert_eq!(r.precision(), 9);
        let d = r.derivative();
        assert_eq!(d.coeff(2).unwrap(), f.from_i64(6));
    }
}
