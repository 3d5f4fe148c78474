//! Absolute Kähler differentials of tower fields.
//!
//! `Ω¹_F` is free on `dv` for the transcendental variables `v` of the tower
//! (algebraic generators are differentiated implicitly), so a `q`-form is a
//! map from increasing `q`-tuples of generator indices to coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{field_norm, Elem, Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    field: Field,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Elem>,
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.field.generators();
        f.write_str(&self.render(&names))
    }
}

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl DifferentialForm {
    pub fn zero(field: &Field, degree: usize) -> Self {
        DifferentialForm { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(field: &Field, f: Elem) -> Self {
        let mut w = Self::zero(field, 0);
        w.add_term(&[], f);
        w
    }

    pub fn from_element(f: &FieldElement) -> Self {
        Self::function(f.field(), f.value().clone())
    }

    /// `c·dv_{i₁}∧…∧dv_{i_q}` in any index order.
    pub fn monomial(field: &Field, c: Elem, indices: &[usize]) -> Self {
        let mut w = Self::zero(field, indices.len());
        w.add_term(indices, c);
        w
    }

    /// `dv` for the generator named `var`.
    pub fn basis(field: &Field, var: &str) -> Result<Self> {
        let g = field.generator_index(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
        Ok(Self::monomial(field, field.one(), &[g]))
    }

    /// Adds `c·dv_I`, normalizing the order of `I`.
    pub fn add_term(&mut self, indices: &[usize], c: Elem) {
        assert_eq!(indices.len(), self.degree, "term has the wrong degree");
        let n = self.field.num_generators();
        assert!(indices.iter().all(|&i| i < n), "generator index out of range");
        let mut key = indices.to_vec();
        let Some(sign) = sort_with_sign(&mut key) else { return };
        let c = if sign < 0 { self.field.neg(&c) } else { c };
        let f = &self.field;
        let sum = match self.terms.get(&key) {
            Some(old) => f.add(old, &c),
            None => c,
        };
        if f.is_zero(&sum) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Elem)> {
        self.terms.iter()
    }

    /// Coefficient of `dv_I` for increasing `I`.
    pub fn coeff(&self, key: &[usize]) -> Elem {
        self.terms.get(key).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::DescriptorMismatch);
        }
        if self.degree != o.degree {
            return Err(Error::Invalid(format!("degrees {} and {} differ", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Multiplication by a function.
    pub fn scale(&self, c: &Elem) -> Self {
        let mut out = Self::zero(&self.field, self.degree);
        for (k, a) in &self.terms {
            out.add_term(k, self.field.mul(a, c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.field.from_i64(n))
    }

    /// Applies a coefficient map into a field with the same generator basis
    /// (or one extending it by outer variables).
    pub fn map_coeffs(&self, target: &Field, mut g: impl FnMut(&Elem) -> Result<Elem>) -> Result<Self> {
        let mut out = Self::zero(target, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k, g(c)?);
        }
        Ok(out)
    }

    /// Image under a tower inclusion `self.field ⊆ target`.
    pub fn embed_into(&self, target: &Field) -> Result<Self> {
        let src = self.field.clone();
        self.map_coeffs(target, |c| target.embed(c, &src))
    }

    pub(crate) fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let cs = self.field.fmt_elem(c);
                if k.is_empty() {
                    return cs;
                }
                let basis: Vec<String> = k.iter().map(|&i| format!("d{}", names[i])).collect();
                let basis = basis.join("∧");
                if cs == "1" {
                    basis
                } else {
                    format!("({cs})*{basis}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `df = Σ_v ∂f/∂v dv`.
pub fn d_elem(field: &Field, f: &Elem) -> DifferentialForm {
    let mut out = DifferentialForm::zero(field, 1);
    for g in 0..field.num_generators() {
        out.add_term(&[g], field.derive(f, g));
    }
    out
}

pub fn d(f: &FieldElement) -> DifferentialForm {
    d_elem(f.field(), f.value())
}

/// Exterior derivative of a form.
pub fn d_form(w: &DifferentialForm) -> DifferentialForm {
    let f = &w.field;
    let mut out = DifferentialForm::zero(f, w.degree + 1);
    for (key, c) in &w.terms {
        for g in 0..f.num_generators() {
            let mut idx = Vec::with_capacity(key.len() + 1);
            idx.push(g);
            idx.extend_from_slice(key);
            out.add_term(&idx, f.derive(c, g));
        }
    }
    out
}

/// `dlog f = df/f`.
pub fn dlog_elem(field: &Field, f: &Elem) -> Result<DifferentialForm> {
    let inv = field.inv(f).ok_or(Error::ZeroArgument)?;
    Ok(d_elem(field, f).scale(&inv))
}

pub fn dlog(f: &FieldElement) -> Result<DifferentialForm> {
    dlog_elem(f.field(), f.value())
}

pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    if a.field != b.field {
        return Err(Error::DescriptorMismatch);
    }
    let f = &a.field;
    let mut out = DifferentialForm::zero(f, a.degree + b.degree);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let mut idx = ka.clone();
            idx.extend_from_slice(kb);
            out.add_term(&idx, f.mul(ca, cb));
        }
    }
    Ok(out)
}

/// `x·dlog x₁∧…∧dlog x_n`.
pub fn dlog_product(field: &Field, x: &Elem, entries: &[Elem]) -> Result<DifferentialForm> {
    let mut acc = DifferentialForm::function(field, x.clone());
    for e in entries {
        acc = wedge(&acc, &dlog_elem(field, e)?)?;
    }
    Ok(acc)
}

/// `Tr_{E/F}` on forms: the field trace on each coefficient.
pub fn trace_form(e: &Field, f: &Field, w: &DifferentialForm) -> Result<DifferentialForm> {
    if w.field != *e {
        return Err(Error::DescriptorMismatch);
    }
    if e.degree_over(f).is_none() {
        return Err(Error::NotAFiniteExtension);
    }
    w.map_coeffs(f, |c| e.trace_to(c, f))
}

/// `(Tr_{E/F} dlog f, dlog N_{E/F} f)`.
pub fn norm_dlog_check(e: &Field, f: &Field, x: &FieldElement) -> Result<(DifferentialForm, DifferentialForm)> {
    let lhs = trace_form(e, f, &dlog(x)?)?;
    let rhs = dlog(&field_norm(e, f, x)?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    fn qxy() -> Field {
        Field::function_field(&Field::rationals(), &["x", "y"]).unwrap()
    }

    fn sqrt_x() -> (Field, Field) {
        let k = Field::function_field(&Field::rationals(), &["x"]).unwrap();
        let x = k.named("x").unwrap();
        let e = Field::algebraic(&k, alloc::vec![k.neg(&x), k.zero(), k.one()], "y").unwrap();
        (k, e)
    }

    #[test]
    fn exterior_derivative() {
        let f = qxy();
        let x = FieldElement::named(&f, "x").unwrap();
        let dx = DifferentialForm::basis(&f, "x").unwrap();
        assert_eq!(d(&(&x * &x)), dx.scale(x.scale_int(2).value()));
        assert!(d(&FieldElement::from_ratio(&f, 3, 7).unwrap()).is_zero());
        let w = d(&(&x * &FieldElement::named(&f, "y").unwrap()));
        assert!(d_form(&w).is_zero());
    }

    #[test]
    fn implicit_d() {
        let (_, e) = sqrt_x();
        let y = FieldElement::named(&e, "y").unwrap();
        let dy = d(&y);
        let dx = DifferentialForm::basis(&e, "x").unwrap();
        assert_eq!(dy.scale(y.scale_int(2).value()), dx);
    }

    #[test]
    fn logarithmic_derivatives() {
        let f = qxy();
        let x = FieldElement::named(&f, "x").unwrap();
        let y = FieldElement::named(&f, "y").unwrap();
        let l = dlog(&(&(&x * &x) * &y)).unwrap();
        let expect = dlog(&x).unwrap().scale_int(2).add(&dlog(&y).unwrap()).unwrap();
        assert_eq!(l, expect);
        assert!(dlog(&FieldElement::from_i64(&f, 5)).unwrap().is_zero());
        assert_eq!(dlog(&FieldElement::zero(&f)), Err(Error::ZeroArgument));
    }

    #[test]
    fn wedge_rules() {
        let f = qxy();
        let dx = DifferentialForm::basis(&f, "x").unwrap();
        let dy = DifferentialForm::basis(&f, "y").unwrap();
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        assert_eq!(wedge(&dx, &dy).unwrap(), wedge(&dy, &dx).unwrap().neg());
        let x = f.named("x").unwrap();
        let y = f.named("y").unwrap();
        let lhs = wedge(&dx.scale(&x), &dy.scale(&y)).unwrap();
        assert_eq!(lhs, wedge(&dx, &dy).unwrap().scale(&f.mul(&x, &y)));
    }

    #[test]
    fn traces_of_forms() {
        let (k, e) = sqrt_x();
        let y = FieldElement::named(&e, "y").unwrap();
        let x = FieldElement::named(&e, "x").unwrap();
        let w = dlog(&x).unwrap().scale(y.value());
        assert!(trace_form(&e, &k, &w).unwrap().is_zero());
        let w2 = d(&y).scale(y.value());
        assert_eq!(trace_form(&e, &k, &w2).unwrap(), DifferentialForm::basis(&k, "x").unwrap());
        let (l, r) = norm_dlog_check(&e, &k, &y).unwrap();
        assert_eq!(l, r);
        let y1 = &y + &FieldElement::one(&e);
        let (l, r) = norm_dlog_check(&e, &k, &y1).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn cathelineau_form() {
        let f = qxy();
        let x = FieldElement::named(&f, "x").unwrap();
        let half = FieldElement::from_rational(&f, &ratio(1, 2)).unwrap();
        let a = &x + &half;
        let b = &FieldElement::one(&f) - &a;
        let s = dlog_product(&f, a.value(), &[a.value().clone()])
            .unwrap()
            .add(&dlog_product(&f, b.value(), &[b.value().clone()]).unwrap())
            .unwrap();
        assert!(s.is_zero());
    }
}
