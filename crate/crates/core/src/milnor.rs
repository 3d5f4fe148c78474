//! Formal Milnor symbols, tame symbols and boundary maps at places of `k(t)`.
//!
//! Symbols are kept as formal integer combinations of tuples; only the
//! rewriting needed by the boundary map is performed (multilinearity,
//! anticommutativity and `{π, π} = {π, −1}`).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElement};
use crate::ghost_form::{gform_dlog_symbol, GhostForm};
use crate::places::{audit_divisors, refined_residue_ghost, uniformizer, with_infinity, Place};
use crate::witt::TruncationSet;

#[derive(Clone, PartialEq, Eq)]
pub struct MilnorSymbol {
    field: Field,
    degree: usize,
    terms: Vec<(i64, Vec<Elem>)>,
}

impl fmt::Debug for MilnorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MilnorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let entries: Vec<String> = e.iter().map(|x| self.field.fmt_elem(x)).collect();
                format!("{c}*{{{}}}", entries.join(", "))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl MilnorSymbol {
    pub fn zero(field: &Field, degree: usize) -> Self {
        MilnorSymbol { field: field.clone(), degree, terms: Vec::new() }
    }

    /// The symbol `{x₁, …, x_q}`.
    pub fn new(field: &Field, entries: Vec<Elem>) -> Result<Self> {
        let mut s = Self::zero(field, entries.len());
        s.push(1, entries)?;
        Ok(s)
    }

    pub fn from_elements(entries: &[FieldElement]) -> Result<Self> {
        let first = entries.first().ok_or_else(|| Error::Invalid("use `integer` for degree 0".into()))?;
        if entries.iter().any(|e| e.field() != first.field()) {
            return Err(Error::DescriptorMismatch);
        }
        Self::new(first.field(), entries.iter().map(|e| e.value().clone()).collect())
    }

    /// The degree 0 symbol `n`.
    pub fn integer(field: &Field, n: i64) -> Self {
        let mut s = Self::zero(field, 0);
        if n != 0 {
            s.terms.push((n, Vec::new()));
        }
        s
    }

    /// Adds `c·{entries}`.
    pub fn push(&mut self, c: i64, entries: Vec<Elem>) -> Result<()> {
        if entries.len() != self.degree {
            return Err(Error::Invalid(format!("expected {} entries", self.degree)));
        }
        if entries.iter().any(|x| self.field.is_zero(x)) {
            return Err(Error::ZeroArgument);
        }
        if c != 0 {
            self.terms.push((c, entries));
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(i64, Vec<Elem>)] {
        &self.terms
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.field != o.field || self.degree != o.degree {
            return Err(Error::DescriptorMismatch);
        }
        let mut out = self.clone();
        out.terms.extend(o.terms.iter().cloned());
        Ok(out)
    }

    /// Total integer value of a degree 0 symbol.
    pub fn as_integer(&self) -> Option<i64> {
        (self.degree == 0).then(|| self.terms.iter().map(|(c, _)| c).sum())
    }

    /// `Π x^c` for a degree 1 symbol, i.e. its image in `F^×`.
    pub fn as_unit(&self) -> Option<Elem> {
        if self.degree != 1 {
            return None;
        }
        let f = &self.field;
        let mut acc = f.one();
        for (c, e) in &self.terms {
            acc = f.mul(&acc, &f.pow(&e[0], *c)?);
        }
        Some(acc)
    }

    /// Drops terms killed by the Steinberg relations `{x, 1−x} = 0` and
    /// `{x, −x} = 0` for some pair of entries.
    pub fn drop_steinberg(&self) -> Self {
        let f = &self.field;
        let one = f.one();
        let trivial = |e: &[Elem]| {
            (0..e.len()).any(|i| {
                (i + 1..e.len()).any(|j| {
                    let s = f.add(&e[i], &e[j]);
                    s == one || f.is_zero(&s)
                })
            })
        };
        let terms = self.terms.iter().filter(|(_, e)| !trivial(e)).cloned().collect();
        MilnorSymbol { field: f.clone(), degree: self.degree, terms }
    }
}

/// `(−1)^{v(g)v(f)} (g^{v(f)} / f^{v(g)})(P)`.
pub fn tame_symbol(g: &FieldElement, f: &FieldElement, p: &Place) -> Result<FieldElement> {
    let k_t = p.function_field();
    if g.field() != k_t || f.field() != k_t {
        return Err(Error::DescriptorMismatch);
    }
    if g.is_zero() || f.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let vg = p.valuation_elem(g.value())?;
    let vf = p.valuation_elem(f.value())?;
    let h = k_t.div(&k_t.pow(g.value(), vf).unwrap(), &k_t.pow(f.value(), vg).unwrap()).unwrap();
    let mut val = p.evaluate(&h)?;
    if (vg * vf) % 2 != 0 {
        val = p.residue_field().neg(&val);
    }
    Ok(FieldElement::new(p.residue_field(), val))
}

/// Boundary `∂_P : K^M_q(k(t)) → K^M_{q−1}(k(P))`.
pub fn boundary(sym: &MilnorSymbol, p: &Place) -> Result<MilnorSymbol> {
    let k_t = p.function_field();
    if sym.field != *k_t {
        return Err(Error::DescriptorMismatch);
    }
    if sym.degree == 0 {
        return Err(Error::Invalid("boundary of a degree 0 symbol".into()));
    }
    let res = p.residue_field();
    let mut out = MilnorSymbol::zero(res, sym.degree - 1);
    let pi = uniformizer(p);
    let minus_one = res.from_i64(-1);
    for (c, entries) in &sym.terms {
        let q = entries.len();
        let mut vals = Vec::with_capacity(q);
        let mut units = Vec::with_capacity(q);
        for x in entries {
            let v = p.valuation_elem(x)?;
            let u = k_t.mul(x, &k_t.pow(&pi, -v).unwrap());
            vals.push(v);
            units.push(p.evaluate(&u)?);
        }
        // expand multilinearly: slot i carries either the unit or v_i·{π}
        for mask in 1u32..(1 << q) {
            let chosen: Vec<usize> = (0..q).filter(|i| mask >> i & 1 == 1).collect();
            let mut coeff = *c;
            for &i in &chosen {
                coeff *= vals[i];
            }
            if coeff == 0 {
                continue;
            }
            // None marks π
            let mut slots: Vec<Option<Elem>> =
                (0..q).map(|i| if mask >> i & 1 == 1 { None } else { Some(units[i].clone()) }).collect();
            // {…π…π…}: bring the second π next to the first, then {π,π} = {π,−1}
            loop {
                let pis: Vec<usize> = (0..q).filter(|&i| slots[i].is_none()).collect();
                if pis.len() < 2 {
                    break;
                }
                let (a, b) = (pis[0], pis[1]);
                let gap = b - a - 1;
                let moved = slots.remove(b);
                slots.insert(a + 1, moved);
                if gap % 2 == 1 {
                    coeff = -coeff;
                }
                slots[a + 1] = Some(minus_one.clone());
            }
            let pos = slots.iter().position(|s| s.is_none()).unwrap();
            let after = q - 1 - pos;
            if after % 2 == 1 {
                coeff = -coeff;
            }
            slots.remove(pos);
            out.push(coeff, slots.into_iter().map(|s| s.unwrap()).collect())?;
        }
    }
    Ok(out)
}

/// `dlog{x₁,…,x_q} = dlog[x₁]⋯dlog[x_q]` in `W_SΩ^q`; degree 0 gives `n·[1]`.
pub fn milnor_dlog(sym: &MilnorSymbol, set: &TruncationSet) -> Result<GhostForm> {
    let mut acc = GhostForm::zero(set, &sym.field, sym.degree)?;
    for (c, e) in &sym.terms {
        acc = acc.add(&gform_dlog_symbol(e, &sym.field, set)?.scale_int(*c))?;
    }
    Ok(acc)
}

/// `(dlog ∂_P(sym), ∂_P dlog(sym))`.
pub fn tameres_square(sym: &MilnorSymbol, p: &Place, set: &TruncationSet) -> Result<(GhostForm, GhostForm)> {
    let lhs = milnor_dlog(&boundary(sym, p)?, set)?;
    let rhs = refined_residue_ghost(&milnor_dlog(sym, set)?, p)?;
    Ok((lhs, rhs))
}

/// `Π_P N_{k(P)/k}(∂_P{f, g})` over the supplied places and infinity.
pub fn weil_reciprocity_product(f: &FieldElement, g: &FieldElement, places: &[Place]) -> Result<FieldElement> {
    let k_t = f.field();
    let all = with_infinity(k_t, places)?;
    audit_divisors(&[f.value(), g.value()], &all)?;
    let k = all[0].base().clone();
    let sym = MilnorSymbol::from_elements(&[f.clone(), g.clone()])?;
    let mut acc = k.one();
    for p in &all {
        let b = boundary(&sym, p)?;
        let unit = b.as_unit().ok_or(Error::ZeroArgument)?;
        let n = p.residue_field().norm_to(&unit, &k)?;
        acc = k.mul(&acc, &n);
    }
    Ok(FieldElement::new(&k, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> Field {
        Field::function_field(&Field::rationals(), &["t"]).unwrap()
    }

    fn origin(k_t: &Field) -> Place {
        let q = Field::rationals();
        Place::finite(k_t, &[q.zero(), q.one()]).unwrap()
    }

    #[test]
    fn tame_examples() {
        let k_t = qt();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let one = FieldElement::one(&k_t);
        let p = origin(&k_t);
        assert!(tame_symbol(&(&one - &t), &t, &p).unwrap().is_one());
        assert_eq!(tame_symbol(&t, &t, &p).unwrap(), FieldElement::from_i64(&Field::rationals(), -1));
        let c = FieldElement::from_i64(&k_t, 3);
        assert!(tame_symbol(&c, &(&one + &t), &p).unwrap().is_one());
    }

    #[test]
    fn boundary_examples() {
        let k_t = qt();
        let q = Field::rationals();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let u = &FieldElement::from_i64(&k_t, 2) + &t;
        let p = origin(&k_t);
        let b = boundary(&MilnorSymbol::from_elements(&[u, t.clone()]).unwrap(), &p).unwrap();
        assert_eq!(b.as_unit().unwrap(), q.from_i64(2));
        let b1 = boundary(&MilnorSymbol::from_elements(&[&t * &t]).unwrap(), &p).unwrap();
        assert_eq!(b1.as_integer(), Some(2));
        let b2 = boundary(&MilnorSymbol::from_elements(&[t.clone(), t]).unwrap(), &p).unwrap();
        assert_eq!(b2.as_unit().unwrap(), q.from_i64(-1));
    }

    #[test]
    fn reciprocity_simple() {
        let k_t = qt();
        let q = Field::rationals();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let one = FieldElement::one(&k_t);
        let f = &t - &FieldElement::from_i64(&k_t, 2);
        let g = &(&t * &t) + &one;
        let places = [Place::from_element(&f).unwrap(), Place::from_element(&g).unwrap()];
        let prod = weil_reciprocity_product(&f, &g, &places).unwrap();
        assert_eq!(prod, FieldElement::one(&q));
    }
}
