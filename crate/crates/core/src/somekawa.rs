//! Symbols `{w, x₁, …, x_{q−1}}_{E/k}` of the K-group `K(k; W_S, G_m, …, G_m)`,
//! the map `ψ` to forms and the relations it has to kill.
//!
//! The group itself is never built; every relation is checked on `ψ`-values.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElement};
use crate::ghost_form::{gform_dlog_symbol, gform_trace, GhostForm};
use crate::kaehler::{dlog_product, trace_form, DifferentialForm};
use crate::milnor::tame_symbol;
use crate::places::{audit_divisors, audit_places, with_infinity, witt_evaluate, witt_local_symbol, Place};
use crate::witt::{ghost, witt_trace, TruncationSet, WittRing, WittVector};

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolTerm {
    pub coeff: i64,
    pub ext: Field,
    pub witt: WittVector,
    pub entries: Vec<Elem>,
}

/// A formal integer combination of symbols over a fixed base `k`, truncation
/// set `S` and number of multiplicative slots.
#[derive(Clone, PartialEq, Eq)]
pub struct SomekawaSymbol {
    base: Field,
    set: TruncationSet,
    arity: usize,
    terms: Vec<SymbolTerm>,
}

impl fmt::Debug for SomekawaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SomekawaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut slots: Vec<String> = Vec::new();
                let comps: Vec<String> = t.witt.components().iter().map(|c| t.ext.fmt_elem(c)).collect();
                slots.push(if comps.len() == 1 { comps[0].clone() } else { format!("({})", comps.join(", ")) });
                slots.extend(t.entries.iter().map(|e| t.ext.fmt_elem(e)));
                let sub = if t.ext == self.base { String::from("k/k") } else { format!("{}/k", t.ext) };
                format!("{}·{{{}}}_{}", t.coeff, slots.join(", "), sub)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl SomekawaSymbol {
    pub fn zero(base: &Field, set: &TruncationSet, arity: usize) -> Self {
        SomekawaSymbol { base: base.clone(), set: set.clone(), arity, terms: Vec::new() }
    }

    /// The single symbol `{w, x₁, …}_{E/k}`.
    pub fn new(base: &Field, ext: &Field, witt: WittVector, entries: Vec<Elem>) -> Result<Self> {
        let mut s = Self::zero(base, witt.set(), entries.len());
        s.push(1, ext, witt, entries)?;
        Ok(s)
    }

    /// `{x, x₁, …}_{E/k}` with `x ∈ E = W_{{1}}(E)`.
    pub fn additive(base: &Field, ext: &Field, x: Elem, entries: Vec<Elem>) -> Result<Self> {
        let w = WittVector::from_components(&TruncationSet::trivial(), &WittRing::Field(ext.clone()), alloc::vec![x])?;
        Self::new(base, ext, w, entries)
    }

    pub fn push(&mut self, coeff: i64, ext: &Field, witt: WittVector, entries: Vec<Elem>) -> Result<()> {
        if ext.degree_over(&self.base).is_none() {
            return Err(Error::NotAFiniteExtension);
        }
        if *witt.ring() != WittRing::Field(ext.clone()) || *witt.set() != self.set || entries.len() != self.arity {
            return Err(Error::DescriptorMismatch);
        }
        if entries.iter().any(|e| ext.is_zero(e)) {
            return Err(Error::ZeroArgument);
        }
        if entries.iter().any(|e| !ext.validate(e)) {
            return Err(Error::DescriptorMismatch);
        }
        if coeff != 0 {
            self.terms.push(SymbolTerm { coeff, ext: ext.clone(), witt, entries });
        }
        Ok(())
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    /// Number of multiplicative slots.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.base != o.base || self.set != o.set || self.arity != o.arity {
            return Err(Error::DescriptorMismatch);
        }
        let mut out = self.clone();
        out.terms.extend(o.terms.iter().cloned());
        Ok(out)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let mut out = self.clone();
        out.terms = if n == 0 { Vec::new() } else { out.terms };
        for t in &mut out.terms {
            t.coeff *= n;
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }
}

/// `ψ` for `S = {1}`: `Σ c·Tr_{E/k}(x·dlog x₁∧…∧dlog x_{q−1})`.
pub fn psi(sym: &SomekawaSymbol) -> Result<DifferentialForm> {
    if sym.set != TruncationSet::trivial() {
        return Err(Error::InvalidTruncation(format!("ψ expects S = {{1}}, got {}", sym.set)));
    }
    let mut acc = DifferentialForm::zero(&sym.base, sym.arity);
    for t in &sym.terms {
        let w = dlog_product(&t.ext, &t.witt.components()[0], &t.entries)?;
        acc = acc.add(&trace_form(&t.ext, &sym.base, &w)?.scale_int(t.coeff))?;
    }
    Ok(acc)
}

/// `ψ` into `W_SΩ^{q−1}_k` in ghost coordinates (characteristic zero).
pub fn psi_witt(sym: &SomekawaSymbol) -> Result<GhostForm> {
    let mut acc = GhostForm::zero(&sym.set, &sym.base, sym.arity)?;
    for t in &sym.terms {
        let w = GhostForm::from_witt(&t.witt)?;
        let l = gform_dlog_symbol(&t.entries, &t.ext, &sym.set)?;
        let prod = crate::ghost_form::gform_mul(&w, &l)?;
        acc = acc.add(&gform_trace(&t.ext, &sym.base, &prod)?.scale_int(t.coeff))?;
    }
    Ok(acc)
}

/// One summand `x·dlog x₁⋯dlog x_{q−1}` of a presentation over `k`.
pub type DlogTerm = (Elem, Vec<Elem>);

/// `φ`: a dlog presentation `Σ x·dlog x₁⋯` becomes `Σ {x, x₁, …}_{k/k}`.
pub fn phi(k: &Field, arity: usize, presentation: &[DlogTerm]) -> Result<SomekawaSymbol> {
    let mut out = SomekawaSymbol::zero(k, &TruncationSet::trivial(), arity);
    let ring = WittRing::Field(k.clone());
    for (x, entries) in presentation {
        let w = WittVector::from_components(&TruncationSet::trivial(), &ring, alloc::vec![x.clone()])?;
        out.push(1, k, w, entries.clone())?;
    }
    Ok(out)
}

/// A presentation of `ω` using `c·dx_{i₁}∧… = (c·x_{i₁}⋯)·dlog x_{i₁}∧…`.
pub fn dlog_presentation(w: &DifferentialForm) -> Vec<DlogTerm> {
    let k = w.field();
    let names = k.generators();
    let gens: Vec<Elem> = names.iter().map(|n| k.named(n).unwrap()).collect();
    w.terms()
        .map(|(key, c)| {
            let x = key.iter().fold(c.clone(), |acc, &i| k.mul(&acc, &gens[i]));
            (x, key.iter().map(|&i| gens[i].clone()).collect())
        })
        .collect()
}

/// `{y₁, …}_{E/k} ↦ {[1], y₁, …}_{E/k}`.
pub fn dlog_lift(k: &Field, ext: &Field, entries: &[Elem], set: &TruncationSet) -> Result<SomekawaSymbol> {
    let one = WittVector::one(set, &WittRing::Field(ext.clone()));
    SomekawaSymbol::new(k, ext, one, entries.to_vec())
}

/// `γ_s`: replace each Witt slot by its ghost component `gh_s`.
pub fn gamma_ghost(sym: &SomekawaSymbol, s: u64) -> Result<SomekawaSymbol> {
    let i = sym.set.index_of(s).ok_or(Error::NotSubTruncation)?;
    let mut out = SomekawaSymbol::zero(&sym.base, &TruncationSet::trivial(), sym.arity);
    for t in &sym.terms {
        if t.ext.characteristic() != 0 {
            return Err(Error::UnsupportedRing("γ_s needs characteristic zero".into()));
        }
        let g = ghost(&t.witt).swap_remove(i);
        let w = WittVector::from_components(&TruncationSet::trivial(), &WittRing::Field(t.ext.clone()), alloc::vec![g])?;
        out.push(t.coeff, &t.ext, w, t.entries.clone())?;
    }
    Ok(out)
}

/// `m_P(g)` for `g ∈ G_m^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(i64),
    /// `g` is the identity element.
    Infinite,
}

/// `min_i v_P(1 − g_i)`.
pub fn m_p(g: &[FieldElement], p: &Place) -> Result<Multiplicity> {
    let k_t = p.function_field();
    let mut best = Multiplicity::Infinite;
    for x in g {
        if x.field() != k_t {
            return Err(Error::DescriptorMismatch);
        }
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let y = k_t.sub(&k_t.one(), x.value());
        if k_t.is_zero(&y) {
            continue;
        }
        best = best.min(Multiplicity::Finite(p.valuation_elem(&y)?));
    }
    Ok(best)
}

/// Data of one (WR) generator on `ℙ¹_k`: `f, g₁, …, g_{q−1} ∈ k(t)^×` and
/// `g₀ ∈ W_S(k(t))`, with places carrying every zero and pole.
#[derive(Clone, Debug)]
pub struct WrDatum {
    pub f: FieldElement,
    pub g0: WittVector,
    pub gs: Vec<FieldElement>,
    pub places: Vec<Place>,
}

/// Contribution of one place.
#[derive(Clone, Debug)]
pub struct WrTerm {
    pub place: Place,
    /// `i(P)`; `0` is the Witt slot.
    pub index: usize,
    pub symbol: SomekawaSymbol,
    pub value: GhostForm,
}

#[derive(Clone, Debug)]
pub struct WrEvaluation {
    pub terms: Vec<WrTerm>,
    pub total: GhostForm,
}

impl WrDatum {
    pub fn new(f: FieldElement, g0: WittVector, gs: Vec<FieldElement>, places: Vec<Place>) -> Result<Self> {
        let k_t = f.field().clone();
        if *g0.ring() != WittRing::Field(k_t.clone()) || gs.iter().any(|g| *g.field() != k_t) {
            return Err(Error::DescriptorMismatch);
        }
        if f.is_zero() || gs.iter().any(|g| g.is_zero()) {
            return Err(Error::ZeroArgument);
        }
        let places = with_infinity(&k_t, &places)?;
        Ok(WrDatum { f, g0, gs, places })
    }

    pub fn function_field(&self) -> &Field {
        self.f.field()
    }

    pub fn base(&self) -> &Field {
        self.places[0].base()
    }

    fn witt_integral(&self, p: &Place) -> Result<bool> {
        for c in self.g0.components() {
            if !self.function_field().is_zero(c) && p.valuation_elem(c)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `i(P)`: the unique slot that is not integral at `P` (`0` when all are).
    pub fn index_at(&self, p: &Place) -> Result<usize> {
        let mut bad: Vec<usize> = Vec::new();
        if !self.witt_integral(p)? {
            bad.push(0);
        }
        for (i, g) in self.gs.iter().enumerate() {
            if p.valuation_elem(g.value())? != 0 {
                bad.push(i + 1);
            }
        }
        match bad.as_slice() {
            [] => Ok(0),
            [i] => Ok(*i),
            _ => Err(Error::Invalid(format!("slots {bad:?} are all non-integral at {p}"))),
        }
    }

    /// Checks every audited place: covered poles and the modulus condition.
    pub fn check(&self) -> Result<()> {
        let elems: Vec<&Elem> = core::iter::once(self.f.value()).chain(self.gs.iter().map(|g| g.value())).collect();
        audit_divisors(&elems, &self.places)?;
        let k_t = self.function_field();
        let comps: Vec<DifferentialForm> =
            self.g0.components().iter().map(|c| DifferentialForm::function(k_t, c.clone())).collect();
        let refs: Vec<&DifferentialForm> = comps.iter().collect();
        audit_places(&refs, &self.places)?;
        for p in &self.places {
            self.index_at(p)?;
            if let Some(s) = self.modulus_failure(p)? {
                return Err(Error::ModulusViolation { place: format!("{p}"), index: s });
            }
        }
        Ok(())
    }

    /// First `s ∈ S` violating the modulus inequality at `P`, if any.
    pub fn modulus_failure(&self, p: &Place) -> Result<Option<u64>> {
        let k_t = self.function_field();
        let m = self.g0.set().max() as i64;
        let gh = ghost(&self.g0);
        let mut budget = Multiplicity::Finite(0);
        for g in &self.gs {
            if let (Multiplicity::Finite(a), Multiplicity::Finite(b)) = (budget, m_p(core::slice::from_ref(g), p)?) {
                budget = Multiplicity::Finite(a + b);
            } else {
                budget = Multiplicity::Infinite;
            }
        }
        let one_minus_f = k_t.sub(&k_t.one(), self.f.value());
        if !k_t.is_zero(&one_minus_f) {
            if let Multiplicity::Finite(a) = budget {
                budget = Multiplicity::Finite(a + p.valuation_elem(&one_minus_f)?);
            }
        } else {
            budget = Multiplicity::Infinite;
        }
        for (&s, g) in self.g0.set().elems().iter().zip(&gh) {
            if k_t.is_zero(g) {
                continue;
            }
            let v = p.valuation_elem(g)?;
            if v >= 0 {
                continue;
            }
            if let Multiplicity::Finite(b) = budget {
                if (m + 1) * v + b < 0 {
                    return Ok(Some(s));
                }
            }
        }
        Ok(None)
    }

    /// The local term `g₀(P) ⊗ ⋯ ⊗ ∂_P(g_{i(P)}, f) ⊗ ⋯ ⊗ g_{q−1}(P)` over `k(P)/k`.
    pub fn local_term(&self, p: &Place) -> Result<(usize, SomekawaSymbol)> {
        let i = self.index_at(p)?;
        let res = p.residue_field();
        let w = if i == 0 { witt_local_symbol(&self.g0, &self.f, p)? } else { witt_evaluate(&self.g0, p)? };
        let mut entries = Vec::with_capacity(self.gs.len());
        for (j, g) in self.gs.iter().enumerate() {
            if j + 1 == i {
                entries.push(tame_symbol(g, &self.f, p)?.into_value());
            } else {
                entries.push(p.evaluate(g.value())?);
            }
        }
        Ok((i, SomekawaSymbol::new(self.base(), res, w, entries)?))
    }
}

/// `Σ_P ψ(local term at P)` for a (WR) generator; zero when `ψ` is well defined.
pub fn wr_generator_eval(d: &WrDatum) -> Result<WrEvaluation> {
    d.check()?;
    let k = d.base().clone();
    let mut total = GhostForm::zero(d.g0.set(), &k, d.gs.len())?;
    let mut terms = Vec::with_capacity(d.places.len());
    for p in &d.places {
        let (index, symbol) = d.local_term(p)?;
        let value = psi_witt(&symbol)?;
        total = total.add(&value)?;
        terms.push(WrTerm { place: p.clone(), index, symbol, value });
    }
    Ok(WrEvaluation { terms, total })
}

/// The datum `f = t⁻¹`, `g₀ = t`, `g₁ = (t−x)(t−(1−x))/(t(t−1))`, `g_j = x_j`
/// over `k(t)`, whose (WR) relation is `{x,x,…} + {1−x,1−x,…}`.
pub fn cathelineau_instance(x: &FieldElement, tail: &[FieldElement]) -> Result<WrDatum> {
    let k = x.field().clone();
    if x.is_zero() || x.is_one() {
        return Err(Error::DegenerateParameter(format!("x = {x}")));
    }
    if tail.iter().any(|y| y.field() != &k) {
        return Err(Error::DescriptorMismatch);
    }
    if tail.iter().any(|y| y.is_zero()) {
        return Err(Error::ZeroArgument);
    }
    let name = crate::places::fresh_name(&k, "t");
    let k_t = Field::function_field(&k, &[&name])?;
    let t = k_t.named(&name).unwrap();
    let lin = |c: &Elem| alloc::vec![k.neg(c), k.one()];
    let xv = x.value().clone();
    let yv = k.sub(&k.one(), &xv);
    let num = crate::poly::mul(&k, &lin(&xv), &lin(&yv));
    let den = alloc::vec![k.zero(), k.from_i64(-1), k.one()];
    let g1 = k_t.frac_from_polys(&num, &den)?;
    let f = k_t.inv(&t).unwrap();
    let set = TruncationSet::trivial();
    let g0 = WittVector::from_components(&set, &WittRing::Field(k_t.clone()), alloc::vec![t.clone()])?;
    let mut gs = alloc::vec![FieldElement::new(&k_t, g1)];
    for y in tail {
        gs.push(FieldElement::new(&k_t, k_t.embed(y.value(), &k)?));
    }
    let mut places = alloc::vec![
        Place::finite(&k_t, &lin(&k.zero()))?,
        Place::finite(&k_t, &lin(&k.one()))?,
        Place::finite(&k_t, &lin(&xv))?,
    ];
    if xv != yv {
        places.push(Place::finite(&k_t, &lin(&yv))?);
    }
    WrDatum::new(FieldElement::new(&k_t, f), g0, gs, places)
}

/// Where the projection formula moves the norm or trace.
#[derive(Clone, Debug)]
pub enum PfSlot {
    /// `x ∈ W_S(E₂)`; the multiplicative entries live over `E₁`.
    Witt { x: WittVector, entries: Vec<Elem> },
    /// `w ∈ W_S(E₁)`, entry `i₀` (0-based) over `E₂`, the rest over `E₁`.
    Mult { w: WittVector, entries: Vec<Elem>, i0: usize, y: Elem },
}

/// `(ψ(first term), ψ(second term))` of a (PF) generator for `k ⊆ E₁ ⊆ E₂`.
pub fn pf_generator_eval(k: &Field, e1: &Field, e2: &Field, slot: &PfSlot) -> Result<(GhostForm, GhostForm)> {
    if e2.degree_over(e1).is_none() {
        return Err(Error::NotAFiniteExtension);
    }
    let up = |xs: &[Elem]| xs.iter().map(|x| e2.embed(x, e1)).collect::<Result<Vec<_>>>();
    match slot {
        PfSlot::Witt { x, entries } => {
            let first = SomekawaSymbol::new(k, e2, x.clone(), up(entries)?)?;
            let second = SomekawaSymbol::new(k, e1, witt_trace(e2, e1, x)?, entries.clone())?;
            Ok((psi_witt(&first)?, psi_witt(&second)?))
        }
        PfSlot::Mult { w, entries, i0, y } => {
            if *i0 > entries.len() {
                return Err(Error::Invalid(format!("slot {i0} out of range")));
            }
            let w2 = w.map_components(&WittRing::Field(e2.clone()), |c| e2.embed(c, e1))?;
            let mut hi = up(entries)?;
            hi.insert(*i0, y.clone());
            let mut lo = entries.clone();
            lo.insert(*i0, e2.norm_to(y, e1)?);
            let first = SomekawaSymbol::new(k, e2, w2, hi)?;
            let second = SomekawaSymbol::new(k, e1, w.clone(), lo)?;
            Ok((psi_witt(&first)?, psi_witt(&second)?))
        }
    }
}

/// Per-place `ψ`-values keyed by the displayed place.
pub fn wr_breakdown(e: &WrEvaluation) -> BTreeMap<String, GhostForm> {
    e.terms.iter().map(|t| (format!("{}", t.place), t.value.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kaehler::{d_elem, dlog_elem};

    fn qy() -> Field {
        Field::function_field(&Field::rationals(), &["y"]).unwrap()
    }

    #[test]
    fn psi_of_simple_symbols() {
        let k = qy();
        let y = k.named("y").unwrap();
        let s = SomekawaSymbol::additive(&k, &k, y.clone(), alloc::vec![y.clone()]).unwrap();
        assert_eq!(psi(&s).unwrap(), d_elem(&k, &y));
        let one = SomekawaSymbol::additive(&k, &k, k.one(), alloc::vec![y.clone()]).unwrap();
        assert_eq!(psi(&one).unwrap(), dlog_elem(&k, &y).unwrap());
        let z = k.sub(&k.one(), &y);
        let c = s.add(&SomekawaSymbol::additive(&k, &k, z.clone(), alloc::vec![z]).unwrap()).unwrap();
        assert!(psi(&c).unwrap().is_zero());
    }

    #[test]
    fn cathelineau_over_function_field() {
        let k = qy();
        let x = FieldElement::named(&k, "y").unwrap();
        let ev = wr_generator_eval(&cathelineau_instance(&x, &[]).unwrap()).unwrap();
        assert!(ev.total.is_zero());
        let nonzero = ev.terms.iter().filter(|t| !t.value.is_zero()).count();
        assert_eq!(nonzero, 2);
        let tail = [FieldElement::from_i64(&k, 3)];
        let ev = wr_generator_eval(&cathelineau_instance(&x, &tail).unwrap()).unwrap();
        assert!(ev.total.is_zero());
    }

    #[test]
    fn cathelineau_collapsed_place() {
        let q = Field::rationals();
        let half = FieldElement::from_ratio(&q, 1, 2).unwrap();
        let d = cathelineau_instance(&half, &[]).unwrap();
        assert_eq!(d.places.len(), 4);
        assert!(wr_generator_eval(&d).unwrap().total.is_zero());
        assert!(matches!(
            cathelineau_instance(&FieldElement::one(&q), &[]),
            Err(Error::DegenerateParameter(_))
        ));
    }

    #[test]
    fn multiplicities() {
        let k_t = Field::function_field(&Field::rationals(), &["t"]).unwrap();
        let t = k_t.named("t").unwrap();
        let p0 = Place::finite(&k_t, &[k_t.base().unwrap().zero(), k_t.base().unwrap().one()]).unwrap();
        let one = k_t.one();
        let g = FieldElement::new(&k_t, k_t.add(&one, &k_t.pow_u(&t, 3)));
        assert_eq!(m_p(&[g], &p0).unwrap(), Multiplicity::Finite(3));
        let a = FieldElement::new(&k_t, k_t.add(&one, &t));
        let b = FieldElement::new(&k_t, k_t.add(&one, &k_t.pow_u(&t, 2)));
        assert_eq!(m_p(&[a, b], &p0).unwrap(), Multiplicity::Finite(1));
        assert_eq!(m_p(&[FieldElement::one(&k_t)], &p0).unwrap(), Multiplicity::Infinite);
    }

    #[test]
    fn modulus_rejects_deep_pole() {
        let k = Field::rationals();
        let k_t = Field::function_field(&k, &["t"]).unwrap();
        let t = k_t.named("t").unwrap();
        let g0 = WittVector::from_components(
            &TruncationSet::trivial(),
            &WittRing::Field(k_t.clone()),
            alloc::vec![k_t.pow_u(&t, 2)],
        )
        .unwrap();
        let f = FieldElement::new(&k_t, k_t.from_i64(2));
        let g1 = FieldElement::new(&k_t, k_t.from_i64(3));
        let d = WrDatum::new(f, g0, alloc::vec![g1], alloc::vec![]).unwrap();
        assert!(matches!(wr_generator_eval(&d), Err(Error::ModulusViolation { .. })));
    }

    #[test]
    fn ghost_substitution_commutes_with_psi() {
        let k = qy();
        let y = k.named("y").unwrap();
        let set = TruncationSet::new(&[1, 2, 3, 6]).unwrap();
        let ring = WittRing::Field(k.clone());
        let comps = [y.clone(), k.from_i64(2), k.add(&y, &k.one()), k.from_i64(-1)];
        let w = WittVector::from_components(&set, &ring, comps.to_vec()).unwrap();
        let sym = SomekawaSymbol::new(&k, &k, w, alloc::vec![k.add(&y, &k.from_i64(5))]).unwrap();
        let full = psi_witt(&sym).unwrap();
        for &s in set.elems() {
            assert_eq!(&psi(&gamma_ghost(&sym, s).unwrap()).unwrap(), full.coord(s).unwrap());
        }
    }

    #[test]
    fn phi_then_psi() {
        let k = Field::function_field(&Field::rationals(), &["x", "y"]).unwrap();
        let x = k.named("x").unwrap();
        let y = k.named("y").unwrap();
        let mut w = DifferentialForm::zero(&k, 1);
        w.add_term(&[0], k.add(&x, &y));
        w.add_term(&[1], k.mul(&x, &x));
        let back = psi(&phi(&k, 1, &dlog_presentation(&w)).unwrap()).unwrap();
        assert_eq!(back, w);
    }
}
