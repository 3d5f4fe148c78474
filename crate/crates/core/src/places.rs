//! Places of a rational function field `K = k(t)`, local expansions and
//! residues.
//!
//! A finite place is given by a monic squarefree polynomial `π ∈ k[t]`,
//! assumed irreducible. Its residue field is `k[θ]/(π)` (or `k` itself when
//! `deg π = 1`, with `θ` the root) and the local parameter is `u = t − θ`,
//! so `K_P ≅ k(P)((u))`. At infinity `u = 1/t`.
//!
//! Local forms use the generator basis of `k(P)` followed by `du`, which
//! gets index `r = #generators(k)`; this matches the index of `dt` in `K`.
//! Residues take the coefficient of `u⁻¹` in front of a trailing `du`:
//! `Res(β∧du/u) = β`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElement, FieldKind};
use crate::ghost_form::GhostForm;
use crate::kaehler::{dlog_elem, sort_with_sign, trace_form, DifferentialForm};
use crate::laurent::LaurentSeries;
use crate::poly;
use crate::witt::{
    ghost, teichmuller, unghost, verschiebung, TruncationSet, WittRing, WittVector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    /// Monic squarefree `π` with coefficients in `k`, low degree first.
    Finite(Vec<Elem>),
    Infinite,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Place {
    kind: PlaceKind,
    function_field: Field,
    base: Field,
    residue: Field,
    theta: Elem,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({})", self)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Infinite => f.write_str("∞"),
            PlaceKind::Finite(p) => write!(f, "({})", self.base.fmt_poly(p, &self.var())),
        }
    }
}

fn split_function_field(k_t: &Field) -> Result<(Field, String)> {
    match k_t.kind() {
        FieldKind::Function { base, var } => Ok((base.clone(), var.clone())),
        _ => Err(Error::InvalidPlace(format!("{k_t} is not a rational function field k(t)"))),
    }
}

pub(crate) fn fresh_name(base: &Field, stem: &str) -> String {
    let names = base.names();
    let mut name = String::from(stem);
    let mut i = 1;
    while names.contains(&name) {
        name = format!("{stem}{i}");
        i += 1;
    }
    name
}

/// `c·u^k` with enough precision to multiply `s` without loss.
fn monomial_for(s: &LaurentSeries, c: Elem, k: i64) -> LaurentSeries {
    let span = (s.precision() - s.order()).max(0);
    LaurentSeries::monomial(s.field(), c, k, k + span + 1)
}

impl Place {
    /// The finite place of `π ∈ k[t]` (coefficients low degree first; made monic).
    pub fn finite(k_t: &Field, pi: &[Elem]) -> Result<Place> {
        let (base, _) = split_function_field(k_t)?;
        let pi = poly::trim(&base, pi.to_vec());
        if poly::degree(&pi).unwrap_or(0) < 1 {
            return Err(Error::InvalidPlace("a finite place needs a polynomial of degree >= 1".into()));
        }
        let pi = poly::monic(&base, &pi);
        let (residue, theta) = if pi.len() == 2 {
            (base.clone(), base.neg(&pi[0]))
        } else {
            let r = Field::algebraic(&base, pi.clone(), &fresh_name(&base, "θ"))
                .map_err(|e| Error::InvalidPlace(format!("{e}")))?;
            let th = r.gen().unwrap();
            (r, th)
        };
        Ok(Place { kind: PlaceKind::Finite(pi), function_field: k_t.clone(), base, residue, theta })
    }

    /// The finite place of a polynomial given as an element of `k(t)`.
    pub fn from_element(pi: &FieldElement) -> Result<Place> {
        let k_t = pi.field();
        let (num, den) = k_t
            .frac_parts(pi.value())
            .ok_or_else(|| Error::InvalidPlace("not an element of k(t)".into()))?;
        if den.len() != 1 {
            return Err(Error::InvalidPlace(format!("{pi} is not a polynomial in the variable")));
        }
        Place::finite(k_t, num)
    }

    pub fn infinite(k_t: &Field) -> Result<Place> {
        let (base, _) = split_function_field(k_t)?;
        Ok(Place {
            kind: PlaceKind::Infinite,
            function_field: k_t.clone(),
            base: base.clone(),
            theta: base.zero(),
            residue: base,
        })
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn is_infinite(&self) -> bool {
        self.kind == PlaceKind::Infinite
    }

    pub fn function_field(&self) -> &Field {
        &self.function_field
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn residue_field(&self) -> &Field {
        &self.residue
    }

    /// Image of `t` in the residue field (finite places).
    pub fn theta(&self) -> &Elem {
        &self.theta
    }

    /// `[k(P) : k]`.
    pub fn degree(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite(p) => p.len() - 1,
            PlaceKind::Infinite => 1,
        }
    }

    fn var(&self) -> String {
        split_function_field(&self.function_field).map(|x| x.1).unwrap_or_default()
    }

    /// Index of `dt` (and of `du` in local forms).
    pub fn local_index(&self) -> usize {
        self.base.num_generators()
    }

    fn parts<'a>(&self, f: &'a Elem) -> (&'a [Elem], &'a [Elem]) {
        self.function_field.frac_parts(f).expect("element of k(t)")
    }

    /// Multiplicity of `π` in a polynomial over `k`.
    fn multiplicity(&self, a: &[Elem]) -> i64 {
        let PlaceKind::Finite(pi) = &self.kind else { unreachable!() };
        let mut a = a.to_vec();
        let mut m = 0;
        while !a.is_empty() {
            let (q, r) = poly::divrem(&self.base, &a, pi);
            if !r.is_empty() {
                break;
            }
            a = q;
            m += 1;
        }
        m
    }

    /// Normalized valuation of an element of `k(t)`.
    pub fn valuation_elem(&self, f: &Elem) -> Result<i64> {
        let (n, d) = self.parts(f);
        if n.is_empty() {
            return Err(Error::ZeroArgument);
        }
        Ok(match &self.kind {
            PlaceKind::Infinite => d.len() as i64 - n.len() as i64,
            PlaceKind::Finite(_) => self.multiplicity(n) - self.multiplicity(d),
        })
    }

    /// Polynomial over `k` rewritten as a polynomial in `u` over `k(P)`.
    fn shift_poly(&self, a: &[Elem]) -> Vec<Elem> {
        let r = &self.residue;
        let lin = poly::trim(r, vec![self.theta.clone(), r.one()]);
        let mut acc: Vec<Elem> = Vec::new();
        for c in a.iter().rev() {
            acc = poly::mul(r, &acc, &lin);
            acc = poly::add(r, &acc, &poly::constant(r, r.embed(c, &self.base).unwrap()));
        }
        acc
    }

    /// Laurent expansion in `u`, exact for exponents `< prec`.
    pub fn expand(&self, f: &Elem, prec: i64) -> Result<LaurentSeries> {
        let r = &self.residue;
        let (n, d) = self.parts(f);
        if n.is_empty() {
            return Ok(LaurentSeries::zero(r, prec));
        }
        let (nu, du, shift) = match &self.kind {
            PlaceKind::Finite(_) => (self.shift_poly(n), self.shift_poly(d), 0),
            PlaceKind::Infinite => {
                let rev = |a: &[Elem]| a.iter().rev().cloned().collect::<Vec<_>>();
                (rev(n), rev(d), d.len() as i64 - n.len() as i64)
            }
        };
        let ord = |a: &[Elem]| a.iter().position(|c| !r.is_zero(c)).unwrap() as i64;
        let (a, b) = (ord(&nu), ord(&du));
        let work = (prec - shift).max(0) + 2 * b + a.abs() + 1;
        let ns = LaurentSeries::from_poly(r, &nu, work);
        let ds = LaurentSeries::from_poly(r, &du, work);
        let q = ns.checked_div(&ds)?.shift(shift);
        debug_assert!(q.precision() >= prec);
        Ok(q.truncate(prec))
    }

    /// Value at `P` of a `P`-integral element.
    pub fn evaluate(&self, f: &Elem) -> Result<Elem> {
        let s = self.expand(f, 1)?;
        if !s.is_zero() && s.order() < 0 {
            return Err(Error::Invalid(format!("{} has a pole at {self}", self.function_field.fmt_elem(f))));
        }
        s.coeff(0)
    }

    /// `(f·π^{−v_P(f)})(P)` for the fixed uniformizer `π` (`1/t` at infinity).
    pub fn unit_part(&self, f: &Elem) -> Result<Elem> {
        let s = self.expand(f, self.valuation_elem(f)? + 1)?;
        let lead = s.leading_coeff()?;
        match &self.kind {
            PlaceKind::Infinite => Ok(lead),
            PlaceKind::Finite(pi) => {
                // π = π'(θ)·u + O(u²)
                let r = &self.residue;
                let dpi = poly::derivative(&self.base, pi);
                let slope = poly::eval_in(r, &dpi, &self.theta, |c| r.embed(c, &self.base).unwrap());
                let v = s.order();
                Ok(r.mul(&lead, &r.pow(&slope, -v).unwrap()))
            }
        }
    }

    /// `dθ` as a form over `k(P)`.
    fn d_theta(&self) -> DifferentialForm {
        let r = &self.residue;
        let mut out = DifferentialForm::zero(r, 1);
        for g in 0..self.local_index() {
            out.add_term(&[g], r.derive(&self.theta, g));
        }
        out
    }
}

/// `v_P(f)`.
pub fn valuation(f: &FieldElement, p: &Place) -> Result<i64> {
    if *f.field() != p.function_field {
        return Err(Error::DescriptorMismatch);
    }
    p.valuation_elem(f.value())
}

/// Laurent expansion of `f` at `P` up to (excluding) exponent `prec`.
pub fn local_expand(f: &FieldElement, p: &Place, prec: i64) -> Result<LaurentSeries> {
    if *f.field() != p.function_field {
        return Err(Error::DescriptorMismatch);
    }
    p.expand(f.value(), prec)
}

/// A differential form over `k(P)((u))`: Laurent series coefficients on
/// wedge monomials in the generators of `k(P)` and `du` (last index).
#[derive(Clone, PartialEq, Eq)]
pub struct LocalForm {
    field: Field,
    degree: usize,
    terms: BTreeMap<Vec<usize>, LaurentSeries>,
}

impl fmt::Debug for LocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = self.field.generators();
        names.push("u".into());
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, s)| {
                let b: Vec<String> = k.iter().map(|&i| format!("d{}", names[i])).collect();
                format!("({s}){}{}", if b.is_empty() { "" } else { "*" }, b.join("∧"))
            })
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

impl LocalForm {
    pub fn zero(field: &Field, degree: usize) -> Self {
        LocalForm { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    /// `s·dv_I`; index `u_index()` stands for `du`.
    pub fn monomial(s: LaurentSeries, indices: &[usize]) -> Self {
        let mut w = Self::zero(s.field(), indices.len());
        w.add_term(indices, s);
        w
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn u_index(&self) -> usize {
        self.field.num_generators()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &LaurentSeries)> {
        self.terms.iter()
    }

    /// Smallest precision among the coefficients.
    pub fn precision(&self) -> Option<i64> {
        self.terms.values().map(|s| s.precision()).min()
    }

    pub fn add_term(&mut self, indices: &[usize], s: LaurentSeries) {
        assert_eq!(indices.len(), self.degree, "term has the wrong degree");
        assert!(*s.field() == self.field, "coefficient series over the wrong field");
        let mut key = indices.to_vec();
        let Some(sign) = sort_with_sign(&mut key) else { return };
        let s = if sign < 0 { s.neg() } else { s };
        let sum = match self.terms.remove(&key) {
            Some(old) => old.checked_add(&s).unwrap(),
            None => s,
        };
        // keep known-zero coefficients: their precision still matters
        self.terms.insert(key, sum);
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.field != o.field || self.degree != o.degree {
            return Err(Error::DescriptorMismatch);
        }
        let mut out = self.clone();
        for (k, s) in &o.terms {
            out.add_term(k, s.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_series(|s| Ok(s.neg())).unwrap()
    }

    pub fn scale(&self, c: &LaurentSeries) -> Result<Self> {
        self.map_series(|s| s.checked_mul(c))
    }

    fn map_series(&self, mut g: impl FnMut(&LaurentSeries) -> Result<LaurentSeries>) -> Result<Self> {
        let mut out = Self::zero(&self.field, self.degree);
        for (k, s) in &self.terms {
            out.terms.insert(k.clone(), g(s)?);
        }
        Ok(out)
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(Error::DescriptorMismatch);
        }
        let mut out = Self::zero(&self.field, self.degree + o.degree);
        for (ka, a) in &self.terms {
            for (kb, b) in &o.terms {
                let mut idx = ka.clone();
                idx.extend_from_slice(kb);
                if sort_with_sign(&mut idx.clone()).is_some() {
                    out.add_term(&idx, a.checked_mul(b)?);
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative, termwise in `u` and in the generators of `k(P)`.
    pub fn d(&self) -> Result<Self> {
        let f = &self.field;
        let r = self.u_index();
        let mut out = Self::zero(f, self.degree + 1);
        for (key, s) in &self.terms {
            for g in 0..r {
                let ds = s.map_coeffs(f, |c| Ok(f.derive(c, g)))?;
                let mut idx = vec![g];
                idx.extend_from_slice(key);
                if sort_with_sign(&mut idx.clone()).is_some() {
                    out.add_term(&idx, ds);
                }
            }
            let mut idx = vec![r];
            idx.extend_from_slice(key);
            if sort_with_sign(&mut idx.clone()).is_some() {
                out.add_term(&idx, s.derivative());
            }
        }
        Ok(out)
    }

    /// `Res`: coefficient of `u⁻¹` in front of a trailing `du`.
    pub fn residue(&self) -> Result<DifferentialForm> {
        let r = self.u_index();
        let mut out = DifferentialForm::zero(&self.field, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Ok(out);
        }
        for (key, s) in &self.terms {
            if key.last() == Some(&r) {
                out.add_term(&key[..key.len() - 1], s.coeff(-1)?);
            }
        }
        Ok(out)
    }

    /// Pullback along `u ↦ σ(u)`, `σ` of positive order with coefficients in
    /// `k(P)`; `du ↦ σ' du + Σ ∂_gσ dx_g`.
    pub fn substitute(&self, sigma: &LaurentSeries) -> Result<Self> {
        let f = &self.field;
        let r = self.u_index();
        let mut dsigma = LocalForm::monomial(sigma.derivative(), &[r]);
        for g in 0..r {
            let part = sigma.map_coeffs(f, |c| Ok(f.derive(c, g)))?;
            if !part.is_zero() {
                dsigma.add_term(&[g], part);
            }
        }
        let mut out = Self::zero(f, self.degree);
        for (key, s) in &self.terms {
            let c = s.compose(sigma)?;
            if key.last() == Some(&r) {
                let head = &key[..key.len() - 1];
                let base = LocalForm::monomial(c, head);
                out = out.add(&base.wedge(&dsigma)?)?;
            } else {
                out.add_term(key, c);
            }
        }
        Ok(out)
    }

    /// Pullback along `u ↦ u^e`.
    pub fn ramify(&self, e: i64) -> Result<Self> {
        let f = &self.field;
        let mut out = Self::zero(f, self.degree);
        let r = self.u_index();
        for (key, s) in &self.terms {
            let c = s.ramify(e);
            if key.last() == Some(&r) {
                let du = monomial_for(&c, f.from_i64(e), e - 1);
                out.add_term(key, c.checked_mul(&du)?);
            } else {
                out.add_term(key, c);
            }
        }
        Ok(out)
    }

    /// Coefficientwise trace `k'((u)) → k((u))` for `k'/k` finite.
    pub fn trace(&self, k: &Field) -> Result<Self> {
        let e = self.field.clone();
        if e.degree_over(k).is_none() {
            return Err(Error::NotAFiniteExtension);
        }
        let mut out = Self::zero(k, self.degree);
        for (key, s) in &self.terms {
            out.terms.insert(key.clone(), s.map_coeffs(k, |c| e.trace_to(c, k))?);
        }
        Ok(out)
    }
}

/// Precision used when only residues are needed.
fn residue_precision(p: &Place) -> i64 {
    // residue reads u^{-1}; at infinity dt = -u^{-2} du shifts by two
    let margin = 2;
    if p.is_infinite() {
        2 + margin
    } else {
        margin
    }
}

/// Local form of `ω ∈ Ω^q_{k(t)}` at `P`, coefficients expanded below `prec`.
pub fn localize(w: &DifferentialForm, p: &Place, prec: i64) -> Result<LocalForm> {
    if *w.field() != p.function_field {
        return Err(Error::DescriptorMismatch);
    }
    let r = p.local_index();
    let res = &p.residue;
    let mut out = LocalForm::zero(res, w.degree());
    let dtheta = p.d_theta();
    for (key, c) in w.terms() {
        let s = p.expand(c, prec)?;
        if key.last() != Some(&r) {
            out.add_term(key, s);
            continue;
        }
        let head = &key[..key.len() - 1];
        match p.kind {
            PlaceKind::Infinite => {
                let m = monomial_for(&s, res.from_i64(-1), -2);
                out.add_term(key, s.checked_mul(&m)?);
            }
            PlaceKind::Finite(_) => {
                out.add_term(key, s.clone());
                for (g, dg) in dtheta.terms() {
                    let mut idx = head.to_vec();
                    idx.push(g[0]);
                    if sort_with_sign(&mut idx.clone()).is_some() {
                        out.add_term(&idx, s.scale(dg));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Refined residue `∂_P : Ω^q_{k(t)} → Ω^{q−1}_{k(P)}`.
pub fn refined_residue(w: &DifferentialForm, p: &Place) -> Result<DifferentialForm> {
    if w.degree() == 0 {
        return Ok(DifferentialForm::zero(&p.residue, 0));
    }
    localize(w, p, residue_precision(p))?.residue()
}

/// `∂_P` on de Rham-Witt forms, coordinatewise in ghost coordinates.
pub fn refined_residue_ghost(w: &GhostForm, p: &Place) -> Result<GhostForm> {
    let coords = w.coords().iter().map(|c| refined_residue(c, p)).collect::<Result<Vec<_>>>()?;
    GhostForm::from_coords(w.set(), coords)
}

/// Residue of a local form (classical, `S = {1}`).
pub fn residue_series(w: &LocalForm) -> Result<DifferentialForm> {
    w.residue()
}

/// Local symbol `∂_P(w, f)`, with `gh_s ∂_P(w, f) = Res(gh_s(w)·dlog f)`.
pub fn witt_local_symbol(w: &WittVector, f: &FieldElement, p: &Place) -> Result<WittVector> {
    let k_t = &p.function_field;
    if *w.ring() != WittRing::Field(k_t.clone()) || f.field() != k_t {
        return Err(Error::DescriptorMismatch);
    }
    if k_t.characteristic() != 0 {
        return Err(Error::UnsupportedRing("local symbols need characteristic zero".into()));
    }
    let l = dlog_elem(k_t, f.value())?;
    let g = ghost(w)
        .iter()
        .map(|gs| Ok(refined_residue(&l.scale(gs), p)?.coeff(&[])))
        .collect::<Result<Vec<_>>>()?;
    unghost(&g, w.set(), &WittRing::Field(p.residue.clone()))
}

/// Componentwise value `w(P)` of a `P`-integral Witt vector.
pub fn witt_evaluate(w: &WittVector, p: &Place) -> Result<WittVector> {
    w.map_components(&WittRing::Field(p.residue.clone()), |c| p.evaluate(c))
}

/// Closed form of `Res(V_n([a tʲ]) d V_m([b tⁱ]))`.
pub fn residue_formula_g(
    n: u64,
    m: u64,
    j: i64,
    i: i64,
    a: &FieldElement,
    b: &FieldElement,
    set: &TruncationSet,
) -> Result<WittVector> {
    let k = a.field().clone();
    if *b.field() != k {
        return Err(Error::DescriptorMismatch);
    }
    let ring = WittRing::Field(k.clone());
    if i == 0 || j * m as i64 + i * n as i64 != 0 {
        return Ok(WittVector::zero(set, &ring));
    }
    let g = num_integer::gcd(n, m);
    let l = n * m / g;
    let Ok(src) = set.divided_by(l) else {
        return Ok(WittVector::zero(set, &ring));
    };
    let x = k.mul(&k.pow_u(a.value(), m / g), &k.pow_u(b.value(), n / g));
    let v = verschiebung(l, &teichmuller(&x, &ring, &src), set)?;
    let c = num_integer::gcd(i.unsigned_abs(), j.unsigned_abs()) as i64;
    Ok(v.scale_int(i.signum() * c))
}

/// `Res(V_n([a tʲ]) d V_m([b tⁱ]))` computed with series at `t = 0`.
pub fn residue_formula_g_series(
    n: u64,
    m: u64,
    j: i64,
    i: i64,
    a: &FieldElement,
    b: &FieldElement,
    set: &TruncationSet,
) -> Result<WittVector> {
    use crate::ghost_form::{gform_d, gform_mul, gform_verschiebung};
    let k = a.field().clone();
    let name = fresh_name(&k, "t");
    let k_t = Field::function_field(&k, &[&name])?;
    let t = k_t.named(&name).unwrap();
    let mono = |c: &Elem, e: i64| k_t.mul(&k_t.embed(c, &k).unwrap(), &k_t.pow(&t, e).unwrap());
    let lift = |x: Elem, d: u64| -> Result<GhostForm> {
        match set.divided_by(d) {
            Ok(src) => gform_verschiebung(d, &GhostForm::teichmuller(&x, &k_t, &src)?, set),
            Err(_) => GhostForm::zero(set, &k_t, 0),
        }
    };
    let left = lift(mono(a.value(), j), n)?;
    let right = gform_d(&lift(mono(b.value(), i), m)?)?;
    let w = gform_mul(&left, &right)?;
    let p = Place::finite(&k_t, &[k.zero(), k.one()])?;
    refined_residue_ghost(&w, &p)?.to_witt()
}

fn check_coprime(places: &[Place]) -> Result<Vec<&Place>> {
    let finite: Vec<&Place> = places.iter().filter(|p| !p.is_infinite()).collect();
    for (i, p) in finite.iter().enumerate() {
        let PlaceKind::Finite(pi) = &p.kind else { unreachable!() };
        for q in &finite[i + 1..] {
            let PlaceKind::Finite(qi) = &q.kind else { unreachable!() };
            if poly::degree(&poly::gcd(&p.base, pi, qi)) != Some(0) {
                return Err(Error::InvalidPlace(format!("places {p} and {q} are not coprime")));
            }
        }
    }
    Ok(finite)
}

fn check_covered(finite: &[&Place], p0: &Place, a: &[Elem]) -> Result<()> {
    let covered: usize = finite.iter().map(|p| p.multiplicity(a) as usize * p.degree()).sum();
    if covered + 1 != a.len() {
        return Err(Error::UncoveredPole(p0.base.fmt_poly(a, &p0.var())));
    }
    Ok(())
}

/// Checks that the supplied finite places are distinct and account for
/// every pole of the coefficients of `forms`.
pub fn audit_places(forms: &[&DifferentialForm], places: &[Place]) -> Result<()> {
    let finite = check_coprime(places)?;
    let p0 = places.first().ok_or_else(|| Error::UncoveredPole("no places supplied".into()))?;
    for w in forms {
        for (_, c) in w.terms() {
            check_covered(&finite, p0, p0.parts(c).1)?;
        }
    }
    Ok(())
}

/// Checks that the supplied finite places carry every zero and pole of the
/// given nonzero elements of `k(t)`.
pub fn audit_divisors(elems: &[&Elem], places: &[Place]) -> Result<()> {
    let finite = check_coprime(places)?;
    let p0 = places.first().ok_or_else(|| Error::UncoveredPole("no places supplied".into()))?;
    for f in elems {
        let (n, d) = p0.parts(f);
        if n.is_empty() {
            return Err(Error::ZeroArgument);
        }
        check_covered(&finite, p0, n)?;
        check_covered(&finite, p0, d)?;
    }
    Ok(())
}

/// The uniformizer used for symbol rewriting: `π(t)`, or `1/t` at infinity.
pub fn uniformizer(p: &Place) -> Elem {
    let k_t = &p.function_field;
    let one = [p.base.one()];
    match &p.kind {
        PlaceKind::Finite(pi) => k_t.frac_from_polys(pi, &one).unwrap(),
        PlaceKind::Infinite => k_t.frac_from_polys(&one, &[p.base.zero(), p.base.one()]).unwrap(),
    }
}

/// Supplied places plus infinity (if missing).
pub fn with_infinity(k_t: &Field, places: &[Place]) -> Result<Vec<Place>> {
    let mut all: Vec<Place> = places.to_vec();
    if !all.iter().any(|p| p.is_infinite()) {
        all.push(Place::infinite(k_t)?);
    }
    if all.iter().any(|p| p.function_field != *k_t) {
        return Err(Error::DescriptorMismatch);
    }
    Ok(all)
}

/// `Σ_P Tr_{k(P)/k} ∂_P(ω)` over the supplied places and infinity.
pub fn residue_theorem_check(w: &DifferentialForm, places: &[Place]) -> Result<DifferentialForm> {
    let all = with_infinity(w.field(), places)?;
    audit_places(&[w], &all)?;
    let k = all[0].base.clone();
    let mut acc = DifferentialForm::zero(&k, w.degree().saturating_sub(1));
    for p in &all {
        let r = refined_residue(w, p)?;
        acc = acc.add(&trace_form(&p.residue, &k, &r)?)?;
    }
    Ok(acc)
}

/// Ghost version of [`residue_theorem_check`].
pub fn residue_theorem_check_ghost(w: &GhostForm, places: &[Place]) -> Result<GhostForm> {
    let all = with_infinity(w.field(), places)?;
    let coords: Vec<&DifferentialForm> = w.coords().iter().collect();
    audit_places(&coords, &all)?;
    let k = all[0].base.clone();
    let mut acc = GhostForm::zero(w.set(), &k, w.degree().saturating_sub(1))?;
    for p in &all {
        let r = refined_residue_ghost(w, p)?;
        acc = acc.add(&r.map_coords(|c| trace_form(&p.residue, &k, c))?)?;
    }
    Ok(acc)
}

/// `(∂(pullback along u ↦ u^e), e·∂ω)`.
pub fn ramified_pullback_check(w: &LocalForm, e: i64) -> Result<(DifferentialForm, DifferentialForm)> {
    let lhs = w.ramify(e)?.residue()?;
    let rhs = w.residue()?.scale_int(e);
    Ok((lhs, rhs))
}

/// `(∂ Tr_{k'((u))/k((u))} ω, Tr_{k'/k} ∂ω)`.
pub fn trace_residue_square_check(k: &Field, w: &LocalForm) -> Result<(DifferentialForm, DifferentialForm)> {
    let lhs = w.trace(k)?.residue()?;
    let rhs = trace_form(w.field(), k, &w.residue()?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kaehler::d;

    fn qt() -> Field {
        Field::function_field(&Field::rationals(), &["t"]).unwrap()
    }

    fn lin(k_t: &Field, c: i64) -> Place {
        let k = Field::rationals();
        Place::finite(k_t, &[k.from_i64(-c), k.one()]).unwrap()
    }

    #[test]
    fn expansions() {
        let k_t = qt();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let one = FieldElement::one(&k_t);
        let g = (&one - &t).inv().unwrap();
        let s = local_expand(&g, &lin(&k_t, 0), 5).unwrap();
        for e in 0..5 {
            assert!(s.coefficient(e).unwrap().is_one());
        }
        let s = local_expand(&t, &lin(&k_t, 1), 3).unwrap();
        assert!(s.coefficient(0).unwrap().is_one() && s.coefficient(1).unwrap().is_one());
        let inf = Place::infinite(&k_t).unwrap();
        let s = local_expand(&t, &inf, 3).unwrap();
        assert_eq!(s.order(), -1);
    }

    #[test]
    fn valuations() {
        let k_t = qt();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let one = FieldElement::one(&k_t);
        let f = &(&t * &t) / &(&one - &t);
        assert_eq!(valuation(&f, &lin(&k_t, 0)).unwrap(), 2);
        assert_eq!(valuation(&t, &Place::infinite(&k_t).unwrap()).unwrap(), -1);
        let q2 = &(&t * &t) + &one;
        assert_eq!(valuation(&q2, &Place::from_element(&q2).unwrap()).unwrap(), 1);
    }

    #[test]
    fn residues_of_simple_forms() {
        let k_t = qt();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let one = FieldElement::one(&k_t);
        let w = d(&t).scale((&t * &(&t - &one)).inv().unwrap().value());
        let r0 = refined_residue(&w, &lin(&k_t, 0)).unwrap();
        let r1 = refined_residue(&w, &lin(&k_t, 1)).unwrap();
        let ri = refined_residue(&w, &Place::infinite(&k_t).unwrap()).unwrap();
        let q = Field::rationals();
        assert_eq!(r0.coeff(&[]), q.from_i64(-1));
        assert_eq!(r1.coeff(&[]), q.from_i64(1));
        assert!(ri.is_zero());
        let sum = residue_theorem_check(&w, &[lin(&k_t, 0), lin(&k_t, 1)]).unwrap();
        assert!(sum.is_zero());
        assert!(matches!(residue_theorem_check(&w, &[lin(&k_t, 0)]), Err(Error::UncoveredPole(_))));
    }

    #[test]
    fn degree_two_place() {
        let k_t = qt();
        let t = FieldElement::named(&k_t, "t").unwrap();
        let q2 = &(&t * &t) + &FieldElement::one(&k_t);
        let w = d(&t).scale(q2.inv().unwrap().value());
        let p = Place::from_element(&q2).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(residue_theorem_check(&w, &[p]).unwrap().is_zero());
    }

    #[test]
    fn sign_convention() {
        // over ℚ(x): Res((1/u) dx∧du) = dx
        let k = Field::function_field(&Field::rationals(), &["x"]).unwrap();
        let u_inv = LaurentSeries::monomial(&k, k.one(), -1, 3);
        let w = LocalForm::monomial(u_inv, &[0, 1]);
        assert_eq!(w.residue().unwrap(), DifferentialForm::basis(&k, "x").unwrap());
    }

    #[test]
    fn formula_g_basic() {
        let q = Field::rationals();
        let a = FieldElement::from_i64(&q, 2);
        let b = FieldElement::from_i64(&q, 3);
        let s = TruncationSet::trivial();
        let closed = residue_formula_g(1, 1, -1, 1, &a, &b, &s).unwrap();
        assert_eq!(closed.components(), &[q.from_i64(6)]);
        assert_eq!(residue_formula_g_series(1, 1, -1, 1, &a, &b, &s).unwrap(), closed);
        assert!(residue_formula_g(2, 1, -1, 2, &a, &b, &s).unwrap().is_zero());
        assert!(residue_formula_g(1, 1, -1, 0, &a, &b, &s).unwrap().is_zero());
    }
}
