//! De Rham-Witt forms `W_SΩ^q_F` over a field of characteristic zero, in
//! ghost coordinates: an element is an `S`-tuple of ordinary `q`-forms with
//! `(dω)_s = d(ω_s)/s`, `(F_n ω)_s = ω_{sn}` and `(V_n ω)_s = n·ω_{s/n}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::kaehler::{d_form, dlog_elem, trace_form, wedge, DifferentialForm};
use crate::witt::{ghost, unghost, TruncationSet, WittRing, WittVector};

#[derive(Clone, PartialEq, Eq)]
pub struct GhostForm {
    set: TruncationSet,
    field: Field,
    degree: usize,
    coords: Vec<DifferentialForm>,
}

impl fmt::Debug for GhostForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GhostForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.set.elems().iter().zip(&self.coords).map(|(s, w)| format!("{s}: {w}")).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

fn char_zero(field: &Field) -> Result<()> {
    if field.characteristic() == 0 {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(format!("de Rham-Witt forms over {field} (positive characteristic)")))
    }
}

impl GhostForm {
    pub fn from_coords(set: &TruncationSet, coords: Vec<DifferentialForm>) -> Result<Self> {
        let first = coords.first().ok_or(Error::EmptyTruncation)?;
        if coords.len() != set.len() {
            return Err(Error::Invalid("one coordinate per element of S is required".into()));
        }
        let field = first.field().clone();
        let degree = first.degree();
        char_zero(&field)?;
        if coords.iter().any(|c| *c.field() != field || c.degree() != degree) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(GhostForm { set: set.clone(), field, degree, coords })
    }

    pub fn zero(set: &TruncationSet, field: &Field, degree: usize) -> Result<Self> {
        char_zero(field)?;
        let coords = set.elems().iter().map(|_| DifferentialForm::zero(field, degree)).collect();
        Ok(GhostForm { set: set.clone(), field: field.clone(), degree, coords })
    }

    /// Degree 0 element with the ghost components of `w`.
    pub fn from_witt(w: &WittVector) -> Result<Self> {
        let WittRing::Field(field) = w.ring() else {
            return Err(Error::UnsupportedRing("ghost forms need a field".into()));
        };
        char_zero(field)?;
        let coords = ghost(w).into_iter().map(|g| DifferentialForm::function(field, g)).collect();
        Self::from_coords(w.set(), coords)
    }

    /// Inverse of [`GhostForm::from_witt`] in degree 0.
    pub fn to_witt(&self) -> Result<WittVector> {
        if self.degree != 0 {
            return Err(Error::Invalid("only degree 0 forms are Witt vectors".into()));
        }
        let g: Vec<Elem> = self.coords.iter().map(|c| c.coeff(&[])).collect();
        unghost(&g, &self.set, &WittRing::Field(self.field.clone()))
    }

    /// The Teichmüller lift `[f]`, coordinates `f^s`.
    pub fn teichmuller(f: &Elem, field: &Field, set: &TruncationSet) -> Result<Self> {
        let coords = set
            .elems()
            .iter()
            .map(|&s| DifferentialForm::function(field, field.pow_u(f, s)))
            .collect();
        Self::from_coords(set, coords)
    }

    /// The image of an integer `n`.
    pub fn integer(n: i64, field: &Field, set: &TruncationSet) -> Result<Self> {
        let coords = set.elems().iter().map(|_| DifferentialForm::function(field, field.from_i64(n))).collect();
        Self::from_coords(set, coords)
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[DifferentialForm] {
        &self.coords
    }

    /// Coordinate `Gh_s`.
    pub fn coord(&self, s: u64) -> Option<&DifferentialForm> {
        self.set.index_of(s).map(|i| &self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::DescriptorMismatch);
        }
        if self.set != o.set {
            return Err(Error::InvalidTruncation(format!("{} differs from {}", self.set, o.set)));
        }
        Ok(())
    }

    fn zip(&self, o: &Self, g: impl Fn(&DifferentialForm, &DifferentialForm) -> Result<DifferentialForm>) -> Result<Self> {
        self.same_shape(o)?;
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| g(a, b)).collect::<Result<Vec<_>>>()?;
        Self::from_coords(&self.set, coords)
    }

    fn map(&self, g: impl Fn(u64, &DifferentialForm) -> Result<DifferentialForm>) -> Result<Self> {
        let coords = self
            .set
            .elems()
            .iter()
            .zip(&self.coords)
            .map(|(&s, a)| g(s, a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(&self.set, coords)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|_, a| Ok(a.neg())).unwrap()
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.map(|_, a| Ok(a.scale_int(n))).unwrap()
    }

    /// Coordinatewise map into another field, e.g. a trace.
    pub fn map_coords(&self, g: impl Fn(&DifferentialForm) -> Result<DifferentialForm>) -> Result<Self> {
        self.map(|_, a| g(a))
    }
}

/// Product: coordinatewise wedge.
pub fn gform_mul(a: &GhostForm, b: &GhostForm) -> Result<GhostForm> {
    a.zip(b, wedge)
}

/// Exterior derivative, `(dω)_s = d(ω_s)/s`.
pub fn gform_d(a: &GhostForm) -> Result<GhostForm> {
    let f = a.field.clone();
    a.map(|s, w| {
        let inv = f.inv(&f.from_i64(s as i64)).unwrap();
        Ok(d_form(w).scale(&inv))
    })
}

/// `F_n : W_SΩ → W_{S/n}Ω`.
pub fn gform_frobenius(n: u64, a: &GhostForm) -> Result<GhostForm> {
    let target = a.set.divided_by(n)?;
    let coords = target.elems().iter().map(|&s| a.coord(s * n).unwrap().clone()).collect();
    GhostForm::from_coords(&target, coords)
}

/// `V_n : W_{S/n}Ω → W_SΩ`.
pub fn gform_verschiebung(n: u64, a: &GhostForm, set: &TruncationSet) -> Result<GhostForm> {
    let source = set.divided_by(n)?;
    if source != a.set {
        return Err(Error::InvalidTruncation(format!("V_{n} expects a form over {source}, got {}", a.set)));
    }
    let coords = set
        .elems()
        .iter()
        .map(|&s| {
            if s % n == 0 {
                a.coord(s / n).unwrap().scale_int(n as i64)
            } else {
                DifferentialForm::zero(&a.field, a.degree)
            }
        })
        .collect();
    GhostForm::from_coords(set, coords)
}

/// Restriction to `T ⊆ S`.
pub fn gform_restrict(a: &GhostForm, t: &TruncationSet) -> Result<GhostForm> {
    if !t.is_subset_of(&a.set) {
        return Err(Error::NotSubTruncation);
    }
    let coords = t.elems().iter().map(|&s| a.coord(s).unwrap().clone()).collect();
    GhostForm::from_coords(t, coords)
}

/// `dlog[f]`: every coordinate is `dlog f`.
pub fn gform_dlog_teich(f: &Elem, field: &Field, set: &TruncationSet) -> Result<GhostForm> {
    let l = dlog_elem(field, f)?;
    GhostForm::from_coords(set, set.elems().iter().map(|_| l.clone()).collect())
}

/// `dlog[x₁]⋯dlog[x_q]`; the empty product is `[1]`.
pub fn gform_dlog_symbol(entries: &[Elem], field: &Field, set: &TruncationSet) -> Result<GhostForm> {
    let mut acc = GhostForm::integer(1, field, set)?;
    for x in entries {
        acc = gform_mul(&acc, &gform_dlog_teich(x, field, set)?)?;
    }
    Ok(acc)
}

/// Coordinatewise trace of forms for a finite extension `E/F`.
pub fn gform_trace(e: &Field, f: &Field, a: &GhostForm) -> Result<GhostForm> {
    if a.field != *e {
        return Err(Error::DescriptorMismatch);
    }
    a.map_coords(|w| trace_form(e, f, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kaehler::d_elem;

    fn qx() -> Field {
        Field::function_field(&Field::rationals(), &["x"]).unwrap()
    }

    #[test]
    fn d_of_teichmuller() {
        let k = qx();
        let x = k.named("x").unwrap();
        let s = TruncationSet::range(3);
        let t = GhostForm::teichmuller(&x, &k, &s).unwrap();
        let dt = gform_d(&t).unwrap();
        for &n in s.elems() {
            let expect = d_elem(&k, &x).scale(&k.pow_u(&x, n - 1));
            assert_eq!(dt.coord(n).unwrap(), &expect);
        }
        assert!(gform_d(&dt).unwrap().is_zero());
        let t2 = GhostForm::teichmuller(&x, &k, &TruncationSet::range(2)).unwrap();
        let f2 = gform_frobenius(2, &gform_d(&t2).unwrap()).unwrap();
        assert_eq!(f2.coord(1).unwrap(), &d_elem(&k, &x).scale(&x));
    }

    #[test]
    fn frobenius_after_verschiebung() {
        let k = qx();
        let x = k.named("x").unwrap();
        let s = TruncationSet::range(2);
        let a = gform_dlog_teich(&x, &k, &TruncationSet::trivial()).unwrap();
        let fv = gform_frobenius(2, &gform_verschiebung(2, &a, &s).unwrap()).unwrap();
        assert_eq!(fv, a.scale_int(2));
    }

    #[test]
    fn degree_zero_round_trip() {
        let q = Field::rationals();
        let s = TruncationSet::new(&[1, 2, 3, 6]).unwrap();
        let r = WittRing::Field(q.clone());
        let w = WittVector::from_components(&s, &r, [3, -1, 5, 7].iter().map(|&c| q.from_i64(c)).collect()).unwrap();
        assert_eq!(GhostForm::from_witt(&w).unwrap().to_witt().unwrap(), w);
    }

    #[test]
    fn constants_have_no_dlog() {
        let k = qx();
        let s = TruncationSet::range(2);
        assert!(gform_dlog_teich(&k.from_i64(7), &k, &s).unwrap().is_zero());
        assert_eq!(gform_dlog_teich(&k.zero(), &k, &s), Err(Error::ZeroArgument));
        assert!(GhostForm::zero(&s, &Field::prime(5).unwrap(), 0).is_err());
    }
}
