//! Generalized (big) Witt vectors `W_S(A)` for finite truncation sets `S`.
//!
//! Ring operations, Frobenius and the trace are transported through the
//! ghost map. Over a field of characteristic zero this is exact division.
//! Over `ℤ` the triangular unghosting must divide exactly. Over finite
//! fields components are lifted to characteristic zero (𝔽_p ↦ ℤ, and each
//! extension `𝔽_p[X]/(f)` to `ℚ[X]/(f̃)` with `f̃` the canonical lift), the
//! computation is done there and the result is reduced; naturality of the
//! Witt functor makes this independent of the lift.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldKind};

/// A finite, nonempty, divisor-closed set of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationSet {
    elems: Vec<u64>,
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|s| format!("{s}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl TruncationSet {
    /// Validates a divisor-closed set (order and duplicates are irrelevant).
    pub fn new(elems: &[u64]) -> Result<Self> {
        let (set, added) = Self::divisor_closure(elems)?;
        if !added.is_empty() {
            return Err(Error::InvalidTruncation(format!("missing divisors {added:?}")));
        }
        Ok(set)
    }

    /// Smallest truncation set containing `elems`, together with the
    /// divisors that had to be added.
    pub fn divisor_closure(elems: &[u64]) -> Result<(Self, Vec<u64>)> {
        if elems.is_empty() {
            return Err(Error::EmptyTruncation);
        }
        if elems.contains(&0) {
            return Err(Error::InvalidTruncation("0 is not a positive integer".into()));
        }
        let mut all: Vec<u64> = Vec::new();
        for &n in elems {
            let mut d = 1;
            while d * d <= n {
                if n % d == 0 {
                    all.push(d);
                    all.push(n / d);
                }
                d += 1;
            }
        }
        all.sort_unstable();
        all.dedup();
        let added = all.iter().copied().filter(|s| !elems.contains(s)).collect();
        Ok((TruncationSet { elems: all }, added))
    }

    /// `{1, …, n}`.
    pub fn range(n: u64) -> Self {
        assert!(n >= 1);
        TruncationSet { elems: (1..=n).collect() }
    }

    /// `{1}`.
    pub fn trivial() -> Self {
        Self::range(1)
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn max(&self) -> u64 {
        *self.elems.last().unwrap()
    }

    pub fn contains(&self, s: u64) -> bool {
        self.elems.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: u64) -> Option<usize> {
        self.elems.binary_search(&s).ok()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elems.iter().all(|&s| other.contains(s))
    }

    /// `S/n = {s : sn ∈ S}`.
    pub fn divided_by(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTruncation("division by 0".into()));
        }
        let elems: Vec<u64> = self.elems.iter().filter(|&&s| s % n == 0).map(|&s| s / n).collect();
        if elems.is_empty() {
            Err(Error::EmptyTruncation)
        } else {
            Ok(TruncationSet { elems })
        }
    }

    /// `S ∩ {1, p, p², …}`.
    pub fn p_part(&self, p: u64) -> Self {
        let elems = self.elems.iter().copied().filter(|&s| is_power_of(s, p)).collect();
        TruncationSet { elems }
    }
}

fn is_power_of(mut s: u64, p: u64) -> bool {
    while s.is_multiple_of(p) {
        s /= p;
    }
    s == 1
}

/// The coefficient ring of a Witt vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittRing {
    /// `ℤ`, with components stored as integral rationals.
    Integers,
    Field(Field),
}

impl fmt::Display for WittRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittRing::Integers => f.write_str("Z"),
            WittRing::Field(k) => write!(f, "{k}"),
        }
    }
}

impl WittRing {
    /// Field whose arithmetic is used for the components.
    pub fn arith_field(&self) -> Field {
        match self {
            WittRing::Integers => Field::rationals(),
            WittRing::Field(f) => f.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            WittRing::Integers => 0,
            WittRing::Field(f) => f.characteristic(),
        }
    }
}

/// Lifting of finite field towers to characteristic zero.
pub mod lift {
    use super::*;

    /// The characteristic zero ring used for computations over `f`.
    pub fn lift_field(f: &Field) -> Result<Field> {
        match f.kind() {
            FieldKind::Prime(_) => Ok(Field::rationals()),
            FieldKind::Algebraic { base, minpoly, generator } => {
                let lb = lift_field(base)?;
                let m = minpoly.iter().map(|c| lift_elem(base, c)).collect::<Result<Vec<_>>>()?;
                Field::algebraic(&lb, m, generator)
            }
            _ => Err(Error::UnsupportedRing(format!(
                "Witt arithmetic in positive characteristic needs a finite field, got {f}"
            ))),
        }
    }

    /// Canonical lift (coefficients in `0..p`).
    pub fn lift_elem(f: &Field, x: &Elem) -> Result<Elem> {
        match (f.kind(), x) {
            (FieldKind::Prime(_), Elem::Mod(m)) => Ok(Elem::Rat(BigRational::from_integer(BigInt::from(*m)))),
            (FieldKind::Algebraic { base, .. }, Elem::Alg(c)) => {
                Ok(Elem::Alg(c.iter().map(|a| lift_elem(base, a)).collect::<Result<Vec<_>>>()?))
            }
            _ => Err(Error::UnsupportedRing(format!("cannot lift elements of {f}"))),
        }
    }

    /// Reduction of a `p`-integral lifted element back to `f`.
    pub fn reduce_elem(f: &Field, x: &Elem) -> Result<Elem> {
        match (f.kind(), x) {
            (FieldKind::Prime(p), Elem::Rat(r)) => {
                let pb = BigInt::from(*p);
                if r.denom().mod_floor(&pb).is_zero() {
                    return Err(Error::NotIntegral { index: 0, divisor: *p });
                }
                let n = f.from_bigint(r.numer());
                let d = f.from_bigint(r.denom());
                Ok(f.div(&n, &d).unwrap())
            }
            (FieldKind::Algebraic { base, .. }, Elem::Alg(c)) => {
                let red = c.iter().map(|a| reduce_elem(base, a)).collect::<Result<Vec<_>>>()?;
                f.alg_from_coeffs(red)
            }
            _ => Err(Error::UnsupportedRing(format!("cannot reduce into {f}"))),
        }
    }
}

/// An element of `W_S(A)`; `comps[i]` is the component at `S[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    set: TruncationSet,
    ring: WittRing,
    comps: Vec<Elem>,
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in W_{}({})", self, self.set, self.ring)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.ring.arith_field();
        let parts: Vec<String> = self.comps.iter().map(|c| k.fmt_elem(c)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Ring operations of [`witt_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Mul,
}

fn ints_ok(ring: &WittRing, comps: &[Elem]) -> bool {
    match ring {
        WittRing::Integers => comps.iter().all(|c| matches!(c, Elem::Rat(r) if r.is_integer())),
        WittRing::Field(f) => comps.iter().all(|c| f.validate(c)),
    }
}

/// Ghost components `gh_s(w) = Σ_{d|s} d·w_d^{s/d}` for `s ∈ S`, computed in `k`.
fn ghost_in(k: &Field, set: &TruncationSet, comps: &[Elem]) -> Vec<Elem> {
    set.elems
        .iter()
        .map(|&s| {
            let mut acc = k.zero();
            for (i, &d) in set.elems.iter().enumerate() {
                if d > s {
                    break;
                }
                if s % d == 0 {
                    let term = k.mul_int(&k.pow_u(&comps[i], s / d), d as i64);
                    acc = k.add(&acc, &term);
                }
            }
            acc
        })
        .collect()
}

/// Triangular inverse of [`ghost_in`] over a field of characteristic zero.
fn unghost_in(k: &Field, set: &TruncationSet, g: &[Elem], integral: bool) -> Result<Vec<Elem>> {
    let mut w: Vec<Elem> = Vec::with_capacity(set.len());
    for (j, &s) in set.elems.iter().enumerate() {
        let mut acc = g[j].clone();
        for (i, &d) in set.elems[..j].iter().enumerate() {
            if s % d == 0 {
                let term = k.mul_int(&k.pow_u(&w[i], s / d), d as i64);
                acc = k.sub(&acc, &term);
            }
        }
        let ws = k.div(&acc, &k.from_i64(s as i64)).expect("characteristic zero");
        if integral && !matches!(&ws, Elem::Rat(r) if r.is_integer()) {
            return Err(Error::NotIntegral { index: s, divisor: s });
        }
        w.push(ws);
    }
    Ok(w)
}

/// Characteristic-zero workspace for a ring: the field to compute in and
/// the maps in and out of it.
struct Work {
    ring: WittRing,
    field: Field,
}

impl Work {
    fn new(ring: &WittRing) -> Result<Self> {
        let field = match ring {
            WittRing::Integers => Field::rationals(),
            WittRing::Field(f) if f.characteristic() == 0 => f.clone(),
            WittRing::Field(f) => lift::lift_field(f)?,
        };
        Ok(Work { ring: ring.clone(), field })
    }

    fn lifted(&self) -> bool {
        self.ring.characteristic() != 0
    }

    fn lift(&self, comps: &[Elem]) -> Result<Vec<Elem>> {
        match &self.ring {
            WittRing::Field(f) if self.lifted() => comps.iter().map(|c| lift::lift_elem(f, c)).collect(),
            _ => Ok(comps.to_vec()),
        }
    }

    fn ghost(&self, w: &WittVector) -> Result<Vec<Elem>> {
        Ok(ghost_in(&self.field, &w.set, &self.lift(&w.comps)?))
    }

    /// Unghosts in the workspace and maps back to the ring.
    fn finish(&self, set: &TruncationSet, g: &[Elem]) -> Result<WittVector> {
        let integral = self.ring == WittRing::Integers;
        let comps = unghost_in(&self.field, set, g, integral)?;
        self.reduce(set, comps)
    }

    fn reduce(&self, set: &TruncationSet, comps: Vec<Elem>) -> Result<WittVector> {
        let comps = match &self.ring {
            WittRing::Field(f) if self.lifted() => comps
                .iter()
                .zip(set.elems.iter())
                .map(|(c, &s)| {
                    lift::reduce_elem(f, c).map_err(|e| match e {
                        Error::NotIntegral { divisor, .. } => Error::NotIntegral { index: s, divisor },
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            _ => comps,
        };
        Ok(WittVector { set: set.clone(), ring: self.ring.clone(), comps })
    }
}

impl WittVector {
    /// Vector with the given components (one per element of `S`, in order).
    pub fn from_components(set: &TruncationSet, ring: &WittRing, comps: Vec<Elem>) -> Result<Self> {
        if comps.len() != set.len() {
            return Err(Error::Invalid(format!(
                "expected {} components, got {}",
                set.len(),
                comps.len()
            )));
        }
        if !ints_ok(ring, &comps) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(WittVector { set: set.clone(), ring: ring.clone(), comps })
    }

    /// Vector over `ℤ` from integer components.
    pub fn from_integers(set: &TruncationSet, comps: &[i64]) -> Result<Self> {
        let k = Field::rationals();
        Self::from_components(set, &WittRing::Integers, comps.iter().map(|&c| k.from_i64(c)).collect())
    }

    pub fn zero(set: &TruncationSet, ring: &WittRing) -> Self {
        let k = ring.arith_field();
        WittVector { set: set.clone(), ring: ring.clone(), comps: vec![k.zero(); set.len()] }
    }

    pub fn one(set: &TruncationSet, ring: &WittRing) -> Self {
        teichmuller(&ring.arith_field().one(), ring, set)
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn ring(&self) -> &WittRing {
        &self.ring
    }

    pub fn components(&self) -> &[Elem] {
        &self.comps
    }

    /// Component at index `s ∈ S`.
    pub fn component(&self, s: u64) -> Option<&Elem> {
        self.set.index_of(s).map(|i| &self.comps[i])
    }

    pub fn is_zero(&self) -> bool {
        let k = self.ring.arith_field();
        self.comps.iter().all(|c| k.is_zero(c))
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::DescriptorMismatch);
        }
        if self.set != o.set {
            return Err(Error::InvalidTruncation(format!("{} differs from {}", self.set, o.set)));
        }
        Ok(())
    }

    fn binary(&self, o: &Self, op: impl Fn(&Field, &Elem, &Elem) -> Elem) -> Result<Self> {
        self.compatible(o)?;
        let work = Work::new(&self.ring)?;
        let ga = work.ghost(self)?;
        let gb = work.ghost(o)?;
        let g: Vec<Elem> = ga.iter().zip(gb.iter()).map(|(x, y)| op(&work.field, x, y)).collect();
        work.finish(&self.set, &g)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.binary(o, |k, x, y| k.add(x, y))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.binary(o, |k, x, y| k.sub(x, y))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.binary(o, |k, x, y| k.mul(x, y))
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }

    /// `n·w`.
    pub fn scale_int(&self, n: i64) -> Self {
        let work = Work::new(&self.ring).expect("vector was constructed over a supported ring");
        let g: Vec<Elem> = work.ghost(self).unwrap().iter().map(|x| work.field.mul_int(x, n)).collect();
        work.finish(&self.set, &g).expect("integer multiples stay integral")
    }

    /// Applies a ring homomorphism componentwise.
    pub fn map_components(&self, ring: &WittRing, g: impl Fn(&Elem) -> Result<Elem>) -> Result<Self> {
        let comps = self.comps.iter().map(g).collect::<Result<Vec<_>>>()?;
        Self::from_components(&self.set, ring, comps)
    }
}

/// Ghost components, computed in the coefficient ring itself.
pub fn ghost(w: &WittVector) -> Vec<Elem> {
    ghost_in(&w.ring.arith_field(), &w.set, &w.comps)
}

/// Inverse of [`ghost`]; `ℤ` requires exact divisions and positive
/// characteristic is refused.
pub fn unghost(g: &[Elem], set: &TruncationSet, ring: &WittRing) -> Result<WittVector> {
    if g.len() != set.len() {
        return Err(Error::Invalid("ghost tuple has the wrong length".into()));
    }
    if ring.characteristic() != 0 {
        return Err(Error::CharacteristicObstruction);
    }
    if !ints_ok(ring, g) {
        return Err(Error::DescriptorMismatch);
    }
    let k = ring.arith_field();
    let comps = unghost_in(&k, set, g, *ring == WittRing::Integers)?;
    Ok(WittVector { set: set.clone(), ring: ring.clone(), comps })
}

pub fn witt_arith(a: &WittVector, b: &WittVector, op: WittOp) -> Result<WittVector> {
    match op {
        WittOp::Add => a.add(b),
        WittOp::Mul => a.mul(b),
    }
}

/// Arithmetic over a finite field done on caller-chosen lifts `la`, `lb`
/// (vectors over the lift ring of `ring`), then reduced.
pub fn witt_arith_lifted(la: &WittVector, lb: &WittVector, op: WittOp, ring: &WittRing) -> Result<WittVector> {
    let work = Work::new(ring)?;
    if !work.lifted() || la.ring != WittRing::Field(work.field.clone()) {
        return Err(Error::DescriptorMismatch);
    }
    let r = witt_arith(la, lb, op)?;
    work.reduce(&r.set, r.comps)
}

/// Teichmüller lift `[a] = (a, 0, 0, …)`.
pub fn teichmuller(a: &Elem, ring: &WittRing, set: &TruncationSet) -> WittVector {
    let k = ring.arith_field();
    let mut comps = vec![k.zero(); set.len()];
    comps[0] = a.clone();
    WittVector { set: set.clone(), ring: ring.clone(), comps }
}

/// `F_n : W_S → W_{S/n}`, determined by `gh_s ∘ F_n = gh_{sn}`.
pub fn frobenius(n: u64, w: &WittVector) -> Result<WittVector> {
    let target = w.set.divided_by(n)?;
    let work = Work::new(&w.ring)?;
    let g = work.ghost(w)?;
    let gt: Vec<Elem> = target.elems.iter().map(|&s| g[w.set.index_of(s * n).unwrap()].clone()).collect();
    work.finish(&target, &gt)
}

/// `V_n : W_{S/n} → W_S`, placing `a_{s/n}` at every multiple `s` of `n`.
pub fn verschiebung(n: u64, w: &WittVector, set: &TruncationSet) -> Result<WittVector> {
    let source = set.divided_by(n)?;
    if source != w.set {
        return Err(Error::InvalidTruncation(format!("V_{n} expects a vector over {source}, got {}", w.set)));
    }
    let k = w.ring.arith_field();
    let comps = set
        .elems
        .iter()
        .map(|&s| if s % n == 0 { w.component(s / n).unwrap().clone() } else { k.zero() })
        .collect();
    Ok(WittVector { set: set.clone(), ring: w.ring.clone(), comps })
}

/// Projection `W_S → W_T` for `T ⊆ S`.
pub fn restrict(w: &WittVector, t: &TruncationSet) -> Result<WittVector> {
    if !t.is_subset_of(&w.set) {
        return Err(Error::NotSubTruncation);
    }
    let comps = t.elems.iter().map(|&s| w.component(s).unwrap().clone()).collect();
    Ok(WittVector { set: t.clone(), ring: w.ring.clone(), comps })
}

/// `w ↦ (F_j(w)|_{P∩S/j})_j` for `j ∈ S` prime to `p`.
pub fn p_typical_decompose(w: &WittVector, p: u64) -> Result<Vec<(u64, WittVector)>> {
    let c = w.ring.characteristic();
    if c != 0 && c != p {
        return Err(Error::UnsupportedRing(format!("p-typical decomposition for p = {p} over {}", w.ring)));
    }
    let mut out = Vec::new();
    for &j in w.set.elems.iter().filter(|&&j| j % p != 0) {
        let fj = frobenius(j, w)?;
        let part = fj.set.p_part(p);
        out.push((j, restrict(&fj, &part)?));
    }
    Ok(out)
}

/// Inverse of [`p_typical_decompose`].
pub fn p_typical_recompose(family: &[(u64, WittVector)], set: &TruncationSet, p: u64) -> Result<WittVector> {
    let first = family.first().ok_or(Error::EmptyTruncation)?;
    let work = Work::new(&first.1.ring)?;
    let mut ghosts: Vec<Option<Elem>> = vec![None; set.len()];
    for (j, comp) in family {
        if comp.ring != first.1.ring {
            return Err(Error::DescriptorMismatch);
        }
        let expected = set.divided_by(*j)?.p_part(p);
        if comp.set != expected {
            return Err(Error::InvalidTruncation(format!("component {j} should live over {expected}")));
        }
        let g = work.ghost(comp)?;
        for (i, &pk) in comp.set.elems.iter().enumerate() {
            ghosts[set.index_of(j * pk).unwrap()] = Some(g[i].clone());
        }
    }
    let g = ghosts
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Invalid("family does not cover the truncation set".into())))
        .collect::<Result<Vec<_>>>()?;
    work.finish(set, &g)
}

/// Trace `W_S(E) → W_S(F)` for a finite extension `E/F` in the tower.
pub fn witt_trace(e: &Field, f: &Field, w: &WittVector) -> Result<WittVector> {
    if w.ring != WittRing::Field(e.clone()) {
        return Err(Error::DescriptorMismatch);
    }
    let deg = e.degree_over(f).ok_or(Error::NotAFiniteExtension)?;
    let target = WittRing::Field(f.clone());
    if e.characteristic() == 0 {
        let g = ghost(w);
        let tg = g.iter().map(|x| e.trace_to(x, f)).collect::<Result<Vec<_>>>()?;
        return unghost(&tg, &w.set, &target);
    }
    let q = f.finite_order().ok_or(Error::NotAFiniteExtension)?;
    let q = q.to_u64().ok_or_else(|| Error::UnsupportedRing("field too large".into()))?;
    let mut conj = w.clone();
    let mut acc = w.clone();
    for _ in 1..deg {
        conj = conj.map_components(&conj.ring.clone(), |c| Ok(e.pow_u(c, q)))?;
        acc = acc.add(&conj)?;
    }
    acc.map_components(&target, |c| e.restrict_to(c, f).ok_or(Error::NotAFiniteExtension))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s12() -> TruncationSet {
        TruncationSet::new(&[1, 2]).unwrap()
    }

    fn q_ring() -> WittRing {
        WittRing::Field(Field::rationals())
    }

    #[test]
    fn truncation_sets() {
        assert!(TruncationSet::new(&[2]).is_err());
        let (s, added) = TruncationSet::divisor_closure(&[6]).unwrap();
        assert_eq!(s.elems(), &[1, 2, 3, 6]);
        assert_eq!(added, vec![1, 2, 3]);
        assert_eq!(s.divided_by(2).unwrap().elems(), &[1, 3]);
        assert_eq!(s.divided_by(4), Err(Error::EmptyTruncation));
        assert_eq!(TruncationSet::range(6).max(), 6);
    }

    #[test]
    fn ghost_examples() {
        let k = Field::rationals();
        let a = k.from_i64(7);
        let s = TruncationSet::range(3);
        let g = ghost(&teichmuller(&a, &q_ring(), &s));
        assert_eq!(g, vec![k.from_i64(7), k.from_i64(49), k.from_i64(343)]);
        let w = WittVector::from_integers(&s12(), &[0, 5]).unwrap();
        assert_eq!(ghost(&w), vec![k.zero(), k.from_i64(10)]);
    }

    #[test]
    fn unghost_over_integers() {
        let k = Field::rationals();
        let w = unghost(&[k.from_i64(2), k.from_i64(2)], &s12(), &WittRing::Integers).unwrap();
        assert_eq!(w, WittVector::from_integers(&s12(), &[2, -1]).unwrap());
        let bad = unghost(&[k.zero(), k.one()], &s12(), &WittRing::Integers);
        assert_eq!(bad, Err(Error::NotIntegral { index: 2, divisor: 2 }));
        let f5 = WittRing::Field(Field::prime(5).unwrap());
        let z = Field::prime(5).unwrap().zero();
        assert_eq!(unghost(&[z.clone(), z], &s12(), &f5), Err(Error::CharacteristicObstruction));
    }

    #[test]
    fn integer_addition() {
        let one = WittVector::from_integers(&s12(), &[1, 0]).unwrap();
        assert_eq!(one.add(&one).unwrap(), WittVector::from_integers(&s12(), &[2, -1]).unwrap());
    }

    #[test]
    fn frobenius_of_verschiebung() {
        let k = Field::rationals();
        let r = q_ring();
        let a = teichmuller(&k.from_i64(3), &r, &TruncationSet::trivial());
        let va = verschiebung(2, &a, &s12()).unwrap();
        assert_eq!(va.components(), &[k.zero(), k.from_i64(3)]);
        let fva = frobenius(2, &va).unwrap();
        assert_eq!(fva, a.scale_int(2));
        let fa = frobenius(2, &teichmuller(&k.from_i64(3), &r, &s12())).unwrap();
        assert_eq!(fa.components(), &[k.from_i64(9)]);
    }

    #[test]
    fn restriction() {
        let k = Field::rationals();
        let a = teichmuller(&k.from_i64(3), &q_ring(), &TruncationSet::trivial());
        let va = verschiebung(2, &a, &s12()).unwrap();
        assert!(restrict(&va, &TruncationSet::trivial()).unwrap().is_zero());
        assert_eq!(restrict(&a, &s12()), Err(Error::NotSubTruncation));
    }

    #[test]
    fn gaussian_trace() {
        let q = Field::rationals();
        let e = Field::algebraic(&q, vec![q.one(), q.zero(), q.one()], "i").unwrap();
        let w = teichmuller(&e.named("i").unwrap(), &WittRing::Field(e.clone()), &s12());
        let t = witt_trace(&e, &q, &w).unwrap();
        assert_eq!(t.components(), &[q.zero(), q.from_i64(-1)]);
    }

    #[test]
    fn finite_field_sum_matches_integer_reduction() {
        let f5 = Field::prime(5).unwrap();
        let r = WittRing::Field(f5.clone());
        let one = WittVector::one(&s12(), &r);
        // (1,0)+(1,0) = (2,-1) over ℤ, reduced mod 5
        assert_eq!(one.add(&one).unwrap().components(), &[f5.from_i64(2), f5.from_i64(4)]);
    }
}
