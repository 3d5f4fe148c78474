//! Witt vector and de Rham-Witt form expressions.
//!
//! Both evaluators share one convention for plain field expressions: an
//! integer literal `n` is the integer `n` of the Witt ring, any other field
//! expression `e` is the Teichmüller lift `[e]`. So `2` is `1 + 1`, while
//! `t` and `[t]` agree. Calls:
//!
//! * `V_n(w)` is evaluated over `S/n` and lands in `S` (zero if `n ∤ s` for
//!   all `s ∈ S`); `F_n(w)` is evaluated over the closure of `nS` and then
//!   restricted to `S`.
//! * `Tr_{E/F}(w)` evaluates `w` over `E` and traces to `F`. On a plain
//!   argument it is the field trace, lifted afterwards.
//! * forms only: `d(w)`, `dlog(e)` for a field expression `e`, `wedge(a, b)`;
//!   `/` divides by a 0-form with invertible ghost coordinates.

use somekawa_core::expr::{as_integer, eval_elem, sub_index, sub_pair, BinOp, Expr};
use somekawa_core::field::{Elem, Field};
use somekawa_core::ghost_form::{
    gform_d, gform_dlog_teich, gform_frobenius, gform_mul, gform_restrict, gform_trace, gform_verschiebung, GhostForm,
};
use somekawa_core::kaehler::DifferentialForm;
use somekawa_core::witt::{frobenius, restrict, teichmuller, verschiebung, witt_trace, TruncationSet, WittRing, WittVector};
use somekawa_core::{Error, Result};

/// Resolves field names in `Tr_{E/F}`.
pub type Fields<'a> = &'a dyn Fn(&str) -> Option<Field>;

/// True when `e` contains no Witt or form constructs. `Tr_{E/F}(a)` with a
/// plain `a` is the field trace, so it lifts as `[Tr(a)]`; write
/// `Tr_{E/F}([a])` for the trace on Witt vectors.
pub fn is_plain(e: &Expr) -> bool {
    match e {
        Expr::Int(_) | Expr::Var(_) => true,
        Expr::Neg(a) => is_plain(a),
        Expr::Bin(_, a, b) | Expr::Pow(a, b) => is_plain(a) && is_plain(b),
        Expr::Teich(_) => false,
        Expr::Call { name, args, .. } => (name == "N" || name == "Tr") && args.iter().all(is_plain),
    }
}

fn lookup(fields: Fields, name: &str) -> Result<Field> {
    fields(name).ok_or_else(|| Error::Invalid(format!("unknown field {name}")))
}

fn exponent(b: &Expr) -> Result<i64> {
    as_integer(b).ok_or_else(|| Error::Invalid(format!("exponent {b} is not an integer")))
}

/// Smallest truncation set containing `nS`.
fn multiplied(set: &TruncationSet, n: u64) -> Result<TruncationSet> {
    let scaled: Vec<u64> = set.elems().iter().map(|s| s * n).collect();
    Ok(TruncationSet::divisor_closure(&scaled)?.0)
}

pub fn eval_witt(e: &Expr, k: &Field, set: &TruncationSet, fields: Fields) -> Result<WittVector> {
    let ring = WittRing::Field(k.clone());
    if is_plain(e) {
        if let Some(n) = as_integer(e) {
            return Ok(WittVector::one(set, &ring).scale_int(n));
        }
        return Ok(teichmuller(&eval_elem(e, k, fields)?, &ring, set));
    }
    let rec = |x: &Expr| eval_witt(x, k, set, fields);
    match e {
        Expr::Teich(a) => Ok(teichmuller(&eval_elem(a, k, fields)?, &ring, set)),
        Expr::Neg(a) => Ok(rec(a)?.neg()),
        Expr::Bin(op, a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(&y),
                BinOp::Div => Err(Error::Invalid("division is not defined for Witt vectors here".into())),
            }
        }
        Expr::Pow(a, b) => {
            let n = exponent(b)?;
            if n < 0 {
                return Err(Error::Invalid("negative powers of Witt vectors".into()));
            }
            let x = rec(a)?;
            (0..n).try_fold(WittVector::one(set, &ring), |acc, _| acc.mul(&x))
        }
        Expr::Call { name, sub, args } if args.len() == 1 => match name.as_str() {
            "V" => {
                let n = sub_index(sub)?;
                match set.divided_by(n) {
                    Ok(src) => verschiebung(n, &eval_witt(&args[0], k, &src, fields)?, set),
                    Err(Error::EmptyTruncation) => Ok(WittVector::zero(set, &ring)),
                    Err(e) => Err(e),
                }
            }
            "F" => {
                let n = sub_index(sub)?;
                let big = multiplied(set, n)?;
                restrict(&frobenius(n, &eval_witt(&args[0], k, &big, fields)?)?, set)
            }
            "Tr" => {
                let (en, fnm) = sub_pair(sub)?;
                let (big, small) = (lookup(fields, &en)?, lookup(fields, &fnm)?);
                let w = witt_trace(&big, &small, &eval_witt(&args[0], &big, set, fields)?)?;
                let comps = w.components().iter().map(|c| k.embed(c, &small)).collect::<Result<Vec<_>>>()?;
                WittVector::from_components(set, &ring, comps)
            }
            other => Err(Error::Invalid(format!("{other}(…) is not a Witt vector operation"))),
        },
        Expr::Call { name, .. } => Err(Error::Invalid(format!("{name}(…) takes one argument"))),
        Expr::Int(_) | Expr::Var(_) => unreachable!("plain expressions handled above"),
    }
}

/// Coordinatewise inverse of a 0-form.
fn invert(a: &GhostForm) -> Result<GhostForm> {
    if a.degree() != 0 {
        return Err(Error::Invalid("only 0-forms can be inverted".into()));
    }
    let k = a.field().clone();
    let coords = a
        .coords()
        .iter()
        .map(|c| {
            let x = k.inv(&c.coeff(&[])).ok_or(Error::DivisionByZero)?;
            Ok(DifferentialForm::function(&k, x))
        })
        .collect::<Result<Vec<_>>>()?;
    GhostForm::from_coords(a.set(), coords)
}

/// Evaluates a form in ghost coordinates over a field of characteristic zero.
pub fn eval_form(e: &Expr, k: &Field, set: &TruncationSet, fields: Fields) -> Result<GhostForm> {
    if k.characteristic() != 0 {
        return Err(Error::UnsupportedRing(format!("forms are computed in ghost coordinates and need characteristic 0, got {k}")));
    }
    let plain = |x: &Expr| -> Result<Elem> { eval_elem(x, k, fields) };
    if is_plain(e) {
        if let Some(n) = as_integer(e) {
            return GhostForm::integer(n, k, set);
        }
        return GhostForm::teichmuller(&plain(e)?, k, set);
    }
    let rec = |x: &Expr| eval_form(x, k, set, fields);
    match e {
        Expr::Teich(a) => GhostForm::teichmuller(&plain(a)?, k, set),
        Expr::Neg(a) => Ok(rec(a)?.neg()),
        Expr::Bin(op, a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => gform_mul(&x, &y),
                BinOp::Div => gform_mul(&x, &invert(&y)?),
            }
        }
        Expr::Pow(a, b) => {
            let n = exponent(b)?;
            let x = rec(a)?;
            let x = if n < 0 { invert(&x)? } else { x };
            (0..n.unsigned_abs()).try_fold(GhostForm::integer(1, k, set)?, |acc, _| gform_mul(&acc, &x))
        }
        Expr::Call { name, sub, args } => match (name.as_str(), args.as_slice()) {
            ("d", [a]) => gform_d(&rec(a)?),
            ("dlog", [a]) => {
                let inner = match a {
                    Expr::Teich(x) => x.as_ref(),
                    x if is_plain(x) => x,
                    _ => return Err(Error::Invalid("dlog takes a field element or a Teichmüller lift".into())),
                };
                gform_dlog_teich(&plain(inner)?, k, set)
            }
            ("wedge", [a, b]) => gform_mul(&rec(a)?, &rec(b)?),
            ("V", [a]) => {
                let n = sub_index(sub)?;
                match set.divided_by(n) {
                    Ok(src) => gform_verschiebung(n, &eval_form(a, k, &src, fields)?, set),
                    Err(Error::EmptyTruncation) => {
                        let x = eval_form(a, k, &TruncationSet::trivial(), fields)?;
                        GhostForm::zero(set, k, x.degree())
                    }
                    Err(e) => Err(e),
                }
            }
            ("F", [a]) => {
                let n = sub_index(sub)?;
                let big = multiplied(set, n)?;
                gform_restrict(&gform_frobenius(n, &eval_form(a, k, &big, fields)?)?, set)
            }
            ("Tr", [a]) => {
                let (en, fnm) = sub_pair(sub)?;
                let (big, small) = (lookup(fields, &en)?, lookup(fields, &fnm)?);
                if small != *k {
                    return Err(Error::Invalid(format!("Tr_{{{en}/{fnm}}} must land in {k}")));
                }
                gform_trace(&big, &small, &eval_form(a, &big, set, fields)?)
            }
            (other, _) => Err(Error::Invalid(format!("{other}(…) is not a form operation with {} arguments", args.len()))),
        },
        Expr::Int(_) | Expr::Var(_) => unreachable!("plain expressions handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use somekawa_core::expr::parse;
    use somekawa_core::witt::ghost;

    fn none(_: &str) -> Option<Field> {
        None
    }

    #[test]
    fn verschiebung_product() {
        let q = Field::rationals();
        let set = TruncationSet::new(&[1, 2, 3, 6]).unwrap();
        let w = eval_witt(&parse("V_2([5]) * V_3([7])").unwrap(), &q, &set, &none).unwrap();
        // V_2[5]·V_3[7] = V_6([5^3·7^2]), ghost (0, 0, 0, 6·5^3·7^2)
        let g = ghost(&w);
        assert_eq!(g[3], q.from_i64(6 * 125 * 49));
        assert!(g[..3].iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn integers_and_teichmuller() {
        let q = Field::rationals();
        let set = TruncationSet::new(&[1, 2]).unwrap();
        let two = eval_witt(&parse("2").unwrap(), &q, &set, &none).unwrap();
        assert_eq!(ghost(&two), vec![q.from_i64(2), q.from_i64(2)]);
        let t2 = eval_witt(&parse("[2]").unwrap(), &q, &set, &none).unwrap();
        assert_eq!(ghost(&t2), vec![q.from_i64(2), q.from_i64(4)]);
        assert_eq!(eval_witt(&parse("F_2(V_2([3]))").unwrap(), &q, &set, &none).unwrap(), eval_witt(&parse("2*[3]").unwrap(), &q, &set, &none).unwrap());
    }

    #[test]
    fn forms() {
        let k = Field::function_field(&Field::rationals(), &["t"]).unwrap();
        let set = TruncationSet::trivial();
        let w = eval_form(&parse("d(t)/(t*(t-1))").unwrap(), &k, &set, &none).unwrap();
        assert_eq!(w.degree(), 1);
        let v = eval_form(&parse("dlog(t) - dlog(t-1) + d(t)/(t*(t-1))").unwrap(), &k, &set, &none).unwrap();
        // d log(t/(t−1)) = −dt/(t(t−1))
        assert!(v.is_zero());
        assert!(eval_form(&parse("dlog(d(t))").unwrap(), &k, &set, &none).is_err());
    }
}
