//! Expression syntax: integers, identifiers, `+ - * / ^`, parentheses,
//! Teichmüller brackets `[a]` and calls such as `V_2(...)` or `Tr_{E/F}(...)`.
//!
//! Parsing is independent of any field; [`eval_elem`] interprets an
//! expression inside a given field.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Teich(Box<Expr>),
    /// `name_sub(args…)`, e.g. `V_2(x)` has name `V`, sub `2`.
    Call { name: String, sub: Option<String>, args: Vec<Expr> },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Bin(op, a, b) => {
                let c = match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                };
                write!(f, "({a} {c} {b})")
            }
            Expr::Pow(a, b) => write!(f, "({a})^({b})"),
            Expr::Teich(a) => write!(f, "[{a}]"),
            Expr::Call { name, sub, args } => {
                f.write_str(name)?;
                if let Some(s) = sub {
                    if s.chars().all(|c| c.is_ascii_digit()) {
                        write!(f, "_{s}")?;
                    } else {
                        write!(f, "_{{{s}}}")?;
                    }
                }
                let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String, Option<String>),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Lexer> {
    let chars: Vec<char> = src.chars().collect();
    let err = |i: usize, m: String| Error::Parse { line, column: col0 + i, message: m };
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(s.parse().unwrap()), start));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '\'') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let mut sub = None;
            if i < chars.len() && chars[i] == '_' {
                i += 1;
                if i < chars.len() && chars[i] == '{' {
                    let open = i;
                    while i < chars.len() && chars[i] != '}' {
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(err(open, "unclosed subscript".into()));
                    }
                    sub = Some(chars[open + 1..i].iter().collect::<String>().trim().to_string());
                    i += 1;
                } else {
                    let s0 = i;
                    while i < chars.len() && chars[i].is_alphanumeric() {
                        i += 1;
                    }
                    if s0 == i {
                        return Err(err(s0, "empty subscript".into()));
                    }
                    sub = Some(chars[s0..i].iter().collect());
                }
            }
            toks.push((Tok::Ident(name, sub), start));
        } else if "+-*/^()[],".contains(c) || c == '−' {
            toks.push((Tok::Sym(if c == '−' { '-' } else { c }), i));
            i += 1;
        } else {
            return Err(err(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    col0: usize,
    end: usize,
}

impl Parser {
    fn err(&self, m: impl Into<String>) -> Error {
        let col = self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end);
        Error::Parse { line: self.line, column: self.col0 + col, message: m.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err("unexpected end of expression"));
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Teich(Box::new(e)))
            }
            Tok::Ident(name, sub) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                    return Ok(Expr::Call { name, sub, args });
                }
                Ok(Expr::Var(match sub {
                    Some(s) => format!("{name}_{s}"),
                    None => name,
                }))
            }
            Tok::Sym(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `src`, reporting positions as `(line, col0 + offset)`.
pub fn parse_at(src: &str, line: usize, col0: usize) -> Result<Expr> {
    let lx = lex(src, line, col0)?;
    let end = src.chars().count();
    let mut p = Parser { toks: lx.toks, pos: 0, line, col0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse(src: &str) -> Result<Expr> {
    parse_at(src, 1, 1)
}

/// Integer value of a constant expression such as `-3` or `(2)`.
pub fn as_integer(e: &Expr) -> Option<i64> {
    match e {
        Expr::Int(n) => n.to_i64(),
        Expr::Neg(a) => as_integer(a).map(|n| -n),
        _ => None,
    }
}

/// Parses a subscript `n` into a positive integer.
pub fn sub_index(sub: &Option<String>) -> Result<u64> {
    sub.as_deref()
        .and_then(|s| s.parse::<u64>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Invalid(format!("expected a positive integer subscript, got {sub:?}")))
}

/// Splits `Tr_{E/F}` style subscripts.
pub fn sub_pair(sub: &Option<String>) -> Result<(String, String)> {
    let s = sub.as_deref().unwrap_or("");
    match s.split_once('/') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((a.trim().to_string(), b.trim().to_string()))
        }
        _ => Err(Error::Invalid(format!("expected a subscript E/F, got {s:?}"))),
    }
}

/// Evaluates `e` as an element of `field`. `Tr_{E/F}` and `N_{E/F}` look
/// their fields up through `fields`.
pub fn eval_elem(e: &Expr, field: &Field, fields: &dyn Fn(&str) -> Option<Field>) -> Result<Elem> {
    let rec = |x: &Expr| eval_elem(x, field, fields);
    match e {
        Expr::Int(n) => Ok(field.from_bigint(n)),
        Expr::Var(v) => field.named(v).ok_or_else(|| Error::UnknownVariable(v.clone())),
        Expr::Neg(a) => Ok(field.neg(&rec(a)?)),
        Expr::Bin(op, a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            match op {
                BinOp::Add => Ok(field.add(&x, &y)),
                BinOp::Sub => Ok(field.sub(&x, &y)),
                BinOp::Mul => Ok(field.mul(&x, &y)),
                BinOp::Div => field.div(&x, &y).ok_or(Error::DivisionByZero),
            }
        }
        Expr::Pow(a, b) => {
            let n = as_integer(b).ok_or_else(|| Error::Invalid(format!("exponent {b} is not an integer")))?;
            field.pow(&rec(a)?, n).ok_or(Error::DivisionByZero)
        }
        Expr::Teich(_) => Err(Error::Invalid("Teichmüller brackets need a Witt context".into())),
        Expr::Call { name, sub, args } if (name == "Tr" || name == "N") && args.len() == 1 => {
            let (en, fnm) = sub_pair(sub)?;
            let lookup = |n: &str| fields(n).ok_or_else(|| Error::Invalid(format!("unknown field {n}")));
            let (big, small) = (lookup(&en)?, lookup(&fnm)?);
            let x = eval_elem(&args[0], &big, fields)?;
            let y = if name == "Tr" { big.trace_to(&x, &small)? } else { big.norm_to(&x, &small)? };
            field.embed(&y, &small)
        }
        Expr::Call { name, .. } => Err(Error::Invalid(format!("{name}(…) is not a field operation"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_calls() {
        let e = parse("-x^2 + 3*y/2").unwrap();
        assert_eq!(e.to_string(), "(-((x)^(2)) + ((3 * y) / 2))");
        let c = parse("V_2([5]) * Tr_{E/F}(a)").unwrap();
        let Expr::Bin(BinOp::Mul, l, r) = c else { panic!() };
        assert!(matches!(*l, Expr::Call { ref name, ref sub, .. } if name == "V" && sub.as_deref() == Some("2")));
        assert_eq!(sub_pair(&match *r { Expr::Call { sub, .. } => sub, _ => None }).unwrap(), ("E".into(), "F".into()));
    }

    #[test]
    fn error_location() {
        match parse("1 + * 2") {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(1 + 2"), Err(Error::Parse { column: 7, .. })));
        assert!(matches!(parse("x $ y"), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn evaluate() {
        let k = Field::function_field(&Field::rationals(), &["t"]).unwrap();
        let none = |_: &str| None;
        let v = eval_elem(&parse("(t^2 - 1)/(t + 1)").unwrap(), &k, &none).unwrap();
        assert_eq!(v, eval_elem(&parse("t - 1").unwrap(), &k, &none).unwrap());
        assert_eq!(eval_elem(&parse("1/(t-t)").unwrap(), &k, &none), Err(Error::DivisionByZero));
        assert_eq!(eval_elem(&parse("u").unwrap(), &k, &none), Err(Error::UnknownVariable("u".into())));
    }
}
