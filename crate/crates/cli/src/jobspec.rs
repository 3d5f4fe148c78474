//! Job files.
//!
//! One directive per line, `#` starts a comment:
//!
//! ```text
//! seed 42
//! out report.json
//! field K = Q(t)
//! field E = Q[a]/(a^2 - 2)
//! witt S={1,2,3,6} over Q: V_2([5]) * V_3([7])
//! residue over K: d(t)/(t*(t-1)); t; t - 1
//! symbol S={1,2} over E: [a]; a + 1
//! reciprocity over K: t^2 - 1; t + 2; t - 1; t + 1; t + 2
//! cathelineau q=2 over Q: 1/3
//! selftest: c0*
//! ```
//!
//! Field descriptors are `Q`, `F_p`, a declared name, `BASE(v, ...)` for a
//! rational function field and `BASE[g]/(poly)` for a simple algebraic
//! extension. Commands take options `S={...}`, `q=N` and `over DESC` in any
//! order, then `:` and arguments separated by `;`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use somekawa_core::expr::{parse_at, Expr};
use somekawa_core::field::Field;
use somekawa_core::witt::TruncationSet;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid job at {line}:{column}: {message}")]
    Validation { line: usize, column: usize, message: String },
}

impl JobError {
    pub fn location(&self) -> (usize, usize) {
        match self {
            JobError::Parse { line, column, .. } | JobError::Validation { line, column, .. } => (*line, *column),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Witt,
    Residue,
    Symbol,
    Reciprocity,
    Cathelineau,
    Selftest,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Witt => "witt",
            CommandKind::Residue => "residue",
            CommandKind::Symbol => "symbol",
            CommandKind::Reciprocity => "reciprocity",
            CommandKind::Cathelineau => "cathelineau",
            CommandKind::Selftest => "selftest",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "witt" => CommandKind::Witt,
            "residue" => CommandKind::Residue,
            "symbol" => CommandKind::Symbol,
            "reciprocity" => CommandKind::Reciprocity,
            "cathelineau" => CommandKind::Cathelineau,
            "selftest" => CommandKind::Selftest,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Arg {
    pub text: String,
    pub expr: Expr,
    pub column: usize,
}

#[derive(Clone, Debug)]
pub struct Command {
    pub kind: CommandKind,
    pub line: usize,
    pub source: String,
    pub set: TruncationSet,
    pub field: Field,
    pub q: u64,
    pub args: Vec<Arg>,
    /// Glob of check ids, for `selftest`.
    pub pattern: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct JobSpec {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub fields: BTreeMap<String, Field>,
    pub commands: Vec<Command>,
    pub warnings: Vec<String>,
}

impl JobSpec {
    /// A declared field or a builtin descriptor.
    pub fn field(&self, name: &str) -> Option<Field> {
        self.fields.get(name).cloned().or_else(|| parse_field(name, 1, 1, &self.fields).ok())
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> JobError {
    JobError::Parse { line, column, message: message.into() }
}

fn verr(line: usize, column: usize, message: impl Into<String>) -> JobError {
    JobError::Validation { line, column, message: message.into() }
}

fn from_core(e: somekawa_core::Error, line: usize, column: usize) -> JobError {
    match e {
        somekawa_core::Error::Parse { line, column, message } => JobError::Parse { line, column, message },
        other => verr(line, column, other.to_string()),
    }
}

pub fn parse_jobspec(text: &str) -> Result<JobSpec, JobError> {
    let mut job = JobSpec::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap();
        let chars: Vec<char> = content.chars().collect();
        let start = chars.iter().position(|c| !c.is_whitespace());
        let Some(start) = start else { continue };
        let word_end = chars[start..].iter().position(|c| !(c.is_alphanumeric() || *c == '_')).map_or(chars.len(), |p| start + p);
        let word: String = chars[start..word_end].iter().collect();
        let rest: String = chars[word_end..].iter().collect();
        let rest_col = word_end + 1;
        match word.as_str() {
            "seed" => {
                let v = rest.trim();
                let n = v.parse::<u64>().map_err(|_| perr(line, rest_col + lead(&rest), format!("expected an unsigned integer, got `{v}`")))?;
                job.seed = Some(n);
            }
            "out" => {
                let v = rest.trim();
                if v.is_empty() {
                    return Err(perr(line, rest_col, "expected a path"));
                }
                job.out = Some(PathBuf::from(v));
            }
            "field" => parse_field_decl(&mut job, &rest, line, rest_col)?,
            w => match CommandKind::from_name(w) {
                Some(kind) => {
                    let cmd = parse_command(&mut job, kind, content.trim(), &rest, line, rest_col)?;
                    job.commands.push(cmd);
                }
                None => return Err(perr(line, start + 1, format!("unknown directive `{w}`"))),
            },
        }
    }
    Ok(job)
}

/// Number of leading whitespace characters.
fn lead(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn parse_field_decl(job: &mut JobSpec, rest: &str, line: usize, col: usize) -> Result<(), JobError> {
    let Some((name, desc)) = rest.split_once('=') else {
        return Err(perr(line, col, "expected `field NAME = DESCRIPTOR`"));
    };
    let name_t = name.trim();
    if name_t.is_empty() || !name_t.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(perr(line, col + lead(name), format!("invalid field name `{name_t}`")));
    }
    if name_t == "Q" || job.fields.contains_key(name_t) {
        return Err(verr(line, col + lead(name), format!("field `{name_t}` is already defined")));
    }
    let desc_col = col + name.chars().count() + 1;
    let f = parse_field(desc.trim(), line, desc_col + lead(desc), &job.fields)?;
    job.fields.insert(name_t.to_string(), f);
    Ok(())
}

/// Parses a field descriptor starting at `col`.
pub fn parse_field(desc: &str, line: usize, col: usize, fields: &BTreeMap<String, Field>) -> Result<Field, JobError> {
    let chars: Vec<char> = desc.chars().collect();
    let mut i = chars.iter().position(|c| !(c.is_alphanumeric() || *c == '_')).unwrap_or(chars.len());
    let atom: String = chars[..i].iter().collect();
    let mut field = match atom.as_str() {
        "" => return Err(perr(line, col, "expected a field")),
        "Q" => Field::rationals(),
        a if a.starts_with("F_") => {
            let p = a[2..].parse::<u64>().map_err(|_| perr(line, col, format!("invalid prime field `{a}`")))?;
            Field::prime(p).map_err(|e| verr(line, col, e.to_string()))?
        }
        a => fields.get(a).cloned().ok_or_else(|| verr(line, col, format!("unknown field `{a}`")))?,
    };
    while i < chars.len() {
        let at = col + i;
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            '(' => {
                let close = matching(&chars, i).ok_or_else(|| perr(line, at, "unclosed `(`"))?;
                let inner: String = chars[i + 1..close].iter().collect();
                let vars: Vec<&str> = inner.split(',').map(str::trim).collect();
                if vars.iter().any(|v| v.is_empty() || !v.chars().all(char::is_alphanumeric)) {
                    return Err(perr(line, at + 1, format!("invalid variable list `{inner}`")));
                }
                field = Field::function_field(&field, &vars).map_err(|e| verr(line, at, e.to_string()))?;
                i = close + 1;
            }
            '[' => {
                let close = chars[i..].iter().position(|&c| c == ']').map(|p| i + p).ok_or_else(|| perr(line, at, "unclosed `[`"))?;
                let gen: String = chars[i + 1..close].iter().collect::<String>().trim().to_string();
                let mut j = close + 1;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                if chars.get(j) != Some(&'/') {
                    return Err(perr(line, col + j, "expected `/(minimal polynomial)`"));
                }
                j += 1;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                if chars.get(j) != Some(&'(') {
                    return Err(perr(line, col + j, "expected `(`"));
                }
                let pclose = matching(&chars, j).ok_or_else(|| perr(line, col + j, "unclosed `(`"))?;
                let src: String = chars[j + 1..pclose].iter().collect();
                field = algebraic(&field, &gen, &src, line, col + j + 1)?;
                i = pclose + 1;
            }
            c => return Err(perr(line, at, format!("unexpected `{c}` in field descriptor"))),
        }
    }
    Ok(field)
}

fn matching(chars: &[char], open: usize) -> Option<usize> {
    let mut depth = 0;
    for (k, &c) in chars.iter().enumerate().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}

fn algebraic(base: &Field, gen: &str, src: &str, line: usize, col: usize) -> Result<Field, JobError> {
    if gen.is_empty() || !gen.chars().all(char::is_alphanumeric) {
        return Err(perr(line, col, format!("invalid generator `{gen}`")));
    }
    let e = parse_at(src, line, col).map_err(|e| from_core(e, line, col))?;
    let poly_ring = Field::function_field(base, &[gen]).map_err(|e| verr(line, col, e.to_string()))?;
    let v = somekawa_core::expr::eval_elem(&e, &poly_ring, &|_| None).map_err(|e| verr(line, col, e.to_string()))?;
    let (num, den) = poly_ring.frac_parts(&v).unwrap();
    if den.len() != 1 {
        return Err(verr(line, col, format!("`{src}` is not a polynomial in {gen}")));
    }
    Field::algebraic(base, num.to_vec(), gen).map_err(|e| verr(line, col, e.to_string()))
}

fn parse_command(job: &mut JobSpec, kind: CommandKind, source: &str, rest: &str, line: usize, col: usize) -> Result<Command, JobError> {
    let chars: Vec<char> = rest.chars().collect();
    let colon = top_level(&chars, ':');
    let head_end = colon.unwrap_or(chars.len());
    let mut set_elems: Option<(Vec<u64>, usize)> = None;
    let mut q: Option<u64> = None;
    let mut field: Option<Field> = None;
    let mut i = 0;
    while i < head_end {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let at = col + i;
        let tail: String = chars[i..head_end].iter().collect();
        if tail.starts_with("S=") || tail.starts_with("S =") {
            let open = chars[i..head_end].iter().position(|&c| c == '{').map(|p| i + p).ok_or_else(|| perr(line, at, "expected `S={...}`"))?;
            let close = chars[open..head_end].iter().position(|&c| c == '}').map(|p| open + p).ok_or_else(|| perr(line, col + open, "unclosed `{`"))?;
            let inner: String = chars[open + 1..close].iter().collect();
            let elems = inner
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| perr(line, col + open + 1, format!("expected positive integers, got `{inner}`")))?;
            set_elems = Some((elems, at));
            i = close + 1;
        } else if tail.starts_with("q=") {
            let j = chars[i + 2..head_end].iter().position(|c| c.is_whitespace()).map_or(head_end, |p| i + 2 + p);
            let v: String = chars[i + 2..j].iter().collect();
            let n = v.parse::<u64>().map_err(|_| perr(line, at + 2, format!("expected an integer, got `{v}`")))?;
            q = Some(n);
            i = j;
        } else if tail.starts_with("over") && chars.get(i + 4).is_some_and(|c| c.is_whitespace()) {
            let mut j = i + 4;
            while j < head_end && chars[j].is_whitespace() {
                j += 1;
            }
            let mut k = j;
            let mut depth = 0i32;
            while k < head_end && (depth > 0 || !chars[k].is_whitespace()) {
                match chars[k] {
                    '(' | '[' => depth += 1,
                    ')' | ']' => depth -= 1,
                    _ => {}
                }
                k += 1;
            }
            let desc: String = chars[j..k].iter().collect();
            field = Some(parse_field(&desc, line, col + j, &job.fields)?);
            i = k;
        } else {
            return Err(perr(line, at, format!("unexpected `{}`", tail.split_whitespace().next().unwrap_or(""))));
        }
    }

    let set = match set_elems {
        None => TruncationSet::trivial(),
        Some((elems, at)) => {
            let (set, added) = TruncationSet::divisor_closure(&elems).map_err(|e| verr(line, at, e.to_string()))?;
            if !added.is_empty() {
                job.warnings.push(format!("line {line}: S={{{}}} completed to {set}", join(&elems)));
            }
            if !matches!(kind, CommandKind::Witt | CommandKind::Residue | CommandKind::Symbol) {
                job.warnings.push(format!("line {line}: S is ignored by {}", kind.name()));
            }
            set
        }
    };
    if q.is_some() && kind != CommandKind::Cathelineau {
        job.warnings.push(format!("line {line}: q is ignored by {}", kind.name()));
    }
    let q = q.unwrap_or(2);

    // arguments
    let mut raw: Vec<(String, usize)> = Vec::new();
    if let Some(c) = colon {
        let mut startk = c + 1;
        for (k, ch) in chars.iter().enumerate().skip(c + 1).chain(std::iter::once((chars.len(), &';'))) {
            if *ch == ';' {
                let piece: String = chars[startk..k.min(chars.len())].iter().collect();
                raw.push((piece.trim().to_string(), col + startk + lead(&piece)));
                startk = k + 1;
            }
        }
    }
    let mut pattern = None;
    let mut args = Vec::new();
    if kind == CommandKind::Selftest {
        raw.retain(|(p, _)| !p.is_empty());
        match raw.as_slice() {
            [] => {}
            [(p, c)] => {
                glob::Pattern::new(p).map_err(|e| perr(line, *c + e.pos, e.msg))?;
                pattern = Some(p.clone());
            }
            [_, (_, c), ..] => return Err(verr(line, *c, "selftest takes at most one pattern")),
        }
    } else {
        for (text, c) in raw {
            if text.is_empty() {
                return Err(perr(line, c, "empty argument"));
            }
            let expr = parse_at(&text, line, c).map_err(|e| from_core(e, line, c))?;
            args.push(Arg { text, expr, column: c });
        }
    }

    let field = field.unwrap_or_else(Field::rationals);
    let arg_col = |n: usize| args.get(n).map_or(col + chars.len(), |a: &Arg| a.column);
    let need = |n: usize, what: &str| -> Result<(), JobError> {
        if args.len() < n {
            Err(verr(line, arg_col(args.len()), format!("{} needs {what}", kind.name())))
        } else {
            Ok(())
        }
    };
    match kind {
        CommandKind::Witt => {
            need(1, "an expression")?;
            if args.len() > 1 {
                return Err(verr(line, arg_col(1), "witt takes a single expression"));
            }
        }
        CommandKind::Residue => {
            need(1, "a form")?;
            if field.num_generators() == 0 || !matches!(field.kind(), somekawa_core::FieldKind::Function { .. }) {
                return Err(verr(line, col, format!("residue needs a rational function field k(t), got {field}")));
            }
        }
        CommandKind::Symbol => need(1, "a Witt slot")?,
        CommandKind::Reciprocity => {
            need(2, "two functions")?;
            if !matches!(field.kind(), somekawa_core::FieldKind::Function { .. }) {
                return Err(verr(line, col, format!("reciprocity needs a rational function field k(t), got {field}")));
            }
        }
        CommandKind::Cathelineau => {
            need(1, "x")?;
            if q < 2 {
                return Err(verr(line, col, "q must be at least 2"));
            }
            if args.len() != q as usize - 1 {
                return Err(verr(line, arg_col(args.len().min(q as usize - 1)), format!("cathelineau with q={q} takes x and {} more entries", q - 2)));
            }
        }
        CommandKind::Selftest => {}
    }
    Ok(Command { kind, line, source: source.to_string(), set, field, q, args, pattern })
}

/// First occurrence of `c` outside brackets.
fn top_level(chars: &[char], c: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            x if x == c && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn join(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_line() {
        let job = parse_jobspec("witt S={1,2,3,6} over Q: V_2([5]) * V_3([7])").unwrap();
        let c = &job.commands[0];
        assert_eq!(c.kind, CommandKind::Witt);
        assert_eq!(c.set, TruncationSet::new(&[1, 2, 3, 6]).unwrap());
        assert_eq!(c.field, Field::rationals());
        assert_eq!(c.args.len(), 1);
        assert!(job.warnings.is_empty());
    }

    #[test]
    fn completes_truncation_set() {
        let job = parse_jobspec("witt S={2}: [3]").unwrap();
        assert_eq!(job.commands[0].set, TruncationSet::new(&[1, 2]).unwrap());
        assert_eq!(job.warnings.len(), 1);
        assert!(job.warnings[0].contains("{1,2}"));
    }

    #[test]
    fn fields_and_extensions() {
        let job = parse_jobspec("field K = Q(t)\nfield E = Q[a]/(a^2 - 2)\nfield F = F_5[i]/(i^2 - 2)\nresidue over K: d(t)/t; t").unwrap();
        assert_eq!(job.fields.len(), 3);
        assert_eq!(job.fields["E"].degree_over(&Field::rationals()), Some(2));
        assert_eq!(job.fields["F"].characteristic(), 5);
        assert_eq!(job.commands[0].args.len(), 2);
        let nested = parse_field("Q(x)(t)", 1, 1, &BTreeMap::new()).unwrap();
        assert_eq!(nested.num_generators(), 2);
    }

    #[test]
    fn parse_errors_have_locations() {
        assert_eq!(parse_jobspec("witt over Q: 1 + * 2").unwrap_err().location(), (1, 18));
        assert_eq!(parse_jobspec("seed 1\nfrobnicate").unwrap_err().location(), (2, 1));
        assert!(matches!(parse_jobspec("seed x"), Err(JobError::Parse { line: 1, column: 6, .. })));
        assert!(matches!(parse_jobspec("field E = Q[a]/(a^2 - 2*a + 1)"), Err(JobError::Validation { .. })));
        assert!(matches!(parse_jobspec("residue over Q: 1"), Err(JobError::Validation { .. })));
        assert!(matches!(parse_jobspec("witt over K: 1"), Err(JobError::Validation { line: 1, column: 11, .. })));
    }

    #[test]
    fn cathelineau_arity() {
        assert!(parse_jobspec("cathelineau q=2 over Q: 1/3").is_ok());
        assert!(parse_jobspec("cathelineau q=3 over Q: 1/3").is_err());
        assert_eq!(parse_jobspec("cathelineau q=3 over Q: 1/3; 5").unwrap().commands[0].q, 3);
    }

    #[test]
    fn selftest_pattern() {
        let job = parse_jobspec("seed 7\nselftest: c0*").unwrap();
        assert_eq!(job.seed, Some(7));
        assert_eq!(job.commands[0].pattern.as_deref(), Some("c0*"));
    }
}
