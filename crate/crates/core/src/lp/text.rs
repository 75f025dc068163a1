//! Plain-text LP files.
//!
//! ```text
//! # comment
//! var A20 A24 B1
//! minimize 1 + A20 + A24
//! mw0: A20 + A24 = 511
//! cap: 3 A20 - 1/2 A24 >= -23
//! ```
//!
//! Coefficients are exact rationals (`p`, `p/q` or finite decimals). All
//! variables are nonnegative. Constraint labels are optional.

use std::fmt::Write as _;

use super::program::{Direction, LinearExpr, LinearProgram, Sense};
use super::scalar::{format_rational, parse_rational};
use super::simplex::{LpOutcome, Status};
use crate::error::{Error, Result};
use crate::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Num(Rational),
    Ident(String),
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Tok>> {
    let err = |col: usize, msg: String| Error::Parse {
        line,
        column: col + 1,
        message: msg,
    };
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push(Tok::Plus);
            i += 1;
        } else if c == '-' {
            out.push(Tok::Minus);
            i += 1;
        } else if c == '*' {
            out.push(Tok::Star);
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = parse_rational(&text).ok_or_else(|| err(start, format!("bad number {text:?}")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(err(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn parse_expr(lp: &LinearProgram<Rational>, s: &str, line: usize) -> Result<LinearExpr<Rational>> {
    let toks = tokenize(s, line)?;
    let err = |msg: String| Error::Parse {
        line,
        column: 1,
        message: msg,
    };
    let mut e = LinearExpr::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = Rational::one();
        match toks[i] {
            Tok::Plus => i += 1,
            Tok::Minus => {
                sign = -sign;
                i += 1
            }
            _ if first => {}
            _ => return Err(err("expected + or - between terms".into())),
        }
        first = false;
        let mut coeff = sign;
        let mut saw_num = false;
        if let Some(Tok::Num(v)) = toks.get(i) {
            coeff *= v.clone();
            saw_num = true;
            i += 1;
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
            }
        }
        match toks.get(i) {
            Some(Tok::Ident(name)) => {
                let v = lp.var(name).map_err(|_| err(format!("unknown variable {name}")))?;
                e.add_term(v, coeff);
                i += 1;
            }
            _ if saw_num => e.constant += coeff,
            _ => return Err(err("expected a term".into())),
        }
    }
    Ok(e)
}

/// Parses an LP file.
pub fn parse_lp(text: &str) -> Result<LinearProgram<Rational>> {
    let mut lp: Option<LinearProgram<Rational>> = None;
    let mut objective_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line,
            column: 1,
            message: msg,
        };
        if let Some(rest) = body.strip_prefix("var ") {
            if lp.is_some() {
                return Err(err("duplicate var line".into()));
            }
            lp = Some(LinearProgram::new(rest.split_whitespace().map(String::from).collect())?);
            continue;
        }
        let prog = lp.as_mut().ok_or_else(|| err("var line must come first".into()))?;
        let (dir, rest) = if let Some(r) = body.strip_prefix("minimize") {
            (Some(Direction::Minimize), r)
        } else if let Some(r) = body.strip_prefix("maximize") {
            (Some(Direction::Maximize), r)
        } else {
            (None, body)
        };
        if let Some(dir) = dir {
            if objective_seen {
                return Err(err("duplicate objective".into()));
            }
            let e = parse_expr(prog, rest, line)?;
            prog.set_objective(e, dir)?;
            objective_seen = true;
            continue;
        }
        let (label, rest) = match body.split_once(':') {
            Some((l, r)) => (l.trim().to_string(), r),
            None => (format!("c{}", prog.constraints.len()), body),
        };
        let (sense, pos, width) = ["<=", ">=", "="]
            .iter()
            .find_map(|op| rest.find(op).map(|p| (*op, p, op.len())))
            .map(|(op, p, w)| {
                let s = match op {
                    "<=" => Sense::Le,
                    ">=" => Sense::Ge,
                    _ => Sense::Eq,
                };
                (s, p, w)
            })
            .ok_or_else(|| err("constraint needs <=, >= or =".into()))?;
        let lhs = parse_expr(prog, &rest[..pos], line)?;
        let rhs_expr = parse_expr(prog, &rest[pos + width..], line)?;
        if !rhs_expr.terms.is_empty() {
            return Err(err("right-hand side must be a constant".into()));
        }
        prog.add_constraint(label, lhs, sense, rhs_expr.constant)?;
    }
    lp.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing var line".into(),
    })
}

fn write_expr(out: &mut String, lp: &LinearProgram<Rational>, e: &LinearExpr<Rational>) {
    let mut first = true;
    let mut push = |out: &mut String, c: &Rational, name: Option<&str>| {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match name {
            Some(n) if mag.is_one() => out.push_str(n),
            Some(n) => {
                let _ = write!(out, "{} {}", format_rational(&mag), n);
            }
            None => out.push_str(&format_rational(&mag)),
        }
        first = false;
    };
    if !e.constant.is_zero() {
        push(out, &e.constant, None);
    }
    for (v, c) in &e.terms {
        if !c.is_zero() {
            push(out, c, Some(&lp.vars()[*v]));
        }
    }
    if first {
        out.push('0');
    }
}

/// Serialises a program in the format accepted by [`parse_lp`].
pub fn write_lp(lp: &LinearProgram<Rational>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "var {}", lp.vars().join(" "));
    out.push_str(match lp.objective.direction {
        Direction::Minimize => "minimize ",
        Direction::Maximize => "maximize ",
    });
    write_expr(&mut out, lp, &lp.objective.expr);
    out.push('\n');
    for c in &lp.constraints {
        let _ = write!(out, "{}: ", c.label);
        let mut lhs = c.lhs.clone();
        let rhs = c.rhs.clone() - lhs.constant.clone();
        lhs.constant = Rational::zero();
        write_expr(&mut out, lp, &lhs);
        let _ = writeln!(out, " {} {}", c.sense, format_rational(&rhs));
    }
    out
}

/// Human-readable outcome: status, optimum as `p/q`, and the nonzero primal values.
pub fn format_outcome(lp: &LinearProgram<Rational>, out: &LpOutcome<Rational>) -> String {
    let mut s = String::new();
    let status = match out.status {
        Status::Optimal => "optimal",
        Status::Infeasible => "infeasible",
        Status::Unbounded => "unbounded",
    };
    let _ = writeln!(s, "status {status}");
    if let Some(v) = &out.value {
        let _ = writeln!(s, "value {}", format_rational(v));
    }
    if out.status == Status::Optimal {
        for (name, x) in lp.vars().iter().zip(&out.solution) {
            if !x.is_zero() {
                let _ = writeln!(s, "{name} = {}", format_rational(x));
            }
        }
    }
    let _ = writeln!(s, "certificate {}", if out.verify(lp) { "verified" } else { "FAILED" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# toy
var x y
maximize 3 x + 2*y
c1: x + y <= 4
c2: x + 3 y <= 6
x <= 3
";

    #[test]
    fn parse_and_solve() {
        let lp = parse_lp(SAMPLE).unwrap();
        assert_eq!(lp.constraints.len(), 3);
        assert_eq!(lp.constraints[2].label, "c2");
        let out = lp.solve();
        assert_eq!(out.value, Some(Rational::from_integer(11.into())));
        let text = format_outcome(&lp, &out);
        assert!(text.contains("value 11"));
        assert!(text.contains("certificate verified"));
    }

    #[test]
    fn round_trip() {
        let lp = parse_lp("var a b\nminimize 1 - 1/2 a + b\nr: -a + 2/3 b >= -5/7\ns: a = 0.25\n").unwrap();
        let text = write_lp(&lp);
        let again = parse_lp(&text).unwrap();
        assert_eq!(write_lp(&again), text);
        assert_eq!(again.constraints[1].rhs, Rational::new(1.into(), 4.into()));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_lp("minimize x\n").is_err());
        assert!(parse_lp("var x\nx + z <= 1\n").is_err());
        assert!(parse_lp("var x\nx <= y\n").is_err());
        let err = parse_lp("var x\nx ? 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
