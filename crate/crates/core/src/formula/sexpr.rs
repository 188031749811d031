//! S-expression syntax.
//!
//! ```text
//! formula := "false" | "(=" term term ")" | "(neq" term term ")"
//!          | "(and" formula* ")" | "(or" formula+ ")" | "(exists (" var+ ")" formula ")"
//! term    := "(const" enc ")" | "(var" name ")" | "(+" term+ ")" | "(*" term+ ")" | "(-" term ")"
//!          | enc | name
//! ```
//!
//! A bare atom is read as a constant when it decodes in the ring, otherwise as a
//! variable. `(and)` is TRUE. The printer always emits the long forms.

use super::{Formula, Term, VarId};
use crate::error::{Error, Result};
use crate::rings::RingSpec;

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                out.push((start, Tok::Atom(&text[start..i])));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
    ring: &'a RingSpec,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let at = self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end);
        Err(Error::Syntax { pos: at, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok<'a>> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_open(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Open) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected `(`"),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Close) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected `)`"),
        }
    }

    fn head(&mut self) -> Result<&'a str> {
        match self.peek() {
            Some(Tok::Atom(a)) => {
                let a = *a;
                self.pos += 1;
                Ok(a)
            }
            _ => self.err("expected an operator"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Atom("false")) => {
                self.pos += 1;
                return Ok(Formula::falsity());
            }
            Some(Tok::Open) => {}
            None => return self.err("unexpected end of input"),
            _ => return self.err("expected a formula"),
        }
        self.expect_open()?;
        let op_pos = self.pos;
        let f = match self.head()? {
            "=" => Formula::Eq(self.term()?, self.term()?),
            "neq" => Formula::Neq(self.term()?, self.term()?),
            "and" => Formula::And(self.formulas()?),
            "or" => {
                let fs = self.formulas()?;
                if fs.is_empty() {
                    return self.err("`or` needs at least one disjunct; write `false`");
                }
                Formula::Or(fs)
            }
            "exists" => {
                self.expect_open()?;
                let mut vars = Vec::new();
                while let Some(Tok::Atom(a)) = self.peek() {
                    vars.push(VarId::new(*a));
                    self.pos += 1;
                }
                if vars.is_empty() {
                    return self.err("`exists` needs at least one variable");
                }
                self.expect_close()?;
                Formula::Exists(vars, Box::new(self.formula()?))
            }
            other => {
                self.pos = op_pos;
                return self.err(format!("unknown formula operator `{other}`"));
            }
        };
        self.expect_close()?;
        Ok(f)
    }

    fn formulas(&mut self) -> Result<Vec<Formula>> {
        let mut out = Vec::new();
        while !matches!(self.peek(), Some(Tok::Close) | None) {
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        match self.next() {
            Some(Tok::Atom(a)) => self.atom(a),
            Some(Tok::Open) => {
                let op_pos = self.pos;
                let t = match self.head()? {
                    "const" => {
                        let enc = self.atom_text("an element encoding")?;
                        Term::Const(self.ring.decode(enc)?)
                    }
                    "var" => Term::Var(VarId::new(self.atom_text("a variable name")?)),
                    "+" => Term::Sum(self.terms()?),
                    "*" => Term::Prod(self.terms()?),
                    "-" => Term::Neg(Box::new(self.term()?)),
                    other => {
                        self.pos = op_pos;
                        return self.err(format!("unknown term operator `{other}`"));
                    }
                };
                self.expect_close()?;
                Ok(t)
            }
            Some(Tok::Close) => {
                self.pos -= 1;
                self.err("expected a term")
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        while !matches!(self.peek(), Some(Tok::Close) | None) {
            out.push(self.term()?);
        }
        if out.is_empty() {
            return self.err("empty sum or product");
        }
        Ok(out)
    }

    fn atom_text(&mut self, what: &str) -> Result<&'a str> {
        match self.peek() {
            Some(Tok::Atom(a)) => {
                let a = *a;
                self.pos += 1;
                Ok(a)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn atom(&self, a: &str) -> Result<Term> {
        if let Ok(e) = self.ring.decode(a) {
            return Ok(Term::Const(e));
        }
        let first = a.chars().next().unwrap_or('0');
        if first.is_alphabetic() || first == '_' {
            Ok(Term::Var(VarId::new(a)))
        } else {
            Err(Error::EncodingMismatch { ring: self.ring.to_string(), encoding: a.to_string() })
        }
    }
}

pub fn parse_formula(text: &str, ring: &RingSpec) -> Result<Formula> {
    let mut p = Parser { toks: tokenize(text), pos: 0, end: text.len(), ring };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

pub fn parse_term(text: &str, ring: &RingSpec) -> Result<Term> {
    let mut p = Parser { toks: tokenize(text), pos: 0, end: text.len(), ring };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

pub fn print_term(t: &Term, ring: &RingSpec) -> String {
    let mut s = String::new();
    write_term(t, ring, &mut s);
    s
}

fn write_term(t: &Term, ring: &RingSpec, out: &mut String) {
    match t {
        Term::Const(c) => {
            out.push_str("(const ");
            out.push_str(&ring.encode(c));
            out.push(')');
        }
        Term::Var(v) => {
            out.push_str("(var ");
            out.push_str(&v.0);
            out.push(')');
        }
        Term::Sum(ts) | Term::Prod(ts) => {
            out.push_str(if matches!(t, Term::Sum(_)) { "(+" } else { "(*" });
            for x in ts {
                out.push(' ');
                write_term(x, ring, out);
            }
            out.push(')');
        }
        Term::Neg(x) => {
            out.push_str("(- ");
            write_term(x, ring, out);
            out.push(')');
        }
    }
}

pub fn print_formula(f: &Formula, ring: &RingSpec) -> String {
    let mut s = String::new();
    write_formula(f, ring, &mut s);
    s
}

fn write_formula(f: &Formula, ring: &RingSpec, out: &mut String) {
    match f {
        Formula::Or(fs) if fs.is_empty() => out.push_str("false"),
        Formula::Eq(a, b) | Formula::Neq(a, b) => {
            out.push_str(if matches!(f, Formula::Eq(..)) { "(= " } else { "(neq " });
            write_term(a, ring, out);
            out.push(' ');
            write_term(b, ring, out);
            out.push(')');
        }
        Formula::And(fs) | Formula::Or(fs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for g in fs {
                out.push(' ');
                write_formula(g, ring, out);
            }
            out.push(')');
        }
        Formula::Exists(vs, body) => {
            out.push_str("(exists (");
            let names: Vec<&str> = vs.iter().map(|v| v.as_str()).collect();
            out.push_str(&names.join(" "));
            out.push_str(") ");
            write_formula(body, ring, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Elem;

    #[test]
    fn short_and_long_forms() {
        let r = RingSpec::PrimeField(5);
        let short = parse_formula("(exists (x) (= (* t x) 1))", &r).unwrap();
        let long = parse_formula("(exists (x) (= (* (var t) (var x)) (const 1)))", &r).unwrap();
        assert_eq!(short, long);
        assert_eq!(
            long,
            Formula::Exists(
                vec![VarId::new("x")],
                Box::new(Formula::Eq(
                    Term::Prod(vec![Term::var("t"), Term::var("x")]),
                    Term::Const(Elem::Res(1))
                ))
            )
        );
        assert_eq!(parse_formula(&print_formula(&long, &r), &r).unwrap(), long);
    }

    #[test]
    fn false_and_true() {
        let r = RingSpec::Zmod(1);
        assert_eq!(parse_formula("false", &r).unwrap(), Formula::falsity());
        assert_eq!(print_formula(&Formula::falsity(), &r), "false");
        assert_eq!(parse_formula("(and)", &r).unwrap(), Formula::And(vec![]));
    }

    #[test]
    fn errors_carry_positions() {
        let r = RingSpec::Int;
        match parse_formula("(= t", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_formula("(foo t t)", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("(= t t) x", &r), Err(Error::Syntax { pos: 8, .. })));
        assert!(matches!(
            parse_formula("(= (const 7) t)", &RingSpec::Zmod(5)),
            Err(Error::EncodingMismatch { .. })
        ));
    }

    #[test]
    fn composite_constants() {
        let r: RingSpec = "prod(zmod:2,poly:gfp:3:X)".parse().unwrap();
        let f = parse_formula("(= t (const [1,[0,2]]))", &r).unwrap();
        assert_eq!(print_formula(&f, &r), "(= (var t) (const [1,[0,2]]))");
    }
}
