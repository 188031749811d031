//! Infix polynomial syntax for the command line: `X^2-8`, `2x*y + 3(x-1)`.
//!
//! Juxtaposition multiplies. Exponents are nonnegative integer literals.
//! Input starting with `(` that parses as an s-expression term is taken as one.

use num_bigint::BigInt;
use ringdef::formula::{parse_term, Term};
use ringdef::{Error, Result, RingSpec};

pub fn parse_poly(text: &str, ring: &RingSpec) -> Result<Term> {
    if text.trim_start().starts_with('(') {
        if let Ok(t) = parse_term(text, ring) {
            return Ok(t);
        }
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingSpec,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Term> {
        let mut parts = vec![self.product()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    parts.push(self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    parts.push(Term::neg(self.product()?));
                }
                _ => break,
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Term::Sum(parts) })
    }

    fn product(&mut self) -> Result<Term> {
        let mut factors = vec![self.unary()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.unary()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => factors.push(self.power()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Term::Prod(factors) })
    }

    fn unary(&mut self) -> Result<Term> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Term::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Term> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let digits = self.take(|c| c.is_ascii_digit());
        let e: usize = digits.parse().map_err(|_| self.err("expected exponent"))?;
        Ok(match e {
            0 => Term::Const(self.ring.one()),
            1 => base,
            _ => Term::Prod(vec![base; e]),
        })
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take(|c| c.is_ascii_digit());
                let v: BigInt = digits.parse().map_err(|_| self.err("bad number"))?;
                Ok(Term::Const(self.ring.from_int(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.take(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'');
                Ok(Term::var(&name))
            }
            _ => Err(self.err("expected a number, a variable or `(`")),
        }
    }

    fn take(&mut self, ok: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&c| ok(c)) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringdef::formula::VarId;
    use ringdef::verifier::{eval_term, Assignment};
    use ringdef::Elem;

    fn at(text: &str, x: i64) -> Elem {
        let r = RingSpec::Int;
        let t = parse_poly(text, &r).unwrap();
        eval_term(&t, &r, &Assignment::from([(VarId::new("X"), Elem::int(x))])).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(at("X^2-8", 3), Elem::int(1));
        assert_eq!(at("-X^2", 3), Elem::int(-9));
        assert_eq!(at("2X(X-1)", 4), Elem::int(24));
        assert_eq!(at("1 - 2 - 3", 0), Elem::int(-4));
        assert_eq!(at("(+ (* X X) -8)", 3), Elem::int(1));
        assert_eq!(at("X^0", 5), Elem::int(1));
    }

    #[test]
    fn errors() {
        for bad in ["", "X^", "(X", "X+*2", "X)"] {
            assert!(parse_poly(bad, &RingSpec::Int).is_err(), "{bad}");
        }
    }
}
