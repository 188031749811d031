//! Mathematical notation, e.g. `∃x,y,w: tw=(1+2x)(1+3y)`.

use super::{Formula, Term};
use crate::rings::RingSpec;

pub fn pretty(f: &Formula, ring: &RingSpec) -> String {
    match f {
        Formula::Or(fs) if fs.is_empty() => "FALSE".into(),
        Formula::And(fs) if fs.is_empty() => "TRUE".into(),
        Formula::Eq(a, b) => format!("{}={}", term(a, ring), term(b, ring)),
        Formula::Neq(a, b) => format!("{}≠{}", term(a, ring), term(b, ring)),
        Formula::And(fs) => fs.iter().map(|g| wrap(g, ring)).collect::<Vec<_>>().join(" ∧ "),
        Formula::Or(fs) => fs.iter().map(|g| wrap(g, ring)).collect::<Vec<_>>().join(" ∨ "),
        Formula::Exists(vs, body) => {
            let names: Vec<&str> = vs.iter().map(|v| v.as_str()).collect();
            format!("∃{}: {}", names.join(","), pretty(body, ring))
        }
    }
}

fn wrap(f: &Formula, ring: &RingSpec) -> String {
    match f {
        Formula::Eq(..) | Formula::Neq(..) => pretty(f, ring),
        Formula::And(fs) | Formula::Or(fs) if fs.is_empty() => pretty(f, ring),
        _ => format!("({})", pretty(f, ring)),
    }
}

fn constant(c: &crate::rings::Elem, ring: &RingSpec) -> String {
    let s = ring.encode(c);
    match ring {
        RingSpec::Poly { var, .. } => poly_text(&s, var),
        _ => s,
    }
}

fn poly_text(enc: &str, var: &str) -> String {
    if enc == "0" {
        return "0".into();
    }
    let parts: Vec<String> = enc
        .split(',')
        .enumerate()
        .filter(|(_, c)| *c != "0")
        .map(|(i, c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, "1") => var.to_string(),
            (1, c) => format!("{c}{var}"),
            (i, "1") => format!("{var}^{i}"),
            (i, c) => format!("{c}{var}^{i}"),
        })
        .collect();
    parts.join("+")
}

fn is_atomic_text(s: &str) -> bool {
    !s.contains(['+', '-', ',', '·']) || s.starts_with('[')
}

fn term(t: &Term, ring: &RingSpec) -> String {
    match t {
        Term::Const(c) => constant(c, ring),
        Term::Var(v) => v.0.clone(),
        Term::Neg(x) => format!("-{}", factor(x, ring)),
        Term::Sum(ts) => {
            let mut out = String::new();
            for (i, x) in ts.iter().enumerate() {
                let s = term(x, ring);
                if i > 0 && !s.starts_with('-') {
                    out.push('+');
                }
                out.push_str(&s);
            }
            out
        }
        Term::Prod(ts) => {
            let mut out = String::new();
            let mut prev_multichar_var = false;
            for (i, x) in ts.iter().enumerate() {
                let s = factor(x, ring);
                if i > 0 {
                    let single_letter = matches!(x, Term::Var(v) if v.0.chars().count() == 1);
                    let juxtapose = s.starts_with('(') || (single_letter && !prev_multichar_var);
                    if !juxtapose {
                        out.push('·');
                    }
                }
                prev_multichar_var = matches!(x, Term::Var(v) if v.0.chars().count() > 1);
                out.push_str(&s);
            }
            out
        }
    }
}

fn factor(t: &Term, ring: &RingSpec) -> String {
    let s = term(t, ring);
    match t {
        Term::Sum(_) => format!("({s})"),
        Term::Const(_) if !is_atomic_text(&s) => format!("({s})"),
        _ => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::VarId;
    use crate::rings::Elem;

    #[test]
    fn classic_shape() {
        let c = |v: i64| Term::Const(Elem::int(v));
        let f = Formula::exists(
            vec![VarId::new("x"), VarId::new("y"), VarId::new("w")],
            Formula::eq(
                Term::prod(vec![Term::var("t"), Term::var("w")]),
                Term::prod(vec![
                    Term::sum(vec![c(1), Term::prod(vec![c(2), Term::var("x")])]),
                    Term::sum(vec![c(1), Term::prod(vec![c(3), Term::var("y")])]),
                ]),
            ),
        );
        assert_eq!(pretty(&f, &RingSpec::Int), "∃x,y,w: tw=(1+2x)(1+3y)");
        assert_eq!(pretty(&Formula::falsity(), &RingSpec::Int), "FALSE");
    }

    #[test]
    fn polynomial_constants() {
        let r: RingSpec = "poly:gfp:5:X".parse().unwrap();
        let f = Formula::eq(Term::var("t"), Term::Const(r.decode("4,1").unwrap()));
        assert_eq!(pretty(&f, &r), "t=4+X");
        let g = Formula::eq(
            Term::prod(vec![Term::Const(r.decode("4,1").unwrap()), Term::var("x1")]),
            Term::var("t"),
        );
        assert_eq!(pretty(&g, &r), "(4+X)·x1=t");
    }
}
