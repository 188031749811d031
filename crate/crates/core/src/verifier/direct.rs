//! Direct evaluation by full quantifier expansion. Independent of the search
//! engine; used as a cross-check and for witness re-checking.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Formula, Term, VarId};
use crate::rings::{Elem, RingSpec};

pub type Assignment = BTreeMap<VarId, Elem>;

pub fn eval_term(t: &Term, ring: &RingSpec, env: &Assignment) -> Result<Elem> {
    Ok(match t {
        Term::Const(c) => {
            ring.check(c)?;
            c.clone()
        }
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.0.clone()))?,
        Term::Sum(ts) => {
            let mut acc = ring.zero();
            for x in ts {
                acc = ring.add(&acc, &eval_term(x, ring, env)?);
            }
            acc
        }
        Term::Prod(ts) => {
            let mut acc = ring.one();
            for x in ts {
                acc = ring.mul(&acc, &eval_term(x, ring, env)?);
            }
            acc
        }
        Term::Neg(x) => ring.neg(&eval_term(x, ring, env)?),
    })
}

/// Truth value over a finite ring, quantifiers expanded over every element.
pub fn eval_direct(phi: &Formula, ring: &RingSpec, env: &Assignment) -> Result<bool> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let elems = ring.enumerate(0);
    expand(phi, ring, &elems, &mut env.clone())
}

fn expand(phi: &Formula, ring: &RingSpec, elems: &[Elem], env: &mut Assignment) -> Result<bool> {
    Ok(match phi {
        Formula::Eq(a, b) => eval_term(a, ring, env)? == eval_term(b, ring, env)?,
        Formula::Neq(a, b) => eval_term(a, ring, env)? != eval_term(b, ring, env)?,
        Formula::And(fs) => {
            for f in fs {
                if !expand(f, ring, elems, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(fs) => {
            for f in fs {
                if expand(f, ring, elems, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Exists(vs, body) => {
            let saved: Vec<Option<Elem>> = vs.iter().map(|v| env.get(v).cloned()).collect();
            let found = exists_rec(vs, body, ring, elems, env)?;
            for (v, old) in vs.iter().zip(saved) {
                match old {
                    Some(e) => env.insert(v.clone(), e),
                    None => env.remove(v),
                };
            }
            found
        }
    })
}

fn exists_rec(
    vs: &[VarId],
    body: &Formula,
    ring: &RingSpec,
    elems: &[Elem],
    env: &mut Assignment,
) -> Result<bool> {
    let Some((v, rest)) = vs.split_first() else {
        return expand(body, ring, elems, env);
    };
    for e in elems {
        env.insert(v.clone(), e.clone());
        if exists_rec(rest, body, ring, elems, env)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    #[test]
    fn field_formula_over_f5() {
        let r = RingSpec::PrimeField(5);
        let f = parse_formula("(exists (x) (= (* t x) 1))", &r).unwrap();
        for t in 0..5 {
            let env = Assignment::from([(VarId::new("t"), Elem::Res(t))]);
            assert_eq!(eval_direct(&f, &r, &env).unwrap(), t != 0);
        }
    }

    #[test]
    fn shadowing_restores_outer_binding() {
        let r = RingSpec::Zmod(3);
        let f = parse_formula("(and (exists (t) (= t 2)) (= t 1))", &r).unwrap();
        let env = Assignment::from([(VarId::new("t"), Elem::Res(1))]);
        assert!(eval_direct(&f, &r, &env).unwrap());
    }

    #[test]
    fn false_is_false_on_zero_ring() {
        let r = RingSpec::Zmod(1);
        let env = Assignment::from([(VarId::new("t"), Elem::Res(0))]);
        assert!(!eval_direct(&Formula::falsity(), &r, &env).unwrap());
    }
}
