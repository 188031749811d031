//! Sparse multivariate polynomials over a [`RingSpec`], with dense exponent vectors.

use super::{Term, VarId};
use crate::error::{Error, Result};
use crate::rings::{Elem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub coef: Elem,
}

/// Terms sorted by exponent vector, merged, with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: Vec<Monomial>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Elem, ring: &RingSpec) -> MPoly {
        MPoly { nvars, terms: vec![Monomial { exps: vec![0; nvars], coef: c }] }.normalized(ring)
    }

    pub fn var(nvars: usize, i: usize, ring: &RingSpec) -> MPoly {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        MPoly { nvars, terms: vec![Monomial { exps, coef: ring.one() }] }.normalized(ring)
    }

    fn normalized(mut self, ring: &RingSpec) -> MPoly {
        self.terms.sort_by(|a, b| a.exps.cmp(&b.exps));
        let mut out: Vec<Monomial> = Vec::with_capacity(self.terms.len());
        for m in self.terms {
            match out.last_mut() {
                Some(last) if last.exps == m.exps => last.coef = ring.add(&last.coef, &m.coef),
                _ => out.push(m),
            }
        }
        out.retain(|m| !ring.is_zero(&m.coef));
        MPoly { nvars: self.nvars, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly, ring: &RingSpec) -> MPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MPoly { nvars: self.nvars, terms }.normalized(ring)
    }

    pub fn neg(&self, ring: &RingSpec) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|m| Monomial { exps: m.exps.clone(), coef: ring.neg(&m.coef) })
                .collect(),
        }
    }

    pub fn sub(&self, other: &MPoly, ring: &RingSpec) -> MPoly {
        self.add(&other.neg(ring), ring)
    }

    pub fn mul(&self, other: &MPoly, ring: &RingSpec) -> MPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let coef = ring.mul(&a.coef, &b.coef);
                if ring.is_zero(&coef) {
                    continue;
                }
                let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
                terms.push(Monomial { exps, coef });
            }
        }
        MPoly { nvars: self.nvars, terms }.normalized(ring)
    }

    pub fn scale(&self, c: &Elem, ring: &RingSpec) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|m| Monomial { exps: m.exps.clone(), coef: ring.mul(c, &m.coef) })
                .collect(),
        }
        .normalized(ring)
    }

    /// Convert a term; variables are mapped to indices by `index`.
    pub fn from_term(
        t: &Term,
        nvars: usize,
        index: &dyn Fn(&VarId) -> Option<usize>,
        ring: &RingSpec,
    ) -> Result<MPoly> {
        Ok(match t {
            Term::Const(c) => {
                ring.check(c)?;
                MPoly::constant(nvars, c.clone(), ring)
            }
            Term::Var(v) => {
                let i = index(v).ok_or_else(|| Error::UnboundVariable(v.0.clone()))?;
                MPoly::var(nvars, i, ring)
            }
            Term::Sum(ts) => {
                let mut acc = MPoly::zero(nvars);
                for x in ts {
                    acc = acc.add(&MPoly::from_term(x, nvars, index, ring)?, ring);
                }
                acc
            }
            Term::Prod(ts) => {
                let mut acc = MPoly::constant(nvars, ring.one(), ring);
                for x in ts {
                    acc = acc.mul(&MPoly::from_term(x, nvars, index, ring)?, ring);
                }
                acc
            }
            Term::Neg(x) => MPoly::from_term(x, nvars, index, ring)?.neg(ring),
        })
    }

    /// The constant value, if no variable occurs.
    pub fn as_constant(&self, ring: &RingSpec) -> Option<Elem> {
        match self.terms.as_slice() {
            [] => Some(ring.zero()),
            [m] if m.exps.iter().all(|&e| e == 0) => Some(m.coef.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self, ring: &RingSpec) -> Elem {
        match self.terms.first() {
            Some(m) if m.exps.iter().all(|&e| e == 0) => m.coef.clone(),
            _ => ring.zero(),
        }
    }

    /// Coefficients of the non-constant monomials.
    pub fn nonconstant_coefs(&self) -> Vec<Elem> {
        self.terms
            .iter()
            .filter(|m| m.exps.iter().any(|&e| e > 0))
            .map(|m| m.coef.clone())
            .collect()
    }

    pub fn occurs(&self, i: usize) -> bool {
        self.terms.iter().any(|m| m.exps[i] > 0)
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.occurs(i)).collect()
    }

    /// If the polynomial is `a * x_i + r` with `a` constant and `r` free of `x_i`,
    /// return `a`.
    pub fn linear_coef(&self, i: usize) -> Option<Elem> {
        let mut coef = None;
        for m in &self.terms {
            match m.exps[i] {
                0 => {}
                1 if m.exps.iter().enumerate().all(|(j, &e)| j == i || e == 0) => {
                    coef = Some(m.coef.clone());
                }
                _ => return None,
            }
        }
        coef
    }

    /// Substitute `x_i := v`.
    pub fn substitute_var(&self, i: usize, v: &Elem, ring: &RingSpec) -> MPoly {
        if !self.occurs(i) {
            return self.clone();
        }
        let mut powers: Vec<Elem> = vec![ring.one()];
        let terms = self
            .terms
            .iter()
            .map(|m| {
                let e = m.exps[i] as usize;
                while powers.len() <= e {
                    let next = ring.mul(powers.last().unwrap(), v);
                    powers.push(next);
                }
                let mut exps = m.exps.clone();
                exps[i] = 0;
                let coef = if e == 0 { m.coef.clone() } else { ring.mul(&m.coef, &powers[e]) };
                Monomial { exps, coef }
            })
            .collect();
        MPoly { nvars: self.nvars, terms }.normalized(ring)
    }

    pub fn eval(&self, values: &[Elem], ring: &RingSpec) -> Elem {
        let mut acc = ring.zero();
        for m in &self.terms {
            let mut prod = m.coef.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    prod = ring.mul(&prod, &values[i]);
                }
            }
            acc = ring.add(&acc, &prod);
        }
        acc
    }

    /// Render as a term: sum of monomials `c * x_i * x_i * ...`, highest
    /// exponent vector first.
    pub fn to_term(&self, names: &[VarId], ring: &RingSpec) -> Term {
        if self.terms.is_empty() {
            return Term::Const(ring.zero());
        }
        let one = ring.one();
        let minus_one = ring.neg(&one);
        let parts: Vec<Term> = self
            .terms
            .iter()
            .rev()
            .map(|m| {
                let mut factors: Vec<Term> = Vec::new();
                for (i, &e) in m.exps.iter().enumerate() {
                    for _ in 0..e {
                        factors.push(Term::Var(names[i].clone()));
                    }
                }
                if factors.is_empty() {
                    Term::Const(m.coef.clone())
                } else if m.coef == one {
                    Term::prod(factors)
                } else if m.coef == minus_one {
                    Term::neg(Term::prod(factors))
                } else {
                    factors.insert(0, Term::Const(m.coef.clone()));
                    Term::Prod(factors)
                }
            })
            .collect();
        Term::sum(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_classic_product() {
        let r = RingSpec::Int;
        let names: Vec<VarId> = ["x", "y"].iter().map(|n| VarId::new(*n)).collect();
        let idx = |v: &VarId| names.iter().position(|n| n == v);
        let t = Term::Prod(vec![
            Term::Sum(vec![Term::Const(Elem::int(1)), Term::Prod(vec![Term::Const(Elem::int(2)), Term::var("x")])]),
            Term::Sum(vec![Term::Const(Elem::int(1)), Term::Prod(vec![Term::Const(Elem::int(3)), Term::var("y")])]),
        ]);
        let p = MPoly::from_term(&t, 2, &idx, &r).unwrap();
        assert_eq!(p.terms.len(), 4);
        assert_eq!(p.eval(&[Elem::int(1), Elem::int(1)], &r), Elem::int(12));
        let q = p.substitute_var(0, &Elem::int(1), &r);
        assert_eq!(q.linear_coef(1), Some(Elem::int(9)));
        assert_eq!(q.constant_term(&r), Elem::int(3));
        assert!(MPoly::from_term(&Term::var("z"), 2, &idx, &r).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let r = RingSpec::Zmod(6);
        let x = MPoly::var(1, 0, &r);
        let six_x = x.scale(&Elem::Res(2), &r).mul(&MPoly::constant(1, Elem::Res(3), &r), &r);
        assert!(six_x.is_zero());
    }
}
