//! Ideal membership, lifting through quotients, and Weil restriction.

use std::collections::{BTreeMap, BTreeSet};

use super::{free_var, t, Certificate, Provenance, TargetSet};
use crate::error::{Error, Result};
use crate::formula::{fresh_var, rename_apart, FragmentClass, Formula, MPoly, Term, VarId};
use crate::rings::{Elem, Ideal, RingSpec};

/// `exists c_1..c_k: t = g_1 c_1 + ... + g_k c_k` over the nonzero generators;
/// `t = 0` for the zero ideal.
pub fn ideal_membership_formula(ideal: &Ideal) -> Formula {
    let ring = &ideal.ring;
    let gens: Vec<&Elem> = ideal.generators.iter().filter(|g| !ring.is_zero(g)).collect();
    if gens.is_empty() {
        return Formula::Eq(t(), Term::Const(ring.zero()));
    }
    let k = gens.len();
    let names: Vec<VarId> = if k == 1 {
        vec![VarId::new("c")]
    } else {
        (1..=k).map(|i| VarId::new(format!("c{i}"))).collect()
    };
    let rhs = Term::sum(
        names
            .iter()
            .zip(gens)
            .map(|(c, g)| Term::Prod(vec![Term::Const(g.clone()), Term::Var(c.clone())]))
            .collect(),
    );
    Formula::exists(names, Formula::Eq(t(), rhs))
}

pub fn cert_ideal_member(ideal: &Ideal) -> Result<Certificate> {
    Certificate::build(
        ideal.ring.clone(),
        TargetSet::MemberOfIdeal { ideal: ideal.clone() },
        ideal_membership_formula(ideal),
        Provenance::IdealMember { ideal: ideal.clone() },
        Vec::new(),
    )
}

/// Pull a certificate over `A/I` back to `A`: constants are lifted by the
/// canonical section and every equation `u = v` becomes
/// `exists c: u = v + g_1 c_1 + ... + g_k c_k`.
pub fn quotient_lift(ideal: &Ideal, inner: &Certificate) -> Result<Certificate> {
    let (quot, pi) = ideal.quotient()?;
    if inner.ring != quot {
        return Err(Error::InvalidArgument(format!(
            "certificate is over {}, but {} / {ideal} is {quot}",
            inner.ring, ideal.ring
        )));
    }
    if inner.formula.classify() != FragmentClass::PositiveExistential {
        return Err(Error::NotPositiveExistential);
    }
    let lifted = inner.formula.map_consts(&|c| pi.section(c));
    let gens: Vec<Elem> =
        ideal.generators.iter().filter(|g| !ideal.ring.is_zero(g)).cloned().collect();
    let mut avoid = lifted.all_vars();
    avoid.insert(free_var());
    let body = merge_exists(&widen_eqs(&lifted, &gens, &mut avoid));
    let target = match &inner.target {
        TargetSet::Nonzero => TargetSet::ComplementOfIdeal { ideal: ideal.clone() },
        other => TargetSet::Preimage { hom: pi.clone(), inner: Box::new(other.clone()) },
    };
    Certificate::build(
        ideal.ring.clone(),
        target,
        body,
        Provenance::QuotientLift { ideal: ideal.clone(), inner: Box::new(inner.provenance.clone()) },
        inner.assumptions.clone(),
    )
}

fn widen_eqs(f: &Formula, gens: &[Elem], avoid: &mut BTreeSet<VarId>) -> Formula {
    match f {
        Formula::Eq(u, v) => {
            if gens.is_empty() {
                return f.clone();
            }
            let cs: Vec<VarId> = gens
                .iter()
                .map(|_| {
                    let c = fresh_var("c", avoid);
                    avoid.insert(c.clone());
                    c
                })
                .collect();
            let mut rhs = vec![v.clone()];
            rhs.extend(
                cs.iter()
                    .zip(gens)
                    .map(|(c, g)| Term::Prod(vec![Term::Const(g.clone()), Term::Var(c.clone())])),
            );
            Formula::exists(cs, Formula::Eq(u.clone(), Term::Sum(rhs)))
        }
        Formula::Neq(..) => unreachable!("checked positive existential"),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| widen_eqs(g, gens, avoid)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| widen_eqs(g, gens, avoid)).collect()),
        Formula::Exists(vs, body) => Formula::Exists(vs.clone(), Box::new(widen_eqs(body, gens, avoid))),
    }
}

/// Collapse directly nested quantifiers with disjoint binders.
pub(crate) fn merge_exists(f: &Formula) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Neq(..) => f.clone(),
        Formula::And(fs) => Formula::And(fs.iter().map(merge_exists).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(merge_exists).collect()),
        Formula::Exists(vs, body) => match merge_exists(body) {
            Formula::Exists(ws, inner) if ws.iter().all(|w| !vs.contains(w)) => {
                let mut all = vs.clone();
                all.extend(ws);
                Formula::Exists(all, inner)
            }
            b => Formula::Exists(vs.clone(), Box::new(b)),
        },
    }
}

/// Rewrite a certificate over `B = A[x]/(f)` of degree `d` as one over `A`: each
/// bound variable becomes `d` coordinates, each equation `d` coordinate equations,
/// and `t` is read as `t + 0x + ... + 0x^{d-1}`.
pub fn weil_restrict(inner: &Certificate) -> Result<Certificate> {
    let RingSpec::MonicExt { base, .. } = &inner.ring else {
        return Err(Error::InvalidArgument(format!("{} is not a monic extension", inner.ring)));
    };
    inner.require_nonzero_target("restriction")?;
    if inner.formula.classify() != FragmentClass::PositiveExistential {
        return Err(Error::NotPositiveExistential);
    }
    let d = inner.ring.ext_degree().expect("extension degree");
    let sc = inner.ring.structure_constants().expect("extension");

    let mut used: BTreeSet<VarId> = BTreeSet::from([free_var()]);
    let phi = rename_apart(&inner.formula, &mut used);
    let mut names: Vec<VarId> = vec![free_var()];
    let mut coords: BTreeMap<VarId, Vec<usize>> = BTreeMap::new();
    let mut taken = phi.all_vars();
    taken.insert(free_var());
    collect_binders(&phi, &mut |v: &VarId| {
        let idx = (0..d)
            .map(|i| {
                let name = fresh_var(&format!("{}_{i}", v.0), &taken);
                taken.insert(name.clone());
                names.push(name);
                names.len() - 1
            })
            .collect();
        coords.insert(v.clone(), idx);
    });
    let r = Restrictor { base, d, sc: &sc, nvars: names.len(), coords: &coords, names: &names };
    let body = r.formula(&phi)?;
    Certificate::build(
        (**base).clone(),
        TargetSet::Nonzero,
        body,
        Provenance::WeilRestriction { inner: Box::new(inner.provenance.clone()) },
        inner.assumptions.clone(),
    )
}

fn collect_binders(f: &Formula, visit: &mut dyn FnMut(&VarId)) {
    match f {
        Formula::Eq(..) | Formula::Neq(..) => {}
        Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| collect_binders(g, visit)),
        Formula::Exists(vs, body) => {
            vs.iter().for_each(|v| visit(v));
            collect_binders(body, visit);
        }
    }
}

struct Restrictor<'a> {
    base: &'a RingSpec,
    d: usize,
    sc: &'a [Vec<Vec<Elem>>],
    nvars: usize,
    coords: &'a BTreeMap<VarId, Vec<usize>>,
    names: &'a [VarId],
}

impl Restrictor<'_> {
    fn formula(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Eq(u, v) => {
                let (cu, cv) = (self.term(u)?, self.term(v)?);
                Formula::and(
                    cu.iter()
                        .zip(&cv)
                        .map(|(a, b)| {
                            Formula::Eq(a.to_term(self.names, self.base), b.to_term(self.names, self.base))
                        })
                        .collect(),
                )
            }
            Formula::Neq(..) => return Err(Error::NotPositiveExistential),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| self.formula(g)).collect::<Result<_>>()?),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| self.formula(g)).collect::<Result<_>>()?),
            Formula::Exists(vs, body) => {
                let vars = vs
                    .iter()
                    .flat_map(|v| self.coords[v].iter().map(|&i| self.names[i].clone()))
                    .collect();
                Formula::Exists(vars, Box::new(self.formula(body)?))
            }
        })
    }

    fn term(&self, t: &Term) -> Result<Vec<MPoly>> {
        let (b, n) = (self.base, self.nvars);
        Ok(match t {
            Term::Const(c) => {
                let cs = c.as_seq().ok_or_else(|| Error::InvalidArgument("bad constant".into()))?;
                cs.iter().map(|x| MPoly::constant(n, x.clone(), b)).collect()
            }
            Term::Var(v) if *v == free_var() => {
                let mut out = vec![MPoly::zero(n); self.d];
                out[0] = MPoly::var(n, 0, b);
                out
            }
            Term::Var(v) => self
                .coords
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.0.clone()))?
                .iter()
                .map(|&i| MPoly::var(n, i, b))
                .collect(),
            Term::Sum(ts) => {
                let mut acc = vec![MPoly::zero(n); self.d];
                for x in ts {
                    for (a, y) in acc.iter_mut().zip(self.term(x)?) {
                        *a = a.add(&y, b);
                    }
                }
                acc
            }
            Term::Neg(x) => self.term(x)?.iter().map(|p| p.neg(b)).collect(),
            Term::Prod(ts) => {
                let mut acc = vec![MPoly::zero(n); self.d];
                acc[0] = MPoly::constant(n, b.one(), b);
                for x in ts {
                    acc = self.mul(&acc, &self.term(x)?);
                }
                acc
            }
        })
    }

    fn mul(&self, u: &[MPoly], w: &[MPoly]) -> Vec<MPoly> {
        let b = self.base;
        let mut out = vec![MPoly::zero(self.nvars); self.d];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let prod = ui.mul(wj, b);
                for (k, c) in self.sc[i][j].iter().enumerate() {
                    if !b.is_zero(c) {
                        out[k] = out[k].add(&prod.scale(c, b), b);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cert_field, cert_finite};
    use crate::formula::{parse_formula, pretty};

    #[test]
    fn lift_field_certificate_through_two() {
        let i = Ideal::principal(RingSpec::Int, Elem::int(2)).unwrap();
        let c = quotient_lift(&i, &cert_field(&RingSpec::Zmod(2)).unwrap()).unwrap();
        assert_eq!(pretty(&c.formula, &c.ring), "∃x,c: tx=1+2c");
        assert_eq!(c.target, TargetSet::ComplementOfIdeal { ideal: i });
    }

    #[test]
    fn lift_rejects_wrong_ring() {
        let i = Ideal::principal(RingSpec::Int, Elem::int(3)).unwrap();
        let err = quotient_lift(&i, &cert_finite(&RingSpec::Zmod(2)).unwrap());
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn membership_formula_shape() {
        let i = Ideal::new(RingSpec::Int, vec![Elem::int(4), Elem::int(6)]).unwrap();
        assert_eq!(pretty(&ideal_membership_formula(&i), &RingSpec::Int), "∃c1,c2: t=4·c1+6·c2");
    }

    #[test]
    fn restriction_of_gaussian_square() {
        let b: RingSpec = "monicext:int:[1,0]".parse().unwrap();
        let phi = parse_formula("(or (= t t) (exists (x) (= (* x x) [-1,0])))", &b).unwrap();
        let cert = Certificate {
            ring: b.clone(),
            target: TargetSet::Nonzero,
            formula: phi,
            provenance: Provenance::IntClassic,
            assumptions: Vec::new(),
        };
        let r = weil_restrict(&cert).unwrap();
        let text = pretty(&r.formula, &r.ring);
        assert!(text.contains("∃x_0,x_1: x_0·x_0-x_1·x_1=-1 ∧ 2·x_0·x_1=0"), "{text}");
        assert!(text.contains("0=0 ∧ t=t"), "{text}");
    }
}
