//! Products, filtrations, regular elements, and single-polynomial certificates.

use std::collections::{BTreeMap, BTreeSet};

use super::lift::{ideal_membership_formula, quotient_lift};
use super::{
    free_var, t, Assumption, AssumptionStatus, Certificate, Provenance, RegularProvenance, TargetSet,
};
use crate::error::{Error, Result};
use crate::formula::{fresh_var, print_term, Formula, Term, VarId};
use crate::rings::{AssociatedPrimesData, Elem, FiltrationData, Ideal, RingSpec};

fn at(phi: &Formula, term: Term) -> Formula {
    phi.substitute(&BTreeMap::from([(free_var(), term)]))
}

/// Certificate for `A1 x A2` from certificates for each factor. Constants `c`
/// become `(c, 0)` and `t` becomes `(1, 0) t`, so the other coordinate imposes
/// nothing.
pub fn product_cert(c1: &Certificate, c2: &Certificate) -> Result<Certificate> {
    c1.require_nonzero_target("the product construction")?;
    c2.require_nonzero_target("the product construction")?;
    let ring = RingSpec::product(c1.ring.clone(), c2.ring.clone());
    let embed = |c: &Certificate, left: bool| {
        let (z1, z2) = (c1.ring.zero(), c2.ring.zero());
        let inj = |x: &Elem| {
            Elem::Seq(if left { vec![x.clone(), z2.clone()] } else { vec![z1.clone(), x.clone()] })
        };
        let e = inj(&c.ring.one());
        at(&c.formula.map_consts(&inj), Term::Prod(vec![Term::Const(e), t()]))
    };
    let phi = Formula::Or(vec![embed(c1, true), embed(c2, false)]);
    let mut assumptions = c1.assumptions.clone();
    assumptions.extend(c2.assumptions.iter().cloned());
    Certificate::build(
        ring,
        TargetSet::Nonzero,
        phi,
        Provenance::Product {
            left: Box::new(c1.provenance.clone()),
            right: Box::new(c2.provenance.clone()),
        },
        assumptions,
    )
}

/// Assign to each prime the certificate over its quotient. Every certificate
/// must be used.
fn match_certs<'a>(primes: &[&Ideal], certs: &'a [Certificate]) -> Result<Vec<&'a Certificate>> {
    let mut used = vec![false; certs.len()];
    let mut out = Vec::with_capacity(primes.len());
    for p in primes {
        let (quot, _) = p.quotient()?;
        let i = certs.iter().position(|c| c.ring == quot).ok_or_else(|| {
            Error::MismatchedCertificates(format!("no certificate over {quot} for the prime {p}"))
        })?;
        used[i] = true;
        out.push(&certs[i]);
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::MismatchedCertificates(format!(
            "certificate over {} matches no prime",
            certs[i].ring
        )));
    }
    Ok(out)
}

/// `t` is nonzero iff for some step `j` it lies in `I_j` but not `I_{j+1}`:
/// `exists s,u: t = s*alpha_j + u` with `s` outside `p_j` and `u` in `I_{j+1}`.
pub fn filtration_cert(data: &FiltrationData, certs: &[Certificate]) -> Result<Certificate> {
    let n = data.primes.len();
    if data.ideals.len() != n + 1 || data.gens.len() != n {
        return Err(Error::InvalidArgument("filtration data has inconsistent lengths".into()));
    }
    for c in certs {
        c.require_nonzero_target("the filtration construction")?;
    }
    let primes: Vec<&Ideal> = data.primes.iter().collect();
    let matched = match_certs(&primes, certs)?;
    let mut disjuncts = Vec::with_capacity(n);
    for j in 0..n {
        let lift = quotient_lift(&data.primes[j], matched[j])?;
        let step = Formula::Eq(
            t(),
            Term::Sum(vec![
                Term::Prod(vec![Term::var("s"), Term::Const(data.gens[j].clone())]),
                Term::var("u"),
            ]),
        );
        disjuncts.push(Formula::exists(
            vec![VarId::new("s"), VarId::new("u")],
            Formula::And(vec![
                step,
                at(&lift.formula, Term::var("s")),
                at(&ideal_membership_formula(&data.ideals[j + 1]), Term::var("u")),
            ]),
        ));
    }
    let assumptions = certs.iter().flat_map(|c| c.assumptions.iter().cloned()).collect();
    Certificate::build(
        data.ring.clone(),
        TargetSet::Nonzero,
        Formula::Or(disjuncts),
        Provenance::Filtration {
            data: data.clone(),
            certs: certs.iter().map(|c| c.provenance.clone()).collect(),
        },
        assumptions,
    )
}

#[derive(Clone, Debug)]
pub enum RegularMode {
    /// One certificate over each quotient `A/p_i`: `t` avoids every `p_i`.
    ViaQuotients(Vec<Certificate>),
    /// A certificate for the nonzero elements of `A`: `t*alpha_i != 0` for all `i`.
    ViaBaseCert(Certificate),
}

pub fn regular_cert(data: &AssociatedPrimesData, mode: &RegularMode) -> Result<Certificate> {
    let (parts, prov, assumptions) = match mode {
        RegularMode::ViaQuotients(certs) => {
            for c in certs {
                c.require_nonzero_target("the regular-element construction")?;
            }
            let primes: Vec<&Ideal> = data.pairs.iter().map(|(p, _)| p).collect();
            let matched = match_certs(&primes, certs)?;
            let parts = primes
                .iter()
                .zip(matched)
                .map(|(p, c)| Ok(quotient_lift(p, c)?.formula))
                .collect::<Result<Vec<_>>>()?;
            let prov = RegularProvenance::ViaQuotients {
                certs: certs.iter().map(|c| c.provenance.clone()).collect(),
            };
            (parts, prov, certs.iter().flat_map(|c| c.assumptions.clone()).collect())
        }
        RegularMode::ViaBaseCert(c) => {
            c.require_nonzero_target("the regular-element construction")?;
            if c.ring != data.ring {
                return Err(Error::MismatchedCertificates(format!(
                    "certificate over {}, primes of {}",
                    c.ring, data.ring
                )));
            }
            let parts = data
                .pairs
                .iter()
                .map(|(_, alpha)| at(&c.formula, Term::Prod(vec![t(), Term::Const(alpha.clone())])))
                .collect();
            let prov = RegularProvenance::ViaBaseCert { cert: Box::new(c.provenance.clone()) };
            (parts, prov, c.assumptions.clone())
        }
    };
    Certificate::build(
        data.ring.clone(),
        TargetSet::Regular,
        Formula::And(parts),
        Provenance::Regular { data: data.clone(), mode: prov },
        assumptions,
    )
}

/// `exists v_1..v_r, w: t*w = F(v)`.
pub fn one_poly_cert(ring: &RingSpec, f: &Term, vars: &[VarId]) -> Result<Certificate> {
    let declared: BTreeSet<VarId> = vars.iter().cloned().collect();
    if declared.contains(&free_var()) {
        return Err(Error::InvalidArgument(format!("`{}` is reserved", free_var())));
    }
    if declared.len() != vars.len() {
        return Err(Error::InvalidArgument("repeated variable".into()));
    }
    if let Some(v) = f.vars().into_iter().find(|v| !declared.contains(v)) {
        return Err(Error::UnboundVariable(v.0));
    }
    let mut avoid = declared.clone();
    avoid.insert(free_var());
    let w = fresh_var("w", &avoid);
    let mut binders = vars.to_vec();
    binders.push(w.clone());
    let phi = Formula::exists(binders, Formula::Eq(Term::Prod(vec![t(), Term::Var(w)]), f.clone()));
    let assumptions = vec![
        Assumption::new("no-zero", format!("F has no zero in {ring}^{}", vars.len()), AssumptionStatus::Unchecked),
        Assumption::new(
            "values-meet-ideals",
            "every nonzero principal ideal contains a value of F",
            AssumptionStatus::Unchecked,
        ),
    ];
    Certificate::build(
        ring.clone(),
        TargetSet::Nonzero,
        phi,
        Provenance::OnePoly {
            ring: ring.clone(),
            poly: print_term(f, ring),
            vars: vars.iter().map(|v| v.0.clone()).collect(),
        },
        assumptions,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cert_field, cert_finite, cert_int_classic};
    use crate::formula::{parse_term, pretty};
    use crate::rings::{associated_primes, composition_series};

    #[test]
    fn product_of_finite_certificates() {
        let c = product_cert(
            &cert_finite(&RingSpec::Zmod(2)).unwrap(),
            &cert_finite(&RingSpec::Zmod(3)).unwrap(),
        )
        .unwrap();
        assert_eq!(c.ring.to_string(), "prod(zmod:2,zmod:3)");
        assert_eq!(c.provenance.replay().unwrap(), c);
    }

    #[test]
    fn filtration_needs_matching_certificates() {
        let data = composition_series(&RingSpec::Zmod(12)).unwrap();
        let f2 = cert_field(&RingSpec::Zmod(2)).unwrap();
        let f3 = cert_field(&RingSpec::Zmod(3)).unwrap();
        assert!(filtration_cert(&data, &[f2.clone(), f3.clone()]).is_ok());
        assert!(matches!(filtration_cert(&data, &[f2.clone()]), Err(Error::MismatchedCertificates(_))));
        let f5 = cert_field(&RingSpec::Zmod(5)).unwrap();
        assert!(matches!(
            filtration_cert(&data, &[f2, f3, f5]),
            Err(Error::MismatchedCertificates(_))
        ));
    }

    #[test]
    fn regular_modes_build() {
        let data = associated_primes(&RingSpec::Zmod(6)).unwrap();
        let via_q = regular_cert(
            &data,
            &RegularMode::ViaQuotients(vec![
                cert_field(&RingSpec::Zmod(2)).unwrap(),
                cert_field(&RingSpec::Zmod(3)).unwrap(),
            ]),
        )
        .unwrap();
        assert_eq!(via_q.target, TargetSet::Regular);
        let via_b =
            regular_cert(&data, &RegularMode::ViaBaseCert(cert_finite(&RingSpec::Zmod(6)).unwrap()))
                .unwrap();
        assert_eq!(via_b.provenance.replay().unwrap(), via_b);
    }

    #[test]
    fn one_poly_matches_classic_shape() {
        let f = parse_term("(* (+ 1 (* 2 x)) (+ 1 (* 3 y)))", &RingSpec::Int).unwrap();
        let c = one_poly_cert(&RingSpec::Int, &f, &[VarId::new("x"), VarId::new("y")]).unwrap();
        assert_eq!(c.formula, cert_int_classic().unwrap().formula);
        assert!(c.assumptions.iter().all(|a| a.status == AssumptionStatus::Unchecked));
        assert_eq!(pretty(&c.formula, &c.ring), "∃x,y,w: tw=(1+2x)(1+3y)");
        let bad = parse_term("(+ t 1)", &RingSpec::Int).unwrap();
        assert!(one_poly_cert(&RingSpec::Int, &bad, &[]).is_err());
    }
}
