//! Combining certificates for two prime quotients, and the constructions built
//! on it: polynomial rings over finite fields and the quadratic doubling trick.

use std::collections::BTreeMap;

use super::lift::{quotient_lift, weil_restrict};
use super::{free_var, t, Assumption, AssumptionStatus, Certificate, Provenance, TargetSet};
use crate::error::{Error, Result};
use crate::formula::{Formula, Term, VarId};
use crate::rings::intpoly::IntPoly;
use crate::rings::{Elem, Ideal, RingSpec};

/// `exists w,x1,x2: t*w = x1*x2 and psi1(x1) and psi2(x2)` where `psi_i` lifts a
/// certificate for the nonzero elements of `A/p_i`.
pub fn two_ideals(p1: &Ideal, p2: &Ideal, c1: &Certificate, c2: &Certificate) -> Result<Certificate> {
    if p1.ring != p2.ring {
        return Err(Error::InvalidArgument("ideals live in different rings".into()));
    }
    for p in [p1, p2] {
        if p.is_prime() != Some(true) {
            return Err(Error::NotPrime(p.to_string()));
        }
    }
    c1.require_nonzero_target("the two-ideal construction")?;
    c2.require_nonzero_target("the two-ideal construction")?;
    let l1 = quotient_lift(p1, c1)?;
    let l2 = quotient_lift(p2, c2)?;
    let at = |l: &Certificate, x: &str| {
        l.formula.substitute(&BTreeMap::from([(free_var(), Term::var(x))]))
    };
    let body = Formula::And(vec![
        Formula::Eq(Term::Prod(vec![t(), Term::var("w")]), Term::Prod(vec![Term::var("x1"), Term::var("x2")])),
        at(&l1, "x1"),
        at(&l2, "x2"),
    ]);
    let phi = Formula::exists(["w", "x1", "x2"].iter().map(|v| VarId::new(*v)).collect(), body);
    let mut assumptions = hypotheses(p1, p2);
    assumptions.extend(c1.assumptions.iter().cloned());
    assumptions.extend(c2.assumptions.iter().cloned());
    Certificate::build(
        p1.ring.clone(),
        TargetSet::Nonzero,
        phi,
        Provenance::TwoIdeals {
            p1: p1.clone(),
            p2: p2.clone(),
            inner1: Box::new(c1.provenance.clone()),
            inner2: Box::new(c2.provenance.clone()),
        },
        assumptions,
    )
}

fn same_ideal(a: &Ideal, b: &Ideal) -> Option<bool> {
    let within = |x: &Ideal, y: &Ideal| -> Option<bool> {
        let mut all = true;
        for g in &x.generators {
            all &= y.contains(g).ok()?;
        }
        Some(all)
    };
    Some(within(a, b)? && within(b, a)?)
}

/// Rings in which every nonzero prime ideal is maximal, as far as we can tell.
fn nonzero_primes_maximal(ring: &RingSpec) -> bool {
    match ring {
        _ if ring.is_finite() => true,
        RingSpec::Int => true,
        RingSpec::Poly { base, .. } => base.is_field(),
        RingSpec::MonicExt { base, .. } => {
            nonzero_primes_maximal(base) && !base.is_finite() && ring.is_domain() == Some(true)
        }
        _ => false,
    }
}

fn hypotheses(p1: &Ideal, p2: &Ideal) -> Vec<Assumption> {
    let ring = &p1.ring;
    let domain = Assumption::from_decision(
        "domain",
        format!("{ring} is an integral domain"),
        ring.is_domain(),
    );
    // every supported ring is a finitely generated algebra over Z or a field
    let noetherian = Assumption::new(
        "noetherian-localizations",
        format!("the localizations of {ring} at {p1} and {p2} are noetherian"),
        AssumptionStatus::Checked,
    );
    let decision = match same_ideal(p1, p2) {
        Some(true) if !p1.is_zero_ideal() => Some(false),
        Some(_) if nonzero_primes_maximal(ring) => Some(true),
        _ => None,
    };
    let separated = Assumption::from_decision(
        "no-common-prime",
        format!("{p1} ∩ {p2} contains no nonzero prime ideal of {ring}"),
        decision,
    );
    vec![domain, noetherian, separated]
}

/// The two-ideal construction over `R[X]` with `(X)` and `(X - 1)`, for a finite
/// prime field `R`.
pub fn polyring_cert(c_r: &Certificate) -> Result<Certificate> {
    let r = &c_r.ring;
    let p = match r {
        RingSpec::PrimeField(p) => *p,
        RingSpec::Zmod(p) if r.is_field() => *p,
        _ => return Err(Error::NotAField(r.to_string())),
    };
    let a = RingSpec::poly(r.clone(), "X")?;
    let x = Ideal::principal(a.clone(), Elem::Seq(vec![Elem::Res(0), Elem::Res(1)]))?;
    let x1 = Ideal::principal(a, Elem::Seq(vec![Elem::Res(p - 1), Elem::Res(1)]))?;
    let inner = two_ideals(&x, &x1, c_r, c_r)?;
    Ok(Certificate {
        provenance: Provenance::PolyRing { inner: Box::new(c_r.provenance.clone()) },
        ..inner
    })
}

/// A monic quadratic `X^2 + aX + b` with `a` outside the prime, `b` inside it,
/// and no root in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingQuadratic {
    pub a: Elem,
    pub b: Elem,
    pub a_outside: bool,
    pub b_inside: bool,
    pub rootless: bool,
}

fn check_doubling_ring(ring: &RingSpec, p: &Ideal) -> Result<()> {
    let ok = match ring {
        RingSpec::Int => true,
        RingSpec::Poly { base, .. } => base.is_field(),
        _ => false,
    };
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "quadratic search needs the integers or a polynomial ring over a prime field, got {ring}"
        )));
    }
    if p.ring != *ring {
        return Err(Error::InvalidArgument("ideal lives in another ring".into()));
    }
    if p.is_prime() != Some(true) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(())
}

fn has_root(ring: &RingSpec, a: &Elem, b: &Elem) -> bool {
    match ring {
        RingSpec::Int => {
            let f = IntPoly::monic_from_low(vec![
                b.as_int().expect("int").clone(),
                a.as_int().expect("int").clone(),
            ]);
            !f.integer_roots().is_empty()
        }
        _ => {
            // a root r has deg r <= max(deg a, deg b)
            let bound = ring.height(a).max(ring.height(b));
            ring.enumerate(bound).iter().any(|r| {
                let v = ring.add(&ring.mul(r, &ring.add(r, a)), b);
                ring.is_zero(&v)
            })
        }
    }
}

/// First pair `(a, b)` in canonical order (height of the pair, then lexicographic)
/// up to height `budget`, skipping `exclude`.
pub fn find_doubling_quadratic(
    ring: &RingSpec,
    p: &Ideal,
    budget: u64,
    exclude: &[(Elem, Elem)],
) -> Result<DoublingQuadratic> {
    check_doubling_ring(ring, p)?;
    let pairs = RingSpec::product(ring.clone(), ring.clone());
    for k in 0..=budget {
        for pair in pairs.enumerate_layer(k) {
            let s = pair.as_seq().expect("pair");
            let (a, b) = (&s[0], &s[1]);
            if exclude.iter().any(|(x, y)| x == a && y == b) {
                continue;
            }
            if p.contains(a)? || !p.contains(b)? || has_root(ring, a, b) {
                continue;
            }
            return Ok(DoublingQuadratic {
                a: a.clone(),
                b: b.clone(),
                a_outside: true,
                b_inside: true,
                rootless: true,
            });
        }
    }
    Err(Error::BudgetExhausted(format!("no doubling quadratic for {p} up to height {budget}")))
}

/// Certificate for the nonzero elements of `A` from one for `A/p`, where
/// `A_p` has dimension one: adjoin a root of a doubling quadratic, apply the
/// two-ideal construction to the two primes above `p`, and restrict back to `A`.
pub fn doubling_cert(ring: &RingSpec, p: &Ideal, c_p: &Certificate, budget: u64) -> Result<Certificate> {
    check_doubling_ring(ring, p)?;
    if p.is_zero_ideal() {
        return Err(Error::UnsupportedDepth(0));
    }
    let dq = find_doubling_quadratic(ring, p, budget, &[])?;
    let b_ring = RingSpec::monic_extension(ring.clone(), vec![dq.b.clone(), dq.a.clone()])?;
    let q1 = Ideal::ext_point(&b_ring, p, &ring.zero())?;
    let q2 = Ideal::ext_point(&b_ring, p, &ring.neg(&dq.a))?;
    let inner = two_ideals(&q1, &q2, c_p, c_p)?;
    let restricted = weil_restrict(&inner)?;
    let mut assumptions = vec![Assumption::new(
        "doubling-quadratic",
        format!(
            "x^2 + ({})x + ({}) has no root in {ring}, {} lies outside {p} and {} inside",
            ring.encode(&dq.a),
            ring.encode(&dq.b),
            ring.encode(&dq.a),
            ring.encode(&dq.b)
        ),
        AssumptionStatus::Checked,
    )];
    assumptions.extend(restricted.assumptions);
    Certificate::build(
        ring.clone(),
        TargetSet::Nonzero,
        restricted.formula,
        Provenance::Doubling {
            ideal: p.clone(),
            budget,
            a: dq.a,
            b: dq.b,
            inner: Box::new(c_p.provenance.clone()),
        },
        assumptions,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cert_field;

    fn int_ideal(n: i64) -> Ideal {
        Ideal::principal(RingSpec::Int, Elem::int(n)).unwrap()
    }

    #[test]
    fn doubling_quadratic_over_integers() {
        let q = find_doubling_quadratic(&RingSpec::Int, &int_ideal(5), 10, &[]).unwrap();
        assert_eq!((q.a.clone(), q.b.clone()), (Elem::int(1), Elem::int(5)));
        let next =
            find_doubling_quadratic(&RingSpec::Int, &int_ideal(5), 10, &[(q.a, q.b)]).unwrap();
        assert_eq!((next.a, next.b), (Elem::int(1), Elem::int(-5)));
        let q2 = find_doubling_quadratic(&RingSpec::Int, &int_ideal(2), 10, &[]).unwrap();
        assert_eq!((q2.a, q2.b), (Elem::int(1), Elem::int(2)));
        assert!(matches!(
            find_doubling_quadratic(&RingSpec::Int, &int_ideal(5), 4, &[]),
            Err(Error::BudgetExhausted(_))
        ));
        assert!(matches!(
            find_doubling_quadratic(&RingSpec::Int, &int_ideal(6), 10, &[]),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn two_ideals_hypotheses_for_non_domain() {
        let r = RingSpec::Zmod(35);
        let p5 = Ideal::principal(r.clone(), Elem::Res(5)).unwrap();
        let p7 = Ideal::principal(r.clone(), Elem::Res(7)).unwrap();
        let c = two_ideals(
            &p5,
            &p7,
            &cert_field(&RingSpec::Zmod(5)).unwrap(),
            &cert_field(&RingSpec::Zmod(7)).unwrap(),
        )
        .unwrap();
        let status: Vec<_> = c.assumptions.iter().map(|a| (a.tag.as_str(), a.status)).collect();
        assert!(status.contains(&("domain", AssumptionStatus::Violated)));
        assert!(status.contains(&("no-common-prime", AssumptionStatus::Checked)));
    }

    #[test]
    fn doubling_structure() {
        let p = int_ideal(5);
        let c = doubling_cert(&RingSpec::Int, &p, &cert_field(&RingSpec::Zmod(5)).unwrap(), 10).unwrap();
        assert_eq!(c.ring, RingSpec::Int);
        assert!(c.assumptions.iter().all(|a| a.status == AssumptionStatus::Checked));
        assert_eq!(c.provenance.replay().unwrap(), c);
    }
}
