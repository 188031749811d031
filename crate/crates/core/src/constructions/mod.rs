//! Certificates: a positive-existential formula in one free variable `t`, the
//! subset of the ring it is claimed to define, the derivation that produced it,
//! and the hypotheses that derivation relies on.
//!
//! Every certificate can be rebuilt from its [`Provenance`] alone.

mod assemble;
mod lift;
mod two_ideals;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{parse_formula, parse_term, print_formula, FragmentClass, Formula, Term, VarId};
use crate::rings::{AssociatedPrimesData, Elem, FiltrationData, Ideal, RingHom, RingSpec};

pub use assemble::{filtration_cert, one_poly_cert, product_cert, regular_cert, RegularMode};
pub use lift::{cert_ideal_member, ideal_membership_formula, quotient_lift, weil_restrict};
pub use two_ideals::{
    doubling_cert, find_doubling_quadratic, polyring_cert, two_ideals, DoublingQuadratic,
};

/// Name of the free variable of every certificate formula.
pub const FREE_VAR: &str = "t";

pub fn free_var() -> VarId {
    VarId::new(FREE_VAR)
}

/// Largest finite ring on which regularity is decided by scanning.
const REGULAR_SCAN_LIMIT: u128 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetSet {
    Nonzero,
    ComplementOfIdeal { ideal: Ideal },
    MemberOfIdeal { ideal: Ideal },
    /// Non-zero-divisors.
    Regular,
    /// `{a : hom(a) in inner}`.
    Preimage { hom: RingHom, inner: Box<TargetSet> },
}

impl TargetSet {
    /// Exact membership test, independent of any formula.
    pub fn contains(&self, ring: &RingSpec, a: &Elem) -> Result<bool> {
        ring.check(a)?;
        match self {
            TargetSet::Nonzero => Ok(!ring.is_zero(a)),
            TargetSet::ComplementOfIdeal { ideal } => Ok(!ideal.contains(a)?),
            TargetSet::MemberOfIdeal { ideal } => ideal.contains(a),
            TargetSet::Regular => {
                if ring.cardinality().is_some_and(|c| c <= REGULAR_SCAN_LIMIT) {
                    let all = ring.enumerate(0);
                    Ok(all.iter().all(|b| ring.is_zero(b) || !ring.is_zero(&ring.mul(a, b))))
                } else if ring.is_domain() == Some(true) {
                    Ok(!ring.is_zero(a))
                } else {
                    Err(Error::NotFinite(ring.to_string()))
                }
            }
            TargetSet::Preimage { hom, inner } => inner.contains(&hom.target, &hom.apply(a)),
        }
    }

    pub fn describe(&self, ring: &RingSpec) -> String {
        match self {
            TargetSet::Nonzero => format!("{ring} \\ {{0}}"),
            TargetSet::ComplementOfIdeal { ideal } => format!("{ring} \\ {ideal}"),
            TargetSet::MemberOfIdeal { ideal } => format!("{ideal}"),
            TargetSet::Regular => format!("non-zero-divisors of {ring}"),
            TargetSet::Preimage { hom, inner } => {
                format!("preimage under {} of {}", hom.describe(), inner.describe(&hom.target))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionStatus {
    /// Decided true by an exact check.
    Checked,
    /// Not decided; the certificate is only as good as the hypothesis.
    Unchecked,
    /// Decided false. The certificate is still emitted.
    Violated,
}

impl fmt::Display for AssumptionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssumptionStatus::Checked => "checked",
            AssumptionStatus::Unchecked => "unchecked",
            AssumptionStatus::Violated => "violated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub tag: String,
    pub text: String,
    pub status: AssumptionStatus,
}

impl Assumption {
    pub fn new(tag: &str, text: impl Into<String>, status: AssumptionStatus) -> Assumption {
        Assumption { tag: tag.to_string(), text: text.into(), status }
    }

    pub(crate) fn from_decision(tag: &str, text: impl Into<String>, d: Option<bool>) -> Assumption {
        let status = match d {
            Some(true) => AssumptionStatus::Checked,
            Some(false) => AssumptionStatus::Violated,
            None => AssumptionStatus::Unchecked,
        };
        Assumption::new(tag, text, status)
    }
}

/// How a certificate was derived. Enough to rebuild it with [`Provenance::replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    Finite { ring: RingSpec },
    Field { ring: RingSpec },
    IntClassic,
    IdealMember { ideal: Ideal },
    /// `poly` is the s-expression of the term.
    OnePoly { ring: RingSpec, poly: String, vars: Vec<String> },
    QuotientLift { ideal: Ideal, inner: Box<Provenance> },
    WeilRestriction { inner: Box<Provenance> },
    TwoIdeals { p1: Ideal, p2: Ideal, inner1: Box<Provenance>, inner2: Box<Provenance> },
    PolyRing { inner: Box<Provenance> },
    Doubling { ideal: Ideal, budget: u64, a: Elem, b: Elem, inner: Box<Provenance> },
    Product { left: Box<Provenance>, right: Box<Provenance> },
    Filtration { data: FiltrationData, certs: Vec<Provenance> },
    Regular { data: AssociatedPrimesData, mode: RegularProvenance },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum RegularProvenance {
    ViaQuotients { certs: Vec<Provenance> },
    ViaBaseCert { cert: Box<Provenance> },
}

impl Provenance {
    pub fn rule(&self) -> &'static str {
        match self {
            Provenance::Finite { .. } => "finite",
            Provenance::Field { .. } => "field",
            Provenance::IntClassic => "int_classic",
            Provenance::IdealMember { .. } => "ideal_member",
            Provenance::OnePoly { .. } => "one_poly",
            Provenance::QuotientLift { .. } => "quotient_lift",
            Provenance::WeilRestriction { .. } => "weil_restriction",
            Provenance::TwoIdeals { .. } => "two_ideals",
            Provenance::PolyRing { .. } => "poly_ring",
            Provenance::Doubling { .. } => "doubling",
            Provenance::Product { .. } => "product",
            Provenance::Filtration { .. } => "filtration",
            Provenance::Regular { .. } => "regular",
        }
    }

    /// Rebuild the certificate by re-running the recorded constructions.
    pub fn replay(&self) -> Result<Certificate> {
        match self {
            Provenance::Finite { ring } => cert_finite(ring),
            Provenance::Field { ring } => cert_field(ring),
            Provenance::IntClassic => cert_int_classic(),
            Provenance::IdealMember { ideal } => cert_ideal_member(ideal),
            Provenance::OnePoly { ring, poly, vars } => {
                let f = parse_term(poly, ring)?;
                let vars: Vec<VarId> = vars.iter().map(VarId::new).collect();
                one_poly_cert(ring, &f, &vars)
            }
            Provenance::QuotientLift { ideal, inner } => quotient_lift(ideal, &inner.replay()?),
            Provenance::WeilRestriction { inner } => weil_restrict(&inner.replay()?),
            Provenance::TwoIdeals { p1, p2, inner1, inner2 } => {
                two_ideals(p1, p2, &inner1.replay()?, &inner2.replay()?)
            }
            Provenance::PolyRing { inner } => polyring_cert(&inner.replay()?),
            Provenance::Doubling { ideal, budget, a, b, inner } => {
                let c = doubling_cert(&ideal.ring, ideal, &inner.replay()?, *budget)?;
                match &c.provenance {
                    Provenance::Doubling { a: a2, b: b2, .. } if a2 == a && b2 == b => Ok(c),
                    _ => Err(Error::MismatchedCertificates(
                        "replayed search found a different quadratic".into(),
                    )),
                }
            }
            Provenance::Product { left, right } => product_cert(&left.replay()?, &right.replay()?),
            Provenance::Filtration { data, certs } => {
                let certs = certs.iter().map(Provenance::replay).collect::<Result<Vec<_>>>()?;
                filtration_cert(data, &certs)
            }
            Provenance::Regular { data, mode } => {
                let mode = match mode {
                    RegularProvenance::ViaQuotients { certs } => RegularMode::ViaQuotients(
                        certs.iter().map(Provenance::replay).collect::<Result<Vec<_>>>()?,
                    ),
                    RegularProvenance::ViaBaseCert { cert } => RegularMode::ViaBaseCert(cert.replay()?),
                };
                regular_cert(data, &mode)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateJson", into = "CertificateJson")]
pub struct Certificate {
    pub ring: RingSpec,
    pub target: TargetSet,
    pub formula: Formula,
    pub provenance: Provenance,
    pub assumptions: Vec<Assumption>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    ring: RingSpec,
    target: TargetSet,
    /// s-expression
    formula: String,
    provenance: Provenance,
    assumptions: Vec<Assumption>,
}

impl From<Certificate> for CertificateJson {
    fn from(c: Certificate) -> CertificateJson {
        CertificateJson {
            formula: print_formula(&c.formula, &c.ring),
            ring: c.ring,
            target: c.target,
            provenance: c.provenance,
            assumptions: c.assumptions,
        }
    }
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Certificate> {
        let formula = parse_formula(&j.formula, &j.ring)?;
        Certificate::build(j.ring, j.target, formula, j.provenance, j.assumptions)
    }
}

impl Certificate {
    /// Canonicalize the formula and check that it is positive existential with
    /// no free variable besides `t`.
    pub(crate) fn build(
        ring: RingSpec,
        target: TargetSet,
        formula: Formula,
        provenance: Provenance,
        assumptions: Vec<Assumption>,
    ) -> Result<Certificate> {
        if formula.classify() != FragmentClass::PositiveExistential {
            return Err(Error::NotPositiveExistential);
        }
        if let Some(v) = formula.free_vars().into_iter().find(|v| v.as_str() != FREE_VAR) {
            return Err(Error::UnboundVariable(v.0));
        }
        let mut seen = BTreeSet::new();
        let assumptions =
            assumptions.into_iter().filter(|a| seen.insert((a.tag.clone(), a.text.clone()))).collect();
        Ok(Certificate { ring, target, formula: formula.canonical(), provenance, assumptions })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn is_positive_existential(&self) -> bool {
        self.formula.classify() == FragmentClass::PositiveExistential
    }

    pub fn worst_assumption(&self) -> Option<AssumptionStatus> {
        let st: Vec<AssumptionStatus> = self.assumptions.iter().map(|a| a.status).collect();
        [AssumptionStatus::Violated, AssumptionStatus::Unchecked, AssumptionStatus::Checked]
            .into_iter()
            .find(|s| st.contains(s))
    }

    fn require_nonzero_target(&self, what: &str) -> Result<()> {
        if self.target != TargetSet::Nonzero {
            return Err(Error::InvalidArgument(format!(
                "{what} needs a certificate for the nonzero elements, got {}",
                self.target.describe(&self.ring)
            )));
        }
        Ok(())
    }
}

fn t() -> Term {
    Term::Var(free_var())
}

/// `t = a_1 or ... or t = a_m` over the nonzero elements of a finite ring.
pub fn cert_finite(ring: &RingSpec) -> Result<Certificate> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let parts = ring
        .enumerate(0)
        .into_iter()
        .filter(|a| !ring.is_zero(a))
        .map(|a| Formula::Eq(t(), Term::Const(a)))
        .collect();
    Certificate::build(
        ring.clone(),
        TargetSet::Nonzero,
        Formula::Or(parts),
        Provenance::Finite { ring: ring.clone() },
        Vec::new(),
    )
}

/// `exists x: t*x = 1`.
pub fn cert_field(ring: &RingSpec) -> Result<Certificate> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let x = VarId::new("x");
    let phi = Formula::exists(
        vec![x.clone()],
        Formula::Eq(Term::Prod(vec![t(), Term::Var(x)]), Term::Const(ring.one())),
    );
    Certificate::build(
        ring.clone(),
        TargetSet::Nonzero,
        phi,
        Provenance::Field { ring: ring.clone() },
        Vec::new(),
    )
}

/// `exists x,y,w: t*w = (1+2x)(1+3y)` over the integers.
pub fn cert_int_classic() -> Result<Certificate> {
    let c = |v: i64| Term::Const(Elem::Int(BigInt::from(v)));
    let factor = |k: i64, v: &str| Term::Sum(vec![c(1), Term::Prod(vec![c(k), Term::var(v)])]);
    let vars = ["x", "y", "w"].iter().map(|v| VarId::new(*v)).collect();
    let phi = Formula::exists(
        vars,
        Formula::Eq(
            Term::Prod(vec![t(), Term::var("w")]),
            Term::Prod(vec![factor(2, "x"), factor(3, "y")]),
        ),
    );
    Certificate::build(RingSpec::Int, TargetSet::Nonzero, phi, Provenance::IntClassic, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::pretty;

    #[test]
    fn finite_certificate_lists_nonzero_elements() {
        let c = cert_finite(&RingSpec::Zmod(4)).unwrap();
        assert_eq!(
            print_formula(&c.formula, &c.ring),
            "(or (= (var t) (const 1)) (= (var t) (const 2)) (= (var t) (const 3)))"
        );
        let zero = cert_finite(&RingSpec::Zmod(1)).unwrap();
        assert_eq!(zero.formula, Formula::falsity());
        assert!(matches!(cert_finite(&RingSpec::Int), Err(Error::NotFinite(_))));
    }

    #[test]
    fn field_and_classic_render() {
        let f = cert_field(&RingSpec::PrimeField(7)).unwrap();
        assert_eq!(pretty(&f.formula, &f.ring), "∃x: tx=1");
        assert!(matches!(cert_field(&RingSpec::Zmod(6)), Err(Error::NotAField(_))));
        let c = cert_int_classic().unwrap();
        assert_eq!(pretty(&c.formula, &c.ring), "∃x,y,w: tw=(1+2x)(1+3y)");
    }

    #[test]
    fn json_round_trip_and_replay() {
        let c = cert_int_classic().unwrap();
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.provenance.replay().unwrap(), c);
    }

    #[test]
    fn target_oracles() {
        let z6 = RingSpec::Zmod(6);
        let regular: Vec<u64> = (0..6)
            .filter(|&a| TargetSet::Regular.contains(&z6, &Elem::Res(a)).unwrap())
            .collect();
        assert_eq!(regular, vec![1, 5]);
        let i = Ideal::principal(z6.clone(), Elem::Res(2)).unwrap();
        let t = TargetSet::ComplementOfIdeal { ideal: i };
        assert!(t.contains(&z6, &Elem::Res(3)).unwrap());
        assert!(!t.contains(&z6, &Elem::Res(4)).unwrap());
    }
}
