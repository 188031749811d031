use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use ringdef::constructions::{
    cert_field, cert_finite, cert_ideal_member, cert_int_classic, doubling_cert, filtration_cert,
    one_poly_cert, polyring_cert, product_cert, quotient_lift, regular_cert, two_ideals,
    weil_restrict, AssumptionStatus, Certificate, RegularMode, TargetSet,
};
use ringdef::formula::{parse_term, VarId};
use ringdef::rings::{associated_primes, composition_series, Ideal};
use ringdef::verifier::{truth_set_exhaustive, verify_cert, CheckConfig, SearchBudget};
use ringdef::{Elem, Error, RingSpec};

fn zideal(n: u64, g: u64) -> Ideal {
    Ideal::principal(RingSpec::Zmod(n), Elem::Res(g)).unwrap()
}

fn int_ideal(g: i64) -> Ideal {
    Ideal::principal(RingSpec::Int, Elem::int(g)).unwrap()
}

fn catalog() -> Vec<Certificate> {
    let f = |p: u64| cert_field(&RingSpec::Zmod(p)).unwrap();
    let z12 = RingSpec::Zmod(12);
    let f9: RingSpec = "monicext:gfp:3:[1,0]".parse().unwrap();
    vec![
        cert_finite(&RingSpec::Zmod(6)).unwrap(),
        cert_field(&RingSpec::PrimeField(7)).unwrap(),
        cert_int_classic().unwrap(),
        cert_ideal_member(&int_ideal(6)).unwrap(),
        quotient_lift(&zideal(12, 3), &f(3)).unwrap(),
        quotient_lift(&int_ideal(7), &f(7)).unwrap(),
        weil_restrict(&cert_field(&f9).unwrap()).unwrap(),
        two_ideals(&zideal(35, 5), &zideal(35, 7), &f(5), &f(7)).unwrap(),
        polyring_cert(&cert_field(&RingSpec::PrimeField(3)).unwrap()).unwrap(),
        doubling_cert(&RingSpec::Int, &int_ideal(5), &f(5), 64).unwrap(),
        product_cert(&f(2), &f(3)).unwrap(),
        filtration_cert(&composition_series(&z12).unwrap(), &[f(2), f(3)]).unwrap(),
        regular_cert(&associated_primes(&z12).unwrap(), &RegularMode::ViaQuotients(vec![f(2), f(3)])).unwrap(),
        one_poly_cert(
            &RingSpec::Int,
            &parse_term("(+ (* 2 x) 1)", &RingSpec::Int).unwrap(),
            &[VarId::new("x")],
        )
        .unwrap(),
    ]
}

#[test]
fn catalog_is_positive_existential_in_t() {
    for c in catalog() {
        assert!(c.is_positive_existential(), "{}", c.provenance.rule());
        let free = c.formula.free_vars();
        assert!(free.iter().all(|v| v.as_str() == "t"), "{}: {free:?}", c.provenance.rule());
    }
}

#[test]
fn json_round_trip_and_replay() {
    for c in catalog() {
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c, "{}", c.provenance.rule());
        assert_eq!(back.to_json(), c.to_json());
        let replayed = c.provenance.replay().unwrap();
        assert_eq!(replayed, c, "replay of {}", c.provenance.rule());
    }
}

#[test]
fn tampered_json_is_rejected() {
    let c = cert_field(&RingSpec::PrimeField(5)).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
    v["formula"] = serde_json::Value::String("(not (= t 0))".into());
    assert!(Certificate::from_json(&v.to_string()).is_err());
    v["formula"] = serde_json::Value::String("(exists (x) (= (* s x) 1))".into());
    assert!(Certificate::from_json(&v.to_string()).is_err());
}

#[test]
fn construction_errors() {
    assert!(matches!(cert_field(&RingSpec::Zmod(6)), Err(Error::NotAField(_))));
    assert!(matches!(cert_finite(&RingSpec::Int), Err(Error::NotFinite(_))));
    let f5 = cert_field(&RingSpec::Zmod(5)).unwrap();
    assert!(matches!(
        two_ideals(&int_ideal(6), &int_ideal(5), &f5, &f5),
        Err(Error::NotPrime(_))
    ));
    assert!(matches!(
        doubling_cert(&RingSpec::Int, &int_ideal(0), &cert_int_classic().unwrap(), 8),
        Err(Error::UnsupportedDepth(0))
    ));
    // quotient ring of the ideal does not match the inner certificate's ring
    assert!(quotient_lift(&zideal(12, 3), &cert_field(&RingSpec::Zmod(2)).unwrap()).is_err());
    // product of certificates for non-nonzero targets
    let member = cert_ideal_member(&int_ideal(2)).unwrap();
    assert!(product_cert(&member, &f5).is_err());
}

#[test]
fn assumption_statuses() {
    let f = |p: u64| cert_field(&RingSpec::Zmod(p)).unwrap();
    let bad = two_ideals(&zideal(35, 5), &zideal(35, 7), &f(5), &f(7)).unwrap();
    assert_eq!(bad.worst_assumption(), Some(AssumptionStatus::Violated));
    let good = doubling_cert(&RingSpec::Int, &int_ideal(5), &f(5), 64).unwrap();
    assert_eq!(good.worst_assumption(), Some(AssumptionStatus::Checked));
    let poly = one_poly_cert(
        &RingSpec::Int,
        &parse_term("(+ (* 2 x) 1)", &RingSpec::Int).unwrap(),
        &[VarId::new("x")],
    )
    .unwrap();
    assert_eq!(poly.worst_assumption(), Some(AssumptionStatus::Unchecked));
}

/// Complement of `(g)` in `Z/n` by gcd, written out independently.
fn complement_oracle(n: u64, g: u64) -> Vec<Elem> {
    let d = num_integer::gcd(g, n);
    (0..n).filter(|a| a % d != 0).map(Elem::Res).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifted_complements_match_gcd_oracle(n in 2u64..30, g in 2u64..30) {
        let d = num_integer::gcd(g, n);
        prop_assume!(d > 1 && d < n);
        let quotient = RingSpec::Zmod(d);
        let inner = cert_finite(&quotient).unwrap();
        let c = quotient_lift(&zideal(n, g % n), &inner).unwrap();
        let truth = truth_set_exhaustive(&c.ring, &c.formula).unwrap();
        prop_assert_eq!(truth, complement_oracle(n, g));
    }

    #[test]
    fn ideal_member_cert_matches_divisibility(g in 1i64..12, t in -60i64..60) {
        let c = cert_ideal_member(&int_ideal(g)).unwrap();
        let r = verify_cert(&c, &CheckConfig::Elements(vec![Elem::Int(BigInt::from(t))]), &SearchBudget::default()).unwrap();
        prop_assert!(r.falsifications.is_empty());
        prop_assert_eq!(r.tally.true_ == 1, t % g == 0);
    }

    #[test]
    fn product_truth_set_is_nonzero_pairs(m in 2u64..6, n in 2u64..6) {
        let c = product_cert(&cert_finite(&RingSpec::Zmod(m)).unwrap(), &cert_finite(&RingSpec::Zmod(n)).unwrap()).unwrap();
        let truth: BTreeSet<Elem> = truth_set_exhaustive(&c.ring, &c.formula).unwrap().into_iter().collect();
        let oracle: BTreeSet<Elem> = (0..m)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != 0 || b != 0)
            .map(|(a, b)| Elem::Seq(vec![Elem::Res(a), Elem::Res(b)]))
            .collect();
        prop_assert_eq!(truth, oracle);
    }
}

#[test]
fn regular_target_oracle() {
    let r = RingSpec::Zmod(12);
    for a in 0..12u64 {
        let regular = (1..12u64).all(|b| a * b % 12 != 0);
        assert_eq!(TargetSet::Regular.contains(&r, &Elem::Res(a)).unwrap(), regular, "{a}");
    }
}
