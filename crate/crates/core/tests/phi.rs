use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::sample::select;

use ringdef::constructions::{cert_field, cert_int_classic};
use ringdef::formula::{parse_term, VarId};
use ringdef::rings::intpoly::{hensel_lift, IntPoly};
use ringdef::verifier::{closedness_demo, phi_experiment, PhiSystem, SearchBudget};
use ringdef::{Error, RingSpec};

fn eval(coeffs: &[i64], x: i64, m: i64) -> i64 {
    coeffs.iter().rev().fold(0i64, |acc, &c| (acc * x + c).rem_euclid(m))
}

proptest! {
    /// Every simple residual root of a monic cubic lifts to the unique root
    /// above it modulo `p^q`, found by scanning.
    #[test]
    fn hensel_matches_scan(
        p in select(vec![3u64, 5, 7, 11]),
        c0 in -20i64..20, c1 in -20i64..20, c2 in -20i64..20,
        q in 1u32..4,
    ) {
        let coeffs = [c0, c1, c2, 1];
        let deriv = [c1, 2 * c2, 3];
        let pi = p as i64;
        let m = pi.pow(q);
        let poly = IntPoly::from_i64(&coeffs);
        for x0 in 0..pi {
            let simple = eval(&coeffs, x0, pi) == 0 && eval(&deriv, x0, pi) != 0;
            let lifted = hensel_lift(&poly, p, &BigInt::from(x0), q);
            if !simple {
                prop_assert!(matches!(lifted, Err(Error::NotASimpleRoot(_))));
                continue;
            }
            let x = lifted.unwrap().to_i64().unwrap();
            let above: Vec<i64> = (0..m).filter(|r| r % pi == x0 && eval(&coeffs, *r, m) == 0).collect();
            prop_assert_eq!(above, vec![x]);
        }
    }
}

#[test]
fn non_monic_rejected() {
    let poly = IntPoly::from_i64(&[1, 0, 2]);
    assert_eq!(hensel_lift(&poly, 3, &BigInt::from(1), 2), Err(Error::NotMonic));
}

fn univariate(text: &str, p: u64) -> PhiSystem {
    PhiSystem::new(vec![parse_term(text, &RingSpec::Int).unwrap()], vec![VarId::new("X")], p).unwrap()
}

#[test]
fn solvable_levels_have_checked_witnesses() {
    // X^2 - 2 over 7: 3^2 = 9 = 2 mod 7
    let report = phi_experiment(&univariate("(+ (* X X) -2)", 7), 8, &SearchBudget::default()).unwrap();
    let phi = report.phi.unwrap();
    assert_eq!(phi.levels.len(), 8);
    for level in &phi.levels {
        assert!(level.solvable);
        let w = level.witness.as_ref().expect("witness");
        let x: BigInt = w[0].parse().unwrap();
        let m = num_traits::pow(BigInt::from(7), level.q as usize);
        assert!((&x * &x - BigInt::from(2)).mod_floor(&m).is_zero(), "q={}", level.q);
    }
    assert_eq!(phi.global.status, "unsolvable");
    assert_eq!(report.conclusion, "PHI(Z,(7)) fails");
}

#[test]
fn residual_obstruction_breaks_the_chain() {
    // 3 is not a square mod 7
    let report = phi_experiment(&univariate("(+ (* X X) -3)", 7), 4, &SearchBudget::default()).unwrap();
    let phi = report.phi.unwrap();
    assert!(!phi.levels[0].solvable);
    assert_ne!(report.conclusion, "PHI(Z,(7)) fails");
}

#[test]
fn closedness_needs_an_int_nonzero_certificate() {
    let b = SearchBudget::default();
    assert!(closedness_demo(&cert_field(&RingSpec::PrimeField(5)).unwrap(), 5, 3, &b).is_err());
    let r = closedness_demo(&cert_int_classic().unwrap(), 5, 4, &b).unwrap();
    assert_eq!(r.verdicts.len(), 5);
    assert_eq!(r.conclusion, "truth set not 5-adically closed");
}
