use proptest::prelude::*;
use proptest::sample::select;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ringdef::formula::{parse_formula, print_formula, union_normal_form, Formula, VarId};
use ringdef::verifier::{eval_direct, random_formula, search, Assignment, SearchBudget, Verdict};
use ringdef::{Elem, RingSpec};

const FINITE: [&str; 5] = ["zmod:4", "gfp:3", "zmod:6", "prod(zmod:2,zmod:2)", "monicext:gfp:2:[1,1]"];

fn env(a: Elem) -> Assignment {
    Assignment::from([(VarId::new("t"), a)])
}

fn formula_case() -> impl Strategy<Value = (RingSpec, Formula)> {
    (select(FINITE.to_vec()), any::<u64>()).prop_map(|(s, seed)| {
        let r: RingSpec = s.parse().unwrap();
        let f = random_formula(&r, &mut ChaCha8Rng::seed_from_u64(seed));
        (r, f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_formulas_reparse((r, f) in formula_case()) {
        let back = parse_formula(&print_formula(&f, &r), &r).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn normal_form_preserves_truth((r, f) in formula_case()) {
        let nf = union_normal_form(&f).to_formula();
        for a in r.enumerate(0) {
            prop_assert_eq!(eval_direct(&f, &r, &env(a.clone())).unwrap(), eval_direct(&nf, &r, &env(a)).unwrap());
        }
    }

    /// Over a finite ring the search is a decision procedure.
    #[test]
    fn search_decides_finite_rings((r, f) in formula_case()) {
        for a in r.enumerate(0) {
            let e = env(a);
            let truth = eval_direct(&f, &r, &e).unwrap();
            match search(&r, &f, &e, &SearchBudget::default()).unwrap().verdict {
                Verdict::True { .. } => prop_assert!(truth),
                Verdict::FalseExhaustive => prop_assert!(!truth),
                Verdict::Unknown { .. } => prop_assert!(false, "unknown over a finite ring"),
            }
        }
    }

    #[test]
    fn canonical_is_idempotent((_r, f) in formula_case()) {
        let c = f.canonical();
        prop_assert_eq!(c.canonical(), c);
    }

    /// A larger schedule never loses a witness.
    #[test]
    fn verdicts_monotone_in_budget(t in -30i64..30, a in 1i64..6, b in -6i64..6) {
        let r = RingSpec::Int;
        let f = parse_formula(&format!("(exists (x y) (= (* t x) (+ (* {a} y y) {b})))"), &r).unwrap();
        let small = SearchBudget::new(vec![2, 4], 100_000).unwrap();
        let large = SearchBudget::new(vec![2, 4, 8, 16], 100_000).unwrap();
        let s = search(&r, &f, &env(Elem::int(t)), &small).unwrap().verdict;
        let l = search(&r, &f, &env(Elem::int(t)), &large).unwrap().verdict;
        if s.is_true() {
            prop_assert!(l.is_true());
        }
        prop_assert!(!matches!(l, Verdict::FalseExhaustive) || !s.is_true());
    }

    /// Witnesses satisfy the formula under direct evaluation of the matrix.
    #[test]
    fn integer_witnesses_check(t in -40i64..40) {
        let r = RingSpec::Int;
        let f = parse_formula("(exists (x y w) (= (* t w) (* (+ 1 (* 2 x)) (+ 1 (* 3 y)))))", &r).unwrap();
        if let Verdict::True { witness, .. } = search(&r, &f, &env(Elem::int(t)), &SearchBudget::default()).unwrap().verdict {
            let get = |n: &str| witness.iter().find(|(v, _)| v.as_str() == n).unwrap().1.as_int().unwrap().clone();
            let (x, y, w) = (get("x"), get("y"), get("w"));
            prop_assert_eq!(w * t, (2 * x + 1) * (3 * y + 1));
        } else {
            prop_assert_eq!(t, 0);
        }
    }
}

#[test]
fn linear_systems_with_shared_unknowns() {
    let r = RingSpec::Int;
    // a unit-coefficient unknown shared by two equations is substituted away
    let f = parse_formula("(exists (a b c) (and (= (+ a (* 6 b)) t) (= (+ a (* 10 c)) 1)))", &r).unwrap();
    for t in -20i64..=20 {
        let v = search(&r, &f, &env(Elem::int(t)), &SearchBudget::default()).unwrap().verdict;
        // t - 1 = 6b - 10c is solvable iff 2 | t - 1
        assert_eq!(v.is_true(), (t - 1) % 2 == 0, "t={t}: {v:?}");
    }
}

#[test]
fn slack_equation_without_solution_is_refuted() {
    let r = RingSpec::Int;
    let f = parse_formula("(exists (u v) (= (+ (* 4 u) (* 6 v)) t))", &r).unwrap();
    let v = search(&r, &f, &env(Elem::int(3)), &SearchBudget::default()).unwrap().verdict;
    assert_eq!(v, Verdict::FalseExhaustive);
    let v = search(&r, &f, &env(Elem::int(-10)), &SearchBudget::default()).unwrap().verdict;
    assert!(v.is_true());
}

#[test]
fn independent_blocks_are_split() {
    let r = RingSpec::Int;
    // two nonlinear constraints sharing nothing; jointly 25^4 nodes at height 12
    let f = parse_formula(
        "(exists (x y u v) (and (= (* x y) (+ t 11)) (= (* u v) (+ t 13)) (neq x 1) (neq y 1) (neq u 1) (neq v 1)))",
        &r,
    )
    .unwrap();
    let out = search(&r, &f, &env(Elem::int(10)), &SearchBudget::new(vec![12], 10_000).unwrap()).unwrap();
    assert!(out.verdict.is_true(), "{:?}", out.verdict);
}

#[test]
fn nonlinear_unknowns_stay_unknown() {
    let r = RingSpec::Int;
    let f = parse_formula("(exists (x) (= (* x x) t))", &r).unwrap();
    let v = search(&r, &f, &env(Elem::int(8)), &SearchBudget::default()).unwrap().verdict;
    assert!(matches!(v, Verdict::Unknown { .. }));
    let v = search(&r, &f, &env(Elem::int(49)), &SearchBudget::default()).unwrap().verdict;
    assert!(v.is_true());
}
