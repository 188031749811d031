//! Approximation experiments over the integers: solvability modulo `p^q` for
//! every level against solvability in `Z`, and the failure of `p`-adic
//! closedness for certificate truth sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::direct::Assignment;
use super::report::{Falsification, PhiGlobal, PhiLevel, PhiReport, Report, VerdictEntry};
use super::search::{search, SearchBudget, Verdict};
use crate::constructions::{free_var, Certificate, TargetSet};
use crate::error::{Error, Result};
use crate::formula::{print_term, Formula, MPoly, Term, VarId};
use crate::rings::intpoly::{hensel_lift, IntPoly};
use crate::rings::numtheory::{exact_root, is_prime};
use crate::rings::{Elem, RingSpec};

/// Levels with `p^(q*r)` at most this are also scanned when Hensel lifting
/// already decided them, as a cross-check.
const CROSS_CHECK_LIMIT: u64 = 1_000_000;

/// Polynomials `F_1..F_s` over the integers in the unknowns `vars`, and a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSystem {
    pub polys: Vec<Term>,
    pub vars: Vec<VarId>,
    pub p: u64,
}

impl PhiSystem {
    pub fn new(polys: Vec<Term>, vars: Vec<VarId>, p: u64) -> Result<PhiSystem> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if polys.is_empty() || vars.is_empty() {
            return Err(Error::InvalidArgument("empty system".into()));
        }
        for f in &polys {
            if let Some(v) = f.vars().into_iter().find(|v| !vars.contains(v)) {
                return Err(Error::UnboundVariable(v.0));
            }
        }
        Ok(PhiSystem { polys, vars, p })
    }

    fn mpolys(&self) -> Result<Vec<MPoly>> {
        let index = |v: &VarId| self.vars.iter().position(|x| x == v);
        self.polys
            .iter()
            .map(|f| MPoly::from_term(f, self.vars.len(), &index, &RingSpec::Int))
            .collect()
    }

    /// The single polynomial as a dense univariate one, if there is one unknown.
    fn univariate(&self) -> Result<Option<IntPoly>> {
        if self.polys.len() != 1 || self.vars.len() != 1 {
            return Ok(None);
        }
        let f = &self.mpolys()?[0];
        let deg = f.terms.iter().map(|m| m.exps[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for m in &f.terms {
            coeffs[m.exps[0] as usize] = m.coef.as_int().expect("int").clone();
        }
        Ok(Some(IntPoly::new(coeffs)))
    }
}

fn big_pow(p: u64, q: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), q as usize)
}

fn vanishes_mod(fs: &[MPoly], x: &[BigInt], m: &BigInt) -> bool {
    let vals: Vec<Elem> = x.iter().map(|v| Elem::Int(v.clone())).collect();
    fs.iter().all(|f| {
        let v = f.eval(&vals, &RingSpec::Int);
        v.as_int().expect("int").mod_floor(m).is_zero()
    })
}

/// Solutions modulo `p^q` lifted from those modulo `p^(q-1)`, which is exact
/// because every solution reduces to one at the previous level.
struct LiftScan {
    p: u64,
    r: usize,
    q: u32,
    sols: Vec<Vec<BigInt>>,
}

impl LiftScan {
    fn new(p: u64, r: usize) -> LiftScan {
        LiftScan { p, r, q: 0, sols: vec![vec![BigInt::zero(); r]] }
    }

    fn step(&mut self, fs: &[MPoly], node_limit: u64) -> Result<()> {
        let work = (self.sols.len() as u128).saturating_mul((self.p as u128).saturating_pow(self.r as u32));
        if work > node_limit as u128 {
            return Err(Error::InfeasibleScan(format!(
                "{work} candidates modulo {}^{}",
                self.p,
                self.q + 1
            )));
        }
        let step = big_pow(self.p, self.q);
        let m = big_pow(self.p, self.q + 1);
        let mut next = Vec::new();
        for base in &self.sols {
            let mut digits = vec![0u64; self.r];
            loop {
                let x: Vec<BigInt> =
                    base.iter().zip(&digits).map(|(b, &d)| b + &step * BigInt::from(d)).collect();
                if vanishes_mod(fs, &x, &m) {
                    next.push(x);
                }
                let mut i = 0;
                while i < self.r {
                    digits[i] += 1;
                    if digits[i] < self.p {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == self.r {
                    break;
                }
            }
        }
        next.sort();
        self.sols = next;
        self.q += 1;
        Ok(())
    }
}

fn strings(x: &[BigInt]) -> Vec<String> {
    x.iter().map(|v| v.to_string()).collect()
}

/// Decide solvability modulo `p^q` for `q = 1..=q_max` (Hensel lifting from a
/// simple root when the system is one univariate monic polynomial, otherwise
/// lifting scans), then solvability in `Z`: exactly for `X^k - c` by an integer
/// root test, by bounded search otherwise.
pub fn phi_experiment(sys: &PhiSystem, q_max: u32, budget: &SearchBudget) -> Result<Report> {
    let p = sys.p;
    let fs = sys.mpolys()?;
    let uni = sys.univariate()?;
    let simple_root = uni.as_ref().filter(|f| f.is_monic()).and_then(|f| {
        (0..p).map(BigInt::from).find(|x| hensel_lift(f, p, x, 1).is_ok())
    });

    let mut scan = LiftScan::new(p, sys.vars.len());
    let mut scan_alive = true;
    let mut levels = Vec::new();
    for q in 1..=q_max {
        let scan_ok = scan_alive
            && match scan.step(&fs, budget.node_limit) {
                Ok(()) => true,
                Err(_) if simple_root.is_some() => {
                    scan_alive = false;
                    false
                }
                Err(e) => return Err(e),
            };
        let small = (p as u128).saturating_pow(q * sys.vars.len() as u32) <= CROSS_CHECK_LIMIT as u128;
        let level = match (&simple_root, &uni) {
            (Some(x0), Some(f)) => {
                let x = hensel_lift(f, p, x0, q)?;
                let mut method = "hensel".to_string();
                if scan_ok && small {
                    if !scan.sols.contains(&vec![x.clone()]) {
                        return Err(Error::InvalidArgument(format!(
                            "Hensel lift {x} not found by scan modulo {p}^{q}"
                        )));
                    }
                    method.push_str("+scan");
                }
                PhiLevel { q, solvable: true, method, witness: Some(vec![x.to_string()]) }
            }
            _ => PhiLevel {
                q,
                solvable: !scan.sols.is_empty(),
                method: "scan".into(),
                witness: scan.sols.first().map(|x| strings(x)),
            },
        };
        levels.push(level);
    }

    let global = global_decision(sys, uni.as_ref(), budget)?;
    let all_levels = q_max >= 1 && levels.iter().all(|l| l.solvable);
    let fails = all_levels && global.status == "unsolvable";
    let conclusion = if let Some(l) = levels.iter().find(|l| !l.solvable) {
        format!("unsolvable modulo {p}^{}; hypothesis chain broken, no conclusion", l.q)
    } else if global.status == "solvable" {
        "solvable in Z; no PHI violation witnessed".to_string()
    } else if fails {
        format!("PHI(Z,({p})) fails")
    } else if q_max == 0 {
        "inconclusive".to_string()
    } else {
        "no integer solution within budget; no claim".to_string()
    };

    let system: Vec<String> = sys.polys.iter().map(|f| print_term(f, &RingSpec::Int)).collect();
    let mut report = Report::empty(format!("PHI experiment, p={p}, Q={q_max}"), budget);
    report.phi = Some(PhiReport { system, p, q_max, levels, global, fails });
    report.conclusion = conclusion;
    Ok(report)
}

/// `X^k - c` with `k >= 1`, as `(k, c)`.
fn pure_power(f: &IntPoly) -> Option<(u32, BigInt)> {
    let k = f.degree()?;
    if k == 0 || !f.is_monic() || f.coeffs[1..k].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some((k as u32, -f.coeffs[0].clone()))
}

fn global_decision(sys: &PhiSystem, uni: Option<&IntPoly>, budget: &SearchBudget) -> Result<PhiGlobal> {
    if let Some((k, c)) = uni.and_then(pure_power) {
        return Ok(match exact_root(&c, k) {
            Some(r) => PhiGlobal {
                status: "solvable".into(),
                method: format!("exact {k}-th root"),
                witness: Some(vec![r.to_string()]),
            },
            None => PhiGlobal {
                status: "unsolvable".into(),
                method: format!("exact {k}-th root test: {c} is not a {k}-th power"),
                witness: None,
            },
        });
    }
    let zero = Term::Const(Elem::Int(BigInt::zero()));
    let phi = Formula::exists(
        sys.vars.clone(),
        Formula::and(sys.polys.iter().map(|f| Formula::Eq(f.clone(), zero.clone())).collect()),
    );
    let out = search(&RingSpec::Int, &phi, &Assignment::new(), budget)?;
    Ok(match out.verdict {
        Verdict::True { witness, .. } => PhiGlobal {
            status: "solvable".into(),
            method: "bounded search".into(),
            witness: Some(witness.iter().map(|(_, e)| RingSpec::Int.encode(e)).collect()),
        },
        Verdict::FalseExhaustive => PhiGlobal {
            status: "unsolvable".into(),
            method: "search refuted every branch".into(),
            witness: None,
        },
        Verdict::Unknown { height } => PhiGlobal {
            status: "unknown".into(),
            method: format!("no solution up to height {height}"),
            witness: None,
        },
    })
}

/// Evaluate an integer certificate for the nonzero elements at `t = p, p^2, ..., p^Q`
/// and at `t = 0`. Witnesses along the sequence together with none at `0` show a
/// truth set containing a sequence that tends to `0` `p`-adically but not its limit.
pub fn closedness_demo(c: &Certificate, p: u64, q_max: u32, budget: &SearchBudget) -> Result<Report> {
    if c.ring != RingSpec::Int || c.target != TargetSet::Nonzero {
        return Err(Error::InvalidArgument(
            "closedness demo needs an integer certificate for the nonzero elements".into(),
        ));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let ring = &c.ring;
    let mut inputs: Vec<Elem> = (1..=q_max).map(|q| Elem::Int(big_pow(p, q))).collect();
    inputs.push(Elem::Int(BigInt::zero()));
    let mut report = Report::empty(format!("closedness demo, p={p}, Q={q_max}"), budget);
    report.assumptions = c.assumptions.clone();
    let mut seq_true = true;
    let mut zero_true = false;
    for a in &inputs {
        let env = Assignment::from([(free_var(), a.clone())]);
        let out = search(ring, &c.formula, &env, budget)?;
        let expected = !ring.is_zero(a);
        report.tally.count(&out.verdict);
        let wrong = match out.verdict {
            Verdict::True { .. } => !expected,
            Verdict::FalseExhaustive => expected,
            Verdict::Unknown { .. } => false,
        };
        if wrong {
            report.falsifications.push(Falsification {
                input: ring.encode(a),
                verdict: out.verdict.label().into(),
                expected,
            });
        }
        if expected {
            seq_true &= out.verdict.is_true();
        } else {
            zero_true = out.verdict.is_true();
        }
        report.verdicts.push(VerdictEntry::new(ring, a, &out, Some(expected)));
    }
    report.conclusion = if q_max == 0 || !seq_true || zero_true {
        "inconclusive".to_string()
    } else {
        format!("truth set not {p}-adically closed")
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cert_int_classic;
    use crate::formula::parse_term;

    fn system(poly: &str, p: u64) -> PhiSystem {
        PhiSystem::new(vec![parse_term(poly, &RingSpec::Int).unwrap()], vec![VarId::new("X")], p).unwrap()
    }

    #[test]
    fn square_of_eight_mod_seven() {
        let r = phi_experiment(&system("(+ (* X X) -8)", 7), 12, &SearchBudget::default()).unwrap();
        let phi = r.phi.as_ref().unwrap();
        assert!(phi.levels.iter().all(|l| l.solvable));
        assert_eq!(phi.levels[0].witness, Some(vec!["1".to_string()]));
        assert_eq!(phi.global.status, "unsolvable");
        assert!(phi.fails);
        assert_eq!(r.conclusion, "PHI(Z,(7)) fails");
    }

    #[test]
    fn nine_has_a_root_and_seven_breaks_the_chain() {
        let r = phi_experiment(&system("(+ (* X X) -9)", 7), 6, &SearchBudget::default()).unwrap();
        assert_eq!(r.phi.as_ref().unwrap().global.witness, Some(vec!["3".to_string()]));
        assert!(!r.phi.unwrap().fails);
        let r = phi_experiment(&system("(+ (* X X) -7)", 7), 3, &SearchBudget::default()).unwrap();
        let phi = r.phi.unwrap();
        assert_eq!(phi.levels.iter().map(|l| l.solvable).collect::<Vec<_>>(), vec![true, false, false]);
        assert!(r.conclusion.contains("no conclusion"));
    }

    #[test]
    fn infeasible_scan_without_hensel() {
        let sys = PhiSystem::new(
            vec![parse_term("(+ (* X X) (* Y Y) -7)", &RingSpec::Int).unwrap()],
            vec![VarId::new("X"), VarId::new("Y")],
            101,
        )
        .unwrap();
        let tight = SearchBudget::new(vec![2], 1000).unwrap();
        assert!(matches!(phi_experiment(&sys, 3, &tight), Err(Error::InfeasibleScan(_))));
    }

    #[test]
    fn closedness_for_classic_certificate() {
        let r = closedness_demo(&cert_int_classic().unwrap(), 7, 3, &SearchBudget::default()).unwrap();
        assert_eq!(r.conclusion, "truth set not 7-adically closed");
        assert_eq!(r.verdicts.last().unwrap().verdict, "unknown");
        let r0 = closedness_demo(&cert_int_classic().unwrap(), 7, 0, &SearchBudget::default()).unwrap();
        assert_eq!(r0.conclusion, "inconclusive");
    }
}
