//! Differential test of the normal form on random formulas over finite rings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::direct::{eval_direct, Assignment};
use super::report::{EquivalenceReport, Report};
use super::search::SearchBudget;
use crate::constructions::free_var;
use crate::error::{Error, Result};
use crate::formula::{print_formula, union_normal_form, Formula, Term, VarId};
use crate::rings::{Elem, RingSpec};

const MAX_DEPTH: u32 = 3;
const MAX_BINDERS: usize = 3;
/// Binder names; reuse across quantifiers exercises shadowing, `t` included.
const NAMES: [&str; 4] = ["x", "y", "z", "t"];

struct Gen<'a> {
    rng: ChaCha8Rng,
    elems: &'a [Elem],
}

impl Gen<'_> {
    fn formula(&mut self, depth: u32, scope: &mut Vec<VarId>, binders: &mut usize) -> Formula {
        let roll = if depth == 0 { 0 } else { self.rng.gen_range(0..10) };
        match roll {
            0..=3 => self.atom(scope),
            4 | 5 => {
                let n = self.rng.gen_range(0..=3);
                Formula::And((0..n).map(|_| self.formula(depth - 1, scope, binders)).collect())
            }
            6 | 7 => {
                let n = self.rng.gen_range(0..=3);
                Formula::Or((0..n).map(|_| self.formula(depth - 1, scope, binders)).collect())
            }
            _ => {
                if *binders == 0 {
                    return self.atom(scope);
                }
                let k = self.rng.gen_range(1..=(*binders).min(2));
                *binders -= k;
                let vars: Vec<VarId> =
                    (0..k).map(|_| VarId::new(NAMES[self.rng.gen_range(0..NAMES.len())])).collect();
                let mark = scope.len();
                scope.extend(vars.iter().cloned());
                let body = self.formula(depth - 1, scope, binders);
                scope.truncate(mark);
                Formula::Exists(vars, Box::new(body))
            }
        }
    }

    fn atom(&mut self, scope: &[VarId]) -> Formula {
        let (l, r) = (self.term(2, scope), self.term(2, scope));
        if self.rng.gen_bool(0.3) {
            Formula::Neq(l, r)
        } else {
            Formula::Eq(l, r)
        }
    }

    fn term(&mut self, depth: u32, scope: &[VarId]) -> Term {
        let roll = if depth == 0 { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..5) };
        match roll {
            0 => Term::Const(self.elems[self.rng.gen_range(0..self.elems.len())].clone()),
            1 => Term::Var(scope[self.rng.gen_range(0..scope.len())].clone()),
            2 => Term::Sum(vec![self.term(depth - 1, scope), self.term(depth - 1, scope)]),
            3 => Term::Prod(vec![self.term(depth - 1, scope), self.term(depth - 1, scope)]),
            _ => Term::neg(self.term(depth - 1, scope)),
        }
    }
}

/// A random formula in the free variable `t`: depth at most 3, at most 3 bound
/// variables, disequations included.
pub fn random_formula(ring: &RingSpec, rng: &mut ChaCha8Rng) -> Formula {
    let elems = ring.enumerate(0);
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(rng.gen()), elems: &elems };
    let mut binders = MAX_BINDERS;
    g.formula(MAX_DEPTH, &mut vec![free_var()], &mut binders)
}

/// Compare truth sets before and after [`union_normal_form`] on `count` random
/// formulas, both by full quantifier expansion.
pub fn random_formula_equivalence(ring: &RingSpec, seed: u64, count: usize) -> Result<Report> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems = ring.enumerate(0);
    let mut mismatches = 0;
    let mut examples = Vec::new();
    for _ in 0..count {
        let phi = random_formula(ring, &mut rng);
        let nf = union_normal_form(&phi).to_formula();
        let mut same = true;
        for a in &elems {
            let env = Assignment::from([(free_var(), a.clone())]);
            if eval_direct(&phi, ring, &env)? != eval_direct(&nf, ring, &env)? {
                same = false;
                break;
            }
        }
        if !same {
            mismatches += 1;
            if examples.len() < 5 {
                examples.push(print_formula(&phi, ring));
            }
        }
    }
    let mut report = Report::empty(format!("normal form differential test over {ring}"), &SearchBudget::default());
    report.seed = Some(seed);
    report.conclusion = format!("{mismatches} mismatches in {count} formulas");
    report.equivalence = Some(EquivalenceReport { count, mismatches, examples });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_seed() {
        let r = RingSpec::Zmod(3);
        let a = random_formula_equivalence(&r, 3, 20).unwrap();
        let b = random_formula_equivalence(&r, 3, 20).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.equivalence.unwrap().mismatches, 0);
    }

    #[test]
    fn formulas_respect_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f = random_formula(&RingSpec::Zmod(6), &mut rng);
            assert!(f.free_vars().iter().all(|v| v.as_str() == "t"));
            let bound: usize = count_binders(&f);
            assert!(bound <= MAX_BINDERS);
        }
    }

    fn count_binders(f: &Formula) -> usize {
        match f {
            Formula::Eq(..) | Formula::Neq(..) => 0,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(count_binders).sum(),
            Formula::Exists(vs, b) => vs.len() + count_binders(b),
        }
    }
}
