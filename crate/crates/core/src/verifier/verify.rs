//! Certificate verification and truth sets.

use rayon::prelude::*;

use super::direct::{eval_direct, Assignment};
use super::report::{Falsification, Report, Tally, VerdictEntry};
use super::search::{search, SearchBudget, Verdict};
use crate::constructions::{free_var, Certificate};
use crate::error::{Error, Result};
use crate::formula::{Formula, VarId};
use crate::rings::{Elem, RingSpec};

/// Verdict of `phi` under `env`; see [`search`].
pub fn eval_formula(ring: &RingSpec, phi: &Formula, env: &Assignment, budget: &SearchBudget) -> Result<Verdict> {
    Ok(search(ring, phi, env, budget)?.verdict)
}

fn the_free_var(phi: &Formula) -> Result<VarId> {
    let free = phi.free_vars();
    if free.len() > 1 {
        return Err(Error::InvalidArgument(format!("{} free variables, expected at most one", free.len())));
    }
    Ok(free.into_iter().next().unwrap_or_else(free_var))
}

/// Exact truth set of a formula in at most one free variable over a finite ring,
/// in canonical element order. Each element is decided by the search engine,
/// which exhausts finite rings; if it runs out of nodes, full quantifier
/// expansion decides instead.
pub fn truth_set_exhaustive(ring: &RingSpec, phi: &Formula) -> Result<Vec<Elem>> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let v = the_free_var(phi)?;
    let budget = SearchBudget::default();
    let flags = ring
        .enumerate(0)
        .into_par_iter()
        .map(|a| {
            let env = Assignment::from([(v.clone(), a.clone())]);
            let inside = match search(ring, phi, &env, &budget)?.verdict {
                Verdict::True { .. } => true,
                Verdict::FalseExhaustive => false,
                Verdict::Unknown { .. } => eval_direct(phi, ring, &env)?,
            };
            Ok((a, inside))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(flags.into_iter().filter(|(_, b)| *b).map(|(a, _)| a).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckConfig {
    /// Every element of a finite ring.
    Exhaustive,
    Elements(Vec<Elem>),
}

/// Compare the certificate's verdicts with its target's membership oracle.
///
/// A falsification is an element with verdict `true` outside the target, or
/// verdict `false` inside it. Unknown verdicts are tallied and never count
/// either way.
pub fn verify_cert(c: &Certificate, config: &CheckConfig, budget: &SearchBudget) -> Result<Report> {
    let ring = &c.ring;
    let elements = match config {
        CheckConfig::Exhaustive => {
            if !ring.is_finite() {
                return Err(Error::NotFinite(ring.to_string()));
            }
            ring.enumerate(0)
        }
        CheckConfig::Elements(es) => {
            for e in es {
                ring.check(e)?;
            }
            es.clone()
        }
    };
    let t = free_var();
    let rows = elements
        .par_iter()
        .map(|a| {
            let env = Assignment::from([(t.clone(), a.clone())]);
            let out = search(ring, &c.formula, &env, budget)?;
            let expected = c.target.contains(ring, a)?;
            Ok((a.clone(), out, expected))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = Report::empty(format!("{} certificate over {ring}", c.provenance.rule()), budget);
    report.assumptions = c.assumptions.clone();
    let mut tally = Tally::default();
    let mut truth = Vec::new();
    for (a, out, expected) in &rows {
        tally.count(&out.verdict);
        let wrong = match out.verdict {
            Verdict::True { .. } => !expected,
            Verdict::FalseExhaustive => *expected,
            Verdict::Unknown { .. } => false,
        };
        if wrong {
            report.falsifications.push(Falsification {
                input: ring.encode(a),
                verdict: out.verdict.label().to_string(),
                expected: *expected,
            });
        }
        if out.verdict.is_true() {
            truth.push(ring.encode(a));
        }
        report.verdicts.push(VerdictEntry::new(ring, a, out, Some(*expected)));
    }
    let exhaustive = *config == CheckConfig::Exhaustive && tally.unknown == 0;
    report.conclusion = if !report.falsifications.is_empty() {
        format!("falsified at {} element(s)", report.falsifications.len())
    } else if exhaustive {
        "truth set equals target".to_string()
    } else if tally.unknown > 0 {
        format!("no falsification; {} unknown", tally.unknown)
    } else {
        "no falsification".to_string()
    };
    if exhaustive {
        report.truth_set = Some(truth);
    }
    report.tally = tally;
    Ok(report)
}
