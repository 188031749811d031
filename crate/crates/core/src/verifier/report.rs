//! Machine-readable verification reports.

use serde::Serialize;

use super::search::{SearchBudget, SearchOutcome, Verdict};
use crate::constructions::Assumption;
use crate::rings::{Elem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub input: String,
    pub verdict: String,
    /// `[variable, value]` pairs in the order of the satisfied block.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(String, String)>>,
    pub heights: Vec<u64>,
    pub nodes: u64,
    /// Membership of the input in the target set, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
}

impl VerdictEntry {
    pub fn new(ring: &RingSpec, input: &Elem, out: &SearchOutcome, expected: Option<bool>) -> VerdictEntry {
        let witness = match &out.verdict {
            Verdict::True { witness, .. } => {
                Some(witness.iter().map(|(v, e)| (v.0.clone(), ring.encode(e))).collect())
            }
            _ => None,
        };
        VerdictEntry {
            input: ring.encode(input),
            verdict: out.verdict.label().to_string(),
            witness,
            heights: out.heights.clone(),
            nodes: out.nodes,
            expected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub input: String,
    pub verdict: String,
    pub expected: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    #[serde(rename = "true")]
    pub true_: usize,
    #[serde(rename = "false")]
    pub false_: usize,
    pub unknown: usize,
}

impl Tally {
    pub fn count(&mut self, v: &Verdict) {
        match v {
            Verdict::True { .. } => self.true_ += 1,
            Verdict::FalseExhaustive => self.false_ += 1,
            Verdict::Unknown { .. } => self.unknown += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetEcho {
    pub heights: Vec<u64>,
    pub node_limit: u64,
}

impl From<&SearchBudget> for BudgetEcho {
    fn from(b: &SearchBudget) -> BudgetEcho {
        BudgetEcho { heights: b.heights.clone(), node_limit: b.node_limit }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiLevel {
    pub q: u32,
    pub solvable: bool,
    /// `hensel`, `scan`, or `hensel+scan` when both ran and agreed.
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiGlobal {
    /// `solvable`, `unsolvable` or `unknown`.
    pub status: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub system: Vec<String>,
    pub p: u64,
    pub q_max: u32,
    pub levels: Vec<PhiLevel>,
    pub global: PhiGlobal,
    /// Every level solvable and no global solution, decided exactly.
    pub fails: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub count: usize,
    pub mismatches: usize,
    /// s-expressions of the first few mismatching formulas.
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub instance: String,
    pub verdicts: Vec<VerdictEntry>,
    pub falsifications: Vec<Falsification>,
    pub tally: Tally,
    /// Exact truth set, for exhaustive runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_set: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<Assumption>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceReport>,
    pub conclusion: String,
    pub budget: BudgetEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Left out unless requested, so that reports are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wallclock_ms: Option<u64>,
}

impl Report {
    /// A report with no rows and an empty conclusion.
    pub fn empty(instance: String, budget: &SearchBudget) -> Report {
        Report {
            instance,
            verdicts: Vec::new(),
            falsifications: Vec::new(),
            tally: Tally::default(),
            truth_set: None,
            assumptions: Vec::new(),
            phi: None,
            equivalence: None,
            conclusion: String::new(),
            budget: budget.into(),
            seed: None,
            wallclock_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.falsifications.is_empty()
            && self.equivalence.as_ref().map_or(true, |e| e.mismatches == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
