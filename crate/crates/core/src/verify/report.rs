use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automorphisms::Automorphism;
use crate::constructors::GroupSpec;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionCheck {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Passed,
    NotApplicable,
    Contradiction,
    Incomplete,
}

/// Outcome of one theorem check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub group: GroupSpec,
    pub hypotheses: Vec<HypothesisCheck>,
    pub conclusion: Option<ConclusionCheck>,
    pub status: Status,
    pub timing_ms: u64,
    pub cap_notes: Vec<String>,
}

impl VerificationReport {
    /// Exit status for the command line: 2 on contradiction, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Contradiction {
            2
        } else {
            0
        }
    }

    pub fn without_timing(mut self) -> Self {
        self.timing_ms = 0;
        self
    }
}

pub(crate) enum Outcome {
    Conclusion(bool, String),
    Inapplicable,
}

/// Accumulates hypothesis checks for one report.
pub(crate) struct ReportBuilder {
    theorem: String,
    group: GroupSpec,
    hypotheses: Vec<HypothesisCheck>,
    cap_notes: Vec<String>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(theorem: &str, group: &GroupSpec) -> Self {
        Self {
            theorem: theorem.to_string(),
            group: group.clone(),
            hypotheses: vec![],
            cap_notes: vec![],
            start: Instant::now(),
        }
    }

    /// Records a hypothesis. Failed checks must carry a non-null witness.
    pub fn hyp(&mut self, name: impl Into<String>, passed: bool, witness: Value) -> bool {
        debug_assert!(passed || !witness.is_null(), "failed hypothesis without witness");
        self.hypotheses.push(HypothesisCheck {
            name: name.into(),
            passed,
            witness,
        });
        passed
    }

    pub fn all_passed(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.cap_notes.push(note.into());
    }

    pub fn finish(mut self, outcome: Result<Outcome>) -> Result<VerificationReport> {
        let (conclusion, status) = match outcome {
            Ok(Outcome::Conclusion(passed, detail)) if self.all_passed() => (
                Some(ConclusionCheck { passed, detail }),
                if passed { Status::Passed } else { Status::Contradiction },
            ),
            Ok(_) => (None, Status::NotApplicable),
            Err(e @ Error::OrderCapExceeded { .. }) => {
                self.cap_notes.push(e.to_string());
                (None, Status::Incomplete)
            }
            Err(e) => return Err(e),
        };
        let status = if status == Status::Passed && !self.all_passed() {
            Status::NotApplicable
        } else {
            status
        };
        Ok(VerificationReport {
            theorem: self.theorem,
            group: self.group,
            hypotheses: self.hypotheses,
            conclusion,
            status,
            timing_ms: self.start.elapsed().as_millis() as u64,
            cap_notes: self.cap_notes,
        })
    }
}

pub(crate) fn elem_witness(g: &FiniteGroup, x: Elem) -> Value {
    json!({ "element": x, "label": g.label(x) })
}

pub(crate) fn subgroup_witness(h: &Subgroup) -> Value {
    json!({ "order": h.order(), "generators": h.generators() })
}

/// An automorphism through its generator images.
pub(crate) fn automorphism_witness(g: &FiniteGroup, sigma: &Automorphism) -> Value {
    let pairs: Vec<[Elem; 2]> = g.generating_sequence().iter().map(|&s| [s, sigma.apply(s)]).collect();
    json!({ "generator_images": pairs })
}

/// Human-readable name of an abelian group from its elementary divisors.
pub fn invariants_name(inv: &[u64]) -> String {
    if inv.is_empty() {
        "1".to_string()
    } else {
        inv.iter().map(|q| format!("C{q}")).collect::<Vec<_>>().join(" x ")
    }
}
