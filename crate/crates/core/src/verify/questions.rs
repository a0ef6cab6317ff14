use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphisms::out_col;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuestionStatus {
    /// Premise and conclusion both hold.
    Holds,
    /// The premise fails.
    Vacuous,
    /// The premise holds and the conclusion fails.
    Counterexample,
}

impl QuestionStatus {
    fn of(premise: bool, conclusion: bool) -> Self {
        match (premise, conclusion) {
            (false, _) => Self::Vacuous,
            (true, true) => Self::Holds,
            (true, false) => Self::Counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionCheck {
    /// The prime, for the per-prime questions.
    pub p: Option<u64>,
    pub premise: bool,
    pub conclusion: bool,
    pub status: QuestionStatus,
}

impl QuestionCheck {
    fn new(p: Option<u64>, premise: bool, conclusion: bool) -> Self {
        Self {
            p,
            premise,
            conclusion,
            status: QuestionStatus::of(premise, conclusion),
        }
    }
}

/// The three questions on one group.
///
/// * Q1, per prime `p`: no chief factor of order `p` ⇒ `p ∤ |Out_col(G)|`.
/// * Q2, per prime `p`: `O_{p'}(G) = 1` ⇒ `Out_col(G) = 1`.
/// * Q3: a unique minimal normal subgroup ⇒ `Out_col(G) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionScan {
    pub group: String,
    pub order: usize,
    pub out_col_order: Option<usize>,
    pub q1: Vec<QuestionCheck>,
    pub q2: Vec<QuestionCheck>,
    pub q3: Option<QuestionCheck>,
    pub cap_note: Option<String>,
}

impl QuestionScan {
    pub fn counterexamples(&self) -> impl Iterator<Item = (&'static str, &QuestionCheck)> {
        let q1 = self.q1.iter().map(|c| ("Q1", c));
        let q2 = self.q2.iter().map(|c| ("Q2", c));
        let q3 = self.q3.iter().map(|c| ("Q3", c));
        q1.chain(q2)
            .chain(q3)
            .filter(|(_, c)| c.status == QuestionStatus::Counterexample)
    }
}

pub fn scan_group(name: &str, g: &FiniteGroup, caps: &Caps) -> Result<QuestionScan> {
    let mut scan = QuestionScan {
        group: name.to_string(),
        order: g.order(),
        out_col_order: None,
        q1: vec![],
        q2: vec![],
        q3: None,
        cap_note: None,
    };
    let oc = match out_col(g, caps) {
        Ok(q) => q.order(),
        Err(e @ Error::OrderCapExceeded { .. }) => {
            scan.cap_note = Some(e.to_string());
            return Ok(scan);
        }
        Err(e) => return Err(e),
    };
    scan.out_col_order = Some(oc);
    let series = g.chief_series()?;
    let factor_orders: Vec<usize> = series.windows(2).map(|w| w[1].order() / w[0].order()).collect();
    for &p in g.primes() {
        let no_cp_factor = !factor_orders.contains(&(p as usize));
        scan.q1.push(QuestionCheck::new(Some(p), no_cp_factor, !(oc as u64).is_multiple_of(p)));
        let o_p_prime = g.core_subgroups(p)?.o_p_prime;
        scan.q2.push(QuestionCheck::new(Some(p), o_p_prime.is_trivial(), oc == 1));
    }
    let unique_minimal = g.minimal_normal_subgroups()?.len() == 1;
    scan.q3 = Some(QuestionCheck::new(None, unique_minimal, oc == 1));
    Ok(scan)
}

/// Scans named groups in parallel; results are sorted by name.
pub fn scan_questions(groups: &[(String, FiniteGroup)], caps: &Caps) -> Result<Vec<QuestionScan>> {
    let mut out: Vec<QuestionScan> = groups
        .par_iter()
        .map(|(name, g)| scan_group(name, g, caps))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.group.cmp(&b.group));
    Ok(out)
}
