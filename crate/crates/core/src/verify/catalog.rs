use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::questions::{scan_group, QuestionScan};
use super::report::{Status, VerificationReport};
use super::theorems::check;
use crate::arith;
use crate::automorphisms::{automorphism_group, is_class_preserving, is_coleman, outer_key, Automorphism};
use crate::caps::Caps;
use crate::constructors::catalog::{standard_catalog, CatalogEntry};
use crate::constructors::{build_with, GroupSpec};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::{commutator_violations, d_subgroup, nilpotent_by_cyclic_normals, presentation_from};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl InvariantCheck {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub name: String,
    pub order: usize,
    pub spec: GroupSpec,
    pub out_col_order: Option<usize>,
    pub out_c_order: Option<usize>,
    pub out_c_cap_out_col_order: Option<usize>,
    pub invariants: Vec<InvariantCheck>,
    pub reports: Vec<VerificationReport>,
    pub questions: QuestionScan,
    pub cap_notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRun {
    pub entries: Vec<CatalogReport>,
    pub contradictions: usize,
    pub failed_invariants: usize,
    pub question_counterexamples: usize,
}

impl CatalogRun {
    /// 2 when any theorem is contradicted or any invariant fails, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.contradictions > 0 || self.failed_invariants > 0 {
            2
        } else {
            0
        }
    }

    pub fn without_timing(mut self) -> Self {
        for e in &mut self.entries {
            for r in &mut e.reports {
                r.timing_ms = 0;
            }
        }
        self
    }

    /// One row per group: order, outer quotient orders and status counts.
    pub fn summary_table(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut out = format!(
            "{:<24} {:>6} {:>8} {:>6} {:>9} {:>6} {:>4} {:>4} {:>4} {:>4}\n",
            "group", "order", "|Outcol|", "|Outc|", "|Outc∩col|", "inv", "pass", "n/a", "inc", "CONT"
        );
        for e in &self.entries {
            let count = |s: Status| e.reports.iter().filter(|r| r.status == s).count();
            let inv_ok = e.invariants.iter().filter(|i| i.passed).count();
            let _ = writeln!(
                out,
                "{:<24} {:>6} {:>8} {:>6} {:>9} {:>6} {:>4} {:>4} {:>4} {:>4}",
                e.name,
                e.order,
                opt(e.out_col_order),
                opt(e.out_c_order),
                opt(e.out_c_cap_out_col_order),
                format!("{inv_ok}/{}", e.invariants.len()),
                count(Status::Passed),
                count(Status::NotApplicable),
                count(Status::Incomplete),
                count(Status::Contradiction),
            );
        }
        let _ = writeln!(
            out,
            "contradictions: {}, failed invariants: {}, question counterexamples: {}",
            self.contradictions, self.failed_invariants, self.question_counterexamples
        );
        out
    }
}

/// Theorem checks run with default parameters on a catalog group.
pub fn default_theorems(spec: &GroupSpec) -> Vec<&'static str> {
    let mut ids = vec![
        "T2.1", "T2.2", "T2.9a", "T2.10", "L1.6", "T1.7", "T1.8", "C4.2", "T4.1", "T4.3", "T4.4", "T3.7",
    ];
    match spec {
        GroupSpec::Holomorph { .. } => ids.extend(["T2.6", "C2.7"]),
        GroupSpec::Wreath { .. } => ids.extend(["C2.4", "C2.5"]),
        _ => {}
    }
    ids
}

/// Runs the invariant suite, the default theorem checks and the question
/// scan over the standard catalog up to `max_order`.
pub fn run_catalog(max_order: usize, caps: &Caps) -> Result<CatalogRun> {
    let catalog = standard_catalog(max_order);
    let mut entries: Vec<CatalogReport> = catalog
        .par_iter()
        .map(|e| run_entry(e, caps))
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    let contradictions = entries
        .iter()
        .flat_map(|e| &e.reports)
        .filter(|r| r.status == Status::Contradiction)
        .count();
    let failed_invariants = entries
        .iter()
        .flat_map(|e| &e.invariants)
        .filter(|i| !i.passed)
        .count();
    let question_counterexamples = entries.iter().map(|e| e.questions.counterexamples().count()).sum();
    Ok(CatalogRun {
        entries,
        contradictions,
        failed_invariants,
        question_counterexamples,
    })
}

fn run_entry(entry: &CatalogEntry, caps: &Caps) -> Result<CatalogReport> {
    let built = build_with(&entry.spec, caps)?;
    let g = &built.group;
    let mut report = CatalogReport {
        name: entry.name.clone(),
        order: g.order(),
        spec: entry.spec.clone(),
        out_col_order: None,
        out_c_order: None,
        out_c_cap_out_col_order: None,
        invariants: structural_invariants(g)?,
        reports: vec![],
        questions: scan_group(&entry.name, g, caps)?,
        cap_notes: vec![],
    };
    match automorphism_group(g, caps) {
        Ok(autos) => {
            let flags: Vec<(bool, bool)> = autos
                .iter()
                .map(|a| (is_class_preserving(g, a), is_coleman(g, a)))
                .collect();
            let outer = |f: fn(&(bool, bool)) -> bool| {
                flags.iter().filter(|x| f(x)).count() * g.center().order() / g.order()
            };
            report.out_c_order = Some(outer(|x| x.0));
            report.out_col_order = Some(outer(|x| x.1));
            report.out_c_cap_out_col_order = Some(outer(|x| x.0 && x.1));
            report.invariants.extend(automorphism_invariants(g, &autos, &flags)?);
        }
        Err(e @ Error::OrderCapExceeded { .. }) => report.cap_notes.push(e.to_string()),
        Err(e) => return Err(e),
    }
    for id in default_theorems(&entry.spec) {
        report.reports.push(check(id, &entry.spec, None, caps)?);
    }
    Ok(report)
}

fn structural_invariants(g: &FiniteGroup) -> Result<Vec<InvariantCheck>> {
    let mut out = Vec::new();
    let assoc = g.check_associativity();
    out.push(InvariantCheck::new(
        "associativity",
        assoc.is_none(),
        assoc.map_or(String::new(), |t| format!("fails at {t:?}")),
    ));
    let normals = g.normal_subgroups()?;
    let bad = normals.iter().find(|n| !g.order().is_multiple_of(n.order()));
    out.push(InvariantCheck::new(
        "Lagrange on normal subgroups",
        bad.is_none(),
        bad.map_or(String::new(), |n| format!("normal subgroup of order {}", n.order())),
    ));
    let mut sylow_ok = true;
    let mut detail = String::new();
    for (p, s) in g.sylows() {
        let count = g.sylow_count(*p)?;
        if s.order() as u64 != arith::p_part(g.order() as u64, *p) || count as u64 % p != 1 {
            sylow_ok = false;
            detail = format!("p = {p}: |P| = {}, n_p = {count}", s.order());
        }
    }
    out.push(InvariantCheck::new("Sylow orders and counts", sylow_ok, detail));
    let o = g.order() as u64;
    let disjoint = g.primes().iter().all(|&p| {
        g.core_subgroups(p)
            .map(|c| c.o_p.intersection(&c.o_p_prime, g).is_trivial())
            .unwrap_or(false)
    });
    out.push(InvariantCheck::new("O_p ∩ O_p' = 1", disjoint, format!("|G| = {o}")));
    Ok(out)
}

fn automorphism_invariants(g: &FiniteGroup, autos: &[Automorphism], flags: &[(bool, bool)]) -> Result<Vec<InvariantCheck>> {
    let mut out = Vec::new();
    let normals = g.normal_subgroups()?;
    let moved = autos
        .iter()
        .zip(flags)
        .filter(|(_, f)| f.0 || f.1)
        .find(|(a, _)| !normals.iter().all(|n| a.stabilizes(n)));
    out.push(InvariantCheck::new(
        "Coleman and class-preserving automorphisms fix every normal subgroup",
        moved.is_none(),
        moved.map_or(String::new(), |(a, _)| format!("{:?}", a.images())),
    ));
    let order_ok = |count: usize| arith::prime_divisors(count as u64).iter().all(|p| g.primes().contains(p));
    let n_c = flags.iter().filter(|f| f.0).count();
    let n_col = flags.iter().filter(|f| f.1).count();
    out.push(InvariantCheck::new(
        "primes of |Aut_c| and |Aut_col| divide |G|",
        order_ok(n_c) && order_ok(n_col),
        format!("|Aut_c| = {n_c}, |Aut_col| = {n_col}"),
    ));
    let inn = g.order() / g.center().order();
    out.push(InvariantCheck::new(
        "Inn(G) divides |Aut_c| and |Aut_col|",
        n_c % inn == 0 && n_col % inn == 0,
        format!("|Inn| = {inn}"),
    ));
    let col: Vec<Automorphism> = autos
        .iter()
        .zip(flags)
        .filter(|(_, f)| f.1)
        .map(|(a, _)| a.clone())
        .collect();
    let mut keys: Vec<_> = col.iter().map(|a| outer_key(g, a)).collect();
    keys.sort_unstable();
    keys.dedup();
    out.push(InvariantCheck::new(
        "outer keys count Aut_col / Inn",
        keys.len() * inn == n_col,
        format!("{} classes", keys.len()),
    ));
    let mut structure_ok = true;
    let mut detail = String::new();
    for n in nilpotent_by_cyclic_normals(g)? {
        let pres = presentation_from(g, &n)?;
        for i in 0..pres.k() {
            if let Err(e) = d_subgroup(&pres, i) {
                structure_ok = false;
                detail = format!("N of order {}: {e}", n.order());
            }
        }
        let v = commutator_violations(&pres, &col);
        if let Some(first) = v.first() {
            structure_ok = false;
            detail = format!("N of order {}: {} fails", n.order(), first.condition);
        }
    }
    out.push(InvariantCheck::new(
        "D_i closure and commutator conditions for nilpotent-by-cyclic normals",
        structure_ok,
        detail,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_is_clean() {
        let run = run_catalog(24, &Caps::default()).unwrap().without_timing();
        assert!(run.entries.len() > 10);
        assert_eq!(run.exit_code(), 0, "{}", run.summary_table());
        assert_eq!(run.question_counterexamples, 0);
        let names: Vec<&str> = run.entries.iter().map(|e| e.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
    }
}
