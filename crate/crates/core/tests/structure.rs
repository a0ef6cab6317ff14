mod common;

use std::collections::BTreeMap;

use coleman_core::automorphisms::{automorphism_group, is_inner, Automorphism};
use coleman_core::constructors::catalog::abelian_by_cyclic_examples;
use coleman_core::structure::dade_construct;
use coleman_core::structure::{k_automorphisms, pairwise_outer_distinct, predicted_k, presentation_from, TransversalChoice};
use coleman_core::verify::{check, run_catalog, Status};
use coleman_core::{build, Caps, FiniteGroup, GroupSpec};

use common::coleman_all_sylows;

/// Number of elements of each order in `Out_col(G)`, from the definition.
fn out_col_order_profile(g: &FiniteGroup) -> BTreeMap<usize, usize> {
    let col: Vec<Automorphism> = automorphism_group(g, &Caps::default())
        .unwrap()
        .into_iter()
        .filter(|a| coleman_all_sylows(g, a))
        .collect();
    let inn = g.order() / g.center().order();
    let mut profile = BTreeMap::new();
    for sigma in &col {
        let mut power = sigma.clone();
        let mut t = 1;
        while is_inner(g, &power).is_none() {
            power = power.compose(sigma);
            t += 1;
        }
        *profile.entry(t).or_insert(0) += 1;
    }
    // Each coset of Inn was counted once per member.
    profile.values_mut().for_each(|c| *c /= inn);
    profile
}

fn abelian_order_profile(invariants: &[u64]) -> BTreeMap<usize, usize> {
    let spec = GroupSpec::Abelian {
        invariants: invariants.iter().map(|&m| m as usize).collect(),
    };
    let a = build(&spec).unwrap().into_group();
    let mut profile = BTreeMap::new();
    for y in a.elements() {
        *profile.entry(a.element_order(y) as usize).or_insert(0) += 1;
    }
    profile
}

fn instances() -> Vec<(String, GroupSpec, Vec<u64>)> {
    let expected: BTreeMap<&str, Vec<u64>> = [
        ("D30", vec![2]),
        ("(C3xC5):C4", vec![2]),
        ("D42", vec![2]),
        ("(C3xC5xC7):C2", vec![2, 2]),
        ("(C7xC13):C3 partial", vec![]),
        ("(C5xC13):C4 mixed", vec![2]),
    ]
    .into_iter()
    .collect();
    let mut out: Vec<(String, GroupSpec, Vec<u64>)> = abelian_by_cyclic_examples()
        .into_iter()
        .filter_map(|e| expected.get(e.name.as_str()).map(|inv| (e.name.clone(), e.spec, inv.clone())))
        .collect();
    for inv in [vec![2u64], vec![3], vec![2, 2], vec![4]] {
        out.push((format!("Dade{inv:?}"), dade_construct(&inv, 1_000_000).unwrap(), inv));
    }
    out
}

#[test]
fn out_col_of_abelian_by_cyclic_instances() {
    let caps = Caps::default();
    let all = instances();
    assert!(all.len() >= 10);
    for (name, spec, invariants) in all {
        let built = build(&spec).unwrap();
        let g = &built.group;
        let base = built.base.clone().unwrap_or_else(|| {
            // Direct products of Dade factors have no single base.
            panic!("{name}: expected a semidirect construction")
        });
        let pres = presentation_from(g, &base).unwrap();
        let k = predicted_k(&pres, TransversalChoice::Lowest).unwrap();
        let mut predicted = k.invariants.clone().unwrap();
        predicted.retain(|&m| m > 1);
        assert_eq!(predicted, invariants, "{name}: predicted invariants");

        let autos = k_automorphisms(&pres, &k).unwrap();
        assert_eq!(autos.len(), k.order, "{name}");
        assert!(pairwise_outer_distinct(g, &autos), "{name}: K meets Inn");
        assert!(autos.iter().all(|a| coleman_all_sylows(g, a)), "{name}: K not Coleman");

        assert_eq!(out_col_order_profile(g), abelian_order_profile(&invariants), "{name}: Out_col");

        let report = check("T3.2", &spec, None, &caps).unwrap();
        assert_eq!(report.status, Status::Passed, "{name}: {report:?}");
    }
}

#[test]
fn dade_orders() {
    let cases: [(&[u64], usize); 6] = [
        (&[2], 30),
        (&[3], 273),
        (&[2, 2], 210),
        (&[4], 260),
        (&[5], 11 * 31 * 5),
        (&[8], 17 * 41 * 8),
    ];
    for (inv, order) in cases {
        let g = build(&dade_construct(inv, 1_000_000).unwrap()).unwrap().into_group();
        assert_eq!(g.order(), order, "{inv:?}");
    }
}

#[test]
fn dade_prime_bound_is_enforced() {
    assert!(dade_construct(&[4], 10).is_err());
}

#[test]
fn full_catalog_has_no_contradictions() {
    let run = run_catalog(512, &Caps::default()).unwrap();
    assert_eq!(run.failed_invariants, 0);
    assert_eq!(run.contradictions, 0, "{}", run.summary_table());
}
