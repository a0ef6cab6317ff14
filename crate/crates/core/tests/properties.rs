use proptest::prelude::*;

use coleman_core::arith;
use coleman_core::automorphisms::{
    automorphism_group, inner_automorphisms, is_class_preserving, is_coleman, Automorphism,
};
use coleman_core::constructors::catalog::standard_catalog;
use coleman_core::{build, Caps, Elem, FiniteGroup, GroupSpec};

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    let perms = (3usize..=5).prop_flat_map(|d| {
        let id: Vec<u32> = (0..d as u32).collect();
        prop::collection::vec(Just(id).prop_shuffle(), 1..=2)
            .prop_map(move |generators| GroupSpec::Perm { degree: d, generators })
    });
    let catalog = standard_catalog(96);
    let n = catalog.len();
    prop_oneof![
        (1usize..=24).prop_map(GroupSpec::cyclic),
        prop::collection::vec(2usize..=5, 1..=3).prop_map(|invariants| GroupSpec::Abelian { invariants }),
        (3usize..=5).prop_map(|n| GroupSpec::Symmetric { n }),
        (3usize..=5).prop_map(|n| GroupSpec::Alternating { n }),
        (2usize..=12).prop_map(|k| GroupSpec::Dihedral { n: 2 * k }),
        perms,
        (0..n).prop_map(move |i| catalog[i].spec.clone()),
    ]
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    spec_strategy().prop_map(|s| build(&s).unwrap().into_group())
}

/// Groups small enough for repeated automorphism enumeration.
fn small_group_strategy() -> impl Strategy<Value = FiniteGroup> {
    group_strategy().prop_filter("order at most 120", |g| g.order() <= 120)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(g in group_strategy()) {
        prop_assert!(g.check_associativity().is_none());
        for x in g.elements() {
            prop_assert_eq!(g.mul(0, x), x);
            prop_assert_eq!(g.mul(x, g.inv(x)), 0);
            prop_assert_eq!(g.order() as u32 % g.element_order(x), 0);
        }
    }

    #[test]
    fn lagrange(g in group_strategy(), seeds in prop::collection::vec(any::<u32>(), 1..3)) {
        let seeds: Vec<Elem> = seeds.iter().map(|s| s % g.order() as u32).collect();
        let h = g.subgroup_generated(&seeds);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &a in h.members() {
            for &b in h.members() {
                prop_assert!(h.contains(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn sylow_orders_and_counts(g in group_strategy()) {
        for &p in g.primes() {
            let s = g.sylow_subgroup(p).unwrap();
            prop_assert_eq!(s.order() as u64, arith::p_part(g.order() as u64, p));
            prop_assert!(s.members().iter().all(|&y| arith::is_power_of(u64::from(g.element_order(y)), p)));
            let count = g.sylow_count(p).unwrap();
            prop_assert_eq!(count as u64 % p, 1);
            prop_assert_eq!(g.order() % count, 0);
        }
    }

    #[test]
    fn primary_decomposition(g in group_strategy(), x in any::<u32>()) {
        let x = x % g.order() as u32;
        let d = g.primary_decomposition(x);
        let parts: Vec<(u64, Elem)> = d.parts.iter().map(|(&p, &y)| (p, y)).collect();
        let mut product = 0;
        for &(p, y) in &parts {
            prop_assert!(arith::is_power_of(u64::from(g.element_order(y)), p));
            for &(_, z) in &parts {
                prop_assert_eq!(g.mul(y, z), g.mul(z, y));
            }
            product = g.mul(product, y);
        }
        prop_assert_eq!(product, x);
    }

    #[test]
    fn quotient_kernel(g in group_strategy().prop_filter("lattice size", |g| g.order() <= 200)) {
        for n in g.normal_subgroups().unwrap() {
            let (q, hom) = g.quotient(n).unwrap();
            prop_assert_eq!(q.order() * n.order(), g.order());
            prop_assert!(hom.is_homomorphism(&g, &q));
            prop_assert_eq!(hom.kernel(), n.members().to_vec());
        }
    }

    #[test]
    fn o_p_meets_o_p_prime_trivially(g in group_strategy().prop_filter("lattice size", |g| g.order() <= 200)) {
        for &p in g.primes() {
            let c = g.core_subgroups(p).unwrap();
            prop_assert!(c.o_p.intersection(&c.o_p_prime, &g).is_trivial());
            prop_assert!(g.is_normal(&c.o_p) && g.is_normal(&c.o_p_prime));
            prop_assert!(arith::is_power_of(c.o_p.order() as u64, p));
            prop_assert!(c.o_p.is_subset_of(&c.fitting));
        }
    }

    #[test]
    fn layer_commutes_with_fitting(g in group_strategy().prop_filter("lattice size", |g| g.order() <= 200)) {
        let e = g.layer().unwrap();
        let f = g.core_subgroups(2).unwrap().fitting;
        for &a in e.generators() {
            for &b in f.generators() {
                prop_assert_eq!(g.mul(a, b), g.mul(b, a));
            }
        }
    }

    #[test]
    fn automorphism_group_is_closed(g in small_group_strategy(), i in any::<usize>(), j in any::<usize>()) {
        let autos = automorphism_group(&g, &Caps::default()).unwrap();
        let a = &autos[i % autos.len()];
        let b = &autos[j % autos.len()];
        prop_assert!(autos.binary_search(&a.compose(b)).is_ok());
        prop_assert!(autos.binary_search(&a.inverse()).is_ok());
        prop_assert!(a.is_automorphism_of(&g));
    }

    #[test]
    fn inner_automorphisms_are_normal(g in small_group_strategy(), i in any::<usize>(), h in any::<u32>()) {
        let autos = automorphism_group(&g, &Caps::default()).unwrap();
        let sigma = &autos[i % autos.len()];
        let h = h % g.order() as u32;
        let lhs = sigma.compose(&Automorphism::conjugation(&g, h)).compose(&sigma.inverse());
        prop_assert_eq!(lhs, Automorphism::conjugation(&g, sigma.apply(h)));
    }

    #[test]
    fn inner_count(g in small_group_strategy()) {
        let inn = inner_automorphisms(&g);
        prop_assert_eq!(inn.len(), g.order() / g.center().order());
        let mut dedup = inn.clone();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), inn.len());
    }

    #[test]
    fn coleman_and_class_preserving_are_subgroups(g in small_group_strategy()) {
        let autos = automorphism_group(&g, &Caps::default()).unwrap();
        let col: Vec<&Automorphism> = autos.iter().filter(|a| is_coleman(&g, a)).collect();
        let cp: Vec<&Automorphism> = autos.iter().filter(|a| is_class_preserving(&g, a)).collect();
        for set in [&col, &cp] {
            for a in set.iter().take(6) {
                for b in set.iter().take(6) {
                    prop_assert!(set.contains(&&a.compose(b)));
                }
                prop_assert!(set.contains(&&a.inverse()));
            }
        }
        for inner in inner_automorphisms(&g) {
            prop_assert!(col.contains(&&inner) && cp.contains(&&inner));
        }
    }
}
