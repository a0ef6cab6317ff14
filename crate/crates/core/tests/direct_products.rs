//! Coleman automorphisms of a direct product split over the factors.

use coleman_core::automorphisms::{aut_col, out_col};
use coleman_core::constructors::catalog::standard_catalog;
use coleman_core::{build, Caps, Elem, FiniteGroup, GroupSpec};

fn direct_product_table(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (a.order() as Elem, b.order() as Elem);
    let mut table = Vec::with_capacity((m * n * m * n) as usize);
    for x in 0..m * n {
        for y in 0..m * n {
            table.push(a.mul(x % m, y % m) + m * b.mul(x / m, y / m));
        }
    }
    FiniteGroup::from_table((m * n) as usize, table, None).unwrap()
}

#[test]
fn out_col_of_direct_products() {
    let caps = Caps::default();
    // Non-abelian factors keep Aut(G x H) small enough to enumerate.
    let factors: Vec<_> = standard_catalog(128)
        .into_iter()
        .map(|e| (e.name, e.spec.clone(), build(&e.spec).unwrap().into_group()))
        .filter(|(_, _, g)| !g.is_abelian() && g.center().order() <= 2)
        .collect();
    let mut checked = 0;
    for (i, (na, sa, a)) in factors.iter().enumerate() {
        for (nb, sb, b) in &factors[i..] {
            if a.order() * b.order() > 256 {
                continue;
            }
            let g = build(&GroupSpec::direct(vec![sa.clone(), sb.clone()])).unwrap().into_group();
            let product = aut_col(&g, &caps).unwrap().len();
            let split = aut_col(a, &caps).unwrap().len() * aut_col(b, &caps).unwrap().len();
            assert_eq!(product, split, "{na} x {nb}");
            let (qa, qb, qg) = (out_col(a, &caps).unwrap(), out_col(b, &caps).unwrap(), out_col(&g, &caps).unwrap());
            let expected = direct_product_table(&qa.cosets, &qb.cosets);
            assert!(qg.cosets.is_isomorphic(&expected, &caps).unwrap().isomorphic, "{na} x {nb}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} pairs");
}
