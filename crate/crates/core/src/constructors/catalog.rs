//! The regression corpus of small groups.

use super::GroupSpec;
use crate::structure::dade_construct;

/// One catalog entry with its known order.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub spec: GroupSpec,
}

fn entry(name: &str, order: usize, spec: GroupSpec) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        order,
        spec,
    }
}

fn abelian(invariants: &[usize]) -> GroupSpec {
    GroupSpec::Abelian {
        invariants: invariants.to_vec(),
    }
}

/// Q8 as its right regular permutation representation on
/// `1, -1, i, -i, j, -j, k, -k` (points 0..8).
pub fn quaternion_spec() -> GroupSpec {
    // Unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k.
    fn mul(a: (i8, u8), b: (i8, u8)) -> (i8, u8) {
        const TABLE: [[(i8, u8); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let (s, ax) = TABLE[a.1 as usize][b.1 as usize];
        (a.0 * b.0 * s, ax)
    }
    let point = |q: (i8, u8)| 2 * q.1 as u32 + u32::from(q.0 < 0);
    let unit = |p: u32| (if p.is_multiple_of(2) { 1 } else { -1 }, (p / 2) as u8);
    let right = |g: (i8, u8)| (0..8).map(|p| point(mul(unit(p), g))).collect::<Vec<u32>>();
    GroupSpec::Perm {
        degree: 8,
        generators: vec![right((1, 1)), right((1, 2))],
    }
}

/// The permutational wreath product `S_k ≀ S_n` on `k * n` points
/// (blocks `{ik, ..., ik + k - 1}`), of order `(k!)^n n!`.
pub fn symmetric_wreath_perm(k: usize, n: usize) -> GroupSpec {
    let degree = k * n;
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut gens = Vec::new();
    if k >= 2 {
        let mut t = id.clone();
        t.swap(0, 1);
        gens.push(t);
    }
    if k >= 3 {
        let mut c = id.clone();
        for i in 0..k {
            c[i] = ((i + 1) % k) as u32;
        }
        gens.push(c);
    }
    let block_perm = |sigma: &dyn Fn(usize) -> usize| -> Vec<u32> {
        (0..degree).map(|p| (sigma(p / k) * k + p % k) as u32).collect()
    };
    if n >= 2 {
        gens.push(block_perm(&|b| match b {
            0 => 1,
            1 => 0,
            b => b,
        }));
    }
    if n >= 3 {
        gens.push(block_perm(&|b| (b + 1) % n));
    }
    GroupSpec::Perm { degree, generators: gens }
}

/// `(A) ⋊ C_m` with the cyclic generator acting on each cyclic factor of
/// `A = C_{q_1} × ...` by `y_i ↦ y_i^{e_i}`.
pub fn power_action_semidirect(moduli: &[usize], exponents: &[u32], m: usize) -> GroupSpec {
    let mut stride = 1u32;
    let images = moduli
        .iter()
        .zip(exponents)
        .map(|(&q, &e)| {
            let img = (e % q as u32) * stride;
            stride *= q as u32;
            img
        })
        .collect();
    GroupSpec::semidirect(abelian(moduli), GroupSpec::cyclic(m), vec![images])
}

/// Nilpotent-by-cyclic instances with abelian base, used to exercise the
/// Out_col characterisation: `(name, order, spec)`.
pub fn abelian_by_cyclic_examples() -> Vec<CatalogEntry> {
    vec![
        entry("D30", 30, power_action_semidirect(&[3, 5], &[2, 4], 2)),
        // x inverts C3 and acts on C5 by 2, of multiplicative order 4.
        entry("(C3xC5):C4", 60, power_action_semidirect(&[3, 5], &[2, 2], 4)),
        entry("D42", 42, power_action_semidirect(&[3, 7], &[2, 6], 2)),
        entry("(C3xC5xC7):C2", 210, power_action_semidirect(&[3, 5, 7], &[2, 4, 6], 2)),
        // x acts with order 3 on C7 and trivially on C13.
        entry("(C7xC13):C3 partial", 273, power_action_semidirect(&[7, 13], &[2, 1], 3)),
        // Orders 2 and 4 on C5 and C13.
        entry("(C5xC13):C4 mixed", 260, power_action_semidirect(&[5, 13], &[4, 5], 4)),
        entry("C6xC2", 12, GroupSpec::direct(vec![GroupSpec::cyclic(6), GroupSpec::cyclic(2)])),
    ]
}

/// Deterministic regression corpus filtered by `max_order`.
pub fn standard_catalog(max_order: usize) -> Vec<CatalogEntry> {
    let mut all = vec![
        entry("1", 1, GroupSpec::cyclic(1)),
        entry("C2", 2, GroupSpec::cyclic(2)),
        entry("C3", 3, GroupSpec::cyclic(3)),
        entry("C4", 4, GroupSpec::cyclic(4)),
        entry("C2xC2", 4, abelian(&[2, 2])),
        entry("C5", 5, GroupSpec::cyclic(5)),
        entry("C6", 6, GroupSpec::cyclic(6)),
        entry("S3", 6, GroupSpec::Symmetric { n: 3 }),
        entry("C7", 7, GroupSpec::cyclic(7)),
        entry("C8", 8, GroupSpec::cyclic(8)),
        entry("C2xC4", 8, abelian(&[2, 4])),
        entry("C2^3", 8, abelian(&[2, 2, 2])),
        entry("D8", 8, GroupSpec::Dihedral { n: 8 }),
        entry("Q8", 8, quaternion_spec()),
        entry("C2wrC2", 8, GroupSpec::wreath(GroupSpec::cyclic(2), GroupSpec::cyclic(2))),
        entry("C9", 9, GroupSpec::cyclic(9)),
        entry("C3xC3", 9, abelian(&[3, 3])),
        entry("D10", 10, GroupSpec::Dihedral { n: 10 }),
        entry("C12", 12, GroupSpec::cyclic(12)),
        entry("A4", 12, GroupSpec::Alternating { n: 4 }),
        entry("D12", 12, GroupSpec::Dihedral { n: 12 }),
        entry("Hol(C2)", 2, GroupSpec::holomorph(GroupSpec::cyclic(2))),
        entry("Hol(C3)", 6, GroupSpec::holomorph(GroupSpec::cyclic(3))),
        entry("Hol(C5)", 20, GroupSpec::holomorph(GroupSpec::cyclic(5))),
        entry("Hol(C7)", 42, GroupSpec::holomorph(GroupSpec::cyclic(7))),
        entry("Hol(C8)", 32, GroupSpec::holomorph(GroupSpec::cyclic(8))),
        entry("Hol(C9)", 54, GroupSpec::holomorph(GroupSpec::cyclic(9))),
        entry("S4", 24, GroupSpec::Symmetric { n: 4 }),
        entry("A5", 60, GroupSpec::Alternating { n: 5 }),
        entry("S3wrS2", 72, GroupSpec::wreath(GroupSpec::Symmetric { n: 3 }, GroupSpec::cyclic(2))),
        entry("S5", 120, GroupSpec::Symmetric { n: 5 }),
        entry("A5xC2", 120, GroupSpec::direct(vec![GroupSpec::Alternating { n: 5 }, GroupSpec::cyclic(2)])),
        entry("S3wrS3", 1296, symmetric_wreath_perm(3, 3)),
    ];
    all.extend(abelian_by_cyclic_examples());
    for (label, invariants, order) in [
        ("C2", vec![2u64], 30),
        ("C3", vec![3], 273),
        ("C2xC2", vec![2, 2], 210),
        ("C4", vec![4], 260),
    ] {
        let spec = dade_construct(&invariants, crate::structure::DEFAULT_PRIME_BOUND).expect("small Dade inputs");
        all.push(entry(&format!("Dade({label})"), order, spec));
    }
    all.retain(|e| e.order <= max_order.max(1));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::build;

    #[test]
    fn catalog_filters() {
        let names = |m| standard_catalog(m).into_iter().map(|e| e.name).collect::<Vec<_>>();
        assert_eq!(names(1), vec!["1"]);
        assert!(names(30).contains(&"D30".to_string()));
        let n130 = names(130);
        for required in ["S4", "A5", "S5"] {
            assert!(n130.contains(&required.to_string()));
        }
        assert!(!n130.contains(&"S3wrS3".to_string()));
        let a: Vec<String> = standard_catalog(300).into_iter().map(|e| e.name).collect();
        let b: Vec<String> = standard_catalog(300).into_iter().map(|e| e.name).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn listed_orders_match_builds() {
        for e in standard_catalog(2000) {
            let g = build(&e.spec).unwrap().group;
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn quaternion_group() {
        let q8 = build(&quaternion_spec()).unwrap().group;
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn symmetric_wreath_orders() {
        assert_eq!(build(&symmetric_wreath_perm(3, 2)).unwrap().group.order(), 72);
        assert_eq!(build(&symmetric_wreath_perm(2, 3)).unwrap().group.order(), 48);
    }
}
