//! Quotients of automorphism subgroups by `Inn(G)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{automorphism_group, is_class_preserving, is_coleman, Automorphism};
use crate::arith;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::{Elem, FiniteGroup};

/// `ambient / Inn(G)` as an explicit group.
#[derive(Debug)]
pub struct OuterQuotient {
    /// The automorphism subgroup being factored, sorted.
    pub ambient: Vec<Automorphism>,
    /// Coset `i` of the quotient is represented by `representatives[i]`.
    pub representatives: Vec<Automorphism>,
    /// Cosets multiply as `i * j = [rep_i ∘ rep_j]`.
    pub cosets: FiniteGroup,
    /// Prime-power cyclic orders when the quotient is abelian.
    pub invariants: Option<Vec<u64>>,
}

impl OuterQuotient {
    pub fn order(&self) -> usize {
        self.cosets.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Row-major coset multiplication table.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        let m = self.order() as Elem;
        (0..m).map(|i| (0..m).map(|j| self.cosets.mul(i, j)).collect()).collect()
    }
}

/// Canonical label of the coset `σ Inn(G)`: the lexicographically least
/// tuple `(h⁻¹ σ(s) h)` over `h ∈ G`, `s` running over the generating sequence.
pub fn outer_key(g: &FiniteGroup, sigma: &Automorphism) -> Vec<Elem> {
    let imgs: Vec<Elem> = g.generating_sequence().iter().map(|&s| sigma.apply(s)).collect();
    g.elements()
        .map(|h| imgs.iter().map(|&y| g.conj(y, h)).collect::<Vec<Elem>>())
        .min()
        .unwrap_or_default()
}

/// Factors a composition-closed set of automorphisms containing `Inn(G)`.
pub fn quotient_by_inner(g: &FiniteGroup, mut ambient: Vec<Automorphism>) -> Result<OuterQuotient> {
    ambient.sort_unstable();
    let keys: Vec<Vec<Elem>> = ambient.par_iter().map(|a| outer_key(g, a)).collect();
    let mut index: HashMap<Vec<Elem>, Elem> = HashMap::new();
    let mut representatives = Vec::new();
    // Identity sorts first, so the trivial coset gets index 0.
    for (a, k) in ambient.iter().zip(keys) {
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
            e.insert(representatives.len() as Elem);
            representatives.push(a.clone());
        }
    }
    let m = representatives.len();
    let table: Vec<Elem> = (0..m * m)
        .into_par_iter()
        .map(|ij| {
            let prod = representatives[ij / m].compose(&representatives[ij % m]);
            index[&outer_key(g, &prod)]
        })
        .collect();
    let cosets = FiniteGroup::from_table(m, table, None)?;
    let invariants = abelian_invariants(&cosets);
    Ok(OuterQuotient {
        ambient,
        representatives,
        cosets,
        invariants,
    })
}

/// Coleman automorphisms of `g`.
pub fn aut_col(g: &FiniteGroup, caps: &Caps) -> Result<Vec<Automorphism>> {
    Ok(automorphism_group(g, caps)?.into_par_iter().filter(|a| is_coleman(g, a)).collect())
}

/// Class-preserving automorphisms of `g`.
pub fn aut_c(g: &FiniteGroup, caps: &Caps) -> Result<Vec<Automorphism>> {
    Ok(automorphism_group(g, caps)?.into_par_iter().filter(|a| is_class_preserving(g, a)).collect())
}

pub fn out_col(g: &FiniteGroup, caps: &Caps) -> Result<OuterQuotient> {
    quotient_by_inner(g, aut_col(g, caps)?)
}

pub fn out_c(g: &FiniteGroup, caps: &Caps) -> Result<OuterQuotient> {
    quotient_by_inner(g, aut_c(g, caps)?)
}

pub fn out_c_cap_out_col(g: &FiniteGroup, caps: &Caps) -> Result<OuterQuotient> {
    let both = automorphism_group(g, caps)?
        .into_par_iter()
        .filter(|a| is_class_preserving(g, a) && is_coleman(g, a))
        .collect();
    quotient_by_inner(g, both)
}

/// Elementary divisors (prime powers, ascending) of an abelian group, or
/// `None` when `g` is non-abelian. The trivial group gives `[]`.
///
/// For the `p`-primary part, `log_p |{x : x^{p^k} = 1}|` grows by the number of
/// cyclic factors of order at least `p^k`.
pub fn abelian_invariants(g: &FiniteGroup) -> Option<Vec<u64>> {
    if !g.is_abelian() {
        return None;
    }
    let mut out = Vec::new();
    for (p, e) in arith::factorize(g.order() as u64) {
        let mut at_least = Vec::new();
        let mut prev = 0u32;
        for k in 1..=e {
            let pk = p.pow(k);
            let count = g.elements().filter(|&x| pk % u64::from(g.element_order(x)) == 0).count() as u64;
            let log = log_base(count, p);
            at_least.push(log - prev);
            prev = log;
        }
        for k in 1..=e as usize {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            out.extend(std::iter::repeat_n(p.pow(k as u32), exactly as usize));
        }
    }
    out.sort_unstable();
    Some(out)
}

fn log_base(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Invariant factors `d_1 | d_2 | ...` from elementary divisors.
pub fn invariant_factors(elementary: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &q in elementary.iter().filter(|&&q| q > 1) {
        let p = arith::prime_power_base(q).expect("elementary divisors are prime powers");
        by_prime.entry(p).or_default().push(q);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            factors[len - 1 - i] *= q;
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, catalog, GroupSpec};

    fn group(spec: GroupSpec) -> FiniteGroup {
        build(&spec).unwrap().into_group()
    }

    #[test]
    fn invariants_of_abelian_groups() {
        let g = group(GroupSpec::Abelian { invariants: vec![4, 6, 2] });
        assert_eq!(abelian_invariants(&g), Some(vec![2, 2, 3, 4]));
        assert_eq!(invariant_factors(&[2, 2, 3, 4]), vec![2, 2, 12]);
        assert_eq!(abelian_invariants(&group(GroupSpec::cyclic(1))), Some(vec![]));
        assert_eq!(abelian_invariants(&group(GroupSpec::Symmetric { n: 3 })), None);
    }

    #[test]
    fn out_col_examples() {
        let caps = Caps::default();
        assert!(out_col(&group(catalog::quaternion_spec()), &caps).unwrap().is_trivial());
        assert!(out_col(&group(GroupSpec::Symmetric { n: 4 }), &caps).unwrap().is_trivial());
        let d30 = group(GroupSpec::Dihedral { n: 30 });
        let q = out_col(&d30, &caps).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.invariants, Some(vec![2]));
    }

    #[test]
    fn out_c_examples() {
        let caps = Caps::default();
        assert!(out_c(&group(GroupSpec::Symmetric { n: 4 }), &caps).unwrap().is_trivial());
        let ab = group(GroupSpec::Abelian { invariants: vec![2, 4] });
        let q = out_c(&ab, &caps).unwrap();
        assert!(q.is_trivial());
        assert_eq!(q.ambient.len(), 1);
    }

    #[test]
    fn out_of_c2_cubed_is_gl3() {
        let g = group(GroupSpec::Abelian { invariants: vec![2, 2, 2] });
        let all = automorphism_group(&g, &Caps::default()).unwrap();
        let q = quotient_by_inner(&g, all).unwrap();
        assert_eq!(q.order(), 168);
        assert!(q.invariants.is_none());
        assert_eq!(q.table()[0], (0..168).collect::<Vec<Elem>>());
    }
}
