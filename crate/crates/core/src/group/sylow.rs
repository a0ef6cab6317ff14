use std::collections::BTreeMap;

use super::{Elem, FiniteGroup, Subgroup};
use crate::arith;
use crate::error::{Error, Result};

/// An element split into commuting prime-power-order parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub element: Elem,
    /// `p ↦ x_p`, one entry per prime dividing the element order.
    pub parts: BTreeMap<u64, Elem>,
}

impl FiniteGroup {
    /// A Sylow `p`-subgroup, grown greedily: starting from the trivial
    /// subgroup, repeatedly adjoin the lowest-index element of the normalizer
    /// whose `p`-th power already lies in the current subgroup.
    pub fn sylow_subgroup(&self, p: u64) -> Result<&Subgroup> {
        self.sylows()
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, s)| s)
            .ok_or(Error::NotADivisor { p, order: self.order })
    }

    /// The canonical Sylow subgroup for every prime in π(G).
    pub fn sylows(&self) -> &[(u64, Subgroup)] {
        self.cache.sylows.get_or_init(|| {
            self.primes
                .iter()
                .map(|&p| (p, self.grow_sylow(p)))
                .collect()
        })
    }

    fn grow_sylow(&self, p: u64) -> Subgroup {
        let target = arith::p_part(self.order as u64, p) as usize;
        let mut h = Subgroup::trivial(self.order);
        while h.order() < target {
            let n = self.normalizer(&h);
            let g = n
                .members()
                .iter()
                .copied()
                .find(|&g| !h.contains(g) && h.contains(self.pow(g, p as i64)))
                .expect("a non-Sylow p-subgroup has p dividing its normalizer index");
            h = self.extend_subgroup(&h, &[g]);
        }
        h
    }

    /// Every Sylow `p`-subgroup, as the conjugation orbit of the canonical one.
    pub fn all_sylow_subgroups(&self, p: u64) -> Result<Vec<Subgroup>> {
        let p0 = self.sylow_subgroup(p)?.clone();
        Ok(self.conjugacy_orbit(p0))
    }

    /// Conjugates of a subgroup, in discovery order.
    pub fn conjugacy_orbit(&self, h: Subgroup) -> Vec<Subgroup> {
        let mut orbit = vec![h];
        let mut seen: std::collections::HashSet<Subgroup> = orbit.iter().cloned().collect();
        let mut head = 0;
        while head < orbit.len() {
            for &g in self.generating_sequence() {
                let c = self.conjugate_subgroup(&orbit[head], g);
                if seen.insert(c.clone()) {
                    orbit.push(c);
                }
            }
            head += 1;
        }
        orbit
    }

    /// Splits `x` into its `p`-parts via CRT exponents on `⟨x⟩`.
    pub fn primary_decomposition(&self, x: Elem) -> PrimaryDecomposition {
        let m = self.element_order(x) as u64;
        let parts = arith::factorize(m)
            .into_iter()
            .map(|(p, e)| {
                let mp = p.pow(e);
                let rest = m / mp;
                let coeff = arith::mod_inverse(rest as i64, mp as i64).expect("coprime") as u64;
                (p, self.pow(x, (rest * coeff % m) as i64))
            })
            .collect();
        PrimaryDecomposition { element: x, parts }
    }

    /// The `p`-part of `x` (identity when `p` does not divide its order).
    pub fn p_part_of(&self, x: Elem, p: u64) -> Elem {
        self.primary_decomposition(x).parts.get(&p).copied().unwrap_or(0)
    }

    /// Number of Sylow `p`-subgroups, `|G : N_G(P)|`.
    pub fn sylow_count(&self, p: u64) -> Result<usize> {
        let s = self.sylow_subgroup(p)?;
        Ok(self.order / self.normalizer(s).order())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.primes.iter().all(|&p| {
            let s = self.sylow_subgroup(p).expect("prime divides order");
            self.is_normal(s)
        })
    }
}

impl PrimaryDecomposition {
    /// Multiplies the parts in ascending prime order.
    pub fn product(&self, g: &FiniteGroup) -> Elem {
        self.parts.values().fold(0, |acc, &x| g.mul(acc, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, GroupSpec};

    fn group(spec: GroupSpec) -> FiniteGroup {
        build(&spec).unwrap().into_group()
    }

    #[test]
    fn sylow_orders() {
        let s4 = group(GroupSpec::Symmetric { n: 4 });
        assert_eq!(s4.sylow_subgroup(2).unwrap().order(), 8);
        assert_eq!(s4.sylow_subgroup(3).unwrap().order(), 3);
        let c12 = group(GroupSpec::Cyclic { n: 12 });
        let p = c12.sylow_subgroup(2).unwrap();
        assert_eq!(p.members(), &[0, 3, 6, 9]);
        assert!(matches!(s4.sylow_subgroup(5), Err(Error::NotADivisor { p: 5, .. })));
    }

    #[test]
    fn sylow_counts() {
        let s4 = group(GroupSpec::Symmetric { n: 4 });
        assert_eq!(s4.all_sylow_subgroups(3).unwrap().len(), 4);
        assert_eq!(s4.all_sylow_subgroups(2).unwrap().len(), 3);
        let c12 = group(GroupSpec::Cyclic { n: 12 });
        assert_eq!(c12.all_sylow_subgroups(3).unwrap().len(), 1);
        let s3 = group(GroupSpec::Symmetric { n: 3 });
        assert_eq!(s3.all_sylow_subgroups(2).unwrap().len(), 3);
        assert_eq!(s3.sylow_count(2).unwrap(), 3);
        let a5 = group(GroupSpec::Alternating { n: 5 });
        assert_eq!(a5.all_sylow_subgroups(2).unwrap().len(), 5);
        assert_eq!(a5.all_sylow_subgroups(5).unwrap().len(), 6);
    }

    #[test]
    fn primary_parts_in_cyclic_groups() {
        let c6 = group(GroupSpec::Cyclic { n: 6 });
        let d = c6.primary_decomposition(1);
        assert_eq!(d.parts, BTreeMap::from([(2, 3), (3, 4)]));
        assert_eq!(d.product(&c6), 1);
        let c12 = group(GroupSpec::Cyclic { n: 12 });
        let d = c12.primary_decomposition(1);
        // 1 = 9 + 4 (mod 12): 9 has order 4, 4 has order 3.
        assert_eq!(d.parts, BTreeMap::from([(2, 9), (3, 4)]));
        assert_eq!(c12.element_order(9), 4);
        assert_eq!(c12.element_order(4), 3);
        assert_eq!(c12.primary_decomposition(0).parts, BTreeMap::new());
    }

    #[test]
    fn involution_is_its_own_two_part() {
        let s4 = group(GroupSpec::Symmetric { n: 4 });
        for t in s4.elements().filter(|&x| s4.element_order(x) == 2) {
            assert_eq!(s4.primary_decomposition(t).parts, BTreeMap::from([(2, t)]));
        }
    }

    #[test]
    fn nilpotency() {
        assert!(!group(GroupSpec::Symmetric { n: 3 }).is_nilpotent());
        assert!(group(GroupSpec::Cyclic { n: 12 }).is_nilpotent());
        assert!(group(crate::constructors::catalog::quaternion_spec()).is_nilpotent());
    }
}
