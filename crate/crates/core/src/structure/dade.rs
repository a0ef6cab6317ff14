use std::collections::BTreeMap;

use crate::arith;
use crate::constructors::GroupSpec;
use crate::error::{Error, Result};

/// Default upper bound for the prime search.
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// Splits cyclic orders into prime-power cyclic orders; ones are dropped.
pub fn elementary_divisors(orders: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for &m in orders {
        if m == 0 {
            return Err(Error::InvalidParams("cyclic orders must be positive".into()));
        }
        out.extend(arith::factorize(m).into_iter().map(|(p, e)| p.pow(e)));
    }
    out.sort_unstable();
    Ok(out)
}

/// A metabelian group `G` with `Out_col(G) ≅ H = Π C_{m_i}`.
///
/// For each prime `p` with `H_p = C_{p^{r_1}} × ... × C_{p^{r_n}}`,
/// `r_1 ≤ ... ≤ r_n`, set `r_{n+1} = r_n` and take the smallest distinct primes
/// `q_i ≡ 1 (mod p^{r_i})` with the smallest primitive `p^{r_i}`-th root of
/// unity `k_i` mod `q_i`. The factor is `(Π C_{q_i}) ⋊ C_{p^{r_n}}` with
/// `x⁻¹ y_i x = y_i^{k_i}`; factors for different primes are multiplied
/// directly.
pub fn dade_construct(orders: &[u64], prime_bound: u64) -> Result<GroupSpec> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for q in elementary_divisors(orders)? {
        let (p, e) = arith::factorize(q)[0];
        by_prime.entry(p).or_default().push(e);
    }
    let mut factors = Vec::new();
    for (p, mut rs) in by_prime {
        rs.sort_unstable();
        rs.push(*rs.last().expect("non-empty"));
        let s = *rs.last().unwrap();
        let mut used = Vec::new();
        let mut moduli = Vec::new();
        let mut images = Vec::new();
        let mut stride = 1u64;
        for &r in &rs {
            let pr = p.pow(r);
            let q = (1..)
                .map(|t| t * pr + 1)
                .take_while(|&q| q <= prime_bound)
                .find(|&q| arith::is_prime(q) && !used.contains(&q))
                .ok_or(Error::PrimeSearchExhausted { bound: prime_bound })?;
            used.push(q);
            let k = (2..q)
                .find(|&k| arith::multiplicative_order(k, q) == Some(pr))
                .expect("the unit group mod a prime is cyclic");
            // In the pair product, x⁻¹ y x is the image of y under the inverse
            // of x's action, so x acts by y ↦ y^{k⁻¹}.
            let k_inv = arith::mod_inverse(k as i64, q as i64).expect("k is a unit") as u64;
            images.push((k_inv * stride) as u32);
            stride *= q;
            moduli.push(q as usize);
        }
        factors.push(GroupSpec::semidirect(
            GroupSpec::Abelian { invariants: moduli },
            GroupSpec::cyclic(p.pow(s) as usize),
            vec![images],
        ));
    }
    Ok(match factors.len() {
        0 => GroupSpec::cyclic(1),
        1 => factors.pop().unwrap(),
        _ => GroupSpec::direct(factors),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::build;

    fn semidirect_parts(spec: &GroupSpec) -> (Vec<usize>, usize, Vec<u32>) {
        match spec {
            GroupSpec::Semidirect { base, acting, action } => {
                let GroupSpec::Abelian { invariants } = base.as_ref() else { panic!() };
                let GroupSpec::Cyclic { n } = acting.as_ref() else { panic!() };
                (invariants.clone(), *n, action[0].clone())
            }
            _ => panic!("expected a semidirect spec"),
        }
    }

    #[test]
    fn smallest_primes() {
        let c2 = dade_construct(&[2], DEFAULT_PRIME_BOUND).unwrap();
        assert_eq!(semidirect_parts(&c2), (vec![3, 5], 2, vec![2, 12]));
        let c3 = dade_construct(&[3], DEFAULT_PRIME_BOUND).unwrap();
        let (moduli, m, _) = semidirect_parts(&c3);
        assert_eq!((moduli, m), (vec![7, 13], 3));
        let v4 = dade_construct(&[2, 2], DEFAULT_PRIME_BOUND).unwrap();
        assert_eq!(semidirect_parts(&v4).0, vec![3, 5, 7]);
        let c4 = dade_construct(&[4], DEFAULT_PRIME_BOUND).unwrap();
        assert_eq!(semidirect_parts(&c4).0, vec![5, 13]);
        for (spec, order) in [(c2, 30), (c3, 273), (v4, 210), (c4, 260)] {
            assert_eq!(build(&spec).unwrap().group.order(), order);
        }
    }

    #[test]
    fn action_is_power_map() {
        // C3 case: x⁻¹ y x = y^k with k = 2 (order 3 mod 7) on the C7 factor.
        let spec = dade_construct(&[3], DEFAULT_PRIME_BOUND).unwrap();
        let g = build(&spec).unwrap().group;
        let (y, x) = (1, 91);
        assert_eq!(g.element_order(y), 7);
        assert_eq!(g.conj(y, x), g.pow(y, 2));
    }

    #[test]
    fn mixed_primes_and_bounds() {
        let spec = dade_construct(&[6], DEFAULT_PRIME_BOUND).unwrap();
        assert!(matches!(spec, GroupSpec::Direct { ref factors } if factors.len() == 2));
        assert_eq!(dade_construct(&[1], DEFAULT_PRIME_BOUND).unwrap(), GroupSpec::cyclic(1));
        assert_eq!(
            dade_construct(&[4], 10).unwrap_err(),
            Error::PrimeSearchExhausted { bound: 10 }
        );
        assert_eq!(elementary_divisors(&[12, 2]).unwrap(), vec![2, 3, 4]);
    }
}
