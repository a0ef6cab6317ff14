//! Brute-force oracles written straight from the definitions.

#![allow(dead_code)]

use coleman_core::automorphisms::Automorphism;
use coleman_core::{Elem, FiniteGroup, Subgroup};

/// Every conjugate `g⁻¹ P g` of `p`, as sorted member lists.
pub fn conjugates(g: &FiniteGroup, p: &Subgroup) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for h in g.elements() {
        let mut c: Vec<Elem> = p.members().iter().map(|&y| g.conj(y, h)).collect();
        c.sort_unstable();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Whether `σ` agrees with some conjugation on every member of `set`.
pub fn agrees_with_some_conjugation(g: &FiniteGroup, sigma: &Automorphism, set: &[Elem]) -> bool {
    g.elements().any(|h| set.iter().all(|&y| sigma.apply(y) == g.conj(y, h)))
}

/// The definition: for every prime and every Sylow subgroup there is a
/// conjugation agreeing with `σ` on it.
pub fn coleman_all_sylows(g: &FiniteGroup, sigma: &Automorphism) -> bool {
    g.sylows().iter().all(|(_, p)| {
        conjugates(g, p)
            .iter()
            .all(|c| agrees_with_some_conjugation(g, sigma, c))
    })
}

pub fn class_preserving_oracle(g: &FiniteGroup, sigma: &Automorphism) -> bool {
    g.elements()
        .all(|x| g.elements().any(|h| g.conj(x, h) == sigma.apply(x)))
}

pub fn inner_oracle(g: &FiniteGroup, sigma: &Automorphism) -> bool {
    agrees_with_some_conjugation(g, sigma, &g.elements().collect::<Vec<_>>())
}

/// Every automorphism, by trying all bijections fixing the identity.
pub fn automorphisms_by_bijection(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut perm: Vec<Elem> = (0..n as Elem).collect();
    fn rec(g: &FiniteGroup, k: usize, perm: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        let n = perm.len();
        if k == n {
            let ok = g
                .elements()
                .all(|a| g.elements().all(|b| perm[g.mul(a, b) as usize] == g.mul(perm[a as usize], perm[b as usize])));
            if ok {
                out.push(perm.clone());
            }
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            // Orders must match; prune early.
            if g.element_order(k as Elem) == g.element_order(perm[k]) {
                rec(g, k + 1, perm, out);
            }
            perm.swap(k, i);
        }
    }
    if n > 0 {
        rec(g, 1, &mut perm, &mut out);
    }
    out.sort();
    out
}
