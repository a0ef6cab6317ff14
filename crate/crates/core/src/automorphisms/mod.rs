//! Automorphism enumeration and classification.

mod outer;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{fingerprint_candidates, Elem, FiniteGroup, HomSearch, Subgroup};

pub use outer::{abelian_invariants, aut_c, aut_col, invariant_factors, out_c, out_c_cap_out_col, out_col, outer_key, quotient_by_inner, OuterQuotient};

/// A bijection on element indices preserving multiplication.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    images: Vec<Elem>,
}

impl Automorphism {
    /// Wraps an image vector without checking it.
    pub fn from_images(images: Vec<Elem>) -> Self {
        Self { images }
    }

    /// Checked constructor.
    pub fn new(g: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        let a = Self { images };
        if a.is_automorphism_of(g) {
            Ok(a)
        } else {
            Err(Error::NotAnAutomorphism("images do not define a bijective homomorphism".into()))
        }
    }

    pub fn identity(order: usize) -> Self {
        Self {
            images: (0..order as Elem).collect(),
        }
    }

    /// `x ↦ g⁻¹ x g`.
    pub fn conjugation(g: &FiniteGroup, h: Elem) -> Self {
        Self {
            images: g.elements().map(|x| g.conj(x, h)).collect(),
        }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Elem> {
        self.images
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Self {
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as Elem == y)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    /// Exhaustive check that this is a bijective homomorphism of `g`.
    pub fn is_automorphism_of(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        if self.images.len() != n || self.images.iter().any(|&y| y as usize >= n) {
            return false;
        }
        let mut seen = vec![false; n];
        if self.images.iter().any(|&y| std::mem::replace(&mut seen[y as usize], true)) {
            return false;
        }
        g.elements()
            .all(|a| g.elements().all(|b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b))))
    }

    /// Whether the automorphism maps `h` onto itself.
    pub fn stabilizes(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| h.contains(self.apply(x)))
    }

    /// Whether `self` agrees with `conj(w)` on every member of `h`.
    pub fn agrees_with_conjugation_on(&self, g: &FiniteGroup, h: &Subgroup, w: Elem) -> bool {
        h.generators().iter().all(|&y| self.apply(y) == g.conj(y, w))
    }

    /// Some `w` with `self|_H = conj(w)|_H`, lowest index first.
    pub fn conjugation_witness_on(&self, g: &FiniteGroup, h: &Subgroup) -> Option<Elem> {
        g.elements().find(|&w| self.agrees_with_conjugation_on(g, h, w))
    }
}

/// The complete automorphism group, sorted by image vector (identity first).
pub fn automorphism_group(g: &FiniteGroup, caps: &Caps) -> Result<Vec<Automorphism>> {
    Caps::check("automorphism search", g.order(), caps.automorphism)?;
    let gens = g.generating_sequence();
    let search = HomSearch::new(g, g, gens, true);
    let candidates = fingerprint_candidates(g, g, gens);
    Ok(search.all(&candidates).into_iter().map(Automorphism::from_images).collect())
}

/// One conjugation per coset of `Z(G)`, sorted.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<Automorphism> {
    let z = g.center();
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for h in g.elements() {
        if seen[h as usize] {
            continue;
        }
        for &c in z.members() {
            seen[g.mul(h, c) as usize] = true;
        }
        out.push(Automorphism::conjugation(g, h));
    }
    out.sort_unstable();
    out
}

/// Some `h` with `σ = conj(h)`, lowest index first.
pub fn is_inner(g: &FiniteGroup, sigma: &Automorphism) -> Option<Elem> {
    let gens = g.generating_sequence();
    g.elements().find(|&h| gens.iter().all(|&s| sigma.apply(s) == g.conj(s, h)))
}

/// Whether every conjugacy class is mapped onto itself.
pub fn is_class_preserving(g: &FiniteGroup, sigma: &Automorphism) -> bool {
    g.conjugacy_classes().iter().all(|c| g.class_of(sigma.apply(c[0])) == g.class_of(c[0]))
}

/// Per-prime witnesses `g_p` with `σ|_P = conj(g_p)|_P` on the canonical
/// Sylow `p`-subgroup `P`, or `None` when some prime has no witness.
pub fn coleman_witnesses(g: &FiniteGroup, sigma: &Automorphism) -> Option<BTreeMap<u64, Elem>> {
    g.sylows()
        .iter()
        .map(|(p, s)| sigma.conjugation_witness_on(g, s).map(|w| (*p, w)))
        .collect()
}

pub fn is_coleman(g: &FiniteGroup, sigma: &Automorphism) -> bool {
    g.sylows().iter().all(|(_, s)| sigma.conjugation_witness_on(g, s).is_some())
}

/// Whether `σ` fixes some Sylow `p`-subgroup elementwise.
pub fn is_p_central(g: &FiniteGroup, sigma: &Automorphism, p: u64) -> Result<bool> {
    Ok(g
        .all_sylow_subgroups(p)?
        .iter()
        .any(|s| s.generators().iter().all(|&y| sigma.apply(y) == y)))
}

/// Classification flags of one automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismFlags {
    pub inner_witness: Option<Elem>,
    pub class_preserving: bool,
    /// Per-prime Coleman witnesses, present iff the automorphism is Coleman.
    pub coleman_witnesses: Option<BTreeMap<u64, Elem>>,
    pub p_central_primes: Vec<u64>,
}

pub fn classify(g: &FiniteGroup, sigma: &Automorphism) -> AutomorphismFlags {
    AutomorphismFlags {
        inner_witness: is_inner(g, sigma),
        class_preserving: is_class_preserving(g, sigma),
        coleman_witnesses: coleman_witnesses(g, sigma),
        p_central_primes: g
            .primes()
            .iter()
            .copied()
            .filter(|&p| is_p_central(g, sigma, p).unwrap_or(false))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, catalog, GroupSpec};

    fn group(spec: GroupSpec) -> FiniteGroup {
        build(&spec).unwrap().into_group()
    }

    /// Brute force over every permutation-free candidate: all bijections
    /// fixing 0 that preserve products, found by exhaustive image search.
    fn brute_aut_count(g: &FiniteGroup) -> usize {
        fn go(g: &FiniteGroup, img: &mut Vec<Option<Elem>>, used: &mut Vec<bool>, x: usize) -> usize {
            let n = g.order();
            if x == n {
                let full: Vec<Elem> = img.iter().map(|v| v.unwrap()).collect();
                return Automorphism::from_images(full).is_automorphism_of(g) as usize;
            }
            let mut count = 0;
            for y in 1..n {
                if !used[y] && g.element_order(x as Elem) == g.element_order(y as Elem) {
                    used[y] = true;
                    img[x] = Some(y as Elem);
                    count += go(g, img, used, x + 1);
                    used[y] = false;
                }
            }
            img[x] = None;
            count
        }
        let n = g.order();
        let mut img = vec![None; n];
        img[0] = Some(0);
        let mut used = vec![false; n];
        used[0] = true;
        if n == 1 {
            return 1;
        }
        go(g, &mut img, &mut used, 1)
    }

    #[test]
    fn aut_orders() {
        let caps = Caps::default();
        assert_eq!(automorphism_group(&group(GroupSpec::cyclic(5)), &caps).unwrap().len(), 4);
        assert_eq!(
            automorphism_group(&group(GroupSpec::Abelian { invariants: vec![2, 2] }), &caps).unwrap().len(),
            6
        );
        let s3 = group(GroupSpec::Symmetric { n: 3 });
        let aut = automorphism_group(&s3, &caps).unwrap();
        assert_eq!(aut.len(), 6);
        assert!(aut[0].is_identity());
        assert!(aut.iter().all(|a| is_inner(&s3, a).is_some()));
    }

    #[test]
    fn aut_matches_brute_force_on_small_groups() {
        let caps = Caps::default();
        for e in catalog::standard_catalog(8) {
            let g = group(e.spec);
            assert_eq!(automorphism_group(&g, &caps).unwrap().len(), brute_aut_count(&g), "{}", e.name);
        }
    }

    #[test]
    fn aut_cap() {
        let g = group(GroupSpec::Symmetric { n: 4 });
        assert!(matches!(
            automorphism_group(&g, &Caps::default().with_search_cap(20)),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn inner_counts() {
        assert_eq!(inner_automorphisms(&group(GroupSpec::Symmetric { n: 3 })).len(), 6);
        let q8 = group(catalog::quaternion_spec());
        assert_eq!(inner_automorphisms(&q8).len(), 4);
        assert_eq!(is_inner(&q8, &Automorphism::identity(8)), Some(0));
    }

    #[test]
    fn class_preserving_examples() {
        let c3 = group(GroupSpec::cyclic(3));
        let inversion = Automorphism::new(&c3, vec![0, 2, 1]).unwrap();
        assert!(!is_class_preserving(&c3, &inversion));
        assert!(!is_coleman(&c3, &inversion));

        let s4 = group(GroupSpec::Symmetric { n: 4 });
        let a4 = s4.derived_subgroup(&Subgroup::whole(&s4));
        let sub = s4.subgroup_as_group(&a4).unwrap();
        let t = s4.elements().find(|&x| s4.element_order(x) == 2 && !a4.contains(x)).unwrap();
        let images = sub
            .embedding
            .iter()
            .map(|&x| sub.position(s4.conj(x, t)).unwrap())
            .collect();
        let sigma = Automorphism::new(&sub.group, images).unwrap();
        assert!(!is_class_preserving(&sub.group, &sigma));
        for a in inner_automorphisms(&sub.group) {
            assert!(is_class_preserving(&sub.group, &a));
            assert!(is_coleman(&sub.group, &a));
        }
    }

    #[test]
    fn p_central_examples() {
        let s5 = group(GroupSpec::Symmetric { n: 5 });
        let a5 = s5.derived_subgroup(&Subgroup::whole(&s5));
        let sub = s5.subgroup_as_group(&a5).unwrap();
        let t = s5.elements().find(|&x| s5.element_order(x) == 2 && !a5.contains(x) && s5.class_size(x) == 10);
        let t = t.unwrap();
        let images = sub
            .embedding
            .iter()
            .map(|&x| sub.position(s5.conj(x, t)).unwrap())
            .collect();
        let sigma = Automorphism::new(&sub.group, images).unwrap();
        assert!(!is_p_central(&sub.group, &sigma, 2).unwrap());
        assert!(is_p_central(&sub.group, &Automorphism::identity(60), 5).unwrap());
        assert!(matches!(is_p_central(&sub.group, &sigma, 7), Err(Error::NotADivisor { .. })));

        let s4 = group(GroupSpec::Symmetric { n: 4 });
        let p = s4.sylow_subgroup(2).unwrap().clone();
        let z = s4.centralizer_of(&p).intersection(&p, &s4);
        let c = z.lowest_nontrivial().unwrap();
        assert!(is_p_central(&s4, &Automorphism::conjugation(&s4, c), 2).unwrap());
    }

    #[test]
    fn composition_and_inverse() {
        let g = group(GroupSpec::cyclic(7));
        let aut = automorphism_group(&g, &Caps::default()).unwrap();
        for a in &aut {
            assert!(a.compose(&a.inverse()).is_identity());
            assert!(aut.contains(&a.compose(&aut[1])));
        }
        assert_eq!(aut.iter().map(|a| a.order()).max(), Some(6));
    }

    #[test]
    fn flags_of_inner() {
        let s4 = group(GroupSpec::Symmetric { n: 4 });
        let f = classify(&s4, &Automorphism::conjugation(&s4, 5));
        assert!(f.inner_witness.is_some() && f.class_preserving && f.coleman_witnesses.is_some());
    }
}
