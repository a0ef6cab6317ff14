//! Nilpotent-by-(cyclic p-power) groups: presentations, Φ-maps, the `D_i`
//! twist subgroups, the predicted outer Coleman complement `K`, and Dade's
//! realization of abelian groups.

mod dade;

use serde::Serialize;

use crate::arith;
use crate::automorphisms::{is_coleman, outer_key, Automorphism};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

pub use dade::{dade_construct, elementary_divisors, DEFAULT_PRIME_BOUND};

/// `G = N⟨x⟩` with `N` nilpotent normal and `G/N ≅ C_{p^n}` generated by `xN`.
#[derive(Clone, Debug)]
pub struct NilpotentByCyclicPresentation<'g> {
    pub group: &'g FiniteGroup,
    pub normal: Subgroup,
    /// A `p`-element whose coset generates `G/N`.
    pub x: Elem,
    pub p: u64,
    pub n: u32,
    /// Sylow subgroups `P_1, ..., P_k` of `N`, sorted by `r_i`.
    pub sylows: Vec<Subgroup>,
    /// Prime of each `P_i`.
    pub sylow_primes: Vec<u64>,
    /// Least `r_i ≥ 1` with `conj(x^{r_i})|_{P_i} = conj(h_i)|_{P_i}`, `h_i ∈ P_i`.
    pub r: Vec<u64>,
    pub h: Vec<Elem>,
    /// Index into `sylows` of the Sylow `p`-subgroup of `N`, if non-trivial.
    pub p_position: Option<usize>,
}

/// Serializable summary of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationSummary {
    pub normal_order: usize,
    pub x: Elem,
    pub p: u64,
    pub n: u32,
    pub sylow_primes: Vec<u64>,
    pub sylow_orders: Vec<usize>,
    pub r: Vec<u64>,
    pub h: Vec<Elem>,
}

/// Exponents `j_i` and twists `w_i ∈ P_i` of a map `Φ^{w}_{j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PhiSpec {
    pub j: Vec<u64>,
    pub w: Vec<Elem>,
}

/// Which coset member to use when choosing the transversals `T_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalChoice {
    Lowest,
    Highest,
}

/// The predicted complement `K` of `Inn(G)` in `Aut_col(G)`.
#[derive(Clone, Debug)]
pub struct PredictedK {
    pub specs: Vec<PhiSpec>,
    pub order: usize,
    /// `(r_1, ..., r_{k-1})` without ones, when `N` is abelian.
    pub invariants: Option<Vec<u64>>,
}

/// The `p`-power-order elements of `h`, as a subgroup when `h` is nilpotent.
fn sylow_of_nilpotent(g: &FiniteGroup, h: &Subgroup, p: u64) -> Subgroup {
    let set: Vec<Elem> = h
        .members()
        .iter()
        .copied()
        .filter(|&y| arith::is_power_of(u64::from(g.element_order(y)), p))
        .collect();
    g.subgroup_from_set(&set).expect("p-elements of a nilpotent group form its Sylow subgroup")
}

fn subgroup_is_nilpotent(g: &FiniteGroup, h: &Subgroup) -> bool {
    arith::prime_divisors(h.order() as u64).into_iter().all(|p| {
        let target = arith::p_part(h.order() as u64, p) as usize;
        let count = h
            .members()
            .iter()
            .filter(|&&y| arith::is_power_of(u64::from(g.element_order(y)), p))
            .count();
        // The p-elements of H form a subgroup of Sylow order iff the Sylow
        // p-subgroup is normal (hence unique).
        count == target
    })
}

impl<'g> NilpotentByCyclicPresentation<'g> {
    pub fn summary(&self) -> PresentationSummary {
        PresentationSummary {
            normal_order: self.normal.order(),
            x: self.x,
            p: self.p,
            n: self.n,
            sylow_primes: self.sylow_primes.clone(),
            sylow_orders: self.sylows.iter().map(Subgroup::order).collect(),
            r: self.r.clone(),
            h: self.h.clone(),
        }
    }

    pub fn k(&self) -> usize {
        self.sylows.len()
    }

    /// `p^n = |G/N|`.
    pub fn quotient_order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// Whether every `r_i` divides `r_k`.
    pub fn r_divides_last(&self) -> bool {
        self.r.last().is_none_or(|&last| self.r.iter().all(|&ri| last % ri == 0))
    }

    /// Whether `w ∈ P_i` satisfies `[x^{p^n}, w] = 1` and
    /// `[x^t, w⁻¹] ∈ C_G(N)` for `1 ≤ t ≤ ord(x)`.
    pub fn is_admissible_twist(&self, i: usize, w: Elem, c_n: &Subgroup) -> bool {
        let g = self.group;
        let xpn = g.pow(self.x, self.quotient_order() as i64);
        let ord = g.element_order(self.x);
        self.sylows[i].contains(w)
            && g.commutator(xpn, w) == 0
            && (1..=ord).all(|t| c_n.contains(g.commutator(g.pow(self.x, t as i64), g.inv(w))))
    }

    /// Coset exponent `j ∈ [0, p^n)` with `g ∈ N x^j`.
    fn coset_exponent_table(&self) -> Vec<u64> {
        let g = self.group;
        let q = self.quotient_order();
        let mut table = vec![u64::MAX; g.order()];
        let mut xj = 0;
        for j in 0..q {
            for &a in self.normal.members() {
                table[g.mul(a, xj) as usize] = j;
            }
            xj = g.mul(xj, self.x);
        }
        table
    }
}

/// Presents `G` over the nilpotent normal subgroup `N`.
///
/// `x` is the `p`-part of the lowest-index element whose coset generates
/// `G/N`. Ties among equal `r_i` are broken by subgroup order, then by lowest
/// non-identity member.
pub fn presentation_from<'g>(g: &'g FiniteGroup, normal: &Subgroup) -> Result<NilpotentByCyclicPresentation<'g>> {
    if !g.is_normal(normal) {
        return Err(Error::NotNormal);
    }
    if !subgroup_is_nilpotent(g, normal) {
        return Err(Error::NotNilpotent);
    }
    let q = (g.order() / normal.order()) as u64;
    let p = arith::prime_power_base(q).ok_or(Error::QuotientNotCyclicPrimePower)?;
    let n = arith::factorize(q)[0].1;
    let (quot, proj) = g.quotient(normal)?;
    let lift = g
        .elements()
        .find(|&y| u64::from(quot.element_order(proj.apply(y))) == q)
        .ok_or(Error::QuotientNotCyclicPrimePower)?;
    let x = g.p_part_of(lift, p);

    let mut parts: Vec<(u64, usize, Elem, u64, Subgroup, Elem)> = arith::prime_divisors(normal.order() as u64)
        .into_iter()
        .map(|prime| {
            let s = sylow_of_nilpotent(g, normal, prime);
            let (r, h) = inner_exponent(g, x, &s);
            (r, s.order(), s.lowest_nontrivial().unwrap_or(0), prime, s, h)
        })
        .collect();
    parts.sort_by_key(|t| (t.0, t.1, t.2));
    let p_position = parts.iter().position(|t| t.3 == p);
    Ok(NilpotentByCyclicPresentation {
        group: g,
        normal: normal.clone(),
        x,
        p,
        n,
        r: parts.iter().map(|t| t.0).collect(),
        h: parts.iter().map(|t| t.5).collect(),
        sylow_primes: parts.iter().map(|t| t.3).collect(),
        sylows: parts.into_iter().map(|t| t.4).collect(),
        p_position,
    })
}

/// Least `r ≥ 1` and lowest `h ∈ P` with `conj(x^r)|_P = conj(h)|_P`.
fn inner_exponent(g: &FiniteGroup, x: Elem, s: &Subgroup) -> (u64, Elem) {
    let ord = g.element_order(x) as u64;
    for r in 1..=ord {
        let xr = g.pow(x, r as i64);
        let found = s
            .members()
            .iter()
            .copied()
            .find(|&h| s.generators().iter().all(|&y| g.conj(y, xr) == g.conj(y, h)));
        if let Some(h) = found {
            return (r, h);
        }
    }
    unreachable!("x^ord(x) is the identity")
}

/// Every normal nilpotent `N` with `G/N` non-trivial cyclic of prime-power order.
pub fn nilpotent_by_cyclic_normals(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let normals = g.normal_subgroups()?;
    Ok(normals
        .iter()
        .filter(|n| n.order() < g.order() && subgroup_is_nilpotent(g, n))
        .filter(|n| {
            let q = (g.order() / n.order()) as u64;
            arith::prime_power_base(q).is_some()
                && g
                    .quotient(n)
                    .map(|(quot, _)| quot.elements().any(|y| u64::from(quot.element_order(y)) == q))
                    .unwrap_or(false)
        })
        .cloned()
        .collect())
}

/// `D_i`, verified to be closed under multiplication.
pub fn d_subgroup(pres: &NilpotentByCyclicPresentation<'_>, i: usize) -> Result<Subgroup> {
    let g = pres.group;
    let c_n = g.centralizer_of(&pres.normal);
    let set: Vec<Elem> = pres.sylows[i]
        .members()
        .iter()
        .copied()
        .filter(|&w| pres.is_admissible_twist(i, w, &c_n))
        .collect();
    g.subgroup_from_set(&set)
        .ok_or_else(|| Error::NotClosed(format!("D_{} = {set:?}", i + 1)))
}

/// The automorphism `a_i ↦ x^{-j_i} w_i⁻¹ a_i w_i x^{j_i}` on `N`, `x ↦ x`,
/// extended to `G = N⟨x⟩` by `a x^j ↦ Φ(a) x^j`.
pub fn phi_automorphism(pres: &NilpotentByCyclicPresentation<'_>, spec: &PhiSpec) -> Result<Automorphism> {
    let g = pres.group;
    let k = pres.k();
    if spec.j.len() != k || spec.w.len() != k {
        return Err(Error::InvalidTwist(format!("expected {k} exponents and twists")));
    }
    let c_n = g.centralizer_of(&pres.normal);
    for (i, &w) in spec.w.iter().enumerate() {
        if !pres.is_admissible_twist(i, w, &c_n) {
            return Err(Error::InvalidTwist(format!("w_{} = {} ({})", i + 1, w, g.label(w))));
        }
    }
    let position = sylow_position(pres);
    let exps = pres.coset_exponent_table();
    // a_i ↦ c_i⁻¹ a_i c_i with c_i = w_i x^{j_i}.
    let twists: Vec<Elem> = (0..k).map(|i| g.mul(spec.w[i], g.pow(pres.x, spec.j[i] as i64))).collect();
    let mut images = vec![0; g.order()];
    for y in g.elements() {
        let j = exps[y as usize];
        let xj = g.pow(pres.x, j as i64);
        let a = g.mul(y, g.inv(xj));
        let mut img = 0;
        for (_, part) in g.primary_decomposition(a).parts {
            img = g.mul(img, g.conj(part, twists[position[part as usize]]));
        }
        images[y as usize] = g.mul(img, xj);
    }
    let sigma = Automorphism::from_images(images);
    if !sigma.is_automorphism_of(g) {
        return Err(Error::NotAnAutomorphism(format!("Φ for {spec:?}")));
    }
    Ok(sigma)
}

/// `position[y]` is the index of the Sylow subgroup of `N` containing the
/// prime-power-order element `y` of `N`.
fn sylow_position(pres: &NilpotentByCyclicPresentation<'_>) -> Vec<usize> {
    let mut position = vec![usize::MAX; pres.group.order()];
    for (i, s) in pres.sylows.iter().enumerate() {
        for &y in s.members() {
            position[y as usize] = i;
        }
    }
    position
}

/// Transversal of left cosets `w E_i` in `D_i`, where `E_i = Z(P_i) C_{P_i}(⟨x⟩)`
/// (times `⟨h_i⟩` at the Sylow `p` position), intersected with `D_i`.
pub fn twist_transversal(
    pres: &NilpotentByCyclicPresentation<'_>,
    i: usize,
    choice: TransversalChoice,
) -> Result<Vec<Elem>> {
    let g = pres.group;
    let d = d_subgroup(pres, i)?;
    let p_i = &pres.sylows[i];
    let z = g.centralizer_of(p_i).intersection(p_i, g);
    let cx = g.centralizer(&[pres.x]).intersection(p_i, g);
    let mut e = g.join(&z, &cx);
    if pres.p_position == Some(i) {
        e = g.extend_subgroup(&e, &[pres.h[i]]);
    }
    let e = e.intersection(&d, g);
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    let members: Vec<Elem> = match choice {
        TransversalChoice::Lowest => d.members().to_vec(),
        TransversalChoice::Highest => d.members().iter().rev().copied().collect(),
    };
    for w in members {
        if seen[w as usize] {
            continue;
        }
        for &c in e.members() {
            seen[g.mul(w, c) as usize] = true;
        }
        reps.push(w);
    }
    reps.sort_unstable();
    Ok(reps)
}

/// Enumerates `K = {Φ^{w}_{j_1 ... j_{k-1} 0} : 0 ≤ j_i < r_i, w_i ∈ T_i}`.
pub fn predicted_k(pres: &NilpotentByCyclicPresentation<'_>, choice: TransversalChoice) -> Result<PredictedK> {
    let k = pres.k();
    let transversals: Vec<Vec<Elem>> = (0..k).map(|i| twist_transversal(pres, i, choice)).collect::<Result<_>>()?;
    let mut specs = vec![PhiSpec { j: vec![], w: vec![] }];
    for i in 0..k {
        let js = if i + 1 == k { 1 } else { pres.r[i] };
        specs = specs
            .into_iter()
            .flat_map(|s| {
                let t = &transversals[i];
                (0..js).flat_map(move |j| {
                    let s = s.clone();
                    t.iter().map(move |&w| {
                        let mut next = s.clone();
                        next.j.push(j);
                        next.w.push(w);
                        next
                    })
                })
            })
            .collect();
    }
    specs.sort();
    let invariants = pres.group.is_abelian_subgroup(&pres.normal).then(|| {
        let mut inv: Vec<u64> = pres.r[..k.saturating_sub(1)].iter().copied().filter(|&r| r > 1).collect();
        inv.sort_unstable();
        inv
    });
    Ok(PredictedK {
        order: specs.len(),
        specs,
        invariants,
    })
}

/// Automorphisms of `K` together with their outer-class keys.
pub fn k_automorphisms(pres: &NilpotentByCyclicPresentation<'_>, k: &PredictedK) -> Result<Vec<Automorphism>> {
    k.specs.iter().map(|s| phi_automorphism(pres, s)).collect()
}

/// Whether the given automorphisms lie in pairwise distinct cosets of `Inn(G)`.
pub fn pairwise_outer_distinct(g: &FiniteGroup, autos: &[Automorphism]) -> bool {
    let mut keys: Vec<Vec<Elem>> = autos.iter().map(|a| outer_key(g, a)).collect();
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}

/// A failure of the commutator conclusions for a Coleman automorphism fixing
/// `x` and agreeing with `conj(w x^j)` on the Sylow subgroup `P_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorViolation {
    pub automorphism: Vec<Elem>,
    pub sylow: usize,
    pub w: Elem,
    pub j: u64,
    pub condition: &'static str,
}

/// Checks, for every Coleman `σ` in `autos` with `σ(x) = x` and every
/// `q`-element `w ∈ N` and `j` with `σ|_{P_i} = conj(w x^j)|_{P_i}`, that
/// `[w, x^{p^n}] = 1` and `[x^t, w⁻¹] ∈ C_G(N)` for all `t`.
pub fn commutator_violations(pres: &NilpotentByCyclicPresentation<'_>, autos: &[Automorphism]) -> Vec<CommutatorViolation> {
    let g = pres.group;
    let c_n = g.centralizer_of(&pres.normal);
    let xpn = g.pow(pres.x, pres.quotient_order() as i64);
    let ord = g.element_order(pres.x) as u64;
    let mut out = Vec::new();
    for sigma in autos.iter().filter(|s| s.apply(pres.x) == pres.x && is_coleman(g, s)) {
        for (i, s) in pres.sylows.iter().enumerate() {
            for j in 0..ord {
                let xj = g.pow(pres.x, j as i64);
                for &w in s.members() {
                    if !sigma.agrees_with_conjugation_on(g, s, g.mul(w, xj)) {
                        continue;
                    }
                    let mut fail = |condition| {
                        out.push(CommutatorViolation {
                            automorphism: sigma.images().to_vec(),
                            sylow: i,
                            w,
                            j,
                            condition,
                        })
                    };
                    if g.commutator(w, xpn) != 0 {
                        fail("[w, x^(p^n)] = 1");
                    }
                    if !(1..=ord).all(|t| c_n.contains(g.commutator(g.pow(pres.x, t as i64), g.inv(w)))) {
                        fail("[x^t, w^-1] in C_G(N)");
                    }
                }
            }
        }
    }
    out
}

impl FiniteGroup {
    /// Whether the members of `h` commute pairwise.
    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = h.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}
