//! Homomorphisms and the generator-image backtracking search shared by the
//! isomorphism test and automorphism enumeration.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Elem, FiniteGroup};
use crate::caps::Caps;
use crate::error::Result;

/// A map between two groups given by the images of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source_order: usize,
    pub target_order: usize,
    pub images: Vec<Elem>,
}

impl GroupHom {
    pub fn new(source_order: usize, target_order: usize, images: Vec<Elem>) -> Self {
        Self {
            source_order,
            target_order,
            images,
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x as usize]
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.images.len() == source.order()
            && self.images[0] == 0
            && source.elements().all(|a| {
                source
                    .elements()
                    .all(|b| self.apply(source.mul(a, b)) == target.mul(self.apply(a), self.apply(b)))
            })
    }

    pub fn kernel(&self) -> Vec<Elem> {
        (0..self.source_order as Elem).filter(|&x| self.apply(x) == 0).collect()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        self.source_order == self.target_order
            && self
                .images
                .iter()
                .all(|&y| (y as usize) < self.target_order && !std::mem::replace(&mut seen[y as usize], true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismOutcome {
    pub isomorphic: bool,
    pub witness: Option<GroupHom>,
}

/// Invariant used to restrict generator images: element order, class size and
/// the class sizes of the prime powers of the element.
pub(crate) fn fingerprint(g: &FiniteGroup, primes: &[u64], x: Elem) -> Vec<usize> {
    let mut fp = vec![g.element_order(x) as usize, g.class_size(x)];
    fp.extend(primes.iter().map(|&p| g.class_size(g.pow(x, p as i64))));
    fp
}

struct Level {
    /// Elements of `⟨g_0, ..., g_j⟩` in breadth-first order.
    elems: Vec<Elem>,
    /// `(parent position, generator)` for every element but the identity.
    tree: Vec<(u32, u32)>,
    position: Vec<u32>,
}

/// Precomputed Cayley-graph data for extending generator images to a
/// homomorphism one generator at a time.
pub(crate) struct HomSearch<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<Elem>,
    levels: Vec<Level>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, gens: &[Elem], injective: bool) -> Self {
        let n = source.order();
        let levels = (0..gens.len())
            .map(|j| {
                let active = &gens[..=j];
                let mut position = vec![u32::MAX; n];
                let mut elems = vec![0];
                let mut tree = vec![(0, 0)];
                position[0] = 0;
                let mut head = 0;
                while head < elems.len() {
                    for (k, &g) in active.iter().enumerate() {
                        let y = source.mul(elems[head], g);
                        if position[y as usize] == u32::MAX {
                            position[y as usize] = elems.len() as u32;
                            elems.push(y);
                            tree.push((head as u32, k as u32));
                        }
                    }
                    head += 1;
                }
                Level { elems, tree, position }
            })
            .collect();
        Self {
            source,
            target,
            gens: gens.to_vec(),
            levels,
            injective,
        }
    }

    /// Extends images of `gens[..=j]` over the subgroup they generate and
    /// checks every Cayley-graph edge. Returns the images in level order.
    fn check_level(&self, j: usize, images: &[Elem]) -> Option<Vec<Elem>> {
        let level = &self.levels[j];
        let mut vals = vec![0; level.elems.len()];
        let mut seen = if self.injective {
            vec![false; self.target.order()]
        } else {
            vec![]
        };
        if self.injective {
            seen[0] = true;
        }
        for t in 1..level.elems.len() {
            let (p, k) = level.tree[t];
            let v = self.target.mul(vals[p as usize], images[k as usize]);
            if self.injective && std::mem::replace(&mut seen[v as usize], true) {
                return None;
            }
            vals[t] = v;
        }
        for (t, &e) in level.elems.iter().enumerate() {
            for (i, &g) in self.gens[..=j].iter().enumerate() {
                let p = level.position[self.source.mul(e, g) as usize];
                if vals[p as usize] != self.target.mul(vals[t], images[i]) {
                    return None;
                }
            }
        }
        Some(vals)
    }

    /// Full image vector for a complete assignment of generator images, if it
    /// defines a homomorphism (injective when requested).
    pub fn extend(&self, images: &[Elem]) -> Option<Vec<Elem>> {
        let j = self.gens.len().checked_sub(1)?;
        let vals = self.check_level(j, images)?;
        let level = &self.levels[j];
        if level.elems.len() != self.source.order() {
            return None;
        }
        let mut full = vec![0; self.source.order()];
        for (t, &e) in level.elems.iter().enumerate() {
            full[e as usize] = vals[t];
        }
        Some(full)
    }

    fn dfs(&self, candidates: &[Vec<Elem>], assigned: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>, first_only: bool) {
        let j = assigned.len();
        if j == self.gens.len() {
            if let Some(full) = self.extend(assigned) {
                out.push(full);
            }
            return;
        }
        for &c in &candidates[j] {
            assigned.push(c);
            if j + 1 == self.gens.len() || self.check_level(j, assigned).is_some() {
                self.dfs(candidates, assigned, out, first_only);
            }
            assigned.pop();
            if first_only && !out.is_empty() {
                return;
            }
        }
    }

    /// All homomorphisms whose generator images lie in `candidates[i]`,
    /// sorted by image vector. Top-level branches run in parallel.
    pub fn all(&self, candidates: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        if self.gens.is_empty() {
            return vec![vec![0]];
        }
        let mut found: Vec<Vec<Elem>> = candidates[0]
            .par_iter()
            .flat_map_iter(|&c| {
                let mut assigned = vec![c];
                let mut out = Vec::new();
                if self.gens.len() == 1 || self.check_level(0, &assigned).is_some() {
                    self.dfs(candidates, &mut assigned, &mut out, false);
                }
                out
            })
            .collect();
        found.sort_unstable();
        found
    }

    /// The homomorphism reached first in candidate order, if any.
    pub fn first(&self, candidates: &[Vec<Elem>]) -> Option<Vec<Elem>> {
        if self.gens.is_empty() {
            return Some(vec![0]);
        }
        candidates[0].par_iter().find_map_first(|&c| {
            let mut assigned = vec![c];
            let mut out = Vec::new();
            if self.gens.len() == 1 || self.check_level(0, &assigned).is_some() {
                self.dfs(candidates, &mut assigned, &mut out, true);
            }
            out.pop()
        })
    }
}

/// Candidate images for each generator: target elements sharing its fingerprint.
pub(crate) fn fingerprint_candidates(source: &FiniteGroup, target: &FiniteGroup, gens: &[Elem]) -> Vec<Vec<Elem>> {
    let primes = source.primes();
    let mut by_fp: HashMap<Vec<usize>, Vec<Elem>> = HashMap::new();
    for y in target.elements() {
        by_fp.entry(fingerprint(target, primes, y)).or_default().push(y);
    }
    gens.iter()
        .map(|&g| by_fp.get(&fingerprint(source, primes, g)).cloned().unwrap_or_default())
        .collect()
}

impl FiniteGroup {
    /// Searches for an isomorphism `self → other`.
    pub fn is_isomorphic(&self, other: &FiniteGroup, caps: &Caps) -> Result<IsomorphismOutcome> {
        let no = IsomorphismOutcome {
            isomorphic: false,
            witness: None,
        };
        if self.order() != other.order() {
            return Ok(no);
        }
        Caps::check("isomorphism search", self.order(), caps.isomorphism)?;
        if self.order_statistics() != other.order_statistics() || class_profile(self) != class_profile(other) {
            return Ok(no);
        }
        let gens = self.generating_sequence();
        let search = HomSearch::new(self, other, gens, true);
        let candidates = fingerprint_candidates(self, other, gens);
        Ok(match search.first(&candidates) {
            Some(images) => IsomorphismOutcome {
                isomorphic: true,
                witness: Some(GroupHom::new(self.order(), other.order(), images)),
            },
            None => no,
        })
    }
}

fn class_profile(g: &FiniteGroup) -> Vec<(u32, usize)> {
    let mut v: Vec<(u32, usize)> = g
        .conjugacy_classes()
        .iter()
        .map(|c| (g.element_order(c[0]), c.len()))
        .collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, catalog, GroupSpec};

    fn group(spec: GroupSpec) -> FiniteGroup {
        build(&spec).unwrap().into_group()
    }

    #[test]
    fn isomorphism_examples() {
        let caps = Caps::default();
        let c4 = group(GroupSpec::Cyclic { n: 4 });
        let v4 = group(GroupSpec::Abelian { invariants: vec![2, 2] });
        assert!(!c4.is_isomorphic(&v4, &caps).unwrap().isomorphic);

        let s4 = group(GroupSpec::Symmetric { n: 4 });
        let v = s4.normal_subgroups().unwrap()[1].clone();
        let (q, _) = s4.quotient(&v).unwrap();
        let s3 = group(GroupSpec::Symmetric { n: 3 });
        let out = q.is_isomorphic(&s3, &caps).unwrap();
        assert!(out.isomorphic);
        let w = out.witness.unwrap();
        assert!(w.is_homomorphism(&q, &s3) && w.is_bijective());

        let d8 = group(GroupSpec::Dihedral { n: 8 });
        let q8 = group(catalog::quaternion_spec());
        assert!(!d8.is_isomorphic(&q8, &caps).unwrap().isomorphic);
        assert!(d8.is_isomorphic(&d8, &caps).unwrap().isomorphic);
    }

    #[test]
    fn dihedral_six_is_symmetric_three() {
        let caps = Caps::default();
        let d6 = group(GroupSpec::Dihedral { n: 6 });
        let s3 = group(GroupSpec::Symmetric { n: 3 });
        assert!(d6.is_isomorphic(&s3, &caps).unwrap().isomorphic);
    }

    #[test]
    fn isomorphism_cap() {
        let caps = Caps::default().with_search_cap(10);
        let s4 = group(GroupSpec::Symmetric { n: 4 });
        assert!(s4.is_isomorphic(&s4, &caps).is_err());
    }

    #[test]
    fn extend_rejects_non_homomorphisms() {
        let c6 = group(GroupSpec::Cyclic { n: 6 });
        let search = HomSearch::new(&c6, &c6, &[1], true);
        assert_eq!(search.extend(&[5]).unwrap(), vec![0, 5, 4, 3, 2, 1]);
        assert!(search.extend(&[2]).is_none());
    }
}
