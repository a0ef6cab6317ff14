use std::hash::{Hash, Hasher};

use super::{Elem, FiniteGroup};

/// A subgroup, stored as the sorted list of member indices of its parent
/// group together with a membership mask and a (not necessarily minimal)
/// generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(parent_order: usize) -> Self {
        let mut mask = vec![false; parent_order];
        mask[0] = true;
        Self {
            members: vec![0],
            mask,
            gens: vec![],
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self {
            members: group.elements().collect(),
            mask: vec![true; group.order()],
            gens: group.generating_sequence().to_vec(),
        }
    }

    fn from_parts(parent_order: usize, mut members: Vec<Elem>, gens: Vec<Elem>) -> Self {
        members.sort_unstable();
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m as usize] = true;
        }
        Self { members, mask, gens }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// A generating set; the trivial subgroup has none.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup, group: &FiniteGroup) -> Subgroup {
        let members: Vec<Elem> = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        group.subgroup_generated(&members)
    }

    /// Lowest non-identity member, used for deterministic tie-breaking.
    pub fn lowest_nontrivial(&self) -> Option<Elem> {
        self.members.get(1).copied()
    }
}

impl FiniteGroup {
    /// Smallest subgroup containing `seeds`.
    pub fn subgroup_generated(&self, seeds: &[Elem]) -> Subgroup {
        self.extend_subgroup(&Subgroup::trivial(self.order), seeds)
    }

    /// `⟨H, seeds⟩`.
    pub fn extend_subgroup(&self, h: &Subgroup, seeds: &[Elem]) -> Subgroup {
        let mut gens = h.gens.clone();
        gens.extend(seeds.iter().copied().filter(|&s| s != 0 && !h.contains(s)));
        if gens.len() == h.gens.len() {
            return h.clone();
        }
        let mut mask = h.mask.clone();
        let mut members = h.members.clone();
        // Multiplying existing members by new generators and closing on the right
        // yields the full subgroup.
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        Subgroup { members, mask, gens }
    }

    /// Checks that `set` is closed under multiplication and contains the identity.
    pub fn subgroup_from_set(&self, set: &[Elem]) -> Option<Subgroup> {
        let sub = Subgroup::from_parts(self.order, set.to_vec(), set.iter().copied().filter(|&x| x != 0).collect());
        if !sub.contains(0) || sub.members.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let closed = sub.members.iter().all(|&a| sub.members.iter().all(|&b| sub.contains(self.mul(a, b))));
        closed.then(|| {
            let gens = self.small_generators(&sub);
            Subgroup { gens, ..sub }
        })
    }

    fn small_generators(&self, sub: &Subgroup) -> Vec<Elem> {
        let mut current = Subgroup::trivial(self.order);
        let mut gens = Vec::new();
        for &m in sub.members.iter().rev() {
            if !current.contains(m) {
                current = self.extend_subgroup(&current, &[m]);
                gens.push(m);
            }
        }
        gens
    }

    /// `{g : gx = xg for all x in X}`.
    pub fn centralizer(&self, xs: &[Elem]) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        let sub = Subgroup::from_parts(self.order, members, vec![]);
        let gens = self.small_generators(&sub);
        Subgroup { gens, ..sub }
    }

    /// Centralizer of a subgroup, using its generators.
    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer(h.generators())
    }

    pub fn center(&self) -> &Subgroup {
        self.cache.center.get_or_init(|| self.centralizer(self.generating_sequence()))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        let sub = Subgroup::from_parts(self.order, members, vec![]);
        let gens = self.small_generators(&sub);
        Subgroup { gens, ..sub }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generating_sequence()
            .iter()
            .all(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    /// `g⁻¹ H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let members: Vec<Elem> = h.members.iter().map(|&x| self.conj(x, g)).collect();
        let gens = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::from_parts(self.order, members, gens)
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Elem]) -> Subgroup {
        let mut current = self.subgroup_generated(seeds);
        loop {
            let mut extra = Vec::new();
            for &g in self.generating_sequence() {
                for &x in current.generators() {
                    let c = self.conj(x, g);
                    if !current.contains(c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            current = self.extend_subgroup(&current, &extra);
        }
    }

    /// Product `HK` of two subgroups, one of which normalizes the other.
    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        self.extend_subgroup(h, k.generators())
    }

    /// Image of a subgroup under a permutation of the elements (an automorphism).
    pub fn image_subgroup(&self, h: &Subgroup, images: &[Elem]) -> Subgroup {
        let members = h.members.iter().map(|&x| images[x as usize]).collect();
        let gens = h.gens.iter().map(|&x| images[x as usize]).collect();
        Subgroup::from_parts(self.order, members, gens)
    }

    /// Derived subgroup `[H, H]` of a subgroup.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let mut comms = Vec::new();
        for &a in gens {
            for &b in gens {
                comms.push(self.commutator(a, b));
            }
        }
        // Normal closure inside H of the generator commutators.
        let mut current = self.subgroup_generated(&comms);
        loop {
            let mut extra = Vec::new();
            for &g in gens {
                for &x in current.generators() {
                    let c = self.conj(x, g);
                    if !current.contains(c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            current = self.extend_subgroup(&current, &extra);
        }
    }
}
