//! Conjugacy classes, the normal-subgroup lattice and subgroups derived from it.

use std::collections::HashSet;

use serde::Serialize;

use super::{Elem, FiniteGroup, GroupHom, Product, Subgroup};
use crate::arith;
use crate::caps::{Caps, TABLE_CAP};
use crate::error::{Error, Result};

pub(crate) struct Classes {
    classes: Vec<Vec<Elem>>,
    class_of: Vec<u32>,
}

/// Structural flags used as theorem hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_simple: bool,
    /// The prime `p` when the group is a non-trivial `p`-group.
    pub p_group: Option<u64>,
}

/// `O_p(G)`, `O_{p'}(G)` and the Fitting subgroup.
#[derive(Clone, Debug)]
pub struct CoreSubgroups {
    pub o_p: Subgroup,
    pub o_p_prime: Subgroup,
    pub fitting: Subgroup,
}

/// A subgroup re-indexed as a group in its own right.
#[derive(Debug)]
pub struct SubgroupGroup {
    pub group: FiniteGroup,
    /// `embedding[i]` is the parent index of the subgroup's element `i`.
    pub embedding: Vec<Elem>,
    position: Vec<Elem>,
}

impl SubgroupGroup {
    /// Subgroup index of a parent element, if it is a member.
    pub fn position(&self, parent_elem: Elem) -> Option<Elem> {
        let p = self.position[parent_elem as usize];
        (p != Elem::MAX).then_some(p)
    }

    /// Re-indexes a subgroup of the parent that lies inside this one.
    pub fn restrict(&self, h: &Subgroup) -> Option<Subgroup> {
        let gens: Option<Vec<Elem>> = h.generators().iter().map(|&x| self.position(x)).collect();
        let sub = self.group.subgroup_generated(&gens?);
        (sub.order() == h.order()).then_some(sub)
    }

    /// Parent-indexed copy of a subgroup of this group.
    pub fn lift(&self, parent: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.generators().iter().map(|&x| self.embedding[x as usize]).collect();
        parent.subgroup_generated(&gens)
    }
}

impl FiniteGroup {
    fn classes_cache(&self) -> &Classes {
        self.cache.classes.get_or_init(|| {
            let mut class_of = vec![u32::MAX; self.order];
            let mut classes = Vec::new();
            for x in self.elements() {
                if class_of[x as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut class = vec![x];
                class_of[x as usize] = id;
                let mut head = 0;
                while head < class.len() {
                    let y = class[head];
                    for &g in self.generating_sequence() {
                        let z = self.conj(y, g);
                        if class_of[z as usize] == u32::MAX {
                            class_of[z as usize] = id;
                            class.push(z);
                        }
                    }
                    head += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            Classes { classes, class_of }
        })
    }

    /// Conjugacy classes, each sorted, ordered by their lowest member; the
    /// first class is `{0}`.
    pub fn conjugacy_classes(&self) -> &[Vec<Elem>] {
        &self.classes_cache().classes
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.classes_cache().class_of[x as usize] as usize
    }

    pub fn class_size(&self, x: Elem) -> usize {
        self.conjugacy_classes()[self.class_of(x)].len()
    }

    /// Every normal subgroup, obtained as joins of normal closures of single
    /// classes. Sorted by order, then members.
    pub fn normal_subgroups(&self) -> Result<&[Subgroup]> {
        self.cache
            .normal_subgroups
            .get_or_init(|| {
                Caps::check("normal subgroup search", self.order, Caps::default().subgroup_search)?;
                let atoms: Vec<Subgroup> = {
                    let mut seen = HashSet::new();
                    self.conjugacy_classes()
                        .iter()
                        .skip(1)
                        .map(|c| self.normal_closure(&c[..1]))
                        .filter(|s| seen.insert(s.clone()))
                        .collect()
                };
                let mut all = vec![Subgroup::trivial(self.order)];
                let mut seen: HashSet<Subgroup> = all.iter().cloned().collect();
                let mut head = 0;
                while head < all.len() {
                    for a in &atoms {
                        if a.is_subset_of(&all[head]) {
                            continue;
                        }
                        let j = self.join(&all[head], a);
                        if seen.insert(j.clone()) {
                            all.push(j);
                        }
                    }
                    head += 1;
                }
                all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
                Ok(all)
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Minimal non-trivial normal subgroups.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let normals = self.normal_subgroups()?;
        Ok(normals
            .iter()
            .filter(|n| !n.is_trivial())
            .filter(|n| {
                !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subset_of(n))
            })
            .cloned()
            .collect())
    }

    /// A chief series `1 = N_0 < N_1 < ... < N_r = G`, each step minimal.
    pub fn chief_series(&self) -> Result<Vec<Subgroup>> {
        let normals = self.normal_subgroups()?;
        let mut series = vec![Subgroup::trivial(self.order)];
        loop {
            let cur = series.last().unwrap();
            if cur.order() == self.order {
                return Ok(series);
            }
            // Normal subgroups are sorted by order, so the first strict
            // superset found is minimal over `cur`.
            let next = normals
                .iter()
                .find(|m| m.order() > cur.order() && cur.is_subset_of(m))
                .expect("G itself is normal")
                .clone();
            series.push(next);
        }
    }

    /// `G / N` with the canonical projection; cosets are numbered by their
    /// lowest member, so the identity coset is 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &m in n.members() {
                coset[self.mul(g, m) as usize] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b) as usize];
            }
        }
        let gens: Vec<Elem> = self
            .generating_sequence()
            .iter()
            .map(|&g| coset[g as usize])
            .filter(|&c| c != 0)
            .collect();
        let q = FiniteGroup::from_table(m, table, Some(gens))?;
        let hom = GroupHom::new(self.order, m, coset);
        Ok((q, hom))
    }

    /// Re-indexes a subgroup as a standalone group (members in ascending order).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<SubgroupGroup> {
        Caps::check("subgroup table", h.order(), TABLE_CAP)?;
        let m = h.order();
        let mut position = vec![Elem::MAX; self.order];
        for (i, &x) in h.members().iter().enumerate() {
            position[x as usize] = i as Elem;
        }
        let mut table = vec![0; m * m];
        for (i, &a) in h.members().iter().enumerate() {
            for (j, &b) in h.members().iter().enumerate() {
                table[i * m + j] = position[self.mul(a, b) as usize];
            }
        }
        let gens = h.generators().iter().map(|&x| position[x as usize]).collect();
        let mut group = FiniteGroup::from_table(m, table, Some(gens))?;
        if let Some(labels) = &self.labels {
            group.labels = Some(h.members().iter().map(|&x| labels[x as usize].clone()).collect());
        }
        Ok(SubgroupGroup {
            group,
            embedding: h.members().to_vec(),
            position,
        })
    }

    /// `O_p(G)`, `O_{p'}(G)` and `F(G)`. Primes outside π(G) give `O_p = 1`.
    pub fn core_subgroups(&self, p: u64) -> Result<CoreSubgroups> {
        let o_p = self.largest_normal_with(|order| arith::is_power_of(order, p))?;
        let o_p_prime = self.largest_normal_with(|order| order % p != 0)?;
        let mut fitting = Subgroup::trivial(self.order);
        for &q in &self.primes {
            let oq = self.largest_normal_with(|order| arith::is_power_of(order, q))?;
            fitting = self.join(&fitting, &oq);
        }
        Ok(CoreSubgroups { o_p, o_p_prime, fitting })
    }

    pub fn o_p(&self, p: u64) -> Result<Subgroup> {
        self.largest_normal_with(|order| arith::is_power_of(order, p))
    }

    fn largest_normal_with(&self, pred: impl Fn(u64) -> bool) -> Result<Subgroup> {
        // The admissible normal subgroups are closed under products, so the
        // largest one is unique.
        Ok(self
            .normal_subgroups()?
            .iter()
            .filter(|n| pred(n.order() as u64))
            .max_by_key(|n| n.order())
            .cloned()
            .unwrap_or_else(|| Subgroup::trivial(self.order)))
    }

    /// Last term of the derived series.
    pub fn solvable_residual(&self, h: &Subgroup) -> Subgroup {
        let mut cur = h.clone();
        loop {
            let d = self.derived_subgroup(&cur);
            if d.order() == cur.order() {
                return cur;
            }
            cur = d;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.solvable_residual(&Subgroup::whole(self)).is_trivial()
    }

    /// Quasisimple: perfect, and every proper normal subgroup is central.
    pub fn is_quasisimple(&self) -> Result<bool> {
        if self.order == 1 {
            return Ok(false);
        }
        let whole = Subgroup::whole(self);
        if self.derived_subgroup(&whole).order() != self.order {
            return Ok(false);
        }
        let z = self.center();
        Ok(self
            .normal_subgroups()?
            .iter()
            .filter(|n| n.order() < self.order)
            .all(|n| n.is_subset_of(z)))
    }

    /// `E(G)`: the product of all subnormal quasisimple subgroups.
    ///
    /// Components are perfect, so the search descends through perfect
    /// residuals of normal subgroups only.
    pub fn layer(&self) -> Result<Subgroup> {
        Caps::check("layer search", self.order, Caps::default().subgroup_search)?;
        let mut components: Vec<Subgroup> = Vec::new();
        let mut visited: HashSet<Subgroup> = HashSet::new();
        let mut stack = vec![self.solvable_residual(&Subgroup::whole(self))];
        while let Some(h) = stack.pop() {
            if h.is_trivial() || !visited.insert(h.clone()) {
                continue;
            }
            let sub = self.subgroup_as_group(&h)?;
            if sub.group.is_quasisimple()? {
                components.push(h);
                continue;
            }
            for m in sub.group.normal_subgroups()? {
                if m.is_trivial() || m.order() == sub.group.order() {
                    continue;
                }
                let residual = sub.group.solvable_residual(m);
                if !residual.is_trivial() {
                    stack.push(sub.lift(self, &residual));
                }
            }
        }
        let mut e = Subgroup::trivial(self.order);
        for c in &components {
            e = self.join(&e, c);
        }
        Ok(e)
    }

    /// Whether `G` is simple (trivial group excluded).
    pub fn is_simple(&self) -> Result<bool> {
        if self.order == 1 {
            return Ok(false);
        }
        if arith::is_prime(self.order as u64) {
            return Ok(true);
        }
        Ok(self.normal_subgroups()?.len() == 2)
    }

    pub fn classify(&self) -> Result<Classification> {
        let p_group = match self.primes.as_slice() {
            [p] => Some(*p),
            _ => None,
        };
        Ok(Classification {
            is_abelian: self.is_abelian(),
            is_nilpotent: self.is_nilpotent(),
            is_simple: self.is_simple()?,
            p_group,
        })
    }

    /// True when the group stores a full multiplication table.
    pub fn has_table(&self) -> bool {
        matches!(self.product, Product::Table(_))
    }
}
