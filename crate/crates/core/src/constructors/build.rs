use std::collections::HashMap;
use std::sync::Arc;

use super::GroupSpec;
use crate::automorphisms::automorphism_group;
use crate::caps::{Caps, TABLE_CAP};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, HomSearch, Subgroup};

/// A constructed group with its distinguished subgroups.
#[derive(Debug)]
pub struct BuiltGroup {
    pub group: FiniteGroup,
    /// Normal base of a semidirect, wreath or holomorph construction.
    pub base: Option<Subgroup>,
    /// Complement acting on the base.
    pub complement: Option<Subgroup>,
    /// Factor embeddings of a direct product, or coordinate copies of a wreath base.
    pub coordinates: Vec<Subgroup>,
}

impl BuiltGroup {
    fn plain(group: FiniteGroup) -> Self {
        Self {
            group,
            base: None,
            complement: None,
            coordinates: vec![],
        }
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }
}

pub fn build(spec: &GroupSpec) -> Result<BuiltGroup> {
    build_with(spec, &Caps::default())
}

pub fn build_with(spec: &GroupSpec, caps: &Caps) -> Result<BuiltGroup> {
    match spec {
        GroupSpec::Perm { degree, generators } => {
            Ok(BuiltGroup::plain(FiniteGroup::from_permutations(*degree, generators, caps.construction)?))
        }
        GroupSpec::Cyclic { n } => Ok(BuiltGroup::plain(cyclic(*n)?)),
        GroupSpec::Abelian { invariants } => {
            let factors: Vec<GroupSpec> = invariants.iter().map(|&n| GroupSpec::Cyclic { n }).collect();
            let mut built = direct(&factors, caps)?;
            built.coordinates.clear();
            Ok(built)
        }
        GroupSpec::Symmetric { n } => {
            let n = *n;
            let gens = match n {
                0 | 1 => vec![],
                2 => vec![vec![1, 0]],
                _ => vec![cycle(n, 0..n), transposition(n, 0, 1)],
            };
            Ok(BuiltGroup::plain(FiniteGroup::from_permutations(n.max(1), &gens, caps.construction)?))
        }
        GroupSpec::Alternating { n } => {
            let n = *n;
            let gens = match n {
                0..=2 => vec![],
                3 => vec![cycle(3, 0..3)],
                _ if n % 2 == 1 => vec![cycle(n, 0..3), cycle(n, 0..n)],
                _ => vec![cycle(n, 0..3), cycle(n, 1..n)],
            };
            Ok(BuiltGroup::plain(FiniteGroup::from_permutations(n.max(1), &gens, caps.construction)?))
        }
        GroupSpec::Dihedral { n } => {
            if *n < 2 || n % 2 != 0 {
                return Err(Error::InvalidSpec(format!("dihedral order {n} must be even and at least 2")));
            }
            let m = n / 2;
            let inversion = if m == 1 { 0 } else { m as u32 - 1 };
            build_with(
                &GroupSpec::semidirect(GroupSpec::cyclic(m), GroupSpec::cyclic(2), vec![vec![inversion]]),
                caps,
            )
        }
        GroupSpec::Direct { factors } => direct(factors, caps),
        GroupSpec::Semidirect { base, acting, action } => semidirect(base, acting, action, caps),
        GroupSpec::Wreath { base, top } => wreath(base, top, caps),
        GroupSpec::Holomorph { base } => holomorph(base, caps),
    }
}

fn cycle(n: usize, points: std::ops::Range<usize>) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    let pts: Vec<usize> = points.collect();
    for w in 0..pts.len() {
        p[pts[w]] = pts[(w + 1) % pts.len()] as u32;
    }
    p
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.swap(a, b);
    p
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("cyclic group of order 0".into()));
    }
    Caps::check("cyclic table", n, TABLE_CAP)?;
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as Elem;
        }
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_table(n, table, Some(gens))
}

fn identity_action(base: &FiniteGroup, acting_order: usize) -> Vec<Vec<Elem>> {
    let id: Vec<Elem> = base.elements().collect();
    vec![id; acting_order]
}

/// `A ⋊ B` from the full action map, recording base and complement handles.
fn pairs(base: FiniteGroup, acting: FiniteGroup, action: Vec<Vec<Elem>>, caps: &Caps) -> Result<BuiltGroup> {
    let na = base.order() as Elem;
    let mut gens: Vec<Elem> = base.generators().iter().copied().filter(|&g| g != 0).collect();
    gens.extend(acting.generators().iter().filter(|&&g| g != 0).map(|&b| na * b));
    let base_gens: Vec<Elem> = base.generators().to_vec();
    let acting_gens: Vec<Elem> = acting.generators().iter().map(|&b| na * b).collect();
    let labels = base.has_table() && acting.has_table();
    let group = FiniteGroup::from_pairs(Arc::new(base), Arc::new(acting), action, gens, labels, caps.construction)?;
    let base_sub = group.subgroup_generated(&base_gens);
    let complement = group.subgroup_generated(&acting_gens);
    Ok(BuiltGroup {
        group,
        base: Some(base_sub),
        complement: Some(complement),
        coordinates: vec![],
    })
}

fn direct(factors: &[GroupSpec], caps: &Caps) -> Result<BuiltGroup> {
    let mut acc = FiniteGroup::trivial();
    let mut coords: Vec<Vec<Elem>> = Vec::new();
    for f in factors {
        let g = build_with(f, caps)?.group;
        let stride = acc.order() as Elem;
        coords.push(g.generators().iter().map(|&x| x * stride).collect());
        let action = identity_action(&acc, g.order());
        acc = pairs(acc, g, action, caps)?.group;
    }
    let coordinates = coords.iter().map(|gens| acc.subgroup_generated(gens)).collect();
    Ok(BuiltGroup {
        group: acc,
        base: None,
        complement: None,
        coordinates,
    })
}

/// Full automorphism of `base` determined by images of its constructor generators.
fn automorphism_from_generators(base: &FiniteGroup, images: &[Elem]) -> Result<Vec<Elem>> {
    let gens: Vec<Elem> = base.generators().to_vec();
    if images.len() != gens.len() {
        return Err(Error::InvalidAction(format!(
            "expected {} base generator images, got {}",
            gens.len(),
            images.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&y| y as usize >= base.order()) {
        return Err(Error::InvalidAction(format!("image {bad} is not a base element")));
    }
    if gens.is_empty() {
        return Ok(vec![0]);
    }
    HomSearch::new(base, base, &gens, true)
        .extend(images)
        .ok_or_else(|| Error::InvalidAction(format!("generator images {images:?} do not define an automorphism")))
}

fn semidirect(base: &GroupSpec, acting: &GroupSpec, action: &[Vec<u32>], caps: &Caps) -> Result<BuiltGroup> {
    let base = build_with(base, caps)?.group;
    let acting = build_with(acting, caps)?.group;
    let t_gens: Vec<Elem> = acting.generators().to_vec();
    if action.len() != t_gens.len() {
        return Err(Error::InvalidAction(format!(
            "expected an action for each of {} acting generators, got {}",
            t_gens.len(),
            action.len()
        )));
    }
    let gen_maps: Vec<Vec<Elem>> = action
        .iter()
        .map(|imgs| automorphism_from_generators(&base, imgs))
        .collect::<Result<_>>()?;
    let compose = |f: &[Elem], g: &[Elem]| -> Vec<Elem> { g.iter().map(|&x| f[x as usize]).collect() };
    // Breadth-first over the acting group: φ(b·t) = φ(b) ∘ φ(t).
    let mut maps: Vec<Option<Vec<Elem>>> = vec![None; acting.order()];
    maps[0] = Some(base.elements().collect());
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let b = queue[head];
        for (k, &t) in t_gens.iter().enumerate() {
            let bt = acting.mul(b, t);
            let m = compose(maps[b as usize].as_ref().unwrap(), &gen_maps[k]);
            match &maps[bt as usize] {
                Some(existing) if *existing != m => {
                    return Err(Error::InvalidAction(
                        "generator actions do not respect the relations of the acting group".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    maps[bt as usize] = Some(m);
                    queue.push(bt);
                }
            }
        }
        head += 1;
    }
    let maps: Vec<Vec<Elem>> = maps
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::InvalidAction("acting generators do not generate the acting group".into())))
        .collect::<Result<_>>()?;
    pairs(base, acting, maps, caps)
}

fn wreath(base: &GroupSpec, top: &GroupSpec, caps: &Caps) -> Result<BuiltGroup> {
    let s = build_with(base, caps)?.group;
    let h = build_with(top, caps)?.group;
    let (ns, nh) = (s.order(), h.order());
    let power_order = (ns as f64).powi(nh as i32);
    if power_order * nh as f64 > caps.construction as f64 {
        return Err(Error::OrderCapExceeded {
            what: "wreath product",
            order: power_order as usize * nh,
            cap: caps.construction,
        });
    }
    let power = direct(&vec![base.clone(); nh], caps)?;
    let coords_gens: Vec<Vec<Elem>> = power.coordinates.iter().map(|c| c.generators().to_vec()).collect();
    let b = power.group;
    let size = b.order();
    // φ_h moves coordinate k to coordinate h·k.
    let action: Vec<Vec<Elem>> = h
        .elements()
        .map(|hh| {
            (0..size)
                .map(|f| {
                    let mut rest = f;
                    let mut out = 0usize;
                    for k in 0..nh {
                        let digit = rest % ns;
                        rest /= ns;
                        let target = h.mul(hh, k as Elem) as usize;
                        out += digit * ns.pow(target as u32);
                    }
                    out as Elem
                })
                .collect()
        })
        .collect();
    let mut built = pairs(b, h, action, caps)?;
    built.coordinates = coords_gens.iter().map(|g| built.group.subgroup_generated(g)).collect();
    Ok(built)
}

fn holomorph(base: &GroupSpec, caps: &Caps) -> Result<BuiltGroup> {
    let g = build_with(base, caps)?.group;
    let autos = automorphism_group(&g, caps)?;
    let m = autos.len();
    Caps::check("holomorph", m * g.order(), caps.construction)?;
    let index: HashMap<&[Elem], Elem> = autos.iter().enumerate().map(|(i, a)| (a.images(), i as Elem)).collect();
    debug_assert!(autos[0].is_identity());
    let mut table = vec![0; m * m];
    for (i, a) in autos.iter().enumerate() {
        for (j, b) in autos.iter().enumerate() {
            table[i * m + j] = index[a.compose(b).images()];
        }
    }
    let aut = FiniteGroup::from_table(m, table, None)?;
    let action = autos.into_iter().map(|a| a.into_images()).collect();
    pairs(g, aut, action, caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_orders() {
        let cases = [
            (GroupSpec::wreath(GroupSpec::cyclic(2), GroupSpec::cyclic(2)), 8),
            (GroupSpec::holomorph(GroupSpec::cyclic(3)), 6),
            (GroupSpec::Dihedral { n: 30 }, 30),
            (GroupSpec::Abelian { invariants: vec![2, 3, 4] }, 24),
            (GroupSpec::Symmetric { n: 5 }, 120),
            (GroupSpec::Alternating { n: 6 }, 360),
            (GroupSpec::Alternating { n: 4 }, 12),
            (GroupSpec::Symmetric { n: 1 }, 1),
        ];
        for (spec, order) in cases {
            assert_eq!(build(&spec).unwrap().group.order(), order, "{spec:?}");
        }
    }

    #[test]
    fn holomorph_of_c3_is_nonabelian() {
        let g = build(&GroupSpec::holomorph(GroupSpec::cyclic(3))).unwrap().group;
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral_thirty_via_inversion() {
        let spec = GroupSpec::semidirect(
            GroupSpec::Abelian { invariants: vec![3, 5] },
            GroupSpec::cyclic(2),
            vec![vec![2, 12]],
        );
        let built = build(&spec).unwrap();
        assert_eq!(built.group.order(), 30);
        let d30 = build(&GroupSpec::Dihedral { n: 30 }).unwrap().group;
        assert!(built.group.is_isomorphic(&d30, &Caps::default()).unwrap().isomorphic);
    }

    #[test]
    fn invalid_actions_are_rejected() {
        // 1 ↦ 2 is not an automorphism of C4.
        let bad = GroupSpec::semidirect(GroupSpec::cyclic(4), GroupSpec::cyclic(2), vec![vec![2]]);
        assert!(matches!(build(&bad), Err(Error::InvalidAction(_))));
        // An automorphism of order 2 cannot be the image of a generator of C3.
        let bad = GroupSpec::semidirect(GroupSpec::cyclic(5), GroupSpec::cyclic(3), vec![vec![4]]);
        assert!(matches!(build(&bad), Err(Error::InvalidAction(_))));
        let bad = GroupSpec::semidirect(GroupSpec::cyclic(5), GroupSpec::cyclic(2), vec![]);
        assert!(matches!(build(&bad), Err(Error::InvalidAction(_))));
        assert!(matches!(build(&GroupSpec::Dihedral { n: 7 }), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn semidirect_handles() {
        let spec = GroupSpec::semidirect(GroupSpec::cyclic(7), GroupSpec::cyclic(3), vec![vec![2]]);
        let built = build(&spec).unwrap();
        let g = &built.group;
        let (b, c) = (built.base.unwrap(), built.complement.unwrap());
        assert!(g.is_normal(&b));
        assert!(b.intersection(&c, g).is_trivial());
        assert_eq!(b.order() * c.order(), g.order());
        assert_eq!(g.check_associativity(), None);
    }

    #[test]
    fn wreath_has_coordinate_copies() {
        let built = build(&GroupSpec::wreath(GroupSpec::Symmetric { n: 3 }, GroupSpec::cyclic(2))).unwrap();
        let g = &built.group;
        assert_eq!(g.order(), 72);
        assert_eq!(built.coordinates.len(), 2);
        let base = built.base.as_ref().unwrap();
        assert!(g.is_normal(base));
        for c in &built.coordinates {
            assert_eq!(c.order(), 6);
            assert!(c.is_subset_of(base));
        }
        let (c0, c1) = (&built.coordinates[0], &built.coordinates[1]);
        assert!(c0.members().iter().all(|&a| c1.members().iter().all(|&b| g.mul(a, b) == g.mul(b, a))));
        // The top group swaps the two coordinates.
        let t = built.complement.as_ref().unwrap().generators()[0];
        assert_eq!(&g.conjugate_subgroup(c0, t), c1);
    }

    #[test]
    fn large_semidirect_uses_lazy_product() {
        let built = build(&GroupSpec::holomorph(GroupSpec::Alternating { n: 5 })).unwrap();
        let g = &built.group;
        assert_eq!(g.order(), 7200);
        assert!(!g.has_table());
        assert_eq!(g.check_associativity(), None);
        assert!(g.is_normal(built.base.as_ref().unwrap()));
    }
}
