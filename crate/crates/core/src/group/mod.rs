//! Finite groups on indexed elements.
//!
//! Every group has elements `0..order` with `0` the identity. Multiplication
//! is a stored table for groups up to [`TABLE_CAP`] elements; larger groups
//! keep their defining representation (permutations or component pairs) and
//! multiply on demand.

mod hom;
mod lattice;
mod subgroup;
mod sylow;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::caps::{Caps, TABLE_CAP};
use crate::error::{Error, Result};

pub use hom::{GroupHom, IsomorphismOutcome};
pub(crate) use hom::{fingerprint_candidates, HomSearch};
pub use lattice::{Classification, CoreSubgroups, SubgroupGroup};
pub use subgroup::Subgroup;
pub use sylow::PrimaryDecomposition;

/// Index of an element inside its group.
pub type Elem = u32;

/// Number of random triples used to spot-check associativity of large groups.
pub const ASSOCIATIVITY_SAMPLES: usize = 100_000;

enum Product {
    Table(Vec<Elem>),
    Permutations {
        perms: Vec<Box<[u32]>>,
        lookup: HashMap<Box<[u32]>, Elem>,
    },
    /// Elements `a + |A| * b` of a semidirect product `A ⋊ B`.
    Pairs {
        base: Arc<FiniteGroup>,
        acting: Arc<FiniteGroup>,
        action: Vec<Vec<Elem>>,
    },
}

#[derive(Default)]
struct Cache {
    generating_sequence: OnceLock<Vec<Elem>>,
    classes: OnceLock<lattice::Classes>,
    center: OnceLock<Subgroup>,
    sylows: OnceLock<Vec<(u64, Subgroup)>>,
    normal_subgroups: OnceLock<Result<Vec<Subgroup>>>,
}

/// An immutable finite group.
pub struct FiniteGroup {
    order: usize,
    product: Product,
    inverse: Vec<Elem>,
    orders: Vec<u32>,
    primes: Vec<u64>,
    generators: Vec<Elem>,
    labels: Option<Vec<String>>,
    cache: Cache,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("primes", &self.primes)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::assemble(1, Product::Table(vec![0]), vec![], None)
    }

    /// Builds a group from a row-major Cayley table.
    ///
    /// The table must be a Latin square with `0` as identity; associativity is
    /// not re-checked here (see [`FiniteGroup::check_associativity`]).
    pub fn from_table(order: usize, table: Vec<Elem>, generators: Option<Vec<Elem>>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidSpec(format!(
                "table of length {} does not match order {order}",
                table.len()
            )));
        }
        let mut seen = vec![false; order];
        for row in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for col in 0..order {
                let v = table[row * order + col] as usize;
                if v >= order || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidSpec(format!("row {row} is not a permutation")));
                }
            }
            if table[row] as usize != row || table[row * order] as usize != row {
                return Err(Error::InvalidSpec("element 0 is not the identity".into()));
            }
        }
        let mut g = Self::assemble(order, Product::Table(table), generators.unwrap_or_default(), None);
        if g.generators.is_empty() && order > 1 {
            g.generators = g.generating_sequence().to_vec();
        }
        Ok(g)
    }

    /// Closure of `generators` under composition, indexed in breadth-first
    /// discovery order from the identity.
    ///
    /// Permutations act on the right: the product `a * b` applies `a` first.
    pub fn from_permutations(degree: usize, generators: &[Vec<u32>], cap: usize) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {k} has length {} but degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v as usize >= degree || std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::InvalidPermutation(format!("generator {k} is not a bijection")));
                }
            }
        }
        let identity: Box<[u32]> = (0..degree as u32).collect();
        let gens: Vec<Box<[u32]>> = generators.iter().map(|g| g.clone().into_boxed_slice()).collect();
        let mut perms = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0 as Elem)]);
        let mut parent = vec![(0u32, 0u32)];
        let mut right: Vec<Elem> = Vec::new();
        let mut head = 0;
        while head < perms.len() {
            for (k, g) in gens.iter().enumerate() {
                let prod: Box<[u32]> = perms[head].iter().map(|&i| g[i as usize]).collect();
                let next = match lookup.get(&prod) {
                    Some(&idx) => idx,
                    None => {
                        let idx = perms.len() as Elem;
                        if perms.len() >= cap {
                            return Err(Error::OrderCapExceeded {
                                what: "permutation closure",
                                order: perms.len() + 1,
                                cap,
                            });
                        }
                        lookup.insert(prod.clone(), idx);
                        perms.push(prod);
                        parent.push((head as u32, k as u32));
                        idx
                    }
                };
                right.push(next);
            }
            head += 1;
        }
        let order = perms.len();
        let generator_idx: Vec<Elem> = gens.iter().map(|g| lookup[g]).collect();
        let labels = (order <= TABLE_CAP).then(|| perms.iter().map(|p| cycle_notation(p)).collect());
        let product = if order <= TABLE_CAP {
            Product::Table(table_from_cayley_graph(order, gens.len(), &parent, &right))
        } else {
            Product::Permutations { perms, lookup }
        };
        Ok(Self::assemble(order, product, generator_idx, labels))
    }

    /// Semidirect product `A ⋊ B` with `action[b]` the automorphism of `A`
    /// attached to `b`, so `(a, b)(a', b') = (a * action[b][a'], b b')`.
    pub(crate) fn from_pairs(
        base: Arc<FiniteGroup>,
        acting: Arc<FiniteGroup>,
        action: Vec<Vec<Elem>>,
        generators: Vec<Elem>,
        labels: bool,
        cap: usize,
    ) -> Result<Self> {
        let (na, nb) = (base.order(), acting.order());
        let order = na * nb;
        Caps::check("semidirect product", order, cap)?;
        let labels = labels.then(|| {
            (0..order)
                .map(|i| format!("({},{})", base.label(i as Elem % na as Elem), acting.label((i / na) as Elem)))
                .collect()
        });
        let pairs = Product::Pairs { base, acting, action };
        let product = if order <= TABLE_CAP {
            let mut table = vec![0; order * order];
            for x in 0..order {
                for y in 0..order {
                    table[x * order + y] = pairs_mul(&pairs, x as Elem, y as Elem);
                }
            }
            Product::Table(table)
        } else {
            pairs
        };
        Ok(Self::assemble(order, product, generators, labels))
    }

    fn assemble(order: usize, product: Product, generators: Vec<Elem>, labels: Option<Vec<String>>) -> Self {
        let mut g = Self {
            order,
            product,
            inverse: Vec::new(),
            orders: Vec::new(),
            primes: arith::prime_divisors(order as u64),
            generators,
            labels,
            cache: Cache::default(),
        };
        g.inverse = match &g.product {
            Product::Table(t) => {
                let mut inv = vec![0; order];
                for a in 0..order {
                    let row = &t[a * order..(a + 1) * order];
                    inv[a] = row.iter().position(|&v| v == 0).unwrap() as Elem;
                }
                inv
            }
            Product::Permutations { perms, lookup } => perms
                .iter()
                .map(|p| {
                    let mut q = vec![0u32; p.len()];
                    for (i, &v) in p.iter().enumerate() {
                        q[v as usize] = i as u32;
                    }
                    lookup[q.as_slice()]
                })
                .collect(),
            Product::Pairs { base, acting, action } => {
                let na = base.order();
                (0..order)
                    .map(|x| {
                        let (a, b) = (x % na, (x / na) as Elem);
                        let bi = acting.inv(b);
                        action[bi as usize][base.inv(a as Elem) as usize] + na as Elem * bi
                    })
                    .collect()
            }
        };
        g.orders = (0..order as Elem)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = g.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.product {
            Product::Table(t) => t[a as usize * self.order + b as usize],
            Product::Permutations { perms, lookup } => {
                let (p, q) = (&perms[a as usize], &perms[b as usize]);
                let prod: Box<[u32]> = p.iter().map(|&i| q[i as usize]).collect();
                lookup[&prod]
            }
            pairs => pairs_mul(pairs, a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.orders[a as usize] as i64;
        let mut e = k.rem_euclid(ord);
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    /// π(G): the primes dividing the order, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The generators the group was constructed from.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a as usize].clone(),
            None => format!("#{a}"),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_sequence();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        arith::is_power_of(self.order as u64, p)
    }

    /// A short generating sequence chosen greedily: each step takes the
    /// lowest-index element that enlarges the generated subgroup the most.
    ///
    /// Groups without a stored table fall back to their constructor generators.
    pub fn generating_sequence(&self) -> &[Elem] {
        self.cache.generating_sequence.get_or_init(|| {
            if self.order > TABLE_CAP {
                return self.generators.iter().copied().filter(|&g| g != 0).collect();
            }
            let mut seq = Vec::new();
            let mut current = Subgroup::trivial(self.order);
            while current.order() < self.order {
                let mut best: Option<(usize, Elem, Subgroup)> = None;
                for g in self.elements() {
                    if current.contains(g) {
                        continue;
                    }
                    let cand = self.extend_subgroup(&current, &[g]);
                    let size = cand.order();
                    if best.as_ref().is_none_or(|(s, _, _)| size > *s) {
                        let full = size == self.order;
                        best = Some((size, g, cand));
                        if full {
                            break;
                        }
                    }
                }
                let (_, g, sub) = best.expect("proper subgroup has an element outside it");
                seq.push(g);
                current = sub;
            }
            seq
        })
    }

    /// Exhaustive associativity for order ≤ 200, otherwise a seeded sample of
    /// [`ASSOCIATIVITY_SAMPLES`] triples. Returns the first failing triple.
    pub fn check_associativity(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.order as Elem;
        let check = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if self.order <= 200 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Histogram of element orders, keyed by order.
    pub fn order_statistics(&self) -> Vec<(u32, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *counts.entry(o).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

fn pairs_mul(product: &Product, x: Elem, y: Elem) -> Elem {
    let Product::Pairs { base, acting, action } = product else {
        unreachable!()
    };
    let na = base.order() as Elem;
    let (a, b) = (x % na, x / na);
    let (a2, b2) = (y % na, y / na);
    base.mul(a, action[b as usize][a2 as usize]) + na * acting.mul(b, b2)
}

/// Rebuilds the full table from a breadth-first spanning tree: `parent[e] =
/// (p, k)` means `e = p * g_k`, and `right[e * k_count + k] = e * g_k`.
fn table_from_cayley_graph(order: usize, k_count: usize, parent: &[(u32, u32)], right: &[Elem]) -> Vec<Elem> {
    let mut table = vec![0; order * order];
    for a in 0..order {
        let row = &mut table[a * order..(a + 1) * order];
        row[0] = a as Elem;
        for b in 1..order {
            let (p, k) = parent[b];
            row[b] = right[row[p as usize] as usize * k_count + k as usize];
        }
    }
    table
}

pub(crate) fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = p[start] as usize;
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = p[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
