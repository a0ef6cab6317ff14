use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::params::Params;
use super::report::{
    automorphism_witness, elem_witness, invariants_name, subgroup_witness, Outcome, ReportBuilder,
    VerificationReport,
};
use crate::arith;
use crate::automorphisms::{
    automorphism_group, is_class_preserving, is_coleman, is_inner, is_p_central, out_col, outer_key,
    Automorphism, OuterQuotient,
};
use crate::caps::Caps;
use crate::constructors::{build_with, BuiltGroup, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup, SubgroupGroup};
use crate::structure::{
    commutator_violations, d_subgroup, k_automorphisms, nilpotent_by_cyclic_normals, pairwise_outer_distinct,
    predicted_k, presentation_from, TransversalChoice,
};

/// Every theorem identifier accepted by [`check`].
pub const THEOREM_IDS: &[&str] = &[
    "T2.1", "T2.2", "C2.4", "C2.5", "T2.6", "C2.7", "T2.9a", "T2.10", "L1.6", "T1.7", "T1.8", "C4.2", "T4.1",
    "T4.3", "T4.4", "T3.2", "T3.7",
];

/// Checks one theorem on one group.
///
/// Hypotheses are verified one by one; the conclusion is checked only when
/// all of them hold. Cap overruns give an `incomplete` report, not an error.
pub fn check(theorem_id: &str, spec: &GroupSpec, params: Option<&Value>, caps: &Caps) -> Result<VerificationReport> {
    let id = THEOREM_IDS
        .iter()
        .find(|t| t.eq_ignore_ascii_case(theorem_id.trim()))
        .ok_or_else(|| Error::UnknownTheoremId(theorem_id.to_string()))?;
    let params = Params::from_value(params)?;
    let mut b = ReportBuilder::new(id, spec);
    let built = match build_with(spec, caps) {
        Ok(built) => built,
        Err(e @ Error::OrderCapExceeded { .. }) => return b.finish(Err(e)),
        Err(e) => return Err(e),
    };
    let c = Ctx {
        spec,
        built: &built,
        g: &built.group,
        params: &params,
        caps,
    };
    let outcome = match *id {
        "T2.1" => t2_1(&c, &mut b),
        "T2.2" => t2_2(&c, &mut b),
        "C2.4" => c2_4(&c, &mut b),
        "C2.5" => c2_5(&c, &mut b),
        "T2.6" => t2_6(&c, &mut b),
        "C2.7" => c2_7(&c, &mut b),
        "T2.9a" => t2_9a(&c, &mut b),
        "T2.10" => t2_10(&c, &mut b),
        "L1.6" => l1_6(&c, &mut b),
        "T1.7" => heredity(&c, &mut b, false),
        "T1.8" => heredity(&c, &mut b, true),
        "C4.2" => c4_2(&c, &mut b),
        "T4.1" => nilpotent_by(&c, &mut b, Variant::Two),
        "T4.3" => nilpotent_by(&c, &mut b, Variant::AnyPrime),
        "T4.4" => nilpotent_by(&c, &mut b, Variant::NilpotentQuotient),
        "T3.2" => structure(&c, &mut b, true),
        "T3.7" => structure(&c, &mut b, false),
        _ => unreachable!("listed in THEOREM_IDS"),
    };
    b.finish(outcome)
}

struct Ctx<'a> {
    spec: &'a GroupSpec,
    built: &'a BuiltGroup,
    g: &'a FiniteGroup,
    params: &'a Params,
    caps: &'a Caps,
}

impl Ctx<'_> {
    fn subgroup(&self, key: &str) -> Result<Option<Subgroup>> {
        self.params.subgroup(key)?.map(|r| r.resolve(self.built)).transpose()
    }

    fn whole(&self) -> Subgroup {
        Subgroup::whole(self.g)
    }
}

fn normality_witness(g: &FiniteGroup, h: &Subgroup) -> Value {
    for &y in g.generating_sequence() {
        for &x in h.generators() {
            let c = g.conj(x, y);
            if !h.contains(c) {
                return json!({ "element": x, "conjugator": y, "conjugate": c });
            }
        }
    }
    Value::Null
}

/// Some member of `a` outside `b`.
fn escape_witness(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Value {
    a.members()
        .iter()
        .find(|&&x| !b.contains(x))
        .map_or(Value::Null, |&x| elem_witness(g, x))
}

fn hyp_normal(b: &mut ReportBuilder, g: &FiniteGroup, name: &str, h: &Subgroup) -> bool {
    b.hyp(format!("{name} is normal"), g.is_normal(h), normality_witness(g, h))
}

fn quotient_name(q: &OuterQuotient) -> String {
    match &q.invariants {
        Some(inv) => invariants_name(inv),
        None => format!("a non-abelian group of order {}", q.order()),
    }
}

fn out_col_trivial(g: &FiniteGroup, caps: &Caps) -> Result<Outcome> {
    let q = out_col(g, caps)?;
    Ok(if q.is_trivial() {
        Outcome::Conclusion(true, "Out_col = 1".into())
    } else {
        Outcome::Conclusion(
            false,
            format!(
                "Out_col ≅ {}; non-inner Coleman automorphism {}",
                quotient_name(&q),
                automorphism_witness(g, &q.representatives[1])
            ),
        )
    })
}

/// `σ|_H` on the re-indexed subgroup, when `σ` maps `H` onto itself.
fn restrict_to(sg: &SubgroupGroup, sigma: &Automorphism) -> Option<Automorphism> {
    sg.embedding
        .iter()
        .map(|&x| sg.position(sigma.apply(x)))
        .collect::<Option<Vec<Elem>>>()
        .map(Automorphism::from_images)
}

/// Generator images of an automorphism of a subgroup, in parent indices.
fn local_automorphism_witness(sg: &SubgroupGroup, sigma: &Automorphism) -> Value {
    let pairs: Vec<[Elem; 2]> = sg
        .group
        .generating_sequence()
        .iter()
        .map(|&s| [sg.embedding[s as usize], sg.embedding[sigma.apply(s) as usize]])
        .collect();
    json!({ "generator_images": pairs })
}

/// `|A / Inn(G)|` for a set `A` of automorphisms containing `Inn(G)`.
fn outer_order(g: &FiniteGroup, count: usize) -> usize {
    count * g.center().order() / g.order()
}

fn is_nilpotent_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    Ok(g.subgroup_as_group(h)?.group.is_nilpotent())
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    g.elements().any(|x| g.element_order(x) as usize == g.order())
}

/// Elements of prime-power order `p^k` in `h`, as a subgroup when they form one.
fn p_elements(g: &FiniteGroup, h: &Subgroup, p: u64) -> Option<Subgroup> {
    let set: Vec<Elem> = h
        .members()
        .iter()
        .copied()
        .filter(|&y| arith::is_power_of(u64::from(g.element_order(y)), p))
        .collect();
    g.subgroup_from_set(&set)
}

fn t2_1(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let k = c.g;
    let gsub = c.subgroup("G")?.unwrap_or_else(|| c.whole());
    if !b.hyp("G is normal in K", k.is_normal(&gsub), normality_witness(k, &gsub)) {
        return Ok(Outcome::Inapplicable);
    }
    let sg = k.subgroup_as_group(&gsub)?;
    let aut_g = automorphism_group(&sg.group, c.caps)?;
    let characteristic: Vec<Subgroup> = sg
        .group
        .normal_subgroups()?
        .iter()
        .filter(|h| aut_g.iter().all(|a| a.stabilizes(h)))
        .cloned()
        .collect();
    let n = match c.subgroup("N")? {
        Some(n) => n,
        None => characteristic
            .iter()
            .find(|h| !h.is_trivial())
            .map_or_else(|| Subgroup::trivial(k.order()), |h| sg.lift(k, h)),
    };
    let inside = !n.is_trivial() && n.is_subset_of(&gsub);
    if !b.hyp(
        "N is a non-trivial subgroup of G",
        inside,
        json!({ "N": subgroup_witness(&n), "G": subgroup_witness(&gsub) }),
    ) {
        return Ok(Outcome::Inapplicable);
    }
    let local = sg.restrict(&n).expect("N lies in G");
    let moving = aut_g.iter().find(|a| !a.stabilizes(&local));
    b.hyp(
        "N is characteristic in G",
        moving.is_none(),
        moving.map_or(Value::Null, |a| local_automorphism_witness(&sg, a)),
    );
    let smaller = characteristic
        .iter()
        .find(|h| !h.is_trivial() && h.order() < local.order() && h.is_subset_of(&local));
    b.hyp(
        "N is minimal among non-trivial characteristic subgroups of G",
        smaller.is_none(),
        smaller.map_or(Value::Null, |h| subgroup_witness(&sg.lift(k, h))),
    );
    let cn = k.centralizer_of(&n);
    b.hyp("C_K(N) ⊆ N", cn.is_subset_of(&n), escape_witness(k, &cn, &n));
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    out_col_trivial(k, c.caps)
}

/// First prime with a non-trivial self-centralizing `O_p`, else the first
/// prime with `O_p ≠ 1`, else the smallest prime divisor.
fn default_t2_2_prime(g: &FiniteGroup) -> Result<u64> {
    let mut fallback = None;
    for &p in g.primes() {
        let o = g.o_p(p)?;
        if o.is_trivial() {
            continue;
        }
        if g.centralizer_of(&o).is_subset_of(&o) {
            return Ok(p);
        }
        fallback.get_or_insert(p);
    }
    Ok(fallback.or_else(|| g.primes().first().copied()).unwrap_or(1))
}

fn t2_2(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let given_p = c.params.integer("p")?;
    let (p, pg) = match c.subgroup("P")? {
        Some(s) => (given_p.or_else(|| arith::prime_power_base(s.order() as u64)).unwrap_or(1), s),
        None => {
            let p = match given_p {
                Some(p) => p,
                None => default_t2_2_prime(g)?,
            };
            let s = if arith::is_prime(p) { g.o_p(p)? } else { Subgroup::trivial(g.order()) };
            (p, s)
        }
    };
    let ok = arith::is_prime(p) && !pg.is_trivial() && arith::is_power_of(pg.order() as u64, p);
    if !b.hyp("P is a non-trivial p-group", ok, json!({ "p": p, "P": subgroup_witness(&pg) })) {
        return Ok(Outcome::Inapplicable);
    }
    hyp_normal(b, g, "P", &pg);
    let cp = g.centralizer_of(&pg);
    b.hyp("C_G(P) ⊆ P", cp.is_subset_of(&pg), escape_witness(g, &cp, &pg));
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let autos = automorphism_group(g, c.caps)?;
    let mut central = 0;
    let mut bad = None;
    for a in &autos {
        if is_p_central(g, a, p)? {
            central += 1;
            if bad.is_none() && is_inner(g, a).is_none() {
                bad = Some(a);
            }
        }
    }
    let q = out_col(g, c.caps)?;
    let detail = match bad {
        Some(a) => format!("non-inner {p}-central automorphism {}", automorphism_witness(g, a)),
        None if !q.is_trivial() => format!("Out_col ≅ {}", quotient_name(&q)),
        None => format!("all {central} {p}-central automorphisms are inner; Out_col = 1"),
    };
    Ok(Outcome::Conclusion(bad.is_none() && q.is_trivial(), detail))
}

/// Why `factors` fail to exhibit `base` as a direct power of one simple
/// group, or `None` when they do.
fn direct_power_problem(g: &FiniteGroup, base: &Subgroup, factors: &[Subgroup], caps: &Caps) -> Result<Option<Value>> {
    let Some(first) = factors.first() else {
        return Ok(Some(json!("no factors given")));
    };
    let first_group = g.subgroup_as_group(first)?.group;
    for (i, f) in factors.iter().enumerate() {
        if !f.is_subset_of(base) {
            return Ok(Some(json!({ "factor": i, "problem": "not inside the base" })));
        }
        let fg = g.subgroup_as_group(f)?.group;
        if !fg.is_simple()? {
            return Ok(Some(json!({ "factor": i, "problem": "not simple", "subgroup": subgroup_witness(f) })));
        }
        if i > 0 && !fg.is_isomorphic(&first_group, caps)?.isomorphic {
            return Ok(Some(json!({ "factor": i, "problem": "not isomorphic to factor 0" })));
        }
        for (j, e) in factors.iter().enumerate().skip(i + 1) {
            let commute = f
                .generators()
                .iter()
                .all(|&x| e.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
            if !commute {
                return Ok(Some(json!({ "factors": [i, j], "problem": "do not commute" })));
            }
        }
    }
    let product: usize = factors.iter().map(Subgroup::order).product();
    let joined = factors.iter().fold(Subgroup::trivial(g.order()), |acc, f| g.join(&acc, f));
    if product != base.order() || joined.order() != base.order() {
        return Ok(Some(json!({
            "problem": "factors do not multiply to the base",
            "product_of_orders": product,
            "base_order": base.order(),
        })));
    }
    Ok(None)
}

fn c2_4(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let Some(base) = c.subgroup("base")?.or_else(|| c.built.base.clone()) else {
        b.hyp("a base subgroup is given", false, json!("no base subgroup given or built"));
        return Ok(Outcome::Inapplicable);
    };
    hyp_normal(b, g, "The base", &base);
    let factors: Vec<Subgroup> = match c.params.list("factors")? {
        Some(refs) => refs.iter().map(|r| r.resolve(c.built)).collect::<Result<_>>()?,
        None => c.built.coordinates.clone(),
    };
    let problem = direct_power_problem(g, &base, &factors, c.caps)?;
    b.hyp(
        "The base is a direct power of a simple group",
        problem.is_none(),
        problem.unwrap_or(Value::Null),
    );
    let cb = g.centralizer_of(&base);
    b.hyp("C_G(base) ⊆ Z(base)", cb.is_subset_of(&base), escape_witness(g, &cb, &base));
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    out_col_trivial(g, c.caps)
}

/// `(k, n)` for specs of the form `S_k ≀ S_n` with small `n` given cyclically.
fn symmetric_wreath_shape(spec: &GroupSpec) -> Option<(usize, usize)> {
    let GroupSpec::Wreath { base, top } = spec else {
        return None;
    };
    let k = match **base {
        GroupSpec::Symmetric { n } => n,
        GroupSpec::Cyclic { n } if n <= 2 => n,
        _ => return None,
    };
    let n = match **top {
        GroupSpec::Symmetric { n } => n,
        GroupSpec::Cyclic { n } if n <= 2 => n,
        _ => return None,
    };
    Some((k, n))
}

fn c2_5(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let shape = match (c.params.integer("k")?, c.params.integer("n")?) {
        (Some(k), Some(n)) => Some((k as usize, n as usize)),
        _ => symmetric_wreath_shape(c.spec),
    };
    let Some((k, n)) = shape else {
        b.hyp(
            "G ≅ S_k ≀ S_n",
            false,
            json!("k and n are neither given nor readable from the spec"),
        );
        return Ok(Outcome::Inapplicable);
    };
    let reference = build_with(&crate::constructors::catalog::symmetric_wreath_perm(k, n), c.caps)?.into_group();
    let iso = g.is_isomorphic(&reference, c.caps)?.isomorphic;
    b.hyp(
        format!("G ≅ S_{k} ≀ S_{n}"),
        iso,
        json!({ "k": k, "n": n, "order": g.order(), "reference_order": reference.order() }),
    );
    if !iso {
        return Ok(Outcome::Inapplicable);
    }
    out_col_trivial(g, c.caps)
}

fn holomorph_base<'s>(c: &Ctx<'s>, b: &mut ReportBuilder) -> Option<&'s GroupSpec> {
    let base = match c.spec {
        GroupSpec::Holomorph { base } => Some(base.as_ref()),
        _ => None,
    };
    b.hyp("G is a holomorph Hol(S)", base.is_some(), json!("the spec is not a holomorph"));
    base
}

fn t2_6(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let Some(base) = holomorph_base(c, b) else {
        return Ok(Outcome::Inapplicable);
    };
    let s = build_with(base, c.caps)?.into_group();
    let simple = s.is_simple()?;
    let witness = if simple {
        Value::Null
    } else if s.order() == 1 {
        json!("S is trivial")
    } else {
        subgroup_witness(&s.normal_subgroups()?[1])
    };
    b.hyp("S is simple", simple, witness);
    // An abelian simple S is cyclic of prime order, hence nilpotent.
    b.hyp(
        "S is non-abelian, or nilpotent",
        !s.is_abelian() || s.is_nilpotent(),
        json!({ "abelian": s.is_abelian(), "nilpotent": s.is_nilpotent() }),
    );
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    out_col_trivial(c.g, c.caps)
}

fn c2_7(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let Some(base) = holomorph_base(c, b) else {
        return Ok(Outcome::Inapplicable);
    };
    let s = build_with(base, c.caps)?.into_group();
    let bad_prime = s
        .sylows()
        .iter()
        .find(|(_, p)| !s.is_normal(p))
        .map(|(p, _)| *p);
    b.hyp(
        "N is nilpotent",
        bad_prime.is_none(),
        json!({ "order": s.order(), "prime_with_non_normal_sylow": bad_prime }),
    );
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    out_col_trivial(c.g, c.caps)
}

fn t2_9a(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let mins = g.minimal_normal_subgroups()?;
    let unique = b.hyp(
        "G has a unique minimal non-trivial normal subgroup N",
        mins.len() == 1,
        json!({ "minimal_normal_subgroups": mins.iter().map(subgroup_witness).collect::<Vec<_>>() }),
    );
    if !unique {
        return Ok(Outcome::Inapplicable);
    }
    let n = &mins[0];
    if !b.hyp("N is non-abelian", !g.is_abelian_subgroup(n), subgroup_witness(n)) {
        return Ok(Outcome::Inapplicable);
    }
    out_col_trivial(g, c.caps)
}

/// The simple direct factors of `e`, or a witness that `e` is not a direct
/// product of non-abelian simple groups.
fn nonabelian_simple_factors(g: &FiniteGroup, e: &Subgroup) -> Result<std::result::Result<Vec<Subgroup>, Value>> {
    if e.is_trivial() {
        return Ok(Err(json!("E is trivial")));
    }
    let se = g.subgroup_as_group(e)?;
    let mut factors = Vec::new();
    for m in se.group.minimal_normal_subgroups()? {
        let lifted = se.lift(g, &m);
        let mg = se.group.subgroup_as_group(&m)?.group;
        if mg.is_abelian() || !mg.is_simple()? {
            return Ok(Err(json!({ "problem": "minimal normal subgroup of E is not non-abelian simple",
                                   "subgroup": subgroup_witness(&lifted) })));
        }
        factors.push(lifted);
    }
    let product: usize = factors.iter().map(Subgroup::order).product();
    if product != e.order() {
        return Ok(Err(json!({ "problem": "minimal normal subgroups do not multiply to E",
                               "product_of_orders": product, "order": e.order() })));
    }
    Ok(Ok(factors))
}

fn t2_10(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let e = match c.subgroup("E")? {
        Some(e) => e,
        None => g.layer()?,
    };
    let p = match c.params.integer("p")? {
        Some(p) => p,
        None => arith::prime_divisors(e.order() as u64)
            .into_iter()
            .find(|&q| q != 2)
            .unwrap_or(2),
    };
    b.hyp("p is an odd prime", arith::is_prime(p) && p != 2, json!({ "p": p }));
    hyp_normal(b, g, "E", &e);
    let factors = match nonabelian_simple_factors(g, &e)? {
        Ok(f) => {
            b.hyp("E is a direct product of non-abelian simple groups", true, Value::Null);
            f
        }
        Err(w) => {
            b.hyp("E is a direct product of non-abelian simple groups", false, w);
            return Ok(Outcome::Inapplicable);
        }
    };
    let ce = g.centralizer_of(&e);
    b.hyp("C_K(E) ⊆ E", ce.is_subset_of(&e), escape_witness(g, &ce, &e));
    let missed = factors.iter().find(|f| !(f.order() as u64).is_multiple_of(p));
    b.hyp(
        "p divides the order of every simple factor of E",
        missed.is_none(),
        missed.map_or(Value::Null, subgroup_witness),
    );
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let q = out_col(g, c.caps)?;
    Ok(Outcome::Conclusion(
        !(q.order() as u64).is_multiple_of(p),
        format!("|Out_col| = {} and p = {p}", q.order()),
    ))
}

/// Normal subgroups and primes to scan: the given ones, or all.
fn scan_targets(c: &Ctx, b: &mut ReportBuilder) -> Result<(Vec<Subgroup>, Vec<u64>, bool)> {
    let g = c.g;
    let given_n = c.subgroup("N")?;
    let given_p = c.params.integer("p")?;
    let normals = match &given_n {
        Some(n) => {
            hyp_normal(b, g, "N", n);
            vec![n.clone()]
        }
        None => g.normal_subgroups()?.to_vec(),
    };
    let primes = match given_p {
        Some(p) => {
            b.hyp("p is a prime", arith::is_prime(p), json!({ "p": p }));
            vec![p]
        }
        None => g.primes().to_vec(),
    };
    Ok((normals, primes, given_n.is_some() && given_p.is_some()))
}

fn l1_6(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let (normals, primes, _) = scan_targets(c, b)?;
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let autos = automorphism_group(g, c.caps)?;
    let gens = g.generating_sequence();
    let mut checked = 0usize;
    for n in &normals {
        let zn = g.centralizer_of(n).intersection(n, g);
        for &p in &primes {
            let opz = p_elements(g, &zn, p).expect("Z(N) is abelian");
            for a in &autos {
                let fixes_n = n.generators().iter().all(|&y| a.apply(y) == y);
                let drift = |s: Elem| g.mul(g.inv(s), a.apply(s));
                if !arith::is_power_of(a.order() as u64, p) || !fixes_n || !gens.iter().all(|&s| n.contains(drift(s))) {
                    continue;
                }
                checked += 1;
                let violation = |what: &str| {
                    Outcome::Conclusion(
                        false,
                        format!(
                            "{what}: N = {}, p = {p}, α = {}",
                            subgroup_witness(n),
                            automorphism_witness(g, a)
                        ),
                    )
                };
                if !gens.iter().all(|&s| opz.contains(drift(s))) {
                    return Ok(violation("α does not induce the identity on G/O_p(Z(N))"));
                }
                let conj_by_opz = opz
                    .members()
                    .iter()
                    .any(|&z| gens.iter().all(|&s| a.apply(s) == g.conj(s, z)));
                if is_p_central(g, a, p)? && !conj_by_opz {
                    return Ok(violation("p-central α is not conjugation by an element of O_p(Z(N))"));
                }
            }
        }
    }
    Ok(Outcome::Conclusion(
        true,
        format!(
            "{checked} automorphisms checked over {} normal subgroups and {} primes",
            normals.len(),
            primes.len()
        ),
    ))
}

fn heredity(c: &Ctx, b: &mut ReportBuilder, intersection_only: bool) -> Result<Outcome> {
    let g = c.g;
    let (normals, primes, both_given) = scan_targets(c, b)?;
    let index = |n: &Subgroup| (g.order() / n.order()) as u64;
    if both_given {
        let n = &normals[0];
        b.hyp(
            "p does not divide |G/N|",
            index(n) % primes[0] != 0,
            json!({ "p": primes[0], "index": index(n) }),
        );
    }
    let pairs: Vec<(&Subgroup, u64)> = normals
        .iter()
        .filter(|n| n.order() < g.order())
        .flat_map(|n| primes.iter().map(move |&p| (n, p)))
        .filter(|(n, p)| index(n) % p != 0)
        .collect();
    b.hyp(
        "some proper normal N and prime p have p ∤ |G/N|",
        !pairs.is_empty(),
        json!({ "pairs": pairs.len() }),
    );
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let autos = automorphism_group(g, c.caps)?;
    let flags: Vec<(bool, bool)> = autos
        .iter()
        .map(|a| (is_class_preserving(g, a), is_coleman(g, a)))
        .collect();
    let count = |f: fn(&(bool, bool)) -> bool| outer_order(g, flags.iter().filter(|x| f(x)).count());
    let out_c_g = count(|x| x.0);
    let out_col_g = count(|x| x.1);
    let both_g = count(|x| x.0 && x.1);
    let mut checked = 0;
    for (n, p) in pairs {
        let sg = g.subgroup_as_group(n)?;
        let aut_n = match automorphism_group(&sg.group, c.caps) {
            Ok(a) => a,
            Err(e @ Error::OrderCapExceeded { .. }) => {
                b.note(format!("N of order {} skipped: {e}", n.order()));
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        let h = &sg.group;
        let fail = |what: String| Ok(Outcome::Conclusion(false, format!("N = {}, p = {p}: {what}", subgroup_witness(n))));
        let n_flags: Vec<(bool, bool)> = aut_n
            .iter()
            .map(|a| (is_class_preserving(h, a), is_coleman(h, a)))
            .collect();
        let n_count = |f: fn(&(bool, bool)) -> bool| outer_order(h, n_flags.iter().filter(|x| f(x)).count());
        let p_prime = |m: usize| !(m as u64).is_multiple_of(p);
        if intersection_only {
            if p_prime(n_count(|x| x.0 && x.1)) && !p_prime(both_g) {
                return fail(format!("|Out_c(N) ∩ Out_col(N)| is prime to p but |Out_c(G) ∩ Out_col(G)| = {both_g}"));
            }
            continue;
        }
        for (a, &(cp, col)) in autos.iter().zip(&flags) {
            if !(cp || col) || !arith::is_power_of(a.order() as u64, p) {
                continue;
            }
            let Some(r) = restrict_to(&sg, a) else {
                return fail(format!("{} does not map N onto itself", automorphism_witness(g, a)));
            };
            if cp && !is_class_preserving(h, &r) {
                return fail(format!("restriction of {} is not class-preserving", automorphism_witness(g, a)));
            }
            if col && !is_coleman(h, &r) {
                return fail(format!("restriction of {} is not Coleman", automorphism_witness(g, a)));
            }
        }
        if p_prime(n_count(|x| x.0)) && !p_prime(out_c_g) {
            return fail(format!("|Out_c(N)| is prime to p but |Out_c(G)| = {out_c_g}"));
        }
        if p_prime(n_count(|x| x.1)) && !p_prime(out_col_g) {
            return fail(format!("|Out_col(N)| is prime to p but |Out_col(G)| = {out_col_g}"));
        }
    }
    Ok(Outcome::Conclusion(
        true,
        format!("{checked} (N, p) pairs checked; |Out_c| = {out_c_g}, |Out_col| = {out_col_g}, |Out_c ∩ Out_col| = {both_g}"),
    ))
}

fn c4_2(c: &Ctx, b: &mut ReportBuilder) -> Result<Outcome> {
    let g = c.g;
    let n = match c.subgroup("N")? {
        Some(n) => n,
        None => g.derived_subgroup(&c.whole()),
    };
    hyp_normal(b, g, "N", &n);
    let gens = g.generating_sequence();
    let outside = gens
        .iter()
        .flat_map(|&x| gens.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| !n.contains(g.commutator(x, y)));
    b.hyp(
        "G/N is abelian",
        outside.is_none(),
        outside.map_or(Value::Null, |(x, y)| json!({ "commutator_of": [x, y], "value": g.commutator(x, y) })),
    );
    let primes = match c.params.integer("p")? {
        Some(p) => {
            b.hyp("p is a prime dividing |G|", g.primes().contains(&p), json!({ "p": p }));
            vec![p]
        }
        None => g.primes().to_vec(),
    };
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let autos: Vec<Automorphism> = automorphism_group(g, c.caps)?
        .into_iter()
        .filter(|a| is_class_preserving(g, a) && is_coleman(g, a))
        .collect();
    let mut checked = 0;
    for &p in &primes {
        let sylows = g.all_sylow_subgroups(p)?;
        let nps: Vec<Subgroup> = sylows.iter().map(|s| g.join(&n, s)).collect();
        for a in &autos {
            checked += 1;
            let inner = is_inner(g, a);
            let local = match inner {
                Some(h) => a.agrees_with_conjugation_on(g, &nps[0], h),
                None => nps.iter().any(|np| a.conjugation_witness_on(g, np).is_some()),
            };
            if inner.is_some() != local {
                return Ok(Outcome::Conclusion(
                    false,
                    format!(
                        "p = {p}: inner = {}, agrees with a conjugation on some NP = {local}; σ = {}",
                        inner.is_some(),
                        automorphism_witness(g, a)
                    ),
                ));
            }
        }
    }
    Ok(Outcome::Conclusion(
        true,
        format!("{} class-preserving Coleman automorphisms checked over {} primes ({checked} cases)", autos.len(), primes.len()),
    ))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Two,
    AnyPrime,
    NilpotentQuotient,
}

fn nilpotent_by(c: &Ctx, b: &mut ReportBuilder, variant: Variant) -> Result<Outcome> {
    let g = c.g;
    let n = match c.subgroup("N")? {
        Some(n) => n,
        None => g.core_subgroups(2)?.fitting,
    };
    if !hyp_normal(b, g, "N", &n) {
        return Ok(Outcome::Inapplicable);
    }
    b.hyp("N is nilpotent", is_nilpotent_subgroup(g, &n)?, subgroup_witness(&n));
    let quotient = g.quotient(&n)?.0;
    if variant == Variant::NilpotentQuotient {
        b.hyp("G/N is nilpotent", quotient.is_nilpotent(), json!({ "quotient_order": quotient.order() }));
    } else {
        b.hyp("G/N is cyclic", is_cyclic(&quotient), json!({ "quotient_order": quotient.order() }));
    }
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let sn = g.subgroup_as_group(&n)?.group;
    let sylow_of_n_abelian = |p: u64| -> Result<bool> {
        Ok(match sn.sylow_subgroup(p) {
            Ok(s) => sn.is_abelian_subgroup(s),
            Err(Error::NotADivisor { .. }) => true,
            Err(e) => return Err(e),
        })
    };
    let sylow_of_quotient_cyclic = |p: u64| -> Result<bool> {
        Ok(match quotient.sylow_subgroup(p) {
            Ok(s) => s.members().iter().any(|&x| quotient.element_order(x) as usize == s.order()),
            Err(Error::NotADivisor { .. }) => true,
            Err(e) => return Err(e),
        })
    };
    let admissible = |p: u64| -> Result<bool> {
        Ok(sylow_of_n_abelian(p)? && (variant != Variant::NilpotentQuotient || sylow_of_quotient_cyclic(p)?))
    };
    let given = match variant {
        Variant::Two => Some(2),
        _ => c.params.integer("p")?,
    };
    let primes: Vec<u64> = match given {
        Some(p) => {
            b.hyp("p is a prime", arith::is_prime(p), json!({ "p": p }));
            b.hyp("The Sylow p-subgroup of N is abelian", sylow_of_n_abelian(p)?, json!({ "p": p }));
            if variant == Variant::NilpotentQuotient {
                b.hyp("The Sylow p-subgroup of G/N is cyclic", sylow_of_quotient_cyclic(p)?, json!({ "p": p }));
            }
            vec![p]
        }
        None => {
            let mut ok = Vec::new();
            for &p in g.primes() {
                if admissible(p)? {
                    ok.push(p);
                }
            }
            b.hyp(
                "some prime p meets the Sylow conditions",
                !ok.is_empty(),
                json!({ "primes": g.primes() }),
            );
            ok
        }
    };
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let autos: Vec<Automorphism> = automorphism_group(g, c.caps)?
        .into_iter()
        .filter(|a| is_class_preserving(g, a) && is_coleman(g, a))
        .collect();
    let mut checked = 0;
    for &p in &primes {
        for a in autos.iter().filter(|a| arith::is_power_of(a.order() as u64, p)) {
            checked += 1;
            if is_inner(g, a).is_none() {
                return Ok(Outcome::Conclusion(
                    false,
                    format!("non-inner class-preserving Coleman automorphism of {p}-power order {}", automorphism_witness(g, a)),
                ));
            }
        }
    }
    Ok(Outcome::Conclusion(
        true,
        format!("{checked} class-preserving Coleman automorphisms of prime-power order are inner (p in {primes:?})"),
    ))
}

/// Default `N` for the structure theorem: the built base, else the Fitting
/// subgroup, else the largest admissible normal subgroup.
fn default_structure_normal(c: &Ctx, abelian: bool) -> Result<Subgroup> {
    let g = c.g;
    let candidates: Vec<Subgroup> = nilpotent_by_cyclic_normals(g)?
        .into_iter()
        .filter(|n| !abelian || g.is_abelian_subgroup(n))
        .collect();
    let fitting = g.core_subgroups(2)?.fitting;
    Ok(c.built
        .base
        .clone()
        .filter(|n| candidates.contains(n))
        .or_else(|| candidates.contains(&fitting).then(|| fitting.clone()))
        .or_else(|| candidates.last().cloned())
        .unwrap_or(fitting))
}

fn structure(c: &Ctx, b: &mut ReportBuilder, abelian: bool) -> Result<Outcome> {
    let g = c.g;
    let n = match c.subgroup("N")? {
        Some(n) => n,
        None => default_structure_normal(c, abelian)?,
    };
    if !hyp_normal(b, g, "N", &n) {
        return Ok(Outcome::Inapplicable);
    }
    b.hyp("N is nilpotent", is_nilpotent_subgroup(g, &n)?, subgroup_witness(&n));
    let quotient = g.quotient(&n)?.0;
    let qo = quotient.order() as u64;
    b.hyp(
        "G/N is a non-trivial cyclic p-group",
        qo > 1 && arith::prime_power_base(qo).is_some() && is_cyclic(&quotient),
        json!({ "quotient_order": qo }),
    );
    if abelian {
        b.hyp("N is abelian", g.is_abelian_subgroup(&n), subgroup_witness(&n));
    }
    if !b.all_passed() {
        return Ok(Outcome::Inapplicable);
    }
    let pres = presentation_from(g, &n)?;
    let mut failures: Vec<String> = Vec::new();
    for i in 0..pres.k() {
        if let Err(e) = d_subgroup(&pres, i) {
            failures.push(format!("D_{} is not a subgroup: {e}", i + 1));
        }
    }
    if !failures.is_empty() {
        return Ok(Outcome::Conclusion(false, failures.join("; ")));
    }
    let k_low = predicted_k(&pres, TransversalChoice::Lowest)?;
    let k_high = predicted_k(&pres, TransversalChoice::Highest)?;
    let maps = |k| match k_automorphisms(&pres, k) {
        Ok(a) => Ok(Ok(a)),
        Err(e @ (Error::InvalidTwist(_) | Error::NotAnAutomorphism(_))) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    };
    let (low, high) = match (maps(&k_low)?, maps(&k_high)?) {
        (Ok(l), Ok(h)) => (l, h),
        (Err(e), _) | (_, Err(e)) => return Ok(Outcome::Conclusion(false, format!("a map in K fails: {e}"))),
    };
    if !low.iter().all(|a| a.apply(pres.x) == pres.x && is_coleman(g, a)) {
        failures.push("some map in K is not a Coleman automorphism fixing x".into());
    }
    if !pairwise_outer_distinct(g, &low) {
        failures.push("two maps in K differ by an inner automorphism".into());
    }
    let keys = |autos: &[Automorphism]| autos.iter().map(|a| outer_key(g, a)).collect::<BTreeSet<_>>();
    if keys(&low) != keys(&high) {
        failures.push("the transversal choice changes K modulo Inn(G)".into());
    }
    if !pres.r_divides_last() {
        failures.push(format!("some r_i does not divide r_k (r = {:?})", pres.r));
    }
    let q = out_col(g, c.caps)?;
    if q.order() != k_low.order {
        failures.push(format!("|Out_col| = {} but |K| = {}", q.order(), k_low.order));
    }
    let violations = commutator_violations(&pres, &q.ambient);
    if let Some(v) = violations.first() {
        failures.push(format!(
            "commutator condition {} fails for {} automorphisms, first {}",
            v.condition,
            violations.len(),
            json!(v)
        ));
    }
    let mut extra = String::new();
    if let Some(pred) = &k_low.invariants {
        if q.invariants.as_ref() != Some(pred) {
            failures.push(format!(
                "Out_col ≅ {} but K predicts {}",
                quotient_name(&q),
                invariants_name(pred)
            ));
        } else if q.order() == k_low.order {
            let spec = GroupSpec::Abelian {
                invariants: pred.iter().map(|&x| x as usize).collect(),
            };
            let reference = build_with(&spec, c.caps)?.into_group();
            if !q.cosets.is_isomorphic(&reference, c.caps)?.isomorphic {
                failures.push(format!("Out_col is not isomorphic to {}", invariants_name(pred)));
            }
        }
    } else if failures.is_empty() {
        match k_as_group(&low)? {
            Some(kg) => {
                if !q.cosets.is_isomorphic(&kg, c.caps)?.isomorphic {
                    failures.push("K is a group but not isomorphic to Out_col".into());
                }
            }
            None => extra = "; K is not closed under composition and was compared as a transversal only".into(),
        }
    }
    if !failures.is_empty() {
        return Ok(Outcome::Conclusion(false, failures.join("; ")));
    }
    Ok(Outcome::Conclusion(
        true,
        format!(
            "Out_col ≅ {}; |K| = {}; r = {:?}{extra}",
            quotient_name(&q),
            k_low.order,
            pres.r
        ),
    ))
}

/// `K` as an abstract group when it is closed under composition.
fn k_as_group(autos: &[Automorphism]) -> Result<Option<FiniteGroup>> {
    let mut sorted = autos.to_vec();
    sorted.sort_unstable();
    let m = sorted.len();
    let mut table = Vec::with_capacity(m * m);
    for a in &sorted {
        for c in &sorted {
            match sorted.binary_search(&a.compose(c)) {
                Ok(i) => table.push(i as Elem),
                Err(_) => return Ok(None),
            }
        }
    }
    FiniteGroup::from_table(m, table, None).map(Some)
}
