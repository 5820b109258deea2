//! Power-structure predicates with witnessed verdicts.
//!
//! Every `false` verdict carries a witness that can be re-checked against
//! the defining condition. Pair loops run in parallel but always report the
//! first failure in lexicographic pair order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::structure::{self, sample_pairs};
use crate::{ElemId, Error, GroupHandle, Subgroup};

/// How pair-quantified conditions are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairPolicy {
    /// Groups up to this order are checked on every ordered pair.
    pub exhaustive_limit: usize,
    /// Number of uniformly drawn pairs above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for PairPolicy {
    fn default() -> Self {
        PairPolicy { exhaustive_limit: 729, samples: 100_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateWitness {
    pub kind: String,
    pub elements: Vec<ElemId>,
    pub subgroup: Option<Subgroup>,
}

impl PredicateWitness {
    fn new(kind: &str, elements: Vec<ElemId>) -> Self {
        PredicateWitness { kind: kind.to_string(), elements, subgroup: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    /// True when a pair quantifier was sampled rather than exhausted.
    pub sampled: bool,
    pub witness: Option<PredicateWitness>,
}

impl Verdict {
    fn pass(sampled: bool) -> Self {
        Verdict { holds: true, sampled, witness: None }
    }

    fn fail(sampled: bool, witness: PredicateWitness) -> Self {
        Verdict { holds: false, sampled, witness: Some(witness) }
    }
}

/// `G^(p^i) = { g^(p^i) }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCondition {
    pub i: u32,
    pub holds: bool,
    pub agemo_order: usize,
    pub power_image_size: usize,
    /// A member of the agemo that is not a `p^i`-th power.
    pub witness: Option<ElemId>,
}

/// `Omega_i(G) = { g : o(g) <= p^i }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaCondition {
    pub i: u32,
    pub holds: bool,
    pub omega_order: usize,
    pub low_order_count: usize,
    /// A member of `Omega_i` of order above `p^i`.
    pub witness: Option<ElemId>,
}

/// `|G : G^(p^i)| = |Omega_i(G)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCondition {
    pub i: u32,
    pub holds: bool,
    pub index: u64,
    pub omega_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RpsReport {
    /// `e` with exponent `p^e`; conditions are checked for `i = 1..=e`.
    pub exponent_log: u32,
    pub cond1: Vec<PowerCondition>,
    pub cond2: Vec<OmegaCondition>,
    pub cond3: Vec<IndexCondition>,
    pub overall: bool,
}

impl RpsReport {
    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = self.cond1.iter().find(|c| !c.holds) {
            return Some(format!("condition (1) fails at i = {}", c.i));
        }
        if let Some(c) = self.cond2.iter().find(|c| !c.holds) {
            return Some(format!("condition (2) fails at i = {}", c.i));
        }
        self.cond3.iter().find(|c| !c.holds).map(|c| format!("condition (3) fails at i = {}", c.i))
    }
}

/// Checks the three power-structure conditions for every `i` up to the
/// exponent; beyond it all three hold trivially.
pub fn has_regular_power_structure(g: &GroupHandle) -> Result<RpsReport, Error> {
    let e = structure::exponent_log(g)?;
    let order = g.order() as u64;
    let (mut cond1, mut cond2, mut cond3) = (Vec::new(), Vec::new(), Vec::new());
    for i in 1..=e {
        let agemo = structure::agemo(g, i)?;
        let image = structure::power_image(g, i)?;
        let witness = agemo.members.iter().copied().find(|x| image.binary_search(x).is_err());
        cond1.push(PowerCondition {
            i,
            holds: witness.is_none(),
            agemo_order: agemo.order(),
            power_image_size: image.len(),
            witness,
        });

        let omega = structure::omega(g, i)?;
        let low = structure::low_order_set(g, i)?;
        let witness = omega.members.iter().copied().find(|&x| g.order_log(x) > i);
        cond2.push(OmegaCondition {
            i,
            holds: witness.is_none(),
            omega_order: omega.order(),
            low_order_count: low.len(),
            witness,
        });

        let index = order / agemo.order() as u64;
        cond3.push(IndexCondition { i, holds: index == omega.order() as u64, index, omega_order: omega.order() as u64 });
    }
    let overall = cond1.iter().all(|c| c.holds) && cond2.iter().all(|c| c.holds) && cond3.iter().all(|c| c.holds);
    Ok(RpsReport { exponent_log: e, cond1, cond2, cond3, overall })
}

/// The subgroup a derived subgroup must lie in for `G` to be powerful:
/// `G^p` for odd `p`, `G^4` for `p = 2`.
pub fn powerful_bound(g: &GroupHandle) -> Result<Subgroup, Error> {
    structure::agemo(g, if g.prime() == 2 { 2 } else { 1 })
}

/// `[G,G] <= G^p` (odd p) or `[G,G] <= G^4` (p = 2). The witness on
/// failure is `(x, g, [x, g])` with `g` a generator.
pub fn is_powerful(g: &GroupHandle) -> Result<Verdict, Error> {
    let derived = structure::derived_subgroup(g)?;
    let bound = powerful_bound(g)?;
    if derived.is_subset_of(&bound) {
        return Ok(Verdict::pass(false));
    }
    // the [x, g] over generators g already generate [G, G]
    for x in g.elements()? {
        for &y in g.generators() {
            let c = g.commutator(x, y);
            if !bound.contains(c) {
                let mut w = PredicateWitness::new("commutator outside the power subgroup", vec![x, y, c]);
                w.subgroup = Some(bound);
                return Ok(Verdict::fail(false, w));
            }
        }
    }
    Err(Error::Internal("derived subgroup escapes the bound but no commutator does".into()))
}

fn pairs_of(g: &GroupHandle, policy: &PairPolicy) -> Result<(Vec<(ElemId, ElemId)>, bool), Error> {
    let n = g.enumerable()?;
    if n <= policy.exhaustive_limit {
        let n = n as ElemId;
        Ok(((0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect(), false))
    } else {
        Ok((sample_pairs(n as ElemId, policy.samples, policy.seed), true))
    }
}

type SubgroupCache = Mutex<HashMap<Vec<ElemId>, Arc<Subgroup>>>;

fn cached_for(cache: &SubgroupCache, t: &Subgroup, compute: impl FnOnce() -> Subgroup) -> Arc<Subgroup> {
    if let Some(s) = cache.lock().unwrap().get(&t.members) {
        return s.clone();
    }
    let s = Arc::new(compute());
    cache.lock().unwrap().entry(t.members.clone()).or_insert(s).clone()
}

/// `(y^p)^-1 (x^p)^-1 (xy)^p`.
pub fn regularity_defect(g: &GroupHandle, x: ElemId, y: ElemId) -> ElemId {
    let lhs = g.pth_power(g.mul(x, y));
    let rhs = g.mul(g.pth_power(x), g.pth_power(y));
    g.mul(g.inv(rhs), lhs)
}

/// `gamma_2(T), ..., gamma_depth(T)` for `T = <gens>`, each as a normal
/// closure under `gens` alone, so `T` itself is never enumerated.
fn lower_central_terms(g: &GroupHandle, gens: &[ElemId], depth: usize) -> Vec<Subgroup> {
    let mut comms = Vec::new();
    for (k, &x) in gens.iter().enumerate() {
        for &y in &gens[k + 1..] {
            comms.push(g.commutator(x, y));
        }
    }
    let mut terms = vec![structure::normal_closure(g, &comms, gens)];
    while terms.len() + 1 < depth {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            terms.push(Subgroup::trivial());
            continue;
        }
        let comms: Vec<ElemId> =
            last.generators.iter().flat_map(|&a| gens.iter().map(move |&t| (a, t))).map(|(a, t)| g.commutator(a, t)).collect();
        terms.push(structure::normal_closure(g, &comms, gens));
    }
    terms
}

/// `mho_1(<x, y>')`: where the regularity defect of `(x, y)` must lie.
pub fn regularity_modulus(g: &GroupHandle, x: ElemId, y: ElemId) -> Subgroup {
    let derived = lower_central_terms(g, &[x, y], 2).remove(0);
    structure::agemo_of(g, &derived, 1)
}

/// Hall regularity: for all `x, y`, the defect lies in `mho_1(<x,y>')`.
pub fn is_regular(g: &GroupHandle, policy: &PairPolicy) -> Result<Verdict, Error> {
    let (pairs, sampled) = pairs_of(g, policy)?;
    let cache: SubgroupCache = Mutex::new(HashMap::new());
    let failure = pairs.par_iter().find_map_first(|&(x, y)| {
        let defect = regularity_defect(g, x, y);
        if defect == 0 {
            return None;
        }
        let derived = lower_central_terms(g, &[x, y], 2).remove(0);
        let modulus = cached_for(&cache, &derived, || structure::agemo_of(g, &derived, 1));
        (!modulus.contains(defect)).then(|| {
            let mut w = PredicateWitness::new("pair violating the regularity congruence", vec![x, y, defect]);
            w.subgroup = Some((*modulus).clone());
            w
        })
    });
    Ok(match failure {
        Some(w) => Verdict::fail(sampled, w),
        None => Verdict::pass(sampled),
    })
}

/// A cyclic normal subgroup with cyclic quotient, searched from the largest
/// cyclic subgroups down. Witness elements are `(x, y)` with `N = <x>` and
/// `G/N = <yN>`.
pub fn is_metacyclic(g: &GroupHandle) -> Result<Verdict, Error> {
    let whole = g.whole()?;
    let p = g.prime() as u64;
    let order = whole.order() as u64;
    let mut candidates: Vec<ElemId> = whole.members.clone();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.order_log(x)), x));
    let mut seen = vec![false; whole.order()];
    for x in candidates {
        if seen[x as usize] {
            continue;
        }
        let n = structure::closure(g, &[x]);
        for k in 1..n.order() as u64 {
            if k % p != 0 {
                seen[g.pow(x, k as i64) as usize] = true;
            }
        }
        if !structure::is_normal_in(g, &n, &whole) {
            continue;
        }
        let index = order / n.order() as u64;
        if index == 1 {
            let mut w = PredicateWitness::new("cyclic normal subgroup with cyclic quotient", vec![x, 0]);
            w.subgroup = Some(n);
            return Ok(Verdict { holds: true, sampled: false, witness: Some(w) });
        }
        // y generates G/N iff its order modulo N equals |G : N|
        let top = g.pow_index(index);
        for y in whole.members.iter().copied() {
            if top > 0 && !n.contains(g.power_pk(y, top - 1)) {
                let mut w = PredicateWitness::new("cyclic normal subgroup with cyclic quotient", vec![x, y]);
                w.subgroup = Some(n);
                return Ok(Verdict { holds: true, sampled: false, witness: Some(w) });
            }
        }
    }
    Ok(Verdict { holds: false, sampled: false, witness: None })
}

impl GroupHandle {
    /// `log_p` of an index.
    pub(crate) fn pow_index(&self, mut index: u64) -> u32 {
        let mut k = 0;
        while index > 1 {
            index /= self.prime() as u64;
            k += 1;
        }
        k
    }
}

/// `(gh)^(p^k) = g^(p^k) h^(p^k)` for all pairs.
pub fn is_pk_abelian(g: &GroupHandle, k: u32, policy: &PairPolicy) -> Result<Verdict, Error> {
    let (pairs, sampled) = pairs_of(g, policy)?;
    let failure = pairs.par_iter().find_map_first(|&(x, y)| {
        let lhs = g.power_pk(g.mul(x, y), k);
        let rhs = g.mul(g.power_pk(x, k), g.power_pk(y, k));
        (lhs != rhs).then(|| PredicateWitness::new("pair with (gh)^(p^k) != g^(p^k) h^(p^k)", vec![x, y]))
    });
    Ok(match failure {
        Some(w) => Verdict::fail(sampled, w),
        None => Verdict::pass(sampled),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallCheck {
    pub holds: bool,
    /// `(x^(p^n) y^(p^n))^-1 (xy)^(p^n)`.
    pub defect: ElemId,
    pub modulus_order: usize,
}

/// The modulus `gamma_2(T)^(p^n) gamma_p(T)^(p^(n-1)) ... gamma_(p^n)(T)`
/// of the collection formula, `T = <x, y>`.
pub fn hall_modulus(g: &GroupHandle, x: ElemId, y: ElemId, n: u32) -> Subgroup {
    let p = g.prime() as u64;
    let terms = lower_central_terms(g, &[x, y], p.pow(n).max(2) as usize);
    let gamma = |k: u64| -> Subgroup { terms[k as usize - 2].clone() };
    let mut gens: Vec<ElemId> = structure::agemo_of(g, &gamma(2), n).generators;
    for m in 1..=n {
        let term = structure::agemo_of(g, &gamma(p.pow(m)), n - m);
        gens.extend(term.generators);
    }
    structure::closure(g, &gens)
}

fn hall_defect(g: &GroupHandle, x: ElemId, y: ElemId, n: u32) -> ElemId {
    let lhs = g.power_pk(g.mul(x, y), n);
    let rhs = g.mul(g.power_pk(x, n), g.power_pk(y, n));
    g.mul(g.inv(rhs), lhs)
}

/// Tests `(xy)^(p^n) = x^(p^n) y^(p^n)` modulo the collection-formula modulus.
pub fn hall_congruence_check(g: &GroupHandle, x: ElemId, y: ElemId, n: u32) -> HallCheck {
    let defect = hall_defect(g, x, y, n);
    let modulus = hall_modulus(g, x, y, n);
    HallCheck { holds: modulus.contains(defect), defect, modulus_order: modulus.order() }
}

/// [`hall_congruence_check`] over all (or sampled) pairs.
pub fn hall_congruence_all(g: &GroupHandle, n: u32, policy: &PairPolicy) -> Result<Verdict, Error> {
    let (pairs, sampled) = pairs_of(g, policy)?;
    let failure = pairs.par_iter().find_map_first(|&(x, y)| {
        let defect = hall_defect(g, x, y, n);
        if defect == 0 {
            return None;
        }
        let modulus = hall_modulus(g, x, y, n);
        (!modulus.contains(defect)).then(|| {
            let mut w = PredicateWitness::new("pair violating the collection congruence", vec![x, y, defect]);
            w.subgroup = Some(modulus);
            w
        })
    });
    Ok(match failure {
        Some(w) => Verdict::fail(sampled, w),
        None => Verdict::pass(sampled),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub label: String,
    pub holds: bool,
    pub witness: Option<ElemId>,
}

fn containment(label: String, small: &Subgroup, big: &Subgroup) -> Containment {
    let witness = small.first_outside(big);
    Containment { label, holds: witness.is_none(), witness }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerfulFacts {
    /// `G^(p^i)` equals the set of `p^i`-th powers.
    pub power_sets: Vec<Containment>,
    /// `[G^(p^i), G^(p^j)] <= [G,G]^(p^(i+j))`.
    pub commutator_bounds: Vec<Containment>,
    /// `gamma_i(G) <= G^(p^(i-1))`.
    pub central_bounds: Vec<Containment>,
    pub holds: bool,
}

/// The basic facts about powerful groups, each checked by direct
/// subgroup computation. Calling this on a group that is not powerful is
/// an error, not a failed verdict.
pub fn powerful_facts_check(g: &GroupHandle) -> Result<PowerfulFacts, Error> {
    if !is_powerful(g)?.holds {
        return Err(Error::Precondition(format!("{} is not powerful", g.name())));
    }
    let e = structure::exponent_log(g)?;
    let whole = g.whole()?;
    let agemo = |i: u32| -> Result<Subgroup, Error> {
        if i == 0 {
            Ok(whole.clone())
        } else {
            structure::agemo(g, i)
        }
    };
    let mut power_sets = Vec::new();
    for i in 1..=e {
        let sub = agemo(i)?;
        let image = Subgroup::from_members(structure::power_image(g, i)?, vec![]);
        power_sets.push(containment(format!("G^(p^{i}) within its power set"), &sub, &image));
    }
    let derived = structure::derived_subgroup(g)?;
    let mut commutator_bounds = Vec::new();
    for i in 0..=e {
        for j in 0..=e - i {
            let lhs = structure::commutator_of_normal(g, &agemo(i)?, &agemo(j)?, &whole);
            let rhs = structure::agemo_of(g, &derived, i + j);
            commutator_bounds.push(containment(format!("[G^(p^{i}), G^(p^{j})] <= [G,G]^(p^{})", i + j), &lhs, &rhs));
        }
    }
    let lcs = structure::lower_central_series(g)?;
    let mut central_bounds = Vec::new();
    for (k, term) in lcs.terms.iter().enumerate() {
        let i = k as u32 + 1;
        central_bounds.push(containment(format!("gamma_{i}(G) <= G^(p^{})", i - 1), term, &agemo(i - 1)?));
    }
    let holds = power_sets.iter().chain(&commutator_bounds).chain(&central_bounds).all(|c| c.holds);
    Ok(PowerfulFacts { power_sets, commutator_bounds, central_bounds, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec};

    fn fam(spec: &str) -> GroupHandle {
        build_family(&spec.parse::<FamilySpec>().unwrap()).unwrap().handle().unwrap()
    }

    #[test]
    fn rps_positive_and_negative() {
        for spec in ["heisenberg p=3 e=1", "heisenberg p=3 e=2", "cyclic p=5 e=3"] {
            let g = fam(spec);
            assert!(has_regular_power_structure(&g).unwrap().overall, "{spec}");
        }
        let d8 = fam("dihedral n=3");
        let r = has_regular_power_structure(&d8).unwrap();
        assert!(!r.overall);
        assert!(!r.cond2[0].holds);
        assert_eq!(r.cond2[0].low_order_count, 6);
        assert_eq!(r.cond2[0].omega_order, 8);
        let w = r.cond2[0].witness.unwrap();
        assert_eq!(d8.element_order(w), 4);

        let q8 = fam("quaternion n=3");
        let r = has_regular_power_structure(&q8).unwrap();
        assert!(r.cond1.iter().all(|c| c.holds));
        assert!(r.cond2.iter().all(|c| c.holds));
        assert!(!r.cond3[0].holds);
        assert_eq!((r.cond3[0].index, r.cond3[0].omega_order), (4, 2));
    }

    #[test]
    fn powerful_examples() {
        assert!(is_powerful(&fam("modular p=3 n=3")).unwrap().holds);
        let g2 = fam("heisenberg p=3 e=2");
        let v = is_powerful(&g2).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        let c = w.elements[2];
        assert_eq!(c, g2.commutator(w.elements[0], w.elements[1]));
        assert!(!structure::agemo(&g2, 1).unwrap().contains(c));
        // c = [b, a] itself is outside G^3
        let cc = g2.id_of(&[0, 0, 1, 0, 0, 0]).unwrap();
        assert!(!structure::agemo(&g2, 1).unwrap().contains(cc));
        assert!(is_powerful(&fam("abelian p=3 type=2,1")).unwrap().holds);
    }

    #[test]
    fn regular_examples() {
        let policy = PairPolicy::default();
        assert!(is_regular(&fam("heisenberg p=3 e=1"), &policy).unwrap().holds);
        assert!(is_regular(&fam("modular p=3 n=3"), &policy).unwrap().holds);
        assert!(is_regular(&fam("abelian p=2 type=2,1"), &policy).unwrap().holds);
        let d8 = fam("dihedral n=3");
        let v = is_regular(&d8, &policy).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        let modulus = regularity_modulus(&d8, w.elements[0], w.elements[1]);
        assert!(!modulus.contains(regularity_defect(&d8, w.elements[0], w.elements[1])));
    }

    #[test]
    fn metacyclic_examples() {
        let m27 = fam("modular p=3 n=3");
        let v = is_metacyclic(&m27).unwrap();
        assert!(v.holds);
        let n = v.witness.unwrap().subgroup.unwrap();
        assert_eq!(n.order(), 9);
        assert!(is_metacyclic(&fam("cyclic p=3 e=3")).unwrap().holds);
        assert!(!is_metacyclic(&fam("elementary_abelian p=3 n=3")).unwrap().holds);
    }

    #[test]
    fn pk_abelian_examples() {
        let policy = PairPolicy::default();
        assert!(is_pk_abelian(&fam("modular p=3 n=3"), 1, &policy).unwrap().holds);
        assert!(is_pk_abelian(&fam("abelian p=3 type=2,1"), 2, &policy).unwrap().holds);
        let d8 = fam("dihedral n=3");
        let v = is_pk_abelian(&d8, 1, &policy).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap().elements;
        assert_ne!(d8.power_pk(d8.mul(w[0], w[1]), 1), d8.mul(d8.power_pk(w[0], 1), d8.power_pk(w[1], 1)));
    }

    #[test]
    fn hall_examples() {
        let policy = PairPolicy::default();
        let ab = fam("abelian p=3 type=2,1");
        let c = hall_congruence_check(&ab, 1, 5, 1);
        assert!(c.holds);
        assert_eq!(c.defect, 0);
        let d8 = fam("dihedral n=3");
        assert!(hall_congruence_all(&d8, 1, &policy).unwrap().holds);
        // some pair of D8 has a non-trivial defect and non-trivial modulus
        let nontrivial = (0..8).flat_map(|x| (0..8).map(move |y| (x, y))).any(|(x, y)| {
            let c = hall_congruence_check(&d8, x, y, 1);
            c.defect != 0 && c.modulus_order > 1
        });
        assert!(nontrivial);
    }

    #[test]
    fn powerful_facts() {
        assert!(powerful_facts_check(&fam("modular p=3 n=3")).unwrap().holds);
        assert!(powerful_facts_check(&fam("cyclic p=3 e=3")).unwrap().holds);
        assert!(powerful_facts_check(&fam("modular p=3 n=4")).unwrap().holds);
        assert!(matches!(powerful_facts_check(&fam("heisenberg p=3 e=1")), Err(Error::Precondition(_))));
    }
}
