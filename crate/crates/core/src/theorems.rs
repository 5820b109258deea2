//! Verifiers and constructive procedures for the main results: the
//! Burnside bound chain, the Hughes classification, the normal abelian
//! subgroup criterion for cyclicity, the order-`p` complement construction
//! and lifting independent sets from a subgroup to the whole group.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::predicates::{self, Containment};
use crate::structure::{self, EnumerationMode, FrattiniData};
use crate::{ElemId, Error, GroupHandle, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HughesClass {
    Trivial,
    WholeGroup,
    IndexP,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HughesVerdict {
    pub hughes_subgroup: Subgroup,
    pub classification: HughesClass,
    /// `|G : H_p(G)|`.
    pub index: u64,
    /// For groups with regular power structure: whether `H_p` is trivial
    /// exactly when the exponent is `p` and the whole group otherwise.
    pub rps_refinement: Option<bool>,
}

/// `H_p(G) = <g : o(g) != p>`; the identity is included, which changes nothing.
pub fn hughes_subgroup(g: &GroupHandle) -> Result<Subgroup, Error> {
    let gens: Vec<ElemId> = g.elements()?.filter(|&x| g.order_log(x) != 1).collect();
    Ok(structure::closure(g, &gens))
}

/// Classification precedence is trivial, whole group, index `p`, so `C_p`
/// reports trivial with index `p`.
pub fn hughes_verdict(g: &GroupHandle) -> Result<HughesVerdict, Error> {
    let h = hughes_subgroup(g)?;
    let order = g.order() as u64;
    let index = order / h.order() as u64;
    let classification = if h.is_trivial() {
        HughesClass::Trivial
    } else if index == 1 {
        HughesClass::WholeGroup
    } else if index == g.prime() as u64 {
        HughesClass::IndexP
    } else {
        HughesClass::Counterexample
    };
    let rps_refinement = if predicates::has_regular_power_structure(g)?.overall {
        let expected =
            if structure::exponent_log(g)? <= 1 { HughesClass::Trivial } else { HughesClass::WholeGroup };
        Some(classification == expected)
    } else {
        None
    };
    Ok(HughesVerdict { hughes_subgroup: h, classification, index, rps_refinement })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideChainReport {
    pub e: u32,
    pub order: u64,
    /// `|G / G^(p^(e-1))|`, counted as cosets.
    pub top_index: u64,
    /// `|G^(p^(e-1))|`.
    pub bottom_order: u64,
    pub decomposition: bool,
    /// `G^(p^(e-1)) <= Omega_1(G)`.
    pub containment: bool,
    /// `|Omega_1(G)|`.
    pub omega_order: u64,
    /// `|G : G^p|`.
    pub power_index: u64,
    /// `|Omega_1(G)| = |G : G^p|`.
    pub omega_index: bool,
    /// `|G / G^(p^(e-1))| <= |G : G^p|^(e-1)`.
    pub top_bound: bool,
    /// `|G| <= |G : G^p|^e`.
    pub derived_bound: bool,
    pub n_const: Option<u64>,
    /// `|G| <= n^e` and `|G : G^p| <= n`.
    pub const_bound: Option<bool>,
    /// `|G| = n^e`.
    pub sharp: Option<bool>,
}

impl BurnsideChainReport {
    pub fn holds(&self) -> bool {
        self.decomposition
            && self.containment
            && self.omega_index
            && self.top_bound
            && self.derived_bound
            && self.const_bound.unwrap_or(true)
    }
}

/// Checks the checkable steps of the Burnside bound argument. Refuses
/// groups without regular power structure, on which the steps rest.
pub fn burnside_chain_verify(g: &GroupHandle, n_const: Option<u64>) -> Result<BurnsideChainReport, Error> {
    let rps = predicates::has_regular_power_structure(g)?;
    if !rps.overall {
        return Err(Error::Precondition(format!(
            "{} lacks regular power structure: {}",
            g.name(),
            rps.first_failure().unwrap_or_default()
        )));
    }
    let e = rps.exponent_log;
    if e == 0 {
        return Err(Error::Precondition("trivial group".into()));
    }
    let whole = g.whole()?;
    let order = whole.order() as u64;
    let bottom = if e == 1 { whole.clone() } else { structure::agemo(g, e - 1)? };
    // cosets counted directly, not as a quotient of orders
    let mut seen = vec![false; whole.order()];
    let mut top_index = 0u64;
    for x in whole.members.iter().copied() {
        if seen[x as usize] {
            continue;
        }
        top_index += 1;
        for &k in &bottom.members {
            seen[g.mul(x, k) as usize] = true;
        }
    }
    let bottom_order = bottom.order() as u64;
    let omega = structure::omega(g, 1)?;
    let power_index = order / structure::agemo(g, 1)?.order() as u64;
    let omega_order = omega.order() as u64;
    let (const_bound, sharp) = match n_const {
        Some(n) => {
            let bound = (n as u128).checked_pow(e).unwrap_or(u128::MAX);
            (Some(order as u128 <= bound && power_index <= n), Some(order as u128 == bound))
        }
        None => (None, None),
    };
    Ok(BurnsideChainReport {
        e,
        order,
        top_index,
        bottom_order,
        decomposition: top_index * bottom_order == order,
        containment: bottom.is_subset_of(&omega),
        omega_order,
        power_index,
        omega_index: omega_order == power_index,
        top_bound: (top_index as u128) <= (power_index as u128).pow(e - 1),
        derived_bound: (order as u128) <= (power_index as u128).pow(e),
        n_const,
        const_bound,
        sharp,
    })
}

/// Given a powerful `G = <a, b>` with `G^p = <a^p>`, an element `c` of
/// order `p` with `G = <a, c>`, built by induction on the exponent through
/// `G / G^(p^(e-1))`.
pub fn lemma42_construct(g: &GroupHandle, a: ElemId, b: ElemId) -> Result<ElemId, Error> {
    if !predicates::is_powerful(g)?.holds {
        return Err(Error::Precondition(format!("{} is not powerful", g.name())));
    }
    let whole = g.whole()?;
    if structure::closure(g, &[a, b]).order() != whole.order() {
        return Err(Error::Precondition("a and b do not generate the group".into()));
    }
    let agemo = structure::agemo(g, 1)?;
    if !agemo.same_members(&structure::closure(g, &[g.pth_power(a)])) {
        return Err(Error::Precondition("G^p is not generated by a^p".into()));
    }
    let e = structure::exponent_log(g)?;
    let c = match e {
        0 => return Err(Error::Precondition("trivial group".into())),
        1 if b != 0 => b,
        1 => a,
        _ => {
            let k = e - 1;
            let n = structure::agemo(g, k)?;
            let q = structure::quotient(g, &n)?;
            let dq = lemma42_construct(&q.group, q.image(a), q.image(b))?;
            let d = q.lift(dq);
            let dp = g.pth_power(d);
            let apk = g.power_pk(a, k);
            let lambda = (0..g.prime() as i64)
                .find(|&l| g.pow(apk, l) == dp)
                .ok_or_else(|| Error::Internal("d^p is not a power of a^(p^k)".into()))?;
            let correction = g.pow(g.power_pk(a, k - 1), -lambda);
            match g.mul(d, correction) {
                // only when G = <a>, where any element of order p will do
                0 => g.power_pk(a, e - 1),
                c => c,
            }
        }
    };
    if g.order_log(c) != 1 {
        return Err(Error::Internal(format!("constructed c = {} has order {}", g.label(c), g.element_order(c))));
    }
    if structure::closure(g, &[a, c]).order() != whole.order() {
        return Err(Error::Internal(format!("constructed c = {} does not generate with a", g.label(c))));
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalAbelianReport {
    pub sampled: bool,
    pub subgroups_examined: usize,
    pub normal_abelian: usize,
    /// Every normal abelian subgroup is cyclic.
    pub hypothesis: bool,
    pub group_cyclic: bool,
    /// A normal abelian subgroup that is not cyclic.
    pub witness: Option<Subgroup>,
}

impl NormalAbelianReport {
    /// The hypothesis forces cyclicity for odd `p`; `p = 2` may legitimately break this.
    pub fn consistent(&self, prime: u32) -> bool {
        prime == 2 || !self.hypothesis || self.group_cyclic
    }
}

/// Exhaustive mode walks the whole lattice. Sampled mode looks at the normal
/// closure of every element plus sampled subgroups, so a holding hypothesis
/// only means no counterexample was found.
pub fn normal_abelian_cyclic_check(g: &GroupHandle, mode: EnumerationMode) -> Result<NormalAbelianReport, Error> {
    let whole = g.whole()?;
    let mut catalog = structure::enumerate_subgroups(g, g.log_order() as usize, mode)?;
    if catalog.sampled {
        let mut seen: HashSet<Vec<ElemId>> = catalog.subgroups.iter().map(|s| s.members.clone()).collect();
        for x in whole.members.iter().copied() {
            let n = structure::normal_closure(g, &[x], g.generators());
            if seen.insert(n.members.clone()) {
                catalog.subgroups.push(n);
            }
        }
    }
    let normal_abelian: Vec<&Subgroup> = catalog
        .subgroups
        .iter()
        .filter(|s| structure::is_normal_in(g, s, &whole) && structure::is_abelian(g, s))
        .collect();
    let witness = normal_abelian.iter().find(|s| !structure::is_cyclic(g, s)).map(|s| (*s).clone());
    Ok(NormalAbelianReport {
        sampled: catalog.sampled,
        subgroups_examined: catalog.subgroups.len(),
        normal_abelian: normal_abelian.len(),
        hypothesis: witness.is_none(),
        group_cyclic: structure::is_cyclic(g, &whole),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorCheck {
    /// `[N, G]`.
    pub commutator: Subgroup,
    /// `N^p`.
    pub bound: Subgroup,
    pub holds: bool,
    pub witness: Option<ElemId>,
}

/// `[N, G] <= N^p` for a cyclic normal subgroup `N`.
pub fn cyclic_normal_commutator_check(g: &GroupHandle, n: &Subgroup) -> Result<CommutatorCheck, Error> {
    let whole = g.whole()?;
    if !structure::is_cyclic(g, n) {
        return Err(Error::Precondition("N is not cyclic".into()));
    }
    if !structure::is_normal_in(g, n, &whole) {
        return Err(Error::Precondition("N is not normal".into()));
    }
    let commutator = structure::commutator_of_normal(g, n, &whole, &whole);
    let bound = structure::agemo_of(g, n, 1);
    let witness = commutator.first_outside(&bound);
    Ok(CommutatorCheck { commutator, bound, holds: witness.is_none(), witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    /// A minimal generator of `H`.
    pub h: ElemId,
    /// The root, `a^(p^b) = h`, outside `G^p`.
    pub a: ElemId,
    pub b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub entries: Vec<RootEntry>,
    /// `d(H)`.
    pub r: u32,
    /// `F_p`-rank of the roots modulo `Phi(G)`.
    pub rank: u32,
    pub d_g: u32,
}

impl IndependenceCertificate {
    pub fn lifted(&self) -> Vec<ElemId> {
        self.entries.iter().map(|e| e.a).collect()
    }

    /// Re-checks the root equations, non-membership in `G^p` and the rank.
    pub fn verify(&self, g: &GroupHandle, h: &Subgroup) -> Result<bool, Error> {
        let agemo = structure::agemo(g, 1)?;
        let roots_ok = self.entries.iter().all(|e| g.power_pk(e.a, e.b) == e.h && !agemo.contains(e.a));
        let hs: Vec<ElemId> = self.entries.iter().map(|e| e.h).collect();
        let generates = structure::closure(g, &hs).same_members(h);
        let d_h = structure::frattini_and_rank_of(g, h).rank;
        let f = structure::frattini_and_rank(g)?;
        let rank = rank_mod_frattini(&f, &self.lifted())?;
        Ok(roots_ok
            && generates
            && d_h == self.r
            && self.entries.len() as u32 == self.r
            && rank == self.r
            && rank <= f.rank)
    }
}

fn rank_mod_frattini(f: &FrattiniData, xs: &[ElemId]) -> Result<u32, Error> {
    let rows = xs.iter().map(|&x| structure::coordinates_mod_frattini(f, x)).collect::<Result<Vec<_>, _>>()?;
    Ok(structure::rank_of(&rows, f.prime()) as u32)
}

/// Shared data for lifting many subgroups of one group.
struct LiftContext {
    /// `images[b]` is the set of `p^b`-th powers.
    images: Vec<Vec<ElemId>>,
    agemo: Subgroup,
    frattini: FrattiniData,
}

impl LiftContext {
    fn new(g: &GroupHandle) -> Result<Self, Error> {
        if !predicates::is_powerful(g)?.holds {
            return Err(Error::Precondition(format!("{} is not powerful", g.name())));
        }
        let e = structure::exponent_log(g)?;
        let mut images = vec![g.elements()?.collect::<Vec<_>>()];
        for b in 1..=e {
            images.push(structure::power_image(g, b)?);
        }
        Ok(LiftContext { images, agemo: structure::agemo(g, 1)?, frattini: structure::frattini_and_rank(g)? })
    }

    /// Largest `b` with `x` a `p^b`-th power.
    fn depth(&self, x: ElemId) -> u32 {
        (0..self.images.len()).rev().find(|&b| self.images[b].binary_search(&x).is_ok()).unwrap_or(0) as u32
    }

    fn roots(&self, g: &GroupHandle, h: ElemId, b: u32) -> impl Iterator<Item = ElemId> + '_ {
        let g = g.clone();
        self.images[0].iter().copied().filter(move |&x| g.power_pk(x, b) == h && !self.agemo.contains(x))
    }

    fn lift(&self, g: &GroupHandle, h: &Subgroup) -> Result<IndependenceCertificate, Error> {
        let mut candidates: Vec<ElemId> = h.members.clone();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.depth(x)), x));
        let basis = structure::frattini_with_candidates(g, h, &candidates).basis;
        let r = basis.len() as u32;
        let mut entries = Vec::with_capacity(basis.len());
        for &hx in &basis {
            let b = self.depth(hx);
            let a = self.roots(g, hx, b).next().ok_or_else(|| {
                Error::Internal(format!("no root of {} outside G^p at depth {b}", g.label(hx)))
            })?;
            entries.push(RootEntry { h: hx, a, b });
        }
        let mut rank = rank_mod_frattini(&self.frattini, &entries.iter().map(|e| e.a).collect::<Vec<_>>())?;
        if rank < r {
            // first roots can be dependent; pick each root independent of the earlier ones
            let mut chosen: Vec<ElemId> = Vec::new();
            for entry in entries.iter_mut() {
                let a = self
                    .roots(g, entry.h, entry.b)
                    .find(|&x| {
                        let mut trial = chosen.clone();
                        trial.push(x);
                        rank_mod_frattini(&self.frattini, &trial).ok() == Some(trial.len() as u32)
                    })
                    .ok_or_else(|| {
                        Error::Internal(format!("no independent root of {} at depth {}", g.label(entry.h), entry.b))
                    })?;
                entry.a = a;
                chosen.push(a);
            }
            rank = rank_mod_frattini(&self.frattini, &chosen)?;
        }
        if rank != r {
            return Err(Error::Internal(format!("lifted rank {rank} below d(H) = {r}")));
        }
        Ok(IndependenceCertificate { entries, r, rank, d_g: self.frattini.rank })
    }
}

/// Expresses a minimal generating set of `H <= G` maximally as `p`-power
/// roots and certifies the roots independent modulo `Phi(G)`.
pub fn lift_independent_set(g: &GroupHandle, h: &Subgroup) -> Result<IndependenceCertificate, Error> {
    LiftContext::new(g)?.lift(g, h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSurvey {
    pub sampled: bool,
    pub subgroups: usize,
    pub d_g: u32,
    pub max_d: u32,
    pub violations: usize,
    pub certificates_verified: usize,
}

/// `d(H) <= d(G)` over every subgroup (exhaustive) or over sampled
/// subgroups, repeats included; each subgroup also gets a verified
/// independence certificate.
pub fn subgroup_rank_survey(g: &GroupHandle, mode: EnumerationMode) -> Result<RankSurvey, Error> {
    let ctx = LiftContext::new(g)?;
    let subgroups = match mode {
        EnumerationMode::Exhaustive => structure::enumerate_subgroups(g, g.log_order() as usize, mode)?.subgroups,
        EnumerationMode::Sampled { samples, seed } => structure::sample_subgroups(g, samples, 3, seed)?,
    };
    let d_g = ctx.frattini.rank;
    let results = subgroups
        .par_iter()
        .map(|h| {
            let cert = ctx.lift(g, h)?;
            Ok((cert.r, cert.verify(g, h)?))
        })
        .collect::<Result<Vec<(u32, bool)>, Error>>()?;
    Ok(RankSurvey {
        sampled: matches!(mode, EnumerationMode::Sampled { .. }),
        subgroups: subgroups.len(),
        d_g,
        max_d: results.iter().map(|r| r.0).max().unwrap_or(0),
        violations: results.iter().filter(|r| r.0 > d_g || !r.1).count(),
        certificates_verified: results.iter().filter(|r| r.1).count(),
    })
}

/// Collects the containment checks of a powerful-group fact list.
pub fn failed_containments(items: &[Containment]) -> Vec<&Containment> {
    items.iter().filter(|c| !c.holds).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec};

    fn fam(spec: &str) -> GroupHandle {
        build_family(&spec.parse::<FamilySpec>().unwrap()).unwrap().handle().unwrap()
    }

    #[test]
    fn hughes_examples() {
        let c3 = fam("cyclic p=3 e=1");
        let v = hughes_verdict(&c3).unwrap();
        assert_eq!((v.classification, v.index), (HughesClass::Trivial, 3));
        let g1 = fam("heisenberg p=3 e=1");
        let v = hughes_verdict(&g1).unwrap();
        assert_eq!(v.classification, HughesClass::Trivial);
        assert_eq!(v.rps_refinement, Some(true));
        let m27 = fam("modular p=3 n=3");
        let v = hughes_verdict(&m27).unwrap();
        assert_eq!(v.classification, HughesClass::WholeGroup);
        let d8 = fam("dihedral n=3");
        let v = hughes_verdict(&d8).unwrap();
        assert_eq!((v.classification, v.index), (HughesClass::IndexP, 2));
        assert_eq!(v.hughes_subgroup.order(), 4);
        assert!(structure::is_cyclic(&d8, &v.hughes_subgroup));
        assert_eq!(v.rps_refinement, None);
    }

    #[test]
    fn burnside_examples() {
        let g2 = fam("heisenberg p=3 e=2");
        let r = burnside_chain_verify(&g2, Some(27)).unwrap();
        assert!(r.holds());
        assert_eq!((r.order, r.sharp), (729, Some(true)));
        let c = fam("cyclic p=5 e=3");
        let r = burnside_chain_verify(&c, Some(5)).unwrap();
        assert_eq!((r.power_index, r.sharp), (5, Some(true)));
        let m27 = fam("modular p=3 n=3");
        let r = burnside_chain_verify(&m27, None).unwrap();
        assert!(r.holds());
        assert_eq!(r.power_index, 9);
        assert_eq!(r.sharp, None);
        assert!(matches!(burnside_chain_verify(&fam("dihedral n=3"), None), Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma42_examples() {
        let m27 = fam("modular p=3 n=3");
        // g2 = a, g1 = b
        let (a, b) = (m27.generators()[1], m27.generators()[0]);
        let c = lemma42_construct(&m27, a, b).unwrap();
        assert_eq!(m27.element_order(c), 3);

        let ab = fam("abelian p=3 type=2,1");
        let (a, b) = (ab.generators()[0], ab.generators()[2]);
        assert_eq!(lemma42_construct(&ab, a, b).unwrap(), b);

        let big = fam("abelian p=3 type=3,1");
        let (a, b) = (big.generators()[0], big.generators()[3]);
        let c = lemma42_construct(&big, a, big.mul(a, b)).unwrap();
        assert_eq!(big.element_order(c), 3);
        assert!(matches!(lemma42_construct(&big, b, a), Err(Error::Precondition(_))));

        let c81 = fam("cyclic p=3 e=4");
        let a = c81.generators()[0];
        let c = lemma42_construct(&c81, a, c81.pow(a, 3)).unwrap();
        assert_eq!(c, c81.power_pk(a, 3));
    }

    #[test]
    fn normal_abelian_examples() {
        let r = normal_abelian_cyclic_check(&fam("cyclic p=3 e=3"), EnumerationMode::Exhaustive).unwrap();
        assert!(r.hypothesis && r.group_cyclic);
        let g1 = fam("heisenberg p=3 e=1");
        let r = normal_abelian_cyclic_check(&g1, EnumerationMode::Exhaustive).unwrap();
        assert!(!r.hypothesis && !r.group_cyclic);
        assert_eq!(r.witness.unwrap().order(), 9);
        let r = normal_abelian_cyclic_check(&fam("quaternion n=3"), EnumerationMode::Exhaustive).unwrap();
        assert!(r.hypothesis && !r.group_cyclic);
        assert_eq!(r.normal_abelian, 5);
        assert!(r.consistent(2));
    }

    #[test]
    fn sampled_normal_abelian_sees_element_closures() {
        let g = fam("heisenberg p=3 e=2").tabulate().unwrap();
        let r = normal_abelian_cyclic_check(&g, EnumerationMode::Sampled { samples: 20, seed: 0 }).unwrap();
        assert!(r.sampled && !r.hypothesis);
        assert!(r.subgroups_examined > 20);
    }

    #[test]
    fn commutator_examples() {
        let m27 = fam("modular p=3 n=3");
        let n = structure::closure(&m27, &[m27.generators()[1]]);
        let r = cyclic_normal_commutator_check(&m27, &n).unwrap();
        assert!(r.holds);
        assert_eq!(r.commutator.order(), 3);
        let z = structure::center(&m27).unwrap();
        assert!(cyclic_normal_commutator_check(&m27, &z).unwrap().commutator.is_trivial());
        let d8 = fam("dihedral n=3");
        let n = structure::closure(&d8, &[d8.generators()[0]]);
        let r = cyclic_normal_commutator_check(&d8, &n).unwrap();
        assert!(r.holds);
        assert_eq!(r.commutator.order(), 2);
        let refl = structure::closure(&d8, &[d8.generators()[1]]);
        assert!(matches!(cyclic_normal_commutator_check(&d8, &refl), Err(Error::Precondition(_))));
    }

    #[test]
    fn lift_examples() {
        let g = fam("abelian p=3 type=2,2");
        let (x, y) = (g.generators()[0], g.generators()[2]);
        let h = structure::closure(&g, &[g.pth_power(x), g.pth_power(y)]);
        let cert = lift_independent_set(&g, &h).unwrap();
        assert_eq!(cert.r, 2);
        assert!(cert.entries.iter().all(|e| e.b == 1));
        assert!(cert.verify(&g, &h).unwrap());

        let m27 = fam("modular p=3 n=3");
        let a = m27.generators()[1];
        let h = structure::closure(&m27, &[m27.pth_power(a)]);
        let cert = lift_independent_set(&m27, &h).unwrap();
        assert_eq!((cert.r, cert.entries[0].b), (1, 1));
        assert!(cert.verify(&m27, &h).unwrap());

        // x^3 y and y have dependent first roots x and y^... in C9 x C3
        let g = fam("abelian p=3 type=2,1");
        let (x, y) = (g.generators()[0], g.generators()[2]);
        let h = structure::closure(&g, &[g.mul(g.pth_power(x), y), y]);
        let cert = lift_independent_set(&g, &h).unwrap();
        assert!(cert.verify(&g, &h).unwrap());

        let m81 = fam("modular p=3 n=4");
        let phi = structure::frattini_and_rank(&m81).unwrap().frattini;
        let cert = lift_independent_set(&m81, &phi).unwrap();
        assert!(cert.r <= 2 && cert.verify(&m81, &phi).unwrap());
    }

    #[test]
    fn rank_surveys() {
        let s = subgroup_rank_survey(&fam("abelian p=3 type=2,2"), EnumerationMode::Exhaustive).unwrap();
        assert_eq!((s.max_d, s.d_g, s.violations), (2, 2, 0));
        let s = subgroup_rank_survey(&fam("cyclic p=3 e=4"), EnumerationMode::Exhaustive).unwrap();
        assert_eq!(s.max_d, 1);
        let s = subgroup_rank_survey(&fam("modular p=3 n=4"), EnumerationMode::Sampled { samples: 500, seed: 1 })
            .unwrap();
        assert_eq!((s.subgroups, s.violations, s.certificates_verified), (500, 0, 500));
    }
}
