//! Subgroup machinery over either backend.
//!
//! Every routine takes the ambient [`GroupHandle`] and, where it makes
//! sense, a subgroup `H` to work inside (the `*_of` forms); the whole-group
//! forms are memoised on the handle. Every [`Subgroup`] produced here
//! carries a generator list that really generates it, which the closure
//! routines rely on.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::handle::CacheKey;
use crate::table::TableGroup;
use crate::{ElemId, Error, GroupHandle, Subgroup};

/// Membership marks over the ambient group.
struct Marks(Vec<bool>);

impl Marks {
    fn new(g: &GroupHandle) -> Self {
        Marks(vec![false; g.order() as usize])
    }

    #[inline]
    fn has(&self, x: ElemId) -> bool {
        self.0[x as usize]
    }

    #[inline]
    fn set(&mut self, x: ElemId) {
        self.0[x as usize] = true;
    }
}

/// A subgroup under construction, grown one generator at a time by adding
/// whole right cosets of the current subgroup.
struct Builder<'a> {
    g: &'a GroupHandle,
    marks: Marks,
    members: Vec<ElemId>,
    gens: Vec<ElemId>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a GroupHandle) -> Self {
        let mut marks = Marks::new(g);
        marks.set(0);
        Builder { g, marks, members: vec![0], gens: Vec::new() }
    }

    fn from(g: &'a GroupHandle, base: &Subgroup) -> Self {
        let mut marks = Marks::new(g);
        for &x in &base.members {
            marks.set(x);
        }
        Builder { g, marks, members: base.members.clone(), gens: base.generators.clone() }
    }

    /// `S := <S, x>`; returns whether `S` grew.
    fn add(&mut self, x: ElemId) -> bool {
        if self.marks.has(x) {
            return false;
        }
        self.gens.push(x);
        let base = self.members.clone();
        let mut reps = vec![0];
        let mut next = 0;
        while next < reps.len() {
            let r = reps[next];
            next += 1;
            for k in 0..self.gens.len() {
                let y = self.g.mul(r, self.gens[k]);
                if self.marks.has(y) {
                    continue;
                }
                for &s in &base {
                    let z = self.g.mul(s, y);
                    self.marks.set(z);
                    self.members.push(z);
                }
                reps.push(y);
            }
        }
        true
    }

    fn finish(self) -> Subgroup {
        Subgroup::from_members(self.members, self.gens)
    }
}

pub fn closure(g: &GroupHandle, gens: &[ElemId]) -> Subgroup {
    let mut b = Builder::new(g);
    for &x in gens {
        b.add(x);
    }
    b.finish()
}

/// `<base, extra>`.
pub fn extend_closure(g: &GroupHandle, base: &Subgroup, extra: &[ElemId]) -> Subgroup {
    let mut b = Builder::from(g, base);
    for &x in extra {
        b.add(x);
    }
    b.finish()
}

/// Recovers a generating set for a member list known to be a subgroup.
pub fn subgroup_from_members(g: &GroupHandle, members: Vec<ElemId>) -> Subgroup {
    let mut b = Builder::new(g);
    for &x in &members {
        b.add(x);
    }
    let s = b.finish();
    debug_assert_eq!(s.order(), Subgroup::from_members(members, vec![]).order());
    s
}

/// Smallest subgroup containing `gens` that is normalised by `conj_by`.
pub fn normal_closure(g: &GroupHandle, gens: &[ElemId], conj_by: &[ElemId]) -> Subgroup {
    let mut b = Builder::new(g);
    for &x in gens {
        b.add(x);
    }
    let mut k = 0;
    while k < b.gens.len() {
        let s = b.gens[k];
        k += 1;
        for &c in conj_by {
            let y = g.conjugate(s, c);
            b.add(y);
        }
    }
    b.finish()
}

pub fn is_normal_in(g: &GroupHandle, s: &Subgroup, ambient: &Subgroup) -> bool {
    s.generators.iter().all(|&x| ambient.generators.iter().all(|&c| s.contains(g.conjugate(x, c))))
}

pub fn is_abelian(g: &GroupHandle, s: &Subgroup) -> bool {
    let gens = &s.generators;
    gens.iter().enumerate().all(|(k, &x)| gens[k + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// Some member whose order equals the subgroup order.
pub fn cyclic_generator(g: &GroupHandle, s: &Subgroup) -> Option<ElemId> {
    s.members.iter().copied().find(|&x| g.element_order(x) as usize == s.order())
}

pub fn is_cyclic(g: &GroupHandle, s: &Subgroup) -> bool {
    cyclic_generator(g, s).is_some()
}

/// `{ x^(p^i) : x in H }`, sorted and deduplicated; not closed.
pub fn power_image_of(g: &GroupHandle, h: &Subgroup, i: u32) -> Vec<ElemId> {
    let mut v: Vec<ElemId> = h.members.iter().map(|&x| g.power_pk(x, i)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `H^(p^i) = <x^(p^i) : x in H>`.
pub fn agemo_of(g: &GroupHandle, h: &Subgroup, i: u32) -> Subgroup {
    closure(g, &power_image_of(g, h, i))
}

/// `{ x in H : o(x) <= p^i }`; not closed.
pub fn low_order_set_of(g: &GroupHandle, h: &Subgroup, i: u32) -> Vec<ElemId> {
    h.members.iter().copied().filter(|&x| g.order_log(x) <= i).collect()
}

/// `Omega_i(H) = <x in H : o(x) <= p^i>`.
pub fn omega_of(g: &GroupHandle, h: &Subgroup, i: u32) -> Subgroup {
    closure(g, &low_order_set_of(g, h, i))
}

/// `[A, B]` for subgroups normalised by `ambient`, as the normal closure in
/// `ambient` of the commutators of their generators.
pub fn commutator_of_normal(g: &GroupHandle, a: &Subgroup, b: &Subgroup, ambient: &Subgroup) -> Subgroup {
    let comms: Vec<ElemId> = a
        .generators
        .iter()
        .flat_map(|&x| b.generators.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    normal_closure(g, &comms, &ambient.generators)
}

pub fn derived_subgroup_of(g: &GroupHandle, h: &Subgroup) -> Subgroup {
    commutator_of_normal(g, h, h, h)
}

pub fn center_of(g: &GroupHandle, h: &Subgroup) -> Subgroup {
    let members = h
        .members
        .iter()
        .copied()
        .filter(|&x| h.generators.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    subgroup_from_members(g, members)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    UpperCentral,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    /// Nilpotency class for central series, derived length otherwise.
    pub class_or_length: usize,
}

impl SeriesReport {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

/// `gamma_1 = H`, `gamma_{k+1} = [gamma_k, H]`, down to the trivial group.
pub fn lower_central_series_of(g: &GroupHandle, h: &Subgroup) -> SeriesReport {
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = commutator_of_normal(g, last, h, h);
        if next.order() == last.order() {
            // only possible outside p-groups
            break;
        }
        terms.push(next);
    }
    let class = terms.len() - 1;
    SeriesReport { kind: SeriesKind::LowerCentral, terms, class_or_length: class }
}

/// `Z_0 = 1`, `Z_{i+1} = { x : [x, h] in Z_i for all generators h }`.
pub fn upper_central_series_of(g: &GroupHandle, h: &Subgroup) -> SeriesReport {
    let mut terms = vec![Subgroup::trivial()];
    loop {
        let last = terms.last().unwrap();
        if last.order() == h.order() {
            break;
        }
        let members: Vec<ElemId> = h
            .members
            .iter()
            .copied()
            .filter(|&x| h.generators.iter().all(|&y| last.contains(g.commutator(x, y))))
            .collect();
        if members.len() == last.order() {
            break;
        }
        terms.push(subgroup_from_members(g, members));
    }
    let class = terms.len() - 1;
    SeriesReport { kind: SeriesKind::UpperCentral, terms, class_or_length: class }
}

pub fn derived_series_of(g: &GroupHandle, h: &Subgroup) -> SeriesReport {
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = derived_subgroup_of(g, last);
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    let len = terms.len() - 1;
    SeriesReport { kind: SeriesKind::Derived, terms, class_or_length: len }
}

pub fn agemo(g: &GroupHandle, i: u32) -> Result<Subgroup, Error> {
    let whole = g.whole()?;
    g.cached(CacheKey::Agemo(i), || Ok(agemo_of(g, &whole, i)))
}

pub fn power_image(g: &GroupHandle, i: u32) -> Result<Vec<ElemId>, Error> {
    Ok(power_image_of(g, &g.whole()?, i))
}

pub fn omega(g: &GroupHandle, i: u32) -> Result<Subgroup, Error> {
    let whole = g.whole()?;
    g.cached(CacheKey::Omega(i), || Ok(omega_of(g, &whole, i)))
}

pub fn low_order_set(g: &GroupHandle, i: u32) -> Result<Vec<ElemId>, Error> {
    Ok(low_order_set_of(g, &g.whole()?, i))
}

pub fn derived_subgroup(g: &GroupHandle) -> Result<Subgroup, Error> {
    let whole = g.whole()?;
    g.cached(CacheKey::Derived, || Ok(derived_subgroup_of(g, &whole)))
}

pub fn center(g: &GroupHandle) -> Result<Subgroup, Error> {
    let whole = g.whole()?;
    g.cached(CacheKey::Center, || Ok(center_of(g, &whole)))
}

pub fn lower_central_series(g: &GroupHandle) -> Result<SeriesReport, Error> {
    Ok(lower_central_series_of(g, &g.whole()?))
}

pub fn upper_central_series(g: &GroupHandle) -> Result<SeriesReport, Error> {
    Ok(upper_central_series_of(g, &g.whole()?))
}

pub fn derived_series(g: &GroupHandle) -> Result<SeriesReport, Error> {
    Ok(derived_series_of(g, &g.whole()?))
}

pub fn nilpotency_class(g: &GroupHandle) -> Result<usize, Error> {
    Ok(lower_central_series(g)?.class_or_length)
}

/// `e` with exponent `p^e`.
pub fn exponent_log(g: &GroupHandle) -> Result<u32, Error> {
    Ok(g.elements()?.map(|x| g.order_log(x)).max().unwrap_or(0))
}

pub fn exponent(g: &GroupHandle) -> Result<u64, Error> {
    Ok((g.prime() as u64).pow(exponent_log(g)?))
}

pub fn exponent_log_of(g: &GroupHandle, h: &Subgroup) -> u32 {
    h.members.iter().map(|&x| g.order_log(x)).max().unwrap_or(0)
}

#[derive(Debug, Clone)]
pub struct FrattiniData {
    pub frattini: Subgroup,
    /// `d` with `|H : Phi(H)| = p^d`.
    pub rank: u32,
    /// Lifts of a basis of `H / Phi(H)`, chosen greedily in candidate order.
    pub basis: Vec<ElemId>,
    prime: u32,
    coords: HashMap<ElemId, Vec<u32>>,
}

impl FrattiniData {
    pub fn prime(&self) -> u32 {
        self.prime
    }
}

/// `Phi(H) = H^p [H, H]`, the rank `d(H)` and a greedy basis of `H/Phi(H)`.
/// Basis candidates are the generators of `H` first, then its members in
/// enumeration order.
pub fn frattini_and_rank_of(g: &GroupHandle, h: &Subgroup) -> FrattiniData {
    frattini_with_candidates(g, h, &default_candidates(h))
}

fn default_candidates(h: &Subgroup) -> Vec<ElemId> {
    h.generators.iter().chain(&h.members).copied().collect()
}

/// As [`frattini_and_rank_of`], taking basis candidates in the given order.
pub fn frattini_with_candidates(g: &GroupHandle, h: &Subgroup, candidates: &[ElemId]) -> FrattiniData {
    let mut gens = power_image_of(g, h, 1);
    let hg = &h.generators;
    for (k, &x) in hg.iter().enumerate() {
        for &y in &hg[k + 1..] {
            gens.push(g.commutator(x, y));
        }
    }
    let frattini = normal_closure(g, &gens, hg);
    frattini_from(g, h, frattini, candidates)
}

fn frattini_from(g: &GroupHandle, h: &Subgroup, frattini: Subgroup, candidates: &[ElemId]) -> FrattiniData {
    let p = g.prime();
    let mut b = Builder::from(g, &frattini);
    let mut basis = Vec::new();
    for &x in candidates {
        if b.members.len() == h.order() {
            break;
        }
        if b.add(x) {
            basis.push(x);
        }
    }
    let rank = basis.len() as u32;
    let mut coords = HashMap::with_capacity(h.order());
    let total = (p as usize).pow(rank);
    for idx in 0..total {
        let mut c = vec![0u32; rank as usize];
        let mut t = idx;
        for slot in c.iter_mut().rev() {
            *slot = (t % p as usize) as u32;
            t /= p as usize;
        }
        let w = basis.iter().zip(&c).fold(0, |acc, (&bx, &e)| g.mul(acc, g.pow(bx, e as i64)));
        for &f in &frattini.members {
            coords.insert(g.mul(w, f), c.clone());
        }
    }
    FrattiniData { frattini, rank, basis, prime: p, coords }
}

pub fn frattini_and_rank(g: &GroupHandle) -> Result<FrattiniData, Error> {
    let whole = g.whole()?;
    let frattini = g.cached(CacheKey::Frattini, || Ok(frattini_and_rank_of(g, &whole).frattini))?;
    Ok(frattini_from(g, &whole, frattini, &default_candidates(&whole)))
}

/// Coordinates of the image of `x` in `H/Phi(H)` over the stored basis.
pub fn coordinates_mod_frattini(f: &FrattiniData, x: ElemId) -> Result<Vec<u32>, Error> {
    f.coords
        .get(&x)
        .cloned()
        .ok_or_else(|| Error::Internal(format!("element {x} has no coordinates modulo the Frattini subgroup")))
}

pub use crate::linalg::rank_of;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct SubgroupCatalog {
    /// Distinct subgroups, ordered by (order, members).
    pub subgroups: Vec<Subgroup>,
    pub sampled: bool,
}

/// Subgroups generated by at most `max_gens` elements. Exhaustive mode is
/// complete for `max_gens >= n` on a group of order `p^n`.
pub fn enumerate_subgroups(g: &GroupHandle, max_gens: usize, mode: EnumerationMode) -> Result<SubgroupCatalog, Error> {
    let whole = g.whole()?;
    match mode {
        EnumerationMode::Exhaustive => {
            let cap = (g.prime() as u64).pow(g.caps().lattice_log);
            if g.order() > cap as u128 {
                return Err(Error::CapExceeded { what: "subgroup lattice", order: g.order(), cap });
            }
            let mut seen: HashSet<Vec<ElemId>> = HashSet::new();
            let trivial = Subgroup::trivial();
            seen.insert(trivial.members.clone());
            let mut all = vec![trivial.clone()];
            let mut layer = vec![trivial];
            for _ in 0..max_gens {
                let mut next = Vec::new();
                for s in &layer {
                    let mut covered = Marks::new(g);
                    for &x in &s.members {
                        covered.set(x);
                    }
                    for &x in &whole.members {
                        if covered.has(x) {
                            continue;
                        }
                        // <S, s x^k> = <S, x> for s in S and k prime to p
                        let o = g.element_order(x);
                        let mut y = x;
                        for k in 1..o {
                            if k % g.prime() as u64 != 0 {
                                for &m in &s.members {
                                    covered.set(g.mul(m, y));
                                }
                            }
                            y = g.mul(y, x);
                        }
                        let t = extend_closure(g, s, &[x]);
                        if seen.insert(t.members.clone()) {
                            all.push(t.clone());
                            next.push(t);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                layer = next;
            }
            all.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
            Ok(SubgroupCatalog { subgroups: all, sampled: false })
        }
        EnumerationMode::Sampled { samples, seed } => {
            let mut seen = HashSet::new();
            let mut all = Vec::new();
            for s in sample_subgroups(g, samples, max_gens, seed)? {
                if seen.insert(s.members.clone()) {
                    all.push(s);
                }
            }
            all.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
            Ok(SubgroupCatalog { subgroups: all, sampled: true })
        }
    }
}

/// `count` closures of uniformly random generator sets of size
/// `1..=max_gens`, repeats included, reproducible from `seed`.
pub fn sample_subgroups(g: &GroupHandle, count: usize, max_gens: usize, seed: u64) -> Result<Vec<Subgroup>, Error> {
    let n = g.enumerable()? as ElemId;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_gens = max_gens.max(1);
    Ok((0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_gens);
            let gens: Vec<ElemId> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            closure(g, &gens)
        })
        .collect())
}

/// Random elements, for sampled pair checks.
pub(crate) fn sample_pairs(n: ElemId, count: usize, seed: u64) -> Vec<(ElemId, ElemId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(ElemId, ElemId)> = (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    // lexicographic order keeps "first failure" well defined
    pairs.sort_unstable();
    pairs
}

#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub group: GroupHandle,
    /// Ambient id to coset id.
    pub coset_of: Vec<ElemId>,
    /// Coset id to its minimum ambient id.
    pub reps: Vec<ElemId>,
}

impl QuotientGroup {
    pub fn image(&self, x: ElemId) -> ElemId {
        self.coset_of[x as usize]
    }

    pub fn lift(&self, c: ElemId) -> ElemId {
        self.reps[c as usize]
    }
}

/// `G / N` as a table-backed handle.
pub fn quotient(g: &GroupHandle, n: &Subgroup) -> Result<QuotientGroup, Error> {
    let whole = g.whole()?;
    if !n.contains(0) || !is_normal_in(g, n, &whole) {
        return Err(Error::Precondition("quotient by a subgroup that is not normal".into()));
    }
    let size = whole.order();
    let mut coset_of = vec![ElemId::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size as ElemId {
        if coset_of[x as usize] != ElemId::MAX {
            continue;
        }
        let c = reps.len() as ElemId;
        reps.push(x);
        for &k in &n.members {
            coset_of[g.mul(x, k) as usize] = c;
        }
    }
    let m = reps.len();
    if (m as u64) > g.caps().table {
        return Err(Error::CapExceeded { what: "table", order: m as u128, cap: g.caps().table });
    }
    let mut mul = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            mul[a * m + b] = coset_of[g.mul(reps[a], reps[b]) as usize];
        }
    }
    let mut gens: Vec<ElemId> = g.generators().iter().map(|&x| coset_of[x as usize]).filter(|&c| c != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let names = reps.iter().map(|&r| format!("{}N", g.label(r))).collect();
    let table = TableGroup::from_cayley(g.prime(), mul, gens, names)?;
    let handle = GroupHandle::from_table_with(table, format!("{}/N", g.name()), g.caps());
    Ok(QuotientGroup { group: handle, coset_of, reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_presentation;

    fn handle(src: &str) -> GroupHandle {
        GroupHandle::from_presentation(parse_presentation(src).unwrap()).unwrap()
    }

    fn g1() -> GroupHandle {
        handle("group p=3 n=3\n[g2,g1] = g3\n")
    }

    fn g2() -> GroupHandle {
        // a, b, c, a^3, b^3, c^3 with [b,a] = c
        handle(
            "group p=3 n=6\ng1^p = g4\ng2^p = g5\ng3^p = g6\n[g2,g1] = g3\n[g4,g2] = g6^2\n[g5,g1] = g6\n",
        )
    }

    fn c9() -> GroupHandle {
        handle("group p=3 n=2\ng1^p = g2\n")
    }

    fn m27() -> GroupHandle {
        // g1 = b, g2 = a, g3 = a^3, [a, b] = a^3
        handle("group p=3 n=3\ng2^p = g3\n[g2,g1] = g3\n")
    }

    #[test]
    fn agemo_examples() {
        let c9 = c9();
        assert_eq!(agemo(&c9, 1).unwrap().members, power_image(&c9, 1).unwrap());
        assert_eq!(agemo(&c9, 1).unwrap().order(), 3);
        let g2 = g2();
        let a1 = agemo(&g2, 1).unwrap();
        assert_eq!(a1.order(), 27);
        assert_eq!(a1.members, power_image(&g2, 1).unwrap());
    }

    #[test]
    fn omega_examples() {
        let g = g1();
        assert_eq!(omega(&g, 1).unwrap().order(), 27);
        assert_eq!(low_order_set(&g, 1).unwrap().len(), 27);
        let c5 = handle("group p=5 n=1");
        assert_eq!(omega(&c5, 1).unwrap().members, low_order_set(&c5, 1).unwrap());
    }

    #[test]
    fn series_examples() {
        let g2 = g2();
        let d = derived_subgroup(&g2).unwrap();
        // <c> has order 9 in G_2
        assert_eq!(d.order(), 9);
        assert!(d.contains(g2.id_of(&[0, 0, 1, 0, 0, 0]).unwrap()));
        assert_eq!(nilpotency_class(&g2).unwrap(), 2);
        assert_eq!(upper_central_series(&g2).unwrap().class_or_length, 2);
        let c27 = handle("group p=3 n=3\ng1^p = g2\ng2^p = g3\n");
        assert_eq!(center(&c27).unwrap().order(), 27);
        let m = m27();
        let lcs = lower_central_series(&m).unwrap();
        assert_eq!(lcs.orders(), vec![27, 3, 1]);
        assert_eq!(lcs.terms[1].members, closure(&m, &[m.id_of(&[0, 0, 1]).unwrap()]).members);
        assert_eq!(derived_series(&m).unwrap().class_or_length, 2);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponent(&g2()).unwrap(), 9);
        assert_eq!(exponent(&handle("group p=3 n=3")).unwrap(), 3);
    }

    #[test]
    fn frattini_examples() {
        let g = g1();
        let f = frattini_and_rank(&g).unwrap();
        assert_eq!(f.rank, 2);
        assert_eq!(f.frattini.order(), 3);
        let a = g.id_of(&[1, 0, 0]).unwrap();
        let b = g.id_of(&[0, 1, 0]).unwrap();
        let c = g.id_of(&[0, 0, 1]).unwrap();
        assert_eq!(f.basis, vec![a, b]);
        assert_eq!(coordinates_mod_frattini(&f, a).unwrap(), vec![1, 0]);
        assert_eq!(coordinates_mod_frattini(&f, b).unwrap(), vec![0, 1]);
        assert_eq!(coordinates_mod_frattini(&f, c).unwrap(), vec![0, 0]);
        let f2 = frattini_and_rank(&g2()).unwrap();
        assert_eq!(f2.rank, 2);
        assert_eq!(f2.frattini.order(), 81);
        assert_eq!(frattini_and_rank(&handle("group p=5 n=3")).unwrap().rank, 3);
        assert_eq!(frattini_and_rank(&handle("group p=3 n=3\ng1^p = g2\ng2^p = g3\n")).unwrap().rank, 1);
    }

    #[test]
    fn subgroup_counts() {
        let c9 = c9();
        let all = enumerate_subgroups(&c9, 2, EnumerationMode::Exhaustive).unwrap();
        assert_eq!(all.subgroups.len(), 3);
        let e9 = handle("group p=3 n=2");
        assert_eq!(enumerate_subgroups(&e9, 2, EnumerationMode::Exhaustive).unwrap().subgroups.len(), 6);
        let big = handle("group p=3 n=5");
        assert!(matches!(enumerate_subgroups(&big, 5, EnumerationMode::Exhaustive), Err(Error::CapExceeded { .. })));
        let sampled = enumerate_subgroups(&big, 2, EnumerationMode::Sampled { samples: 50, seed: 1 }).unwrap();
        assert!(sampled.sampled);
        assert!(!sampled.subgroups.is_empty());
    }

    #[test]
    fn quotient_examples() {
        let g = g1();
        let z = center(&g).unwrap();
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.group.order(), 9);
        assert!(is_abelian(&q.group, &q.group.whole().unwrap()));
        let whole = g.whole().unwrap();
        assert_eq!(quotient(&g, &whole).unwrap().group.order(), 1);
        let a = closure(&g, &[9]);
        assert!(quotient(&g, &a).is_err());
        let c9 = c9();
        let q = quotient(&c9, &agemo(&c9, 1).unwrap()).unwrap();
        assert_eq!(q.group.order(), 3);
    }

    #[test]
    fn normality_and_shape() {
        let g = g1();
        let whole = g.whole().unwrap();
        assert!(is_normal_in(&g, &center(&g).unwrap(), &whole));
        assert!(!is_normal_in(&g, &closure(&g, &[9]), &whole));
        assert!(!is_abelian(&g, &whole));
        assert!(!is_cyclic(&g, &whole));
        assert!(is_cyclic(&c9(), &c9().whole().unwrap()));
    }
}
