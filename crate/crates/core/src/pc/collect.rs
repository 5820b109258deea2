use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Element, PcError, PcPresentation, Word};

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CollectionStats {
    pub steps: u64,
    pub max_stack_depth: usize,
}

impl CollectionStats {
    fn absorb(&mut self, other: CollectionStats) {
        self.steps += other.steps;
        self.max_stack_depth = self.max_stack_depth.max(other.max_stack_depth);
    }
}

/// One of the standard overlap words used to test consistency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestWord {
    /// `(g_k g_j) g_i = g_k (g_j g_i)`, `k > j > i`.
    Associativity { k: usize, j: usize, i: usize },
    /// `(g_j^p) g_i = g_j^{p-1} (g_j g_i)`, `j > i`.
    PowerLeft { j: usize, i: usize },
    /// `g_j (g_i^p) = (g_j g_i) g_i^{p-1}`, `j > i`.
    PowerRight { j: usize, i: usize },
    /// `(g_i^p) g_i = g_i (g_i^p)`.
    PowerSelf { i: usize },
}

impl fmt::Display for TestWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestWord::Associativity { k, j, i } => {
                write!(f, "(g{0}*g{1})*g{2} = g{0}*(g{1}*g{2})", k + 1, j + 1, i + 1)
            }
            TestWord::PowerLeft { j, i } => write!(f, "(g{0}^p)*g{1} = g{0}^(p-1)*(g{0}*g{1})", j + 1, i + 1),
            TestWord::PowerRight { j, i } => write!(f, "g{0}*(g{1}^p) = (g{0}*g{1})*g{1}^(p-1)", j + 1, i + 1),
            TestWord::PowerSelf { i } => write!(f, "(g{0}^p)*g{0} = g{0}*(g{0}^p)", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    Pass,
    Fail { test: TestWord, left: Word, right: Word },
}

impl ConsistencyVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, ConsistencyVerdict::Pass)
    }
}

/// A presentation compiled for collection.
///
/// Collection is from the left: the pending word is kept on a stack of
/// `(generator, exponent)` letters and each letter is moved into the
/// collected prefix, conjugating the part of the prefix it passes.
#[derive(Debug, Clone)]
pub struct PcGroup {
    presentation: PcPresentation,
    prime: u32,
    ngens: usize,
    power: Vec<Vec<(usize, u32)>>,
    /// `comm[j][i]` for `j > i`, the letters of `[g_j, g_i]`.
    comm: Vec<Vec<Vec<(usize, u32)>>>,
    fingerprint: u64,
    budget: u64,
}

impl PcGroup {
    pub fn new(presentation: PcPresentation) -> Self {
        let n = presentation.ngens();
        let power = (0..n).map(|g| presentation.power_rule(g).letters().to_vec()).collect();
        let mut comm = vec![vec![Vec::new(); n]; n];
        for (&(j, i), w) in presentation.commutator_rules() {
            comm[j][i] = w.letters().to_vec();
        }
        let mut hasher = DefaultHasher::new();
        presentation.prime().hash(&mut hasher);
        n.hash(&mut hasher);
        for g in 0..n {
            presentation.power_rule(g).hash(&mut hasher);
        }
        for (k, w) in presentation.commutator_rules() {
            k.hash(&mut hasher);
            w.hash(&mut hasher);
        }
        PcGroup {
            prime: presentation.prime(),
            ngens: n,
            presentation,
            power,
            comm,
            fingerprint: hasher.finish(),
            budget: DEFAULT_STEP_BUDGET,
        }
    }

    /// Compiles and checks consistency, rejecting inconsistent input.
    pub fn consistent(presentation: PcPresentation) -> Result<Self, PcError> {
        let group = PcGroup::new(presentation);
        match group.check_consistency()? {
            ConsistencyVerdict::Pass => Ok(group),
            ConsistencyVerdict::Fail { test, left, right } => {
                Err(PcError::Inconsistent(format!("{test} collects to {left} and {right}")))
            }
        }
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn order(&self) -> u128 {
        self.presentation.order()
    }

    pub fn identity(&self) -> Element {
        Element::from_parts(self.fingerprint, vec![0; self.ngens])
    }

    pub fn generator(&self, gen: usize) -> Result<Element, PcError> {
        if gen >= self.ngens {
            return Err(PcError::GeneratorOutOfRange { index: gen + 1, ngens: self.ngens });
        }
        let mut exps = vec![0; self.ngens];
        exps[gen] = 1;
        Ok(Element::from_parts(self.fingerprint, exps))
    }

    /// Wraps an exponent vector, reducing entries modulo `p` is not done:
    /// entries must already lie in `[0, p)`.
    pub fn element(&self, exps: &[u32]) -> Result<Element, PcError> {
        if exps.len() != self.ngens {
            return Err(PcError::GeneratorOutOfRange { index: exps.len(), ngens: self.ngens });
        }
        if let Some((g, &e)) = exps.iter().enumerate().find(|(_, &e)| e >= self.prime) {
            return Err(PcError::ExponentRange { gen: g + 1, exp: e as u64, prime: self.prime, line: None });
        }
        Ok(Element::from_parts(self.fingerprint, exps.to_vec()))
    }

    fn own(&self, x: &Element) -> Result<(), PcError> {
        if x.fingerprint() == self.fingerprint && x.exponents().len() == self.ngens {
            Ok(())
        } else {
            Err(PcError::MixedPresentations)
        }
    }

    /// Collects the pending letters on `stack` (top = next) into `exps`.
    fn run(&self, exps: &mut [u32], stack: &mut Vec<(usize, u32)>, stats: &mut CollectionStats) -> Result<(), PcError> {
        let p = self.prime;
        let n = self.ngens;
        while let Some((i, k)) = stack.pop() {
            stats.steps += 1;
            if stats.steps > self.budget {
                return Err(PcError::BudgetExceeded { budget: self.budget });
            }
            let tail = i + 1;
            let has_tail = exps[tail..].iter().any(|&e| e != 0);
            if !has_tail {
                let s = exps[i] + k;
                if s >= p {
                    exps[i] = s - p;
                    stack.extend(self.power[i].iter().rev());
                } else {
                    exps[i] = s;
                }
            } else if (tail..n).all(|j| exps[j] == 0 || self.comm[j][i].is_empty()) {
                // g_i commutes with everything it has to pass
                let s = exps[i] + k;
                if s < p {
                    exps[i] = s;
                } else {
                    exps[i] = s - p;
                    for j in (tail..n).rev() {
                        if exps[j] != 0 {
                            stack.push((j, exps[j]));
                            exps[j] = 0;
                        }
                    }
                    stack.extend(self.power[i].iter().rev());
                }
            } else {
                // g_i^e T g_i = g_i^{e+1} T^{g_i}, with g_j^{g_i} = g_j [g_j, g_i]
                if k > 1 {
                    stack.push((i, k - 1));
                }
                let mut seq: Vec<(usize, u32)> = Vec::new();
                exps[i] += 1;
                if exps[i] == p {
                    exps[i] = 0;
                    seq.extend_from_slice(&self.power[i]);
                }
                for j in tail..n {
                    let e = exps[j];
                    if e == 0 {
                        continue;
                    }
                    exps[j] = 0;
                    let c = &self.comm[j][i];
                    if c.is_empty() {
                        seq.push((j, e));
                    } else {
                        for _ in 0..e {
                            seq.push((j, 1));
                            seq.extend_from_slice(c);
                        }
                    }
                }
                stack.extend(seq.into_iter().rev());
            }
            stats.max_stack_depth = stats.max_stack_depth.max(stack.len());
        }
        Ok(())
    }

    /// Multiplies normal forms given as raw exponent vectors.
    pub(crate) fn mul_raw(&self, x: &[u32], y: &[u32], out: &mut Vec<u32>) -> Result<CollectionStats, PcError> {
        out.clear();
        out.extend_from_slice(x);
        let mut stack: Vec<(usize, u32)> =
            y.iter().enumerate().rev().filter(|(_, &e)| e != 0).map(|(g, &e)| (g, e)).collect();
        let mut stats = CollectionStats::default();
        self.run(out, &mut stack, &mut stats)?;
        Ok(stats)
    }

    pub(crate) fn inverse_raw(&self, x: &[u32]) -> Result<Vec<u32>, PcError> {
        let p = self.prime;
        let mut cur = x.to_vec();
        let mut inv = vec![0; self.ngens];
        let mut scratch = Vec::with_capacity(self.ngens);
        let mut letter = vec![0; self.ngens];
        for i in 0..self.ngens {
            let a = cur[i];
            if a == 0 {
                continue;
            }
            letter[i] = p - a;
            self.mul_raw(&cur, &letter, &mut scratch)?;
            std::mem::swap(&mut cur, &mut scratch);
            self.mul_raw(&inv, &letter, &mut scratch)?;
            std::mem::swap(&mut inv, &mut scratch);
            letter[i] = 0;
        }
        debug_assert!(cur.iter().all(|&e| e == 0));
        Ok(inv)
    }

    pub(crate) fn pow_raw(&self, x: &[u32], k: i64) -> Result<Vec<u32>, PcError> {
        let mut base = if k < 0 { self.inverse_raw(x)? } else { x.to_vec() };
        let mut k = k.unsigned_abs();
        let mut acc = vec![0; self.ngens];
        let mut scratch = Vec::with_capacity(self.ngens);
        while k > 0 && base.iter().any(|&e| e != 0) {
            if k & 1 == 1 {
                self.mul_raw(&acc, &base, &mut scratch)?;
                std::mem::swap(&mut acc, &mut scratch);
            }
            k >>= 1;
            if k > 0 {
                self.mul_raw(&base, &base, &mut scratch)?;
                std::mem::swap(&mut base, &mut scratch);
            }
        }
        Ok(acc)
    }

    /// Normal form of an arbitrary word of `(generator, exponent)` pairs.
    /// Exponents may be negative or at least `p`.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<(Element, CollectionStats), PcError> {
        let mut exps = vec![0u32; self.ngens];
        let mut stats = CollectionStats::default();
        let mut stack = Vec::new();
        for &(g, e) in word {
            if g >= self.ngens {
                return Err(PcError::GeneratorOutOfRange { index: g + 1, ngens: self.ngens });
            }
            if e == 0 {
                continue;
            }
            if e > 0 && (e as u64) < self.prime as u64 {
                stack.push((g, e as u32));
            } else {
                let mut unit = vec![0u32; self.ngens];
                unit[g] = 1;
                let power = self.pow_raw(&unit, e)?;
                stack.extend(power.iter().enumerate().rev().filter(|(_, &x)| x != 0).map(|(h, &x)| (h, x)));
            }
            let mut part = CollectionStats::default();
            self.run(&mut exps, &mut stack, &mut part)?;
            stats.absorb(part);
        }
        Ok((Element::from_parts(self.fingerprint, exps), stats))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, PcError> {
        self.own(x)?;
        self.own(y)?;
        let mut out = Vec::with_capacity(self.ngens);
        self.mul_raw(x.exponents(), y.exponents(), &mut out)?;
        Ok(Element::from_parts(self.fingerprint, out))
    }

    pub fn inverse(&self, x: &Element) -> Result<Element, PcError> {
        self.own(x)?;
        Ok(Element::from_parts(self.fingerprint, self.inverse_raw(x.exponents())?))
    }

    pub fn power(&self, x: &Element, k: i64) -> Result<Element, PcError> {
        self.own(x)?;
        Ok(Element::from_parts(self.fingerprint, self.pow_raw(x.exponents(), k)?))
    }

    /// `p^k` for the least `k` with `x^(p^k) = 1`, by repeated p-th powering.
    pub fn element_order(&self, x: &Element) -> Result<u64, PcError> {
        self.own(x)?;
        let mut y = x.exponents().to_vec();
        let mut order = 1u64;
        while y.iter().any(|&e| e != 0) {
            y = self.pow_raw(&y, self.prime as i64)?;
            order *= self.prime as u64;
        }
        Ok(order)
    }

    /// All `p^n` elements in lexicographic order of exponent vectors.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Element>, PcError> {
        let order = self.order();
        if order > cap as u128 {
            return Err(PcError::CapExceeded { order, cap });
        }
        Ok((0..order as usize).map(|id| Element::from_parts(self.fingerprint, self.decode(id))).collect())
    }

    /// Lexicographic rank of an exponent vector (`g1` most significant).
    pub fn encode(&self, exps: &[u32]) -> usize {
        exps.iter().fold(0usize, |acc, &e| acc * self.prime as usize + e as usize)
    }

    pub fn decode(&self, mut id: usize) -> Vec<u32> {
        let p = self.prime as usize;
        let mut exps = vec![0u32; self.ngens];
        for slot in exps.iter_mut().rev() {
            *slot = (id % p) as u32;
            id /= p;
        }
        exps
    }

    pub(crate) fn decode_into(&self, mut id: usize, exps: &mut [u32]) {
        let p = self.prime as usize;
        for slot in exps.iter_mut().rev() {
            *slot = (id % p) as u32;
            id /= p;
        }
    }

    fn unit(&self, g: usize, e: u32) -> Vec<u32> {
        let mut v = vec![0; self.ngens];
        v[g] = e;
        v
    }

    fn mul2(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>, PcError> {
        let mut out = Vec::with_capacity(self.ngens);
        self.mul_raw(x, y, &mut out)?;
        Ok(out)
    }

    /// Evaluates every standard test word both ways and reports the first
    /// disagreement.
    pub fn check_consistency(&self) -> Result<ConsistencyVerdict, PcError> {
        let n = self.ngens;
        let p = self.prime;
        let power_nf = |g: usize| {
            let mut v = vec![0; n];
            for &(h, e) in &self.power[g] {
                v[h] = e;
            }
            v
        };
        let verdict = |test, left: Vec<u32>, right: Vec<u32>| {
            if left == right {
                None
            } else {
                Some(ConsistencyVerdict::Fail {
                    test,
                    left: Word::from_exponents(&left),
                    right: Word::from_exponents(&right),
                })
            }
        };
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.mul2(&self.mul2(&self.unit(k, 1), &self.unit(j, 1))?, &self.unit(i, 1))?;
                    let right = self.mul2(&self.unit(k, 1), &self.mul2(&self.unit(j, 1), &self.unit(i, 1))?)?;
                    if let Some(v) = verdict(TestWord::Associativity { k, j, i }, left, right) {
                        return Ok(v);
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let left = self.mul2(&power_nf(j), &self.unit(i, 1))?;
                let right = self.mul2(&self.unit(j, p - 1), &self.mul2(&self.unit(j, 1), &self.unit(i, 1))?)?;
                if let Some(v) = verdict(TestWord::PowerLeft { j, i }, left, right) {
                    return Ok(v);
                }
                let left = self.mul2(&self.unit(j, 1), &power_nf(i))?;
                let right = self.mul2(&self.mul2(&self.unit(j, 1), &self.unit(i, 1))?, &self.unit(i, p - 1))?;
                if let Some(v) = verdict(TestWord::PowerRight { j, i }, left, right) {
                    return Ok(v);
                }
            }
        }
        for i in 0..n {
            let left = self.mul2(&power_nf(i), &self.unit(i, 1))?;
            let right = self.mul2(&self.unit(i, 1), &power_nf(i))?;
            if let Some(v) = verdict(TestWord::PowerSelf { i }, left, right) {
                return Ok(v);
            }
        }
        Ok(ConsistencyVerdict::Pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_presentation;

    fn heisenberg3() -> PcGroup {
        PcGroup::consistent(parse_presentation("group p=3 n=3\n[g2,g1] = g3\n").unwrap()).unwrap()
    }

    fn c9() -> PcGroup {
        PcGroup::consistent(parse_presentation("group p=3 n=2\ng1^p = g2\n").unwrap()).unwrap()
    }

    #[test]
    fn ba_collects_to_abc() {
        let g = heisenberg3();
        let (x, stats) = g.collect(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(x.exponents(), &[1, 1, 1]);
        assert!(stats.steps > 0);
    }

    #[test]
    fn inverse_cancellation() {
        let g = heisenberg3();
        for gen in 0..3 {
            let (x, _) = g.collect(&[(gen, 1), (gen, -1)]).unwrap();
            assert!(x.is_identity());
        }
    }

    #[test]
    fn exponent_reduction_in_c3() {
        let g = PcGroup::consistent(parse_presentation("group p=3 n=1").unwrap()).unwrap();
        let (x, _) = g.collect(&[(0, 4)]).unwrap();
        assert_eq!(x.exponents(), &[1]);
    }

    #[test]
    fn collect_rejects_bad_generator() {
        let g = heisenberg3();
        assert!(matches!(g.collect(&[(3, 1)]), Err(PcError::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn power_rule_in_c9() {
        let g = c9();
        let a = g.generator(0).unwrap();
        assert_eq!(g.power(&a, 3).unwrap().exponents(), &[0, 1]);
        assert_eq!(g.element_order(&a).unwrap(), 9);
        assert_eq!(g.power(&a, -1).unwrap().exponents(), &[2, 2]);
    }

    #[test]
    fn huge_power_of_identity() {
        let g = heisenberg3();
        assert!(g.power(&g.identity(), 1_000_000).unwrap().is_identity());
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
    }

    #[test]
    fn multiply_b_a() {
        let g = heisenberg3();
        let a = g.generator(0).unwrap();
        let b = g.generator(1).unwrap();
        assert_eq!(g.multiply(&b, &a).unwrap().exponents(), &[1, 1, 1]);
        let x = g.element(&[2, 1, 0]).unwrap();
        let xi = g.inverse(&x).unwrap();
        assert!(g.multiply(&x, &xi).unwrap().is_identity());
        assert!(g.multiply(&xi, &x).unwrap().is_identity());
    }

    #[test]
    fn mixed_presentations_rejected() {
        let g = heisenberg3();
        let h = c9();
        let x = h.generator(0).unwrap();
        assert_eq!(g.multiply(&g.identity(), &x).unwrap_err(), PcError::MixedPresentations);
    }

    #[test]
    fn enumeration_order_and_cap() {
        let g = heisenberg3();
        let all = g.enumerate_elements(19683).unwrap();
        assert_eq!(all.len(), 27);
        assert_eq!(all[1].exponents(), &[0, 0, 1]);
        assert!(all.windows(2).all(|w| w[0].exponents() < w[1].exponents()));
        assert!(matches!(g.enumerate_elements(10), Err(PcError::CapExceeded { .. })));
    }

    #[test]
    fn consistency_passes_and_fails() {
        assert!(heisenberg3().check_consistency().unwrap().is_pass());
        assert!(c9().check_consistency().unwrap().is_pass());
        // g1^2 = g2 forces g2 to commute with g1
        let bad = parse_presentation("group p=2 n=3\ng1^p = g2\n[g2,g1] = g3\n").unwrap();
        let verdict = PcGroup::new(bad.clone()).check_consistency().unwrap();
        assert!(!verdict.is_pass());
        assert!(matches!(PcGroup::consistent(bad), Err(PcError::Inconsistent(_))));
    }

    #[test]
    fn step_budget_is_an_error() {
        let g = heisenberg3().with_step_budget(1);
        assert_eq!(g.collect(&[(1, 1), (0, 1)]).unwrap_err(), PcError::BudgetExceeded { budget: 1 });
    }
}
