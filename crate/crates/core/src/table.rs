//! Explicit multiplication tables: the brute-force oracle.
//!
//! Everything in here is deliberately naive (all-pairs loops, plain
//! breadth-first closure) so that it stays independent of the cleverer
//! routines in [`crate::structure`] that it is used to check.

use std::collections::VecDeque;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pc::{PcError, PcGroup};
use crate::subgroup::{ElemId, Subgroup};

pub const DEFAULT_TABLE_CAP: u64 = 6561;
/// Orders up to this size get a complete associativity proof at build time.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 4096;
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("{order} elements exceed the table cap of {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("collection failed while building the table: {0}")]
    Collection(#[from] PcError),
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("subgroup is not normal")]
    NotNormal,
}

#[derive(Debug, Clone)]
pub struct TableGroup {
    prime: u32,
    order: usize,
    mul: Vec<ElemId>,
    inv: Vec<ElemId>,
    orders: Vec<u32>,
    generators: Vec<ElemId>,
    labels: Option<Vec<Vec<u32>>>,
    names: Vec<String>,
}

/// A coset group together with the maps back to its parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: TableGroup,
    /// Parent id to coset id.
    pub coset_of: Vec<ElemId>,
    /// Coset id to its minimum parent id.
    pub reps: Vec<ElemId>,
}

impl TableGroup {
    /// Tabulates a presentation by collecting every product.
    pub fn from_presentation(group: &PcGroup, cap: u64) -> Result<Self, TableError> {
        let order = group.order();
        if order > cap as u128 {
            return Err(TableError::CapExceeded { order, cap });
        }
        let n = order as usize;
        let mut mul = vec![0; n * n];
        let mut xs = vec![0u32; group.ngens()];
        let mut ys = vec![0u32; group.ngens()];
        let mut out = Vec::with_capacity(group.ngens());
        for x in 0..n {
            group.decode_into(x, &mut xs);
            for y in 0..n {
                group.decode_into(y, &mut ys);
                group.mul_raw(&xs, &ys, &mut out)?;
                mul[x * n + y] = group.encode(&out) as ElemId;
            }
        }
        let labels: Vec<Vec<u32>> = (0..n).map(|id| group.decode(id)).collect();
        let names = labels.iter().map(|e| crate::pc::Word::from_exponents(e).to_string()).collect();
        let generators = (0..group.ngens())
            .map(|g| {
                let mut e = vec![0; group.ngens()];
                e[g] = 1;
                group.encode(&e) as ElemId
            })
            .collect();
        let mut t = Self::assemble(group.prime(), mul, generators, names)?;
        t.labels = Some(labels);
        Ok(t)
    }

    /// Builds from a handwritten Cayley table (row-major, identity at 0).
    pub fn from_cayley(prime: u32, mul: Vec<ElemId>, generators: Vec<ElemId>, names: Vec<String>) -> Result<Self, TableError> {
        Self::assemble(prime, mul, generators, names)
    }

    fn assemble(prime: u32, mul: Vec<ElemId>, generators: Vec<ElemId>, names: Vec<String>) -> Result<Self, TableError> {
        let n = (mul.len() as f64).sqrt().round() as usize;
        if n * n != mul.len() || n == 0 {
            return Err(TableError::NotAGroup("table is not square".into()));
        }
        if names.len() != n {
            return Err(TableError::NotAGroup("one name per element required".into()));
        }
        let mut m = n;
        while m % prime as usize == 0 {
            m /= prime as usize;
        }
        if m != 1 {
            return Err(TableError::NotAGroup(format!("order {n} is not a power of {prime}")));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x as usize >= n) {
            return Err(TableError::NotAGroup(format!("entry {bad} out of range")));
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(TableError::NotAGroup(format!("0 is not an identity for {x}")));
            }
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            let y = row
                .iter()
                .position(|&z| z == 0)
                .ok_or_else(|| TableError::NotAGroup(format!("{x} has no right inverse")))?;
            if mul[y * n + x] != 0 {
                return Err(TableError::NotAGroup(format!("inverse of {x} is not two-sided")));
            }
            inv[x] = y as ElemId;
        }
        let mut t = TableGroup {
            prime,
            order: n,
            mul,
            inv,
            orders: Vec::new(),
            generators,
            labels: None,
            names,
        };
        if t.generators.iter().any(|&g| g as usize >= n) {
            return Err(TableError::NotAGroup("generator out of range".into()));
        }
        if t.closure(&t.generators.clone()).order() != n {
            return Err(TableError::NotAGroup("listed generators do not generate the table".into()));
        }
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            if let Some((x, y, z)) = t.associativity_light() {
                return Err(TableError::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
            }
        } else if let Some((x, y, z)) = t.associativity_sampled(SAMPLED_ASSOCIATIVITY_TRIPLES, 0) {
            return Err(TableError::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
        }
        t.orders = (0..n as ElemId)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != 0 {
                    y = t.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        // orders of p-group elements are p-powers
        if let Some(x) = t.orders.iter().position(|&o| !is_power_of(o as u64, prime as u64)) {
            return Err(TableError::NotAGroup(format!("element {x} has order {}", t.orders[x])));
        }
        Ok(t)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        self.mul[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: ElemId) -> ElemId {
        self.inv[x as usize]
    }

    pub fn element_order(&self, x: ElemId) -> u32 {
        self.orders[x as usize]
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    /// Exponent vectors when built from a presentation.
    pub fn labels(&self) -> Option<&[Vec<u32>]> {
        self.labels.as_deref()
    }

    pub fn name_of(&self, x: ElemId) -> &str {
        &self.names[x as usize]
    }

    pub fn pow(&self, x: ElemId, k: u64) -> ElemId {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn commutator(&self, x: ElemId, y: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Light's test: the elements `y` with `(xy)z = x(yz)` for all `x, z`
    /// form a submagma, so checking `y` over a generating set proves
    /// associativity outright.
    pub fn associativity_light(&self) -> Option<(ElemId, ElemId, ElemId)> {
        let n = self.order as ElemId;
        for &y in &self.generators {
            for x in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Literal check of every triple.
    pub fn associativity_exhaustive(&self) -> Option<(ElemId, ElemId, ElemId)> {
        let n = self.order as ElemId;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn associativity_sampled(&self, triples: usize, seed: u64) -> Option<(ElemId, ElemId, ElemId)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.order as ElemId;
        (0..triples).find_map(|_| {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            (self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))).then_some((x, y, z))
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: (0..self.order as ElemId).collect(), generators: self.generators.clone() }
    }

    /// Plain breadth-first closure: every member times every generator.
    pub fn closure(&self, gens: &[ElemId]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_members(members, gens.to_vec())
    }

    fn is_closed(&self, s: &Subgroup) -> bool {
        s.contains(0) && s.members.iter().all(|&x| s.members.iter().all(|&y| s.contains(self.mul(x, y))))
    }

    pub fn is_normal(&self, s: &Subgroup) -> Result<bool, TableError> {
        if !self.is_closed(s) {
            return Err(TableError::NotClosed);
        }
        let n = self.order as ElemId;
        Ok((0..n).all(|g| s.members.iter().all(|&x| s.contains(self.mul(self.mul(g, x), self.inv(g))))))
    }

    /// Coset group `G/N`; each coset is represented by its minimum id.
    pub fn quotient_table(&self, normal: &Subgroup) -> Result<Quotient, TableError> {
        if !self.is_normal(normal)? {
            return Err(TableError::NotNormal);
        }
        let n = self.order;
        let mut coset_of = vec![ElemId::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as ElemId {
            if coset_of[x as usize] != ElemId::MAX {
                continue;
            }
            let c = reps.len() as ElemId;
            reps.push(x);
            for &k in &normal.members {
                coset_of[self.mul(x, k) as usize] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = coset_of[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let mut generators: Vec<ElemId> =
            self.generators.iter().map(|&g| coset_of[g as usize]).filter(|&c| c != 0).collect();
        generators.sort_unstable();
        generators.dedup();
        let names = reps.iter().map(|&r| format!("{}N", self.name_of(r))).collect();
        let group = TableGroup::assemble(self.prime, mul, generators, names)?;
        Ok(Quotient { group, coset_of, reps })
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order as ElemId;
        let members = (0..n).filter(|&x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x))).collect();
        Subgroup::from_members(members, Vec::new())
    }

    /// Closure of all commutators `[x, y]`.
    pub fn derived(&self) -> Subgroup {
        let n = self.order as ElemId;
        let mut comms: Vec<ElemId> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| self.commutator(x, y)).collect();
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// `{ g^(p^i) }` as a raw set.
    pub fn power_image(&self, i: u32) -> Vec<ElemId> {
        let k = (self.prime as u64).pow(i);
        let mut v: Vec<ElemId> = (0..self.order as ElemId).map(|x| self.pow(x, k)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn agemo(&self, i: u32) -> Subgroup {
        self.closure(&self.power_image(i))
    }

    pub fn low_order_set(&self, i: u32) -> Vec<ElemId> {
        let bound = (self.prime as u64).pow(i);
        (0..self.order as ElemId).filter(|&x| self.orders[x as usize] as u64 <= bound).collect()
    }

    pub fn omega(&self, i: u32) -> Subgroup {
        self.closure(&self.low_order_set(i))
    }

    /// Closure of all p-th powers and all commutators.
    pub fn frattini(&self) -> Subgroup {
        let mut gens = self.power_image(1);
        gens.extend(self.derived().members);
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    pub fn exponent(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    /// `d(G) = log_p |G : Phi(G)|`.
    pub fn rank(&self) -> u32 {
        let mut q = self.order / self.frattini().order();
        let mut d = 0;
        while q > 1 {
            q /= self.prime as usize;
            d += 1;
        }
        d
    }

    /// Row-major CSV dump of the multiplication table.
    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        for row in self.mul.chunks(self.order) {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x % p == 0 {
        x /= p;
    }
    x == 1
}
