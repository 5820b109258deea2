use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::pc::{Element, PcGroup, PcPresentation};
use crate::subgroup::{ElemId, Subgroup};
use crate::table::{TableGroup, DEFAULT_TABLE_CAP};
use crate::Error;

/// Size limits for the different computation modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose elements are enumerated on the collection backend.
    pub streaming: u64,
    /// Largest group that may be materialised as a table.
    pub table: u64,
    /// Largest group whose full subgroup lattice is enumerated, as a power of p.
    pub lattice_log: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { streaming: 19_683, table: DEFAULT_TABLE_CAP, lattice_log: 4 }
    }
}

#[derive(Debug)]
pub(crate) enum Backend {
    Presentation(PcGroup),
    Table(TableGroup),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum CacheKey {
    Agemo(u32),
    Omega(u32),
    Derived,
    Center,
    Frattini,
}

#[derive(Debug, Default)]
struct Cache {
    order_logs: OnceLock<Vec<u8>>,
    pth_powers: OnceLock<Vec<ElemId>>,
    subgroups: Mutex<HashMap<CacheKey, Arc<Subgroup>>>,
}

struct Inner {
    backend: Backend,
    name: String,
    prime: u32,
    order: u128,
    log_order: u32,
    generators: Vec<ElemId>,
    caps: Caps,
    cache: Cache,
}

/// The ambient group of every computation: either a consistent
/// presentation evaluated by collection, or an explicit table.
///
/// Elements are addressed by [`ElemId`]; for presentations the id is the
/// lexicographic rank of the exponent vector, so a table built from the
/// same presentation uses the same ids. Handles are cheap to clone and
/// safe to share between threads; derived data is computed at most once.
#[derive(Clone)]
pub struct GroupHandle {
    inner: Arc<Inner>,
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("name", &self.inner.name)
            .field("prime", &self.inner.prime)
            .field("order", &self.inner.order)
            .field("table", &self.is_table())
            .finish()
    }
}

impl GroupHandle {
    /// Collection-backed handle; the presentation must pass the consistency test.
    pub fn from_presentation(presentation: PcPresentation) -> Result<Self, Error> {
        Self::from_presentation_with(presentation, Caps::default())
    }

    pub fn from_presentation_with(presentation: PcPresentation, caps: Caps) -> Result<Self, Error> {
        let name = presentation.name().unwrap_or("G").to_string();
        let group = PcGroup::consistent(presentation)?;
        let generators = (0..group.ngens())
            .map(|g| {
                let mut e = vec![0; group.ngens()];
                e[g] = 1;
                group.encode(&e) as ElemId
            })
            .collect();
        Ok(Self::wrap(
            Backend::Presentation(group.clone()),
            name,
            group.prime(),
            group.order(),
            generators,
            caps,
        ))
    }

    pub fn from_table(table: TableGroup, name: impl Into<String>) -> Self {
        Self::from_table_with(table, name, Caps::default())
    }

    pub fn from_table_with(table: TableGroup, name: impl Into<String>, caps: Caps) -> Self {
        let generators = table.generators().to_vec();
        let (prime, order) = (table.prime(), table.order() as u128);
        Self::wrap(Backend::Table(table), name.into(), prime, order, generators, caps)
    }

    fn wrap(backend: Backend, name: String, prime: u32, order: u128, generators: Vec<ElemId>, caps: Caps) -> Self {
        let mut log_order = 0;
        let mut m = order;
        while m > 1 {
            m /= prime as u128;
            log_order += 1;
        }
        GroupHandle {
            inner: Arc::new(Inner { backend, name, prime, order, log_order, generators, caps, cache: Cache::default() }),
        }
    }

    /// Table-backed twin of a presentation handle, with identical ids.
    pub fn tabulate(&self) -> Result<GroupHandle, Error> {
        match &self.inner.backend {
            Backend::Table(_) => Ok(self.clone()),
            Backend::Presentation(pc) => {
                let table = TableGroup::from_presentation(pc, self.inner.caps.table)?;
                Ok(GroupHandle::from_table_with(table, self.inner.name.clone(), self.inner.caps))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn prime(&self) -> u32 {
        self.inner.prime
    }

    pub fn order(&self) -> u128 {
        self.inner.order
    }

    /// `n` with `|G| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.inner.log_order
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    pub fn is_table(&self) -> bool {
        matches!(self.inner.backend, Backend::Table(_))
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        match &self.inner.backend {
            Backend::Presentation(pc) => Some(pc.presentation()),
            Backend::Table(_) => None,
        }
    }

    pub fn table(&self) -> Option<&TableGroup> {
        match &self.inner.backend {
            Backend::Table(t) => Some(t),
            Backend::Presentation(_) => None,
        }
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.inner.generators
    }

    /// Checks the streaming cap and returns the element count.
    pub fn enumerable(&self) -> Result<usize, Error> {
        let cap = match self.inner.backend {
            Backend::Presentation(_) => self.inner.caps.streaming,
            Backend::Table(_) => u64::MAX,
        };
        if self.inner.order > cap as u128 {
            return Err(Error::CapExceeded { what: "enumeration", order: self.inner.order, cap });
        }
        Ok(self.inner.order as usize)
    }

    pub fn elements(&self) -> Result<std::ops::Range<ElemId>, Error> {
        Ok(0..self.enumerable()? as ElemId)
    }

    /// The whole group as a subgroup.
    pub fn whole(&self) -> Result<Subgroup, Error> {
        Ok(Subgroup { members: self.elements()?.collect(), generators: self.generators().to_vec() })
    }

    /// # Panics
    /// If collection exceeds its step budget; consistent presentations of
    /// enumerable size never come close.
    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        match &self.inner.backend {
            Backend::Table(t) => t.mul(x, y),
            Backend::Presentation(pc) => {
                let a = pc.decode(x as usize);
                let b = pc.decode(y as usize);
                let mut out = Vec::with_capacity(a.len());
                pc.mul_raw(&a, &b, &mut out).unwrap_or_else(|e| panic!("{}: {e}", self.inner.name));
                pc.encode(&out) as ElemId
            }
        }
    }

    pub fn inv(&self, x: ElemId) -> ElemId {
        match &self.inner.backend {
            Backend::Table(t) => t.inv(x),
            Backend::Presentation(pc) => {
                let a = pc.decode(x as usize);
                let out = pc.inverse_raw(&a).unwrap_or_else(|e| panic!("{}: {e}", self.inner.name));
                pc.encode(&out) as ElemId
            }
        }
    }

    pub fn pow(&self, x: ElemId, k: i64) -> ElemId {
        let mut base = if k < 0 { self.inv(x) } else { x };
        let mut k = k.unsigned_abs();
        let mut acc = 0;
        while k > 0 && base != 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: ElemId, y: ElemId) -> ElemId {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    /// `x^g = g^-1 x g`.
    pub fn conjugate(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^p`, memoised over the whole group when enumerable.
    pub fn pth_power(&self, x: ElemId) -> ElemId {
        match self.pth_table() {
            Some(t) => t[x as usize],
            None => self.pow(x, self.inner.prime as i64),
        }
    }

    fn pth_table(&self) -> Option<&Vec<ElemId>> {
        if self.enumerable().is_err() {
            return None;
        }
        Some(self.inner.cache.pth_powers.get_or_init(|| {
            let p = self.inner.prime as i64;
            (0..self.inner.order as ElemId).map(|x| self.pow(x, p)).collect()
        }))
    }

    /// `x^(p^k)`.
    pub fn power_pk(&self, x: ElemId, k: u32) -> ElemId {
        (0..k).fold(x, |y, _| self.pth_power(y))
    }

    /// `k` with `o(x) = p^k`.
    pub fn order_log(&self, x: ElemId) -> u32 {
        match self.order_log_table() {
            Some(t) => t[x as usize] as u32,
            None => self.order_log_direct(x),
        }
    }

    fn order_log_direct(&self, x: ElemId) -> u32 {
        match &self.inner.backend {
            Backend::Table(t) => {
                let mut o = t.element_order(x);
                let mut k = 0;
                while o > 1 {
                    o /= self.inner.prime;
                    k += 1;
                }
                k
            }
            Backend::Presentation(_) => {
                let mut k = 0;
                let mut y = x;
                while y != 0 {
                    y = self.pth_power(y);
                    k += 1;
                }
                k
            }
        }
    }

    fn order_log_table(&self) -> Option<&Vec<u8>> {
        if self.enumerable().is_err() {
            return None;
        }
        Some(self.inner.cache.order_logs.get_or_init(|| {
            (0..self.inner.order as ElemId).map(|x| self.order_log_direct(x) as u8).collect()
        }))
    }

    pub fn element_order(&self, x: ElemId) -> u64 {
        (self.inner.prime as u64).pow(self.order_log(x))
    }

    /// Normal form of an id on the presentation backend.
    pub fn element(&self, x: ElemId) -> Option<Element> {
        match &self.inner.backend {
            Backend::Presentation(pc) => pc.element(&pc.decode(x as usize)).ok(),
            Backend::Table(_) => None,
        }
    }

    pub fn id_of(&self, exps: &[u32]) -> Option<ElemId> {
        match &self.inner.backend {
            Backend::Presentation(pc) => (exps.len() == pc.ngens() && exps.iter().all(|&e| e < pc.prime()))
                .then(|| pc.encode(exps) as ElemId),
            Backend::Table(t) => t.labels().and_then(|ls| ls.iter().position(|l| l == exps)).map(|i| i as ElemId),
        }
    }

    /// Human-readable element: normal word for presentations, the table's
    /// own name otherwise.
    pub fn label(&self, x: ElemId) -> String {
        match &self.inner.backend {
            Backend::Presentation(pc) => crate::pc::Word::from_exponents(&pc.decode(x as usize)).to_string(),
            Backend::Table(t) => t.name_of(x).to_string(),
        }
    }

    pub(crate) fn cached(&self, key: CacheKey, compute: impl FnOnce() -> Result<Subgroup, Error>) -> Result<Subgroup, Error> {
        if let Some(s) = self.inner.cache.subgroups.lock().unwrap().get(&key) {
            return Ok((**s).clone());
        }
        // computed outside the lock; a racing thread computes the same value
        let s = compute()?;
        let mut map = self.inner.cache.subgroups.lock().unwrap();
        Ok((**map.entry(key).or_insert_with(|| Arc::new(s))).clone())
    }
}
