//! Built-in group families.
//!
//! Odd-order families and abelian groups come out as PC presentations;
//! the 2-groups of maximal class are written down as Cayley tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pc::{is_prime, PcPresentation, Word};
use crate::table::TableGroup;
use crate::{ElemId, Error, GroupHandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraspecialVariant {
    /// Exponent `p`.
    ExponentP,
    /// Exponent `p^2`.
    ExponentP2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Cyclic { p: u32, e: u32 },
    /// `C_{p^t1} x C_{p^t2} x ...`.
    Abelian { p: u32, parts: Vec<u32> },
    ElementaryAbelian { p: u32, n: u32 },
    /// `(C_{p^e} x C_{p^e}) : C_{p^e}` with `[b, a] = c` central.
    Heisenberg { p: u32, e: u32 },
    /// Order `p^n`, `n` odd.
    Extraspecial { p: u32, n: u32, variant: ExtraspecialVariant },
    /// `M_{p^n}`: `a^b = a^(1 + p^(n-2))`.
    Modular { p: u32, n: u32 },
    /// Order `2^n`.
    Dihedral { n: u32 },
    Quaternion { n: u32 },
    Semidihedral { n: u32 },
}

/// Order, exponent, nilpotency class and minimal number of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advertised {
    pub order: u128,
    pub exponent: u64,
    pub class: usize,
    pub d: u32,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

impl FamilySpec {
    pub fn prime(&self) -> u32 {
        match self {
            FamilySpec::Cyclic { p, .. }
            | FamilySpec::Abelian { p, .. }
            | FamilySpec::ElementaryAbelian { p, .. }
            | FamilySpec::Heisenberg { p, .. }
            | FamilySpec::Extraspecial { p, .. }
            | FamilySpec::Modular { p, .. } => *p,
            FamilySpec::Dihedral { .. } | FamilySpec::Quaternion { .. } | FamilySpec::Semidihedral { .. } => 2,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Cyclic { .. } => "cyclic",
            FamilySpec::Abelian { .. } => "abelian",
            FamilySpec::ElementaryAbelian { .. } => "elementary_abelian",
            FamilySpec::Heisenberg { .. } => "heisenberg",
            FamilySpec::Extraspecial { .. } => "extraspecial",
            FamilySpec::Modular { .. } => "modular",
            FamilySpec::Dihedral { .. } => "dihedral",
            FamilySpec::Quaternion { .. } => "quaternion",
            FamilySpec::Semidihedral { .. } => "semidihedral",
        }
    }

    /// Short display name such as `M27` or `C9xC3`.
    pub fn group_name(&self) -> String {
        let pow = |p: u32, k: u32| (p as u128).pow(k);
        match self {
            FamilySpec::Cyclic { p, e } => format!("C{}", pow(*p, *e)),
            FamilySpec::Abelian { p, parts } => {
                parts.iter().map(|&t| format!("C{}", pow(*p, t))).collect::<Vec<_>>().join("x")
            }
            FamilySpec::ElementaryAbelian { p, n } => format!("C{p}^{n}"),
            FamilySpec::Heisenberg { p, e } => format!("Heis({p},{e})"),
            FamilySpec::Extraspecial { p, n, variant } => {
                let tag = match variant {
                    ExtraspecialVariant::ExponentP => "+",
                    ExtraspecialVariant::ExponentP2 => "-",
                };
                format!("{p}^(1+{}){tag}", n - 1)
            }
            FamilySpec::Modular { p, n } => format!("M{}", pow(*p, *n)),
            FamilySpec::Dihedral { n } => format!("D{}", 1u128 << n),
            FamilySpec::Quaternion { n } => format!("Q{}", 1u128 << n),
            FamilySpec::Semidihedral { n } => format!("SD{}", 1u128 << n),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let p = self.prime();
        if !is_prime(p as u64) {
            return Err(invalid(format!("{p} is not prime")));
        }
        match self {
            FamilySpec::Cyclic { e, .. } if *e == 0 => Err(invalid("cyclic needs e >= 1")),
            FamilySpec::Abelian { parts, .. } if parts.is_empty() || parts.contains(&0) => {
                Err(invalid("abelian type must be a list of positive integers"))
            }
            FamilySpec::ElementaryAbelian { n, .. } if *n == 0 => Err(invalid("elementary_abelian needs n >= 1")),
            FamilySpec::Heisenberg { p, e } if *p == 2 || *e == 0 => {
                Err(invalid("heisenberg needs an odd prime and e >= 1"))
            }
            FamilySpec::Extraspecial { p, n, .. } if *p == 2 || *n < 3 || n % 2 == 0 => {
                Err(invalid("extraspecial needs an odd prime and odd n >= 3"))
            }
            FamilySpec::Modular { p, n } if *n < 3 || (*p == 2 && *n < 4) => {
                Err(invalid("modular needs n >= 3, and n >= 4 for p = 2"))
            }
            FamilySpec::Dihedral { n } | FamilySpec::Quaternion { n } if *n < 3 => {
                Err(invalid(format!("{} needs n >= 3", self.family_name())))
            }
            FamilySpec::Semidihedral { n } if *n < 4 => Err(invalid("semidihedral needs n >= 4")),
            _ => Ok(()),
        }
    }

    pub fn advertised(&self) -> Advertised {
        let p = self.prime();
        let pow = |k: u32| (p as u64).pow(k);
        let (log_order, exp_log, class, d) = match self {
            FamilySpec::Cyclic { e, .. } => (*e, *e, 1, 1),
            FamilySpec::Abelian { parts, .. } => {
                (parts.iter().sum(), *parts.iter().max().unwrap_or(&0), 1, parts.len() as u32)
            }
            FamilySpec::ElementaryAbelian { n, .. } => (*n, 1, 1, *n),
            FamilySpec::Heisenberg { e, .. } => (3 * e, *e, 2, 2),
            FamilySpec::Extraspecial { n, variant, .. } => {
                let exp = if *variant == ExtraspecialVariant::ExponentP { 1 } else { 2 };
                (*n, exp, 2, n - 1)
            }
            FamilySpec::Modular { n, .. } => (*n, n - 1, 2, 2),
            FamilySpec::Dihedral { n } | FamilySpec::Quaternion { n } | FamilySpec::Semidihedral { n } => {
                (*n, n - 1, *n as usize - 1, 2)
            }
        };
        Advertised { order: (p as u128).pow(log_order), exponent: pow(exp_log), class, d }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family_name())?;
        match self {
            FamilySpec::Cyclic { p, e } | FamilySpec::Heisenberg { p, e } => write!(f, " p={p} e={e}"),
            FamilySpec::Abelian { p, parts } => {
                let t: Vec<String> = parts.iter().map(u32::to_string).collect();
                write!(f, " p={p} type={}", t.join(","))
            }
            FamilySpec::ElementaryAbelian { p, n } | FamilySpec::Modular { p, n } => write!(f, " p={p} n={n}"),
            FamilySpec::Extraspecial { p, n, variant } => {
                let v = match variant {
                    ExtraspecialVariant::ExponentP => "p",
                    ExtraspecialVariant::ExponentP2 => "p2",
                };
                write!(f, " p={p} n={n} variant={v}")
            }
            FamilySpec::Dihedral { n } | FamilySpec::Quaternion { n } | FamilySpec::Semidihedral { n } => {
                write!(f, " n={n}")
            }
        }
    }
}

/// Parses `name key=value ...`; `family=name` is accepted in place of the
/// bare name, `e` and `n` are interchangeable and `order=2^n` may replace
/// `n` for the 2-group families.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut name = None;
        let mut keys: BTreeMap<&str, &str> = BTreeMap::new();
        for token in s.split_whitespace() {
            match token.split_once('=') {
                Some(("family", v)) => name = Some(v),
                Some((k, v)) => {
                    if keys.insert(k, v).is_some() {
                        return Err(invalid(format!("duplicate key {k}")));
                    }
                }
                None if name.is_none() => name = Some(token),
                None => return Err(invalid(format!("unexpected token {token}"))),
            }
        }
        let name = name.ok_or_else(|| invalid("missing family name"))?;
        if let Some(k) = keys.keys().find(|k| !["p", "e", "n", "type", "variant", "order"].contains(k)) {
            return Err(invalid(format!("unknown key {k}")));
        }
        let num = |k: &str| -> Result<Option<u32>, Error> {
            keys.get(k).map(|v| v.parse::<u32>().map_err(|_| invalid(format!("{k}={v} is not a number")))).transpose()
        };
        let need = |k: &str| -> Result<u32, Error> { num(k)?.ok_or_else(|| invalid(format!("{name} needs {k}="))) };
        let size = || -> Result<u32, Error> {
            if let Some(v) = num("n")?.or(num("e")?) {
                return Ok(v);
            }
            match num("order")? {
                Some(o) if o.is_power_of_two() => Ok(o.trailing_zeros()),
                Some(o) => Err(invalid(format!("order {o} is not a power of 2"))),
                None => Err(invalid(format!("{name} needs n="))),
            }
        };
        let exponent = || -> Result<u32, Error> { num("e")?.or(num("n")?).ok_or_else(|| invalid(format!("{name} needs e="))) };
        let spec = match name {
            "cyclic" => FamilySpec::Cyclic { p: need("p")?, e: exponent()? },
            "abelian" => {
                let t = keys.get("type").ok_or_else(|| invalid("abelian needs type="))?;
                let mut parts = t
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| invalid(format!("bad abelian type {t}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                parts.sort_unstable_by(|a, b| b.cmp(a));
                FamilySpec::Abelian { p: need("p")?, parts }
            }
            "elementary_abelian" => FamilySpec::ElementaryAbelian { p: need("p")?, n: size()? },
            "heisenberg" => FamilySpec::Heisenberg { p: need("p")?, e: exponent()? },
            "extraspecial" => {
                let variant = match keys.get("variant").copied().unwrap_or("p") {
                    "p" | "exponent-p" => ExtraspecialVariant::ExponentP,
                    "p2" | "exponent-p2" => ExtraspecialVariant::ExponentP2,
                    v => return Err(invalid(format!("unknown extraspecial variant {v}"))),
                };
                FamilySpec::Extraspecial { p: need("p")?, n: num("n")?.unwrap_or(3), variant }
            }
            "modular" => FamilySpec::Modular { p: need("p")?, n: size()? },
            "dihedral" | "quaternion" | "semidihedral" => {
                if let Some(p) = num("p")? {
                    if p != 2 {
                        return Err(invalid(format!("{name} is a 2-group family, got p={p}")));
                    }
                }
                let n = size()?;
                match name {
                    "dihedral" => FamilySpec::Dihedral { n },
                    "quaternion" => FamilySpec::Quaternion { n },
                    _ => FamilySpec::Semidihedral { n },
                }
            }
            other => return Err(invalid(format!("unknown family {other}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A constructed family member.
#[derive(Debug, Clone)]
pub enum FamilyGroup {
    Presentation(PcPresentation),
    Table { table: TableGroup, name: String },
}

impl FamilyGroup {
    pub fn name(&self) -> &str {
        match self {
            FamilyGroup::Presentation(pres) => pres.name().unwrap_or("G"),
            FamilyGroup::Table { name, .. } => name,
        }
    }

    pub fn handle(&self) -> Result<GroupHandle, Error> {
        match self {
            FamilyGroup::Presentation(pres) => GroupHandle::from_presentation(pres.clone()),
            FamilyGroup::Table { table, name } => Ok(GroupHandle::from_table(table.clone(), name.clone())),
        }
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        match self {
            FamilyGroup::Presentation(pres) => Some(pres),
            FamilyGroup::Table { .. } => None,
        }
    }
}

/// Appends the chain `g, g^p, ..., g^(p^(len-1))` starting at `start`.
fn chain(pres: &mut PcPresentation, start: usize, len: u32) -> Result<(), Error> {
    for k in start..start + len as usize - 1 {
        pres.set_power(k, Word::new([(k + 1, 1)]))?;
    }
    Ok(())
}

pub fn build_family(spec: &FamilySpec) -> Result<FamilyGroup, Error> {
    spec.validate()?;
    let p = spec.prime();
    let name = spec.group_name();
    let pres = match spec {
        FamilySpec::Cyclic { e, .. } => {
            let mut pres = PcPresentation::new(p, *e as usize)?;
            chain(&mut pres, 0, *e)?;
            pres
        }
        FamilySpec::Abelian { parts, .. } => abelian(p, parts)?,
        FamilySpec::ElementaryAbelian { n, .. } => abelian(p, &vec![1; *n as usize])?,
        FamilySpec::Heisenberg { e, .. } => heisenberg(p, *e)?,
        FamilySpec::Extraspecial { n, variant, .. } => {
            let ngens = *n as usize;
            let z = ngens - 1;
            let mut pres = PcPresentation::new(p, ngens)?;
            for k in 0..z / 2 {
                pres.set_commutator(2 * k + 1, 2 * k, Word::new([(z, 1)]))?;
            }
            if *variant == ExtraspecialVariant::ExponentP2 {
                pres.set_power(0, Word::new([(z, 1)]))?;
            }
            pres
        }
        FamilySpec::Modular { n, .. } => {
            // g1 = b, g2 = a, g_(j+1) = a^(p^(j-1))
            let ngens = *n as usize;
            let mut pres = PcPresentation::new(p, ngens)?;
            chain(&mut pres, 1, n - 1)?;
            pres.set_commutator(1, 0, Word::new([(ngens - 1, 1)]))?;
            pres
        }
        FamilySpec::Dihedral { n } => return two_group(*n, name, TwoGroupKind::Dihedral),
        FamilySpec::Quaternion { n } => return two_group(*n, name, TwoGroupKind::Quaternion),
        FamilySpec::Semidihedral { n } => return two_group(*n, name, TwoGroupKind::Semidihedral),
    };
    let pres = pres.with_name(name);
    crate::pc::PcGroup::consistent(pres.clone())
        .map_err(|err| Error::Internal(format!("family {spec} produced an inconsistent presentation: {err}")))?;
    Ok(FamilyGroup::Presentation(pres))
}

fn abelian(p: u32, parts: &[u32]) -> Result<PcPresentation, Error> {
    let ngens = parts.iter().sum::<u32>() as usize;
    let mut pres = PcPresentation::new(p, ngens)?;
    let mut start = 0;
    for &t in parts {
        chain(&mut pres, start, t)?;
        start += t as usize;
    }
    Ok(pres)
}

/// Generators interleave the three chains: `g_(3t+1) = a^(p^t)`,
/// `g_(3t+2) = b^(p^t)`, `g_(3t+3) = c^(p^t)`.
fn heisenberg(p: u32, e: u32) -> Result<PcPresentation, Error> {
    let e = e as usize;
    let (a, b, c) = (|t: usize| 3 * t, |t: usize| 3 * t + 1, |t: usize| 3 * t + 2);
    let mut pres = PcPresentation::new(p, 3 * e)?;
    for t in 0..e - 1 {
        for gen in [a(t), b(t), c(t)] {
            pres.set_power(gen, Word::new([(gen + 3, 1)]))?;
        }
    }
    for s in 0..e {
        for t in 0..e {
            if s + t >= e {
                continue;
            }
            // [b^(p^s), a^(p^t)] = c^(p^(s+t)); the inverse is c^(p^e - p^(s+t))
            if s >= t {
                pres.set_commutator(b(s), a(t), Word::new([(c(s + t), 1)]))?;
            } else {
                let inverse = Word::new((s + t..e).map(|u| (c(u), p - 1)));
                pres.set_commutator(a(t), b(s), inverse)?;
            }
        }
    }
    Ok(pres)
}

#[derive(Clone, Copy)]
enum TwoGroupKind {
    Dihedral,
    Quaternion,
    Semidihedral,
}

/// `<a, b>` with `a` of order `m = 2^(n-1)`; element `a^i b^j` has id `j*m + i`.
fn two_group(n: u32, name: String, kind: TwoGroupKind) -> Result<FamilyGroup, Error> {
    let m = 1usize << (n - 1);
    let size = 2 * m;
    // b a^k b^-1 = a^(twist * k)
    let twist = match kind {
        TwoGroupKind::Dihedral | TwoGroupKind::Quaternion => m - 1,
        TwoGroupKind::Semidihedral => m / 2 - 1,
    };
    let b_squared = match kind {
        TwoGroupKind::Quaternion => m / 2,
        _ => 0,
    };
    let id = |i: usize, j: usize| (j * m + i % m) as ElemId;
    let mut mul = vec![0; size * size];
    for x in 0..size {
        let (i, j) = (x % m, x / m);
        for y in 0..size {
            let (k, l) = (y % m, y / m);
            let k = if j == 1 { k * twist } else { k };
            mul[x * size + y] = if j + l == 2 { id(i + k + b_squared, 0) } else { id(i + k, j + l) };
        }
    }
    let names = (0..size)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            match (i, j) {
                (0, 0) => "id".to_string(),
                (0, 1) => "b".to_string(),
                (1, 0) => "a".to_string(),
                (1, 1) => "a*b".to_string(),
                (i, 0) => format!("a^{i}"),
                (i, _) => format!("a^{i}*b"),
            }
        })
        .collect();
    let table = TableGroup::from_cayley(2, mul, vec![id(1, 0), id(0, 1)], names)?;
    Ok(FamilyGroup::Table { table, name })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure;

    fn check_advertised(spec: &str) {
        let spec: FamilySpec = spec.parse().unwrap();
        let g = build_family(&spec).unwrap().handle().unwrap();
        let adv = spec.advertised();
        assert_eq!(g.order(), adv.order, "{spec}");
        assert_eq!(structure::exponent(&g).unwrap(), adv.exponent, "{spec}");
        assert_eq!(structure::nilpotency_class(&g).unwrap(), adv.class, "{spec}");
        assert_eq!(structure::frattini_and_rank(&g).unwrap().rank, adv.d, "{spec}");
    }

    #[test]
    fn advertised_invariants() {
        for spec in [
            "cyclic p=5 e=3",
            "cyclic p=2 e=3",
            "abelian p=3 type=1,2",
            "abelian p=2 type=2,1,1",
            "elementary_abelian p=3 n=3",
            "heisenberg p=3 e=1",
            "heisenberg p=3 e=2",
            "heisenberg p=5 e=1",
            "extraspecial p=3 n=3 variant=p",
            "extraspecial p=3 n=3 variant=p2",
            "extraspecial p=3 n=5 variant=p",
            "modular p=3 n=3",
            "modular p=3 n=4",
            "modular p=2 n=4",
            "dihedral n=3",
            "dihedral n=4",
            "quaternion n=3",
            "quaternion order=16",
            "semidihedral n=4",
        ] {
            check_advertised(spec);
        }
    }

    #[test]
    fn heisenberg_matches_hand_written() {
        let built = build_family(&"heisenberg p=3 e=2".parse().unwrap()).unwrap();
        let text = "group p=3 n=6\ng1^p = g4\ng2^p = g5\ng3^p = g6\n[g2,g1] = g3\n[g4,g2] = g6^2\n[g5,g1] = g6\n";
        let hand = crate::pc::parse_presentation(text).unwrap();
        let built = built.presentation().unwrap();
        assert_eq!(built.to_string().lines().skip(1).collect::<Vec<_>>(), hand.to_string().lines().skip(1).collect::<Vec<_>>());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = build_family(&"quaternion n=3".parse().unwrap()).unwrap().handle().unwrap();
        assert_eq!(g.elements().unwrap().filter(|&x| g.element_order(x) == 2).count(), 1);
        assert!(g.table().unwrap().associativity_exhaustive().is_none());
    }

    #[test]
    fn spec_parsing() {
        let s: FamilySpec = "family=abelian p=3 type=1,2".parse().unwrap();
        assert_eq!(s, FamilySpec::Abelian { p: 3, parts: vec![2, 1] });
        assert_eq!(s.to_string().parse::<FamilySpec>().unwrap(), s);
        assert!("heisenberg p=2 e=1".parse::<FamilySpec>().is_err());
        assert!("dihedral p=3 n=3".parse::<FamilySpec>().is_err());
        assert!("cyclic p=4 e=1".parse::<FamilySpec>().is_err());
        assert!("nonesuch p=3".parse::<FamilySpec>().is_err());
        assert!("cyclic p=3 e=2 colour=red".parse::<FamilySpec>().is_err());
        assert_eq!("quaternion order=8".parse::<FamilySpec>().unwrap(), FamilySpec::Quaternion { n: 3 });
        assert_eq!(FamilySpec::Modular { p: 3, n: 4 }.group_name(), "M81");
    }
}
