//! Power-commutator presentations of finite p-groups.
//!
//! A presentation on generators `g1..gn` carries one power rule per
//! generator (`gi^p` as a word in later generators) and one commutator rule
//! per pair `j > i` (`[gj,gi]` as a word in generators after `gj`). All
//! relative orders are `p`, so a consistent presentation describes a group
//! of order exactly `p^n`. Generators are 0-based internally and printed
//! 1-based.

mod collect;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use collect::{CollectionStats, ConsistencyVerdict, PcGroup, TestWord, DEFAULT_STEP_BUDGET};
pub use parse::parse_presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("{rule} mentions g{gen}, violating the weighting constraint{}", at_line(*.line))]
    Weighting { rule: String, gen: usize, line: Option<usize> },
    #[error("relative order {order} declared for g{gen}; every relative order must be p = {prime}{}", at_line(*.line))]
    RelativeOrder { gen: usize, order: u64, prime: u32, line: Option<usize> },
    #[error("exponent {exp} of g{gen} is outside [0, {prime}){}", at_line(*.line))]
    ExponentRange { gen: usize, exp: u64, prime: u32, line: Option<usize> },
    #[error("rule {rule} is stated twice{}", at_line(*.line))]
    DuplicateRule { rule: String, line: Option<usize> },
    #[error("generator index {index} out of range for {ngens} generators")]
    GeneratorOutOfRange { index: usize, ngens: usize },
    #[error("collection exceeded the step budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("operands belong to different presentations")]
    MixedPresentations,
    #[error("{order} elements exceed the enumeration cap of {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("presentation is inconsistent: {0}")]
    Inconsistent(String),
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

/// A normal word `g_a^e_a * g_b^e_b * ...` with strictly increasing
/// generator indices and exponents in `1..p`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(usize, u32)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from `(generator, exponent)` pairs. Zero exponents are
    /// dropped; indices must be strictly increasing.
    pub fn new(letters: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let letters: Vec<_> = letters.into_iter().filter(|&(_, e)| e != 0).collect();
        debug_assert!(letters.windows(2).all(|w| w[0].0 < w[1].0));
        Word(letters)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Word::new(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn letters(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_generator(&self) -> Option<usize> {
        self.0.first().map(|&(g, _)| g)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (k, &(g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "g{}", g + 1)?;
            } else {
                write!(f, "g{}^{}", g + 1, e)?;
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PcPresentation {
    prime: u32,
    ngens: usize,
    power_rules: Vec<Word>,
    commutator_rules: BTreeMap<(usize, usize), Word>,
    name: Option<String>,
}

impl PcPresentation {
    /// Presentation of the elementary abelian group of order `p^ngens`;
    /// rules are filled in with [`set_power`](Self::set_power) and
    /// [`set_commutator`](Self::set_commutator).
    pub fn new(prime: u32, ngens: usize) -> Result<Self, PcError> {
        if !is_prime(prime as u64) {
            return Err(PcError::NotPrime(prime as u64));
        }
        Ok(PcPresentation {
            prime,
            ngens,
            power_rules: vec![Word::identity(); ngens],
            commutator_rules: BTreeMap::new(),
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> u128 {
        (self.prime as u128).pow(self.ngens as u32)
    }

    pub fn power_rule(&self, gen: usize) -> &Word {
        &self.power_rules[gen]
    }

    /// The word for `[g_j, g_i]`, `j > i`; identity when unstated.
    pub fn commutator_rule(&self, j: usize, i: usize) -> Option<&Word> {
        self.commutator_rules.get(&(j, i))
    }

    pub fn commutator_rules(&self) -> impl Iterator<Item = (&(usize, usize), &Word)> {
        self.commutator_rules.iter()
    }

    fn check_word(&self, word: &Word, above: usize, rule: String, line: Option<usize>) -> Result<(), PcError> {
        for &(g, e) in word.letters() {
            if g >= self.ngens {
                return Err(PcError::GeneratorOutOfRange { index: g + 1, ngens: self.ngens });
            }
            if g <= above {
                return Err(PcError::Weighting { rule, gen: g + 1, line });
            }
            if e >= self.prime {
                return Err(PcError::ExponentRange { gen: g + 1, exp: e as u64, prime: self.prime, line });
            }
        }
        Ok(())
    }

    /// Sets `g_gen^p = word`; the word may only mention generators after `gen`.
    pub fn set_power(&mut self, gen: usize, word: Word) -> Result<(), PcError> {
        self.set_power_at(gen, word, None)
    }

    pub(crate) fn set_power_at(&mut self, gen: usize, word: Word, line: Option<usize>) -> Result<(), PcError> {
        if gen >= self.ngens {
            return Err(PcError::GeneratorOutOfRange { index: gen + 1, ngens: self.ngens });
        }
        self.check_word(&word, gen, format!("g{}^p", gen + 1), line)?;
        self.power_rules[gen] = word;
        Ok(())
    }

    /// Sets `[g_j, g_i] = word` for `j > i`; the word may only mention
    /// generators after `j`.
    pub fn set_commutator(&mut self, j: usize, i: usize, word: Word) -> Result<(), PcError> {
        self.set_commutator_at(j, i, word, None)
    }

    pub(crate) fn set_commutator_at(&mut self, j: usize, i: usize, word: Word, line: Option<usize>) -> Result<(), PcError> {
        for g in [j, i] {
            if g >= self.ngens {
                return Err(PcError::GeneratorOutOfRange { index: g + 1, ngens: self.ngens });
            }
        }
        let rule = format!("[g{},g{}]", j + 1, i + 1);
        if j <= i {
            return Err(PcError::Weighting { rule, gen: j + 1, line });
        }
        self.check_word(&word, j, rule, line)?;
        if word.is_identity() {
            self.commutator_rules.remove(&(j, i));
        } else {
            self.commutator_rules.insert((j, i), word);
        }
        Ok(())
    }
}

/// Canonical text form: header, non-trivial power rules in generator order,
/// then non-trivial commutator rules ordered by `(j, i)`.
impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group p={} n={}", self.prime, self.ngens)?;
        if let Some(name) = &self.name {
            write!(f, " name={name}")?;
        }
        writeln!(f)?;
        for (g, w) in self.power_rules.iter().enumerate() {
            if !w.is_identity() {
                writeln!(f, "g{}^p = {}", g + 1, w)?;
            }
        }
        for (&(j, i), w) in &self.commutator_rules {
            writeln!(f, "[g{},g{}] = {}", j + 1, i + 1, w)?;
        }
        Ok(())
    }
}

/// A group element in normal form: one exponent in `[0, p)` per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    fingerprint: u64,
    exps: Vec<u32>,
}

impl Element {
    pub(crate) fn from_parts(fingerprint: u64, exps: Vec<u32>) -> Self {
        Element { fingerprint, exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn to_word(&self) -> Word {
        Word::from_exponents(&self.exps)
    }

    pub(crate) fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}
