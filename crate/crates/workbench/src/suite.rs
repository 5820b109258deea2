//! Runs the selected checks over a corpus and assembles the report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use rps_core::pc::{parse_presentation, PcGroup};
use rps_core::predicates::{self, PairPolicy, PredicateWitness, RpsReport};
use rps_core::structure::{self, EnumerationMode};
use rps_core::theorems::{self, BurnsideChainReport, HughesClass, NormalAbelianReport, RankSurvey};
use rps_core::{ElemId, Error, GroupHandle, Subgroup};
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, CorpusEntry};
use crate::WorkbenchError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest order for the collection congruence over all pairs.
const HALL_ORDER_LIMIT: u128 = 81;
/// Largest order compared against the table oracle.
const ORACLE_ORDER_LIMIT: u128 = 729;
/// Largest table checked with the literal triple loop.
const TRIPLE_LOOP_LIMIT: usize = 81;
const SURVEY_SAMPLES: usize = 500;
/// The one known value of the Burnside constant: 2 generators, prime 3.
const KNOWN_BURNSIDE_CONSTANT: (u32, u32, u64) = (2, 3, 27);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Rps,
    Powerful,
    Regular,
    Metacyclic,
    PkAbelian,
    Hall,
    PowerfulFacts,
    Hughes,
    Burnside,
    Lemma42,
    NormalAbelian,
    CyclicNormal,
    RankSurvey,
    Oracle,
    Engine,
}

impl Check {
    pub const ALL: [Check; 15] = [
        Check::Rps,
        Check::Powerful,
        Check::Regular,
        Check::Metacyclic,
        Check::PkAbelian,
        Check::Hall,
        Check::PowerfulFacts,
        Check::Hughes,
        Check::Burnside,
        Check::Lemma42,
        Check::NormalAbelian,
        Check::CyclicNormal,
        Check::RankSurvey,
        Check::Oracle,
        Check::Engine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Rps => "rps",
            Check::Powerful => "powerful",
            Check::Regular => "regular",
            Check::Metacyclic => "metacyclic",
            Check::PkAbelian => "pk-abelian",
            Check::Hall => "hall",
            Check::PowerfulFacts => "powerful-facts",
            Check::Hughes => "hughes",
            Check::Burnside => "burnside",
            Check::Lemma42 => "lemma42",
            Check::NormalAbelian => "normal-abelian",
            Check::CyclicNormal => "cyclic-normal",
            Check::RankSurvey => "rank-survey",
            Check::Oracle => "oracle",
            Check::Engine => "engine",
        }
    }

    /// `all`, or a comma-separated list of check names.
    pub fn parse_list(s: &str) -> Result<Vec<Check>, WorkbenchError> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut checks = s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<Check>, _>>()?;
        checks.sort();
        checks.dedup();
        Ok(checks)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self, WorkbenchError> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| WorkbenchError::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    /// A result that contradicts a proved theorem.
    Violation,
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    fn new(status: Status, detail: impl Into<String>) -> Self {
        Verdict { status, detail: detail.into() }
    }

    fn holds_or(holds: bool, otherwise: Status, detail: impl Into<String>) -> Self {
        Verdict::new(if holds { Status::Holds } else { otherwise }, detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub check: Check,
    pub kind: String,
    /// Elements in normal-word notation.
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HughesSummary {
    pub classification: HughesClass,
    pub index: u64,
    pub hughes_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rps_refinement: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma42Record {
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub name: String,
    pub source: String,
    pub order: u128,
    pub exponent: Option<u64>,
    pub class: Option<usize>,
    pub d: Option<u32>,
    pub verdicts: BTreeMap<Check, Verdict>,
    pub witnesses: Vec<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rps: Option<RpsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hughes: Option<HughesSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burnside: Option<BurnsideChainReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma42: Option<Lemma42Record>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_abelian: Option<NormalAbelianReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_survey: Option<RankSurvey>,
    /// Wall-clock time per check; only filled on request, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<Check, u64>,
}

impl GroupReport {
    fn new(entry: &CorpusEntry, order: u128) -> Self {
        GroupReport {
            name: entry.name.clone(),
            source: entry.describe(),
            order,
            exponent: None,
            class: None,
            d: None,
            verdicts: BTreeMap::new(),
            witnesses: Vec::new(),
            rps: None,
            hughes: None,
            burnside: None,
            lemma42: None,
            normal_abelian: None,
            rank_survey: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn has_violation(&self) -> bool {
        self.verdicts.values().any(|v| v.status == Status::Violation)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tool_version: String,
    pub seed: u64,
    pub corpus_digest: String,
    pub checks: Vec<Check>,
    pub groups: Vec<GroupReport>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.groups.iter().flat_map(|g| g.verdicts.values()).filter(|v| v.status == Status::Violation).count()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { checks: Check::ALL.to_vec(), seed: 0, timings: false }
    }
}

/// Runs every selected check on every corpus group. Groups are processed
/// in parallel; the report keeps corpus order.
pub fn run_suite(corpus: &Corpus, options: &SuiteOptions) -> SuiteReport {
    let groups = corpus.entries.par_iter().map(|entry| run_group(entry, options)).collect();
    SuiteReport {
        tool_version: TOOL_VERSION.to_string(),
        seed: options.seed,
        corpus_digest: corpus.digest.clone(),
        checks: options.checks.clone(),
        groups,
    }
}

/// The handle checks run on, and the one they were asked about.
struct Subject<'a> {
    entry: &'a CorpusEntry,
    /// As built: presentation or table.
    original: GroupHandle,
    /// The table twin when it fits, otherwise the original; ids agree.
    g: GroupHandle,
    policy: PairPolicy,
    seed: u64,
}

impl Subject<'_> {
    fn label(&self, x: ElemId) -> String {
        self.original.label(x)
    }

    fn labels(&self, xs: &[ElemId]) -> Vec<String> {
        xs.iter().map(|&x| self.label(x)).collect()
    }

    fn witness(&self, check: Check, w: &PredicateWitness) -> WitnessRecord {
        WitnessRecord {
            check,
            kind: w.kind.clone(),
            elements: self.labels(&w.elements),
            subgroup_order: w.subgroup.as_ref().map(Subgroup::order),
        }
    }

    fn is_powerful(&self) -> Result<bool, Error> {
        Ok(predicates::is_powerful(&self.g)?.holds)
    }
}

fn run_group(entry: &CorpusEntry, options: &SuiteOptions) -> GroupReport {
    let original = match entry.build() {
        Ok(g) => g,
        Err(err) => {
            let mut report = GroupReport::new(entry, 0);
            for &check in &options.checks {
                report.verdicts.insert(check, Verdict::new(Status::Error, format!("build failed: {err}")));
            }
            return report;
        }
    };
    let mut report = GroupReport::new(entry, original.order());
    let g = if original.enumerable().is_ok() && original.order() <= original.caps().table as u128 {
        original.tabulate().unwrap_or_else(|_| original.clone())
    } else {
        original.clone()
    };
    let subject = Subject {
        entry,
        original,
        g,
        policy: PairPolicy { seed: options.seed, ..PairPolicy::default() },
        seed: options.seed,
    };
    if let Ok(e) = structure::exponent(&subject.g) {
        report.exponent = Some(e);
        report.class = structure::nilpotency_class(&subject.g).ok();
        report.d = structure::frattini_and_rank(&subject.g).ok().map(|f| f.rank);
    }
    for &check in &options.checks {
        let started = Instant::now();
        let verdict = match run_check(check, &subject, &mut report) {
            Ok(v) => v,
            Err(err @ Error::Internal(_)) => Verdict::new(Status::Violation, err.to_string()),
            Err(err) => Verdict::new(Status::Error, err.to_string()),
        };
        report.verdicts.insert(check, verdict);
        if options.timings {
            report.timings_ms.insert(check, started.elapsed().as_millis() as u64);
        }
    }
    report
}

fn run_check(check: Check, s: &Subject, report: &mut GroupReport) -> Result<Verdict, Error> {
    let g = &s.g;
    let p = g.prime();
    match check {
        Check::Rps => {
            let r = predicates::has_regular_power_structure(g)?;
            let verdict = Verdict::holds_or(r.overall, Status::Fails, r.first_failure().unwrap_or_default());
            if let Some(c) = r.cond1.iter().find(|c| !c.holds) {
                report.witnesses.push(WitnessRecord {
                    check,
                    kind: format!("member of G^(p^{}) that is not a p^{}-th power", c.i, c.i),
                    elements: s.labels(&c.witness.into_iter().collect::<Vec<_>>()),
                    subgroup_order: Some(c.agemo_order),
                });
            } else if let Some(c) = r.cond2.iter().find(|c| !c.holds) {
                let w = c.witness.expect("failed omega condition has a witness");
                report.witnesses.push(WitnessRecord {
                    check,
                    kind: format!("element of Omega_{} of order {}", c.i, g.element_order(w)),
                    elements: vec![s.label(w)],
                    subgroup_order: Some(c.omega_order),
                });
            } else if let Some(c) = r.cond3.iter().find(|c| !c.holds) {
                report.witnesses.push(WitnessRecord {
                    check,
                    kind: format!("|G : G^(p^{})| = {} but |Omega_{}| = {}", c.i, c.index, c.i, c.omega_order),
                    elements: Vec::new(),
                    subgroup_order: Some(c.omega_order as usize),
                });
            }
            report.rps = Some(r);
            Ok(verdict)
        }
        Check::Powerful => predicate(check, s, report, predicates::is_powerful(g)?),
        Check::Regular => predicate(check, s, report, predicates::is_regular(g, &s.policy)?),
        Check::Metacyclic => {
            let v = predicates::is_metacyclic(g)?;
            // metacyclic groups of odd order are powerful
            if v.holds && p != 2 && !s.is_powerful()? {
                return Ok(Verdict::new(Status::Violation, "metacyclic but not powerful"));
            }
            Ok(Verdict::holds_or(v.holds, Status::Fails, ""))
        }
        Check::PkAbelian => {
            let e = structure::exponent_log(g)?;
            let k = e.saturating_sub(1).max(1);
            let v = predicates::is_pk_abelian(g, k, &s.policy)?;
            if !v.holds && s.is_powerful()? {
                let mut verdict = predicate(check, s, report, v)?;
                verdict.status = Status::Violation;
                return Ok(verdict);
            }
            let mut verdict = predicate(check, s, report, v)?;
            verdict.detail = format!("k = {k}");
            Ok(verdict)
        }
        Check::Hall => {
            if g.order() > HALL_ORDER_LIMIT {
                return Ok(Verdict::new(Status::Skipped, format!("order above {HALL_ORDER_LIMIT}")));
            }
            for n in 1..=2 {
                let v = predicates::hall_congruence_all(g, n, &s.policy)?;
                if !v.holds {
                    let mut verdict = predicate(check, s, report, v)?;
                    verdict.status = Status::Violation;
                    verdict.detail = format!("n = {n}");
                    return Ok(verdict);
                }
            }
            Ok(Verdict::new(Status::Holds, "n = 1, 2"))
        }
        Check::PowerfulFacts => {
            if !s.is_powerful()? {
                return Ok(Verdict::new(Status::Skipped, "not powerful"));
            }
            let facts = predicates::powerful_facts_check(g)?;
            let failed: Vec<_> = facts
                .power_sets
                .iter()
                .chain(&facts.commutator_bounds)
                .chain(&facts.central_bounds)
                .filter(|c| !c.holds)
                .collect();
            for c in &failed {
                report.witnesses.push(WitnessRecord {
                    check,
                    kind: c.label.clone(),
                    elements: s.labels(&c.witness.into_iter().collect::<Vec<_>>()),
                    subgroup_order: None,
                });
            }
            Ok(Verdict::holds_or(failed.is_empty(), Status::Violation, ""))
        }
        Check::Hughes => {
            let v = theorems::hughes_verdict(g)?;
            report.hughes = Some(HughesSummary {
                classification: v.classification,
                index: v.index,
                hughes_order: v.hughes_subgroup.order(),
                rps_refinement: v.rps_refinement,
            });
            let verdict = if v.rps_refinement == Some(false) {
                Verdict::new(Status::Violation, "regular power structure but H_p is neither trivial nor G as predicted")
            } else if v.classification == HughesClass::Counterexample {
                // the conjecture is only proved for small primes
                let status = if p <= 3 { Status::Violation } else { Status::Fails };
                Verdict::new(status, format!("index {}", v.index))
            } else if v.classification == HughesClass::IndexP {
                Verdict::new(Status::Holds, format!("index {p} realised"))
            } else {
                Verdict::new(Status::Holds, "")
            };
            Ok(verdict)
        }
        Check::Burnside => {
            let rps = predicates::has_regular_power_structure(g)?;
            if !rps.overall {
                return Ok(Verdict::new(Status::Skipped, "no regular power structure"));
            }
            let d = structure::frattini_and_rank(g)?.rank;
            let (kd, kp, n) = KNOWN_BURNSIDE_CONSTANT;
            let n_const = (d == kd && p == kp).then_some(n);
            let r = theorems::burnside_chain_verify(g, n_const)?;
            let detail = match r.sharp {
                Some(true) => format!("|G| = {}^{} sharp", n, r.e),
                _ => String::new(),
            };
            let verdict = Verdict::holds_or(r.holds(), Status::Violation, detail);
            report.burnside = Some(r);
            Ok(verdict)
        }
        Check::Lemma42 => {
            if !s.is_powerful()? {
                return Ok(Verdict::new(Status::Skipped, "not powerful"));
            }
            let Some((a, b)) = lemma42_pair(g)? else {
                return Ok(Verdict::new(Status::Skipped, "no a, b with G = <a, b> and G^p = <a^p>"));
            };
            let c = theorems::lemma42_construct(g, a, b)?;
            report.lemma42 = Some(Lemma42Record { a: s.label(a), b: s.label(b), c: s.label(c) });
            Ok(Verdict::new(Status::Holds, format!("c = {}", s.label(c))))
        }
        Check::NormalAbelian => {
            let cap = (p as u128).pow(g.caps().lattice_log);
            let mode = if g.order() > cap {
                EnumerationMode::Sampled { samples: SURVEY_SAMPLES, seed: s.seed }
            } else {
                EnumerationMode::Exhaustive
            };
            let r = theorems::normal_abelian_cyclic_check(g, mode)?;
            let detail = match (r.hypothesis, r.group_cyclic, r.sampled) {
                (true, true, _) => "hypothesis holds, cyclic",
                (true, false, false) => "hypothesis holds, not cyclic",
                (true, false, true) => "sampled, no non-cyclic normal abelian subgroup found",
                (false, _, false) => "hypothesis fails",
                (false, _, true) => "sampled, hypothesis fails",
            };
            if let Some(w) = &r.witness {
                report.witnesses.push(WitnessRecord {
                    check,
                    kind: "normal abelian subgroup that is not cyclic".into(),
                    elements: s.labels(&w.generators),
                    subgroup_order: Some(w.order()),
                });
            }
            let verdict = match (r.consistent(p), r.sampled) {
                (true, _) => Verdict::new(Status::Holds, detail),
                // a sample can miss the witness, so this is not a contradiction
                (false, true) => Verdict::new(Status::Skipped, detail),
                (false, false) => Verdict::new(Status::Violation, detail),
            };
            report.normal_abelian = Some(r);
            Ok(verdict)
        }
        Check::CyclicNormal => {
            let whole = g.whole()?;
            let mut seen = std::collections::HashSet::new();
            let mut tested = 0;
            for x in g.elements()? {
                let n = structure::closure(g, &[x]);
                if !seen.insert(n.members.clone()) || !structure::is_normal_in(g, &n, &whole) {
                    continue;
                }
                tested += 1;
                let r = theorems::cyclic_normal_commutator_check(g, &n)?;
                if !r.holds {
                    report.witnesses.push(WitnessRecord {
                        check,
                        kind: "[N, G] escapes N^p".into(),
                        elements: s.labels(&[x, r.witness.unwrap_or(0)]),
                        subgroup_order: Some(n.order()),
                    });
                    return Ok(Verdict::new(Status::Violation, format!("N = <{}>", s.label(x))));
                }
            }
            Ok(Verdict::new(Status::Holds, format!("{tested} cyclic normal subgroups")))
        }
        Check::RankSurvey => {
            if !s.is_powerful()? {
                return Ok(Verdict::new(Status::Skipped, "not powerful"));
            }
            let cap = (p as u128).pow(g.caps().lattice_log);
            let mode = if g.order() <= cap {
                EnumerationMode::Exhaustive
            } else {
                EnumerationMode::Sampled { samples: SURVEY_SAMPLES, seed: s.seed }
            };
            let r = theorems::subgroup_rank_survey(g, mode)?;
            let detail = format!("{} subgroups, max d(H) = {}, d(G) = {}", r.subgroups, r.max_d, r.d_g);
            let verdict = Verdict::holds_or(r.violations == 0, Status::Violation, detail);
            report.rank_survey = Some(r);
            Ok(verdict)
        }
        Check::Oracle => {
            if s.original.is_table() {
                return Ok(Verdict::new(Status::Skipped, "table-backed"));
            }
            if s.original.order() > ORACLE_ORDER_LIMIT {
                return Ok(Verdict::new(Status::Skipped, format!("order above {ORACLE_ORDER_LIMIT}")));
            }
            Ok(match oracle_mismatch(&s.original)? {
                None => Verdict::new(Status::Holds, ""),
                Some(what) => Verdict::new(Status::Violation, format!("backends disagree on {what}")),
            })
        }
        Check::Engine => engine_check(s),
    }
}

fn predicate(check: Check, s: &Subject, report: &mut GroupReport, v: predicates::Verdict) -> Result<Verdict, Error> {
    if let (false, Some(w)) = (v.holds, &v.witness) {
        report.witnesses.push(s.witness(check, w));
    }
    Ok(Verdict::holds_or(v.holds, Status::Fails, if v.sampled { "sampled pairs" } else { "" }))
}

/// First `a` of maximal order with `G^p = <a^p>`, then the first `b` with `G = <a, b>`.
pub fn lemma42_pair(g: &GroupHandle) -> Result<Option<(ElemId, ElemId)>, Error> {
    let agemo = structure::agemo(g, 1)?;
    let e = structure::exponent_log(g)?;
    let order = g.order() as usize;
    for a in g.elements()?.filter(|&a| g.order_log(a) == e) {
        if !structure::closure(g, &[g.pth_power(a)]).same_members(&agemo) {
            continue;
        }
        if let Some(b) = g.elements()?.find(|&b| structure::closure(g, &[a, b]).order() == order) {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Compares the structure routines on a presentation handle with brute
/// force over its table; returns the first disagreement.
pub fn oracle_mismatch(g: &GroupHandle) -> Result<Option<String>, Error> {
    let twin = g.tabulate()?;
    let t = twin.table().expect("tabulated handle has a table");
    if let Some(x) = g.elements()?.find(|&x| g.element_order(x) != t.element_order(x) as u64) {
        return Ok(Some(format!("order of element {x}")));
    }
    if structure::exponent(g)? != t.exponent() as u64 {
        return Ok(Some("exponent".into()));
    }
    if structure::center(g)?.members != t.center().members {
        return Ok(Some("center".into()));
    }
    if structure::derived_subgroup(g)?.members != t.derived().members {
        return Ok(Some("derived subgroup".into()));
    }
    for i in 1..=structure::exponent_log(g)? {
        if structure::agemo(g, i)?.members != t.agemo(i).members {
            return Ok(Some(format!("agemo {i}")));
        }
        if structure::omega(g, i)?.members != t.omega(i).members {
            return Ok(Some(format!("omega {i}")));
        }
    }
    let f = structure::frattini_and_rank(g)?;
    if f.frattini.members != t.frattini().members {
        return Ok(Some("Frattini subgroup".into()));
    }
    if f.rank != t.rank() {
        return Ok(Some("d".into()));
    }
    Ok(None)
}

fn engine_check(s: &Subject) -> Result<Verdict, Error> {
    if let Some(pres) = s.entry.presentation() {
        let text = pres.to_string();
        let reparsed = parse_presentation(&text)?;
        if reparsed.to_string() != text || reparsed != pres {
            return Ok(Verdict::new(Status::Violation, "printer and parser disagree"));
        }
        let verdict = PcGroup::new(pres).check_consistency()?;
        if !verdict.is_pass() {
            return Ok(Verdict::new(Status::Violation, format!("consistency: {verdict:?}")));
        }
        return Ok(Verdict::new(Status::Holds, "round trip, consistency"));
    }
    let t = s.original.table().expect("non-presentation groups are tables");
    let (triple, how) = if t.order() <= TRIPLE_LOOP_LIMIT {
        (t.associativity_exhaustive(), "all triples")
    } else {
        (t.associativity_light(), "generator triples")
    };
    Ok(match triple {
        None => Verdict::new(Status::Holds, format!("associativity over {how}")),
        Some((x, y, z)) => Verdict::new(Status::Violation, format!("({x}*{y})*{z} != {x}*({y}*{z})")),
    })
}
