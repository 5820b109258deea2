//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rps_core::family::{build_family, FamilySpec};
use rps_core::pc::{parse_presentation, PcGroup};
use rps_core::predicates::{self, PairPolicy};
use rps_core::structure::{self, EnumerationMode};
use rps_core::theorems::{self, HughesClass};
use rps_core::GroupHandle;
use rps_workbench::suite::{lemma42_pair, oracle_mismatch};
use rps_workbench::Corpus;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn family(spec: &str) -> Result<GroupHandle, String> {
    let spec: FamilySpec = spec.parse().map_err(fail)?;
    build_family(&spec).and_then(|f| f.handle()).map_err(fail)
}

/// Corpus groups, switched to their table twin when small enough.
fn corpus_groups() -> Result<Vec<(GroupHandle, GroupHandle)>, String> {
    Corpus::builtin()
        .entries
        .iter()
        .map(|entry| {
            let g = entry.build().map_err(fail)?;
            let fast = if g.is_table() { g.clone() } else { g.tabulate().map_err(fail)? };
            Ok((g, fast))
        })
        .collect()
}

fn sharpness() -> Outcome {
    let expected = [(1, 27u128, 3u64), (2, 729, 9), (3, 19683, 27)];
    for (e, order, exponent) in expected {
        let g = family(&format!("heisenberg p=3 e={e}"))?;
        ensure!(g.order() == order, "G_{e}: order {}", g.order());
        ensure!(structure::exponent(&g).map_err(fail)? == exponent, "G_{e}: exponent");
        ensure!(structure::nilpotency_class(&g).map_err(fail)? == 2, "G_{e}: class");
        ensure!(structure::frattini_and_rank(&g).map_err(fail)?.rank == 2, "G_{e}: d");
        let rps = predicates::has_regular_power_structure(&g).map_err(fail)?;
        ensure!(rps.overall, "G_{e}: {}", rps.first_failure().unwrap_or_default());
        ensure!(rps.cond1.len() == e && rps.cond2.len() == e && rps.cond3.len() == e, "G_{e}: conditions not checked for i = 1..{e}");
        if e == 3 {
            ensure!(!g.is_table(), "G_3 should stay on the presentation backend");
        }
        let chain = theorems::burnside_chain_verify(&g, Some(27)).map_err(fail)?;
        ensure!(chain.holds(), "G_{e}: Burnside chain fails: {chain:?}");
        ensure!(chain.sharp == Some(true), "G_{e}: |G| != 27^{e}");
    }
    Ok("G_1..G_3 invariants exact, RPS, |G| = 27^e sharp".into())
}

fn hughes() -> Outcome {
    let mut families = std::collections::BTreeSet::new();
    let mut checked = 0;
    let mut saw_cp = false;
    for (entry, (g, fast)) in Corpus::builtin().entries.iter().zip(corpus_groups()?) {
        if g.order() > 729 || !predicates::has_regular_power_structure(&fast).map_err(fail)?.overall {
            continue;
        }
        let v = theorems::hughes_verdict(&fast).map_err(fail)?;
        let e = structure::exponent_log(&fast).map_err(fail)?;
        let expected = if e == 1 { HughesClass::Trivial } else { HughesClass::WholeGroup };
        ensure!(v.classification == expected, "{}: {:?}, expected {expected:?}", g.name(), v.classification);
        ensure!(v.rps_refinement == Some(true), "{}: refinement", g.name());
        if g.order() == g.prime() as u128 {
            ensure!(v.index == g.prime() as u64, "{}: index {}", g.name(), v.index);
            saw_cp = true;
        }
        families.insert(entry.describe().split_whitespace().next().unwrap_or_default().to_string());
        checked += 1;
    }
    for f in ["cyclic", "abelian", "heisenberg", "modular", "extraspecial"] {
        ensure!(families.contains(f), "no RPS {f} group in the corpus");
    }
    ensure!(checked >= 10 && saw_cp, "only {checked} RPS groups");
    Ok(format!("{checked} RPS groups classified, C_p has index p"))
}

fn negative_controls() -> Outcome {
    let d8 = family("dihedral n=3")?;
    let r = predicates::has_regular_power_structure(&d8).map_err(fail)?;
    let bad = r.cond2.iter().find(|c| !c.holds).ok_or("D8 passes condition (2)")?;
    let w = bad.witness.ok_or("D8 condition (2) has no witness")?;
    ensure!(d8.element_order(w) == 4 && structure::omega(&d8, 1).map_err(fail)?.contains(w), "D8 witness {w}");
    let d8_witness = d8.label(w);

    let q8 = family("quaternion n=3")?;
    let r = predicates::has_regular_power_structure(&q8).map_err(fail)?;
    let bad = r.cond3.iter().find(|c| !c.holds).ok_or("Q8 passes condition (3)")?;
    ensure!((bad.index, bad.omega_order) == (4, 2), "Q8 cardinalities {:?}", (bad.index, bad.omega_order));

    let h = family("heisenberg p=3 e=2")?;
    ensure!(predicates::has_regular_power_structure(&h).map_err(fail)?.overall, "G_2 not RPS");
    let v = predicates::is_powerful(&h).map_err(fail)?;
    ensure!(!v.holds, "G_2 reported powerful");
    let w = v.witness.ok_or("G_2 has no witness")?;
    let c = *w.elements.last().ok_or("empty witness")?;
    ensure!(!structure::agemo(&h, 1).map_err(fail)?.contains(c), "witness lies in G^3");
    Ok(format!("D8 witness {d8_witness}, Q8 (4, 2), G_2 witness {} outside G^3", h.label(c)))
}

fn powerful_theory() -> Outcome {
    let policy = PairPolicy::default();
    let mut powerful = 0;
    let mut lemma_instances = 0;
    let mut lattices = 0;
    for (g, fast) in corpus_groups()? {
        if g.order() > 729 || !predicates::is_powerful(&fast).map_err(fail)?.holds {
            continue;
        }
        powerful += 1;
        let name = g.name();
        ensure!(predicates::powerful_facts_check(&fast).map_err(fail)?.holds, "{name}: powerful facts");
        let e = structure::exponent_log(&fast).map_err(fail)?;
        ensure!(predicates::is_pk_abelian(&fast, e.saturating_sub(1), &policy).map_err(fail)?.holds, "{name}: p^(e-1)-abelian");
        if g.order() <= 81 {
            for n in [1, 2] {
                ensure!(predicates::hall_congruence_all(&fast, n, &policy).map_err(fail)?.holds, "{name}: Hall n = {n}");
            }
        }
        if let Some((a, b)) = lemma42_pair(&fast).map_err(fail)? {
            let c = theorems::lemma42_construct(&fast, a, b).map_err(fail)?;
            ensure!(fast.order_log(c) == 1, "{name}: o(c) != p");
            ensure!(structure::closure(&fast, &[a, c]).order() as u128 == g.order(), "{name}: <a, c> != G");
            lemma_instances += 1;
        }
        if g.log_order() <= 4 {
            let survey = theorems::subgroup_rank_survey(&fast, EnumerationMode::Exhaustive).map_err(fail)?;
            ensure!(survey.violations == 0 && survey.certificates_verified == survey.subgroups, "{name}: {survey:?}");
            lattices += 1;
        }
    }
    ensure!(lemma_instances >= 3, "only {lemma_instances} complement constructions");
    for spec in ["modular p=3 n=4", "abelian p=3 type=2,2,2"] {
        let g = family(spec)?.tabulate().map_err(fail)?;
        let survey =
            theorems::subgroup_rank_survey(&g, EnumerationMode::Sampled { samples: 500, seed: 0 }).map_err(fail)?;
        ensure!(survey.subgroups >= 500, "{spec}: {} samples", survey.subgroups);
        ensure!(survey.violations == 0 && survey.certificates_verified == survey.subgroups, "{spec}: {survey:?}");
    }
    Ok(format!("{powerful} powerful groups, {lemma_instances} complements, {lattices} lattices, 2 x 500 samples"))
}

fn normal_abelian() -> Outcome {
    let mut checked = 0;
    for (g, fast) in corpus_groups()? {
        if g.prime() == 2 || g.log_order() > 4 {
            continue;
        }
        let r = theorems::normal_abelian_cyclic_check(&fast, EnumerationMode::Exhaustive).map_err(fail)?;
        ensure!(!r.sampled, "{}: sampled", g.name());
        ensure!(r.hypothesis == r.group_cyclic, "{}: hypothesis {} but cyclic {}", g.name(), r.hypothesis, r.group_cyclic);
        checked += 1;
    }
    let q8 = family("quaternion n=3")?;
    let r = theorems::normal_abelian_cyclic_check(&q8, EnumerationMode::Exhaustive).map_err(fail)?;
    ensure!(r.hypothesis && !r.group_cyclic, "Q8 is not the exception: {r:?}");
    Ok(format!("{checked} odd-p groups, Q8 exception"))
}

fn oracle() -> Outcome {
    let mut checked = 0;
    for (g, _) in corpus_groups()? {
        if g.is_table() || g.order() > 729 {
            continue;
        }
        if let Some(what) = oracle_mismatch(&g).map_err(fail)? {
            return Err(format!("{}: {what}", g.name()));
        }
        checked += 1;
    }
    Ok(format!("{checked} presentations agree with their tables"))
}

fn engine() -> Outcome {
    let (mut presentations, mut tables) = (0, 0);
    for entry in Corpus::builtin().entries {
        match entry.presentation() {
            Some(pres) => {
                let text = pres.to_string();
                let back = parse_presentation(&text).map_err(fail)?;
                ensure!(back.to_string() == text && back == pres, "{}: round trip", entry.name);
                let verdict = PcGroup::new(pres).check_consistency().map_err(fail)?;
                ensure!(verdict.is_pass(), "{}: {verdict:?}", entry.name);
                presentations += 1;
            }
            None => {
                let g = entry.build().map_err(fail)?;
                let t = g.table().ok_or("table-backed entry without table")?;
                if t.order() <= 81 {
                    ensure!(t.associativity_exhaustive().is_none(), "{}: not associative", entry.name);
                    tables += 1;
                }
            }
        }
    }
    Ok(format!("{presentations} presentations, {tables} tables"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(fail)?;
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_rps"))
            .args(["verify", "--checks", "all", "--seed", "0", "--format", "json", "--out"])
            .arg(&path)
            .output()
            .map_err(fail)?;
        ensure!(status.status.success(), "verify exited with {}", status.status);
        outputs.push(std::fs::read(&path).map_err(fail)?);
    }
    ensure!(outputs[0] == outputs[1], "reports differ");
    Ok(format!("{} identical bytes", outputs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 example sharpness", sharpness, Duration::from_secs(60)),
        ("2 hughes", hughes, Duration::from_secs(30)),
        ("3 negative controls", negative_controls, Duration::from_secs(5)),
        ("4 powerful groups", powerful_theory, Duration::from_secs(300)),
        ("5 normal abelian subgroups", normal_abelian, Duration::from_secs(120)),
        ("6 oracle equivalence", oracle, Duration::from_secs(180)),
        ("7 engine soundness", engine, Duration::from_secs(60)),
        ("8 determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > budget => Err(format!("took {elapsed:.1?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({elapsed:.1?})"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail} ({elapsed:.1?})");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
