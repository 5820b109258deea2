use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rps_core::family::{build_family, FamilySpec};
use rps_core::pc::parse_presentation;
use rps_core::predicates::{self, PairPolicy};
use rps_core::theorems::{self, HughesClass};
use rps_core::{structure, Error, GroupHandle};
use rps_workbench::{parse_element, report_render, run_suite, Check, Corpus, Format, SuiteOptions, WorkbenchError};

#[derive(Parser)]
#[command(name = "rps", version, about = "Power structure checks for finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run predicates on a presentation file.
    Check(CheckArgs),
    /// Build a family member and print its invariants.
    Family(FamilyArgs),
    /// Run the check suite over a corpus.
    Verify(VerifyArgs),
    /// Hughes subgroup and its classification.
    Hughes { file: PathBuf },
    /// Burnside bound chain.
    Burnside {
        file: PathBuf,
        #[arg(long)]
        nconst: Option<u64>,
    },
    /// Lift a minimal generating set of a subgroup to independent elements.
    Lift {
        file: PathBuf,
        /// Comma-separated generator words, e.g. `g1^3,g2`.
        #[arg(long)]
        subgroup: String,
    },
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    rps: bool,
    #[arg(long)]
    powerful: bool,
    #[arg(long)]
    regular: bool,
    #[arg(long)]
    metacyclic: bool,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FamilyArgs {
    name: String,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Abelian type, e.g. `2,1`.
    #[arg(long = "type")]
    abelian_type: Option<String>,
    /// Extraspecial variant: `p` or `p2`.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus configuration; the built-in corpus when absent.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Record per-check wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

enum Outcome {
    Consistent,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => check(args),
        Command::Family(args) => family(args),
        Command::Verify(args) => verify(args),
        Command::Hughes { file } => hughes(&file),
        Command::Burnside { file, nconst } => burnside(&file, nconst),
        Command::Lift { file, subgroup } => lift(&file, &subgroup),
    };
    match result {
        Ok(Outcome::Consistent) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(WorkbenchError::Core(err @ Error::Internal(_))) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<GroupHandle, WorkbenchError> {
    let text = fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
    let mut pres = parse_presentation(&text).map_err(Error::from)?;
    if pres.name().is_none() {
        pres.set_name(path.file_stem().map(|s| s.to_string_lossy().into_owned()));
    }
    Ok(GroupHandle::from_presentation(pres)?)
}

fn print_witness(g: &GroupHandle, w: &Option<predicates::PredicateWitness>) {
    if let Some(w) = w {
        let elems: Vec<String> = w.elements.iter().map(|&x| g.label(x)).collect();
        println!("    witness: {}: {}", w.kind, elems.join(", "));
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(args: CheckArgs) -> Result<Outcome, WorkbenchError> {
    let g = load(&args.file)?;
    let all = args.all || !(args.rps || args.powerful || args.regular || args.metacyclic);
    println!("{}: order {}", g.name(), g.order());
    if all || args.rps {
        let r = predicates::has_regular_power_structure(&g)?;
        println!("rps         {}", yes_no(r.overall));
        if let Some(f) = r.first_failure() {
            println!("    {f}");
        }
    }
    if all || args.powerful {
        let v = predicates::is_powerful(&g)?;
        println!("powerful    {}", yes_no(v.holds));
        print_witness(&g, &v.witness);
    }
    if all || args.regular {
        let v = predicates::is_regular(&g, &PairPolicy { seed: args.seed, ..PairPolicy::default() })?;
        println!("regular     {}{}", yes_no(v.holds), if v.sampled { " (sampled)" } else { "" });
        print_witness(&g, &v.witness);
    }
    if all || args.metacyclic {
        let v = predicates::is_metacyclic(&g)?;
        println!("metacyclic  {}", yes_no(v.holds));
        print_witness(&g, &v.witness);
    }
    Ok(Outcome::Consistent)
}

fn family(args: FamilyArgs) -> Result<Outcome, WorkbenchError> {
    let mut spec = args.name.clone();
    for (key, value) in [("p", args.p), ("e", args.e), ("n", args.n)] {
        if let Some(v) = value {
            spec.push_str(&format!(" {key}={v}"));
        }
    }
    if let Some(t) = &args.abelian_type {
        spec.push_str(&format!(" type={t}"));
    }
    if let Some(v) = &args.variant {
        spec.push_str(&format!(" variant={v}"));
    }
    let spec: FamilySpec = spec.parse()?;
    let built = build_family(&spec)?;
    let g = built.handle()?;
    let adv = spec.advertised();
    println!("{} ({spec})", built.name());
    println!("order     {}", g.order());
    if g.enumerable().is_ok() {
        let exponent = structure::exponent(&g)?;
        let class = structure::nilpotency_class(&g)?;
        let d = structure::frattini_and_rank(&g)?.rank;
        println!("exponent  {exponent}");
        println!("class     {class}");
        println!("d         {d}");
        if (g.order(), exponent, class, d) != (adv.order, adv.exponent, adv.class, adv.d) {
            eprintln!("computed invariants differ from the advertised {adv:?}");
            return Ok(Outcome::Violation);
        }
    }
    match built.presentation() {
        Some(pres) => {
            if let Some(path) = &args.emit {
                fs::write(path, pres.to_string()).map_err(|e| WorkbenchError::io(path, e))?;
            } else {
                print!("\n{pres}");
            }
        }
        None if args.emit.is_some() => {
            return Err(Error::InvalidParameters(format!("{} is table-backed and has no presentation", spec)).into())
        }
        None => println!("table-backed"),
    }
    Ok(Outcome::Consistent)
}

fn verify(args: VerifyArgs) -> Result<Outcome, WorkbenchError> {
    let corpus = match &args.corpus {
        Some(path) => Corpus::load(path)?,
        None => Corpus::builtin(),
    };
    let format: Format = args.format.parse()?;
    let options = SuiteOptions { checks: Check::parse_list(&args.checks)?, seed: args.seed, timings: args.timings };
    let report = run_suite(&corpus, &options);
    let rendered = report_render(&report, format)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &rendered).map_err(|e| WorkbenchError::io(path, e))?;
            if format == Format::Json {
                print!("{}", report_render(&report, Format::Text)?);
            }
        }
        None => print!("{rendered}"),
    }
    Ok(if report.violations() > 0 { Outcome::Violation } else { Outcome::Consistent })
}

fn hughes(file: &Path) -> Result<Outcome, WorkbenchError> {
    let g = load(file)?;
    let v = theorems::hughes_verdict(&g)?;
    println!("{}: order {}", g.name(), g.order());
    println!("H_p order       {}", v.hughes_subgroup.order());
    println!("index           {}", v.index);
    println!("classification  {:?}", v.classification);
    if let Some(ok) = v.rps_refinement {
        println!("rps refinement  {}", yes_no(ok));
    }
    let contradiction =
        v.rps_refinement == Some(false) || (v.classification == HughesClass::Counterexample && g.prime() <= 3);
    Ok(if contradiction { Outcome::Violation } else { Outcome::Consistent })
}

fn burnside(file: &Path, nconst: Option<u64>) -> Result<Outcome, WorkbenchError> {
    let g = load(file)?;
    let r = theorems::burnside_chain_verify(&g, nconst)?;
    println!("{}: order {} = p^{}, exponent p^{}", g.name(), r.order, g.log_order(), r.e);
    println!("|G/G^(p^(e-1))| * |G^(p^(e-1))| = {} * {}  {}", r.top_index, r.bottom_order, yes_no(r.decomposition));
    println!("G^(p^(e-1)) <= Omega_1(G)           {}", yes_no(r.containment));
    println!("|Omega_1(G)| = |G:G^p| = {}          {}", r.power_index, yes_no(r.omega_index));
    println!("|G/G^(p^(e-1))| <= |G:G^p|^(e-1)    {}", yes_no(r.top_bound));
    println!("|G| <= |G:G^p|^e                    {}", yes_no(r.derived_bound));
    if let (Some(n), Some(ok), Some(sharp)) = (r.n_const, r.const_bound, r.sharp) {
        println!("|G| <= {n}^{}                        {}{}", r.e, yes_no(ok), if sharp { ", sharp" } else { "" });
    }
    Ok(if r.holds() { Outcome::Consistent } else { Outcome::Violation })
}

fn lift(file: &Path, subgroup: &str) -> Result<Outcome, WorkbenchError> {
    let g = load(file)?;
    let gens = subgroup.split(',').map(|w| parse_element(&g, w)).collect::<Result<Vec<_>, _>>()?;
    let h = structure::closure(&g, &gens);
    let cert = theorems::lift_independent_set(&g, &h)?;
    println!("H: order {}, d(H) = {}, d(G) = {}", h.order(), cert.r, cert.d_g);
    for e in &cert.entries {
        println!("  {} = ({})^(p^{})", g.label(e.h), g.label(e.a), e.b);
    }
    let ok = cert.verify(&g, &h)?;
    println!("rank of lifts mod Phi(G): {}  verified: {}", cert.rank, yes_no(ok));
    Ok(if ok { Outcome::Consistent } else { Outcome::Violation })
}
