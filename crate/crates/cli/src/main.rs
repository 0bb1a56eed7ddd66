use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilham_core::engine::{arc_forcing_engine, Solver, Trace};
use nilham_core::group::{prime_power, DEFAULT_MAX_ORDER};
use nilham_core::io::{load_group, GroupFile, WalkFile};
use nilham_core::oracle::{
    brute_force_ham, property_harness, HarnessConfig, SearchBudget, SearchResult, DEFAULT_SEED,
};
use nilham_core::{
    abelian_ham_path, build_subnormal_series, ham_cycle_coset_generators, ham_path_2gen,
    ham_path_pxa, ham_path_valence4, pgroup_ham_cycle, verify_hamiltonian, CosetCayleyDigraph,
    Error, GenSet, Group, SeriesMode, Walk, WalkKind,
};

#[derive(Parser)]
#[command(
    name = "nilham",
    version,
    about = "Hamiltonian paths and cycles in Cayley digraphs of nilpotent groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print structural data: order, Sylow subgroups, arc-forcing subgroup, series.
    Analyze(GroupArgs),
    /// Construct a hamiltonian path.
    Hampath(BuildArgs),
    /// Construct a hamiltonian cycle.
    Hamcycle(BuildArgs),
    /// Re-check a walk file.
    Verify(VerifyArgs),
    /// Exhaustive search for a hamiltonian path or cycle.
    Oracle(OracleArgs),
    /// Run the property suites over the built-in corpus.
    Harness(HarnessArgs),
    /// Write a group as a table file and/or its Cayley digraph as DOT.
    Export(ExportArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// `builtin:NAME` or a path to a group JSON file.
    #[arg(long)]
    group: String,
    /// Comma-separated generator labels (or element indices).
    #[arg(long)]
    gens: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    gens: String,
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    algorithm: Algorithm,
    /// Walk JSON destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the digraph with the walk highlighted.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    walk: PathBuf,
    /// Overrides the group recorded in the walk file.
    #[arg(long)]
    group: Option<String>,
    /// Overrides the generators recorded in the walk file.
    #[arg(long)]
    gens: Option<String>,
    /// Overrides the kind recorded in the walk file.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    gens: String,
    #[arg(long, value_enum, default_value_t = Kind::Path)]
    kind: Kind,
    /// Maximum number of search-tree expansions.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Args)]
struct HarnessArgs {
    /// Restrict the suites to these built-in groups (repeatable).
    #[arg(long)]
    group: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include the exhaustive search on `semidirect:7`.
    #[arg(long)]
    exhaustive: bool,
    /// Node budget for that search.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long)]
    max_order: Option<usize>,
    /// JSON-lines report destination.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    gens: Option<String>,
    /// Group table JSON destination.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cayley digraph DOT destination (needs `--gens`).
    #[arg(long)]
    dot: Option<PathBuf>,
    /// A walk to highlight in the DOT output.
    #[arg(long)]
    walk: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Auto,
    #[value(name = "2gen")]
    TwoGen,
    Pxa,
    Val4,
    Pgroup,
    Arcforcing,
    Coset,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Path,
    Cycle,
}

impl From<Kind> for WalkKind {
    fn from(k: Kind) -> WalkKind {
        match k {
            Kind::Path => WalkKind::Path,
            Kind::Cycle => WalkKind::Cycle,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("walk does not verify: {0}")]
    Unverified(String),
    #[error("{0}")]
    Suite(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(e) if e.is_format_error() => 2,
            Failure::Io(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Hampath(a) => build(a, WalkKind::Path),
        Command::Hamcycle(a) => build(a, WalkKind::Cycle),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Harness(a) => harness(a),
        Command::Export(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Domain(e) => eprintln!("error: {}: {e}", e.kind()),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Prints to stdout, treating a closed pipe as the reader having lost
/// interest rather than as an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn group_source(source: &str) -> String {
    let looks_like_path = source.ends_with(".json") || source.contains(std::path::MAIN_SEPARATOR);
    if source.starts_with("builtin:") || looks_like_path || Path::new(source).exists() {
        source.to_string()
    } else {
        format!("builtin:{source}")
    }
}

fn load(source: &str, max_order: usize) -> CliResult<Group> {
    Ok(load_group(&group_source(source), max_order)?)
}

fn labels(g: &Group, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

fn analyze(a: GroupArgs) -> CliResult<()> {
    let g = load(&a.group, a.max_order)?;
    let d = g.sylow_decomposition();
    let sylow: Vec<Value> = d
        .factors
        .iter()
        .map(|f| {
            let abelian = d.subgroup(&g, f.prime).map(|s| g.subgroup_as_group(&s).is_abelian());
            json!({"prime": f.prime, "order": f.elements.len(), "closed": f.closed, "abelian": abelian})
        })
        .collect();
    let mut out = json!({
        "order": g.order(),
        "prime_power": prime_power(g.order() as u64).map(|(p, k)| json!({"prime": p, "exponent": k})),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
        "nilpotent": d.nilpotent,
        "sylow": sylow,
    });
    if let Some(text) = &a.gens {
        let s = GenSet::parse(&g, text)?;
        let h = g.arc_forcing_subgroup(&s)?;
        let closure = g.normal_closure(&h);
        let mut gens = json!({
            "labels": s.labels(),
            "generates": g.generates(&s),
            "minimal": g.is_minimal_generating_set(&s),
            "arc_forcing": {"order": h.order(), "members": labels(&g, h.members())},
            "normal_closure": {"order": closure.order(), "members": labels(&g, closure.members())},
        });
        if d.nilpotent {
            let series = build_subnormal_series(&g, &h, SeriesMode::Nilpotent)?;
            gens["series"] = json!({
                "orders": series.chain().iter().map(|k| k.order()).collect::<Vec<_>>(),
                "quotient_orders": series.quotient_orders(),
                "conjugators": labels(&g, series.conjugators()),
                "members": series.chain().iter().map(|k| labels(&g, k.members())).collect::<Vec<_>>(),
            });
        }
        out["gens"] = gens;
    }
    emit(&serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

fn abelian_provider(q: &Group, t: &GenSet, _: &mut Trace) -> nilham_core::Result<Walk> {
    abelian_ham_path(q, t)
}

fn pgroup_provider(q: &Group, t: &GenSet, _: &mut Trace) -> nilham_core::Result<Walk> {
    pgroup_ham_cycle(q, t)
}

fn is_prime_power(n: usize) -> bool {
    n == 1 || prime_power(n as u64).is_some()
}

fn unsupported(msg: &str) -> Failure {
    Failure::Domain(Error::Unsupported(msg.to_string()))
}

fn construct(g: &Group, s: &GenSet, algorithm: Algorithm, kind: WalkKind) -> CliResult<Walk> {
    let as_path = |cycle: Walk| -> CliResult<Walk> {
        match kind {
            WalkKind::Cycle => Ok(cycle),
            WalkKind::Path => Ok(cycle.trim_last()?),
        }
    };
    let path_only = |w: nilham_core::Result<Walk>| -> CliResult<Walk> {
        match kind {
            WalkKind::Path => Ok(w?),
            WalkKind::Cycle => Err(unsupported("this algorithm constructs paths only")),
        }
    };
    match algorithm {
        Algorithm::Auto => {
            let algorithm = if is_prime_power(g.order()) {
                Algorithm::Pgroup
            } else if kind == WalkKind::Cycle {
                return Err(unsupported(
                    "no cycle construction applies: the group order is not a prime power",
                ));
            } else if s.len() == 2 {
                Algorithm::TwoGen
            } else {
                Algorithm::Pxa
            };
            construct(g, s, algorithm, kind)
        }
        Algorithm::TwoGen => path_only(ham_path_2gen(g, s)),
        Algorithm::Pxa => path_only(ham_path_pxa(g, s)),
        Algorithm::Val4 => path_only(ham_path_valence4(g, s)),
        Algorithm::Pgroup => as_path(pgroup_ham_cycle(g, s)?),
        Algorithm::Coset => {
            let h = g.arc_forcing_subgroup(s)?;
            let n = g.normal_closure(&h);
            as_path(ham_cycle_coset_generators(g, &n, s)?)
        }
        Algorithm::Arcforcing => {
            let h = g.arc_forcing_subgroup(s)?;
            let local = g.subgroup_as_group(&h);
            let provider: &mut Solver<'_> = match kind {
                WalkKind::Path if local.is_abelian() => &mut abelian_provider,
                WalkKind::Cycle if is_prime_power(h.order()) => &mut pgroup_provider,
                WalkKind::Path => {
                    return Err(unsupported("arc-forcing subgroup is not abelian"));
                }
                WalkKind::Cycle => {
                    return Err(unsupported(
                        "arc-forcing subgroup is not of prime-power order",
                    ));
                }
            };
            Ok(arc_forcing_engine(g, s, provider, kind)?)
        }
    }
}

fn build(a: BuildArgs, kind: WalkKind) -> CliResult<()> {
    let g = load(&a.group, a.max_order)?;
    let s = GenSet::parse(&g, &a.gens)?;
    let w = construct(&g, &s, a.algorithm, kind)?;
    let d = CosetCayleyDigraph::cayley(&g, &s)?;
    if !verify_hamiltonian(&d, &w, kind) {
        return Err(Failure::Unverified(format!(
            "constructed {kind} failed the final check"
        )));
    }
    let file = WalkFile::new(&w, kind, true).with_source(&group_source(&a.group), s.labels());
    if let Some(dot) = &a.dot {
        write_or_print(Some(dot), &d.to_dot(Some(&w)))?;
    }
    write_or_print(a.out.as_deref(), &file.to_json())
}

fn verify(a: VerifyArgs) -> CliResult<()> {
    let file = WalkFile::load(&a.walk)?;
    let source = a.group.clone().or(file.group.clone()).ok_or_else(|| {
        Failure::Domain(Error::InvalidInput(
            "walk file names no group; pass --group".into(),
        ))
    })?;
    let g = load(&source, a.max_order)?;
    let s = match (&a.gens, &file.gens) {
        (Some(text), _) => GenSet::parse(&g, text)?,
        (None, Some(labels)) => GenSet::parse(&g, &labels.join(","))?,
        (None, None) => {
            return Err(Failure::Domain(Error::InvalidInput(
                "walk file names no generators; pass --gens".into(),
            )))
        }
    };
    let kind = a.kind.map_or(file.kind, WalkKind::from);
    let d = CosetCayleyDigraph::cayley(&g, &s)?;
    let ok = d.walk(file.start, file.steps.clone()).is_ok_and(|w| {
        w.vertices() == file.vertices.as_slice() && verify_hamiltonian(&d, &w, kind)
    });
    emit(&json!({"verified": ok, "kind": kind, "steps": file.steps.len(), "vertices": d.vertex_count()}).to_string());
    if ok {
        Ok(())
    } else {
        Err(Failure::Unverified(format!(
            "not a hamiltonian {kind} of Cay(G;S)"
        )))
    }
}

fn oracle(a: OracleArgs) -> CliResult<()> {
    let g = load(&a.group, a.max_order)?;
    let s = GenSet::parse(&g, &a.gens)?;
    let kind = WalkKind::from(a.kind);
    let d = CosetCayleyDigraph::cayley(&g, &s)?;
    let result = brute_force_ham(&d, kind, SearchBudget::nodes(a.budget));
    let mut out = json!({"result": result.kind(), "kind": kind, "budget": a.budget});
    if let SearchResult::Found(w) = &result {
        let verified = verify_hamiltonian(&d, w, kind);
        let file =
            WalkFile::new(w, kind, verified).with_source(&group_source(&a.group), s.labels());
        if let Some(path) = &a.out {
            write_or_print(Some(path), &file.to_json())?;
        }
        out["walk"] = serde_json::to_value(&file).expect("json");
    }
    emit(&serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

fn harness(a: HarnessArgs) -> CliResult<()> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let config = HarnessConfig {
        seed: a.seed,
        workers,
        exhaustive: a.exhaustive,
        exhaustive_budget: a.budget,
        groups: (!a.group.is_empty()).then(|| {
            a.group
                .iter()
                .map(|g| g.strip_prefix("builtin:").unwrap_or(g).to_string())
                .collect()
        }),
        max_order: a.max_order.unwrap_or(usize::MAX),
        ..HarnessConfig::default()
    };
    let report = property_harness(&config)?;
    if let Some(path) = &a.out {
        write_or_print(Some(path), report.json_lines().trim_end())?;
    }
    emit(report.summary_text().trim_end());
    for f in report.failures().take(10) {
        eprintln!("failed: {}", serde_json::to_string(f).expect("json"));
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Suite(format!(
            "{} cases failed",
            report.failures().count()
        )))
    }
}

fn export(a: ExportArgs) -> CliResult<()> {
    let g = load(&a.group, a.max_order)?;
    if a.out.is_none() && a.dot.is_none() {
        return Err(Failure::Domain(Error::InvalidInput(
            "nothing to export: pass --out and/or --dot".into(),
        )));
    }
    if let Some(out) = &a.out {
        let name = a.group.strip_prefix("builtin:").unwrap_or(&a.group);
        let file = GroupFile::from_group(name, &g);
        write_or_print(Some(out), &serde_json::to_string(&file).expect("json"))?;
    }
    if let Some(dot) = &a.dot {
        let text = a
            .gens
            .as_deref()
            .ok_or_else(|| Failure::Domain(Error::InvalidInput("--dot needs --gens".into())))?;
        let s = GenSet::parse(&g, text)?;
        let d = CosetCayleyDigraph::cayley(&g, &s)?;
        let walk = match &a.walk {
            Some(path) => {
                let f = WalkFile::load(path)?;
                Some(d.walk(f.start, f.steps)?)
            }
            None => None,
        };
        write_or_print(Some(dot), &d.to_dot(walk.as_ref()))?;
    }
    Ok(())
}
