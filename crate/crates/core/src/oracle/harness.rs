use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{corpus, CorpusGroup, PXA_NAMES};
use super::milnor::{milnor_nonexistence, semidirect_fixture};
use super::search::{brute_force_ham_counted, SearchBudget, SearchResult};
use crate::digraph::{verify_hamiltonian, CosetCayleyDigraph, Walk, WalkKind};
use crate::engine::{
    ham_cycle_coset_generators_traced, ham_path_2gen_traced, ham_path_pxa_traced,
    ham_path_valence4_traced, pgroup_ham_cycle_traced, Trace,
};
use crate::error::{Error, Result};
use crate::group::{Elem, GenSet, Group, Subgroup};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Golden,
    TwoGen,
    PGroup,
    PxA,
    Valence4,
    Oracle,
    Negative,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Golden,
        Suite::TwoGen,
        Suite::PGroup,
        Suite::PxA,
        Suite::Valence4,
        Suite::Oracle,
        Suite::Negative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::TwoGen => "two_gen",
            Suite::PGroup => "p_group",
            Suite::PxA => "pxa",
            Suite::Valence4 => "valence4",
            Suite::Oracle => "oracle",
            Suite::Negative => "negative",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// The input was refused with the expected error.
    Rejected,
    Fail,
}

/// One line of the JSON-lines report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub suite: Suite,
    pub group: String,
    pub gens: Vec<String>,
    pub outcome: Outcome,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub cases: usize,
    pub passed: usize,
    pub rejected: usize,
    pub failed: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Worker threads; results are collected in case order regardless.
    pub workers: usize,
    /// Also settle the hamiltonian-path question for `semidirect:7` by
    /// exhaustive search.
    pub exhaustive: bool,
    /// Node budget for that search.
    pub exhaustive_budget: u64,
    /// Run the corpus suites on these built-in groups instead of the
    /// default corpus; fixed golden and negative cases are then skipped.
    pub groups: Option<Vec<String>>,
    /// Skip corpus groups above this order.
    pub max_order: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            suites: Suite::ALL.to_vec(),
            seed: DEFAULT_SEED,
            workers: 1,
            exhaustive: false,
            exhaustive_budget: 100_000_000,
            groups: None,
            max_order: usize::MAX,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub records: Vec<CaseRecord>,
    pub summaries: Vec<SuiteSummary>,
    /// Counters summed over every engine call, in case order.
    pub trace: Trace,
    /// Counters for each suite.
    pub suite_traces: Vec<(Suite, Trace)>,
    pub oracle_nodes: u64,
}

impl HarnessReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn records_for(&self, suite: Suite) -> impl Iterator<Item = &CaseRecord> {
        self.records.iter().filter(move |r| r.suite == suite)
    }

    pub fn trace_for(&self, suite: Suite) -> Option<&Trace> {
        self.suite_traces
            .iter()
            .find(|(s, _)| *s == suite)
            .map(|(_, t)| t)
    }

    /// One JSON object per case. Contains no timings, so two runs with the
    /// same configuration produce identical text.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for s in &self.summaries {
            out.push_str(&format!(
                "{:<9} {:>6} cases  {:>6} passed  {:>5} rejected  {:>3} failed  {:>8.2}s\n",
                s.suite.name(),
                s.cases,
                s.passed,
                s.rejected,
                s.failed,
                s.seconds
            ));
        }
        let t = &self.trace;
        out.push_str(&format!(
            "series built {}, series violations {}, ledger fallbacks {}, max depth {}, depth violations {}, skewed splices {}, oracle nodes {}\n",
            t.series_built,
            t.series_violations,
            t.ledger_fallbacks,
            t.max_depth,
            t.depth_violations,
            t.skewed_splices,
            self.oracle_nodes
        ));
        out
    }
}

#[derive(Clone, Debug)]
enum Algorithm {
    TwoGen,
    PGroup,
    PxA,
    Valence4,
    Coset(Subgroup),
}

impl Algorithm {
    fn kind(&self) -> WalkKind {
        match self {
            Algorithm::PGroup | Algorithm::Coset(_) => WalkKind::Cycle,
            _ => WalkKind::Path,
        }
    }

    fn run(&self, g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
        match self {
            Algorithm::TwoGen => ham_path_2gen_traced(g, s, trace),
            Algorithm::PGroup => pgroup_ham_cycle_traced(g, s, trace),
            Algorithm::PxA => ham_path_pxa_traced(g, s, trace),
            Algorithm::Valence4 => ham_path_valence4_traced(g, s, trace),
            Algorithm::Coset(n) => ham_cycle_coset_generators_traced(g, n, s, trace),
        }
    }
}

#[derive(Clone, Debug)]
enum Check {
    Walk(Algorithm),
    Golden(Algorithm, Vec<String>),
    Reject(Algorithm, &'static str),
    Oracle,
    Milnor(bool),
    Settle(u64),
}

#[derive(Clone, Debug)]
struct Case {
    suite: Suite,
    name: String,
    group: Arc<Group>,
    gens: GenSet,
    check: Check,
}

struct CaseResult {
    record: CaseRecord,
    trace: Trace,
    nodes: u64,
}

/// Runs the selected suites and collects one record per case.
pub fn property_harness(config: &HarnessConfig) -> Result<HarnessReport> {
    let groups: Vec<(CorpusGroup, Arc<Group>)> = match &config.groups {
        Some(names) => names
            .iter()
            .map(|n| CorpusGroup::new(n))
            .collect::<Result<Vec<_>>>()?,
        None => corpus(),
    }
    .into_iter()
    .filter(|c| c.order() <= config.max_order)
    .map(|c| {
        let g = Arc::new(c.group.clone());
        (c, g)
    })
    .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;

    let mut report = HarnessReport {
        records: Vec::new(),
        summaries: Vec::new(),
        trace: Trace::default(),
        suite_traces: Vec::new(),
        oracle_nodes: 0,
    };
    for &suite in &config.suites {
        let started = Instant::now();
        let cases = build_cases(suite, &groups, config)?;
        let results: Vec<CaseResult> = pool.install(|| cases.par_iter().map(run_case).collect());
        let mut suite_trace = Trace::default();
        let mut summary = SuiteSummary {
            suite,
            cases: results.len(),
            passed: 0,
            rejected: 0,
            failed: 0,
            seconds: 0.0,
        };
        for r in results {
            suite_trace.absorb(&r.trace);
            report.oracle_nodes += r.nodes;
            match r.record.outcome {
                Outcome::Pass => summary.passed += 1,
                Outcome::Rejected => summary.rejected += 1,
                Outcome::Fail => summary.failed += 1,
            }
            report.records.push(r.record);
        }
        summary.seconds = started.elapsed().as_secs_f64();
        report.trace.absorb(&suite_trace);
        report.suite_traces.push((suite, suite_trace));
        report.summaries.push(summary);
    }
    Ok(report)
}

fn suite_rng(seed: u64, suite: Suite, group_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | group_index as u64);
    rng
}

fn case(suite: Suite, name: &str, group: &Arc<Group>, gens: GenSet, check: Check) -> Case {
    Case {
        suite,
        name: name.to_string(),
        group: Arc::clone(group),
        gens,
        check,
    }
}

fn build_cases(
    suite: Suite,
    groups: &[(CorpusGroup, Arc<Group>)],
    config: &HarnessConfig,
) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    match suite {
        Suite::Golden if config.groups.is_none() => golden_cases(&mut cases)?,
        Suite::Negative if config.groups.is_none() => negative_cases(&mut cases, config)?,
        Suite::Golden | Suite::Negative => {}
        Suite::TwoGen => {
            for (i, (c, g)) in groups
                .iter()
                .enumerate()
                .filter(|(_, (c, _))| c.order() <= 64)
            {
                let check = if c.is_nilpotent() {
                    Check::Walk(Algorithm::TwoGen)
                } else {
                    Check::Reject(Algorithm::TwoGen, "NotNilpotent")
                };
                let pool = generating_pairs(g, true);
                let chosen = if c.order() <= 27 || pool.len() <= 200 {
                    pool
                } else {
                    let mut rng = suite_rng(config.seed, suite, i);
                    sample(&mut rng, pool.len(), 200)
                        .into_iter()
                        .map(|k| pool[k])
                        .collect()
                };
                for (a, b) in chosen {
                    let s = GenSet::from_elements(g, &[a, b])?;
                    cases.push(case(suite, &c.name, g, s, check.clone()));
                }
            }
        }
        Suite::PGroup => {
            for (i, (c, g)) in groups.iter().enumerate() {
                if c.family != super::Family::PGroup || c.order() > 64 || c.order() == 1 {
                    continue;
                }
                let mut rng = suite_rng(config.seed, suite, i);
                for s in sample_gensets(g, &mut rng, 50, 1) {
                    cases.push(case(suite, &c.name, g, s, Check::Walk(Algorithm::PGroup)));
                }
            }
        }
        Suite::PxA => {
            let pxa: Vec<(CorpusGroup, Arc<Group>)> = match &config.groups {
                Some(_) => groups
                    .iter()
                    .filter(|(c, _)| c.is_nilpotent())
                    .cloned()
                    .collect(),
                None => PXA_NAMES
                    .iter()
                    .map(|n| {
                        let c = CorpusGroup::new(n)?;
                        let g = Arc::new(c.group.clone());
                        Ok((c, g))
                    })
                    .collect::<Result<_>>()?,
            };
            for (i, (c, g)) in pxa.iter().enumerate() {
                if c.order() > config.max_order {
                    continue;
                }
                let mut rng = suite_rng(config.seed, suite, i);
                for s in sample_gensets(g, &mut rng, 50, 1) {
                    cases.push(case(suite, &c.name, g, s, Check::Walk(Algorithm::PxA)));
                }
            }
        }
        Suite::Valence4 => {
            for (i, (c, g)) in groups.iter().enumerate() {
                if !c.is_nilpotent() || c.order() > 48 {
                    continue;
                }
                let sets = if c.order() <= 24 {
                    all_valence4_sets(g)
                } else {
                    let mut rng = suite_rng(config.seed, suite, i);
                    sample_valence4_sets(g, &mut rng, 100)
                };
                for elems in sets {
                    let s = GenSet::from_elements(g, &elems)?;
                    cases.push(case(suite, &c.name, g, s, Check::Walk(Algorithm::Valence4)));
                }
            }
        }
        Suite::Oracle => {
            for (c, g) in groups.iter().filter(|(c, _)| c.order() <= 16) {
                for (a, b) in generating_pairs(g, false) {
                    let s = GenSet::from_elements(g, &[a, b])?;
                    cases.push(case(suite, &c.name, g, s, Check::Oracle));
                }
            }
        }
    }
    Ok(cases)
}

fn golden_cases(cases: &mut Vec<Case>) -> Result<()> {
    let mut add = |name: &str, gens: &str, alg: Algorithm, expected: &[&str]| -> Result<()> {
        let g = Arc::new(crate::builtin::parse(name)?);
        let s = GenSet::parse(&g, gens)?;
        let expected = expected.iter().map(|x| x.to_string()).collect();
        cases.push(case(
            Suite::Golden,
            name,
            &g,
            s,
            Check::Golden(alg, expected),
        ));
        Ok(())
    };
    add(
        "q8",
        "i,j",
        Algorithm::TwoGen,
        &["i", "j", "i", "j", "i", "j", "i"],
    )?;
    add(
        "q8",
        "i,j",
        Algorithm::PGroup,
        &["i", "j", "i", "j", "i", "j", "i", "j"],
    )?;
    add("z6", "2,5", Algorithm::TwoGen, &["2", "2", "5", "2", "2"])?;
    add("z6", "2,3", Algorithm::PxA, &["3", "2", "3", "2", "3"])?;
    let z4 = crate::builtin::cyclic(4);
    let n = z4.generated_subgroup([2]);
    add("z4", "1,3", Algorithm::Coset(n), &["1", "1", "1", "1"])?;
    add("z4", "1", Algorithm::PGroup, &["1", "1", "1", "1"])?;
    Ok(())
}

fn negative_cases(cases: &mut Vec<Case>, config: &HarnessConfig) -> Result<()> {
    for (name, gens) in [("s3", "(0 1),(0 1 2)"), ("d10", "r,f")] {
        let g = Arc::new(crate::builtin::parse(name)?);
        let s = GenSet::parse(&g, gens)?;
        cases.push(case(
            Suite::Negative,
            name,
            &g,
            s,
            Check::Reject(Algorithm::TwoGen, "NotNilpotent"),
        ));
    }
    for (p, expected) in [(13, true), (7, false)] {
        let (g, a, b) = semidirect_fixture(p)?;
        let g = Arc::new(g);
        let s = GenSet::new(vec![a, b])?;
        let name = format!("semidirect:{p}");
        cases.push(case(
            Suite::Negative,
            &name,
            &g,
            s.clone(),
            Check::Milnor(expected),
        ));
        if p == 7 && config.exhaustive {
            cases.push(case(
                Suite::Negative,
                &name,
                &g,
                s,
                Check::Settle(config.exhaustive_budget),
            ));
        }
    }
    Ok(())
}

/// Pairs `(a, b)` with `a ≠ b` generating `G`; ordered pairs, or pairs with
/// `a < b` when `ordered` is false.
fn generating_pairs(g: &Group, ordered: bool) -> Vec<(Elem, Elem)> {
    let n = g.order();
    (0..n)
        .cartesian_product(0..n)
        .filter(|&(a, b)| if ordered { a != b } else { a < b })
        .filter(|&(a, b)| g.generated_subgroup([a, b]).is_whole())
        .collect()
}

/// `count` generating sets of 1 to 4 distinct elements (at least
/// `min_size`), drawn independently; repeats are possible in small groups.
fn sample_gensets(g: &Group, rng: &mut ChaCha8Rng, count: usize, min_size: usize) -> Vec<GenSet> {
    let n = g.order();
    let max_size = n.min(4);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 100_000 {
        attempts += 1;
        let k = rng.gen_range(min_size.min(max_size)..=max_size);
        let elems: Vec<Elem> = sample(rng, n, k).into_vec();
        if g.generated_subgroup(elems.iter().copied()).is_whole() {
            out.push(GenSet::from_elements(g, &elems).expect("distinct elements"));
        }
    }
    out
}

fn valence(g: &Group, elems: &[Elem]) -> usize {
    elems.iter().flat_map(|&x| [x, g.inv(x)]).unique().count()
}

fn is_valence4_minimal(g: &Group, elems: &[Elem]) -> bool {
    valence(g, elems) <= 4
        && g.is_minimal_generating_set(&GenSet::from_elements(g, elems).expect("distinct elements"))
}

/// Every minimal generating set (as an ascending index set) of valence at
/// most 4.
fn all_valence4_sets(g: &Group) -> Vec<Vec<Elem>> {
    let n = g.order();
    (1..=4.min(n))
        .flat_map(|k| (0..n).combinations(k))
        .filter(|set| valence(g, set) <= 4)
        .filter(|set| is_valence4_minimal(g, set))
        .collect()
}

fn sample_valence4_sets(g: &Group, rng: &mut ChaCha8Rng, count: usize) -> Vec<Vec<Elem>> {
    let n = g.order();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 200_000 {
        attempts += 1;
        let k = rng.gen_range(1..=4.min(n));
        let mut set = sample(rng, n, k).into_vec();
        set.sort_unstable();
        if is_valence4_minimal(g, &set) {
            out.push(set);
        }
    }
    out
}

fn run_case(case: &Case) -> CaseResult {
    let g = case.group.as_ref();
    let s = &case.gens;
    let mut trace = Trace::default();
    let mut nodes = 0;
    let mut steps = None;
    let (outcome, detail) = match &case.check {
        Check::Walk(alg) => match alg.run(g, s, &mut trace) {
            Ok(w) => {
                let ok = recheck(g, s, &w, alg.kind());
                steps = Some(w.steps().to_vec());
                if ok {
                    (Outcome::Pass, format!("verified {}", alg.kind()))
                } else {
                    (Outcome::Fail, "walk failed independent verification".into())
                }
            }
            Err(e) => (Outcome::Fail, format!("{}: {e}", e.kind())),
        },
        Check::Golden(alg, expected) => match alg.run(g, s, &mut trace) {
            Ok(w) => {
                let ok = recheck(g, s, &w, alg.kind()) && w.steps() == expected.as_slice();
                steps = Some(w.steps().to_vec());
                if ok {
                    (Outcome::Pass, format!("golden {}", alg.kind()))
                } else {
                    (Outcome::Fail, format!("expected {}", expected.join(",")))
                }
            }
            Err(e) => (Outcome::Fail, format!("{}: {e}", e.kind())),
        },
        Check::Reject(alg, kind) => match alg.run(g, s, &mut trace) {
            Err(e) if e.kind() == *kind => (Outcome::Rejected, e.kind().to_string()),
            Err(e) => (
                Outcome::Fail,
                format!("expected {kind}, got {}: {e}", e.kind()),
            ),
            Ok(_) => (Outcome::Fail, format!("expected {kind}, got a walk")),
        },
        Check::Oracle => {
            let d = CosetCayleyDigraph::cayley(g, s).expect("non-empty generators");
            let (found, n) = brute_force_ham_counted(&d, WalkKind::Path, SearchBudget::default());
            nodes = n;
            let engine = g
                .is_nilpotent()
                .then(|| ham_path_2gen_traced(g, s, &mut trace));
            match (&found, engine) {
                (SearchResult::Found(w), _) if !verify_hamiltonian(&d, w, WalkKind::Path) => {
                    (Outcome::Fail, "oracle walk failed verification".into())
                }
                (SearchResult::Found(w), Some(Err(e))) => {
                    steps = Some(w.steps().to_vec());
                    (
                        Outcome::Fail,
                        format!("oracle found a path, engine failed: {e}"),
                    )
                }
                (SearchResult::Found(w), engine) => {
                    steps = Some(w.steps().to_vec());
                    let detail = match engine {
                        Some(_) => "oracle and engine agree",
                        None => "oracle found a path",
                    };
                    (Outcome::Pass, detail.into())
                }
                (SearchResult::NotFound, Some(Ok(_))) => (
                    Outcome::Fail,
                    "engine found a path the oracle proved absent".into(),
                ),
                (other, _) => (Outcome::Fail, format!("oracle returned {}", other.kind())),
            }
        }
        Check::Milnor(expected) => {
            let [a, b] = [0, 1].map(|i| s.entries()[i].element);
            match milnor_nonexistence(g, a, b) {
                Ok(v) if v == *expected => (Outcome::Pass, format!("inequality holds: {v}")),
                Ok(v) => (
                    Outcome::Fail,
                    format!("inequality holds: {v}, expected {expected}"),
                ),
                Err(e) => (Outcome::Fail, format!("{}: {e}", e.kind())),
            }
        }
        Check::Settle(budget) => {
            let d = CosetCayleyDigraph::cayley(g, s).expect("non-empty generators");
            let (found, n) =
                brute_force_ham_counted(&d, WalkKind::Path, SearchBudget::nodes(*budget));
            nodes = n;
            let [a, b] = [0, 1].map(|i| s.entries()[i].element);
            let ruled_out = milnor_nonexistence(g, a, b).unwrap_or(false);
            match found {
                SearchResult::Found(w) if ruled_out => {
                    steps = Some(w.steps().to_vec());
                    (
                        Outcome::Fail,
                        "path found where the inequality rules one out".into(),
                    )
                }
                SearchResult::Found(w) => {
                    steps = Some(w.steps().to_vec());
                    (
                        Outcome::Pass,
                        format!("hamiltonian path exists ({n} nodes)"),
                    )
                }
                SearchResult::NotFound => (
                    Outcome::Pass,
                    format!("no hamiltonian path ({n} nodes, exhaustive)"),
                ),
                SearchResult::Timeout => {
                    (Outcome::Fail, format!("budget of {budget} nodes exhausted"))
                }
            }
        }
    };
    CaseResult {
        record: CaseRecord {
            suite: case.suite,
            group: case.name.clone(),
            gens: s.labels(),
            outcome,
            detail,
            steps,
        },
        trace,
        nodes,
    }
}

fn recheck(g: &Group, s: &GenSet, w: &Walk, kind: WalkKind) -> bool {
    CosetCayleyDigraph::cayley(g, s).is_ok_and(|d| verify_hamiltonian(&d, w, kind))
}
