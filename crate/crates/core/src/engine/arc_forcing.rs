use super::pgroup::Depth;
use super::{check_gens, require_nilpotent, skewed_splice, Solver, Trace};
use crate::digraph::{verify_hamiltonian, CosetCayleyDigraph, Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::{GenSet, Group, Subgroup};
use crate::series::{build_subnormal_series, SeriesMode};

/// Hamiltonian path or cycle in `Cay(G;S)` for nilpotent `G`, given a way
/// to solve the same problem on the arc-forcing subgroup `H`.
///
/// `provider` is called on `H` (indexed as by
/// [`Group::subgroup_as_group`]) with a skewed generating set, or on `G`
/// itself when `H = G`. Every intermediate section is handled by the
/// p-group recursion.
pub fn arc_forcing_engine(
    g: &Group,
    s: &GenSet,
    provider: &mut Solver<'_>,
    kind: WalkKind,
) -> Result<Walk> {
    arc_forcing_engine_traced(g, s, provider, kind, &mut Trace::default())
}

pub fn arc_forcing_engine_traced(
    g: &Group,
    s: &GenSet,
    provider: &mut Solver<'_>,
    kind: WalkKind,
    trace: &mut Trace,
) -> Result<Walk> {
    check_gens(g, s)?;
    require_nilpotent(g)?;
    g.require_generating(s)?;
    arc_forcing_inner(g, s, SeriesMode::Nilpotent, provider, kind, trace)
}

/// The engine without its entry checks, shared by the specialised builders.
pub(super) fn arc_forcing_inner(
    g: &Group,
    s: &GenSet,
    mode: SeriesMode,
    provider: &mut Solver<'_>,
    kind: WalkKind,
    trace: &mut Trace,
) -> Result<Walk> {
    let h = g.arc_forcing_subgroup(s)?;
    let mut provide = |q: &Group, t: &GenSet, tr: &mut Trace| {
        provider(q, t, tr).map_err(|e| match e {
            Error::ProviderFailed(_) => e,
            other => Error::ProviderFailed(Box::new(other)),
        })
    };
    if h.is_whole() {
        let w = provide(g, s, trace)?;
        let d = CosetCayleyDigraph::cayley(g, s)?;
        if !verify_hamiltonian(&d, &w, kind) {
            return Err(Error::ProviderFailed(Box::new(
                Error::SpliceVerificationFailed(format!(
                    "provider output is not a hamiltonian {kind}"
                )),
            )));
        }
        return Ok(w);
    }
    let depth = Depth::top(g.order());
    let mut chain = |q: &Group, t: &GenSet, tr: &mut Trace| depth.solve(q, t, tr);
    fold(g, s, &h, mode, kind, &mut chain, &mut provide, trace)
}

/// Builds the series over `h`, starts from the directed cycle on the first
/// entry in `H^G\Cay(G;S)`, lifts it through each section with `chain`, and
/// makes the last lift to `Cay(G;S)` with `last`.
#[allow(clippy::too_many_arguments)]
pub(super) fn fold(
    g: &Group,
    s: &GenSet,
    h: &Subgroup,
    mode: SeriesMode,
    kind: WalkKind,
    chain: &mut Solver<'_>,
    last: &mut Solver<'_>,
    trace: &mut Trace,
) -> Result<Walk> {
    let series = match build_subnormal_series(g, h, mode) {
        Ok(series) => series,
        Err(e @ Error::InternalInvariantViolation(_)) => {
            trace.series_violations += 1;
            return Err(e);
        }
        Err(e) => return Err(e),
    };
    trace.series_built += 1;
    trace.ledger_fallbacks += series.ledger_fallbacks();

    let top = series.top();
    let a = &s.entries()[0];
    let outer = CosetCayleyDigraph::new(g, top, s)?;
    let mut base = outer.walk_from_identity(vec![a.label.clone(); top.index_in_parent()])?;
    if !verify_hamiltonian(&outer, &base, WalkKind::Cycle) {
        return Err(Error::InternalInvariantViolation(format!(
            "`{}` does not generate G modulo the normal closure of the arc-forcing subgroup",
            a.label
        )));
    }
    let links = series.chain();
    for k in (1..links.len()).rev() {
        base = skewed_splice(
            g,
            s,
            &links[k],
            &links[k - 1],
            &base,
            chain,
            WalkKind::Cycle,
            trace,
        )?;
    }
    let trivial = Subgroup::trivial(g);
    skewed_splice(g, s, &links[0], &trivial, &base, last, kind, trace)
}
