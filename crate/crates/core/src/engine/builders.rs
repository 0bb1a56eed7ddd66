use itertools::Itertools;

use super::arc_forcing::arc_forcing_inner;
use super::pgroup::Depth;
use super::{abelian_ham_path, certify, check_gens, product_splice, require_nilpotent, Trace};
use crate::digraph::{Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::{prime_power, GenSet, Group, Subgroup};
use crate::series::SeriesMode;

/// Hamiltonian path in `Cay(G;{a,b})` for nilpotent `G`.
///
/// The arc-forcing subgroup `⟨a⁻¹b⟩` is cyclic, so the abelian path builder
/// serves as the provider.
pub fn ham_path_2gen(g: &Group, s: &GenSet) -> Result<Walk> {
    ham_path_2gen_traced(g, s, &mut Trace::default())
}

pub fn ham_path_2gen_traced(g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
    if s.len() != 2 {
        return Err(Error::PreconditionFailed(format!(
            "expected two generators, got {}",
            s.len()
        )));
    }
    check_gens(g, s)?;
    require_nilpotent(g)?;
    g.require_generating(s)?;
    two_gen(g, s, trace)
}

fn two_gen(g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
    let mut provider = |q: &Group, t: &GenSet, _: &mut Trace| abelian_ham_path(q, t);
    arc_forcing_inner(
        g,
        s,
        SeriesMode::Nilpotent,
        &mut provider,
        WalkKind::Path,
        trace,
    )
}

/// Hamiltonian path in `Cay(G;S)` for nilpotent `G` with at most one
/// non-abelian Sylow subgroup.
pub fn ham_path_pxa(g: &Group, s: &GenSet) -> Result<Walk> {
    ham_path_pxa_traced(g, s, &mut Trace::default())
}

pub fn ham_path_pxa_traced(g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
    check_gens(g, s)?;
    require_nilpotent(g)?;
    g.require_generating(s)?;
    let non_abelian = non_abelian_sylows(g);
    if non_abelian.len() > 1 {
        return Err(Error::StructureNotPxA(format!(
            "non-abelian Sylow subgroups for primes {}",
            non_abelian.iter().join(", ")
        )));
    }
    pxa(g, s, trace)
}

fn non_abelian_sylows(g: &Group) -> Vec<u64> {
    let d = g.sylow_decomposition();
    d.primes()
        .into_iter()
        .filter(|&p| {
            let sub = d
                .subgroup(g, p)
                .expect("nilpotent group has normal Sylow subgroups");
            !g.subgroup_as_group(&sub).is_abelian()
        })
        .collect()
}

fn pxa(g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
    if g.order() == 1 {
        return certify(g, s, Vec::new(), WalkKind::Path, "empty path");
    }
    let s = g.reduce_generating_set(s)?;
    let h = g.arc_forcing_subgroup(&s)?;
    if !h.is_whole() {
        let mut provider = |q: &Group, t: &GenSet, tr: &mut Trace| pxa(q, t, tr);
        return arc_forcing_inner(
            g,
            &s,
            SeriesMode::Nilpotent,
            &mut provider,
            WalkKind::Path,
            trace,
        );
    }

    let d = g.sylow_decomposition();
    let primes = d.primes();
    let non_abelian = non_abelian_sylows(g);
    let p = non_abelian.first().copied().unwrap_or(primes[0]);
    let sylow = d
        .subgroup(g, p)
        .expect("nilpotent group has normal Sylow subgroups");
    let elems = s.elements();
    let found = (1..s.len())
        .flat_map(|k| (0..s.len()).combinations(k))
        .find(|subset| {
            let parts = subset.iter().map(|&i| g.prime_component(elems[i], p));
            g.generated_subgroup(parts) == sylow
        });
    let Some(subset) = found else {
        if g.is_abelian() {
            return abelian_ham_path(g, &s);
        }
        return Err(Error::StructureNotPxA(format!(
            "no proper subset of the generators projects onto the Sylow {p}-subgroup"
        )));
    };

    let s0 = s.select(&subset);
    let n = g.generated_subgroup(s0.elements());
    if n.is_trivial() || n.is_whole() {
        return Err(Error::InternalInvariantViolation(format!(
            "subgroup generated by {:?} has order {} in a group of order {}",
            s0.labels(),
            n.order(),
            g.order()
        )));
    }
    if let Some((conjugator, element)) = g.normality_witness(&n, &Subgroup::whole(g)) {
        return Err(Error::InternalInvariantViolation(format!(
            "subgroup generated by {:?} is not normal: {} conjugated by {}",
            s0.labels(),
            g.label(element),
            g.label(conjugator)
        )));
    }
    let local = g.subgroup_as_group(&n);
    let local_gens = s0.map_elements(|x| n.local_index(x).expect("generator lies in N"));
    let n_path = pxa(&local, &local_gens, trace)?;
    let quotient = g.quotient(&n)?;
    let q_gens = s.map_elements(|x| quotient.project(x));
    let q_path = pxa(quotient.group(), &q_gens, trace)?;
    product_splice(g, &s, &n, n_path.steps(), q_path.steps())
}

/// Hamiltonian path in the undirected Cayley graph of a nilpotent group
/// whose generating set, after minimalization, has valence at most 4.
///
/// The returned walk is a directed path of `Cay(G;S)`, which is also a path
/// of the undirected graph.
pub fn ham_path_valence4(g: &Group, s: &GenSet) -> Result<Walk> {
    ham_path_valence4_traced(g, s, &mut Trace::default())
}

pub fn ham_path_valence4_traced(g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
    check_gens(g, s)?;
    require_nilpotent(g)?;
    g.require_generating(s)?;
    if g.order() == 1 {
        return certify(g, s, Vec::new(), WalkKind::Path, "empty path");
    }
    let s = g.reduce_generating_set(s)?;
    let valence = s
        .elements()
        .into_iter()
        .flat_map(|x| [x, g.inv(x)])
        .unique()
        .count();
    if valence > 4 {
        return Err(Error::ValenceTooLarge(valence));
    }
    let involutions = s
        .elements()
        .into_iter()
        .filter(|&x| g.element_order(x) == 2)
        .count();
    if s.len() - involutions <= 1 {
        let odd: Vec<usize> = g
            .elements()
            .filter(|&x| g.element_order(x) % 2 == 1)
            .collect();
        let k = Subgroup::from_members(g, &odd)?;
        if !g.subgroup_as_group(&k).is_cyclic() {
            return Err(Error::InternalInvariantViolation(
                "odd part of a valence-4 nilpotent group is not cyclic".into(),
            ));
        }
        return pxa(g, &s, trace);
    }
    if s.len() != 2 || involutions != 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "valence {valence} with {} generators, {involutions} of order 2",
            s.len()
        )));
    }
    two_gen(g, &s, trace)
}

/// Hamiltonian cycle in `Cay(G;S)` when `S ⊂ aN` for a normal p-subgroup `N`.
pub fn ham_cycle_coset_generators(g: &Group, n: &Subgroup, s: &GenSet) -> Result<Walk> {
    ham_cycle_coset_generators_traced(g, n, s, &mut Trace::default())
}

pub fn ham_cycle_coset_generators_traced(
    g: &Group,
    n: &Subgroup,
    s: &GenSet,
    trace: &mut Trace,
) -> Result<Walk> {
    check_gens(g, s)?;
    if n.parent_order() != g.order() {
        return Err(Error::InvalidInput(
            "subgroup belongs to a different group".into(),
        ));
    }
    g.require_normal(n)?;
    if n.order() > 1 && prime_power(n.order() as u64).is_none() {
        return Err(Error::NotPrimePower(n.order()));
    }
    let elems = s.elements();
    let a_inv = g.inv(elems[0]);
    if elems.iter().any(|&x| !n.contains(g.mul(a_inv, x))) {
        return Err(Error::CosetConditionViolated);
    }
    g.require_generating(s)?;
    let mut provider =
        |q: &Group, t: &GenSet, tr: &mut Trace| Depth::top(q.order()).solve(q, t, tr);
    arc_forcing_inner(
        g,
        s,
        SeriesMode::PGroupClosure,
        &mut provider,
        WalkKind::Cycle,
        trace,
    )
}
