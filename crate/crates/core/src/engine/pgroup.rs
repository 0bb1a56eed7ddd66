use super::arc_forcing::fold;
use super::{certify, check_gens, Trace};
use crate::digraph::{Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::{prime_power, GenSet, Group};
use crate::series::SeriesMode;

/// Hamiltonian cycle in `Cay(G;S)` for `G` of prime-power order.
pub fn pgroup_ham_cycle(g: &Group, s: &GenSet) -> Result<Walk> {
    pgroup_ham_cycle_traced(g, s, &mut Trace::default())
}

pub fn pgroup_ham_cycle_traced(g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
    check_gens(g, s)?;
    if g.order() > 1 && prime_power(g.order() as u64).is_none() {
        return Err(Error::NotPrimePower(g.order()));
    }
    g.require_generating(s)?;
    let depth = Depth::top(g.order());
    depth.solve(g, s, trace)
}

/// Position of one call in the p-group recursion, with the bound it must
/// respect.
#[derive(Clone, Copy, Debug)]
pub(super) struct Depth {
    level: usize,
    limit: usize,
    order: usize,
}

impl Depth {
    /// Bound for a recursion whose outermost group has order `order`.
    pub(super) fn top(order: usize) -> Depth {
        Depth {
            level: 0,
            limit: order.max(1).ilog2() as usize,
            order: usize::MAX,
        }
    }

    /// Solves a strictly smaller p-group one level further down.
    pub(super) fn solve(self, g: &Group, s: &GenSet, trace: &mut Trace) -> Result<Walk> {
        if g.order() >= self.order {
            return Err(Error::InternalInvariantViolation(format!(
                "p-group recursion did not shrink: order {} after {}",
                g.order(),
                self.order
            )));
        }
        trace.max_depth = trace.max_depth.max(self.level);
        if self.level > self.limit {
            trace.depth_violations += 1;
            return Err(Error::InternalInvariantViolation(format!(
                "p-group recursion depth {} exceeds {}",
                self.level, self.limit
            )));
        }
        check_gens(g, s)?;
        if g.order() > 1 && prime_power(g.order() as u64).is_none() {
            return Err(Error::NotPrimePower(g.order()));
        }
        let n = g.order();
        if n == 1 {
            return certify(
                g,
                s,
                vec![s.entries()[0].label.clone()],
                WalkKind::Cycle,
                "loop",
            );
        }
        let s = g.reduce_generating_set(s)?;
        if s.len() == 1 {
            let steps = vec![s.entries()[0].label.clone(); n];
            return certify(g, &s, steps, WalkKind::Cycle, "directed cycle");
        }
        let h = g.arc_forcing_subgroup(&s)?;
        if h.is_whole() {
            return Err(Error::InternalInvariantViolation(
                "arc-forcing subgroup of a minimal generating set of a p-group is the whole group"
                    .into(),
            ));
        }
        let next = self.below(n);
        let mut chain = |q: &Group, t: &GenSet, tr: &mut Trace| next.solve(q, t, tr);
        let mut last = |q: &Group, t: &GenSet, tr: &mut Trace| next.solve(q, t, tr);
        fold(
            g,
            &s,
            &h,
            SeriesMode::Nilpotent,
            WalkKind::Cycle,
            &mut chain,
            &mut last,
            trace,
        )
    }

    pub(super) fn below(self, order: usize) -> Depth {
        Depth {
            level: self.level + 1,
            limit: self.limit,
            order,
        }
    }
}
