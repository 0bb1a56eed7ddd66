//! Subnormal series `H = H₁ ◁ H₂ ◁ … ◁ H_m = H^G` in which every section
//! `H_{k+1}/H_k` has prime-power order and is generated by the image of a
//! single conjugate `g⁻¹Hg`.
//!
//! Every existential choice is resolved by a least-index scan, so the
//! series is a deterministic function of `(G, H, mode)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{prime_power, Elem, Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesMode {
    /// `G` is nilpotent.
    Nilpotent,
    /// `H^G` is a p-group; `G` itself is unrestricted.
    PGroupClosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalSeries {
    chain: Vec<Subgroup>,
    conjugators: Vec<Elem>,
    ledger: Vec<Vec<Elem>>,
    ledger_fallbacks: usize,
}

impl SubnormalSeries {
    /// `H₁ ⊂ … ⊂ H_m`.
    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn base(&self) -> &Subgroup {
        &self.chain[0]
    }

    /// `H_m = H^G`.
    pub fn top(&self) -> &Subgroup {
        self.chain.last().expect("non-empty chain")
    }

    /// `conjugators()[k]` is the `g` with `H_{k+2} = ⟨H_{k+1}, g⁻¹Hg⟩`.
    pub fn conjugators(&self) -> &[Elem] {
        &self.conjugators
    }

    /// Elements `c` whose conjugates `c⁻¹Hc` generate `H_{k+1}` (0-based `k`).
    pub fn ledger(&self, k: usize) -> &[Elem] {
        &self.ledger[k]
    }

    /// `|H_{k+1}/H_k|` for each step.
    pub fn quotient_orders(&self) -> Vec<usize> {
        self.chain
            .windows(2)
            .map(|w| w[1].order() / w[0].order())
            .collect()
    }

    /// Times the ledger scan failed and a full scan of `G` was needed.
    pub fn ledger_fallbacks(&self) -> usize {
        self.ledger_fallbacks
    }

    /// Rechecks every structural property from scratch: endpoints,
    /// `H_k ◁ H_{k+1}` with strict growth, prime-power section orders,
    /// generation of each section by its conjugate, and ledger consistency.
    pub fn validate(&self, g: &Group) -> Result<()> {
        let fail = |msg: String| Err(Error::InternalInvariantViolation(msg));
        let h = self.base();
        if *self.top() != g.normal_closure(h) {
            return fail("series does not end at the normal closure".into());
        }
        if self.conjugators.len() + 1 != self.chain.len() || self.ledger.len() != self.chain.len() {
            return fail("conjugator or ledger length mismatch".into());
        }
        for (k, w) in self.chain.windows(2).enumerate() {
            let (lo, hi) = (&w[0], &w[1]);
            if lo.order() >= hi.order() {
                return fail(format!("step {k} does not grow"));
            }
            if !g.is_normal_in(lo, hi) {
                return fail(format!("H_{} is not normal in H_{}", k + 1, k + 2));
            }
            if prime_power((hi.order() / lo.order()) as u64).is_none() {
                return fail(format!("section {k} does not have prime-power order"));
            }
            let c = self.conjugators[k];
            let conj = h.members().iter().map(|&x| g.conj(x, c));
            if g.generated_subgroup(lo.members().iter().copied().chain(conj)) != *hi {
                return fail(format!("section {k} is not generated by its conjugate"));
            }
        }
        for (k, hk) in self.chain.iter().enumerate() {
            let gens = self.ledger[k]
                .iter()
                .flat_map(|&c| h.members().iter().map(move |&x| (x, c)))
                .map(|(x, c)| g.conj(x, c));
            if g.generated_subgroup(gens) != *hk {
                return fail(format!("ledger of H_{} does not generate it", k + 1));
            }
        }
        Ok(())
    }
}

fn conjugate_inside(g: &Group, h: &Subgroup, c: Elem, target: &Subgroup) -> bool {
    h.members().iter().all(|&x| target.contains(g.conj(x, c)))
}

/// Builds the series for `H ≤ G`.
///
/// In `Nilpotent` mode each step picks the least `x` normalizing
/// `N_G(H_k)` but outside it, takes the first ledger element `c` with
/// `(cx)⁻¹H(cx) ⊄ H_k`, and then replaces `cx` by its least-index prime
/// component that still leaves `H_k`. In `PGroupClosure` mode the same step
/// runs inside `H^G` while `H_k` is not normal there; once it is, the least
/// `g ∈ G` with `g⁻¹Hg ⊄ H_k` is used.
pub fn build_subnormal_series(
    g: &Group,
    h: &Subgroup,
    mode: SeriesMode,
) -> Result<SubnormalSeries> {
    if h.parent_order() != g.order() {
        return Err(Error::InvalidInput(
            "subgroup belongs to a different group".into(),
        ));
    }
    let closure = g.normal_closure(h);
    let whole = Subgroup::whole(g);
    let primes = match mode {
        SeriesMode::Nilpotent => {
            let d = g.sylow_decomposition();
            if !d.nilpotent {
                return Err(Error::PreconditionFailed(
                    "nilpotent mode needs a nilpotent group".into(),
                ));
            }
            d.primes()
        }
        SeriesMode::PGroupClosure => {
            if closure.order() > 1 && prime_power(closure.order() as u64).is_none() {
                return Err(Error::PreconditionFailed(format!(
                    "normal closure has order {}, not a prime power",
                    closure.order()
                )));
            }
            Vec::new()
        }
    };

    let mut series = SubnormalSeries {
        chain: vec![h.clone()],
        conjugators: Vec::new(),
        ledger: vec![vec![0]],
        ledger_fallbacks: 0,
    };
    while *series.top() != closure {
        let hk = series.top().clone();
        let ledger = series.ledger.last().unwrap().clone();
        let next = match mode {
            SeriesMode::Nilpotent => {
                let (c, fell_back) = nilpotent_step(g, &whole, h, &hk, &ledger)?;
                series.ledger_fallbacks += fell_back as usize;
                sylow_adjust(g, h, &hk, c, &primes)
            }
            SeriesMode::PGroupClosure if !g.is_normal_in(&hk, &closure) => {
                let (c, fell_back) = nilpotent_step(g, &closure, h, &hk, &ledger)?;
                series.ledger_fallbacks += fell_back as usize;
                c
            }
            SeriesMode::PGroupClosure => g
                .elements()
                .find(|&c| !conjugate_inside(g, h, c, &hk))
                .ok_or_else(|| {
                    Error::InternalInvariantViolation("no conjugate of H leaves H_k".into())
                })?,
        };
        let grown = g.generated_subgroup(
            hk.members()
                .iter()
                .copied()
                .chain(h.members().iter().map(|&x| g.conj(x, next))),
        );
        let mut ledger = ledger;
        ledger.push(next);
        series.chain.push(grown);
        series.conjugators.push(next);
        series.ledger.push(ledger);
    }
    series.validate(g)?;
    Ok(series)
}

/// One step inside the nilpotent group `ambient`. Returns the conjugator
/// and whether the ledger scan had to fall back to a full scan.
fn nilpotent_step(
    g: &Group,
    ambient: &Subgroup,
    h: &Subgroup,
    hk: &Subgroup,
    ledger: &[Elem],
) -> Result<(Elem, bool)> {
    let normalizer = g.normalizer_within(ambient, hk);
    let x = ambient
        .members()
        .iter()
        .copied()
        .find(|&x| !normalizer.contains(x) && g.normalizes(x, &normalizer))
        .ok_or_else(|| {
            Error::InternalInvariantViolation(
                "normalizer of H_k is self-normalizing in a nilpotent group".into(),
            )
        })?;

    let mut sorted = ledger.to_vec();
    sorted.sort_unstable();
    if let Some(c) = sorted
        .iter()
        .map(|&c| g.mul(c, x))
        .find(|&c| !conjugate_inside(g, h, c, hk))
    {
        return Ok((c, false));
    }
    // Conjugates of H_k by x, i.e. x⁻¹ H_k x.
    let mut target = vec![false; g.order()];
    for &y in hk.members() {
        target[g.conj(y, x)] = true;
    }
    let target = Subgroup::from_mask(target);
    g.elements()
        .find(|&c| !conjugate_inside(g, h, c, hk) && conjugate_inside(g, h, c, &target))
        .map(|c| (c, true))
        .ok_or_else(|| Error::InternalInvariantViolation("no conjugate of H found for step".into()))
}

fn sylow_adjust(g: &Group, h: &Subgroup, hk: &Subgroup, c: Elem, primes: &[u64]) -> Elem {
    primes
        .iter()
        .map(|&p| g.prime_component(c, p))
        .filter(|&ci| !conjugate_inside(g, h, ci, hk))
        .min()
        .unwrap_or(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn normal_subgroup_gives_single_term() {
        let q8 = builtin::quaternion8();
        let h = q8.generated_subgroup([q8.find_label("k").unwrap()]);
        let s = build_subnormal_series(&q8, &h, SeriesMode::Nilpotent).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.conjugators().is_empty());
        assert_eq!(s.ledger(0), &[0]);
    }

    #[test]
    fn dihedral_reflection() {
        let d4 = builtin::dihedral(8).unwrap();
        let l = |s: &str| d4.find_label(s).unwrap();
        let h = d4.generated_subgroup([l("r3f")]);
        let s = build_subnormal_series(&d4, &h, SeriesMode::Nilpotent).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.chain()[0], h);
        let mut top = vec![l("e"), l("r2"), l("rf"), l("r3f")];
        top.sort_unstable();
        assert_eq!(s.top().members(), top);
        assert_eq!(s.conjugators(), &[l("r")]);
        assert_eq!(s.quotient_orders(), vec![2]);
        assert_eq!(s.ledger_fallbacks(), 0);
    }

    #[test]
    fn pgroup_closure_on_symmetric_group() {
        let s3 = builtin::symmetric(3).unwrap();
        let h = s3.generated_subgroup([s3.find_label("(0 1 2)").unwrap()]);
        let s = build_subnormal_series(&s3, &h, SeriesMode::PGroupClosure).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(
            build_subnormal_series(&s3, &h, SeriesMode::Nilpotent)
                .unwrap_err()
                .kind(),
            "PreconditionFailed"
        );
        let t = s3.generated_subgroup([s3.find_label("(0 1)").unwrap()]);
        assert_eq!(
            build_subnormal_series(&s3, &t, SeriesMode::PGroupClosure)
                .unwrap_err()
                .kind(),
            "PreconditionFailed"
        );
    }

    #[test]
    fn every_cyclic_subgroup_of_small_two_groups() {
        for name in ["d16", "q16", "m16", "product:d8,z2", "product:q8,z2"] {
            let g = builtin::parse(name).unwrap();
            for x in g.elements() {
                let h = g.generated_subgroup([x]);
                let s = build_subnormal_series(&g, &h, SeriesMode::Nilpotent).unwrap();
                s.validate(&g).unwrap();
                assert_eq!(s.ledger_fallbacks(), 0, "{name} {x}");
                // The two modes agree on validity when both apply.
                build_subnormal_series(&g, &h, SeriesMode::PGroupClosure)
                    .unwrap()
                    .validate(&g)
                    .unwrap();
                assert!(s.len() <= (g.normal_closure(&h).order() as f64).log2() as usize + 1);
            }
        }
    }

    #[test]
    fn mixed_prime_nilpotent_group() {
        let g = builtin::parse("product:d8,z3,h3").unwrap();
        for x in [1, 5, 37, 100, 211] {
            let h = g.generated_subgroup([x]);
            build_subnormal_series(&g, &h, SeriesMode::Nilpotent)
                .unwrap()
                .validate(&g)
                .unwrap();
        }
    }
}
