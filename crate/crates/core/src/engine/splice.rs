use super::{certify, check_gens, Solver, Trace};
use crate::digraph::{verify_hamiltonian, CosetCayleyDigraph, Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::{Elem, GenSet, Group, QuotientGroup, Subgroup};

/// Hamiltonian path in `Cay(G;S)` from a path in `Cay(N;S₀)` and a path in
/// `Cay(G/N;S̄)`, for `N ◁ G`.
///
/// The result is `n_path, t₁, n_path, t₂, …, t_q, n_path`: each copy of the
/// `N`-path sweeps one coset of `N`, and the quotient path moves between
/// cosets. Labels of both paths are resolved through `s`.
pub fn product_splice(
    g: &Group,
    s: &GenSet,
    n: &Subgroup,
    n_path: &[String],
    q_path: &[String],
) -> Result<Walk> {
    check_gens(g, s)?;
    g.require_normal(n)?;
    for label in n_path.iter().chain(q_path) {
        s.element_of(label)?;
    }
    let mut steps = Vec::with_capacity((q_path.len() + 1) * (n_path.len() + 1));
    for j in 0..=q_path.len() {
        steps.extend_from_slice(n_path);
        if let Some(t) = q_path.get(j) {
            steps.push(t.clone());
        }
    }
    certify(g, s, steps, WalkKind::Path, "product splice")
}

/// The generating set of `H⁺/H⁻` induced by deviating a hamiltonian cycle of
/// `H⁺\Cay(G;S)` at one step.
#[derive(Clone, Debug)]
pub struct SkewedGenSet {
    /// `H⁺/H⁻`, with `H⁺` indexed as in [`Group::subgroup_as_group`].
    pub quotient: QuotientGroup,
    /// One entry per entry `s` of `S`, same label, element the image of
    /// `s₁⋯s_{j−1}·s·s_{j+1}⋯s_m`.
    pub entries: GenSet,
    /// Deviation step `j`, 1-based.
    pub pivot: usize,
    pub base: Walk,
}

/// Finds the pivot and the skewed generators for a base cycle.
///
/// With `p_i` the prefix products of the base cycle, the pivot is the
/// largest `j` such that `p_j H p_j⁻¹ ⊆ H⁺` and its image generates
/// `H⁺/H⁻`, where `H` is the arc-forcing subgroup. Paths only use `j = m`,
/// since deviating earlier would leave the tail of the identity block
/// unvisited.
pub fn skewed_generators(
    g: &Group,
    s: &GenSet,
    hplus: &Subgroup,
    hminus: &Subgroup,
    base: &Walk,
    kind: WalkKind,
) -> Result<SkewedGenSet> {
    check_gens(g, s)?;
    if !hminus.is_subset_of(hplus) {
        return Err(Error::PreconditionFailed(
            "H⁻ is not contained in H⁺".into(),
        ));
    }
    if let Some((conjugator, element)) = g.normality_witness(hminus, hplus) {
        return Err(Error::NotNormal {
            element,
            conjugator,
        });
    }
    let arc_forcing = g.arc_forcing_subgroup(s)?;
    if !arc_forcing.is_subset_of(hplus) {
        return Err(Error::PreconditionFailed(
            "arc-forcing subgroup is not contained in H⁺".into(),
        ));
    }
    let outer = CosetCayleyDigraph::new(g, hplus, s)?;
    if base.start() != 0 || !verify_hamiltonian(&outer, base, WalkKind::Cycle) {
        return Err(Error::PreconditionFailed(
            "base walk is not a hamiltonian cycle of H⁺\\Cay(G;S) from the identity coset".into(),
        ));
    }

    let step_elems: Vec<Elem> = base
        .steps()
        .iter()
        .map(|l| s.element_of(l))
        .collect::<Result<_>>()?;
    let m = step_elems.len();
    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(0);
    for &x in &step_elems {
        prefix.push(g.mul(*prefix.last().unwrap(), x));
    }

    let local = g.subgroup_as_group(hplus);
    let kernel_mask: Vec<bool> = hplus
        .members()
        .iter()
        .map(|&x| hminus.contains(x))
        .collect();
    let quotient = local.quotient(&Subgroup::from_mask(kernel_mask))?;
    let image = |x: Elem| hplus.local_index(x).map(|i| quotient.project(i));

    let candidates: Vec<usize> = match kind {
        WalkKind::Cycle => (1..=m).rev().collect(),
        WalkKind::Path => vec![m],
    };
    let pivot = candidates
        .into_iter()
        .find(|&j| {
            let pj = prefix[j];
            let images: Option<Vec<usize>> = arc_forcing
                .members()
                .iter()
                .map(|&h| image(g.mul(g.mul(pj, h), g.inv(pj))))
                .collect();
            images.is_some_and(|ims| quotient.group().generated_subgroup(ims).is_whole())
        })
        .ok_or(Error::NoPivotFound)?;

    // t(s) = p_{j-1} · s · s_{j+1}⋯s_m
    let head = prefix[pivot - 1];
    let tail = g.mul(g.inv(prefix[pivot]), prefix[m]);
    let mut entries = Vec::with_capacity(s.len());
    for e in s.entries() {
        let t = g.mul(g.mul(head, e.element), tail);
        let q = image(t).ok_or_else(|| {
            Error::InternalInvariantViolation(format!(
                "skewed generator for `{}` leaves H⁺",
                e.label
            ))
        })?;
        entries.push(crate::group::GenEntry::new(e.label.clone(), q));
    }
    Ok(SkewedGenSet {
        quotient,
        entries: GenSet::new(entries)?,
        pivot,
        base: base.clone(),
    })
}

/// Lifts a hamiltonian cycle of `H⁺\Cay(G;S)` to a hamiltonian cycle (or,
/// with trivial `H⁻`, a path) of `H⁻\Cay(G;S)`.
///
/// `solver` is asked for a walk of the requested kind in the Cayley digraph
/// of `H⁺/H⁻` on the skewed generators. If it returns `a₁,…,a_n`, the lift
/// is the concatenation of the blocks `s₁,…,s_{j−1}, a_t, s_{j+1},…,s_m`;
/// for paths the final block stops before its missing `a_n`.
#[allow(clippy::too_many_arguments)]
pub fn skewed_splice(
    g: &Group,
    s: &GenSet,
    hplus: &Subgroup,
    hminus: &Subgroup,
    base: &Walk,
    solver: &mut Solver<'_>,
    kind: WalkKind,
    trace: &mut Trace,
) -> Result<Walk> {
    if kind == WalkKind::Path && !hminus.is_trivial() {
        return Err(Error::PreconditionFailed(
            "path lifts need a trivial H⁻".into(),
        ));
    }
    let skewed = skewed_generators(g, s, hplus, hminus, base, kind)?;
    let target = CosetCayleyDigraph::new(g, hminus, s)?;
    let m = base.len();
    let j = skewed.pivot;
    let order = skewed.quotient.order();

    let steps: Vec<String> = if order == 1 {
        match kind {
            WalkKind::Cycle => base.steps().to_vec(),
            WalkKind::Path => base.trim_last()?.into_steps(),
        }
    } else {
        let q = skewed.quotient.group();
        let inner = solver(q, &skewed.entries, trace)?;
        let inner_digraph = CosetCayleyDigraph::cayley(q, &skewed.entries)?;
        if !verify_hamiltonian(&inner_digraph, &inner, kind) {
            return Err(Error::SpliceVerificationFailed(format!(
                "quotient solver returned a walk that is not a hamiltonian {kind}"
            )));
        }
        let base_steps = base.steps();
        let mut steps = Vec::with_capacity(m * order);
        for a in inner.steps() {
            steps.extend_from_slice(&base_steps[..j - 1]);
            steps.push(a.clone());
            steps.extend_from_slice(&base_steps[j..]);
        }
        if kind == WalkKind::Path {
            // The missing a_n: only j = m reaches here, so this is s₁…s_{m−1}.
            steps.extend_from_slice(&base_steps[..j - 1]);
        }
        steps
    };

    let w = target.walk_from_identity(steps)?;
    if !verify_hamiltonian(&target, &w, kind) {
        return Err(Error::SpliceVerificationFailed(format!(
            "skewed lift at pivot {j} of {m} is not a hamiltonian {kind}"
        )));
    }
    trace.skewed_splices += 1;
    if j != m {
        trace.inner_pivots += 1;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn steps(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn fixed(
        labels: &'static [&'static str],
    ) -> impl FnMut(&Group, &GenSet, &mut Trace) -> Result<Walk> {
        move |q: &Group, t: &GenSet, _: &mut Trace| {
            CosetCayleyDigraph::cayley(q, t)?.walk_from_identity(steps(labels))
        }
    }

    #[test]
    fn product_splice_on_z6() {
        let z6 = builtin::cyclic(6);
        let s = GenSet::parse(&z6, "2,3").unwrap();
        let n = z6.generated_subgroup([2]);
        let w = product_splice(&z6, &s, &n, &steps(&["2", "2"]), &steps(&["3"])).unwrap();
        assert_eq!(w.steps(), &steps(&["2", "2", "3", "2", "2"])[..]);
        assert_eq!(w.vertices(), &[0, 2, 4, 1, 3, 5]);
    }

    #[test]
    fn product_splice_degenerate_factors() {
        let z6 = builtin::cyclic(6);
        let s = GenSet::parse(&z6, "1").unwrap();
        let path = steps(&["1"; 5]);
        let trivial = Subgroup::trivial(&z6);
        let w = product_splice(&z6, &s, &trivial, &[], &path).unwrap();
        assert_eq!(w.steps(), &path[..]);
        let whole = Subgroup::whole(&z6);
        let w = product_splice(&z6, &s, &whole, &path, &[]).unwrap();
        assert_eq!(w.steps(), &path[..]);
    }

    #[test]
    fn product_splice_rejects_bad_input() {
        let z6 = builtin::cyclic(6);
        let s = GenSet::parse(&z6, "2,3").unwrap();
        let n = z6.generated_subgroup([2]);
        let err = product_splice(&z6, &s, &n, &steps(&["2"]), &steps(&["3"])).unwrap_err();
        assert_eq!(err.kind(), "SpliceVerificationFailed");
    }

    fn q8_setup() -> (Group, GenSet, Subgroup, Walk) {
        let q8 = builtin::quaternion8();
        let s = GenSet::parse(&q8, "i,j").unwrap();
        let hplus = q8.generated_subgroup([q8.find_label("k").unwrap()]);
        let base = CosetCayleyDigraph::new(&q8, &hplus, &s)
            .unwrap()
            .walk_from_identity(steps(&["i", "i"]))
            .unwrap();
        (q8, s, hplus, base)
    }

    #[test]
    fn q8_skewed_generators() {
        let (q8, s, hplus, base) = q8_setup();
        let trivial = Subgroup::trivial(&q8);
        let sk = skewed_generators(&q8, &s, &hplus, &trivial, &base, WalkKind::Path).unwrap();
        assert_eq!(sk.pivot, 2);
        // T = i·S = {-1, k}, read back through the local indexing of ⟨k⟩.
        let labels: Vec<&str> = sk
            .entries
            .elements()
            .iter()
            .map(|&c| q8.label(hplus.members()[sk.quotient.section(c)]))
            .collect();
        assert_eq!(labels, ["-1", "k"]);
    }

    #[test]
    fn q8_skewed_path_and_cycle() {
        let (q8, s, hplus, base) = q8_setup();
        let trivial = Subgroup::trivial(&q8);
        let mut trace = Trace::default();
        let mut solver = fixed(&["j", "j", "j"]);
        let w = skewed_splice(
            &q8,
            &s,
            &hplus,
            &trivial,
            &base,
            &mut solver,
            WalkKind::Path,
            &mut trace,
        )
        .unwrap();
        assert_eq!(w.steps(), &steps(&["i", "j", "i", "j", "i", "j", "i"])[..]);
        let labels: Vec<&str> = w.vertices().iter().map(|&v| q8.label(v)).collect();
        assert_eq!(labels, ["1", "i", "k", "j", "-1", "-i", "-k", "-j"]);

        let mut solver = fixed(&["j", "j", "j", "j"]);
        let w = skewed_splice(
            &q8,
            &s,
            &hplus,
            &trivial,
            &base,
            &mut solver,
            WalkKind::Cycle,
            &mut trace,
        )
        .unwrap();
        assert_eq!(
            w.steps(),
            &steps(&["i", "j", "i", "j", "i", "j", "i", "j"])[..]
        );
        assert_eq!(*w.vertices().last().unwrap(), 0);
        assert_eq!(trace.skewed_splices, 2);
    }

    #[test]
    fn trivial_quotient_keeps_base() {
        let (q8, s, hplus, base) = q8_setup();
        let mut solver = fixed(&[]);
        let mut trace = Trace::default();
        let w = skewed_splice(
            &q8,
            &s,
            &hplus,
            &hplus,
            &base,
            &mut solver,
            WalkKind::Cycle,
            &mut trace,
        )
        .unwrap();
        assert_eq!(w.steps(), base.steps());
    }

    #[test]
    fn bad_solver_output_is_caught() {
        let (q8, s, hplus, base) = q8_setup();
        let trivial = Subgroup::trivial(&q8);
        let mut solver = fixed(&["i", "i", "i"]);
        let err = skewed_splice(
            &q8,
            &s,
            &hplus,
            &trivial,
            &base,
            &mut solver,
            WalkKind::Path,
            &mut Trace::default(),
        )
        .unwrap_err();
        assert_eq!(err.kind(), "SpliceVerificationFailed");
    }

    #[test]
    fn missing_generation_has_no_pivot() {
        // H⁺ = Z4 = ⟨1⟩, H⁻ trivial, S = {1}: arc-forcing subgroup is trivial,
        // so no conjugate of it generates H⁺.
        let z4 = builtin::cyclic(4);
        let s = GenSet::parse(&z4, "1").unwrap();
        let whole = Subgroup::whole(&z4);
        let base = CosetCayleyDigraph::new(&z4, &whole, &s)
            .unwrap()
            .walk_from_identity(steps(&["1"]))
            .unwrap();
        let err = skewed_generators(
            &z4,
            &s,
            &whole,
            &Subgroup::trivial(&z4),
            &base,
            WalkKind::Cycle,
        )
        .unwrap_err();
        assert_eq!(err, Error::NoPivotFound);
    }
}
