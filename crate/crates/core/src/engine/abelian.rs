use super::{certify, check_gens, product_splice};
use crate::digraph::{Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::{GenSet, Group};

/// Hamiltonian path in `Cay(G;S)` for abelian `G`, starting at the identity.
///
/// If some entry generates `G` alone, the path just repeats it. Otherwise
/// let `N = ⟨S minus its last entry⟩`: `G/N` is cyclic on the image of the
/// last entry, so a path in `Cay(N; …)` and the repeated last entry combine
/// through [`product_splice`].
pub fn abelian_ham_path(g: &Group, s: &GenSet) -> Result<Walk> {
    check_gens(g, s)?;
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    g.require_generating(s)?;
    let steps = path_steps(g, s)?;
    certify(g, s, steps, WalkKind::Path, "abelian path")
}

fn path_steps(g: &Group, s: &GenSet) -> Result<Vec<String>> {
    let n = g.order();
    if n == 1 {
        return Ok(Vec::new());
    }
    if let Some(e) = s.entries().iter().find(|e| g.element_order(e.element) == n) {
        return Ok(vec![e.label.clone(); n - 1]);
    }
    let last = s.len() - 1;
    let head: Vec<usize> = (0..last).collect();
    let rest = s.select(&head);
    let sub = g.generated_subgroup(rest.elements());
    if sub.is_whole() {
        return path_steps(g, &rest);
    }
    let local = g.subgroup_as_group(&sub);
    let local_gens = rest.map_elements(|x| sub.local_index(x).expect("generator lies in ⟨S⟩"));
    let n_path = path_steps(&local, &local_gens)?;
    let last = &s.entries()[last];
    let q_path = vec![last.label.clone(); sub.index_in_parent() - 1];
    Ok(product_splice(g, s, &sub, &n_path, &q_path)?.into_steps())
}
