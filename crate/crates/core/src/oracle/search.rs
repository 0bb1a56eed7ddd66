use crate::digraph::{verify_hamiltonian, CosetCayleyDigraph, Walk, WalkKind};

/// Limit on the number of search-tree expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const fn nodes(max_nodes: u64) -> SearchBudget {
        SearchBudget { max_nodes }
    }

    pub const fn unlimited() -> SearchBudget {
        SearchBudget {
            max_nodes: u64::MAX,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(100_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Walk),
    /// The whole search tree was exhausted.
    NotFound,
    Timeout,
}

impl SearchResult {
    pub fn kind(&self) -> &'static str {
        match self {
            SearchResult::Found(_) => "found",
            SearchResult::NotFound => "not_found",
            SearchResult::Timeout => "timeout",
        }
    }
}

/// Backtracking search for a hamiltonian path or cycle.
///
/// Arcs are tried in generator order from the identity coset. Paths are
/// retried from every other start vertex when the identity fails, since
/// coset digraphs need not be vertex-transitive. A branch is cut as soon as
/// some unvisited vertex is unreachable from the current one through
/// unvisited vertices.
pub fn brute_force_ham(
    d: &CosetCayleyDigraph,
    kind: WalkKind,
    budget: SearchBudget,
) -> SearchResult {
    brute_force_ham_counted(d, kind, budget).0
}

/// [`brute_force_ham`] together with the number of expansions it used.
pub fn brute_force_ham_counted(
    d: &CosetCayleyDigraph,
    kind: WalkKind,
    budget: SearchBudget,
) -> (SearchResult, u64) {
    let mut search = Search {
        d,
        kind,
        budget: budget.max_nodes,
        nodes: 0,
        visited: vec![false; d.vertex_count()],
        path: Vec::with_capacity(d.vertex_count() + 1),
        steps: Vec::with_capacity(d.vertex_count()),
        queue: Vec::with_capacity(d.vertex_count()),
        seen: vec![false; d.vertex_count()],
    };
    let start = d.vertex_of(0);
    let starts: Vec<usize> = match kind {
        WalkKind::Cycle => vec![start],
        WalkKind::Path => std::iter::once(start)
            .chain((0..d.vertex_count()).filter(|&v| v != start))
            .collect(),
    };
    for s in starts {
        match search.run_from(s) {
            Step::Found => {
                let labels = d.gens().labels();
                let steps = search.steps.iter().map(|&e| labels[e].clone()).collect();
                let w = d.walk(s, steps).expect("search follows existing arcs");
                debug_assert!(verify_hamiltonian(d, &w, kind));
                return (SearchResult::Found(w), search.nodes);
            }
            Step::Timeout => return (SearchResult::Timeout, search.nodes),
            Step::Exhausted => {}
        }
    }
    (SearchResult::NotFound, search.nodes)
}

enum Step {
    Found,
    Exhausted,
    Timeout,
}

struct Search<'a> {
    d: &'a CosetCayleyDigraph,
    kind: WalkKind,
    budget: u64,
    nodes: u64,
    visited: Vec<bool>,
    path: Vec<usize>,
    steps: Vec<usize>,
    queue: Vec<usize>,
    seen: Vec<bool>,
}

impl Search<'_> {
    fn run_from(&mut self, start: usize) -> Step {
        self.visited.iter_mut().for_each(|v| *v = false);
        self.path.clear();
        self.steps.clear();
        self.visited[start] = true;
        self.path.push(start);
        self.extend(start)
    }

    fn extend(&mut self, v: usize) -> Step {
        if self.nodes >= self.budget {
            return Step::Timeout;
        }
        self.nodes += 1;
        let n = self.d.vertex_count();
        let degree = self.d.out_degree();
        if self.path.len() == n {
            return match self.kind {
                WalkKind::Path => Step::Found,
                WalkKind::Cycle => match (0..degree).find(|&e| self.d.arc(v, e) == self.path[0]) {
                    Some(e) => {
                        self.steps.push(e);
                        Step::Found
                    }
                    None => Step::Exhausted,
                },
            };
        }
        if !self.rest_reachable(v) {
            return Step::Exhausted;
        }
        let mut tried = Vec::with_capacity(degree);
        for e in 0..degree {
            let w = self.d.arc(v, e);
            if self.visited[w] || tried.contains(&w) {
                continue;
            }
            tried.push(w);
            self.visited[w] = true;
            self.path.push(w);
            self.steps.push(e);
            match self.extend(w) {
                Step::Exhausted => {}
                other => return other,
            }
            self.steps.pop();
            self.path.pop();
            self.visited[w] = false;
        }
        Step::Exhausted
    }

    /// Whether every unvisited vertex can be reached from `v` through
    /// unvisited vertices.
    fn rest_reachable(&mut self, v: usize) -> bool {
        let remaining = self.d.vertex_count() - self.path.len();
        self.seen.copy_from_slice(&self.visited);
        self.queue.clear();
        self.queue.push(v);
        let mut reached = 0;
        while let Some(x) = self.queue.pop() {
            for e in 0..self.d.out_degree() {
                let y = self.d.arc(x, e);
                if !self.seen[y] {
                    self.seen[y] = true;
                    reached += 1;
                    self.queue.push(y);
                }
            }
        }
        reached == remaining
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::group::{GenSet, Subgroup};

    fn digraph(name: &str, gens: &str) -> CosetCayleyDigraph {
        let g = builtin::parse(name).unwrap();
        let s = GenSet::parse(&g, gens).unwrap();
        CosetCayleyDigraph::cayley(&g, &s).unwrap()
    }

    #[test]
    fn z4_cycle() {
        let d = digraph("z4", "1");
        let SearchResult::Found(w) = brute_force_ham(&d, WalkKind::Cycle, SearchBudget::default())
        else {
            panic!("expected a cycle");
        };
        assert_eq!(w.steps(), ["1", "1", "1", "1"]);
    }

    #[test]
    fn q8_path_verifies() {
        let d = digraph("q8", "i,j");
        let SearchResult::Found(w) = brute_force_ham(&d, WalkKind::Path, SearchBudget::default())
        else {
            panic!("expected a path");
        };
        assert!(verify_hamiltonian(&d, &w, WalkKind::Path));
    }

    #[test]
    fn zero_budget_times_out() {
        let d = digraph("z4", "1");
        assert_eq!(
            brute_force_ham(&d, WalkKind::Path, SearchBudget::nodes(0)),
            SearchResult::Timeout
        );
    }

    #[test]
    fn impossible_cycle_is_exhausted() {
        // Z6 on {2}: disconnected, so neither walk exists.
        let d = digraph("z6", "2");
        assert_eq!(
            brute_force_ham(&d, WalkKind::Cycle, SearchBudget::default()),
            SearchResult::NotFound
        );
        assert_eq!(
            brute_force_ham(&d, WalkKind::Path, SearchBudget::default()),
            SearchResult::NotFound
        );
    }

    #[test]
    fn coset_digraph_paths_try_other_starts() {
        // Z4 mod ⟨2⟩ on {1}: two vertices, path from the identity coset works.
        let g = builtin::cyclic(4);
        let s = GenSet::parse(&g, "1").unwrap();
        let d = CosetCayleyDigraph::new(&g, &g.generated_subgroup([2]), &s).unwrap();
        assert!(matches!(
            brute_force_ham(&d, WalkKind::Cycle, SearchBudget::default()),
            SearchResult::Found(_)
        ));
        let d = CosetCayleyDigraph::new(&g, &Subgroup::whole(&g), &s).unwrap();
        assert!(matches!(
            brute_force_ham(&d, WalkKind::Path, SearchBudget::default()),
            SearchResult::Found(_)
        ));
    }
}
