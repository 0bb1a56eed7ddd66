//! Cayley and coset-quotient multidigraphs, walks on them, and the
//! hamiltonicity checker.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, GenSet, Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Path,
    Cycle,
}

impl std::fmt::Display for WalkKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WalkKind::Path => "path",
            WalkKind::Cycle => "cycle",
        })
    }
}

/// `H\Cay(G;S)`: vertices are the right cosets `Hg`, with an arc
/// `Hg → Hgs` for every entry `s` of `S`. A trivial `H` gives `Cay(G;S)`.
///
/// Arcs are keyed by generator entry, so equal elements under different
/// labels give parallel arcs.
#[derive(Clone, Debug)]
pub struct CosetCayleyDigraph {
    gens: GenSet,
    coset_of: Vec<usize>,
    reps: Vec<Elem>,
    vertex_labels: Vec<String>,
    arcs: Vec<usize>,
}

impl CosetCayleyDigraph {
    pub fn new(g: &Group, h: &Subgroup, s: &GenSet) -> Result<CosetCayleyDigraph> {
        if s.is_empty() {
            return Err(Error::EmptyGenSet);
        }
        s.check_range(g)?;
        if h.parent_order() != g.order() {
            return Err(Error::InvalidInput(
                "subgroup belongs to a different group".into(),
            ));
        }
        let cosets = g.right_cosets(h);
        let reps: Vec<Elem> = (0..cosets.len())
            .map(|c| cosets.representative(c))
            .collect();
        let elems = s.elements();
        let mut arcs = Vec::with_capacity(reps.len() * elems.len());
        for &r in &reps {
            for &x in &elems {
                arcs.push(cosets.coset_of(g.mul(r, x)));
            }
        }
        let vertex_labels = reps
            .iter()
            .map(|&r| {
                if h.is_trivial() {
                    g.label(r).to_string()
                } else {
                    format!("H{}", g.label(r))
                }
            })
            .collect();
        Ok(CosetCayleyDigraph {
            gens: s.clone(),
            coset_of: cosets.element_map().to_vec(),
            reps,
            vertex_labels,
            arcs,
        })
    }

    /// `Cay(G;S)`.
    pub fn cayley(g: &Group, s: &GenSet) -> Result<CosetCayleyDigraph> {
        Self::new(g, &Subgroup::trivial(g), s)
    }

    pub fn vertex_count(&self) -> usize {
        self.reps.len()
    }

    pub fn out_degree(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    /// Vertex containing element `g`.
    pub fn vertex_of(&self, g: Elem) -> usize {
        self.coset_of[g]
    }

    pub fn representative(&self, v: usize) -> Elem {
        self.reps[v]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    /// Head of the arc leaving `v` along generator entry `entry`.
    #[inline]
    pub fn arc(&self, v: usize, entry: usize) -> usize {
        self.arcs[v * self.gens.len() + entry]
    }

    pub fn arc_by_label(&self, v: usize, label: &str) -> Result<usize> {
        let e = self
            .gens
            .position(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(self.arc(v, e))
    }

    /// The walk from `start` following `steps`.
    pub fn walk(&self, start: usize, steps: Vec<String>) -> Result<Walk> {
        if start >= self.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "start vertex {start} out of range"
            )));
        }
        let mut vertices = Vec::with_capacity(steps.len() + 1);
        vertices.push(start);
        let mut v = start;
        for s in &steps {
            v = self.arc_by_label(v, s)?;
            vertices.push(v);
        }
        Ok(Walk {
            start,
            steps,
            vertices,
        })
    }

    /// The walk from the identity coset.
    pub fn walk_from_identity(&self, steps: Vec<String>) -> Result<Walk> {
        self.walk(0, steps)
    }

    /// Every vertex reaches every other vertex.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        let k = self.out_degree();
        let mut reverse = vec![Vec::new(); n];
        for v in 0..n {
            for e in 0..k {
                reverse[self.arc(v, e)].push(v);
            }
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(v) = stack.pop() {
                let next: Vec<usize> = if forward {
                    (0..k).map(|e| self.arc(v, e)).collect()
                } else {
                    reverse[v].clone()
                };
                for w in next {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// DOT rendering with one edge per arc in vertex-then-entry order.
    /// Arcs traversed by `highlight` are drawn bold.
    pub fn to_dot(&self, highlight: Option<&Walk>) -> String {
        let used: BTreeSet<(usize, usize)> = highlight
            .map(|w| {
                w.vertices
                    .iter()
                    .zip(&w.steps)
                    .filter_map(|(&v, s)| self.gens.position(s).map(|e| (v, e)))
                    .collect()
            })
            .unwrap_or_default();
        let mut out = String::from("digraph cayley {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v} [label={}];", quote(&self.vertex_labels[v]));
        }
        for v in 0..self.vertex_count() {
            for (e, entry) in self.gens.entries().iter().enumerate() {
                let style = if used.contains(&(v, e)) {
                    ", style=bold, penwidth=2"
                } else {
                    ""
                };
                let _ = writeln!(
                    out,
                    "  {v} -> {} [label={}{style}];",
                    self.arc(v, e),
                    quote(&entry.label)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A walk: a start vertex and a sequence of generator labels, together with
/// the vertices it visits (`vertices.len() == steps.len() + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: usize,
    steps: Vec<String>,
    vertices: Vec<usize>,
}

impl Walk {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn steps(&self) -> &[String] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<String> {
        self.steps
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The walk with its final step deleted.
    pub fn trim_last(&self) -> Result<Walk> {
        if self.steps.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let k = self.steps.len() - 1;
        Ok(Walk {
            start: self.start,
            steps: self.steps[..k].to_vec(),
            vertices: self.vertices[..=k].to_vec(),
        })
    }
}

/// Hamiltonicity check, recomputing the vertex sequence from the digraph.
///
/// A path visits every vertex exactly once. A cycle has `|V|` steps, its
/// first `|V|` vertices are distinct and it ends where it started; so a
/// single loop on a one-vertex digraph and a there-and-back walk on two
/// vertices both count as cycles. The empty walk on a one-vertex digraph is
/// a path.
pub fn verify_hamiltonian(d: &CosetCayleyDigraph, w: &Walk, kind: WalkKind) -> bool {
    let Ok(replayed) = d.walk(w.start, w.steps.clone()) else {
        return false;
    };
    if replayed.vertices != w.vertices {
        return false;
    }
    let n = d.vertex_count();
    let distinct = |vs: &[usize]| {
        let mut seen = vec![false; n];
        vs.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    };
    match kind {
        WalkKind::Path => w.vertices.len() == n && distinct(&w.vertices),
        WalkKind::Cycle => {
            w.steps.len() == n && distinct(&w.vertices[..n]) && w.vertices[n] == w.start
        }
    }
}
