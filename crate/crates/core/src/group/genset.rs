use std::collections::HashSet;

use super::{Elem, Group};
use crate::error::{Error, Result};

/// One labeled generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenEntry {
    pub label: String,
    pub element: Elem,
}

impl GenEntry {
    pub fn new(label: impl Into<String>, element: Elem) -> GenEntry {
        GenEntry {
            label: label.into(),
            element,
        }
    }
}

/// An ordered sequence of labeled generators.
///
/// Labels are unique but elements may repeat: quotient generating sets are
/// multisets, and each entry becomes its own arc in a Cayley digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSet {
    entries: Vec<GenEntry>,
}

impl GenSet {
    pub fn new(entries: Vec<GenEntry>) -> Result<GenSet> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        Ok(GenSet { entries })
    }

    /// Entries labeled by the group's own element labels.
    pub fn from_elements(g: &Group, elems: &[Elem]) -> Result<GenSet> {
        let entries = elems
            .iter()
            .map(|&x| {
                if x >= g.order() {
                    Err(Error::InvalidInput(format!("element {x} out of range")))
                } else {
                    Ok(GenEntry::new(g.label(x), x))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GenSet::new(entries)
    }

    /// Parses a comma-separated list of element labels or indices.
    ///
    /// Commas inside parentheses do not split, so tuple labels such as
    /// `(i,1),(j,0)` work. A token is matched against labels first and
    /// only then read as a numeric index.
    pub fn parse(g: &Group, text: &str) -> Result<GenSet> {
        let mut elems = Vec::new();
        for token in split_top_level(text) {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            let x = match g.find_label(token) {
                Some(x) => x,
                None => match token.parse::<usize>() {
                    Ok(i) if i < g.order() => i,
                    _ => return Err(Error::UnknownLabel(token.to_string())),
                },
            };
            elems.push(x);
        }
        GenSet::from_elements(g, &elems)
    }

    pub fn entries(&self) -> &[GenEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.entries.iter().map(|e| e.element).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }

    pub fn element_of(&self, label: &str) -> Result<Elem> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| e.element)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Entries at the given positions, in that order.
    pub fn select(&self, positions: &[usize]) -> GenSet {
        GenSet {
            entries: positions.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Same labels, elements replaced by `f(element)`.
    pub fn map_elements(&self, mut f: impl FnMut(Elem) -> Elem) -> GenSet {
        GenSet {
            entries: self
                .entries
                .iter()
                .map(|e| GenEntry::new(e.label.clone(), f(e.element)))
                .collect(),
        }
    }

    pub(crate) fn check_range(&self, g: &Group) -> Result<()> {
        match self.entries.iter().find(|e| e.element >= g.order()) {
            Some(e) => Err(Error::InvalidInput(format!(
                "generator `{}` is element {} but the group has order {}",
                e.label,
                e.element,
                g.order()
            ))),
            None => Ok(()),
        }
    }
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl Group {
    /// Drops redundant entries: entries are scanned in order and each one
    /// is deleted if the remaining entries still generate `G`. A single pass
    /// leaves a minimal generating set.
    pub fn reduce_generating_set(&self, s: &GenSet) -> Result<GenSet> {
        s.check_range(self)?;
        self.require_generating(s)?;
        let mut keep: Vec<bool> = vec![true; s.len()];
        for i in 0..s.len() {
            keep[i] = false;
            let rest = s
                .entries
                .iter()
                .zip(&keep)
                .filter_map(|(e, &k)| k.then_some(e.element));
            if !self.generated_subgroup(rest).is_whole() {
                keep[i] = true;
            }
        }
        Ok(GenSet {
            entries: s
                .entries
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(e, _)| e.clone())
                .collect(),
        })
    }

    /// Whether no single entry can be removed without losing generation.
    pub fn is_minimal_generating_set(&self, s: &GenSet) -> bool {
        let elems = s.elements();
        self.generated_subgroup(elems.iter().copied()).is_whole()
            && (0..elems.len()).all(|i| {
                !self
                    .generated_subgroup(
                        elems
                            .iter()
                            .enumerate()
                            .filter_map(|(j, &x)| (j != i).then_some(x)),
                    )
                    .is_whole()
            })
    }
}
