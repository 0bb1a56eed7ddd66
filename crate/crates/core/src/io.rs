//! JSON formats for groups and walks.
//!
//! A group file is one of
//!
//! ```json
//! {"name": "z3", "labels": ["0", "1", "2"], "table": [[0,1,2],[1,2,0],[2,0,1]]}
//! {"name": "s3", "degree": 3, "perm_gens": [[1,0,2],[1,2,0]], "cap": 720}
//! ```
//!
//! Tables are indexed by position in `labels`; `table[a][b]` is the index of
//! `a·b`. Permutations are image lists acting on the right, and `cap` bounds
//! the order of the generated group (optional, defaulting to the caller's
//! limit). Unknown fields are rejected.
//!
//! A walk file records the walk together with where it came from, so it can
//! be re-checked on its own:
//!
//! ```json
//! {"start": 0, "steps": ["1","1"], "vertices": [0,1,2], "kind": "path",
//!  "verified": true, "group": "builtin:z3", "gens": ["1"]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::builtin;
use crate::digraph::{Walk, WalkKind};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table(TableGroup),
    Permutations(PermutationGroup),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableGroup {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationGroup {
    pub name: String,
    pub degree: usize,
    pub perm_gens: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl GroupFile {
    pub fn name(&self) -> &str {
        match self {
            GroupFile::Table(t) => &t.name,
            GroupFile::Permutations(p) => &p.name,
        }
    }

    /// Builds the group; `max_order` applies to both kinds.
    pub fn build(&self, max_order: usize) -> Result<Group> {
        match self {
            GroupFile::Table(t) => {
                if t.labels.len() > max_order {
                    return Err(Error::OrderCapExceeded { cap: max_order });
                }
                Group::from_table(&t.table, t.labels.clone())
            }
            GroupFile::Permutations(p) => {
                if let Some(bad) = p.perm_gens.iter().find(|g| g.len() != p.degree) {
                    return Err(Error::InvalidInput(format!(
                        "permutation of length {} in a group of degree {}",
                        bad.len(),
                        p.degree
                    )));
                }
                let cap = p.cap.map_or(max_order, |c| c.min(max_order));
                Group::from_permutations(&p.perm_gens, cap)
            }
        }
    }

    /// The table form of `g`.
    pub fn from_group(name: &str, g: &Group) -> GroupFile {
        GroupFile::Table(TableGroup {
            name: name.to_string(),
            labels: g.labels().to_vec(),
            table: g.table(),
        })
    }
}

pub fn parse_group_json(text: &str) -> Result<GroupFile> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("group file: {e}")))
}

/// Loads a group from `builtin:NAME` or a JSON file path.
pub fn load_group(source: &str, max_order: usize) -> Result<Group> {
    if source.starts_with("builtin:") {
        return builtin::parse_with_cap(source, max_order);
    }
    let text = read(Path::new(source))?;
    parse_group_json(&text)?.build(max_order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkFile {
    pub start: usize,
    pub steps: Vec<String>,
    pub vertices: Vec<usize>,
    pub kind: WalkKind,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<String>>,
}

impl WalkFile {
    pub fn new(w: &Walk, kind: WalkKind, verified: bool) -> WalkFile {
        WalkFile {
            start: w.start(),
            steps: w.steps().to_vec(),
            vertices: w.vertices().to_vec(),
            kind,
            verified,
            group: None,
            gens: None,
        }
    }

    pub fn with_source(mut self, group: &str, gens: Vec<String>) -> WalkFile {
        self.group = Some(group.to_string());
        self.gens = Some(gens);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("walk serializes")
    }

    pub fn parse(text: &str) -> Result<WalkFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("walk file: {e}")))
    }

    pub fn load(path: &Path) -> Result<WalkFile> {
        WalkFile::parse(&read(path)?)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::CosetCayleyDigraph;
    use crate::group::GenSet;

    #[test]
    fn table_round_trip() {
        let q8 = builtin::quaternion8();
        let file = GroupFile::from_group("q8", &q8);
        let text = serde_json::to_string(&file).unwrap();
        let back = parse_group_json(&text).unwrap();
        assert_eq!(back, file);
        let g = back.build(100).unwrap();
        assert_eq!(g.table(), q8.table());
        assert_eq!(g.labels(), q8.labels());
    }

    #[test]
    fn permutation_file() {
        let f =
            parse_group_json(r#"{"name":"s3","degree":3,"perm_gens":[[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(f.name(), "s3");
        assert_eq!(f.build(100).unwrap().order(), 6);
        let f = parse_group_json(
            r#"{"name":"s4","degree":4,"perm_gens":[[1,0,2,3],[1,2,3,0]],"cap":10}"#,
        )
        .unwrap();
        assert_eq!(
            f.build(100).unwrap_err(),
            Error::OrderCapExceeded { cap: 10 }
        );
    }

    #[test]
    fn rejects_unknown_fields_and_bad_tables() {
        let err = parse_group_json(r#"{"name":"z1","labels":["e"],"table":[[0]],"extra":1}"#)
            .unwrap_err();
        assert!(err.is_format_error());
        let bad =
            parse_group_json(r#"{"name":"x","labels":["a","b"],"table":[[0,1],[0,1]]}"#).unwrap();
        assert_eq!(bad.build(100).unwrap_err().kind(), "NotAGroup");
    }

    #[test]
    fn walk_round_trip() {
        let z3 = builtin::cyclic(3);
        let s = GenSet::parse(&z3, "1").unwrap();
        let d = CosetCayleyDigraph::cayley(&z3, &s).unwrap();
        let w = d.walk_from_identity(vec!["1".into(), "1".into()]).unwrap();
        let f = WalkFile::new(&w, WalkKind::Path, true).with_source("builtin:z3", s.labels());
        let back = WalkFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.vertices, [0, 1, 2]);
        assert!(WalkFile::parse(r#"{"start":0}"#).is_err());
    }

    #[test]
    fn builtin_sources() {
        assert_eq!(
            load_group("builtin:product:q8,z3", 2048).unwrap().order(),
            24
        );
        assert_eq!(
            load_group("builtin:z100", 50).unwrap_err(),
            Error::OrderCapExceeded { cap: 50 }
        );
        assert!(load_group("/nonexistent/group.json", 50)
            .unwrap_err()
            .is_format_error());
    }
}
