//! Raw lattice presentations: nodes, generating arrows, relations and marks.
//!
//! A [`Presentation`] is what the parser and the built-in generators produce.
//! It is checked structurally as it is assembled (every name resolves, every
//! path is composable, relation sides are parallel). The semantic invariants
//! (acyclicity, reachability, a unique maximal class) are checked separately
//! by [`validate`](super::validate).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: NodeId,
    pub target: NodeId,
}

/// A nonempty composable sequence of generating arrows, stored in
/// diagrammatic order: the first arrow is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<ArrowId>);

impl Path {
    /// Wraps a sequence of arrows without checking composability.
    pub(crate) fn from_raw(arrows: Vec<ArrowId>) -> Self {
        Path(arrows)
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Path,
    pub rhs: Path,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("empty path")]
    EmptyPath,
    #[error("path is not composable: `{before}` ends at `{end}` but `{after}` starts at `{start}`")]
    NotComposable {
        before: String,
        after: String,
        end: String,
        start: String,
    },
    #[error("relation sides are not parallel: `{lhs}` runs {lhs_ends} but `{rhs}` runs {rhs_ends}")]
    MismatchedEndpoints {
        lhs: String,
        rhs: String,
        lhs_ends: String,
        rhs_ends: String,
    },
    #[error("relation index {0} out of range")]
    UnknownRelation(usize),
    #[error("no relation `{0}` to mark strict")]
    NoSuchRelation(String),
    #[error("initial node not declared")]
    MissingInit,
    #[error("final node not declared")]
    MissingFin,
}

/// A finite presentation of a directed category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    nodes: Vec<String>,
    node_index: HashMap<String, NodeId>,
    arrows: Vec<Arrow>,
    arrow_index: HashMap<String, ArrowId>,
    relations: Vec<Relation>,
    null_marks: Vec<Path>,
    init: Option<NodeId>,
    fin: Option<NodeId>,
}

impl Presentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str) -> Result<NodeId, StructuralError> {
        if self.node_index.contains_key(name) {
            return Err(StructuralError::DuplicateNode(name.to_string()));
        }
        let id = NodeId(self.nodes.len());
        self.nodes.push(name.to_string());
        self.node_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn set_init(&mut self, name: &str) -> Result<(), StructuralError> {
        self.init = Some(self.node(name)?);
        Ok(())
    }

    pub fn set_fin(&mut self, name: &str) -> Result<(), StructuralError> {
        self.fin = Some(self.node(name)?);
        Ok(())
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId, StructuralError> {
        if self.arrow_index.contains_key(name) {
            return Err(StructuralError::DuplicateArrow(name.to_string()));
        }
        let source = self.node(source)?;
        let target = self.node(target)?;
        let id = ArrowId(self.arrows.len());
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Adds the relation `lhs = rhs`; both sides are arrow names in
    /// diagrammatic order. Returns the relation index.
    pub fn add_relation<S: AsRef<str>>(&mut self, lhs: &[S], rhs: &[S], strict: bool) -> Result<usize, StructuralError> {
        let lhs = self.path(lhs)?;
        let rhs = self.path(rhs)?;
        self.push_relation(lhs, rhs, strict)
    }

    pub(crate) fn push_relation(&mut self, lhs: Path, rhs: Path, strict: bool) -> Result<usize, StructuralError> {
        let (ls, lt) = self.endpoints(&lhs);
        let (rs, rt) = self.endpoints(&rhs);
        if ls != rs || lt != rt {
            return Err(StructuralError::MismatchedEndpoints {
                lhs: self.path_string(&lhs),
                rhs: self.path_string(&rhs),
                lhs_ends: format!("{} -> {}", self.nodes[ls.0], self.nodes[lt.0]),
                rhs_ends: format!("{} -> {}", self.nodes[rs.0], self.nodes[rt.0]),
            });
        }
        self.relations.push(Relation { lhs, rhs, strict });
        Ok(self.relations.len() - 1)
    }

    pub fn add_null<S: AsRef<str>>(&mut self, path: &[S]) -> Result<(), StructuralError> {
        let path = self.path(path)?;
        self.null_marks.push(path);
        Ok(())
    }

    pub fn set_strict(&mut self, relation: usize, strict: bool) -> Result<(), StructuralError> {
        let rel = self
            .relations
            .get_mut(relation)
            .ok_or(StructuralError::UnknownRelation(relation))?;
        rel.strict = strict;
        Ok(())
    }

    /// Marks the relation with the given sides strict (either orientation).
    pub fn set_strict_by_sides<S: AsRef<str>>(&mut self, lhs: &[S], rhs: &[S]) -> Result<usize, StructuralError> {
        let lhs = self.path(lhs)?;
        let rhs = self.path(rhs)?;
        let found = self
            .relations
            .iter()
            .position(|r| (r.lhs == lhs && r.rhs == rhs) || (r.lhs == rhs && r.rhs == lhs));
        match found {
            Some(i) => {
                self.relations[i].strict = true;
                Ok(i)
            }
            None => Err(StructuralError::NoSuchRelation(format!(
                "{} = {}",
                self.path_string(&lhs),
                self.path_string(&rhs)
            ))),
        }
    }

    pub fn clear_strict(&mut self) {
        for r in &mut self.relations {
            r.strict = false;
        }
    }

    pub fn clear_nulls(&mut self) {
        self.null_marks.clear();
    }

    /// Resolves arrow names into a composable path.
    pub fn path<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, StructuralError> {
        if names.is_empty() {
            return Err(StructuralError::EmptyPath);
        }
        let mut arrows = Vec::with_capacity(names.len());
        for name in names {
            arrows.push(self.arrow(name.as_ref())?);
        }
        for pair in arrows.windows(2) {
            let (a, b) = (&self.arrows[pair[0].0], &self.arrows[pair[1].0]);
            if a.target != b.source {
                return Err(StructuralError::NotComposable {
                    before: a.name.clone(),
                    after: b.name.clone(),
                    end: self.nodes[a.target.0].clone(),
                    start: self.nodes[b.source.0].clone(),
                });
            }
        }
        Ok(Path(arrows))
    }

    pub fn node(&self, name: &str) -> Result<NodeId, StructuralError> {
        self.node_index
            .get(name)
            .copied()
            .ok_or_else(|| StructuralError::UnknownNode(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId, StructuralError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| StructuralError::UnknownArrow(name.to_string()))
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.nodes[id.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_name(&self, id: ArrowId) -> &str {
        &self.arrows[id.0].name
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn null_marks(&self) -> &[Path] {
        &self.null_marks
    }

    pub fn init(&self) -> Option<NodeId> {
        self.init
    }

    pub fn fin(&self) -> Option<NodeId> {
        self.fin
    }

    pub fn endpoints(&self, path: &Path) -> (NodeId, NodeId) {
        let first = &self.arrows[path.0[0].0];
        let last = &self.arrows[path.0[path.0.len() - 1].0];
        (first.source, last.target)
    }

    /// Arrow names joined with `.`, the path syntax used on the command line.
    pub fn path_string(&self, path: &Path) -> String {
        path.0
            .iter()
            .map(|a| self.arrows[a.0].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses the `a.b.c` path syntax.
    pub fn parse_dotted_path(&self, text: &str) -> Result<Path, StructuralError> {
        let names: Vec<&str> = text.split('.').filter(|s| !s.is_empty()).collect();
        self.path(&names)
    }

    pub(crate) fn out_arrows(&self, node: NodeId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == node)
            .map(|(i, _)| ArrowId(i))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} nodes, {} arrows, {} relations",
            self.nodes.len(),
            self.arrows.len(),
            self.relations.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2() -> Presentation {
        let mut p = Presentation::new();
        for n in ["a", "b", "c"] {
            p.add_node(n).unwrap();
        }
        p.add_arrow("f", "a", "b").unwrap();
        p.add_arrow("g", "b", "c").unwrap();
        p
    }

    #[test]
    fn arrow_to_unknown_node_is_rejected() {
        let mut p = l2();
        assert_eq!(
            p.add_arrow("h", "a", "q"),
            Err(StructuralError::UnknownNode("q".into()))
        );
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut p = l2();
        assert!(matches!(p.add_node("a"), Err(StructuralError::DuplicateNode(_))));
        assert!(matches!(p.add_arrow("f", "a", "c"), Err(StructuralError::DuplicateArrow(_))));
    }

    #[test]
    fn relation_sides_must_be_parallel() {
        let mut p = l2();
        p.add_arrow("h", "a", "c").unwrap();
        assert!(p.add_relation(&["f", "g"], &["h"], false).is_ok());
        let err = p.add_relation(&["f"], &["h"], false).unwrap_err();
        assert!(matches!(err, StructuralError::MismatchedEndpoints { .. }));
    }

    #[test]
    fn non_composable_path_is_rejected() {
        let p = l2();
        assert!(matches!(p.path(&["g", "f"]), Err(StructuralError::NotComposable { .. })));
        assert_eq!(p.path::<&str>(&[]), Err(StructuralError::EmptyPath));
    }

    #[test]
    fn dotted_paths_round_trip() {
        let p = l2();
        let path = p.parse_dotted_path("f.g").unwrap();
        assert_eq!(p.path_string(&path), "f.g");
    }
}
