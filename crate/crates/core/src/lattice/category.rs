//! Morphism classes of a presented lattice.
//!
//! Every path between two nodes is enumerated (finitely many, since the
//! generating graph is acyclic) and a union-find is saturated by rewriting
//! each occurrence of a relation side as a contiguous subpath. The resulting
//! classes are the morphisms of the category; chains of composable classes
//! index the vertices of the W-complex.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::presentation::{ArrowId, NodeId, Path, Presentation, StructuralError};
use super::validate::{validate, ValidationReport};

/// Upper bound on the number of enumerated paths.
const PATH_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub id: ClassId,
    pub source: NodeId,
    pub target: NodeId,
    /// Lexicographically least member (compared by arrow names).
    pub representative: Path,
}

/// A composable sequence of morphism classes, in diagrammatic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(pub Vec<ClassId>);

impl Chain {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[ClassId] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("lattice invariants violated: {0}")]
    Invalid(ValidationReport),
    #[error("too many paths (more than {0}); lattice is beyond desk scale")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("classes are not composable: {first} ends at {first_target}, {second} starts at {second_source}")]
pub struct ComposeError {
    pub first: String,
    pub second: String,
    pub first_target: String,
    pub second_source: String,
}

/// Path tables and the congruence on them.
#[derive(Clone, Debug)]
pub(crate) struct Congruence {
    pub paths: Vec<Path>,
    pub path_index: HashMap<Path, usize>,
    pub path_class: Vec<ClassId>,
    pub classes: Vec<MorphismClass>,
    pub class_paths: Vec<Vec<usize>>,
    pub between: HashMap<(NodeId, NodeId), Vec<ClassId>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn enumerate_paths(p: &Presentation) -> Result<Vec<Path>, LatticeError> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<ArrowId>> = p.arrows().iter().enumerate().map(|(i, _)| vec![ArrowId(i)]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        let end = p.arrows()[path[path.len() - 1].0].target;
        let mut next: Vec<Vec<ArrowId>> = p
            .out_arrows(end)
            .map(|a| {
                let mut longer = path.clone();
                longer.push(a);
                longer
            })
            .collect();
        next.reverse();
        stack.extend(next);
        out.push(Path::from_raw(path));
        if out.len() > PATH_LIMIT {
            return Err(LatticeError::TooLarge(PATH_LIMIT));
        }
    }
    Ok(out)
}

fn name_key<'a>(p: &'a Presentation, path: &Path) -> Vec<&'a str> {
    path.arrows().iter().map(|&a| p.arrow_name(a)).collect()
}

impl Congruence {
    /// Requires an acyclic generating graph.
    pub fn compute(p: &Presentation) -> Result<Self, LatticeError> {
        let paths = enumerate_paths(p)?;
        let path_index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
        let mut uf = UnionFind((0..paths.len()).collect());
        for (i, path) in paths.iter().enumerate() {
            let arrows = path.arrows();
            for rel in p.relations() {
                for (from, to) in [(&rel.lhs, &rel.rhs), (&rel.rhs, &rel.lhs)] {
                    let pat = from.arrows();
                    if pat.len() > arrows.len() {
                        continue;
                    }
                    for start in 0..=arrows.len() - pat.len() {
                        if &arrows[start..start + pat.len()] == pat {
                            let mut rewritten = arrows[..start].to_vec();
                            rewritten.extend_from_slice(to.arrows());
                            rewritten.extend_from_slice(&arrows[start + pat.len()..]);
                            let j = path_index[&Path::from_raw(rewritten)];
                            uf.union(i, j);
                        }
                    }
                }
            }
        }

        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..paths.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        let mut members: Vec<(NodeId, NodeId, Vec<&str>, Vec<usize>)> = groups
            .into_values()
            .map(|mut m| {
                m.sort_by(|&a, &b| name_key(p, &paths[a]).cmp(&name_key(p, &paths[b])));
                let (s, t) = p.endpoints(&paths[m[0]]);
                (s, t, name_key(p, &paths[m[0]]), m)
            })
            .collect();
        members.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));

        let mut path_class = vec![ClassId(0); paths.len()];
        let mut classes = Vec::with_capacity(members.len());
        let mut class_paths = Vec::with_capacity(members.len());
        let mut between: HashMap<(NodeId, NodeId), Vec<ClassId>> = HashMap::new();
        for (k, (s, t, _, m)) in members.into_iter().enumerate() {
            let id = ClassId(k);
            for &i in &m {
                path_class[i] = id;
            }
            classes.push(MorphismClass {
                id,
                source: s,
                target: t,
                representative: paths[m[0]].clone(),
            });
            between.entry((s, t)).or_default().push(id);
            class_paths.push(m);
        }
        Ok(Congruence {
            paths,
            path_index,
            path_class,
            classes,
            class_paths,
            between,
        })
    }
}

/// A validated lattice together with its morphism classes.
#[derive(Clone, Debug)]
pub struct Lattice {
    presentation: Presentation,
    cong: Congruence,
    init: NodeId,
    fin: NodeId,
    generator_class: Vec<ClassId>,
    marked_null: Vec<bool>,
    null: Vec<bool>,
    max_class: ClassId,
}

impl Lattice {
    /// Validates the presentation and closes it under its relations.
    pub fn new(presentation: Presentation) -> Result<Self, LatticeError> {
        let report = validate(&presentation)?;
        if !report.passed() {
            return Err(LatticeError::Invalid(report));
        }
        let init = presentation.init().ok_or(StructuralError::MissingInit)?;
        let fin = presentation.fin().ok_or(StructuralError::MissingFin)?;
        let cong = Congruence::compute(&presentation)?;
        let generator_class = (0..presentation.arrows().len())
            .map(|i| cong.path_class[cong.path_index[&Path::from_raw(vec![ArrowId(i)])]])
            .collect();
        let mut marked_null = vec![false; cong.classes.len()];
        for mark in presentation.null_marks() {
            marked_null[cong.path_class[cong.path_index[mark]].0] = true;
        }
        let max_class = cong.between[&(init, fin)][0];
        let mut lattice = Lattice {
            presentation,
            cong,
            init,
            fin,
            generator_class,
            marked_null,
            null: Vec::new(),
            max_class,
        };
        lattice.null = (0..lattice.cong.classes.len())
            .map(|c| lattice.factors_through_mark(ClassId(c)))
            .collect();
        Ok(lattice)
    }

    fn factors_through_mark(&self, class: ClassId) -> bool {
        self.cong.class_paths[class.0].iter().any(|&i| {
            let arrows = self.cong.paths[i].arrows();
            (0..arrows.len()).any(|a| {
                (a + 1..=arrows.len()).any(|b| {
                    let sub = Path::from_raw(arrows[a..b].to_vec());
                    self.marked_null[self.cong.path_class[self.cong.path_index[&sub]].0]
                })
            })
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn init(&self) -> NodeId {
        self.init
    }

    pub fn fin(&self) -> NodeId {
        self.fin
    }

    pub fn node_count(&self) -> usize {
        self.presentation.nodes().len()
    }

    pub fn node(&self, name: &str) -> Result<NodeId, StructuralError> {
        self.presentation.node(name)
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        self.presentation.node_name(id)
    }

    /// The unique class from the initial to the final node.
    pub fn max_class(&self) -> ClassId {
        self.max_class
    }

    pub fn class_count(&self) -> usize {
        self.cong.classes.len()
    }

    pub fn class(&self, id: ClassId) -> &MorphismClass {
        &self.cong.classes[id.0]
    }

    pub fn classes(&self) -> &[MorphismClass] {
        &self.cong.classes
    }

    /// Number of paths in the class.
    pub fn class_size(&self, id: ClassId) -> usize {
        self.cong.class_paths[id.0].len()
    }

    pub fn class_members(&self, id: ClassId) -> impl Iterator<Item = &Path> + '_ {
        self.cong.class_paths[id.0].iter().map(move |&i| &self.cong.paths[i])
    }

    pub fn class_of(&self, path: &Path) -> Option<ClassId> {
        self.cong.path_index.get(path).map(|&i| self.cong.path_class[i])
    }

    /// Class of the path written as arrow names in diagrammatic order.
    pub fn class_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ClassId, StructuralError> {
        let path = self.presentation.path(names)?;
        Ok(self.class_of(&path).expect("every composable path is enumerated"))
    }

    pub fn generator_class(&self, arrow: ArrowId) -> ClassId {
        self.generator_class[arrow.0]
    }

    /// All classes from `u` to `v`, ordered by class id.
    pub fn morphism_classes(&self, u: NodeId, v: NodeId) -> &[ClassId] {
        self.cong.between.get(&(u, v)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Composite in diagrammatic order: `first` is applied first.
    pub fn compose(&self, first: ClassId, second: ClassId) -> Result<ClassId, ComposeError> {
        let (a, b) = (self.class(first), self.class(second));
        if a.target != b.source {
            return Err(ComposeError {
                first: self.class_label(first),
                second: self.class_label(second),
                first_target: self.node_name(a.target).to_string(),
                second_source: self.node_name(b.source).to_string(),
            });
        }
        let mut arrows = a.representative.arrows().to_vec();
        arrows.extend_from_slice(b.representative.arrows());
        Ok(self.class_of(&Path::from_raw(arrows)).expect("composite path is enumerated"))
    }

    /// Composite of every entry of a chain.
    pub fn compose_chain(&self, chain: &[ClassId]) -> ClassId {
        let mut arrows = Vec::new();
        for c in chain {
            arrows.extend_from_slice(self.class(*c).representative.arrows());
        }
        self.class_of(&Path::from_raw(arrows)).expect("chain must be composable")
    }

    /// True iff the class factors as `a . z . b` with `z` a null-marked class.
    pub fn is_null(&self, class: ClassId) -> bool {
        self.null[class.0]
    }

    pub fn is_marked_null(&self, class: ClassId) -> bool {
        self.marked_null[class.0]
    }

    pub fn has_null_marks(&self) -> bool {
        !self.presentation.null_marks().is_empty()
    }

    /// Every chain of composable classes from `u` to `v`, optionally of a fixed length.
    pub fn enumerate_chains(&self, u: NodeId, v: NodeId, length: Option<usize>) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_chains(u, v, length, &mut current, &mut out);
        out
    }

    fn extend_chains(&self, at: NodeId, v: NodeId, length: Option<usize>, current: &mut Vec<ClassId>, out: &mut Vec<Chain>) {
        if let Some(l) = length {
            if current.len() >= l {
                return;
            }
        }
        for w in 0..self.node_count() {
            let w = NodeId(w);
            for &c in self.morphism_classes(at, w) {
                current.push(c);
                if w == v {
                    if length.is_none_or(|l| current.len() == l) {
                        out.push(Chain(current.clone()));
                    }
                } else {
                    self.extend_chains(w, v, length, current, out);
                }
                current.pop();
            }
        }
    }

    /// Representative path of a class as `a.b.c`.
    pub fn class_label(&self, class: ClassId) -> String {
        self.presentation.path_string(&self.class(class).representative)
    }

    /// Chain as `(a)(b.c)` with `*` joining arrows of one class.
    pub fn chain_label(&self, chain: &[ClassId]) -> String {
        chain.iter().map(|&c| format!("({})", self.class_juxtaposed(c))).collect()
    }

    /// Representative arrows joined by `*`, marking an actual composite.
    pub fn class_juxtaposed(&self, class: ClassId) -> String {
        self.class(class)
            .representative
            .arrows()
            .iter()
            .map(|&a| self.presentation.arrow_name(a))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// If the class is a single generator, its arrow.
    pub fn as_generator(&self, class: ClassId) -> Option<ArrowId> {
        self.class_members(class).find(|p| p.len() == 1).map(|p| p.arrows()[0])
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {} morphism classes", self.presentation, self.class_count())
    }
}
