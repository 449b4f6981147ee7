//! Quotients of a hom complex by strict relations.
//!
//! Vertices are chains. A vertex whose consecutive generator entries spell
//! one side of a strict relation is identified with the vertex spelling the
//! other side, and with the vertex where that segment is composed. A higher
//! cell is sent to the set of vertex classes it spans: cells with the same
//! image and dimension are identified, and a cell whose image is already
//! spanned by a lower-dimensional cell collapses onto it.

use std::collections::{BTreeMap, BTreeSet};

use crate::lattice::{ClassId, Lattice};
use crate::poset::euler_of;

use super::complex::HomComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    /// Surviving dimension: the least dimension among the members.
    pub dim: usize,
    pub members: Vec<usize>,
    /// Vertex classes spanned, as indices into `vertex_classes`.
    pub image: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub cell: usize,
    pub from_dim: usize,
    pub to_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irregularity {
    pub class: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    /// Vertex classes of the base complex, as sorted vertex cell indices.
    pub vertex_classes: Vec<Vec<usize>>,
    pub classes: Vec<QuotientClass>,
    /// Class index of every cell of the base complex.
    pub cell_class: Vec<usize>,
    pub collapse_log: Vec<Collapse>,
    pub irregular: Vec<Irregularity>,
}

impl QuotientComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.classes.iter().map(|c| c.dim + 1).max().unwrap_or(0);
        let mut f = vec![0; top];
        for c in &self.classes {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler(&self) -> i64 {
        euler_of(&self.f_vector())
    }

    pub fn is_regular(&self) -> bool {
        self.irregular.is_empty()
    }

    /// Vertex classes restricted to the vertices of maximal chain length,
    /// the words in generators.
    pub fn generator_word_classes(&self, h: &HomComplex) -> Vec<Vec<usize>> {
        let longest = h.cells_of_dim(0).iter().map(|&v| h.cell(v).len()).max().unwrap_or(0);
        self.vertex_classes
            .iter()
            .map(|cls| cls.iter().copied().filter(|&v| h.cell(v).len() == longest).collect::<Vec<_>>())
            .filter(|cls| !cls.is_empty())
            .collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Identifies cells of `h` according to the strict relations of `lattice`.
pub fn strict_quotient(h: &HomComplex, lattice: &Lattice) -> QuotientComplex {
    let vertices: Vec<usize> = h.cells_of_dim(0).to_vec();
    let mut uf = UnionFind((0..h.len()).collect());
    let strict: Vec<(Vec<ClassId>, Vec<ClassId>)> = lattice
        .presentation()
        .relations()
        .iter()
        .filter(|r| r.strict)
        .map(|r| {
            let gens = |p: &crate::lattice::Path| p.arrows().iter().map(|&a| lattice.generator_class(a)).collect();
            (gens(&r.lhs), gens(&r.rhs))
        })
        .collect();

    for &v in &vertices {
        let chain = &h.cell(v).chain;
        for (lhs, rhs) in &strict {
            for (from, to) in [(lhs, rhs), (rhs, lhs)] {
                if from.len() > chain.len() {
                    continue;
                }
                for start in 0..=chain.len() - from.len() {
                    if chain[start..start + from.len()] != from[..] {
                        continue;
                    }
                    let mut swapped = chain[..start].to_vec();
                    swapped.extend_from_slice(to);
                    swapped.extend_from_slice(&chain[start + from.len()..]);
                    let mut composed = chain[..start].to_vec();
                    composed.push(lattice.compose_chain(from));
                    composed.extend_from_slice(&chain[start + from.len()..]);
                    for other in [swapped, composed] {
                        let cell = super::cell::Cell {
                            breaks: if other.len() > 1 { (1u32 << (other.len() - 1)) - 1 } else { 0 },
                            chain: other,
                        };
                        if let Some(w) = h.index_of(&cell) {
                            uf.union(v, w);
                        }
                    }
                }
            }
        }
    }

    let mut root_class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertex_classes: Vec<Vec<usize>> = Vec::new();
    for &v in &vertices {
        let r = uf.find(v);
        let k = *root_class.entry(r).or_insert_with(|| {
            vertex_classes.push(Vec::new());
            vertex_classes.len() - 1
        });
        vertex_classes[k].push(v);
    }
    let vclass = |uf: &mut UnionFind, v: usize| root_class[&uf.find(v)];

    // group cells by image, lowest dimension first
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for i in 0..h.len() {
        let image: BTreeSet<usize> = h.vertex_set(i).iter().map(|&v| vclass(&mut uf, v)).collect();
        groups.entry(image.into_iter().collect()).or_default().push(i);
    }
    let mut ordered: Vec<(Vec<usize>, Vec<usize>)> = groups.into_iter().collect();
    ordered.sort_by_key(|(image, members)| (members.iter().map(|&i| h.cell(i).dim()).min(), members[0], image.len()));

    let mut classes = Vec::new();
    let mut cell_class = vec![0; h.len()];
    let mut collapse_log = Vec::new();
    let mut irregular = Vec::new();
    for (image, members) in ordered {
        let dim = members.iter().map(|&i| h.cell(i).dim()).min().unwrap();
        let k = classes.len();
        for &i in &members {
            cell_class[i] = k;
            let d = h.cell(i).dim();
            if d > dim {
                collapse_log.push(Collapse {
                    cell: i,
                    from_dim: d,
                    to_dim: dim,
                });
            }
        }
        if image.len() < dim + 1 {
            irregular.push(Irregularity {
                class: k,
                message: format!("{dim}-cell spans only {} vertex classes", image.len()),
            });
        }
        classes.push(QuotientClass { dim, members, image });
    }
    QuotientComplex {
        vertex_classes,
        classes,
        cell_class,
        collapse_log,
        irregular,
    }
}
