//! The cube complex of one hom-space.

use std::collections::{BTreeSet, HashMap};

use crate::homology::{poset_homology, HomologyError, HomologyResult};
use crate::lattice::{ClassId, Lattice, NodeId};
use crate::poset::{euler_of, FacePoset};

use super::cell::{Cell, FaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub kind: FaceKind,
    pub pos: usize,
    /// Index of the face cell in the same complex.
    pub cell: usize,
}

#[derive(Clone, Debug)]
pub struct HomComplex {
    source: NodeId,
    target: NodeId,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    faces: Vec<Vec<Face>>,
    by_dim: Vec<Vec<usize>>,
    vertex_sets: Vec<Vec<usize>>,
}

/// All cells `(chain, S)` of the hom-space from `u` to `v`.
pub fn build_hom_complex(lattice: &Lattice, u: NodeId, v: NodeId) -> HomComplex {
    let mut cells = Vec::new();
    for chain in lattice.enumerate_chains(u, v, None) {
        let internal = chain.len() - 1;
        for mask in 0..(1u32 << internal) {
            cells.push(Cell {
                chain: chain.0.clone(),
                breaks: mask,
            });
        }
    }
    HomComplex::from_cells(lattice, u, v, cells)
}

impl HomComplex {
    fn from_cells(lattice: &Lattice, u: NodeId, v: NodeId, mut cells: Vec<Cell>) -> Self {
        cells.sort_by(|a, b| (a.dim(), &a.chain, a.breaks).cmp(&(b.dim(), &b.chain, b.breaks)));
        let index: HashMap<Cell, usize> = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let faces: Vec<Vec<Face>> = cells
            .iter()
            .map(|c| {
                let mut fs = Vec::new();
                for k in c.free_positions() {
                    for kind in [FaceKind::Zero, FaceKind::One] {
                        if let Some(&j) = index.get(&c.face(kind, k, lattice)) {
                            fs.push(Face { kind, pos: k, cell: j });
                        }
                    }
                }
                fs
            })
            .collect();
        Self::assemble(u, v, cells, index, faces)
    }

    /// Rebuilds a complex from explicit cells and face lists. Cells must be
    /// sorted as in [`build_hom_complex`] and every face must point to an
    /// earlier cell; returns `None` otherwise.
    pub fn from_parts(u: NodeId, v: NodeId, cells: Vec<Cell>, faces: Vec<Vec<Face>>) -> Option<Self> {
        if cells.len() != faces.len() {
            return None;
        }
        let key = |c: &Cell| (c.dim(), c.chain.clone(), c.breaks);
        if cells.windows(2).any(|w| key(&w[0]) >= key(&w[1])) {
            return None;
        }
        for (i, fs) in faces.iter().enumerate() {
            if fs.iter().any(|f| f.cell >= i || cells[f.cell].dim() + 1 != cells[i].dim()) {
                return None;
            }
        }
        let index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Some(Self::assemble(u, v, cells, index, faces))
    }

    fn assemble(u: NodeId, v: NodeId, cells: Vec<Cell>, index: HashMap<Cell, usize>, faces: Vec<Vec<Face>>) -> Self {
        let top = cells.iter().map(Cell::dim).max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        for (i, c) in cells.iter().enumerate() {
            by_dim[c.dim()].push(i);
        }
        // cells are sorted by dimension, so faces come first
        let mut vertex_sets: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            if c.dim() == 0 {
                vertex_sets.push(vec![i]);
            } else {
                let set: BTreeSet<usize> = faces[i].iter().flat_map(|f| vertex_sets[f.cell].iter().copied()).collect();
                vertex_sets.push(set.into_iter().collect());
            }
        }
        HomComplex {
            source: u,
            target: v,
            cells,
            index,
            faces,
            by_dim,
            vertex_sets,
        }
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn target(&self) -> NodeId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn faces(&self, i: usize) -> &[Face] {
        &self.faces[i]
    }

    /// Cell indices of dimension `d`.
    pub fn cells_of_dim(&self, d: usize) -> &[usize] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Indices of the vertices of cell `i`, ascending.
    pub fn vertex_set(&self, i: usize) -> &[usize] {
        &self.vertex_sets[i]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler(&self) -> i64 {
        euler_of(&self.f_vector())
    }

    /// The composite of a cell's chain.
    pub fn augment(&self, i: usize, lattice: &Lattice) -> ClassId {
        lattice.compose_chain(&self.cells[i].chain)
    }

    /// Subcomplex on the cells satisfying `keep`; faces pointing outside are dropped.
    pub fn subcomplex(&self, keep: impl Fn(&Cell) -> bool) -> HomComplex {
        let kept: Vec<usize> = (0..self.cells.len()).filter(|&i| keep(&self.cells[i])).collect();
        let remap: HashMap<usize, usize> = kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let cells: Vec<Cell> = kept.iter().map(|&i| self.cells[i].clone()).collect();
        let index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let faces = kept
            .iter()
            .map(|&i| {
                self.faces[i]
                    .iter()
                    .filter_map(|f| remap.get(&f.cell).map(|&cell| Face { cell, ..*f }))
                    .collect()
            })
            .collect();
        Self::assemble(self.source, self.target, cells, index, faces)
    }

    /// Decomposable cells (`S` nonempty) when this is the `(init, fin)`
    /// complex; any other hom-space is its own basis.
    pub fn basis_subcomplex(&self, lattice: &Lattice) -> HomComplex {
        if (self.source, self.target) == (lattice.init(), lattice.fin()) {
            self.subcomplex(|c| c.breaks != 0)
        } else {
            self.clone()
        }
    }

    pub fn skeleton(&self, k: usize) -> HomComplex {
        self.subcomplex(|c| c.dim() <= k)
    }

    /// True if every face of every cell in `subset` is in `subset`.
    pub fn is_face_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset.iter().all(|&i| self.faces[i].iter().all(|f| subset.contains(&f.cell)))
    }

    pub fn face_poset(&self) -> FacePoset<usize> {
        let mut p = FacePoset::new();
        for (i, c) in self.cells.iter().enumerate() {
            p.insert(i, c.dim());
        }
        for (i, fs) in self.faces.iter().enumerate() {
            for f in fs {
                p.add_facet(i, f.cell);
            }
        }
        p
    }

    /// Homology, relative to the face-closed cell set `sub` when given.
    pub fn homology(&self, sub: Option<&BTreeSet<usize>>) -> Result<HomologyResult, HomologyError> {
        poset_homology(&self.face_poset(), sub)
    }

    pub fn cell_label(&self, i: usize, lattice: &Lattice) -> String {
        self.cells[i].label(lattice)
    }
}
