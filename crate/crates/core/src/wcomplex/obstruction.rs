//! Indecomposable cubes and the pairs that meet in a codimension-one cell.

use std::collections::HashMap;

use super::complex::HomComplex;

/// Cells of dimension `k` with at most one part of length greater than one.
pub fn indecomposable_cubes(h: &HomComplex, k: usize) -> Vec<usize> {
    h.cells_of_dim(k)
        .iter()
        .copied()
        .filter(|&i| h.cell(i).is_indecomposable())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObstructionPair {
    pub first: usize,
    pub second: usize,
    /// The cell spanned by the common vertices.
    pub meet: usize,
}

/// Unordered pairs of distinct indecomposable cubes of dimension `cube_dim`
/// whose intersection is a cell of dimension `cube_dim - 1`.
///
/// The argument is the dimension of the cubes themselves, one more than the
/// dimension of the cell where the obstruction lives.
pub fn obstruction_pairs(h: &HomComplex, cube_dim: usize) -> Vec<ObstructionPair> {
    if cube_dim == 0 {
        return Vec::new();
    }
    let by_vertices: HashMap<&[usize], usize> = (0..h.len()).map(|i| (h.vertex_set(i), i)).collect();
    let cubes = indecomposable_cubes(h, cube_dim);
    let mut out = Vec::new();
    for (a, &i) in cubes.iter().enumerate() {
        for &j in &cubes[a + 1..] {
            let (vi, vj) = (h.vertex_set(i), h.vertex_set(j));
            let common: Vec<usize> = vi.iter().copied().filter(|v| vj.binary_search(v).is_ok()).collect();
            if let Some(&meet) = by_vertices.get(common.as_slice()) {
                if h.cell(meet).dim() + 1 == cube_dim {
                    out.push(ObstructionPair { first: i, second: j, meet });
                }
            }
        }
    }
    out.sort();
    out
}
