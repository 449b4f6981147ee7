//! The basis with every cell touching a null class collapsed to a point.

use std::collections::BTreeSet;

use crate::homology::{HomologyError, HomologyResult};
use crate::lattice::Lattice;

use super::complex::HomComplex;

#[derive(Clone, Debug)]
pub struct SimplifiedBasis {
    pub basis: HomComplex,
    /// Basis cells whose chain has a null entry (the collapsed subcomplex).
    pub null_cells: BTreeSet<usize>,
    /// `H_*(basis, null_cells)`, the reduced homology of the quotient.
    pub relative: HomologyResult,
    /// Unreduced Betti numbers of the quotient.
    pub quotient_betti: Vec<usize>,
}

impl SimplifiedBasis {
    pub fn null_f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for &i in &self.null_cells {
            let d = self.basis.cell(i).dim();
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }
}

/// Collapses the null cells of the basis of `h` (the `(init, fin)` complex).
/// With no null cells the quotient is the basis itself.
pub fn simplified_basis(h: &HomComplex, lattice: &Lattice) -> Result<SimplifiedBasis, HomologyError> {
    let basis = h.basis_subcomplex(lattice);
    let null_cells: BTreeSet<usize> = (0..basis.len())
        .filter(|&i| basis.cell(i).chain.iter().any(|&c| lattice.is_null(c)))
        .collect();
    let (relative, quotient_betti) = if null_cells.is_empty() {
        let h = basis.homology(None)?;
        let mut reduced = h.clone();
        reduced.betti = h.reduced_betti();
        (reduced, h.betti)
    } else {
        let rel = basis.homology(Some(&null_cells))?;
        let mut b = rel.betti.clone();
        if b.is_empty() {
            b.push(0);
        }
        b[0] += 1;
        (rel, b)
    };
    Ok(SimplifiedBasis {
        basis,
        null_cells,
        relative,
        quotient_betti,
    })
}
