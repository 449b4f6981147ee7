//! Chain complexes, order complexes of face posets, and their homology.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use thiserror::Error;

use super::matrix::{smith_normal_form, IntegerMatrix};
use crate::poset::FacePoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("subcomplex is not closed under faces: element {0} has a face outside it")]
    NotFaceClosed(usize),
}

/// Free chain groups with boundary maps `boundaries[r] : C_r -> C_{r-1}`.
/// `boundaries[0]` is the zero map out of `C_0`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntegerMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Torsion coefficients per dimension.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    /// Reduced Betti numbers (one less in degree zero, for a nonempty space).
    pub fn reduced_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        if let Some(b0) = b.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        b
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    pub fn euler(&self) -> i64 {
        crate::poset::euler_of(&self.betti)
    }

    /// True if every Betti number vanishes.
    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.is_torsion_free()
    }
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>) -> Self {
        let boundaries = ranks
            .iter()
            .enumerate()
            .map(|(r, &n)| IntegerMatrix::zeros(if r == 0 { 0 } else { ranks[r - 1] }, n))
            .collect();
        ChainComplex { ranks, boundaries }
    }

    /// Verifies that consecutive boundaries compose to zero.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|r| self.boundaries[r - 1].mul(&self.boundaries[r]).is_zero())
    }

    pub fn homology(&self) -> HomologyResult {
        let top = self.ranks.len();
        let forms: Vec<_> = self.boundaries.iter().map(smith_normal_form).collect();
        let mut betti = Vec::with_capacity(top);
        let mut torsion = Vec::with_capacity(top);
        for r in 0..top {
            let rank_out = forms[r].rank();
            let rank_in = forms.get(r + 1).map_or(0, |f| f.rank());
            betti.push(self.ranks[r] - rank_out - rank_in);
            torsion.push(forms.get(r + 1).map(|f| f.torsion()).unwrap_or_default());
        }
        HomologyResult { betti, torsion }
    }

    pub fn euler(&self) -> i64 {
        crate::poset::euler_of(&self.ranks)
    }
}

/// Simplices of the order complex: strictly increasing chains of elements,
/// listed bottom to top.
pub fn order_complex_simplices<L: Clone + Eq + Hash>(poset: &FacePoset<L>) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..poset.len()).collect();
    order.sort_by_key(|&i| poset.dim(i));
    let mut ending: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let mut out = Vec::new();
    for &x in &order {
        let mut here = vec![vec![x]];
        for y in poset.closure(x) {
            if y == x {
                continue;
            }
            for c in &ending[&y] {
                let mut longer = c.clone();
                longer.push(x);
                here.push(longer);
            }
        }
        out.extend(here.iter().cloned());
        ending.insert(x, here);
    }
    out
}

/// Homology of the order complex of `poset`, relative to the face-closed
/// subset `sub` when given.
pub fn poset_homology<L: Clone + Eq + Hash>(
    poset: &FacePoset<L>,
    sub: Option<&BTreeSet<usize>>,
) -> Result<HomologyResult, HomologyError> {
    Ok(order_chain_complex(poset, sub)?.homology())
}

pub fn order_chain_complex<L: Clone + Eq + Hash>(
    poset: &FacePoset<L>,
    sub: Option<&BTreeSet<usize>>,
) -> Result<ChainComplex, HomologyError> {
    let empty = BTreeSet::new();
    let sub = sub.unwrap_or(&empty);
    if let Some(&bad) = sub.iter().find(|&&i| poset.facets(i).iter().any(|f| !sub.contains(f))) {
        return Err(HomologyError::NotFaceClosed(bad));
    }
    // a chain lies in the subcomplex iff its top does
    let simplices: Vec<Vec<usize>> = order_complex_simplices(poset)
        .into_iter()
        .filter(|s| !sub.contains(s.last().unwrap()))
        .collect();
    let top = simplices.iter().map(Vec::len).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); top];
    for s in &simplices {
        by_dim[s.len() - 1].push(s);
    }
    for v in &mut by_dim {
        v.sort();
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> = by_dim
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)).collect())
        .collect();
    let mut cc = ChainComplex::new(by_dim.iter().map(Vec::len).collect());
    for r in 1..top {
        for (col, s) in by_dim[r].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = (*s).clone();
                face.remove(i);
                if let Some(&row) = index[r - 1].get(&face) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    cc.boundaries[r].add_to(row, col, BigInt::from(sign));
                }
            }
        }
    }
    Ok(cc)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Boundary of a triangle: three vertices, three edges.
    fn circle() -> FacePoset<String> {
        let mut p = FacePoset::new();
        let v: Vec<usize> = (0..3).map(|i| p.insert(format!("v{i}"), 0)).collect();
        for i in 0..3 {
            let e = p.insert(format!("e{i}"), 1);
            p.add_facet(e, v[i]);
            p.add_facet(e, v[(i + 1) % 3]);
        }
        p
    }

    #[test]
    fn circle_homology() {
        let h = poset_homology(&circle(), None).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        assert!(h.is_torsion_free());
    }

    #[test]
    fn relative_to_a_vertex() {
        let p = circle();
        let a: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(poset_homology(&p, Some(&a)).unwrap().betti, vec![0, 1]);
        let not_closed: BTreeSet<usize> = [3].into_iter().collect();
        assert_eq!(poset_homology(&p, Some(&not_closed)), Err(HomologyError::NotFaceClosed(3)));
    }

    #[test]
    fn boundaries_compose_to_zero() {
        let cc = order_chain_complex(&circle(), None).unwrap();
        assert!(cc.boundary_squares_to_zero());
        assert_eq!(cc.euler(), 0);
    }
}
