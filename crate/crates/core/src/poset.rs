//! Graded face posets.
//!
//! Every complex in the crate (W-complexes, their quotients, polytope
//! families) can be viewed as a [`FacePoset`]: elements with a dimension and
//! a list of codimension-one faces. Homology is computed from this view.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

#[derive(Clone, Debug)]
pub struct FacePoset<L> {
    labels: Vec<L>,
    dims: Vec<usize>,
    facets: Vec<Vec<usize>>,
    index: HashMap<L, usize>,
}

impl<L: Clone + Eq + Hash> Default for FacePoset<L> {
    fn default() -> Self {
        FacePoset {
            labels: Vec::new(),
            dims: Vec::new(),
            facets: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<L: Clone + Eq + Hash> FacePoset<L> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an element; returns the existing index if the label is known.
    pub fn insert(&mut self, label: L, dim: usize) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.clone());
        self.dims.push(dim);
        self.facets.push(Vec::new());
        self.index.insert(label, i);
        i
    }

    /// Records `face` as a codimension-one face of `elem`.
    pub fn add_facet(&mut self, elem: usize, face: usize) {
        debug_assert_eq!(self.dims[face] + 1, self.dims[elem]);
        if !self.facets[elem].contains(&face) {
            self.facets[elem].push(face);
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn facets(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.max_dim().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    pub fn euler(&self) -> i64 {
        euler_of(&self.f_vector())
    }

    pub fn of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dims[i] == d)
    }

    /// All faces of `i`, including `i` itself.
    pub fn closure(&self, i: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend_from_slice(&self.facets[x]);
            }
        }
        out
    }

    /// Vertices (dimension-0 faces) below `i`.
    pub fn vertex_set(&self, i: usize) -> BTreeSet<usize> {
        self.closure(i).into_iter().filter(|&x| self.dims[x] == 0).collect()
    }

    pub fn is_face_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset.iter().all(|&i| self.facets[i].iter().all(|f| subset.contains(f)))
    }

    /// Face poset restricted to the given elements (which should be face-closed).
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> FacePoset<L> {
        let mut out = FacePoset::new();
        let mut map = HashMap::new();
        for &i in keep {
            map.insert(i, out.insert(self.labels[i].clone(), self.dims[i]));
        }
        for &i in keep {
            for f in &self.facets[i] {
                if let Some(&g) = map.get(f) {
                    out.add_facet(map[&i], g);
                }
            }
        }
        out
    }

    /// Relabels elements, keeping structure.
    pub fn map_labels<M: Clone + Eq + Hash>(&self, mut f: impl FnMut(&L) -> M) -> FacePoset<M> {
        let labels: Vec<M> = self.labels.iter().map(&mut f).collect();
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        FacePoset {
            labels,
            dims: self.dims.clone(),
            facets: self.facets.clone(),
            index,
        }
    }
}

pub fn euler_of(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segment() -> FacePoset<&'static str> {
        let mut p = FacePoset::new();
        let a = p.insert("a", 0);
        let b = p.insert("b", 0);
        let e = p.insert("ab", 1);
        p.add_facet(e, a);
        p.add_facet(e, b);
        p
    }

    #[test]
    fn counts_and_closure() {
        let p = segment();
        assert_eq!(p.f_vector(), vec![2, 1]);
        assert_eq!(p.euler(), 1);
        assert_eq!(p.vertex_set(2).len(), 2);
        assert!(!p.is_face_closed(&[2].into_iter().collect()));
        assert!(p.is_face_closed(&[0, 2, 1].into_iter().collect()));
    }

    #[test]
    fn empty_poset() {
        let p: FacePoset<u8> = FacePoset::new();
        assert!(p.f_vector().is_empty());
        assert_eq!(p.euler(), 0);
    }
}
