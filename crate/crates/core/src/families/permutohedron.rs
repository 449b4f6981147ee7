//! Permutohedra as ordered set partitions, and the normal-form words that
//! label their vertices in the cosimplicial lattice.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::lattice::{ClassId, Lattice};
use crate::poset::FacePoset;

use super::lattices::coface;

/// Blocks in order; each block sorted.
pub type OrderedPartition = Vec<Vec<usize>>;

/// The word `d_{i_0} d_{i_1} ... d_{i_n}` with `0 <= i_k <= k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DWord(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("`{0}` is not a chain of subsets")]
    NotAFlag(String),
    #[error("letter {letter} out of range in word of length {len}")]
    BadLetter { letter: usize, len: usize },
    #[error("swap position {0} out of range")]
    BadSwap(usize),
}

impl DWord {
    pub fn identity(n: usize) -> Self {
        DWord((0..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_valid(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &i)| i <= k)
    }

    /// `i_k = #{ j < k : pi_j < pi_k }`.
    pub fn from_permutation(pi: &[usize]) -> Self {
        DWord(
            (0..pi.len())
                .map(|k| (0..k).filter(|&j| pi[j] < pi[k]).count())
                .collect(),
        )
    }

    /// Inverse of [`DWord::from_permutation`].
    pub fn to_permutation(&self) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..self.0.len()).collect();
        let mut pi = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            pi[k] = pool.remove(self.0[k]);
        }
        pi
    }

    /// One adjacent transposition at positions `p, p+1`. Returns whether
    /// the step lengthens the permutation.
    pub fn swap(&mut self, p: usize) -> Result<bool, LabelError> {
        if p + 1 >= self.0.len() {
            return Err(LabelError::BadSwap(p));
        }
        let (a, b) = (self.0[p], self.0[p + 1]);
        if a < b {
            self.0[p] = b - 1;
            self.0[p + 1] = a;
            Ok(true)
        } else {
            self.0[p] = b;
            self.0[p + 1] = a + 1;
            Ok(false)
        }
    }

    /// The vertex as an ordered partition into singletons.
    pub fn to_partition(&self) -> OrderedPartition {
        self.to_permutation().into_iter().map(|x| vec![x]).collect()
    }

    pub fn from_partition(p: &OrderedPartition) -> Option<Self> {
        if p.iter().any(|b| b.len() != 1) {
            return None;
        }
        Some(DWord::from_permutation(&p.iter().map(|b| b[0]).collect::<Vec<_>>()))
    }

    /// The generator path `d^n_{i_n}, ..., d^1_{i_1}, eps` in diagrammatic order.
    pub fn arrow_names(&self) -> Vec<String> {
        (0..self.0.len()).rev().map(|k| coface(k, self.0[k])).collect()
    }

    /// Reads a word off a chain of generator classes of the cosimplicial lattice.
    pub fn from_chain(lattice: &Lattice, chain: &[ClassId]) -> Option<Self> {
        let mut letters = Vec::with_capacity(chain.len());
        for &c in chain.iter().rev() {
            let a = lattice.as_generator(c)?;
            let name = lattice.presentation().arrow_name(a);
            let letter = if name == "eps" {
                0
            } else {
                name.split_once('_')?.1.parse().ok()?
            };
            letters.push(letter);
        }
        Some(DWord(letters))
    }
}

impl fmt::Display for DWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Applies the swaps in order to the identity word; the flag is false when
/// the swap word is not reduced.
pub fn perm_vertex_label(n: usize, swaps: &[usize]) -> Result<(DWord, bool), LabelError> {
    let mut w = DWord::identity(n);
    let mut reduced = true;
    for &p in swaps {
        reduced &= w.swap(p)?;
    }
    Ok((w, reduced))
}

/// All permutations of `0..len` in lexicographic order.
pub fn permutations(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; len];
    fn go(len: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for x in 0..len {
            if !used[x] {
                used[x] = true;
                current.push(x);
                go(len, current, used, out);
                current.pop();
                used[x] = false;
            }
        }
    }
    go(len, &mut current, &mut used, &mut out);
    out
}

/// All ordered partitions of `0..=n`.
pub fn ordered_partitions(n: usize) -> Vec<OrderedPartition> {
    let size = n + 1;
    let mut out = Vec::new();
    fn go(remaining: u32, acc: &mut OrderedPartition, out: &mut Vec<OrderedPartition>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        // every nonempty submask of what is left
        let mut sub = remaining;
        loop {
            acc.push((0..32).filter(|i| sub & (1 << i) != 0).collect());
            go(remaining & !sub, acc, out);
            acc.pop();
            sub = (sub - 1) & remaining;
            if sub == 0 {
                break;
            }
        }
    }
    go((1u32 << size) - 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Faces of `Pe_n`: an ordered partition with `k` blocks has dimension
/// `n + 1 - k`; its facets split one block into two.
pub fn permutohedron_faces(n: usize) -> FacePoset<OrderedPartition> {
    let mut faces = ordered_partitions(n);
    faces.sort_by_key(|p| std::cmp::Reverse(p.len()));
    let mut poset = FacePoset::new();
    for p in &faces {
        poset.insert(p.clone(), n + 1 - p.len());
    }
    for p in &faces {
        let i = poset.index_of(p).unwrap();
        for (b, block) in p.iter().enumerate() {
            if block.len() < 2 {
                continue;
            }
            let full = (1u32 << block.len()) - 1;
            for mask in 1..full {
                let left: Vec<usize> = (0..block.len()).filter(|j| mask & (1 << j) != 0).map(|j| block[j]).collect();
                let right: Vec<usize> = (0..block.len()).filter(|j| mask & (1 << j) == 0).map(|j| block[j]).collect();
                let mut finer = p[..b].to_vec();
                finer.push(left);
                finer.push(right);
                finer.extend_from_slice(&p[b + 1..]);
                let j = poset.index_of(&finer).unwrap();
                poset.add_facet(i, j);
            }
        }
    }
    poset
}

/// Coordinates of a vertex: the element in block `j` (counting from 0) gets `j`.
pub fn vertex_coordinates(vertex: &OrderedPartition) -> Vec<usize> {
    let mut x = vec![0; vertex.len()];
    for (j, block) in vertex.iter().enumerate() {
        x[block[0]] = j;
    }
    x
}

/// Parses a flag such as `(0123,013,1)`: a strictly decreasing chain of
/// subsets of `{0..n}` starting with the full set. The empty set may be
/// omitted. The blocks of the ordered partition are the successive
/// differences, smallest set first.
pub fn parse_flag(text: &str) -> Result<OrderedPartition, LabelError> {
    let bad = || LabelError::NotAFlag(text.to_string());
    let inner = text.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() || part == "∅" {
            sets.push(BTreeSet::new());
            continue;
        }
        let set: BTreeSet<usize> = part
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if set.len() != part.len() {
            return Err(bad());
        }
        sets.push(set);
    }
    let n = sets[0].len().checked_sub(1).ok_or_else(bad)?;
    if sets[0] != (0..=n).collect() {
        return Err(bad());
    }
    if sets.last().is_some_and(|s| !s.is_empty()) {
        sets.push(BTreeSet::new());
    }
    let mut blocks = Vec::new();
    for w in sets.windows(2) {
        if !w[1].is_subset(&w[0]) || w[1].len() >= w[0].len() {
            return Err(bad());
        }
        blocks.push(w[0].difference(&w[1]).copied().collect::<Vec<_>>());
    }
    blocks.reverse();
    Ok(blocks)
}

/// Inverse of [`parse_flag`], omitting the empty set.
pub fn format_flag(p: &OrderedPartition) -> String {
    let mut acc: Vec<usize> = Vec::new();
    let mut sets = Vec::new();
    for block in p {
        acc.extend(block);
        acc.sort();
        sets.push(acc.iter().map(|x| x.to_string()).collect::<String>());
    }
    sets.reverse();
    format!("({})", sets.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig_six_flags_and_words() {
        for (flag, word) in [
            ("(012,01,1)", "002"),
            ("(012,12,1)", "010"),
            ("(012,12,2)", "000"),
            ("(012,02,2)", "001"),
            ("(012,02,0)", "011"),
            ("(012,01,0)", "012"),
        ] {
            let p = parse_flag(flag).unwrap();
            assert_eq!(DWord::from_partition(&p).unwrap().to_string(), word, "{flag}");
            assert_eq!(format_flag(&p), flag);
        }
        assert_eq!(parse_flag("(012,02)").unwrap(), vec![vec![0, 2], vec![1]]);
        assert!(parse_flag("(012,13,1)").is_err());
        assert!(parse_flag("(01,012)").is_err());
    }

    #[test]
    fn swap_rule_examples() {
        assert_eq!(perm_vertex_label(2, &[]).unwrap().0.to_string(), "012");
        let (w, reduced) = perm_vertex_label(2, &[1]).unwrap();
        assert_eq!((w.to_string().as_str(), reduced), ("011", true));
        let (w, reduced) = perm_vertex_label(2, &[1, 1]).unwrap();
        assert_eq!((w.to_string().as_str(), reduced), ("012", false));
        assert!(perm_vertex_label(2, &[2]).is_err());
    }

    #[test]
    fn swap_rule_tracks_the_permutation() {
        for n in 0..=4 {
            for pi in permutations(n + 1) {
                let w = DWord::from_permutation(&pi);
                assert!(w.is_valid());
                assert_eq!(w.to_permutation(), pi);
                for p in 0..n {
                    let mut swapped = pi.clone();
                    swapped.swap(p, p + 1);
                    let mut v = w.clone();
                    let longer = v.swap(p).unwrap();
                    assert_eq!(v, DWord::from_permutation(&swapped));
                    assert_eq!(longer, pi[p] < pi[p + 1]);
                }
            }
        }
    }

    #[test]
    fn permutohedron_counts() {
        assert_eq!(permutohedron_faces(0).f_vector(), vec![1]);
        assert_eq!(permutohedron_faces(1).f_vector(), vec![2, 1]);
        assert_eq!(permutohedron_faces(2).f_vector(), vec![6, 6, 1]);
        assert_eq!(permutohedron_faces(3).f_vector(), vec![24, 36, 14, 1]);
        assert_eq!(permutohedron_faces(4).euler(), 1);
    }
}
