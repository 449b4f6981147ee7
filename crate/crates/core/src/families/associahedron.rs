//! Associahedra as partial bracketings, simplices, cubes, and the collapse
//! of the permutohedron onto the associahedron.

use std::collections::BTreeSet;

use crate::poset::FacePoset;

use super::permutohedron::{permutohedron_faces, OrderedPartition};

/// A set of brackets on letters `0..=n+1`; a bracket `(i, j)` groups letters
/// `i..=j`. The whole word is never listed.
pub type Bracketing = BTreeSet<(usize, usize)>;

fn compatible(a: (usize, usize), b: (usize, usize)) -> bool {
    a.1 < b.0 || b.1 < a.0 || (a.0 <= b.0 && b.1 <= a.1) || (b.0 <= a.0 && a.1 <= b.1)
}

/// Faces of `K_n`: compatible bracketings of `n + 2` letters, with
/// dimension `n - #brackets`. Facets add one bracket.
pub fn associahedron_faces(n: usize) -> FacePoset<Bracketing> {
    let last = n + 1;
    let brackets: Vec<(usize, usize)> = (0..=last)
        .flat_map(|i| (i + 1..=last).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == last))
        .collect();
    let mut all: Vec<Bracketing> = Vec::new();
    fn go(from: usize, brackets: &[(usize, usize)], acc: &mut Vec<(usize, usize)>, all: &mut Vec<Bracketing>) {
        all.push(acc.iter().copied().collect());
        for k in from..brackets.len() {
            if acc.iter().all(|&b| compatible(b, brackets[k])) {
                acc.push(brackets[k]);
                go(k + 1, brackets, acc, all);
                acc.pop();
            }
        }
    }
    go(0, &brackets, &mut Vec::new(), &mut all);
    all.sort_by_key(|b| std::cmp::Reverse(b.len()));
    let mut poset = FacePoset::new();
    for b in &all {
        poset.insert(b.clone(), n - b.len());
    }
    for b in &all {
        let i = poset.index_of(b).unwrap();
        for &x in &brackets {
            if !b.contains(&x) && b.iter().all(|&y| compatible(x, y)) {
                let mut finer = b.clone();
                finer.insert(x);
                let j = poset.index_of(&finer).unwrap();
                poset.add_facet(i, j);
            }
        }
    }
    poset
}

/// Bracketing in the usual notation, e.g. `((ab)(cd))`.
pub fn format_bracketing(b: &Bracketing, n: usize) -> String {
    let last = n + 1;
    let mut s = String::from("(");
    for letter in 0..=last {
        let opens = b.iter().filter(|&&(i, _)| i == letter).count();
        let closes = b.iter().filter(|&&(_, j)| j == letter).count();
        s.push_str(&"(".repeat(opens));
        s.push((b'a' + letter as u8) as char);
        s.push_str(&")".repeat(closes));
    }
    s.push(')');
    s
}

/// Image of an ordered partition of the gaps `0..=n` (gap `g` sits between
/// letters `g` and `g + 1`). Blocks are taken in order; within a block,
/// each maximal run of gaps that are adjacent among the gaps still open
/// merges the clusters it touches into one bracket.
pub fn tonks_image(p: &OrderedPartition, n: usize) -> Bracketing {
    let last = n + 1;
    // cluster of each letter, as an interval
    let mut cluster: Vec<(usize, usize)> = (0..=last).map(|i| (i, i)).collect();
    let mut open: Vec<usize> = (0..=n).collect();
    let mut out = Bracketing::new();
    for block in p {
        let members: BTreeSet<usize> = block.iter().copied().collect();
        let mut runs: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for &g in &open {
            if members.contains(&g) {
                current.push(g);
            } else if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            runs.push(current);
        }
        for run in runs {
            let lo = cluster[run[0]].0;
            let hi = cluster[run[run.len() - 1] + 1].1;
            for c in cluster.iter_mut().take(hi + 1).skip(lo) {
                *c = (lo, hi);
            }
            if !(lo == 0 && hi == last) {
                out.insert((lo, hi));
            }
        }
        open.retain(|g| !members.contains(g));
    }
    out
}

#[derive(Clone, Debug)]
pub struct TonksCollapse {
    pub n: usize,
    pub permutohedron: FacePoset<OrderedPartition>,
    pub associahedron: FacePoset<Bracketing>,
    /// Image of every permutohedron face, as an associahedron index.
    pub image: Vec<usize>,
}

impl TonksCollapse {
    /// Faces whose image has lower dimension.
    pub fn collapsed(&self) -> Vec<usize> {
        (0..self.permutohedron.len())
            .filter(|&i| self.associahedron.dim(self.image[i]) < self.permutohedron.dim(i))
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.image.iter().copied().collect();
        hit.len() == self.associahedron.len()
    }

    /// Every facet of a face maps into the closure of the face's image.
    pub fn preserves_order(&self) -> bool {
        (0..self.permutohedron.len()).all(|i| {
            let below = self.associahedron.closure(self.image[i]);
            self.permutohedron.facets(i).iter().all(|&f| below.contains(&self.image[f]))
        })
    }

    pub fn image_f_vector(&self) -> Vec<usize> {
        let hit: BTreeSet<usize> = self.image.iter().copied().collect();
        let mut f = vec![0; self.n + 1];
        for i in hit {
            f[self.associahedron.dim(i)] += 1;
        }
        f
    }
}

pub fn tonks_collapse(n: usize) -> TonksCollapse {
    let permutohedron = permutohedron_faces(n);
    let associahedron = associahedron_faces(n);
    let image = permutohedron
        .labels()
        .iter()
        .map(|p| associahedron.index_of(&tonks_image(p, n)).expect("image is a bracketing"))
        .collect();
    TonksCollapse {
        n,
        permutohedron,
        associahedron,
        image,
    }
}

/// Nonempty subsets of `0..=n`, dimension one less than the size.
pub fn simplex_faces(n: usize) -> FacePoset<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << (n + 1)))
        .map(|m| (0..=n).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    let mut poset = FacePoset::new();
    for s in &subsets {
        poset.insert(s.clone(), s.len() - 1);
    }
    for s in &subsets {
        if s.len() < 2 {
            continue;
        }
        let i = poset.index_of(s).unwrap();
        for k in 0..s.len() {
            let mut f = s.clone();
            f.remove(k);
            let j = poset.index_of(&f).unwrap();
            poset.add_facet(i, j);
        }
    }
    poset
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    One,
    Star,
}

/// Sign vectors in `{0, 1, *}^n`; dimension is the number of stars.
pub fn cube_faces(n: usize) -> FacePoset<Vec<Sign>> {
    let mut all: Vec<Vec<Sign>> = vec![Vec::new()];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|v| {
                [Sign::Zero, Sign::One, Sign::Star].into_iter().map(move |s| {
                    let mut w = v.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    let stars = |v: &Vec<Sign>| v.iter().filter(|&&s| s == Sign::Star).count();
    all.sort_by_key(|v| (stars(v), v.clone()));
    let mut poset = FacePoset::new();
    for v in &all {
        poset.insert(v.clone(), stars(v));
    }
    for v in &all {
        let i = poset.index_of(v).unwrap();
        for k in 0..n {
            if v[k] == Sign::Star {
                for s in [Sign::Zero, Sign::One] {
                    let mut f = v.clone();
                    f[k] = s;
                    let j = poset.index_of(&f).unwrap();
                    poset.add_facet(i, j);
                }
            }
        }
    }
    poset
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::permutohedron::parse_flag;

    #[test]
    fn associahedron_counts() {
        assert_eq!(associahedron_faces(0).f_vector(), vec![1]);
        assert_eq!(associahedron_faces(1).f_vector(), vec![2, 1]);
        assert_eq!(associahedron_faces(2).f_vector(), vec![5, 5, 1]);
        assert_eq!(associahedron_faces(3).f_vector(), vec![14, 21, 9, 1]);
        assert_eq!(associahedron_faces(4).f_vector()[0], 42);
    }

    #[test]
    fn simplex_and_cube_counts() {
        assert_eq!(simplex_faces(3).f_vector(), vec![4, 6, 4, 1]);
        assert_eq!(cube_faces(2).f_vector(), vec![4, 4, 1]);
        assert_eq!(cube_faces(3).f_vector(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn single_edge_collapse_in_degree_two() {
        let t = tonks_collapse(2);
        let collapsed: Vec<&OrderedPartition> = t.collapsed().iter().map(|&i| t.permutohedron.label(i)).collect();
        assert_eq!(collapsed, vec![&parse_flag("(012,02)").unwrap()]);
        let b = tonks_image(&parse_flag("(012,02,0)").unwrap(), 2);
        assert_eq!(format_bracketing(&b, 2), "((ab)(cd))");
        assert_eq!(t.image_f_vector(), vec![5, 5, 1]);
        assert!(t.is_surjective());
        assert!(t.preserves_order());
    }
}
