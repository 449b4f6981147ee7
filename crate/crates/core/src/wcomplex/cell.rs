//! Cells of the cubical W-complex.

use serde::{Deserialize, Serialize};

use crate::lattice::{Chain, ClassId, Lattice};

/// A chain of `m` classes together with the set `S` of internal positions
/// pinned at `t = 1`. Position `k` (1-based) sits between entries `k-1` and
/// `k` of the chain. The cell is a cube of dimension `(m-1) - |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub chain: Vec<ClassId>,
    /// Bit `k-1` set iff position `k` is in `S`.
    pub breaks: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    /// `t_k = 0`: compose across position `k`.
    Zero,
    /// `t_k = 1`: break at position `k`.
    One,
}

impl Cell {
    pub fn new(chain: Vec<ClassId>, breaks: &[usize]) -> Self {
        assert!(!chain.is_empty() && chain.len() <= 32, "chain length out of range");
        let mut mask = 0u32;
        for &k in breaks {
            assert!(k >= 1 && k < chain.len(), "break position {k} out of range");
            mask |= 1 << (k - 1);
        }
        Cell { chain, breaks: mask }
    }

    /// The vertex given by a chain: every internal position broken.
    pub fn vertex(chain: &Chain) -> Self {
        let m = chain.len();
        Cell {
            chain: chain.0.clone(),
            breaks: if m <= 1 { 0 } else { (1u32 << (m - 1)) - 1 },
        }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn internal_positions(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.internal_positions() - self.breaks.count_ones() as usize
    }

    pub fn is_break(&self, k: usize) -> bool {
        self.breaks & (1 << (k - 1)) != 0
    }

    pub fn break_positions(&self) -> Vec<usize> {
        (1..self.chain.len()).filter(|&k| self.is_break(k)).collect()
    }

    pub fn free_positions(&self) -> Vec<usize> {
        (1..self.chain.len()).filter(|&k| !self.is_break(k)).collect()
    }

    /// Subchains obtained by cutting at the break positions.
    pub fn parts(&self) -> Vec<&[ClassId]> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in self.break_positions() {
            out.push(&self.chain[start..k]);
            start = k;
        }
        out.push(&self.chain[start..]);
        out
    }

    /// At most one part of length greater than one.
    pub fn is_indecomposable(&self) -> bool {
        self.parts().iter().filter(|p| p.len() > 1).count() <= 1
    }

    pub fn one_face(&self, k: usize) -> Cell {
        debug_assert!(!self.is_break(k));
        Cell {
            chain: self.chain.clone(),
            breaks: self.breaks | 1 << (k - 1),
        }
    }

    pub fn zero_face(&self, k: usize, lattice: &Lattice) -> Cell {
        debug_assert!(!self.is_break(k));
        let mut chain = self.chain.clone();
        let composite = lattice
            .compose(chain[k - 1], chain[k])
            .expect("adjacent chain entries compose");
        chain[k - 1] = composite;
        chain.remove(k);
        let low = self.breaks & ((1u32 << (k - 1)) - 1);
        let high = (self.breaks >> k) << (k - 1);
        Cell {
            chain,
            breaks: low | high,
        }
    }

    pub fn face(&self, kind: FaceKind, k: usize, lattice: &Lattice) -> Cell {
        match kind {
            FaceKind::Zero => self.zero_face(k, lattice),
            FaceKind::One => self.one_face(k),
        }
    }

    /// Label such as `(f1)(f2.f3)(f4)`: parts in parentheses, free positions
    /// shown as `.`, composite classes written with `*`.
    pub fn label(&self, lattice: &Lattice) -> String {
        let mut s = String::from("(");
        for (i, &c) in self.chain.iter().enumerate() {
            if i > 0 {
                s.push_str(if self.is_break(i) { ")(" } else { "." });
            }
            s.push_str(&lattice.class_juxtaposed(c));
        }
        s.push(')');
        s
    }
}
