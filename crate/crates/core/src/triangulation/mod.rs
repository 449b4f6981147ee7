//! The simplicial model of a hom-space: one `r`-simplex per chain and
//! ordered partition `(U_1, ..., U_r)` of a set of its internal positions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::homology::{ChainComplex, HomologyResult};
use crate::lattice::{ClassId, Lattice, NodeId};
use crate::poset::euler_of;
use crate::wcomplex::HomComplex;

/// A nondegenerate simplex. Parts are bitmasks of positions (bit `k-1` for
/// position `k`), all nonempty and pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub chain: Vec<ClassId>,
    pub parts: Vec<u32>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    /// Composes the chain at every position in `mask` and renumbers the
    /// remaining positions.
    fn compose_at(&self, mask: u32, lattice: &Lattice) -> (Vec<ClassId>, impl Fn(u32) -> u32) {
        let mut chain = vec![self.chain[0]];
        for k in 1..self.chain.len() {
            if mask & (1 << (k - 1)) != 0 {
                let last = chain.pop().unwrap();
                chain.push(lattice.compose(last, self.chain[k]).expect("chain entries compose"));
            } else {
                chain.push(self.chain[k]);
            }
        }
        let positions = self.chain.len() - 1;
        let renumber = move |m: u32| {
            let mut out = 0u32;
            let mut next = 0;
            for k in 0..positions {
                if mask & (1 << k) != 0 {
                    continue;
                }
                if m & (1 << k) != 0 {
                    out |= 1 << next;
                }
                next += 1;
            }
            out
        };
        (chain, renumber)
    }

    /// The face `d_i`.
    pub fn face(&self, i: usize, lattice: &Lattice) -> Simplex {
        let r = self.parts.len();
        assert!(r > 0 && i <= r);
        if i == 0 {
            let (chain, renumber) = self.compose_at(self.parts[0], lattice);
            Simplex {
                chain,
                parts: self.parts[1..].iter().map(|&m| renumber(m)).collect(),
            }
        } else if i == r {
            Simplex {
                chain: self.chain.clone(),
                parts: self.parts[..r - 1].to_vec(),
            }
        } else {
            let mut parts = self.parts[..i - 1].to_vec();
            parts.push(self.parts[i - 1] | self.parts[i]);
            parts.extend_from_slice(&self.parts[i + 1..]);
            Simplex {
                chain: self.chain.clone(),
                parts,
            }
        }
    }

    pub fn label(&self, lattice: &Lattice) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|&m| {
                let ks: Vec<String> = (0..32).filter(|k| m & (1 << k) != 0).map(|k| (k + 1).to_string()).collect();
                format!("{{{}}}", ks.join(","))
            })
            .collect();
        format!("{}[{}]", lattice.chain_label(&self.chain), parts.join(""))
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialModel {
    pub source: NodeId,
    pub target: NodeId,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// `faces[s][i]` is the index of `d_i` of simplex `s`.
    faces: Vec<Vec<usize>>,
}

fn ordered_partitions_of_subsets(positions: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(remaining: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(acc.clone());
        let mut sub = remaining;
        while sub != 0 {
            acc.push(sub);
            go(remaining & !sub, acc, out);
            acc.pop();
            sub = (sub - 1) & remaining;
        }
    }
    go((1u32 << positions) - 1, &mut Vec::new(), &mut out);
    out
}

pub fn build_simplicial_hom(lattice: &Lattice, u: NodeId, v: NodeId) -> SimplicialModel {
    let mut simplices = Vec::new();
    for chain in lattice.enumerate_chains(u, v, None) {
        for parts in ordered_partitions_of_subsets(chain.len() - 1) {
            simplices.push(Simplex {
                chain: chain.0.clone(),
                parts,
            });
        }
    }
    simplices.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    let index: HashMap<Simplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let faces = simplices
        .iter()
        .map(|s| {
            if s.dim() == 0 {
                return Vec::new();
            }
            (0..=s.dim()).map(|i| index[&s.face(i, lattice)]).collect()
        })
        .collect();
    SimplicialModel {
        source: u,
        target: v,
        simplices,
        index,
        faces,
    }
}

impl SimplicialModel {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn faces(&self, s: usize) -> &[usize] {
        &self.faces[s]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.simplices.iter().map(|s| s.dim() + 1).max().unwrap_or(0);
        let mut f = vec![0; top];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    pub fn euler(&self) -> i64 {
        euler_of(&self.f_vector())
    }

    /// `d_i d_j = d_{j-1} d_i` for all `i < j` on every simplex of dimension at least two.
    pub fn simplicial_identities_hold(&self) -> bool {
        (0..self.simplices.len()).all(|s| {
            let r = self.simplices[s].dim();
            r < 2 || (0..=r).all(|j| (0..j).all(|i| self.faces[self.faces[s][j]][i] == self.faces[self.faces[s][i]][j - 1]))
        })
    }

    /// Normalized chain complex with boundary `sum (-1)^i d_i`.
    pub fn chain_complex(&self) -> ChainComplex {
        let f = self.f_vector();
        let mut pos = vec![0usize; self.simplices.len()];
        let mut counters = vec![0usize; f.len()];
        for (i, s) in self.simplices.iter().enumerate() {
            pos[i] = counters[s.dim()];
            counters[s.dim()] += 1;
        }
        let mut cc = ChainComplex::new(f);
        for (i, s) in self.simplices.iter().enumerate() {
            let r = s.dim();
            for (k, &face) in self.faces[i].iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                cc.boundaries[r].add_to(pos[face], pos[i], BigInt::from(sign));
            }
        }
        cc
    }

    pub fn homology(&self) -> HomologyResult {
        self.chain_complex().homology()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelComparison {
    pub euler: (i64, i64),
    pub vertices: (usize, usize),
    pub betti: (Vec<usize>, Vec<usize>),
    pub differences: Vec<String>,
}

impl ModelComparison {
    pub fn agrees(&self) -> bool {
        self.differences.is_empty()
    }
}

impl fmt::Display for ModelComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "euler: cubical {} simplicial {}", self.euler.0, self.euler.1)?;
        writeln!(f, "vertices: cubical {} simplicial {}", self.vertices.0, self.vertices.1)?;
        writeln!(f, "betti: cubical {:?} simplicial {:?}", self.betti.0, self.betti.1)?;
        for d in &self.differences {
            writeln!(f, "mismatch: {d}")?;
        }
        Ok(())
    }
}

fn trim(mut b: Vec<usize>) -> Vec<usize> {
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

/// Compares the cubical and simplicial models of the same hom-space.
pub fn compare_models(h: &HomComplex, s: &SimplicialModel) -> ModelComparison {
    let cubical = h.homology(None).expect("no subcomplex given");
    let simplicial = s.homology();
    let euler = (h.euler(), s.euler());
    let vertices = (h.cells_of_dim(0).len(), s.f_vector().first().copied().unwrap_or(0));
    let betti = (trim(cubical.betti.clone()), trim(simplicial.betti.clone()));
    let mut differences = Vec::new();
    if euler.0 != euler.1 {
        differences.push(format!("euler {} vs {}", euler.0, euler.1));
    }
    if vertices.0 != vertices.1 {
        differences.push(format!("vertex count {} vs {}", vertices.0, vertices.1));
    }
    if betti.0 != betti.1 {
        differences.push(format!("betti {:?} vs {:?}", betti.0, betti.1));
    }
    if cubical.torsion != simplicial.torsion && !(cubical.is_torsion_free() && simplicial.is_torsion_free()) {
        differences.push("torsion differs".to_string());
    }
    ModelComparison {
        euler,
        vertices,
        betti,
        differences,
    }
}
