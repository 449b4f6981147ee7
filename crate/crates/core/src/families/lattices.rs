//! Built-in lattices: free chains, the cosimplicial and powerset lattices,
//! the mapping lattice, and the Toda and Whitehead diagrams.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Chain,
    Cosimplicial,
    Powerset,
    Mapping,
    Toda,
    Whitehead,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown lattice kind `{0}`")]
    UnknownKind(String),
    #[error("size {n} out of range for {kind} (allowed {min}..={max})")]
    Size { kind: String, n: usize, min: usize, max: usize },
    #[error("bad builtin spec `{0}`; expected kind or kind:n")]
    BadSpec(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 6] = [
        LatticeKind::Chain,
        LatticeKind::Cosimplicial,
        LatticeKind::Powerset,
        LatticeKind::Mapping,
        LatticeKind::Toda,
        LatticeKind::Whitehead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Chain => "chain",
            LatticeKind::Cosimplicial => "cosimplicial",
            LatticeKind::Powerset => "powerset",
            LatticeKind::Mapping => "mapping",
            LatticeKind::Toda => "toda",
            LatticeKind::Whitehead => "whitehead",
        }
    }

    /// Allowed sizes; fixed diagrams ignore `n`.
    pub fn size_range(self) -> (usize, usize) {
        match self {
            LatticeKind::Chain => (2, 8),
            LatticeKind::Cosimplicial | LatticeKind::Powerset => (1, 4),
            LatticeKind::Mapping => (0, 3),
            LatticeKind::Toda | LatticeKind::Whitehead => (0, usize::MAX),
        }
    }

    pub fn is_sized(self) -> bool {
        !matches!(self, LatticeKind::Toda | LatticeKind::Whitehead)
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LatticeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FamilyError::UnknownKind(s.to_string()))
    }
}

/// Parses `kind:n` (or a bare `toda` / `whitehead`).
pub fn parse_builtin(spec: &str) -> Result<(LatticeKind, usize), FamilyError> {
    let (kind, n) = match spec.split_once(':') {
        Some((k, n)) => (k, Some(n.parse::<usize>().map_err(|_| FamilyError::BadSpec(spec.to_string()))?)),
        None => (spec, None),
    };
    let kind: LatticeKind = kind.parse()?;
    match (kind.is_sized(), n) {
        (true, Some(n)) => Ok((kind, n)),
        (false, _) => Ok((kind, n.unwrap_or(0))),
        (true, None) => Err(FamilyError::BadSpec(spec.to_string())),
    }
}

pub fn make_presentation(kind: LatticeKind, n: usize) -> Result<Presentation, FamilyError> {
    let (min, max) = kind.size_range();
    if n < min || n > max {
        return Err(FamilyError::Size {
            kind: kind.name().to_string(),
            n,
            min,
            max,
        });
    }
    let p = match kind {
        LatticeKind::Chain => chain(n),
        LatticeKind::Cosimplicial => cosimplicial(n),
        LatticeKind::Powerset => powerset(n),
        LatticeKind::Mapping => mapping(n),
        LatticeKind::Toda => toda(),
        LatticeKind::Whitehead => whitehead(),
    };
    Ok(p)
}

pub fn make_lattice(kind: LatticeKind, n: usize) -> Result<Lattice, FamilyError> {
    Ok(Lattice::new(make_presentation(kind, n)?)?)
}

/// Name of node `[k]` in the cosimplicial lattice; `[-1]` is `vm1`.
pub fn cosimplicial_node(k: isize) -> String {
    level_name("v", k)
}

/// Name of the coface `d^k_i`; `d^0_0` is `eps`.
pub fn coface(k: usize, i: usize) -> String {
    if k == 0 {
        "eps".to_string()
    } else {
        format!("d{k}_{i}")
    }
}

fn level_name(prefix: &str, k: isize) -> String {
    if k < 0 {
        format!("{prefix}m{}", -k)
    } else {
        format!("{prefix}{k}")
    }
}

fn chain(n: usize) -> Presentation {
    let mut p = Presentation::new();
    for i in 0..=n {
        p.add_node(&format!("v{i}")).unwrap();
    }
    for i in 1..=n {
        p.add_arrow(&format!("f{i}"), &format!("v{}", i - 1), &format!("v{i}")).unwrap();
    }
    p.set_init("v0").unwrap();
    p.set_fin(&format!("v{n}")).unwrap();
    p
}

/// Nodes `[n] .. [0], [-1]`, cofaces `d^k_i : [k] -> [k-1]`, and the
/// cosimplicial identities `d^{k-1}_i d^k_j = d^{k-1}_{j-1} d^k_i`, `i < j`.
fn add_cosimplicial(p: &mut Presentation, n: usize, node: &dyn Fn(isize) -> String, arrow: &dyn Fn(usize, usize) -> String) {
    for k in (-1..=n as isize).rev() {
        p.add_node(&node(k)).unwrap();
    }
    for k in (0..=n).rev() {
        for i in 0..=k {
            p.add_arrow(&arrow(k, i), &node(k as isize), &node(k as isize - 1)).unwrap();
        }
    }
    for k in 1..=n {
        for j in 1..=k {
            for i in 0..j {
                p.add_relation(&[arrow(k, j), arrow(k - 1, i)], &[arrow(k, i), arrow(k - 1, j - 1)], false)
                    .unwrap();
            }
        }
    }
}

fn cosimplicial(n: usize) -> Presentation {
    let mut p = Presentation::new();
    add_cosimplicial(&mut p, n, &|k| cosimplicial_node(k), &coface);
    p.set_init(&cosimplicial_node(n as isize)).unwrap();
    p.set_fin(&cosimplicial_node(-1)).unwrap();
    p
}

/// Node name of a subset of `{0..n}` given as a bitmask: `S`, `S0`, `S02`.
pub fn subset_node(mask: u32, n: usize) -> String {
    let mut s = String::from("S");
    for i in 0..=n {
        if mask & (1 << i) != 0 {
            s.push_str(&i.to_string());
        }
    }
    s
}

fn powerset(n: usize) -> Presentation {
    let mut p = Presentation::new();
    let full: u32 = (1 << (n + 1)) - 1;
    let mut masks: Vec<u32> = (0..=full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for &m in &masks {
        p.add_node(&subset_node(m, n)).unwrap();
    }
    let arrow = |m: u32, x: usize| format!("{}_{}", subset_node(m, n), x);
    for &m in &masks {
        for x in 0..=n {
            if m & (1 << x) == 0 {
                p.add_arrow(&arrow(m, x), &subset_node(m, n), &subset_node(m | 1 << x, n)).unwrap();
            }
        }
    }
    for &m in &masks {
        for x in 0..=n {
            for y in x + 1..=n {
                if m & (1 << x) == 0 && m & (1 << y) == 0 {
                    p.add_relation(
                        &[arrow(m, x), arrow(m | 1 << x, y)],
                        &[arrow(m, y), arrow(m | 1 << y, x)],
                        false,
                    )
                    .unwrap();
                }
            }
        }
    }
    p.set_init(&subset_node(0, n)).unwrap();
    p.set_fin(&subset_node(full, n)).unwrap();
    p
}

pub fn mapping_source_node(k: isize) -> String {
    level_name("s", k)
}

pub fn mapping_target_node(k: isize) -> String {
    level_name("t", k)
}

pub fn mapping_source_coface(k: usize, i: usize) -> String {
    if k == 0 {
        "eps_s".to_string()
    } else {
        format!("ds{k}_{i}")
    }
}

pub fn mapping_target_coface(k: usize, i: usize) -> String {
    if k == 0 {
        "eps_t".to_string()
    } else {
        format!("dt{k}_{i}")
    }
}

/// The component `f_k : [k]' -> [k]''`.
pub fn mapping_arrow(k: isize) -> String {
    level_name("f", k)
}

/// Two cosimplicial lattices joined by `f_k`, with `f_{k-1} d'^k_j = d''^k_j f_k`.
fn mapping(n: usize) -> Presentation {
    let mut p = Presentation::new();
    add_cosimplicial(&mut p, n, &|k| mapping_source_node(k), &mapping_source_coface);
    add_cosimplicial(&mut p, n, &|k| mapping_target_node(k), &mapping_target_coface);
    for k in (-1..=n as isize).rev() {
        p.add_arrow(&mapping_arrow(k), &mapping_source_node(k), &mapping_target_node(k)).unwrap();
    }
    for k in (0..=n).rev() {
        for j in 0..=k {
            p.add_relation(
                &[mapping_source_coface(k, j), mapping_arrow(k as isize - 1)],
                &[mapping_arrow(k as isize), mapping_target_coface(k, j)],
                false,
            )
            .unwrap();
        }
    }
    p.set_init(&mapping_source_node(n as isize)).unwrap();
    p.set_fin(&mapping_target_node(-1)).unwrap();
    p
}

/// `X -gamma-> Y -beta-> Z -alpha-> W` with the null composites `d`, `e`, `f`.
fn toda() -> Presentation {
    let mut p = Presentation::new();
    for n in ["X", "Y", "Z", "W"] {
        p.add_node(n).unwrap();
    }
    for (a, s, t) in [
        ("gamma", "X", "Y"),
        ("beta", "Y", "Z"),
        ("alpha", "Z", "W"),
        ("d", "X", "Z"),
        ("e", "Y", "W"),
        ("f", "X", "W"),
    ] {
        p.add_arrow(a, s, t).unwrap();
    }
    p.add_relation(&["beta", "alpha"], &["e"], false).unwrap();
    p.add_relation(&["gamma", "beta"], &["d"], false).unwrap();
    p.add_relation(&["gamma", "e"], &["f"], false).unwrap();
    p.add_relation(&["d", "alpha"], &["f"], false).unwrap();
    for z in ["d", "e", "f"] {
        p.add_null(&[z]).unwrap();
    }
    p.set_init("X").unwrap();
    p.set_fin("W").unwrap();
    p
}

/// The triple Whitehead product diagram, with both null regions routed
/// through one node `star`.
fn whitehead() -> Presentation {
    let mut p = Presentation::new();
    for n in ["A", "B", "C", "D", "E", "F", "G", "H", "star", "X"] {
        p.add_node(n).unwrap();
    }
    for (a, s, t) in [
        ("ab", "A", "B"),
        ("ac", "A", "C"),
        ("bd", "B", "D"),
        ("cd", "C", "D"),
        ("be", "B", "E"),
        ("ef", "E", "F"),
        ("fd", "F", "D"),
        ("cg", "C", "G"),
        ("gh", "G", "H"),
        ("hd", "H", "D"),
        ("dx", "D", "X"),
        ("es", "E", "star"),
        ("gs", "G", "star"),
        ("sx", "star", "X"),
    ] {
        p.add_arrow(a, s, t).unwrap();
    }
    p.add_relation(&["ab", "bd"], &["ac", "cd"], false).unwrap();
    p.add_relation(&["be", "ef", "fd"], &["bd"], false).unwrap();
    p.add_relation(&["cg", "gh", "hd"], &["cd"], false).unwrap();
    p.add_relation(&["ef", "fd", "dx"], &["es", "sx"], false).unwrap();
    p.add_relation(&["gh", "hd", "dx"], &["gs", "sx"], false).unwrap();
    p.add_null(&["es", "sx"]).unwrap();
    p.add_null(&["gs", "sx"]).unwrap();
    p.set_init("A").unwrap();
    p.set_fin("X").unwrap();
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_of_generated_presentations() {
        let c = make_presentation(LatticeKind::Chain, 4).unwrap();
        assert_eq!((c.arrows().len(), c.relations().len()), (4, 0));
        let cs = make_presentation(LatticeKind::Cosimplicial, 2).unwrap();
        assert_eq!((cs.nodes().len(), cs.arrows().len(), cs.relations().len()), (4, 6, 4));
        let ps = make_presentation(LatticeKind::Powerset, 2).unwrap();
        assert_eq!((ps.nodes().len(), ps.arrows().len()), (8, 12));
        let t = make_presentation(LatticeKind::Toda, 0).unwrap();
        assert_eq!((t.relations().len(), t.null_marks().len()), (4, 3));
    }

    #[test]
    fn every_builtin_validates() {
        for kind in LatticeKind::ALL {
            let (lo, hi) = kind.size_range();
            for n in lo..=hi.min(3) {
                make_lattice(kind, n).unwrap_or_else(|e| panic!("{kind}:{n}: {e}"));
            }
        }
    }

    #[test]
    fn cosimplicial_two_letter_classes() {
        let l = make_lattice(LatticeKind::Cosimplicial, 2).unwrap();
        let v2 = l.node("v2").unwrap();
        let v0 = l.node("v0").unwrap();
        assert_eq!(l.morphism_classes(v2, v0).len(), 3);
        // (i, j) pairs written d^1_i d^2_j
        let class = |i: usize, j: usize| l.class_of_names(&[coface(2, j), coface(1, i)]).unwrap();
        assert_eq!(class(0, 1), class(0, 0));
        assert_eq!(class(0, 2), class(1, 0));
        assert_eq!(class(1, 2), class(1, 1));
        assert_ne!(class(0, 0), class(1, 1));
        assert_ne!(class(0, 0), class(1, 0));
    }

    #[test]
    fn coface_relation_in_degree_one() {
        let l = make_lattice(LatticeKind::Cosimplicial, 2).unwrap();
        let eps = l.class_of_names(&["eps"]).unwrap();
        let d0 = l.class_of_names(&["d1_0"]).unwrap();
        let d1 = l.class_of_names(&["d1_1"]).unwrap();
        assert_eq!(l.compose(d1, eps).unwrap(), l.compose(d0, eps).unwrap());
    }

    #[test]
    fn builtin_specs() {
        assert_eq!(parse_builtin("chain:4").unwrap(), (LatticeKind::Chain, 4));
        assert_eq!(parse_builtin("toda").unwrap().0, LatticeKind::Toda);
        assert!(parse_builtin("chain").is_err());
        assert!(parse_builtin("cube:2").is_err());
        assert!(make_lattice(LatticeKind::Cosimplicial, 9).is_err());
    }

    #[test]
    fn toda_unique_maximal_class() {
        let l = make_lattice(LatticeKind::Toda, 0).unwrap();
        let (x, w) = (l.node("X").unwrap(), l.node("W").unwrap());
        assert_eq!(l.morphism_classes(x, w).len(), 1);
        assert_eq!(l.class_size(l.max_class()), 4);
    }
}
