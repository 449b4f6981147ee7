//! Semantic checks on a presentation.

use std::fmt;

use super::category::{Congruence, LatticeError};
use super::presentation::{NodeId, Presentation, StructuralError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A directed cycle of generating arrows, listed as node names.
    Cycle(Vec<String>),
    Unreachable(String),
    NotCoreachable(String),
    /// More than one class from init to fin; representatives given.
    MultipleMaximalClasses(Vec<String>),
    NoMaximalArrow,
    /// No node other than init and fin.
    Trivial,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle(nodes) => write!(f, "cycle {}", nodes.join(" -> ")),
            Violation::Unreachable(n) => write!(f, "node `{n}` is not reachable from init"),
            Violation::NotCoreachable(n) => write!(f, "fin is not reachable from node `{n}`"),
            Violation::MultipleMaximalClasses(reps) => {
                write!(f, "{} classes from init to fin: {}", reps.len(), reps.join(", "))
            }
            Violation::NoMaximalArrow => write!(f, "no path from init to fin"),
            Violation::Trivial => write!(f, "no node other than init and fin"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn find_cycle(p: &Presentation) -> Option<Vec<NodeId>> {
    // 0 unvisited, 1 on stack, 2 done
    let n = p.nodes().len();
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, succ(p, root))];
        state[root] = 1;
        while let Some((v, rest)) = stack.last_mut() {
            let v = *v;
            match rest.pop() {
                Some(w) if state[w] == 0 => {
                    state[w] = 1;
                    parent[w] = v;
                    stack.push((w, succ(p, w)));
                }
                Some(w) if state[w] == 1 => {
                    let mut back = vec![v];
                    let mut x = v;
                    while x != w {
                        x = parent[x];
                        back.push(x);
                    }
                    back.reverse();
                    back.push(w);
                    return Some(back.into_iter().map(NodeId).collect());
                }
                Some(_) => {}
                None => {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
    }
    None
}

fn succ(p: &Presentation, v: usize) -> Vec<usize> {
    let mut s: Vec<usize> = p.out_arrows(NodeId(v)).map(|a| p.arrows()[a.0].target.0).collect();
    s.reverse();
    s
}

fn reach(p: &Presentation, start: NodeId, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; p.nodes().len()];
    let mut stack = vec![start];
    seen[start.0] = true;
    while let Some(v) = stack.pop() {
        for a in p.arrows() {
            let (from, to) = if forward { (a.source, a.target) } else { (a.target, a.source) };
            if from == v && !seen[to.0] {
                seen[to.0] = true;
                stack.push(to);
            }
        }
    }
    seen
}

/// Checks the four lattice invariants. Structural problems (missing init or
/// fin) are errors; semantic failures are collected in the report.
pub fn validate(p: &Presentation) -> Result<ValidationReport, LatticeError> {
    let init = p.init().ok_or(StructuralError::MissingInit)?;
    let fin = p.fin().ok_or(StructuralError::MissingFin)?;
    let mut report = ValidationReport::default();

    let cycle = find_cycle(p);
    if let Some(c) = &cycle {
        report
            .violations
            .push(Violation::Cycle(c.iter().map(|&n| p.node_name(n).to_string()).collect()));
    }

    let fwd = reach(p, init, true);
    let bwd = reach(p, fin, false);
    for (i, name) in p.nodes().iter().enumerate() {
        if !fwd[i] {
            report.violations.push(Violation::Unreachable(name.clone()));
        }
        if !bwd[i] {
            report.violations.push(Violation::NotCoreachable(name.clone()));
        }
    }

    if cycle.is_none() {
        let cong = Congruence::compute(p)?;
        match cong.between.get(&(init, fin)).map(Vec::len).unwrap_or(0) {
            0 => report.violations.push(Violation::NoMaximalArrow),
            1 => {}
            _ => report.violations.push(Violation::MultipleMaximalClasses(
                cong.between[&(init, fin)]
                    .iter()
                    .map(|&c| p.path_string(&cong.classes[c.0].representative))
                    .collect(),
            )),
        }
    }

    if !(0..p.nodes().len()).any(|i| NodeId(i) != init && NodeId(i) != fin) {
        report.violations.push(Violation::Trivial);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3() -> Presentation {
        let mut p = Presentation::new();
        for n in ["v0", "v1", "v2", "v3"] {
            p.add_node(n).unwrap();
        }
        p.add_arrow("f", "v0", "v1").unwrap();
        p.add_arrow("g", "v1", "v2").unwrap();
        p.add_arrow("h", "v2", "v3").unwrap();
        p.set_init("v0").unwrap();
        p.set_fin("v3").unwrap();
        p
    }

    #[test]
    fn l3_passes() {
        assert!(validate(&l3()).unwrap().passed());
    }

    #[test]
    fn back_arrow_is_a_cycle() {
        let mut p = l3();
        p.add_arrow("back", "v3", "v0").unwrap();
        let r = validate(&p).unwrap();
        match &r.violations[..] {
            [Violation::Cycle(c)] => {
                assert_eq!(c.first(), c.last());
                assert_eq!(c.len(), 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parallel_unrelated_arrow_gives_two_maximal_classes() {
        let mut p = l3();
        p.add_arrow("x", "v0", "v3").unwrap();
        let r = validate(&p).unwrap();
        assert!(matches!(&r.violations[..], [Violation::MultipleMaximalClasses(v)] if v.len() == 2));
    }

    #[test]
    fn stray_node_is_named() {
        let mut p = l3();
        p.add_node("loose").unwrap();
        let r = validate(&p).unwrap();
        assert!(r.violations.contains(&Violation::Unreachable("loose".into())));
        assert!(r.violations.contains(&Violation::NotCoreachable("loose".into())));
    }

    #[test]
    fn single_arrow_is_trivial() {
        let mut p = Presentation::new();
        p.add_node("a").unwrap();
        p.add_node("b").unwrap();
        p.add_arrow("f", "a", "b").unwrap();
        p.set_init("a").unwrap();
        p.set_fin("b").unwrap();
        assert_eq!(validate(&p).unwrap().violations, vec![Violation::Trivial]);
    }
}
