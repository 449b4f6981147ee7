//! Canonical text form of a presentation.

use std::fmt::Write;

use crate::lattice::Presentation;

/// Prints a presentation in the `.lat` format. Parsing the output yields
/// the same presentation, and printing that again yields the same text.
pub fn print_lattice(p: &Presentation) -> String {
    let mut s = String::from("format 1\n");
    if !p.nodes().is_empty() {
        writeln!(s, "node {}", p.nodes().join(" ")).unwrap();
    }
    if let Some(i) = p.init() {
        writeln!(s, "init {}", p.node_name(i)).unwrap();
    }
    if let Some(f) = p.fin() {
        writeln!(s, "fin {}", p.node_name(f)).unwrap();
    }
    for a in p.arrows() {
        writeln!(s, "arrow {}: {} -> {}", a.name, p.node_name(a.source), p.node_name(a.target)).unwrap();
    }
    let words = |path: &crate::lattice::Path| path.arrows().iter().map(|&a| p.arrow_name(a)).collect::<Vec<_>>().join(" ");
    for r in p.relations() {
        writeln!(s, "rel {} = {}", words(&r.lhs), words(&r.rhs)).unwrap();
    }
    for z in p.null_marks() {
        writeln!(s, "null {}", words(z)).unwrap();
    }
    for (i, r) in p.relations().iter().enumerate() {
        if r.strict {
            writeln!(s, "strict {i}").unwrap();
        }
    }
    s
}
