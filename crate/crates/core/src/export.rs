//! JSON, DOT and OFF output.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::Realization;
use crate::lattice::{ClassId, Lattice, Presentation};
use crate::wcomplex::{Cell, Face, FaceKind, HomComplex};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}")]
    Version(u32),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("cell {0}: {1}")]
    BadCell(usize, String),
    #[error("cells or faces are not in canonical order")]
    Order,
    #[error("OFF: {0}")]
    Off(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCell {
    pub id: usize,
    pub dim: usize,
    /// Class representatives as dotted arrow paths.
    pub chain: Vec<String>,
    pub breaks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFace {
    pub from: usize,
    pub to: usize,
    pub kind: FaceKind,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub format_version: u32,
    pub source: String,
    pub target: String,
    pub cells: Vec<JsonCell>,
    pub faces: Vec<JsonFace>,
    pub fvector: Vec<usize>,
}

pub fn complex_to_json(h: &HomComplex, l: &Lattice) -> JsonComplex {
    let cells = h
        .cells()
        .iter()
        .enumerate()
        .map(|(id, c)| JsonCell {
            id,
            dim: c.dim(),
            chain: c.chain.iter().map(|&k| l.class_label(k)).collect(),
            breaks: c.break_positions(),
        })
        .collect();
    let faces = (0..h.len())
        .flat_map(|i| {
            h.faces(i).iter().map(move |f| JsonFace {
                from: i,
                to: f.cell,
                kind: f.kind,
                pos: f.pos,
            })
        })
        .collect();
    JsonComplex {
        format_version: FORMAT_VERSION,
        source: l.node_name(h.source()).to_string(),
        target: l.node_name(h.target()).to_string(),
        cells,
        faces,
        fvector: h.f_vector(),
    }
}

pub fn complex_json_string(h: &HomComplex, l: &Lattice) -> String {
    serde_json::to_string_pretty(&complex_to_json(h, l)).expect("plain data serializes")
}

/// Reads a complex written by [`complex_json_string`] back against the same lattice.
pub fn complex_from_json(text: &str, l: &Lattice) -> Result<HomComplex, ExportError> {
    let j: JsonComplex = serde_json::from_str(text)?;
    if j.format_version != FORMAT_VERSION {
        return Err(ExportError::Version(j.format_version));
    }
    let node = |n: &str| l.node(n).map_err(|_| ExportError::UnknownNode(n.to_string()));
    let (u, v) = (node(&j.source)?, node(&j.target)?);
    let mut cells = Vec::with_capacity(j.cells.len());
    for (i, jc) in j.cells.iter().enumerate() {
        if jc.id != i {
            return Err(ExportError::Order);
        }
        let chain: Vec<ClassId> = jc
            .chain
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.split('.').collect();
                l.class_of_names(&names).map_err(|e| ExportError::BadCell(i, e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        if jc.breaks.iter().any(|&k| k == 0 || k >= chain.len()) {
            return Err(ExportError::BadCell(i, "break position out of range".into()));
        }
        let cell = Cell::new(chain, &jc.breaks);
        if cell.dim() != jc.dim {
            return Err(ExportError::BadCell(i, format!("declared dimension {} but cell has {}", jc.dim, cell.dim())));
        }
        cells.push(cell);
    }
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); cells.len()];
    for f in &j.faces {
        if f.from >= cells.len() || f.to >= cells.len() {
            return Err(ExportError::Order);
        }
        faces[f.from].push(Face {
            kind: f.kind,
            pos: f.pos,
            cell: f.to,
        });
    }
    HomComplex::from_parts(u, v, cells, faces).ok_or(ExportError::Order)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Generator graph with one edge per arrow and one note per relation.
/// Null-marked generators are dashed; strict relations get a bold border.
pub fn lattice_to_dot(p: &Presentation) -> String {
    let mut s = String::from("digraph lattice {\n  rankdir=LR;\n");
    for (i, n) in p.nodes().iter().enumerate() {
        let mut attrs = Vec::new();
        if p.init().map(|x| x.0) == Some(i) || p.fin().map(|x| x.0) == Some(i) {
            attrs.push("shape=doublecircle");
        }
        if attrs.is_empty() {
            writeln!(s, "  {};", quote(n)).unwrap();
        } else {
            writeln!(s, "  {} [{}];", quote(n), attrs.join(", ")).unwrap();
        }
    }
    for (i, a) in p.arrows().iter().enumerate() {
        let null = p.null_marks().iter().any(|z| z.arrows().len() == 1 && z.arrows()[0].0 == i);
        let style = if null { ", style=dashed" } else { "" };
        writeln!(
            s,
            "  {} -> {} [label={}{style}];",
            quote(p.node_name(a.source)),
            quote(p.node_name(a.target)),
            quote(&a.name)
        )
        .unwrap();
    }
    for (i, r) in p.relations().iter().enumerate() {
        let text = format!("{} = {}", p.path_string(&r.lhs), p.path_string(&r.rhs));
        let bold = if r.strict { ", style=bold" } else { "" };
        writeln!(s, "  rel{i} [shape=note, label={}{bold}];", quote(&text)).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn realization_to_off(r: &Realization) -> String {
    let mut s = format!("OFF\n{} {} 0\n", r.vertices.len(), r.faces.len());
    for v in &r.vertices {
        let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
        writeln!(s, "{:.12} {:.12} {:.12}", clean(v[0]), clean(v[1]), clean(v[2])).unwrap();
    }
    for f in &r.faces {
        let idx: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(s, "{} {}", f.len(), idx.join(" ")).unwrap();
    }
    s
}

pub fn parse_off(text: &str) -> Result<Realization, ExportError> {
    let bad = |m: &str| ExportError::Off(m.to_string());
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some("OFF") {
        return Err(bad("missing OFF header"));
    }
    let counts: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("missing counts"))?
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| bad("bad counts"))?;
    let [nv, nf, _] = counts[..] else { return Err(bad("bad counts")) };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let xs: Vec<f64> = lines
            .next()
            .ok_or_else(|| bad("truncated vertices"))?
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad coordinate"))?;
        let [x, y, z] = xs[..] else { return Err(bad("vertex needs 3 coordinates")) };
        vertices.push([x, y, z]);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let xs: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("truncated faces"))?
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad face"))?;
        if xs.is_empty() || xs[0] + 1 != xs.len() || xs[1..].iter().any(|&i| i >= nv) {
            return Err(bad("bad face"));
        }
        faces.push(xs[1..].to_vec());
    }
    Ok(Realization { vertices, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_lattice, realize_family, LatticeKind};
    use crate::wcomplex::build_hom_complex;

    #[test]
    fn l3_json_has_nine_cells_and_round_trips() {
        let l = make_lattice(LatticeKind::Chain, 3).unwrap();
        let h = build_hom_complex(&l, l.init(), l.fin());
        let text = complex_json_string(&h, &l);
        let j: JsonComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(j.cells.len(), 9);
        assert_eq!(j.fvector, vec![4, 4, 1]);
        let back = complex_from_json(&text, &l).unwrap();
        assert_eq!(back.cells(), h.cells());
        for i in 0..h.len() {
            assert_eq!(back.faces(i), h.faces(i));
            assert_eq!(back.vertex_set(i), h.vertex_set(i));
        }
    }

    #[test]
    fn tampered_json_is_rejected() {
        let l = make_lattice(LatticeKind::Chain, 3).unwrap();
        let h = build_hom_complex(&l, l.init(), l.fin());
        let text = complex_json_string(&h, &l);
        assert!(complex_from_json(&text.replace("\"f2\"", "\"zz\""), &l).is_err());
        assert!(complex_from_json("{}", &l).is_err());
    }

    #[test]
    fn toda_dot() {
        let l = make_lattice(LatticeKind::Toda, 0).unwrap();
        let dot = lattice_to_dot(l.presentation());
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert_eq!(dot.matches("shape=note").count(), 4);
        assert_eq!(dot.matches("style=dashed").count(), 3);
    }

    #[test]
    fn permutohedron_off() {
        let r = realize_family("permutohedron", 3).unwrap();
        let off = realization_to_off(&r);
        let back = parse_off(&off).unwrap();
        assert_eq!((back.vertices.len(), back.faces.len()), (24, 14));
        assert_eq!(back.faces, r.faces);
        for (a, b) in back.vertices.iter().zip(&r.vertices) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() < 1e-9);
            }
        }
    }
}
