//! Three-dimensional realizations of the polytope families, for OFF output.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use thiserror::Error;

use crate::poset::FacePoset;

use super::associahedron::{cube_faces, simplex_faces, tonks_collapse, Sign};
use super::permutohedron::{permutohedron_faces, vertex_coordinates};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("only 3-dimensional polytopes can be realized, this one has dimension {0}")]
    NotThreeDimensional(usize),
    #[error("face {0} is not a polygon")]
    NotAPolygon(usize),
    #[error("unknown polytope family `{0}`")]
    UnknownFamily(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub vertices: Vec<[f64; 3]>,
    /// Polygons as cyclic vertex lists, oriented outward.
    pub faces: Vec<Vec<usize>>,
}

/// The family names accepted by [`realize_family`] and `family` commands.
pub const POLYTOPE_FAMILIES: [&str; 4] = ["permutohedron", "associahedron", "simplex", "cube"];

/// Orthonormal basis of the hyperplane `x_0 + x_1 + x_2 + x_3 = const`.
fn project(x: &[f64]) -> [f64; 3] {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let s12 = 12f64.sqrt();
    [
        (x[0] - x[1]) / s2,
        (x[0] + x[1] - 2.0 * x[2]) / s6,
        (x[0] + x[1] + x[2] - 3.0 * x[3]) / s12,
    ]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn centroid(points: impl Iterator<Item = [f64; 3]>) -> [f64; 3] {
    let mut c = [0.0; 3];
    let mut n = 0.0;
    for p in points {
        for k in 0..3 {
            c[k] += p[k];
        }
        n += 1.0;
    }
    c.map(|x| x / n)
}

/// Builds polygons for the 2-faces of a 3-dimensional face poset, given
/// coordinates for its vertices (keyed by poset index).
pub fn realize<L: Clone + Eq + Hash>(
    poset: &FacePoset<L>,
    coords: &HashMap<usize, [f64; 3]>,
) -> Result<Realization, RealizationError> {
    let dim = poset.max_dim().unwrap_or(0);
    if dim != 3 {
        return Err(RealizationError::NotThreeDimensional(dim));
    }
    let vertex_ids: Vec<usize> = poset.of_dim(0).collect();
    let position: HashMap<usize, usize> = vertex_ids.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let vertices: Vec<[f64; 3]> = vertex_ids.iter().map(|v| coords[v]).collect();
    let center = centroid(vertices.iter().copied());
    let mut faces = Vec::new();
    for f in poset.of_dim(2) {
        let edges: Vec<Vec<usize>> = poset
            .facets(f)
            .iter()
            .map(|&e| poset.vertex_set(e).into_iter().collect())
            .collect();
        if edges.iter().any(|e| e.len() != 2) {
            return Err(RealizationError::NotAPolygon(f));
        }
        let mut cycle = vec![edges[0][0], edges[0][1]];
        let mut used: BTreeSet<usize> = [0].into_iter().collect();
        while used.len() < edges.len() {
            let tail = *cycle.last().unwrap();
            let next = (0..edges.len()).find(|k| !used.contains(k) && edges[*k].contains(&tail));
            let Some(k) = next else { return Err(RealizationError::NotAPolygon(f)) };
            used.insert(k);
            let other = if edges[k][0] == tail { edges[k][1] } else { edges[k][0] };
            if other != cycle[0] {
                cycle.push(other);
            }
        }
        let mut poly: Vec<usize> = cycle.iter().map(|v| position[v]).collect();
        let pts: Vec<[f64; 3]> = poly.iter().map(|&k| vertices[k]).collect();
        let mut normal = [0.0; 3];
        for k in 0..pts.len() {
            let c = cross(pts[k], pts[(k + 1) % pts.len()]);
            for a in 0..3 {
                normal[a] += c[a];
            }
        }
        let out = sub(centroid(pts.iter().copied()), center);
        if dot(normal, out) < 0.0 {
            poly.reverse();
        }
        faces.push(poly);
    }
    Ok(Realization { vertices, faces })
}

pub fn realize_permutohedron(n: usize) -> Result<Realization, RealizationError> {
    let pe = permutohedron_faces(n);
    let coords = pe
        .of_dim(0)
        .map(|v| {
            let x: Vec<f64> = vertex_coordinates(pe.label(v)).into_iter().map(|c| c as f64).collect();
            (v, if x.len() == 4 { project(&x) } else { [0.0; 3] })
        })
        .collect();
    realize(&pe, &coords)
}

/// Each associahedron vertex sits at the average of the permutohedron
/// vertices collapsed onto it.
pub fn realize_associahedron(n: usize) -> Result<Realization, RealizationError> {
    let t = tonks_collapse(n);
    let mut sums: HashMap<usize, ([f64; 3], f64)> = HashMap::new();
    for v in t.permutohedron.of_dim(0) {
        let x: Vec<f64> = vertex_coordinates(t.permutohedron.label(v)).into_iter().map(|c| c as f64).collect();
        let p = if x.len() == 4 { project(&x) } else { [0.0; 3] };
        let e = sums.entry(t.image[v]).or_insert(([0.0; 3], 0.0));
        for k in 0..3 {
            e.0[k] += p[k];
        }
        e.1 += 1.0;
    }
    let coords = sums.into_iter().map(|(k, (s, c))| (k, s.map(|x| x / c))).collect();
    realize(&t.associahedron, &coords)
}

pub fn realize_simplex(n: usize) -> Result<Realization, RealizationError> {
    let s = simplex_faces(n);
    let coords = s
        .of_dim(0)
        .map(|v| {
            let mut x = vec![0.0; n + 1];
            x[s.label(v)[0]] = 1.0;
            (v, if x.len() == 4 { project(&x) } else { [0.0; 3] })
        })
        .collect();
    realize(&s, &coords)
}

pub fn realize_cube(n: usize) -> Result<Realization, RealizationError> {
    let c = cube_faces(n);
    let coords = c
        .of_dim(0)
        .map(|v| {
            let mut x = [0.0; 3];
            for (k, s) in c.label(v).iter().enumerate().take(3) {
                x[k] = if *s == Sign::One { 1.0 } else { 0.0 };
            }
            (v, x)
        })
        .collect();
    realize(&c, &coords)
}

pub fn realize_family(name: &str, n: usize) -> Result<Realization, RealizationError> {
    match name {
        "permutohedron" => realize_permutohedron(n),
        "associahedron" => realize_associahedron(n),
        "simplex" => realize_simplex(n),
        "cube" => realize_cube(n),
        other => Err(RealizationError::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_closed(r: &Realization) {
        // every edge used by exactly two faces, once in each direction
        let mut directed = HashMap::new();
        for f in &r.faces {
            for k in 0..f.len() {
                *directed.entry((f[k], f[(k + 1) % f.len()])).or_insert(0) += 1;
            }
        }
        for (&(a, b), &count) in &directed {
            assert_eq!(count, 1);
            assert_eq!(directed.get(&(b, a)), Some(&1));
        }
        let euler = r.vertices.len() as i64 - directed.len() as i64 / 2 + r.faces.len() as i64;
        assert_eq!(euler, 2);
    }

    #[test]
    fn permutohedron_surface() {
        let r = realize_permutohedron(3).unwrap();
        assert_eq!((r.vertices.len(), r.faces.len()), (24, 14));
        check_closed(&r);
        // all vertices equidistant from the centre
        let c = centroid(r.vertices.iter().copied());
        let d0 = dot(sub(r.vertices[0], c), sub(r.vertices[0], c));
        assert!(r.vertices.iter().all(|&v| (dot(sub(v, c), sub(v, c)) - d0).abs() < 1e-9));
    }

    #[test]
    fn other_surfaces() {
        let k = realize_associahedron(3).unwrap();
        assert_eq!((k.vertices.len(), k.faces.len()), (14, 9));
        check_closed(&k);
        check_closed(&realize_cube(3).unwrap());
        check_closed(&realize_simplex(3).unwrap());
        assert_eq!(realize_permutohedron(2), Err(RealizationError::NotThreeDimensional(2)));
    }
}
