use std::collections::BTreeSet;

use bvw_core::families::*;
use bvw_core::homology::{order_chain_complex, smith_normal_form, IntegerMatrix};
use bvw_core::lattice::{Lattice, NodeId};
use bvw_core::wcomplex::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

mod common;

const SPECS: [&str; 9] = [
    "chain:3",
    "chain:4",
    "cosimplicial:2",
    "powerset:2",
    "mapping:1",
    "mapping:2",
    "toda",
    "whitehead",
    "cosimplicial:1",
];

fn lattice(spec: &str) -> Lattice {
    let (k, n) = parse_builtin(spec).unwrap();
    make_lattice(k, n).unwrap()
}

/// A path obtained by a walk that follows `choices` until it gets stuck.
fn walk(l: &Lattice, start: usize, choices: &[usize]) -> Vec<String> {
    let p = l.presentation();
    let mut at = NodeId(start % p.nodes().len());
    let mut names = Vec::new();
    for &c in choices {
        let out: Vec<_> = p.arrows().iter().filter(|a| a.source == at).collect();
        if out.is_empty() {
            break;
        }
        let a = out[c % out.len()];
        names.push(a.name.clone());
        at = a.target;
    }
    names
}

proptest! {
    #[test]
    fn congruence_respects_composition(spec in 0..SPECS.len(), start in 0usize..20, choices in prop::collection::vec(0usize..5, 1..6)) {
        let l = lattice(SPECS[spec]);
        let names = walk(&l, start, &choices);
        prop_assume!(!names.is_empty());
        let whole = l.class_of_names(&names).unwrap();
        let gens: Vec<_> = names.iter().map(|n| l.class_of_names(&[n]).unwrap()).collect();
        prop_assert_eq!(l.compose_chain(&gens), whole);
        for cut in 1..names.len() {
            let a = l.class_of_names(&names[..cut]).unwrap();
            let b = l.class_of_names(&names[cut..]).unwrap();
            prop_assert_eq!(l.compose(a, b).unwrap(), whole);
        }
    }

    #[test]
    fn nulls_are_closed_under_composition(n in 2usize..6, marks in prop::collection::vec((0usize..6, 1usize..4), 1..4)) {
        let mut p = make_presentation(LatticeKind::Chain, n).unwrap();
        for (start, len) in marks {
            let start = start % n;
            let end = (start + len).min(n);
            let names: Vec<String> = (start..end).map(|i| format!("f{}", i + 1)).collect();
            p.add_null(&names).unwrap();
        }
        let l = Lattice::new(p).unwrap();
        for c in 0..l.class_count() {
            let c = l.classes()[c].id;
            if !l.is_null(c) {
                continue;
            }
            for d in l.classes() {
                if let Ok(x) = l.compose(c, d.id) {
                    prop_assert!(l.is_null(x));
                }
                if let Ok(x) = l.compose(d.id, c) {
                    prop_assert!(l.is_null(x));
                }
            }
        }
    }

    #[test]
    fn cone_round_trip(spec in 0..SPECS.len(), pick in 0usize..1000, raw in prop::collection::vec((0i64..=8, 1i64..=8), 0..8)) {
        let l = lattice(SPECS[spec]);
        let chains = l.enumerate_chains(l.init(), l.fin(), None);
        let c = &chains[pick % chains.len()];
        let coords: Vec<BigRational> = (0..c.len() - 1)
            .map(|i| {
                let (a, b) = raw.get(i).copied().unwrap_or((1, 1));
                BigRational::new(BigInt::from(a.min(b)), BigInt::from(b))
            })
            .collect();
        let p = PointRep::new(c.0.clone(), coords).unwrap();
        let canon = canonicalize_point(&p, &l).unwrap();
        let image = cone_beta(&p, &l).unwrap();
        if let ConeImage::Point { s, basis } = &image {
            prop_assert!(s.is_positive());
            prop_assert!(basis.max_coord() == BigRational::from_integer(1.into()));
        }
        prop_assert_eq!(cone_alpha_image(&image, &l).unwrap(), canon);
    }

    #[test]
    fn smith_matches_determinantal_divisors(m in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 4)) {
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&m));
        let got: Vec<BigInt> = snf.diagonal.iter().filter(|x| !x.is_zero()).map(|x| x.abs()).collect();
        prop_assert_eq!(got, common::invariant_factors(&m));
    }

    #[test]
    fn subcomplex_boundaries_square_to_zero(spec in 0..SPECS.len(), k in 0usize..4, basis in any::<bool>()) {
        let l = lattice(SPECS[spec]);
        let h = build_hom_complex(&l, l.init(), l.fin());
        let h = if basis { h.basis_subcomplex(&l) } else { h };
        let s = h.skeleton(k);
        let cc = order_chain_complex(&s.face_poset(), None).unwrap();
        prop_assert!(cc.boundary_squares_to_zero());
    }

    #[test]
    fn dword_bijection(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), len in 1usize..=5) {
        let pi: Vec<usize> = perm.into_iter().filter(|&x| x < len).collect();
        let w = DWord::from_permutation(&pi);
        prop_assert!(w.is_valid());
        prop_assert_eq!(w.to_permutation(), pi);
        prop_assert_eq!(DWord::from_partition(&w.to_partition()), Some(w));
    }

    #[test]
    fn tonks_is_monotone(n in 1usize..=4, pick in 0usize..10_000) {
        let t = tonks_collapse(n);
        let i = pick % t.permutohedron.len();
        let below = t.associahedron.closure(t.image[i]);
        for &f in t.permutohedron.facets(i) {
            prop_assert!(below.contains(&t.image[f]));
            prop_assert!(t.associahedron.dim(t.image[f]) <= t.associahedron.dim(t.image[i]));
        }
    }

    #[test]
    fn permutohedron_edges_are_single_swaps(n in 1usize..=4, pick in 0usize..10_000) {
        let pe = permutohedron_faces(n);
        let edges: Vec<usize> = pe.of_dim(1).collect();
        let e = edges[pick % edges.len()];
        let ends: Vec<DWord> = pe.facets(e).iter().map(|&v| DWord::from_partition(pe.label(v)).unwrap()).collect();
        prop_assert_eq!(ends.len(), 2);
        let hits = (0..n).filter(|&p| {
            let mut w = ends[0].clone();
            w.swap(p).is_ok() && w == ends[1]
        }).count();
        prop_assert_eq!(hits, 1);
    }
}

/// Faces lower the dimension by one and every codimension-two face lies
/// under exactly two facets.
#[test]
fn face_grading_and_diamonds() {
    for spec in SPECS {
        let l = lattice(spec);
        let h = build_hom_complex(&l, l.init(), l.fin());
        for i in 0..h.len() {
            let d = h.cell(i).dim();
            let facets: BTreeSet<usize> = h.faces(i).iter().map(|f| f.cell).collect();
            assert_eq!(facets.len(), 2 * d, "{spec}: cell {i}");
            for &f in &facets {
                assert_eq!(h.cell(f).dim() + 1, d);
            }
            let second: BTreeSet<usize> = facets.iter().flat_map(|&f| h.faces(f).iter().map(|g| g.cell)).collect();
            for g in second {
                let over = facets.iter().filter(|&&f| h.faces(f).iter().any(|x| x.cell == g)).count();
                assert_eq!(over, 2, "{spec}: cell {} over {}", h.cell_label(i, &l), h.cell_label(g, &l));
            }
        }
    }
}
