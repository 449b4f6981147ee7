//! One check per acceptance criterion, each printed as a pass/fail line.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

mod common;

use common::invariant_factors;

use bvw_core::dsl::{parse_lattice, print_lattice, Severity};
use bvw_core::families::*;
use bvw_core::homology::{smith_normal_form, IntegerMatrix};
use bvw_core::lattice::Lattice;
use bvw_core::triangulation::{build_simplicial_hom, compare_models};
use bvw_core::wcomplex::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lattice(spec: &str) -> Lattice {
    let (k, n) = parse_builtin(spec).unwrap();
    make_lattice(k, n).unwrap()
}

fn total(l: &Lattice) -> HomComplex {
    build_hom_complex(l, l.init(), l.fin())
}

fn sorted_labels(h: &HomComplex, l: &Lattice, cells: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = cells.iter().map(|&i| h.cell_label(i, l)).collect();
    v.sort();
    v
}

const CONE_LATTICES: [&str; 15] = [
    "chain:2",
    "chain:3",
    "chain:4",
    "chain:5",
    "cosimplicial:1",
    "cosimplicial:2",
    "cosimplicial:3",
    "powerset:1",
    "powerset:2",
    "powerset:3",
    "mapping:1",
    "mapping:2",
    "toda",
    "whitehead",
    "mapping:0",
];

fn c1_square() -> Check {
    let l = lattice("chain:3");
    let h = total(&l);
    ensure!(h.f_vector() == [4, 4, 1], "f-vector {:?}", h.f_vector());
    let v = sorted_labels(&h, &l, h.cells_of_dim(0));
    ensure!(v == ["(f1)(f2)(f3)", "(f1)(f2*f3)", "(f1*f2)(f3)", "(f1*f2*f3)"], "vertices {v:?}");
    let b = h.basis_subcomplex(&l);
    let e = sorted_labels(&b, &l, b.cells_of_dim(1));
    ensure!(b.f_vector() == [3, 2] && e == ["(f1)(f2.f3)", "(f1.f2)(f3)"], "basis {:?} {e:?}", b.f_vector());
    Ok(())
}

fn c2_cube() -> Check {
    let l = lattice("chain:4");
    let h = total(&l);
    ensure!(h.f_vector() == [8, 12, 6, 1], "f-vector {:?}", h.f_vector());
    let b = h.basis_subcomplex(&l);
    ensure!(b.f_vector() == [7, 9, 3], "basis {:?}", b.f_vector());
    let sq = sorted_labels(&b, &l, b.cells_of_dim(2));
    ensure!(sq == ["(f1)(f2.f3.f4)", "(f1.f2)(f3.f4)", "(f1.f2.f3)(f4)"], "2-cells {sq:?}");
    Ok(())
}

fn c3_cone() -> Check {
    for spec in CONE_LATTICES {
        let l = lattice(spec);
        let h = total(&l);
        let r = h.homology(None).map_err(|e| e.to_string())?;
        ensure!(r.reduced_betti().iter().all(|&b| b == 0) && r.is_torsion_free(), "{spec}: homology {:?}", r.betti);
        ensure!(h.euler() == 1, "{spec}: euler {}", h.euler());
    }
    Ok(())
}

fn random_point(l: &Lattice, rng: &mut StdRng) -> PointRep {
    let chains = l.enumerate_chains(l.init(), l.fin(), None);
    let c = &chains[rng.gen_range(0..chains.len())];
    let coords = (0..c.len() - 1)
        .map(|_| {
            if rng.gen_bool(0.2) {
                BigRational::zero()
            } else {
                let d: i64 = rng.gen_range(1..=12);
                BigRational::new(BigInt::from(rng.gen_range(0..=d)), BigInt::from(d))
            }
        })
        .collect();
    PointRep::new(c.0.clone(), coords).unwrap()
}

fn c4_cone_round_trip() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for spec in CONE_LATTICES {
        let l = lattice(spec);
        for _ in 0..100 {
            let p = random_point(&l, &mut rng);
            let canon = canonicalize_point(&p, &l).map_err(|e| e.to_string())?;
            let image = cone_beta(&p, &l).map_err(|e| e.to_string())?;
            let back = cone_alpha_image(&image, &l).map_err(|e| e.to_string())?;
            ensure!(back == canon, "{spec}: {p:?} came back as {back:?}");
        }
        let longest = l.enumerate_chains(l.init(), l.fin(), None).into_iter().max_by_key(|c| c.len()).unwrap();
        let zeros = PointRep::new(longest.0.clone(), vec![BigRational::zero(); longest.len() - 1]).unwrap();
        ensure!(cone_beta(&zeros, &l) == Ok(ConeImage::Apex), "{spec}: zero point is not the apex");
    }
    Ok(())
}

fn c5_sphere() -> Check {
    let mut p = make_presentation(LatticeKind::Chain, 4).unwrap();
    for z in [["f1", "f2"], ["f2", "f3"], ["f3", "f4"]] {
        p.add_null(&z).unwrap();
    }
    let l = Lattice::new(p).unwrap();
    let s = simplified_basis(&total(&l), &l).map_err(|e| e.to_string())?;
    ensure!(s.relative.betti == [0, 0, 1], "relative betti {:?}", s.relative.betti);
    Ok(())
}

fn c6_toda() -> Check {
    let l = lattice("toda");
    let (x, w) = (l.node("X").unwrap(), l.node("W").unwrap());
    ensure!(l.morphism_classes(x, w).len() == 1, "classes X->W");
    let h = total(&l);
    ensure!(h.f_vector() == [4, 4, 1], "f-vector {:?}", h.f_vector());
    let s = simplified_basis(&h, &l).map_err(|e| e.to_string())?;
    ensure!(s.quotient_betti == [1, 1], "quotient betti {:?}", s.quotient_betti);
    Ok(())
}

fn c7_pairs() -> Check {
    let l = lattice("chain:4");
    let b = total(&l).basis_subcomplex(&l);
    let pairs = obstruction_pairs(&b, 2);
    ensure!(pairs.len() == 1, "{} pairs", pairs.len());
    let meet = b.cell_label(pairs[0].meet, &l);
    ensure!(meet == "(f1)(f2.f3)(f4)", "meet {meet}");
    Ok(())
}

fn c8_fubini() -> Check {
    for (n, want) in [(1, 3), (2, 13), (3, 75)] {
        let h = total(&lattice(&format!("cosimplicial:{n}")));
        ensure!(h.f_vector()[0] == want, "n={n}: {} vertices", h.f_vector()[0]);
    }
    let f = total(&lattice("cosimplicial:2")).f_vector();
    ensure!(f.get(2) == Some(&6), "n=2 f-vector {f:?}");
    Ok(())
}

fn c9_powerset() -> Check {
    for n in 1..=3 {
        let a = total(&lattice(&format!("powerset:{n}"))).f_vector();
        let b = total(&lattice(&format!("cosimplicial:{n}"))).f_vector();
        ensure!(a == b, "n={n}: {a:?} vs {b:?}");
    }
    Ok(())
}

fn c10_permutohedron() -> Check {
    let want: [&[usize]; 4] = [&[1], &[2, 1], &[6, 6, 1], &[24, 36, 14, 1]];
    for (n, w) in want.iter().enumerate() {
        let f = permutohedron_faces(n).f_vector();
        ensure!(f == *w, "n={n}: {f:?}");
        for v in ordered_partitions(n).into_iter().filter(|p| p.len() == n + 1) {
            let mut c = vertex_coordinates(&v);
            c.sort();
            ensure!(c == (0..=n).collect::<Vec<_>>(), "coordinates {c:?}");
        }
    }
    let words = [
        ("(012,01,1)", "002"),
        ("(012,12,1)", "010"),
        ("(012,12,2)", "000"),
        ("(012,02,2)", "001"),
        ("(012,02,0)", "011"),
        ("(012,01,0)", "012"),
    ];
    let mut seen = BTreeSet::new();
    for (flag, word) in words {
        let d = DWord::from_partition(&parse_flag(flag).map_err(|e| e.to_string())?).ok_or("not a vertex")?;
        ensure!(d.to_string() == word, "{flag} gave {d}");
        seen.insert(d.to_string());
    }
    ensure!(seen.len() == 6, "labels not distinct");
    // d_0 d_0 d_2 read right to left: d^2_2 applied first, the degree-0 coface is eps
    let d = DWord::from_partition(&parse_flag("(012,01,1)").unwrap()).unwrap();
    ensure!(d.arrow_names() == ["d2_2", "d1_0", "eps"], "arrow names {:?}", d.arrow_names());
    Ok(())
}

fn c11_quotients() -> Check {
    let expect = [(QuotientPreset::Simplex, 2, 3), (QuotientPreset::Cube, 2, 4), (QuotientPreset::MappingSimplex, 1, 3)];
    for (preset, n, classes) in expect {
        let c = family_quotient_check(preset, n).map_err(|e| e.to_string())?;
        ensure!(c.classes.len() == classes, "{preset} n={n}: {} classes", c.classes.len());
    }
    let m = family_quotient_check(QuotientPreset::MappingSimplex, 1).unwrap();
    ensure!(m.class_sizes() == [1, 2, 3], "mapping sizes {:?}", m.class_sizes());
    Ok(())
}

fn c12_tonks() -> Check {
    let t = tonks_collapse(2);
    let c: Vec<String> = t.collapsed().iter().map(|&i| format_flag(t.permutohedron.label(i))).collect();
    ensure!(c == ["(012,02)"], "n=2 collapsed {c:?}");
    ensure!(t.image_f_vector() == [5, 5, 1], "n=2 image {:?}", t.image_f_vector());

    let t = tonks_collapse(3);
    let flags = |xs: &[&str]| xs.iter().map(|s| parse_flag(s).unwrap()).collect::<BTreeSet<_>>();
    let edges = flags(&[
        "(0123,012,02)",
        "(0123,023,02)",
        "(0123,023,03)",
        "(0123,013,03)",
        "(0123,023,2)",
        "(0123,023,3)",
        "(0123,123,13)",
        "(0123,013,13)",
        "(0123,013,1)",
        "(0123,013,0)",
    ]);
    let squares = flags(&["(0123,13)", "(0123,013)", "(0123,02)", "(0123,03)", "(0123,023)"]);
    let pe = &t.permutohedron;
    let collapsed: BTreeSet<_> = t.collapsed().into_iter().map(|i| pe.label(i).clone()).collect();
    let got_edges: BTreeSet<_> = collapsed.iter().filter(|p| p.len() == 3).cloned().collect();
    let got_squares: BTreeSet<_> = collapsed.iter().filter(|p| p.len() == 2).cloned().collect();
    ensure!(got_edges == edges, "collapsed edges differ: {}", got_edges.iter().map(format_flag).collect::<Vec<_>>().join(" "));
    ensure!(got_squares == squares, "collapsed 2-faces differ");
    for sq in &squares {
        let i = pe.index_of(sq).unwrap();
        ensure!(t.associahedron.dim(t.image[i]) == 1, "{} not sent to an edge", format_flag(sq));
    }
    ensure!(collapsed.len() == 15, "other faces collapsed too");
    ensure!(t.image_f_vector() == [14, 21, 9, 1], "image {:?}", t.image_f_vector());
    ensure!(t.is_surjective() && t.preserves_order(), "not an order-preserving surjection");
    Ok(())
}

fn c13_simplicial() -> Check {
    let l = lattice("chain:3");
    let s = build_simplicial_hom(&l, l.init(), l.fin());
    ensure!(s.f_vector() == [4, 5, 2], "L3 simplicial {:?}", s.f_vector());
    for spec in CONE_LATTICES {
        let l = lattice(spec);
        let h = total(&l);
        let s = build_simplicial_hom(&l, l.init(), l.fin());
        ensure!(s.simplicial_identities_hold(), "{spec}: simplicial identities");
        let c = compare_models(&h, &s);
        ensure!(c.agrees(), "{spec}: {c}");
    }
    Ok(())
}

fn c14_smith() -> Check {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..300 {
        let m: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&m));
        let got: Vec<BigInt> = snf.diagonal.iter().filter(|x| !x.is_zero()).map(|x| x.abs()).collect();
        let want = invariant_factors(&m);
        ensure!(got == want, "{m:?}: {got:?} vs {want:?}");
    }
    for spec in CONE_LATTICES {
        let l = lattice(spec);
        let h = total(&l);
        let cc = bvw_core::homology::order_chain_complex(&h.face_poset(), None).map_err(|e| e.to_string())?;
        ensure!(cc.boundary_squares_to_zero(), "{spec}: cubical order complex");
        let s = build_simplicial_hom(&l, l.init(), l.fin());
        ensure!(s.chain_complex().boundary_squares_to_zero(), "{spec}: simplicial model");
    }
    Ok(())
}

fn fixtures_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures"].iter().collect()
}

fn c15_parser() -> Check {
    let mut good = 0;
    for entry in std::fs::read_dir(fixtures_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if name.starts_with("bad_") || !name.ends_with(".lat") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let r = parse_lattice(&text);
        ensure!(!r.has_errors(), "{name}: {:?}", r.diagnostics);
        ensure!(r.lattice.is_some(), "{name}: does not validate");
        let once = print_lattice(r.presentation.as_ref().unwrap());
        let again = parse_lattice(&once);
        ensure!(again.presentation == r.presentation, "{name}: reparse differs");
        ensure!(print_lattice(again.presentation.as_ref().unwrap()) == once, "{name}: print not stable");
        good += 1;
    }
    ensure!(good >= 12, "only {good} fixtures");
    for (name, line, needle) in [
        ("bad_unknown_node.lat", 7, "`q`"),
        ("bad_duplicate_arrow.lat", 8, "duplicate arrow `f`"),
        ("bad_null_path.lat", 9, "`k`"),
    ] {
        let text = std::fs::read_to_string(fixtures_dir().join(name)).map_err(|e| e.to_string())?;
        let r = parse_lattice(&text);
        let errs: Vec<_> = r.diagnostics.iter().filter(|d| d.severity == Severity::Error).collect();
        ensure!(errs.len() == 1, "{name}: {} errors", errs.len());
        ensure!(errs[0].span.line == line && errs[0].message.contains(needle), "{name}: {}", errs[0]);
    }
    Ok(())
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 15] = [
        ("chain:3 square, vertices and basis edges", c1_square),
        ("chain:4 cube and basis 2-cells", c2_cube),
        ("cone: acyclic with euler 1 on built-ins", c3_cone),
        ("cone round trip on random rational points", c4_cone_round_trip),
        ("simplified basis of chain:4 is a 2-sphere", c5_sphere),
        ("Toda lattice square and circle quotient", c6_toda),
        ("obstruction pair of chain:4", c7_pairs),
        ("cosimplicial vertex census", c8_fubini),
        ("powerset and cosimplicial f-vectors agree", c9_powerset),
        ("permutohedra and vertex words", c10_permutohedron),
        ("strict quotients: simplex, cube, mapping simplex", c11_quotients),
        ("Tonks collapse to associahedra", c12_tonks),
        ("simplicial model agrees with cube complex", c13_simplicial),
        ("Smith normal form and boundary maps", c14_smith),
        ("parser fixtures and diagnostics", c15_parser),
    ];
    // written directly so the lines show up without --nocapture
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => writeln!(out, "criterion {:>2} PASS  {name}", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "criterion {:>2} FAIL  {name}: {why}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
