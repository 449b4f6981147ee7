//! The `bvw` command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use bvw_core::dsl::parse_lattice_named;
use bvw_core::export::{complex_json_string, lattice_to_dot, realization_to_off};
use bvw_core::families::{
    associahedron_faces, cube_faces, family_quotient_check, format_bracketing, make_presentation,
    parse_builtin, permutohedron_faces, realize_family, simplex_faces, tonks_collapse, QuotientPreset,
    RealizationError, POLYTOPE_FAMILIES,
};
use bvw_core::homology::HomologyResult;
use bvw_core::lattice::{Lattice, LatticeError, NodeId, Presentation};
use bvw_core::triangulation::{build_simplicial_hom, compare_models};
use bvw_core::wcomplex::{
    build_hom_complex, indecomposable_cubes, obstruction_pairs, simplified_basis, strict_quotient, HomComplex,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bvw", version, about = "Cube complexes of finite presented lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Input {
    /// Lattice description file (`.lat`).
    #[arg(long, conflicts_with = "builtin")]
    lattice: Option<PathBuf>,
    /// Built-in lattice such as `chain:4`, `cosimplicial:2` or `toda`.
    #[arg(long)]
    builtin: Option<String>,
    /// Source node of the hom-space (default: init).
    #[arg(long)]
    from: Option<String>,
    /// Target node of the hom-space (default: fin).
    #[arg(long)]
    to: Option<String>,
    /// Extra null mark, as a dotted path like `f1.f2`. Repeatable.
    #[arg(long = "null")]
    nulls: Vec<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
    Off,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the lattice axioms.
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Cells of the hom complex.
    Complex {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// List every cell.
        #[arg(long)]
        cells: bool,
        /// Use the simplicial model instead of the cube complex.
        #[arg(long)]
        simplicial: bool,
    },
    /// Decomposable part of the (init, fin) complex.
    Basis {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Cells of dimension at most `--dim`.
    Skeleton {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        dim: usize,
    },
    /// Integral homology of the hom complex.
    Homology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Also build the simplicial model and compare.
        #[arg(long)]
        simplicial: bool,
    },
    /// Basis with null cells collapsed.
    Simplified {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Quotient by strict relations.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Named check: simplex, cube or mapping-simplex.
        #[arg(long, conflicts_with_all = ["lattice", "builtin"])]
        preset: Option<String>,
        /// Size parameter for `--preset`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Mark relation number `IDX` strict. Repeatable.
        #[arg(long = "strict")]
        strict: Vec<usize>,
    },
    /// Indecomposable cubes of the basis.
    Indecomposables {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        dim: usize,
    },
    /// Pairs of indecomposable cubes meeting in a codimension-one cell.
    Pairs {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Dimension of the cubes.
        #[arg(long)]
        dim: usize,
    },
    /// Polytope families: permutohedron, associahedron, simplex, cube, tonks.
    Family {
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
    },
    /// Write a complex (json), a generator graph (dot) or a polytope (off).
    Export {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_enum)]
        format: Format,
        /// Polytope family for `--format off`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
}

type Res<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load_presentation(input: &Input) -> Res<Presentation> {
    let mut p = match (&input.lattice, &input.builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let name = path.display().to_string();
            let r = parse_lattice_named(&text, Some(&name));
            if r.has_errors() {
                let lines: Vec<String> = r.diagnostics.iter().map(|d| d.to_string()).collect();
                return Err(Failure::Invalid(lines.join("\n")));
            }
            r.presentation.expect("no errors")
        }
        (None, Some(spec)) => {
            let (kind, n) = parse_builtin(spec).map_err(|e| usage(e.to_string()))?;
            make_presentation(kind, n).map_err(|e| usage(e.to_string()))?
        }
        (None, None) => return Err(usage("one of --lattice or --builtin is required")),
    };
    for z in &input.nulls {
        let names: Vec<&str> = z.split('.').collect();
        p.add_null(&names).map_err(|e| usage(format!("--null {z}: {e}")))?;
    }
    Ok(p)
}

fn to_lattice(p: Presentation) -> Res<Lattice> {
    Lattice::new(p).map_err(|e| match e {
        LatticeError::Invalid(report) => Failure::Invalid(format!("invalid lattice: {report}")),
        other => Failure::Invalid(other.to_string()),
    })
}

fn endpoints(l: &Lattice, input: &Input) -> Res<(NodeId, NodeId)> {
    let node = |n: &Option<String>, default: NodeId| match n {
        Some(name) => l.node(name).map_err(|e| usage(e.to_string())),
        None => Ok(default),
    };
    Ok((node(&input.from, l.init())?, node(&input.to, l.fin())?))
}

fn load(input: &Input) -> Res<(Lattice, HomComplex)> {
    let l = to_lattice(load_presentation(input)?)?;
    let (u, v) = endpoints(&l, input)?;
    let h = build_hom_complex(&l, u, v);
    Ok((l, h))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn homology_json(r: &HomologyResult) -> Value {
    let torsion: Vec<Vec<String>> = r.torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect();
    json!({ "betti": r.betti, "reduced_betti": r.reduced_betti(), "torsion": torsion })
}

fn homology_text(r: &HomologyResult) -> String {
    let mut s = format!("betti {}\n", join(&r.betti));
    for (d, t) in r.torsion.iter().enumerate() {
        if !t.is_empty() {
            s += &format!("torsion in degree {d}: {}\n", join(t));
        }
    }
    s
}

fn cell_listing(h: &HomComplex, l: &Lattice, cells: impl IntoIterator<Item = usize>) -> String {
    cells
        .into_iter()
        .map(|i| format!("{} {}\n", h.cell(i).dim(), h.cell_label(i, l)))
        .collect()
}

/// Output text plus where to write it.
fn execute(cmd: Command) -> Res<(String, Output)> {
    match cmd {
        Command::Validate { input, output } => {
            let p = load_presentation(&input)?;
            let report = bvw_core::lattice::validate(&p).map_err(|e| Failure::Invalid(e.to_string()))?;
            if !report.passed() {
                return Err(Failure::Invalid(format!("invalid lattice: {report}")));
            }
            let l = to_lattice(p)?;
            let text = if output.json {
                json!({ "valid": true, "classes": l.class_count() }).to_string()
            } else {
                format!("pass: {} nodes, {} morphism classes\n", l.node_count(), l.class_count())
            };
            Ok((text, output))
        }
        Command::Complex { input, output, cells, simplicial } => {
            let (l, h) = load(&input)?;
            if simplicial {
                let s = build_simplicial_hom(&l, h.source(), h.target());
                let text = if output.json {
                    json!({ "fvector": s.f_vector(), "euler": s.euler() }).to_string()
                } else {
                    let mut t = format!("{}\n", join(&s.f_vector()));
                    if cells {
                        for x in s.simplices() {
                            t += &format!("{} {}\n", x.dim(), x.label(&l));
                        }
                    }
                    t
                };
                return Ok((text, output));
            }
            let text = if output.json {
                complex_json_string(&h, &l)
            } else {
                let mut t = format!("{}\n", join(&h.f_vector()));
                if cells {
                    t += &cell_listing(&h, &l, 0..h.len());
                }
                t
            };
            Ok((text, output))
        }
        Command::Basis { input, output } => {
            let (l, h) = load(&input)?;
            let b = h.basis_subcomplex(&l);
            let text = if output.json {
                complex_json_string(&b, &l)
            } else {
                format!("{}\n{}", join(&b.f_vector()), cell_listing(&b, &l, 0..b.len()))
            };
            Ok((text, output))
        }
        Command::Skeleton { input, output, dim } => {
            let (l, h) = load(&input)?;
            let s = h.skeleton(dim);
            let text = if output.json { complex_json_string(&s, &l) } else { format!("{}\n", join(&s.f_vector())) };
            Ok((text, output))
        }
        Command::Homology { input, output, simplicial } => {
            let (l, h) = load(&input)?;
            let r = h.homology(None).map_err(|e| Failure::Invalid(e.to_string()))?;
            let cmp = simplicial.then(|| compare_models(&h, &build_simplicial_hom(&l, h.source(), h.target())));
            let text = if output.json {
                let mut v = homology_json(&r);
                v["euler"] = json!(h.euler());
                if let Some(c) = &cmp {
                    v["models_agree"] = json!(c.agrees());
                }
                v.to_string()
            } else {
                let mut t = homology_text(&r);
                t += &format!("euler {}\n", h.euler());
                if let Some(c) = &cmp {
                    t += &c.to_string();
                    if !t.ends_with('\n') {
                        t.push('\n');
                    }
                }
                t
            };
            Ok((text, output))
        }
        Command::Simplified { input, output } => {
            let (l, h) = load(&input)?;
            let s = simplified_basis(&h, &l).map_err(|e| Failure::Invalid(e.to_string()))?;
            let text = if output.json {
                json!({
                    "basis_fvector": s.basis.f_vector(),
                    "null_fvector": s.null_f_vector(),
                    "betti": s.quotient_betti,
                    "relative_betti": s.relative.betti,
                })
                .to_string()
            } else {
                format!(
                    "basis {}\nnull cells {}\nrelative betti {}\nquotient betti {}\n",
                    join(&s.basis.f_vector()),
                    join(&s.null_f_vector()),
                    join(&s.relative.betti),
                    join(&s.quotient_betti)
                )
            };
            Ok((text, output))
        }
        Command::Quotient { input, output, preset, n, strict } => {
            if let Some(name) = preset {
                let preset: QuotientPreset = name.parse().map_err(|e: bvw_core::families::FamilyError| usage(e.to_string()))?;
                let check = family_quotient_check(preset, n).map_err(|e| usage(e.to_string()))?;
                let text = if output.json {
                    json!({
                        "preset": preset.name(),
                        "n": n,
                        "expected": check.expected,
                        "classes": check.classes,
                        "passed": check.passed(),
                        "fvector": check.quotient.f_vector(),
                    })
                    .to_string()
                } else {
                    check.to_string()
                };
                return Ok((text, output));
            }
            let mut p = load_presentation(&input)?;
            for &i in &strict {
                p.set_strict(i, true).map_err(|e| usage(format!("--strict {i}: {e}")))?;
            }
            let l = to_lattice(p)?;
            let (u, v) = endpoints(&l, &input)?;
            let h = build_hom_complex(&l, u, v);
            let q = strict_quotient(&h, &l);
            let classes: Vec<Vec<String>> = q
                .generator_word_classes(&h)
                .iter()
                .map(|c| c.iter().map(|&i| h.cell_label(i, &l)).collect())
                .collect();
            let text = if output.json {
                let irregular: Vec<&str> = q.irregular.iter().map(|x| x.message.as_str()).collect();
                json!({ "classes": classes, "fvector": q.f_vector(), "irregular": irregular }).to_string()
            } else {
                let mut t = format!("{} vertex classes\nquotient f-vector {}\n", classes.len(), join(&q.f_vector()));
                for c in &classes {
                    t += &format!("  {{{}}}\n", c.join(", "));
                }
                for x in &q.irregular {
                    t += &format!("irregular: {}\n", x.message);
                }
                t
            };
            Ok((text, output))
        }
        Command::Indecomposables { input, output, dim } => {
            let (l, h) = load(&input)?;
            let b = h.basis_subcomplex(&l);
            let cubes = indecomposable_cubes(&b, dim);
            let labels: Vec<String> = cubes.iter().map(|&i| b.cell_label(i, &l)).collect();
            let text = if output.json {
                json!({ "dim": dim, "cells": labels }).to_string()
            } else {
                labels.iter().map(|x| format!("{x}\n")).collect()
            };
            Ok((text, output))
        }
        Command::Pairs { input, output, dim } => {
            if dim == 0 {
                return Err(usage("--dim must be at least 1"));
            }
            let (l, h) = load(&input)?;
            let b = h.basis_subcomplex(&l);
            let pairs = obstruction_pairs(&b, dim);
            let rows: Vec<[String; 3]> = pairs
                .iter()
                .map(|p| [b.cell_label(p.first, &l), b.cell_label(p.second, &l), b.cell_label(p.meet, &l)])
                .collect();
            let text = if output.json {
                let v: Vec<Value> = rows.iter().map(|[a, c, m]| json!({ "first": a, "second": c, "meet": m })).collect();
                json!({ "dim": dim, "pairs": v }).to_string()
            } else {
                rows.iter().map(|[a, c, m]| format!("{a} & {c} meet in {m}\n")).collect()
            };
            Ok((text, output))
        }
        Command::Family { output, name, n } => {
            let (fvector, extra) = match name.as_str() {
                "permutohedron" => (permutohedron_faces(n).f_vector(), Vec::new()),
                "associahedron" => (associahedron_faces(n).f_vector(), Vec::new()),
                "simplex" => (simplex_faces(n).f_vector(), Vec::new()),
                "cube" => (cube_faces(n).f_vector(), Vec::new()),
                "tonks" => {
                    let t = tonks_collapse(n);
                    let lines = t
                        .collapsed()
                        .into_iter()
                        .map(|i| {
                            let p = t.permutohedron.label(i);
                            format!(
                                "{} -> {}",
                                bvw_core::families::format_flag(p),
                                format_bracketing(t.associahedron.label(t.image[i]), n)
                            )
                        })
                        .collect();
                    (t.image_f_vector(), lines)
                }
                other => return Err(usage(format!("unknown family `{other}`; expected one of {}, tonks", POLYTOPE_FAMILIES.join(", ")))),
            };
            let text = if output.json {
                json!({ "family": name, "n": n, "fvector": fvector, "collapsed": extra }).to_string()
            } else {
                let mut t = format!("{}\n", join(&fvector));
                for x in extra {
                    t += &format!("{x}\n");
                }
                t
            };
            Ok((text, output))
        }
        Command::Export { input, output, format, family, n } => {
            let text = match format {
                Format::Off => {
                    let name = family.ok_or_else(|| usage("--format off needs --family"))?;
                    let n = n.ok_or_else(|| usage("--format off needs --n"))?;
                    let r = realize_family(&name, n).map_err(|e| match e {
                        RealizationError::NotThreeDimensional(_) | RealizationError::UnknownFamily(_) => usage(e.to_string()),
                        other => Failure::Invalid(other.to_string()),
                    })?;
                    realization_to_off(&r)
                }
                Format::Dot => lattice_to_dot(&load_presentation(&input)?),
                Format::Json => {
                    let (l, h) = load(&input)?;
                    complex_json_string(&h, &l)
                }
            };
            Ok((text, output))
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on usage errors and 2 when the input lattice is invalid.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok((mut text, output)) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match output.out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        let _ = writeln!(stderr, "error: {}: {e}", path.display());
                        return 1;
                    }
                }
                None => {
                    let _ = stdout.write_all(text.as_bytes());
                }
            }
            0
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            1
        }
        Err(Failure::Invalid(m)) => {
            let _ = writeln!(stderr, "{m}");
            2
        }
    }
}
