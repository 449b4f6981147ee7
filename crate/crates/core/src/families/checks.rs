//! Strict-quotient presets and their comparison with the expected polytopes.

use std::fmt;
use std::str::FromStr;

use crate::lattice::{Lattice, Presentation};
use crate::wcomplex::{build_hom_complex, strict_quotient, QuotientComplex};

use super::lattices::{
    coface, make_presentation, mapping_arrow, mapping_source_coface, mapping_target_coface, FamilyError, LatticeKind,
};
use super::permutohedron::DWord;

/// Which relations are strict, and which polytope the quotient should give.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientPreset {
    /// Cosimplicial lattice, every identity strict except `eps d_0 = eps d_1`.
    Simplex,
    /// Cosimplicial lattice, every identity strict except `d_0 d_1 = d_0 d_0`.
    Cube,
    /// Mapping lattice, all identities strict except `f d_j = d_j f` with `j = k`.
    MappingSimplex,
}

impl QuotientPreset {
    pub const ALL: [QuotientPreset; 3] = [QuotientPreset::Simplex, QuotientPreset::Cube, QuotientPreset::MappingSimplex];

    pub fn name(self) -> &'static str {
        match self {
            QuotientPreset::Simplex => "simplex",
            QuotientPreset::Cube => "cube",
            QuotientPreset::MappingSimplex => "mapping-simplex",
        }
    }

    pub fn lattice_kind(self) -> LatticeKind {
        match self {
            QuotientPreset::MappingSimplex => LatticeKind::Mapping,
            _ => LatticeKind::Cosimplicial,
        }
    }

    /// Vertex count of the target polytope.
    pub fn expected_vertices(self, n: usize) -> usize {
        match self {
            QuotientPreset::Simplex => n + 1,
            QuotientPreset::Cube => 1 << n,
            QuotientPreset::MappingSimplex => n + 2,
        }
    }

    pub fn presentation(self, n: usize) -> Result<Presentation, FamilyError> {
        let mut p = make_presentation(self.lattice_kind(), n)?;
        apply_preset(&mut p, self, n);
        Ok(p)
    }
}

impl fmt::Display for QuotientPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuotientPreset {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QuotientPreset::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FamilyError::UnknownKind(s.to_string()))
    }
}

fn mark(p: &mut Presentation, lhs: [String; 2], rhs: [String; 2]) {
    p.set_strict_by_sides(&lhs, &rhs).expect("preset relation exists");
}

/// Sets the strict flags of a generated lattice for `preset`.
pub fn apply_preset(p: &mut Presentation, preset: QuotientPreset, n: usize) {
    p.clear_strict();
    let cosimplicial = |p: &mut Presentation, arrow: &dyn Fn(usize, usize) -> String, skip: &dyn Fn(usize, usize, usize) -> bool| {
        for k in 1..=n {
            for j in 1..=k {
                for i in 0..j {
                    if !skip(k, i, j) {
                        mark(p, [arrow(k, j), arrow(k - 1, i)], [arrow(k, i), arrow(k - 1, j - 1)]);
                    }
                }
            }
        }
    };
    match preset {
        QuotientPreset::Simplex => cosimplicial(p, &coface, &|k, _, _| k == 1),
        QuotientPreset::Cube => cosimplicial(p, &coface, &|_, i, j| i == 0 && j == 1),
        QuotientPreset::MappingSimplex => {
            cosimplicial(p, &mapping_source_coface, &|_, _, _| false);
            cosimplicial(p, &mapping_target_coface, &|_, _, _| false);
            for k in 0..=n {
                for j in 0..k {
                    mark(
                        p,
                        [mapping_source_coface(k, j), mapping_arrow(k as isize - 1)],
                        [mapping_arrow(k as isize), mapping_target_coface(k, j)],
                    );
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub preset: QuotientPreset,
    pub n: usize,
    pub expected: usize,
    /// Classes of generator words, each listed by label.
    pub classes: Vec<Vec<String>>,
    pub quotient: QuotientComplex,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.classes.len() == self.expected
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        s.sort();
        s
    }
}

impl fmt::Display for FamilyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} n={}: {} vertex classes, expected {} ({})",
            self.preset,
            self.n,
            self.classes.len(),
            self.expected,
            if self.passed() { "ok" } else { "MISMATCH" }
        )?;
        for c in &self.classes {
            writeln!(f, "  {{{}}}", c.join(", "))?;
        }
        Ok(())
    }
}

/// Runs the strict quotient of the preset lattice and counts vertex classes.
pub fn family_quotient_check(preset: QuotientPreset, n: usize) -> Result<FamilyCheck, FamilyError> {
    let lattice = Lattice::new(preset.presentation(n)?)?;
    let h = build_hom_complex(&lattice, lattice.init(), lattice.fin());
    let quotient = strict_quotient(&h, &lattice);
    let mut classes: Vec<Vec<String>> = quotient
        .generator_word_classes(&h)
        .iter()
        .map(|cls| {
            let mut labels: Vec<String> = cls
                .iter()
                .map(|&v| {
                    let chain = &h.cell(v).chain;
                    match preset.lattice_kind() {
                        LatticeKind::Cosimplicial => DWord::from_chain(&lattice, chain)
                            .map(|w| w.to_string())
                            .unwrap_or_else(|| lattice.chain_label(chain)),
                        _ => lattice.chain_label(chain),
                    }
                })
                .collect();
            labels.sort();
            labels
        })
        .collect();
    classes.sort();
    Ok(FamilyCheck {
        preset,
        n,
        expected: preset.expected_vertices(n),
        classes,
        quotient,
    })
}
