//! The cubical W-construction of a lattice, one hom-space at a time.

mod cell;
mod complex;
mod obstruction;
mod point;
mod quotient;
mod simplified;

pub use cell::{Cell, FaceKind};
pub use complex::{build_hom_complex, Face, HomComplex};
pub use obstruction::{indecomposable_cubes, obstruction_pairs, ObstructionPair};
pub use point::{canonicalize_point, cone_alpha, cone_alpha_image, cone_beta, ConeImage, ContractError, PointRep};
pub use quotient::{strict_quotient, Collapse, Irregularity, QuotientClass, QuotientComplex};
pub use simplified::{simplified_basis, SimplifiedBasis};
