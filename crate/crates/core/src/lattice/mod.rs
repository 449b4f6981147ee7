//! Finite presented lattices and their morphism classes.

mod category;
mod presentation;
mod validate;

pub use category::{Chain, ClassId, ComposeError, Lattice, LatticeError, MorphismClass};
pub use presentation::{Arrow, ArrowId, NodeId, Path, Presentation, Relation, StructuralError};
pub use validate::{validate, ValidationReport, Violation};
