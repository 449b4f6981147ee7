//! Cubical W-construction of finite presented lattices.
//!
//! A lattice here is a finite acyclic category with an initial node, a final
//! node and a single morphism class between them. [`wcomplex`] builds the
//! cube complex of each hom-space, [`homology`] computes integer homology,
//! [`families`] generates the standard lattices and polytopes, [`dsl`]
//! reads and writes the `.lat` text format and [`export`] writes JSON, DOT
//! and OFF.

pub mod dsl;
pub mod export;
pub mod families;
pub mod homology;
pub mod lattice;
pub mod poset;
pub mod triangulation;
pub mod wcomplex;

pub use lattice::{Chain, ClassId, Lattice, LatticeError, Presentation};
pub use poset::FacePoset;
