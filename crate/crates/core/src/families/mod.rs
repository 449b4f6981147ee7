//! Generated lattices and polytope families.

mod associahedron;
mod checks;
mod lattices;
mod permutohedron;
mod realization;

pub use associahedron::*;
pub use checks::*;
pub use lattices::*;
pub use permutohedron::*;
pub use realization::*;
