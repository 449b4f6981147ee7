//! Integer homology via Smith normal form.

mod complex;
mod matrix;

pub use complex::{order_chain_complex, order_complex_simplices, poset_homology, ChainComplex, HomologyError, HomologyResult};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};
