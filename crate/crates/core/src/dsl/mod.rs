//! The `.lat` text format.
//!
//! ```text
//! format 1
//! node v0 v1 v2 v3
//! init v0
//! fin v3
//! arrow f: v0 -> v1
//! arrow g: v1 -> v2
//! arrow h: v2 -> v3
//! null f g          # a path, first arrow applied first
//! ```
//!
//! Relations are written `rel <path> = <path>`, and `strict` takes either a
//! 0-based relation index or a repeated relation literal. Paths list arrows
//! in the order they are applied, so the composite usually written `g o f`
//! is the path `f g`.

mod parser;
mod printer;

pub use parser::{parse_lattice, parse_lattice_named, Diagnostic, ParseResult, Severity, SourceSpan};
pub use printer::print_lattice;
