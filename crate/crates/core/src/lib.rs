//! Monomial digraphs `D(q; m, n)` over finite fields: strong components,
//! exact diameters, Waring numbers, certified walks and the point counts
//! behind the diameter bounds.
//!
//! Vertices are pairs `(x1, x2)` of field elements with an arc
//! `(x1, x2) -> (y1, y2)` whenever `x2 + y2 = x1^m y1^n`.

pub mod arith;
pub mod curves;
pub mod digraph;
pub mod error;
pub mod field;
pub mod walks;
pub mod waring;

pub use digraph::{Diameter, Digraph, DigraphKind, DistanceMap, StrongComponents, Vertex};
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use walks::WalkCertificate;
pub use waring::WaringResult;

/// Tool version recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
