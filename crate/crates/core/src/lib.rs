//! Combinatorial engine for knot diagrams.

pub mod bracket;
pub mod codes;
pub mod construct;
pub mod diagram;
mod embedding;
pub mod error;
pub mod moves;
pub mod polynomial;
pub mod surfaces;
pub mod tables;

pub use codes::{canonical_form, emit_pd, parse_pd, to_gauss, validate, Crossing, Diagram, EdgeId};
pub use error::{Error, Result};
pub use polynomial::LaurentPoly;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/pd-codes.md")]
    mod pd_codes {}
    #[doc = include_str!("../../../book/src/bracket.md")]
    mod bracket {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/moves.md")]
    mod moves {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
}
