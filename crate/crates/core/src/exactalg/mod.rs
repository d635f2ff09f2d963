//! Exact arithmetic: rationals, Laurent polynomials in `r`, and sparse
//! multivariate polynomials over them.

mod laurent;
mod mpoly;
mod ratfunc;
pub mod text;

pub use laurent::{RLaurent, Rational};
pub use mpoly::{MPoly, Monomial};
pub use ratfunc::{RatFunc, RatMPoly};
pub use text::{parse_laurent, parse_mpoly, to_latex, to_text};

pub(crate) use laurent::rat;
