//! Exact bar monomials, bar games and interpolation Jack polynomials.
//!
//! Everything is computed over `Q[r, r^-1]` (with `alpha = 1/r`), so every
//! identity checked by this crate is an exact equality.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: rationals, Laurent polynomials in `r`, sparse multivariate
//!   polynomials and their canonical text/JSON forms.
//! * [`shapes`]: compositions, partitions, diagram statistics and the
//!   rho-shifted evaluation points.
//! * [`games`]: glissades, the bar order, bar games and three independent
//!   computations of bar monomials.
//! * [`operators`]: the intertwiners `s_i`, `d_i`, `sigma_i^+-`, `Phi^+-` and the
//!   dehomogenization operator.
//! * [`interp`]: nonsymmetric and symmetric Jack and interpolation Jack
//!   polynomials, expansions and binomial values.
//! * [`verify`]: finite-range audits producing [`verify::AuditReport`]s.
//! * [`cli`]: the `barmon` command line.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod games;
pub mod interp;
pub mod operators;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{MPoly, RLaurent, RatFunc, RatMPoly, Rational};
pub use shapes::{Composition, Partition};
