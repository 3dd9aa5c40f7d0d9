//! Exact arithmetic substrate: ℚ(ζ_p), dense matrices, sparse polynomials and
//! exact linear solving.

pub mod cyclo;
pub mod linsolve;
pub mod matrix;
pub mod poly;

pub use cyclo::{int, rat, CycloNumber, Rational};
pub use linsolve::solve_linear_exact;
pub use matrix::CMatrix;
pub use poly::{var_names, MultiPoly};
