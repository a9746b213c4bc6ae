//! Spectral solver for the integral fractional Laplacian `(-Δ)^{α/2}` on the
//! unit disk (2D) and unit ball (3D).
//!
//! The weighted functions `p_{l,m,n}(x) = (1-|x|²)^{α/2} V_{l,m}(x) P_n(2|x|²-1)`
//! are eigenfunctions of the operator with explicitly known eigenvalues, so
//! applying the operator, solving the Poisson problem and stepping the
//! diffusion equation all reduce to diagonal scalings in coefficient space.
//!
//! Module map:
//!
//! * [`special_fn`]: log-gamma, Jacobi polynomials, spherical and solid harmonics.
//! * [`linalg`]: symmetric tridiagonal eigensolver and dense LU.
//! * [`quadrature`]: Lanczos-compressed rules for the weight `(1-r²)^{α/2}` on `[0,1]`.
//! * [`basis`]: eigenvalues, multiplicities, basis evaluation and norms.
//! * [`transform`]: analysis and synthesis between point values and coefficients.
//! * [`operators`]: forward operator, Poisson solve and closed-form test pairs.
//! * [`diffusion`]: implicit Euler for the radial 3D fractional heat equation.
//! * [`cli`]: experiment drivers behind the `fraclap` binary.

pub mod basis;
pub mod cli;
pub mod diffusion;
mod error;
pub mod linalg;
pub mod operators;
pub mod quadrature;
pub mod special_fn;
pub mod transform;

pub use basis::{BasisIndex, ProblemParams};
pub use error::{Error, Result};
pub use quadrature::QuadratureRule;
pub use transform::{CoefficientField, EvalGrid, FieldKind};
