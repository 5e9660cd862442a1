//! Closed-form spectral solver for the non-cutoff radially symmetric
//! spatially homogeneous Boltzmann equation with Maxwellian molecules.
//!
//! The solution is expanded over the radial Hermite-type eigenfunctions of
//! the linearized collision operator. In that basis the equation becomes a
//! triangular hierarchy of coefficient ODEs whose solutions are finite sums
//! of decaying exponentials with exact rates of the form a + b pi. This crate
//! computes those sums exactly for the sin^-2 angular kernel and validates
//! them against an independent Runge-Kutta integration of the same hierarchy.
//!
//! Module map:
//! - [`exact_arith`]: numbers a + b pi and exact trigonometric power integrals
//! - [`kernel`]: angular kernel descriptions and tanh-sinh quadrature
//! - [`basis`]: eigenfunction evaluation and closed-form functionals
//! - [`eigenvalues`]: linear and bilinear eigenvalue tables
//! - [`initial_data`]: spectral coefficients of the built-in initial data
//! - [`expsum`]: exponential-sum algebra with exact rate keys
//! - [`solver`]: the triangular closed-form recursion
//! - [`evaluator`]: reconstructions, norms, ratios, conservation, CSV output
//! - [`oracle`]: independent ODE integration and comparison
//! - [`cli`]: the `boltzspect` command-line interface

pub mod basis;
pub mod cli;
pub mod eigenvalues;
pub mod error;
pub mod evaluator;
pub mod exact_arith;
pub mod expsum;
pub mod initial_data;
pub mod kernel;
pub mod oracle;
pub mod precision;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
pub use exact_arith::{PiRational, SqrtRationalFactor};
pub use expsum::ExpSum;
pub use kernel::KernelSpec;
pub use precision::Precision;
pub use solver::{SolutionSeries, SolverOptions};
