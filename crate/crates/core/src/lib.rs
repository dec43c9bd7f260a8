//! Spectra of self-adjoint noncommutative polynomials in random matrices.
//!
//! The pipeline: parse a polynomial in hermitian symbols `x1, x2, ...` and
//! general symbols `y1, y2, ...` (with adjoints), build a self-adjoint
//! linearization pencil, solve the associated Dyson equation for the
//! deterministic matrix `M(z)`, read off the density of states from its
//! (1,1) entry, certify boundedness and stability of the solution on the
//! bulk, and compare everything against Monte Carlo simulations of the
//! corresponding random-matrix ensembles.
//!
//! Modules:
//! - [`ncpoly`]: canonical noncommutative polynomials, parsing, evaluation.
//! - [`linearize`]: standard and minimal linearization pencils plus
//!   verification, nilpotency and minimality checks.
//! - [`del`]: the Dyson equation solver, density of states, stability
//!   certification and the closed-form oracles for the quadratic-form and
//!   product models.
//! - [`freeprob`]: exact semicircular moments via non-crossing pairings.
//! - [`rmt`]: ensemble sampling, resolvents of sampled polynomials and the
//!   local-law / rigidity / delocalization / convergence-speed experiments.

// Pull in the system BLAS/LAPACK link flags.
use openblas_src as _;

pub mod del;
pub mod freeprob;
pub mod jsonfmt;
pub mod linalg;
pub mod linearize;
pub mod ncpoly;
pub mod rmt;

pub use num_complex::Complex64;
