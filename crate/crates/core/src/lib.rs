//! Dirac potentials of pseudoscalar and scalar type built from the rationally
//! extended radial oscillator, together with Wronskian-based Darboux
//! transformations of arbitrary order and the verification machinery
//! (equation residuals, orthogonality, spectral checks) that certifies every
//! construction numerically.
//!
//! The crate is organized around a small set of concepts:
//!
//! - [`jet::Jet`]: the value and derivatives of a scalar function at a point,
//!   the currency in which every Wronskian row and equation residual is paid.
//! - [`field::ScalarField`]: an evaluatable real function of `x > 0` that
//!   produces jets of any requested order.
//! - [`specfun`]: Kummer's confluent hypergeometric function, generalized
//!   (real-index) Laguerre functions and X1 exceptional Laguerre functions.
//! - [`oscillator`]: the initial solvable model, its spectrum and bound
//!   states.
//! - [`riccati`]: particular and one-parameter general solutions q of
//!   V = q² + q′ from a zero-energy seed.
//! - [`dirac`]: the 2×2 first-order system, its spinor solutions and residual
//!   checks for both potential kinds.
//! - [`darboux`]: Wronskian-quotient transformations, the Crum potential
//!   shift, and the transformed parametrizing function and spinors.
//! - [`numerics`]: adaptive quadrature, finite-difference oracles and
//!   normalization.
//!
//! The crate is `no_std` (with `alloc`); IO, the command line and file
//! formats live in the companion CLI crate.
//!
//! ```
//! use darboux_dirac::oscillator::{
//!     eigenfunction, energy, potential_v0, schrodinger_residual, Grid, ModelParams,
//! };
//!
//! // the ground state solves its equation to near machine precision
//! let p = ModelParams::new(1.0, 1, 1.0, 0.0)?;
//! let psi = eigenfunction(&p);
//! let grid = Grid::linear(0.2, 8.0, 200)?;
//! let residual =
//!     schrodinger_residual(psi.as_ref(), energy(&p), |x| potential_v0(&p, x), &grid)?;
//! assert!(residual < 1e-8);
//! # Ok::<(), darboux_dirac::Error>(())
//! ```

#![no_std]
#![allow(clippy::needless_range_loop)] // index symmetry is the math in convolution loops

extern crate alloc;

pub mod darboux;
pub mod dirac;
pub mod error;
pub mod field;
pub mod jet;
pub mod numerics;
pub mod oscillator;
pub mod riccati;
pub mod specfun;

mod dd;
mod gamma;

pub use error::{Error, Result};
pub use field::{FieldRef, ScalarField};
pub use jet::Jet;
