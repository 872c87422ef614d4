//! Spacetime-path machinery for massive particles of arbitrary spin.
//!
//! The crate is organized bottom-up:
//!
//! * [`minkowski`]: four-vectors, the (−+++) metric, Wick rotation, on-shell energies.
//! * [`groups`]: SU(2), SO(4) through its SU(2)×SU(2) cover, SL(2,ℂ) and Lorentz matrices,
//!   Haar quadrature and sampling.
//! * [`repr`]: spin-ℓ representation matrices, characters and orthogonality checks.
//! * [`kernels`]: scalar kernel and Feynman propagator, character-sum kernels on SU(2)
//!   and SO(4), mass shifts.
//! * [`spin`]: standard boosts, Wigner rotations, spin frames `(u, v, P)`, on-shell
//!   kernels, nonscalar propagators and localized wave functions.
//! * [`fock`]: multiparticle inner products, external-leg factors and the first-order
//!   vertex amplitude.
//!
//! Natural units (ħ = c = 1) are used throughout.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod groups;
pub mod kernels;
pub mod minkowski;
pub mod quad;
pub mod repr;
pub mod spin;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default absolute tolerance for identities that are exact up to rounding.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
