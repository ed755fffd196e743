//! Gap probabilities of random matrix theory at desk scale: sine- and
//! Airy-kernel Fredholm determinants, their Toeplitz and Hankel determinant
//! approximants built from orthogonal polynomials, the differential
//! identities tying the two together, and the large-gap asymptotic
//! expansions whose constant terms are recovered numerically as residuals.
//!
//! Layout:
//! - [`numerics`]: quadrature, log-space determinants, extrapolation
//! - [`specfun`]: Airy functions, log-factorials, incomplete gamma, and the
//!   derived constants built on zeta'(-1)
//! - [`fredholm`]: the sine/Airy kernels and their Nystrom determinants
//! - [`opoly`]: orthogonal polynomial systems on the unit-circle arc and on
//!   a truncated half-line
//! - [`dets`]: structured determinants, identity verifiers, double-scaling
//!   drivers
//! - [`asympt`]: asymptotic expansions and residual extraction
//!
//! All public operations are pure functions; shared state is limited to
//! lazily initialised immutable constants.

// negated comparisons like !(x > 0.0) are argument guards that must also
// reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asympt;
pub mod dets;
mod error;
pub mod fredholm;
pub mod numerics;
pub mod opoly;
pub mod specfun;

pub use error::{Error, Result};
