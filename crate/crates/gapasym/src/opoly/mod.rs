//! Orthogonal polynomial systems behind the structured determinants: the
//! unit-circle arc family (leading coefficients chi_k, edge values phi_n)
//! and the truncated-exponential half-line family (kappa_k, boundary values
//! p_n, p_{n-1}).

mod circle;
mod halfline;

pub use circle::{build_circle_system, fourier_coeff_arc, ArcSymbol, CircleOPSystem};
pub use halfline::{build_halfline_system, HalfLineOPSystem, TruncatedExpWeight};

/// Complex scalar used for the circle-side boundary data.
pub type ComplexValue = num_complex::Complex64;
