//! Special functions and mathematical constants: Airy Ai and Ai',
//! log-factorial, the lower incomplete gamma function, and the derived
//! constants built on zeta'(-1).

mod airy;
mod constants;
pub(crate) mod gamma;

pub use airy::{ai_pair, airy_ai, airy_ai_prime};
pub use constants::{constants, Constants};
pub use gamma::{ln_gamma, log_factorial, lower_incomplete_gamma};
