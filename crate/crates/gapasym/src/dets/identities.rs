//! Finite-difference verification of the exact log-derivative identities
//! of the two structured determinants.

use crate::error::{Error, Result};
use crate::opoly::{build_circle_system, build_halfline_system, ArcSymbol, TruncatedExpWeight};

use super::{hankel_logdet_trunc, toeplitz_logdet_arc};

/// Relative discrepancy between the central difference of
/// alpha -> ln D_n(f_alpha) and its closed form from the circle system:
/// (n/pi)|phi_n(e^{i alpha})|^2 - (2/pi) Re[conj(phi_n) e^{i alpha} phi_n'].
pub fn verify_circle_identity(n: usize, alpha: f64, h: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Input("identity check needs n >= 2".into()));
    }
    if !(h > 0.0 && alpha > h && alpha < std::f64::consts::PI - h) {
        return Err(Error::Input(format!(
            "need 0 < h < alpha < pi - h, got alpha = {alpha}, h = {h}"
        )));
    }
    let fp = toeplitz_logdet_arc(n, alpha + h)?.ln_abs();
    let fm = toeplitz_logdet_arc(n, alpha - h)?.ln_abs();
    let lhs = (fp - fm) / (2.0 * h);

    let sys = build_circle_system(ArcSymbol::new(alpha)?, n)?;
    let phi = sys.phi_at_edge();
    let dphi = sys.dphi_at_edge();
    let edge = num_complex::Complex64::from_polar(1.0, alpha);
    let pi = std::f64::consts::PI;
    let rhs = n as f64 / pi * phi.norm_sqr() - 2.0 / pi * (phi.conj() * edge * dphi).re;
    Ok((lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE))
}

/// Relative discrepancy for the Hankel analogue:
/// d/d alpha ln D_n^H(w_alpha) =
/// (kappa_{n-1}/kappa_n) e^{-4 n alpha} (p_n' p_{n-1} - p_n p_{n-1}').
///
/// The difference quotient varies only the truncation endpoint; the weight
/// keeps the fixed shape e^{-4xn} throughout, which is the only reading
/// under which the right-hand side is the derivative.
pub fn verify_hankel_identity(n: usize, alpha: f64, h: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Input("identity check needs n >= 2".into()));
    }
    if !(h > 0.0 && h < alpha) {
        return Err(Error::Input(format!(
            "need 0 < h < alpha, got alpha = {alpha}, h = {h}"
        )));
    }
    let fp = hankel_logdet_trunc(n, alpha + h)?.ln_abs();
    let fm = hankel_logdet_trunc(n, alpha - h)?.ln_abs();
    let lhs = (fp - fm) / (2.0 * h);

    let sys = build_halfline_system(TruncatedExpWeight::new(alpha, n)?, n)?;
    let ratio = (sys.log_kappa(n - 1) - sys.log_kappa(n)).exp();
    let [pn, pn1] = sys.p_at_edge();
    let [dpn, dpn1] = sys.dp_at_edge();
    let rhs = ratio * (-4.0 * n as f64 * alpha).exp() * (dpn * pn1 - pn * dpn1);
    Ok((lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE))
}
