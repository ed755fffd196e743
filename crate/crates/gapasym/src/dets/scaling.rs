//! Double-scaling drivers: the structured determinants approach the gap
//! determinants when the symbol parameter degenerates at an n-dependent
//! rate (alpha = 2s/n for the arc, alpha = 1 - s/(2n)^(2/3) for the
//! truncated weight).

use crate::error::{Error, Result};
use crate::fredholm::{fredholm_det_airy, fredholm_det_sine, GapParams, NystromConfig};

use super::{hankel_logdet_laguerre_full, hankel_logdet_trunc, toeplitz_logdet_arc};

/// A determinant sequence along increasing orders together with its
/// continuum target.
#[derive(Clone, Debug)]
pub struct ScalingSequence {
    pub s: f64,
    pub orders: Vec<usize>,
    /// ln D_n(f_{2s/n}) for the sine route, the Hankel log-ratio for the
    /// Airy route.
    pub values: Vec<f64>,
    /// ln P from the Nystrom determinant at converged resolution.
    pub target: f64,
}

impl ScalingSequence {
    /// |values - target| per order.
    pub fn abs_errors(&self) -> Vec<f64> {
        self.values.iter().map(|v| (v - self.target).abs()).collect()
    }
}

/// ln P_s^(1) at converged resolution (doubled default grid).
pub fn target_sine(s: f64) -> Result<f64> {
    Ok(fredholm_det_sine(GapParams { s }, NystromConfig::converged_for(s))?.log_det)
}

/// ln P_s^(2) at converged resolution.
pub fn target_airy(s: f64) -> Result<f64> {
    Ok(fredholm_det_airy(GapParams { s }, NystromConfig::converged_for(s))?.log_det)
}

/// One term of the sine-side sequence: ln D_n(f_{2s/n}).
pub fn scaling_value_sine(s: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Input("order must be >= 1".into()));
    }
    let alpha = 2.0 * s / n as f64;
    if !(alpha < std::f64::consts::PI) {
        return Err(Error::Input(format!(
            "order n = {n} too small: 2s/n = {alpha} must stay below pi"
        )));
    }
    Ok(toeplitz_logdet_arc(n, alpha)?.ln_abs())
}

/// One term of the Airy-side sequence:
/// ln D_n^H(w_alpha) - ln D_n^H(w_inf) at alpha = 1 - s/(2n)^(2/3).
pub fn scaling_value_airy(s: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Input("order must be >= 1".into()));
    }
    let alpha = 1.0 - s / (2.0 * n as f64).powf(2.0 / 3.0);
    if !(alpha > 0.0) {
        return Err(Error::Input(format!(
            "order n = {n} too small: 1 - s/(2n)^(2/3) = {alpha} must be positive"
        )));
    }
    // ratio as a difference of log determinants; the factors underflow
    // separately already near n = 10
    Ok(hankel_logdet_trunc(n, alpha)?.ln_abs() - hankel_logdet_laguerre_full(n).ln_abs())
}

fn check_orders(orders: &[usize]) -> Result<()> {
    if orders.is_empty() {
        return Err(Error::Input("order list must not be empty".into()));
    }
    for w in orders.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Input("orders must be strictly increasing".into()));
        }
    }
    Ok(())
}

/// Sequence ln D_n(f_{2s/n}) -> ln P_s^(1) along the given orders.
pub fn scaling_limit_sine(s: f64, orders: &[usize]) -> Result<ScalingSequence> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Input(format!("s must be positive, got {s}")));
    }
    check_orders(orders)?;
    let values = orders
        .iter()
        .map(|&n| scaling_value_sine(s, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalingSequence {
        s,
        orders: orders.to_vec(),
        values,
        target: target_sine(s)?,
    })
}

/// Sequence of Hankel log-ratios -> ln P_s^(2) along the given orders.
pub fn scaling_limit_airy(s: f64, orders: &[usize]) -> Result<ScalingSequence> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Input(format!("s must be positive, got {s}")));
    }
    check_orders(orders)?;
    let values = orders
        .iter()
        .map(|&n| scaling_value_airy(s, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalingSequence {
        s,
        orders: orders.to_vec(),
        values,
        target: target_airy(s)?,
    })
}
