//! Sine and Airy kernels and their gap determinants det(I - K) by Nystrom
//! discretisation on Gauss-Legendre grids.

use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, log_det_lu, SquareMatrix};
use crate::specfun::ai_pair;

/// Gap parameter: the sine determinant lives on (0, 2s), the Airy
/// determinant on (-s, infinity).
#[derive(Clone, Copy, Debug)]
pub struct GapParams {
    pub s: f64,
}

/// Discretisation parameters for the Nystrom determinants.
#[derive(Clone, Copy, Debug)]
pub struct NystromConfig {
    /// Quadrature points.
    pub m: usize,
    /// Upper truncation of the semi-infinite Airy interval.
    pub airy_cutoff: f64,
}

impl NystromConfig {
    /// Default rule: m = ceil(10 + 6s) rounded up to even, floored at 16
    /// (the sine precondition m >= max(16, 4s)); cutoff 14.
    pub fn default_for(s: f64) -> Self {
        let mut m = (10.0 + 6.0 * s).ceil() as usize;
        if m % 2 == 1 {
            m += 1;
        }
        NystromConfig {
            m: m.max(16),
            airy_cutoff: 14.0,
        }
    }

    /// Same rule at doubled resolution; used for converged sweep targets.
    pub fn converged_for(s: f64) -> Self {
        let base = Self::default_for(s);
        NystromConfig {
            m: 2 * base.m,
            airy_cutoff: base.airy_cutoff,
        }
    }
}

/// A computed log gap-determinant with its discretisation and an error
/// estimate from grid refinement.
#[derive(Clone, Copy, Debug)]
pub struct GapResult {
    /// ln det(I - K); lies in (-inf, 0] since the operator is a positive
    /// trace-class restriction with norm < 1.
    pub log_det: f64,
    pub config: NystromConfig,
    /// |log_det(m) - log_det(ceil(m/2))|, plus the truncation tail bound in
    /// the Airy case.
    pub error_estimate: f64,
}

/// sin(x-y) / (pi (x-y)), with the Taylor value on the near-diagonal.
pub fn sine_kernel(x: f64, y: f64) -> f64 {
    let d = x - y;
    if d.abs() < 1e-8 {
        (1.0 - d * d / 6.0) / std::f64::consts::PI
    } else {
        d.sin() / (std::f64::consts::PI * d)
    }
}

/// (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y); near the diagonal the limit
/// Ai'(m)^2 - m Ai(m)^2 at the midpoint m.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    let d = x - y;
    if d.abs() < 1e-6 {
        let m = 0.5 * (x + y);
        let (ai, aip) = ai_pair(m)?;
        Ok(aip * aip - m * ai * ai)
    } else {
        let (ax, apx) = ai_pair(x)?;
        let (ay, apy) = ai_pair(y)?;
        Ok((ax * apy - ay * apx) / d)
    }
}

/// delta_ij - sqrt(w_i) K(x_i, x_j) sqrt(w_j) over the rule, then a signed
/// log determinant.
fn nystrom_log_det(
    lower: f64,
    upper: f64,
    m: usize,
    kernel: &dyn Fn(f64, f64) -> Result<f64>,
) -> Result<f64> {
    let quad = gauss_legendre(m, lower, upper)?;
    let sq: Vec<f64> = quad.weights.iter().map(|w| w.sqrt()).collect();
    let mut a = SquareMatrix::zeros(m);
    for i in 0..m {
        for j in 0..m {
            let k = kernel(quad.nodes[i], quad.nodes[j])?;
            let v = if i == j { 1.0 } else { 0.0 } - sq[i] * k * sq[j];
            a.set(i, j, v);
        }
    }
    let det = log_det_lu(&a)?;
    if det.sign() != 1 {
        return Err(Error::Numerical(
            "discretised I - K lost positivity; refine the grid".into(),
        ));
    }
    Ok(det.ln_abs())
}

/// Sine-kernel determinant on (0, 2s).
pub fn fredholm_det_sine(p: GapParams, cfg: NystromConfig) -> Result<GapResult> {
    if !(p.s > 0.0 && p.s.is_finite()) {
        return Err(Error::Input(format!(
            "sine gap parameter must be positive, got {}",
            p.s
        )));
    }
    let m_min = 16.0f64.max(4.0 * p.s).ceil() as usize;
    if cfg.m < m_min {
        return Err(Error::Input(format!(
            "m = {} too small to resolve the oscillation; need m >= {m_min}",
            cfg.m
        )));
    }
    let kernel = |x: f64, y: f64| Ok(sine_kernel(x, y));
    let fine = nystrom_log_det(0.0, 2.0 * p.s, cfg.m, &kernel)?;
    let coarse = nystrom_log_det(0.0, 2.0 * p.s, cfg.m.div_ceil(2), &kernel)?;
    Ok(GapResult {
        log_det: fine,
        config: cfg,
        error_estimate: (fine - coarse).abs(),
    })
}

/// Airy-kernel determinant on (-s, cutoff); accepts s = 0 (distribution
/// value at the origin).
pub fn fredholm_det_airy(p: GapParams, cfg: NystromConfig) -> Result<GapResult> {
    if !(p.s >= 0.0 && p.s.is_finite()) {
        return Err(Error::Input(format!(
            "Airy gap parameter must be non-negative, got {}",
            p.s
        )));
    }
    if cfg.m < 4 {
        return Err(Error::Input("Nystrom rule needs m >= 4".into()));
    }
    if !(cfg.airy_cutoff >= 6.0) {
        return Err(Error::Input(format!(
            "Airy cutoff must be >= 6, got {}",
            cfg.airy_cutoff
        )));
    }
    // ai_pair returns a Domain error beyond the validated range, which also
    // covers cutoff > 20 and s > 15. The Ai(T)^2 <= 1e-30 guideline is the
    // caller's obligation; the omitted tail is reported in error_estimate.
    let _ = ai_pair(cfg.airy_cutoff)?;
    let kernel = |x: f64, y: f64| airy_kernel(x, y);
    let fine = nystrom_log_det(-p.s, cfg.airy_cutoff, cfg.m, &kernel)?;
    let coarse = nystrom_log_det(-p.s, cfg.airy_cutoff, cfg.m.div_ceil(2), &kernel)?;
    // trace of the omitted tail: int_T^inf K(t,t) dt <= K(T,T) scale; K(T,T)
    // itself equals the tail integral of Ai^2
    let tail = airy_kernel(cfg.airy_cutoff, cfg.airy_cutoff)?;
    Ok(GapResult {
        log_det: fine,
        config: cfg,
        error_estimate: (fine - coarse).abs() + tail.abs(),
    })
}
