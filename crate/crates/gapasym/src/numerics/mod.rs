//! Quadrature, log-space determinants, finite differences and Richardson
//! extrapolation. Everything here is a pure function of its inputs.

mod linalg;
mod logval;

pub use linalg::{cholesky_pivots, log_det_cholesky, log_det_lu, SquareMatrix, SymmetricMatrix};
pub use logval::LogValue;

use crate::error::{Error, Result};

/// Nodes and weights of a quadrature rule on a finite interval.
#[derive(Clone, Debug)]
pub struct Quadrature {
    pub lower: f64,
    pub upper: f64,
    /// Strictly increasing, interior to (lower, upper).
    pub nodes: Vec<f64>,
    /// Positive; they sum to `upper - lower`.
    pub weights: Vec<f64>,
}

impl Quadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_CAP: usize = 100;

/// Legendre P_m and its derivative by the three-term recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    // P'_m(x) = m (x P_m - P_{m-1}) / (x^2 - 1)
    let dp = (m as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// m-point Gauss-Legendre rule affinely mapped to (lower, upper).
///
/// Nodes are Newton-refined roots of P_m starting from the Chebyshev-angle
/// guesses; exact for polynomials of degree <= 2m-1 up to rounding.
pub fn gauss_legendre(m: usize, lower: f64, upper: f64) -> Result<Quadrature> {
    if m == 0 {
        return Err(Error::Input("quadrature needs at least one point".into()));
    }
    if !(lower.is_finite() && upper.is_finite() && lower < upper) {
        return Err(Error::Input(format!(
            "invalid interval ({lower}, {upper})"
        )));
    }
    let mut nodes = vec![0.0f64; m];
    let mut weights = vec![0.0f64; m];
    let half = m.div_ceil(2);
    for i in 0..half {
        // Chebyshev-angle initial guess; z decreases as i grows.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut converged = false;
        let mut dp = 0.0;
        for _ in 0..NEWTON_CAP {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical(format!(
                "Gauss-Legendre node {i} of {m} did not converge"
            )));
        }
        // refresh the derivative at the converged node for the weight
        let (_, d) = legendre_with_derivative(m, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[m - 1 - i] = z;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        // middle node is exactly zero by symmetry
        nodes[m / 2] = 0.0;
        let (_, d) = legendre_with_derivative(m, 0.0);
        weights[m / 2] = 2.0 / (d * d);
    }
    let mid = 0.5 * (lower + upper);
    let hl = 0.5 * (upper - lower);
    for i in 0..m {
        nodes[i] = mid + hl * nodes[i];
        weights[i] *= hl;
    }
    Ok(Quadrature {
        lower,
        upper,
        nodes,
        weights,
    })
}

/// Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Input(format!("step must be positive, got {h}")));
    }
    let fp = f(x + h);
    let fm = f(x - h);
    if !fp.is_finite() || !fm.is_finite() {
        return Err(Error::Numerical(format!(
            "non-finite evaluation near x = {x}"
        )));
    }
    Ok((fp - fm) / (2.0 * h))
}

/// Richardson extrapolation to step zero.
///
/// Models `v(h) = L + c1 h^p + c2 h^(2p) + ...` with `p = order`; with k
/// pairs the Neville tableau eliminates k-1 error terms.
pub fn richardson_extrapolate(pairs: &[(f64, f64)], order: f64) -> Result<f64> {
    if pairs.len() < 2 {
        return Err(Error::Input(
            "Richardson extrapolation needs at least two (step, value) pairs".into(),
        ));
    }
    if !(order > 0.0 && order.is_finite()) {
        return Err(Error::Input(format!(
            "convergence order must be positive, got {order}"
        )));
    }
    let mut t = Vec::with_capacity(pairs.len());
    let mut v = Vec::with_capacity(pairs.len());
    for &(h, val) in pairs {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Input(format!("steps must be positive, got {h}")));
        }
        t.push(h.powf(order));
        v.push(val);
    }
    for i in 0..t.len() {
        for j in (i + 1)..t.len() {
            if t[i] == t[j] {
                return Err(Error::Input("duplicate steps in Richardson table".into()));
            }
        }
    }
    // Neville tableau evaluated at t = 0
    let n = v.len();
    for j in 1..n {
        for i in (j..n).rev() {
            v[i] = v[i] + (v[i] - v[i - 1]) * (0.0 - t[i]) / (t[i] - t[i - j]);
        }
    }
    Ok(v[n - 1])
}

/// Least-squares slope of ln|y| against ln x; the fitted decay exponent.
pub fn fit_log_decay(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (x.ln(), y.abs().max(1e-300).ln()))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
