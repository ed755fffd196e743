//! Toeplitz and Hankel determinants for the arc symbol and the truncated
//! exponential weight, Selberg integrals in closed form, the differential
//! identity verifiers, and the double-scaling drivers.

mod identities;
mod scaling;

pub use identities::{verify_circle_identity, verify_hankel_identity};
pub use scaling::{
    scaling_limit_airy, scaling_limit_sine, scaling_value_airy, scaling_value_sine, target_airy,
    target_sine, ScalingSequence,
};

use crate::error::{Error, Result};
use crate::numerics::{cholesky_pivots, log_det_cholesky, LogValue, SymmetricMatrix};
use crate::opoly::{
    build_circle_system, build_halfline_system, fourier_coeff_arc, ArcSymbol, TruncatedExpWeight,
};
use crate::specfun::{log_factorial, lower_incomplete_gamma};

// The moment-factorisation cross-check runs only for small orders and only
// while the Cholesky pivots keep a healthy spread; beyond that the moment
// matrix no longer carries the determinant to comparison accuracy.
const MOMENT_CROSS_CHECK_MAX_N: usize = 12;
const MOMENT_PIVOT_RATIO_GATE: f64 = 5e-3;
const CROSS_CHECK_RTOL: f64 = 1e-9;
const HANKEL_CROSS_CHECK_MAX_N: usize = 10;
const HANKEL_CROSS_CHECK_RTOL: f64 = 1e-7;

/// ln D_n of the Toeplitz determinant with the arc symbol, via the
/// orthogonal polynomial route (-2 sum ln chi_k).
///
/// For n <= 12 the result is cross-checked against direct factorisation of
/// the moment matrix whenever that matrix is well-conditioned enough for
/// the comparison to mean anything.
pub fn toeplitz_logdet_arc(n: usize, alpha: f64) -> Result<LogValue> {
    let sym = ArcSymbol::new(alpha)?;
    if n < 1 {
        return Err(Error::Input("determinant order must be >= 1".into()));
    }
    let sys = build_circle_system(sym, n)?;
    let ln = sys.toeplitz_logdet();
    if n <= MOMENT_CROSS_CHECK_MAX_N {
        let m = arc_moment_matrix(n, alpha);
        if let Ok(pivots) = cholesky_pivots(&m) {
            let ratio = pivots.iter().cloned().fold(f64::INFINITY, f64::min)
                / pivots.iter().cloned().fold(0.0f64, f64::max);
            if ratio >= MOMENT_PIVOT_RATIO_GATE {
                let direct: f64 = pivots.iter().map(|p| p.ln()).sum();
                if (direct - ln).abs() > CROSS_CHECK_RTOL * ln.abs().max(1.0) {
                    return Err(Error::Numerical(format!(
                        "Toeplitz routes disagree at n = {n}, alpha = {alpha}: \
                         {ln} (polynomials) vs {direct} (moments)"
                    )));
                }
            }
        }
    }
    Ok(LogValue::from_ln(1, ln))
}

/// Moment matrix of the arc symbol: entries c_{j-k}.
fn arc_moment_matrix(n: usize, alpha: f64) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(n, |i, j| fourier_coeff_arc(i as i64 - j as i64, alpha))
}

/// ln D_n by direct Cholesky of the Toeplitz moment matrix.
///
/// Kept as the independent representation of the same determinant; loses
/// the small pivots once the symbol degenerates (large alpha, larger n).
pub fn toeplitz_logdet_moments(n: usize, alpha: f64) -> Result<LogValue> {
    if n < 1 {
        return Err(Error::Input("determinant order must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::Input(format!(
            "arc parameter must lie in (0, pi), got {alpha}"
        )));
    }
    log_det_cholesky(&arc_moment_matrix(n, alpha))
}

/// ln D_n^H of the Hankel determinant with the truncated weight e^{-4xn}
/// on (0, alpha), via the Stieltjes-built polynomial system.
///
/// For n <= 10 the value is cross-checked against the incomplete-gamma
/// moment matrix route.
pub fn hankel_logdet_trunc(n: usize, alpha: f64) -> Result<LogValue> {
    let w = TruncatedExpWeight::new(alpha, n.max(1))?;
    if n < 1 {
        return Err(Error::Input("determinant order must be >= 1".into()));
    }
    let sys = build_halfline_system(w, n)?;
    let ln = sys.hankel_logdet();
    if n <= HANKEL_CROSS_CHECK_MAX_N {
        if let Ok(direct) = hankel_logdet_moments(n, alpha, n) {
            if (direct.ln_abs() - ln).abs() > HANKEL_CROSS_CHECK_RTOL * ln.abs().max(1.0) {
                return Err(Error::Numerical(format!(
                    "Hankel routes disagree at n = {n}, alpha = {alpha}: \
                     {ln} (polynomials) vs {} (moments)",
                    direct.ln_abs()
                )));
            }
        }
    }
    Ok(LogValue::from_ln(1, ln))
}

/// ln D_n^H by Cholesky of the raw moment matrix, moments
/// gamma(j+k+1, 4 n_w alpha) (4 n_w)^{-(j+k+1)} assembled in log space.
///
/// The weight scale n_w is a separate argument so tests can probe the
/// conditioning wall independently of the determinant order; expected to
/// fail with a conditioning error for n beyond roughly 12.
pub fn hankel_logdet_moments(n: usize, alpha: f64, weight_n: usize) -> Result<LogValue> {
    if n < 1 {
        return Err(Error::Input("determinant order must be >= 1".into()));
    }
    let w = TruncatedExpWeight::new(alpha, weight_n)?;
    let scale = 4.0 * w.scale_n() as f64;
    let mut entries = vec![0.0f64; 2 * n - 1];
    for (idx, e) in entries.iter_mut().enumerate() {
        let a = idx as f64 + 1.0;
        let g = lower_incomplete_gamma(a, scale * alpha)?;
        *e = (g * LogValue::from_ln(1, -a * scale.ln())).to_real();
    }
    let m = SymmetricMatrix::from_fn(n, |i, j| entries[i + j]);
    log_det_cholesky(&m)
}

/// ln D_n^H(w_infinity) = -n^2 ln(4n) + 2 sum_{k<n} ln k!, exact in log
/// space (Laguerre closed form).
pub fn hankel_logdet_laguerre_full(n: usize) -> LogValue {
    if n == 0 {
        return LogValue::one();
    }
    let nf = n as f64;
    let ln = -nf * nf * (4.0 * nf).ln()
        + 2.0 * (0..n as u64).map(log_factorial).sum::<f64>();
    LogValue::from_ln(1, ln)
}

/// ln A_n = n^2 ln 2 + sum_{k<n} (3 ln k! - ln (n+k)!), the closed-form
/// Selberg integral of the squared Vandermonde over [-1, 1]^n.
pub fn selberg_log_a(n: usize) -> LogValue {
    if n == 0 {
        return LogValue::one();
    }
    let nf = n as f64;
    let ln = nf * nf * std::f64::consts::LN_2
        + (0..n as u64)
            .map(|k| 3.0 * log_factorial(k) - log_factorial(n as u64 + k))
            .sum::<f64>();
    LogValue::from_ln(1, ln)
}

/// Relative deviation of D_n(f_alpha) from its small-arc degeneration
/// (pi - alpha)^{n^2} (2 pi)^{-n} A_n; the contract is O((pi - alpha)^2)
/// at fixed n <= 6.
pub fn toeplitz_smallarc_check(n: usize, alpha_near_pi: f64) -> Result<f64> {
    if !(1..=6).contains(&n) {
        return Err(Error::Input(format!(
            "small-arc check is restricted to n <= 6, got {n}"
        )));
    }
    let beta = std::f64::consts::PI - alpha_near_pi;
    if !(beta > 0.0 && beta <= 0.05) {
        return Err(Error::Input(format!(
            "small-arc check needs pi - alpha in (0, 0.05], got {beta}"
        )));
    }
    let ln_d = toeplitz_logdet_arc(n, alpha_near_pi)?.ln_abs();
    let nf = n as f64;
    let ln_rhs = nf * nf * beta.ln() - nf * (2.0 * std::f64::consts::PI).ln()
        + selberg_log_a(n).ln_abs();
    Ok((ln_d - ln_rhs).exp_m1().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_legendre;

    fn ln(v: &LogValue) -> f64 {
        assert_eq!(v.sign(), 1);
        v.ln_abs()
    }

    #[test]
    fn toeplitz_identity_like_limit() {
        // alpha -> 0+: symbol is 1, matrix is the identity
        for n in [1usize, 5, 10] {
            let v = toeplitz_logdet_arc(n, 1e-12).unwrap();
            assert!(v.ln_abs().abs() <= 1e-8, "n={n}: {}", v.ln_abs());
        }
    }

    #[test]
    fn toeplitz_small_orders_closed_forms() {
        let alpha = 1.0;
        let v = toeplitz_logdet_arc(1, alpha).unwrap();
        let exact = (1.0 - alpha / std::f64::consts::PI).ln();
        assert!((ln(&v) - exact).abs() <= 1e-12);

        let c0 = fourier_coeff_arc(0, alpha);
        let c1 = fourier_coeff_arc(1, alpha);
        let v = toeplitz_logdet_arc(2, alpha).unwrap();
        let exact = (c0 * c0 - c1 * c1).ln();
        assert!((ln(&v) - exact).abs() <= 1e-12);
    }

    #[test]
    fn toeplitz_strictly_decreasing_in_alpha() {
        let mut prev = f64::INFINITY;
        for &alpha in &[0.5, 1.0, 1.5, 2.0] {
            let v = ln(&toeplitz_logdet_arc(8, alpha).unwrap());
            assert!(v < prev, "lnD should fall as the excluded arc grows");
            prev = v;
        }
    }

    #[test]
    fn hankel_small_orders_closed_forms() {
        // n = 1: single moment (1 - e^{-4 alpha})/4
        let alpha = 0.6;
        let v = hankel_logdet_trunc(1, alpha).unwrap();
        let exact = ((1.0 - (-4.0 * alpha).exp()) / 4.0).ln();
        assert!((ln(&v) - exact).abs() <= 1e-10);

        // n = 2, alpha = 0.5 against the 2x2 incomplete-gamma moment determinant
        let alpha = 0.5;
        let mu = |a: f64| {
            lower_incomplete_gamma(a, 8.0 * alpha)
                .unwrap()
                .ln_abs()
                - a * 8.0f64.ln()
        };
        let (m0, m1, m2) = (mu(1.0).exp(), mu(2.0).exp(), mu(3.0).exp());
        let exact = (m0 * m2 - m1 * m1).ln();
        let v = hankel_logdet_trunc(2, alpha).unwrap();
        assert!((ln(&v) - exact).abs() <= 1e-9);
    }

    #[test]
    fn hankel_small_alpha_degeneration() {
        // lnD ~ n^2 ln(alpha/2) + ln A_n with O(alpha) drift; at n = 3 the
        // measured drift constant is ~18 alpha
        let n = 3;
        for &alpha in &[1e-3, 2e-3] {
            let v = ln(&hankel_logdet_trunc(n, alpha).unwrap());
            let main = 9.0 * (alpha / 2.0).ln() + selberg_log_a(n).ln_abs();
            assert!(
                (v - main).abs() <= 60.0 * alpha,
                "alpha={alpha}: drift {}",
                v - main
            );
        }
    }

    #[test]
    fn laguerre_full_closed_forms() {
        assert!((hankel_logdet_laguerre_full(1).ln_abs() - 0.25f64.ln()).abs() <= 1e-15);
        // n = 2 against the direct moment determinant with moments
        // (j+k)!/8^{j+k+1}: det = 1/4096
        assert!(
            (hankel_logdet_laguerre_full(2).ln_abs() - (1.0f64 / 4096.0).ln()).abs() <= 1e-12
        );
        let m = SymmetricMatrix::from_fn(2, |i, j| {
            let a = (i + j) as u64;
            log_factorial(a).exp() / 8.0f64.powi(i as i32 + j as i32 + 1)
        });
        let direct = log_det_cholesky(&m).unwrap();
        assert!((hankel_logdet_laguerre_full(2).ln_abs() - direct.ln_abs()).abs() <= 1e-12);
    }

    #[test]
    fn hankel_trunc_approaches_full_weight() {
        let trunc = ln(&hankel_logdet_trunc(3, 20.0).unwrap());
        let full = hankel_logdet_laguerre_full(3).ln_abs();
        assert!((trunc - full).abs() <= 1e-10, "{trunc} vs {full}");
    }

    #[test]
    fn selberg_closed_forms_and_quadrature_oracle() {
        assert!((selberg_log_a(1).ln_abs() - 2.0f64.ln()).abs() <= 1e-15);
        assert!((selberg_log_a(2).ln_abs() - (4.0f64 / 3.0).ln()).abs() <= 1e-12);

        // direct double integral (1/2!) int int (x-y)^2 = 4/3
        let q = gauss_legendre(20, -1.0, 1.0).unwrap();
        let mut acc = 0.0;
        for (&x, &wx) in q.nodes.iter().zip(&q.weights) {
            for (&y, &wy) in q.nodes.iter().zip(&q.weights) {
                acc += wx * wy * (x - y) * (x - y);
            }
        }
        acc /= 2.0;
        assert!((selberg_log_a(2).ln_abs() - acc.ln()).abs() <= 1e-12);

        // n = 3: tensor quadrature of (1/3!) int^3 prod (x_i - x_j)^2
        let q = gauss_legendre(64, -1.0, 1.0).unwrap();
        let mut acc = 0.0;
        for (&x, &wx) in q.nodes.iter().zip(&q.weights) {
            for (&y, &wy) in q.nodes.iter().zip(&q.weights) {
                let dxy = (x - y) * (x - y);
                for (&z, &wz) in q.nodes.iter().zip(&q.weights) {
                    acc += wx * wy * wz * dxy * (x - z) * (x - z) * (y - z) * (y - z);
                }
            }
        }
        acc /= 6.0;
        let rel = (selberg_log_a(3).ln_abs() - acc.ln()).abs();
        assert!(rel <= 1e-9, "Selberg n=3 relative log error {rel}");
    }

    #[test]
    fn smallarc_deviations() {
        // n = 1 cancels exactly: D_1 = (pi - alpha)/pi on both sides
        let beta = 0.01;
        let dev = toeplitz_smallarc_check(1, std::f64::consts::PI - beta).unwrap();
        assert!(dev <= 1e-10, "n=1 deviation {dev}");

        let dev2 = toeplitz_smallarc_check(2, std::f64::consts::PI - beta).unwrap();
        assert!(dev2 <= 1e-3, "n=2 deviation {dev2}");

        // quadratic order: halving beta divides the deviation by ~4
        let d_late = toeplitz_smallarc_check(3, std::f64::consts::PI - 0.01).unwrap();
        let d_early = toeplitz_smallarc_check(3, std::f64::consts::PI - 0.02).unwrap();
        let ratio = d_early / d_late;
        assert!(
            (8.0 / 3.0..=6.0).contains(&ratio),
            "order-2 ratio {ratio} outside [2.67, 6]"
        );
    }

    #[test]
    fn smallarc_rejects_out_of_range() {
        assert!(toeplitz_smallarc_check(7, std::f64::consts::PI - 0.01).is_err());
        assert!(toeplitz_smallarc_check(2, 2.0).is_err());
    }

    #[test]
    fn moment_routes_match_where_conditioned() {
        for &alpha in &[0.5f64, 1.0] {
            for n in 1..=12 {
                let a = ln(&toeplitz_logdet_arc(n, alpha).unwrap());
                let b = ln(&toeplitz_logdet_moments(n, alpha).unwrap());
                assert!(
                    (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                    "n={n}, alpha={alpha}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn hankel_moment_route_conditioning_wall() {
        // Stieltjes route stays finite and positive well past the wall
        let v = hankel_logdet_trunc(25, 0.9).unwrap();
        assert!(v.ln_abs().is_finite());
        // the raw moment route either errors out or has lost the value;
        // both outcomes are acceptable, a panic is not
        let _ = hankel_logdet_moments(25, 0.9, 25);
    }
}
