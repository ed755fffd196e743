//! Large-gap asymptotic expansions and residual extraction of their
//! constant terms.
//!
//! Every evaluator carries exactly the terms with known coefficients; the
//! higher-order corrections whose values are not pinned down here are
//! represented by their absence (the term list makes later extension
//! explicit). All constants come from [`crate::specfun::constants`]; no
//! formula re-derives them.

use crate::dets::{
    hankel_logdet_trunc, scaling_value_airy, selberg_log_a, target_airy, target_sine,
    toeplitz_logdet_arc,
};
use crate::error::{Error, Result};
use crate::numerics::{fit_log_decay, richardson_extrapolate};
use crate::specfun::{constants, log_factorial};

/// A truncated asymptotic expansion: labelled retained terms and their sum.
#[derive(Clone, Debug)]
pub struct ExpansionValue {
    pub terms: Vec<(&'static str, f64)>,
    pub total: f64,
}

impl ExpansionValue {
    fn new(terms: Vec<(&'static str, f64)>) -> Self {
        let total = terms.iter().map(|t| t.1).sum();
        ExpansionValue { terms, total }
    }
}

/// A residual sequence over a parameter (n or s) with its extrapolated
/// limit.
#[derive(Clone, Debug)]
pub struct ResidualSeries {
    pub parameter: Vec<f64>,
    pub residual: Vec<f64>,
    pub extrapolated_limit: f64,
}

/// Richardson limit with the decay order fitted from the data itself
/// (the expansions pin no rate for these remainders).
pub fn extrapolated_limit_of(parameter: &[f64], residual: &[f64]) -> f64 {
    extrapolate(parameter, residual)
}

fn extrapolate(parameter: &[f64], residual: &[f64]) -> f64 {
    match parameter.len() {
        0 => 0.0,
        1 => residual[0],
        len => {
            let mut p = if len == 2 {
                (residual[0].abs().max(1e-300) / residual[1].abs().max(1e-300)).ln()
                    / (parameter[1] / parameter[0]).ln()
            } else {
                -fit_log_decay(parameter, residual)
            };
            if !p.is_finite() {
                p = 1.0;
            }
            let p = p.clamp(0.25, 8.0);
            let pairs: Vec<(f64, f64)> = parameter
                .iter()
                .zip(residual)
                .map(|(&x, &r)| (1.0 / x, r))
                .collect();
            richardson_extrapolate(&pairs, p).unwrap_or(residual[len - 1])
        }
    }
}

fn series(parameter: Vec<f64>, residual: Vec<f64>) -> ResidualSeries {
    let extrapolated_limit = extrapolate(&parameter, &residual);
    ResidualSeries {
        parameter,
        residual,
        extrapolated_limit,
    }
}

/// Sine-kernel large-gap expansion: -s^2/2 - (1/4) ln s + c0.
pub fn dyson_expansion(s: f64) -> Result<ExpansionValue> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Input(format!("s must be positive, got {s}")));
    }
    Ok(ExpansionValue::new(vec![
        ("-s^2/2", -s * s / 2.0),
        ("-(1/4) ln s", -0.25 * s.ln()),
        ("c0", constants().c0),
    ]))
}

/// Airy-kernel (Tracy-Widom) expansion: -s^3/12 - (1/8) ln s + chi.
pub fn tracy_widom_expansion(s: f64) -> Result<ExpansionValue> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Input(format!("s must be positive, got {s}")));
    }
    Ok(ExpansionValue::new(vec![
        ("-s^3/12", -s * s * s / 12.0),
        ("-(1/8) ln s", -0.125 * s.ln()),
        ("chi", constants().chi_tw),
    ]))
}

/// Arc-determinant expansion:
/// n^2 ln cos(a/2) - (1/4) ln(n sin(a/2)) + c0.
pub fn arc_det_expansion(n: usize, alpha: f64) -> Result<ExpansionValue> {
    if n < 1 {
        return Err(Error::Input("order must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::Input(format!(
            "alpha must lie in (0, pi), got {alpha}"
        )));
    }
    let nf = n as f64;
    Ok(ExpansionValue::new(vec![
        ("n^2 ln cos(a/2)", nf * nf * (alpha / 2.0).cos().ln()),
        (
            "-(1/4) ln(n sin(a/2))",
            -0.25 * (nf * (alpha / 2.0).sin()).ln(),
        ),
        ("c0", constants().c0),
    ]))
}

/// Hankel log-ratio expansion:
/// n^2 (3/2 + ln a - 2a + a^2/2) - (1/12) ln n - (1/8) ln(1 - a^2)
/// + (1/12) ln 2 + zeta'(-1).
pub fn hankel_ratio_expansion(n: usize, alpha: f64) -> Result<ExpansionValue> {
    if n < 1 {
        return Err(Error::Input("order must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Input(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let nf = n as f64;
    let c = constants();
    Ok(ExpansionValue::new(vec![
        (
            "n^2 (3/2 + ln a - 2a + a^2/2)",
            nf * nf * (1.5 + alpha.ln() - 2.0 * alpha + alpha * alpha / 2.0),
        ),
        ("-(1/12) ln n", -nf.ln() / 12.0),
        (
            "-(1/8) ln(1 - a^2)",
            -(1.0 - alpha * alpha).ln() / 8.0,
        ),
        ("(1/12) ln 2", std::f64::consts::LN_2 / 12.0),
        ("zeta'(-1)", c.zeta_prime_minus_one),
    ]))
}

/// Main terms of d/da ln D_n(f_a): -(n^2/2) tan(a/2) - (1/8) cot(a/2).
pub fn arc_logderiv_main(n: usize, alpha: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Input("order must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::Input(format!(
            "alpha must lie in (0, pi), got {alpha}"
        )));
    }
    let nf = n as f64;
    let half = alpha / 2.0;
    Ok(-nf * nf / 2.0 * half.tan() - 0.125 / half.tan())
}

/// Main terms of d/da ln D_n^H(w_a): (n^2/a)(1-a)^2 + a/(4(1-a^2)).
pub fn hankel_logderiv_main(n: usize, alpha: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Input("order must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Input(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let nf = n as f64;
    Ok(nf * nf / alpha * (1.0 - alpha) * (1.0 - alpha)
        + alpha / (4.0 * (1.0 - alpha * alpha)))
}

/// |central difference of ln D_n(f_a) minus the main derivative terms|.
pub fn arc_logderiv_gap(n: usize, alpha: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && alpha > h && alpha < std::f64::consts::PI - h) {
        return Err(Error::Input(format!(
            "need 0 < h < alpha < pi - h, got alpha = {alpha}, h = {h}"
        )));
    }
    let fp = toeplitz_logdet_arc(n, alpha + h)?.ln_abs();
    let fm = toeplitz_logdet_arc(n, alpha - h)?.ln_abs();
    Ok(((fp - fm) / (2.0 * h) - arc_logderiv_main(n, alpha)?).abs())
}

/// |central difference of ln D_n^H(w_a) minus the main derivative terms|.
pub fn hankel_logderiv_gap(n: usize, alpha: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < alpha && alpha + h < 1.0) {
        return Err(Error::Input(format!(
            "need 0 < h < alpha and alpha + h < 1, got alpha = {alpha}, h = {h}"
        )));
    }
    let fp = hankel_logdet_trunc(n, alpha + h)?.ln_abs();
    let fm = hankel_logdet_trunc(n, alpha - h)?.ln_abs();
    Ok(((fp - fm) / (2.0 * h) - hankel_logderiv_main(n, alpha)?).abs())
}

fn check_increasing_ge(values: &[f64], floor: f64, what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Input(format!("{what} list must not be empty")));
    }
    for w in values.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Input(format!("{what} must be strictly increasing")));
        }
    }
    if values[0] < floor {
        return Err(Error::Input(format!("{what} must all be >= {floor}")));
    }
    Ok(())
}

/// Residual of the exact Selberg product against the arc-degeneration
/// expansion: delta_n = ln A_n + n^2 ln 2 - n ln 2pi + (1/4) ln n - c0.
pub fn selberg_delta(n: usize) -> f64 {
    let nf = n as f64;
    selberg_log_a(n).ln_abs() + nf * nf * std::f64::consts::LN_2
        - nf * (2.0 * std::f64::consts::PI).ln()
        + 0.25 * nf.ln()
        - constants().c0
}

/// delta_n over increasing orders with a fitted-order Richardson limit.
pub fn selberg_residuals(orders: &[usize]) -> Result<ResidualSeries> {
    let params: Vec<f64> = orders.iter().map(|&n| n as f64).collect();
    check_increasing_ge(&params, 2.0, "orders")?;
    let residual: Vec<f64> = orders.iter().map(|&n| selberg_delta(n)).collect();
    Ok(series(params, residual))
}

/// Hankel analogue: delta~_n = ln A_n + n^2 ln(2n) - 2 sum ln k!
/// - (3/2) n^2 + (1/12) ln(n/2) - zeta'(-1).
pub fn hankel_delta_tilde(n: usize) -> f64 {
    let nf = n as f64;
    let sum_lf: f64 = (0..n as u64).map(log_factorial).sum();
    selberg_log_a(n).ln_abs() + nf * nf * (2.0 * nf).ln() - 2.0 * sum_lf - 1.5 * nf * nf
        + (nf / 2.0).ln() / 12.0
        - constants().zeta_prime_minus_one
}

/// delta~_n over increasing orders with a fitted-order Richardson limit.
pub fn hankel_residuals(orders: &[usize]) -> Result<ResidualSeries> {
    let params: Vec<f64> = orders.iter().map(|&n| n as f64).collect();
    check_increasing_ge(&params, 2.0, "orders")?;
    let residual: Vec<f64> = orders.iter().map(|&n| hankel_delta_tilde(n)).collect();
    Ok(series(params, residual))
}

/// Which gap determinant a constant-recovery run targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryKind {
    Dyson,
    TracyWidom,
}

/// (ln P, residual) at one s: the residual is the computed ln P minus the
/// expansion's non-constant terms minus the recovered constant.
pub fn recovery_point(kind: RecoveryKind, s: f64) -> Result<(f64, f64)> {
    let c = constants();
    match kind {
        RecoveryKind::Dyson => {
            let ln_p = target_sine(s)?;
            Ok((ln_p, ln_p + s * s / 2.0 + 0.25 * s.ln() - c.c0))
        }
        RecoveryKind::TracyWidom => {
            let ln_p = target_airy(s)?;
            Ok((ln_p, ln_p + s * s * s / 12.0 + 0.125 * s.ln() - c.chi_tw))
        }
    }
}

/// Residual only; see [`recovery_point`].
pub fn recovery_residual(kind: RecoveryKind, s: f64) -> Result<f64> {
    recovery_point(kind, s).map(|(_, r)| r)
}

/// Recovery residuals over increasing s-values (all >= 2).
pub fn constant_recovery(kind: RecoveryKind, s_values: &[f64]) -> Result<ResidualSeries> {
    check_increasing_ge(s_values, 2.0, "s values")?;
    let residual = s_values
        .iter()
        .map(|&s| recovery_residual(kind, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(series(s_values.to_vec(), residual))
}

/// Formula-minus-determinant residual for the arc expansion at fixed alpha.
pub fn arc_det_residual(n: usize, alpha: f64) -> Result<f64> {
    Ok(arc_det_expansion(n, alpha)?.total - toeplitz_logdet_arc(n, alpha)?.ln_abs())
}

/// Arc-expansion residuals over increasing orders at fixed alpha.
pub fn arc_det_residuals(alpha: f64, orders: &[usize]) -> Result<ResidualSeries> {
    let params: Vec<f64> = orders.iter().map(|&n| n as f64).collect();
    check_increasing_ge(&params, 1.0, "orders")?;
    let residual = orders
        .iter()
        .map(|&n| arc_det_residual(n, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok(series(params, residual))
}

/// Formula-minus-pipeline residual for the Hankel ratio expansion in the
/// double-scaling parametrisation alpha = 1 - s/(2n)^(2/3).
pub fn hankel_ratio_residual(s: f64, n: usize) -> Result<f64> {
    let alpha = 1.0 - s / (2.0 * n as f64).powf(2.0 / 3.0);
    if !(alpha > 0.0) {
        return Err(Error::Input(format!(
            "order n = {n} too small for s = {s}"
        )));
    }
    Ok(hankel_ratio_expansion(n, alpha)?.total - scaling_value_airy(s, n)?)
}

/// Hankel-ratio residuals over increasing orders at fixed s.
pub fn hankel_ratio_residuals(s: f64, orders: &[usize]) -> Result<ResidualSeries> {
    let params: Vec<f64> = orders.iter().map(|&n| n as f64).collect();
    check_increasing_ge(&params, 1.0, "orders")?;
    let residual = orders
        .iter()
        .map(|&n| hankel_ratio_residual(s, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(series(params, residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_term_structure() {
        let c = constants();
        let e = dyson_expansion(1.0).unwrap();
        assert!((e.total - (-0.5 + c.c0)).abs() < 1e-15);
        let e = dyson_expansion(std::f64::consts::E).unwrap();
        assert!((e.terms[1].1 + 0.25).abs() < 1e-15);

        let e = tracy_widom_expansion(1.0).unwrap();
        assert!((e.total - (-1.0 / 12.0 + c.chi_tw)).abs() < 1e-15);
        let e = tracy_widom_expansion(2.0).unwrap();
        assert!((e.terms[0].1 + 2.0 / 3.0).abs() < 1e-15);

        // totals always equal the term sums
        let e = hankel_ratio_expansion(8, 0.5).unwrap();
        let sum: f64 = e.terms.iter().map(|t| t.1).sum();
        assert_eq!(e.total, sum);
    }

    #[test]
    fn arc_expansion_divergences() {
        // alpha -> pi: the cosine term plunges
        let near = arc_det_expansion(4, std::f64::consts::PI - 1e-6).unwrap();
        assert!(near.terms[0].1 < -100.0);
        // alpha -> 1 in the Hankel ratio: the (1 - a^2) term blows up
        let e1 = hankel_ratio_expansion(4, 0.9999).unwrap();
        assert!(e1.terms[2].1 > 1.0);
        assert!(hankel_ratio_expansion(4, 1.0).is_err());
        assert!(arc_logderiv_main(4, std::f64::consts::PI).is_err());
        assert!(hankel_logderiv_main(4, 1.0).is_err());
    }

    #[test]
    fn hankel_expansion_n2_term_scales_quadratically() {
        let t8 = hankel_ratio_expansion(8, 0.5).unwrap().terms[0].1;
        let t16 = hankel_ratio_expansion(16, 0.5).unwrap().terms[0].1;
        let t32 = hankel_ratio_expansion(32, 0.5).unwrap().terms[0].1;
        assert!((t16 / t8 - 4.0).abs() < 1e-12);
        assert!((t32 / t16 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_forms_match_expansion_derivatives() {
        // the retained terms differentiate exactly onto the main terms
        let n = 64;
        let alpha = std::f64::consts::FRAC_PI_2;
        let h = 1e-6;
        let d_total = (arc_det_expansion(n, alpha + h).unwrap().total
            - arc_det_expansion(n, alpha - h).unwrap().total)
            / (2.0 * h);
        let gap = (d_total - arc_logderiv_main(n, alpha).unwrap()).abs();
        assert!(gap <= 1.0 / (8.0 * n as f64), "gap {gap}");

        let alpha = 0.5;
        let d_total = (hankel_ratio_expansion(n, alpha + h).unwrap().total
            - hankel_ratio_expansion(n, alpha - h).unwrap().total)
            / (2.0 * h);
        let gap = (d_total - hankel_logderiv_main(n, alpha).unwrap()).abs();
        assert!(gap <= 1.0 / n as f64, "gap {gap}");
    }

    #[test]
    fn selberg_residuals_decay_and_extrapolate() {
        let r = selberg_residuals(&[50, 100, 200, 400]).unwrap();
        assert!(r.residual[3].abs() < r.residual[0].abs());
        assert!(r.extrapolated_limit.abs() <= 1e-4);
        // sign stability over the tested orders
        let signs: Vec<bool> = r.residual.iter().map(|&x| x > 0.0).collect();
        assert!(signs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn hankel_residuals_decay_and_extrapolate() {
        let r = hankel_residuals(&[50, 100, 200, 400]).unwrap();
        assert!(r.residual[3].abs() < r.residual[0].abs());
        assert!(r.extrapolated_limit.abs() <= 1e-4);
        // order 2 representable without underflow
        assert!(hankel_delta_tilde(2).is_finite());
    }

    #[test]
    fn degenerate_recovery_lists() {
        let r = constant_recovery(RecoveryKind::Dyson, &[4.0]).unwrap();
        assert_eq!(r.residual.len(), 1);
        assert_eq!(r.extrapolated_limit, r.residual[0]);
        assert!(constant_recovery(RecoveryKind::Dyson, &[1.0, 2.0]).is_err());
        assert!(constant_recovery(RecoveryKind::Dyson, &[4.0, 3.0]).is_err());
        assert!(selberg_residuals(&[1, 4]).is_err());
    }

    #[test]
    fn dyson_total_tracks_gap_determinant() {
        // |expansion - lnP| shrinks over s in {4, 6, 8, 10} and is within
        // the O(1/s) remainder scale at the end
        let mut prev = f64::INFINITY;
        for &s in &[4.0, 6.0, 8.0, 10.0] {
            let diff = (dyson_expansion(s).unwrap().total - target_sine(s).unwrap()).abs();
            assert!(diff < prev, "s={s}: {diff}");
            prev = diff;
        }
        assert!(prev <= 0.02);
    }

    #[test]
    fn logderiv_gaps_within_stated_constants() {
        // gap = O(1/(n sin^2(a/2))) for the arc, C/n with C <= 10 for the
        // Hankel side
        let alpha = std::f64::consts::FRAC_PI_2;
        let g = arc_logderiv_gap(32, alpha, 1e-6 * alpha).unwrap();
        assert!(g <= 5.0 / 32.0, "arc gap {g}");
        let g = hankel_logderiv_gap(32, 0.5, 1e-6).unwrap();
        assert!(g <= 10.0 / 32.0, "Hankel gap {g}");
    }

    #[test]
    fn tracy_widom_total_tracks_gap_determinant() {
        let diff = (tracy_widom_expansion(8.0).unwrap().total - target_airy(8.0).unwrap()).abs();
        assert!(diff <= 0.01, "diff {diff}");
    }

    #[test]
    fn arc_expansion_tracks_determinant() {
        // residual at alpha = pi/2 shrinks from n = 30 to n = 60
        let r30 = arc_det_residual(30, std::f64::consts::FRAC_PI_2).unwrap().abs();
        let r60 = arc_det_residual(60, std::f64::consts::FRAC_PI_2).unwrap().abs();
        assert!(r30 <= 0.05, "residual {r30}");
        assert!(r60 < r30);
        // fixed alpha = 2.0 trend
        let r = arc_det_residuals(2.0, &[10, 20, 40]).unwrap();
        assert!(r.residual[2].abs() < r.residual[1].abs());
        assert!(r.residual[1].abs() < r.residual[0].abs());
    }

    #[test]
    fn hankel_ratio_expansion_tracks_pipeline() {
        let r = hankel_ratio_residual(4.0, 64).unwrap();
        assert!(r.abs() <= 0.05, "residual {r}");
    }

    #[test]
    fn scaling_coherence_between_expansions() {
        // arc expansion at alpha = 2s/n approaches the sine expansion
        let s = 2.0;
        let d = |n: usize| {
            (arc_det_expansion(n, 2.0 * s / n as f64).unwrap().total
                - dyson_expansion(s).unwrap().total)
                .abs()
        };
        let (d64, d256) = (d(64), d(256));
        assert!(d256 <= d64 / 2.0, "{d64} -> {d256}");
    }
}
