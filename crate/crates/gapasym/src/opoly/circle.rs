//! Polynomials orthonormal on the unit circle with respect to the arc
//! indicator symbol (1 on (alpha, 2pi - alpha), 0 otherwise).
//!
//! The system is built by the Szego recurrence on a Gauss-Legendre
//! discretisation of the supporting arc, with norms recomputed from the
//! grid and (for small orders or degenerating symbols) two-pass
//! reorthogonalisation of each new polynomial against the stored basis.
//! Triangular factorisation of the Toeplitz moment matrix loses the small
//! pivots long before this construction does: grid perturbations act
//! multiplicatively on the Gram pivots, entrywise moment perturbations act
//! additively against the smallest eigenvalue.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, Quadrature};

/// Indicator symbol of the circle arc (alpha, 2pi - alpha).
#[derive(Clone, Copy, Debug)]
pub struct ArcSymbol {
    alpha: f64,
}

impl ArcSymbol {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(Error::Input(format!(
                "arc parameter must lie in (0, pi), got {alpha}"
            )));
        }
        Ok(ArcSymbol { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// k-th Fourier coefficient of the arc symbol: 1 - alpha/pi at k = 0,
/// -sin(k alpha)/(pi k) otherwise; real and even in k.
pub fn fourier_coeff_arc(k: i64, alpha: f64) -> f64 {
    if k == 0 {
        1.0 - alpha / std::f64::consts::PI
    } else {
        let kf = k.unsigned_abs() as f64;
        -(kf * alpha).sin() / (std::f64::consts::PI * kf)
    }
}

// Plain (no reorthogonalisation) recurrences stay accurate while the
// Verblunsky coefficients are small; beyond this the step cancellation
// compounds and the build restarts with reorthogonalisation.
const REORTH_ALWAYS_BELOW: usize = 64;
const VERBLUNSKY_PLAIN_LIMIT: f64 = 0.05;
const GRID_CONSISTENCY_RTOL: f64 = 1e-8;

/// Orthonormal polynomial system on the arc, order n.
///
/// Carries the leading coefficients chi_k (k = 0..=n) and the boundary
/// evaluations phi_n(e^{i alpha}), phi_n'(e^{i alpha}) used by the
/// log-derivative identity of the Toeplitz determinant.
#[derive(Clone, Debug)]
pub struct CircleOPSystem {
    symbol: ArcSymbol,
    order: usize,
    /// ln ||Phi_k||^2 of the monic polynomials, k = 0..=n.
    ln_norms: Vec<f64>,
    verblunsky: Vec<f64>,
    /// Per-step reorthogonalisation corrections against the normalized
    /// basis; empty vectors when the plain recurrence was used. Real by
    /// the evenness of the symbol, which keeps every polynomial
    /// coefficient exactly real.
    corrections: Vec<Vec<f64>>,
    phi_at_edge: Complex64,
    dphi_at_edge: Complex64,
}

impl CircleOPSystem {
    pub fn symbol(&self) -> ArcSymbol {
        self.symbol
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Leading coefficients chi_0..chi_n of the orthonormal polynomials.
    pub fn chi(&self) -> Vec<f64> {
        self.ln_norms.iter().map(|l| (-0.5 * l).exp()).collect()
    }

    /// ln chi_k without leaving log space.
    pub fn log_chi(&self, k: usize) -> f64 {
        -0.5 * self.ln_norms[k]
    }

    /// ln D_n of the Toeplitz determinant: -2 sum_{k<n} ln chi_k.
    pub fn toeplitz_logdet(&self) -> f64 {
        self.ln_norms[..self.order].iter().sum()
    }

    /// phi_n evaluated at e^{i alpha}.
    pub fn phi_at_edge(&self) -> Complex64 {
        self.phi_at_edge
    }

    /// d/dz phi_n evaluated at e^{i alpha}.
    pub fn dphi_at_edge(&self) -> Complex64 {
        self.dphi_at_edge
    }

    /// Value and z-derivative of the orthonormal phi_k at e^{i theta}.
    ///
    /// Replays the recorded recurrence; valid on the unit circle only
    /// (the reversed polynomial is reconstructed from the conjugate).
    pub fn phi_on_circle(&self, k: usize, theta: f64) -> (Complex64, Complex64) {
        assert!(k <= self.order, "polynomial order {k} above system order");
        let pt = Complex64::from_polar(1.0, theta);
        let (monic, dmonic) = self.replay_monic(pt, k);
        let scale = (-0.5 * self.ln_norms[k]).exp();
        (monic[k] * scale, dmonic[k] * scale)
    }

    /// Monic values and derivatives Phi_0..Phi_k at a unit-modulus point.
    fn replay_monic(&self, pt: Complex64, upto: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut vals = Vec::with_capacity(upto + 1);
        let mut ders = Vec::with_capacity(upto + 1);
        vals.push(Complex64::new(1.0, 0.0));
        ders.push(Complex64::new(0.0, 0.0));
        let inv = pt.conj(); // 1/pt on |pt| = 1
        let mut ptk = Complex64::new(1.0, 0.0); // pt^k
        for k in 0..upto {
            let v = vals[k];
            let d = ders[k];
            // reversed polynomial on |z| = 1: Phi*_k(z) = z^k conj(Phi_k(z))
            let rev = ptk * v.conj();
            let drev = if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                (k as f64) * ptk * inv * v.conj() - ptk * inv * inv * d.conj()
            };
            let ak = self.verblunsky[k];
            let mut nv = pt * v - ak * rev;
            let mut nd = v + pt * d - ak * drev;
            for (j, &c) in self.corrections[k].iter().enumerate() {
                let scale = c * (-0.5 * self.ln_norms[j]).exp();
                nv -= scale * vals[j];
                nd -= scale * ders[j];
            }
            vals.push(nv);
            ders.push(nd);
            ptk *= pt;
        }
        (vals, ders)
    }
}

struct PassData {
    ln_norms: Vec<f64>,
    verblunsky: Vec<f64>,
    corrections: Vec<Vec<f64>>,
}

enum PassOutcome {
    Done(PassData),
    NeedsReorth,
}

fn circle_pass(alpha: f64, n: usize, quad: &Quadrature, reorth: bool) -> Result<PassOutcome> {
    let mq = quad.len();
    let two_pi = 2.0 * std::f64::consts::PI;
    let wt: Vec<f64> = quad.weights.iter().map(|w| w / two_pi).collect();
    let z: Vec<Complex64> = quad
        .nodes
        .iter()
        .map(|&t| Complex64::from_polar(1.0, t))
        .collect();

    let mut phi: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); mq];
    let mut zk: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); mq];
    let mut nrm: f64 = wt.iter().sum();
    let mut ln_norms = vec![nrm.ln()];
    let mut verblunsky = Vec::with_capacity(n);
    let mut corrections: Vec<Vec<f64>> = Vec::with_capacity(n);
    // normalized basis values, kept only when reorthogonalising
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    if reorth {
        let s = nrm.sqrt();
        basis.push(phi.iter().map(|v| v / s).collect());
    }

    for k in 0..n {
        // alpha_k = <z Phi_k, Phi*_k> / ||Phi_k||^2 with
        // Phi*_k = z^k conj(Phi_k) on the circle
        let mut num = Complex64::new(0.0, 0.0);
        for i in 0..mq {
            num += wt[i] * z[i] * phi[i] * phi[i] * zk[i].conj();
        }
        let ak = num.re / nrm;
        if !reorth && ak.abs() > VERBLUNSKY_PLAIN_LIMIT {
            return Ok(PassOutcome::NeedsReorth);
        }
        if !(ak.abs() < 1.0) || !ak.is_finite() {
            return Err(Error::Conditioning {
                detail: format!(
                    "reflection coefficient left (-1, 1) at degree {k} (alpha = {alpha})"
                ),
                largest_usable_n: Some(k),
            });
        }
        verblunsky.push(ak);
        let mut next: Vec<Complex64> = (0..mq)
            .map(|i| z[i] * phi[i] - ak * zk[i] * phi[i].conj())
            .collect();
        let mut corr = Vec::new();
        if reorth {
            corr = vec![0.0f64; basis.len()];
            for _ in 0..2 {
                for (j, b) in basis.iter().enumerate() {
                    let mut c = Complex64::new(0.0, 0.0);
                    for i in 0..mq {
                        c += wt[i] * next[i] * b[i].conj();
                    }
                    // real-coefficient polynomials against a real symbol:
                    // the imaginary part is pure rounding and dropping it
                    // keeps the coefficients exactly real
                    let cr = c.re;
                    for i in 0..mq {
                        next[i] -= cr * b[i];
                    }
                    corr[j] += cr;
                }
            }
        }
        corrections.push(corr);
        let mut nrm_new = 0.0;
        for i in 0..mq {
            nrm_new += wt[i] * next[i].norm_sqr();
        }
        if !(nrm_new > 0.0) || !nrm_new.is_finite() {
            return Err(Error::Conditioning {
                detail: format!(
                    "polynomial norm lost positivity at degree {} (alpha = {alpha})",
                    k + 1
                ),
                largest_usable_n: Some(k),
            });
        }
        ln_norms.push(nrm_new.ln());
        if reorth {
            let s = nrm_new.sqrt();
            basis.push(next.iter().map(|v| v / s).collect());
        }
        for i in 0..mq {
            zk[i] *= z[i];
        }
        phi = next;
        nrm = nrm_new;
    }
    Ok(PassOutcome::Done(PassData {
        ln_norms,
        verblunsky,
        corrections,
    }))
}

fn run_pass(alpha: f64, n: usize, mq: usize) -> Result<PassData> {
    let quad = gauss_legendre(mq, alpha, 2.0 * std::f64::consts::PI - alpha)?;
    let reorth = n <= REORTH_ALWAYS_BELOW;
    match circle_pass(alpha, n, &quad, reorth)? {
        PassOutcome::Done(d) => Ok(d),
        PassOutcome::NeedsReorth => match circle_pass(alpha, n, &quad, true)? {
            PassOutcome::Done(d) => Ok(d),
            PassOutcome::NeedsReorth => unreachable!("reorthogonalising pass cannot defer"),
        },
    }
}

/// Quadrature size for a system of order n.
fn grid_size(n: usize) -> usize {
    64.max(4 * (n + 1))
}

/// Build the order-n orthonormal system for the arc symbol.
///
/// Runs the construction on two nested grids and rejects the result if the
/// two log-determinants disagree beyond 1e-8 relative (conditioning error).
pub fn build_circle_system(sym: ArcSymbol, n: usize) -> Result<CircleOPSystem> {
    if n < 1 {
        return Err(Error::Input("system order must be >= 1".into()));
    }
    let alpha = sym.alpha();
    let mq = grid_size(n);
    let coarse = run_pass(alpha, n, mq)?;
    let fine = run_pass(alpha, n, 2 * mq)?;
    let ld_coarse: f64 = coarse.ln_norms[..n].iter().sum();
    let ld_fine: f64 = fine.ln_norms[..n].iter().sum();
    if (ld_coarse - ld_fine).abs() > GRID_CONSISTENCY_RTOL * ld_fine.abs().max(1.0) {
        return Err(Error::Conditioning {
            detail: format!(
                "doubled-grid check failed at n = {n}, alpha = {alpha}: {ld_coarse} vs {ld_fine}"
            ),
            largest_usable_n: None,
        });
    }
    let mut sys = CircleOPSystem {
        symbol: sym,
        order: n,
        ln_norms: fine.ln_norms,
        verblunsky: fine.verblunsky,
        corrections: fine.corrections,
        phi_at_edge: Complex64::new(0.0, 0.0),
        dphi_at_edge: Complex64::new(0.0, 0.0),
    };
    let (v, d) = sys.phi_on_circle(n, alpha);
    sys.phi_at_edge = v;
    sys.dphi_at_edge = d;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_coeff_values() {
        let alpha = 0.8;
        assert!((fourier_coeff_arc(0, alpha) - (1.0 - alpha / std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(fourier_coeff_arc(3, alpha), fourier_coeff_arc(-3, alpha));
        // full-circle limit: all nonzero coefficients vanish
        for k in 1..6 {
            assert!(fourier_coeff_arc(k, 1e-12).abs() < 1e-12);
        }
    }

    #[test]
    fn fourier_coeff_vs_trapezoid_oracle() {
        // defining integral (1/2pi) int_alpha^{2pi-alpha} cos(k theta) dtheta;
        // 200k points push the trapezoid endpoint error below 1e-11
        let (k, alpha) = (3i64, 1.1f64);
        let n = 200_000usize;
        let a = alpha;
        let b = 2.0 * std::f64::consts::PI - alpha;
        let h = (b - a) / n as f64;
        let mut sum = 0.5 * ((k as f64 * a).cos() + (k as f64 * b).cos());
        for i in 1..n {
            sum += (k as f64 * (a + i as f64 * h)).cos();
        }
        let oracle = sum * h / (2.0 * std::f64::consts::PI);
        assert!((fourier_coeff_arc(k, alpha) - oracle).abs() <= 1e-10);
    }

    #[test]
    fn order_one_normalisation() {
        let alpha = 1.3;
        let sys = build_circle_system(ArcSymbol::new(alpha).unwrap(), 1).unwrap();
        let chi = sys.chi();
        let expect = (1.0 - alpha / std::f64::consts::PI).powf(-0.5);
        assert!((chi[0] - expect).abs() <= 1e-12 * expect);
        assert!(chi.iter().all(|&c| c > 0.0));
    }

    #[test]
    fn orthonormality_via_fine_quadrature() {
        let alpha = 1.2;
        let sys = build_circle_system(ArcSymbol::new(alpha).unwrap(), 3).unwrap();
        let quad = gauss_legendre(4000, alpha, 2.0 * std::f64::consts::PI - alpha).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        let inner = |a: usize, b: usize| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&t, &w) in quad.nodes.iter().zip(&quad.weights) {
                let (pa, _) = sys.phi_on_circle(a, t);
                let (pb, _) = sys.phi_on_circle(b, t);
                acc += w / two_pi * pa * pb.conj();
            }
            acc
        };
        assert!(inner(2, 1).norm() <= 1e-9);
        assert!((inner(2, 2).re - 1.0).abs() <= 1e-9);
        assert!((inner(1, 1).re - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn edge_values_conjugate_symmetry_is_exact() {
        // every polynomial coefficient is exactly real (real recurrence
        // and correction coefficients), so phi_n(conj z) = conj(phi_n(z))
        // holds bit-for-bit
        let alpha = 0.9;
        let sys = build_circle_system(ArcSymbol::new(alpha).unwrap(), 5).unwrap();
        let (plus, dplus) = sys.phi_on_circle(5, alpha);
        let (minus, dminus) = sys.phi_on_circle(5, -alpha);
        assert_eq!(plus.conj(), minus);
        assert_eq!(dplus.conj(), dminus);
        assert_eq!(sys.phi_at_edge(), plus);
    }

    #[test]
    fn route_agreement_at_order_six_wide_arc() {
        // chi-product route vs direct moment factorisation at (6, 2.0)
        let sys = build_circle_system(ArcSymbol::new(2.0).unwrap(), 6).unwrap();
        let via_chi: f64 = -2.0 * (0..6).map(|k| sys.log_chi(k)).sum::<f64>();
        let m = crate::numerics::SymmetricMatrix::from_fn(6, |i, j| {
            fourier_coeff_arc(i as i64 - j as i64, 2.0)
        });
        let direct = crate::numerics::log_det_cholesky(&m).unwrap().ln_abs();
        assert!(
            (via_chi - direct).abs() <= 1e-10,
            "{via_chi} vs {direct}"
        );
    }

    #[test]
    fn derivative_on_circle_matches_theta_difference() {
        // d/d theta phi(e^{i theta}) = i e^{i theta} phi'(e^{i theta})
        let alpha = 1.0;
        let n = 4;
        let sys = build_circle_system(ArcSymbol::new(alpha).unwrap(), n).unwrap();
        let t0 = 2.0;
        let h = 1e-5;
        let (vp, _) = sys.phi_on_circle(n, t0 + h);
        let (vm, _) = sys.phi_on_circle(n, t0 - h);
        let dtheta = (vp - vm) / Complex64::new(2.0 * h, 0.0);
        let (v0, d0) = sys.phi_on_circle(n, t0);
        let _ = v0;
        let expect = Complex64::i() * Complex64::from_polar(1.0, t0) * d0;
        assert!((dtheta - expect).norm() <= 1e-6 * expect.norm().max(1.0));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(ArcSymbol::new(0.0).is_err());
        assert!(ArcSymbol::new(std::f64::consts::PI).is_err());
        assert!(build_circle_system(ArcSymbol::new(1.0).unwrap(), 0).is_err());
    }
}
