//! Polynomials orthonormal on (0, alpha) with the truncated exponential
//! weight e^{-4xn}, built by the Stieltjes procedure on a Gauss-Legendre
//! discretisation. The raw Hankel moment matrix becomes numerically
//! indefinite near order 12; the discretised three-term recurrence keeps
//! the leading coefficients accurate far beyond that.

use crate::error::{Error, Result};
use crate::numerics::gauss_legendre;

/// Weight e^{-4xn} on (0, alpha), zero elsewhere.
///
/// The exponent scale n is stored separately from any polynomial-system
/// order so tests can decouple the two; the determinant drivers always tie
/// them together.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedExpWeight {
    alpha: f64,
    n: usize,
}

impl TruncatedExpWeight {
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Input(format!(
                "truncation endpoint must be positive, got {alpha}"
            )));
        }
        if n < 1 {
            return Err(Error::Input("weight scale n must be >= 1".into()));
        }
        Ok(TruncatedExpWeight { alpha, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The n in e^{-4xn}.
    pub fn scale_n(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: f64) -> f64 {
        if x > 0.0 && x < self.alpha {
            (-4.0 * x * self.n as f64).exp()
        } else {
            0.0
        }
    }
}

const GRID_CONSISTENCY_RTOL: f64 = 1e-8;

/// Orthonormal system of order n for a [`TruncatedExpWeight`].
///
/// Stores ln b_j of the monic three-term recurrence (b_0 = mu_0), from
/// which the leading coefficients kappa_k = (b_0 ... b_k)^{-1/2} and the
/// Hankel log-determinant follow without leaving log space, plus the
/// boundary values p_n(alpha), p_{n-1}(alpha) and their derivatives.
#[derive(Clone, Debug)]
pub struct HalfLineOPSystem {
    weight: TruncatedExpWeight,
    order: usize,
    ln_b: Vec<f64>,
    p_at_edge: [f64; 2],
    dp_at_edge: [f64; 2],
}

impl HalfLineOPSystem {
    pub fn weight(&self) -> TruncatedExpWeight {
        self.weight
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// ln kappa_k = -(1/2) sum_{j<=k} ln b_j.
    pub fn log_kappa(&self, k: usize) -> f64 {
        -0.5 * self.ln_b[..=k].iter().sum::<f64>()
    }

    /// kappa_k as a plain real; overflows to +inf for very large systems.
    pub fn kappa(&self, k: usize) -> f64 {
        self.log_kappa(k).exp()
    }

    /// kappa_0..kappa_n.
    pub fn kappas(&self) -> Vec<f64> {
        (0..=self.order).map(|k| self.kappa(k)).collect()
    }

    /// ln D_n^H = -2 sum_{k<n} ln kappa_k = sum_{j<n} (n-j) ln b_j.
    pub fn hankel_logdet(&self) -> f64 {
        self.ln_b[..self.order]
            .iter()
            .enumerate()
            .map(|(j, lb)| (self.order - j) as f64 * lb)
            .sum()
    }

    /// [p_n(alpha), p_{n-1}(alpha)].
    pub fn p_at_edge(&self) -> [f64; 2] {
        self.p_at_edge
    }

    /// [p_n'(alpha), p_{n-1}'(alpha)].
    pub fn dp_at_edge(&self) -> [f64; 2] {
        self.dp_at_edge
    }
}

struct StieltjesPass {
    ln_b: Vec<f64>,
    recur_a: Vec<f64>,
    recur_b: Vec<f64>,
}

fn stieltjes_pass(w: TruncatedExpWeight, n: usize, mq: usize) -> Result<StieltjesPass> {
    let quad = gauss_legendre(mq, 0.0, w.alpha())?;
    let scale = 4.0 * w.scale_n() as f64;
    let wv: Vec<f64> = quad
        .nodes
        .iter()
        .zip(&quad.weights)
        .map(|(&x, &wgt)| wgt * (-scale * x).exp())
        .collect();
    let x = &quad.nodes;

    let mut p_prev = vec![0.0f64; mq];
    let mut p_cur = vec![1.0f64; mq];
    let mut nrm: f64 = wv.iter().sum();
    if !(nrm > 0.0) {
        return Err(Error::Conditioning {
            detail: "weight mass vanished on the grid".into(),
            largest_usable_n: Some(0),
        });
    }
    let mut ln_b = vec![nrm.ln()];
    let mut recur_a = Vec::with_capacity(n);
    let mut recur_b = Vec::with_capacity(n);
    let mut a: f64 = (0..mq).map(|i| wv[i] * x[i]).sum::<f64>() / nrm;
    recur_a.push(a);

    for k in 1..=n {
        let b = if k == 1 { 0.0 } else { *recur_b.last().unwrap() };
        for i in 0..mq {
            let next = (x[i] - a) * p_cur[i] - b * p_prev[i];
            p_prev[i] = p_cur[i];
            p_cur[i] = next;
        }
        let nrm_new: f64 = (0..mq).map(|i| wv[i] * p_cur[i] * p_cur[i]).sum();
        if !(nrm_new > 0.0) || !nrm_new.is_finite() {
            return Err(Error::Conditioning {
                detail: format!(
                    "recurrence normalisation lost positivity at degree {k} (alpha = {})",
                    w.alpha()
                ),
                largest_usable_n: Some(k - 1),
            });
        }
        let bk = nrm_new / nrm;
        recur_b.push(bk);
        ln_b.push(bk.ln());
        a = (0..mq).map(|i| wv[i] * x[i] * p_cur[i] * p_cur[i]).sum::<f64>() / nrm_new;
        recur_a.push(a);
        nrm = nrm_new;
    }
    Ok(StieltjesPass {
        ln_b,
        recur_a,
        recur_b,
    })
}

/// Grid size rule: must integrate x^{2n} e^{-4xn} on (0, alpha) to spectral
/// accuracy; validated by the doubled-grid check in the builder.
fn grid_size(n: usize) -> usize {
    200.max(8 * n)
}

/// Build the order-n orthonormal system by the discretised Stieltjes
/// procedure; a doubled-grid consistency check guards the result.
pub fn build_halfline_system(w: TruncatedExpWeight, n: usize) -> Result<HalfLineOPSystem> {
    if n < 1 {
        return Err(Error::Input("system order must be >= 1".into()));
    }
    let mq = grid_size(n);
    let coarse = stieltjes_pass(w, n, mq)?;
    let fine = stieltjes_pass(w, n, 2 * mq)?;
    let ld = |p: &StieltjesPass| -> f64 {
        p.ln_b[..n]
            .iter()
            .enumerate()
            .map(|(j, lb)| (n - j) as f64 * lb)
            .sum()
    };
    let (ld_c, ld_f) = (ld(&coarse), ld(&fine));
    if (ld_c - ld_f).abs() > GRID_CONSISTENCY_RTOL * ld_f.abs().max(1.0) {
        return Err(Error::Conditioning {
            detail: format!(
                "doubled-grid check failed at n = {n}, alpha = {}: {ld_c} vs {ld_f}",
                w.alpha()
            ),
            largest_usable_n: None,
        });
    }

    // boundary values of the monic recurrence and its derivative at alpha
    let alpha = w.alpha();
    let mut pm = 0.0f64;
    let mut pc = 1.0f64;
    let mut dm = 0.0f64;
    let mut dc = 0.0f64;
    let mut vals = vec![1.0f64];
    let mut ders = vec![0.0f64];
    for k in 1..=n {
        let a = fine.recur_a[k - 1];
        let b = if k == 1 { 0.0 } else { fine.recur_b[k - 2] };
        let pn = (alpha - a) * pc - b * pm;
        let dn = pc + (alpha - a) * dc - b * dm;
        pm = pc;
        pc = pn;
        dm = dc;
        dc = dn;
        vals.push(pc);
        ders.push(dc);
    }
    // normalise: p_k = Phi_k / sqrt(b_0 ... b_k)
    let ln_cum: Vec<f64> = fine
        .ln_b
        .iter()
        .scan(0.0, |acc, lb| {
            *acc += lb;
            Some(*acc)
        })
        .collect();
    let norm = |k: usize| (-0.5 * ln_cum[k]).exp();
    Ok(HalfLineOPSystem {
        weight: w,
        order: n,
        ln_b: fine.ln_b,
        p_at_edge: [vals[n] * norm(n), vals[n - 1] * norm(n - 1)],
        dp_at_edge: [ders[n] * norm(n), ders[n - 1] * norm(n - 1)],
    })
}
