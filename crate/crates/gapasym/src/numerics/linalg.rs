//! Dense symmetric/square matrices and log-space determinants.

use crate::error::{Error, Result};
use crate::numerics::LogValue;

/// Dense real symmetric matrix, packed lower triangle.
///
/// `entry(i, j) == entry(j, i)` holds exactly because both read the same
/// storage slot.
#[derive(Clone, Debug)]
pub struct SymmetricMatrix {
    order: usize,
    // row-major packed lower triangle: (i, j) with j <= i at i*(i+1)/2 + j
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix {
            order,
            data: vec![0.0; order * (order + 1) / 2],
        }
    }

    /// Fill from `f(i, j)`; only the lower triangle (j <= i) is evaluated.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymmetricMatrix::zeros(order);
        for i in 0..order {
            for j in 0..=i {
                m.data[i * (i + 1) / 2 + j] = f(i, j);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        self.data[hi * (hi + 1) / 2 + lo]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        self.data[hi * (hi + 1) / 2 + lo] = v;
    }
}

/// Dense real square matrix, row-major.
#[derive(Clone, Debug)]
pub struct SquareMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(order: usize) -> Self {
        SquareMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SquareMatrix::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m.data[i * order + j] = f(i, j);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.order + j] = v;
    }
}

// Pivots below this are treated as breakdown rather than genuine tiny
// determinant contributions.
const PIVOT_FLOOR: f64 = 1e-300;

/// Cholesky pivots d_k (with L_kk = sqrt(d_k)) of a positive definite matrix.
///
/// Fails with `NotPositiveDefinite` carrying the index of the first
/// non-positive (or sub-floor) pivot.
pub fn cholesky_pivots(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    let mut l = vec![0.0f64; n * n];
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let mut d = m.entry(k, k);
        for j in 0..k {
            d -= l[k * n + j] * l[k * n + j];
        }
        if !(d > 0.0) || d < PIVOT_FLOOR {
            return Err(Error::NotPositiveDefinite { pivot: k });
        }
        pivots.push(d);
        let lkk = d.sqrt();
        l[k * n + k] = lkk;
        for i in (k + 1)..n {
            let mut s = m.entry(i, k);
            for j in 0..k {
                s -= l[i * n + j] * l[k * n + j];
            }
            l[i * n + k] = s / lkk;
        }
    }
    Ok(pivots)
}

/// Signed log determinant of a positive definite matrix via Cholesky,
/// accumulating `ln` of the pivots (never materialising the determinant).
pub fn log_det_cholesky(m: &SymmetricMatrix) -> Result<LogValue> {
    let pivots = cholesky_pivots(m)?;
    let ln: f64 = pivots.iter().map(|d| d.ln()).sum();
    Ok(LogValue::from_ln(1, ln))
}

/// Signed log determinant via partially pivoted LU.
///
/// Returns sign 0 on exact singularity; rejects non-finite entries.
pub fn log_det_lu(m: &SquareMatrix) -> Result<LogValue> {
    let n = m.order();
    let mut a = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            let v = m.entry(i, j);
            if !v.is_finite() {
                return Err(Error::Input(format!("non-finite matrix entry at ({i}, {j})")));
            }
            a[i * n + j] = v;
        }
    }
    let mut sign: i8 = 1;
    let mut ln_abs = 0.0f64;
    for k in 0..n {
        // partial pivoting
        let mut p = k;
        let mut best = a[k * n + k].abs();
        for i in (k + 1)..n {
            let v = a[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return Ok(LogValue::zero());
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let piv = a[k * n + k];
        if piv < 0.0 {
            sign = -sign;
        }
        ln_abs += piv.abs().ln();
        for i in (k + 1)..n {
            let factor = a[i * n + k] / piv;
            a[i * n + k] = factor;
            for j in (k + 1)..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    Ok(LogValue::from_ln(sign, ln_abs))
}
