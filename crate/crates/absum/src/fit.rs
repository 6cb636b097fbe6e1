//! Least-squares checks of computed sums against their predicted main terms.

use thiserror::Error;

use crate::arith::{dk_of, factorize};
use crate::constants::{c_rk, ConstError, TruncationConfig};
use crate::sieve::{max_a, t_sum_multi, SieveConfig, SieveError};

#[derive(Debug, Error)]
pub enum FitError {
    #[error("need at least {needed} samples, got {got}")]
    NotEnoughSamples { needed: usize, got: usize },
    #[error("sample x values must be strictly increasing")]
    XNotIncreasing,
    #[error("normal equations are rank deficient")]
    RankDeficient,
    #[error("x = {x} below the supported minimum {min}")]
    XTooSmall { x: u64, min: u64 },
    #[error("model length {model} does not match {samples} samples")]
    LengthMismatch { samples: usize, model: usize },
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    Const(#[from] ConstError),
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
}

/// One exact summatory data point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplePoint {
    pub x: u64,
    pub value: u64,
}

/// Result of a least-squares fit: basis coefficients, per-sample residuals
/// `value - model`, the growth exponent of `|residual|` in `x` (needs at
/// least 3 nonzero residuals), and the usual R^2.
#[derive(Debug, Clone)]
pub struct FitReport {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub residual_exponent: Option<f64>,
    pub r_squared: f64,
}

fn check_samples(samples: &[SamplePoint], needed: usize) -> Result<(), FitError> {
    if samples.len() < needed {
        return Err(FitError::NotEnoughSamples {
            needed,
            got: samples.len(),
        });
    }
    for w in samples.windows(2) {
        if w[0].x >= w[1].x {
            return Err(FitError::XNotIncreasing);
        }
    }
    Ok(())
}

fn r_squared(samples: &[SamplePoint], residuals: &[f64]) -> f64 {
    let n = samples.len() as f64;
    let mean = samples.iter().map(|s| s.value as f64).sum::<f64>() / n;
    let ss_tot: f64 = samples
        .iter()
        .map(|s| {
            let d = s.value as f64 - mean;
            d * d
        })
        .sum();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    if ss_tot <= f64::MIN_POSITIVE {
        return if ss_res <= f64::MIN_POSITIVE { 1.0 } else { 0.0 };
    }
    1.0 - ss_res / ss_tot
}

/// Growth exponent of the residuals: the least-squares slope of
/// `ln |residual|` against `ln x` over nonzero residuals.
fn exponent_of(samples: &[SamplePoint], residuals: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .zip(residuals)
        .filter(|(_, r)| **r != 0.0)
        .map(|(s, r)| ((s.x as f64).ln(), r.abs().ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= f64::MIN_POSITIVE {
        return None;
    }
    Some(sxy / sxx)
}

/// Fits `value ~ m * x` through the origin: `m = sum(x*value) / sum(x^2)`.
pub fn fit_slope(samples: &[SamplePoint]) -> Result<FitReport, FitError> {
    check_samples(samples, 2)?;
    let mut sxy = 0.0f64;
    let mut sxx = 0.0f64;
    for s in samples {
        let x = s.x as f64;
        sxy += x * s.value as f64;
        sxx += x * x;
    }
    let m = sxy / sxx;
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| s.value as f64 - m * s.x as f64)
        .collect();
    let residual_exponent = exponent_of(samples, &residuals);
    let r2 = r_squared(samples, &residuals);
    Ok(FitReport {
        coefficients: vec![m],
        residuals,
        residual_exponent,
        r_squared: r2,
    })
}

/// Solves `a * beta = rhs` in place by Gaussian elimination with partial
/// pivoting; `a` is square and small.
#[allow(clippy::needless_range_loop)] // two rows of `a` are live per step
fn solve_dense(mut a: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Result<Vec<f64>, FitError> {
    let n = rhs.len();
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    for col in 0..n {
        let (piv, pmax) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty");
        if pmax <= scale * 1e-13 {
            return Err(FitError::RankDeficient);
        }
        a.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut beta = vec![0.0; n];
    for col in (0..n).rev() {
        let mut v = rhs[col];
        for c in col + 1..n {
            v -= a[col][c] * beta[c];
        }
        beta[col] = v / a[col][col];
    }
    Ok(beta)
}

/// Fits `value / x ~ sum_j beta_j (ln x)^j`, `j = 0..=degree`, by normal
/// equations. Residuals are reported on the original scale:
/// `value - x * poly(ln x)`.
pub fn fit_log_poly(samples: &[SamplePoint], degree: usize) -> Result<FitReport, FitError> {
    check_samples(samples, degree + 2)?;
    let m = degree + 1;
    let mut ata = vec![vec![0.0f64; m]; m];
    let mut aty = vec![0.0f64; m];
    for s in samples {
        let lx = (s.x as f64).ln();
        let y = s.value as f64 / s.x as f64;
        let mut basis = vec![1.0f64; m];
        for j in 1..m {
            basis[j] = basis[j - 1] * lx;
        }
        for i in 0..m {
            for j in 0..m {
                ata[i][j] += basis[i] * basis[j];
            }
            aty[i] += basis[i] * y;
        }
    }
    let beta = solve_dense(ata, aty)?;
    let residuals: Vec<f64> = samples
        .iter()
        .map(|s| {
            let lx = (s.x as f64).ln();
            let mut poly = 0.0;
            for j in (0..m).rev() {
                poly = poly * lx + beta[j];
            }
            s.value as f64 - s.x as f64 * poly
        })
        .collect();
    let residual_exponent = exponent_of(samples, &residuals);
    let r2 = r_squared(samples, &residuals);
    Ok(FitReport {
        coefficients: beta,
        residuals,
        residual_exponent,
        r_squared: r2,
    })
}

/// Growth exponent of `value - model` against `x`; requires at least 3
/// nonzero residuals.
pub fn residual_exponent(samples: &[SamplePoint], model: &[f64]) -> Result<f64, FitError> {
    check_samples(samples, 2)?;
    if samples.len() != model.len() {
        return Err(FitError::LengthMismatch {
            samples: samples.len(),
            model: model.len(),
        });
    }
    let residuals: Vec<f64> = samples
        .iter()
        .zip(model)
        .map(|(s, m)| s.value as f64 - m)
        .collect();
    exponent_of(samples, &residuals).ok_or(FitError::NotEnoughSamples {
        needed: 3,
        got: residuals.iter().filter(|r| **r != 0.0).count(),
    })
}

/// One row of the progression-sum comparison: exact `T(x; k, r)` against the
/// prediction `c(r, k) x / r`, with the error normalized by
/// `d(r) sqrt(x) (ln x)^2.5`. `small_x` flags cuts with `x < 100 r^2`, where
/// the normalized error is not yet meaningful.
#[derive(Debug, Clone)]
pub struct Prop1Row {
    pub x: u64,
    pub r: u64,
    pub k: u64,
    pub t: u64,
    pub pred: f64,
    pub err: f64,
    pub norm_err: f64,
    pub small_x: bool,
}

pub const PROP1_MIN_X: u64 = 10_000;

/// Exact progression sums vs their predicted main terms over a cut grid,
/// one sieve pass for all `(r, k)` pairs. Rows are ordered pair-major.
pub fn prop1_report(
    xs: &[u64],
    pairs: &[(u64, u64)],
    tc: &TruncationConfig,
    sc: &SieveConfig,
) -> Result<Vec<Prop1Row>, FitError> {
    for &x in xs {
        if x < PROP1_MIN_X {
            return Err(FitError::XTooSmall { x, min: PROP1_MIN_X });
        }
    }
    let sums = t_sum_multi(xs, pairs, sc)?;
    let mut rows = Vec::with_capacity(xs.len() * pairs.len());
    for (pi, &(r, k)) in pairs.iter().enumerate() {
        // c(r, k) needs k >= 1: substitute the smallest positive member of
        // the class for k = 0 (same progression, so the same density)
        let k_pos = if k % r == 0 { r } else { k % r };
        let c = c_rk(r, k_pos, tc)?.value;
        let dr = dk_of(&factorize(r)?, 2)? as f64;
        for (xi, &x) in xs.iter().enumerate() {
            let xf = x as f64;
            let pred = c * xf / r as f64;
            let err = sums[pi][xi] as f64 - pred;
            let norm = dr * xf.sqrt() * xf.ln().powf(2.5);
            rows.push(Prop1Row {
                x,
                r,
                k,
                t: sums[pi][xi],
                pred,
                err,
                norm_err: err.abs() / norm,
                small_x: x < 100 * r * r,
            });
        }
    }
    Ok(rows)
}

/// One row of the extremal-order diagnostic: `A(x)` and
/// `L = ln A(x) * ln ln x / ln x`.
#[derive(Debug, Clone)]
pub struct KratzelRow {
    pub x: u64,
    pub a_max: u64,
    pub l_value: f64,
}

pub const KRATZEL_MIN_X: u64 = 100;

/// `A` and `L` at decade cuts `100, 1000, ..., <= x`.
pub fn kratzel_report(x: u64, sc: &SieveConfig) -> Result<Vec<KratzelRow>, FitError> {
    if x < KRATZEL_MIN_X {
        return Err(FitError::XTooSmall { x, min: KRATZEL_MIN_X });
    }
    let mut rows = Vec::new();
    let mut cut = KRATZEL_MIN_X;
    while cut <= x {
        let a = max_a(cut, sc)?;
        let xf = cut as f64;
        rows.push(KratzelRow {
            x: cut,
            a_max: a,
            l_value: (a as f64).ln() * xf.ln().ln() / xf.ln(),
        });
        match cut.checked_mul(10) {
            Some(next) => cut = next,
            None => break,
        }
    }
    Ok(rows)
}
