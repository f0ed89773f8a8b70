//! Curvature from the small-`r` behaviour of a right-ratio curve.
//!
//! Fits `ρ(r) = c0 + c1·r + c2·r² + c3·r³` by least squares over the smallest
//! [`FIT_FRACTION`] of the converged samples and reports `K̂ = −12·c2`
//! (equivalently `−6·ρ''(0)`).

use nalgebra::{DMatrix, DVector};

use crate::error::{GeometryError, Result};

use super::RatioCurve;

pub const MIN_FIT_SAMPLES: usize = 5;
/// Share of converged samples (smallest `r` first) entering the fit.
pub const FIT_FRACTION: f64 = 0.6;
/// Largest admissible `r·√|K|` in the fit range.
pub const MAX_R_SQRT_K: f64 = 0.3;
/// `c0` further than this from 1/2 marks the point as non-smooth.
pub const OFFSET_FLAG: f64 = 1e-3;
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureEstimate {
    pub k_hat: f64,
    /// Analytic Gaussian curvature at the base point.
    pub k_analytic: f64,
    /// `(c0, c1, c2, c3)`.
    pub coefficients: [f64; 4],
    pub residual_rms: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub samples_used: usize,
    pub condition: f64,
    /// `c0` is not within [`OFFSET_FLAG`] of 1/2.
    pub offset_flagged: bool,
}

impl CurvatureEstimate {
    /// `|c1|·r_max`: how far the fitted slope at 0 moves the ratio over the fit range.
    pub fn slope_bound(&self) -> f64 {
        self.coefficients[1].abs() * self.r_max
    }

    /// Relative error against the analytic value, or absolute error where `K = 0`.
    pub fn error(&self) -> f64 {
        let diff = (self.k_hat - self.k_analytic).abs();
        if self.k_analytic == 0.0 {
            diff
        } else {
            diff / self.k_analytic.abs()
        }
    }
}

pub fn estimate_curvature(curve: &RatioCurve) -> Result<CurvatureEstimate> {
    let k_analytic = curve.surface.gaussian_curvature(curve.point)?;
    let limit = if k_analytic != 0.0 {
        MAX_R_SQRT_K / k_analytic.abs().sqrt()
    } else {
        curve.surface.injectivity_bound(curve.point)
    };

    let mut pts: Vec<(f64, f64)> = curve.converged().map(|s| (s.r, s.ratio)).collect();
    let total = pts.len();
    if total < MIN_FIT_SAMPLES {
        return Err(GeometryError::DegenerateCurve {
            converged: total,
            required: MIN_FIT_SAMPLES,
        });
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let keep = ((FIT_FRACTION * total as f64).ceil() as usize).clamp(MIN_FIT_SAMPLES, total);
    pts.truncate(keep);
    pts.retain(|p| p.0 <= limit);
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(GeometryError::DegenerateCurve {
            converged: pts.len(),
            required: MIN_FIT_SAMPLES,
        });
    }

    let r_min = pts[0].0;
    let r_max = pts[pts.len() - 1].0;
    let (coeffs, condition, residual_rms) = cubic_fit(&pts, r_max)?;
    let [c0, _, c2, _] = coeffs;
    Ok(CurvatureEstimate {
        k_hat: -12.0 * c2,
        k_analytic,
        coefficients: coeffs,
        residual_rms,
        r_min,
        r_max,
        samples_used: pts.len(),
        condition,
        offset_flagged: (c0 - 0.5).abs() > OFFSET_FLAG,
    })
}

/// Least-squares cubic in `r`, solved in the scaled variable `r / scale` by SVD.
fn cubic_fit(pts: &[(f64, f64)], scale: f64) -> Result<([f64; 4], f64, f64)> {
    let n = pts.len();
    let a = DMatrix::from_fn(n, 4, |i, j| (pts[i].0 / scale).powi(j as i32));
    let y = DVector::from_fn(n, |i, _| pts[i].1);
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    if !(condition.is_finite() && condition <= MAX_CONDITION) {
        return Err(GeometryError::IllConditionedFit { condition });
    }
    let x = svd
        .solve(&y, 0.0)
        .map_err(|_| GeometryError::IllConditionedFit { condition })?;
    let resid = &a * &x - &y;
    let rms = (resid.norm_squared() / n as f64).sqrt();
    let mut c = [0.0; 4];
    for (j, cj) in c.iter_mut().enumerate() {
        *cj = x[j] / scale.powi(j as i32);
    }
    Ok((c, condition, rms))
}
