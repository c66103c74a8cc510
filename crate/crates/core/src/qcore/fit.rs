//! Small least-squares fits and 1-D optimizers used by calibration and tomography.

use nalgebra::{DMatrix, DVector};

use crate::error::{validation, Result};

/// Ordinary least squares for `y ≈ X c`; returns (coefficients, R²).
pub fn linear_least_squares(design: &DMatrix<f64>, y: &[f64]) -> Result<(Vec<f64>, f64)> {
    if design.nrows() != y.len() || design.nrows() < design.ncols() {
        return validation("least-squares problem is underdetermined or mis-shaped");
    }
    let yv = DVector::from_column_slice(y);
    let svd = design.clone().svd(true, true);
    let coef = svd
        .solve(&yv, 1e-12)
        .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    let pred = design * &coef;
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let ss_res: f64 = (0..y.len()).map(|i| (y[i] - pred[i]).powi(2)).sum();
    let ss_tot: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok((coef.iter().copied().collect(), r2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    /// `y = a x² + b x + c`
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r2: f64,
}

impl QuadraticFit {
    pub fn vertex(&self) -> f64 {
        -self.b / (2.0 * self.a)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }
}

/// Fit a parabola; abscissae are centered internally for conditioning.
pub fn fit_quadratic(x: &[f64], y: &[f64]) -> Result<QuadraticFit> {
    if x.len() < 3 || x.len() != y.len() {
        return validation("quadratic fit needs at least 3 points");
    }
    let x0 = x.iter().sum::<f64>() / x.len() as f64;
    let scale = x.iter().map(|v| (v - x0).abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let design = DMatrix::from_fn(x.len(), 3, |i, j| ((x[i] - x0) / scale).powi(2 - j as i32));
    let (c, r2) = linear_least_squares(&design, y)?;
    // Undo u = (x − x0)/s.
    let a = c[0] / (scale * scale);
    let b = c[1] / scale - 2.0 * a * x0;
    let cc = c[2] - c[1] * x0 / scale + a * x0 * x0;
    Ok(QuadraticFit { a, b, c: cc, r2 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineFit {
    /// `y = offset + amplitude · cos(θ − phase)`
    pub offset: f64,
    pub amplitude: f64,
    pub phase: f64,
    pub r2: f64,
}

/// Fit `y = A + c cos θ + s sin θ` linearly; phase = atan2(s, c).
pub fn fit_cosine(theta: &[f64], y: &[f64]) -> Result<CosineFit> {
    if theta.len() < 4 || theta.len() != y.len() {
        return validation("cosine fit needs at least 4 points");
    }
    let design = DMatrix::from_fn(theta.len(), 3, |i, j| match j {
        0 => 1.0,
        1 => theta[i].cos(),
        _ => theta[i].sin(),
    });
    let (c, r2) = linear_least_squares(&design, y)?;
    Ok(CosineFit {
        offset: c[0],
        amplitude: c[1].hypot(c[2]),
        phase: c[2].atan2(c[1]),
        r2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// RMS residual.
    pub rms: f64,
}

pub fn fit_linear(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() < 2 || x.len() != y.len() {
        return validation("linear fit needs at least 2 points");
    }
    let design = DMatrix::from_fn(x.len(), 2, |i, j| if j == 0 { x[i] } else { 1.0 });
    let (c, r2) = linear_least_squares(&design, y)?;
    let rms = ((0..x.len()).map(|i| (y[i] - c[0] * x[i] - c[1]).powi(2)).sum::<f64>()
        / x.len() as f64)
        .sqrt();
    Ok(LinearFit {
        slope: c[0],
        intercept: c[1],
        r2,
        rms,
    })
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_recovers_vertex_far_from_origin() {
        let x: Vec<f64> = (0..7).map(|i| 1e-7 * (190.0 + i as f64)).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * (v - 1.93e-5).powi(2) * 1e12 + 0.1).collect();
        let fit = fit_quadratic(&x, &y).unwrap();
        assert!((fit.vertex() - 1.93e-5).abs() < 1e-12);
        assert!(fit.r2 > 0.999999);
    }

    #[test]
    fn cosine_phase_and_offset_invariance() {
        let th: Vec<f64> = (0..16).map(|i| i as f64 * std::f64::consts::TAU / 16.0).collect();
        let y: Vec<f64> = th.iter().map(|t| 0.5 + 0.4 * (t - 1.2).cos()).collect();
        let a = fit_cosine(&th, &y).unwrap();
        let shifted: Vec<f64> = y.iter().map(|v| v + 0.3).collect();
        let b = fit_cosine(&th, &shifted).unwrap();
        assert!((a.phase - 1.2).abs() < 1e-12);
        assert!((a.phase - b.phase).abs() < 1e-12);
        assert!((a.amplitude - 0.4).abs() < 1e-12);
    }

    #[test]
    fn linear_fit_exact() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let f = fit_linear(&x, &y).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_section_finds_peak() {
        let x = golden_section_max(|x| -(x - 0.3).powi(2), -1.0, 2.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
    }
}
