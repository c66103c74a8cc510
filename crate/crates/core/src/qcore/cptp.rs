//! Projection onto the set of CPTP maps.
//!
//! Works on the unit-trace Choi matrix, where the Frobenius norm is a fixed
//! multiple of the PTM Frobenius norm, so nearest points agree in both pictures.

use super::linalg::{hermitian_eigen, ComplexMatrix, C64, ZERO};
use super::ptm::{choi_to_ptm_unchecked, ptm_to_choi, ProcessMatrix};
use crate::error::{Error, Result};

pub const CPTP_TOL: f64 = 1e-8;
pub const CPTP_MAX_ITER: usize = 10_000;

/// Nearest (Frobenius) CPTP map to `p`, by Dykstra's alternating projections.
pub fn project_cptp(p: &ProcessMatrix, tol: f64) -> Result<ProcessMatrix> {
    project_cptp_with(p, tol, CPTP_MAX_ITER)
}

pub fn project_cptp_with(p: &ProcessMatrix, tol: f64, max_iter: usize) -> Result<ProcessMatrix> {
    if !(tol > 0.0) {
        return crate::error::validation("projection tolerance must be positive");
    }
    let j0 = ptm_to_choi(p);
    let mut x = project_tp(&j0);
    if psd_violation(&x) <= tol * 1e-2 {
        return Ok(choi_to_ptm_unchecked(&x));
    }
    // The TP set is affine, so only the cone step needs a Dykstra correction.
    let mut corr = ComplexMatrix::zeros(16, 16);
    let mut last_change = f64::INFINITY;
    for _ in 0..max_iter {
        let shifted = &x + &corr;
        let y = project_psd(&shifted);
        corr = shifted - &y;
        let next = project_tp(&y);
        last_change = frob(&(&next - &x));
        x = next;
        if last_change < tol {
            return Ok(choi_to_ptm_unchecked(&finish(x)));
        }
    }
    Err(Error::NonConvergence {
        what: "CPTP projection",
        iterations: max_iter,
        residual: last_change,
    })
}

/// Mix in just enough of the fully depolarizing channel to remove residual
/// negative eigenvalues; keeps trace preservation exact.
fn finish(x: ComplexMatrix) -> ComplexMatrix {
    let (vals, _) = hermitian_eigen(&x);
    let lmin = vals[0];
    if lmin >= 0.0 {
        return x;
    }
    let s = -lmin / (1.0 / 16.0 - lmin);
    let mut out = x * C64::new(1.0 - s, 0.0);
    for i in 0..16 {
        out[(i, i)] += C64::new(s / 16.0, 0.0);
    }
    out
}

fn frob(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn psd_violation(j: &ComplexMatrix) -> f64 {
    let (vals, _) = hermitian_eigen(j);
    (-vals[0]).max(0.0)
}

/// Clip negative eigenvalues of the Hermitian part.
pub(crate) fn project_psd(j: &ComplexMatrix) -> ComplexMatrix {
    let h = (j + j.adjoint()) * C64::new(0.5, 0.0);
    let (vals, vecs) = hermitian_eigen(&h);
    let mut out = ComplexMatrix::zeros(16, 16);
    for (k, &v) in vals.iter().enumerate() {
        if v <= 0.0 {
            continue;
        }
        let col = vecs.column(k);
        for r in 0..16 {
            let a = col[r] * v;
            for c in 0..16 {
                out[(r, c)] += a * col[c].conj();
            }
        }
    }
    out
}

/// `J − (Tr_out J − 1/4) ⊗ 1/4`; the input factor is the first tensor slot.
pub(crate) fn project_tp(j: &ComplexMatrix) -> ComplexMatrix {
    let mut out = j.clone();
    for a in 0..4 {
        for b in 0..4 {
            let mut pt = ZERO;
            for k in 0..4 {
                pt += j[(4 * a + k, 4 * b + k)];
            }
            if a == b {
                pt -= C64::new(0.25, 0.0);
            }
            let shift = pt * 0.25;
            for k in 0..4 {
                out[(4 * a + k, 4 * b + k)] -= shift;
            }
        }
    }
    out
}
