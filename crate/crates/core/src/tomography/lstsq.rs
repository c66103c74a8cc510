//! CPTP-constrained least squares for one process.
//!
//! With `v_A = P_A r0` and `u_B = P_Bᵀ e_ZI`, the model is `μ_AB = u_Bᵀ X v_A`,
//! so the objective is `tr(Xᵀ U X V) − 2 tr(Xᵀ C) + Σμ²` with
//! `U = Σ u uᵀ`, `V = Σ v vᵀ`, `C = Σ μ u vᵀ`.

use nalgebra::SymmetricEigen;

use super::{build_sequences, rho0_vector, GateSetEstimate, TomographyDataset, ZI};
use crate::error::{Error, Result};
use crate::qcore::cptp::{project_cptp, CPTP_TOL};
use crate::qcore::ptm::{ProcessMatrix, Real16};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QptOptions {
    pub max_iter: usize,
    /// Stop once the objective improves by less than this.
    pub tol: f64,
}

impl Default for QptOptions {
    fn default() -> Self {
        QptOptions {
            max_iter: 5000,
            tol: 1e-10,
        }
    }
}

/// Quadratic form of the least-squares objective for fixed SPAM processes.
#[derive(Debug, Clone)]
pub struct QptProblem {
    u: Real16,
    v: Real16,
    c: Real16,
    mu_sq: f64,
    lipschitz: f64,
}

impl QptProblem {
    pub fn new(data: &TomographyDataset, spam: &GateSetEstimate) -> Result<Self> {
        data.validate()?;
        let lib = build_sequences();
        let r0 = rho0_vector();
        let vs: Vec<_> = lib.preparations.iter().map(|a| spam.word(a).0 * r0).collect();
        let us: Vec<_> = lib
            .tomography
            .iter()
            .map(|b| spam.word(b).0.row(ZI).transpose())
            .collect();
        let mut u = Real16::zeros();
        for x in &us {
            u += x * x.transpose();
        }
        let mut v = Real16::zeros();
        for x in &vs {
            v += x * x.transpose();
        }
        let mut c = Real16::zeros();
        let mut mu_sq = 0.0;
        for (a, va) in vs.iter().enumerate() {
            for (b, ub) in us.iter().enumerate() {
                let m = data.mu[a][b];
                c += ub * va.transpose() * m;
                mu_sq += m * m;
            }
        }
        let top = |m: &Real16| SymmetricEigen::new(*m).eigenvalues.max();
        let lipschitz = 2.0 * top(&u) * top(&v);
        if !(lipschitz.is_finite() && lipschitz > 0.0) {
            return Err(Error::Internal("degenerate tomography design".into()));
        }
        Ok(QptProblem {
            u,
            v,
            c,
            mu_sq,
            lipschitz,
        })
    }

    /// `Σ_AB (u_Bᵀ X v_A − μ_AB)²`.
    pub fn objective(&self, x: &ProcessMatrix) -> f64 {
        let uxv = self.u * x.0 * self.v;
        (x.0.transpose() * uxv).trace() - 2.0 * x.0.dot(&self.c) + self.mu_sq
    }

    pub fn gradient(&self, x: &ProcessMatrix) -> Real16 {
        (self.u * x.0 * self.v - self.c) * 2.0
    }

    /// Accelerated projected gradient from `start`, projecting onto CPTP
    /// after every step. The step starts at `1/L` and is halved whenever the
    /// sufficient-decrease test fails; momentum restarts when the objective rises.
    pub fn solve(&self, start: &ProcessMatrix, opts: &QptOptions) -> Result<ProcessMatrix> {
        let mut x = project_cptp(start, CPTP_TOL)?;
        let mut fx = self.objective(&x);
        let mut y = x;
        let mut t = 1.0f64;
        let mut step = 1.0 / self.lipschitz;
        for _ in 0..opts.max_iter {
            let g = self.gradient(&y);
            let fy = self.objective(&y);
            let z = loop {
                let z = project_cptp(&ProcessMatrix(y.0 - g * step), CPTP_TOL)?;
                let d = z.0 - y.0;
                let bound = fy + g.dot(&d) + d.norm_squared() / (2.0 * step);
                if self.objective(&z) <= bound + 1e-12 * bound.abs().max(1.0) || step < 1e-12 / self.lipschitz {
                    break z;
                }
                step *= 0.5;
            };
            let fz = self.objective(&z);
            if fz > fx {
                if t == 1.0 {
                    // A plain projected step from x no longer descends.
                    return Ok(x);
                }
                // Restart momentum from the last accepted point.
                y = x;
                t = 1.0;
                continue;
            }
            let improvement = fx - fz;
            let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
            y = ProcessMatrix(z.0 + (z.0 - x.0) * ((t - 1.0) / t_next));
            t = t_next;
            x = z;
            fx = fz;
            if improvement < opts.tol {
                return Ok(x);
            }
        }
        Err(Error::NonConvergence {
            what: "QPT least squares",
            iterations: opts.max_iter,
            residual: fx,
        })
    }
}

/// CPTP least-squares process estimate for `data`, assuming the SPAM gates
/// are described by `spam`. Starts from the identity channel.
pub fn qpt_lstsq(data: &TomographyDataset, spam: &GateSetEstimate) -> Result<ProcessMatrix> {
    qpt_lstsq_with(data, spam, &ProcessMatrix::identity(), &QptOptions::default())
}

pub fn qpt_lstsq_with(
    data: &TomographyDataset,
    spam: &GateSetEstimate,
    start: &ProcessMatrix,
    opts: &QptOptions,
) -> Result<ProcessMatrix> {
    QptProblem::new(data, spam)?.solve(start, opts)
}
