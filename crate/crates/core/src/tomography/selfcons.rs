//! Damped fixed-point iteration `P ← (1 − λ) P + λ QPT(D, P)` with gauge fixing.

use rayon::prelude::*;

use super::lstsq::{QptOptions, QptProblem};
use super::{ideal_processes, GateSetEstimate, TomoGate, TomographyDataset};
use crate::error::{validation, Error, Result};
use crate::qcore::cptp::{project_cptp, CPTP_TOL};
use crate::qcore::gauge::{best_hidden_gauge, conjugate_hidden_z};
use crate::qcore::linalg::wrap_phase;
use crate::qcore::ptm::ProcessMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfConsistentOptions {
    pub lambda: f64,
    pub max_iter: usize,
    pub qpt: QptOptions,
}

impl Default for SelfConsistentOptions {
    fn default() -> Self {
        SelfConsistentOptions {
            lambda: 0.1,
            max_iter: 100,
            qpt: QptOptions::default(),
        }
    }
}

/// Rotate all four processes about the hidden qubit's z axis to best match
/// the ideal gates. Predicted outcomes are unchanged.
pub fn gauge_fix(estimate: &GateSetEstimate) -> GateSetEstimate {
    let ideal = ideal_processes();
    let pairs: Vec<_> = estimate.processes().into_iter().zip(ideal).collect();
    let phi = best_hidden_gauge(&pairs);
    let mut out = estimate.clone();
    if phi != 0.0 {
        for g in TomoGate::ALL {
            out.set(g, conjugate_hidden_z(estimate.get(g), phi));
        }
    }
    out.gauge_phi = wrap_phase(estimate.gauge_phi + phi);
    out
}

fn order_datasets(datasets: &[TomographyDataset]) -> Result<Vec<&TomographyDataset>> {
    if datasets.len() != 4 {
        return validation("self-consistent QPT needs one dataset per gate (4)");
    }
    // Tagged datasets may come in any order; untagged ones are taken as given.
    if datasets.iter().all(|d| d.gate.is_some()) {
        return TomoGate::ALL
            .iter()
            .map(|g| {
                datasets
                    .iter()
                    .find(|d| d.gate == Some(*g))
                    .ok_or_else(|| Error::Validation(format!("no dataset for {g}")))
            })
            .collect();
    }
    Ok(datasets.iter().collect())
}

/// One QPT pass for all four gates with `spam` as the assumed SPAM processes.
fn qpt_all(data: &[&TomographyDataset], spam: &GateSetEstimate, opts: &QptOptions) -> Result<[ProcessMatrix; 4]> {
    let starts = spam.processes();
    let out: Vec<ProcessMatrix> = (0..4)
        .into_par_iter()
        .map(|i| QptProblem::new(data[i], spam)?.solve(&starts[i], opts))
        .collect::<Result<_>>()?;
    Ok([out[0], out[1], out[2], out[3]])
}

fn residual(a: &[ProcessMatrix; 4], b: &[ProcessMatrix; 4]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.frobenius_distance(y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Self-consistent gate-set estimate from the four gate datasets.
///
/// Starts at the ideal gates and stops at the first increase of the residual,
/// returning the iterate before it, or after `max_iter` iterations.
pub fn self_consistent_qpt(datasets: &[TomographyDataset], opts: &SelfConsistentOptions) -> Result<GateSetEstimate> {
    if !(opts.lambda > 0.0 && opts.lambda <= 1.0) {
        return validation("lambda must lie in (0, 1]");
    }
    let data = order_datasets(datasets)?;
    let mut current = GateSetEstimate::ideal();
    let mut previous = current.clone();
    let mut history = Vec::new();
    for i in 0..=opts.max_iter {
        let q = qpt_all(&data, &current, &opts.qpt)?;
        let p = current.processes();
        let r = residual(&p, &q);
        history.push(r);
        if i == 1 && r > 2.0 * history[0] {
            return Err(Error::Instability { r0: history[0], r1: r });
        }
        if i > 0 && r > history[i - 1] {
            current = previous;
            break;
        }
        if i == opts.max_iter {
            break;
        }
        let mut next = current.clone();
        for (k, g) in TomoGate::ALL.into_iter().enumerate() {
            next.set(g, project_cptp(&p[k].lerp(&q[k], opts.lambda), CPTP_TOL)?);
        }
        previous = std::mem::replace(&mut current, gauge_fix(&next));
    }
    current.residual_history = history;
    Ok(current)
}
