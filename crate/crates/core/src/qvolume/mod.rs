//! Quantum-volume estimates for grids of control qubits with attached hidden
//! qubits.
//!
//! A random layer of disjoint pairs is transpiled into nearest-neighbour
//! swaps and entangling gates ([`layer_cost`]); the mean number of time steps
//! `n_s` sets the achievable depth `d = ε / (N n_s Γτ)` and
//! `log2 V_Q = min(d, N)`.

mod assign;
mod pairing;
mod plan;
mod routing;
mod topology;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

pub use assign::{assign_meeting_sites, MeetingAssignment, EXACT_MAX_K};
pub use pairing::{group_bound, group_pairs, sample_layer_pairing, sample_pairing, Pairing};
pub use plan::{layer_cost, Op, OpKind, RoutingPlan};
pub use routing::{route_permutation, SwapLayers};
pub use topology::{topology_metrics, GridTopology, TopologyMetrics};

/// Error model and sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QvConfig {
    /// Error probability per qubit per two-qubit gate duration. In
    /// differential mode this applies to hidden qubits only.
    pub gamma_tau: f64,
    /// Control-qubit rate; setting it selects differential mode.
    pub gamma_c_tau: Option<f64>,
    pub epsilon: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for QvConfig {
    fn default() -> Self {
        QvConfig {
            gamma_tau: 0.004,
            gamma_c_tau: None,
            epsilon: 1.0,
            samples: 200,
            seed: 0,
        }
    }
}

impl QvConfig {
    pub fn uniform(gamma_tau: f64) -> Self {
        QvConfig {
            gamma_tau,
            ..QvConfig::default()
        }
    }

    pub fn differential(gamma_c_tau: f64, gamma_tau: f64) -> Self {
        QvConfig {
            gamma_tau,
            gamma_c_tau: Some(gamma_c_tau),
            ..QvConfig::default()
        }
    }

    /// Γτ = 0.004, 4e-4, 4e-6 with all qubits alike, then control-only
    /// decoherence at 4e-6.
    pub fn presets(samples: usize, seed: u64) -> Vec<QvConfig> {
        [
            Self::uniform(4e-3),
            Self::uniform(4e-4),
            Self::uniform(4e-6),
            Self::differential(4e-6, 0.0),
        ]
        .into_iter()
        .map(|c| QvConfig { samples, seed, ..c })
        .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        match self.gamma_c_tau {
            None if !ok(self.gamma_tau) => return validation("gamma_tau must be positive"),
            Some(c) if !ok(c) || !(self.gamma_tau.is_finite() && self.gamma_tau >= 0.0) => {
                return validation("differential mode needs gamma_c_tau > 0 and gamma_tau >= 0");
            }
            _ => {}
        }
        if !ok(self.epsilon) {
            return validation("epsilon must be positive");
        }
        if self.samples == 0 {
            return validation("samples must be at least 1");
        }
        Ok(())
    }

    /// Error probability per time step summed over all qubits.
    pub fn error_per_step(&self, topo: &GridTopology) -> f64 {
        match self.gamma_c_tau {
            None => topo.n_qubits() as f64 * self.gamma_tau,
            Some(c) => topo.n_control() as f64 * c + topo.n_hidden() as f64 * self.gamma_tau,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QvResult {
    pub log2_vq: f64,
    /// Achievable depth before clamping to N.
    pub d: f64,
    pub n_s_mean: f64,
    pub n_g_mean: f64,
}

/// Mean `(n_s, n_g)` over `samples` random pairings. Sample `i` draws from
/// ChaCha stream `i` of `seed`, so the result does not depend on threading.
/// With odd N one random qubit idles in each layer.
pub fn layer_statistics(topo: &GridTopology, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if topo.n_qubits() < 2 {
        return validation("need at least two qubits");
    }
    let costs: Vec<(usize, usize)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let p = pairing::sample_layer_pairing(topo, &mut rng);
            let (n_g, n_s, _) = layer_cost(&p, topo)?;
            Ok((n_s, n_g))
        })
        .collect::<Result<_>>()?;
    let m = samples as f64;
    let n_s = costs.iter().map(|c| c.0 as f64).sum::<f64>() / m;
    let n_g = costs.iter().map(|c| c.1 as f64).sum::<f64>() / m;
    Ok((n_s, n_g))
}

/// `log2 V_Q` from the error-budget depth model.
pub fn volume_from_layer_steps(topo: &GridTopology, cfg: &QvConfig, n_s_mean: f64) -> f64 {
    depth(topo, cfg, n_s_mean).min(topo.n_qubits() as f64)
}

fn depth(topo: &GridTopology, cfg: &QvConfig, n_s_mean: f64) -> f64 {
    cfg.epsilon / (n_s_mean * cfg.error_per_step(topo))
}

pub fn quantum_volume(topo: &GridTopology, cfg: &QvConfig) -> Result<QvResult> {
    cfg.validate()?;
    let (n_s_mean, n_g_mean) = layer_statistics(topo, cfg.samples, cfg.seed)?;
    Ok(QvResult {
        log2_vq: volume_from_layer_steps(topo, cfg, n_s_mean),
        d: depth(topo, cfg, n_s_mean),
        n_s_mean,
        n_g_mean,
    })
}

/// One grid under one error model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QvRow {
    pub k: usize,
    pub h: usize,
    pub control_lines: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub gamma_tau: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_c_tau: Option<f64>,
    pub n_s_mean: f64,
    pub n_g_mean: f64,
    pub log2_vq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QvMap {
    pub rows: Vec<QvRow>,
}

pub const QV_CSV_HEADER: [&str; 8] = ["k", "h", "control_lines", "N", "gamma_tau", "n_s_mean", "n_g_mean", "log2_vq"];

impl QvMap {
    /// CSV with the fixed header. The control-qubit rate of differential
    /// rows is not a column; use JSON to keep it.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(QV_CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.k.to_string(),
                r.h.to_string(),
                r.control_lines.to_string(),
                r.n.to_string(),
                r.gamma_tau.to_string(),
                r.n_s_mean.to_string(),
                r.n_g_mean.to_string(),
                r.log2_vq.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        if r.headers()?.iter().ne(QV_CSV_HEADER) {
            return validation(format!("QV CSV header must be {}", QV_CSV_HEADER.join(",")));
        }
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            if rec.len() != QV_CSV_HEADER.len() {
                return validation("QV CSV row has the wrong number of fields");
            }
            let int = |i: usize| {
                rec[i]
                    .parse::<usize>()
                    .map_err(|_| Error::Validation(format!("bad integer '{}'", &rec[i])))
            };
            let real = |i: usize| {
                rec[i]
                    .parse::<f64>()
                    .map_err(|_| Error::Validation(format!("bad number '{}'", &rec[i])))
            };
            rows.push(QvRow {
                k: int(0)?,
                h: int(1)?,
                control_lines: int(2)?,
                n: int(3)?,
                gamma_tau: real(4)?,
                gamma_c_tau: None,
                n_s_mean: real(5)?,
                n_g_mean: real(6)?,
                log2_vq: real(7)?,
            });
        }
        Ok(QvMap { rows })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Rows for every config (outer) and grid (inner). Layer statistics are
/// shared between configs with the same sample count and seed.
pub fn qv_map(grids: &[GridTopology], cfgs: &[QvConfig]) -> Result<QvMap> {
    let mut cache: std::collections::HashMap<(GridTopology, usize, u64), (f64, f64)> = Default::default();
    let mut rows = Vec::with_capacity(grids.len() * cfgs.len());
    for cfg in cfgs {
        cfg.validate()?;
        for topo in grids {
            let key = (*topo, cfg.samples, cfg.seed);
            let (n_s_mean, n_g_mean) = match cache.get(&key) {
                Some(&v) => v,
                None => {
                    let v = layer_statistics(topo, cfg.samples, cfg.seed)?;
                    cache.insert(key, v);
                    v
                }
            };
            rows.push(QvRow {
                k: topo.k,
                h: topo.h,
                control_lines: topo.control_lines(),
                n: topo.n_qubits(),
                gamma_tau: cfg.gamma_tau,
                gamma_c_tau: cfg.gamma_c_tau,
                n_s_mean,
                n_g_mean,
                log2_vq: volume_from_layer_steps(topo, cfg, n_s_mean),
            });
        }
    }
    Ok(QvMap { rows })
}

/// Grids with `k ≥ 2`, `h ∈ {0,1,2,3,4,6,8}` and at most `max_lines`
/// control lines, ordered by line count.
pub fn default_grids(max_lines: usize) -> Vec<GridTopology> {
    let mut out = Vec::new();
    for h in [0, 1, 2, 3, 4, 6, 8] {
        for k in 2.. {
            let t = GridTopology { k, h };
            if t.control_lines() > max_lines {
                break;
            }
            out.push(t);
        }
    }
    out.sort_by_key(|t| (t.control_lines(), t.h));
    out
}

/// Best `log2 V_Q` reachable within each line budget that occurs in `rows`,
/// separately for `h = 0` and `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetPoint {
    pub budget: usize,
    pub best_plain: Option<f64>,
    pub best_hidden: Option<f64>,
}

impl BudgetPoint {
    /// Some `h > 0` grid ties or beats every `h = 0` grid (`tol` absorbs
    /// rounding between saturated values).
    pub fn hidden_competitive(&self, tol: f64) -> bool {
        match (self.best_hidden, self.best_plain) {
            (Some(h), Some(p)) => h >= p - tol,
            (Some(_), None) => true,
            _ => false,
        }
    }

    pub fn hidden_ahead(&self) -> bool {
        match (self.best_hidden, self.best_plain) {
            (Some(h), Some(p)) => h > p,
            (Some(_), None) => true,
            _ => false,
        }
    }
}

pub fn budget_envelope(rows: &[QvRow]) -> Vec<BudgetPoint> {
    let mut budgets: Vec<usize> = rows.iter().map(|r| r.control_lines).collect();
    budgets.sort_unstable();
    budgets.dedup();
    let best = |b: usize, hidden: bool| {
        rows.iter()
            .filter(|r| r.control_lines <= b && (r.h > 0) == hidden)
            .map(|r| r.log2_vq)
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
    };
    budgets
        .into_iter()
        .map(|b| BudgetPoint {
            budget: b,
            best_plain: best(b, false),
            best_hidden: best(b, true),
        })
        .collect()
}
