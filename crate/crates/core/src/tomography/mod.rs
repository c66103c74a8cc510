//! Process tomography through the control qubit's σz readout.
//!
//! Every preparation and tomography sequence is itself built from the gates
//! being characterized, so the least-squares estimate [`qpt_lstsq`] depends
//! on the assumed SPAM processes. [`self_consistent_qpt`] iterates towards a
//! gate set that reproduces itself.

mod library;
mod lstsq;
mod selfcons;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::calibration::CalibratedGateSet;
use crate::device::{run_sequence, sample_shots, DeviceModel, FrameState, GateSequence};
use crate::error::{validation, Error, Result};
use crate::qcore::pauli::pauli_labels;
use crate::qcore::ptm::{ptm_from_unitary, ProcessMatrix};

pub use library::{build_sequences, SequenceLibrary, TomoGate, TomoSequence};
pub use lstsq::{qpt_lstsq, qpt_lstsq_with, QptOptions, QptProblem};
pub use selfcons::{gauge_fix, self_consistent_qpt, SelfConsistentOptions};

pub const N_PREP: usize = 16;
pub const N_TOMO: usize = 15;

/// Index of `σz ⊗ 1` in the Pauli basis.
pub const ZI: usize = 12;

/// Outcomes `μ[a][b] = ⟨σz ⊗ 1⟩` for preparation `a` and tomography sequence `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyDataset {
    /// Description of the characterized process.
    pub target: String,
    /// Set when the target is one of the gate-set gates.
    pub gate: Option<TomoGate>,
    pub mu: Vec<Vec<f64>>,
    pub shots: Option<u64>,
    pub seed: u64,
    pub model: Option<DeviceModel>,
}

impl TomographyDataset {
    pub fn validate(&self) -> Result<()> {
        if self.mu.len() != N_PREP || self.mu.iter().any(|r| r.len() != N_TOMO) {
            return validation(format!("dataset must be {N_PREP}x{N_TOMO}"));
        }
        if self.mu.iter().flatten().any(|v| !(v.abs() <= 1.0 + 1e-12)) {
            return validation("outcomes must lie in [-1, 1]");
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: TomographyDataset = serde_json::from_str(s)?;
        d.validate()?;
        Ok(d)
    }
}

/// Run all 240 sequences `B.X.A` on the device and record `1 − 2 P(1)`.
pub fn collect_dataset(
    model: &DeviceModel,
    gateset: &CalibratedGateSet,
    target: &GateSequence,
    shots: Option<u64>,
    seed: u64,
) -> Result<TomographyDataset> {
    let lib = build_sequences();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mu = vec![vec![0.0; N_TOMO]; N_PREP];
    for (a, prep) in lib.preparations.iter().enumerate() {
        let pa = prep.to_device(gateset);
        for (b, tomo) in lib.tomography.iter().enumerate() {
            let seq = pa.clone().then_seq(target).then_seq(&tomo.to_device(gateset));
            let mut p = run_sequence(model, &seq, FrameState::default())?;
            if let Some(n) = shots {
                p = sample_shots(p, n, &mut rng)?;
            }
            mu[a][b] = 1.0 - 2.0 * p;
        }
    }
    Ok(TomographyDataset {
        target: target.to_string(),
        gate: None,
        mu,
        shots,
        seed,
        model: Some(model.clone()),
    })
}

/// Datasets for the four gate-set gates, in [`TomoGate::ALL`] order. Shot
/// streams use seeds `seed`, `seed + 1`, ….
pub fn collect_gate_datasets(
    model: &DeviceModel,
    gateset: &CalibratedGateSet,
    shots: Option<u64>,
    seed: u64,
) -> Result<Vec<TomographyDataset>> {
    TomoGate::ALL
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let mut d = collect_dataset(model, gateset, &g.device_gates(gateset), shots, seed + i as u64)?;
            d.gate = Some(g);
            Ok(d)
        })
        .collect()
}

/// Process matrices of the four gates plus the gauge and iteration record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSetEstimate {
    pub p_x: ProcessMatrix,
    pub p_y: ProcessMatrix,
    pub p_iswap: ProcessMatrix,
    pub p_cphase: ProcessMatrix,
    /// Total hidden-qubit z rotation applied by gauge fixing, in (−π, π].
    pub gauge_phi: f64,
    /// `r_i = ‖P_i − QPT(D, P_i)‖_F`, summed in quadrature over the four gates.
    pub residual_history: Vec<f64>,
}

impl GateSetEstimate {
    pub fn from_processes(p: [ProcessMatrix; 4]) -> Self {
        GateSetEstimate {
            p_x: p[0],
            p_y: p[1],
            p_iswap: p[2],
            p_cphase: p[3],
            gauge_phi: 0.0,
            residual_history: Vec::new(),
        }
    }

    pub fn ideal() -> Self {
        Self::from_processes(ideal_processes())
    }

    pub fn processes(&self) -> [ProcessMatrix; 4] {
        [self.p_x, self.p_y, self.p_iswap, self.p_cphase]
    }

    pub fn get(&self, g: TomoGate) -> &ProcessMatrix {
        match g {
            TomoGate::X90 => &self.p_x,
            TomoGate::Y90 => &self.p_y,
            TomoGate::Iswap => &self.p_iswap,
            TomoGate::Cphase => &self.p_cphase,
        }
    }

    pub fn set(&mut self, g: TomoGate, p: ProcessMatrix) {
        match g {
            TomoGate::X90 => self.p_x = p,
            TomoGate::Y90 => self.p_y = p,
            TomoGate::Iswap => self.p_iswap = p,
            TomoGate::Cphase => self.p_cphase = p,
        }
    }

    /// PTM of a word, first gate applied first.
    pub fn word(&self, s: &TomoSequence) -> ProcessMatrix {
        s.gates
            .iter()
            .fold(ProcessMatrix::identity(), |acc, &g| *self.get(g) * acc)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn ideal_processes() -> [ProcessMatrix; 4] {
    TomoGate::ALL.map(|g| ptm_from_unitary(&g.ideal_unitary()).expect("ideal gates are unitary"))
}

/// `μ` predicted for `target` when preparations and tomography sequences are
/// built from the processes in `spam`.
pub fn predict_outcomes(spam: &GateSetEstimate, target: &ProcessMatrix) -> Vec<Vec<f64>> {
    let lib = build_sequences();
    let r0 = rho0_vector();
    let states: Vec<_> = lib.preparations.iter().map(|a| spam.word(a).0 * r0).collect();
    let meas: Vec<_> = lib
        .tomography
        .iter()
        .map(|b| spam.word(b).0.row(ZI).transpose())
        .collect();
    states
        .iter()
        .map(|v| {
            let xv = target.0 * v;
            meas.iter().map(|u| u.dot(&xv)).collect()
        })
        .collect()
}

/// Noise-free dataset computed from process matrices.
pub fn synthetic_dataset(spam: &GateSetEstimate, target: &ProcessMatrix, gate: Option<TomoGate>) -> TomographyDataset {
    TomographyDataset {
        target: gate.map_or_else(|| "synthetic".to_string(), |g| g.to_string()),
        gate,
        mu: predict_outcomes(spam, target),
        shots: None,
        seed: 0,
        model: None,
    }
}

/// Pauli vector of |00⟩⟨00|: ones at II, IZ, ZI, ZZ.
pub(crate) fn rho0_vector() -> nalgebra::SVector<f64, 16> {
    let mut r = nalgebra::SVector::<f64, 16>::zeros();
    for i in [0, 3, 12, 15] {
        r[i] = 1.0;
    }
    r
}

/// 16×16 PTM as CSV with a `label` column and Pauli-label headers.
pub fn ptm_to_csv(p: &ProcessMatrix) -> Result<String> {
    let labels = pauli_labels();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["label".to_string()];
    header.extend(labels.iter().cloned());
    w.write_record(&header)?;
    for (i, l) in labels.iter().enumerate() {
        let mut rec = vec![l.clone()];
        rec.extend((0..16).map(|j| format!("{}", p.get(i, j))));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn ptm_from_csv(text: &str) -> Result<ProcessMatrix> {
    let labels = pauli_labels();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let h = r.headers()?.clone();
    if h.len() != 17 || &h[0] != "label" || (0..16).any(|j| h[j + 1] != labels[j]) {
        return validation("PTM CSV header must be label,II,IX,...,ZZ");
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if i >= 16 || rec.len() != 17 || rec[0] != labels[i] {
            return validation(format!("unexpected PTM CSV row {}", i + 1));
        }
        let row = (1..17)
            .map(|j| {
                rec[j]
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Validation(format!("bad number '{}'", &rec[j])))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    ProcessMatrix::try_from_rows(&rows)
}

#[cfg(test)]
mod tests;
