//! Density-matrix execution of gate sequences with virtual-Z frame tracking.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateSequence};
use super::model::DeviceModel;
use super::noise::decohere;
use super::pulses::{cphase_kraus, frame_unitary, iswap_unitary};
use crate::error::{validation, Result};
use crate::qcore::gates::rotation_control;
use crate::qcore::linalg::{ComplexMatrix, ONE};
use crate::qcore::ptm::ProcessMatrix;

/// Rotating-frame phases of the control (`delta1`) and hidden (`delta2`) qubits.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FrameState {
    pub delta1: f64,
    pub delta2: f64,
}

impl FrameState {
    pub fn new(delta1: f64, delta2: f64) -> Self {
        FrameState { delta1, delta2 }
    }

    /// Frame of the parametric drive, `δ1 − δ2`.
    pub fn delta_p(&self) -> f64 {
        self.delta1 - self.delta2
    }

    pub fn shift(&mut self, d1: f64, d2: f64) {
        self.delta1 += d1;
        self.delta2 += d2;
    }

    pub fn unitary(&self) -> ComplexMatrix {
        frame_unitary(self.delta1, self.delta2)
    }
}

/// Physical action of one gate, expressed in the computational basis.
enum Action {
    Kraus(Vec<ComplexMatrix>, f64),
    Frame(f64, f64),
}

/// Gate as it acts with all frames at zero.
fn bare_action(model: &DeviceModel, gate: &Gate) -> Result<Action> {
    gate.validate()?;
    Ok(match *gate {
        Gate::Rot { axis, angle } => {
            Action::Kraus(vec![rotation_control(axis, angle)], model.durations.single_qubit)
        }
        Gate::Sw { length, detuning } => {
            Action::Kraus(vec![iswap_unitary(model, length, detuning)?], length)
        }
        Gate::Cp { length, detuning } => {
            let kr = cphase_kraus(model, length, detuning)?;
            let l = kr.leak_operator();
            Action::Kraus(vec![kr.k, l], length)
        }
        Gate::FrameShift { delta1, delta2 } => Action::Frame(delta1, delta2),
    })
}

fn apply_kraus(rho: &ComplexMatrix, ops: &[ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in ops {
        out += k * rho * k.adjoint();
    }
    out
}

/// Final state and frames after running `seq` from |00⟩⟨00| with initial `frames`.
///
/// A gate issued while the frames are `F` acts as `Z_F† G Z_F`; frame shifts
/// only update `F`. The measurement commutes with every `Z_F`.
pub fn evolve(
    model: &DeviceModel,
    seq: &GateSequence,
    frames: FrameState,
) -> Result<(ComplexMatrix, FrameState)> {
    let mut rho = ComplexMatrix::zeros(4, 4);
    rho[(0, 0)] = ONE;
    let mut f = frames;
    for gate in &seq.gates {
        match bare_action(model, gate)? {
            Action::Frame(d1, d2) => f.shift(d1, d2),
            Action::Kraus(ops, duration) => {
                let z = f.unitary();
                let zd = z.adjoint();
                let physical: Vec<ComplexMatrix> = ops.iter().map(|k| &zd * k * &z).collect();
                rho = apply_kraus(&rho, &physical);
                rho = decohere(&rho, model, duration);
            }
        }
    }
    Ok((rho, f))
}

/// `P(control = 1)` after running `seq` from |00⟩.
pub fn run_sequence(model: &DeviceModel, seq: &GateSequence, frames: FrameState) -> Result<f64> {
    let (rho, _) = evolve(model, seq, frames)?;
    Ok((rho[(2, 2)].re + rho[(3, 3)].re).clamp(0.0, 1.0))
}

/// Binomial estimate of `p` from `shots` single-shot measurements.
pub fn sample_shots<R: Rng + ?Sized>(p: f64, shots: u64, rng: &mut R) -> Result<f64> {
    if shots == 0 {
        return validation("shot count must be positive");
    }
    let dist = Binomial::new(shots, p.clamp(0.0, 1.0))
        .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    Ok(dist.sample(rng) as f64 / shots as f64)
}

/// Pauli transfer matrix of one gate with frames at zero: pulse (or frame
/// rotation) followed by decoherence over the gate duration.
pub fn gate_ptm(model: &DeviceModel, gate: &Gate) -> Result<ProcessMatrix> {
    Ok(match bare_action(model, gate)? {
        Action::Frame(d1, d2) => {
            let z = frame_unitary(d1, d2);
            let zd = z.adjoint();
            ProcessMatrix::from_linear_map(|p| &z * p * &zd)
        }
        Action::Kraus(ops, duration) => {
            ProcessMatrix::from_linear_map(|p| decohere(&apply_kraus(p, &ops), model, duration))
        }
    })
}

/// Composite PTM of a sequence, treating each frame shift as a physical Z
/// rotation. Equivalent to [`evolve`] for every measurement that commutes
/// with z rotations.
pub fn sequence_ptm(model: &DeviceModel, seq: &GateSequence) -> Result<ProcessMatrix> {
    let mut acc = ProcessMatrix::identity();
    for g in &seq.gates {
        acc = gate_ptm(model, g)? * acc;
    }
    Ok(acc)
}

/// `⟨σz ⊗ 1⟩` predicted by a PTM acting on |00⟩.
pub fn predicted_zi(p: &ProcessMatrix) -> f64 {
    // ρ0 has Pauli vector r_j = Tr[P_j ρ0] = 1 at II, IZ, ZI, ZZ.
    let m = p.matrix();
    m[(12, 0)] + m[(12, 3)] + m[(12, 12)] + m[(12, 15)]
}
