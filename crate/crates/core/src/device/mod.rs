//! Simulated control + hidden qubit pair.
//!
//! The control qubit has a drive line and readout; the hidden qubit is reached
//! only through parametric SW (iSWAP-type) and CP (cPHASE-type) pulses. Gate
//! phases, couplings and coherence times come from a [`DeviceModel`].

pub mod gate;
pub mod model;
pub mod noise;
pub mod pulses;
pub mod sim;

pub use gate::{parse_angle, Gate, GateSequence};
pub use model::{iswap_phases, CphasePhases, DeviceDoc, DeviceModel, Durations, IswapPhases};
pub use noise::apply_noise;
pub use pulses::{cphase_kraus, cphase_unitary, frame_unitary, iswap_unitary, CphaseKraus};
pub use sim::{
    evolve, gate_ptm, predicted_zi, run_sequence, sample_shots, sequence_ptm, FrameState,
};
