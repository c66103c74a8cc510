//! Simulation and analysis toolkit for superconducting processors in which some
//! qubits are "hidden": they have no drive line or readout and are reached only
//! through two-qubit gates with a neighbouring control qubit.
//!
//! Modules:
//! - [`qcore`]: Pauli transfer matrices, Choi matrices, CPTP projection.
//! - [`controllability`]: Lie-closure and measurement-reachability checks.
//! - [`device`]: simulated control + hidden qubit pair with imperfect gates.
//! - [`calibration`]: the iSWAP / cPHASE tune-up protocol against the simulator.
//! - [`tomography`]: least-squares and self-consistent process tomography.
//! - [`qvolume`]: grid metrics, routing and quantum-volume estimates.

pub mod error;
pub mod controllability;
pub mod calibration;
pub mod device;
pub mod qcore;
pub mod qvolume;
pub mod tomography;

pub use error::{Error, Result};
pub use qcore::{ComplexMatrix, Pauli, PauliOperator, ProcessMatrix, C64};
