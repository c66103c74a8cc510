//! Complex linear algebra and two-qubit channel representations.

pub mod cptp;
pub mod fit;
pub mod gates;
pub mod gauge;
pub mod linalg;
pub mod pauli;
pub mod ptm;

pub use cptp::{project_cptp, project_cptp_with, CPTP_MAX_ITER, CPTP_TOL};
pub use linalg::{ComplexMatrix, C64};
pub use pauli::{Pauli, PauliOperator};
pub use ptm::{
    average_fidelity, average_fidelity_ptm, choi_to_ptm, compose, process_fidelity,
    ptm_from_unitary, ptm_to_choi, ProcessMatrix,
};
