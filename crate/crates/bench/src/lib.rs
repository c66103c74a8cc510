//! Fixtures shared by the benchmarks.

use hiddenq::controllability::lie::sets;
use hiddenq::controllability::HermitianGenerator;
use hiddenq::qcore::ptm::ProcessMatrix;
use hiddenq::tomography::{synthetic_dataset, GateSetEstimate, TomoGate, TomographyDataset};

/// Ideal iSWAP mixed with 3% depolarizing noise.
pub fn noisy_iswap() -> ProcessMatrix {
    let ideal = GateSetEstimate::ideal();
    ideal.get(TomoGate::Iswap).lerp(&ProcessMatrix::depolarizing(), 0.03)
}

/// A slightly non-physical PTM, the typical input of the CPTP projection.
pub fn perturbed_ptm() -> ProcessMatrix {
    let mut m = *noisy_iswap().matrix();
    for i in 0..16 {
        for j in 0..16 {
            m[(i, j)] += 0.01 * (((7 * i + 3 * j) % 11) as f64 - 5.0) / 5.0;
        }
    }
    ProcessMatrix::from_matrix(m)
}

/// Noise-free data for [`noisy_iswap`] with ideal preparation and readout.
pub fn iswap_dataset() -> TomographyDataset {
    synthetic_dataset(&GateSetEstimate::ideal(), &noisy_iswap(), Some(TomoGate::Iswap))
}

/// Control-qubit drives plus both couplings: a universal set.
pub fn hidden_generators() -> Vec<HermitianGenerator> {
    sets::with(sets::control_drives(), &[sets::zz(), sets::xy()])
}
