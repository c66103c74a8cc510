//! The unobservable rotation of all gates about the hidden qubit's z axis.
//!
//! Both |00⟩ and `σz ⊗ 1` commute with `R_φ = exp(iφ(1⊗σz)/2)`, so replacing
//! every gate `G` by `R_φ† G R_φ` leaves all outcomes unchanged.

use std::f64::consts::PI;

use super::fit::golden_section_max;
use super::gates::rz_hidden;
use super::linalg::wrap_phase;
use super::ptm::{process_fidelity, ptm_from_unitary_unchecked, ProcessMatrix};

/// PTM of the superoperator `ρ ↦ R_φ ρ R_φ†`.
pub fn hidden_z_ptm(phi: f64) -> ProcessMatrix {
    // exp(iφσz/2) = rz(−φ)
    ptm_from_unitary_unchecked(&rz_hidden(-phi))
}

/// `R_φ⁻¹ ∘ P ∘ R_φ`.
pub fn conjugate_hidden_z(p: &ProcessMatrix, phi: f64) -> ProcessMatrix {
    let r = hidden_z_ptm(phi);
    r.transpose() * *p * r
}

/// φ ∈ (−π, π] maximizing `Σ F_pro(R_φ⁻¹ P_k R_φ, ideal_k)`.
///
/// The objective is a trigonometric polynomial of degree ≤ 2 in φ; a coarse
/// grid locates the global maximum, golden-section search refines it.
pub fn best_hidden_gauge(pairs: &[(ProcessMatrix, ProcessMatrix)]) -> f64 {
    let objective = |phi: f64| -> f64 {
        pairs
            .iter()
            .map(|(p, ideal)| process_fidelity(&conjugate_hidden_z(p, phi), ideal))
            .sum()
    };
    const GRID: usize = 72;
    let step = 2.0 * PI / GRID as f64;
    let (mut best, mut best_val) = (0.0, f64::NEG_INFINITY);
    for i in 0..GRID {
        let phi = -PI + step * (i as f64 + 1.0);
        let v = objective(phi);
        if v > best_val {
            best = phi;
            best_val = v;
        }
    }
    let phi = golden_section_max(objective, best - step, best + step, 1e-10);
    let phi = wrap_phase(phi);
    // Keep the exact zero when the input is already aligned.
    if objective(0.0) >= objective(phi) {
        0.0
    } else {
        phi
    }
}

/// Average fidelity after optimizing the hidden-qubit gauge for a single gate.
pub fn gauge_optimized_fidelity(p: &ProcessMatrix, ideal: &ProcessMatrix) -> (f64, f64) {
    let phi = best_hidden_gauge(&[(*p, *ideal)]);
    let f = process_fidelity(&conjugate_hidden_z(p, phi), ideal);
    (phi, (4.0 * f + 1.0) / 5.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::gates::{cphase, iswap, rx};
    use crate::qcore::ptm::ptm_from_unitary;

    #[test]
    fn injected_rotation_is_undone() {
        let ideals: Vec<ProcessMatrix> = [rx(PI / 2.0), iswap(), cphase()]
            .iter()
            .map(|u| ptm_from_unitary(u).unwrap())
            .collect();
        let pairs: Vec<_> = ideals.iter().map(|p| (conjugate_hidden_z(p, 0.7), *p)).collect();
        let phi = best_hidden_gauge(&pairs);
        assert!((phi + 0.7).abs() < 1e-6, "{phi}");
    }

    #[test]
    fn aligned_input_gives_zero() {
        let p = ptm_from_unitary(&iswap()).unwrap();
        let (phi, f) = gauge_optimized_fidelity(&p, &p);
        assert_eq!(phi, 0.0);
        assert!((f - 1.0).abs() < 1e-12);
    }
}
