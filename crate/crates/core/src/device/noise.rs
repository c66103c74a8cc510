//! Per-qubit amplitude damping and pure dephasing.

use super::model::{check_t2, DeviceModel};
use crate::error::{validation, Result};
use crate::qcore::linalg::{hermiticity_deviation, min_eigenvalue, trace, ComplexMatrix};

/// Damping parameters for one qubit over one interval.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QubitDecay {
    /// Excited-state decay probability `1 − e^{−t/T1}`.
    pub gamma: f64,
    /// Coherence factor `e^{−t/T2}` (amplitude damping and dephasing combined).
    pub coherence: f64,
}

impl QubitDecay {
    pub fn new(t1: f64, t2: f64, duration: f64) -> Self {
        QubitDecay {
            gamma: 1.0 - (-duration / t1).exp(),
            coherence: (-duration / t2).exp(),
        }
    }
}

/// Apply the damping of the qubit at bit `mask` (2 = control, 1 = hidden) in place.
fn damp(rho: &mut ComplexMatrix, mask: usize, d: QubitDecay) {
    let keep = 1.0 - d.gamma;
    let mut out = rho.clone();
    for i in 0..4 {
        for j in 0..4 {
            let bi = i & mask != 0;
            let bj = j & mask != 0;
            out[(i, j)] = match (bi, bj) {
                (false, false) => rho[(i, j)] + rho[(i | mask, j | mask)] * d.gamma,
                (true, true) => rho[(i, j)] * keep,
                _ => rho[(i, j)] * d.coherence,
            };
        }
    }
    *rho = out;
}

/// Linear decoherence map; valid on any 4×4 operator, not only states.
pub(crate) fn decohere(rho: &ComplexMatrix, model: &DeviceModel, duration: f64) -> ComplexMatrix {
    if !model.decoherence || duration == 0.0 {
        return rho.clone();
    }
    let mut out = rho.clone();
    damp(&mut out, 2, QubitDecay::new(model.t1_control, model.t2_control, duration));
    damp(&mut out, 1, QubitDecay::new(model.t1_hidden, model.t2_hidden, duration));
    out
}

/// Amplitude damping (rate 1/T1) and pure dephasing (rate 1/T2 − 1/(2 T1)) on
/// both qubits for `duration` seconds. Returns `rho` unchanged on a model with
/// decoherence switched off.
pub fn apply_noise(rho: &ComplexMatrix, model: &DeviceModel, duration: f64) -> Result<ComplexMatrix> {
    check_t2(model.t1_control, model.t2_control, "control")?;
    check_t2(model.t1_hidden, model.t2_hidden, "hidden")?;
    if !(duration.is_finite() && duration >= 0.0) {
        return validation(format!("duration must be non-negative, got {duration}"));
    }
    validate_density(rho)?;
    Ok(decohere(rho, model, duration))
}

pub fn validate_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return validation("density matrix must be 4x4");
    }
    if hermiticity_deviation(rho) > 1e-10 {
        return validation("density matrix is not Hermitian");
    }
    if (trace(rho).re - 1.0).abs() > 1e-10 {
        return validation("density matrix must have unit trace");
    }
    if min_eigenvalue(rho) < -1e-10 {
        return validation("density matrix is not positive semidefinite");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c, frobenius};

    fn basis_state(i: usize) -> ComplexMatrix {
        let mut r = ComplexMatrix::zeros(4, 4);
        r[(i, i)] = c(1.0, 0.0);
        r
    }

    #[test]
    fn zero_duration_is_identity() {
        let m = DeviceModel::default();
        let rho = basis_state(3);
        assert!(frobenius(&(apply_noise(&rho, &m, 0.0).unwrap() - rho)) < 1e-15);
    }

    #[test]
    fn excited_control_decays_exponentially() {
        let m = DeviceModel::default();
        let out = apply_noise(&basis_state(2), &m, m.t1_control).unwrap();
        assert!((out[(2, 2)].re - (-1.0f64).exp()).abs() < 1e-9);
        assert!((trace(&out).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn t2_above_bound_rejected() {
        let mut m = DeviceModel::default();
        m.t2_control = 2.5 * m.t1_control;
        assert!(apply_noise(&basis_state(0), &m, 1e-7).is_err());
    }

    #[test]
    fn invalid_state_rejected() {
        let m = DeviceModel::default();
        assert!(apply_noise(&(basis_state(0) * c(2.0, 0.0)), &m, 1e-7).is_err());
    }
}
