//! Unitaries of the parametric SW and CP pulses and of virtual-Z frame shifts.

use std::f64::consts::FRAC_PI_2;

use super::model::DeviceModel;
use crate::error::{validation, Result};
use crate::qcore::linalg::{cis, diag, expm_hermitian_2x2, ComplexMatrix, C64, ONE, ZERO};

/// State indices, `2·control + hidden`.
pub const S00: usize = 0;
/// Control ground, hidden excited.
pub const S01: usize = 1;
/// Control excited, hidden ground.
pub const S10: usize = 2;
pub const S11: usize = 3;

fn check_length(length: f64, what: &str) -> Result<()> {
    if !(length.is_finite() && length > 0.0) {
        return validation(format!("{what} length must be positive, got {length}"));
    }
    Ok(())
}

/// SW pulse of the given length and drive detuning.
///
/// Exchange dynamics in {|10⟩, |01⟩} with coupling `g_iswap·e^{iφ}` in the
/// drive frame, transformed back to the qubit frame, followed by equal
/// drive-induced z phases `α` on both qubits. At resonance and nominal
/// length this reproduces `(γ1, γ2, γ3)` with `φ = (γ1 − γ2)/2` and
/// `2α = γ1 + γ2 + π`, so `γ1 − γ2` enters only as a hidden-qubit z rotation.
pub fn iswap_unitary(model: &DeviceModel, length: f64, detuning: f64) -> Result<ComplexMatrix> {
    check_length(length, "SW")?;
    let g = model.g_iswap;
    let t = length;
    let ph = &model.true_iswap;
    let phi = (ph.gamma1 - ph.gamma2) / 2.0;
    let alpha = (ph.gamma1 + ph.gamma2) / 2.0 + FRAC_PI_2;
    let ex = expm_hermitian_2x2(detuning / 2.0, cis(phi) * g, -detuning / 2.0, t);
    // Return from the drive frame.
    let w = [cis(detuning * t / 2.0), cis(-detuning * t / 2.0)];
    let idx = [S10, S01];
    let mut u = ComplexMatrix::zeros(4, 4);
    u[(S00, S00)] = ONE;
    u[(S11, S11)] = cis(ph.gamma3);
    for r in 0..2 {
        for c in 0..2 {
            u[(idx[r], idx[c])] = cis(alpha) * w[r] * ex[r][c];
        }
    }
    Ok(u)
}

/// Kraus form of a CP pulse: the non-unitary computational block `k` and the
/// population `leakage` left in the hidden qubit's second excited state.
#[derive(Debug, Clone)]
pub struct CphaseKraus {
    pub k: ComplexMatrix,
    pub leakage: f64,
}

impl CphaseKraus {
    /// Leaked population relaxes incoherently to |01⟩ (hidden 2 → 1).
    pub fn leak_operator(&self) -> ComplexMatrix {
        let mut l = ComplexMatrix::zeros(4, 4);
        l[(S01, S11)] = C64::new(self.leakage.sqrt(), 0.0);
        l
    }
}

/// Rabi rotation in {|11⟩, |hidden 2, control 0⟩} with coupling `g_cphase`.
pub fn cphase_kraus(model: &DeviceModel, length: f64, detuning: f64) -> Result<CphaseKraus> {
    check_length(length, "CP")?;
    let ex = expm_hermitian_2x2(0.0, C64::new(model.g_cphase, 0.0), -detuning, length);
    let a11 = ex[0][0];
    let leakage = ex[1][0].norm_sqr();
    let ph = &model.true_cphase;
    // A resonant 2π rotation contributes −1; γ11 is the total phase at resonance.
    let k = diag(&[
        ONE,
        cis(ph.gamma10),
        cis(ph.gamma01),
        cis(ph.gamma11 - std::f64::consts::PI) * a11,
    ]);
    Ok(CphaseKraus { k, leakage })
}

/// Projected, renormalized CP unitary and its leakage.
pub fn cphase_unitary(model: &DeviceModel, length: f64, detuning: f64) -> Result<(ComplexMatrix, f64)> {
    let kr = cphase_kraus(model, length, detuning)?;
    let mut u = kr.k.clone();
    let z = u[(S11, S11)];
    u[(S11, S11)] = if z.norm() > 1e-300 {
        z / z.norm()
    } else {
        cis(model.true_cphase.gamma11 - std::f64::consts::PI)
    };
    Ok((u, kr.leakage))
}

/// Virtual Z: `|c h⟩ ↦ e^{−i(c δ1 + h δ2)} |c h⟩`.
pub fn frame_unitary(delta1: f64, delta2: f64) -> ComplexMatrix {
    let mut d = [ZERO; 4];
    for (i, v) in d.iter_mut().enumerate() {
        let c = (i >> 1) as f64;
        let h = (i & 1) as f64;
        *v = cis(-(c * delta1 + h * delta2));
    }
    diag(&d)
}
