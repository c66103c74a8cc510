//! Ground-truth parameters of the simulated control + hidden qubit pair.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::qcore::linalg::wrap_phase;

/// Phases of an uncorrected SW pulse at resonance and nominal length:
/// `⟨10|U|01⟩ = e^{iγ1}`, `⟨01|U|10⟩ = e^{iγ2}`, `⟨11|U|11⟩ = e^{iγ3}` (control first).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IswapPhases {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
}

/// Phases of computational states after a CP pulse, relative to `|00⟩`.
/// `gamma01`: control excited; `gamma10`: hidden excited; `gamma11`: both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CphasePhases {
    pub gamma01: f64,
    pub gamma10: f64,
    pub gamma11: f64,
}

impl CphasePhases {
    /// Two-qubit phase `γ11 − γ01 − γ10`, wrapped.
    pub fn delta(&self) -> f64 {
        wrap_phase(self.gamma11 - self.gamma01 - self.gamma10)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Durations {
    pub single_qubit: f64,
    /// Nominal SW length, used as the starting guess for calibration.
    pub iswap: f64,
    /// Nominal CP length, used as the starting guess for calibration.
    pub cphase: f64,
}

/// Hardware data carried for reference only; nothing in the simulation reads it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceDoc {
    pub control_frequency_ghz: f64,
    pub hidden_frequency_ghz: f64,
    pub coupler_frequency_ghz: f64,
    pub control_anharmonicity_mhz: f64,
    pub hidden_anharmonicity_mhz: f64,
}

impl Default for DeviceDoc {
    fn default() -> Self {
        DeviceDoc {
            control_frequency_ghz: 6.19,
            hidden_frequency_ghz: 5.09,
            coupler_frequency_ghz: 7.7,
            control_anharmonicity_mhz: -290.0,
            hidden_anharmonicity_mhz: -310.0,
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceModel {
    pub t1_control: f64,
    pub t2_control: f64,
    pub t1_hidden: f64,
    pub t2_hidden: f64,
    /// SW exchange coupling (rad/s); resonant transfer time is π/(2g).
    pub g_iswap: f64,
    /// CP coupling in the {|11⟩, |hidden=2⟩} subspace (rad/s); 2π time is π/g.
    pub g_cphase: f64,
    pub true_iswap: IswapPhases,
    pub true_cphase: CphasePhases,
    pub durations: Durations,
    /// `γ3 + π − γ1 − γ2`, kept explicitly and checked against `true_iswap`.
    pub beta: f64,
    /// Switch off to simulate unitary (plus leakage) dynamics only.
    #[serde(default = "default_true")]
    pub decoherence: bool,
    #[serde(default)]
    pub doc: DeviceDoc,
}

impl Default for DeviceModel {
    fn default() -> Self {
        let gamma01 = 0.2;
        let gamma10 = -0.15;
        DeviceModel {
            t1_control: 30e-6,
            t2_control: 30e-6,
            t1_hidden: 60e-6,
            t2_hidden: 20e-6,
            g_iswap: PI / (2.0 * 195e-9),
            g_cphase: PI / 205e-9,
            true_iswap: iswap_phases(0.3, 0.7, 0.05),
            true_cphase: CphasePhases {
                gamma01,
                gamma10,
                gamma11: wrap_phase(PI + 0.3 + gamma01 + gamma10),
            },
            durations: Durations {
                single_qubit: 50e-9,
                iswap: 200e-9,
                cphase: 200e-9,
            },
            beta: 0.05,
            decoherence: true,
            doc: DeviceDoc::default(),
        }
    }
}

/// `γ3` from the relation `γ3 + π = γ1 + γ2 + β`.
pub fn iswap_phases(gamma1: f64, gamma2: f64, beta: f64) -> IswapPhases {
    IswapPhases {
        gamma1: wrap_phase(gamma1),
        gamma2: wrap_phase(gamma2),
        gamma3: wrap_phase(gamma1 + gamma2 + beta - PI),
    }
}

impl DeviceModel {
    /// Same device without decoherence.
    pub fn noiseless() -> Self {
        DeviceModel {
            decoherence: false,
            ..DeviceModel::default()
        }
    }

    /// Coherence times chosen so that the calibrated gates have average
    /// fidelities in the 0.97–0.99 range seen experimentally.
    pub fn experimental_regime() -> Self {
        DeviceModel {
            t1_control: 15e-6,
            t2_control: 15e-6,
            t1_hidden: 30e-6,
            t2_hidden: 10e-6,
            durations: Durations {
                single_qubit: 120e-9,
                iswap: 200e-9,
                cphase: 200e-9,
            },
            ..DeviceModel::default()
        }
    }

    pub fn set_iswap_phases(&mut self, gamma1: f64, gamma2: f64, beta: f64) {
        self.true_iswap = iswap_phases(gamma1, gamma2, beta);
        self.beta = beta;
    }

    /// Set control/hidden single-qubit phases and the two-qubit phase `δ = γ11 − γ01 − γ10`.
    pub fn set_cphase_phases(&mut self, gamma01: f64, gamma10: f64, delta: f64) {
        self.true_cphase = CphasePhases {
            gamma01: wrap_phase(gamma01),
            gamma10: wrap_phase(gamma10),
            gamma11: wrap_phase(delta + gamma01 + gamma10),
        };
    }

    /// Resonant SW length for a full |10⟩ ↔ |01⟩ transfer.
    pub fn ideal_iswap_length(&self) -> f64 {
        PI / (2.0 * self.g_iswap)
    }

    /// Resonant CP length for a full 2π rotation.
    pub fn ideal_cphase_length(&self) -> f64 {
        PI / self.g_cphase
    }

    pub fn validate(&self) -> Result<()> {
        let times = [
            ("t1_control", self.t1_control),
            ("t2_control", self.t2_control),
            ("t1_hidden", self.t1_hidden),
            ("t2_hidden", self.t2_hidden),
            ("durations.single_qubit", self.durations.single_qubit),
            ("durations.iswap", self.durations.iswap),
            ("durations.cphase", self.durations.cphase),
        ];
        for (name, t) in times {
            if !(t.is_finite() && t > 0.0) {
                return validation(format!("{name} must be a positive time, got {t}"));
            }
        }
        for (name, g) in [("g_iswap", self.g_iswap), ("g_cphase", self.g_cphase)] {
            if !(g.is_finite() && g > 0.0) {
                return validation(format!("{name} must be positive, got {g}"));
            }
        }
        check_t2(self.t1_control, self.t2_control, "control")?;
        check_t2(self.t1_hidden, self.t2_hidden, "hidden")?;
        let phases = [
            ("gamma1", self.true_iswap.gamma1),
            ("gamma2", self.true_iswap.gamma2),
            ("gamma3", self.true_iswap.gamma3),
            ("gamma01", self.true_cphase.gamma01),
            ("gamma10", self.true_cphase.gamma10),
            ("gamma11", self.true_cphase.gamma11),
            ("beta", self.beta),
        ];
        for (name, p) in phases {
            if !(p.is_finite() && p > -PI && p <= PI) {
                return validation(format!("{name} = {p} must lie in (-pi, pi]"));
            }
        }
        let ip = &self.true_iswap;
        let mismatch = wrap_phase(ip.gamma3 + PI - ip.gamma1 - ip.gamma2 - self.beta);
        if mismatch.abs() > 1e-9 {
            return validation(format!(
                "beta inconsistent with gamma1..3 (gamma3 + pi - gamma1 - gamma2 - beta = {mismatch:.3e})"
            ));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: DeviceModel = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        DeviceModel::from_json(&std::fs::read_to_string(path)?)
    }
}

pub(crate) fn check_t2(t1: f64, t2: f64, which: &str) -> Result<()> {
    if t2 > 2.0 * t1 * (1.0 + 1e-12) {
        return validation(format!("{which} qubit: T2 = {t2} exceeds 2 T1 = {}", 2.0 * t1));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid_and_round_trips() {
        let m = DeviceModel::default();
        m.validate().unwrap();
        let back = DeviceModel::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(m, back);
        DeviceModel::experimental_regime().validate().unwrap();
    }

    #[test]
    fn default_two_qubit_phase_is_off_target() {
        let d = DeviceModel::default().true_cphase.delta();
        assert!((d - wrap_phase(PI + 0.3)).abs() < 1e-12);
    }

    #[test]
    fn invalid_models_rejected() {
        let mut m = DeviceModel::default();
        m.t2_hidden = 3.0 * m.t1_hidden;
        assert!(m.validate().is_err());
        let mut m = DeviceModel::default();
        m.beta = 0.2;
        assert!(m.validate().is_err());
        let mut m = DeviceModel::default();
        m.t1_control = -1.0;
        assert!(m.validate().is_err());
    }

    #[test]
    fn decoherence_flag_defaults_on() {
        let mut v: serde_json::Value = serde_json::to_value(DeviceModel::default()).unwrap();
        v.as_object_mut().unwrap().remove("decoherence");
        v.as_object_mut().unwrap().remove("doc");
        let m: DeviceModel = serde_json::from_value(v).unwrap();
        assert!(m.decoherence);
    }
}
