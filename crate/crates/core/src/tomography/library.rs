//! Preparation and tomography sequences built from the four characterized gates.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::calibration::CalibratedGateSet;
use crate::device::{Gate, GateSequence};
use crate::qcore::gates;
use crate::qcore::linalg::ComplexMatrix;

/// The gates whose processes are estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TomoGate {
    X90,
    Y90,
    #[serde(rename = "iSWAP")]
    Iswap,
    #[serde(rename = "cPHASE")]
    Cphase,
}

impl TomoGate {
    pub const ALL: [TomoGate; 4] = [TomoGate::X90, TomoGate::Y90, TomoGate::Iswap, TomoGate::Cphase];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn ideal_unitary(self) -> ComplexMatrix {
        match self {
            TomoGate::X90 => gates::rx(FRAC_PI_2),
            TomoGate::Y90 => gates::ry(FRAC_PI_2),
            TomoGate::Iswap => gates::iswap(),
            TomoGate::Cphase => gates::cphase(),
        }
    }

    /// Pulses realizing this gate with a calibrated gate set.
    pub fn device_gates(self, set: &CalibratedGateSet) -> GateSequence {
        match self {
            TomoGate::X90 => GateSequence::new().then(Gate::rx(FRAC_PI_2)),
            TomoGate::Y90 => GateSequence::new().then(Gate::ry(FRAC_PI_2)),
            TomoGate::Iswap => set.iswap_gates(),
            TomoGate::Cphase => set.cphase_gates(),
        }
    }
}

impl fmt::Display for TomoGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TomoGate::X90 => "Rx(pi/2)",
            TomoGate::Y90 => "Ry(pi/2)",
            TomoGate::Iswap => "iSWAP",
            TomoGate::Cphase => "cPHASE",
        })
    }
}

/// A word over [`TomoGate`], chronological, with its display label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomoSequence {
    pub label: String,
    pub gates: Vec<TomoGate>,
}

impl TomoSequence {
    pub fn to_device(&self, set: &CalibratedGateSet) -> GateSequence {
        self.gates
            .iter()
            .fold(GateSequence::new(), |s, g| s.then_seq(&g.device_gates(set)))
    }

    /// Ideal unitary `G_m ⋯ G_1`.
    pub fn ideal_unitary(&self) -> ComplexMatrix {
        self.gates
            .iter()
            .fold(ComplexMatrix::identity(4, 4), |u, g| g.ideal_unitary() * u)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceLibrary {
    pub preparations: Vec<TomoSequence>,
    pub tomography: Vec<TomoSequence>,
}

#[derive(Clone, Copy)]
enum Single {
    Id,
    XPi,
    X90,
    Y90,
}

impl Single {
    fn gates(self) -> Vec<TomoGate> {
        match self {
            Single::Id => vec![],
            // Rx(π) is realized as two Rx(π/2) pulses so that every
            // preparation is a word in the characterized gates.
            Single::XPi => vec![TomoGate::X90, TomoGate::X90],
            Single::X90 => vec![TomoGate::X90],
            Single::Y90 => vec![TomoGate::Y90],
        }
    }

    fn label(self) -> &'static str {
        match self {
            Single::Id => "ID",
            Single::XPi => "Rx(pi)",
            Single::X90 => "Rx(pi/2)",
            Single::Y90 => "Ry(pi/2)",
        }
    }
}

/// Label of a chronological word, written right to left.
fn label_of(parts: &[&str]) -> String {
    let parts: Vec<&str> = parts.iter().rev().copied().filter(|p| *p != "ID").collect();
    if parts.is_empty() {
        "ID".into()
    } else {
        parts.join(".")
    }
}

/// The 16 preparations `A2.iSWAP.A1` (no iSWAP when `A1 = ID`) and the 15
/// tomography sequences, in a fixed order.
pub fn build_sequences() -> SequenceLibrary {
    use TomoGate::*;
    let singles = [Single::Id, Single::XPi, Single::X90, Single::Y90];
    let mut preparations = Vec::with_capacity(16);
    for a1 in singles {
        for a2 in singles {
            let mut gates = a1.gates();
            let label = if matches!(a1, Single::Id) {
                gates.extend(a2.gates());
                label_of(&[a2.label()])
            } else {
                gates.push(Iswap);
                gates.extend(a2.gates());
                label_of(&[a1.label(), "iSWAP", a2.label()])
            };
            preparations.push(TomoSequence { label, gates });
        }
    }
    let seq = |gates: Vec<TomoGate>| {
        let names: Vec<String> = gates.iter().map(|g| g.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        TomoSequence {
            label: label_of(&refs),
            gates,
        }
    };
    let mut tomography = vec![seq(vec![])];
    for r in [X90, Y90] {
        tomography.push(seq(vec![r]));
    }
    tomography.push(seq(vec![Iswap]));
    for r in [X90, Y90] {
        tomography.push(seq(vec![Cphase, r]));
    }
    for r in [X90, Y90] {
        tomography.push(seq(vec![Iswap, r]));
    }
    for r in [X90, Y90] {
        tomography.push(seq(vec![Cphase, Iswap, r]));
    }
    for j in [X90, Y90] {
        for k in [X90, Y90] {
            tomography.push(seq(vec![j, Iswap, k]));
        }
    }
    tomography.push(seq(vec![X90, Cphase, X90]));
    SequenceLibrary {
        preparations,
        tomography,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::controllability::reach::conjugate_by_word;
    use crate::qcore::pauli::{pauli_coordinates, Pauli, PauliOperator};
    use std::collections::BTreeSet;

    #[test]
    fn sizes_and_labels() {
        let lib = build_sequences();
        assert_eq!(lib.preparations.len(), 16);
        assert_eq!(lib.tomography.len(), 15);
        assert_eq!(lib.preparations[0].label, "ID");
        assert!(lib.preparations[0].gates.is_empty());
        assert_eq!(lib.preparations[7].label, "Ry(pi/2).iSWAP.Rx(pi)");
        assert_eq!(lib.tomography[8].label, "Rx(pi/2).iSWAP.cPHASE");
        assert_eq!(lib.tomography[14].label, "Rx(pi/2).cPHASE.Rx(pi/2)");
    }

    #[test]
    fn tomography_reaches_all_paulis() {
        let native = PauliOperator::new(Pauli::Z, Pauli::I);
        let mut seen = BTreeSet::new();
        for s in build_sequences().tomography {
            let us: Vec<ComplexMatrix> = s.gates.iter().map(|g| g.ideal_unitary()).collect();
            let refs: Vec<&ComplexMatrix> = us.iter().collect();
            let op = conjugate_by_word(&native, &refs);
            let coords = pauli_coordinates(&op);
            let hits: Vec<usize> = (0..16).filter(|&i| coords[i].abs() > 1e-9).collect();
            assert_eq!(hits.len(), 1, "{} is not a single Pauli", s.label);
            assert!((coords[hits[0]].abs() - 1.0).abs() < 1e-12);
            assert_ne!(hits[0], 0);
            seen.insert(hits[0]);
        }
        assert_eq!(seen.len(), 15);
    }
}
