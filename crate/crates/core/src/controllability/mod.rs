//! Universality and tomographic completeness of control + hidden qubit gate sets.

pub mod lie;
pub mod reach;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::qcore::gates;
pub use lie::{is_fully_controllable, lie_closure, GeneratorSpec, HermitianGenerator, RANK_TOL};
pub use reach::{
    full_natives, hidden_natives, measurement_reachability, NamedGate, ReachabilityReport, Witness,
    DEFAULT_MAX_DEPTH,
};

/// π/2 rotations about x and y on the control qubit.
pub fn control_rotations() -> Vec<NamedGate> {
    vec![
        NamedGate::new("Rx", gates::rx(FRAC_PI_2)),
        NamedGate::new("Ry", gates::ry(FRAC_PI_2)),
    ]
}

/// π/2 rotations on both qubits.
pub fn full_rotations() -> Vec<NamedGate> {
    let mut v = vec![
        NamedGate::new("Rx1", gates::rx(FRAC_PI_2)),
        NamedGate::new("Ry1", gates::ry(FRAC_PI_2)),
    ];
    v.push(NamedGate::new("Rx2", gates::rotation_hidden(0.0, FRAC_PI_2)));
    v.push(NamedGate::new("Ry2", gates::rotation_hidden(FRAC_PI_2, FRAC_PI_2)));
    v
}

pub fn two_qubit_gate(name: &str) -> Option<NamedGate> {
    let u = match name {
        "iSWAP" => gates::iswap(),
        "cPHASE" => gates::cphase(),
        "SWAP" => gates::swap(),
        "sqrtSWAP" => gates::sqrt_swap(),
        _ => return None,
    };
    Some(NamedGate::new(name, u))
}

fn hidden_set(two_qubit: &[&str]) -> Vec<NamedGate> {
    let mut v = control_rotations();
    v.extend(two_qubit.iter().map(|n| two_qubit_gate(n).expect("known gate")));
    v
}

/// Reachability for control-qubit rotations plus the named two-qubit gates,
/// measuring only the control qubit.
pub fn hidden_reachability(two_qubit: &[&str], max_depth: usize) -> ReachabilityReport {
    measurement_reachability(&hidden_set(two_qubit), &hidden_natives(), max_depth)
        .expect("built-in gates are unitary")
}

/// √SWAP alone, and every pair from {cPHASE, iSWAP, SWAP}, make the hidden
/// pair tomographically complete.
pub fn verify_sqrt_swap_completeness() -> bool {
    let cases: [&[&str]; 4] = [
        &["sqrtSWAP"],
        &["cPHASE", "iSWAP"],
        &["cPHASE", "SWAP"],
        &["iSWAP", "SWAP"],
    ];
    cases
        .iter()
        .all(|c| hidden_reachability(c, DEFAULT_MAX_DEPTH).is_complete())
}

/// One checked statement of the claim battery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
    pub detail: String,
}

impl Claim {
    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }
}

/// Lie-algebra universality claims.
pub fn controllability_claims() -> Vec<Claim> {
    use lie::sets::*;
    let cases: Vec<(&str, Vec<HermitianGenerator>, bool)> = vec![
        ("full control + ZZ", with(full_drives(), &[zz()]), true),
        ("full control + XX+YY", with(full_drives(), &[xy()]), true),
        ("full control + XX+YY+ZZ", with(full_drives(), &[heisenberg()]), true),
        ("hidden + ZZ", with(control_drives(), &[zz()]), false),
        ("hidden + XX+YY", with(control_drives(), &[xy()]), false),
        ("hidden + ZZ, XX+YY", with(control_drives(), &[zz(), xy()]), true),
        ("hidden + XX+YY+ZZ", with(control_drives(), &[heisenberg()]), true),
    ];
    cases
        .into_iter()
        .map(|(name, gens, expected)| {
            let (dim, _) = lie_closure(&gens, 15).expect("max_dim is 15");
            Claim {
                name: format!("universal: {name}"),
                expected,
                observed: dim == 15,
                detail: format!("Lie algebra dimension {dim}"),
            }
        })
        .collect()
}

/// Measurement-reachability claims.
pub fn reachability_claims(max_depth: usize) -> Vec<Claim> {
    let mut out = Vec::new();
    let full = measurement_reachability(&full_rotations(), &full_natives(), max_depth)
        .expect("built-in gates are unitary");
    out.push(reach_claim("full control and readout, single-qubit rotations", &full, true));
    let cases: [(&[&str], bool); 7] = [
        (&["iSWAP", "cPHASE"], true),
        (&["cPHASE"], false),
        (&["iSWAP"], false),
        (&["SWAP"], false),
        (&["sqrtSWAP"], true),
        (&["cPHASE", "SWAP"], true),
        (&["iSWAP", "SWAP"], true),
    ];
    for (set, expected) in cases {
        let report = hidden_reachability(set, max_depth);
        out.push(reach_claim(&format!("hidden, rotations + {}", set.join(" + ")), &report, expected));
    }
    out
}

fn reach_claim(name: &str, r: &ReachabilityReport, expected_complete: bool) -> Claim {
    let detail = if r.unreachable.is_empty() {
        format!("span {}", r.span_dimension)
    } else {
        format!(
            "span {}, unreachable {}",
            r.span_dimension,
            r.unreachable.iter().cloned().collect::<Vec<_>>().join(" ")
        )
    };
    Claim {
        name: format!("complete: {name}"),
        expected: expected_complete,
        observed: r.is_complete(),
        detail,
    }
}
