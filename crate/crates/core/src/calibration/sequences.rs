//! Tune-up pulse sequences S1–S12, built chronologically.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::device::{Gate, GateSequence};

fn seq() -> GateSequence {
    GateSequence::new()
}

/// Ramsey readout pulse `R_θ(π/2)`.
pub fn r_theta(theta: f64) -> Gate {
    Gate::rtheta(theta, FRAC_PI_2)
}

/// S1: `SWⁿ.Rx(π)`.
pub fn s1(sw: Gate, n: usize) -> GateSequence {
    seq().then(Gate::rx(PI)).then_seq(&seq().then(sw).repeat(n))
}

/// S2: `R_θ(π/2).SW.SW.Rx(π/2)`.
pub fn s2(sw: Gate, theta: f64) -> GateSequence {
    seq().then(Gate::rx(FRAC_PI_2)).then(sw).then(sw).then(r_theta(theta))
}

/// S3 (also S10): `R_θ(π/2).Rx(π/2)`.
pub fn s3(theta: f64) -> GateSequence {
    seq().then(Gate::rx(FRAC_PI_2)).then(r_theta(theta))
}

/// S4: `R_θ(π/2).SW.SW.Rx(π/2).SW.Rx(π)`.
pub fn s4(sw: Gate, theta: f64) -> GateSequence {
    seq()
        .then(Gate::rx(PI))
        .then(sw)
        .then(Gate::rx(FRAC_PI_2))
        .then(sw)
        .then(sw)
        .then(r_theta(theta))
}

/// S5: `R_θ(π/2).Rx(π/2).SW.Rx(π)`.
pub fn s5(sw: Gate, theta: f64) -> GateSequence {
    seq()
        .then(Gate::rx(PI))
        .then(sw)
        .then(Gate::rx(FRAC_PI_2))
        .then(r_theta(theta))
}

/// S6: `CPⁿ.Rx(π).iSWAP.Rx(π)`.
pub fn s6(cp: Gate, n: usize, iswap: &GateSequence) -> GateSequence {
    seq()
        .then(Gate::rx(PI))
        .then_seq(iswap)
        .then(Gate::rx(PI))
        .then_seq(&seq().then(cp).repeat(n))
}

/// `FLIP = iSWAP.Rx(π).iSWAP.Rx(π)`.
pub fn flip(iswap: &GateSequence) -> GateSequence {
    seq()
        .then(Gate::rx(PI))
        .then_seq(iswap)
        .then(Gate::rx(PI))
        .then_seq(iswap)
}

/// S7: `R_θ(π/2).CP.FLIP.CP.Rx(π/2)`.
pub fn s7(cp: Gate, theta: f64, iswap: &GateSequence) -> GateSequence {
    seq()
        .then(Gate::rx(FRAC_PI_2))
        .then(cp)
        .then_seq(&flip(iswap))
        .then(cp)
        .then(r_theta(theta))
}

/// S8: `R_θ(π/2).FLIP.Rx(π/2)`.
pub fn s8(theta: f64, iswap: &GateSequence) -> GateSequence {
    seq()
        .then(Gate::rx(FRAC_PI_2))
        .then_seq(&flip(iswap))
        .then(r_theta(theta))
}

/// S9: `R_θ(π/2).CP.Rx(π/2)`.
pub fn s9(cp: Gate, theta: f64) -> GateSequence {
    seq().then(Gate::rx(FRAC_PI_2)).then(cp).then(r_theta(theta))
}

/// S11: `R_θ(π/2).SW.CP.SW.Rx(π/2)`.
pub fn s11(sw: Gate, cp: Gate, theta: f64) -> GateSequence {
    seq()
        .then(Gate::rx(FRAC_PI_2))
        .then(sw)
        .then(cp)
        .then(sw)
        .then(r_theta(theta))
}

/// S12 is S2 with the same raw SW pulses.
pub fn s12(sw: Gate, theta: f64) -> GateSequence {
    s2(sw, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_matches_written_order() {
        let sw = Gate::Sw {
            length: 2e-7,
            detuning: 0.0,
        };
        assert_eq!(s1(sw, 3).to_string(), "SW(0.0000002,0).SW(0.0000002,0).SW(0.0000002,0).Rx(pi)");
        assert_eq!(s5(sw, 0.5).to_string(), "R[0.5](pi/2).Rx(pi/2).SW(0.0000002,0).Rx(pi)");
    }
}
