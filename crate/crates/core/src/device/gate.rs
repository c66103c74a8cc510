//! Gate labels and sequences.
//!
//! Text notation follows the usual convention of writing the latest gate
//! leftmost, e.g. `R[0.3](pi/2).SW(1.95e-7,0).Rx(pi)`; the empty sequence is `ID`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Gate {
    /// Rotation of the control qubit by `angle` about the equatorial axis at azimuth `axis`.
    Rot { axis: f64, angle: f64 },
    /// Uncorrected iSWAP pulse.
    Sw { length: f64, detuning: f64 },
    /// Uncorrected cPHASE pulse.
    Cp { length: f64, detuning: f64 },
    /// Virtual Z: shift of the control (`delta1`) and hidden (`delta2`) frames.
    FrameShift { delta1: f64, delta2: f64 },
}

impl Gate {
    pub fn rx(angle: f64) -> Gate {
        Gate::Rot { axis: 0.0, angle }
    }

    pub fn ry(angle: f64) -> Gate {
        Gate::Rot {
            axis: FRAC_PI_2,
            angle,
        }
    }

    pub fn rtheta(axis: f64, angle: f64) -> Gate {
        Gate::Rot { axis, angle }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match *self {
            Gate::Rot { axis, angle } if !finite(&[axis, angle]) => {
                validation("rotation parameters must be finite")
            }
            Gate::Sw { length, detuning } | Gate::Cp { length, detuning } => {
                if !(length.is_finite() && length > 0.0) || !detuning.is_finite() {
                    validation(format!("pulse length must be positive and finite: {self}"))
                } else {
                    Ok(())
                }
            }
            Gate::FrameShift { delta1, delta2 } if !finite(&[delta1, delta2]) => {
                validation("frame shifts must be finite")
            }
            _ => Ok(()),
        }
    }
}

fn fmt_angle(x: f64) -> String {
    const NAMED: [(f64, &str); 6] = [
        (PI, "pi"),
        (-PI, "-pi"),
        (FRAC_PI_2, "pi/2"),
        (-FRAC_PI_2, "-pi/2"),
        (2.0 * PI, "2*pi"),
        (-2.0 * PI, "-2*pi"),
    ];
    for (v, s) in NAMED {
        if x == v {
            return s.to_string();
        }
    }
    format!("{x}")
}

/// Parse a number, also accepting `pi`, `pi/n`, `m*pi`, `m*pi/n` with optional sign.
pub fn parse_angle(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let bad = || Error::Validation(format!("cannot parse angle '{s}'"));
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let mult = match num.trim().strip_suffix("pi") {
        Some("") => 1.0,
        Some(m) => m.trim().strip_suffix('*').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    Ok(sign * mult * PI / den)
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rot { axis, angle } if axis == 0.0 => write!(f, "Rx({})", fmt_angle(angle)),
            Gate::Rot { axis, angle } if axis == FRAC_PI_2 => write!(f, "Ry({})", fmt_angle(angle)),
            Gate::Rot { axis, angle } => write!(f, "R[{}]({})", fmt_angle(axis), fmt_angle(angle)),
            Gate::Sw { length, detuning } => write!(f, "SW({length},{detuning})"),
            Gate::Cp { length, detuning } => write!(f, "CP({length},{detuning})"),
            Gate::FrameShift { delta1, delta2 } => {
                write!(f, "Z({},{})", fmt_angle(delta1), fmt_angle(delta2))
            }
        }
    }
}

fn args(s: &str, name: &str, n: usize) -> Result<Vec<f64>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Validation(format!("{name}: expected parenthesized arguments in '{s}'")))?;
    let v: Vec<f64> = inner.split(',').map(parse_angle).collect::<Result<_>>()?;
    if v.len() != n {
        return validation(format!("{name} takes {n} argument(s), got {}", v.len()));
    }
    Ok(v)
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gate> {
        let s = s.trim();
        let g = if let Some(rest) = s.strip_prefix("Rx") {
            Gate::rx(args(rest, "Rx", 1)?[0])
        } else if let Some(rest) = s.strip_prefix("Ry") {
            Gate::ry(args(rest, "Ry", 1)?[0])
        } else if let Some(rest) = s.strip_prefix("R[") {
            let (axis, tail) = rest
                .split_once(']')
                .ok_or_else(|| Error::Validation(format!("unterminated axis in '{s}'")))?;
            Gate::rtheta(parse_angle(axis)?, args(tail, "R", 1)?[0])
        } else if let Some(rest) = s.strip_prefix("SW") {
            let a = args(rest, "SW", 2)?;
            Gate::Sw {
                length: a[0],
                detuning: a[1],
            }
        } else if let Some(rest) = s.strip_prefix("CP") {
            let a = args(rest, "CP", 2)?;
            Gate::Cp {
                length: a[0],
                detuning: a[1],
            }
        } else if let Some(rest) = s.strip_prefix('Z') {
            let a = args(rest, "Z", 2)?;
            Gate::FrameShift {
                delta1: a[0],
                delta2: a[1],
            }
        } else {
            return validation(format!("unknown gate '{s}'"));
        };
        g.validate()?;
        Ok(g)
    }
}

/// Gates in chronological order (first applied first).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateSequence {
    pub gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new() -> Self {
        GateSequence::default()
    }

    /// Build from gates listed chronologically.
    pub fn from_chronological(gates: Vec<Gate>) -> Self {
        GateSequence { gates }
    }

    /// Append a gate applied after everything so far.
    pub fn then(mut self, g: Gate) -> Self {
        self.gates.push(g);
        self
    }

    pub fn then_seq(mut self, s: &GateSequence) -> Self {
        self.gates.extend_from_slice(&s.gates);
        self
    }

    pub fn repeat(&self, n: usize) -> Self {
        let mut gates = Vec::with_capacity(self.gates.len() * n);
        for _ in 0..n {
            gates.extend_from_slice(&self.gates);
        }
        GateSequence { gates }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(Gate::validate)
    }
}

impl fmt::Display for GateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gates.is_empty() {
            return write!(f, "ID");
        }
        let parts: Vec<String> = self.gates.iter().rev().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for GateSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ID" {
            return Ok(GateSequence::new());
        }
        // Split on '.' outside parentheses/brackets; numbers may contain '.'.
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                '.' if depth == 0 => {
                    parts.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&s[start..]);
        let mut gates = Vec::with_capacity(parts.len());
        for p in parts.iter().rev() {
            if p.trim() == "ID" {
                continue;
            }
            gates.push(p.parse()?);
        }
        Ok(GateSequence { gates })
    }
}

impl Serialize for GateSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GateSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_is_right_to_left() {
        let seq = GateSequence::new()
            .then(Gate::rx(PI))
            .then(Gate::Sw {
                length: 1.95e-7,
                detuning: 0.0,
            });
        assert_eq!(seq.to_string(), "SW(0.000000195,0).Rx(pi)");
        let back: GateSequence = seq.to_string().parse().unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn parse_round_trip_arbitrary_values() {
        let seq = GateSequence::from_chronological(vec![
            Gate::rtheta(0.123456789, FRAC_PI_2),
            Gate::FrameShift {
                delta1: -0.7,
                delta2: 0.0,
            },
            Gate::Cp {
                length: 2.05e-7,
                detuning: -1234.5,
            },
            Gate::ry(-FRAC_PI_2),
        ]);
        let back: GateSequence = seq.to_string().parse().unwrap();
        assert_eq!(back, seq);
        let json = serde_json::to_string(&seq).unwrap();
        assert_eq!(serde_json::from_str::<GateSequence>(&json).unwrap(), seq);
    }

    #[test]
    fn angle_forms() {
        assert_eq!(parse_angle("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert!((parse_angle("3*pi/2").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn malformed_rejected() {
        assert!("SW(-1,0)".parse::<GateSequence>().is_err());
        assert!("Q(1)".parse::<GateSequence>().is_err());
        assert!("Rx(1,2)".parse::<GateSequence>().is_err());
        assert_eq!("ID".parse::<GateSequence>().unwrap().len(), 0);
    }
}
