//! Two-qubit Pauli basis. The control qubit always occupies the first tensor slot,
//! so `ZI` is the native control-qubit measurement operator.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::linalg::{c, kron, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{validation, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Pauli {
        Pauli::ALL[i]
    }

    pub fn matrix(self) -> ComplexMatrix {
        let m = match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        };
        ComplexMatrix::from_fn(2, 2, |i, j| m[i][j])
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Signed two-qubit Pauli operator `sign · (σ_a ⊗ σ_b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    pub label: (Pauli, Pauli),
    pub sign: i8,
}

impl PauliOperator {
    pub fn new(control: Pauli, hidden: Pauli) -> Self {
        PauliOperator {
            label: (control, hidden),
            sign: 1,
        }
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = if sign < 0 { -1 } else { 1 };
        self
    }

    /// Basis index `4·a + b` in the ordering {I,X,Y,Z}⊗{I,X,Y,Z}.
    pub fn index(&self) -> usize {
        4 * self.label.0.index() + self.label.1.index()
    }

    pub fn from_index(idx: usize) -> Self {
        assert!(idx < 16, "Pauli index out of range");
        PauliOperator::new(Pauli::from_index(idx / 4), Pauli::from_index(idx % 4))
    }

    pub fn is_identity(&self) -> bool {
        self.index() == 0
    }

    pub fn unsigned(&self) -> Self {
        PauliOperator {
            label: self.label,
            sign: 1,
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let m = pauli_basis()[self.index()].clone();
        if self.sign < 0 {
            -m
        } else {
            m
        }
    }

    /// Label without sign, e.g. `"ZI"`.
    pub fn name(&self) -> String {
        format!("{}{}", self.label.0.symbol(), self.label.1.symbol())
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", self.name())
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let parse = |ch: char| match ch.to_ascii_uppercase() {
            'I' | '1' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => validation(format!("unknown Pauli symbol '{other}'")),
        };
        let chars: Vec<char> = rest.chars().collect();
        if chars.len() != 2 {
            return validation(format!("Pauli label '{s}' must have two symbols"));
        }
        Ok(PauliOperator::new(parse(chars[0])?, parse(chars[1])?).with_sign(sign))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The 16 two-qubit Pauli matrices, indexed `4·control + hidden`.
pub fn pauli_basis() -> &'static [ComplexMatrix; 16] {
    static BASIS: OnceLock<[ComplexMatrix; 16]> = OnceLock::new();
    BASIS.get_or_init(|| {
        std::array::from_fn(|k| kron(&Pauli::from_index(k / 4).matrix(), &Pauli::from_index(k % 4).matrix()))
    })
}

pub fn pauli_labels() -> [String; 16] {
    std::array::from_fn(|k| PauliOperator::from_index(k).name())
}

/// Single-qubit operator on the control qubit, `A ⊗ 1`.
pub fn on_control(a: &ComplexMatrix) -> ComplexMatrix {
    kron(a, &Pauli::I.matrix())
}

/// Single-qubit operator on the hidden qubit, `1 ⊗ A`.
pub fn on_hidden(a: &ComplexMatrix) -> ComplexMatrix {
    kron(&Pauli::I.matrix(), a)
}

/// Real Pauli coordinates `v_k = Tr[P_k A] / 4` of a Hermitian 4x4 matrix.
pub fn pauli_coordinates(a: &ComplexMatrix) -> [f64; 16] {
    let basis = pauli_basis();
    std::array::from_fn(|k| {
        let mut acc = ZERO;
        for r in 0..4 {
            for col in 0..4 {
                acc += basis[k][(r, col)] * a[(col, r)];
            }
        }
        acc.re / 4.0
    })
}

/// Inverse of [`pauli_coordinates`].
pub fn from_pauli_coordinates(v: &[f64; 16]) -> ComplexMatrix {
    let basis = pauli_basis();
    let mut m = ComplexMatrix::zeros(4, 4);
    for (k, &x) in v.iter().enumerate() {
        if x != 0.0 {
            m += &basis[k] * C64::new(x, 0.0);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{frobenius, identity};

    #[test]
    fn basis_is_hermitian_and_involutive() {
        for p in pauli_basis() {
            assert!(frobenius(&(p - p.adjoint())) < 1e-15);
            assert!(frobenius(&(p * p - identity(4))) < 1e-15);
        }
    }

    #[test]
    fn control_slot_is_first() {
        // ZI = diag(1, 1, -1, -1): basis order |c h> = 00, 01, 10, 11.
        let zi = PauliOperator::new(Pauli::Z, Pauli::I).matrix();
        let d: Vec<f64> = (0..4).map(|i| zi[(i, i)].re).collect();
        assert_eq!(d, vec![1.0, 1.0, -1.0, -1.0]);
        assert_eq!(PauliOperator::new(Pauli::Z, Pauli::I).index(), 12);
    }

    #[test]
    fn label_round_trip() {
        for k in 0..16 {
            for sign in [-1, 1] {
                let p = PauliOperator::from_index(k).with_sign(sign);
                let back: PauliOperator = p.to_string().parse().unwrap();
                assert_eq!(p, back);
            }
        }
        assert!("ZQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let v: [f64; 16] = std::array::from_fn(|k| (k as f64 * 0.37).sin());
        let back = pauli_coordinates(&from_pauli_coordinates(&v));
        for k in 0..16 {
            assert!((v[k] - back[k]).abs() < 1e-14);
        }
    }
}
