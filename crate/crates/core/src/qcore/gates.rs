//! Ideal two-qubit gate unitaries in the `|control, hidden⟩` basis
//! (index `2·c + h`).

use super::linalg::{c, cis, diag, ComplexMatrix, ONE, ZERO};
use super::pauli::{on_control, on_hidden, Pauli};

/// `exp(−i φ/2 (cos θ X + sin θ Y))` on a single qubit.
pub fn rotation_1q(theta: f64, angle: f64) -> ComplexMatrix {
    let (co, si) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[c(co, 0.0), cis(-theta) * c(0.0, -si), cis(theta) * c(0.0, -si), c(co, 0.0)],
    )
}

/// Rotation of the control qubit about the equatorial axis at azimuth `theta`.
pub fn rotation_control(theta: f64, angle: f64) -> ComplexMatrix {
    on_control(&rotation_1q(theta, angle))
}

pub fn rotation_hidden(theta: f64, angle: f64) -> ComplexMatrix {
    on_hidden(&rotation_1q(theta, angle))
}

pub fn rx(angle: f64) -> ComplexMatrix {
    rotation_control(0.0, angle)
}

pub fn ry(angle: f64) -> ComplexMatrix {
    rotation_control(std::f64::consts::FRAC_PI_2, angle)
}

/// `exp(−i φ/2 σ_z)` on the hidden qubit.
pub fn rz_hidden(phi: f64) -> ComplexMatrix {
    on_hidden(&diag(&[cis(-phi / 2.0), cis(phi / 2.0)]))
}

pub fn rz_control(phi: f64) -> ComplexMatrix {
    on_control(&diag(&[cis(-phi / 2.0), cis(phi / 2.0)]))
}

/// |01⟩ ↔ |10⟩ with phase i.
pub fn iswap() -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4, 4);
    u[(0, 0)] = ONE;
    u[(1, 2)] = c(0.0, 1.0);
    u[(2, 1)] = c(0.0, 1.0);
    u[(3, 3)] = ONE;
    u
}

pub fn cphase() -> ComplexMatrix {
    diag(&[ONE, ONE, ONE, -ONE])
}

pub fn swap() -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4, 4);
    u[(0, 0)] = ONE;
    u[(1, 2)] = ONE;
    u[(2, 1)] = ONE;
    u[(3, 3)] = ONE;
    u
}

pub fn sqrt_swap() -> ComplexMatrix {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    ComplexMatrix::from_row_slice(
        4,
        4,
        &[ONE, ZERO, ZERO, ZERO, ZERO, p, m, ZERO, ZERO, m, p, ZERO, ZERO, ZERO, ZERO, ONE],
    )
}

/// Pauli `P` acting on the control qubit only.
pub fn pauli_control(p: Pauli) -> ComplexMatrix {
    on_control(&p.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{frobenius, identity, is_unitary};

    #[test]
    fn gates_are_unitary() {
        for u in [iswap(), cphase(), swap(), sqrt_swap(), rx(0.3), ry(1.1), rz_hidden(0.4)] {
            assert!(is_unitary(&u, 1e-12));
        }
    }

    #[test]
    fn sqrt_swap_squares_to_swap() {
        let s = sqrt_swap();
        assert!(frobenius(&(&s * &s - swap())) < 1e-14);
    }

    #[test]
    fn rx_pi_flips_control() {
        let u = rx(std::f64::consts::PI);
        // |00⟩ → −i|10⟩
        assert!((u[(2, 0)] - c(0.0, -1.0)).norm() < 1e-14);
        assert!(frobenius(&(&u * &u + identity(4))) < 1e-14);
    }
}
