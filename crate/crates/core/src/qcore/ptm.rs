//! Pauli transfer matrices and their Choi representation.
//!
//! Conventions: `R_ij = Tr[P_i E(P_j)] / 4`, and the Choi matrix is normalized to
//! unit trace, `J = (1/16) Σ_ij R_ij P_jᵀ ⊗ P_i` (input factor first). With these,
//! trace preservation is exactly `row 0 = (1, 0, …, 0)` and the map `R ↦ J` is a
//! scaled isometry (`‖J‖_F = ‖R‖_F / 4`).

use std::ops::Mul;
use std::sync::OnceLock;

use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use super::linalg::{
    ensure_square, ensure_unitary, kron, min_eigenvalue, ComplexMatrix, C64, UNITARY_TOL, ZERO,
};
use super::pauli::{pauli_basis, pauli_coordinates};
use crate::error::{validation, Result};

pub type Real16 = SMatrix<f64, 16, 16>;

/// Hilbert-space dimension of the two-qubit register.
pub const DIM: usize = 4;

/// 16×16 real Pauli transfer matrix of a two-qubit channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessMatrix(pub Real16);

impl ProcessMatrix {
    pub fn identity() -> Self {
        ProcessMatrix(Real16::identity())
    }

    /// The completely depolarizing channel `ρ ↦ 1/4`.
    pub fn depolarizing() -> Self {
        let mut m = Real16::zeros();
        m[(0, 0)] = 1.0;
        ProcessMatrix(m)
    }

    pub fn from_matrix(m: Real16) -> Self {
        ProcessMatrix(m)
    }

    pub fn try_from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != 16 || rows.iter().any(|r| r.len() != 16) {
            return validation("process matrix must be 16x16");
        }
        Ok(ProcessMatrix(Real16::from_fn(|i, j| rows[i][j])))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..16).map(|i| (0..16).map(|j| self.0[(i, j)]).collect()).collect()
    }

    pub fn matrix(&self) -> &Real16 {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// PTM of an arbitrary linear map given as a closure on 4×4 operators.
    pub fn from_linear_map(map: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let basis = pauli_basis();
        let mut m = Real16::zeros();
        for j in 0..16 {
            let image = map(&basis[j]);
            let coords = pauli_coordinates(&image);
            for i in 0..16 {
                m[(i, j)] = coords[i];
            }
        }
        ProcessMatrix(m)
    }

    pub fn to_choi(&self) -> ComplexMatrix {
        ptm_to_choi(self)
    }

    /// `‖row 0 − e_0‖_∞`
    pub fn tp_violation(&self) -> f64 {
        (0..16)
            .map(|j| (self.0[(0, j)] - if j == 0 { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max)
    }

    pub fn choi_min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.to_choi())
    }

    pub fn is_cptp(&self, tol: f64) -> bool {
        self.tp_violation() <= tol && self.choi_min_eigenvalue() >= -tol
    }

    pub fn transpose(&self) -> Self {
        ProcessMatrix(self.0.transpose())
    }

    pub fn frobenius_distance(&self, other: &ProcessMatrix) -> f64 {
        (self.0 - other.0).norm()
    }

    pub fn max_abs_diff(&self, other: &ProcessMatrix) -> f64 {
        (self.0 - other.0).amax()
    }

    /// Pauli vector `r_i = Tr[P_i ρ]` of a 4×4 operator.
    pub fn pauli_vector(rho: &ComplexMatrix) -> [f64; 16] {
        pauli_coordinates(rho).map(|x| 4.0 * x)
    }

    /// Convex combination `(1 − λ) self + λ other`.
    pub fn lerp(&self, other: &ProcessMatrix, lambda: f64) -> Self {
        ProcessMatrix(self.0 * (1.0 - lambda) + other.0 * lambda)
    }
}

impl Mul for ProcessMatrix {
    type Output = ProcessMatrix;

    fn mul(self, rhs: ProcessMatrix) -> ProcessMatrix {
        ProcessMatrix(self.0 * rhs.0)
    }
}

impl Serialize for ProcessMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProcessMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        ProcessMatrix::try_from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// `R_ij = Tr[P_i U P_j U†] / 4`.
pub fn ptm_from_unitary(u: &ComplexMatrix) -> Result<ProcessMatrix> {
    ensure_unitary(u, DIM, UNITARY_TOL)?;
    Ok(ptm_from_unitary_unchecked(u))
}

pub(crate) fn ptm_from_unitary_unchecked(u: &ComplexMatrix) -> ProcessMatrix {
    let ud = u.adjoint();
    ProcessMatrix::from_linear_map(|p| u * p * &ud)
}

/// Nonzero entries of `P_jᵀ ⊗ P_i` for every `(i, j)`; each is a monomial matrix
/// with exactly 16 entries.
struct ChoiBasis {
    entries: Vec<[(u8, u8, C64); 16]>,
}

fn choi_basis() -> &'static ChoiBasis {
    static CB: OnceLock<ChoiBasis> = OnceLock::new();
    CB.get_or_init(|| {
        let basis = pauli_basis();
        let mut entries = Vec::with_capacity(256);
        for i in 0..16 {
            for j in 0..16 {
                let b = kron(&basis[j].transpose(), &basis[i]);
                let mut e = [(0u8, 0u8, ZERO); 16];
                let mut n = 0;
                for r in 0..16 {
                    for col in 0..16 {
                        if b[(r, col)].norm() > 0.5 {
                            e[n] = (r as u8, col as u8, b[(r, col)]);
                            n += 1;
                        }
                    }
                }
                debug_assert_eq!(n, 16);
                entries.push(e);
            }
        }
        ChoiBasis { entries }
    })
}

pub fn ptm_to_choi(p: &ProcessMatrix) -> ComplexMatrix {
    let cb = choi_basis();
    let mut j = ComplexMatrix::zeros(16, 16);
    for (k, entries) in cb.entries.iter().enumerate() {
        let r = p.0[(k / 16, k % 16)];
        if r == 0.0 {
            continue;
        }
        let w = r / 16.0;
        for &(row, col, v) in entries {
            j[(row as usize, col as usize)] += v * w;
        }
    }
    j
}

pub fn choi_to_ptm(choi: &ComplexMatrix) -> Result<ProcessMatrix> {
    let n = ensure_square(choi, "Choi matrix")?;
    if n != 16 {
        return validation(format!("Choi matrix must be 16x16, got {n}x{n}"));
    }
    Ok(choi_to_ptm_unchecked(choi))
}

pub(crate) fn choi_to_ptm_unchecked(choi: &ComplexMatrix) -> ProcessMatrix {
    let cb = choi_basis();
    let mut m = Real16::zeros();
    for (k, entries) in cb.entries.iter().enumerate() {
        // Tr[B J] = Σ B[r,c] J[c,r]
        let mut acc = ZERO;
        for &(row, col, v) in entries {
            acc += v * choi[(col as usize, row as usize)];
        }
        m[(k / 16, k % 16)] = acc.re;
    }
    ProcessMatrix(m)
}

/// `A ∘ B`: apply `b` first, then `a`.
pub fn compose(a: &ProcessMatrix, b: &ProcessMatrix) -> ProcessMatrix {
    ProcessMatrix(a.0 * b.0)
}

/// `Tr[R_idealᵀ R] / d²`.
pub fn process_fidelity(p: &ProcessMatrix, ideal: &ProcessMatrix) -> f64 {
    (ideal.0.transpose() * p.0).trace() / (DIM * DIM) as f64
}

/// Average gate fidelity `(d F_pro + 1) / (d + 1)` against an ideal unitary.
pub fn average_fidelity(p: &ProcessMatrix, u_ideal: &ComplexMatrix) -> Result<f64> {
    let ideal = ptm_from_unitary(u_ideal)?;
    Ok(average_fidelity_ptm(p, &ideal))
}

pub fn average_fidelity_ptm(p: &ProcessMatrix, ideal: &ProcessMatrix) -> f64 {
    let d = DIM as f64;
    (d * process_fidelity(p, ideal) + 1.0) / (d + 1.0)
}

/// Apply the channel to a density matrix through its Pauli vector.
pub fn apply_to_state(p: &ProcessMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    let r = ProcessMatrix::pauli_vector(rho);
    let v = nalgebra::SVector::<f64, 16>::from_column_slice(&r);
    let out = p.0 * v;
    let basis = pauli_basis();
    let mut m = ComplexMatrix::zeros(4, 4);
    for k in 0..16 {
        m += &basis[k] * C64::new(out[k] / 4.0, 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c, diag, frobenius, hermitian_eigen, identity, ONE};
    use crate::qcore::pauli::{Pauli, PauliOperator};

    fn iswap() -> ComplexMatrix {
        let mut u = ComplexMatrix::zeros(4, 4);
        u[(0, 0)] = ONE;
        u[(1, 2)] = c(0.0, 1.0);
        u[(2, 1)] = c(0.0, 1.0);
        u[(3, 3)] = ONE;
        u
    }

    #[test]
    fn identity_unitary_gives_identity_ptm() {
        let p = ptm_from_unitary(&identity(4)).unwrap();
        assert!(p.max_abs_diff(&ProcessMatrix::identity()) < 1e-14);
    }

    #[test]
    fn iswap_moves_control_z_to_hidden_z() {
        let p = ptm_from_unitary(&iswap()).unwrap();
        let zi = PauliOperator::new(Pauli::Z, Pauli::I).index();
        let iz = PauliOperator::new(Pauli::I, Pauli::Z).index();
        assert!((p.get(iz, zi) - 1.0).abs() < 1e-14);
        assert!((p.get(zi, iz) - 1.0).abs() < 1e-14);
        assert!(p.get(zi, zi).abs() < 1e-14);
    }

    #[test]
    fn cphase_matches_brute_force_trace_formula() {
        let u = diag(&[ONE, ONE, ONE, -ONE]);
        let p = ptm_from_unitary(&u).unwrap();
        let basis = pauli_basis();
        for i in 0..16 {
            for j in 0..16 {
                let m = &basis[i] * &u * &basis[j] * u.adjoint();
                let tr: C64 = (0..4).map(|k| m[(k, k)]).sum();
                assert!((p.get(i, j) - tr.re / 4.0).abs() < 1e-14, "({i},{j})");
            }
        }
    }

    #[test]
    fn non_unitary_rejected() {
        let mut u = identity(4);
        u[(0, 0)] = c(1.1, 0.0);
        assert!(ptm_from_unitary(&u).is_err());
        assert!(ptm_from_unitary(&identity(2)).is_err());
        assert!(ptm_from_unitary(&ComplexMatrix::zeros(4, 3)).is_err());
    }

    #[test]
    fn identity_choi_is_maximally_entangled_projector() {
        let j = ProcessMatrix::identity().to_choi();
        let (vals, _) = hermitian_eigen(&j);
        assert!((vals[15] - 1.0).abs() < 1e-12);
        assert!(vals[..15].iter().all(|v| v.abs() < 1e-12));
        // |Φ⟩ = Σ_a |a⟩|a⟩ / 2
        let mut phi = nalgebra::DVector::<C64>::zeros(16);
        for a in 0..4 {
            phi[a * 4 + a] = c(0.5, 0.0);
        }
        let proj = &phi * phi.adjoint();
        assert!(frobenius(&(j - proj)) < 1e-12);
    }

    #[test]
    fn depolarizing_choi_is_scaled_identity() {
        let j = ProcessMatrix::depolarizing().to_choi();
        assert!(frobenius(&(j - identity(16) * c(1.0 / 16.0, 0.0))) < 1e-14);
        let back = choi_to_ptm(&(identity(16) * c(1.0 / 16.0, 0.0))).unwrap();
        assert!(back.max_abs_diff(&ProcessMatrix::depolarizing()) < 1e-14);
        let back = choi_to_ptm(&ProcessMatrix::identity().to_choi()).unwrap();
        assert!(back.max_abs_diff(&ProcessMatrix::identity()) < 1e-14);
    }

    #[test]
    fn choi_shape_validation() {
        assert!(choi_to_ptm(&identity(4)).is_err());
    }

    #[test]
    fn self_fidelity_is_one() {
        let u = iswap();
        let p = ptm_from_unitary(&u).unwrap();
        assert!((average_fidelity(&p, &u).unwrap() - 1.0).abs() < 1e-12);
        let f = average_fidelity(&ProcessMatrix::depolarizing(), &u).unwrap();
        assert!((f - 0.25).abs() < 1e-12);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let u = iswap();
        let a = ptm_from_unitary(&u).unwrap();
        let b = ptm_from_unitary(&u.adjoint()).unwrap();
        assert!(compose(&a, &b).max_abs_diff(&ProcessMatrix::identity()) < 1e-10);
        assert!(compose(&ProcessMatrix::identity(), &a).max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn apply_to_state_matches_unitary_action() {
        let u = iswap();
        let p = ptm_from_unitary(&u).unwrap();
        let rho = diag(&[c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0), c(0.4, 0.0)]);
        let direct = &u * &rho * u.adjoint();
        assert!(frobenius(&(apply_to_state(&p, &rho) - direct)) < 1e-14);
    }
}
