//! Dynamical Lie algebra of a set of two-qubit Hamiltonians.

use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::qcore::linalg::{c, hermiticity_deviation, trace, ComplexMatrix, C64};
use crate::qcore::pauli::{from_pauli_coordinates, pauli_coordinates, Pauli, PauliOperator};

/// Rank threshold shared by closure and span computations.
pub const RANK_TOL: f64 = 1e-9;

/// Hermitian, traceless 4×4 generator with a descriptive label.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGenerator {
    pub label: String,
    pub matrix: ComplexMatrix,
}

impl HermitianGenerator {
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.nrows() != 4 || matrix.ncols() != 4 {
            return validation("generators must be 4x4");
        }
        if hermiticity_deviation(&matrix) > 1e-12 {
            return validation("generator is not Hermitian");
        }
        if trace(&matrix).norm() > 1e-12 {
            return validation("generator is not traceless");
        }
        Ok(HermitianGenerator {
            label: label.into(),
            matrix,
        })
    }

    /// Real linear combination of Pauli operators, e.g. `[(1.0, "XX"), (1.0, "YY")]`.
    pub fn from_paulis(label: impl Into<String>, terms: &[(f64, PauliOperator)]) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(4, 4);
        for (w, p) in terms {
            m += p.matrix() * c(*w, 0.0);
        }
        HermitianGenerator::new(label, m)
    }

    pub fn pauli(op: PauliOperator) -> Result<Self> {
        HermitianGenerator::from_paulis(op.to_string(), &[(1.0, op)])
    }

    /// Coordinates on the 15 non-identity Pauli operators.
    pub fn coordinates(&self) -> [f64; 15] {
        let v = pauli_coordinates(&self.matrix);
        std::array::from_fn(|k| v[k + 1])
    }

    fn from_coordinates(label: String, v: &[f64; 15]) -> Self {
        let mut full = [0.0; 16];
        full[1..].copy_from_slice(v);
        HermitianGenerator {
            label,
            matrix: from_pauli_coordinates(&full),
        }
    }
}

/// Serializable form: label plus Pauli-coefficient map.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GeneratorSpec {
    pub label: String,
    pub terms: Vec<(f64, PauliOperator)>,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<HermitianGenerator> {
        HermitianGenerator::from_paulis(self.label.clone(), &self.terms)
    }
}

/// `i[A, B]` in Pauli coordinates.
fn commutator(a: &[f64; 15], b: &[f64; 15]) -> [f64; 15] {
    let ma = HermitianGenerator::from_coordinates(String::new(), a).matrix;
    let mb = HermitianGenerator::from_coordinates(String::new(), b).matrix;
    let comm = (&ma * &mb - &mb * &ma) * C64::new(0.0, 1.0);
    let v = pauli_coordinates(&comm);
    std::array::from_fn(|k| v[k + 1])
}

fn norm(v: &[f64; 15]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gram–Schmidt residual of `v` against an orthonormal basis, normalized, if
/// it exceeds the rank threshold.
fn new_direction(basis: &[[f64; 15]], v: &[f64; 15]) -> Option<[f64; 15]> {
    let n0 = norm(v);
    if n0 < RANK_TOL {
        return None;
    }
    let mut r: [f64; 15] = std::array::from_fn(|k| v[k] / n0);
    // Two passes for numerical orthogonality.
    for _ in 0..2 {
        for b in basis {
            let d: f64 = (0..15).map(|k| r[k] * b[k]).sum();
            for k in 0..15 {
                r[k] -= d * b[k];
            }
        }
    }
    let n = norm(&r);
    if n < RANK_TOL {
        return None;
    }
    Some(r.map(|x| x / n))
}

/// Dimension and an orthonormal basis of the real Lie algebra generated by
/// `generators` under `i[·,·]`. Stops early once `max_dim` is reached.
pub fn lie_closure(
    generators: &[HermitianGenerator],
    max_dim: usize,
) -> Result<(usize, Vec<HermitianGenerator>)> {
    if max_dim > 15 {
        return validation("max_dim must be at most 15 for su(4)");
    }
    let mut basis: Vec<[f64; 15]> = Vec::new();
    for g in generators {
        if basis.len() >= max_dim {
            break;
        }
        if let Some(d) = new_direction(&basis, &g.coordinates()) {
            basis.push(d);
        }
    }
    let mut next = 0;
    while next < basis.len() && basis.len() < max_dim {
        let fresh = basis[next];
        for j in 0..=next {
            let cm = commutator(&fresh, &basis[j]);
            if let Some(d) = new_direction(&basis, &cm) {
                basis.push(d);
                if basis.len() >= max_dim {
                    break;
                }
            }
        }
        next += 1;
    }
    let elems = basis
        .iter()
        .enumerate()
        .map(|(i, v)| HermitianGenerator::from_coordinates(format!("L{i}"), v))
        .collect();
    Ok((basis.len(), elems))
}

/// True iff the generated algebra is all of su(4).
pub fn is_fully_controllable(generators: &[HermitianGenerator]) -> bool {
    matches!(lie_closure(generators, 15), Ok((15, _)))
}

/// Projection residual of `m` against an algebra basis (Frobenius, unnormalized input).
pub fn distance_to_algebra(basis: &[HermitianGenerator], m: &ComplexMatrix) -> f64 {
    let v = pauli_coordinates(m);
    let mut r: [f64; 15] = std::array::from_fn(|k| v[k + 1]);
    for b in basis {
        let bv = b.coordinates();
        let d: f64 = (0..15).map(|k| r[k] * bv[k]).sum::<f64>() / norm(&bv).powi(2);
        for k in 0..15 {
            r[k] -= d * bv[k];
        }
    }
    norm(&r) * 2.0 // coordinates are Tr[P A]/4, so ‖A‖_F = 2‖v‖
}

/// Standard generator sets used in the controllability claims.
pub mod sets {
    use super::*;

    fn p(a: Pauli, b: Pauli) -> PauliOperator {
        PauliOperator::new(a, b)
    }

    /// `σ_x ⊗ 1` and `σ_y ⊗ 1` (drives on the control qubit).
    pub fn control_drives() -> Vec<HermitianGenerator> {
        [Pauli::X, Pauli::Y]
            .iter()
            .map(|&a| HermitianGenerator::pauli(p(a, Pauli::I)).expect("valid Pauli"))
            .collect()
    }

    pub fn hidden_drives() -> Vec<HermitianGenerator> {
        [Pauli::X, Pauli::Y]
            .iter()
            .map(|&a| HermitianGenerator::pauli(p(Pauli::I, a)).expect("valid Pauli"))
            .collect()
    }

    /// Both qubits directly driven.
    pub fn full_drives() -> Vec<HermitianGenerator> {
        let mut v = control_drives();
        v.extend(hidden_drives());
        v
    }

    /// cPHASE-type interaction `σz ⊗ σz`.
    pub fn zz() -> HermitianGenerator {
        HermitianGenerator::pauli(p(Pauli::Z, Pauli::Z)).expect("valid Pauli")
    }

    /// iSWAP-type interaction `σx⊗σx + σy⊗σy`.
    pub fn xy() -> HermitianGenerator {
        HermitianGenerator::from_paulis(
            "XX+YY",
            &[(1.0, p(Pauli::X, Pauli::X)), (1.0, p(Pauli::Y, Pauli::Y))],
        )
        .expect("valid generator")
    }

    /// SWAP-type interaction `σx⊗σx + σy⊗σy + σz⊗σz`.
    pub fn heisenberg() -> HermitianGenerator {
        HermitianGenerator::from_paulis(
            "XX+YY+ZZ",
            &[
                (1.0, p(Pauli::X, Pauli::X)),
                (1.0, p(Pauli::Y, Pauli::Y)),
                (1.0, p(Pauli::Z, Pauli::Z)),
            ],
        )
        .expect("valid generator")
    }

    pub fn with(mut base: Vec<HermitianGenerator>, extra: &[HermitianGenerator]) -> Vec<HermitianGenerator> {
        base.extend_from_slice(extra);
        base
    }
}

#[cfg(test)]
mod tests {
    use super::sets::*;
    use super::*;

    #[test]
    fn full_control_plus_zz_is_su4() {
        let (d, basis) = lie_closure(&with(full_drives(), &[zz()]), 15).unwrap();
        assert_eq!(d, 15);
        assert_eq!(basis.len(), 15);
    }

    #[test]
    fn hidden_plus_zz_closes_on_six_dimensions() {
        let (d, basis) = lie_closure(&with(control_drives(), &[zz()]), 15).unwrap();
        assert_eq!(d, 6);
        // The algebra is spanned by σ_i ⊗ 1 and σ_i ⊗ σ_z.
        for a in [Pauli::X, Pauli::Y, Pauli::Z] {
            for b in [Pauli::I, Pauli::Z] {
                let m = PauliOperator::new(a, b).matrix();
                assert!(distance_to_algebra(&basis, &m) < 1e-9);
            }
        }
    }

    #[test]
    fn max_dim_truncates() {
        let (d, _) = lie_closure(&with(full_drives(), &[zz()]), 4).unwrap();
        assert_eq!(d, 4);
        assert!(lie_closure(&[], 16).is_err());
    }

    #[test]
    fn invalid_generators_rejected() {
        let mut m = PauliOperator::new(Pauli::X, Pauli::I).matrix();
        m[(0, 1)] = c(2.0, 0.0);
        assert!(HermitianGenerator::new("bad", m).is_err());
        let id = PauliOperator::new(Pauli::I, Pauli::I).matrix();
        assert!(HermitianGenerator::new("identity", id).is_err());
        assert!(crate::qcore::linalg::frobenius(&zz().matrix) > 0.0);
    }
}
