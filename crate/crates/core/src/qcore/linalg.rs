//! Small dense complex linear algebra helpers.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{validation, Error, Result};

pub type C64 = Complex64;

/// Square complex matrix (unitaries, density matrices, Choi matrices).
pub type ComplexMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Default tolerance for unitarity checks on user input.
pub const UNITARY_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i phi}`
#[inline]
pub fn cis(phi: f64) -> C64 {
    C64::from_polar(1.0, phi)
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn diag(entries: &[C64]) -> ComplexMatrix {
    let n = entries.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { ZERO })
}

pub fn from_rows(rows: &[&[C64]]) -> ComplexMatrix {
    let n = rows.len();
    ComplexMatrix::from_fn(n, rows[0].len(), |i, j| rows[i][j])
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &ComplexMatrix) -> C64 {
    a.diagonal().iter().sum()
}

pub fn ensure_square(a: &ComplexMatrix, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return validation(format!(
            "{what} must be square and non-empty, got {}x{}",
            a.nrows(),
            a.ncols()
        ));
    }
    Ok(a.nrows())
}

/// `‖U†U − 1‖_F`
pub fn unitarity_deviation(u: &ComplexMatrix) -> f64 {
    let n = u.nrows();
    frobenius(&(u.adjoint() * u - identity(n)))
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    u.nrows() == u.ncols() && unitarity_deviation(u) < tol
}

pub fn ensure_unitary(u: &ComplexMatrix, dim: usize, tol: f64) -> Result<()> {
    let n = ensure_square(u, "unitary")?;
    if n != dim {
        return validation(format!("expected a {dim}x{dim} unitary, got {n}x{n}"));
    }
    let dev = unitarity_deviation(u);
    if dev >= tol {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

pub fn hermiticity_deviation(a: &ComplexMatrix) -> f64 {
    frobenius(&(a - a.adjoint()))
}

pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    a.nrows() == a.ncols() && hermiticity_deviation(a) < tol
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = SymmetricEigen::new(a.clone());
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

pub fn min_eigenvalue(a: &ComplexMatrix) -> f64 {
    let eig = SymmetricEigen::new(a.clone());
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `exp(−i H t)` for Hermitian `H`.
pub fn expm_hermitian(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let (values, vectors) = hermitian_eigen(h);
    let phases: Vec<C64> = values.iter().map(|&e| cis(-e * t)).collect();
    &vectors * diag(&phases) * vectors.adjoint()
}

/// `exp(−i H t)` for a 2x2 Hermitian `H = [[h00, h01], [conj(h01), h11]]`, in closed form.
pub fn expm_hermitian_2x2(h00: f64, h01: C64, h11: f64, t: f64) -> [[C64; 2]; 2] {
    let mean = 0.5 * (h00 + h11);
    let half = 0.5 * (h00 - h11);
    let omega = (half * half + h01.norm_sqr()).sqrt();
    let global = cis(-mean * t);
    let (cw, sw) = ((omega * t).cos(), (omega * t).sin());
    // exp(-i t (half σz + Re(h01) σx − Im(h01) σy)) = cos I − i sin n̂·σ
    let (nz, nxy) = if omega > 0.0 {
        (half / omega, h01 / omega)
    } else {
        (0.0, ZERO)
    };
    [
        [global * c(cw, -sw * nz), global * (-I * sw * nxy)],
        [global * (-I * sw * nxy.conj()), global * c(cw, sw * nz)],
    ]
}

/// Wrap an angle into (−π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    use std::f64::consts::PI;
    let mut x = phi.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}
