//! Random channels and independent oracles shared by the integration tests.
#![allow(dead_code)]

use hiddenq::qcore::linalg::{c, frobenius, identity, trace};
use hiddenq::qcore::ptm::{ProcessMatrix, Real16};
use hiddenq::{ComplexMatrix, C64};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn ginibre<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

pub fn random_unitary<R: Rng>(rng: &mut R) -> ComplexMatrix {
    ginibre(4, 4, rng).qr().q()
}

/// Kraus operators of a random channel with `rank` terms: blocks of a random
/// 4·rank × 4 isometry.
pub fn random_kraus<R: Rng>(rank: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    let v = ginibre(4 * rank, 4, rng).qr().q();
    (0..rank).map(|i| v.rows(4 * i, 4).into_owned()).collect()
}

pub fn apply_kraus(kraus: &[ComplexMatrix], rho: &ComplexMatrix) -> ComplexMatrix {
    kraus.iter().fold(ComplexMatrix::zeros(4, 4), |acc, k| acc + k * rho * k.adjoint())
}

pub fn kraus_ptm(kraus: &[ComplexMatrix]) -> ProcessMatrix {
    ProcessMatrix::from_linear_map(|rho| apply_kraus(kraus, rho))
}

pub fn kraus_completeness_error(kraus: &[ComplexMatrix]) -> f64 {
    let s = kraus.iter().fold(ComplexMatrix::zeros(4, 4), |acc, k| acc + k.adjoint() * k);
    frobenius(&(s - identity(4)))
}

pub fn random_real16<R: Rng>(scale: f64, rng: &mut R) -> Real16 {
    Real16::from_fn(|_, _| scale * rng.sample::<f64, _>(StandardNormal))
}

pub fn haar_state<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let v = ginibre(4, 1, rng);
    let n = v.norm();
    v / c(n, 0.0)
}

/// Monte-Carlo estimate of the average fidelity `∫dψ ⟨ψ|U† E(|ψ⟩⟨ψ|) U|ψ⟩`
/// over Haar-random states: mean and standard error.
pub fn haar_fidelity<R: Rng>(kraus: &[ComplexMatrix], u: &ComplexMatrix, samples: usize, rng: &mut R) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..samples {
        let psi = haar_state(rng);
        let out = apply_kraus(kraus, &(&psi * psi.adjoint()));
        let target = u * &psi;
        let f: C64 = (target.adjoint() * out * &target)[(0, 0)];
        sum += f.re;
        sum2 += f.re * f.re;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum2 / n - mean * mean).max(0.0) * n / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn orthogonality_error(p: &ProcessMatrix) -> f64 {
    (p.matrix() * p.matrix().transpose() - Real16::identity()).abs().max()
}

/// Channel near `u`: weight `mix` on `u` itself, the rest on a random channel.
pub fn channel_near<R: Rng>(u: &ComplexMatrix, rank: usize, mix: f64, rng: &mut R) -> Vec<ComplexMatrix> {
    let mut kraus: Vec<_> = random_kraus(rank, rng).into_iter().map(|k| k * c((1.0 - mix).sqrt(), 0.0)).collect();
    kraus.push(u * c(mix.sqrt(), 0.0));
    kraus
}

/// `(Σ_k |Tr(U† K_k)|² + d) / (d(d + 1))` with d = 4.
pub fn kraus_fidelity(kraus: &[ComplexMatrix], u: &ComplexMatrix) -> f64 {
    let s: f64 = kraus.iter().map(|k| trace(&(u.adjoint() * k)).norm_sqr()).sum();
    (s + 4.0) / 20.0
}
