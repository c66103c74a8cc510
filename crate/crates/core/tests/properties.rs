mod common;

use common::*;
use hiddenq::qcore::linalg::min_eigenvalue;
use hiddenq::qcore::{
    average_fidelity, choi_to_ptm, compose, project_cptp, ptm_from_unitary, ptm_to_choi, ProcessMatrix, CPTP_TOL,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn cptp_projection_is_idempotent(seed in any::<u64>(), rank in 1usize..5, noise in 0.0f64..0.05) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = kraus_ptm(&random_kraus(rank, &mut rng));
        let noisy = ProcessMatrix(p.0 + random_real16(noise, &mut rng));
        let q = project_cptp(&noisy, CPTP_TOL).unwrap();
        prop_assert!(q.tp_violation() < 10.0 * CPTP_TOL);
        prop_assert!(min_eigenvalue(&q.to_choi()) > -10.0 * CPTP_TOL);
        let again = project_cptp(&q, CPTP_TOL).unwrap();
        prop_assert!(again.max_abs_diff(&q) < 10.0 * CPTP_TOL, "moved by {}", again.max_abs_diff(&q));
        // The projection never moves further than the channel it started from.
        prop_assert!(noisy.frobenius_distance(&q) <= noisy.frobenius_distance(&p) + 1e-6);
    }

    #[test]
    fn ptm_choi_round_trip(seed in any::<u64>(), scale in 0.01f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ProcessMatrix(random_real16(scale, &mut rng));
        let back = choi_to_ptm(&ptm_to_choi(&p)).unwrap();
        prop_assert!(back.max_abs_diff(&p) < 1e-10);
    }

    #[test]
    fn channel_choi_is_psd_and_trace_preserving(seed in any::<u64>(), rank in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kraus = random_kraus(rank, &mut rng);
        prop_assert!(kraus_completeness_error(&kraus) < 1e-12);
        let p = kraus_ptm(&kraus);
        prop_assert!(p.is_cptp(1e-10));
    }

    #[test]
    fn unitary_ptm_is_orthogonal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(&mut rng);
        let p = ptm_from_unitary(&u).unwrap();
        prop_assert!(orthogonality_error(&p) < 1e-9);
        let inv = ptm_from_unitary(&u.adjoint()).unwrap();
        prop_assert!(compose(&p, &inv).max_abs_diff(&ProcessMatrix::identity()) < 1e-9);
        prop_assert!((p.matrix().transpose() - inv.matrix()).abs().max() < 1e-9);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn average_fidelity_matches_kraus_trace_formula(seed in any::<u64>(), rank in 1usize..4, mix in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(&mut rng);
        let kraus = channel_near(&u, rank, mix, &mut rng);
        let f = average_fidelity(&kraus_ptm(&kraus), &u).unwrap();
        prop_assert!((f - kraus_fidelity(&kraus, &u)).abs() < 1e-12);
    }
}

#[test]
fn average_fidelity_matches_haar_monte_carlo() {
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(&mut rng);
        let kraus = channel_near(&u, 1 + seed as usize % 3, 0.1 * seed as f64, &mut rng);
        let f = average_fidelity(&kraus_ptm(&kraus), &u).unwrap();
        let (mc, se) = haar_fidelity(&kraus, &u, 20_000, &mut rng);
        assert!((f - mc).abs() <= 3.0 * se, "seed {seed}: formula {f}, Monte Carlo {mc} ± {se}");
    }
}
