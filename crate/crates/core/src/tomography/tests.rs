use super::*;
use crate::calibration::{calibrated_ptms, full_tuneup, TuneupOptions};
use crate::qcore::gauge::conjugate_hidden_z;
use crate::qcore::ptm::process_fidelity;

fn max_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn device_estimate(model: &DeviceModel, set: &CalibratedGateSet) -> GateSetEstimate {
    GateSetEstimate::from_processes(calibrated_ptms(model, set).unwrap())
}

#[test]
fn ideal_synthetic_data_is_recovered() {
    let ideal = GateSetEstimate::ideal();
    for g in TomoGate::ALL {
        let d = synthetic_dataset(&ideal, ideal.get(g), Some(g));
        let x = qpt_lstsq(&d, &ideal).unwrap();
        assert!(x.max_abs_diff(ideal.get(g)) < 1e-4, "{g}: {}", x.max_abs_diff(ideal.get(g)));
        assert!(x.is_cptp(1e-8));
    }
}

#[test]
fn device_data_match_ptm_prediction() {
    let m = DeviceModel::experimental_regime();
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let truth = device_estimate(&m, &set);
    for (g, d) in TomoGate::ALL.iter().zip(collect_gate_datasets(&m, &set, None, 0).unwrap()) {
        let pred = predict_outcomes(&truth, truth.get(*g));
        assert!(max_diff(&d.mu, &pred) < 1e-12, "{g}");
        assert!(d.mu.iter().flatten().all(|v| v.abs() <= 1.0));
    }
}

#[test]
fn identity_prep_and_readout_give_plus_one() {
    let m = DeviceModel::noiseless();
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let d = collect_dataset(&m, &set, &GateSequence::new(), None, 0).unwrap();
    assert!((d.mu[0][0] - 1.0).abs() < 1e-12);
    // Rx(π) preparation flips the control.
    assert!((d.mu[1][0] + 1.0).abs() < 1e-12);
    // ...and an iSWAP after it hides the excitation.
    assert!((d.mu[4][0] - 1.0).abs() < 1e-9);
}

#[test]
fn noiseless_calibrated_device_is_close_to_ideal_data() {
    let mut m = DeviceModel::noiseless();
    m.set_iswap_phases(0.3, 0.7, 0.0);
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let ideal = GateSetEstimate::ideal();
    let d = collect_dataset(&m, &set, &GateSequence::new(), None, 0).unwrap();
    let pred = predict_outcomes(&ideal, &ProcessMatrix::identity());
    assert!(max_diff(&d.mu, &pred) < 1e-3, "{}", max_diff(&d.mu, &pred));
}

#[test]
fn solution_beats_ideal_model_and_is_cptp() {
    let m = DeviceModel::experimental_regime();
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let ideal = GateSetEstimate::ideal();
    let data = collect_gate_datasets(&m, &set, None, 0).unwrap();
    for (g, d) in TomoGate::ALL.iter().zip(&data) {
        let prob = QptProblem::new(d, &ideal).unwrap();
        let x = prob.solve(&ProcessMatrix::identity(), &QptOptions::default()).unwrap();
        assert!(prob.objective(&x) <= prob.objective(ideal.get(*g)) + 1e-12);
        assert!(x.choi_min_eigenvalue() >= -1e-8 && x.tp_violation() < 1e-8);
    }
}

#[test]
fn true_spam_recovers_true_target() {
    let m = DeviceModel::noiseless();
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let truth = device_estimate(&m, &set);
    let data = collect_gate_datasets(&m, &set, None, 0).unwrap();
    for (g, d) in TomoGate::ALL.iter().zip(&data) {
        let x = qpt_lstsq(d, &truth).unwrap();
        assert!(x.max_abs_diff(truth.get(*g)) < 1e-3, "{g}: {}", x.max_abs_diff(truth.get(*g)));
    }
}

#[test]
fn hidden_z_gauge_leaves_data_unchanged() {
    let m = DeviceModel::experimental_regime();
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let truth = device_estimate(&m, &set);
    let mut rotated = truth.clone();
    for g in TomoGate::ALL {
        rotated.set(g, conjugate_hidden_z(truth.get(g), 0.9));
    }
    for g in TomoGate::ALL {
        let a = predict_outcomes(&truth, truth.get(g));
        let b = predict_outcomes(&rotated, rotated.get(g));
        assert!(max_diff(&a, &b) < 1e-12);
    }
}

#[test]
fn device_gauge_shift_gives_identical_datasets() {
    // Moving weight between γ1 and γ2 at fixed sum is a hidden-qubit z rotation.
    let mut a = DeviceModel::noiseless();
    a.set_iswap_phases(0.3, 0.7, 0.05);
    let mut b = a.clone();
    b.set_iswap_phases(1.1, -0.1, 0.05);
    let set = full_tuneup(&a, &TuneupOptions::default()).unwrap();
    let da = collect_dataset(&a, &set, &set.iswap_gates(), None, 3).unwrap();
    let db = collect_dataset(&b, &set, &set.iswap_gates(), None, 3).unwrap();
    assert!(max_diff(&da.mu, &db.mu) < 1e-12);
}

#[test]
fn gauge_fix_recovers_injected_rotation() {
    let ideal = GateSetEstimate::ideal();
    let mut rotated = ideal.clone();
    for g in TomoGate::ALL {
        rotated.set(g, conjugate_hidden_z(ideal.get(g), 0.7));
    }
    let fixed = gauge_fix(&rotated);
    assert!((fixed.gauge_phi + 0.7).abs() < 1e-4, "{}", fixed.gauge_phi);
    for g in TomoGate::ALL {
        assert!(fixed.get(g).max_abs_diff(ideal.get(g)) < 1e-6);
        let before = predict_outcomes(&rotated, rotated.get(g));
        let after = predict_outcomes(&fixed, fixed.get(g));
        assert!(max_diff(&before, &after) < 1e-10);
    }
    let again = gauge_fix(&ideal);
    assert_eq!(again.gauge_phi, 0.0);
    assert!(again.p_iswap.max_abs_diff(&ideal.p_iswap) < 1e-8);
}

#[test]
fn self_consistent_fixed_point_for_ideal_data() {
    let ideal = GateSetEstimate::ideal();
    let data: Vec<_> = TomoGate::ALL
        .iter()
        .map(|&g| synthetic_dataset(&ideal, ideal.get(g), Some(g)))
        .collect();
    let est = self_consistent_qpt(&data, &SelfConsistentOptions::default()).unwrap();
    for g in TomoGate::ALL {
        assert!(est.get(g).max_abs_diff(ideal.get(g)) < 1e-4);
    }
    assert!(est.residual_history[0] < 1e-3);
}

#[test]
fn self_consistency_improves_noisy_estimates() {
    let m = DeviceModel::experimental_regime();
    let set = full_tuneup(&m, &TuneupOptions::default()).unwrap();
    let truth = gauge_fix(&device_estimate(&m, &set));
    let data = collect_gate_datasets(&m, &set, None, 0).unwrap();
    let ideal = GateSetEstimate::ideal();
    let est = self_consistent_qpt(&data, &SelfConsistentOptions::default()).unwrap();
    let h = &est.residual_history;
    assert!(h.len() >= 3 && h[1] < h[0], "{h:?}");
    for (g, d) in TomoGate::ALL.iter().zip(&data) {
        let ig = ideal.get(*g);
        let f_true = process_fidelity(truth.get(*g), ig);
        let f_first = process_fidelity(&qpt_lstsq(d, &ideal).unwrap(), ig);
        let f_sc = process_fidelity(est.get(*g), ig);
        assert!(f_first < f_true, "{g}: first {f_first} truth {f_true}");
        assert!(f_sc > f_first, "{g}: sc {f_sc} first {f_first}");
    }
}

#[test]
fn csv_and_json_round_trip() {
    let p = GateSetEstimate::ideal().p_iswap;
    let text = ptm_to_csv(&p).unwrap();
    assert!(text.starts_with("label,II,IX,IY,IZ,XI"));
    assert_eq!(ptm_from_csv(&text).unwrap(), p);
    let ideal = GateSetEstimate::ideal();
    let d = synthetic_dataset(&ideal, &ideal.p_x, Some(TomoGate::X90));
    assert_eq!(TomographyDataset::from_json(&d.to_json().unwrap()).unwrap(), d);
    let e = GateSetEstimate::from_json(&ideal.to_json().unwrap()).unwrap();
    assert_eq!(e, ideal);
}
