//! Tune-up of the iSWAP and cPHASE gates against a simulated device.
//!
//! The steps must run in order: SW length/detuning, iSWAP frame phases, CP
//! length, CP frequency, CP single-qubit phases. [`Tuneup`] enforces this and
//! [`full_tuneup`] runs all five.

pub mod sequences;
mod scan;

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::device::{run_sequence, sample_shots, sequence_ptm, DeviceModel, FrameState, Gate, GateSequence};
use crate::error::{validation, Error, Result};
use crate::qcore::fit::{fit_cosine, fit_linear, CosineFit};
use crate::qcore::gates;
use crate::qcore::gauge::{best_hidden_gauge, conjugate_hidden_z};
use crate::qcore::linalg::wrap_phase;
use crate::qcore::ptm::{average_fidelity_ptm, ptm_from_unitary, ProcessMatrix};

pub use scan::{fit_extremum, Extremum, FitReport, Scan};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TuneupOptions {
    /// Points per length or detuning sweep.
    pub scan_points: usize,
    /// Half-width of length sweeps relative to the current estimate.
    pub window_fraction: f64,
    /// Half-width of SW detuning sweeps in units of the estimated coupling.
    pub iswap_detuning_window: f64,
    /// Half-width of the coarse CP frequency sweep, units of the estimated coupling.
    pub cphase_detuning_window: f64,
    /// Half-width of the refining CP frequency sweep.
    pub cphase_refine_window: f64,
    /// Ramsey phase points over [0, 2π).
    pub theta_points: usize,
    /// Points around the sampled extremum used by quadratic fits.
    pub fit_points: usize,
    pub repetitions: Vec<usize>,
    pub max_rounds: usize,
    /// Relative change below which the SW length/detuning cycle stops.
    pub rel_tol: f64,
    pub min_r2: f64,
    /// Largest RMS residual (rad) accepted for the linear δ(Δ) fit.
    pub max_linear_rms: f64,
    /// Shots per point; `None` uses exact probabilities.
    pub shots: Option<u64>,
    pub seed: u64,
}

impl Default for TuneupOptions {
    fn default() -> Self {
        TuneupOptions {
            scan_points: 41,
            window_fraction: 0.2,
            iswap_detuning_window: 0.2,
            cphase_detuning_window: 0.4,
            cphase_refine_window: 0.05,
            theta_points: 16,
            fit_points: 7,
            repetitions: vec![1, 3, 5],
            max_rounds: 5,
            rel_tol: 1e-3,
            min_r2: 0.9,
            max_linear_rms: 0.05,
            shots: None,
            seed: 0,
        }
    }
}

impl TuneupOptions {
    pub fn validate(&self) -> Result<()> {
        if self.scan_points < self.fit_points || self.fit_points < 3 || self.fit_points % 2 == 0 {
            return validation("need an odd fit_points >= 3 and scan_points >= fit_points");
        }
        if self.theta_points < 12 {
            return validation("theta_points must be at least 12");
        }
        if self.repetitions.is_empty() || self.repetitions.contains(&0) {
            return validation("repetitions must be non-empty and positive");
        }
        if self.max_rounds == 0 {
            return validation("max_rounds must be positive");
        }
        for (name, v) in [
            ("window_fraction", self.window_fraction),
            ("iswap_detuning_window", self.iswap_detuning_window),
            ("cphase_detuning_window", self.cphase_detuning_window),
            ("cphase_refine_window", self.cphase_refine_window),
            ("rel_tol", self.rel_tol),
            ("max_linear_rms", self.max_linear_rms),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return validation(format!("{name} must be positive"));
            }
        }
        if !(0.0..1.0).contains(&self.window_fraction) {
            return validation("window_fraction must lie in (0, 1)");
        }
        if self.shots == Some(0) {
            return validation("shots must be positive");
        }
        Ok(())
    }
}

/// The simulated device plus the shot-noise stream.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub model: DeviceModel,
    pub shots: Option<u64>,
    rng: ChaCha8Rng,
}

impl Experiment {
    pub fn new(model: DeviceModel, shots: Option<u64>, seed: u64) -> Result<Self> {
        model.validate()?;
        Ok(Experiment {
            model,
            shots,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Measured excitation probability of the control qubit.
    pub fn p_e(&mut self, seq: &GateSequence) -> Result<f64> {
        let p = run_sequence(&self.model, seq, FrameState::default())?;
        match self.shots {
            None => Ok(p),
            Some(n) => sample_shots(p, n, &mut self.rng),
        }
    }

    pub fn scan(
        &mut self,
        name: impl Into<String>,
        parameter: Vec<f64>,
        seq: impl Fn(f64) -> GateSequence,
    ) -> Result<Scan> {
        let values = parameter.iter().map(|&x| self.p_e(&seq(x))).collect::<Result<Vec<_>>>()?;
        Ok(Scan {
            name: name.into(),
            quantity: "p_e".into(),
            parameter,
            values,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IswapCalibration {
    pub length: f64,
    pub detuning: f64,
    /// Frame shift of the control qubit applied after each SW pulse.
    pub delta1: f64,
    /// Always 0.
    pub delta2: f64,
    /// Measured `γ1 + γ2`.
    pub sigma: f64,
    pub beta: f64,
}

impl IswapCalibration {
    pub fn pulse(&self) -> Gate {
        Gate::Sw {
            length: self.length,
            detuning: self.detuning,
        }
    }

    pub fn gates(&self) -> GateSequence {
        GateSequence::new().then(self.pulse()).then(Gate::FrameShift {
            delta1: self.delta1,
            delta2: self.delta2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CphaseCalibration {
    pub length: f64,
    pub detuning: f64,
    /// Frame corrections equal to the measured single-qubit phases.
    pub gamma01: f64,
    pub gamma10: f64,
    /// Two-qubit phase measured with the CP pulse on resonance.
    pub delta_at_zero: f64,
}

impl CphaseCalibration {
    pub fn pulse(&self) -> Gate {
        Gate::Cp {
            length: self.length,
            detuning: self.detuning,
        }
    }

    pub fn gates(&self) -> GateSequence {
        GateSequence::new().then(self.pulse()).then(Gate::FrameShift {
            delta1: self.gamma01,
            delta2: self.gamma10,
        })
    }
}

/// Result of a complete tune-up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibratedGateSet {
    pub iswap: IswapCalibration,
    pub cphase: CphaseCalibration,
    pub fit_reports: Vec<FitReport>,
}

impl CalibratedGateSet {
    pub fn iswap_gates(&self) -> GateSequence {
        self.iswap.gates()
    }

    pub fn cphase_gates(&self) -> GateSequence {
        self.cphase.gates()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One CSV per recorded scan, named `<index>_<scan name>.csv`. Returns the paths.
    pub fn write_scans(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut out = Vec::new();
        for (i, r) in self.fit_reports.iter().enumerate() {
            if let Some(s) = &r.scan {
                let p = dir.join(format!("{i:02}_{}.csv", s.file_stem()));
                std::fs::write(&p, s.to_csv()?)?;
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Average fidelities of the calibrated gates, evaluated in the hidden-qubit
/// gauge that best aligns the whole set with the ideal gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateFidelities {
    pub x90: f64,
    pub y90: f64,
    pub iswap: f64,
    pub cphase: f64,
    pub gauge: f64,
}

/// Ground-truth PTMs of the calibrated gates: X90, Y90, iSWAP, cPHASE.
pub fn calibrated_ptms(model: &DeviceModel, set: &CalibratedGateSet) -> Result<[ProcessMatrix; 4]> {
    Ok([
        sequence_ptm(model, &GateSequence::new().then(Gate::rx(FRAC_PI_2)))?,
        sequence_ptm(model, &GateSequence::new().then(Gate::ry(FRAC_PI_2)))?,
        sequence_ptm(model, &set.iswap_gates())?,
        sequence_ptm(model, &set.cphase_gates())?,
    ])
}

pub fn ideal_ptms() -> [ProcessMatrix; 4] {
    [
        gates::rx(FRAC_PI_2),
        gates::ry(FRAC_PI_2),
        gates::iswap(),
        gates::cphase(),
    ]
    .map(|u| ptm_from_unitary(&u).expect("ideal gates are unitary"))
}

pub fn gate_fidelities(model: &DeviceModel, set: &CalibratedGateSet) -> Result<GateFidelities> {
    let actual = calibrated_ptms(model, set)?;
    let ideal = ideal_ptms();
    let pairs: Vec<_> = actual.iter().copied().zip(ideal.iter().copied()).collect();
    let phi = best_hidden_gauge(&pairs);
    let f: Vec<f64> = pairs
        .iter()
        .map(|(p, i)| average_fidelity_ptm(&conjugate_hidden_z(p, phi), i))
        .collect();
    Ok(GateFidelities {
        x90: f[0],
        y90: f[1],
        iswap: f[2],
        cphase: f[3],
        gauge: phi,
    })
}

fn linspace(center: f64, half_width: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![center];
    }
    (0..n)
        .map(|i| center - half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
        .collect()
}

/// Undo 2π jumps between neighbouring points.
fn unwrap(v: &mut [f64]) {
    for i in 1..v.len() {
        v[i] = v[i - 1] + wrap_phase(v[i] - v[i - 1]);
    }
}

/// Weighted mean with weights `n²`, the curvature scaling of repeated pulses.
fn combine(estimates: &[(usize, f64)]) -> f64 {
    let w: f64 = estimates.iter().map(|(n, _)| (n * n) as f64).sum();
    estimates.iter().map(|&(n, x)| (n * n) as f64 * x).sum::<f64>() / w
}

/// Phase estimates from the SW Ramsey experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IswapPhaseEstimate {
    pub sigma: f64,
    pub beta: f64,
    pub delta1: f64,
    pub delta2: f64,
}

/// Stateful tune-up that enforces the step order.
#[derive(Debug, Clone)]
pub struct Tuneup {
    pub exp: Experiment,
    pub options: TuneupOptions,
    iswap_pulse: Option<(f64, f64)>,
    iswap: Option<IswapCalibration>,
    cphase_length: Option<f64>,
    cphase_detuning: Option<f64>,
    delta_at_zero: Option<f64>,
    cphase: Option<CphaseCalibration>,
    reports: Vec<FitReport>,
}

impl Tuneup {
    pub fn new(model: DeviceModel, options: TuneupOptions) -> Result<Self> {
        options.validate()?;
        let exp = Experiment::new(model, options.shots, options.seed)?;
        Ok(Tuneup {
            exp,
            options,
            iswap_pulse: None,
            iswap: None,
            cphase_length: None,
            cphase_detuning: None,
            delta_at_zero: None,
            cphase: None,
            reports: Vec::new(),
        })
    }

    pub fn reports(&self) -> &[FitReport] {
        &self.reports
    }

    /// Replace the iSWAP calibration, e.g. to study deliberately miscalibrated gates.
    pub fn set_iswap(&mut self, iswap: IswapCalibration) {
        self.iswap_pulse = Some((iswap.length, iswap.detuning));
        self.iswap = Some(iswap);
    }

    pub fn iswap(&self) -> Option<IswapCalibration> {
        self.iswap
    }

    fn thetas(&self) -> Vec<f64> {
        let n = self.options.theta_points;
        (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
    }

    fn extremum(&mut self, step: &str, scan: Scan, minimize: bool) -> Result<f64> {
        let ext = fit_extremum(&scan, minimize, self.options.fit_points)?;
        self.reports.push(FitReport {
            step: step.into(),
            estimate: ext.location,
            r2: ext.fit.r2,
            detail: format!("quadratic a = {:.6e}, extremum value {:.6e}", ext.fit.a, ext.value),
            scan: Some(scan),
        });
        Ok(ext.location)
    }

    /// Ramsey phase of a θ sweep, with the R² check.
    fn ramsey(&mut self, step: &str, seq: impl Fn(f64) -> GateSequence) -> Result<CosineFit> {
        let thetas = self.thetas();
        let scan = self.exp.scan(step, thetas, seq)?;
        let fit = fit_cosine(&scan.parameter, &scan.values)?;
        let r2 = fit.r2;
        self.reports.push(FitReport {
            step: step.into(),
            estimate: fit.phase,
            r2,
            detail: format!("cosine amplitude {:.6e}, offset {:.6e}", fit.amplitude, fit.offset),
            scan: Some(scan),
        });
        if !(r2 >= self.options.min_r2) {
            return Err(Error::FitQuality {
                fit: step.into(),
                detail: format!("R² = {r2:.4} below {}", self.options.min_r2),
            });
        }
        Ok(fit)
    }

    /// S1: alternate SW length and detuning scans until both settle.
    pub fn calibrate_iswap(&mut self) -> Result<(f64, f64)> {
        let o = self.options.clone();
        let mut length = self.exp.model.durations.iswap;
        let mut detuning = 0.0;
        let mut converged = false;
        for round in 0..o.max_rounds {
            let mut est = Vec::new();
            for &n in &o.repetitions {
                let grid = linspace(length, o.window_fraction * length, o.scan_points);
                let scan = self.exp.scan(format!("S1 length n={n}"), grid, |l| {
                    sequences::s1(Gate::Sw { length: l, detuning }, n)
                })?;
                est.push((n, self.extremum(&format!("S1 length n={n} round {round}"), scan, true)?));
            }
            let new_length = combine(&est);
            let g_est = FRAC_PI_2 / new_length;
            let mut est = Vec::new();
            for &n in &o.repetitions {
                let grid = linspace(detuning, o.iswap_detuning_window * g_est, o.scan_points);
                let scan = self.exp.scan(format!("S1 detuning n={n}"), grid, |d| {
                    sequences::s1(
                        Gate::Sw {
                            length: new_length,
                            detuning: d,
                        },
                        n,
                    )
                })?;
                est.push((n, self.extremum(&format!("S1 detuning n={n} round {round}"), scan, true)?));
            }
            let new_detuning = combine(&est);
            let done = ((new_length - length) / length).abs() < o.rel_tol
                && (new_detuning - detuning).abs() < o.rel_tol * g_est;
            length = new_length;
            detuning = new_detuning;
            if done {
                converged = true;
                break;
            }
        }
        self.reports.push(FitReport {
            step: "S1 result".into(),
            scan: None,
            estimate: length,
            r2: 1.0,
            detail: format!(
                "length {length:.6e} s, detuning {detuning:.6e} rad/s, {}",
                if converged { "converged" } else { "round cap reached" }
            ),
        });
        self.iswap_pulse = Some((length, detuning));
        self.iswap = None;
        self.cphase_length = None;
        Ok((length, detuning))
    }

    /// S2–S5: Σ and β from Ramsey phases; frame shifts with δ2 = 0.
    pub fn calibrate_iswap_phases(&mut self) -> Result<IswapPhaseEstimate> {
        let (length, detuning) = self
            .iswap_pulse
            .ok_or_else(|| Error::Precondition("SW length and detuning must be calibrated first".into()))?;
        let sw = Gate::Sw { length, detuning };
        let p2 = self.ramsey("S2", |t| sequences::s2(sw, t))?.phase;
        let p3 = self.ramsey("S3", sequences::s3)?.phase;
        let p4 = self.ramsey("S4", |t| sequences::s4(sw, t))?.phase;
        let p5 = self.ramsey("S5", |t| sequences::s5(sw, t))?.phase;
        let sigma = wrap_phase(p2 - p3);
        let d45 = wrap_phase(p4 - p5);
        // (Δφ45 − Δφ23)/2 = γ3 − γ1 − γ2 = β − π, known modulo π.
        let beta = wrap_half(wrap_phase(d45 - sigma) / 2.0);
        let delta1 = wrap_phase(sigma - PI + beta);
        let est = IswapPhaseEstimate {
            sigma,
            beta,
            delta1,
            delta2: 0.0,
        };
        self.reports.push(FitReport {
            step: "S2-S5 result".into(),
            scan: None,
            estimate: sigma,
            r2: 1.0,
            detail: format!("sigma {sigma:.6}, beta {beta:.6}, delta1 {delta1:.6}, delta2 0"),
        });
        self.iswap = Some(IswapCalibration {
            length,
            detuning,
            delta1,
            delta2: 0.0,
            sigma,
            beta,
        });
        self.cphase_length = None;
        Ok(est)
    }

    fn require_iswap(&self) -> Result<IswapCalibration> {
        self.iswap
            .ok_or_else(|| Error::Precondition("iSWAP must be calibrated before cPHASE".into()))
    }

    fn cp_length_scan(&mut self, center: f64, detuning: f64, tag: &str) -> Result<f64> {
        let iswap = self.require_iswap()?.gates();
        let o = self.options.clone();
        let mut est = Vec::new();
        for &n in &o.repetitions {
            let grid = linspace(center, o.window_fraction * center, o.scan_points);
            let scan = self.exp.scan(format!("S6 length n={n}"), grid, |l| {
                sequences::s6(Gate::Cp { length: l, detuning }, n, &iswap)
            })?;
            est.push((n, self.extremum(&format!("S6 length n={n}{tag}"), scan, false)?));
        }
        Ok(combine(&est))
    }

    /// S6: CP length maximizing the return to |11⟩.
    pub fn calibrate_cphase_length(&mut self) -> Result<f64> {
        self.require_iswap()?;
        let l = self.cp_length_scan(self.exp.model.durations.cphase, 0.0, "")?;
        self.cphase_length = Some(l);
        self.cphase_detuning = None;
        Ok(l)
    }

    /// `δ = γ11 − γ01 − γ10` from the S7/S8 echo pair.
    fn measure_delta(&mut self, cp: Gate, reference: f64) -> Result<f64> {
        let iswap = self.require_iswap()?.gates();
        let thetas = self.thetas();
        let y: Vec<f64> = thetas
            .iter()
            .map(|&t| self.exp.p_e(&sequences::s7(cp, t, &iswap)))
            .collect::<Result<_>>()?;
        let fit = fit_cosine(&thetas, &y)?;
        if !(fit.r2 >= self.options.min_r2) {
            return Err(Error::FitQuality {
                fit: format!("S7 at {cp}"),
                detail: format!("R² = {:.4} below {}", fit.r2, self.options.min_r2),
            });
        }
        Ok(wrap_phase(fit.phase - reference))
    }

    fn delta_scan(&mut self, length: f64, center: f64, half_width: f64, reference: f64, name: &str) -> Result<(f64, Scan)> {
        let grid = linspace(center, half_width, self.options.scan_points);
        let mut d = Vec::with_capacity(grid.len());
        for &x in &grid {
            let delta = self.measure_delta(Gate::Cp { length, detuning: x }, reference)?;
            d.push(wrap_phase(delta - PI));
        }
        unwrap(&mut d);
        let lin = fit_linear(&grid, &d)?;
        let scan = Scan {
            name: name.into(),
            quantity: "delta".into(),
            parameter: grid,
            values: d.iter().map(|v| v + PI).collect(),
        };
        let root = -lin.intercept / lin.slope;
        self.reports.push(FitReport {
            step: name.into(),
            estimate: root,
            r2: lin.r2,
            detail: format!("slope {:.6e} rad·s, rms residual {:.3e} rad", lin.slope, lin.rms),
            scan: Some(scan.clone()),
        });
        if !(lin.rms <= self.options.max_linear_rms) || !lin.slope.is_finite() || lin.slope == 0.0 {
            return Err(Error::FitQuality {
                fit: name.into(),
                detail: format!("linear fit rms {:.3e} rad; scan:\n{}", lin.rms, scan.to_csv()?),
            });
        }
        if (root - center).abs() > half_width {
            return Err(Error::ScanWindow {
                scan: name.into(),
                lo: center - half_width,
                hi: center + half_width,
            });
        }
        Ok((root, scan))
    }

    /// S7/S8: CP detuning at which δ = π.
    ///
    /// A coarse sweep locates the crossing, a narrow sweep refines it, then
    /// the length is re-optimized at the new detuning and the narrow sweep
    /// repeated.
    pub fn calibrate_cphase_frequency(&mut self) -> Result<f64> {
        let mut length = self
            .cphase_length
            .ok_or_else(|| Error::Precondition("CP length must be calibrated before its frequency".into()))?;
        let iswap = self.require_iswap()?.gates();
        let o = self.options.clone();
        let reference = self.ramsey("S8", |t| sequences::s8(t, &iswap))?.phase;
        let g_est = PI / length;
        let (coarse, _) = self.delta_scan(length, 0.0, o.cphase_detuning_window * g_est, reference, "S7 coarse")?;
        let (mut detuning, _) =
            self.delta_scan(length, coarse, o.cphase_refine_window * g_est, reference, "S7 refine")?;
        length = self.cp_length_scan(length, detuning, " at detuning")?;
        let g_est = PI / length;
        (detuning, _) = self.delta_scan(length, detuning, o.cphase_refine_window * g_est, reference, "S7 final")?;
        let at_zero = self.measure_delta(Gate::Cp { length, detuning: 0.0 }, reference)?;
        self.reports.push(FitReport {
            step: "S7-S8 result".into(),
            scan: None,
            estimate: detuning,
            r2: 1.0,
            detail: format!("length {length:.6e} s, detuning {detuning:.6e} rad/s, delta at zero detuning {at_zero:.6}"),
        });
        self.cphase_length = Some(length);
        self.cphase_detuning = Some(detuning);
        self.delta_at_zero = Some(at_zero);
        Ok(detuning)
    }

    /// S9–S12: single-qubit phases of the CP pulse, used as frame corrections.
    pub fn calibrate_cphase_single_phases(&mut self) -> Result<(f64, f64)> {
        let detuning = self
            .cphase_detuning
            .ok_or_else(|| Error::Precondition("CP frequency must be calibrated before its phases".into()))?;
        let length = self.cphase_length.expect("set with detuning");
        let iswap = self.require_iswap()?;
        let cp = Gate::Cp { length, detuning };
        let sw = iswap.pulse();
        let p9 = self.ramsey("S9", |t| sequences::s9(cp, t))?.phase;
        let p10 = self.ramsey("S10", sequences::s3)?.phase;
        let p11 = self.ramsey("S11", |t| sequences::s11(sw, cp, t))?.phase;
        let p12 = self.ramsey("S12", |t| sequences::s12(sw, t))?.phase;
        let gamma01 = wrap_phase(p9 - p10);
        let gamma10 = wrap_phase(p11 - p12);
        self.reports.push(FitReport {
            step: "S9-S12 result".into(),
            scan: None,
            estimate: gamma01,
            r2: 1.0,
            detail: format!("gamma01 {gamma01:.6}, gamma10 {gamma10:.6}"),
        });
        self.cphase = Some(CphaseCalibration {
            length,
            detuning,
            gamma01,
            gamma10,
            delta_at_zero: self.delta_at_zero.unwrap_or(f64::NAN),
        });
        Ok((gamma01, gamma10))
    }

    pub fn finish(self) -> Result<CalibratedGateSet> {
        let iswap = self.require_iswap()?;
        let cphase = self
            .cphase
            .ok_or_else(|| Error::Precondition("cPHASE calibration incomplete".into()))?;
        Ok(CalibratedGateSet {
            iswap,
            cphase,
            fit_reports: self.reports,
        })
    }
}

/// Wrap into (−π/2, π/2].
fn wrap_half(x: f64) -> f64 {
    let y = x - PI * (x / PI).round();
    if y <= -FRAC_PI_2 {
        y + PI
    } else {
        y
    }
}

/// All five tune-up steps in order.
pub fn full_tuneup(model: &DeviceModel, options: &TuneupOptions) -> Result<CalibratedGateSet> {
    let mut t = Tuneup::new(model.clone(), options.clone())?;
    t.calibrate_iswap()?;
    t.calibrate_iswap_phases()?;
    t.calibrate_cphase_length()?;
    t.calibrate_cphase_frequency()?;
    t.calibrate_cphase_single_phases()?;
    t.finish()
}
