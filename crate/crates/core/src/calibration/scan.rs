//! Recorded sweeps and the quadratic extremum fit.

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::qcore::fit::{fit_quadratic, QuadraticFit};

/// One parameter sweep: `values[i]` measured at `parameter[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scan {
    pub name: String,
    /// Column name of the measured quantity (`p_e` or `delta`).
    pub quantity: String,
    pub parameter: Vec<f64>,
    pub values: Vec<f64>,
}

impl Scan {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["parameter", self.quantity.as_str()])?;
        for (x, y) in self.parameter.iter().zip(&self.values) {
            w.write_record([format!("{x:e}"), format!("{y:e}")])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_csv(name: &str, text: &str) -> Result<Scan> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "parameter" {
            return validation("scan CSV must have columns parameter,<quantity>");
        }
        let mut scan = Scan {
            name: name.into(),
            quantity: headers[1].to_string(),
            parameter: Vec::new(),
            values: Vec::new(),
        };
        for rec in r.records() {
            let rec = rec?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Validation(format!("bad number '{s}' in scan CSV")))
            };
            scan.parameter.push(parse(&rec[0])?);
            scan.values.push(parse(&rec[1])?);
        }
        Ok(scan)
    }

    /// File-name friendly version of `name`.
    pub fn file_stem(&self) -> String {
        self.name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
            .collect()
    }
}

/// Outcome of one fit in the tune-up, kept for inspection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub step: String,
    pub scan: Option<Scan>,
    pub estimate: f64,
    pub r2: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub location: f64,
    pub value: f64,
    pub fit: QuadraticFit,
}

/// Quadratic fit through the `fit_points` samples around the sampled
/// minimum (or maximum). The sampled extremum must be far enough from the
/// window edges for a centered fit, and the fitted vertex must lie inside the
/// fitted points.
pub fn fit_extremum(scan: &Scan, minimize: bool, fit_points: usize) -> Result<Extremum> {
    let n = scan.values.len();
    if n != scan.parameter.len() || n < fit_points || fit_points < 3 {
        return validation(format!("scan '{}' too short for a {fit_points}-point fit", scan.name));
    }
    let key = |v: f64| if minimize { v } else { -v };
    let best = (0..n)
        .min_by(|&a, &b| key(scan.values[a]).total_cmp(&key(scan.values[b])))
        .expect("non-empty");
    let half = fit_points / 2;
    let window_err = || Error::ScanWindow {
        scan: scan.name.clone(),
        lo: scan.parameter[0],
        hi: scan.parameter[n - 1],
    };
    if best < half || best + half >= n {
        return Err(window_err());
    }
    let xs = &scan.parameter[best - half..=best + half];
    let ys = &scan.values[best - half..=best + half];
    let fit = fit_quadratic(xs, ys)?;
    if (minimize && fit.a <= 0.0) || (!minimize && fit.a >= 0.0) {
        return Err(Error::FitQuality {
            fit: scan.name.clone(),
            detail: format!("quadratic curvature {:.3e} has the wrong sign", fit.a),
        });
    }
    let location = fit.vertex();
    let (lo, hi) = (xs[0].min(xs[xs.len() - 1]), xs[0].max(xs[xs.len() - 1]));
    if !(lo..=hi).contains(&location) {
        return Err(window_err());
    }
    Ok(Extremum {
        location,
        value: fit.eval(location),
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parabola(center: f64, sign: f64) -> Scan {
        let parameter: Vec<f64> = (0..41).map(|i| i as f64 * 0.1).collect();
        let values = parameter.iter().map(|x| sign * (x - center).powi(2) + 0.3).collect();
        Scan {
            name: "test".into(),
            quantity: "p_e".into(),
            parameter,
            values,
        }
    }

    #[test]
    fn finds_vertex_between_samples() {
        let e = fit_extremum(&parabola(2.03, 1.0), true, 7).unwrap();
        assert!((e.location - 2.03).abs() < 1e-10);
        let e = fit_extremum(&parabola(1.57, -1.0), false, 7).unwrap();
        assert!((e.location - 1.57).abs() < 1e-10);
    }

    #[test]
    fn edge_minimum_is_a_window_error() {
        assert!(matches!(
            fit_extremum(&parabola(0.1, 1.0), true, 7),
            Err(Error::ScanWindow { .. })
        ));
        assert!(matches!(
            fit_extremum(&parabola(5.0, 1.0), true, 7),
            Err(Error::ScanWindow { .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let s = parabola(1.0, 1.0);
        let text = s.to_csv().unwrap();
        assert!(text.starts_with("parameter,p_e\n"));
        let back = Scan::from_csv("test", &text).unwrap();
        assert_eq!(back, s);
    }
}
