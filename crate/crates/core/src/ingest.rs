//! Recovering orbit initial conditions from sampled field components.
//!
//! Each component is fitted independently to `x_i(t) = a_i cos t + b_i sin t`
//! by linear least squares. The 2×2 normal matrix is shared by all three
//! components, so identifiability is a property of the sample times alone.

use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::ellipse::{analyze_orbit, orbit_position, InitialConditions, OrbitAnalysis};
use crate::error::{Error, Result};
use crate::linalg::Vec3;

/// Normal-matrix condition number above which a fit is rejected.
pub const MAX_CONDITION: f64 = 1e8;
pub const MIN_RECORDS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct FieldSample {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl FieldSample {
    pub fn new(t: f64, x: Vec3) -> Self {
        Self {
            t,
            x1: x[0],
            x2: x[1],
            x3: x[2],
        }
    }

    pub fn components(&self) -> Vec3 {
        [self.x1, self.x2, self.x3]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSampleSeries {
    pub samples: Vec<FieldSample>,
    /// Angular frequency; times are rescaled to `ω t`. `None` means 1.
    pub omega: Option<f64>,
}

impl FieldSampleSeries {
    pub fn new(samples: Vec<FieldSample>) -> Self {
        Self {
            samples,
            omega: None,
        }
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = Some(omega);
        self
    }

    /// Noise-free samples of the orbit at the given times.
    pub fn from_orbit(ic: &InitialConditions, times: impl IntoIterator<Item = f64>) -> Self {
        Self::new(
            times
                .into_iter()
                .map(|t| FieldSample::new(t, orbit_position(ic, t)))
                .collect(),
        )
    }

    /// Reads `t,x1,x2,x3` CSV; lines starting with `#` are skipped.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        if header != ["t", "x1", "x2", "x3"] {
            return Err(Error::Input(format!(
                "expected header `t,x1,x2,x3`, found `{}`",
                header.join(",")
            )));
        }
        let samples = rdr.deserialize().collect::<std::result::Result<Vec<FieldSample>, _>>()?;
        if let Some(bad) = samples
            .iter()
            .find(|s| !(s.t.is_finite() && s.components().iter().all(|x| x.is_finite())))
        {
            return Err(Error::Input(format!("non-finite sample at t = {}", bad.t)));
        }
        Ok(Self::new(samples))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub initial_conditions: InitialConditions,
    /// Root-mean-square residual per component.
    pub rms_residuals: Vec3,
    pub condition_number: f64,
}

pub fn fit_initial_conditions(series: &FieldSampleSeries) -> Result<FitResult> {
    let omega = series.omega.unwrap_or(1.0);
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidArgument(format!("omega must be positive, got {omega}")));
    }
    // canonical order makes the fit independent of record order
    let mut samples = series.samples.clone();
    samples.sort_by(|p, q| {
        p.t.total_cmp(&q.t)
            .then(p.x1.total_cmp(&q.x1))
            .then(p.x2.total_cmp(&q.x2))
            .then(p.x3.total_cmp(&q.x3))
    });

    let mut distinct = samples.iter().map(|s| s.t).collect::<Vec<_>>();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Identifiability(format!(
            "need at least 2 distinct sample times, got {}",
            distinct.len()
        )));
    }

    let (mut cc, mut cs, mut ss) = (0.0, 0.0, 0.0);
    let mut xc = [0.0; 3];
    let mut xs = [0.0; 3];
    for s in &samples {
        let (sin, cos) = (omega * s.t).sin_cos();
        cc += cos * cos;
        cs += cos * sin;
        ss += sin * sin;
        for (k, x) in s.components().iter().enumerate() {
            xc[k] += x * cos;
            xs[k] += x * sin;
        }
    }

    let mean = (cc + ss) / 2.0;
    let spread = ((cc - ss) * (cc - ss) / 4.0 + cs * cs).sqrt();
    let (hi, lo) = (mean + spread, mean - spread);
    let condition_number = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if condition_number > MAX_CONDITION {
        return Err(Error::Identifiability(format!(
            "design matrix condition number {condition_number:e} exceeds {MAX_CONDITION:e} \
             (sample times congruent modulo π?)"
        )));
    }
    if samples.len() < MIN_RECORDS {
        return Err(Error::Input(format!(
            "need at least {MIN_RECORDS} records, got {}",
            samples.len()
        )));
    }

    let det = cc * ss - cs * cs;
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    for k in 0..3 {
        a[k] = (ss * xc[k] - cs * xs[k]) / det;
        b[k] = (cc * xs[k] - cs * xc[k]) / det;
    }
    let ic = InitialConditions::new(a, b);

    let mut sq = [0.0; 3];
    for s in &samples {
        let model = orbit_position(&ic, omega * s.t);
        for (k, x) in s.components().iter().enumerate() {
            sq[k] += (x - model[k]).powi(2);
        }
    }
    let n = samples.len() as f64;
    Ok(FitResult {
        initial_conditions: ic,
        rms_residuals: sq.map(|v| (v / n).sqrt()),
        condition_number,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestAnalysis {
    pub fit: FitResult,
    pub orbit: OrbitAnalysis,
}

/// Fit, then run the full orbit analysis on the fitted initial conditions.
pub fn analyze(series: &FieldSampleSeries) -> Result<IngestAnalysis> {
    let fit = fit_initial_conditions(series)?;
    let orbit = analyze_orbit(&fit.initial_conditions)?;
    Ok(IngestAnalysis { fit, orbit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipse::Degeneracy;
    use std::f64::consts::PI;

    fn reference() -> InitialConditions {
        InitialConditions::new([2.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    }

    #[test]
    fn exact_recovery_from_four_samples() {
        let s = FieldSampleSeries::from_orbit(&reference(), [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]);
        let fit = fit_initial_conditions(&s).unwrap();
        for k in 0..3 {
            assert!((fit.initial_conditions.a[k] - reference().a[k]).abs() < 1e-10);
            assert!((fit.initial_conditions.b[k] - reference().b[k]).abs() < 1e-10);
        }
        assert!(fit.rms_residuals.iter().all(|r| *r < 1e-10));
    }

    #[test]
    fn zero_signal_gives_rest() {
        let s = FieldSampleSeries::new((0..8).map(|k| FieldSample::new(k as f64 * 0.4, [0.0; 3])).collect());
        let fit = fit_initial_conditions(&s).unwrap();
        assert_eq!(fit.initial_conditions, InitialConditions::new([0.0; 3], [0.0; 3]));
        assert_eq!(fit.rms_residuals, [0.0; 3]);
    }

    #[test]
    fn times_congruent_mod_pi_are_not_identifiable() {
        let s = FieldSampleSeries::from_orbit(&reference(), [0.0, PI]);
        assert!(matches!(fit_initial_conditions(&s), Err(Error::Identifiability(_))));
        let s = FieldSampleSeries::from_orbit(&reference(), [0.0, PI, 2.0 * PI, 3.0 * PI]);
        assert!(matches!(fit_initial_conditions(&s), Err(Error::Identifiability(_))));
        let s = FieldSampleSeries::from_orbit(&reference(), [1.0; 5]);
        assert!(matches!(fit_initial_conditions(&s), Err(Error::Identifiability(_))));
    }

    #[test]
    fn too_few_records() {
        let s = FieldSampleSeries::from_orbit(&reference(), [0.0, 1.0, 2.0]);
        assert!(matches!(fit_initial_conditions(&s), Err(Error::Input(_))));
    }

    #[test]
    fn omega_rescales_time() {
        let ic = InitialConditions::new([0.5, -1.0, 0.2], [1.0, 0.3, 0.0]);
        let omega = 2.5;
        let samples = (0..20)
            .map(|k| {
                let t = k as f64 * 0.13;
                FieldSample::new(t, orbit_position(&ic, omega * t))
            })
            .collect();
        let fit = fit_initial_conditions(&FieldSampleSeries::new(samples).with_omega(omega)).unwrap();
        for k in 0..3 {
            assert!((fit.initial_conditions.a[k] - ic.a[k]).abs() < 1e-12);
            assert!((fit.initial_conditions.b[k] - ic.b[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_parsing() {
        let text = "# sampled field\nt,x1,x2,x3\n0,2,0,0\n# midway\n1.5707963267948966, 0, 1, 0\n";
        let s = FieldSampleSeries::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(s.samples.len(), 2);
        assert_eq!(s.samples[1].x2, 1.0);

        let bad = "time,x,y,z\n0,1,2,3\n";
        assert!(matches!(FieldSampleSeries::from_csv_reader(bad.as_bytes()), Err(Error::Input(_))));
        let bad = "t,x1,x2,x3\n0,1,oops,3\n";
        assert!(FieldSampleSeries::from_csv_reader(bad.as_bytes()).is_err());
    }

    #[test]
    fn analyze_reference_orbit() {
        let times = (0..16).map(|k| k as f64 * 2.0 * PI / 16.0);
        let r = analyze(&FieldSampleSeries::from_orbit(&reference(), times)).unwrap();
        let g = r.orbit.geometry.unwrap();
        assert!((g.semi_major - 2.0).abs() < 1e-8);
        assert!((g.semi_minor - 1.0).abs() < 1e-8);
    }

    #[test]
    fn analyze_flags_linear_orbit() {
        let ic = InitialConditions::new([1.0, 2.0, 0.5], [0.5, 1.0, 0.25]);
        let times = (0..16).map(|k| k as f64 * 0.3);
        let r = analyze(&FieldSampleSeries::from_orbit(&ic, times)).unwrap();
        assert_eq!(r.orbit.degeneracy, Degeneracy::Linear);
        assert!(r.orbit.geometry.is_none());
    }
}
