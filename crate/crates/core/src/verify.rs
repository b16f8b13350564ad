//! The aggregate verification suite run by `stokes3d verify`.
//!
//! Operator checks run on the truncated Fock space and are restricted to the
//! safe subspace (total quanta ≤ N - 2). The classical sweeps draw random
//! inputs from a seeded ChaCha stream, so every run with the same seed
//! checks the same points.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ellipse::{
    ellipsoid_from_ic, ellipsoid_from_stokes, runge_from_ic, runge_from_stokes, stokes_geometric,
    InitialConditions,
};
use crate::error::{Error, Result};
use crate::fock::{FockBasis, DEFAULT_CUTOFF};
use crate::polarization::{build_j3d, stokes_from_j3d};
use crate::stokes::{
    check_angular_momentum, check_canonical_commutation, check_conservation, check_fock_closure,
    pure_state_residuals, stokes_closed_form, stokes_operators, CoherentAmplitudes, StokesVector,
};
use crate::su3::{check_su3_closure, check_trace_orthogonality, StructureConstantTable};
use crate::VerificationReport;

pub const DEFAULT_SEED: u64 = 20_070_301;
pub const SAFE_MARGIN: usize = 2;
pub const SWEEP_SAMPLES: usize = 100;
/// Coherent amplitudes in the sweeps satisfy `|α_i| ≤ MAX_AMPLITUDE`.
pub const MAX_AMPLITUDE: f64 = 1.2;

/// Default thresholds per check.
pub mod tolerance {
    pub const SU3_CLOSURE: f64 = 1e-14;
    pub const TRACE_ORTHOGONALITY: f64 = 1e-15;
    pub const CANONICAL_COMMUTATION: f64 = 1e-13;
    pub const CONSERVATION: f64 = 1e-12;
    pub const FOCK_CLOSURE: f64 = 1e-12;
    pub const ANGULAR_MOMENTUM: f64 = 1e-13;
    pub const PURE_STATE: f64 = 1e-12;
    pub const POLARIZATION_ROUND_TRIP: f64 = 1e-13;
    pub const ELLIPSE_CONSISTENCY: f64 = 1e-12;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub cutoff: usize,
    /// Replaces every default threshold when set.
    pub tolerance: Option<f64>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            cutoff: DEFAULT_CUTOFF,
            tolerance: None,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationSuite {
    pub config: VerifyConfig,
    pub reports: Vec<VerificationReport>,
}

impl VerificationSuite {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }
}

pub fn random_amplitudes(rng: &mut impl Rng, max_modulus: f64) -> CoherentAmplitudes {
    CoherentAmplitudes(std::array::from_fn(|_| {
        let r = rng.random_range(0.0..=max_modulus);
        let phi = rng.random_range(-PI..PI);
        Complex64::from_polar(r, phi)
    }))
}

pub fn random_initial_conditions(rng: &mut impl Rng, scale: f64) -> InitialConditions {
    InitialConditions::new(
        std::array::from_fn(|_| rng.random_range(-scale..scale)),
        std::array::from_fn(|_| rng.random_range(-scale..scale)),
    )
}

pub fn run(config: &VerifyConfig) -> Result<VerificationSuite> {
    if config.cutoff < 2 {
        return Err(Error::InvalidArgument(format!(
            "cutoff must be at least 2, got {}",
            config.cutoff
        )));
    }
    if let Some(t) = config.tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
        }
    }
    let tol = |default: f64| config.tolerance.unwrap_or(default);

    let basis = FockBasis::new(config.cutoff)?;
    let ops = stokes_operators(basis);
    let table = StructureConstantTable::standard();

    let mut reports = vec![
        check_su3_closure(tol(tolerance::SU3_CLOSURE)),
        check_trace_orthogonality(tol(tolerance::TRACE_ORTHOGONALITY)),
        check_canonical_commutation(basis, tol(tolerance::CANONICAL_COMMUTATION))?,
        check_conservation(&ops, SAFE_MARGIN, tol(tolerance::CONSERVATION))?,
        check_fock_closure(&ops, &table, SAFE_MARGIN, tol(tolerance::FOCK_CLOSURE))?,
        check_angular_momentum(&ops, SAFE_MARGIN, tol(tolerance::ANGULAR_MOMENTUM))?,
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    reports.push(pure_state_sweep(&mut rng, tol(tolerance::PURE_STATE)));
    reports.push(polarization_sweep(&mut rng, tol(tolerance::POLARIZATION_ROUND_TRIP))?);
    reports.push(ellipse_sweep(&mut rng, tol(tolerance::ELLIPSE_CONSISTENCY))?);

    Ok(VerificationSuite {
        config: *config,
        reports,
    })
}

fn pure_state_sweep(rng: &mut impl Rng, tolerance: f64) -> VerificationReport {
    let mut report = VerificationReport::new("pure_state_identities", tolerance);
    for k in 0..SWEEP_SAMPLES {
        let s = stokes_closed_form(&random_amplitudes(rng, MAX_AMPLITUDE));
        for (j, r) in pure_state_residuals(&s).into_iter().enumerate() {
            report.record(&[k, j], r);
        }
    }
    report
}

fn polarization_sweep(rng: &mut impl Rng, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("polarization_round_trip", tolerance);
    for k in 0..SWEEP_SAMPLES {
        let s = StokesVector::canonical(std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
        let back = stokes_from_j3d(&build_j3d(&s)?)?;
        report.record(&[k], back.max_abs_diff(&s));
    }
    Ok(report)
}

fn ellipse_sweep(rng: &mut impl Rng, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("ellipse_consistency", tolerance);
    for k in 0..SWEEP_SAMPLES {
        let ic = random_initial_conditions(rng, 1.5);
        let s = stokes_geometric(&ic);
        report.record(&[k, 0], ellipsoid_from_stokes(&s)?.max_abs_diff(&ellipsoid_from_ic(&ic)));
        report.record(&[k, 1], runge_from_stokes(&s)?.max_abs_diff(&runge_from_ic(&ic)));
    }
    Ok(report)
}
