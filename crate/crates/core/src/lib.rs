//! Generalized Stokes operators for a triplet of bosonic modes.
//!
//! The nine operators `Σ_i = a† λ_i a` are the Jordan–Schwinger images of the
//! identity and the eight Gell-Mann matrices. They commute with the 3D
//! isotropic oscillator Hamiltonian, close on the su(3) algebra, and contain
//! the orbital angular momentum. Their coherent-state expectations are the
//! classical Stokes parameters, which in turn fix the full geometry of the
//! oscillator's elliptical orbit (the polarization ellipse).
//!
//! Module map:
//!
//! - [`su3`]: Gell-Mann matrices, structure constants, closure checks.
//! - [`fock`]: truncated three-mode Fock space and sparse operators.
//! - [`stokes`]: Stokes operators, coherent states, classical parameters.
//! - [`polarization`]: the 3×3 polarization matrix and its 2D reduction.
//! - [`ellipse`]: classical orbit, quadric, Runge tensor, principal axes.
//! - [`ingest`]: least-squares recovery of initial conditions from samples.
//! - [`verify`]: the aggregate verification suite used by the CLI.
//! - [`report`]: deterministic JSON reports.

#![allow(clippy::needless_range_loop)]

pub mod ellipse;
pub mod error;
pub mod fock;
pub mod ingest;
pub mod linalg;
pub mod polarization;
pub mod report;
pub mod stokes;
pub mod su3;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Outcome of a residual-based verification.
///
/// A report with failures is still a successful return; callers decide what
/// to do with `passed() == false`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub tolerance: f64,
    pub max_residual: f64,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Failure {
    pub indices: Vec<usize>,
    pub residual: f64,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            tolerance,
            max_residual: 0.0,
            checked: 0,
            failures: Vec::new(),
        }
    }

    /// Records one residual; anything above tolerance (or NaN) is a failure.
    pub fn record(&mut self, indices: &[usize], residual: f64) {
        self.checked += 1;
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
        }
        if residual.is_nan() || residual > self.tolerance {
            self.failures.push(Failure {
                indices: indices.to_vec(),
                residual,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.max_residual.is_finite()
    }

    pub fn flags(&self, indices: &[usize]) -> bool {
        self.failures.iter().any(|f| f.indices == indices)
    }
}
