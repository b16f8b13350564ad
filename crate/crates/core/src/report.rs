//! Deterministic JSON reports for the CLI.
//!
//! Objects are emitted with sorted keys, reals with 17 significant digits in
//! exponent form, and a `meta` object naming the tool and command. A
//! non-finite real anywhere in a report is a serialization error, never a
//! silent `null`.

use std::io;

use num_complex::Complex64;
use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::ellipse::{semi_axes_bruteforce, Degeneracy, InitialConditions, OrbitAnalysis};
use crate::error::{Error, Result};
use crate::fock::FockBasis;
use crate::ingest::IngestAnalysis;
use crate::polarization::{build_j3d, reduce_to_2d};
use crate::stokes::{stokes_closed_form, stokes_expectation, CoherentAmplitudes};
use crate::verify::VerificationSuite;
use crate::VerificationReport;

/// A real that refuses to serialize unless finite. Negative zero is written as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0 + 0.0)
        } else {
            Err(S::Error::custom(format!("non-finite value {}", self.0)))
        }
    }
}

fn reals<const N: usize>(v: &[f64; N]) -> [Real; N] {
    v.map(Real)
}

fn matrix<const N: usize, const M: usize>(m: &[[f64; M]; N]) -> [[Real; M]; N] {
    m.map(|row| row.map(Real))
}

fn complex(z: Complex64) -> [Real; 2] {
    [Real(z.re), Real(z.im)]
}

#[derive(Debug, Serialize)]
pub struct ExpectReport {
    pub alpha: [[Real; 2]; 3],
    pub cutoff: usize,
    pub closed_form: [Real; 9],
    pub expectation: [Real; 9],
    pub abs_error: [Real; 9],
    pub truncation_deficit: Real,
}

pub fn expect_report(alpha: &CoherentAmplitudes, basis: FockBasis) -> Result<ExpectReport> {
    let closed = stokes_closed_form(alpha);
    let e = stokes_expectation(alpha, basis)?;
    Ok(ExpectReport {
        alpha: alpha.0.map(complex),
        cutoff: basis.cutoff(),
        closed_form: reals(&closed.values),
        expectation: reals(&e.stokes.values),
        abs_error: std::array::from_fn(|i| Real((closed[i] - e.stokes[i]).abs())),
        truncation_deficit: Real(e.truncation_deficit),
    })
}

#[derive(Debug, Serialize)]
pub struct PolMatrixReport {
    pub alpha: [[Real; 2]; 3],
    pub stokes: [Real; 9],
    #[serde(rename = "J")]
    pub j: [[[Real; 2]; 3]; 3],
    pub eigenvalues: [Real; 3],
    /// Present only when the third row and column vanish within tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_2d: Option<[[[Real; 2]; 2]; 2]>,
}

pub fn polmatrix_report(alpha: &CoherentAmplitudes, tolerance: f64) -> Result<PolMatrixReport> {
    let s = stokes_closed_form(alpha);
    let j = build_j3d(&s)?;
    let reduced_2d = match reduce_to_2d(&j, tolerance) {
        Ok(block) => Some(block.map(|row| row.map(complex))),
        Err(Error::NotZPropagating(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(PolMatrixReport {
        alpha: alpha.0.map(complex),
        stokes: reals(&s.values),
        j: j.0 .0.map(|row| row.map(complex)),
        eigenvalues: reals(&j.eigenvalues()?),
        reduced_2d,
    })
}

#[derive(Debug, Serialize)]
pub struct QuadricReport {
    #[serde(rename = "Q")]
    pub q: [[Real; 3]; 3],
    pub c: Real,
}

#[derive(Debug, Serialize)]
pub struct InitialConditionsReport {
    pub a: [Real; 3],
    pub b: [Real; 3],
}

#[derive(Debug, Serialize)]
pub struct DegenerateFlags {
    pub degenerate: Degeneracy,
    pub circular: bool,
}

#[derive(Debug, Serialize)]
pub struct EllipseReport {
    pub initial_conditions: InitialConditionsReport,
    pub stokes_canonical: [Real; 9],
    pub stokes_geometric: [Real; 9],
    #[serde(rename = "L")]
    pub l: [Real; 3],
    pub energy: Real,
    pub theta: Option<Real>,
    pub phi: Option<Real>,
    pub quadric: QuadricReport,
    pub runge: [[Real; 3]; 3],
    /// Runge-tensor eigenvalues: `[λ+, λ-, λ0]` for a proper ellipse,
    /// descending order otherwise.
    pub eigenvalues: [Real; 3],
    /// `[semi-major, semi-minor]`; null for degenerate orbits.
    pub semi_axes: Option<[Real; 2]>,
    /// Rows: major axis, minor axis, normal; null for degenerate orbits.
    pub axes: Option<[[Real; 3]; 3]>,
    /// `[max |x|, min |x|]` over the sampled orbit.
    pub semi_axes_bruteforce: [Real; 2],
    pub degenerate_flags: DegenerateFlags,
}

pub fn ellipse_report(analysis: &OrbitAnalysis, samples: usize) -> Result<EllipseReport> {
    let ic: &InitialConditions = &analysis.initial_conditions;
    let (hi, lo) = semi_axes_bruteforce(ic, samples)?;
    let g = analysis.geometry.as_ref();
    Ok(EllipseReport {
        initial_conditions: InitialConditionsReport {
            a: reals(&ic.a),
            b: reals(&ic.b),
        },
        stokes_canonical: reals(&analysis.stokes_canonical.values),
        stokes_geometric: reals(&analysis.stokes_geometric.values),
        l: reals(&analysis.angular_momentum),
        energy: Real(analysis.energy),
        theta: g.map(|g| Real(g.theta)),
        phi: g.map(|g| Real(g.phi)),
        quadric: QuadricReport {
            q: matrix(&analysis.quadric.q),
            c: Real(analysis.quadric.c),
        },
        runge: matrix(&analysis.runge.0),
        eigenvalues: reals(&g.map_or(analysis.runge_eigenvalues, |g| g.eigenvalues)),
        semi_axes: g.map(|g| [Real(g.semi_major), Real(g.semi_minor)]),
        axes: g.map(|g| matrix(&[g.major_axis, g.minor_axis, g.normal])),
        semi_axes_bruteforce: [Real(hi), Real(lo)],
        degenerate_flags: DegenerateFlags {
            degenerate: analysis.degeneracy,
            circular: g.is_some_and(|g| g.circular),
        },
    })
}

#[derive(Debug, Serialize)]
pub struct IngestReport {
    #[serde(flatten)]
    pub ellipse: EllipseReport,
    pub fit_residuals: [Real; 3],
    pub fit_condition_number: Real,
    pub records: usize,
}

pub fn ingest_report(analysis: &IngestAnalysis, records: usize, samples: usize) -> Result<IngestReport> {
    Ok(IngestReport {
        ellipse: ellipse_report(&analysis.orbit, samples)?,
        fit_residuals: reals(&analysis.fit.rms_residuals),
        fit_condition_number: Real(analysis.fit.condition_number),
        records,
    })
}

#[derive(Debug, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: bool,
    pub tolerance: Real,
    pub max_residual: Real,
    pub checked: usize,
    pub failure_count: usize,
    /// Up to ten failing index tuples.
    pub failures: Vec<Vec<usize>>,
}

impl From<&VerificationReport> for CheckSummary {
    fn from(r: &VerificationReport) -> Self {
        Self {
            name: r.name.clone(),
            passed: r.passed(),
            tolerance: Real(r.tolerance),
            max_residual: Real(r.max_residual),
            checked: r.checked,
            failure_count: r.failures.len(),
            failures: r.failures.iter().take(10).map(|f| f.indices.clone()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub cutoff: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
}

pub fn verify_report(suite: &VerificationSuite) -> VerifyReport {
    VerifyReport {
        cutoff: suite.config.cutoff,
        seed: suite.config.seed,
        passed: suite.passed(),
        checks: suite.reports.iter().map(CheckSummary::from).collect(),
    }
}

/// Compact JSON with every `f64` written as `{:.16e}` (17 significant digits).
struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes `result` under a `meta` header naming `command`.
///
/// `result` must serialize to a JSON object; keys come out sorted.
pub fn format_report<T: Serialize>(command: &str, result: &T) -> Result<String> {
    let value = serde_json::to_value(result).map_err(|e| Error::NonFinite(e.to_string()))?;
    let Value::Object(mut map) = value else {
        return Err(Error::InvalidArgument("report must be a JSON object".into()));
    };
    map.insert(
        "meta".into(),
        serde_json::json!({
            "tool": "stokes3d",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
        }),
    );
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    Value::Object(map).serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}
