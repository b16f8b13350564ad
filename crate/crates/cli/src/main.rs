use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stokes3d::ellipse::{analyze_orbit, orbit_position, InitialConditions};
use stokes3d::fock::FockBasis;
use stokes3d::ingest::{analyze, FieldSampleSeries};
use stokes3d::report::{
    ellipse_report, expect_report, format_report, ingest_report, polmatrix_report, verify_report,
};
use stokes3d::stokes::CoherentAmplitudes;
use stokes3d::verify::{self, VerifyConfig, DEFAULT_SEED};
use stokes3d::{Complex64, Error};

/// Threshold on the third row and column of J for the 2D reduction.
const REDUCTION_TOLERANCE: f64 = 1e-13;

/// Generalized Stokes operators: verification, expectations and ellipse geometry.
#[derive(Debug, Parser)]
#[command(name = "stokes3d", version)]
struct Cli {
    /// Per-mode Fock-space cutoff.
    #[arg(long, global = true, env = "STOKES3D_DEFAULT_CUTOFF", default_value_t = 12,
          value_parser = clap::value_parser!(u64).range(2..))]
    cutoff: u64,

    /// Override every verification threshold (or the 2D-reduction threshold for `polmatrix`).
    #[arg(long, global = true, value_parser = parse_positive)]
    tol: Option<f64>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the algebraic and conservation checks.
    Verify,
    /// Coherent-state Stokes expectations versus the closed form.
    Expect {
        /// Three complex amplitudes, each `re,im`.
        #[arg(long, num_args = 3, required = true, allow_hyphen_values = true, value_parser = parse_complex)]
        alpha: Vec<Complex64>,
    },
    /// Polarization matrix of a coherent state.
    Polmatrix {
        #[arg(long, num_args = 3, required = true, allow_hyphen_values = true, value_parser = parse_complex)]
        alpha: Vec<Complex64>,
    },
    /// Orbit geometry from initial position `a` and velocity `b`.
    Ellipse {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_vec3)]
        a: [f64; 3],
        #[arg(long, allow_hyphen_values = true, value_parser = parse_vec3)]
        b: [f64; 3],
        /// Points per period for the brute-force semi-axes and the orbit CSV.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(4..))]
        samples: u64,
        /// Write one period of the orbit as `t,x1,x2,x3` CSV.
        #[arg(long)]
        emit_orbit: Option<PathBuf>,
    },
    /// Fit sampled field components and report the orbit geometry.
    Ingest {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = parse_positive)]
        omega: Option<f64>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(4..))]
        samples: u64,
    },
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts = s.split(',').map(parse_finite).collect::<Result<Vec<_>, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("`{s}`: expected {N} comma-separated numbers"))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    parse_list::<2>(s).map(|[re, im]| Complex64::new(re, im))
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    parse_list::<3>(s)
}

fn amplitudes(alpha: &[Complex64]) -> CoherentAmplitudes {
    CoherentAmplitudes([alpha[0], alpha[1], alpha[2]])
}

fn write_orbit(path: &PathBuf, ic: &InitialConditions, samples: u64) -> io::Result<()> {
    let mut w = io::BufWriter::new(fs::File::create(path)?);
    writeln!(w, "t,x1,x2,x3")?;
    for k in 0..samples {
        let t = std::f64::consts::TAU * k as f64 / samples as f64;
        let [x1, x2, x3] = orbit_position(ic, t);
        writeln!(w, "{t:.16e},{x1:.16e},{x2:.16e},{x3:.16e}")?;
    }
    w.flush()
}

enum Failure {
    Usage(String),
    Fatal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite(_) | Error::Json(_) => Failure::Fatal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Returns the report text and whether every check passed.
fn execute(cli: &Cli) -> Result<(String, bool), Failure> {
    let cutoff = cli.cutoff as usize;
    match &cli.command {
        Command::Verify => {
            let suite = verify::run(&VerifyConfig {
                cutoff,
                tolerance: cli.tol,
                seed: cli.seed,
            })?;
            Ok((format_report("verify", &verify_report(&suite))?, suite.passed()))
        }
        Command::Expect { alpha } => {
            let r = expect_report(&amplitudes(alpha), FockBasis::new(cutoff)?)?;
            Ok((format_report("expect", &r)?, true))
        }
        Command::Polmatrix { alpha } => {
            let tol = cli.tol.unwrap_or(REDUCTION_TOLERANCE);
            let r = polmatrix_report(&amplitudes(alpha), tol)?;
            Ok((format_report("polmatrix", &r)?, true))
        }
        Command::Ellipse {
            a,
            b,
            samples,
            emit_orbit,
        } => {
            let ic = InitialConditions::new(*a, *b);
            let analysis = analyze_orbit(&ic)?;
            let text = format_report("ellipse", &ellipse_report(&analysis, *samples as usize)?)?;
            if let Some(path) = emit_orbit {
                write_orbit(path, &ic, *samples)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok((text, true))
        }
        Command::Ingest {
            file,
            omega,
            samples,
        } => {
            let mut series = FieldSampleSeries::from_path(file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            if let Some(w) = omega {
                series = series.with_omega(*w);
            }
            let records = series.samples.len();
            let r = ingest_report(&analyze(&series)?, records, *samples as usize)?;
            Ok((format_report("ingest", &r)?, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((text, passed)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text)
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("stokes3d: {e}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("stokes3d: verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("stokes3d: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Fatal(msg)) => {
            eprintln!("stokes3d: {msg}");
            ExitCode::from(1)
        }
    }
}
