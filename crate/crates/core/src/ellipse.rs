//! Classical 3D isotropic oscillator and the geometry of its elliptical orbit.
//!
//! With unit mass and frequency the orbit is `x(t) = a cos t + b sin t`, where
//! `a` and `b` are the position and velocity at `t = 0`. Everything here is a
//! function of those six numbers: the Stokes parameters in both conventions,
//! the ellipsoid containing the orbit, the angular momentum `a × b`, the
//! Euler angles of the orbit plane, and the conserved Runge tensor
//! `A = (p pᵀ + x xᵀ)/2` whose eigenvectors are the ellipse axes.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cross, dot, jacobi_eigen, mat_vec, norm, Mat3, Vec3};
use crate::stokes::{principal, stokes_closed_form, CoherentAmplitudes, Convention, StokesVector};

/// Relative in-plane eigenvalue gap below which an orbit counts as circular.
pub const CIRCULAR_GAP: f64 = 1e-10;

/// Position `a` and velocity `b` at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialConditions {
    pub a: Vec3,
    pub b: Vec3,
}

impl InitialConditions {
    pub fn new(a: Vec3, b: Vec3) -> Self {
        Self { a, b }
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().chain(&self.b).all(|v| v.is_finite())
    }
}

pub fn orbit_position(ic: &InitialConditions, t: f64) -> Vec3 {
    let (s, c) = t.sin_cos();
    std::array::from_fn(|i| ic.a[i] * c + ic.b[i] * s)
}

pub fn orbit_velocity(ic: &InitialConditions, t: f64) -> Vec3 {
    let (s, c) = t.sin_cos();
    std::array::from_fn(|i| -ic.a[i] * s + ic.b[i] * c)
}

/// Oscillation amplitudes and phases of `x_i = |α_0i| sin(t + φ_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationAmplitudes {
    pub moduli: Vec3,
    pub phases: Vec3,
}

/// `|α_0i| = √(a_i² + b_i²)`, `φ_i = atan2(a_i, b_i)`; `φ_i = 0` for a silent mode.
pub fn amplitudes_geometric(ic: &InitialConditions) -> OscillationAmplitudes {
    let moduli = std::array::from_fn(|i| ic.a[i].hypot(ic.b[i]));
    let phases = std::array::from_fn(|i| {
        if moduli[i] == 0.0 {
            0.0
        } else {
            principal(ic.a[i].atan2(ic.b[i]))
        }
    });
    OscillationAmplitudes { moduli, phases }
}

/// `α_i = (a_i + i b_i)/√2`.
pub fn amplitudes_canonical(ic: &InitialConditions) -> CoherentAmplitudes {
    let k = std::f64::consts::FRAC_1_SQRT_2;
    CoherentAmplitudes(std::array::from_fn(|i| Complex64::new(ic.a[i] * k, ic.b[i] * k)))
}

pub fn stokes_canonical(ic: &InitialConditions) -> StokesVector {
    stokes_closed_form(&amplitudes_canonical(ic))
}

/// Stokes parameters from oscillation amplitudes and phases, with
/// `s_8 = |α_01|² + |α_02|² - 2|α_03|²` (no `1/√3`).
pub fn stokes_geometric(ic: &InitialConditions) -> StokesVector {
    let OscillationAmplitudes { moduli: m, phases: p } = amplitudes_geometric(ic);
    let d = |i: usize, j: usize| principal(p[i] - p[j]);
    let (d21, d31, d32) = (d(1, 0), d(2, 0), d(2, 1));
    let n = [m[0] * m[0], m[1] * m[1], m[2] * m[2]];
    StokesVector::geometric([
        n[0] + n[1] + n[2],
        2.0 * m[0] * m[1] * d21.cos(),
        2.0 * m[0] * m[1] * d21.sin(),
        n[0] - n[1],
        2.0 * m[0] * m[2] * d31.cos(),
        2.0 * m[0] * m[2] * d31.sin(),
        2.0 * m[1] * m[2] * d32.cos(),
        2.0 * m[1] * m[2] * d32.sin(),
        n[0] + n[1] - 2.0 * n[2],
    ])
}

/// Recovers one set of initial conditions that reproduces a geometric
/// Stokes vector.
///
/// Only phase differences are encoded, so the mode with the largest
/// amplitude is given phase zero; any other choice is a time shift of the
/// same orbit.
pub fn initial_conditions_from_geometric(s: &StokesVector) -> Result<InitialConditions> {
    s.expect(Convention::Geometric)?;
    let v = &s.values;
    let n = [
        v[0] / 3.0 + v[3] / 2.0 + v[8] / 6.0,
        v[0] / 3.0 - v[3] / 2.0 + v[8] / 6.0,
        (v[0] - v[8]) / 3.0,
    ];
    let moduli: Vec3 = n.map(|x| x.max(0.0).sqrt());
    // Δ_ij = φ_i - φ_j
    let d21 = v[2].atan2(v[1]);
    let d31 = v[5].atan2(v[4]);
    let d32 = v[7].atan2(v[6]);
    let reference = (0..3)
        .max_by(|&i, &j| moduli[i].total_cmp(&moduli[j]))
        .expect("three modes");
    let phases: Vec3 = match reference {
        0 => [0.0, d21, d31],
        1 => [-d21, 0.0, d32],
        _ => [-d31, -d32, 0.0],
    };
    let a = std::array::from_fn(|i| moduli[i] * phases[i].sin());
    let b = std::array::from_fn(|i| moduli[i] * phases[i].cos());
    Ok(InitialConditions { a, b })
}

/// `L = a × b`.
pub fn angular_momentum_cl(ic: &InitialConditions) -> Vec3 {
    cross(&ic.a, &ic.b)
}

/// The quadric `xᵀ Q x = c` containing the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsoidQuadric {
    pub q: Mat3,
    pub c: f64,
}

impl EllipsoidQuadric {
    /// `xᵀ Q x - c`.
    pub fn residual(&self, x: &Vec3) -> f64 {
        dot(x, &mat_vec(&self.q, x)) - self.c
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        crate::linalg::max_abs_diff(&self.q, &other.q).max((self.c - other.c).abs())
    }
}

pub fn ellipsoid_from_ic(ic: &InitialConditions) -> EllipsoidQuadric {
    let (a, b) = (&ic.a, &ic.b);
    let sq = |i: usize| a[i] * a[i] + b[i] * b[i];
    let off = |i: usize, j: usize| -(a[i] * a[j] + b[i] * b[j]);
    let q = [
        [sq(1) + sq(2), off(0, 1), off(0, 2)],
        [off(0, 1), sq(0) + sq(2), off(1, 2)],
        [off(0, 2), off(1, 2), sq(0) + sq(1)],
    ];
    let l = cross(a, b);
    EllipsoidQuadric { q, c: dot(&l, &l) }
}

/// The same quadric written in geometric Stokes parameters.
pub fn ellipsoid_from_stokes(s: &StokesVector) -> Result<EllipsoidQuadric> {
    s.expect(Convention::Geometric)?;
    let v = &s.values;
    let common = (4.0 * v[0] - v[8]) / 6.0;
    let q = [
        [common - v[3] / 2.0, -v[1] / 2.0, -v[4] / 2.0],
        [-v[1] / 2.0, common + v[3] / 2.0, -v[6] / 2.0],
        [-v[4] / 2.0, -v[6] / 2.0, (2.0 * v[0] + v[8]) / 3.0],
    ];
    let c = (v[7] * v[7] + v[5] * v[5] + v[2] * v[2]) / 4.0;
    Ok(EllipsoidQuadric { q, c })
}

/// Inclination `theta` of the orbit normal and orientation `phi` of the line of nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub theta: f64,
    pub phi: f64,
}

/// `cos θ = L3/|L|`, `sin φ = L1/ρ`, `cos φ = L2/ρ` with `ρ = √(L1² + L2²)`.
///
/// `φ = 0` when the node line is undefined (`L1 = L2 = 0`).
pub fn euler_angles(l: &Vec3) -> Result<EulerAngles> {
    let rho = l[0].hypot(l[1]);
    if rho == 0.0 && l[2] == 0.0 {
        return Err(Error::DegenerateOrbit);
    }
    let theta = rho.atan2(l[2]);
    let phi = if rho == 0.0 { 0.0 } else { principal(l[0].atan2(l[1])) };
    Ok(EulerAngles { theta, phi })
}

/// The symmetric conserved tensor `A = (p pᵀ + x xᵀ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RungeTensor(pub Mat3);

impl RungeTensor {
    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn contract(&self, v: &Vec3) -> Vec3 {
        mat_vec(&self.0, v)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        crate::linalg::max_abs_diff(&self.0, &other.0)
    }
}

pub fn runge_at(ic: &InitialConditions, t: f64) -> RungeTensor {
    let x = orbit_position(ic, t);
    let p = orbit_velocity(ic, t);
    RungeTensor(std::array::from_fn(|i| {
        std::array::from_fn(|j| 0.5 * (p[i] * p[j] + x[i] * x[j]))
    }))
}

/// `A = (a aᵀ + b bᵀ)/2`.
pub fn runge_from_ic(ic: &InitialConditions) -> RungeTensor {
    runge_at(ic, 0.0)
}

pub fn runge_from_stokes(s: &StokesVector) -> Result<RungeTensor> {
    s.expect(Convention::Geometric)?;
    let v = &s.values;
    let common = (2.0 * v[0] + v[8]) / 6.0;
    let a11 = (common + v[3] / 2.0) / 2.0;
    let a22 = (common - v[3] / 2.0) / 2.0;
    let a33 = (v[0] - v[8]) / 6.0;
    let a12 = v[1] / 4.0;
    let a13 = v[4] / 4.0;
    let a23 = v[6] / 4.0;
    Ok(RungeTensor([[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]]))
}

/// Principal-axis description of the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    pub angular_momentum: Vec3,
    pub energy: f64,
    pub theta: f64,
    pub phi: f64,
    /// `[λ+, λ-, λ0]`: the two in-plane eigenvalues, then the one along `L`.
    pub eigenvalues: Vec3,
    pub semi_major: f64,
    pub semi_minor: f64,
    pub major_axis: Vec3,
    pub minor_axis: Vec3,
    pub normal: Vec3,
    pub circular: bool,
}

/// Eigen-decomposition of the Runge tensor, with the eigenvector along `L`
/// split off as the orbit normal.
pub fn principal_axes(a: &RungeTensor, l: &Vec3) -> Result<EllipseGeometry> {
    let l_norm = norm(l);
    if l_norm == 0.0 {
        return Err(Error::DegenerateOrbit);
    }
    let angles = euler_angles(l)?;
    let eig = jacobi_eigen(&a.0)?;
    let l_hat = l.map(|x| x / l_norm);
    let normal_idx = (0..3)
        .max_by(|&i, &j| {
            dot(&eig.vectors[i], &l_hat)
                .abs()
                .total_cmp(&dot(&eig.vectors[j], &l_hat).abs())
        })
        .expect("three eigenvectors");
    let mut in_plane = (0..3).filter(|&k| k != normal_idx);
    let (major_idx, minor_idx) = (in_plane.next().unwrap(), in_plane.next().unwrap());

    let mut normal = eig.vectors[normal_idx];
    if dot(&normal, l) < 0.0 {
        normal = normal.map(|x| -x);
    }
    let major_axis = eig.vectors[major_idx];
    let minor_axis = cross(&normal, &major_axis);

    let (lp, lm) = (eig.values[major_idx], eig.values[minor_idx]);
    let energy = a.trace();
    Ok(EllipseGeometry {
        angular_momentum: *l,
        energy,
        theta: angles.theta,
        phi: angles.phi,
        eigenvalues: [lp, lm, eig.values[normal_idx]],
        semi_major: (2.0 * lp).max(0.0).sqrt(),
        semi_minor: (2.0 * lm).max(0.0).sqrt(),
        major_axis,
        minor_axis,
        normal,
        circular: lp - lm < CIRCULAR_GAP * energy.max(1.0),
    })
}

/// `{(E + √(E² - |L|²))/2, (E - √(E² - |L|²))/2, 0}` for `E = Tr A`.
pub fn eigenvalues_closed_form(energy: f64, l_norm: f64) -> Vec3 {
    let root = (energy * energy - l_norm * l_norm).max(0.0).sqrt();
    [(energy + root) / 2.0, (energy - root) / 2.0, 0.0]
}

/// `(max |x(t)|, min |x(t)|)` from uniform sampling of one period and
/// golden-section refinement around the best samples.
pub fn semi_axes_bruteforce(ic: &InitialConditions, samples: usize) -> Result<(f64, f64)> {
    if samples < 4 {
        return Err(Error::InvalidArgument(format!(
            "need at least 4 samples, got {samples}"
        )));
    }
    let r2 = |t: f64| {
        let x = orbit_position(ic, t);
        dot(&x, &x)
    };
    let step = 2.0 * PI / samples as f64;
    let (mut t_max, mut t_min) = (0.0, 0.0);
    let (mut f_max, mut f_min) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..samples {
        let t = k as f64 * step;
        let f = r2(t);
        if f > f_max {
            (f_max, t_max) = (f, t);
        }
        if f < f_min {
            (f_min, t_min) = (f, t);
        }
    }
    let f_max = f_max.max(-golden_section(|t| -r2(t), t_max - step, t_max + step));
    let f_min = f_min.min(golden_section(r2, t_min - step, t_min + step));
    Ok((f_max.sqrt(), f_min.max(0.0).sqrt()))
}

/// Minimum value of a unimodal `f` on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..120 {
        if f1 < f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Degeneracy {
    None,
    /// `a ∥ b`: the orbit is a line segment and has no plane.
    Linear,
    /// `a = b = 0`.
    Rest,
}

/// Relative size of `|a × b|` below which an orbit is treated as linear.
pub const LINEAR_TOLERANCE: f64 = 1e-12;

pub fn classify(ic: &InitialConditions) -> Degeneracy {
    let (na, nb) = (norm(&ic.a), norm(&ic.b));
    if na == 0.0 && nb == 0.0 {
        Degeneracy::Rest
    } else if norm(&angular_momentum_cl(ic)) <= LINEAR_TOLERANCE * na * nb {
        Degeneracy::Linear
    } else {
        Degeneracy::None
    }
}

/// Everything derivable from one set of initial conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitAnalysis {
    pub initial_conditions: InitialConditions,
    pub stokes_canonical: StokesVector,
    pub stokes_geometric: StokesVector,
    pub angular_momentum: Vec3,
    pub energy: f64,
    pub quadric: EllipsoidQuadric,
    pub runge: RungeTensor,
    pub runge_eigenvalues: Vec3,
    pub degeneracy: Degeneracy,
    /// `None` for degenerate orbits.
    pub geometry: Option<EllipseGeometry>,
}

pub fn analyze_orbit(ic: &InitialConditions) -> Result<OrbitAnalysis> {
    let runge = runge_from_ic(ic);
    let l = angular_momentum_cl(ic);
    let degeneracy = classify(ic);
    let geometry = match degeneracy {
        Degeneracy::None => Some(principal_axes(&runge, &l)?),
        _ => None,
    };
    Ok(OrbitAnalysis {
        initial_conditions: *ic,
        stokes_canonical: stokes_canonical(ic),
        stokes_geometric: stokes_geometric(ic),
        angular_momentum: l,
        energy: runge.trace(),
        quadric: ellipsoid_from_ic(ic),
        runge_eigenvalues: jacobi_eigen(&runge.0)?.values,
        runge,
        degeneracy,
        geometry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ic(a: Vec3, b: Vec3) -> InitialConditions {
        InitialConditions::new(a, b)
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn orbit_positions() {
        let o = ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert_eq!(orbit_position(&o, 0.0), o.a);
        assert!(close(&orbit_position(&o, PI / 2.0), &o.b, 1e-15));
        assert!(close(&orbit_position(&o, PI), &[-2.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn geometric_amplitudes() {
        let g = amplitudes_geometric(&ic([1.0, 0.0, 0.0], [0.0; 3]));
        assert_eq!(g.moduli[0], 1.0);
        assert!((g.phases[0] - PI / 2.0).abs() < 1e-16);

        let g = amplitudes_geometric(&ic([0.0; 3], [1.0, 0.0, 0.0]));
        assert_eq!((g.moduli[0], g.phases[0]), (1.0, 0.0));

        let g = amplitudes_geometric(&ic([0.0; 3], [0.0; 3]));
        assert_eq!(g.moduli, [0.0; 3]);
        assert_eq!(g.phases, [0.0; 3]);
    }

    #[test]
    fn canonical_amplitudes() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let a = amplitudes_canonical(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        assert_eq!(a.0, [Complex64::new(r, 0.0), Complex64::new(0.0, r), Complex64::new(0.0, 0.0)]);
        let a = amplitudes_canonical(&ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        assert!((a.0[0] - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
        let a = amplitudes_canonical(&ic([0.0; 3], [0.0; 3]));
        assert!(a.0.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn stokes_in_both_conventions() {
        let o = ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let can = stokes_canonical(&o);
        let want = [2.5, 0.0, 2.0, 1.5, 0.0, 0.0, 0.0, 0.0, 2.5 / 3f64.sqrt()];
        assert!(close(&can.values, &want, 1e-14));
        let geo = stokes_geometric(&o);
        assert!(close(&geo.values, &[5.0, 0.0, -4.0, 3.0, 0.0, 0.0, 0.0, 0.0, 5.0], 1e-14));
        assert!(geo.max_abs_diff(&can.to_geometric()) < 1e-14);

        let rest = ic([0.0; 3], [0.0; 3]);
        assert_eq!(stokes_canonical(&rest).values, [0.0; 9]);
        assert_eq!(stokes_geometric(&rest).values, [0.0; 9]);

        let o = ic([0.3, -1.2, 0.7], [1.1, 0.4, -0.5]);
        let s0 = dot(&o.a, &o.a) + dot(&o.b, &o.b);
        assert!((stokes_geometric(&o)[0] - s0).abs() < 1e-14);
    }

    #[test]
    fn angular_momentum_examples() {
        assert_eq!(angular_momentum_cl(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])), [0.0, 0.0, 1.0]);
        assert_eq!(angular_momentum_cl(&ic([1.0, 2.0, 3.0], [2.0, 4.0, 6.0])), [0.0; 3]);
        assert_eq!(angular_momentum_cl(&ic([1.0, 0.0, 0.0], [0.0, 0.0, 1.0])), [0.0, -1.0, 0.0]);
    }

    #[test]
    fn quadric_examples() {
        let e = ellipsoid_from_ic(&ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        assert_eq!(e.q, [[1.0, 0.0, 0.0], [0.0, 4.0, 0.0], [0.0, 0.0, 5.0]]);
        assert_eq!(e.c, 4.0);
        let e = ellipsoid_from_ic(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        assert_eq!(e.q, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]]);
        assert_eq!(e.c, 1.0);
        let e = ellipsoid_from_ic(&ic([0.0; 3], [0.0; 3]));
        assert_eq!(e.q, [[0.0; 3]; 3]);
        assert_eq!(e.c, 0.0);
    }

    #[test]
    fn quadric_from_stokes_examples() {
        let o = ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let e = ellipsoid_from_stokes(&stokes_geometric(&o)).unwrap();
        assert!(e.max_abs_diff(&ellipsoid_from_ic(&o)) < 1e-14);
        let z = ellipsoid_from_stokes(&StokesVector::geometric([0.0; 9])).unwrap();
        assert_eq!(z.c, 0.0);
        assert_eq!(z.q, [[0.0; 3]; 3]);
        let e = ellipsoid_from_stokes(&stokes_geometric(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]))).unwrap();
        assert!((e.c - 1.0).abs() < 1e-15);
        assert!(ellipsoid_from_stokes(&stokes_canonical(&o)).is_err());
    }

    #[test]
    fn euler_angle_examples() {
        let e = euler_angles(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!((e.theta, e.phi), (0.0, 0.0));
        let e = euler_angles(&[0.0, -1.0, 0.0]).unwrap();
        assert!((e.theta - PI / 2.0).abs() < 1e-15);
        assert!((e.phi - PI).abs() < 1e-15);
        let e = euler_angles(&[-0.0, -1.0, 0.0]).unwrap();
        assert!((e.phi - PI).abs() < 1e-15);
        assert!(matches!(euler_angles(&[0.0; 3]), Err(Error::DegenerateOrbit)));
    }

    #[test]
    fn runge_examples() {
        let o = ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let a = runge_from_ic(&o);
        assert_eq!(a.0, [[2.0, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.0]]);
        assert_eq!(runge_from_ic(&ic([0.0; 3], [0.0; 3])).0, [[0.0; 3]; 3]);
        assert!(runge_at(&o, 0.7).max_abs_diff(&a) < 1e-12);

        let s = runge_from_stokes(&stokes_geometric(&o)).unwrap();
        assert!(s.max_abs_diff(&a) < 1e-14);
        assert_eq!(runge_from_stokes(&StokesVector::geometric([0.0; 9])).unwrap().0, [[0.0; 3]; 3]);
        let c = runge_from_stokes(&stokes_geometric(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]))).unwrap();
        assert!(c.max_abs_diff(&RungeTensor([[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.0]])) < 1e-15);
        assert!(runge_from_stokes(&stokes_canonical(&o)).is_err());
    }

    #[test]
    fn principal_axes_of_reference_orbit() {
        let o = ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let g = principal_axes(&runge_from_ic(&o), &angular_momentum_cl(&o)).unwrap();
        assert!(close(&g.eigenvalues, &[2.0, 0.5, 0.0], 1e-14));
        assert!(close(&[g.semi_major, g.semi_minor], &[2.0, 1.0], 1e-14));
        assert!(close(&g.normal, &[0.0, 0.0, 1.0], 1e-14));
        assert!(close(&g.major_axis.map(f64::abs), &[1.0, 0.0, 0.0], 1e-14));
        assert!((g.energy - 2.5).abs() < 1e-15);
        assert!(!g.circular);
        assert!(close(&g.eigenvalues, &eigenvalues_closed_form(2.5, 2.0), 1e-14));
    }

    #[test]
    fn circular_orbit_flagged() {
        let o = ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let g = principal_axes(&runge_from_ic(&o), &angular_momentum_cl(&o)).unwrap();
        assert!(g.circular);
        assert!(close(&[g.semi_major, g.semi_minor], &[1.0, 1.0], 1e-14));
        assert!(dot(&g.major_axis, &g.minor_axis).abs() < 1e-14);
        assert!(dot(&g.major_axis, &g.normal).abs() < 1e-14);
    }

    #[test]
    fn normal_follows_angular_momentum() {
        let o = ic([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
        let g = principal_axes(&runge_from_ic(&o), &angular_momentum_cl(&o)).unwrap();
        assert!(close(&g.normal, &[0.0, -1.0, 0.0], 1e-14));
        let lin = ic([1.0, 0.0, 0.0], [2.0, 0.0, 0.0]);
        assert!(matches!(
            principal_axes(&runge_from_ic(&lin), &angular_momentum_cl(&lin)),
            Err(Error::DegenerateOrbit)
        ));
    }

    #[test]
    fn brute_force_extents() {
        let (hi, lo) = semi_axes_bruteforce(&ic([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]), 1000).unwrap();
        assert!((hi - 2.0).abs() < 1e-6 && (lo - 1.0).abs() < 1e-6);
        let (hi, lo) = semi_axes_bruteforce(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), 64).unwrap();
        assert!((hi - 1.0).abs() < 1e-12 && (lo - 1.0).abs() < 1e-12);
        let (hi, lo) = semi_axes_bruteforce(&ic([1.0, 0.0, 0.0], [0.0; 3]), 1000).unwrap();
        assert!((hi - 1.0).abs() < 1e-6 && lo < 1e-6);
        assert!(semi_axes_bruteforce(&ic([1.0, 0.0, 0.0], [0.0; 3]), 3).is_err());
    }

    #[test]
    fn reconstruction_from_geometric_stokes() {
        let o = ic([0.3, -1.2, 0.7], [1.1, 0.4, -0.5]);
        let s = stokes_geometric(&o);
        let back = initial_conditions_from_geometric(&s).unwrap();
        assert!(stokes_geometric(&back).max_abs_diff(&s) < 1e-12);
        // same orbit up to a time shift: identical quadric and Runge tensor
        assert!(ellipsoid_from_ic(&back).max_abs_diff(&ellipsoid_from_ic(&o)) < 1e-12);
        assert!(runge_from_ic(&back).max_abs_diff(&runge_from_ic(&o)) < 1e-12);
    }

    #[test]
    fn degeneracy_classification() {
        assert_eq!(classify(&ic([0.0; 3], [0.0; 3])), Degeneracy::Rest);
        assert_eq!(classify(&ic([1.0, 2.0, 3.0], [-2.0, -4.0, -6.0])), Degeneracy::Linear);
        assert_eq!(classify(&ic([1.0, 0.0, 0.0], [0.0; 3])), Degeneracy::Linear);
        assert_eq!(classify(&ic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])), Degeneracy::None);
        let r = analyze_orbit(&ic([0.0; 3], [0.0; 3])).unwrap();
        assert!(r.geometry.is_none());
    }
}
