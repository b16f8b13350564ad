//! Fundamental representation of su(3): Gell-Mann matrices and structure constants.
//!
//! The matrices are normalized so that `Tr(λ_i λ_j) = 2 δ_ij` and
//! `[λ_ℓ/2, λ_m/2] = i f_ℓmn λ_n/2`. `λ_0` is the 3×3 identity and is used as
//! the ninth expansion element of the polarization matrix.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::VerificationReport;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense 3×3 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix3(pub [[Complex64; 3]; 3]);

impl ComplexMatrix3 {
    pub fn zero() -> Self {
        Self([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE, ONE, ONE])
    }

    pub fn diagonal(d: [Complex64; 3]) -> Self {
        let mut m = Self::zero();
        for k in 0..3 {
            m.0[k][k] = d[k];
        }
        m
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        let mut m = Self::zero();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.0[r][c] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    /// Outer product `u v†`.
    pub fn outer(u: [Complex64; 3], v: [Complex64; 3]) -> Self {
        let mut m = Self::zero();
        for r in 0..3 {
            for c in 0..3 {
                m.0[r][c] = u[r] * v[c].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..3 {
            for c in 0..3 {
                m.0[r][c] = self.0[c][r].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= k);
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `max |M - M†|` over entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }
}

impl Default for ComplexMatrix3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Index<(usize, usize)> for ComplexMatrix3 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix3 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.0[r][c]
    }
}

impl Add for ComplexMatrix3 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for r in 0..3 {
            for c in 0..3 {
                self.0[r][c] += rhs.0[r][c];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix3 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..3 {
            for c in 0..3 {
                self.0[r][c] -= rhs.0[r][c];
            }
        }
        self
    }
}

impl Neg for ComplexMatrix3 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for ComplexMatrix3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for r in 0..3 {
            for c in 0..3 {
                m.0[r][c] = (0..3).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        m
    }
}

impl Mul<f64> for ComplexMatrix3 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }
}

/// `AB - BA`.
pub fn commutator3(a: &ComplexMatrix3, b: &ComplexMatrix3) -> ComplexMatrix3 {
    *a * *b - *b * *a
}

/// The generator `λ_i`, `i ∈ 0..=8`, with `λ_0 = 1`.
///
/// Each matrix is the coefficient array of the bilinear `Σ_jk M_jk a_j† a_k`
/// that reproduces the corresponding Stokes operator, e.g. `Σ_2 =
/// i(a_2† a_1 - a_1† a_2)` gives `M_12 = -i`, `M_21 = i`.
pub fn gell_mann(i: usize) -> Result<ComplexMatrix3> {
    let mut m = ComplexMatrix3::zero();
    match i {
        0 => return Ok(ComplexMatrix3::identity()),
        1 => {
            m[(0, 1)] = ONE;
            m[(1, 0)] = ONE;
        }
        2 => {
            m[(0, 1)] = -I;
            m[(1, 0)] = I;
        }
        3 => {
            m[(0, 0)] = ONE;
            m[(1, 1)] = -ONE;
        }
        4 => {
            m[(0, 2)] = ONE;
            m[(2, 0)] = ONE;
        }
        5 => {
            m[(0, 2)] = -I;
            m[(2, 0)] = I;
        }
        6 => {
            m[(1, 2)] = ONE;
            m[(2, 1)] = ONE;
        }
        7 => {
            m[(1, 2)] = -I;
            m[(2, 1)] = I;
        }
        8 => {
            let k = 1.0 / 3f64.sqrt();
            m[(0, 0)] = Complex64::new(k, 0.0);
            m[(1, 1)] = Complex64::new(k, 0.0);
            m[(2, 2)] = Complex64::new(-2.0 * k, 0.0);
        }
        _ => {
            return Err(Error::IndexOutOfRange {
                what: "Gell-Mann",
                index: i,
                range: "0..=8",
            })
        }
    }
    Ok(m)
}

/// All nine generators, `λ_0..λ_8`.
pub fn gell_mann_basis() -> [ComplexMatrix3; 9] {
    std::array::from_fn(|i| gell_mann(i).expect("index in range"))
}

/// Totally antisymmetric su(3) structure constants `f_ℓmn`, indices 1..=8.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstantTable {
    entries: [[[f64; 8]; 8]; 8],
}

impl StructureConstantTable {
    /// Independent nonzero entries with `ℓ < m < n`.
    pub const BASE: [((usize, usize, usize), f64); 9] = [
        ((1, 2, 3), 1.0),
        ((1, 4, 7), 0.5),
        ((1, 5, 6), -0.5),
        ((2, 4, 6), 0.5),
        ((2, 5, 7), 0.5),
        ((3, 4, 5), 0.5),
        ((3, 6, 7), -0.5),
        ((4, 5, 8), 0.866_025_403_784_438_6),
        ((6, 7, 8), 0.866_025_403_784_438_6),
    ];

    pub fn standard() -> Self {
        let mut t = Self {
            entries: [[[0.0; 8]; 8]; 8],
        };
        for &((l, m, n), v) in Self::BASE.iter() {
            t.set_antisymmetric(l, m, n, v);
        }
        t
    }

    /// Returns a copy with one base entry replaced, antisymmetric images included.
    /// Used for fault-injection checks of the closure verifier.
    pub fn with_entry(&self, l: usize, m: usize, n: usize, value: f64) -> Result<Self> {
        for idx in [l, m, n] {
            check_adjoint_index(idx)?;
        }
        let mut t = self.clone();
        t.set_antisymmetric(l, m, n, value);
        Ok(t)
    }

    fn set_antisymmetric(&mut self, l: usize, m: usize, n: usize, v: f64) {
        let (l, m, n) = (l - 1, m - 1, n - 1);
        for (a, b, c, sign) in [
            (l, m, n, 1.0),
            (m, n, l, 1.0),
            (n, l, m, 1.0),
            (m, l, n, -1.0),
            (l, n, m, -1.0),
            (n, m, l, -1.0),
        ] {
            self.entries[a][b][c] = sign * v;
        }
    }

    pub fn get(&self, l: usize, m: usize, n: usize) -> Result<f64> {
        for idx in [l, m, n] {
            check_adjoint_index(idx)?;
        }
        Ok(self.entries[l - 1][m - 1][n - 1])
    }
}

impl Default for StructureConstantTable {
    fn default() -> Self {
        Self::standard()
    }
}

fn check_adjoint_index(i: usize) -> Result<()> {
    if (1..=8).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            what: "structure constant",
            index: i,
            range: "1..=8",
        })
    }
}

pub fn structure_constant(l: usize, m: usize, n: usize) -> Result<f64> {
    StructureConstantTable::standard().get(l, m, n)
}

/// Checks `[λ_ℓ/2, λ_m/2] = i Σ_n f_ℓmn λ_n/2` for all 64 ordered pairs in 1..=8.
pub fn check_su3_closure(tolerance: f64) -> VerificationReport {
    check_su3_closure_with(&StructureConstantTable::standard(), tolerance)
}

pub fn check_su3_closure_with(table: &StructureConstantTable, tolerance: f64) -> VerificationReport {
    let lambda = gell_mann_basis();
    let mut report = VerificationReport::new("su3_closure", tolerance);
    for l in 1..=8 {
        for m in 1..=8 {
            let lhs = commutator3(&(lambda[l] * 0.5), &(lambda[m] * 0.5));
            let rhs = (1..=8).fold(ComplexMatrix3::zero(), |acc, n| {
                let f = table.get(l, m, n).expect("indices in range");
                acc + lambda[n].scale(I * (0.5 * f))
            });
            report.record(&[l, m], lhs.max_abs_diff(&rhs));
        }
    }
    report
}

/// Checks `Tr(λ_i λ_j) = 2 δ_ij` for `i, j ∈ 1..=8` and `Tr(λ_0 λ_i) = 0`.
pub fn check_trace_orthogonality(tolerance: f64) -> VerificationReport {
    let lambda = gell_mann_basis();
    let mut report = VerificationReport::new("trace_orthogonality", tolerance);
    for i in 1..=8 {
        for j in 1..=8 {
            let expected = if i == j { 2.0 } else { 0.0 };
            let t = (lambda[i] * lambda[j]).trace();
            report.record(&[i, j], (t - expected).norm());
        }
        report.record(&[0, i], (lambda[0] * lambda[i]).trace().norm());
    }
    report
}
