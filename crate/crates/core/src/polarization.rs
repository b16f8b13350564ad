//! The 3×3 polarization matrix `J = (1/3) λ0 s0 + (1/2) Σ_{i≥1} λ_i s_i`.
//!
//! For Stokes parameters of a coherent state `J` is the outer product
//! `α α†`, so it is positive semidefinite with rank one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::jacobi_eigen;
use crate::stokes::{Convention, StokesVector};
use crate::su3::{gell_mann_basis, ComplexMatrix3};

/// Hermiticity defect above which [`stokes_from_j3d`] rejects its input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationMatrix3(pub ComplexMatrix3);

/// A 2×2 polarization matrix for a field confined to the x–y plane.
pub type PolarizationMatrix2 = [[Complex64; 2]; 2];

impl PolarizationMatrix3 {
    pub fn matrix(&self) -> &ComplexMatrix3 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Eigenvalues in descending order.
    ///
    /// The Hermitian `H = A + iB` is embedded as the real symmetric
    /// `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every value
    /// doubled.
    pub fn eigenvalues(&self) -> Result<[f64; 3]> {
        let mut m = [[0.0; 6]; 6];
        for r in 0..3 {
            for c in 0..3 {
                let z = self.0[(r, c)];
                m[r][c] = z.re;
                m[r + 3][c + 3] = z.re;
                m[r][c + 3] = -z.im;
                m[r + 3][c] = z.im;
            }
        }
        let e = jacobi_eigen(&m)?;
        Ok([e.values[0], e.values[2], e.values[4]])
    }
}

/// Builds `J` from canonical-convention Stokes parameters.
pub fn build_j3d(s: &StokesVector) -> Result<PolarizationMatrix3> {
    s.expect(Convention::Canonical)?;
    let lambda = gell_mann_basis();
    let mut j = lambda[0] * (s[0] / 3.0);
    for i in 1..9 {
        j = j + lambda[i] * (0.5 * s[i]);
    }
    Ok(PolarizationMatrix3(j))
}

/// Inverts [`build_j3d`]: `s_j = Tr(J λ_j)` for `j ≥ 1` and `s_0 = Tr J`.
pub fn stokes_from_j3d(j: &PolarizationMatrix3) -> Result<StokesVector> {
    let defect = j.0.hermiticity_defect();
    if defect > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(defect));
    }
    let lambda = gell_mann_basis();
    let values = std::array::from_fn(|i| (j.0 * lambda[i]).trace().re);
    Ok(StokesVector::canonical(values))
}

/// Upper-left 2×2 block when the third row and column vanish.
///
/// The 3D layout places `-i s2/2` in `J_12`; the conventional 2D matrix
/// has `+i s2/2` there, so the block is the conjugate of that form.
pub fn reduce_to_2d(j: &PolarizationMatrix3, tolerance: f64) -> Result<PolarizationMatrix2> {
    let m = &j.0;
    let third = (0..3)
        .map(|k| m[(2, k)].norm().max(m[(k, 2)].norm()))
        .fold(0.0, f64::max);
    if third > tolerance {
        return Err(Error::NotZPropagating(third));
    }
    Ok([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
}

pub fn trace_2d(m: &PolarizationMatrix2) -> f64 {
    (m[0][0] + m[1][1]).re
}
