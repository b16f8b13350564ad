//! Small dense linear algebra: cyclic Jacobi for real symmetric matrices.

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

/// Off-diagonal Frobenius norm at which iteration stops, relative to `max(1, ‖A‖_F)`.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a real symmetric matrix.
///
/// `values` are in descending order and `vectors[k]` is the unit eigenvector
/// for `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[f64; N]; N],
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations in fixed (p, q) row order.
///
/// Only the upper triangle is read; the input is assumed symmetric.
pub fn jacobi_eigen<const N: usize>(matrix: &[[f64; N]; N]) -> Result<SymmetricEigen<N>> {
    let mut a = *matrix;
    for p in 0..N {
        for q in 0..p {
            a[p][q] = a[q][p];
        }
    }
    // columns of v are the eigenvectors
    let mut v = [[0.0; N]; N];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = 1.0;
    }

    let scale = frobenius(&a).max(1.0);
    let mut sweeps = 0;
    while off_diagonal(&a) > JACOBI_TOLERANCE * scale {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == 0.0 {
                    continue;
                }
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.map(|k| a[k][k]);
    let vectors = order.map(|k| std::array::from_fn(|r| v[r][k]));
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

fn rotate<const N: usize>(a: &mut [[f64; N]; N], v: &mut [[f64; N]; N], p: usize, q: usize) {
    let apq = a[p][q];
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..N {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..N {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;

    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

fn off_diagonal<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut sum = 0.0;
    for p in 0..N {
        for q in 0..N {
            if p != q {
                sum += a[p][q] * a[p][q];
            }
        }
    }
    sum.sqrt()
}

fn frobenius<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(u: &Vec3, v: &Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn norm(u: &Vec3) -> f64 {
    dot(u, u).sqrt()
}

pub fn mat_vec(m: &Mat3, u: &Vec3) -> Vec3 {
    std::array::from_fn(|r| dot(&m[r], u))
}

pub fn max_abs_diff<const N: usize, const M: usize>(a: &[[f64; M]; N], b: &[[f64; M]; N]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct<const N: usize>(e: &SymmetricEigen<N>) -> [[f64; N]; N] {
        let mut m = [[0.0; N]; N];
        for k in 0..N {
            for r in 0..N {
                for c in 0..N {
                    m[r][c] += e.values[k] * e.vectors[k][r] * e.vectors[k][c];
                }
            }
        }
        m
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let e = jacobi_eigen(&[[0.5, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(e.values, [2.0, 0.5, 0.0]);
        assert_eq!(e.vectors[0], [0.0, 1.0, 0.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn known_spectrum() {
        // eigenvalues 4, 2, 1 for this classic example
        let m = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 4.0]];
        let e = jacobi_eigen(&m).unwrap();
        for (got, want) in e.values.iter().zip([4.0, 3.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(max_abs_diff(&reconstruct(&e), &m) < 1e-14);
    }

    #[test]
    fn eigenvectors_orthonormal_6x6() {
        let mut m = [[0.0; 6]; 6];
        for r in 0..6 {
            for c in 0..6 {
                m[r][c] = 1.0 / (1.0 + r as f64 + c as f64) + if r == c { r as f64 } else { 0.0 };
            }
        }
        let e = jacobi_eigen(&m).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let d: f64 = (0..6).map(|k| e.vectors[i][k] * e.vectors[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-13);
            }
        }
        assert!(max_abs_diff(&reconstruct(&e), &m) < 1e-13);
    }

    #[test]
    fn cross_product() {
        assert_eq!(cross(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]);
        assert_eq!(cross(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]), [0.0, -1.0, 0.0]);
    }
}
