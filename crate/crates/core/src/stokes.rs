//! Generalized Stokes operators, coherent states, and classical Stokes parameters.
//!
//! `Σ_i = Σ_jk (λ_i)_jk a_j† a_k` for `i = 0..=8`. In a three-mode coherent
//! state `|α1, α2, α3⟩` the expectations reduce to bilinears of the
//! amplitudes, which are the classical Stokes parameters.
//!
//! Two normalizations of the classical parameters are kept apart by a
//! [`Convention`] tag:
//!
//! - `Canonical`: `s_i = α† λ_i α`, i.e. exactly the coherent-state
//!   expectation (with the `1/√3` in `s_8`).
//! - `Geometric`: built from oscillation amplitudes `|α_0i|` and phases
//!   `φ_i` of `x_i = |α_0i| sin(t + φ_i)`, with `s_8 = |α_01|² + |α_02|² -
//!   2|α_03|²`. The classical ellipsoid and Runge-tensor formulas in
//!   [`crate::ellipse`] take this form.

use std::f64::consts::PI;
use std::ops::Index;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    ladder, quadrature, FockBasis, LadderKind, Quadrature, SparseOperator, StateVector, MODES,
};
use crate::su3::{gell_mann, ComplexMatrix3, StructureConstantTable};
use crate::VerificationReport;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Canonical,
    Geometric,
}

/// The nine classical Stokes parameters with their normalization tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub values: [f64; 9],
    pub convention: Convention,
}

impl StokesVector {
    pub fn new(values: [f64; 9], convention: Convention) -> Self {
        Self { values, convention }
    }

    pub fn canonical(values: [f64; 9]) -> Self {
        Self::new(values, Convention::Canonical)
    }

    pub fn geometric(values: [f64; 9]) -> Self {
        Self::new(values, Convention::Geometric)
    }

    pub fn expect(&self, convention: Convention) -> Result<()> {
        if self.convention == convention {
            Ok(())
        } else {
            Err(Error::WrongConvention {
                expected: convention,
                found: self.convention,
            })
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Per-mode intensities `(n1, n2, n3)` recovered from `(s0, s3, s8)`.
    pub fn mode_intensities(&self) -> [f64; 3] {
        let s = self.to_canonical().values;
        let r3 = 3f64.sqrt();
        [
            s[0] / 3.0 + s[3] / 2.0 + s[8] / (2.0 * r3),
            s[0] / 3.0 - s[3] / 2.0 + s[8] / (2.0 * r3),
            s[0] / 3.0 - s[8] / r3,
        ]
    }

    /// `s_geo = 2·D·s_can` with `D = diag(1, 1, -1, 1, 1, -1, 1, -1, √3)`.
    pub fn to_geometric(&self) -> Self {
        match self.convention {
            Convention::Geometric => *self,
            Convention::Canonical => {
                let d = geometric_scaling();
                Self::geometric(std::array::from_fn(|i| 2.0 * d[i] * self.values[i]))
            }
        }
    }

    pub fn to_canonical(&self) -> Self {
        match self.convention {
            Convention::Canonical => *self,
            Convention::Geometric => {
                let d = geometric_scaling();
                Self::canonical(std::array::from_fn(|i| self.values[i] / (2.0 * d[i])))
            }
        }
    }
}

fn geometric_scaling() -> [f64; 9] {
    [1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, 3f64.sqrt()]
}

impl Index<usize> for StokesVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Three complex coherent amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAmplitudes(pub [Complex64; MODES]);

impl CoherentAmplitudes {
    pub fn new(a1: Complex64, a2: Complex64, a3: Complex64) -> Self {
        Self([a1, a2, a3])
    }

    /// From moduli `|α_0i|` and phases `φ_i`.
    pub fn from_polar(moduli: [f64; 3], phases: [f64; 3]) -> Self {
        Self(std::array::from_fn(|i| Complex64::from_polar(moduli[i], phases[i])))
    }

    pub fn modulus(&self, mode: usize) -> f64 {
        self.0[mode - 1].norm()
    }

    /// Principal phase in `(-π, π]`; zero for a vanishing amplitude.
    pub fn phase(&self, mode: usize) -> f64 {
        principal(self.0[mode - 1].arg())
    }

    /// `Δ_ij = φ_i - φ_j`, reduced to `(-π, π]`.
    pub fn phase_difference(&self, i: usize, j: usize) -> f64 {
        principal(self.phase(i) - self.phase(j))
    }

    pub fn total_intensity(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn principal(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// `Σ_jk M_jk a_j† a_k`.
pub fn jordan_schwinger(m: &ComplexMatrix3, basis: FockBasis) -> SparseOperator {
    let raise: Vec<_> = (1..=MODES)
        .map(|j| ladder(j, LadderKind::Raising, basis).expect("valid mode"))
        .collect();
    let lower: Vec<_> = (1..=MODES)
        .map(|k| ladder(k, LadderKind::Lowering, basis).expect("valid mode"))
        .collect();
    let mut op = SparseOperator::zero(basis);
    for j in 0..MODES {
        for k in 0..MODES {
            if m[(j, k)] == ZERO {
                continue;
            }
            let term = raise[j].mul(&lower[k]).expect("same basis").scale(m[(j, k)]);
            op = op.add(&term).expect("same basis");
        }
    }
    op
}

/// `Σ_0 … Σ_8` on a common basis.
#[derive(Debug, Clone)]
pub struct StokesOperatorSet {
    basis: FockBasis,
    ops: [SparseOperator; 9],
}

impl StokesOperatorSet {
    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn get(&self, i: usize) -> Result<&SparseOperator> {
        self.ops.get(i).ok_or(Error::IndexOutOfRange {
            what: "Stokes operator",
            index: i,
            range: "0..=8",
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &SparseOperator> {
        self.ops.iter()
    }
}

impl Index<usize> for StokesOperatorSet {
    type Output = SparseOperator;
    fn index(&self, i: usize) -> &SparseOperator {
        &self.ops[i]
    }
}

pub fn stokes_operators(basis: FockBasis) -> StokesOperatorSet {
    let ops = std::array::from_fn(|i| jordan_schwinger(&gell_mann(i).expect("0..=8"), basis));
    StokesOperatorSet { basis, ops }
}

/// `H = Σ_j a_j† a_j + 3/2`.
pub fn hamiltonian_3d(basis: FockBasis) -> SparseOperator {
    SparseOperator::diagonal(basis, |n| n.iter().sum::<usize>() as f64 + 1.5)
}

/// `L = r × p` from position and momentum quadratures.
pub fn angular_momentum_ops(basis: FockBasis) -> [SparseOperator; 3] {
    let x: Vec<_> = (1..=MODES)
        .map(|j| quadrature(j, Quadrature::Position, basis).expect("valid mode"))
        .collect();
    let p: Vec<_> = (1..=MODES)
        .map(|j| quadrature(j, Quadrature::Momentum, basis).expect("valid mode"))
        .collect();
    let component = |j: usize, k: usize| {
        x[j].mul(&p[k])
            .and_then(|a| a.sub(&x[k].mul(&p[j])?))
            .expect("same basis")
    };
    [component(1, 2), component(2, 0), component(0, 1)]
}

/// Truncated coherent state with its truncation quality.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub state: StateVector,
    /// `1 - ⟨ψ|ψ⟩`, the probability weight lost above the cutoff.
    pub truncation_deficit: f64,
}

/// `e^{-Σ|α_i|²/2} Σ_n α1^n1 α2^n2 α3^n3 / √(n1! n2! n3!) |n1, n2, n3⟩`, truncated at the cutoff.
pub fn coherent_state(alpha: &CoherentAmplitudes, basis: FockBasis) -> CoherentState {
    let levels = basis.levels();
    let per_mode: Vec<Vec<Complex64>> = alpha
        .0
        .iter()
        .map(|&a| {
            let mut c = Vec::with_capacity(levels);
            c.push(Complex64::new(1.0, 0.0));
            for n in 1..levels {
                let prev = c[n - 1];
                c.push(prev * a / (n as f64).sqrt());
            }
            c
        })
        .collect();
    let norm = (-0.5 * alpha.total_intensity()).exp();
    let coefficients = basis
        .states()
        .map(|(_, n)| per_mode[0][n[0]] * per_mode[1][n[1]] * per_mode[2][n[2]] * norm)
        .collect();
    let state = StateVector::from_coefficients(basis, coefficients).expect("dimension matches");
    let truncation_deficit = 1.0 - state.norm_sqr();
    CoherentState {
        state,
        truncation_deficit,
    }
}

/// Classical Stokes parameters in closed form (canonical convention).
pub fn stokes_closed_form(alpha: &CoherentAmplitudes) -> StokesVector {
    let m = |i| alpha.modulus(i);
    let d21 = alpha.phase_difference(2, 1);
    let d31 = alpha.phase_difference(3, 1);
    let d32 = alpha.phase_difference(3, 2);
    let (n1, n2, n3) = (m(1) * m(1), m(2) * m(2), m(3) * m(3));
    StokesVector::canonical([
        n1 + n2 + n3,
        2.0 * m(1) * m(2) * d21.cos(),
        2.0 * m(1) * m(2) * d21.sin(),
        n1 - n2,
        2.0 * m(1) * m(3) * d31.cos(),
        2.0 * m(1) * m(3) * d31.sin(),
        2.0 * m(2) * m(3) * d32.cos(),
        2.0 * m(2) * m(3) * d32.sin(),
        (n1 + n2 - 2.0 * n3) / 3f64.sqrt(),
    ])
}

/// Result of [`stokes_expectation`].
#[derive(Debug, Clone)]
pub struct StokesExpectation {
    pub stokes: StokesVector,
    pub truncation_deficit: f64,
    pub max_imaginary: f64,
}

/// Largest tolerated imaginary part of a Hermitian expectation.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// `⟨Σ_i⟩` in the truncated coherent state, computed on the Fock space.
pub fn stokes_expectation(alpha: &CoherentAmplitudes, basis: FockBasis) -> Result<StokesExpectation> {
    stokes_expectation_with(&stokes_operators(basis), alpha)
}

/// As [`stokes_expectation`], reusing prebuilt operators.
pub fn stokes_expectation_with(
    ops: &StokesOperatorSet,
    alpha: &CoherentAmplitudes,
) -> Result<StokesExpectation> {
    let cs = coherent_state(alpha, ops.basis());
    let mut values = [0.0; 9];
    let mut max_imaginary: f64 = 0.0;
    for (i, op) in ops.iter().enumerate() {
        let e = op.expectation(&cs.state)?;
        values[i] = e.re;
        max_imaginary = max_imaginary.max(e.im.abs());
    }
    if max_imaginary > IMAGINARY_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "Hermitian expectation has imaginary part {max_imaginary:e}"
        )));
    }
    Ok(StokesExpectation {
        stokes: StokesVector::canonical(values),
        truncation_deficit: cs.truncation_deficit,
        max_imaginary,
    })
}

/// Residuals of the pure-state identities between the nine parameters.
///
/// With `n_k` from [`StokesVector::mode_intensities`]:
/// `s1² + s2² = 4 n1 n2`, `s4² + s5² = 4 n1 n3`, `s6² + s7² = 4 n2 n3`,
/// `s1 s6 - s2 s7 = 2 n2 s4`.
pub fn pure_state_residuals(s: &StokesVector) -> [f64; 4] {
    let c = s.to_canonical();
    let v = &c.values;
    let [n1, n2, n3] = c.mode_intensities();
    [
        (v[1] * v[1] + v[2] * v[2] - 4.0 * n1 * n2).abs(),
        (v[4] * v[4] + v[5] * v[5] - 4.0 * n1 * n3).abs(),
        (v[6] * v[6] + v[7] * v[7] - 4.0 * n2 * n3).abs(),
        (v[1] * v[6] - v[2] * v[7] - 2.0 * n2 * v[4]).abs(),
    ]
}

/// `‖[Σ_i, H]|s⟩‖` over safe-subspace basis states, all nine operators.
pub fn check_conservation(
    ops: &StokesOperatorSet,
    margin: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let basis = ops.basis();
    let safe = basis.safe_subspace_total_quanta(margin)?;
    let h = hamiltonian_3d(basis);
    let mut report = VerificationReport::new("constants_of_motion", tolerance);
    for (i, op) in ops.iter().enumerate() {
        let norms = op.commutator(&h)?.column_norms();
        for s in safe.indices() {
            report.record(&[i, s], norms[s]);
        }
    }
    Ok(report)
}

/// `‖([Σ_ℓ/2, Σ_m/2] - i Σ_n f_ℓmn Σ_n/2)|s⟩‖` over the 28 pairs `ℓ < m`.
pub fn check_fock_closure(
    ops: &StokesOperatorSet,
    table: &StructureConstantTable,
    margin: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let basis = ops.basis();
    let safe = basis.safe_subspace_total_quanta(margin)?;
    let halves: Vec<_> = ops.iter().map(|op| op.scale_real(0.5)).collect();
    let mut report = VerificationReport::new("su3_closure_fock", tolerance);
    for l in 1..=8 {
        for m in l + 1..=8 {
            let mut defect = halves[l].commutator(&halves[m])?;
            for (n, half) in halves.iter().enumerate().skip(1) {
                let f = table.get(l, m, n)?;
                if f != 0.0 {
                    defect = defect.sub(&half.scale(Complex64::new(0.0, f)))?;
                }
            }
            let norms = defect.column_norms();
            let worst = safe.indices().map(|s| norms[s]).fold(0.0, f64::max);
            report.record(&[l, m], worst);
        }
    }
    Ok(report)
}

/// `L1 - Σ7`, `L2 + Σ5`, `L3 - Σ2` on safe-subspace states.
pub fn check_angular_momentum(
    ops: &StokesOperatorSet,
    margin: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let basis = ops.basis();
    let safe = basis.safe_subspace_total_quanta(margin)?;
    let l = angular_momentum_ops(basis);
    let pairs = [
        (&l[0], ops[7].clone()),
        (&l[1], ops[5].scale_real(-1.0)),
        (&l[2], ops[2].clone()),
    ];
    let mut report = VerificationReport::new("angular_momentum", tolerance);
    for (k, (lk, sigma)) in pairs.into_iter().enumerate() {
        let norms = lk.sub(&sigma)?.column_norms();
        for s in safe.indices() {
            report.record(&[k + 1, s], norms[s]);
        }
    }
    Ok(report)
}

/// `([a_j, a_j†] - 1)|s⟩` for states with `n_j < N`.
pub fn check_canonical_commutation(basis: FockBasis, tolerance: f64) -> Result<VerificationReport> {
    let id = SparseOperator::identity(basis);
    let mut report = VerificationReport::new("canonical_commutation", tolerance);
    for mode in 1..=MODES {
        let a = ladder(mode, LadderKind::Lowering, basis)?;
        let ad = ladder(mode, LadderKind::Raising, basis)?;
        let norms = a.commutator(&ad)?.sub(&id)?.column_norms();
        for (s, n) in basis.states() {
            if n[mode - 1] < basis.cutoff() {
                report.record(&[mode, s], norms[s]);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(n: usize) -> FockBasis {
        FockBasis::new(n).unwrap()
    }

    #[test]
    fn sigma_zero_is_total_number() {
        let b = basis(4);
        let s0 = jordan_schwinger(&ComplexMatrix3::identity(), b);
        let want = SparseOperator::diagonal(b, |n| n.iter().sum::<usize>() as f64);
        assert!(s0.max_abs_diff(&want).unwrap() < 1e-14);
    }

    #[test]
    fn zero_matrix_maps_to_zero_operator() {
        assert_eq!(jordan_schwinger(&ComplexMatrix3::zero(), basis(3)).nnz(), 0);
    }

    #[test]
    fn sigma_one_matches_ladder_expression() {
        let b = basis(4);
        let l = |m, k| ladder(m, k, b).unwrap();
        let direct = l(1, LadderKind::Raising)
            .mul(&l(2, LadderKind::Lowering))
            .unwrap()
            .add(&l(2, LadderKind::Raising).mul(&l(1, LadderKind::Lowering)).unwrap())
            .unwrap();
        let js = jordan_schwinger(&gell_mann(1).unwrap(), b);
        assert!(js.max_abs_diff(&direct).unwrap() < 1e-14);
    }

    #[test]
    fn number_state_actions() {
        let b = basis(3);
        let ops = stokes_operators(b);
        let ket = |n| StateVector::number_state(b, n).unwrap();

        let out = ops[3].apply(&ket([1, 0, 0])).unwrap();
        assert!(out.max_abs_diff(&ket([1, 0, 0])) < 1e-15);

        let out = ops[8].apply(&ket([0, 0, 1])).unwrap();
        assert!(out.max_abs_diff(&ket([0, 0, 1]).scale(c(-2.0 / 3f64.sqrt(), 0.0))) < 1e-15);

        let out = ops[2].apply(&ket([1, 0, 0])).unwrap();
        assert!(out.max_abs_diff(&ket([0, 1, 0]).scale(c(0.0, 1.0))) < 1e-15);
    }

    #[test]
    fn stokes_operators_hermitian() {
        let ops = stokes_operators(basis(3));
        for op in ops.iter() {
            assert!(op.hermiticity_defect() < 1e-15);
        }
        assert!(ops.get(9).is_err());
    }

    #[test]
    fn hamiltonian_eigenvalues() {
        let b = basis(3);
        let h = hamiltonian_3d(b);
        let vac = StateVector::number_state(b, [0, 0, 0]).unwrap();
        assert!(h.apply(&vac).unwrap().max_abs_diff(&vac.scale(c(1.5, 0.0))) < 1e-15);
        let one = StateVector::number_state(b, [1, 1, 1]).unwrap();
        assert!(h.apply(&one).unwrap().max_abs_diff(&one.scale(c(4.5, 0.0))) < 1e-15);
        let shifted = h.sub(&SparseOperator::identity(b).scale_real(1.5)).unwrap();
        assert!(shifted.max_abs_diff(&stokes_operators(b)[0]).unwrap() < 1e-14);
    }

    #[test]
    fn angular_momentum_annihilates_vacuum() {
        let b = basis(4);
        let l = angular_momentum_ops(b);
        let vac = StateVector::number_state(b, [0, 0, 0]).unwrap();
        assert!(l[2].apply(&vac).unwrap().norm() < 1e-15);
    }

    #[test]
    fn angular_momentum_is_contained_in_stokes_set() {
        let ops = stokes_operators(basis(5));
        let r = check_angular_momentum(&ops, 2, 1e-13).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn vacuum_coherent_state() {
        let b = basis(4);
        let cs = coherent_state(&CoherentAmplitudes::new(ZERO, ZERO, ZERO), b);
        assert_eq!(cs.state, StateVector::number_state(b, [0, 0, 0]).unwrap());
        assert_eq!(cs.truncation_deficit, 0.0);
    }

    #[test]
    fn coherent_state_norm_and_coefficient() {
        let b = basis(16);
        let alpha = CoherentAmplitudes::new(c(1.0, 0.0), ZERO, ZERO);
        let cs = coherent_state(&alpha, b);
        // Poisson tail beyond n = 16 for mean 1 is below 1e-14
        assert!((cs.state.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((cs.state.coefficient([1, 0, 0]) - c((-0.5f64).exp(), 0.0)).norm() < 1e-16);
    }

    #[test]
    fn mean_photon_number_of_coherent_state() {
        let b = basis(16);
        let alpha = CoherentAmplitudes::new(c(1.0, 0.0), ZERO, ZERO);
        let cs = coherent_state(&alpha, b);
        let n1 = crate::fock::number_operator(1, b).unwrap();
        let e = n1.expectation(&cs.state).unwrap();
        assert!((e.re - 1.0).abs() < 1e-10);
        assert!(e.im.abs() < 1e-14);
    }

    #[test]
    fn closed_form_examples() {
        let s = stokes_closed_form(&CoherentAmplitudes::new(c(1.0, 0.0), c(0.0, 1.0), ZERO));
        let want = [2.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0 / 3f64.sqrt()];
        assert!(s.max_abs_diff(&StokesVector::canonical(want)) < 1e-15);

        let z = c(0.3, -1.1);
        let s = stokes_closed_form(&CoherentAmplitudes::new(z, ZERO, ZERO));
        let n = z.norm_sqr();
        let want = [n, 0.0, 0.0, n, 0.0, 0.0, 0.0, 0.0, n / 3f64.sqrt()];
        assert!(s.max_abs_diff(&StokesVector::canonical(want)) < 1e-15);

        let s = stokes_closed_form(&CoherentAmplitudes::new(ZERO, ZERO, ZERO));
        assert_eq!(s.values, [0.0; 9]);
    }

    #[test]
    fn closed_form_equals_bilinear_form() {
        // α† λ_i α, an independent route to the same numbers
        let alpha = CoherentAmplitudes::new(c(0.4, -0.7), c(-1.0, 0.2), c(0.1, 0.9));
        let s = stokes_closed_form(&alpha);
        for i in 0..9 {
            let l = gell_mann(i).unwrap();
            let mut v = ZERO;
            for j in 0..3 {
                for k in 0..3 {
                    v += alpha.0[j].conj() * l[(j, k)] * alpha.0[k];
                }
            }
            assert!((v.re - s[i]).abs() < 1e-14 && v.im.abs() < 1e-15, "component {i}");
        }
    }

    #[test]
    fn expectation_matches_closed_form() {
        let b = basis(16);
        let alpha = CoherentAmplitudes::new(c(0.8, 0.5), c(-0.3, 0.9), c(0.6, -0.7));
        let e = stokes_expectation(&alpha, b).unwrap();
        let s = stokes_closed_form(&alpha);
        assert!(e.stokes.max_abs_diff(&s) < 1e-9, "{:?} vs {:?}", e.stokes, s);
        assert!(e.max_imaginary < 1e-12);
    }

    #[test]
    fn phases_are_principal() {
        let alpha = CoherentAmplitudes::from_polar([1.0, 1.0, 0.0], [3.0, -3.0, 0.0]);
        let d = alpha.phase_difference(2, 1);
        assert!(d > -PI && d <= PI);
        assert!((d - (-6.0 + 2.0 * PI)).abs() < 1e-12);
        assert_eq!(principal(-PI), PI);
        assert_eq!(alpha.phase(3), 0.0);
    }

    #[test]
    fn convention_conversion_round_trip() {
        let s = StokesVector::canonical([2.5, 0.0, 2.0, 1.5, 0.0, 0.0, 0.0, 0.0, 2.5 / 3f64.sqrt()]);
        let g = s.to_geometric();
        let want = [5.0, 0.0, -4.0, 3.0, 0.0, 0.0, 0.0, 0.0, 5.0];
        assert!(g.max_abs_diff(&StokesVector::geometric(want)) < 1e-14);
        assert!(g.to_canonical().max_abs_diff(&s) < 1e-15);
        assert!(s.expect(Convention::Geometric).is_err());
    }

    #[test]
    fn pure_state_identities_hold_for_coherent_input() {
        let alpha = CoherentAmplitudes::new(c(0.4, -0.7), c(-1.0, 0.2), c(0.1, 0.9));
        let s = stokes_closed_form(&alpha);
        let n = s.mode_intensities();
        for k in 0..3 {
            assert!((n[k] - alpha.0[k].norm_sqr()).abs() < 1e-14);
        }
        for r in pure_state_residuals(&s) {
            assert!(r < 1e-12);
        }
        for r in pure_state_residuals(&s.to_geometric()) {
            assert!(r < 1e-12);
        }
    }
}
