//! Truncated three-mode bosonic Fock space.
//!
//! Each mode keeps occupations `0..=N`, so the space has `(N+1)³` number
//! states. Operators are stored sparsely keyed by `(row, col)` in a
//! `BTreeMap`, which fixes the summation order of every product and
//! expectation value.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Number of bosonic modes.
pub const MODES: usize = 3;

/// Default per-mode occupation cutoff.
pub const DEFAULT_CUTOFF: usize = 12;

/// Occupation numbers `(n1, n2, n3)`.
pub type Occupation = [usize; MODES];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockBasis {
    cutoff: usize,
}

impl FockBasis {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidArgument("Fock cutoff must be at least 1".into()));
        }
        Ok(Self { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn levels(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dimension(&self) -> usize {
        self.levels().pow(MODES as u32)
    }

    /// Flat index of `|n1, n2, n3⟩`, mode 1 most significant.
    pub fn index(&self, n: Occupation) -> Option<usize> {
        if n.iter().any(|&k| k > self.cutoff) {
            return None;
        }
        let d = self.levels();
        Some((n[0] * d + n[1]) * d + n[2])
    }

    pub fn occupation(&self, index: usize) -> Occupation {
        let d = self.levels();
        [index / (d * d), (index / d) % d, index % d]
    }

    pub fn states(&self) -> impl Iterator<Item = (usize, Occupation)> + '_ {
        (0..self.dimension()).map(|i| (i, self.occupation(i)))
    }

    /// Predicate accepting states with `n1 + n2 + n3 ≤ N - margin`.
    ///
    /// Bilinear operators and their commutators act on these states without
    /// reaching the cutoff, so truncation artifacts are excluded.
    pub fn safe_subspace_total_quanta(&self, margin: usize) -> Result<SafeSubspace> {
        if margin > self.cutoff {
            return Err(Error::InvalidArgument(format!(
                "margin {margin} exceeds cutoff {}",
                self.cutoff
            )));
        }
        Ok(SafeSubspace {
            basis: *self,
            max_total: self.cutoff - margin,
        })
    }
}

/// The truncation-safe subset of basis states; see [`FockBasis::safe_subspace_total_quanta`].
#[derive(Debug, Clone, Copy)]
pub struct SafeSubspace {
    basis: FockBasis,
    max_total: usize,
}

impl SafeSubspace {
    pub fn accepts(&self, n: Occupation) -> bool {
        n.iter().sum::<usize>() <= self.max_total
    }

    pub fn accepts_index(&self, index: usize) -> bool {
        self.accepts(self.basis.occupation(index))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis
            .states()
            .filter(|(_, n)| self.accepts(*n))
            .map(|(i, _)| i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Lowering,
    Raising,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    Position,
    Momentum,
}

/// Sparse operator on a [`FockBasis`].
#[derive(Clone, PartialEq)]
pub struct SparseOperator {
    basis: FockBasis,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl fmt::Debug for SparseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparseOperator")
            .field("cutoff", &self.basis.cutoff)
            .field("nnz", &self.entries.len())
            .finish()
    }
}

impl SparseOperator {
    pub fn zero(basis: FockBasis) -> Self {
        Self {
            basis,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(basis: FockBasis) -> Self {
        Self::diagonal(basis, |_| 1.0)
    }

    /// Diagonal operator with entries `f(occupation)`.
    pub fn diagonal(basis: FockBasis, f: impl Fn(Occupation) -> f64) -> Self {
        let mut op = Self::zero(basis);
        for (i, n) in basis.states() {
            op.insert(i, i, Complex64::new(f(n), 0.0));
        }
        op
    }

    pub fn from_entries(
        basis: FockBasis,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self> {
        let dim = basis.dimension();
        let mut op = Self::zero(basis);
        for (r, c, v) in entries {
            if r >= dim || c >= dim {
                return Err(Error::IndexOutOfRange {
                    what: "operator entry",
                    index: r.max(c),
                    range: "0..dimension",
                });
            }
            op.insert(r, c, v);
        }
        Ok(op)
    }

    fn insert(&mut self, r: usize, c: usize, v: Complex64) {
        if v != ZERO {
            *self.entries.entry((r, c)).or_insert(ZERO) += v;
        }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries.get(&(r, c)).copied().unwrap_or(ZERO)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    fn ensure_same_basis(&self, other: FockBasis) -> Result<()> {
        if self.basis == other {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self.basis.cutoff,
                right: other.cutoff,
            })
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut op = Self::zero(self.basis);
        for (r, c, v) in self.entries() {
            op.insert(r, c, v * k);
        }
        op
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_basis(other.basis)?;
        let mut op = self.clone();
        for (r, c, v) in other.entries() {
            op.insert(r, c, v);
        }
        Ok(op)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_real(-1.0))
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_basis(other.basis)?;
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.basis.dimension()];
        for (r, c, v) in other.entries() {
            rows[r].push((c, v));
        }
        let mut op = Self::zero(self.basis);
        for (r, k, a) in self.entries() {
            for &(c, b) in &rows[k] {
                op.insert(r, c, a * b);
            }
        }
        op.prune();
        Ok(op)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn adjoint(&self) -> Self {
        let mut op = Self::zero(self.basis);
        for (r, c, v) in self.entries() {
            op.insert(c, r, v.conj());
        }
        op
    }

    /// Largest `|A_rc - B_rc|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same basis")
    }

    /// Euclidean norm of `A|s⟩` for every basis state `|s⟩`, indexed by `s`.
    pub fn column_norms(&self) -> Vec<f64> {
        let mut sq = vec![0.0; self.basis.dimension()];
        for (_, c, v) in self.entries() {
            sq[c] += v.norm_sqr();
        }
        sq.into_iter().map(f64::sqrt).collect()
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        self.ensure_same_basis(v.basis)?;
        let mut out = vec![ZERO; self.basis.dimension()];
        for (r, c, a) in self.entries() {
            out[r] += a * v.coefficients[c];
        }
        Ok(StateVector {
            basis: self.basis,
            coefficients: out,
        })
    }

    /// Normalized expectation `⟨v|A|v⟩ / ⟨v|v⟩`.
    pub fn expectation(&self, v: &StateVector) -> Result<Complex64> {
        let norm_sqr = v.norm_sqr();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let av = self.apply(v)?;
        Ok(v.inner(&av)? / norm_sqr)
    }

    fn prune(&mut self) {
        self.entries.retain(|_, v| *v != ZERO);
    }
}

/// Annihilation (`Lowering`) or creation (`Raising`) operator for `mode ∈ 1..=3`.
///
/// Raising from occupation `N` is dropped.
pub fn ladder(mode: usize, kind: LadderKind, basis: FockBasis) -> Result<SparseOperator> {
    let m = mode_index(mode)?;
    let mut op = SparseOperator::zero(basis);
    for (col, n) in basis.states() {
        let mut target = n;
        let amplitude = match kind {
            LadderKind::Lowering => {
                if n[m] == 0 {
                    continue;
                }
                target[m] -= 1;
                (n[m] as f64).sqrt()
            }
            LadderKind::Raising => {
                target[m] += 1;
                ((n[m] + 1) as f64).sqrt()
            }
        };
        if let Some(row) = basis.index(target) {
            op.insert(row, col, Complex64::new(amplitude, 0.0));
        }
    }
    Ok(op)
}

/// `x = (a + a†)/√2` or `p = i(a† - a)/√2`.
pub fn quadrature(mode: usize, kind: Quadrature, basis: FockBasis) -> Result<SparseOperator> {
    let a = ladder(mode, LadderKind::Lowering, basis)?;
    let ad = ladder(mode, LadderKind::Raising, basis)?;
    let k = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        Quadrature::Position => Ok(a.add(&ad)?.scale_real(k)),
        Quadrature::Momentum => Ok(ad.sub(&a)?.scale(Complex64::new(0.0, k))),
    }
}

/// `a_j† a_j`, built as a diagonal.
pub fn number_operator(mode: usize, basis: FockBasis) -> Result<SparseOperator> {
    let m = mode_index(mode)?;
    Ok(SparseOperator::diagonal(basis, |n| n[m] as f64))
}

fn mode_index(mode: usize) -> Result<usize> {
    if (1..=MODES).contains(&mode) {
        Ok(mode - 1)
    } else {
        Err(Error::IndexOutOfRange {
            what: "mode",
            index: mode,
            range: "1..=3",
        })
    }
}

/// Dense state vector on a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: FockBasis,
    coefficients: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(basis: FockBasis) -> Self {
        Self {
            basis,
            coefficients: vec![ZERO; basis.dimension()],
        }
    }

    pub fn number_state(basis: FockBasis, n: Occupation) -> Result<Self> {
        let index = basis.index(n).ok_or_else(|| {
            Error::InvalidArgument(format!("occupation {n:?} exceeds cutoff {}", basis.cutoff))
        })?;
        let mut v = Self::zero(basis);
        v.coefficients[index] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn from_coefficients(basis: FockBasis, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != basis.dimension() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                basis.dimension(),
                coefficients.len()
            )));
        }
        Ok(Self {
            basis,
            coefficients,
        })
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: Occupation) -> Complex64 {
        self.basis
            .index(n)
            .map(|i| self.coefficients[i])
            .unwrap_or(ZERO)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.cutoff,
                right: other.basis.cutoff,
            });
        }
        Ok(self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            basis: self.basis,
            coefficients: self.coefficients.iter().map(|z| z * k).collect(),
        }
    }
}
