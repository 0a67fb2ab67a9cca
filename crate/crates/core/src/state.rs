//! Pure state vectors and density operators.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix, C64, ONE, ZERO};
use crate::spectral;
use crate::tol;

/// Unit vector `|Ψ⟩` in a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Accepts amplitudes whose squared norm is 1 within
    /// [`tol::NORMALIZATION`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() || amplitudes.len() > tol::MAX_DIM {
            return Err(Error::InvalidDimension(amplitudes.len()));
        }
        if let Some(k) = amplitudes
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let n = matrix::norm(&amplitudes);
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm_sq: n * n });
        }
        for z in &mut amplitudes {
            *z /= n;
        }
        Self::new(amplitudes)
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: k,
            });
        }
        let mut v = vec![ZERO; dim];
        v[k] = ONE;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// `|Ψ⟩⟨Ψ|`.
    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_trusted(ComplexMatrix::projector(&self.amplitudes))
    }

    /// `|⟨self, other⟩|²`.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        matrix::inner(&self.amplitudes, &other.amplitudes).norm_sqr()
    }

    /// Amplitudes of `self ⊗ other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            amplitudes: matrix::kron_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    /// Applies a unitary. The result is renormalized against rounding drift.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<PureState> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.dim(),
            });
        }
        PureState::normalized(u.apply(&self.amplitudes))
    }
}

/// `(|01⟩ − |10⟩)/√2` in the σz product basis.
pub fn singlet() -> PureState {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    PureState::from_real(&[0.0, s, -s, 0.0]).expect("normalized literal")
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz() -> PureState {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    PureState::from_real(&[s, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, s]).expect("normalized literal")
}

/// σx eigenstate `(|0⟩ + |1⟩)/√2`.
pub fn plus() -> PureState {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    PureState::from_real(&[s, s]).expect("normalized literal")
}

/// σx eigenstate `(|0⟩ − |1⟩)/√2`.
pub fn minus() -> PureState {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    PureState::from_real(&[s, -s]).expect("normalized literal")
}

/// Positive semidefinite, unit-trace Hermitian operator `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.ensure_hermitian()?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eigenvalue = spectral::eigh(&matrix)?.values[0];
        if min_eigenvalue < tol::POSITIVITY {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Wraps the output of a map known to preserve density-operator
    /// invariants, restoring exact Hermiticity.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        let n = m.dim();
        Self {
            matrix: ComplexMatrix::from_fn(n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// Convex combination `Σ p_k W_k`. Weights must be nonnegative and sum
    /// to one.
    pub fn mixture(components: &[(f64, &DensityOperator)]) -> Result<Self> {
        let (_, first) = components.first().ok_or(Error::InvalidDimension(0))?;
        let dim = first.dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for &(p, w) in components {
            if w.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: w.dim(),
                });
            }
            if p < 0.0 {
                return Err(Error::NotPositive { min_eigenvalue: p });
            }
            acc = &acc + &w.matrix.scale_real(p);
        }
        Self::new(acc)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `Tr(W²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.purity() - 1.0).abs() <= tol
    }

    /// The state vector of a rank-one operator, or `None` when mixed.
    pub fn pure_vector(&self, tol: f64) -> Option<PureState> {
        if !self.is_pure(tol) {
            return None;
        }
        let eig = spectral::eigh(&self.matrix).ok()?;
        let top = eig.vectors.last()?.clone();
        PureState::normalized(top).ok()
    }

    /// `Re Tr(W A)`.
    pub fn expectation(&self, a: &ComplexMatrix) -> f64 {
        self.matrix.trace_product(a).re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        spectral::eigh(&self.matrix)
            .expect("density operators are Hermitian")
            .values
    }

    pub fn trace_distance(&self, other: &DensityOperator) -> f64 {
        trace_distance(&self.matrix, &other.matrix)
    }
}

impl From<&PureState> for DensityOperator {
    fn from(psi: &PureState) -> Self {
        psi.density()
    }
}

/// `½ Tr|a − b|` from the eigenvalues of the Hermitian difference.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let diff = a - b;
    let diff = ComplexMatrix::from_fn(diff.dim(), |r, c| {
        (diff[(r, c)] + diff[(c, r)].conj()) * 0.5
    });
    let eig = spectral::eigh(&diff).expect("symmetrized difference is Hermitian");
    0.5 * eig.values.iter().map(|v| v.abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_vectors() {
        assert!(matches!(
            PureState::from_real(&[1.0, 1.0]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(PureState::normalized(vec![ZERO, ZERO]).is_err());
    }

    #[test]
    fn density_operator_validation() {
        let not_hermitian = ComplexMatrix::from_real_rows(&[&[0.5, 0.2], &[0.0, 0.5]]);
        assert!(matches!(
            DensityOperator::new(not_hermitian),
            Err(Error::NotHermitian { .. })
        ));
        let bad_trace = ComplexMatrix::real_diagonal(&[0.5, 0.6]);
        assert!(matches!(
            DensityOperator::new(bad_trace),
            Err(Error::TraceNotOne { .. })
        ));
        let negative = ComplexMatrix::real_diagonal(&[1.2, -0.2]);
        assert!(matches!(
            DensityOperator::new(negative),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn canonical_states_are_normalized() {
        for psi in [singlet(), ghz(), plus(), minus()] {
            assert!((matrix::norm(psi.amplitudes()) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn singlet_is_antisymmetric_under_swap() {
        let psi = singlet();
        let a = psi.amplitudes();
        // swap maps index (i, j) -> (j, i)
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a[2 * j + i], -a[2 * i + j]);
            }
        }
    }

    #[test]
    fn ghz_is_xxx_plus_one_eigenstate() {
        let xxx = matrix::pauli_string("XXX").unwrap();
        let psi = ghz();
        let image = xxx.apply(psi.amplitudes());
        for (a, b) in image.iter().zip(psi.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let zero = PureState::basis(2, 0).unwrap().density();
        let one = PureState::basis(2, 1).unwrap().density();
        assert!((zero.trace_distance(&one) - 1.0).abs() < 1e-15);
        assert!(zero.trace_distance(&zero) < 1e-15);
    }

    #[test]
    fn pure_vector_recovers_state_up_to_phase() {
        let psi = singlet();
        let back = psi.density().pure_vector(1e-9).unwrap();
        assert!((back.fidelity(&psi) - 1.0).abs() < 1e-12);
        assert!(DensityOperator::maximally_mixed(2)
            .pure_vector(1e-9)
            .is_none());
    }
}
