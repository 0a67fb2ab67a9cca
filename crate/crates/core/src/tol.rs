//! Numerical tolerances shared across the crate.

/// Max-entry deviation allowed between a matrix and its adjoint.
pub const HERMITIAN: f64 = 1e-9;

/// Eigenvalues closer than this are merged into one degenerate eigenspace.
pub const EIGEN_MERGE: f64 = 1e-8;

/// Jacobi convergence bound on the off-diagonal Frobenius norm (scaled by the
/// matrix norm when that exceeds one). Sweeps continue below it while the norm
/// keeps shrinking.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Off-diagonal norm at which sweeps stop unconditionally.
pub const JACOBI_FLOOR: f64 = 1e-15;

/// Unit-norm tolerance for state vectors and unit trace for density operators.
pub const NORMALIZATION: f64 = 1e-10;

/// Smallest eigenvalue accepted for a positive semidefinite operator.
pub const POSITIVITY: f64 = -1e-9;

/// Schmidt coefficients below this count as zero.
pub const SCHMIDT_RANK: f64 = 1e-8;

/// Amplitudes |⟨ψ, a_i⟩| at or below this fall outside the support.
pub const SUPPORT: f64 = 1e-8;

/// Generic identity check for operator relations.
pub const OPERATOR_IDENTITY: f64 = 1e-9;

/// Outcome probabilities at or below this cannot be conditioned on.
pub const CONDITIONING: f64 = 1e-12;

/// Norm tolerance for measurement directions.
pub const DIRECTION_NORM: f64 = 1e-12;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 64;
