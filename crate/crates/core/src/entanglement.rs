//! Bipartite structure of compound states: Schmidt form, product detection,
//! reduced states, total spin and interaction-driven entanglement.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{self, partial_trace, tensor, ComplexMatrix, Subsystem, C64, ZERO};
use crate::spectral;
use crate::state::{DensityOperator, PureState};
use crate::tol;

/// `|Ψ⟩ = Σ c_i |ψ_i⟩ ⊗ |φ_i⟩` with orthonormal factor bases.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Nonzero coefficients, descending. Their count is the Schmidt rank.
    pub coefficients: Vec<f64>,
    pub left_basis: Vec<Vec<C64>>,
    pub right_basis: Vec<Vec<C64>>,
    pub dims: (usize, usize),
    /// All `min(d1, d2)` singular values, descending, including those
    /// below the rank tolerance.
    pub spectrum: Vec<f64>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// `Σ c_i ψ_i ⊗ φ_i`.
    pub fn reconstruct(&self) -> Vec<C64> {
        let (d1, d2) = self.dims;
        let mut out = alloc::vec![ZERO; d1 * d2];
        for ((&c, u), v) in self
            .coefficients
            .iter()
            .zip(&self.left_basis)
            .zip(&self.right_basis)
        {
            for (o, z) in out.iter_mut().zip(matrix::kron_vec(u, v)) {
                *o += z * c;
            }
        }
        out
    }
}

fn check_bipartite(dim: usize, dims: (usize, usize)) -> Result<()> {
    if dims.0 == 0 || dims.1 == 0 || dim != dims.0 * dims.1 {
        return Err(Error::DimensionMismatch {
            expected: dims.0 * dims.1,
            actual: dim,
        });
    }
    Ok(())
}

/// Schmidt decomposition via the Gram matrix `M M†` of the `d1×d2`
/// amplitude matrix `M[i][j] = ψ[i·d2 + j]`.
///
/// Each coefficient is taken as `‖u_k† M‖` rather than `√λ_k`, which keeps
/// vanishing coefficients at rounding level instead of its square root.
pub fn schmidt(psi: &PureState, dims: (usize, usize)) -> Result<SchmidtDecomposition> {
    check_bipartite(psi.dim(), dims)?;
    let (d1, d2) = dims;
    let a = psi.amplitudes();
    let gram = ComplexMatrix::from_fn(d1, |i, k| {
        (0..d2).map(|j| a[i * d2 + j] * a[k * d2 + j].conj()).sum()
    });
    let eig = spectral::eigh(&gram)?;

    let mut terms: Vec<(f64, Vec<C64>, Vec<C64>)> = eig
        .vectors
        .into_iter()
        .rev()
        .map(|u| {
            let u = leading_positive(u);
            // (u† M)_j
            let row: Vec<C64> = (0..d2)
                .map(|j| (0..d1).map(|i| u[i].conj() * a[i * d2 + j]).sum())
                .collect();
            let c = matrix::norm(&row);
            (c, u, row)
        })
        .collect();
    terms.sort_by(|x, y| y.0.total_cmp(&x.0));
    terms.truncate(d1.min(d2));

    let spectrum = terms.iter().map(|t| t.0).collect();
    let mut coefficients = Vec::new();
    let mut left_basis = Vec::new();
    let mut right_basis = Vec::new();
    for (c, u, row) in terms {
        if c < tol::SCHMIDT_RANK {
            continue;
        }
        coefficients.push(c);
        left_basis.push(u);
        right_basis.push(row.into_iter().map(|z| z / c).collect());
    }
    Ok(SchmidtDecomposition {
        coefficients,
        left_basis,
        right_basis,
        dims,
        spectrum,
    })
}

/// Makes the first non-negligible component real positive.
fn leading_positive(mut v: Vec<C64>) -> Vec<C64> {
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > 1e-12) {
        let rot = lead.conj() / lead.norm();
        for z in &mut v {
            *z *= rot;
        }
    }
    v
}

/// Outcome of a product-state test with the factors when they exist.
#[derive(Debug, Clone)]
pub struct ProductCheck {
    pub is_product: bool,
    pub schmidt_rank: usize,
    /// `(|ξ⟩, |χ⟩)` with `|Ψ⟩ = |ξ⟩ ⊗ |χ⟩`.
    pub factors: Option<(PureState, PureState)>,
}

/// Schmidt rank one means `|Ψ⟩ = |ξ⟩ ⊗ |χ⟩`.
pub fn is_product(psi: &PureState, dims: (usize, usize)) -> Result<ProductCheck> {
    let sd = schmidt(psi, dims)?;
    let rank = sd.rank();
    let factors = if rank == 1 {
        let c = sd.coefficients[0];
        let xi = PureState::normalized(sd.left_basis[0].clone())?;
        let chi = PureState::normalized(sd.right_basis[0].iter().map(|z| z * c).collect())?;
        Some((xi, chi))
    } else {
        None
    };
    Ok(ProductCheck {
        is_product: rank == 1,
        schmidt_rank: rank,
        factors,
    })
}

/// Reduced state of the subsystem `keep`.
pub fn reduced_state(
    w: &DensityOperator,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<DensityOperator> {
    let reduced = partial_trace(w.matrix(), dims, keep.other())?;
    Ok(DensityOperator::from_trusted(reduced))
}

/// Spin-1/2 component operators `S_k = σ_k / 2` (ħ = 1).
pub fn spin_half_operators() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::pauli_x().scale_real(0.5),
        ComplexMatrix::pauli_y().scale_real(0.5),
        ComplexMatrix::pauli_z().scale_real(0.5),
    ]
}

/// `S² = Σ_k (S_k ⊗ I + I ⊗ S_k)²` for two spin-1/2 systems.
pub fn total_spin_squared_operator() -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    spin_half_operators()
        .iter()
        .map(|s| {
            let total = &tensor(s, &id) + &tensor(&id, s);
            &total * &total
        })
        .fold(ComplexMatrix::zeros(4), |acc, sq| &acc + &sq)
}

/// `⟨S²⟩` in units of ħ² for a two spin-1/2 state.
pub fn total_spin_squared(w: &DensityOperator) -> Result<f64> {
    if w.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: w.dim(),
        });
    }
    Ok(w.expectation(&total_spin_squared_operator()))
}

/// Split of a Hamiltonian into local terms.
#[derive(Debug, Clone)]
pub struct InteractionCheck {
    pub is_noninteracting: bool,
    /// Max entry of `h − (h1 ⊗ I + I ⊗ h2)`.
    pub residual: f64,
    pub local_terms: Option<(ComplexMatrix, ComplexMatrix)>,
}

/// Tests `h = h1 ⊗ I + I ⊗ h2`.
///
/// Candidates: `h1 = Tr₂(h)/d2` carries the full trace of `h`, and
/// `h2 = Tr₁(h)/d1 − Tr(h)/(d1·d2)·I` is traceless.
pub fn is_noninteracting(h: &ComplexMatrix, dims: (usize, usize)) -> Result<InteractionCheck> {
    h.ensure_hermitian()?;
    check_bipartite(h.dim(), dims)?;
    let (d1, d2) = dims;
    let h1 = partial_trace(h, dims, Subsystem::Second)?.scale_real(1.0 / d2 as f64);
    let shift = h.trace().re / (d1 * d2) as f64;
    let h2 = &partial_trace(h, dims, Subsystem::First)?.scale_real(1.0 / d1 as f64)
        - &ComplexMatrix::identity(d2).scale_real(shift);
    let local =
        &tensor(&h1, &ComplexMatrix::identity(d2)) + &tensor(&ComplexMatrix::identity(d1), &h2);
    let residual = h.max_abs_diff(&local);
    let ok = residual <= tol::OPERATOR_IDENTITY;
    Ok(InteractionCheck {
        is_noninteracting: ok,
        residual,
        local_terms: ok.then_some((h1, h2)),
    })
}

/// Schmidt spectrum of the evolved state at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSample {
    pub t: f64,
    /// Full descending spectrum, `min(d1, d2)` entries.
    pub coefficients: Vec<f64>,
    pub rank: usize,
}

/// Evolves `psi0` under `exp(−i h t)` and records the Schmidt spectrum at
/// each requested time.
pub fn schmidt_trajectory(
    h: &ComplexMatrix,
    psi0: &PureState,
    dims: (usize, usize),
    times: &[f64],
) -> Result<Vec<SchmidtSample>> {
    check_bipartite(h.dim(), dims)?;
    check_bipartite(psi0.dim(), dims)?;
    let spectrum = spectral::spectral_decompose(h)?;
    times
        .iter()
        .map(|&t| {
            let u = spectrum.apply_function(|a| C64::from_polar(1.0, -a * t));
            let sd = schmidt(&psi0.evolve(&u)?, dims)?;
            Ok(SchmidtSample {
                t,
                rank: sd.rank(),
                coefficients: sd.spectrum,
            })
        })
        .collect()
}

/// `σz ⊗ I + I ⊗ σz + g·σx ⊗ σx`.
pub fn coupled_spin_hamiltonian(coupling: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let z = ComplexMatrix::pauli_z();
    let x = ComplexMatrix::pauli_x();
    let local = &tensor(&z, &id) + &tensor(&id, &z);
    &local + &tensor(&x, &x).scale_real(coupling)
}

/// Schmidt spectrum of `|00⟩` evolved under
/// [`coupled_spin_hamiltonian`]`(coupling)`.
pub fn entangling_evolution_demo(coupling: f64, times: &[f64]) -> Result<Vec<SchmidtSample>> {
    let h = coupled_spin_hamiltonian(coupling);
    let psi0 = PureState::basis(4, 0)?;
    schmidt_trajectory(&h, &psi0, (2, 2), times)
}
