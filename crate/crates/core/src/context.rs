//! Observables, measurement contexts `M_A = (W, A)` and the contextual
//! state `W_A = Σ P_i W P_i` obtained by non-selective Lüders
//! conditionalization.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix, C64};
use crate::spectral::{self, SpectralDecomposition};
use crate::state::{trace_distance, DensityOperator};
use crate::tol;

/// Hermitian operator together with its spectral resolution `{a_i, P_i}`.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
    label: String,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        let spectrum = spectral::spectral_decompose(&matrix)?;
        debug_assert!(spectrum.reconstruct().max_abs_diff(&matrix) < tol::HERMITIAN);
        Ok(Self {
            matrix,
            spectrum,
            label: label.into(),
        })
    }

    pub fn sigma_x() -> Self {
        Self::new(ComplexMatrix::pauli_x(), "sigma_x").expect("Hermitian literal")
    }

    pub fn sigma_y() -> Self {
        Self::new(ComplexMatrix::pauli_y(), "sigma_y").expect("Hermitian literal")
    }

    pub fn sigma_z() -> Self {
        Self::new(ComplexMatrix::pauli_z(), "sigma_z").expect("Hermitian literal")
    }

    /// Tensor product of Paulis named over `IXYZ`, e.g. `"ZZ"`.
    pub fn pauli(spec: &str) -> Option<Self> {
        let m = matrix::pauli_string(spec)?;
        Self::new(m, spec.to_ascii_uppercase()).ok()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.spectrum.is_non_degenerate()
    }

    /// Max entry of `[self, other]`; errors on unequal dimensions.
    pub fn commutator_norm(&self, other: &Observable) -> Result<f64> {
        Ok(matrix::commutator(&self.matrix, &other.matrix)?.max_abs())
    }

    pub fn commutes_with(&self, other: &Observable, tol: f64) -> Result<bool> {
        Ok(self.commutator_norm(other)? <= tol)
    }

    /// Born probabilities `Tr(W P_i)` in eigenvalue order.
    pub fn probabilities(&self, w: &DensityOperator) -> Result<Vec<f64>> {
        check_dims(w.dim(), self.dim())?;
        Ok(self
            .spectrum
            .projectors()
            .iter()
            .map(|p| w.expectation(p))
            .collect())
    }
}

fn check_dims(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// The pair `(W, A)`.
#[derive(Debug, Clone)]
pub struct MeasurementContext {
    initial_state: DensityOperator,
    observable: Observable,
}

impl MeasurementContext {
    pub fn new(initial_state: DensityOperator, observable: Observable) -> Result<Self> {
        check_dims(initial_state.dim(), observable.dim())?;
        Ok(Self {
            initial_state,
            observable,
        })
    }

    pub fn initial_state(&self) -> &DensityOperator {
        &self.initial_state
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }
}

/// `W_A` for a context, with the outcome distribution it carries.
#[derive(Debug, Clone)]
pub struct ContextualState {
    pub state: DensityOperator,
    pub context: MeasurementContext,
    /// `(a_i, Tr(W P_i))` in ascending eigenvalue order.
    pub outcome_probabilities: Vec<(f64, f64)>,
}

/// `Σ_i P_i W P_i` over the given projectors.
pub(crate) fn luders_map(w: &ComplexMatrix, spectrum: &SpectralDecomposition) -> ComplexMatrix {
    spectrum
        .projectors()
        .iter()
        .fold(ComplexMatrix::zeros(w.dim()), |acc, p| {
            &acc + &(&(p * w) * p)
        })
}

/// Non-selective Lüders conditionalization `W → W_A = Σ_i P_i W P_i`.
pub fn luders_nonselective(ctx: &MeasurementContext) -> ContextualState {
    let spectrum = ctx.observable.spectrum();
    let w = ctx.initial_state.matrix();
    let state = DensityOperator::from_trusted(luders_map(w, spectrum));
    let outcome_probabilities = spectrum
        .eigenvalues()
        .iter()
        .zip(spectrum.projectors())
        .map(|(&a, p)| (a, ctx.initial_state.expectation(p).clamp(0.0, 1.0)))
        .collect();
    ContextualState {
        state,
        context: ctx.clone(),
        outcome_probabilities,
    }
}

/// Convenience wrapper building the context first.
pub fn luders(w: &DensityOperator, a: &Observable) -> Result<DensityOperator> {
    Ok(luders_nonselective(&MeasurementContext::new(w.clone(), a.clone())?).state)
}

/// `Σ |c_i|² |a_i⟩⟨a_i|` for pure `W = |ψ⟩⟨ψ|` and non-degenerate `A`,
/// with `c_i = ⟨a_i, ψ⟩`.
pub fn diagonal_form(psi: &[C64], a: &Observable) -> Result<ComplexMatrix> {
    check_dims(a.dim(), psi.len())?;
    if !a.is_non_degenerate() {
        return Err(Error::RepresentativenessUndefined(format!(
            "observable {} is degenerate",
            a.label()
        )));
    }
    let spectrum = a.spectrum();
    let mut acc = ComplexMatrix::zeros(psi.len());
    for k in 0..spectrum.len() {
        let ak = &spectrum.eigenspace(k)[0];
        let weight = matrix::inner(ak, psi).norm_sqr();
        acc = &acc + &ComplexMatrix::projector(ak).scale_real(weight);
    }
    Ok(acc)
}

/// Which representativeness conditions hold for a pure-state context.
#[derive(Debug, Clone)]
pub struct RepresentativeReport {
    /// (i) every support vector is an eigenvector of `A`.
    pub eigenvectors: bool,
    /// (ii) support vectors are pairwise orthogonal.
    pub mutually_exclusive: bool,
    /// (iii) every support vector is non-orthogonal to `W`.
    pub non_orthogonal: bool,
    /// Eigenvalue indices with `|c_i| > tol::SUPPORT`.
    pub support: Vec<usize>,
    /// Eigenvalue indices with vanishing amplitude, reported rather than failed.
    pub excluded: Vec<usize>,
    /// `|c_i| = |⟨ψ, a_i⟩|` for every eigenvector, eigenvalue order.
    pub amplitudes: Vec<f64>,
    /// Trace distance between `W_A` and `Σ |c_i|² |a_i⟩⟨a_i|`.
    pub diagonal_form_distance: f64,
}

impl RepresentativeReport {
    pub fn all_hold(&self) -> bool {
        self.eigenvectors && self.mutually_exclusive && self.non_orthogonal
    }
}

/// Checks conditions (i)-(iii) for a contextual state whose context has a
/// pure initial state and a non-degenerate observable.
pub fn check_representative(cs: &ContextualState) -> Result<RepresentativeReport> {
    let a = cs.context.observable();
    let w = cs.context.initial_state();
    if !a.is_non_degenerate() {
        return Err(Error::RepresentativenessUndefined(format!(
            "observable {} is degenerate",
            a.label()
        )));
    }
    let psi = w.pure_vector(tol::HERMITIAN).ok_or_else(|| {
        Error::RepresentativenessUndefined(format!(
            "initial state is mixed (purity {})",
            w.purity()
        ))
    })?;
    let psi = psi.amplitudes();
    let spectrum = a.spectrum();
    let n = spectrum.len();

    let mut amplitudes = Vec::with_capacity(n);
    let mut support = Vec::new();
    let mut excluded = Vec::new();
    for k in 0..n {
        let c = matrix::inner(psi, &spectrum.eigenspace(k)[0]).norm();
        amplitudes.push(c);
        if c > tol::SUPPORT {
            support.push(k);
        } else {
            excluded.push(k);
        }
    }

    let eigenvectors = support.iter().all(|&k| {
        let v = &spectrum.eigenspace(k)[0];
        let av = a.matrix().apply(v);
        let alpha = spectrum.eigenvalues()[k];
        av.iter()
            .zip(v)
            .all(|(x, y)| (x - y * alpha).norm() <= tol::OPERATOR_IDENTITY)
    });
    let mutually_exclusive = support.iter().enumerate().all(|(i, &k)| {
        support[i + 1..].iter().all(|&l| {
            matrix::inner(&spectrum.eigenspace(k)[0], &spectrum.eigenspace(l)[0]).norm()
                <= tol::OPERATOR_IDENTITY
        })
    });
    let non_orthogonal = support.iter().all(|&k| amplitudes[k] > tol::SUPPORT);
    let diagonal = diagonal_form(psi, a)?;
    Ok(RepresentativeReport {
        eigenvectors,
        mutually_exclusive,
        non_orthogonal,
        support,
        excluded,
        amplitudes,
        diagonal_form_distance: trace_distance(cs.state.matrix(), &diagonal),
    })
}

/// `Tr(W A)` against `Tr(W_A A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub tr_wa: f64,
    pub tr_wa_a: f64,
    pub delta: f64,
}

pub fn statistical_equivalence(ctx: &MeasurementContext) -> Equivalence {
    let wa = luders_nonselective(ctx).state;
    let a = ctx.observable().matrix();
    let tr_wa = ctx.initial_state().expectation(a);
    let tr_wa_a = wa.expectation(a);
    Equivalence {
        tr_wa,
        tr_wa_a,
        delta: (tr_wa - tr_wa_a).abs(),
    }
}

/// `|Tr(W B) − Tr(W_A B)|` for an arbitrary second operator `B`. Zero
/// whenever `B` commutes with `A`.
pub fn expectation_deviation(ctx: &MeasurementContext, b: &ComplexMatrix) -> Result<f64> {
    check_dims(ctx.initial_state().dim(), b.dim())?;
    let wa = luders_nonselective(ctx).state;
    Ok((ctx.initial_state().expectation(b) - wa.expectation(b)).abs())
}

/// `½ Tr|W_A − W_B|` for the same initial state in two contexts.
pub fn contexts_distance(w: &DensityOperator, a: &Observable, b: &Observable) -> Result<f64> {
    let wa = luders(w, a)?;
    let wb = luders(w, b)?;
    Ok(wa.trace_distance(&wb))
}

/// Left-to-right composition of non-selective Lüders maps.
pub fn sequential_luders(w: &DensityOperator, sequence: &[Observable]) -> Result<DensityOperator> {
    sequence
        .iter()
        .try_fold(w.clone(), |state, obs| luders(&state, obs))
}

/// Closure and probability checks on the proposition lattice generated by
/// one observable's spectral projectors.
#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub atoms: usize,
    pub elements: usize,
    pub pairwise_orthogonal: bool,
    pub resolves_identity: bool,
    pub closed_under_meet: bool,
    pub closed_under_join: bool,
    pub closed_under_complement: bool,
    /// Every supplied state gives probabilities in `[0, 1]` summing to one.
    pub kolmogorov: bool,
    /// Largest deviation of a probability sum from one.
    pub max_probability_sum_error: f64,
}

impl LatticeReport {
    pub fn is_boolean(&self) -> bool {
        self.pairwise_orthogonal
            && self.resolves_identity
            && self.closed_under_meet
            && self.closed_under_join
            && self.closed_under_complement
    }
}

/// Largest atom count whose `2^n` lattice is enumerated pairwise.
pub const LATTICE_ATOM_LIMIT: usize = 6;

/// Enumerates the lattice `{Σ_{i∈S} P_i}` and verifies closure of meet
/// (`EF`), join (`E + F − EF`) and complement (`I − E`) by matching each
/// result against the enumerated elements.
pub fn boolean_lattice_check(a: &Observable, states: &[DensityOperator]) -> Result<LatticeReport> {
    let projectors = a.spectrum().projectors();
    let atoms = projectors.len();
    if atoms > LATTICE_ATOM_LIMIT {
        return Err(Error::LatticeTooLarge {
            atoms,
            limit: LATTICE_ATOM_LIMIT,
        });
    }
    let dim = a.dim();
    let identity = ComplexMatrix::identity(dim);
    let eps = tol::OPERATOR_IDENTITY;

    let mut pairwise_orthogonal = true;
    for (i, p) in projectors.iter().enumerate() {
        for q in &projectors[i + 1..] {
            pairwise_orthogonal &= (p * q).max_abs() <= eps;
        }
    }
    let sum = projectors
        .iter()
        .fold(ComplexMatrix::zeros(dim), |acc, p| &acc + p);
    let resolves_identity = sum.max_abs_diff(&identity) <= eps;

    let elements: Vec<ComplexMatrix> = (0..1usize << atoms)
        .map(|mask| {
            projectors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(ComplexMatrix::zeros(dim), |acc, (_, p)| &acc + p)
        })
        .collect();
    let member = |m: &ComplexMatrix| elements.iter().any(|e| e.max_abs_diff(m) <= eps);

    let mut closed_under_meet = true;
    let mut closed_under_join = true;
    let mut closed_under_complement = true;
    for e in &elements {
        closed_under_complement &= member(&(&identity - e));
        for f in &elements {
            let meet = e * f;
            closed_under_meet &= member(&meet);
            closed_under_join &= member(&(&(e + f) - &meet));
        }
    }

    let mut kolmogorov = true;
    let mut max_probability_sum_error = 0.0_f64;
    for w in states {
        let probs = a.probabilities(w)?;
        kolmogorov &= probs.iter().all(|&p| (-eps..=1.0 + eps).contains(&p));
        let err = (probs.iter().sum::<f64>() - 1.0).abs();
        max_probability_sum_error = max_probability_sum_error.max(err);
        kolmogorov &= err <= tol::NORMALIZATION;
    }

    Ok(LatticeReport {
        atoms,
        elements: elements.len(),
        pairwise_orthogonal,
        resolves_identity,
        closed_under_meet,
        closed_under_join,
        closed_under_complement,
        kolmogorov,
        max_probability_sum_error,
    })
}
