//! Kochen-Specker style value-assignment problems and the GHZ argument.
//!
//! Operator identities are checked numerically; the assignment search is
//! exact integer arithmetic over `{±1}ⁿ`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::context::{luders, Observable};
use crate::error::{Error, Result};
use crate::matrix::{self, pauli_string, ComplexMatrix};
use crate::state::{self, DensityOperator};
use crate::tol;

/// Largest observable count accepted by the exhaustive search.
pub const MAX_SEARCH_OBSERVABLES: usize = 20;

/// Involutive observables grouped into commuting contexts, each with the
/// sign its ordered operator product must equal.
#[derive(Debug, Clone)]
pub struct ValueAssignmentProblem {
    observables: Vec<ComplexMatrix>,
    labels: Vec<String>,
    contexts: Vec<Vec<usize>>,
    signs: Vec<i8>,
    residuals: Vec<f64>,
}

impl ValueAssignmentProblem {
    /// Verifies `O² = I`, pairwise commutation inside each context and
    /// `Π O = sign·I` for every context, all within
    /// [`tol::OPERATOR_IDENTITY`].
    pub fn new(
        observables: Vec<ComplexMatrix>,
        labels: Vec<String>,
        contexts: Vec<Vec<usize>>,
        signs: Vec<i8>,
    ) -> Result<Self> {
        if labels.len() != observables.len() {
            return Err(Error::DimensionMismatch {
                expected: observables.len(),
                actual: labels.len(),
            });
        }
        if signs.len() != contexts.len() {
            return Err(Error::DimensionMismatch {
                expected: contexts.len(),
                actual: signs.len(),
            });
        }
        let dim = observables.first().map_or(0, ComplexMatrix::dim);
        let identity = ComplexMatrix::identity(dim);
        for (o, label) in observables.iter().zip(&labels) {
            if o.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: o.dim(),
                });
            }
            let deviation = (o * o).max_abs_diff(&identity);
            if deviation > tol::OPERATOR_IDENTITY {
                return Err(Error::NotInvolution {
                    label: label.clone(),
                    deviation,
                });
            }
        }

        let mut residuals = Vec::with_capacity(contexts.len());
        for (k, (ctx, &sign)) in contexts.iter().zip(&signs).enumerate() {
            let invalid = |reason: String| Error::InvalidContext { context: k, reason };
            if sign != 1 && sign != -1 {
                return Err(invalid(format!("sign must be +1 or -1, got {sign}")));
            }
            if ctx.is_empty() {
                return Err(invalid("context is empty".into()));
            }
            if let Some(&bad) = ctx.iter().find(|&&i| i >= observables.len()) {
                return Err(invalid(format!("observable index {bad} out of range")));
            }
            for (n, &i) in ctx.iter().enumerate() {
                for &j in &ctx[n + 1..] {
                    let c = matrix::commutator_norm(&observables[i], &observables[j]);
                    if c > tol::OPERATOR_IDENTITY {
                        return Err(Error::Commutation {
                            first: labels[i].clone(),
                            second: labels[j].clone(),
                            relation: "share a context but do not commute",
                        });
                    }
                }
            }
            let product = ctx[1..]
                .iter()
                .fold(observables[ctx[0]].clone(), |acc, &i| {
                    &acc * &observables[i]
                });
            let residual = product.max_abs_diff(&identity.scale_real(f64::from(sign)));
            if residual > tol::OPERATOR_IDENTITY {
                return Err(invalid(format!(
                    "operator product differs from {sign:+}·I by {residual:e}"
                )));
            }
            residuals.push(residual);
        }

        Ok(Self {
            observables,
            labels,
            contexts,
            signs,
            residuals,
        })
    }

    pub fn observables(&self) -> &[ComplexMatrix] {
        &self.observables
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `max |Π O − sign·I|` per context, measured at construction.
    pub fn context_residuals(&self) -> &[f64] {
        &self.residuals
    }

    /// The same problem with one context and its constraint dropped.
    pub fn without_context(&self, index: usize) -> Result<Self> {
        let mut contexts = self.contexts.clone();
        let mut signs = self.signs.clone();
        if index >= contexts.len() {
            return Err(Error::InvalidContext {
                context: index,
                reason: "no such context".into(),
            });
        }
        contexts.remove(index);
        signs.remove(index);
        Self::new(
            self.observables.clone(),
            self.labels.clone(),
            contexts,
            signs,
        )
    }

    /// True when `values` (each ±1) meets every context constraint.
    pub fn satisfied_by(&self, values: &[i8]) -> bool {
        values.len() == self.observables.len()
            && self
                .contexts
                .iter()
                .zip(&self.signs)
                .all(|(ctx, &sign)| ctx.iter().map(|&i| values[i]).product::<i8>() == sign)
    }
}

/// The 3×3 square of two-qubit Pauli products. Rows and the first two
/// columns multiply to `+I`, the third column to `−I`.
pub fn mermin_peres_square() -> ValueAssignmentProblem {
    let names = ["XI", "IX", "XX", "IY", "YI", "YY", "XY", "YX", "ZZ"];
    let observables = names
        .iter()
        .map(|n| pauli_string(n).expect("valid Pauli string"))
        .collect();
    let labels = names.iter().map(|n| n.to_string()).collect();
    let contexts = vec![
        vec![0, 1, 2],
        vec![3, 4, 5],
        vec![6, 7, 8],
        vec![0, 3, 6],
        vec![1, 4, 7],
        vec![2, 5, 8],
    ];
    let signs = vec![1, 1, 1, 1, 1, -1];
    ValueAssignmentProblem::new(observables, labels, contexts, signs)
        .expect("Mermin-Peres identities hold")
}

/// Result of the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub assignments_searched: u64,
    pub satisfying: u64,
    /// First satisfying assignment in enumeration order.
    pub first: Option<Vec<i8>>,
}

/// Enumerates every assignment in `{±1}ⁿ`. Bit `i` of the counter set
/// means observable `i` takes the value −1, so a context's value product is
/// the parity of its masked bits.
pub fn search_noncontextual_assignment(p: &ValueAssignmentProblem) -> Result<SearchOutcome> {
    let n = p.observables.len();
    if n > MAX_SEARCH_OBSERVABLES {
        return Err(Error::ProblemTooLarge {
            observables: n,
            limit: MAX_SEARCH_OBSERVABLES,
        });
    }
    let constraints: Vec<(u32, u32)> = p
        .contexts
        .iter()
        .zip(&p.signs)
        .map(|(ctx, &sign)| {
            // a member listed twice contributes v² = 1
            let mask = ctx.iter().fold(0u32, |m, &i| m ^ (1 << i));
            (mask, u32::from(sign == -1))
        })
        .collect();
    let total = 1u64 << n;
    let mut satisfying = 0u64;
    let mut first = None;
    for bits in 0..total as u32 {
        if constraints
            .iter()
            .all(|&(mask, parity)| (bits & mask).count_ones() % 2 == parity)
        {
            satisfying += 1;
            if first.is_none() {
                first = Some(
                    (0..n)
                        .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                        .collect(),
                );
            }
        }
    }
    Ok(SearchOutcome {
        assignments_searched: total,
        satisfying,
        first,
    })
}

/// One eigenvalue relation on the GHZ state.
#[derive(Debug, Clone)]
pub struct EigenRelation {
    pub label: String,
    /// `⟨GHZ| O |GHZ⟩`.
    pub eigenvalue: f64,
    /// `‖O|GHZ⟩ − λ|GHZ⟩‖`.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct GhzReport {
    pub relations: Vec<EigenRelation>,
    /// Product of the four measured eigenvalue signs.
    pub constraint_product: i32,
    /// Each single-site value appears twice across the four products, so
    /// any ±1 assignment multiplies them to +1.
    pub forced_product: i32,
    pub contradiction: bool,
    pub assignments_searched: u64,
    pub satisfying_assignments: u64,
}

/// Verifies the GHZ eigenvalue relations for `XXX`, `XYY`, `YXY`, `YYX`
/// and shows no assignment of ±1 to the six local values reproduces them.
pub fn ghz_contradiction() -> GhzReport {
    let psi = state::ghz();
    let names = ["XXX", "XYY", "YXY", "YYX"];
    let relations: Vec<EigenRelation> = names
        .iter()
        .map(|name| {
            let op = pauli_string(name).expect("valid Pauli string");
            let image = op.apply(psi.amplitudes());
            let eigenvalue = matrix::inner(psi.amplitudes(), &image).re;
            let residual = matrix::norm(
                &image
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(x, y)| x - y * eigenvalue)
                    .collect::<Vec<_>>(),
            );
            EigenRelation {
                label: name.to_string(),
                eigenvalue,
                residual,
            }
        })
        .collect();
    let signs: Vec<i32> = relations
        .iter()
        .map(|r| if r.eigenvalue >= 0.0 { 1 } else { -1 })
        .collect();
    let constraint_product = signs.iter().product();

    // local values in order x1, x2, x3, y1, y2, y3
    let site = |ch: u8, k: usize| if ch == b'X' { k } else { 3 + k };
    let masks: Vec<u32> = names
        .iter()
        .map(|n| {
            n.bytes()
                .enumerate()
                .fold(0u32, |m, (k, ch)| m | 1 << site(ch, k))
        })
        .collect();
    let forced_product = masks
        .iter()
        .fold(0u32, |acc, m| acc ^ m)
        .count_ones()
        .rem_euclid(2);
    let forced_product = if forced_product == 0 { 1 } else { -1 };
    let mut satisfying_assignments = 0;
    for bits in 0u32..64 {
        let ok = masks.iter().zip(&signs).all(|(&m, &s)| {
            let value = if (bits & m).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            value == s
        });
        if ok {
            satisfying_assignments += 1;
        }
    }
    GhzReport {
        relations,
        constraint_product,
        forced_product,
        contradiction: constraint_product != forced_product,
        assignments_searched: 64,
        satisfying_assignments,
    }
}

/// A-outcome statistics under three preparations of the same state.
#[derive(Debug, Clone)]
pub struct ValueDependenceReport {
    /// A's distribution on `W` itself, eigenvalue order.
    pub direct: Vec<f64>,
    /// A's distribution after a non-selective B measurement.
    pub after_b: Vec<f64>,
    /// A's distribution after a non-selective C measurement.
    pub after_c: Vec<f64>,
    /// Largest entrywise difference among the three distributions.
    pub max_distribution_difference: f64,
    pub distributions_differ: bool,
    /// Trace distance between the states prepared by B and by C.
    pub preparation_distance: f64,
    /// `max |[B, C]|`.
    pub bc_commutator: f64,
}

/// Measures A directly and after a prior non-selective measurement of B
/// or of C. Both B and C must commute with A.
pub fn value_dependence_demo(
    w: &DensityOperator,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<ValueDependenceReport> {
    for other in [b, c] {
        if !a.commutes_with(other, tol::OPERATOR_IDENTITY)? {
            return Err(Error::Commutation {
                first: a.label().to_string(),
                second: other.label().to_string(),
                relation: "must commute but do not",
            });
        }
    }
    let bc_commutator = b.commutator_norm(c)?;
    let after_b_state = luders(w, b)?;
    let after_c_state = luders(w, c)?;
    let direct = a.probabilities(w)?;
    let after_b = a.probabilities(&after_b_state)?;
    let after_c = a.probabilities(&after_c_state)?;
    let mut max_distribution_difference = 0.0_f64;
    for (x, y) in [
        (&direct, &after_b),
        (&direct, &after_c),
        (&after_b, &after_c),
    ] {
        for (p, q) in x.iter().zip(y.iter()) {
            max_distribution_difference = max_distribution_difference.max((p - q).abs());
        }
    }
    Ok(ValueDependenceReport {
        distributions_differ: max_distribution_difference > tol::OPERATOR_IDENTITY,
        max_distribution_difference,
        preparation_distance: after_b_state.trace_distance(&after_c_state),
        bc_commutator,
        direct,
        after_b,
        after_c,
    })
}
