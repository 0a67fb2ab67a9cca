//! Mutually unbiased bases and linear-inversion state reconstruction.
//!
//! With a complete set of `d + 1` MUBs the Born statistics determine the
//! state: `ρ = Σ_{b,k} p(k|b) |e_{b,k}⟩⟨e_{b,k}| − I`.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix, C64, ONE, ZERO};
use crate::spectral;
use crate::state::DensityOperator;
use crate::tol;

/// A complete set of `d + 1` mutually unbiased orthonormal bases.
#[derive(Debug, Clone)]
pub struct MubSet {
    dim: usize,
    bases: Vec<Vec<Vec<C64>>>,
}

impl MubSet {
    /// Checks orthonormality within each basis and `|⟨e, f⟩|² = 1/d` across
    /// bases, both within [`tol::NORMALIZATION`].
    pub fn new(dim: usize, bases: Vec<Vec<Vec<C64>>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        if bases.len() != dim + 1 {
            return Err(Error::InvalidBasis(format!(
                "expected {} bases, got {}",
                dim + 1,
                bases.len()
            )));
        }
        let eps = tol::NORMALIZATION;
        for (b, basis) in bases.iter().enumerate() {
            if basis.len() != dim || basis.iter().any(|v| v.len() != dim) {
                return Err(Error::InvalidBasis(format!("basis {b} is not {dim}x{dim}")));
            }
            for (i, u) in basis.iter().enumerate() {
                for (j, v) in basis.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    if (matrix::inner(u, v).norm() - expected).abs() > eps {
                        return Err(Error::InvalidBasis(format!("basis {b} is not orthonormal")));
                    }
                }
            }
        }
        let unbiased = 1.0 / dim as f64;
        for b in 0..bases.len() {
            for c in b + 1..bases.len() {
                for u in &bases[b] {
                    for v in &bases[c] {
                        if (matrix::inner(u, v).norm_sqr() - unbiased).abs() > eps {
                            return Err(Error::InvalidBasis(format!(
                                "bases {b} and {c} are not mutually unbiased"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self { dim, bases })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Vec<Vec<C64>>] {
        &self.bases
    }
}

/// Eigenbases of σz, σx and σy.
pub fn mub_qubit() -> MubSet {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let r = |x: f64| C64::new(x, 0.0);
    let bases = alloc::vec![
        alloc::vec![alloc::vec![ONE, ZERO], alloc::vec![ZERO, ONE]],
        alloc::vec![alloc::vec![r(s), r(s)], alloc::vec![r(s), r(-s)]],
        alloc::vec![
            alloc::vec![r(s), C64::new(0.0, s)],
            alloc::vec![r(s), C64::new(0.0, -s)]
        ],
    ];
    MubSet::new(2, bases).expect("qubit MUBs")
}

fn is_odd_prime(d: usize) -> bool {
    d > 2
        && d % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|k| k * k <= d)
            .all(|k| !d.is_multiple_of(k))
}

/// Computational basis plus `e_{b,k}[j] = ω^{b j² + k j}/√d` for an odd
/// prime `d`.
pub fn mub_prime(d: usize) -> Result<MubSet> {
    if !is_odd_prime(d) {
        return Err(Error::InvalidBasis(format!("{d} is not an odd prime")));
    }
    let scale = 1.0 / libm::sqrt(d as f64);
    let tau = 2.0 * core::f64::consts::PI / d as f64;
    let mut bases = Vec::with_capacity(d + 1);
    bases.push(
        (0..d)
            .map(|k| (0..d).map(|j| if j == k { ONE } else { ZERO }).collect())
            .collect(),
    );
    for b in 0..d {
        bases.push(
            (0..d)
                .map(|k| {
                    (0..d)
                        .map(|j| {
                            let exponent = (b * j * j + k * j) % d;
                            C64::from_polar(scale, tau * exponent as f64)
                        })
                        .collect()
                })
                .collect(),
        );
    }
    MubSet::new(d, bases)
}

/// Multinomial sampling parameters: shots per basis and the generator seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub shots: u64,
    pub seed: u64,
}

/// `tables[b][k] = p(k | b)`, exact or as sampled frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTables {
    pub dim: usize,
    pub tables: Vec<Vec<f64>>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

/// Born probabilities `⟨e_{b,k}| W |e_{b,k}⟩` for each basis, or sampled
/// frequencies from a ChaCha8 stream seeded with `sampling.seed`.
pub fn measure_statistics(
    w: &DensityOperator,
    m: &MubSet,
    sampling: Option<Sampling>,
) -> Result<ProbabilityTables> {
    if w.dim() != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            actual: w.dim(),
        });
    }
    let exact: Vec<Vec<f64>> = m
        .bases
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|e| w.matrix().expectation(e).re.max(0.0))
                .collect()
        })
        .collect();
    let Some(sampling) = sampling else {
        return Ok(ProbabilityTables {
            dim: m.dim,
            tables: exact,
            samples: None,
            seed: None,
        });
    };
    if sampling.shots == 0 {
        return Err(Error::InvalidStatistics(
            "shot count must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let tables = exact
        .iter()
        .map(|probs| {
            let total: f64 = probs.iter().sum();
            let mut counts = alloc::vec![0u64; probs.len()];
            for _ in 0..sampling.shots {
                let mut u = rng.random::<f64>() * total;
                let mut k = 0;
                while k + 1 < probs.len() && u >= probs[k] {
                    u -= probs[k];
                    k += 1;
                }
                counts[k] += 1;
            }
            counts
                .iter()
                .map(|&c| c as f64 / sampling.shots as f64)
                .collect()
        })
        .collect();
    Ok(ProbabilityTables {
        dim: m.dim,
        tables,
        samples: Some(sampling.shots),
        seed: Some(sampling.seed),
    })
}

/// Linear inversion followed, when needed, by clipping negative eigenvalues
/// to zero and renormalizing the trace.
pub fn reconstruct(stats: &ProbabilityTables, m: &MubSet) -> Result<DensityOperator> {
    if stats.dim != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            actual: stats.dim,
        });
    }
    if stats.tables.len() != m.bases.len() {
        return Err(Error::InvalidStatistics(format!(
            "expected {} basis tables, got {}",
            m.bases.len(),
            stats.tables.len()
        )));
    }
    let d = m.dim;
    let mut rho = ComplexMatrix::identity(d).scale_real(-1.0);
    for (b, (table, basis)) in stats.tables.iter().zip(&m.bases).enumerate() {
        if table.len() != d {
            return Err(Error::InvalidStatistics(format!(
                "table {b} has {} entries, expected {d}",
                table.len()
            )));
        }
        if table.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidStatistics(format!(
                "table {b} has a non-finite entry"
            )));
        }
        for (&p, e) in table.iter().zip(basis) {
            rho = &rho + &ComplexMatrix::projector(e).scale_real(p);
        }
    }
    let rho = ComplexMatrix::from_fn(d, |r, c| (rho[(r, c)] + rho[(c, r)].conj()) * 0.5);
    let eig = spectral::eigh(&rho)?;
    if eig.values[0] >= 0.0 && (rho.trace().re - 1.0).abs() <= tol::NORMALIZATION {
        return DensityOperator::new(rho);
    }
    let clipped: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::InvalidStatistics(
            "reconstruction has no positive part".into(),
        ));
    }
    let repaired = ComplexMatrix::from_fn(d, |r, c| {
        clipped
            .iter()
            .zip(&eig.vectors)
            .map(|(&lam, v)| v[r] * v[c].conj() * (lam / total))
            .sum()
    });
    DensityOperator::new(repaired)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::state::PureState;

    #[test]
    fn qubit_mub_properties() {
        let m = mub_qubit();
        assert_eq!(m.bases().len(), 3);
        for b in 0..3 {
            for c in b + 1..3 {
                for u in &m.bases()[b] {
                    for v in &m.bases()[c] {
                        assert!((matrix::inner(u, v).norm_sqr() - 0.5).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_mubs() {
        for d in [3, 5, 7] {
            assert_eq!(mub_prime(d).unwrap().bases().len(), d + 1);
        }
        assert!(mub_prime(4).is_err());
        assert!(mub_prime(2).is_err());
    }

    #[test]
    fn rejects_biased_bases() {
        let z = alloc::vec![alloc::vec![ONE, ZERO], alloc::vec![ZERO, ONE]];
        let err = MubSet::new(2, alloc::vec![z.clone(), z.clone(), z]).unwrap_err();
        assert!(matches!(err, Error::InvalidBasis(_)));
    }

    #[test]
    fn statistics_of_simple_states() {
        let m = mub_qubit();
        let mixed = measure_statistics(&DensityOperator::maximally_mixed(2), &m, None).unwrap();
        assert!(mixed
            .tables
            .iter()
            .flatten()
            .all(|p| (p - 0.5).abs() < 1e-15));
        let zero =
            measure_statistics(&PureState::basis(2, 0).unwrap().density(), &m, None).unwrap();
        assert_eq!(zero.tables[0], [1.0, 0.0]);
        for t in &zero.tables[1..] {
            assert!((t[0] - 0.5).abs() < 1e-15 && (t[1] - 0.5).abs() < 1e-15);
        }
        for t in &zero.tables {
            assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_round_trip() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let m = mub_qubit();
        for _ in 0..100 {
            let w = random::density_operator(&mut rng, 2);
            let stats = measure_statistics(&w, &m, None).unwrap();
            let back = reconstruct(&stats, &m).unwrap();
            assert!(back.trace_distance(&w) < 1e-9);
            assert!((back.matrix().trace().re - 1.0).abs() < 1e-10);
        }
        let uniform = ProbabilityTables {
            dim: 2,
            tables: alloc::vec![alloc::vec![0.5, 0.5]; 3],
            samples: None,
            seed: None,
        };
        let back = reconstruct(&uniform, &m).unwrap();
        assert!(back.trace_distance(&DensityOperator::maximally_mixed(2)) < 1e-15);
    }

    #[test]
    fn qutrit_round_trip() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let m = mub_prime(3).unwrap();
        let w = random::density_operator(&mut rng, 3);
        let back = reconstruct(&measure_statistics(&w, &m, None).unwrap(), &m).unwrap();
        assert!(back.trace_distance(&w) < 1e-9);
    }

    #[test]
    fn sampled_mode_is_reproducible_and_close() {
        let m = mub_qubit();
        let w = PureState::basis(2, 0).unwrap().density();
        let sampling = Some(Sampling {
            shots: 10_000,
            seed: 7,
        });
        let a = measure_statistics(&w, &m, sampling).unwrap();
        let b = measure_statistics(&w, &m, sampling).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(7));
        // pure input: noise pushes the linear estimate outside the Bloch ball
        let back = reconstruct(&a, &m).unwrap();
        assert!(back.eigenvalues()[0] >= -1e-12);
        assert!(back.trace_distance(&w) < 0.05);
    }

    #[test]
    fn missing_table_is_an_error() {
        let stats = ProbabilityTables {
            dim: 2,
            tables: alloc::vec![alloc::vec![1.0, 0.0]; 2],
            samples: None,
            seed: None,
        };
        assert!(matches!(
            reconstruct(&stats, &mub_qubit()),
            Err(Error::InvalidStatistics(_))
        ));
    }
}
