//! EPR-Bohm correlations of two spin-1/2 systems.
//!
//! Outcomes are the ±1 eigenvalues of `d·σ`; the physical spin values are
//! these times ħ/2.

use alloc::format;
use alloc::vec::Vec;

use crate::context::{luders, Observable};
use crate::entanglement::reduced_state;
use crate::error::{Error, Result};
use crate::matrix::{tensor, ComplexMatrix, Subsystem, C64};
use crate::state::{DensityOperator, PureState};
use crate::tol;

/// Unit 3-vector selecting a spin component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction([f64; 3]);

impl Direction {
    /// Accepts vectors whose norm is 1 within [`tol::DIRECTION_NORM`].
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let norm = libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if !norm.is_finite() || (norm - 1.0).abs() > tol::DIRECTION_NORM {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self(v))
    }

    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let norm = libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self([v[0] / norm, v[1] / norm, v[2] / norm]))
    }

    pub fn x() -> Self {
        Self([1.0, 0.0, 0.0])
    }

    pub fn y() -> Self {
        Self([0.0, 1.0, 0.0])
    }

    pub fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    /// Direction in the x-z plane at `theta` radians from +z towards +x.
    pub fn in_xz_plane(theta: f64) -> Self {
        Self([libm::sin(theta), 0.0, libm::cos(theta)])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.0.iter().zip(other.0).map(|(a, b)| a * b).sum()
    }

    pub fn flipped(&self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }
}

/// `d·σ`, eigenvalues ±1.
pub fn spin_matrix(d: &Direction) -> ComplexMatrix {
    let [x, y, z] = d.0;
    let sx = ComplexMatrix::pauli_x().scale_real(x);
    let sy = ComplexMatrix::pauli_y().scale_real(y);
    let sz = ComplexMatrix::pauli_z().scale_real(z);
    &(&sx + &sy) + &sz
}

pub fn spin_observable(d: &Direction) -> Observable {
    let [x, y, z] = d.0;
    Observable::new(spin_matrix(d), format!("spin:{x},{y},{z}"))
        .expect("Pauli combination is Hermitian")
}

/// Projectors `(P_+, P_−)` of `d·σ`, taken from its spectral resolution.
fn outcome_projectors(d: &Direction) -> [ComplexMatrix; 2] {
    let obs = spin_observable(d);
    let sd = obs.spectrum();
    let plus = sd.index_of(1.0).expect("spin observable has eigenvalue +1");
    let minus = sd
        .index_of(-1.0)
        .expect("spin observable has eigenvalue -1");
    [
        sd.projectors()[plus].clone(),
        sd.projectors()[minus].clone(),
    ]
}

/// Exact outcome statistics for one pair of settings. Index 0 is outcome
/// +1, index 1 is −1.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub settings: (Direction, Direction),
    pub joint: [[f64; 2]; 2],
    pub marginal_a: [f64; 2],
    pub marginal_b: [f64; 2],
    /// `E(a, b) = Σ_ij s_i s_j p(i, j)`.
    pub expectation: f64,
}

const SIGNS: [f64; 2] = [1.0, -1.0];

fn check_two_qubit(w: &DensityOperator) -> Result<()> {
    if w.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: w.dim(),
        });
    }
    Ok(())
}

/// `p(i, j) = Tr[(P_i ⊗ Q_j) W]`.
pub fn joint_probabilities(
    w: &DensityOperator,
    a: &Direction,
    b: &Direction,
) -> Result<CorrelationRecord> {
    check_two_qubit(w)?;
    let pa = outcome_projectors(a);
    let pb = outcome_projectors(b);
    let mut joint = [[0.0; 2]; 2];
    for (i, p) in pa.iter().enumerate() {
        for (j, q) in pb.iter().enumerate() {
            joint[i][j] = w.expectation(&tensor(p, q)).clamp(0.0, 1.0);
        }
    }
    let marginal_a = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]];
    let marginal_b = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]];
    let mut expectation = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            expectation += SIGNS[i] * SIGNS[j] * joint[i][j];
        }
    }
    Ok(CorrelationRecord {
        settings: (*a, *b),
        joint,
        marginal_a,
        marginal_b,
        expectation,
    })
}

pub fn correlation(w: &DensityOperator, a: &Direction, b: &Direction) -> Result<f64> {
    Ok(joint_probabilities(w, a, b)?.expectation)
}

/// Selective outcome on S1 and the state it leaves S2 in.
#[derive(Debug, Clone)]
pub struct RemoteState {
    pub probability: f64,
    pub state: PureState,
}

/// Projects S1 of a two-qubit pure state onto outcome `outcome` of `a·σ`
/// and returns the renormalized state of S2.
pub fn conditional_remote_state(
    psi: &PureState,
    a: &Direction,
    outcome: i32,
) -> Result<RemoteState> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: psi.dim(),
        });
    }
    let index = match outcome {
        1 => 1.0,
        -1 => -1.0,
        other => return Err(Error::InvalidOutcome(other)),
    };
    let obs = spin_observable(a);
    let k = obs
        .spectrum()
        .index_of(index)
        .expect("spin observable has eigenvalues ±1");
    let eigvec = &obs.spectrum().eigenspace(k)[0];
    let amps = psi.amplitudes();
    // (⟨e| ⊗ I)|ψ⟩
    let remote: Vec<C64> = (0..2)
        .map(|j| (0..2).map(|i| eigvec[i].conj() * amps[2 * i + j]).sum())
        .collect();
    let probability = remote.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if probability <= tol::CONDITIONING {
        return Err(Error::ZeroProbability { probability });
    }
    Ok(RemoteState {
        probability,
        state: PureState::normalized(remote)?,
    })
}

/// `S = E(a,b) + E(a,b') + E(a',b) − E(a',b')`.
pub fn chsh(
    w: &DensityOperator,
    a: &Direction,
    a_prime: &Direction,
    b: &Direction,
    b_prime: &Direction,
) -> Result<f64> {
    Ok(
        correlation(w, a, b)? + correlation(w, a, b_prime)? + correlation(w, a_prime, b)?
            - correlation(w, a_prime, b_prime)?,
    )
}

/// CHSH values of all 16 deterministic local strategies
/// `(A(a), A(a'), B(b), B(b')) ∈ {±1}⁴`.
pub fn deterministic_local_chsh_values() -> Vec<i32> {
    (0..16u32)
        .map(|mask| {
            let v = |bit: u32| if mask >> bit & 1 == 1 { -1 } else { 1 };
            let (a, a2, b, b2) = (v(0), v(1), v(2), v(3));
            a * b + a * b2 + a2 * b - a2 * b2
        })
        .collect()
}

/// S2's view of the state under each S1 setting.
#[derive(Debug, Clone)]
pub struct NoSignallingReport {
    /// Max trace distance between S2 reduced states across S1 settings.
    pub max_deviation: f64,
    /// Max spread of S2's `P(+1)` along `b` across S1 settings.
    pub max_marginal_deviation: f64,
    pub reduced_states: Vec<DensityOperator>,
    /// S2's `(P(+1), P(−1))` along `b` per S1 setting.
    pub marginals: Vec<[f64; 2]>,
}

/// Applies S1's non-selective measurement for each setting and compares
/// the resulting S2 reduced states and `b`-marginals.
pub fn no_signalling_check(
    w: &DensityOperator,
    settings: &[Direction],
    b: &Direction,
) -> Result<NoSignallingReport> {
    check_two_qubit(w)?;
    let mut reduced_states = Vec::with_capacity(settings.len());
    let mut marginals = Vec::with_capacity(settings.len());
    for a in settings {
        let local = Observable::new(
            tensor(&spin_matrix(a), &ComplexMatrix::identity(2)),
            "a x I",
        )?;
        let after = luders(w, &local)?;
        reduced_states.push(reduced_state(&after, (2, 2), Subsystem::Second)?);
        marginals.push(joint_probabilities(w, a, b)?.marginal_b);
    }
    let mut max_deviation = 0.0_f64;
    let mut max_marginal_deviation = 0.0_f64;
    for i in 0..settings.len() {
        for j in i + 1..settings.len() {
            max_deviation = max_deviation.max(reduced_states[i].trace_distance(&reduced_states[j]));
            max_marginal_deviation =
                max_marginal_deviation.max((marginals[i][0] - marginals[j][0]).abs());
        }
    }
    Ok(NoSignallingReport {
        max_deviation,
        max_marginal_deviation,
        reduced_states,
        marginals,
    })
}

/// `|p(b = +1 | a = +1) − p(b = +1)|`.
pub fn outcome_dependence(w: &DensityOperator, a: &Direction, b: &Direction) -> Result<f64> {
    let rec = joint_probabilities(w, a, b)?;
    let pa = rec.marginal_a[0];
    if pa <= tol::CONDITIONING {
        return Err(Error::ZeroProbability { probability: pa });
    }
    Ok((rec.joint[0][0] / pa - rec.marginal_b[0]).abs())
}

/// One row of a correlation sweep with `a = ẑ` and `b` in the x-z plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRow {
    pub theta_degrees: f64,
    pub expectation: f64,
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
}

pub fn correlation_sweep(
    w: &DensityOperator,
    thetas_degrees: &[f64],
) -> Result<Vec<CorrelationRow>> {
    let a = Direction::z();
    thetas_degrees
        .iter()
        .map(|&deg| {
            let rec = joint_probabilities(w, &a, &Direction::in_xz_plane(deg.to_radians()))?;
            Ok(CorrelationRow {
                theta_degrees: deg,
                expectation: rec.expectation,
                p_pp: rec.joint[0][0],
                p_pm: rec.joint[0][1],
                p_mp: rec.joint[1][0],
                p_mm: rec.joint[1][1],
            })
        })
        .collect()
}

/// `Tr[W (a·σ ⊗ b·σ)]` directly, without outcome projectors.
pub fn correlation_by_trace(w: &DensityOperator, a: &Direction, b: &Direction) -> Result<f64> {
    check_two_qubit(w)?;
    Ok(w.expectation(&tensor(&spin_matrix(a), &spin_matrix(b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::state::singlet;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spin_observables_along_axes() {
        assert!(spin_matrix(&Direction::z()).max_abs_diff(&ComplexMatrix::pauli_z()) < 1e-15);
        assert!(spin_matrix(&Direction::x()).max_abs_diff(&ComplexMatrix::pauli_x()) < 1e-15);
        let d = Direction::new([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]).unwrap();
        let expected =
            (&ComplexMatrix::pauli_x() + &ComplexMatrix::pauli_y()).scale_real(FRAC_1_SQRT_2);
        let obs = spin_observable(&d);
        assert!(obs.matrix().max_abs_diff(&expected) < 1e-15);
        let ev = obs.spectrum().eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn direction_must_be_unit() {
        assert!(matches!(
            Direction::new([1.0, 1.0, 0.0]),
            Err(Error::NotUnitVector { .. })
        ));
    }

    #[test]
    fn product_states_factorize() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let p = random::pure_state(&mut rng, 2);
            let q = random::pure_state(&mut rng, 2);
            let w = p.tensor(&q).density();
            let a = random::direction(&mut rng);
            let b = random::direction(&mut rng);
            let rec = joint_probabilities(&w, &a, &b).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        (rec.joint[i][j] - rec.marginal_a[i] * rec.marginal_b[j]).abs() < 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn singlet_same_axis_is_anticorrelated() {
        let rec =
            joint_probabilities(&singlet().density(), &Direction::z(), &Direction::z()).unwrap();
        assert!(rec.joint[0][0].abs() < 1e-15 && rec.joint[1][1].abs() < 1e-15);
        assert!((rec.joint[0][1] - 0.5).abs() < 1e-15 && (rec.joint[1][0] - 0.5).abs() < 1e-15);
        assert!((rec.expectation + 1.0).abs() < 1e-15);
    }

    #[test]
    fn singlet_orthogonal_axes_are_uniform() {
        let rec =
            joint_probabilities(&singlet().density(), &Direction::z(), &Direction::x()).unwrap();
        for row in rec.joint {
            for p in row {
                assert!((p - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn singlet_correlation_is_minus_cosine() {
        let w = singlet().density();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let a = random::direction(&mut rng);
            let b = random::direction(&mut rng);
            assert!((correlation(&w, &a, &b).unwrap() + a.dot(&b)).abs() < 1e-10);
        }
    }

    #[test]
    fn product_up_up_is_perfectly_correlated() {
        let w = PureState::basis(4, 0).unwrap().density();
        assert!((correlation(&w, &Direction::z(), &Direction::z()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singlet_remote_state_is_opposite() {
        let r = conditional_remote_state(&singlet(), &Direction::z(), 1).unwrap();
        assert!((r.probability - 0.5).abs() < 1e-15);
        assert!((r.state.fidelity(&PureState::basis(2, 1).unwrap()) - 1.0).abs() < 1e-15);
        let z = ComplexMatrix::pauli_z();
        assert!((r.state.density().expectation(&z) + 1.0).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..20 {
            let a = random::direction(&mut rng);
            let r = conditional_remote_state(&singlet(), &a, 1).unwrap();
            // −1 eigenstate of a·σ: ⟨a·σ⟩ = −1
            assert!((r.state.density().expectation(&spin_matrix(&a)) + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn product_remote_state_is_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let chi = random::pure_state(&mut rng, 2);
        let psi = PureState::basis(2, 0).unwrap().tensor(&chi);
        let r = conditional_remote_state(&psi, &Direction::z(), 1).unwrap();
        assert!((r.probability - 1.0).abs() < 1e-12);
        assert!((r.state.fidelity(&chi) - 1.0).abs() < 1e-12);
        assert!(matches!(
            conditional_remote_state(&psi, &Direction::z(), -1),
            Err(Error::ZeroProbability { .. })
        ));
        assert_eq!(
            conditional_remote_state(&psi, &Direction::z(), 0).unwrap_err(),
            Error::InvalidOutcome(0)
        );
    }

    #[test]
    fn chsh_values() {
        let deg = |d: f64| Direction::in_xz_plane(d * PI / 180.0);
        // S1 settings {0°, 90°}, S2 settings {45°, 135°}; with this sign
        // convention a = 90° and a' = 0° reach the Tsirelson value.
        let s = chsh(
            &singlet().density(),
            &deg(90.0),
            &deg(0.0),
            &deg(45.0),
            &deg(135.0),
        )
        .unwrap();
        assert!((s.abs() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
        let swapped = chsh(
            &singlet().density(),
            &deg(0.0),
            &deg(90.0),
            &deg(45.0),
            &deg(135.0),
        )
        .unwrap();
        assert!(swapped.abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..100 {
            let w = random::product_state(&mut rng, 2, 2).density();
            let d: Vec<_> = (0..4).map(|_| random::direction(&mut rng)).collect();
            assert!(chsh(&w, &d[0], &d[1], &d[2], &d[3]).unwrap().abs() <= 2.0 + 1e-9);
        }
        let values = deterministic_local_chsh_values();
        assert_eq!(values.len(), 16);
        assert!(values.iter().all(|v| v.abs() == 2));
    }

    #[test]
    fn no_signalling() {
        let settings = [
            Direction::z(),
            Direction::x(),
            Direction::normalized([1.0, 1.0, 1.0]).unwrap(),
        ];
        let r = no_signalling_check(&singlet().density(), &settings, &Direction::z()).unwrap();
        assert!(r.max_deviation < 1e-9);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for s in &r.reduced_states {
            assert!(s.matrix().max_abs_diff(&half) < 1e-12);
        }
        let single =
            no_signalling_check(&singlet().density(), &settings[..1], &Direction::z()).unwrap();
        assert_eq!(single.max_deviation, 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for _ in 0..50 {
            let w = random::density_operator(&mut rng, 4);
            let settings: Vec<_> = (0..5).map(|_| random::direction(&mut rng)).collect();
            let b = random::direction(&mut rng);
            let r = no_signalling_check(&w, &settings, &b).unwrap();
            assert!(r.max_deviation < 1e-9 && r.max_marginal_deviation < 1e-9);
        }
    }

    #[test]
    fn outcome_dependence_values() {
        let w = singlet().density();
        assert!(
            (outcome_dependence(&w, &Direction::z(), &Direction::z()).unwrap() - 0.5).abs() < 1e-12
        );
        let b = Direction::in_xz_plane(PI / 3.0);
        // p(+,+) = ½ sin²(θ/2) so p(b+|a+) = sin²(30°) = ¼ against a marginal of ½
        assert!((outcome_dependence(&w, &Direction::z(), &b).unwrap() - 0.25).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let prod = random::product_state(&mut rng, 2, 2).density();
        let a = random::direction(&mut rng);
        let b = random::direction(&mut rng);
        assert!(outcome_dependence(&prod, &a, &b).unwrap() < 1e-10);
        let up_up = PureState::basis(4, 0).unwrap().density();
        assert!(matches!(
            outcome_dependence(&up_up, &Direction::z().flipped(), &Direction::z()),
            Err(Error::ZeroProbability { .. })
        ));
    }

    #[test]
    fn sweep_rows_follow_singlet_law() {
        let rows = correlation_sweep(&singlet().density(), &[0.0, 60.0, 90.0, 180.0]).unwrap();
        for r in rows {
            assert!((r.expectation + r.theta_degrees.to_radians().cos()).abs() < 1e-12);
            assert!((r.p_pp + r.p_pm + r.p_mp + r.p_mm - 1.0).abs() < 1e-12);
        }
    }
}
