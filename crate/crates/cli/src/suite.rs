//! Every acceptance check, evaluated against closed-form targets on seeded
//! random inputs. Each criterion derives its own generator from the seed so
//! the criteria are independent and can run concurrently.

use std::f64::consts::SQRT_2;
use std::thread;

use anyhow::Result;
use contextq_core::context::{
    contexts_distance, diagonal_form, expectation_deviation, luders, statistical_equivalence,
    MeasurementContext, Observable,
};
use contextq_core::contextuality::{
    ghz_contradiction, mermin_peres_square, search_noncontextual_assignment,
};
use contextq_core::correlations::{
    chsh, conditional_remote_state, correlation, deterministic_local_chsh_values,
    joint_probabilities, no_signalling_check, outcome_dependence, spin_matrix, Direction,
};
use contextq_core::entanglement::{
    entangling_evolution_demo, reduced_state, schmidt_trajectory, total_spin_squared,
};
use contextq_core::matrix::{tensor, Subsystem};
use contextq_core::mub::{measure_statistics, mub_qubit, reconstruct, Sampling};
use contextq_core::random;
use contextq_core::state::{plus, singlet};
use contextq_core::{ComplexMatrix, DensityOperator, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::report::{Check, Report};

type Criterion = fn(&mut ChaCha8Rng) -> Result<Vec<Check>>;

const CRITERIA: [(&str, Criterion); 12] = [
    ("anticorrelation", anticorrelation),
    ("correlation_law", correlation_law),
    ("chsh", chsh_bounds),
    ("no_signalling", no_signalling),
    ("luders", luders_forms),
    ("statistical_equivalence", equivalence),
    ("context_distance", context_distance),
    ("mermin_peres", mermin_peres),
    ("ghz", ghz),
    ("total_spin", total_spin),
    ("dynamics", dynamics),
    ("mub_tomography", tomography),
];

pub fn run(report: &mut Report, seed: u64) -> Result<()> {
    let outcomes: Vec<Result<Vec<Check>>> = thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .enumerate()
            .map(|(k, (_, f))| {
                s.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
                    f(&mut rng)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    let mut summary = serde_json::Map::new();
    for ((name, _), checks) in CRITERIA.iter().zip(outcomes) {
        let checks = checks?;
        let pass = checks.iter().all(|c| c.pass);
        summary.insert((*name).to_string(), Value::Bool(pass));
        for mut c in checks {
            c.name = format!("{name}.{}", c.name);
            report.check(c);
        }
    }
    report.result("criteria", Value::Object(summary));
    Ok(())
}

fn deg(d: f64) -> Direction {
    Direction::in_xz_plane(d.to_radians())
}

fn anticorrelation(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let psi = singlet();
    let w = psi.density();
    let mut same = 0.0_f64;
    let mut opposite = 0.0_f64;
    for _ in 0..20 {
        let a = random::direction(rng);
        let rec = joint_probabilities(&w, &a, &a)?;
        same = same.max(rec.joint[0][0] + rec.joint[1][1]);
        for outcome in [1, -1] {
            let remote = conditional_remote_state(&psi, &a, outcome)?;
            let s = spin_matrix(&a);
            // remote outcome along a is −outcome with certainty
            let along = remote.state.density().expectation(&s);
            opposite = opposite.max((along + outcome as f64).abs() / 2.0);
        }
    }
    Ok(vec![
        Check::at_most("p_same_outcome", same, 1e-9),
        Check::at_most("remote_opposite_deviation", opposite, 1e-9),
    ])
}

fn correlation_law(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let w = singlet().density();
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let (a, b) = (random::direction(rng), random::direction(rng));
        worst = worst.max((correlation(&w, &a, &b)? + a.dot(&b)).abs());
    }
    Ok(vec![Check::at_most(
        "max_deviation_from_minus_cosine",
        worst,
        1e-9,
    )])
}

fn chsh_bounds(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (a, a2, b, b2) = (deg(90.0), deg(0.0), deg(45.0), deg(135.0));
    let s = chsh(&singlet().density(), &a, &a2, &b, &b2)?;
    let mut product = 0.0_f64;
    for k in 0..100 {
        let w = random::product_state(rng, 2, 2).density();
        let v = if k % 2 == 0 {
            chsh(&w, &a, &a2, &b, &b2)?
        } else {
            let d: Vec<_> = (0..4).map(|_| random::direction(rng)).collect();
            chsh(&w, &d[0], &d[1], &d[2], &d[3])?
        };
        product = product.max(v.abs());
    }
    let local = deterministic_local_chsh_values();
    let local_max = local.iter().map(|v| v.abs()).max().unwrap_or(0) as f64;
    Ok(vec![
        Check::near("singlet_abs_s", s.abs(), 2.0 * SQRT_2, 1e-6),
        Check::at_most("product_states_abs_s", product, 2.0 + 1e-8),
        Check::holds("sixteen_local_strategies", local.len() == 16),
        Check::at_most("local_strategies_abs_s", local_max, 2.0 + 1e-8),
    ])
}

fn no_signalling(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut worst = 0.0_f64;
    for k in 0..50 {
        let w = if k % 2 == 0 {
            random::density_operator(rng, 4)
        } else {
            random::pure_state(rng, 4).density()
        };
        let settings: Vec<_> = (0..5).map(|_| random::direction(rng)).collect();
        let b = random::direction(rng);
        let rep = no_signalling_check(&w, &settings, &b)?;
        worst = worst.max(rep.max_deviation).max(rep.max_marginal_deviation);
    }
    let w = singlet().density();
    let a = random::direction(rng);
    let dep = outcome_dependence(&w, &a, &a)?;
    Ok(vec![
        Check::at_most("max_s2_deviation", worst, 1e-9),
        Check::near("singlet_outcome_dependence", dep, 0.5, 1e-9),
    ])
}

fn non_degenerate(rng: &mut ChaCha8Rng, n: usize) -> Result<Observable> {
    Ok(Observable::new(
        random::non_degenerate_hermitian(rng, n),
        "A",
    )?)
}

fn luders_forms(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut forms = 0.0_f64;
    let mut idem = 0.0_f64;
    for k in 0..100 {
        let n = 2 + k % 3;
        let psi = random::pure_state(rng, n);
        let a = non_degenerate(rng, n)?;
        let w = psi.density();
        let eq3 = luders(&w, &a)?;
        let eq4 = DensityOperator::new(diagonal_form(psi.amplitudes(), &a)?)?;
        forms = forms.max(eq3.trace_distance(&eq4));
        idem = idem.max(luders(&eq3, &a)?.trace_distance(&eq3));
    }
    Ok(vec![
        Check::at_most("map_vs_diagonal_form", forms, 1e-12),
        Check::at_most("idempotence", idem, 1e-10),
    ])
}

fn equivalence(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut delta = 0.0_f64;
    let mut commuting = 0.0_f64;
    for k in 0..100 {
        let n = 2 + k % 3;
        let w = random::density_operator(rng, n);
        let u = random::unitary(rng, n);
        let spectrum = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..n).map(|_| rng.random_range(-3.0..3.0)).collect()
        };
        let a_mat = &(&u * &ComplexMatrix::real_diagonal(&spectrum(rng))) * &u.adjoint();
        let b_mat = &(&u * &ComplexMatrix::real_diagonal(&spectrum(rng))) * &u.adjoint();
        let a = Observable::new(hermitize(&a_mat), "A")?;
        let ctx = MeasurementContext::new(w, a)?;
        delta = delta.max(statistical_equivalence(&ctx).delta);
        commuting = commuting.max(expectation_deviation(&ctx, &hermitize(&b_mat))?);
    }
    let ctx = MeasurementContext::new(plus().density(), Observable::sigma_z())?;
    let witness = expectation_deviation(&ctx, &ComplexMatrix::pauli_x())?;
    Ok(vec![
        Check::at_most("max_delta", delta, 1e-9),
        Check::at_most("commuting_observable_deviation", commuting, 1e-8),
        Check::near("incompatible_witness", witness, 1.0, 1e-9),
    ])
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim(), |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5)
}

fn context_distance(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let d = contexts_distance(
        &plus().density(),
        &Observable::sigma_z(),
        &Observable::sigma_x(),
    )?;
    let mut shared = 0.0_f64;
    for k in 0..50 {
        let n = 2 + k % 3;
        let u = random::unitary(rng, n);
        let obs = |values: Vec<f64>| -> Result<Observable> {
            Ok(Observable::new(
                hermitize(&(&(&u * &ComplexMatrix::real_diagonal(&values)) * &u.adjoint())),
                "A",
            )?)
        };
        let a = obs((0..n).map(|i| i as f64).collect())?;
        let b = obs((0..n).map(|i| (n - i) as f64 * 1.5).collect())?;
        let w = random::density_operator(rng, n);
        shared = shared.max(contexts_distance(&w, &a, &b)?);
    }
    Ok(vec![
        Check::near("sigma_z_vs_sigma_x_on_plus", d, 0.5, 1e-9),
        Check::at_most("shared_eigenbasis", shared, 1e-12),
    ])
}

fn mermin_peres(_: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let p = mermin_peres_square();
    let worst = p
        .context_residuals()
        .iter()
        .copied()
        .fold(0.0_f64, f64::max);
    let full = search_noncontextual_assignment(&p)?;
    let minus = p
        .signs()
        .iter()
        .position(|&s| s == -1)
        .expect("square has a -1 context");
    let relaxed = search_noncontextual_assignment(&p.without_context(minus)?)?;
    Ok(vec![
        Check::holds("six_contexts", p.contexts().len() == 6),
        Check::at_most("operator_identities", worst, 1e-12),
        Check::holds("searched_512", full.assignments_searched == 512),
        Check::holds("no_satisfying_assignment", full.satisfying == 0),
        Check::holds("relaxed_satisfiable", relaxed.satisfying >= 1),
    ])
}

fn ghz(_: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let rep = ghz_contradiction();
    let mut checks: Vec<Check> = rep
        .relations
        .iter()
        .map(|e| Check::at_most(format!("eigen_relation_{}", e.label), e.residual, 1e-12))
        .collect();
    let expected = [1.0, -1.0, -1.0, -1.0];
    let worst = rep
        .relations
        .iter()
        .zip(expected)
        .map(|(e, x)| (e.eigenvalue - x).abs())
        .fold(0.0_f64, f64::max);
    checks.push(Check::holds("four_relations", rep.relations.len() == 4));
    checks.push(Check::at_most(
        "eigenvalues_plus_minus_minus_minus",
        worst,
        1e-12,
    ));
    checks.push(Check::holds("contradiction", rep.contradiction));
    Ok(checks)
}

fn total_spin(_: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let singlet_w = singlet().density();
    let e01 = PureState::basis(4, 1)?.density();
    let e10 = PureState::basis(4, 2)?.density();
    let mixture = DensityOperator::mixture(&[(0.5, &e01), (0.5, &e10)])?;
    let mut reduced = 0.0_f64;
    for keep in [Subsystem::First, Subsystem::Second] {
        let a = reduced_state(&singlet_w, (2, 2), keep)?;
        let b = reduced_state(&mixture, (2, 2), keep)?;
        reduced = reduced.max(a.trace_distance(&b));
    }
    Ok(vec![
        Check::near("singlet", total_spin_squared(&singlet_w)?, 0.0, 1e-12),
        Check::near("product_mixture", total_spin_squared(&mixture)?, 1.0, 1e-10),
        Check::at_most("reduced_states_identical", reduced, 1e-12),
    ])
}

fn dynamics(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let id = ComplexMatrix::identity(2);
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let h = &tensor(&random::hermitian(rng, 2), &id) + &tensor(&id, &random::hermitian(rng, 2));
        let psi = random::product_state(rng, 2, 2);
        let times: Vec<f64> = (1..=10).map(|k| 0.3 * k as f64).collect();
        for s in schmidt_trajectory(&h, &psi, (2, 2), &times)? {
            worst = worst.max(s.coefficients.get(1).copied().unwrap_or(0.0));
        }
    }
    let coupled = entangling_evolution_demo(1.0, &[0.5])?[0].coefficients[1];
    Ok(vec![
        Check::at_most("noninteracting_second_coefficient", worst, 1e-8),
        Check::holds("coupled_second_coefficient_above_0.01", coupled > 0.01),
    ])
}

fn tomography(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let m = mub_qubit();
    let mut exact = 0.0_f64;
    for _ in 0..100 {
        let w = random::density_operator(rng, 2);
        let rec = reconstruct(&measure_statistics(&w, &m, None)?, &m)?;
        exact = exact.max(w.trace_distance(&rec));
    }
    let mut sampled = 0.0_f64;
    for _ in 0..20 {
        let w = random::density_operator(rng, 2);
        let sampling = Sampling {
            shots: 100_000,
            seed: rng.random(),
        };
        let rec = reconstruct(&measure_statistics(&w, &m, Some(sampling))?, &m)?;
        sampled = sampled.max(w.trace_distance(&rec));
    }
    Ok(vec![
        Check::at_most("exact_round_trip", exact, 1e-9),
        Check::at_most("sampled_round_trip", sampled, 0.05),
    ])
}
