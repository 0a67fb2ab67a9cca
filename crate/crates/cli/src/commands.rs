//! One function per subcommand, each producing a [`Report`].

use anyhow::{bail, Context, Result};
use contextq_core::context::{
    boolean_lattice_check, check_representative, contexts_distance, expectation_deviation,
    luders_nonselective, sequential_luders, statistical_equivalence, MeasurementContext,
    Observable,
};
use contextq_core::contextuality::{
    ghz_contradiction, mermin_peres_square, search_noncontextual_assignment, value_dependence_demo,
    ValueAssignmentProblem,
};
use contextq_core::correlations::{
    chsh, conditional_remote_state, correlation_sweep, joint_probabilities, no_signalling_check,
    outcome_dependence, Direction,
};
use contextq_core::entanglement::{
    is_noninteracting, is_product, reduced_state, schmidt, schmidt_trajectory, total_spin_squared,
};
use contextq_core::matrix::Subsystem;
use contextq_core::mub::{measure_statistics, mub_prime, mub_qubit, reconstruct, MubSet, Sampling};
use contextq_core::{DensityOperator, PureState};
use serde_json::{json, Value};

use crate::cli::{Command, Common, DimsArgs, Side};
use crate::io::{
    parse_direction, parse_grid, parse_hamiltonian, parse_observable, parse_state, read_problem,
    read_statistics, resolve_dims, write_text, InputState, StatisticsJson,
};
use crate::report::{matrix_value, vector_value, Check, Report};
use crate::suite;

/// Seed used when sampling or sweeping without `--seed`.
pub const DEFAULT_SEED: u64 = 20_240_501;

const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

struct Ctx<'a> {
    common: &'a Common,
    report: Report,
}

impl Ctx<'_> {
    fn state(&mut self, default: &str) -> Result<InputState> {
        let spec = self.common.state.as_deref().unwrap_or(default);
        self.report.input("state", spec);
        parse_state(spec)
    }

    fn observable(&mut self, default: &str) -> Result<Observable> {
        let spec = self.common.observable.as_deref().unwrap_or(default);
        self.report.input("observable", spec);
        parse_observable(spec)
    }

    fn direction(&mut self, key: &str, spec: &str) -> Result<Direction> {
        self.report.input(key, spec);
        parse_direction(spec).with_context(|| format!("--{}", key.replace('_', "-")))
    }

    fn dims(&mut self, args: &DimsArgs, total: usize) -> Result<(usize, usize)> {
        let dims = resolve_dims(args.dims.as_deref(), total)?;
        self.report.input("dims", json!([dims.0, dims.1]));
        Ok(dims)
    }

    fn tol(&self) -> f64 {
        self.common.tol
    }
}

pub fn execute(command: &Command, common: &Common) -> Result<Report> {
    let name = subcommand_name(command);
    let mut ctx = Ctx {
        common,
        report: Report::new(name),
    };
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        bail!("--tol must be a positive finite number");
    }
    ctx.report.input("tol", common.tol);
    match command {
        Command::Schmidt(dims) => schmidt_cmd(&mut ctx, dims)?,
        Command::ProductCheck(dims) => product_check(&mut ctx, dims)?,
        Command::Reduced { dims, keep } => reduced(&mut ctx, dims, *keep)?,
        Command::TotalSpin => total_spin(&mut ctx)?,
        Command::Evolve {
            hamiltonian,
            times,
            dims,
        } => evolve(&mut ctx, hamiltonian, times, dims)?,
        Command::Luders => luders_cmd(&mut ctx)?,
        Command::Representative => representative(&mut ctx)?,
        Command::Equivalence { probe } => equivalence(&mut ctx, probe.as_deref())?,
        Command::ContextDistance { other } => context_distance(&mut ctx, other)?,
        Command::Sequential { measure } => sequential(&mut ctx, measure)?,
        Command::BooleanLattice { probe_state } => boolean_lattice(&mut ctx, probe_state)?,
        Command::Correlate { a, b, sweep } => correlate(&mut ctx, a, b, sweep.as_deref())?,
        Command::Chsh {
            a,
            a_prime,
            b,
            b_prime,
        } => chsh_cmd(&mut ctx, [a, a_prime, b, b_prime])?,
        Command::NoSignalling { settings, b } => no_signalling(&mut ctx, settings, b)?,
        Command::OutcomeDependence { a, b } => outcome_dependence_cmd(&mut ctx, a, b)?,
        Command::RemoteState { a, outcome } => remote_state(&mut ctx, a, *outcome)?,
        Command::KsSquare => ks_square(&mut ctx)?,
        Command::KsSearch { problem } => ks_search(&mut ctx, problem)?,
        Command::Ghz => ghz_cmd(&mut ctx)?,
        Command::ValueDependence { b, c } => value_dependence(&mut ctx, b, c)?,
        Command::MubTomography {
            shots,
            stats,
            stats_out,
            max_distance,
        } => mub_tomography(
            &mut ctx,
            *shots,
            stats.as_deref(),
            stats_out.as_deref(),
            *max_distance,
        )?,
        Command::Suite => {
            let seed = common.seed.unwrap_or(DEFAULT_SEED);
            ctx.report.seed = Some(seed);
            suite::run(&mut ctx.report, seed)?;
        }
    }
    Ok(ctx.report)
}

pub fn subcommand_name(command: &Command) -> &'static str {
    match command {
        Command::Schmidt(_) => "schmidt",
        Command::ProductCheck(_) => "product-check",
        Command::Reduced { .. } => "reduced",
        Command::TotalSpin => "total-spin",
        Command::Evolve { .. } => "evolve",
        Command::Luders => "luders",
        Command::Representative => "representative",
        Command::Equivalence { .. } => "equivalence",
        Command::ContextDistance { .. } => "context-distance",
        Command::Sequential { .. } => "sequential",
        Command::BooleanLattice { .. } => "boolean-lattice",
        Command::Correlate { .. } => "correlate",
        Command::Chsh { .. } => "chsh",
        Command::NoSignalling { .. } => "no-signalling",
        Command::OutcomeDependence { .. } => "outcome-dependence",
        Command::RemoteState { .. } => "remote-state",
        Command::KsSquare => "ks-square",
        Command::KsSearch { .. } => "ks-search",
        Command::Ghz => "ghz",
        Command::ValueDependence { .. } => "value-dependence",
        Command::MubTomography { .. } => "mub-tomography",
        Command::Suite => "suite",
    }
}

fn vectors_value(vs: &[Vec<contextq_core::C64>]) -> Value {
    Value::Array(vs.iter().map(|v| vector_value(v)).collect())
}

fn schmidt_cmd(ctx: &mut Ctx, dims: &DimsArgs) -> Result<()> {
    let psi = ctx.state("singlet")?.pure()?;
    let dims = ctx.dims(dims, psi.dim())?;
    let sd = schmidt(&psi, dims)?;
    let norm: f64 = sd.coefficients.iter().map(|c| c * c).sum();
    let rebuilt = sd.reconstruct();
    let err = rebuilt
        .iter()
        .zip(psi.amplitudes())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let r = &mut ctx.report;
    r.result("coefficients", sd.coefficients.clone())
        .result("rank", sd.rank())
        .result("left_basis", vectors_value(&sd.left_basis))
        .result("right_basis", vectors_value(&sd.right_basis));
    r.check(Check::near(
        "coefficients_normalized",
        norm,
        1.0,
        ctx.common.tol,
    ))
    .check(Check::at_most("reconstruction_error", err, ctx.common.tol));
    Ok(())
}

fn product_check(ctx: &mut Ctx, dims: &DimsArgs) -> Result<()> {
    let psi = ctx.state("singlet")?.pure()?;
    let dims = ctx.dims(dims, psi.dim())?;
    let pc = is_product(&psi, dims)?;
    let r = &mut ctx.report;
    r.result("is_product", pc.is_product)
        .result("schmidt_rank", pc.schmidt_rank);
    if let Some((a, b)) = &pc.factors {
        r.result(
            "factors",
            json!([vector_value(a.amplitudes()), vector_value(b.amplitudes())]),
        );
        let rebuilt = a.tensor(b);
        let err = rebuilt
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        r.check(Check::at_most(
            "factor_reconstruction_error",
            err,
            ctx.common.tol,
        ));
    }
    Ok(())
}

fn reduced(ctx: &mut Ctx, dims: &DimsArgs, keep: Side) -> Result<()> {
    let w = ctx.state("singlet")?.density();
    let dims = ctx.dims(dims, w.dim())?;
    let (keep, name) = match keep {
        Side::First => (Subsystem::First, "first"),
        Side::Second => (Subsystem::Second, "second"),
    };
    ctx.report.input("keep", name);
    let rho = reduced_state(&w, dims, keep)?;
    let trace = rho.matrix().trace().re;
    let r = &mut ctx.report;
    r.result("reduced_state", matrix_value(rho.matrix()))
        .result("eigenvalues", rho.eigenvalues())
        .result("purity", rho.purity());
    r.check(Check::near("unit_trace", trace, 1.0, ctx.common.tol));
    Ok(())
}

fn total_spin(ctx: &mut Ctx) -> Result<()> {
    let w = ctx.state("singlet")?.density();
    let s2 = total_spin_squared(&w)?;
    ctx.report.result("total_spin_squared", s2);
    Ok(())
}

fn evolve(ctx: &mut Ctx, hamiltonian: &str, times: &str, dims: &DimsArgs) -> Result<()> {
    let psi = ctx.state("product:0,0")?.pure()?;
    ctx.report
        .input("hamiltonian", hamiltonian)
        .input("times", times);
    let h = parse_hamiltonian(hamiltonian)?;
    if h.dim() != psi.dim() {
        bail!(
            "Hamiltonian dimension {} does not match state dimension {}",
            h.dim(),
            psi.dim()
        );
    }
    let times = parse_grid(times).context("--times")?;
    let dims = ctx.dims(dims, psi.dim())?;
    let interaction = is_noninteracting(&h, dims)?;
    let initial_rank = schmidt(&psi, dims)?.rank();
    let samples = schmidt_trajectory(&h, &psi, dims, &times)?;
    let rows: Vec<Value> = samples
        .iter()
        .map(|s| json!({"t": s.t, "coefficients": s.coefficients, "rank": s.rank}))
        .collect();
    let max_second = samples
        .iter()
        .map(|s| s.coefficients.get(1).copied().unwrap_or(0.0))
        .fold(0.0_f64, f64::max);
    if let Some(path) = &ctx.common.csv {
        let width = dims.0.min(dims.1);
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["t".to_string(), "rank".to_string()];
        header.extend((1..=width).map(|k| format!("schmidt_{k}")));
        w.write_record(&header)?;
        for s in &samples {
            let mut row = vec![fmt12(s.t), s.rank.to_string()];
            row.extend((0..width).map(|k| fmt12(s.coefficients.get(k).copied().unwrap_or(0.0))));
            w.write_record(&row)?;
        }
        write_text(path, &String::from_utf8(w.into_inner()?)?)?;
    }
    let r = &mut ctx.report;
    r.result("noninteracting", interaction.is_noninteracting)
        .result("interaction_residual", interaction.residual)
        .result("initial_schmidt_rank", initial_rank)
        .result("max_second_coefficient", max_second)
        .result("samples", rows);
    if interaction.is_noninteracting && initial_rank == 1 {
        r.check(Check::at_most("product_preserved", max_second, 1e-8));
    }
    Ok(())
}

fn context(ctx: &mut Ctx) -> Result<MeasurementContext> {
    let w = ctx.state("plus")?.density();
    let a = ctx.observable("sigma_z")?;
    Ok(MeasurementContext::new(w, a)?)
}

fn luders_cmd(ctx: &mut Ctx) -> Result<()> {
    let mc = context(ctx)?;
    let cs = luders_nonselective(&mc);
    let eq = statistical_equivalence(&mc);
    let probs: Vec<Value> = cs
        .outcome_probabilities
        .iter()
        .map(|(a, p)| json!({"eigenvalue": a, "probability": p}))
        .collect();
    let tol = ctx.tol();
    let r = &mut ctx.report;
    r.result("w_a", matrix_value(cs.state.matrix()))
        .result("outcome_probabilities", probs)
        .result("tr_wa", eq.tr_wa)
        .result("tr_wa_a", eq.tr_wa_a)
        .result("delta", eq.delta);
    r.check(Check::at_most("equivalence_delta", eq.delta, tol))
        .check(Check::near(
            "unit_trace",
            cs.state.matrix().trace().re,
            1.0,
            tol,
        ));
    Ok(())
}

fn representative(ctx: &mut Ctx) -> Result<()> {
    let mc = context(ctx)?;
    let cs = luders_nonselective(&mc);
    let rep = check_representative(&cs)?;
    let tol = ctx.tol();
    let r = &mut ctx.report;
    r.result("eigenvectors", rep.eigenvectors)
        .result("mutually_exclusive", rep.mutually_exclusive)
        .result("non_orthogonal", rep.non_orthogonal)
        .result("support", rep.support.clone())
        .result("excluded", rep.excluded.clone())
        .result("amplitudes", rep.amplitudes.clone())
        .result("diagonal_form_distance", rep.diagonal_form_distance)
        .result("w_a", matrix_value(cs.state.matrix()));
    r.check(Check::holds("eigenvectors", rep.eigenvectors))
        .check(Check::holds("mutually_exclusive", rep.mutually_exclusive))
        .check(Check::holds("non_orthogonal", rep.non_orthogonal))
        .check(Check::at_most(
            "diagonal_form_distance",
            rep.diagonal_form_distance,
            tol,
        ));
    Ok(())
}

fn equivalence(ctx: &mut Ctx, probe: Option<&str>) -> Result<()> {
    let mc = context(ctx)?;
    let eq = statistical_equivalence(&mc);
    let tol = ctx.tol();
    ctx.report
        .result("tr_wa", eq.tr_wa)
        .result("tr_wa_a", eq.tr_wa_a)
        .result("delta", eq.delta)
        .check(Check::at_most("equivalence_delta", eq.delta, tol));
    if let Some(spec) = probe {
        ctx.report.input("probe", spec);
        let b = parse_observable(spec).context("--probe")?;
        let deviation = expectation_deviation(&mc, b.matrix())?;
        let commutes = mc
            .observable()
            .commutes_with(&b, contextq_core::tol::OPERATOR_IDENTITY)?;
        ctx.report
            .result("probe_deviation", deviation)
            .result("probe_commutes", commutes);
        if commutes {
            ctx.report
                .check(Check::at_most("commuting_probe_deviation", deviation, 1e-8));
        }
    }
    Ok(())
}

fn context_distance(ctx: &mut Ctx, other: &str) -> Result<()> {
    let w = ctx.state("plus")?.density();
    let a = ctx.observable("sigma_z")?;
    ctx.report.input("other", other);
    let b = parse_observable(other).context("--other")?;
    let d = contexts_distance(&w, &a, &b)?;
    ctx.report
        .result("distance", d)
        .result("commutator_norm", a.commutator_norm(&b)?);
    Ok(())
}

fn sequential(ctx: &mut Ctx, measure: &[String]) -> Result<()> {
    let w = ctx.state("plus")?.density();
    ctx.report.input("measure", measure.to_vec());
    let seq = measure
        .iter()
        .map(|s| parse_observable(s).with_context(|| format!("--measure {s}")))
        .collect::<Result<Vec<_>>>()?;
    let out = sequential_luders(&w, &seq)?;
    let last = seq.last().expect("clap requires at least one --measure");
    let probs = last.probabilities(&out)?;
    let tol = ctx.tol();
    let r = &mut ctx.report;
    r.result("final_state", matrix_value(out.matrix()))
        .result("purity", out.purity())
        .result("final_outcome_probabilities", probs);
    r.check(Check::near("unit_trace", out.matrix().trace().re, 1.0, tol));
    Ok(())
}

fn boolean_lattice(ctx: &mut Ctx, probe_states: &[String]) -> Result<()> {
    let a = ctx.observable("sigma_z")?;
    let mut states = vec![ctx.state("plus")?.density()];
    ctx.report.input("probe_states", probe_states.to_vec());
    for s in probe_states {
        states.push(
            parse_state(s)
                .with_context(|| format!("--probe-state {s}"))?
                .density(),
        );
    }
    let rep = boolean_lattice_check(&a, &states)?;
    let r = &mut ctx.report;
    r.result("atoms", rep.atoms)
        .result("elements", rep.elements)
        .result("pairwise_orthogonal", rep.pairwise_orthogonal)
        .result("resolves_identity", rep.resolves_identity)
        .result("closed_under_meet", rep.closed_under_meet)
        .result("closed_under_join", rep.closed_under_join)
        .result("closed_under_complement", rep.closed_under_complement)
        .result("kolmogorov", rep.kolmogorov)
        .result("max_probability_sum_error", rep.max_probability_sum_error);
    r.check(Check::holds("boolean_algebra", rep.is_boolean()));
    Ok(())
}

fn joint_value(j: &[[f64; 2]; 2]) -> Value {
    json!({"pp": j[0][0], "pm": j[0][1], "mp": j[1][0], "mm": j[1][1]})
}

fn correlate(ctx: &mut Ctx, a: &str, b: &str, sweep: Option<&str>) -> Result<()> {
    let w = ctx.state("singlet")?.density();
    let da = ctx.direction("a", a)?;
    let db = ctx.direction("b", b)?;
    let rec = joint_probabilities(&w, &da, &db)?;
    let total: f64 = rec.joint.iter().flatten().sum();
    let tol = ctx.tol();
    ctx.report
        .result("expectation", rec.expectation)
        .result("joint", joint_value(&rec.joint))
        .result("marginal_a", rec.marginal_a.to_vec())
        .result("marginal_b", rec.marginal_b.to_vec())
        .check(Check::near("probabilities_sum_to_one", total, 1.0, tol));
    let grid = match (sweep, &ctx.common.csv) {
        (Some(s), _) => Some(s.to_string()),
        (None, Some(_)) => Some("0:180:15".to_string()),
        (None, None) => None,
    };
    if let Some(grid) = grid {
        ctx.report.input("sweep", grid.as_str());
        let thetas = parse_grid(&grid).context("--sweep")?;
        let rows = correlation_sweep(&w, &thetas)?;
        if let Some(path) = &ctx.common.csv {
            let mut out = csv::Writer::from_writer(Vec::new());
            out.write_record(["theta_degrees", "E", "p_pp", "p_pm", "p_mp", "p_mm"])?;
            for row in &rows {
                out.write_record(
                    [
                        row.theta_degrees,
                        row.expectation,
                        row.p_pp,
                        row.p_pm,
                        row.p_mp,
                        row.p_mm,
                    ]
                    .map(fmt12),
                )?;
            }
            write_text(path, &String::from_utf8(out.into_inner()?)?)?;
        }
        let table: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({"theta_degrees": r.theta_degrees, "E": r.expectation,
                       "p_pp": r.p_pp, "p_pm": r.p_pm, "p_mp": r.p_mp, "p_mm": r.p_mm})
            })
            .collect();
        ctx.report.result("sweep", table);
    }
    Ok(())
}

/// CSV cell with 12 significant digits.
fn fmt12(x: f64) -> String {
    crate::report::round12(x).to_string()
}

fn chsh_cmd(ctx: &mut Ctx, specs: [&String; 4]) -> Result<()> {
    let w = ctx.state("singlet")?.density();
    let keys = ["a", "a_prime", "b", "b_prime"];
    let mut d = Vec::with_capacity(4);
    for (key, spec) in keys.iter().zip(specs) {
        d.push(ctx.direction(key, spec)?);
    }
    let s = chsh(&w, &d[0], &d[1], &d[2], &d[3])?;
    let tol = ctx.tol();
    let r = &mut ctx.report;
    r.result("s", s)
        .result("abs_s", s.abs())
        .result("classical_bound", 2.0)
        .result("tsirelson_bound", TSIRELSON)
        .result("violates_classical_bound", s.abs() > 2.0 + 1e-8);
    r.check(Check::at_most("tsirelson_bound", s.abs() - TSIRELSON, tol));
    Ok(())
}

fn no_signalling(ctx: &mut Ctx, settings: &[String], b: &str) -> Result<()> {
    let w = ctx.state("singlet")?.density();
    let defaults = ["z", "x", "y", "theta:45"].map(String::from);
    let specs: &[String] = if settings.is_empty() {
        &defaults
    } else {
        settings
    };
    ctx.report.input("settings", specs.to_vec());
    let dirs = specs
        .iter()
        .map(|s| parse_direction(s).with_context(|| format!("--setting {s}")))
        .collect::<Result<Vec<_>>>()?;
    let db = ctx.direction("b", b)?;
    let rep = no_signalling_check(&w, &dirs, &db)?;
    let tol = ctx.tol();
    let r = &mut ctx.report;
    r.result("max_deviation", rep.max_deviation)
        .result("max_marginal_deviation", rep.max_marginal_deviation)
        .result(
            "marginals",
            rep.marginals.iter().map(|m| m.to_vec()).collect::<Vec<_>>(),
        );
    r.check(Check::at_most(
        "reduced_state_deviation",
        rep.max_deviation,
        tol,
    ))
    .check(Check::at_most(
        "marginal_deviation",
        rep.max_marginal_deviation,
        tol,
    ));
    Ok(())
}

fn outcome_dependence_cmd(ctx: &mut Ctx, a: &str, b: &str) -> Result<()> {
    let w = ctx.state("singlet")?.density();
    let da = ctx.direction("a", a)?;
    let db = ctx.direction("b", b)?;
    let d = outcome_dependence(&w, &da, &db)?;
    ctx.report.result("outcome_dependence", d);
    Ok(())
}

fn remote_state(ctx: &mut Ctx, a: &str, outcome: i32) -> Result<()> {
    let psi = ctx.state("singlet")?.pure()?;
    let da = ctx.direction("a", a)?;
    ctx.report.input("outcome", outcome);
    let rs = conditional_remote_state(&psi, &da, outcome)?;
    let w = rs.state.density();
    let bloch = ["x", "y", "z"].map(|k| {
        w.expectation(
            &contextq_core::matrix::pauli_string(&k.to_uppercase()).expect("single Pauli"),
        )
    });
    ctx.report
        .result("probability", rs.probability)
        .result("remote_state", vector_value(rs.state.amplitudes()))
        .result("remote_bloch_vector", bloch.to_vec());
    Ok(())
}

fn search_report(r: &mut Report, p: &ValueAssignmentProblem, tol: f64) -> Result<u64> {
    let out = search_noncontextual_assignment(p)?;
    let worst = p
        .context_residuals()
        .iter()
        .copied()
        .fold(0.0_f64, f64::max);
    r.result("observables", p.labels().to_vec())
        .result("contexts", p.contexts().to_vec())
        .result("signs", p.signs().to_vec())
        .result("max_identity_residual", worst)
        .result("assignments_searched", out.assignments_searched)
        .result("satisfying", out.satisfying)
        .result("first_satisfying", out.first.clone());
    r.check(Check::at_most("operator_identities", worst, tol));
    Ok(out.satisfying)
}

fn ks_square(ctx: &mut Ctx) -> Result<()> {
    let p = mermin_peres_square();
    let tol = ctx.tol();
    let satisfying = search_report(&mut ctx.report, &p, tol)?;
    let minus = p
        .signs()
        .iter()
        .position(|&s| s == -1)
        .expect("square has a -1 context");
    let relaxed = search_noncontextual_assignment(&p.without_context(minus)?)?;
    ctx.report
        .result("relaxed_satisfying", relaxed.satisfying)
        .check(Check::holds("no_noncontextual_assignment", satisfying == 0))
        .check(Check::holds(
            "relaxed_problem_satisfiable",
            relaxed.satisfying >= 1,
        ));
    Ok(())
}

fn ks_search(ctx: &mut Ctx, path: &str) -> Result<()> {
    ctx.report.input("problem", path);
    let p = read_problem(path)?;
    let tol = ctx.tol();
    search_report(&mut ctx.report, &p, tol)?;
    Ok(())
}

fn ghz_cmd(ctx: &mut Ctx) -> Result<()> {
    let rep = ghz_contradiction();
    let tol = ctx.tol();
    let relations: Vec<Value> = rep
        .relations
        .iter()
        .map(|e| json!({"observable": e.label, "eigenvalue": e.eigenvalue, "residual": e.residual}))
        .collect();
    let r = &mut ctx.report;
    r.result("relations", relations)
        .result("constraint_product", rep.constraint_product)
        .result("forced_product", rep.forced_product)
        .result("contradiction", rep.contradiction)
        .result("assignments_searched", rep.assignments_searched)
        .result("satisfying", rep.satisfying_assignments);
    for e in &rep.relations {
        r.check(Check::at_most(
            format!("eigen_relation_{}", e.label),
            e.residual,
            tol,
        ));
    }
    r.check(Check::holds("contradiction", rep.contradiction));
    Ok(())
}

fn value_dependence(ctx: &mut Ctx, b: &str, c: &str) -> Result<()> {
    let w = match ctx.common.state.as_deref() {
        Some(_) => ctx.state("")?.density(),
        None => {
            ctx.report.input("state", "(|00> + |01> + |10>)/sqrt(3)");
            PureState::from_real(&[1.0, 1.0, 1.0, 0.0].map(|x| x / 3f64.sqrt()))?.density()
        }
    };
    let a = ctx.observable("pauli:ZZ")?;
    ctx.report.input("b", b).input("c", c);
    let ob = parse_observable(b).context("--b")?;
    let oc = parse_observable(c).context("--c")?;
    let rep = value_dependence_demo(&w, &a, &ob, &oc)?;
    ctx.report
        .result("direct", rep.direct.clone())
        .result("after_b", rep.after_b.clone())
        .result("after_c", rep.after_c.clone())
        .result(
            "max_distribution_difference",
            rep.max_distribution_difference,
        )
        .result("distributions_differ", rep.distributions_differ)
        .result("preparation_distance", rep.preparation_distance)
        .result("bc_commutator", rep.bc_commutator);
    Ok(())
}

fn mub_for(dim: usize) -> Result<MubSet> {
    if dim == 2 {
        Ok(mub_qubit())
    } else {
        mub_prime(dim).with_context(|| {
            format!("no MUB construction for dimension {dim}: use 2 or an odd prime")
        })
    }
}

fn mub_tomography(
    ctx: &mut Ctx,
    shots: Option<u64>,
    stats_path: Option<&str>,
    stats_out: Option<&str>,
    max_distance: Option<f64>,
) -> Result<()> {
    let (stats, truth) = if let Some(path) = stats_path {
        ctx.report.input("stats", path);
        if ctx.common.state.is_some() {
            bail!("--stats and --state are mutually exclusive");
        }
        (read_statistics(path)?, None)
    } else {
        let w: DensityOperator = ctx.state("plus")?.density();
        let m = mub_for(w.dim())?;
        let sampling = shots.map(|shots| Sampling {
            shots,
            seed: ctx.common.seed.unwrap_or(DEFAULT_SEED),
        });
        if let Some(s) = sampling {
            ctx.report.input("shots", s.shots);
            ctx.report.seed = Some(s.seed);
        }
        (measure_statistics(&w, &m, sampling)?, Some(w))
    };
    let m = mub_for(stats.dim)?;
    let rec = reconstruct(&stats, &m)?;
    if let Some(path) = stats_out {
        let text = serde_json::to_string_pretty(&StatisticsJson::from(&stats))? + "\n";
        write_text(path, &text)?;
    }
    let r = &mut ctx.report;
    r.result("tables", stats.tables.clone())
        .result("samples", stats.samples)
        .result("reconstructed", matrix_value(rec.matrix()))
        .result("reconstructed_eigenvalues", rec.eigenvalues());
    if let Some(w) = truth {
        let d = w.trace_distance(&rec);
        let limit = max_distance.unwrap_or(if stats.samples.is_some() {
            0.05
        } else {
            ctx.common.tol
        });
        r.result("trace_distance", d);
        r.check(Check::at_most("reconstruction_distance", d, limit));
    }
    Ok(())
}
