//! File formats and named constructors accepted on the command line.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use contextq_core::context::Observable;
use contextq_core::contextuality::ValueAssignmentProblem;
use contextq_core::correlations::{spin_observable, Direction};
use contextq_core::entanglement::coupled_spin_hamiltonian;
use contextq_core::matrix::pauli_string;
use contextq_core::mub::ProbabilityTables;
use contextq_core::state::{ghz, minus, plus, singlet};
use contextq_core::{ComplexMatrix, DensityOperator, PureState, C64};
use serde::{Deserialize, Serialize};

/// `{"dim": n, "re": [...], "im": [...]}`, row-major for matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            re: m.entries().iter().map(|z| z.re).collect(),
            im: m.entries().iter().map(|z| z.im).collect(),
        }
    }

    pub fn from_vector(v: &[C64]) -> Self {
        Self {
            dim: v.len(),
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        Ok(ComplexMatrix::from_parts(self.dim, &self.re, &self.im)?)
    }
}

/// Observable file: matrix fields plus a label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObservableJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default)]
    pub label: Option<String>,
}

/// User-supplied value-assignment problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemJson {
    pub observables: Vec<MatrixJson>,
    pub labels: Vec<String>,
    pub contexts: Vec<Vec<usize>>,
    pub signs: Vec<i8>,
}

/// Measurement statistics: one probability table per basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatisticsJson {
    pub dim: usize,
    pub tables: Vec<Vec<f64>>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

impl From<&ProbabilityTables> for StatisticsJson {
    fn from(t: &ProbabilityTables) -> Self {
        Self {
            dim: t.dim,
            tables: t.tables.clone(),
            samples: t.samples,
            seed: t.seed,
        }
    }
}

impl From<StatisticsJson> for ProbabilityTables {
    fn from(s: StatisticsJson) -> Self {
        ProbabilityTables {
            dim: s.dim,
            tables: s.tables,
            samples: s.samples,
            seed: s.seed,
        }
    }
}

/// A state given either as a vector or as a density operator.
#[derive(Debug, Clone)]
pub enum InputState {
    Pure(PureState),
    Mixed(DensityOperator),
}

impl InputState {
    pub fn dim(&self) -> usize {
        match self {
            InputState::Pure(p) => p.dim(),
            InputState::Mixed(w) => w.dim(),
        }
    }

    pub fn density(&self) -> DensityOperator {
        match self {
            InputState::Pure(p) => p.density(),
            InputState::Mixed(w) => w.clone(),
        }
    }

    /// The state vector, recovered from a rank-one density operator if needed.
    pub fn pure(&self) -> Result<PureState> {
        match self {
            InputState::Pure(p) => Ok(p.clone()),
            InputState::Mixed(w) => w.pure_vector(1e-9).ok_or_else(|| {
                anyhow!(
                    "a pure state is required, got a mixed state (purity {:.6})",
                    w.purity()
                )
            }),
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {path}"))
}

fn looks_like_file(spec: &str) -> bool {
    spec.ends_with(".json") || spec.contains('/') || Path::new(spec).is_file()
}

fn parse_floats(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("expected a number, got {t:?}"))
        })
        .collect()
}

fn basis_state(dim: usize, k: usize) -> Result<PureState> {
    Ok(PureState::basis(dim, k)?)
}

/// Named states: `singlet`, `ghz`, `plus`, `minus`, `zero`, `one`,
/// `product:<i>,<j>` (two-qubit basis state), `singlet-mixture` (equal
/// mixture of |01⟩ and |10⟩), `mixed:<d>` (I/d); anything else is a file.
pub fn parse_state(spec: &str) -> Result<InputState> {
    let named = match spec {
        "singlet" => Some(InputState::Pure(singlet())),
        "ghz" => Some(InputState::Pure(ghz())),
        "plus" => Some(InputState::Pure(plus())),
        "minus" => Some(InputState::Pure(minus())),
        "zero" => Some(InputState::Pure(basis_state(2, 0)?)),
        "one" => Some(InputState::Pure(basis_state(2, 1)?)),
        "singlet-mixture" => {
            let a = basis_state(4, 1)?.density();
            let b = basis_state(4, 2)?.density();
            Some(InputState::Mixed(DensityOperator::mixture(&[
                (0.5, &a),
                (0.5, &b),
            ])?))
        }
        _ => None,
    };
    if let Some(state) = named {
        return Ok(state);
    }
    if let Some(rest) = spec.strip_prefix("product:") {
        let bits: Vec<usize> = rest
            .split(',')
            .map(|t| match t.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(anyhow!("product:<i>,<j> takes bits 0 or 1, got {other:?}")),
            })
            .collect::<Result<_>>()?;
        if bits.len() != 2 {
            bail!("product:<i>,<j> takes exactly two bits");
        }
        return Ok(InputState::Pure(basis_state(4, 2 * bits[0] + bits[1])?));
    }
    if let Some(rest) = spec.strip_prefix("mixed:") {
        let d: usize = rest
            .parse()
            .map_err(|_| anyhow!("mixed:<d> needs an integer dimension"))?;
        if d == 0 || d > contextq_core::tol::MAX_DIM {
            bail!("mixed:<d> needs 1 <= d <= {}", contextq_core::tol::MAX_DIM);
        }
        return Ok(InputState::Mixed(DensityOperator::maximally_mixed(d)));
    }
    if !looks_like_file(spec) {
        bail!("unknown state {spec:?}: expected singlet, ghz, plus, minus, zero, one, product:<i>,<j>, singlet-mixture, mixed:<d> or a JSON file");
    }
    let m: MatrixJson = read_json(spec)?;
    state_from_json(&m).with_context(|| format!("invalid state in {spec}"))
}

/// Vector of length `dim` for a pure state, `dim²` entries for a density operator.
pub fn state_from_json(m: &MatrixJson) -> Result<InputState> {
    if m.re.len() != m.im.len() {
        bail!("re has {} entries but im has {}", m.re.len(), m.im.len());
    }
    if m.re.len() == m.dim {
        let amps =
            m.re.iter()
                .zip(&m.im)
                .map(|(&r, &i)| C64::new(r, i))
                .collect();
        Ok(InputState::Pure(PureState::new(amps)?))
    } else if m.re.len() == m.dim * m.dim {
        Ok(InputState::Mixed(DensityOperator::new(m.to_matrix()?)?))
    } else {
        bail!(
            "expected {} (vector) or {} (matrix) entries, got {}",
            m.dim,
            m.dim * m.dim,
            m.re.len()
        )
    }
}

/// Named observables: `sigma_x|y|z`, `spin:<ax>,<ay>,<az>` (σ·n),
/// `pauli:<IXYZ...>`; anything else is a file.
pub fn parse_observable(spec: &str) -> Result<Observable> {
    match spec {
        "sigma_x" => return Ok(Observable::sigma_x()),
        "sigma_y" => return Ok(Observable::sigma_y()),
        "sigma_z" => return Ok(Observable::sigma_z()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("spin:") {
        return Ok(spin_observable(&parse_direction(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("pauli:") {
        return Observable::pauli(rest).ok_or_else(|| {
            anyhow!("pauli:<word> takes letters I, X, Y, Z (up to 6), got {rest:?}")
        });
    }
    if !looks_like_file(spec) {
        bail!("unknown observable {spec:?}: expected sigma_x, sigma_y, sigma_z, spin:<ax>,<ay>,<az>, pauli:<word> or a JSON file");
    }
    let o: ObservableJson = read_json(spec)?;
    let m = ComplexMatrix::from_parts(o.dim, &o.re, &o.im)
        .with_context(|| format!("invalid observable in {spec}"))?;
    let label = o.label.unwrap_or_else(|| spec.to_string());
    Observable::new(m, label).with_context(|| format!("invalid observable in {spec}"))
}

/// Hermitian generator: `coupled:<g>` for σz⊗I + I⊗σz + g σx⊗σx,
/// `pauli:<word>`, or a matrix file.
pub fn parse_hamiltonian(spec: &str) -> Result<ComplexMatrix> {
    if let Some(rest) = spec.strip_prefix("coupled:") {
        let g: f64 = rest
            .parse()
            .map_err(|_| anyhow!("coupled:<g> needs a number, got {rest:?}"))?;
        return Ok(coupled_spin_hamiltonian(g));
    }
    if let Some(rest) = spec.strip_prefix("pauli:") {
        return pauli_string(rest).ok_or_else(|| {
            anyhow!("pauli:<word> takes letters I, X, Y, Z (up to 6), got {rest:?}")
        });
    }
    if !looks_like_file(spec) {
        bail!("unknown Hamiltonian {spec:?}: expected coupled:<g>, pauli:<word> or a JSON file");
    }
    let m: MatrixJson = read_json(spec)?;
    let h = m
        .to_matrix()
        .with_context(|| format!("invalid matrix in {spec}"))?;
    h.ensure_hermitian()
        .with_context(|| format!("invalid Hamiltonian in {spec}"))?;
    Ok(h)
}

/// `x`, `y`, `z` (optionally negated), `theta:<degrees>` in the x-z plane
/// measured from +z toward +x, or three comma-separated components.
pub fn parse_direction(spec: &str) -> Result<Direction> {
    let (negate, body) = match spec.strip_prefix('-') {
        Some(rest) if matches!(rest, "x" | "y" | "z") => (true, rest),
        _ => (false, spec),
    };
    let d = match body {
        "x" => Direction::x(),
        "y" => Direction::y(),
        "z" => Direction::z(),
        _ => {
            if let Some(rest) = body.strip_prefix("theta:") {
                let deg: f64 = rest
                    .parse()
                    .map_err(|_| anyhow!("theta:<degrees> needs a number, got {rest:?}"))?;
                Direction::in_xz_plane(deg.to_radians())
            } else {
                let v = parse_floats(body).with_context(|| {
                    format!("invalid direction {spec:?}: expected x, y, z, theta:<deg> or ax,ay,az")
                })?;
                let [x, y, z] = v[..] else {
                    bail!("direction {spec:?} needs three components");
                };
                Direction::normalized([x, y, z])?
            }
        }
    };
    Ok(if negate { d.flipped() } else { d })
}

/// `d1,d2`.
pub fn parse_dims(spec: &str) -> Result<(usize, usize)> {
    let parts: Vec<usize> = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("dims take positive integers, got {t:?}"))
        })
        .collect::<Result<_>>()?;
    match parts[..] {
        [a, b] if a > 0 && b > 0 => Ok((a, b)),
        _ => bail!("--dims takes two positive integers d1,d2"),
    }
}

/// Explicit dims, or `(n, n)` when the total dimension is a perfect square.
pub fn resolve_dims(dims: Option<&str>, total: usize) -> Result<(usize, usize)> {
    let (d1, d2) = match dims {
        Some(s) => parse_dims(s)?,
        None => {
            let n = (1..=total).find(|n| n * n >= total).unwrap_or(1);
            if n * n != total {
                bail!("dimension {total} is not a perfect square; pass --dims d1,d2");
            }
            (n, n)
        }
    };
    if d1 * d2 != total {
        bail!("--dims {d1},{d2} does not match state dimension {total}");
    }
    Ok((d1, d2))
}

/// Comma-separated list, or `start:stop:step` inclusive of `stop`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let v = parts
            .iter()
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| anyhow!("grid {spec:?} takes numbers"))
            })
            .collect::<Result<Vec<_>>>()?;
        let (start, stop, step) = (v[0], v[1], v[2]);
        if step.is_nan() || step <= 0.0 || stop < start {
            bail!("grid {spec:?} needs step > 0 and stop >= start");
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > 100_000 {
            bail!("grid {spec:?} has too many points");
        }
        return Ok((0..count).map(|k| start + step * k as f64).collect());
    }
    parse_floats(spec)
}

pub fn read_problem(path: &str) -> Result<ValueAssignmentProblem> {
    let p: ProblemJson = read_json(path)?;
    let observables = p
        .observables
        .iter()
        .enumerate()
        .map(|(k, m)| {
            m.to_matrix()
                .with_context(|| format!("observable {k} in {path}"))
        })
        .collect::<Result<Vec<_>>>()?;
    ValueAssignmentProblem::new(observables, p.labels, p.contexts, p.signs)
        .with_context(|| format!("invalid problem in {path}"))
}

pub fn read_statistics(path: &str) -> Result<ProbabilityTables> {
    let s: StatisticsJson = read_json(path)?;
    Ok(s.into())
}

pub fn write_text(path: &str, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {path}"))
}
