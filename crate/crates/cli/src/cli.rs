//! Argument definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "contextq",
    version,
    about = "Entanglement, measurement-context and contextuality demonstrations with JSON reports"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// State: named constructor or JSON file (vector or density matrix).
    #[arg(long, global = true)]
    pub state: Option<String>,
    /// Observable: sigma_x|y|z, spin:<ax>,<ay>,<az>, pauli:<word> or JSON file.
    #[arg(long, global = true)]
    pub observable: Option<String>,
    /// Tolerance applied by the subcommand's checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for randomized sweeps and sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Write tabular output as CSV to this path.
    #[arg(long, global = true)]
    pub csv: Option<String>,
    /// Record wall-clock duration in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schmidt coefficients and bases of a bipartite pure state.
    Schmidt(DimsArgs),
    /// Whether a bipartite pure state factorizes.
    ProductCheck(DimsArgs),
    /// Reduced state of one subsystem.
    Reduced {
        #[command(flatten)]
        dims: DimsArgs,
        #[arg(long, value_enum, default_value_t = Side::First)]
        keep: Side,
    },
    /// Expectation of the total spin squared for a two-qubit state.
    TotalSpin,
    /// Schmidt spectrum along unitary evolution.
    Evolve {
        /// coupled:<g>, pauli:<word> or matrix JSON file.
        #[arg(long, default_value = "coupled:1")]
        hamiltonian: String,
        /// Comma list or start:stop:step.
        #[arg(long, default_value = "0:1:0.1")]
        times: String,
        #[command(flatten)]
        dims: DimsArgs,
    },
    /// Non-selective Lueders conditionalization of a state on an observable.
    Luders,
    /// Representativeness conditions of a pure state in a context.
    Representative,
    /// Tr(W A) against Tr(W_A A), optionally with a probe observable.
    Equivalence {
        #[arg(long)]
        probe: Option<String>,
    },
    /// Trace distance between the states conditionalized on two observables.
    ContextDistance {
        /// Second observable.
        #[arg(long, default_value = "sigma_x")]
        other: String,
    },
    /// Successive non-selective measurements.
    Sequential {
        /// Observable to measure; repeat for a sequence.
        #[arg(long = "measure", required = true)]
        measure: Vec<String>,
    },
    /// Event structure generated by an observable's spectral projectors.
    BooleanLattice {
        /// Extra states whose probabilities are checked; repeatable.
        #[arg(long = "probe-state")]
        probe_state: Vec<String>,
    },
    /// Joint outcome probabilities and E(a, b); --sweep writes a table.
    Correlate {
        #[arg(long, default_value = "z")]
        a: String,
        #[arg(long, default_value = "x")]
        b: String,
        /// Degrees for b in the x-z plane with a = z: list or start:stop:step.
        #[arg(long)]
        sweep: Option<String>,
    },
    /// CHSH combination E(a,b) + E(a,b') + E(a',b) - E(a',b').
    Chsh {
        #[arg(long, default_value = "theta:90")]
        a: String,
        #[arg(long, default_value = "theta:0")]
        a_prime: String,
        #[arg(long, default_value = "theta:45")]
        b: String,
        #[arg(long, default_value = "theta:135")]
        b_prime: String,
    },
    /// Second-subsystem statistics across first-subsystem settings.
    NoSignalling {
        /// First-subsystem setting; repeatable.
        #[arg(long = "setting")]
        settings: Vec<String>,
        #[arg(long, default_value = "z")]
        b: String,
    },
    /// |p(b=+1 | a=+1) - p(b=+1)|.
    OutcomeDependence {
        #[arg(long, default_value = "z")]
        a: String,
        #[arg(long, default_value = "z")]
        b: String,
    },
    /// Second-subsystem state after a first-subsystem outcome.
    RemoteState {
        #[arg(long, default_value = "z")]
        a: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        outcome: i32,
    },
    /// Mermin-Peres square: identities and exhaustive assignment search.
    KsSquare,
    /// Exhaustive assignment search for a problem file.
    KsSearch {
        #[arg(long)]
        problem: String,
    },
    /// GHZ eigen-relations and the resulting value-assignment contradiction.
    Ghz,
    /// A-distributions directly and after measuring B or C.
    ValueDependence {
        #[arg(long, default_value = "pauli:ZI")]
        b: String,
        #[arg(long, default_value = "pauli:XX")]
        c: String,
    },
    /// MUB statistics and linear-inversion reconstruction.
    MubTomography {
        /// Shots per basis; exact probabilities when absent.
        #[arg(long)]
        shots: Option<u64>,
        /// Reconstruct from a statistics file instead of a state.
        #[arg(long)]
        stats: Option<String>,
        /// Write the statistics used to this path.
        #[arg(long)]
        stats_out: Option<String>,
        /// Largest accepted trace distance; defaults to --tol when exact and 0.05 when sampled.
        #[arg(long)]
        max_distance: Option<f64>,
    },
    /// Every acceptance check.
    Suite,
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    /// Subsystem dimensions d1,d2; inferred for square total dimensions.
    #[arg(long)]
    pub dims: Option<String>,
}
