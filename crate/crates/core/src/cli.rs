//! Command-line front end. `run` parses arguments, executes one experiment
//! and writes a JSON or CSV report; the binary only forwards its exit code.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration, 3 a
//! numerical check failed.

use std::f64::consts::FRAC_PI_8;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::composite::AliceChoice;
use crate::error::{Error, Result};
use crate::experiments::chsh::{
    chsh_joint_closed_form, chsh_marginal, chsh_optimize, chsh_win_probability,
    chsh_win_probability_from_marginals, ChshStrategy,
};
use crate::experiments::entanglement::{entanglement_report, EntanglementReport};
use crate::experiments::nosignal::{
    hilbert_marginal_closed_form, nosignaling_report, InitialState, JointProbabilityTable, NoSignalConfig,
};
use crate::experiments::projectors::{Bit, YOutcome};
use crate::linalg::{c, entropy_bits, matmul, CMatrix, CVector};
use crate::pt::{build_c_spectral, c_closed_form, check_alpha, inner, Prescription, PtHamiltonian};
use crate::report::{Check, Record, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

const DEFAULT_ALPHA: f64 = std::f64::consts::FRAC_PI_6;
const PROPERTY_SAMPLES: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "ptsym", version, about = "PT-symmetric two-qubit experiments with the CPT inner product")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Output file; relative paths are resolved against the output directory.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for reports. Without it and without --output the report goes to stdout.
    #[arg(long, global = true, env = "PTSYM_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,

    /// Seed for randomized property checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrescriptionArg {
    Cpt,
    Hilbert,
    Both,
}

impl PrescriptionArg {
    fn expand(&self) -> Vec<Prescription> {
        match self {
            PrescriptionArg::Cpt => vec![Prescription::Cpt],
            PrescriptionArg::Hilbert => vec![Prescription::Hilbert],
            PrescriptionArg::Both => vec![Prescription::Cpt, Prescription::Hilbert],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialArg {
    Entangled,
    Separable,
}

impl From<InitialArg> for InitialState {
    fn from(i: InitialArg) -> Self {
        match i {
            InitialArg::Entangled => InitialState::Entangled,
            InitialArg::Separable => InitialState::Separable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Nosignal,
    Entangle,
    Chsh,
    Coperator,
}

/// `start:stop:steps`, sampled at `steps + 1` evenly spaced points including
/// both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps as f64;
        (0..=self.steps)
            .map(|k| {
                if k == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (k as f64) / n
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, steps] = parts.as_slice() else {
            return Err(format!("expected start:stop:steps, got '{s}'"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("bad number '{x}': {e}"));
        let (start, stop) = (num(start)?, num(stop)?);
        let steps: usize = steps.trim().parse().map_err(|e| format!("bad step count '{steps}': {e}"))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        if steps < 1 {
            return Err("grid needs at least one step".into());
        }
        Ok(Grid { start, stop, steps })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.steps)
    }
}

#[derive(Debug, Clone, Args)]
pub struct AlphaArgs {
    /// Non-Hermiticity angle of Alice's Hamiltonian (radians).
    #[arg(long, default_value_t = DEFAULT_ALPHA, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Non-Hermiticity angle of Bob's Hamiltonian (radians); omit for a Hermitian Bob.
    #[arg(long = "alpha-b", allow_negative_numbers = true)]
    pub alpha_b: Option<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Joint σ_y statistics and the signaling deviation.
    Nosignal {
        #[command(flatten)]
        alphas: AlphaArgs,
        #[arg(long, value_enum, default_value_t = PrescriptionArg::Both)]
        prescription: PrescriptionArg,
        #[arg(long, value_enum, default_value_t = InitialArg::Entangled)]
        initial: InitialArg,
    },
    /// Reduced density, its spectrum and the entanglement entropy.
    Entangle {
        #[arg(long, default_value_t = DEFAULT_ALPHA, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = PrescriptionArg::Both)]
        prescription: PrescriptionArg,
    },
    /// CHSH win probability of the ζ-strategy and its optimum.
    Chsh {
        #[command(flatten)]
        alphas: AlphaArgs,
        /// Evaluate at this ζ instead of the optimum.
        #[arg(long, allow_negative_numbers = true)]
        zeta: Option<f64>,
        /// Tabulate the win probability over `start:stop:steps`.
        #[arg(long = "sweep-zeta", allow_hyphen_values = true)]
        sweep_zeta: Option<Grid>,
    },
    /// The C operator and its defining identities.
    Coperator {
        #[arg(long, default_value_t = DEFAULT_ALPHA, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Run one experiment across an α grid, one row per grid point.
    Sweep {
        #[arg(long, value_enum)]
        experiment: Experiment,
        /// α grid as `start:stop:steps` (steps + 1 points)
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
        /// Fixed α for Bob; omit for a Hermitian Bob
        #[arg(long = "alpha-b", allow_negative_numbers = true)]
        alpha_b: Option<f64>,
        /// Initial state for the nosignal experiment
        #[arg(long, value_enum, default_value_t = InitialArg::Entangled)]
        initial: InitialArg,
        /// Fixed ζ for the chsh experiment
        #[arg(long, allow_negative_numbers = true)]
        zeta: Option<f64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nosignal { .. } => "nosignal",
            Command::Entangle { .. } => "entangle",
            Command::Chsh { .. } => "chsh",
            Command::Coperator { .. } => "coperator",
            Command::Sweep { .. } => "sweep",
        }
    }
}

/// Flattened echo of the run configuration. Unused fields are null so the
/// layout is the same for every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub alpha_a: Option<f64>,
    pub alpha_b: Option<f64>,
    pub prescription: Option<PrescriptionArg>,
    pub initial: Option<InitialArg>,
    pub zeta: Option<f64>,
    pub experiment: Option<Experiment>,
    pub grid: Option<Grid>,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let mut cfg = RunConfig {
            command: cli.command.name(),
            alpha_a: None,
            alpha_b: None,
            prescription: None,
            initial: None,
            zeta: None,
            experiment: None,
            grid: None,
            output_format: cli.format,
            seed: cli.seed,
        };
        match &cli.command {
            Command::Nosignal { alphas, prescription, initial } => {
                cfg.alpha_a = Some(alphas.alpha);
                cfg.alpha_b = alphas.alpha_b;
                cfg.prescription = Some(*prescription);
                cfg.initial = Some(*initial);
            }
            Command::Entangle { alpha, prescription } => {
                cfg.alpha_a = Some(*alpha);
                cfg.prescription = Some(*prescription);
            }
            Command::Chsh { alphas, zeta, sweep_zeta } => {
                cfg.alpha_a = Some(alphas.alpha);
                cfg.alpha_b = alphas.alpha_b;
                cfg.zeta = *zeta;
                cfg.grid = *sweep_zeta;
            }
            Command::Coperator { alpha } => cfg.alpha_a = Some(*alpha),
            Command::Sweep { experiment, grid, alpha_b, initial, zeta } => {
                cfg.experiment = Some(*experiment);
                cfg.grid = Some(*grid);
                cfg.alpha_b = *alpha_b;
                cfg.initial = Some(*initial);
                cfg.zeta = *zeta;
            }
        }
        cfg
    }
}

/// Output of a command before serialization.
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Vec<Record>,
    pub checks: Vec<Check>,
}

fn check_band(alpha: f64) -> Result<()> {
    check_alpha(alpha).map_err(|_| Error::InvalidConfig(format!("alpha outside unbroken PT band: {alpha}")))
}

// ---- nosignal ----

fn table_checks(t: &JointProbabilityTable) -> Vec<Check> {
    let p = t.prescription.as_str();
    let mut sums: Vec<((AliceChoice, Option<AliceChoice>), f64)> = Vec::new();
    let mut excursion: f64 = 0.0;
    for e in &t.entries {
        excursion = excursion.max(-e.probability).max(e.probability - 1.0);
        let key = (e.alice_choice, e.bob_choice);
        match sums.iter_mut().find(|(k, _)| *k == key) {
            Some((_, s)) => *s += e.probability,
            None => sums.push((key, e.probability)),
        }
    }
    let sum_err = sums.iter().map(|(_, s)| (s - 1.0).abs()).fold(0.0, f64::max);
    let mut checks = vec![
        Check::at_most(&format!("{p}_probabilities_sum_to_one"), sum_err, 1e-10),
        Check::at_most(&format!("{p}_probabilities_in_unit_interval"), excursion.max(0.0), 1e-12),
    ];
    let entangled = t.initial == InitialState::Entangled;
    match t.prescription {
        Prescription::Cpt => {
            checks.push(Check::at_most("cpt_deviation", t.deviation, 1e-10));
            checks.push(Check::at_most("cpt_reverse_deviation", t.reverse_deviation, 1e-10));
            if entangled {
                let half = t
                    .bob_marginals
                    .iter()
                    .chain(&t.alice_marginals)
                    .map(|m| (m.value - 0.5).abs())
                    .fold(0.0, f64::max);
                checks.push(Check::at_most("cpt_marginals_half", half, 1e-10));
            }
        }
        Prescription::Hilbert => {
            if !entangled {
                checks.push(Check::at_most("hilbert_separable_deviation", t.deviation, 1e-10));
            } else if t.alpha_b.is_none() {
                let err = t
                    .bob_marginals
                    .iter()
                    .map(|m| {
                        let want = hilbert_marginal_closed_form(t.alpha_a, m.alice_choice, m.outcome).unwrap_or(f64::NAN);
                        (m.value - want).abs()
                    })
                    .fold(0.0, |acc: f64, x| if x.is_nan() { f64::NAN } else { acc.max(x) });
                checks.push(Check::at_most("hilbert_marginals_closed_form", err, 1e-10));
            }
        }
    }
    checks
}

fn table_rows(t: &JointProbabilityTable) -> Vec<Record> {
    t.entries
        .iter()
        .map(|e| {
            let bob_m = t
                .bob_marginals
                .iter()
                .find(|m| m.alice_choice == e.alice_choice && m.bob_choice == e.bob_choice && m.outcome == e.b)
                .map(|m| m.value);
            let alice_m = t
                .alice_marginals
                .iter()
                .find(|m| m.alice_choice == e.alice_choice && m.bob_choice == e.bob_choice && m.outcome == e.a)
                .map(|m| m.value);
            Record::new()
                .with("prescription", t.prescription.as_str())
                .with("initial", initial_str(t.initial))
                .with("alpha_a", t.alpha_a)
                .with("alpha_b", t.alpha_b)
                .with("alice_choice", e.alice_choice.as_str())
                .with("bob_choice", e.bob_choice.map(|c| c.as_str()))
                .with("a", e.a.as_str())
                .with("b", e.b.as_str())
                .with("probability", e.probability)
                .with("bob_marginal", bob_m)
                .with("alice_marginal", alice_m)
                .with("deviation", t.deviation)
                .with("reverse_deviation", t.reverse_deviation)
                .with("normalization", t.normalization.as_str())
        })
        .collect()
}

fn initial_str(i: InitialState) -> &'static str {
    match i {
        InitialState::Entangled => "entangled",
        InitialState::Separable => "separable",
    }
}

pub fn cmd_nosignal(alpha_a: f64, alpha_b: Option<f64>, prescription: PrescriptionArg, initial: InitialArg) -> Result<Outcome> {
    check_band(alpha_a)?;
    if let Some(b) = alpha_b {
        check_band(b)?;
    }
    let mut out = Outcome::default();
    for p in prescription.expand() {
        let table = nosignaling_report(&NoSignalConfig {
            prescription: p,
            alpha_a,
            alpha_b,
            initial: initial.into(),
        })?;
        out.results.extend(table_rows(&table));
        out.checks.extend(table_checks(&table));
    }
    Ok(out)
}

// ---- entangle ----

fn entangle_row(rep: &EntanglementReport) -> Record {
    let m = &rep.reduced;
    let (bits, diag) = match &rep.entropy {
        crate::experiments::Entropy::Bits { value } => (Some(*value), None),
        crate::experiments::Entropy::Diagnostic { reason } => (None, Some(reason.clone())),
    };
    Record::new()
        .with("prescription", rep.prescription.as_str())
        .with("alpha", rep.alpha)
        .with("time_over_tau", rep.time_over_tau)
        .with("kept", match rep.kept {
            crate::linalg::Subsystem::First => "first",
            crate::linalg::Subsystem::Second => "second",
        })
        .with("rho_00_re", m.get(0, 0).re)
        .with("rho_00_im", m.get(0, 0).im)
        .with("rho_01_re", m.get(0, 1).re)
        .with("rho_01_im", m.get(0, 1).im)
        .with("rho_10_re", m.get(1, 0).re)
        .with("rho_10_im", m.get(1, 0).im)
        .with("rho_11_re", m.get(1, 1).re)
        .with("rho_11_im", m.get(1, 1).im)
        .with("lambda_plus_re", rep.eigenvalues[0].re)
        .with("lambda_plus_im", rep.eigenvalues[0].im)
        .with("lambda_minus_re", rep.eigenvalues[1].re)
        .with("lambda_minus_im", rep.eigenvalues[1].im)
        .with("entropy_bits", bits)
        .with("entropy_diagnostic", diag)
}

fn entangle_checks(rep: &EntanglementReport) -> Vec<Check> {
    let p = rep.prescription.as_str();
    let eig_err = rep
        .eigenvalues
        .iter()
        .zip(rep.expected_eigenvalues)
        .map(|(got, want)| (got - c(want, 0.0)).norm())
        .fold(0.0, f64::max);
    let entropy_tol = match rep.prescription {
        Prescription::Cpt => 1e-10,
        Prescription::Hilbert => 1e-8,
    };
    let entropy_err = rep
        .entropy
        .bits()
        .map_or(f64::NAN, |e| (e - entropy_bits(&rep.expected_eigenvalues)).abs());
    vec![
        Check::at_most(&format!("{p}_eigenvalues"), eig_err, 1e-10),
        Check::at_most(&format!("{p}_cross_check"), rep.cross_check_deviation, 1e-10),
        Check::at_most(&format!("{p}_entropy"), entropy_err, entropy_tol),
    ]
}

pub fn cmd_entangle(alpha: f64, prescription: PrescriptionArg) -> Result<Outcome> {
    check_band(alpha)?;
    let mut out = Outcome::default();
    for p in prescription.expand() {
        let rep = entanglement_report(alpha, p)?;
        out.results.push(entangle_row(&rep));
        out.checks.extend(entangle_checks(&rep));
    }
    Ok(out)
}

// ---- chsh ----

fn ddd_deviation(strategy: &ChshStrategy, alphas: (f64, f64)) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in Bit::ALL {
        for y in Bit::ALL {
            let (ta, tb) = strategy.angles((x, y));
            for a in Bit::ALL {
                for b in Bit::ALL {
                    let p = chsh_marginal(strategy, (x, y), a, b, alphas)?;
                    worst = worst.max((p - chsh_joint_closed_form(ta, tb, a, b)).abs());
                }
            }
        }
    }
    Ok(worst)
}

pub fn cmd_chsh(alpha_a: f64, alpha_b: Option<f64>, zeta: Option<f64>, sweep: Option<Grid>) -> Result<Outcome> {
    check_band(alpha_a)?;
    let alphas = (alpha_a, alpha_b.unwrap_or(alpha_a));
    check_band(alphas.1)?;
    let mut out = Outcome::default();
    if let Some(grid) = sweep {
        let mut worst: f64 = 0.0;
        for z in grid.points() {
            let closed = chsh_win_probability(z);
            let summed = chsh_win_probability_from_marginals(z, alphas)?;
            worst = worst.max((closed - summed).abs());
            out.results.push(
                Record::new()
                    .with("zeta", z)
                    .with("p_quant", closed)
                    .with("p_from_marginals", summed),
            );
        }
        out.checks.push(Check::at_most("route_equivalence", worst, 1e-10));
        return Ok(out);
    }
    if let Some(z) = zeta {
        if !z.is_finite() {
            return Err(Error::InvalidConfig("zeta must be finite".into()));
        }
    }
    let (zeta_star, p_star) = chsh_optimize();
    let z = zeta.unwrap_or(zeta_star);
    let p_win = chsh_win_probability(z);
    let summed = chsh_win_probability_from_marginals(z, alphas)?;
    out.results.push(
        Record::new()
            .with("zeta", z)
            .with("p_win", p_win)
            .with("p_win_from_marginals", summed)
            .with("zeta_star", zeta_star)
            .with("p_star", p_star)
            .with("classical_bound", 0.75),
    );
    out.checks.push(Check::at_most("route_equivalence", (p_win - summed).abs(), 1e-10));
    out.checks.push(Check::at_most(
        "joint_closed_form",
        ddd_deviation(&ChshStrategy::from_zeta(z), alphas)?,
        1e-10,
    ));
    out.checks.push(Check::at_most("optimum_zeta", (zeta_star - FRAC_PI_8).abs(), 1e-6));
    out.checks.push(Check::at_most("optimum_p", (p_star - FRAC_PI_8.cos().powi(2)).abs(), 1e-9));
    Ok(out)
}

// ---- coperator ----

struct CopMetrics {
    spectral: CMatrix,
    closed: CMatrix,
    closed_form_residual: f64,
    square_residual: f64,
    commutator_residual: f64,
    biorthonormality_residual: f64,
}

fn coperator_metrics(alpha: f64) -> Result<CopMetrics> {
    let h = PtHamiltonian::with_alpha(alpha)?;
    let spec = h.spectrum();
    let spectral = build_c_spectral(&spec)?;
    let closed = c_closed_form(alpha)?;
    let square = matmul(&spectral, &spectral)?;
    let frame = h.frame();
    let states = [spec.psi_plus.clone(), spec.psi_minus.clone()];
    let mut bio: f64 = 0.0;
    for (j, a) in states.iter().enumerate() {
        for (k, b) in states.iter().enumerate() {
            let want = if j == k { 1.0 } else { 0.0 };
            bio = bio.max((inner(a, b, &frame, Prescription::Cpt)? - c(want, 0.0)).norm());
        }
    }
    Ok(CopMetrics {
        closed_form_residual: spectral.max_abs_diff(&closed),
        square_residual: square.max_abs_diff(&CMatrix::identity(2)),
        commutator_residual: spectral.commutator(&h.matrix())?.max_abs(),
        biorthonormality_residual: bio,
        spectral,
        closed,
    })
}

fn random_unit_qubit(rng: &mut ChaCha8Rng) -> Result<CVector> {
    let mut draw = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let v = CVector::new(vec![draw(), draw()])?;
    if v.norm() < 1e-3 {
        return CVector::basis(2, 0);
    }
    v.normalized()
}

/// Max change of the CPT inner product under `U(t)` over random state pairs
/// and times in `[0, 2τ]`.
pub fn cpt_unitarity_residual(alpha: f64, seed: u64, samples: usize) -> Result<f64> {
    let h = PtHamiltonian::with_alpha(alpha)?;
    let frame = h.frame();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = random_unit_qubit(&mut rng)?;
        let b = random_unit_qubit(&mut rng)?;
        let t = rng.gen_range(0.0..2.0 * h.tau());
        let u = h.evolution(t)?;
        let before = inner(&a, &b, &frame, Prescription::Cpt)?;
        let after = inner(&u.apply(&a)?, &u.apply(&b)?, &frame, Prescription::Cpt)?;
        worst = worst.max((after - before).norm());
    }
    Ok(worst)
}

pub fn cmd_coperator(alpha: f64, seed: u64) -> Result<Outcome> {
    check_band(alpha)?;
    let m = coperator_metrics(alpha)?;
    let mut out = Outcome::default();
    for i in 0..2 {
        for j in 0..2 {
            out.results.push(
                Record::new()
                    .with("alpha", alpha)
                    .with("row", i)
                    .with("col", j)
                    .with("c_re", m.spectral.get(i, j).re)
                    .with("c_im", m.spectral.get(i, j).im)
                    .with("closed_form_re", m.closed.get(i, j).re)
                    .with("closed_form_im", m.closed.get(i, j).im),
            );
        }
    }
    out.checks = vec![
        Check::at_most("spectral_vs_closed_form", m.closed_form_residual, 1e-12),
        Check::at_most("c_squared_identity", m.square_residual, 1e-12),
        Check::at_most("commutes_with_h", m.commutator_residual, 1e-12),
        Check::at_most("cpt_biorthonormality", m.biorthonormality_residual, 1e-12),
        Check::at_most("cpt_unitarity", cpt_unitarity_residual(alpha, seed, PROPERTY_SAMPLES)?, 1e-10),
    ];
    Ok(out)
}

// ---- sweep ----

fn max_check(name: &str, values: &[f64], tol: f64) -> Check {
    let worst = values
        .iter()
        .fold(0.0, |acc: f64, &x| if x.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(x) });
    Check::at_most(name, worst, tol)
}

pub fn cmd_sweep(
    experiment: Experiment,
    grid: Grid,
    alpha_b: Option<f64>,
    initial: InitialArg,
    zeta: Option<f64>,
    seed: u64,
) -> Result<Outcome> {
    let points = grid.points();
    for &a in &points {
        check_band(a)?;
    }
    if let Some(b) = alpha_b {
        check_band(b)?;
    }
    let mut out = Outcome::default();
    match experiment {
        Experiment::Nosignal => {
            let mut cpt_dev = Vec::new();
            for &a in &points {
                let cfg = |p| NoSignalConfig { prescription: p, alpha_a: a, alpha_b, initial: initial.into() };
                let cpt = nosignaling_report(&cfg(Prescription::Cpt))?;
                let hil = nosignaling_report(&cfg(Prescription::Hilbert))?;
                let bob = alpha_b.map(|_| AliceChoice::Plus);
                cpt_dev.push(cpt.deviation.max(cpt.reverse_deviation));
                out.results.push(
                    Record::new()
                        .with("alpha", a)
                        .with("cpt_deviation", cpt.deviation)
                        .with("cpt_reverse_deviation", cpt.reverse_deviation)
                        .with("hilbert_deviation", hil.deviation)
                        .with("hilbert_plus_py", hil.bob_marginal(AliceChoice::Plus, bob, YOutcome::PlusY))
                        .with("hilbert_minus_py", hil.bob_marginal(AliceChoice::Minus, bob, YOutcome::PlusY))
                        .with("cpt_plus_py", cpt.bob_marginal(AliceChoice::Plus, bob, YOutcome::PlusY))
                        .with("cpt_minus_py", cpt.bob_marginal(AliceChoice::Minus, bob, YOutcome::PlusY)),
                );
                for t in [&cpt, &hil] {
                    out.checks.extend(
                        table_checks(t)
                            .into_iter()
                            .map(|mut c| {
                                c.name = format!("alpha={a}:{}", c.name);
                                c
                            }),
                    );
                }
            }
            out.checks.push(max_check("cpt_deviation_max", &cpt_dev, 1e-10));
        }
        Experiment::Entangle => {
            for &a in &points {
                let cpt = entanglement_report(a, Prescription::Cpt)?;
                let hil = entanglement_report(a, Prescription::Hilbert)?;
                out.results.push(
                    Record::new()
                        .with("alpha", a)
                        .with("cpt_lambda_plus", cpt.eigenvalues[0].re)
                        .with("cpt_lambda_minus", cpt.eigenvalues[1].re)
                        .with("cpt_entropy", cpt.entropy.bits())
                        .with("hilbert_lambda_plus", hil.eigenvalues[0].re)
                        .with("hilbert_lambda_minus", hil.eigenvalues[1].re)
                        .with("hilbert_entropy", hil.entropy.bits())
                        .with("hilbert_entropy_closed_form", entropy_bits(&hil.expected_eigenvalues)),
                );
                for rep in [&cpt, &hil] {
                    out.checks.extend(entangle_checks(rep).into_iter().map(|mut c| {
                        c.name = format!("alpha={a}:{}", c.name);
                        c
                    }));
                }
            }
        }
        Experiment::Chsh => {
            let z = zeta.unwrap_or(FRAC_PI_8);
            let mut diffs = Vec::new();
            for &a in &points {
                let alphas = (a, alpha_b.unwrap_or(a));
                let summed = chsh_win_probability_from_marginals(z, alphas)?;
                let closed = chsh_win_probability(z);
                diffs.push((summed - closed).abs());
                out.results.push(
                    Record::new()
                        .with("alpha", a)
                        .with("zeta", z)
                        .with("p_from_marginals", summed)
                        .with("p_quant", closed),
                );
            }
            out.checks.push(max_check("route_equivalence", &diffs, 1e-10));
        }
        Experiment::Coperator => {
            let (mut cf, mut sq, mut cm, mut bio, mut un) = (vec![], vec![], vec![], vec![], vec![]);
            for &a in &points {
                let m = coperator_metrics(a)?;
                let unitarity = cpt_unitarity_residual(a, seed, PROPERTY_SAMPLES)?;
                out.results.push(
                    Record::new()
                        .with("alpha", a)
                        .with("spectral_vs_closed_form", m.closed_form_residual)
                        .with("c_squared_residual", m.square_residual)
                        .with("commutator_residual", m.commutator_residual)
                        .with("biorthonormality_residual", m.biorthonormality_residual)
                        .with("cpt_unitarity_residual", unitarity),
                );
                cf.push(m.closed_form_residual);
                sq.push(m.square_residual);
                cm.push(m.commutator_residual);
                bio.push(m.biorthonormality_residual);
                un.push(unitarity);
            }
            out.checks.push(max_check("spectral_vs_closed_form", &cf, 1e-12));
            out.checks.push(max_check("c_squared_identity", &sq, 1e-12));
            out.checks.push(max_check("commutes_with_h", &cm, 1e-12));
            out.checks.push(max_check("cpt_biorthonormality", &bio, 1e-12));
            out.checks.push(max_check("cpt_unitarity", &un, 1e-10));
        }
    }
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<Report<RunConfig>> {
    let seed = cli.seed.unwrap_or(0);
    let outcome = match &cli.command {
        Command::Nosignal { alphas, prescription, initial } => {
            cmd_nosignal(alphas.alpha, alphas.alpha_b, *prescription, *initial)?
        }
        Command::Entangle { alpha, prescription } => cmd_entangle(*alpha, *prescription)?,
        Command::Chsh { alphas, zeta, sweep_zeta } => cmd_chsh(alphas.alpha, alphas.alpha_b, *zeta, *sweep_zeta)?,
        Command::Coperator { alpha } => cmd_coperator(*alpha, seed)?,
        Command::Sweep { experiment, grid, alpha_b, initial, zeta } => {
            cmd_sweep(*experiment, *grid, *alpha_b, *initial, *zeta, seed)?
        }
    };
    Ok(Report {
        command: cli.command.name().to_string(),
        config: RunConfig::from_cli(cli),
        results: outcome.results,
        checks: outcome.checks,
    })
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    match (&cli.output, &cli.output_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{}", cli.command.name(), cli.format.extension()))),
        (None, None) => None,
    }
}

/// Full pipeline; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            match e {
                Error::BrokenPtSymmetry { alpha } => eprintln!("error: alpha outside unbroken PT band: {alpha}"),
                other => eprintln!("error: {other}"),
            }
            return EXIT_CONFIG;
        }
    };
    let body = match cli.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    };
    match destination(&cli) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(parent) {
                    eprintln!("error: cannot create {}: {e}", parent.display());
                    return EXIT_IO;
                }
            }
            if let Err(e) = std::fs::write(&path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => print!("{body}"),
    }
    let failed: Vec<&Check> = report.checks.iter().filter(|c| !c.pass).collect();
    if failed.is_empty() {
        EXIT_OK
    } else {
        for c in failed {
            eprintln!("check failed: {} = {:e} (tolerance {:e})", c.name, c.value, c.tolerance);
        }
        EXIT_CHECK
    }
}
