//! Preparation and syndrome-extraction circuits, and Monte-Carlo noise
//! trajectories with post-selection on the syndromes.
//!
//! Gates are ideal. Noise enters through markers: a depolarizing channel on
//! every data qubit after preparation and a bit-flip channel on every
//! syndrome ancilla right before it is measured. Without rotations the
//! trajectories run as Pauli frames against one noiseless stabilizer run;
//! otherwise a statevector is simulated.

mod build;
mod circuit;
mod exec;

pub use build::{build_prep_circuit, build_syndrome_circuit, prep_for_refinement, prep_for_result};
pub use circuit::{Circuit, Op};
pub use exec::{dense_run, dense_run_from, DenseOutcome, MAX_NOISY_DENSE_QUBITS};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dense::StateVector;
use crate::error::{Error, Result};
use crate::hamiltonian::GeneralizedState;
use crate::pauli::{Pauli, PauliString};
use crate::sci::with_jobs;
use crate::stabilizer::{PauliGroup, StabilizerTableau};
use exec::{fidelity, frame_run, reference_run};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub p_depol: f64,
    pub p_bitflip: f64,
}

impl NoiseModel {
    /// Depolarizing probability `p` with bit flips at `p/2`.
    pub fn new(p_depol: f64) -> Result<Self> {
        Self::with_bitflip(p_depol, p_depol / 2.0)
    }

    pub fn with_bitflip(p_depol: f64, p_bitflip: f64) -> Result<Self> {
        for p in [p_depol, p_bitflip] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Precondition(format!(
                    "probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(Self { p_depol, p_bitflip })
    }
}

/// The state a trajectory is compared against, on the data register.
#[derive(Debug, Clone)]
pub enum IdealState {
    Stabilizer(StabilizerTableau),
    Vector(StateVector<f64>),
}

impl IdealState {
    pub fn from_generalized(g: &GeneralizedState<f64>) -> Result<Self> {
        let n = g.base.n_qubits();
        let base = StateVector::from_amplitudes(n, g.base.to_statevector::<f64>()?)?;
        let mut moved = base.clone();
        moved.apply_pauli(&g.excitation);
        let y = if g.l { -g.y() } else { g.y() };
        let amps = base
            .amplitudes()
            .iter()
            .zip(moved.amplitudes())
            .map(|(a, b)| a * g.x() + b * y)
            .collect();
        Ok(IdealState::Vector(StateVector::from_amplitudes(n, amps)?))
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            IdealState::Stabilizer(s) => s.n_qubits(),
            IdealState::Vector(v) => v.n_qubits(),
        }
    }

    fn to_vector(&self) -> Result<StateVector<f64>> {
        match self {
            IdealState::Stabilizer(s) => {
                StateVector::from_amplitudes(s.n_qubits(), s.to_statevector()?)
            }
            IdealState::Vector(v) => Ok(v.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Pauli frames when the circuit and the ideal state allow it.
    #[default]
    Auto,
    Frame,
    Dense,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryConfig {
    pub n_traj: usize,
    pub seed: u64,
    pub backend: Backend,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        Self {
            n_traj: 1000,
            seed: DEFAULT_SEED,
            backend: Backend::Auto,
            jobs: None,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub n_traj: usize,
    pub n_kept: usize,
    pub discard_rate: f64,
    /// Mean of `|⟨ideal|final⟩|²` over kept trajectories (0 if none kept).
    pub mean_overlap: f64,
    /// Standard error of `mean_overlap`.
    pub stderr: f64,
    pub seed: u64,
}

impl SimReport {
    fn from_outcomes(outcomes: &[Option<f64>], seed: u64) -> Self {
        let n_traj = outcomes.len();
        let kept: Vec<f64> = outcomes.iter().flatten().copied().collect();
        let n_kept = kept.len();
        let (mean, stderr) = if n_kept == 0 {
            (0.0, 0.0)
        } else {
            let m = kept.iter().sum::<f64>() / n_kept as f64;
            let var = if n_kept > 1 {
                kept.iter().map(|o| (o - m).powi(2)).sum::<f64>() / (n_kept - 1) as f64
            } else {
                0.0
            };
            (m, (var / n_kept as f64).sqrt())
        };
        Self {
            n_traj,
            n_kept,
            discard_rate: if n_traj == 0 {
                0.0
            } else {
                1.0 - n_kept as f64 / n_traj as f64
            },
            mean_overlap: mean,
            stderr,
            seed,
        }
    }
}

/// Random stream of trajectory `i`.
pub fn trajectory_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Preparation, depolarizing markers on the data, then (optionally) the
/// syndrome circuit with a bit-flip marker before each measurement.
pub fn noisy_circuit(
    prep: &Circuit,
    syndrome: Option<&Circuit>,
    noise: &NoiseModel,
) -> Result<Circuit> {
    let mut c = prep.clone();
    for q in 0..c.n_data() {
        c.push(Op::Depolarize {
            qubit: q,
            p: noise.p_depol,
        })?;
    }
    let Some(s) = syndrome else { return Ok(c) };
    let mut marked = Circuit::new(s.n_data());
    for _ in 0..s.n_ancilla() {
        marked.add_ancilla();
    }
    for op in s.ops() {
        if let Op::Measure { qubit, key } = op {
            marked.push(Op::Bitflip {
                qubit: *qubit,
                p: noise.p_bitflip,
            })?;
            marked.measure(*qubit, s.expected(*key))?;
        } else {
            marked.push(op.clone())?;
        }
    }
    c.then(&marked)
}

/// Run `n_traj` trajectories of the noisy circuit (see [`noisy_circuit`]),
/// discarding those whose checked syndromes differ from their expected
/// values. Trajectory `i` draws from stream `i` of the seeded generator, so
/// the report depends only on the seed.
pub fn run_trajectories(
    prep: &Circuit,
    syndrome: Option<&Circuit>,
    noise: &NoiseModel,
    ideal: &IdealState,
    cfg: &TrajectoryConfig,
) -> Result<SimReport> {
    let c = noisy_circuit(prep, syndrome, noise)?;
    simulate(&c, ideal, cfg)
}

/// Trajectories of an already assembled circuit.
pub fn simulate(c: &Circuit, ideal: &IdealState, cfg: &TrajectoryConfig) -> Result<SimReport> {
    c.validate()?;
    if ideal.n_qubits() != c.n_data() {
        return Err(Error::DimensionMismatch {
            expected: c.n_data(),
            found: ideal.n_qubits(),
        });
    }
    let frame_ok = !c.has_rotations() && matches!(ideal, IdealState::Stabilizer(_));
    let use_frame = match cfg.backend {
        Backend::Auto => frame_ok,
        Backend::Frame if !frame_ok => {
            return Err(Error::Precondition(
                "the Pauli-frame path needs a Clifford circuit and a stabilizer ideal state".into(),
            ))
        }
        Backend::Frame => true,
        Backend::Dense => false,
    };
    let outcomes = if use_frame {
        let IdealState::Stabilizer(ideal) = ideal else {
            unreachable!()
        };
        frame_outcomes(c, ideal, cfg)?
    } else {
        dense_outcomes(c, &ideal.to_vector()?, cfg)?
    };
    Ok(SimReport::from_outcomes(&outcomes, cfg.seed))
}

fn frame_outcomes(
    c: &Circuit,
    ideal: &StabilizerTableau,
    cfg: &TrajectoryConfig,
) -> Result<Vec<Option<f64>>> {
    let reference = reference_run(c)?;
    let n = c.n_qubits();
    // the ideal state padded with the measured ancillas of the reference
    let mut gens: Vec<_> = ideal.generators().iter().map(|g| g.padded(n)).collect();
    for q in c.n_data()..n {
        let z = PauliString::single(n, q, Pauli::Z);
        gens.push(if reference.state.expectation_unchecked(&z) < 0 {
            z.negated()
        } else {
            z
        });
    }
    let target = StabilizerTableau::from_generators(&gens)?;
    let exact = target == reference.state;
    let group: &PauliGroup = target.group();
    let checks: Vec<(usize, bool)> = c.checks().collect();
    let run = |i: usize| -> Result<Option<f64>> {
        let mut rng = trajectory_rng(cfg.seed, i);
        let out = frame_run(c, &mut rng);
        if checks
            .iter()
            .any(|&(k, v)| (reference.record[k] ^ out.flips[k]) != v)
        {
            return Ok(None);
        }
        let q = out.data_error.padded(n);
        let overlap = if exact {
            if group.membership(&q).is_some() {
                1.0
            } else {
                0.0
            }
        } else {
            reference.state.apply_pauli(&q).overlap(&target)?
        };
        Ok(Some(overlap))
    };
    with_jobs(cfg.jobs, || {
        (0..cfg.n_traj).into_par_iter().map(run).collect()
    })?
}

fn dense_outcomes(
    c: &Circuit,
    ideal: &StateVector<f64>,
    cfg: &TrajectoryConfig,
) -> Result<Vec<Option<f64>>> {
    let checks: Vec<(usize, bool)> = c.checks().collect();
    let run = |i: usize| -> Result<Option<f64>> {
        let mut rng = trajectory_rng(cfg.seed, i);
        let out = dense_run(c, &mut rng, None)?;
        if checks.iter().any(|&(k, v)| out.record[k] != v) {
            return Ok(None);
        }
        Ok(Some(fidelity(ideal, &out.state)))
    };
    with_jobs(cfg.jobs, || {
        (0..cfg.n_traj).into_par_iter().map(run).collect()
    })?
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Protection {
    Protected,
    Unprotected,
}

impl std::fmt::Display for Protection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Protection::Protected => "protected",
            Protection::Unprotected => "unprotected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub noise: NoiseRow,
    pub mode: Protection,
    pub report: SimReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseRow {
    pub p_depol: f64,
    pub p_bitflip: f64,
}

/// One report per noise model and mode, all with the same seed so that
/// rows share their random streams.
pub fn sweep(
    prep: &Circuit,
    syndrome: &Circuit,
    ideal: &IdealState,
    noises: &[NoiseModel],
    modes: &[Protection],
    cfg: &TrajectoryConfig,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for noise in noises {
        for &mode in modes {
            let s = (mode == Protection::Protected).then_some(syndrome);
            rows.push(SweepRow {
                noise: NoiseRow {
                    p_depol: noise.p_depol,
                    p_bitflip: noise.p_bitflip,
                },
                mode,
                report: run_trajectories(prep, s, noise, ideal, cfg)?,
            });
        }
    }
    Ok(rows)
}
