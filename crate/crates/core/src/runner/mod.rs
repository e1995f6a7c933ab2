//! Experiment orchestration: GPC sweeps over architectures and partitions.
//!
//! Every cell `(architecture, partition, gpc)` runs an ensemble of random
//! circuits, forms the ensemble fluctuation curve at each checkpoint, and
//! reports its distance to a Haar reference for the same qubit count.
//! Each circuit's seed is derived from the experiment seed, the cell's
//! identity, and the circuit index, so results do not depend on the
//! number of worker threads or the order cells are listed in.

pub mod cli;
pub mod output;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{run_with_checkpoints, CheckpointSchedule, CircuitSpec};
use crate::complexity::{self, FluctuationCurve, LorenzCurve};
use crate::error::{Error, Result};
use crate::seed;
use crate::statevector::MAX_QUBITS;
use crate::topology::{Architecture, Partition};

pub const DEFAULT_GPC_GRID: [usize; 14] = [1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 75, 100, 150, 200];
pub const DEFAULT_ENSEMBLE_SIZE: usize = 100;
pub const DEFAULT_HAAR_SAMPLES: usize = 1000;
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

// Domain tags keep Haar and circuit seeds from colliding.
const HAAR_TAG: u64 = 0x4841_4152;
const CIRCUIT_TAG: u64 = 0x4349_5243;

fn default_gpc_values() -> Vec<usize> {
    DEFAULT_GPC_GRID.to_vec()
}
fn default_total_gates() -> usize {
    crate::circuit::DEFAULT_TOTAL_GATES
}
fn default_checkpoint_start() -> usize {
    200
}
fn default_checkpoint_step() -> usize {
    100
}
fn default_ensemble_size() -> usize {
    DEFAULT_ENSEMBLE_SIZE
}
fn default_haar_samples() -> usize {
    DEFAULT_HAAR_SAMPLES
}
fn default_memory_budget() -> u64 {
    DEFAULT_MEMORY_BUDGET
}
fn default_max_qubits() -> usize {
    MAX_QUBITS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub partitions: Vec<Partition>,
    #[serde(default)]
    pub architectures: Vec<Architecture>,
    #[serde(default = "default_gpc_values")]
    pub gpc_values: Vec<usize>,
    #[serde(default = "default_total_gates")]
    pub total_gates: usize,
    #[serde(default = "default_checkpoint_start")]
    pub checkpoint_start: usize,
    #[serde(default = "default_checkpoint_step")]
    pub checkpoint_step: usize,
    /// Explicit checkpoint list; overrides start/step when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<usize>>,
    #[serde(default = "default_ensemble_size")]
    pub ensemble_size: usize,
    #[serde(default = "default_haar_samples")]
    pub haar_samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub include_monolithic: bool,
    #[serde(default = "default_memory_budget")]
    pub memory_budget_bytes: u64,
    #[serde(default = "default_max_qubits")]
    pub max_qubits: usize,
}

impl ExperimentConfig {
    pub fn new(partitions: Vec<Partition>, architectures: Vec<Architecture>) -> Self {
        Self {
            partitions,
            architectures,
            gpc_values: default_gpc_values(),
            total_gates: default_total_gates(),
            checkpoint_start: default_checkpoint_start(),
            checkpoint_step: default_checkpoint_step(),
            checkpoints: None,
            ensemble_size: DEFAULT_ENSEMBLE_SIZE,
            haar_samples: DEFAULT_HAAR_SAMPLES,
            seed: 0,
            output_path: None,
            include_monolithic: false,
            memory_budget_bytes: DEFAULT_MEMORY_BUDGET,
            max_qubits: MAX_QUBITS,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn schedule(&self) -> Result<CheckpointSchedule> {
        match &self.checkpoints {
            Some(counts) => CheckpointSchedule::new(counts.clone(), self.total_gates),
            None => CheckpointSchedule::regular(
                self.checkpoint_start,
                self.checkpoint_step,
                self.total_gates,
            ),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.partitions.is_empty() {
            return Err(Error::InvalidConfig("no partitions".into()));
        }
        if self.architectures.is_empty() && !self.include_monolithic {
            return Err(Error::InvalidConfig(
                "no architectures and include_monolithic is off".into(),
            ));
        }
        if self.gpc_values.is_empty() {
            return Err(Error::InvalidConfig("no gpc values".into()));
        }
        if self.gpc_values.contains(&0) {
            return Err(Error::InvalidConfig("gpc values must be >= 1".into()));
        }
        if self.ensemble_size < 2 {
            return Err(Error::InvalidConfig(format!(
                "ensemble_size must be >= 2, got {}",
                self.ensemble_size
            )));
        }
        if self.haar_samples < 2 {
            return Err(Error::InvalidConfig(format!(
                "haar_samples must be >= 2, got {}",
                self.haar_samples
            )));
        }
        if self.total_gates == 0 {
            return Err(Error::InvalidConfig("total_gates must be >= 1".into()));
        }
        self.schedule()?;
        for cell in self.cells()? {
            cell.circuit_spec(self.total_gates, 0)?;
        }
        self.check_resources()
    }

    fn check_resources(&self) -> Result<()> {
        let checkpoints = self.schedule()?.len() as u64;
        for p in &self.partitions {
            let n = p.total_qubits();
            if n > self.max_qubits {
                return Err(Error::ResourceGuard(format!(
                    "partition {p} has {n} qubits, above the {} qubit ceiling",
                    self.max_qubits
                )));
            }
            // Lorenz curves for every member at every checkpoint, plus the
            // Haar reference ensemble.
            let dim = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
            let members = (self.ensemble_size as u64)
                .saturating_mul(checkpoints)
                .saturating_add(self.haar_samples as u64);
            let bytes = dim.saturating_mul(8).saturating_mul(members);
            if bytes > self.memory_budget_bytes {
                return Err(Error::ResourceGuard(format!(
                    "partition {p}: 2^{n} amplitudes x {} circuits x {checkpoints} checkpoints \
                     needs {bytes} bytes, budget is {}",
                    self.ensemble_size, self.memory_budget_bytes
                )));
            }
        }
        Ok(())
    }

    /// Cells in output order: architectures x partitions x gpc, then one
    /// monolithic baseline per distinct register width.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let mut cells = Vec::new();
        for &architecture in &self.architectures {
            for &partition in &self.partitions {
                if architecture == Architecture::Monolithic && partition.num_cores() != 1 {
                    return Err(Error::InvalidConfig(format!(
                        "monolithic listed with multi-core partition {partition}; \
                         use include_monolithic for baselines"
                    )));
                }
                for &gpc in &self.gpc_values {
                    cells.push(Cell {
                        architecture,
                        partition,
                        gpc,
                    });
                }
            }
        }
        if self.include_monolithic {
            let widths: std::collections::BTreeSet<usize> =
                self.partitions.iter().map(|p| p.total_qubits()).collect();
            for n in widths {
                cells.push(Cell::monolithic(n, self.total_gates)?);
            }
        }
        Ok(cells)
    }
}

/// One point of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub architecture: Architecture,
    pub partition: Partition,
    pub gpc: usize,
}

impl Cell {
    /// Single-core baseline over `n` qubits. Its gate distribution does not
    /// depend on gpc; one round spanning the whole stream is used.
    pub fn monolithic(n: usize, total_gates: usize) -> Result<Self> {
        Ok(Self {
            architecture: Architecture::Monolithic,
            partition: Partition::new(1, n)?,
            gpc: total_gates,
        })
    }

    pub fn swaps_per_round(&self) -> Result<usize> {
        self.architecture.swaps_per_round(self.partition.num_cores())
    }

    fn key(&self) -> [u64; 4] {
        [
            self.architecture as u64,
            self.partition.num_cores() as u64,
            self.partition.qubits_per_core() as u64,
            self.gpc as u64,
        ]
    }

    pub fn circuit_seed(&self, experiment_seed: u64, circuit_index: usize) -> u64 {
        let key = self.key();
        seed::derive(
            experiment_seed,
            &[CIRCUIT_TAG, key[0], key[1], key[2], key[3], circuit_index as u64],
        )
    }

    pub fn circuit_spec(&self, total_gates: usize, seed: u64) -> Result<CircuitSpec> {
        CircuitSpec::new(self.partition, self.architecture, self.gpc, total_gates, seed)
    }

    pub fn label(&self) -> String {
        format!("{} {} gpc={}", self.architecture, self.partition, self.gpc)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub cell: Cell,
    pub sw: usize,
    pub sw_over_gpc: f64,
    /// `(gate count, D_H)` at every checkpoint.
    pub dh_points: Vec<(usize, f64)>,
    /// `None` when the schedule has fewer than two checkpoints.
    pub id_h: Option<f64>,
}

impl ExperimentResult {
    pub fn dh_at(&self, gate_count: usize) -> Option<f64> {
        self.dh_points
            .iter()
            .find(|(g, _)| *g == gate_count)
            .map(|(_, d)| *d)
    }
}

pub fn haar_seed(experiment_seed: u64, num_qubits: usize) -> u64 {
    seed::derive(experiment_seed, &[HAAR_TAG, num_qubits as u64])
}

/// Runs one cell's ensemble and returns the Lorenz curves indexed
/// `[checkpoint][circuit]`.
pub fn ensemble_lorenz(
    cell: &Cell,
    config: &ExperimentConfig,
    schedule: &CheckpointSchedule,
) -> Result<Vec<Vec<LorenzCurve>>> {
    let per_circuit = (0..config.ensemble_size)
        .into_par_iter()
        .map(|i| {
            let spec = cell.circuit_spec(config.total_gates, cell.circuit_seed(config.seed, i))?;
            run_with_checkpoints(&spec, schedule)?
                .iter()
                .map(|p| complexity::lorenz(p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_checkpoint: Vec<Vec<LorenzCurve>> =
        (0..schedule.len()).map(|_| Vec::with_capacity(per_circuit.len())).collect();
    for curves in per_circuit {
        for (slot, curve) in by_checkpoint.iter_mut().zip(curves) {
            slot.push(curve);
        }
    }
    Ok(by_checkpoint)
}

pub fn run_cell(
    cell: &Cell,
    config: &ExperimentConfig,
    schedule: &CheckpointSchedule,
    haar: &FluctuationCurve,
) -> Result<ExperimentResult> {
    let sw = cell.swaps_per_round()?;
    let dh_points = ensemble_lorenz(cell, config, schedule)?
        .iter()
        .zip(schedule.counts())
        .map(|(curves, &g)| {
            let fluct = FluctuationCurve::from_lorenz(curves)?;
            Ok((g, complexity::distance_to_haar(&fluct, haar)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let id_h = if dh_points.len() >= 2 {
        let pts: Vec<(f64, f64)> = dh_points.iter().map(|&(g, d)| (g as f64, d)).collect();
        Some(complexity::integrated_dh(&pts)?)
    } else {
        None
    };
    Ok(ExperimentResult {
        cell: *cell,
        sw,
        sw_over_gpc: sw as f64 / cell.gpc as f64,
        dh_points,
        id_h,
    })
}

/// Haar references for every register width the config touches.
pub fn haar_references(config: &ExperimentConfig) -> Result<BTreeMap<usize, FluctuationCurve>> {
    config
        .partitions
        .iter()
        .map(|p| p.total_qubits())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|n| {
            let curve =
                complexity::haar_reference(n, config.haar_samples, haar_seed(config.seed, n))?;
            Ok((n, curve))
        })
        .collect()
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentResult>> {
    run_experiment_with(config, |_| {})
}

/// As [`run_experiment`], calling `on_cell` after each cell completes.
pub fn run_experiment_with<F: FnMut(&ExperimentResult)>(
    config: &ExperimentConfig,
    mut on_cell: F,
) -> Result<Vec<ExperimentResult>> {
    config.validate()?;
    let schedule = config.schedule()?;
    let haar = haar_references(config)?;
    config
        .cells()?
        .iter()
        .map(|cell| {
            let reference = &haar[&cell.partition.total_qubits()];
            let result = run_cell(cell, config, &schedule, reference).map_err(|e| {
                Error::CellFailed {
                    cell: cell.label(),
                    source: Box::new(e),
                }
            })?;
            on_cell(&result);
            Ok(result)
        })
        .collect()
}

/// Runs on a dedicated pool of `threads` workers (`None`: rayon default).
pub fn run_experiment_on_threads(
    config: &ExperimentConfig,
    threads: Option<usize>,
) -> Result<Vec<ExperimentResult>> {
    with_threads(threads, || run_experiment(config))
}

pub fn with_threads<T: Send, F: FnOnce() -> Result<T> + Send>(
    threads: Option<usize>,
    f: F,
) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::InvalidConfig("thread count must be >= 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(f)
}
