//! Random multicore G3 circuits.
//!
//! A stream is a repetition of rounds. Each round applies `gpc` local gates
//! to every core in core order, then one SWAP across every architecture
//! edge. Local gates are drawn uniformly from {CNOT, H, T}, with operands
//! uniform inside the core (CNOT uses an ordered pair of distinct qubits).
//! SWAP operands are one uniform qubit from each side of the edge. The
//! stream is cut at exactly `total_gates` events, mid-round if needed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::statevector::{Gate, StateVector};
use crate::topology::{Architecture, Partition};

pub const DEFAULT_TOTAL_GATES: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSpec {
    pub partition: Partition,
    pub architecture: Architecture,
    pub gpc: usize,
    pub total_gates: usize,
    pub seed: u64,
}

impl CircuitSpec {
    pub fn new(
        partition: Partition,
        architecture: Architecture,
        gpc: usize,
        total_gates: usize,
        seed: u64,
    ) -> Result<Self> {
        let spec = Self {
            partition,
            architecture,
            gpc,
            total_gates,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gpc == 0 {
            return Err(Error::InvalidSpec("gpc must be >= 1".into()));
        }
        if self.total_gates == 0 {
            return Err(Error::InvalidSpec("total_gates must be >= 1".into()));
        }
        self.architecture.edges(self.partition.num_cores())?;
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.partition.total_qubits()
    }

    /// Events in one full round: local gates on every core plus the SWAPs.
    pub fn round_len(&self) -> Result<usize> {
        Ok(self.partition.num_cores() * self.gpc
            + self.architecture.swaps_per_round(self.partition.num_cores())?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateEvent {
    pub sequence_index: usize,
    pub gate: Gate,
}

impl fmt::Display for GateEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sequence_index, self.gate)
    }
}

/// Lazily generated gate stream for one circuit.
pub struct GateStream {
    partition: Partition,
    edges: Vec<(usize, usize)>,
    gpc: usize,
    total: usize,
    emitted: usize,
    rng: ChaCha8Rng,
}

impl GateStream {
    pub fn new(spec: &CircuitSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            partition: spec.partition,
            edges: spec.architecture.edges(spec.partition.num_cores())?,
            gpc: spec.gpc,
            total: spec.total_gates,
            emitted: 0,
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
        })
    }

    // Sampled as u32 so the stream does not depend on pointer width.
    fn uniform(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n as u32) as usize
    }

    fn local_gate(&mut self, core: usize) -> Gate {
        let nq = self.partition.qubits_per_core();
        let offset = self.partition.core_qubits(core).start;
        match self.uniform(3) {
            0 => {
                let control = self.uniform(nq);
                let mut target = self.uniform(nq - 1);
                if target >= control {
                    target += 1;
                }
                Gate::Cnot {
                    control: offset + control,
                    target: offset + target,
                }
            }
            1 => Gate::H(offset + self.uniform(nq)),
            _ => Gate::T(offset + self.uniform(nq)),
        }
    }

    fn interconnect(&mut self, edge: usize) -> Gate {
        let (a, b) = self.edges[edge];
        let nq = self.partition.qubits_per_core();
        let qa = self.partition.core_qubits(a).start + self.uniform(nq);
        let qb = self.partition.core_qubits(b).start + self.uniform(nq);
        Gate::Swap(qa, qb)
    }
}

impl Iterator for GateStream {
    type Item = GateEvent;

    fn next(&mut self) -> Option<GateEvent> {
        if self.emitted >= self.total {
            return None;
        }
        let local_len = self.partition.num_cores() * self.gpc;
        let pos = self.emitted % (local_len + self.edges.len());
        let gate = if pos < local_len {
            self.local_gate(pos / self.gpc)
        } else {
            self.interconnect(pos - local_len)
        };
        let event = GateEvent {
            sequence_index: self.emitted,
            gate,
        };
        self.emitted += 1;
        Some(event)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.total - self.emitted;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GateStream {}

pub fn generate_stream(spec: &CircuitSpec) -> Result<Vec<GateEvent>> {
    Ok(GateStream::new(spec)?.collect())
}

/// Line-oriented text dump, `<index> <kind> <qubits...>` per event.
pub fn dump_stream(events: &[GateEvent]) -> String {
    events.iter().map(|e| format!("{e}\n")).collect()
}

/// Gate counts after which probability snapshots are taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointSchedule {
    counts: Vec<usize>,
}

impl CheckpointSchedule {
    /// Explicit counts; must be strictly increasing, positive, and end at
    /// `total_gates`.
    pub fn new(counts: Vec<usize>, total_gates: usize) -> Result<Self> {
        let Some(&last) = counts.last() else {
            return Err(Error::InvalidSchedule("empty schedule".into()));
        };
        if counts[0] == 0 {
            return Err(Error::InvalidSchedule("checkpoint at gate 0".into()));
        }
        if let Some(w) = counts.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSchedule(format!(
                "not strictly increasing at position {}",
                w + 1
            )));
        }
        if last != total_gates {
            return Err(Error::InvalidSchedule(format!(
                "final checkpoint {last} differs from total gate count {total_gates}"
            )));
        }
        Ok(Self { counts })
    }

    /// `start, start + step, ...` up to `total_gates`, which is always the
    /// final entry. A `start` beyond `total_gates` leaves only the final one.
    pub fn regular(start: usize, step: usize, total_gates: usize) -> Result<Self> {
        if start == 0 || step == 0 {
            return Err(Error::InvalidSchedule("start and step must be >= 1".into()));
        }
        let mut counts: Vec<usize> = (start..total_gates).step_by(step).collect();
        counts.push(total_gates);
        Self::new(counts, total_gates)
    }

    pub fn default_for(total_gates: usize) -> Result<Self> {
        Self::regular(200, 100, total_gates)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Evolves `|0...0⟩` through the stream and returns the probability vector
/// after each scheduled gate count.
pub fn run_with_checkpoints(
    spec: &CircuitSpec,
    schedule: &CheckpointSchedule,
) -> Result<Vec<Vec<f64>>> {
    run_with_checkpoints_using(GateStream::new(spec)?, spec, schedule)
}

/// As [`run_with_checkpoints`] over an arbitrary event sequence.
pub fn run_with_checkpoints_using<I: IntoIterator<Item = GateEvent>>(
    events: I,
    spec: &CircuitSpec,
    schedule: &CheckpointSchedule,
) -> Result<Vec<Vec<f64>>> {
    if schedule.counts().last() != Some(&spec.total_gates) {
        return Err(Error::InvalidSchedule(format!(
            "schedule does not end at G = {}",
            spec.total_gates
        )));
    }
    let mut state = StateVector::new_zero_state(spec.num_qubits())?;
    let mut snapshots = Vec::with_capacity(schedule.len());
    let mut next = schedule.counts().iter().peekable();
    for (applied, event) in events.into_iter().enumerate() {
        state.apply(event.gate)?;
        if next.peek() == Some(&&(applied + 1)) {
            snapshots.push(state.probabilities()?);
            next.next();
            if next.peek().is_none() {
                break;
            }
        }
    }
    if snapshots.len() != schedule.len() {
        return Err(Error::InvalidSchedule(
            "gate stream ended before the final checkpoint".into(),
        ));
    }
    Ok(snapshots)
}
