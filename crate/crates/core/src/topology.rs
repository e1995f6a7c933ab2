//! Core partitions and inter-core edge sets.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `num_cores` equal cores of `qubits_per_core` qubits; core `c` owns the
/// global qubits `c * n_q .. (c + 1) * n_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct Partition {
    num_cores: usize,
    qubits_per_core: usize,
}

impl Partition {
    pub fn new(num_cores: usize, qubits_per_core: usize) -> Result<Self> {
        if num_cores == 0 {
            return Err(Error::InvalidPartition("need at least one core".into()));
        }
        if qubits_per_core < 2 {
            return Err(Error::InvalidPartition(format!(
                "cores need at least 2 qubits, got {qubits_per_core}"
            )));
        }
        Ok(Self {
            num_cores,
            qubits_per_core,
        })
    }

    pub fn num_cores(&self) -> usize {
        self.num_cores
    }

    pub fn qubits_per_core(&self) -> usize {
        self.qubits_per_core
    }

    pub fn total_qubits(&self) -> usize {
        self.num_cores * self.qubits_per_core
    }

    pub fn core_qubits(&self, core: usize) -> Range<usize> {
        debug_assert!(core < self.num_cores);
        core * self.qubits_per_core..(core + 1) * self.qubits_per_core
    }

    pub fn core_of(&self, qubit: usize) -> usize {
        qubit / self.qubits_per_core
    }
}

impl TryFrom<(usize, usize)> for Partition {
    type Error = Error;

    fn try_from((n, nq): (usize, usize)) -> Result<Self> {
        Partition::new(n, nq)
    }
}

impl From<Partition> for (usize, usize) {
    fn from(p: Partition) -> Self {
        (p.num_cores, p.qubits_per_core)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.num_cores, self.qubits_per_core)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Architecture {
    Linear,
    Ring,
    Star,
    #[serde(rename = "full")]
    FullyConnected,
    Monolithic,
}

impl Architecture {
    pub const PARTITIONED: [Architecture; 4] = [
        Architecture::FullyConnected,
        Architecture::Star,
        Architecture::Ring,
        Architecture::Linear,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Architecture::Linear => "linear",
            Architecture::Ring => "ring",
            Architecture::Star => "star",
            Architecture::FullyConnected => "full",
            Architecture::Monolithic => "monolithic",
        }
    }

    /// Inter-core edges `(a, b)` with `a < b`, sorted lexicographically.
    pub fn edges(&self, num_cores: usize) -> Result<Vec<(usize, usize)>> {
        self.check_cores(num_cores)?;
        let n = num_cores;
        let mut edges: Vec<(usize, usize)> = match self {
            Architecture::Monolithic => Vec::new(),
            Architecture::Linear => (0..n - 1).map(|c| (c, c + 1)).collect(),
            Architecture::Ring => {
                let mut e: Vec<_> = (0..n - 1).map(|c| (c, c + 1)).collect();
                e.push((0, n - 1));
                e
            }
            Architecture::Star => (1..n).map(|c| (0, c)).collect(),
            Architecture::FullyConnected => (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .collect(),
        };
        edges.sort_unstable();
        edges.dedup();
        Ok(edges)
    }

    /// SWAP gates per interconnect round.
    pub fn swaps_per_round(&self, num_cores: usize) -> Result<usize> {
        self.edges(num_cores).map(|e| e.len())
    }

    fn check_cores(&self, num_cores: usize) -> Result<()> {
        match (self, num_cores) {
            (_, 0) => Err(Error::InvalidArchitecture("zero cores".into())),
            (Architecture::Monolithic, 1) => Ok(()),
            (Architecture::Monolithic, n) => Err(Error::InvalidArchitecture(format!(
                "monolithic requires exactly one core, got {n}"
            ))),
            (arch, 1) => Err(Error::InvalidArchitecture(format!(
                "{arch} requires at least two cores"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Architecture::Linear),
            "ring" => Ok(Architecture::Ring),
            "star" => Ok(Architecture::Star),
            "full" => Ok(Architecture::FullyConnected),
            "monolithic" => Ok(Architecture::Monolithic),
            other => Err(Error::InvalidArchitecture(format!(
                "unknown architecture {other:?}"
            ))),
        }
    }
}
