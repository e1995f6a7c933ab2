//! Statevector simulation of random G3 circuits (CNOT, H, T) distributed
//! over several cores joined by SWAP interconnects, and the
//! majorization-based complexity metrics used to benchmark them.
//!
//! * [`statevector`]: dense amplitudes and gate kernels.
//! * [`topology`]: core partitions and architecture edge sets.
//! * [`circuit`]: reproducible multicore gate streams and checkpointed runs.
//! * [`complexity`]: Lorenz curves, fluctuation curves, Haar reference,
//!   `D_H` and `ID_H`.
//! * [`runner`]: GPC sweeps, CSV output and the `mcq` CLI.

pub mod circuit;
pub mod complexity;
pub mod error;
pub mod runner;
pub mod seed;
pub mod statevector;
pub mod topology;

pub use error::{Error, Result};
