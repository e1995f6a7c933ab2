//! Dense statevector with in-place H, T, CNOT and SWAP kernels.
//!
//! Qubit `q` of an `n`-qubit register lives in bit `n - 1 - q` of the
//! amplitude index, so qubit 0 is the most significant bit and basis labels
//! read left to right as `|q0 q1 ... q(n-1)⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default ceiling on register width; 2^24 amplitudes is 256 MiB.
pub const MAX_QUBITS: usize = 24;

/// One of the four supported gates, addressed by global qubit index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    T(usize),
    Cnot { control: usize, target: usize },
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::T(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Swap(a, b) => vec![a, b],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::T(_) => "t",
            Gate::Cnot { .. } => "cnot",
            Gate::Swap(..) => "swap",
        }
    }

    /// Checks operand ranges and distinctness against a register width.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        match *self {
            Gate::Cnot { control, target } if control == target => {
                Err(Error::CoincidentOperands(control))
            }
            Gate::Swap(a, b) if a == b => Err(Error::CoincidentOperands(a)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0⟩` on `n` qubits, `1 <= n <= MAX_QUBITS`.
    pub fn new_zero_state(n: usize) -> Result<Self> {
        Self::new_zero_state_with_limit(n, MAX_QUBITS)
    }

    pub fn new_zero_state_with_limit(n: usize, max_qubits: usize) -> Result<Self> {
        if n == 0 || n > max_qubits {
            return Err(Error::QubitCount { n, max: max_qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes. The length must be a power of two; no
    /// normalization is imposed.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidSpec(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match gate {
            Gate::H(q) => self.hadamard(q),
            Gate::T(q) => self.phase_t(q),
            Gate::Cnot { control, target } => self.cnot(control, target),
            Gate::Swap(a, b) => self.swap(a, b),
        }
        Ok(())
    }

    pub fn apply_all<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    fn hadamard(&mut self, q: usize) {
        let stride = self.mask(q);
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }
        }
    }

    fn phase_t(&mut self, q: usize) {
        let stride = self.mask(q);
        let phase = Complex64::from_polar(1.0, FRAC_PI_4);
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            for a in &mut block[stride..] {
                *a *= phase;
            }
        }
    }

    fn cnot(&mut self, control: usize, target: usize) {
        let cmask = self.mask(control);
        let tmask = self.mask(target);
        for i in 0..self.amplitudes.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amplitudes.swap(i, i | tmask);
            }
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        let amask = self.mask(a);
        let bmask = self.mask(b);
        for i in 0..self.amplitudes.len() {
            if i & amask != 0 && i & bmask == 0 {
                self.amplitudes.swap(i, (i ^ amask) | bmask);
            }
        }
    }

    /// Born probabilities `|ψ_i|^2` in index order.
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        let probs: Vec<f64> = self.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(total));
        }
        Ok(probs)
    }
}
