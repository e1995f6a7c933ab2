//! Test-only oracles, independent of the library's kernels and metrics.

#![allow(dead_code)]

use mcq_core::statevector::Gate;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

fn scale(a: &Matrix, s: f64) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn matvec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Kronecker product over `n` sites; `ops` gives the 2x2 factor for the
/// listed qubits, identity elsewhere. Qubit 0 is the leftmost factor.
fn embed(n: usize, ops: &[(usize, Matrix)]) -> Matrix {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for q in 0..n {
        let factor = ops
            .iter()
            .find(|(site, _)| *site == q)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| identity(2));
        out = kron(&out, &factor);
    }
    out
}

fn m2(a: [[Complex64; 2]; 2]) -> Matrix {
    a.iter().map(|r| r.to_vec()).collect()
}

pub fn dense_gate(n: usize, gate: Gate) -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = m2([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]);
    let t = m2([
        [c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)],
    ]);
    let x = m2([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
    let y = m2([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]);
    let z = m2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]);
    let p0 = m2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
    let p1 = m2([[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
    match gate {
        Gate::H(q) => embed(n, &[(q, h)]),
        Gate::T(q) => embed(n, &[(q, t)]),
        Gate::Cnot { control, target } => add(
            &embed(n, &[(control, p0)]),
            &embed(n, &[(control, p1), (target, x)]),
        ),
        Gate::Swap(a, b) => {
            let mut sum = embed(n, &[]);
            for p in [x, y, z] {
                sum = add(&sum, &embed(n, &[(a, p.clone()), (b, p)]));
            }
            scale(&sum, 0.5)
        }
    }
}

pub fn dense_zero(n: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    v
}

/// Evolves `|0..0⟩` by explicit matrix-vector products.
pub fn dense_evolve(n: usize, gates: &[Gate]) -> Vec<Complex64> {
    gates
        .iter()
        .fold(dense_zero(n), |v, g| matvec(&dense_gate(n, *g), &v))
}

/// Uniformly random gate over the whole register.
pub fn random_gate(n: usize, rng: &mut impl Rng) -> Gate {
    let pair = |rng: &mut dyn rand::RngCore| {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        (a, b)
    };
    match rng.gen_range(0..4) {
        0 => Gate::H(rng.gen_range(0..n)),
        1 => Gate::T(rng.gen_range(0..n)),
        2 => {
            let (control, target) = pair(rng);
            Gate::Cnot { control, target }
        }
        _ => {
            let (a, b) = pair(rng);
            Gate::Swap(a, b)
        }
    }
}

pub fn random_sequence(n: usize, len: usize, seed: u64) -> Vec<Gate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| random_gate(n, &mut rng)).collect()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Std of Lorenz cumulants straight from the moment formula
/// `sqrt(<F^2> - <F>^2)`, with its own sort and prefix sum.
pub fn moment_form_std(ensemble: &[Vec<f64>]) -> Vec<f64> {
    let m = ensemble[0].len();
    let size = ensemble.len() as f64;
    let cumulants: Vec<Vec<f64>> = ensemble
        .iter()
        .map(|p| {
            let mut s = p.clone();
            s.sort_by(|a, b| b.partial_cmp(a).unwrap());
            (0..m).map(|k| s[..=k].iter().sum()).collect()
        })
        .collect();
    (0..m)
        .map(|k| {
            let first: f64 = cumulants.iter().map(|f| f[k]).sum::<f64>() / size;
            let second: f64 = cumulants.iter().map(|f| f[k] * f[k]).sum::<f64>() / size;
            (second - first * first).max(0.0).sqrt()
        })
        .collect()
}
