//! Majorization-based complexity metrics.
//!
//! Output distributions are compared through their Lorenz curves (prefix
//! sums of the probabilities sorted in non-increasing order). An ensemble
//! of circuits is summarized by the per-prefix standard deviation of those
//! curves, and its distance to the same statistic for Haar-random states
//! (`D_H`) measures how far the ensemble is from maximal complexity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seed;

const NORMALIZATION_TOL: f64 = 1e-8;
// Cumulant comparisons absorb summation round-off.
const MAJORIZATION_TOL: f64 = 1e-12;

/// Cumulants `F(k)`, `k = 1..=M`, of a probability vector sorted in
/// non-increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct LorenzCurve {
    cumulants: Vec<f64>,
}

impl LorenzCurve {
    pub fn dimension(&self) -> usize {
        self.cumulants.len()
    }

    pub fn cumulants(&self) -> &[f64] {
        &self.cumulants
    }
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty vector".into()));
    }
    if let Some(i) = p.iter().position(|&x| x.is_nan() || x < 0.0 || !x.is_finite()) {
        return Err(Error::InvalidDistribution(format!(
            "entry {i} is {} (must be finite and >= 0)",
            p[i]
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution(format!("sums to {total}")));
    }
    Ok(())
}

pub fn lorenz(p: &[f64]) -> Result<LorenzCurve> {
    check_distribution(p)?;
    let mut sorted = p.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    for x in &mut sorted {
        acc += *x;
        *x = acc;
    }
    Ok(LorenzCurve { cumulants: sorted })
}

/// `true` iff `p ≺ q`: every proper prefix cumulant of `q` is at least the
/// corresponding one of `p`. Both inputs must be normalized.
pub fn majorizes(q: &[f64], p: &[f64]) -> Result<bool> {
    if q.len() != p.len() {
        return Err(Error::DimensionMismatch {
            left: q.len(),
            right: p.len(),
        });
    }
    let (fq, fp) = (lorenz(q)?, lorenz(p)?);
    let m = fq.dimension();
    Ok(fq.cumulants[..m - 1]
        .iter()
        .zip(&fp.cumulants[..m - 1])
        .all(|(a, b)| *a >= *b - MAJORIZATION_TOL))
}

/// Per-prefix population standard deviation of an ensemble of Lorenz
/// curves.
#[derive(Clone, Debug, PartialEq)]
pub struct FluctuationCurve {
    values: Vec<f64>,
}

impl FluctuationCurve {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|&v| v.is_nan() || v < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "fluctuation entry {i} is negative or NaN"
            )));
        }
        Ok(Self { values })
    }

    /// Divisor is the ensemble size. Accumulated in ensemble order, so the
    /// result depends only on the order of `curves`.
    pub fn from_lorenz(curves: &[LorenzCurve]) -> Result<Self> {
        if curves.len() < 2 {
            return Err(Error::EnsembleTooSmall(curves.len()));
        }
        let m = curves[0].dimension();
        if let Some(c) = curves.iter().find(|c| c.dimension() != m) {
            return Err(Error::DimensionMismatch {
                left: m,
                right: c.dimension(),
            });
        }
        // Deviations are taken from the first member so that identical
        // cumulants give exactly zero.
        let size = curves.len() as f64;
        let shift = &curves[0].cumulants;
        let mut mean = vec![0.0; m];
        for c in curves {
            for ((acc, f), s) in mean.iter_mut().zip(&c.cumulants).zip(shift) {
                *acc += f - s;
            }
        }
        mean.iter_mut().for_each(|x| *x /= size);
        let mut var = vec![0.0; m];
        for c in curves {
            for (((acc, f), s), mu) in var.iter_mut().zip(&c.cumulants).zip(shift).zip(&mean) {
                let d = f - s - mu;
                *acc += d * d;
            }
        }
        Ok(Self {
            values: var.into_iter().map(|v| (v / size).sqrt()).collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn fluctuation_curve<P: AsRef<[f64]>>(ensemble: &[P]) -> Result<FluctuationCurve> {
    if ensemble.len() < 2 {
        return Err(Error::EnsembleTooSmall(ensemble.len()));
    }
    let curves = ensemble
        .iter()
        .map(|p| lorenz(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    FluctuationCurve::from_lorenz(&curves)
}

/// Probability vector of one Haar-random pure state on `n` qubits:
/// normalized i.i.d. standard complex Gaussian amplitudes.
pub fn haar_state_probabilities(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let dim = 1usize << n;
    let mut p: Vec<f64> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            re * re + im * im
        })
        .collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    p
}

/// `num_samples` Haar-state probability vectors. Sample `i` draws from its
/// own stream derived from `(seed, i)`, so the result does not depend on
/// how the work is scheduled.
pub fn haar_ensemble(n: usize, num_samples: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if n == 0 || n > crate::statevector::MAX_QUBITS {
        return Err(Error::QubitCount {
            n,
            max: crate::statevector::MAX_QUBITS,
        });
    }
    Ok((0..num_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(seed, &[n as u64, i as u64]));
            haar_state_probabilities(n, &mut rng)
        })
        .collect())
}

pub fn haar_reference(n: usize, num_samples: usize, seed: u64) -> Result<FluctuationCurve> {
    if num_samples < 2 {
        return Err(Error::EnsembleTooSmall(num_samples));
    }
    let curves = haar_ensemble(n, num_samples, seed)?
        .par_iter()
        .map(|p| lorenz(p))
        .collect::<Result<Vec<_>>>()?;
    FluctuationCurve::from_lorenz(&curves)
}

/// Euclidean distance between two fluctuation curves (`D_H`).
pub fn distance_to_haar(circuit: &FluctuationCurve, haar: &FluctuationCurve) -> Result<f64> {
    if circuit.dimension() != haar.dimension() {
        return Err(Error::DimensionMismatch {
            left: circuit.dimension(),
            right: haar.dimension(),
        });
    }
    Ok(circuit
        .values
        .iter()
        .zip(&haar.values)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Trapezoidal integral of `(gate_count, D_H)` points over
/// `[first, last]` gate count (`ID_H`).
pub fn integrated_dh(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if let Some(i) = points.windows(2).position(|w| w[0].0.partial_cmp(&w[1].0) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::UnsortedAbscissae(i + 1));
    }
    Ok(points
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn assert_slice(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn lorenz_examples() {
        assert_slice(
            lorenz(&[0.25; 4]).unwrap().cumulants(),
            &[0.25, 0.5, 0.75, 1.0],
        );
        assert_slice(
            lorenz(&[1.0, 0.0, 0.0, 0.0]).unwrap().cumulants(),
            &[1.0; 4],
        );
        assert_slice(
            lorenz(&[0.2, 0.5, 0.3]).unwrap().cumulants(),
            &[0.5, 0.8, 1.0],
        );
    }

    #[test]
    fn lorenz_rejects_bad_input() {
        assert!(lorenz(&[0.5, 0.6]).is_err());
        assert!(lorenz(&[1.5, -0.5]).is_err());
        assert!(lorenz(&[f64::NAN, 1.0]).is_err());
        assert!(lorenz(&[]).is_err());
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[0.75, 0.25, 0.0, 0.0], &[0.5, 0.5, 0.0, 0.0]).unwrap());
        let q = [0.6, 0.1, 0.3];
        let p = [0.5, 0.4, 0.1];
        assert!(majorizes(&q, &q).unwrap());
        assert!(majorizes(&q, &p).unwrap());
        assert!(!majorizes(&p, &q).unwrap());
        assert!(matches!(
            majorizes(&[1.0], &[0.5, 0.5]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fluctuation_examples() {
        let same = vec![vec![0.7, 0.2, 0.1]; 5];
        assert!(fluctuation_curve(&same)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));

        let two = [vec![0.5, 0.5], vec![0.7, 0.3]];
        let c = fluctuation_curve(&two).unwrap();
        assert_abs_diff_eq!(c.values()[0], 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(c.values()[1], 0.0, epsilon = 1e-12);

        assert!(matches!(
            fluctuation_curve::<Vec<f64>>(&[]),
            Err(Error::EnsembleTooSmall(0))
        ));
        assert!(matches!(
            fluctuation_curve(&[vec![1.0]]),
            Err(Error::EnsembleTooSmall(1))
        ));
        assert!(fluctuation_curve(&[vec![1.0], vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn distance_examples() {
        let a = FluctuationCurve::from_values(vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(distance_to_haar(&a, &a).unwrap(), 0.0);
        let b = FluctuationCurve::from_values(vec![0.1, 0.3, 0.3]).unwrap();
        assert_abs_diff_eq!(distance_to_haar(&a, &b).unwrap(), 0.1, epsilon = 1e-12);

        let x = FluctuationCurve::from_values(vec![0.05; 4096]).unwrap();
        let y = FluctuationCurve::from_values(vec![0.08; 4096]).unwrap();
        assert_abs_diff_eq!(distance_to_haar(&x, &y).unwrap(), 1.92, epsilon = 1e-12);

        assert!(distance_to_haar(&a, &x).is_err());
        assert!(FluctuationCurve::from_values(vec![-0.1]).is_err());
    }

    #[test]
    fn integration_examples() {
        let c = 0.37;
        let flat: Vec<(f64, f64)> = (2..=20).map(|i| (100.0 * i as f64, c)).collect();
        assert_abs_diff_eq!(integrated_dh(&flat).unwrap(), c * 1800.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            integrated_dh(&[(200.0, 1.0), (2000.0, 0.0)]).unwrap(),
            900.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            integrated_dh(&[(200.0, 4.0), (300.0, 2.0), (400.0, 1.0)]).unwrap(),
            450.0,
            epsilon = 1e-12
        );
        assert!(matches!(
            integrated_dh(&[(1.0, 1.0)]),
            Err(Error::TooFewPoints(1))
        ));
        assert!(matches!(
            integrated_dh(&[(1.0, 1.0), (1.0, 2.0)]),
            Err(Error::UnsortedAbscissae(1))
        ));
        assert!(integrated_dh(&[(2.0, 1.0), (1.0, 2.0)]).is_err());
    }

    #[test]
    fn haar_determinism() {
        assert_eq!(
            haar_reference(4, 50, 9).unwrap(),
            haar_reference(4, 50, 9).unwrap()
        );
        assert_ne!(
            haar_reference(4, 50, 9).unwrap(),
            haar_reference(4, 50, 10).unwrap()
        );
        assert!(haar_reference(4, 1, 0).is_err());
        assert!(haar_reference(0, 10, 0).is_err());
    }

    #[test]
    fn haar_curve_ends_at_zero() {
        let c = haar_reference(5, 40, 1).unwrap();
        assert_eq!(c.dimension(), 32);
        assert!(c.values()[31] < 1e-12);
        assert!(c.values().iter().all(|&v| v >= 0.0));
    }

    fn distribution(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..1.0, len).prop_filter_map("nonzero mass", |w| {
            let total: f64 = w.iter().sum();
            (total > 1e-3).then(|| w.iter().map(|x| x / total).collect())
        })
    }

    proptest! {
        #[test]
        fn lorenz_shape(p in distribution(16)) {
            let f = lorenz(&p).unwrap();
            let c = f.cumulants();
            prop_assert!((c[15] - 1.0).abs() < 1e-10);
            for w in c.windows(2) {
                prop_assert!(w[1] >= w[0]);
            }
            for w in c.windows(3) {
                prop_assert!(w[1] - w[0] + 1e-15 >= w[2] - w[1]);
            }
        }

        #[test]
        fn chain_between_uniform_and_delta(p in distribution(8)) {
            let mut delta = vec![0.0; 8];
            delta[0] = 1.0;
            prop_assert!(majorizes(&delta, &p).unwrap());
            prop_assert!(majorizes(&p, &[0.125; 8]).unwrap());
        }

        #[test]
        fn antisymmetry(p in distribution(6), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
            let q: Vec<f64> = perm.iter().map(|&i| p[i]).collect();
            prop_assert!(majorizes(&p, &q).unwrap() && majorizes(&q, &p).unwrap());
        }

        #[test]
        fn mutual_majorization_means_equal_sorted(p in distribution(5), q in distribution(5)) {
            if majorizes(&p, &q).unwrap() && majorizes(&q, &p).unwrap() {
                let (fp, fq) = (lorenz(&p).unwrap(), lorenz(&q).unwrap());
                for (a, b) in fp.cumulants().iter().zip(fq.cumulants()) {
                    prop_assert!((a - b).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn fluctuation_permutation_invariant(
            ens in prop::collection::vec(distribution(8), 2..8),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            let mut shuffled = ens.clone();
            shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let a = fluctuation_curve(&ens).unwrap();
            let b = fluctuation_curve(&shuffled).unwrap();
            for (x, y) in a.values().iter().zip(b.values()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn distance_is_a_metric(
            a in prop::collection::vec(0.0f64..1.0, 32),
            b in prop::collection::vec(0.0f64..1.0, 32),
            c in prop::collection::vec(0.0f64..1.0, 32),
        ) {
            let (a, b, c) = (
                FluctuationCurve::from_values(a).unwrap(),
                FluctuationCurve::from_values(b).unwrap(),
                FluctuationCurve::from_values(c).unwrap(),
            );
            let ab = distance_to_haar(&a, &b).unwrap();
            prop_assert_eq!(distance_to_haar(&a, &a).unwrap(), 0.0);
            prop_assert!((ab - distance_to_haar(&b, &a).unwrap()).abs() < 1e-15);
            prop_assert!(ab <= distance_to_haar(&a, &c).unwrap() + distance_to_haar(&c, &b).unwrap() + 1e-12);
        }

        #[test]
        fn integration_linear_and_additive(
            ys in prop::collection::vec(0.0f64..10.0, 3..12),
            zs in prop::collection::vec(0.0f64..10.0, 12),
            alpha in -3.0f64..3.0,
            split in 1usize..10,
        ) {
            let xs: Vec<f64> = (0..ys.len()).map(|i| 200.0 + 100.0 * i as f64).collect();
            let f: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
            let g: Vec<(f64, f64)> = xs.iter().copied().zip(zs.iter().copied()).collect();
            let h: Vec<(f64, f64)> = xs.iter().zip(ys.iter().zip(&zs)).map(|(&x, (&y, &z))| (x, y + alpha * z)).collect();
            let lhs = integrated_dh(&h).unwrap();
            let rhs = integrated_dh(&f).unwrap() + alpha * integrated_dh(&g).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);

            let k = split.min(f.len() - 2) + 1;
            let whole = integrated_dh(&f).unwrap();
            let parts = integrated_dh(&f[..k]).unwrap() + integrated_dh(&f[k - 1..]).unwrap();
            prop_assert!((whole - parts).abs() < 1e-9);
        }
    }
}
