//! Training of the shared `(gamma, beta)` by a (1+1) evolution strategy that
//! maximizes the worst-case `P_q / P_c` over a training set.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use super::statevector::{apply_single, r_phi};
use super::{qubo_to_circuit, simulate_statevector, MixerSign, QaoaAngles};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetric {
    /// Probability mass the circuit puts on optimal bitstrings.
    pub p_q: f64,
    /// Fraction of bitstrings that are optimal.
    pub p_c: f64,
    pub ratio: f64,
}

const TIE_TOLERANCE: f64 = 1e-9;

fn spin_energy(qnorm: &[Vec<f64>], index: usize) -> f64 {
    let n = qnorm.len();
    let z = |q: usize| if index >> (n - 1 - q) & 1 == 1 { -1.0 } else { 1.0 };
    let mut e = 0.0;
    for i in 0..n {
        e += qnorm[i][i] * z(i);
        for j in i + 1..n {
            e += qnorm[i][j] * z(i) * z(j);
        }
    }
    e
}

fn optimal_set(qnorm: &[Vec<f64>]) -> Vec<usize> {
    let dim = 1usize << qnorm.len();
    let energies: Vec<f64> = (0..dim).map(|k| spin_energy(qnorm, k)).collect();
    let min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let tol = TIE_TOLERANCE * (1.0 + min.abs());
    (0..dim).filter(|&k| energies[k] - min <= tol).collect()
}

fn metric(probabilities: impl Fn(usize) -> f64, optimal: &[usize], n: usize) -> TrainingMetric {
    let p_q: f64 = optimal.iter().map(|&k| probabilities(k)).sum();
    let p_c = optimal.len() as f64 / (1usize << n) as f64;
    TrainingMetric { p_q, p_c, ratio: p_q / p_c }
}

/// Precomputed circuit phases and optimal set of one training QUBO.
///
/// The phase layer of the compiled circuit multiplies basis state `b` by
/// `exp(i gamma phi(b))`, so `phi` is tabulated once and reused for every
/// trial angle.
#[derive(Debug, Clone)]
pub struct TrainingInstance {
    n: usize,
    phases: Vec<f64>,
    optimal: Vec<usize>,
}

impl TrainingInstance {
    pub fn from_normalized(qnorm: &[Vec<f64>]) -> Result<Self> {
        let n = qnorm.len();
        if n == 0 || qnorm.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("training QUBO must be square and nonempty".into()));
        }
        if n > super::MAX_QUBITS {
            return Err(Error::TooManyQubits { requested: n, limit: super::MAX_QUBITS });
        }
        let dim = 1usize << n;
        let phases = (0..dim)
            .map(|k| {
                let bit = |q: usize| (k >> (n - 1 - q) & 1) as f64;
                let mut phi = 0.0;
                for i in 0..n {
                    phi += qnorm[i][i] / 4.0 * bit(i);
                    for j in i + 1..n {
                        let zz = (1.0 - 2.0 * bit(i)) * (1.0 - 2.0 * bit(j));
                        phi -= qnorm[i][j] / 8.0 * zz;
                    }
                }
                phi
            })
            .collect();
        Ok(Self { n, phases, optimal: optimal_set(qnorm) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn optimal(&self) -> &[usize] {
        &self.optimal
    }

    pub fn evaluate(&self, angles: &QaoaAngles, mixer: MixerSign) -> TrainingMetric {
        let amp = (1.0 / (1usize << self.n) as f64).sqrt();
        let mut state: Vec<Complex64> = self
            .phases
            .iter()
            .map(|&phi| Complex64::from_polar(amp, angles.gamma * phi))
            .collect();
        let rx = r_phi(0.0, mixer.rx_angle(angles.beta));
        for q in 1..=self.n {
            apply_single(&mut state, self.n, q, rx);
        }
        metric(|k| state[k].norm_sqr(), &self.optimal, self.n)
    }
}

/// `P_q / P_c` computed through the compiled circuit and the full emulator.
pub fn ratio_via_circuit(qnorm: &[Vec<f64>], angles: &QaoaAngles, mixer: MixerSign) -> Result<TrainingMetric> {
    let dist = simulate_statevector(&qubo_to_circuit(qnorm, angles, mixer)?)?;
    Ok(metric(|k| dist.probabilities()[k], &optimal_set(qnorm), qnorm.len()))
}

/// Search schedule of the evolution strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingConfig {
    pub seed: u64,
    pub initial_sigma: f64,
    /// Consecutive rejections before the mutation scale is halved.
    pub patience: usize,
    pub restarts: usize,
    pub max_evaluations_per_restart: usize,
    pub min_sigma: f64,
    pub mixer: MixerSign,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            initial_sigma: 0.1,
            patience: 20,
            restarts: 5,
            max_evaluations_per_restart: 600,
            min_sigma: 1e-4,
            mixer: MixerSign::Minimizing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainingOutcome {
    pub angles: QaoaAngles,
    pub min_ratio: f64,
    /// Worst-case ratio at the first random starting point.
    pub initial_min_ratio: f64,
    pub evaluations: usize,
}

fn min_ratio(set: &[TrainingInstance], angles: &QaoaAngles, mixer: MixerSign) -> f64 {
    set.iter()
        .map(|inst| inst.evaluate(angles, mixer).ratio)
        .fold(f64::INFINITY, f64::min)
}

/// Maximizes `min over set of P_q / P_c` over `(gamma, beta)`.
pub fn train_fixed_angles(training_set: &[Vec<Vec<f64>>], config: &TrainingConfig) -> Result<TrainingOutcome> {
    if training_set.is_empty() {
        return Err(Error::InvalidInput("empty training set".into()));
    }
    let set = training_set
        .iter()
        .map(|q| TrainingInstance::from_normalized(q))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let step = Normal::new(0.0, 1.0).expect("unit normal");
    let mut evaluations = 0;
    let mut best: Option<(QaoaAngles, f64)> = None;
    let mut initial = None;

    for _ in 0..config.restarts.max(1) {
        let mut current = QaoaAngles::new(
            rng.random_range(0.0..std::f64::consts::TAU),
            rng.random_range(0.0..std::f64::consts::PI),
        );
        let mut score = min_ratio(&set, &current, config.mixer);
        evaluations += 1;
        initial.get_or_insert(score);
        let mut sigma = config.initial_sigma;
        let mut rejections = 0;
        for _ in 0..config.max_evaluations_per_restart {
            if sigma < config.min_sigma {
                break;
            }
            let proposal = QaoaAngles::new(
                current.gamma + sigma * step.sample(&mut rng),
                current.beta + sigma * step.sample(&mut rng),
            );
            let s = min_ratio(&set, &proposal, config.mixer);
            evaluations += 1;
            if s > score {
                current = proposal;
                score = s;
                rejections = 0;
            } else {
                rejections += 1;
                if rejections >= config.patience {
                    sigma /= 2.0;
                    rejections = 0;
                }
            }
        }
        if best.is_none_or(|(_, b)| score > b) {
            best = Some((current, score));
        }
    }

    let (angles, min_ratio) = best.expect("at least one restart");
    Ok(TrainingOutcome {
        // the mixer only changes by a global phase when beta moves by pi
        angles: QaoaAngles::new(angles.gamma, angles.beta.rem_euclid(std::f64::consts::PI)),
        min_ratio,
        initial_min_ratio: initial.expect("at least one evaluation"),
        evaluations,
    })
}
