use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{draw_shots, Collector, RunConfig, SamplerKind};
use crate::error::Result;
use crate::lattice::Permutation;

/// Unique sr-pairs against shots spent, averaged over independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectionCurve {
    pub sampler: SamplerKind,
    pub trials: usize,
    /// `mean_pairs[k]` is the mean count after `k + 1` shots.
    pub mean_pairs: Vec<f64>,
    /// Per trial, the shot at which the count first reached `b2 + 1`.
    pub shots_to_threshold: Vec<Option<usize>>,
}

impl CollectionCurve {
    /// Mean and standard error of shots to threshold, over trials that got there.
    pub fn threshold_stats(&self) -> Option<(f64, f64)> {
        let xs: Vec<f64> = self.shots_to_threshold.iter().flatten().map(|&s| s as f64).collect();
        if xs.is_empty() {
            return None;
        }
        let k = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / k;
        let var = if xs.len() > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        Some((mean, (var / k).sqrt()))
    }

    /// Number of trials that reached the threshold within the shot budget.
    pub fn reached(&self) -> usize {
        self.shots_to_threshold.iter().flatten().count()
    }
}

/// Pair count after every shot of one trial, plus the threshold crossing.
fn collect_trial(
    config: &RunConfig,
    sampler: SamplerKind,
    seed: u64,
    shot_budget: usize,
) -> Result<(Vec<usize>, Option<usize>)> {
    let (b1, b2) = config.bases()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut collector = Collector::new(config.modulus_int(), &b1, &b2, false);
    let mut counts = Vec::with_capacity(shot_budget);
    let mut circuit = 0;
    while counts.len() < shot_budget {
        circuit += 1;
        let inst = config.instance(&b1, Permutation::random(config.n, &mut rng))?;
        for bits in draw_shots(config, sampler, &inst, &mut rng)? {
            if counts.len() == shot_budget {
                break;
            }
            collector.observe(&inst, circuit, bits)?;
            counts.push(collector.relations.len());
        }
    }
    let threshold = collector.relations.threshold();
    let crossing = counts.iter().position(|&c| c >= threshold).map(|i| i + 1);
    Ok((counts, crossing))
}

/// Collection curves for each sampler over `trials` seeded runs of `shot_budget` shots.
///
/// Trial `t` of sampler `k` is seeded from `config.seed`, `k` and `t` only,
/// so results do not depend on scheduling.
pub fn benchmark_collection_rate(
    config: &RunConfig,
    samplers: &[SamplerKind],
    trials: usize,
    shot_budget: usize,
) -> Result<Vec<CollectionCurve>> {
    config.validate()?;
    if trials == 0 || shot_budget == 0 {
        return Err(crate::Error::InvalidInput("trials and shot budget must be positive".into()));
    }
    samplers
        .iter()
        .enumerate()
        .map(|(k, &sampler)| {
            let runs = (0..trials)
                .into_par_iter()
                .map(|t| collect_trial(config, sampler, trial_seed(config.seed, k, t), shot_budget))
                .collect::<Result<Vec<_>>>()?;
            let mut mean_pairs = vec![0.0; shot_budget];
            for (counts, _) in &runs {
                for (m, &c) in mean_pairs.iter_mut().zip(counts) {
                    *m += c as f64 / trials as f64;
                }
            }
            Ok(CollectionCurve {
                sampler,
                trials,
                mean_pairs,
                shots_to_threshold: runs.into_iter().map(|(_, s)| s).collect(),
            })
        })
        .collect()
}

fn trial_seed(seed: u64, sampler: usize, trial: usize) -> u64 {
    // splitmix64 finalizer over the packed indices
    let mut z = seed ^ ((sampler as u64) << 48) ^ (trial as u64);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    sampler: &'a str,
    shot_index: usize,
    mean_pairs: f64,
    trials: usize,
}

/// Writes `sampler,shot_index,mean_pairs,trials` rows, shot index starting at 1.
pub fn write_curves_csv<W: Write>(curves: &[CollectionCurve], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for curve in curves {
        for (i, &m) in curve.mean_pairs.iter().enumerate() {
            out.serialize(CsvRow {
                sampler: curve.sampler.label(),
                shot_index: i + 1,
                mean_pairs: m,
                trials: curve.trials,
            })?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_are_deterministic_and_monotone() {
        let cfg = RunConfig { seed: 3, ..RunConfig::default() };
        let a = benchmark_collection_rate(&cfg, &[SamplerKind::Uniform], 1, 40).unwrap();
        let b = benchmark_collection_rate(&cfg, &[SamplerKind::Uniform], 1, 40).unwrap();
        assert_eq!(a, b);
        assert!(a[0].mean_pairs.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(a[0].mean_pairs.len(), 40);
    }

    #[test]
    fn csv_layout() {
        let curve = CollectionCurve {
            sampler: SamplerKind::Emulator,
            trials: 2,
            mean_pairs: vec![0.0, 0.5],
            shots_to_threshold: vec![None, None],
        };
        let mut buf = Vec::new();
        write_curves_csv(&[curve], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "sampler,shot_index,mean_pairs,trials\nemulator,1,0.0,2\nemulator,2,0.5,2\n"
        );
    }

    #[test]
    fn threshold_statistics() {
        let curve = CollectionCurve {
            sampler: SamplerKind::Uniform,
            trials: 3,
            mean_pairs: vec![],
            shots_to_threshold: vec![Some(10), Some(20), None],
        };
        let (mean, se) = curve.threshold_stats().unwrap();
        assert_eq!(mean, 15.0);
        assert!((se - 5.0).abs() < 1e-12);
        assert_eq!(curve.reached(), 2);
    }
}
