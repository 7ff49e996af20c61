use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bitstring, Distribution};
use crate::error::{Error, Result};

/// Draws `shots` i.i.d. bitstrings from `dist`.
pub fn sample_with<R: Rng + ?Sized>(dist: &Distribution, shots: usize, rng: &mut R) -> Result<Vec<Bitstring>> {
    if shots == 0 {
        return Err(Error::InvalidInput("at least one shot is required".into()));
    }
    let index = WeightedIndex::new(dist.probabilities())
        .map_err(|e| Error::InvalidInput(format!("unusable distribution: {e}")))?;
    Ok((0..shots)
        .map(|_| Bitstring::from_index(index.sample(rng), dist.n()))
        .collect())
}

/// Seeded form of [`sample_with`].
pub fn sample(dist: &Distribution, shots: usize, seed: u64) -> Result<Vec<Bitstring>> {
    sample_with(dist, shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Draws `shots` bitstrings uniformly from `{0,1}^n`.
pub fn sample_uniform_with<R: Rng + ?Sized>(n: usize, shots: usize, rng: &mut R) -> Result<Vec<Bitstring>> {
    if shots == 0 {
        return Err(Error::InvalidInput("at least one shot is required".into()));
    }
    if n >= usize::BITS as usize {
        return Err(Error::InvalidInput(format!("{n} bits do not fit an index")));
    }
    Ok((0..shots)
        .map(|_| Bitstring::from_index(rng.random_range(0..1usize << n), n))
        .collect())
}

pub fn sample_uniform(n: usize, shots: usize, seed: u64) -> Result<Vec<Bitstring>> {
    sample_uniform_with(n, shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass() {
        let mut p = vec![0.0; 8];
        p[5] = 1.0;
        let d = Distribution::new(3, p).unwrap();
        let s = sample(&d, 50, 1).unwrap();
        assert!(s.iter().all(|b| b.to_string() == "101"));
    }

    #[test]
    fn seeded_runs_repeat() {
        let d = Distribution::new(2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(sample(&d, 100, 9).unwrap(), sample(&d, 100, 9).unwrap());
        assert_eq!(sample_uniform(5, 100, 9).unwrap(), sample_uniform(5, 100, 9).unwrap());
        assert_ne!(sample_uniform(5, 100, 9).unwrap(), sample_uniform(5, 100, 10).unwrap());
    }

    // Binomial bound: each count stays within 4 standard deviations of shots / 2^n.
    #[test]
    fn uniform_frequencies() {
        let (n, shots) = (4, 100_000);
        let p = 1.0 / 16.0;
        let sd = (shots as f64 * p * (1.0 - p)).sqrt();
        for draws in [
            sample_uniform(n, shots, 3).unwrap(),
            sample(&Distribution::uniform(n), shots, 3).unwrap(),
        ] {
            let mut counts = vec![0usize; 16];
            for b in &draws {
                counts[b.index()] += 1;
            }
            for c in counts {
                assert!((c as f64 - shots as f64 * p).abs() < 4.0 * sd, "{c}");
            }
        }
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(sample_uniform(3, 0, 1).is_err());
    }
}
