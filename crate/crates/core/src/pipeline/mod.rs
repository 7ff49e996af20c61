//! The factoring loop, trace replay, and the collection-rate benchmark.

mod bench;
mod instance;
mod record;

pub use bench::{benchmark_collection_rate, write_curves_csv, CollectionCurve};
pub use instance::Instance;
pub use record::{read_record, read_trace, RunRecord, StepRecord, TraceStep};

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BabaiConfig, Permutation};
use crate::numtheory::{first_primes, is_probable_prime, perfect_power, FactorBase};
use crate::qaoa::{
    sample_uniform_with, sample_with, simulate_statevector, Bitstring, MixerSign, QaoaAngles,
};
use crate::relations::{try_factor, verify_sr_pair, FactorResult, RelationSet};

/// Where the bitstrings for each circuit come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    /// Exact statevector emulation of the compiled circuit.
    Emulator,
    /// Uniformly random bitstrings, ignoring the circuit.
    Uniform,
}

impl SamplerKind {
    pub fn label(self) -> &'static str {
        match self {
            SamplerKind::Emulator => "emulator",
            SamplerKind::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "emulator" => Ok(SamplerKind::Emulator),
            "uniform" => Ok(SamplerKind::Uniform),
            other => Err(Error::InvalidInput(format!("unknown sampler {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub modulus: BigUint,
    /// Lattice dimension, qubit count and size of the smaller factor base.
    pub n: usize,
    /// Size of the factor base used to test `u - v N` for smoothness.
    pub b2: usize,
    pub c: BigRational,
    pub delta: BigRational,
    pub shots_per_circuit: usize,
    pub angles: QaoaAngles,
    pub mixer: MixerSign,
    pub sampler: SamplerKind,
    pub seed: u64,
    pub max_circuits: usize,
    pub babai: BabaiConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            modulus: BigUint::from(1591u32),
            n: 6,
            b2: 11,
            c: BigRational::new(3.into(), 2.into()),
            delta: BigRational::new(3.into(), 4.into()),
            shots_per_circuit: 5,
            angles: QaoaAngles::REFERENCE,
            mixer: MixerSign::Minimizing,
            sampler: SamplerKind::Emulator,
            seed: 0,
            max_circuits: 200,
            babai: BabaiConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let quarter = BigRational::new(1.into(), 4.into());
        let checks = [
            (self.n >= 2, "n must be at least 2"),
            (self.b2 >= self.n, "b2 must be at least n"),
            (self.delta > quarter && self.delta < BigRational::one(), "delta must lie in (1/4, 1)"),
            (self.c > BigRational::zero(), "c must be positive"),
            (self.shots_per_circuit >= 1, "shots per circuit must be at least 1"),
            (self.max_circuits >= 1, "max circuits must be at least 1"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(Error::InvalidInput((*msg).into())),
            None => Ok(()),
        }
    }

    /// The lattice base and the smoothness base.
    pub fn bases(&self) -> Result<(FactorBase, FactorBase)> {
        let b2 = first_primes(self.b2)?;
        Ok((b2.prefix(self.n)?, b2))
    }

    pub fn modulus_int(&self) -> BigInt {
        BigInt::from(self.modulus.clone())
    }

    fn instance(&self, base: &FactorBase, sigma: Permutation) -> Result<Instance> {
        Instance::build(&self.modulus, base, &self.c, &self.delta, self.babai, sigma)
    }
}

/// Splits `N` without lattices when it is even, a perfect power, or has a factor-base prime.
///
/// Errors if `N < 4` or `N` is prime.
pub fn trivial_split(modulus: &BigUint, base: &FactorBase) -> Result<Option<FactorResult>> {
    if modulus < &BigUint::from(4u32) || is_probable_prime(modulus) {
        return Err(Error::InvalidInput(format!("{modulus} is not composite")));
    }
    let n = BigInt::from(modulus.clone());
    if let Some((root, _)) = perfect_power(modulus) {
        return Ok(FactorResult::from_divisor(&n, &root.into()));
    }
    Ok(std::iter::once(2)
        .chain(base.primes().iter().copied())
        .find(|&p| (modulus % p).is_zero())
        .and_then(|p| FactorResult::from_divisor(&n, &p.into())))
}

/// Shared state of a collection run.
struct Collector<'a> {
    modulus: BigInt,
    b1: &'a FactorBase,
    b2: &'a FactorBase,
    relations: RelationSet,
    record: RunRecord,
    solve: bool,
}

impl<'a> Collector<'a> {
    fn new(modulus: BigInt, b1: &'a FactorBase, b2: &'a FactorBase, solve: bool) -> Self {
        Self {
            modulus,
            b1,
            b2,
            relations: RelationSet::new(b2.size()),
            record: RunRecord::default(),
            solve,
        }
    }

    fn observe(&mut self, inst: &Instance, circuit: usize, bits: Bitstring) -> Result<()> {
        let (u, v) = inst.candidate(&bits, self.b1)?;
        let mut fresh = None;
        if !self.relations.contains(&u, &v) {
            if let Some(pair) = verify_sr_pair(&u, &v, &self.modulus, self.b2)? {
                self.relations.insert(pair);
                fresh = Some((u, v));
            }
        }
        if self.solve && fresh.is_some() && self.record.result.is_none() {
            self.record.result = try_factor(&self.relations, &self.modulus, self.b1, self.b2);
        }
        self.record.steps.push(StepRecord {
            step: self.record.steps.len() + 1,
            permutation: inst.permutation.clone(),
            circuit,
            bitstring: bits,
            sr_pair: fresh,
            n_pairs: self.relations.len(),
            factored: self.record.result.is_some(),
        });
        Ok(())
    }

    fn done(&self) -> bool {
        self.record.result.is_some()
    }
}

fn draw_shots<R: Rng + ?Sized>(
    config: &RunConfig,
    sampler: SamplerKind,
    inst: &Instance,
    rng: &mut R,
) -> Result<Vec<Bitstring>> {
    let shots = config.shots_per_circuit;
    match sampler {
        SamplerKind::Uniform => sample_uniform_with(config.n, shots, rng),
        SamplerKind::Emulator => match inst.circuit(&config.angles, config.mixer)? {
            Some(circuit) => sample_with(&simulate_statevector(&circuit)?, shots, rng),
            None => Ok(vec![Bitstring::zeros(config.n); shots]),
        },
    }
}

/// Runs the lattice-plus-sampling loop until `N` splits or the circuit budget is spent.
///
/// A budget exhausted without a split is not an error; the returned record
/// then has no result.
pub fn factor(config: &RunConfig) -> Result<RunRecord> {
    config.validate()?;
    let (b1, b2) = config.bases()?;
    if let Some(split) = trivial_split(&config.modulus, &b2)? {
        return Ok(RunRecord {
            steps: Vec::new(),
            result: Some(split),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut collector = Collector::new(config.modulus_int(), &b1, &b2, true);
    for circuit in 1..=config.max_circuits {
        let inst = config.instance(&b1, Permutation::random(config.n, &mut rng))?;
        for bits in draw_shots(config, config.sampler, &inst, &mut rng)? {
            collector.observe(&inst, circuit, bits)?;
            if collector.done() {
                return Ok(collector.record);
            }
        }
    }
    Ok(collector.record)
}

/// Re-derives sr-pairs and factoring flags from recorded measurements.
///
/// Sampling settings in `config` are ignored; steps are renumbered from 1.
pub fn replay(trace: &[TraceStep], config: &RunConfig) -> Result<RunRecord> {
    config.validate()?;
    let (b1, b2) = config.bases()?;
    let mut cache: HashMap<Permutation, Instance> = HashMap::new();
    let mut collector = Collector::new(config.modulus_int(), &b1, &b2, true);
    for (i, step) in trace.iter().enumerate() {
        if step.permutation.len() != config.n || step.bitstring.len() != config.n {
            return Err(Error::MalformedTrace {
                line: i + 1,
                message: format!("step does not have {} qubits", config.n),
            });
        }
        if !cache.contains_key(&step.permutation) {
            let inst = config.instance(&b1, step.permutation.clone())?;
            cache.insert(step.permutation.clone(), inst);
        }
        collector.observe(&cache[&step.permutation], step.circuit, step.bitstring.clone())?;
    }
    Ok(collector.record)
}

/// Normalized QUBOs from `count` random permutations, skipping degenerate ones.
pub fn training_set(config: &RunConfig, count: usize) -> Result<Vec<Vec<Vec<f64>>>> {
    config.validate()?;
    let (b1, _) = config.bases()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut set = Vec::with_capacity(count);
    let mut attempts = 0;
    while set.len() < count {
        attempts += 1;
        if attempts > 100 * count.max(1) {
            return Err(Error::InvalidInput("too many degenerate instances".into()));
        }
        let inst = config.instance(&b1, Permutation::random(config.n, &mut rng))?;
        if let Some(q) = inst.qubo {
            set.push(q.normalized_f64());
        }
    }
    Ok(set)
}
