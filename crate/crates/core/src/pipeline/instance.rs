use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::{
    babai, build_prime_lattice, build_qubo, lll_reduce, BabaiConfig, BabaiResult, Permutation,
    PrimeLattice, QuboProblem, ReducedBasis,
};
use crate::numtheory::FactorBase;
use crate::qaoa::{qubo_to_circuit, Bitstring, CircuitIR, MixerSign, QaoaAngles};
use crate::relations::{bitstring_to_candidate, exponents_to_uv};

/// Everything derived from one permutation before any sampling happens.
#[derive(Debug, Clone)]
pub struct Instance {
    pub permutation: Permutation,
    pub lattice: PrimeLattice,
    pub reduced: ReducedBasis,
    pub babai: BabaiResult,
    /// `None` when every coefficient vanishes, so no direction is preferred.
    pub qubo: Option<QuboProblem>,
}

impl Instance {
    pub fn build(
        modulus: &BigUint,
        base: &FactorBase,
        c: &BigRational,
        delta: &BigRational,
        babai_config: BabaiConfig,
        permutation: Permutation,
    ) -> Result<Self> {
        let lattice = build_prime_lattice(modulus, base, c, &permutation)?;
        let reduced = lll_reduce(&lattice.basis, delta)?;
        let babai = babai(&reduced, &lattice.target, babai_config)?;
        let qubo = match build_qubo(&babai, &reduced) {
            Ok(q) => Some(q),
            Err(Error::DegenerateQubo(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            permutation,
            lattice,
            reduced,
            babai,
            qubo,
        })
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn circuit(&self, angles: &QaoaAngles, mixer: MixerSign) -> Result<Option<CircuitIR>> {
        self.qubo
            .as_ref()
            .map(|q| qubo_to_circuit(&q.normalized_f64(), angles, mixer))
            .transpose()
    }

    /// The `(u, v)` candidate encoded by `x`.
    pub fn candidate(&self, x: &Bitstring, base: &FactorBase) -> Result<(BigInt, BigInt)> {
        let e = bitstring_to_candidate(x, &self.babai, &self.reduced, &self.lattice)?;
        exponents_to_uv(&e, base)
    }
}
