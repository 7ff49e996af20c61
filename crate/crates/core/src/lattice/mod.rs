//! Prime lattice construction, LLL reduction, Babai's nearest-plane step and
//! the rounding-direction QUBO.
//!
//! The lattice for `N` over a base of `n` primes has `n` column vectors of
//! dimension `n + 1`. Column `i` carries the diagonal weight `f(i)` in row `i`
//! and `round(10^c ln p_i)` in the last row; the target vector is zero except
//! for `round(10^c ln N)` in the last row.

mod babai;
mod lll;
pub mod precision;
mod qubo;

pub use babai::{
    babai, babai_nearest_plane, babai_nearest_plane_ceil, babai_rounding, BabaiConfig,
    BabaiResult, BabaiVariant, CoefficientRounding,
};
pub use lll::{gram_schmidt, lll_reduce, GramSchmidt, ReducedBasis};
pub use qubo::{build_qubo, QuboProblem};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::FactorBase;

/// A permutation of `1..=n`, stored one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        let mut seen = vec![false; n + 1];
        for &s in &sigma {
            if s == 0 || s > n || seen[s] {
                return Err(Error::InvalidInput(format!(
                    "{sigma:?} is not a permutation of 1..={n}"
                )));
            }
            seen[s] = true;
        }
        Ok(Self(sigma))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Uniformly random permutation of `1..=n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(rng);
        Self(sigma)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Diagonal weight `f(i) = ceil(sigma(i) / 2)` for zero-based `i`.
    pub fn weight(&self, i: usize) -> u64 {
        self.0[i].div_ceil(2) as u64
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// CVP instance: basis columns, target, and the parameters used to build them.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeLattice {
    /// `n` column vectors of dimension `n + 1`.
    pub basis: Vec<Vec<BigInt>>,
    pub target: Vec<BigInt>,
    pub weights: Vec<u64>,
    pub c: BigRational,
}

impl PrimeLattice {
    pub fn n(&self) -> usize {
        self.basis.len()
    }

    /// Row-major `(n + 1) x n` view of the basis matrix.
    pub fn matrix_rows(&self) -> Vec<Vec<BigInt>> {
        let n = self.n();
        (0..=n)
            .map(|r| self.basis.iter().map(|col| col[r].clone()).collect())
            .collect()
    }
}

/// Builds the prime lattice and target for `modulus` under permutation `sigma`.
pub fn build_prime_lattice(
    modulus: &BigUint,
    base: &FactorBase,
    c: &BigRational,
    sigma: &Permutation,
) -> Result<PrimeLattice> {
    let n = base.size();
    if sigma.len() != n {
        return Err(Error::InvalidInput(format!(
            "permutation of length {} for a base of size {n}",
            sigma.len()
        )));
    }
    if c <= &BigRational::zero() {
        return Err(Error::InvalidInput(format!("rounding parameter must be positive, got {c}")));
    }
    let weights: Vec<u64> = (0..n).map(|i| sigma.weight(i)).collect();
    let mut basis = Vec::with_capacity(n);
    for (i, &p) in base.primes().iter().enumerate() {
        let mut col = vec![BigInt::zero(); n + 1];
        col[i] = BigInt::from(weights[i]);
        col[n] = precision::scaled_log_round(&BigUint::from(p), c)?;
        basis.push(col);
    }
    let mut target = vec![BigInt::zero(); n + 1];
    target[n] = precision::scaled_log_round(modulus, c)?;
    Ok(PrimeLattice {
        basis,
        target,
        weights,
        c: c.clone(),
    })
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
