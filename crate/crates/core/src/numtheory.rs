//! Primes, factor bases, and smoothness testing by trial division.
//!
//! Every integer that can grow past a machine word is a [`BigInt`]; the
//! factor-base primes themselves are small and kept as `u64`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The first `size` primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBase {
    primes: Vec<u64>,
}

impl FactorBase {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn size(&self) -> usize {
        self.primes.len()
    }

    pub fn prime(&self, i: usize) -> u64 {
        self.primes[i]
    }

    /// The base made of the first `k` primes of `self`.
    pub fn prefix(&self, k: usize) -> Result<FactorBase> {
        if k == 0 || k > self.size() {
            return Err(Error::InvalidInput(format!(
                "prefix of size {k} from a base of size {}",
                self.size()
            )));
        }
        Ok(FactorBase {
            primes: self.primes[..k].to_vec(),
        })
    }
}

/// Returns the first `k` primes.
pub fn first_primes(k: usize) -> Result<FactorBase> {
    if k == 0 {
        return Err(Error::InvalidInput("factor base size must be at least 1".into()));
    }
    // p_k < k (ln k + ln ln k) for k >= 6
    let mut bound = if k < 6 {
        15
    } else {
        let kf = k as f64;
        (kf * (kf.ln() + kf.ln().ln())).ceil() as usize + 1
    };
    loop {
        let primes = sieve(bound);
        if primes.len() >= k {
            return Ok(FactorBase {
                primes: primes.into_iter().take(k).collect(),
            });
        }
        bound *= 2;
    }
}

fn sieve(bound: usize) -> Vec<u64> {
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Sign and exponent vector of an integer that is smooth over a factor base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothFactorization {
    /// `true` when the factored integer is negative.
    pub negative: bool,
    pub exponents: Vec<u32>,
}

impl SmoothFactorization {
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Multiplies the factorization back out.
    pub fn reconstruct(&self, base: &FactorBase) -> BigInt {
        let magnitude = base
            .primes()
            .iter()
            .zip(&self.exponents)
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e));
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, magnitude)
    }
}

/// Factors `m` over `base` by trial division; `None` unless `|m|` is smooth.
pub fn factor_over_base(m: &BigInt, base: &FactorBase) -> Result<Option<SmoothFactorization>> {
    if m.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut rest = m.magnitude().clone();
    let mut exponents = Vec::with_capacity(base.size());
    for &p in base.primes() {
        let p = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        exponents.push(e);
    }
    if !rest.is_one() {
        return Ok(None);
    }
    Ok(Some(SmoothFactorization {
        negative: m.is_negative(),
        exponents,
    }))
}

/// Non-negative greatest common divisor; `gcd(0, b) = |b|`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// If `n = a^k` for some `k >= 2`, returns the smallest such `a` with its exponent.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n <= &BigUint::one() {
        return None;
    }
    let max_exp = n.bits() as u32;
    let mut found = None;
    for k in 2..=max_exp {
        let a = n.nth_root(k);
        if a <= BigUint::one() {
            break;
        }
        if a.pow(k) == *n {
            found = Some((a, k));
        }
    }
    found
}

/// Deterministic Miller-Rabin for `n < 3.3e24`; probabilistic beyond that bound.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
