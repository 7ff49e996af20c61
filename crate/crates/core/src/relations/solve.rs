use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::gf2::{left_nullspace, BitRow};
use super::srpair::SrPair;
use crate::numtheory::{gcd, FactorBase};

/// Combinations of nullspace basis vectors are enumerated only up to this dimension.
const MAX_COMBINED_DIM: usize = 12;

/// Unique sr-pairs in insertion order.
#[derive(Debug, Clone, Default)]
pub struct RelationSet {
    pairs: Vec<SrPair>,
    keys: HashSet<(BigInt, BigInt)>,
    threshold: usize,
}

impl RelationSet {
    /// Empty set whose collection target is `b2_size + 1` pairs.
    pub fn new(b2_size: usize) -> Self {
        Self {
            pairs: Vec::new(),
            keys: HashSet::new(),
            threshold: b2_size + 1,
        }
    }

    /// Returns `false` and leaves the set unchanged if `(u, v)` is already present.
    pub fn insert(&mut self, pair: SrPair) -> bool {
        if !self.keys.insert(pair.key()) {
            return false;
        }
        self.pairs.push(pair);
        true
    }

    pub fn contains(&self, u: &BigInt, v: &BigInt) -> bool {
        self.keys.contains(&(u.clone(), v.clone()))
    }

    pub fn pairs(&self) -> &[SrPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn reached_threshold(&self) -> bool {
        self.pairs.len() >= self.threshold
    }
}

/// Nontrivial split `N = p q` with `1 < p <= q < N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    pub p: BigInt,
    pub q: BigInt,
}

impl FactorResult {
    /// Orders the cofactors; `None` unless `d` is a proper divisor of `n`.
    pub fn from_divisor(n: &BigInt, d: &BigInt) -> Option<Self> {
        if d <= &BigInt::one() || d >= n || !(n % d).is_zero() {
            return None;
        }
        let other = n / d;
        let (p, q) = if d <= &other { (d.clone(), other) } else { (other, d.clone()) };
        Some(Self { p, q })
    }
}

/// Looks for a congruence of squares among the relations in `rel`.
///
/// Each pair contributes the row `[u exponents over b1 | sign of s | s exponents over b2]`.
pub fn try_factor(
    rel: &RelationSet,
    modulus: &BigInt,
    b1_base: &FactorBase,
    b2_base: &FactorBase,
) -> Option<FactorResult> {
    let b1 = b1_base.size();
    let usable: Vec<&SrPair> = rel
        .pairs()
        .iter()
        .filter(|p| p.u_fact.exponents[b1.min(p.u_fact.exponents.len())..].iter().all(|&e| e == 0))
        .collect();
    let rows: Vec<BitRow> = usable
        .iter()
        .map(|p| {
            let u_bits = p.u_fact.exponents[..b1].iter().map(|e| e % 2 == 1);
            let s_bits = p.s_fact.exponents.iter().map(|e| e % 2 == 1);
            BitRow::from_bits(u_bits.chain([p.s_fact.negative]).chain(s_bits))
        })
        .collect();
    let basis = left_nullspace(&rows);
    if basis.is_empty() {
        return None;
    }
    let attempt = |sel: &BitRow| {
        let chosen: Vec<&SrPair> = sel.ones().map(|i| usable[i]).collect();
        split_from_dependency(&chosen, modulus, b2_base)
    };
    if let Some(found) = basis.iter().find_map(attempt) {
        return Some(found);
    }
    if basis.len() > MAX_COMBINED_DIM {
        return None;
    }
    (1u32..1 << basis.len())
        .filter(|mask| mask.count_ones() > 1)
        .find_map(|mask| {
            let mut sel = BitRow::zeros(usable.len());
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    sel.xor_assign(b);
                }
            }
            attempt(&sel)
        })
}

fn split_from_dependency(
    chosen: &[&SrPair],
    modulus: &BigInt,
    base: &FactorBase,
) -> Option<FactorResult> {
    let m = modulus.magnitude();
    let mut u_sum = vec![0u64; base.size()];
    let mut s_sum = vec![0u64; base.size()];
    for p in chosen {
        for (acc, &e) in u_sum.iter_mut().zip(&p.u_fact.exponents) {
            *acc += e as u64;
        }
        for (acc, &e) in s_sum.iter_mut().zip(&p.s_fact.exponents) {
            *acc += e as u64;
        }
    }
    let x = half_power_mod(&u_sum, base, m);
    let y = half_power_mod(&s_sum, base, m);
    let diff = (BigInt::from(x) - BigInt::from(y)).abs();
    let d = gcd(&diff, modulus);
    FactorResult::from_divisor(modulus, &d)
}

/// `Π p^{e/2} mod m`; every entry of `e` is even.
fn half_power_mod(e: &[u64], base: &FactorBase, m: &BigUint) -> BigUint {
    debug_assert!(e.iter().all(|x| x % 2 == 0));
    base.primes()
        .iter()
        .zip(e)
        .fold(BigUint::one() % m, |acc, (&p, &k)| {
            acc * BigUint::from(p).modpow(&BigUint::from(k / 2), m) % m
        })
}
