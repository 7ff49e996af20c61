use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{BabaiResult, PrimeLattice, ReducedBasis};
use crate::numtheory::{factor_over_base, FactorBase, SmoothFactorization};
use crate::qaoa::Bitstring;

/// Smooth relation pair: `u` and `s = u - v N` both factor over small primes.
///
/// `u_fact` and `s_fact` are both stored over the extended base passed to
/// [`verify_sr_pair`]; `u` never uses primes beyond the lattice base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrPair {
    pub u: BigInt,
    pub v: BigInt,
    pub u_fact: SmoothFactorization,
    pub s: BigInt,
    pub s_fact: SmoothFactorization,
}

impl SrPair {
    pub fn key(&self) -> (BigInt, BigInt) {
        (self.u.clone(), self.v.clone())
    }
}

/// Exponent vector of the lattice point selected by `x`.
///
/// Bit `j` moves the Babai point one step along reduced vector `j`, in the
/// direction opposite to how its coefficient was rounded.
pub fn bitstring_to_candidate(
    x: &Bitstring,
    babai: &BabaiResult,
    reduced: &ReducedBasis,
    lattice: &PrimeLattice,
) -> Result<Vec<i64>> {
    let n = lattice.n();
    if x.len() != reduced.n() || babai.directions.len() != reduced.n() {
        return Err(Error::InvalidInput(format!(
            "bitstring of length {} for {} reduced vectors",
            x.len(),
            reduced.n()
        )));
    }
    let mut point = babai.approx_vector.clone();
    for (j, &bit) in x.bits().iter().enumerate() {
        if !bit {
            continue;
        }
        let kappa = BigInt::from(babai.directions[j]);
        for (p, d) in point.iter_mut().zip(&reduced.vectors[j]) {
            *p += &kappa * d;
        }
    }
    (0..n)
        .map(|i| {
            let (q, r) = point[i].div_rem(&BigInt::from(lattice.weights[i]));
            if !r.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "coordinate {i} of candidate is {} which is not a multiple of {}",
                    point[i], lattice.weights[i]
                )));
            }
            q.to_i64()
                .ok_or_else(|| Error::Inconsistent(format!("exponent {q} out of range")))
        })
        .collect()
}

/// Splits `e` into positive and negative parts: `u = Π p^{e+}`, `v = Π p^{e-}`.
pub fn exponents_to_uv(e: &[i64], base: &FactorBase) -> Result<(BigInt, BigInt)> {
    if e.len() != base.size() {
        return Err(Error::InvalidInput(format!(
            "{} exponents for a base of size {}",
            e.len(),
            base.size()
        )));
    }
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    for (&p, &ei) in base.primes().iter().zip(e) {
        let pk = BigUint::from(p).pow(ei.unsigned_abs() as u32);
        if ei > 0 {
            u *= pk;
        } else if ei < 0 {
            v *= pk;
        }
    }
    Ok((u.into(), v.into()))
}

/// Accepts `(u, v)` when `s = u - v N` is nonzero and smooth over `b2_base`.
pub fn verify_sr_pair(
    u: &BigInt,
    v: &BigInt,
    modulus: &BigInt,
    b2_base: &FactorBase,
) -> Result<Option<SrPair>> {
    if u < &BigInt::one() || v < &BigInt::one() {
        return Err(Error::InvalidInput(format!("sr-pair entries must be positive, got ({u}, {v})")));
    }
    if u.is_one() && v.is_one() {
        return Ok(None);
    }
    let s = u - v * modulus;
    if s.is_zero() {
        return Ok(None);
    }
    let Some(s_fact) = factor_over_base(&s, b2_base)? else {
        return Ok(None);
    };
    let Some(u_fact) = factor_over_base(u, b2_base)? else {
        return Ok(None);
    };
    Ok(Some(SrPair {
        u: u.clone(),
        v: v.clone(),
        u_fact,
        s,
        s_fact,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{babai_nearest_plane, build_prime_lattice, lll_reduce, CoefficientRounding, Permutation};
    use crate::numtheory::first_primes;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn n1591() -> BigInt {
        BigInt::from(1591)
    }

    #[test]
    fn uv_from_exponents() {
        let base = first_primes(6).unwrap();
        let (u, v) = exponents_to_uv(&[0, 2, 0, 0, 0, 2], &base).unwrap();
        assert_eq!((u, v), (BigInt::from(1521), BigInt::from(1)));
        let (u, v) = exponents_to_uv(&[0; 6], &base).unwrap();
        assert_eq!((u, v), (BigInt::from(1), BigInt::from(1)));
        let (u, v) = exponents_to_uv(&[3, 0, 0, 3, -2, 0], &base).unwrap();
        assert_eq!((u, v), (BigInt::from(2744), BigInt::from(121)));
        assert!(exponents_to_uv(&[1], &base).is_err());
    }

    #[test]
    fn verification_examples() {
        let b2 = first_primes(11).unwrap();
        let p = verify_sr_pair(&41503.into(), &25.into(), &n1591(), &b2).unwrap().unwrap();
        assert_eq!(p.s, BigInt::from(1728));
        assert_eq!(p.s_fact.exponents[..2], [6, 3]);
        let p = verify_sr_pair(&5005.into(), &3.into(), &n1591(), &b2).unwrap().unwrap();
        assert_eq!(p.s, BigInt::from(232));
        assert_eq!(p.s_fact.exponents[9], 1);
        let p = verify_sr_pair(&1521.into(), &1.into(), &n1591(), &b2).unwrap().unwrap();
        assert_eq!(p.s, BigInt::from(-70));
        assert!(p.s_fact.negative);
        assert!(verify_sr_pair(&2.into(), &1.into(), &n1591(), &b2).unwrap().is_none());
        assert!(verify_sr_pair(&1.into(), &1.into(), &n1591(), &b2).unwrap().is_none());
        assert!(verify_sr_pair(&1591.into(), &1.into(), &n1591(), &b2).unwrap().is_none());
        assert!(verify_sr_pair(&0.into(), &1.into(), &n1591(), &b2).is_err());
    }

    #[test]
    fn zero_bitstring_gives_babai_point() {
        let base = first_primes(6).unwrap();
        let sigma = Permutation::new(vec![4, 1, 3, 6, 5, 2]).unwrap();
        let c = BigRational::new(3.into(), 2.into());
        let lattice = build_prime_lattice(&1591u32.into(), &base, &c, &sigma).unwrap();
        let reduced = lll_reduce(&lattice.basis, &BigRational::new(3.into(), 4.into())).unwrap();
        let babai = babai_nearest_plane(&reduced, &lattice.target, CoefficientRounding::Nearest).unwrap();
        let e = bitstring_to_candidate(&Bitstring::zeros(6), &babai, &reduced, &lattice).unwrap();
        let (u, v) = exponents_to_uv(&e, &base).unwrap();
        assert_eq!((u, v), (BigInt::from(1521), BigInt::from(1)));
    }

    proptest! {
        #[test]
        fn every_flip_pattern_is_a_lattice_point(
            sigma in Just(vec![1usize, 2, 3, 4]).prop_shuffle(),
            n in 100u32..100_000,
        ) {
            let base = first_primes(4).unwrap();
            let sigma = Permutation::new(sigma).unwrap();
            let c = BigRational::from_integer(1.into());
            let lattice = build_prime_lattice(&n.into(), &base, &c, &sigma).unwrap();
            let reduced = lll_reduce(&lattice.basis, &BigRational::new(3.into(), 4.into())).unwrap();
            let babai = babai_nearest_plane(&reduced, &lattice.target, CoefficientRounding::Nearest).unwrap();
            for idx in 0..16 {
                let x = Bitstring::from_index(idx, 4);
                prop_assert!(bitstring_to_candidate(&x, &babai, &reduced, &lattice).is_ok());
            }
        }

        #[test]
        fn accepted_pairs_are_congruent(u in 1u64..200_000, v in 1u64..50) {
            let b2 = first_primes(11).unwrap();
            if let Some(p) = verify_sr_pair(&u.into(), &v.into(), &n1591(), &b2).unwrap() {
                prop_assert_eq!((&p.u - &p.s).mod_floor(&n1591()), BigInt::zero());
                prop_assert_eq!(p.s_fact.reconstruct(&b2), p.s);
                prop_assert_eq!(p.u_fact.reconstruct(&b2), p.u);
            }
        }
    }
}
