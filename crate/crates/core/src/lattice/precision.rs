//! Fixed-point evaluation of `round(10^c * ln m)` for rational `c`.
//!
//! Values are carried as integers scaled by `2^FRAC_BITS`, which keeps the
//! rounding exact for every lattice entry the pipeline can produce.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

const FRAC_BITS: u64 = 320;
/// Rounding is refused when the scaled value sits this close to a half-integer.
const GUARD_BITS: u64 = 64;

fn one() -> BigUint {
    BigUint::one() << FRAC_BITS
}

/// `atanh(z)` for a fixed-point `0 <= z < 1`.
fn atanh_fixed(z: &BigUint) -> BigUint {
    let z2 = (z * z) >> FRAC_BITS;
    let mut term = z.clone();
    let mut sum = BigUint::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term / BigUint::from(k);
        term = (&term * &z2) >> FRAC_BITS;
        k += 2;
    }
    sum
}

/// `ln(m)` in fixed point for an integer `m >= 1`.
pub fn ln_fixed(m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::InvalidInput("logarithm of zero".into()));
    }
    let k = m.bits() - 1;
    // y = m / 2^k in [1, 2)
    let y = if k <= FRAC_BITS {
        m << (FRAC_BITS - k)
    } else {
        m >> (k - FRAC_BITS)
    };
    let scale = one();
    let z = ((&y - &scale) << FRAC_BITS) / (&y + &scale);
    let ln_y = atanh_fixed(&z) << 1;
    let third = &scale / BigUint::from(3u32);
    let ln2 = atanh_fixed(&third) << 1;
    Ok(ln2 * BigUint::from(k) + ln_y)
}

/// `10^c` in fixed point for a rational `c`.
pub fn pow10_fixed(c: &BigRational) -> Result<BigUint> {
    let num = c.numer();
    let den = c.denom();
    let den: u32 = den
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("rounding parameter {c} has a huge denominator")))?;
    let exp: u32 = num
        .abs()
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("rounding parameter {c} is too large")))?;
    let p = BigUint::from(10u32).pow(exp);
    // floor((10^|a| * 2^(FRAC_BITS*b))^(1/b))
    let root = (p << (FRAC_BITS * den as u64)).nth_root(den);
    if num.is_negative() {
        Ok((one() << FRAC_BITS) / root)
    } else {
        Ok(root)
    }
}

/// `round(10^c * ln m)`, with halves rounded away from zero.
pub fn scaled_log_round(m: &BigUint, c: &BigRational) -> Result<BigInt> {
    let prod = (pow10_fixed(c)? * ln_fixed(m)?) >> FRAC_BITS;
    let frac_mask = one() - BigUint::one();
    let frac = &prod & &frac_mask;
    let half = one() >> 1;
    let distance = if frac >= half { &frac - &half } else { &half - &frac };
    if distance < (BigUint::one() << (FRAC_BITS - GUARD_BITS)) {
        return Err(Error::Inconsistent(format!(
            "10^{c} * ln({m}) is too close to a half-integer to round reliably"
        )));
    }
    let rounded = (prod + half) >> FRAC_BITS;
    Ok(BigInt::from(rounded))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn slr(m: u64, c: BigRational) -> i64 {
        scaled_log_round(&BigUint::from(m), &c).unwrap().try_into().unwrap()
    }

    #[test]
    fn last_row_for_1591() {
        let c = rat(3, 2);
        let row: Vec<i64> = [2, 3, 5, 7, 11, 13].iter().map(|&p| slr(p, c.clone())).collect();
        assert_eq!(row, vec![22, 35, 51, 62, 76, 81]);
        assert_eq!(slr(1591, c), 233);
    }

    #[test]
    fn ln2_at_c4() {
        assert_eq!(slr(2, rat(4, 1)), 6931);
    }

    // Reference values computed with mpmath at 60 digits.
    #[test]
    fn against_high_precision_reference() {
        assert_eq!(slr(74425657, rat(4, 1)), 181253);
        assert_eq!(slr(35183361263263, rat(4, 1)), 311916);
        assert_eq!(slr(229, rat(4, 1)), 54337);
        assert_eq!(slr(31, rat(3, 2)), 109);
        assert_eq!(slr(1, rat(3, 2)), 0);
    }

    #[test]
    fn ln_of_zero_rejected() {
        assert!(ln_fixed(&BigUint::zero()).is_err());
    }
}
