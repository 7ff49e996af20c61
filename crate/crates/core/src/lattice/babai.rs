//! Babai's approximate CVP step on a reduced basis.
//!
//! Besides the rounded coefficients the result records, for every basis
//! vector, which way the alternative rounding lies. The QUBO built on top
//! chooses, per coefficient, between the recorded rounding and that other
//! side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ReducedBasis;
use crate::error::{Error, Result};

/// How each real coefficient is turned into an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientRounding {
    /// `floor(c + 1/2)`.
    #[default]
    Nearest,
    Ceil,
    Floor,
}

impl CoefficientRounding {
    pub fn apply(self, c: &BigRational) -> BigInt {
        match self {
            CoefficientRounding::Nearest => {
                (c + BigRational::new(1.into(), 2.into())).floor().to_integer()
            }
            CoefficientRounding::Ceil => c.ceil().to_integer(),
            CoefficientRounding::Floor => c.floor().to_integer(),
        }
    }
}

/// Which Babai procedure produces the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BabaiVariant {
    /// Sequential projection onto Gram–Schmidt directions, last vector first.
    #[default]
    NearestPlane,
    /// Round the least-squares coordinates of the target in the reduced basis.
    Rounding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BabaiConfig {
    pub variant: BabaiVariant,
    pub rounding: CoefficientRounding,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BabaiResult {
    pub coefficients: Vec<BigInt>,
    pub real_coefficients: Vec<BigRational>,
    /// `b_op = sum_j coefficients[j] * d_j`.
    pub approx_vector: Vec<BigInt>,
    /// `target - approx_vector`.
    pub residual: Vec<BigInt>,
    /// `+1` when the other rounding of coefficient `j` is `k_j + 1`, `-1` when it is `k_j - 1`.
    pub directions: Vec<i8>,
}

fn direction(real: &BigRational, k: &BigInt) -> i8 {
    if real > &BigRational::from_integer(k.clone()) {
        1
    } else {
        -1
    }
}

fn check_target(reduced: &ReducedBasis, target: &[BigInt]) -> Result<()> {
    if reduced.n() == 0 || target.len() != reduced.dim() {
        return Err(Error::InvalidInput(format!(
            "target of dimension {} for basis vectors of dimension {}",
            target.len(),
            reduced.dim()
        )));
    }
    Ok(())
}

fn finish(
    reduced: &ReducedBasis,
    target: &[BigInt],
    coefficients: Vec<BigInt>,
    real_coefficients: Vec<BigRational>,
) -> BabaiResult {
    let mut approx_vector = vec![BigInt::zero(); target.len()];
    for (k, d) in coefficients.iter().zip(&reduced.vectors) {
        for (a, x) in approx_vector.iter_mut().zip(d) {
            *a += k * x;
        }
    }
    let residual = target.iter().zip(&approx_vector).map(|(t, b)| t - b).collect();
    let directions = real_coefficients
        .iter()
        .zip(&coefficients)
        .map(|(c, k)| direction(c, k))
        .collect();
    BabaiResult {
        coefficients,
        real_coefficients,
        approx_vector,
        residual,
        directions,
    }
}

/// Nearest-plane loop `j = n..1`: `c_j = <b, d*_j> / |d*_j|^2`, `b <- b - k_j d_j`.
pub fn babai_nearest_plane(
    reduced: &ReducedBasis,
    target: &[BigInt],
    rounding: CoefficientRounding,
) -> Result<BabaiResult> {
    check_target(reduced, target)?;
    let n = reduced.n();
    let mut b = target.to_vec();
    let mut coefficients = vec![BigInt::zero(); n];
    let mut reals = vec![BigRational::zero(); n];
    for j in (0..n).rev() {
        let proj: BigRational = b
            .iter()
            .zip(&reduced.gs_vectors[j])
            .map(|(x, g)| g * x)
            .sum();
        let c = proj / &reduced.gs_norms_sq[j];
        let k = rounding.apply(&c);
        for (x, d) in b.iter_mut().zip(&reduced.vectors[j]) {
            *x -= &k * d;
        }
        coefficients[j] = k;
        reals[j] = c;
    }
    Ok(finish(reduced, target, coefficients, reals))
}

/// Nearest-plane with every coefficient rounded up.
pub fn babai_nearest_plane_ceil(reduced: &ReducedBasis, target: &[BigInt]) -> Result<BabaiResult> {
    babai_nearest_plane(reduced, target, CoefficientRounding::Ceil)
}

/// Rounding technique: solve `(D^T D) c = D^T t` exactly and round `c`.
pub fn babai_rounding(
    reduced: &ReducedBasis,
    target: &[BigInt],
    rounding: CoefficientRounding,
) -> Result<BabaiResult> {
    check_target(reduced, target)?;
    let n = reduced.n();
    let d = &reduced.vectors;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| BigRational::from_integer(super::dot(&d[i], &d[j])))
                .collect();
            row.push(BigRational::from_integer(super::dot(&d[i], target)));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::DependentBasis)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    let reals: Vec<BigRational> = a.into_iter().map(|mut row| row.pop().unwrap()).collect();
    let coefficients = reals.iter().map(|c| rounding.apply(c)).collect();
    Ok(finish(reduced, target, coefficients, reals))
}

pub fn babai(reduced: &ReducedBasis, target: &[BigInt], config: BabaiConfig) -> Result<BabaiResult> {
    match config.variant {
        BabaiVariant::NearestPlane => babai_nearest_plane(reduced, target, config.rounding),
        BabaiVariant::Rounding => babai_rounding(reduced, target, config.rounding),
    }
}
