//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

pub mod angles;

use std::path::PathBuf;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use fpqaoa::lattice::{BabaiResult, QuboProblem, ReducedBasis};

pub fn recorded_run_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/run_1591.jsonl")
}

pub fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn dot_r(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_r(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Final amplitudes of the single-layer circuit, summed path by path.
///
/// `psi(z) = 2^{-n/2} sum_y <z|Rx^{(x)n}|y> exp(i phase(y))`, which costs
/// `O(4^n)` and shares no code with the gate-by-gate emulator.
pub fn amplitude_oracle(qnorm: &[Vec<f64>], gamma: f64, rx_angle: f64) -> Vec<Complex64> {
    let n = qnorm.len();
    let dim = 1usize << n;
    let bit = |idx: usize, q: usize| idx >> (n - 1 - q) & 1;
    let phase = |y: usize| {
        let mut p = 0.0;
        for i in 0..n {
            p += gamma / 4.0 * qnorm[i][i] * bit(y, i) as f64;
            for j in i + 1..n {
                let zz = (1.0 - 2.0 * bit(y, i) as f64) * (1.0 - 2.0 * bit(y, j) as f64);
                p -= gamma / 8.0 * qnorm[i][j] * zz;
            }
        }
        p
    };
    let (c, s) = ((rx_angle / 2.0).cos(), (rx_angle / 2.0).sin());
    let norm = (dim as f64).sqrt().recip();
    (0..dim)
        .map(|z| {
            (0..dim)
                .map(|y| {
                    let mut elem = Complex64::new(norm, 0.0);
                    for q in 0..n {
                        elem *= if bit(z, q) == bit(y, q) {
                            Complex64::new(c, 0.0)
                        } else {
                            Complex64::new(0.0, -s)
                        };
                    }
                    elem * Complex64::from_polar(1.0, phase(y))
                })
                .sum()
        })
        .collect()
}

pub fn random_qubo<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if j >= i { rng.random_range(-1.0..1.0) } else { 0.0 }).collect())
        .collect()
}

/// Random `m` vectors of dimension `dim` with entries in `-range..=range`.
pub fn random_basis<R: Rng>(rng: &mut R, m: usize, dim: usize, range: i64) -> Vec<Vec<BigInt>> {
    (0..m)
        .map(|_| (0..dim).map(|_| BigInt::from(rng.random_range(-range..=range))).collect())
        .collect()
}

/// Determinant by fraction-free Gaussian elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Checks size reduction, the Lovász condition and unimodularity, exactly.
pub fn check_lll(original: &[Vec<BigInt>], reduced: &ReducedBasis, delta: &BigRational) -> Result<(), String> {
    let b: Vec<Vec<BigRational>> = reduced.vectors.iter().map(|v| to_r(v)).collect();
    let m = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut mu = vec![vec![BigRational::zero(); m]; m];
    let mut norms = Vec::with_capacity(m);
    for i in 0..m {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = dot_r(&b[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        let nv = dot_r(&v, &v);
        if nv.is_zero() {
            return Err("reduced vectors are dependent".into());
        }
        norms.push(nv);
        star.push(v);
    }
    let half = rat(1, 2);
    for i in 0..m {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return Err(format!("|mu[{i}][{j}]| = {} > 1/2", mu[i][j].abs()));
            }
        }
    }
    for k in 1..m {
        let lhs = &norms[k];
        let rhs = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs < &rhs {
            return Err(format!("Lovász fails at {k}"));
        }
    }
    let t = &reduced.transform;
    for j in 0..m {
        for c in 0..original[0].len() {
            let sum: BigInt = (0..m).map(|i| &t[i][j] * &original[i][c]).sum();
            if sum != reduced.vectors[j][c] {
                return Err(format!("transform does not map onto reduced vector {j}"));
            }
        }
    }
    let det = determinant(t);
    if det.abs() != BigInt::one() {
        return Err(format!("transform determinant {det}"));
    }
    Ok(())
}

/// Number of assignments where `||t - u(x)||^2 - ||r||^2` differs from the QUBO energy.
pub fn qubo_identity_mismatches(
    target: &[BigInt],
    babai: &BabaiResult,
    reduced: &ReducedBasis,
    qubo: &QuboProblem,
) -> usize {
    let n = reduced.n();
    let r2: BigInt = babai.residual.iter().map(|x| x * x).sum();
    (0..1usize << n)
        .filter(|&mask| {
            let x: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
            let mut u = babai.approx_vector.clone();
            for j in (0..n).filter(|&j| x[j]) {
                for (a, d) in u.iter_mut().zip(&reduced.vectors[j]) {
                    *a += BigInt::from(babai.directions[j]) * d;
                }
            }
            let dist: BigInt = target.iter().zip(&u).map(|(t, a)| (t - a) * (t - a)).sum();
            BigRational::from_integer(dist - &r2) != qubo.energy(&x)
        })
        .count()
}
