//! Exact LLL reduction over the rationals.
//!
//! This is the textbook integral-input variant that size-reduces only the
//! `(k, k-1)` coefficient before testing the Lovász condition and finishes
//! the remaining size reduction of row `k` once the condition holds. The
//! order of those operations decides which reduced basis comes out, and the
//! downstream QUBO depends on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Gram–Schmidt data of an ordered list of vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSchmidt {
    pub vectors: Vec<Vec<BigRational>>,
    /// `mu[i][j] = <b_i, b*_j> / <b*_j, b*_j>` for `j < i`; zero elsewhere.
    pub mu: Vec<Vec<BigRational>>,
    pub norms_sq: Vec<BigRational>,
}

/// Computes the Gram–Schmidt orthogonalization of `basis`.
pub fn gram_schmidt(basis: &[Vec<BigInt>]) -> Result<GramSchmidt> {
    let m = basis.len();
    let mut vectors: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut mu = vec![vec![BigRational::zero(); m]; m];
    let mut norms_sq = Vec::with_capacity(m);
    for i in 0..m {
        let mut v: Vec<BigRational> = basis[i].iter().cloned().map(BigRational::from_integer).collect();
        for j in 0..i {
            let num: BigRational = basis[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| b * a)
                .sum();
            let coeff = num / &norms_sq[j];
            for (x, y) in v.iter_mut().zip(&vectors[j]) {
                *x -= &coeff * y;
            }
            mu[i][j] = coeff;
        }
        let norm: BigRational = v.iter().map(|x| x * x).sum();
        if norm.is_zero() {
            return Err(Error::DependentBasis);
        }
        norms_sq.push(norm);
        vectors.push(v);
    }
    Ok(GramSchmidt { vectors, mu, norms_sq })
}

/// An LLL-reduced basis together with its Gram–Schmidt data.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedBasis {
    pub vectors: Vec<Vec<BigInt>>,
    pub mu: Vec<Vec<BigRational>>,
    pub gs_norms_sq: Vec<BigRational>,
    pub gs_vectors: Vec<Vec<BigRational>>,
    /// `transform[i][j]` is the coefficient of original vector `i` in reduced vector `j`.
    pub transform: Vec<Vec<BigInt>>,
    pub delta: BigRational,
}

impl ReducedBasis {
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    /// Wraps an arbitrary independent basis without reducing it.
    pub fn unreduced(vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let gs = gram_schmidt(&vectors)?;
        let n = vectors.len();
        let transform = identity(n);
        Ok(Self {
            vectors,
            mu: gs.mu,
            gs_norms_sq: gs.norms_sq,
            gs_vectors: gs.vectors,
            transform,
            delta: BigRational::one(),
        })
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn closest_integer(x: &BigRational) -> BigInt {
    let half = BigRational::new(1.into(), 2.into());
    (x + half).floor().to_integer()
}

struct State {
    y: Vec<Vec<BigInt>>,
    coeffs: Vec<Vec<BigInt>>,
    mu: Vec<Vec<BigRational>>,
    norms: Vec<BigRational>,
}

impl State {
    fn reduce(&mut self, k: usize, l: usize) {
        let half = BigRational::new(1.into(), 2.into());
        if self.mu[k][l].abs() <= half {
            return;
        }
        let r = closest_integer(&self.mu[k][l]);
        let (lo, hi) = self.y.split_at_mut(k);
        for (a, b) in hi[0].iter_mut().zip(&lo[l]) {
            *a -= &r * b;
        }
        let (lo, hi) = self.coeffs.split_at_mut(k);
        for (a, b) in hi[0].iter_mut().zip(&lo[l]) {
            *a -= &r * b;
        }
        let rr = BigRational::from_integer(r);
        for z in 0..l {
            let t = &rr * &self.mu[l][z];
            self.mu[k][z] -= t;
        }
        self.mu[k][l] -= rr;
    }

    fn swap(&mut self, k: usize) {
        let m = self.y.len();
        let nu = self.mu[k][k - 1].clone();
        let alpha = &self.norms[k] + &nu * &nu * &self.norms[k - 1];
        let beta = &self.norms[k - 1] / &alpha;
        self.mu[k][k - 1] = &nu * &beta;
        self.norms[k] = &self.norms[k] * &beta;
        self.norms[k - 1] = alpha;
        self.y.swap(k, k - 1);
        self.coeffs.swap(k, k - 1);
        for z in 0..k - 1 {
            let t = self.mu[k][z].clone();
            self.mu[k][z] = std::mem::replace(&mut self.mu[k - 1][z], t);
        }
        for i in k + 1..m {
            let xi = self.mu[i][k].clone();
            self.mu[i][k] = &self.mu[i][k - 1] - &nu * &xi;
            self.mu[i][k - 1] = &self.mu[k][k - 1] * &self.mu[i][k] + xi;
        }
    }
}

/// LLL-reduces `basis` with Lovász parameter `delta` in exact arithmetic.
pub fn lll_reduce(basis: &[Vec<BigInt>], delta: &BigRational) -> Result<ReducedBasis> {
    let quarter = BigRational::new(1.into(), 4.into());
    if delta <= &quarter || delta >= &BigRational::one() {
        return Err(Error::InvalidInput(format!("delta must lie in (1/4, 1), got {delta}")));
    }
    let m = basis.len();
    if m == 0 {
        return Err(Error::InvalidInput("empty basis".into()));
    }
    let dim = basis[0].len();
    if basis.iter().any(|v| v.len() != dim) {
        return Err(Error::InvalidInput("basis vectors differ in dimension".into()));
    }
    if m > dim {
        return Err(Error::DependentBasis);
    }

    let gs = gram_schmidt(basis)?;
    let mut st = State {
        y: basis.to_vec(),
        coeffs: identity(m),
        mu: gs.mu,
        norms: gs.norms_sq,
    };

    let mut k = 1;
    while k < m {
        st.reduce(k, k - 1);
        let mu = &st.mu[k][k - 1];
        if st.norms[k] >= (delta - mu * mu) * &st.norms[k - 1] {
            for l in (0..k.saturating_sub(1)).rev() {
                st.reduce(k, l);
            }
            k += 1;
        } else {
            st.swap(k);
            k = (k - 1).max(1);
        }
    }

    let gs = gram_schmidt(&st.y)?;
    let transform = (0..m)
        .map(|i| (0..m).map(|j| st.coeffs[j][i].clone()).collect())
        .collect();
    Ok(ReducedBasis {
        vectors: st.y,
        mu: gs.mu,
        gs_norms_sq: gs.norms_sq,
        gs_vectors: gs.vectors,
        transform,
        delta: delta.clone(),
    })
}
