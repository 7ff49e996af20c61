//! The rounding-direction QUBO and its normalized Ising form.
//!
//! With signed directions `s_j = kappa_j d_j` the candidate for assignment
//! `x` is `u(x) = b_op + sum_j x_j s_j`, so
//!
//! ```text
//! |t - u(x)|^2 = |r|^2 + sum_j Q_jj x_j + sum_{i<j} Q_ij x_i x_j
//! Q_jj = |d_j|^2 - 2 kappa_j <r, d_j>,   Q_ij = 2 kappa_i kappa_j <d_i, d_j>
//! ```
//!
//! Substituting `x_j = (1 - z_j) / 2` gives the spin form that the circuit
//! compiles: fields `h_i = -(Q_ii / 2 + sum_{j != i} Q_ij / 4)` on the
//! diagonal and couplings `J_ij = Q_ij / 4` above it. The normalized matrix is
//! that spin matrix divided by its largest signed entry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{dot, BabaiResult, ReducedBasis};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    /// Upper-triangular QUBO coefficients.
    pub raw: Vec<Vec<BigRational>>,
    /// `|r|^2`, the energy of the all-zero assignment.
    pub constant: BigRational,
    /// Upper-triangular spin matrix: fields on the diagonal, couplings above.
    pub ising: Vec<Vec<BigRational>>,
    /// `x^T Q x = ising_offset + E_ising(z)`.
    pub ising_offset: BigRational,
    pub normalized: Vec<Vec<BigRational>>,
    pub norm_factor: BigRational,
}

impl QuboProblem {
    pub fn n(&self) -> usize {
        self.raw.len()
    }

    /// `sum_j Q_jj x_j + sum_{i<j} Q_ij x_i x_j`.
    pub fn energy(&self, x: &[bool]) -> BigRational {
        upper_energy(&self.raw, x)
    }

    /// `sum_i h_i z_i + sum_{i<j} J_ij z_i z_j` with `z_i = 1 - 2 x_i`.
    pub fn ising_energy(&self, x: &[bool]) -> BigRational {
        spin_energy(&self.ising, x)
    }

    pub fn normalized_f64(&self) -> Vec<Vec<f64>> {
        self.normalized
            .iter()
            .map(|row| row.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

fn upper_energy(m: &[Vec<BigRational>], x: &[bool]) -> BigRational {
    let mut e = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        if !x[i] {
            continue;
        }
        e += &row[i];
        for j in i + 1..m.len() {
            if x[j] {
                e += &row[j];
            }
        }
    }
    e
}

fn spin_energy(m: &[Vec<BigRational>], x: &[bool]) -> BigRational {
    let spin = |b: bool| if b { -1 } else { 1 };
    let mut e = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        let zi = spin(x[i]);
        e += &row[i] * BigRational::from_integer(zi.into());
        for j in i + 1..m.len() {
            e += &row[j] * BigRational::from_integer((zi * spin(x[j])).into());
        }
    }
    e
}

/// Builds the QUBO for choosing the other rounding of each Babai coefficient.
pub fn build_qubo(result: &BabaiResult, reduced: &ReducedBasis) -> Result<QuboProblem> {
    let n = reduced.n();
    if result.coefficients.len() != n || result.residual.len() != reduced.dim() {
        return Err(Error::InvalidInput("Babai result does not match the basis".into()));
    }
    let d = &reduced.vectors;
    let r = &result.residual;
    let kappa: Vec<BigInt> = result.directions.iter().map(|&k| BigInt::from(k)).collect();

    let mut raw = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        let diag = dot(&d[j], &d[j]) - BigInt::from(2) * &kappa[j] * dot(r, &d[j]);
        raw[j][j] = BigRational::from_integer(diag);
        for i in 0..j {
            let off = BigInt::from(2) * &kappa[i] * &kappa[j] * dot(&d[i], &d[j]);
            raw[i][j] = BigRational::from_integer(off);
        }
    }
    let constant = BigRational::from_integer(dot(r, r));

    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let mut ising = vec![vec![BigRational::zero(); n]; n];
    let mut ising_offset = BigRational::zero();
    for i in 0..n {
        let mut coupling_sum = BigRational::zero();
        for j in 0..n {
            if j != i {
                coupling_sum += &raw[i.min(j)][i.max(j)];
            }
        }
        ising[i][i] = -(&raw[i][i] / &two + coupling_sum / &four);
        ising_offset += &raw[i][i] / &two;
        for j in i + 1..n {
            ising[i][j] = &raw[i][j] / &four;
            ising_offset += &raw[i][j] / &four;
        }
    }

    let norm_factor = ising
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row[i..].iter())
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    if ising.iter().all(|row| row.iter().all(Zero::is_zero)) {
        return Err(Error::DegenerateQubo("all coefficients vanish"));
    }
    if norm_factor <= BigRational::zero() {
        return Err(Error::DegenerateQubo("no positive coefficient to normalize by"));
    }
    let normalized = ising
        .iter()
        .map(|row| row.iter().map(|q| q / &norm_factor).collect())
        .collect();

    Ok(QuboProblem {
        raw,
        constant,
        ising,
        ising_offset,
        normalized,
        norm_factor,
    })
}
