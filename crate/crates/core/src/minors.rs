//! Determinants and the determinantal-divisor characterization of invariant
//! factors (`s_i = d_i / d_{i-1}`, `d_i` the gcd of all `i x i` minors).
//!
//! This path shares no code with the elimination in [`crate::smith`] and is
//! used as an independent oracle.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Largest `min(rows, cols)` accepted by [`invariant_factors_via_minor_gcds`].
pub const DEFAULT_ORACLE_BOUND: usize = 10;

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(a: &IntegerMatrix) -> Result<BigInt> {
    if a.rows() != a.cols() {
        return Err(Error::Dimension(alloc::format!("{}x{} is not square", a.rows(), a.cols())));
    }
    Ok(bareiss(a.entries().to_vec(), a.rows()))
}

fn bareiss(mut m: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                m.swap(k * n + j, swap * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    let det = m[n * n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Invariant factors from gcds of minors, with the default size bound.
pub fn invariant_factors_via_minor_gcds(a: &IntegerMatrix) -> Result<Vec<BigUint>> {
    invariant_factors_via_minor_gcds_bounded(a, DEFAULT_ORACLE_BOUND)
}

pub fn invariant_factors_via_minor_gcds_bounded(a: &IntegerMatrix, bound: usize) -> Result<Vec<BigUint>> {
    let dim = a.rows().min(a.cols());
    if dim > bound {
        return Err(Error::OracleBound { dim, bound });
    }
    let mut factors = Vec::new();
    let mut prev = BigUint::one();
    for size in 1..=dim {
        let d = minor_gcd(a, size);
        if d.is_zero() {
            break;
        }
        factors.push(&d / &prev);
        prev = d;
    }
    Ok(factors)
}

/// gcd of all `size x size` minors (zero when every minor vanishes).
fn minor_gcd(a: &IntegerMatrix, size: usize) -> BigUint {
    let mut g = BigUint::zero();
    let mut rows: Vec<usize> = (0..size).collect();
    loop {
        let mut cols: Vec<usize> = (0..size).collect();
        loop {
            let sub: Vec<BigInt> = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| a.get(i, j).clone()))
                .collect();
            let det = bareiss(sub, size);
            g = g.gcd(det.magnitude());
            if g.is_one() {
                return g;
            }
            if !next_combination(&mut cols, a.cols()) {
                break;
            }
        }
        if !next_combination(&mut rows, a.rows()) {
            return g;
        }
    }
}

/// Advances a sorted index set to its lexicographic successor in `0..n`.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
