//! Exact spectra of Cayley graphs on `Z_{n_1} x ... x Z_{n_r}`.
//!
//! The eigenvalue attached to the character `chi_j(g) = zeta^(sum j_i g_i L / n_i)`
//! is `chi_j(E) = sum_{e in E} chi_j(e)`, where `L` is the exponent of the group
//! and `zeta` a primitive `L`-th root of unity. Values are kept exactly in
//! `Z[x] / Phi_L(x)`, power basis `1, x, ..., x^(phi(L)-1)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::incidence::{mixed_radix_element, tuple_label, IncidenceSpec, MAX_GROUP_ORDER};

/// Default bound on the cyclotomic order `L`.
pub const DEFAULT_CYCLOTOMIC_BOUND: u64 = 4096;

/// An element of `Z[zeta_L]` reduced modulo the `L`-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    order: u64,
    /// Trailing zeros trimmed; empty means zero.
    coeffs: Vec<i64>,
}

impl CyclotomicValue {
    fn new(order: u64, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        CyclotomicValue { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients in the power basis, lowest degree first.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &CyclotomicValue) -> Result<CyclotomicValue> {
        if self.order != other.order {
            return Err(Error::Dimension(format!("cyclotomic orders {} and {} differ", self.order, other.order)));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; len];
        for (i, x) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *x = a.checked_add(b).ok_or_else(overflow)?;
        }
        Ok(CyclotomicValue::new(self.order, out))
    }
}

impl core::fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            f.write_str(sign)?;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write!(f, "z^{i}")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// One eigenvalue together with the character that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterValue {
    pub character: Vec<u64>,
    pub label: String,
    pub value: CyclotomicValue,
}

fn overflow() -> Error {
    Error::InvalidParameters("cyclotomic coefficient overflow".into())
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Uses `Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}`; all multiplications are
/// done before the (exact) divisions.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // poly * (x^d - 1)
            let d = d as usize;
            let mut out = vec![0i64; poly.len() + d];
            for (k, &c) in poly.iter().enumerate() {
                out[k] -= c;
                out[k + d] += c;
            }
            poly = out;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // poly / (x^d - 1), exact: q_k = q_{k-d} - p_k
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i64; qlen];
            for k in 0..qlen {
                q[k] = if k >= d { q[k - d] } else { 0 } - poly[k];
            }
            poly = q;
        }
    }
    poly
}

/// Reduces `a` (degree < `a.len()`) modulo the monic polynomial `phi`.
fn reduce_mod(mut a: Vec<i64>, phi: &[i64]) -> Result<Vec<i64>> {
    let deg = phi.len() - 1;
    for top in (deg..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (i, &f) in phi.iter().enumerate() {
            let idx = top - deg + i;
            let delta = c.checked_mul(f).ok_or_else(overflow)?;
            a[idx] = a[idx].checked_sub(delta).ok_or_else(overflow)?;
        }
    }
    a.truncate(deg);
    Ok(a)
}

pub fn cayley_spectrum(orders: &[u64], connecting_set: &[Vec<u64>]) -> Result<Vec<CharacterValue>> {
    cayley_spectrum_bounded(orders, connecting_set, DEFAULT_CYCLOTOMIC_BOUND)
}

/// Eigenvalues `chi(E)` for every character, characters in mixed-radix order.
pub fn cayley_spectrum_bounded(orders: &[u64], connecting_set: &[Vec<u64>], bound: u64) -> Result<Vec<CharacterValue>> {
    IncidenceSpec::AbelianCayley { orders: orders.to_vec(), connecting_set: connecting_set.to_vec() }.validate()?;
    let size: u64 = orders.iter().product();
    if size > MAX_GROUP_ORDER {
        return Err(Error::TooMany { what: "characters", count: u128::from(size), bound: u128::from(MAX_GROUP_ORDER) });
    }
    let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
    if exponent > bound {
        return Err(Error::TooMany { what: "cyclotomic order", count: u128::from(exponent), bound: u128::from(bound) });
    }
    let phi = cyclotomic_polynomial(exponent);
    let scale: Vec<u64> = orders.iter().map(|&o| exponent / o).collect();
    let l = exponent as usize;

    let mut out = Vec::with_capacity(size as usize);
    for idx in 0..size {
        let j = mixed_radix_element(orders, idx);
        let mut counts = vec![0i64; l];
        for e in connecting_set {
            let k = j
                .iter()
                .zip(e)
                .zip(&scale)
                .fold(0u64, |acc, ((&ji, &ei), &s)| (acc + ji * ei % exponent * s) % exponent);
            counts[k as usize] += 1;
        }
        let value = CyclotomicValue::new(exponent, reduce_mod(counts, &phi)?);
        let label = tuple_label(&j);
        out.push(CharacterValue { character: j, label, value });
    }
    Ok(out)
}

/// Integral values with multiplicities, ascending by value; `None` if any
/// value is not an integer.
pub fn integral_spectrum(values: &[CharacterValue]) -> Option<Vec<(i64, u64)>> {
    let mut map = alloc::collections::BTreeMap::new();
    for v in values {
        *map.entry(v.value.as_integer()?).or_insert(0u64) += 1;
    }
    Some(map.into_iter().collect())
}
