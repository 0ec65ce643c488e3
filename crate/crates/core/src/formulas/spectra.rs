use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use super::counting::binomial;
use super::to_u64;
use crate::divisors::{DiagonalFormPrediction, Locality};
use crate::error::{Error, Result};

/// Eigenvalues of the maximal-distance Hamming matrix and the diagonal form
/// built from their absolute values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingPrediction {
    /// `((-1)^{m-r} (n-1)^r, C(m, r) (n-1)^{m-r})` for `r = 0..=m`.
    pub eigenvalues: Vec<(BigInt, u64)>,
    pub diagonal: DiagonalFormPrediction,
}

pub fn hamming_snf_prediction(m: u64, n: u64) -> Result<HammingPrediction> {
    if m < 1 || n < 2 {
        return Err(Error::InvalidParameters(format!("need m >= 1 and n >= 2, got m={m} n={n}")));
    }
    let base = BigUint::from(n - 1);
    let mut eigenvalues = Vec::with_capacity(m as usize + 1);
    let mut entries = Vec::with_capacity(m as usize + 1);
    for r in 0..=m {
        let magnitude = base.pow(r as u32);
        let mult = to_u64(&(binomial(m, r) * base.pow((m - r) as u32)), "eigenvalue multiplicity")?;
        let value = if (m - r).is_multiple_of(2) { BigInt::from(magnitude.clone()) } else { -BigInt::from(magnitude.clone()) };
        eigenvalues.push((value, mult));
        entries.push((magnitude, mult));
    }
    Ok(HammingPrediction { eigenvalues, diagonal: DiagonalFormPrediction::new(entries, Locality::AllPrimes)? })
}

/// Eigenvalues `(-1)^i C(n-k-i, k-i)` of the Kneser graph `K(n, k)` with
/// multiplicity `C(n, i) - C(n, i-1)`, `i = 0..=k`.
pub fn kneser_spectrum(n: u64, k: u64) -> Result<Vec<(BigInt, u64)>> {
    if 2 * k > n {
        return Err(Error::InvalidParameters(format!("need 2k <= n, got n={n} k={k}")));
    }
    let mut out = Vec::with_capacity(k as usize + 1);
    for i in 0..=k {
        let magnitude = BigInt::from(binomial(n - k - i, k - i));
        let lo = if i == 0 { BigUint::from(0u8) } else { binomial(n, i - 1) };
        let mult = to_u64(&(binomial(n, i) - lo), "eigenvalue multiplicity")?;
        out.push((if i % 2 == 0 { magnitude } else { -magnitude }, mult));
    }
    Ok(out)
}
