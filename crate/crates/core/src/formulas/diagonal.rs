use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::counting::{binomial, gaussian_binomial};
use super::to_u64;
use crate::divisors::{DiagonalFormPrediction, Locality};
use crate::error::{Error, Result};
use crate::field::PrimePower;

/// Entries `B(k - i, t - i)` with multiplicity `B(n, i) - B(n, i - 1)`,
/// `i = 0..=t`, for a binomial-like `B`.
fn analog_entries(n: u64, t: u64, k: u64, b: impl Fn(u64, u64) -> BigUint) -> Result<Vec<(BigUint, u64)>> {
    let mut out = Vec::with_capacity(t as usize + 1);
    for i in 0..=t {
        let hi = b(n, i);
        let lo = if i == 0 { BigUint::from(0u8) } else { b(n, i - 1) };
        if hi < lo {
            return Err(Error::InvalidParameters(format!("negative multiplicity at i={i}")));
        }
        out.push((b(k - i, t - i), to_u64(&(hi - lo), "diagonal multiplicity")?));
    }
    Ok(out)
}

/// Diagonal form of the inclusion matrix of `t`-subsets in `k`-subsets of an
/// `n`-set. When `t + k > n` the form is read off the complementary matrix
/// `W_{n-k, n-t}`, of which `W_{t,k}` is the transpose up to reordering.
pub fn wilson_diagonal(n: u64, t: u64, k: u64) -> Result<DiagonalFormPrediction> {
    if !(t <= k && k <= n) {
        return Err(Error::InvalidParameters(format!("need 0 <= t <= k <= n, got n={n} t={t} k={k}")));
    }
    let entries = if t + k <= n {
        analog_entries(n, t, k, binomial)?
    } else {
        analog_entries(n, n - k, n - t, binomial)?
    };
    DiagonalFormPrediction::new(entries, Locality::AllPrimes)
}

/// Diagonal form over the `l`-adic integers, `l` not dividing `q`, of the
/// inclusion matrix of `s`-subspaces in `r`-subspaces of `F_q^{n+1}`.
pub fn chandler_diagonal(n: u64, r: u64, s: u64, q: PrimePower) -> Result<DiagonalFormPrediction> {
    if !(s <= r && s + r <= n + 1) {
        return Err(Error::InvalidParameters(format!("need s <= r and s + r <= n + 1, got n={n} r={r} s={s}")));
    }
    let qq = q.q();
    let entries = analog_entries(n + 1, s, r, |a, b| gaussian_binomial(a, b, qq))?;
    DiagonalFormPrediction::new(entries, Locality::CoprimeTo(vec![q.p()]))
}
