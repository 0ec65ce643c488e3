//! Per-prime views of invariant factors: valuations, elementary divisor
//! profiles, factorization by trial division and recombination of diagonal
//! forms into divisibility chains.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use alloc::string::ToString;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::smith::SmithDecomposition;

/// Default trial-division limit used when factoring diagonal entries.
pub const DEFAULT_TRIAL_LIMIT: u64 = 1 << 20;

/// Multiplicities `e_0, e_1, ...` of `p^i` among the nonzero invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryDivisorProfile {
    prime: u64,
    multiplicities: Vec<u64>,
    rank: u64,
}

impl ElementaryDivisorProfile {
    /// Trailing zero multiplicities are dropped.
    pub fn new(prime: u64, mut multiplicities: Vec<u64>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        let rank = multiplicities.iter().sum();
        Ok(ElementaryDivisorProfile { prime, multiplicities, rank })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// `e_i`, zero past the end.
    pub fn multiplicity(&self, i: usize) -> u64 {
        self.multiplicities.get(i).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// The p-power diagonal entries `p^i` with multiplicity `e_i`.
    pub fn to_entries(&self) -> Vec<(BigUint, u64)> {
        let p = BigUint::from(self.prime);
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (p.pow(i as u32), m))
            .collect()
    }
}

/// Exact power of `p` dividing a nonzero `n`.
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    if let Some(mut small) = n.to_u128() {
        let p = u128::from(p);
        let mut v = 0;
        while small % p == 0 {
            small /= p;
            v += 1;
        }
        return v;
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Removes every factor of `p` from `n`.
pub fn strip_prime(n: &BigUint, p: u64) -> BigUint {
    let v = valuation(n, p);
    n / BigUint::from(p).pow(v)
}

pub fn profile_of_factors(factors: &[BigUint], p: u64) -> Result<ElementaryDivisorProfile> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut mult: Vec<u64> = Vec::new();
    for f in factors {
        let v = valuation(f, p) as usize;
        if mult.len() <= v {
            mult.resize(v + 1, 0);
        }
        mult[v] += 1;
    }
    ElementaryDivisorProfile::new(p, mult)
}

pub fn elementary_divisor_profile(d: &SmithDecomposition, p: u64) -> Result<ElementaryDivisorProfile> {
    profile_of_factors(d.invariant_factors(), p)
}

/// Primes for which a diagonal-form prediction is claimed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Locality {
    AllPrimes,
    /// Valid for every prime other than the listed ones.
    CoprimeTo(Vec<u64>),
}

impl Locality {
    pub fn covers(&self, prime: u64) -> bool {
        match self {
            Locality::AllPrimes => true,
            Locality::CoprimeTo(excluded) => !excluded.contains(&prime),
        }
    }
}

/// Multiset of positive diagonal entries claimed equivalent to a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalFormPrediction {
    entries: Vec<(BigUint, u64)>,
    locality: Locality,
}

impl DiagonalFormPrediction {
    /// Zero-multiplicity entries are dropped; zero values are rejected.
    pub fn new(entries: Vec<(BigUint, u64)>, locality: Locality) -> Result<Self> {
        if entries.iter().any(|(v, m)| v.is_zero() && *m > 0) {
            return Err(Error::InvalidParameters("diagonal form entries must be positive".into()));
        }
        let entries = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        Ok(DiagonalFormPrediction { entries, locality })
    }

    pub fn entries(&self) -> &[(BigUint, u64)] {
        &self.entries
    }

    pub fn locality(&self) -> &Locality {
        &self.locality
    }

    pub fn claimed_rank(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

/// Factors `n` by trial division up to `limit` (at most `2^32`). A remaining
/// cofactor below `limit^2` is prime; anything larger is an error.
pub fn factorize(n: &BigUint, limit: u64) -> Result<Vec<(u64, u32)>> {
    let limit = limit.clamp(2, 1 << 32);
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(Error::InvalidParameters("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    let mut d: u64 = 2;
    while d <= limit {
        if let Some(small) = rest.to_u128() {
            if u128::from(d) * u128::from(d) > small {
                break;
            }
        }
        let big_d = BigUint::from(d);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let square = BigUint::from(limit) * BigUint::from(limit);
        let fits = rest.to_u64();
        match fits {
            Some(p) if d > limit && rest < square => out.push((p, 1)),
            Some(p) if d <= limit => out.push((p, 1)),
            _ => {
                return Err(Error::FactorizationBound { value: n.to_string(), limit });
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Converts a diagonal form into its invariant-factor chain: for each prime,
/// the valuations of all entries are sorted ascending and recombined by
/// position.
pub fn diagonal_form_to_invariant_factors(pred: &DiagonalFormPrediction) -> Result<Vec<BigUint>> {
    diagonal_form_to_invariant_factors_bounded(pred, DEFAULT_TRIAL_LIMIT)
}

pub fn diagonal_form_to_invariant_factors_bounded(pred: &DiagonalFormPrediction, limit: u64) -> Result<Vec<BigUint>> {
    let rank = usize::try_from(pred.claimed_rank())
        .map_err(|_| Error::TooMany { what: "diagonal entries", count: u128::from(pred.claimed_rank()), bound: usize::MAX as u128 })?;
    // prime -> list of (valuation, multiplicity)
    let mut per_prime: BTreeMap<u64, Vec<(u32, u64)>> = BTreeMap::new();
    for (value, mult) in pred.entries() {
        for (p, e) in factorize(value, limit)? {
            per_prime.entry(p).or_default().push((e, *mult));
        }
    }
    let mut chain = vec![BigUint::one(); rank];
    for (p, vals) in per_prime {
        let nonzero: u64 = vals.iter().map(|(_, m)| m).sum();
        let mut vals = vals;
        vals.sort_unstable();
        // Entries not divisible by p occupy the first positions.
        let mut pos = rank - nonzero as usize;
        let pb = BigUint::from(p);
        for (e, m) in vals {
            let pe = pb.pow(e);
            for _ in 0..m {
                chain[pos] *= &pe;
                pos += 1;
            }
        }
    }
    Ok(chain)
}
