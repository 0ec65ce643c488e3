use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisors::{valuation, ElementaryDivisorProfile};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::matrix::IntegerMatrix;
use crate::smith::SmithDecomposition;

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph with restricted
/// eigenvalues `r >= s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub r: i64,
    pub s: i64,
}

impl SrgParams {
    /// Checks `k(k - lambda - 1) = (v - k - 1) mu` and integrality of the
    /// roots of `x^2 - (lambda - mu) x - (k - mu)`.
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self> {
        if k >= v || lambda >= k.max(1) {
            return Err(Error::Inapplicable(format!("({v},{k},{lambda},{mu}) is not a nontrivial SRG")));
        }
        let (vi, ki, li, mi) = (v as i128, k as i128, lambda as i128, mu as i128);
        if ki * (ki - li - 1) != (vi - ki - 1) * mi {
            return Err(Error::Inapplicable(format!("({v},{k},{lambda},{mu}) violates k(k-l-1) = (v-k-1)mu")));
        }
        let b = li - mi;
        let disc = b * b + 4 * (ki - mi);
        let root = isqrt(disc);
        if root * root != disc || (b + root) % 2 != 0 {
            return Err(Error::Inapplicable(format!("({v},{k},{lambda},{mu}) has irrational restricted eigenvalues")));
        }
        let r = ((b + root) / 2) as i64;
        let s = ((b - root) / 2) as i64;
        Ok(SrgParams { v, k, lambda, mu, r, s })
    }

    /// Multiplicities `(f, g)` of the restricted eigenvalues `r` and `s`.
    pub fn multiplicities(&self) -> Option<(u64, u64)> {
        let (v, k) = (self.v as i128, self.k as i128);
        let (l, m) = (self.lambda as i128, self.mu as i128);
        let gap = (self.r - self.s) as i128;
        let num = 2 * k + (v - 1) * (l - m);
        if gap == 0 || num % gap != 0 {
            return None;
        }
        let twice_f = (v - 1) - num / gap;
        if twice_f < 0 || twice_f % 2 != 0 {
            return None;
        }
        let f = twice_f / 2;
        let g = v - 1 - f;
        (g >= 0).then_some((f as u64, g as u64))
    }
}

fn isqrt(n: i128) -> i128 {
    if n < 0 {
        -1
    } else {
        n.isqrt()
    }
}

/// Reads SRG parameters off a symmetric 0/1 adjacency matrix with zero diagonal.
pub fn strongly_regular_parameters(adj: &IntegerMatrix) -> Result<SrgParams> {
    let v = adj.rows();
    if v != adj.cols() || !adj.is_zero_one() || !adj.is_symmetric() {
        return Err(Error::Inapplicable("not a symmetric 0/1 matrix".into()));
    }
    // Rows as bitsets; common neighbours are popcounts of intersections.
    let words = v.div_ceil(64);
    let bits: Vec<Vec<u64>> = (0..v)
        .map(|i| {
            let mut row = vec![0u64; words];
            for (j, x) in adj.row(i).iter().enumerate() {
                if x.is_one() {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let adjacent = |i: usize, j: usize| bits[i][j / 64] >> (j % 64) & 1 == 1;
    if (0..v).any(|i| adjacent(i, i)) {
        return Err(Error::Inapplicable("adjacency matrix has loops".into()));
    }
    let degrees: Vec<u32> = bits.iter().map(|r| r.iter().map(|w| w.count_ones()).sum()).collect();
    let k = degrees.first().copied().unwrap_or(0);
    if degrees.iter().any(|&d| d != k) {
        return Err(Error::Inapplicable("graph is not regular".into()));
    }
    let (mut lambda, mut mu): (Option<u32>, Option<u32>) = (None, None);
    for i in 0..v {
        for j in i + 1..v {
            let common = bits[i].iter().zip(&bits[j]).map(|(a, b)| (a & b).count_ones()).sum();
            let slot = if adjacent(i, j) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return Err(Error::Inapplicable("graph is not strongly regular".into())),
                Some(_) => {}
            }
        }
    }
    match (lambda, mu) {
        (Some(l), Some(m)) => SrgParams::new(v as u64, u64::from(k), u64::from(l), u64::from(m)),
        _ => Err(Error::Inapplicable("complete or edgeless graph".into())),
    }
}

/// A constraint on an SRG's elementary divisors that a profile violates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SrgViolation {
    /// `e_index` must vanish.
    NonzeroInGap { index: usize, multiplicity: u64 },
    /// `e_i` must equal `e_j` with `j = b + c - i`.
    Asymmetric { i: usize, j: usize, e_i: u64, e_j: u64 },
}

impl fmt::Display for SrgViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrgViolation::NonzeroInGap { index, multiplicity } => {
                write!(f, "e_{index} = {multiplicity} lies in a forbidden gap")
            }
            SrgViolation::Asymmetric { i, j, e_i, e_j } => write!(f, "e_{i} = {e_i} but e_{j} = {e_j}"),
        }
    }
}

/// Gap and symmetry constraints on the `p`-elementary divisors of an SRG
/// when `p` does not divide `v`, `p^a || k`, `p^b || s`, `p^c || r` and `a >= b + c`.
/// Returns `Inapplicable` when the hypotheses fail.
pub fn srg_eldiv_check(params: &SrgParams, p: u64, profile: &ElementaryDivisorProfile) -> Result<Vec<SrgViolation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if profile.prime() != p {
        return Err(Error::InvalidParameters(format!("profile is for {} not {p}", profile.prime())));
    }
    if params.v.is_multiple_of(p) {
        return Err(Error::Inapplicable(format!("{p} divides v = {}", params.v)));
    }
    if params.k == 0 || params.r == 0 || params.s == 0 {
        return Err(Error::Inapplicable("a zero eigenvalue has no p-adic valuation".into()));
    }
    let val = |x: u64| valuation(&BigUint::from(x), p) as usize;
    let (a, b, c) = (val(params.k), val(params.s.unsigned_abs()), val(params.r.unsigned_abs()));
    if a < b + c {
        return Err(Error::Inapplicable(format!("a = {a} < b + c = {}", b + c)));
    }
    let (lo, hi) = (b.min(c), b.max(c));
    let top = profile.multiplicities().len().max(a + 1);
    let mut out = Vec::new();
    for i in 0..top {
        let forbidden = (lo < i && i < hi) || (b + c < i && i < a) || i > a;
        let m = profile.multiplicity(i);
        if forbidden && m != 0 {
            out.push(SrgViolation::NonzeroInGap { index: i, multiplicity: m });
        }
    }
    for i in 0..lo {
        let j = b + c - i;
        let (e_i, e_j) = (profile.multiplicity(i), profile.multiplicity(j));
        if e_i != e_j {
            out.push(SrgViolation::Asymmetric { i, j, e_i, e_j });
        }
    }
    Ok(out)
}

/// Whether at least `m` invariant factors are divisible by `a`, as required
/// when `a` is an integral eigenvalue of geometric multiplicity `m`.
pub fn eigenvalue_divisibility_check(a: &BigInt, m: u64, d: &SmithDecomposition) -> bool {
    if a.is_zero() {
        return m == 0;
    }
    let a = a.abs().to_biguint().expect("absolute value");
    let divisible = d.invariant_factors().iter().filter(|s| s.is_multiple_of(&a)).count();
    divisible.to_u64().is_some_and(|x| x >= m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn skew_params() -> SrgParams {
        // Skew lines of PG(3, 2): 35 lines, each skew to 16 others.
        SrgParams::new(35, 16, 6, 8).unwrap()
    }

    #[test]
    fn parameters() {
        let s = skew_params();
        assert_eq!((s.r, s.s), (2, -4));
        let petersen = SrgParams::new(10, 3, 0, 1).unwrap();
        assert_eq!((petersen.r, petersen.s), (1, -2));
        assert!(SrgParams::new(10, 3, 1, 1).is_err());
        assert_eq!(s.multiplicities(), Some((20, 14)));
        assert_eq!(SrgParams::new(10, 3, 0, 1).unwrap().multiplicities(), Some((5, 4)));
    }

    #[test]
    fn petersen_from_matrix() {
        let k = crate::incidence::build(&"kneser n=5 k=2".parse().unwrap()).unwrap();
        let params = strongly_regular_parameters(&k).unwrap();
        assert_eq!((params.v, params.k, params.lambda, params.mu), (10, 3, 0, 1));
        assert!(strongly_regular_parameters(&IntegerMatrix::identity(4)).is_err());
    }

    #[test]
    fn skew_profile_passes_and_mutation_fails() {
        let good = ElementaryDivisorProfile::new(2, vec![6, 14, 8, 6, 1]).unwrap();
        assert!(srg_eldiv_check(&skew_params(), 2, &good).unwrap().is_empty());
        let bad = ElementaryDivisorProfile::new(2, vec![6, 14, 8, 6, 0, 1]).unwrap();
        assert_eq!(
            srg_eldiv_check(&skew_params(), 2, &bad).unwrap(),
            [SrgViolation::NonzeroInGap { index: 5, multiplicity: 1 }]
        );
        let asym = ElementaryDivisorProfile::new(2, vec![5, 15, 8, 6, 1]).unwrap();
        assert_eq!(srg_eldiv_check(&skew_params(), 2, &asym).unwrap().len(), 1);
    }

    #[test]
    fn inapplicable_hypotheses() {
        let profile = ElementaryDivisorProfile::new(5, vec![35]).unwrap();
        assert!(matches!(srg_eldiv_check(&skew_params(), 5, &profile), Err(Error::Inapplicable(_))));
        let petersen = SrgParams::new(10, 3, 0, 1).unwrap();
        let p2 = ElementaryDivisorProfile::new(2, vec![10]).unwrap();
        assert!(matches!(srg_eldiv_check(&petersen, 2, &p2), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn unit_valuations_pass_trivially() {
        // a = b = c = 0: only e_0 may be nonzero.
        let petersen = SrgParams::new(10, 3, 0, 1).unwrap();
        let p7 = ElementaryDivisorProfile::new(7, vec![10]).unwrap();
        assert!(srg_eldiv_check(&petersen, 7, &p7).unwrap().is_empty());
    }

    #[test]
    fn divisibility_lemma() {
        let chain: Vec<BigUint> = [1u64, 1, 1, 1, 2, 2, 2, 2, 4].iter().map(|&x| BigUint::from(x)).collect();
        let d = SmithDecomposition::from_invariant_factors(9, 9, chain).unwrap();
        assert!(eigenvalue_divisibility_check(&BigInt::from(4), 1, &d));
        assert!(eigenvalue_divisibility_check(&BigInt::from(-2), 5, &d));
        assert!(eigenvalue_divisibility_check(&BigInt::from(1), 9, &d));
        assert!(!eigenvalue_divisibility_check(&BigInt::from(2), 6, &d));
    }
}
