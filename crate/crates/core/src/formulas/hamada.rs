//! Multiplicities indexed by Hamada tuples: points versus subspaces of
//! `PG(n, q)`, the point-hyperplane trace formula, skew lines of `PG(3, q)`
//! and composite zero-meet maps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::counting::d_lambda;
use super::to_u64;
use crate::divisors::{DiagonalFormPrediction, ElementaryDivisorProfile, Locality};
use crate::error::{Error, Result};
use crate::field::PrimePower;

/// Default bound on the number of candidate tuples `n^t` examined.
pub const DEFAULT_TUPLE_BOUND: u128 = 1 << 22;

/// `s = (s_0, ..., s_{t-1})` with `lambda_i = p s_{i+1} - s_i` (indices mod `t`)
/// and weight `d(s) = prod d_{lambda_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HamadaTuple {
    pub s: Vec<u64>,
    pub lambda: Vec<i64>,
    pub weight: BigUint,
}

impl HamadaTuple {
    fn new(s: Vec<u64>, p: u64, m: u64) -> Self {
        let t = s.len();
        let lambda: Vec<i64> = (0..t).map(|i| p as i64 * s[(i + 1) % t] as i64 - s[i] as i64).collect();
        let weight = lambda.iter().map(|&l| d_lambda(l, p, m)).product();
        HamadaTuple { s, lambda, weight }
    }

    /// `sum_i max(0, r - s_i)`
    pub fn alpha(&self, r: u64) -> u64 {
        self.s.iter().map(|&x| r.saturating_sub(x)).sum()
    }

    /// `sum_i max(0, s_i - (n + 1 - r))`
    pub fn beta(&self, n: u64, r: u64) -> u64 {
        self.s.iter().map(|&x| x.saturating_sub(n + 1 - r)).sum()
    }
}

/// Every tuple in `{1..=top}^t`, in lexicographic order, weighted with
/// `d_lambda` over `(1 + ... + z^{p-1})^m`.
fn weighted_tuples(top: u64, q: PrimePower, m: u64) -> Result<Vec<HamadaTuple>> {
    let t = q.t() as usize;
    let count = u128::from(top).checked_pow(t as u32).unwrap_or(u128::MAX);
    if count > DEFAULT_TUPLE_BOUND {
        return Err(Error::TooMany { what: "Hamada tuples", count, bound: DEFAULT_TUPLE_BOUND });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut s = vec![1u64; t];
    loop {
        out.push(HamadaTuple::new(s.clone(), q.p(), m));
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if s[i] < top {
                s[i] += 1;
                break;
            }
            s[i] = 1;
        }
    }
}

/// The tuples with `1 <= s_i <= n` and `0 <= p s_{i+1} - s_i <= (p-1)(n+1)`.
pub fn hamada_tuples(n: u64, q: PrimePower) -> Result<Vec<HamadaTuple>> {
    if n < 1 {
        return Err(Error::InvalidParameters("Hamada tuples need n >= 1".into()));
    }
    let max = (q.p() as i64 - 1) * (n as i64 + 1);
    let mut all = weighted_tuples(n, q, n + 1)?;
    all.retain(|h| h.lambda.iter().all(|&l| (0..=max).contains(&l)));
    Ok(all)
}

fn profile_from(p: u64, counts: Vec<BigUint>) -> Result<ElementaryDivisorProfile> {
    let mults = counts.iter().map(|c| to_u64(c, "elementary divisor multiplicity")).collect::<Result<Vec<_>>>()?;
    ElementaryDivisorProfile::new(p, mults)
}

/// p-adic profile of the points versus `r`-subspaces matrix of `PG(n, q)`
/// plus the single p'-factor `(q^r - 1)/(q - 1)` carried by the last
/// invariant factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSubspacePrediction {
    pub profile: ElementaryDivisorProfile,
    pub p_prime_factor: BigUint,
}

impl PointSubspacePrediction {
    /// Invariant factors: `p^alpha` ascending, the last one times the p'-factor.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let p = BigUint::from(self.profile.prime());
        let mut chain = Vec::with_capacity(self.profile.rank() as usize);
        for (alpha, &m) in self.profile.multiplicities().iter().enumerate() {
            let pa = p.pow(alpha as u32);
            chain.extend(core::iter::repeat_n(pa, m as usize));
        }
        if let Some(last) = chain.last_mut() {
            *last *= &self.p_prime_factor;
        }
        chain
    }

    pub fn to_diagonal_form(&self) -> Result<DiagonalFormPrediction> {
        let mut entries = self.profile.to_entries();
        if let Some(last) = entries.last_mut() {
            let top = last.0.clone();
            last.1 -= 1;
            entries.push((top * &self.p_prime_factor, 1));
        }
        DiagonalFormPrediction::new(entries, Locality::AllPrimes)
    }
}

pub fn point_subspace_eldiv(n: u64, r: u64, q: PrimePower) -> Result<PointSubspacePrediction> {
    if !(2 <= r && r <= n) {
        return Err(Error::InvalidParameters(format!("need 2 <= r <= n, got n={n} r={r}")));
    }
    let t = u64::from(q.t());
    let mut e = vec![BigUint::zero(); ((r - 1) * t + 1) as usize];
    for h in hamada_tuples(n, q)? {
        e[h.alpha(r) as usize] += &h.weight;
    }
    e[0] += 1u32;
    let qq = BigUint::from(q.q());
    let p_prime_factor = (qq.pow(r as u32) - 1u32) / (qq - 1u32);
    Ok(PointSubspacePrediction { profile: profile_from(q.p(), e)?, p_prime_factor })
}

/// Coefficients (lowest degree first) of `trace(M^t)`, where `M` is the
/// `n x n` matrix over `Z[z]` with `m_{ij} = d_{pj-i} z^{pj-i}`, `1 <= i, j <= n`.
pub fn singer_trace_polynomial(n: u64, q: PrimePower) -> Result<Vec<BigUint>> {
    if n < 2 {
        return Err(Error::InvalidParameters("the trace formula needs n >= 2".into()));
    }
    let (p, t, nn) = (q.p(), q.t() as usize, n as usize);
    let deg = |i: usize, j: usize| p as i64 * j as i64 - i as i64;
    // Polynomial matrix entries as coefficient vectors.
    let base: Vec<Vec<Vec<BigUint>>> = (1..=nn)
        .map(|i| {
            (1..=nn)
                .map(|j| {
                    let l = deg(i, j);
                    let c = d_lambda(l, p, n + 1);
                    if c.is_zero() {
                        Vec::new()
                    } else {
                        let mut v = vec![BigUint::zero(); l as usize + 1];
                        v[l as usize] = c;
                        v
                    }
                })
                .collect()
        })
        .collect();
    let mut power = base.clone();
    for _ in 1..t {
        power = poly_matmul(&power, &base);
    }
    let mut trace: Vec<BigUint> = Vec::new();
    for (i, row) in power.iter().enumerate() {
        poly_add_assign(&mut trace, &row[i]);
    }
    while trace.last().is_some_and(Zero::is_zero) {
        trace.pop();
    }
    Ok(trace)
}

fn poly_add_assign(acc: &mut Vec<BigUint>, x: &[BigUint]) {
    if acc.len() < x.len() {
        acc.resize(x.len(), BigUint::zero());
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b;
    }
}

fn poly_matmul(a: &[Vec<Vec<BigUint>>], b: &[Vec<Vec<BigUint>>]) -> Vec<Vec<Vec<BigUint>>> {
    let n = a.len();
    let mut out = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_empty() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_empty() {
                    continue;
                }
                let mut prod = vec![BigUint::zero(); a[i][k].len() + b[k][j].len() - 1];
                for (x, cx) in a[i][k].iter().enumerate() {
                    if cx.is_zero() {
                        continue;
                    }
                    for (y, cy) in b[k][j].iter().enumerate() {
                        prod[x + y] += cx * cy;
                    }
                }
                poly_add_assign(&mut out[i][j], &prod);
            }
        }
    }
    out
}

/// Multiplicities `a_0, ..., a_{t(n-1)}` of `p^r` among the invariant factors
/// of the point-hyperplane matrix of `PG(n, q)`, excluding the single factor
/// that carries `(q^n - 1)/(q - 1)`.
///
/// `a_r` is the coefficient of `z^{(p-1)(tn - r)}` in `trace(M^t)`: a cycle
/// `s_0 -> ... -> s_{t-1}` of `M` contributes `z^{(p-1) sum s_i}`, and its
/// valuation is `sum (n - s_i)`.
pub fn singer_trace_multiplicities(n: u64, q: PrimePower) -> Result<Vec<BigUint>> {
    let trace = singer_trace_polynomial(n, q)?;
    let (p, t) = (q.p(), u64::from(q.t()));
    let coeff = |e: u64| trace.get(e as usize).cloned().unwrap_or_default();
    Ok((0..=t * (n - 1)).map(|r| coeff((p - 1) * (t * n - r))).collect())
}

/// Elementary divisor profile of the skew-lines matrix of `PG(3, q)`.
pub fn skew_lines_eldiv(q: PrimePower) -> Result<ElementaryDivisorProfile> {
    let t = q.t() as usize;
    let mut e = vec![BigUint::zero(); 4 * t + 1];
    for h in weighted_tuples(3, q, 4)? {
        let twos = h.s.iter().filter(|&&x| x == 2).count();
        e[2 * t + twos] += &h.weight;
    }
    for i in 0..t {
        e[i] = e[3 * t - i].clone();
    }
    let qq = BigUint::from(q.q());
    let low_total = qq.pow(4) + qq.pow(2);
    let below: BigUint = e[..t].iter().sum();
    if below > low_total {
        return Err(Error::InvalidParameters("inconsistent skew-lines multiplicities".into()));
    }
    e[t] = low_total - below;
    e[4 * t] = BigUint::one();
    profile_from(q.p(), e)
}

/// p-adic profile of the product of the zero-meet matrices
/// `r`-subspaces x points and points x `s`-subspaces of `PG(n, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositePrediction {
    pub profile: ElementaryDivisorProfile,
    /// False when `r + s > n + 1`, a range not covered by the theorem.
    pub validated: bool,
}

pub fn composite_eldiv(n: u64, r: u64, s: u64, q: PrimePower) -> Result<CompositePrediction> {
    if !(1 <= r && r <= n && 1 <= s && s <= n) {
        return Err(Error::InvalidParameters(format!("need 1 <= r, s <= n, got n={n} r={r} s={s}")));
    }
    let t = u64::from(q.t());
    let top = t * (r + s);
    let mut e = vec![BigUint::zero(); top as usize + 1];
    for h in hamada_tuples(n, q)? {
        let (alpha, beta) = (h.alpha(s), h.beta(n, r));
        if alpha <= t * (s - 1) && beta <= t * (r - 1) {
            e[(alpha + beta) as usize] += &h.weight;
        }
    }
    e[top as usize] = BigUint::one();
    Ok(CompositePrediction { profile: profile_from(q.p(), e)?, validated: r + s <= n + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn u64s(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn tuples() {
        let h = hamada_tuples(2, pp(2)).unwrap();
        assert_eq!(h.iter().map(|x| x.s.clone()).collect::<Vec<_>>(), [vec![1], vec![2]]);
        assert_eq!(h.iter().map(|x| x.weight.to_u64().unwrap()).collect::<Vec<_>>(), [3, 3]);
        let h = hamada_tuples(2, pp(4)).unwrap();
        assert_eq!(h.len(), 4);
        for n in 1..6 {
            assert_eq!(hamada_tuples(n, pp(3)).unwrap().len() as u64, n);
        }
    }

    #[test]
    fn point_subspace_examples() {
        let fano = point_subspace_eldiv(2, 2, pp(2)).unwrap();
        assert_eq!(fano.profile.multiplicities(), &[4, 3]);
        assert_eq!(fano.p_prime_factor, BigUint::from(3u8));
        assert_eq!(u64s(&fano.invariant_factors()), [1, 1, 1, 1, 2, 2, 6]);

        let pg24 = point_subspace_eldiv(2, 2, pp(4)).unwrap();
        assert_eq!(pg24.profile.multiplicities(), &[10, 2, 9]);
        assert_eq!(pg24.p_prime_factor, BigUint::from(5u8));
        let chain = u64s(&pg24.invariant_factors());
        assert_eq!(chain.len(), 21);
        assert_eq!(&chain[9..13], &[1, 2, 2, 4]);
        assert_eq!(*chain.last().unwrap(), 20);

        assert_eq!(point_subspace_eldiv(3, 2, pp(2)).unwrap().profile.rank(), 15);
        assert!(point_subspace_eldiv(2, 1, pp(2)).is_err());
    }

    #[test]
    fn point_subspace_ranks_equal_point_counts() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            for n in 2..5u64 {
                for r in 2..=n {
                    let pred = point_subspace_eldiv(n, r, pp(q)).unwrap();
                    let points = (q.pow(n as u32 + 1) - 1) / (q - 1);
                    assert_eq!(pred.profile.rank(), points, "n={n} r={r} q={q}");
                }
            }
        }
    }

    #[test]
    fn trace_polynomials() {
        assert_eq!(u64s(&singer_trace_polynomial(2, pp(2)).unwrap()), [0, 3, 3]);
        assert_eq!(u64s(&singer_trace_polynomial(2, pp(4)).unwrap()), [0, 0, 9, 2, 9]);
        assert_eq!(u64s(&singer_trace_multiplicities(2, pp(4)).unwrap()), [9, 2, 9]);
    }

    #[test]
    fn singer_agrees_with_point_subspace() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            for n in 2..5u64 {
                let a = singer_trace_multiplicities(n, pp(q)).unwrap();
                let e = point_subspace_eldiv(n, n, pp(q)).unwrap();
                for (r, ar) in a.iter().enumerate() {
                    let expected = e.profile.multiplicity(r) - u64::from(r == 0);
                    assert_eq!(ar.to_u64().unwrap(), expected, "n={n} q={q} r={r}");
                }
            }
        }
    }

    #[test]
    fn skew_lines() {
        assert_eq!(skew_lines_eldiv(pp(2)).unwrap().multiplicities(), &[6, 14, 8, 6, 1]);
        for q in [3u64, 4, 5, 8, 9] {
            let e = skew_lines_eldiv(pp(q)).unwrap();
            let t = pp(q).t() as usize;
            let low: u64 = (0..=t).map(|i| e.multiplicity(i)).sum();
            let mid: u64 = (2 * t..=3 * t).map(|i| e.multiplicity(i)).sum();
            assert_eq!(low, q.pow(4) + q.pow(2));
            assert_eq!(mid, q.pow(3) + q.pow(2) + q);
            assert_eq!(e.multiplicity(4 * t), 1);
            assert_eq!(e.rank(), (q * q + 1) * (q * q + q + 1));
            for i in (t + 1..2 * t).chain(3 * t + 1..4 * t) {
                assert_eq!(e.multiplicity(i), 0);
            }
        }
    }

    #[test]
    fn adjacent_one_and_three_vanish_at_p_2() {
        for h in weighted_tuples(3, pp(8), 4).unwrap() {
            let t = h.s.len();
            if (0..t).any(|i| matches!((h.s[i], h.s[(i + 1) % t]), (1, 3) | (3, 1))) {
                assert!(h.weight.is_zero(), "{:?}", h.s);
            }
        }
    }

    #[test]
    fn composite_example() {
        let c = composite_eldiv(3, 2, 2, pp(2)).unwrap();
        assert_eq!(c.profile.multiplicities(), &[6, 8, 0, 0, 1]);
        assert!(c.validated);
        assert!(!composite_eldiv(3, 3, 2, pp(2)).unwrap().validated);
    }
}
