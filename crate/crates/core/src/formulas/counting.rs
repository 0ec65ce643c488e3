use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `b`-subspaces of `F_q^a`; `q = 1` gives the ordinary binomial.
pub fn gaussian_binomial(a: u64, b: u64, q: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    if q == 1 {
        return binomial(a, b);
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= q.pow((a - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    (num / den).abs().to_biguint().expect("nonnegative")
}

/// Coefficient of `z^lambda` in `(1 + z + ... + z^{p-1})^m`, by the
/// alternating sum `sum_k (-1)^k C(m, k) C(m - 1 + lambda - kp, m - 1)`.
pub fn d_lambda(lambda: i64, p: u64, m: u64) -> BigUint {
    if lambda < 0 || (lambda as u128) > u128::from(p - 1) * u128::from(m) {
        return BigUint::zero();
    }
    let lambda = lambda as u64;
    if m == 0 {
        return BigUint::one();
    }
    let mut acc = BigInt::zero();
    for k in 0..=(lambda / p).min(m) {
        let term = BigInt::from(binomial(m, k)) * BigInt::from(binomial(m - 1 + lambda - k * p, m - 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("coefficient is nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Coefficients of `(1 + ... + z^{p-1})^m` by repeated multiplication.
    fn expand(p: u64, m: u64) -> Vec<BigUint> {
        let mut poly = vec![BigUint::one()];
        for _ in 0..m {
            let mut next = vec![BigUint::zero(); poly.len() + p as usize - 1];
            for (i, c) in poly.iter().enumerate() {
                for j in 0..p as usize {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, 0), big(1));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 0, 2), big(1));
        assert_eq!(gaussian_binomial(4, 2, 2), big(35));
        assert_eq!(gaussian_binomial(3, 1, 2), big(7));
        assert_eq!(gaussian_binomial(4, 2, 3), big(130));
        assert_eq!(gaussian_binomial(3, 2, 4), big(21));
        assert_eq!(gaussian_binomial(3, 4, 2), big(0));
        for a in 0..8 {
            for b in 0..=a {
                assert_eq!(gaussian_binomial(a, b, 1), binomial(a, b));
                assert_eq!(gaussian_binomial(a, b, 3), gaussian_binomial(a, a - b, 3));
            }
        }
    }

    #[test]
    fn d_lambda_examples() {
        assert_eq!(d_lambda(1, 2, 3), big(3));
        assert_eq!(d_lambda(0, 5, 4), big(1));
        assert_eq!(d_lambda(2, 2, 4), big(6));
        assert_eq!(d_lambda(-1, 2, 4), big(0));
        assert_eq!(d_lambda(5, 2, 4), big(0));
    }

    #[test]
    fn d_lambda_matches_polynomial_expansion() {
        for p in [2u64, 3, 5, 7] {
            for m in 0..6u64 {
                let poly = expand(p, m);
                for (lambda, c) in poly.iter().enumerate() {
                    assert_eq!(&d_lambda(lambda as i64, p, m), c, "p={p} m={m} lambda={lambda}");
                }
            }
        }
    }
}
