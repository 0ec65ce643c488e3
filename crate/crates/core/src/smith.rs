//! Smith normal form by fraction-free integer elimination.
//!
//! The elimination runs on `i64` entries with checked arithmetic while the
//! input fits and restarts on `BigInt` entries on the first overflow. Pivots
//! are chosen by minimum absolute value; the diagonal produced by elimination
//! is then turned into a divisibility chain by gcd/lcm fixups.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::minors::determinant;

/// Default bound on the bit length of any intermediate entry.
pub const DEFAULT_MAX_ENTRY_BITS: u64 = 4096;

/// Wall-clock (or any other) budget polled between pivot steps.
pub trait Budget {
    fn exhausted(&self) -> bool;
}

/// A budget that never runs out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&self) -> bool {
        false
    }
}

impl<F: Fn() -> bool> Budget for F {
    fn exhausted(&self) -> bool {
        self()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfOptions {
    pub want_transforms: bool,
    pub max_entry_bits: u64,
}

impl Default for SnfOptions {
    fn default() -> Self {
        SnfOptions { want_transforms: false, max_entry_bits: DEFAULT_MAX_ENTRY_BITS }
    }
}

/// Result of a Smith normal form computation.
///
/// `invariant_factors` are positive and form a divisibility chain. When
/// transforms were requested, `left * A * right` is the diagonal matrix
/// carrying the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    rows: usize,
    cols: usize,
    invariant_factors: Vec<BigUint>,
    left_transform: Option<IntegerMatrix>,
    right_transform: Option<IntegerMatrix>,
}

impl SmithDecomposition {
    /// Builds a transform-free decomposition from a known chain, checking it.
    pub fn from_invariant_factors(rows: usize, cols: usize, factors: Vec<BigUint>) -> Result<Self> {
        if factors.len() > rows.min(cols) {
            return Err(Error::InvalidParameters(alloc::format!(
                "{} invariant factors for a {rows}x{cols} matrix",
                factors.len()
            )));
        }
        if factors.iter().any(Zero::is_zero) || factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::InvalidParameters("invariant factors must be positive and form a divisibility chain".into()));
        }
        Ok(SmithDecomposition { rows, cols, invariant_factors: factors, left_transform: None, right_transform: None })
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn left_transform(&self) -> Option<&IntegerMatrix> {
        self.left_transform.as_ref()
    }

    pub fn right_transform(&self) -> Option<&IntegerMatrix> {
        self.right_transform.as_ref()
    }

    /// The invariant factors padded with zeros to the original shape.
    pub fn diagonal(&self) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.rows, self.cols, |i, j| {
            if i == j && i < self.rank() {
                BigInt::from(self.invariant_factors[i].clone())
            } else {
                <BigInt as Zero>::zero()
            }
        })
    }

    pub fn without_transforms(mut self) -> Self {
        self.left_transform = None;
        self.right_transform = None;
        self
    }
}

/// Smith normal form with default limits and no time budget.
pub fn smith_normal_form(a: &IntegerMatrix, want_transforms: bool) -> Result<SmithDecomposition> {
    smith_normal_form_with(a, &SnfOptions { want_transforms, ..SnfOptions::default() }, &Unlimited)
}

pub fn smith_normal_form_with(a: &IntegerMatrix, opts: &SnfOptions, budget: &dyn Budget) -> Result<SmithDecomposition> {
    if let Some(small) = a.to_i64_entries() {
        match Elimination::new(a.rows(), a.cols(), small, opts, budget).run() {
            Ok(out) => return Ok(out.finish(a.rows(), a.cols())),
            Err(Fail::Overflow) => {}
            Err(Fail::Err(e)) => return Err(e),
        }
    }
    let big = a.entries().to_vec();
    match Elimination::new(a.rows(), a.cols(), big, opts, budget).run() {
        Ok(out) => Ok(out.finish(a.rows(), a.cols())),
        // BigInt arithmetic never reports overflow.
        Err(Fail::Overflow) => unreachable!(),
        Err(Fail::Err(e)) => Err(e),
    }
}

/// Checks `P * A * Q == D` with `P`, `Q` unimodular.
pub fn verify_equivalence(a: &IntegerMatrix, p: &IntegerMatrix, q: &IntegerMatrix, d: &IntegerMatrix) -> Result<bool> {
    if p.rows() != p.cols() || p.cols() != a.rows() || q.rows() != q.cols() || q.rows() != a.cols() || d.shape() != a.shape() {
        return Err(Error::Dimension(alloc::format!(
            "P {}x{}, A {}x{}, Q {}x{}, D {}x{}",
            p.rows(),
            p.cols(),
            a.rows(),
            a.cols(),
            q.rows(),
            q.cols(),
            d.rows(),
            d.cols()
        )));
    }
    let paq = p.mul(a)?.mul(q)?;
    if paq.entries() != d.entries() {
        return Ok(false);
    }
    Ok(determinant(p)?.abs().is_one() && determinant(q)?.abs().is_one())
}

enum Fail {
    Overflow,
    Err(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Err(e)
    }
}

type Step<T> = core::result::Result<T, Fail>;

/// Ring element operations used by the elimination; `None` signals overflow.
trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn bits(&self) -> u64;
    /// Nearest-integer quotient.
    fn quotient(&self, d: &Self) -> Option<Self>;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// `a * x + b * y`
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, d: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    /// `(g, x, y)` with `g = gcd > 0` and `g = x * self + y * other`.
    fn ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)>;
    fn into_bigint(self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn bits(&self) -> u64 {
        u64::from(64 - self.unsigned_abs().leading_zeros())
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        let (a, d) = (i128::from(*self), i128::from(*d));
        let mut q = a / d;
        let r = a - q * d;
        if 2 * r.abs() > d.abs() {
            q += r.signum() * d.signum();
        }
        i64::try_from(q).ok()
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_add(b.checked_mul(*y)?)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, other: &Self) -> bool {
        i128::from(*other) % i128::from(*self) == 0
    }
    fn ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)> {
        let (mut r0, mut r1) = (i128::from(*self), i128::from(*other));
        let (mut s0, mut s1, mut t0, mut t1) = (1i128, 0i128, 0i128, 1i128);
        while r1 != 0 {
            let q = r0.div_euclid(r1);
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 < 0 {
            (r0, s0, t0) = (-r0, -s0, -t0);
        }
        Some((i64::try_from(r0).ok()?, i64::try_from(s0).ok()?, i64::try_from(t0).ok()?))
    }
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        self.sign() == Sign::Minus
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn bits(&self) -> u64 {
        BigInt::bits(self)
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        let (mut q, r) = self.div_rem(d);
        if (r.magnitude() << 1u32) > *d.magnitude() {
            if (r.sign() == Sign::Minus) == (d.sign() == Sign::Minus) {
                q += 1;
            } else {
                q -= 1;
            }
        }
        Some(q)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x + b * y)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)> {
        let e = self.extended_gcd(other);
        if e.gcd.sign() == Sign::Minus {
            Some((-e.gcd, -e.x, -e.y))
        } else {
            Some((e.gcd, e.x, e.y))
        }
    }
    fn into_bigint(self) -> BigInt {
        self
    }
}

struct Elimination<'b, T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    /// Accumulated row operations, `rows x rows`.
    p: Option<Vec<T>>,
    /// Accumulated column operations, `cols x cols`.
    q: Option<Vec<T>>,
    max_bits: u64,
    budget: &'b dyn Budget,
}

struct Reduced<T> {
    diag: Vec<T>,
    p: Option<Vec<T>>,
    q: Option<Vec<T>>,
}

fn identity<T: Scalar>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

fn to_matrix<T: Scalar>(n: usize, m: Vec<T>) -> IntegerMatrix {
    IntegerMatrix::new(n, n, m.into_iter().map(T::into_bigint).collect()).expect("square buffer")
}

impl<T: Scalar> Reduced<T> {
    fn finish(self, rows: usize, cols: usize) -> SmithDecomposition {
        SmithDecomposition {
            rows,
            cols,
            invariant_factors: self
                .diag
                .into_iter()
                .map(|d| d.into_bigint().into_parts().1)
                .collect(),
            left_transform: self.p.map(|p| to_matrix(rows, p)),
            right_transform: self.q.map(|q| to_matrix(cols, q)),
        }
    }
}

impl<'b, T: Scalar> Elimination<'b, T> {
    fn new(rows: usize, cols: usize, a: Vec<T>, opts: &SnfOptions, budget: &'b dyn Budget) -> Self {
        let (p, q) = if opts.want_transforms { (Some(identity(rows)), Some(identity(cols))) } else { (None, None) };
        Elimination { rows, cols, a, p, q, max_bits: opts.max_entry_bits, budget }
    }

    fn checked(&self, v: Option<T>) -> Step<T> {
        let v = v.ok_or(Fail::Overflow)?;
        if v.bits() > self.max_bits {
            return Err(Error::EntryTooLarge { max_bits: self.max_bits }.into());
        }
        Ok(v)
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn run(mut self) -> Step<Reduced<T>> {
        let n = self.rows.min(self.cols);
        let mut diag = Vec::new();
        for k in 0..n {
            if !self.clear_cross(k)? {
                break;
            }
            diag.push(self.at(k, k).clone());
        }
        self.normalize_signs(&mut diag)?;
        self.fix_chain(&mut diag)?;
        Ok(Reduced { diag, p: self.p, q: self.q })
    }

    /// Smallest nonzero entry by absolute value in the trailing submatrix;
    /// stops early at a unit.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                if best.is_none_or(|(bi, bj)| x.abs_cmp(self.at(bi, bj)) == Ordering::Less) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Reduces row and column `k` to the single pivot entry at `(k, k)`.
    /// Returns false when the trailing submatrix is zero.
    fn clear_cross(&mut self, k: usize) -> Step<bool> {
        loop {
            if self.budget.exhausted() {
                return Err(Error::BudgetExhausted.into());
            }
            let Some((pi, pj)) = self.find_pivot(k) else {
                return Ok(false);
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            let pivot = self.at(k, k).clone();
            let mut residue = false;

            let support: Vec<usize> = (k..self.cols).filter(|&j| !self.at(k, j).is_zero()).collect();
            for i in k + 1..self.rows {
                if self.at(i, k).is_zero() {
                    continue;
                }
                let f = self.checked(self.at(i, k).quotient(&pivot))?;
                self.row_sub(i, k, &f, &support)?;
                residue |= !self.at(i, k).is_zero();
            }

            let support: Vec<usize> = (k..self.rows).filter(|&i| !self.at(i, k).is_zero()).collect();
            for j in k + 1..self.cols {
                if self.at(k, j).is_zero() {
                    continue;
                }
                let f = self.checked(self.at(k, j).quotient(&pivot))?;
                self.col_sub(j, k, &f, &support)?;
                residue |= !self.at(k, j).is_zero();
            }

            if !residue {
                return Ok(true);
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let c = self.cols;
        for t in 0..c {
            self.a.swap(i * c + t, j * c + t);
        }
        if let Some(p) = &mut self.p {
            let r = self.rows;
            for t in 0..r {
                p.swap(i * r + t, j * r + t);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let c = self.cols;
        for t in 0..self.rows {
            self.a.swap(t * c + i, t * c + j);
        }
        if let Some(q) = &mut self.q {
            for t in 0..c {
                q.swap(t * c + i, t * c + j);
            }
        }
    }

    /// `row[target] -= f * row[src]`, touching only the given columns of `A`.
    fn row_sub(&mut self, target: usize, src: usize, f: &T, support: &[usize]) -> Step<()> {
        let c = self.cols;
        for &j in support {
            let v = self.a[target * c + j].sub_mul(f, &self.a[src * c + j]);
            self.a[target * c + j] = self.checked(v)?;
        }
        if let Some(mut p) = self.p.take() {
            let r = self.rows;
            for j in 0..r {
                if !p[src * r + j].is_zero() {
                    let v = p[target * r + j].sub_mul(f, &p[src * r + j]);
                    p[target * r + j] = self.checked(v)?;
                }
            }
            self.p = Some(p);
        }
        Ok(())
    }

    /// `col[target] -= f * col[src]`, touching only the given rows of `A`.
    fn col_sub(&mut self, target: usize, src: usize, f: &T, support: &[usize]) -> Step<()> {
        let c = self.cols;
        for &i in support {
            let v = self.a[i * c + target].sub_mul(f, &self.a[i * c + src]);
            self.a[i * c + target] = self.checked(v)?;
        }
        if let Some(mut q) = self.q.take() {
            for i in 0..c {
                if !q[i * c + src].is_zero() {
                    let v = q[i * c + target].sub_mul(f, &q[i * c + src]);
                    q[i * c + target] = self.checked(v)?;
                }
            }
            self.q = Some(q);
        }
        Ok(())
    }

    fn normalize_signs(&mut self, diag: &mut [T]) -> Step<()> {
        for (k, d) in diag.iter_mut().enumerate() {
            if !d.is_negative() {
                continue;
            }
            *d = self.checked(d.neg())?;
            if let Some(mut p) = self.p.take() {
                let r = self.rows;
                for j in 0..r {
                    let v = p[k * r + j].neg();
                    p[k * r + j] = self.checked(v)?;
                }
                self.p = Some(p);
            }
        }
        Ok(())
    }

    /// Replaces diagonal pairs `(a, b)` by `(gcd, lcm)` until every entry
    /// divides its successors.
    fn fix_chain(&mut self, diag: &mut [T]) -> Step<()> {
        for i in 0..diag.len() {
            if diag[i].is_unit() {
                continue;
            }
            for j in i + 1..diag.len() {
                if diag[i].divides(&diag[j]) {
                    continue;
                }
                let (a, b) = (diag[i].clone(), diag[j].clone());
                let (g, x, y) = a.ext_gcd(&b).ok_or(Fail::Overflow)?;
                let a_g = a.div_exact(&g);
                let b_g = b.div_exact(&g);
                let lcm = self.checked(a_g.mul(&b))?;
                if self.p.is_some() || self.q.is_some() {
                    self.fixup_transforms(i, j, &x, &y, &a_g, &b_g)?;
                }
                diag[i] = g;
                diag[j] = lcm;
            }
        }
        Ok(())
    }

    /// Row/column operations taking `diag(a, b)` at positions `i < j` to
    /// `diag(g, ab/g)`:
    /// `row_i += row_j`, then columns `(i, j)` by `[[x, -b/g], [y, a/g]]`,
    /// then `row_j -= (y b / g) row_i`.
    fn fixup_transforms(&mut self, i: usize, j: usize, x: &T, y: &T, a_g: &T, b_g: &T) -> Step<()> {
        if let Some(mut p) = self.p.take() {
            let r = self.rows;
            let yb_g = self.checked(y.mul(b_g))?;
            let minus_one = T::one().neg().ok_or(Fail::Overflow)?;
            for t in 0..r {
                let v = p[i * r + t].sub_mul(&minus_one, &p[j * r + t]);
                p[i * r + t] = self.checked(v)?;
            }
            for t in 0..r {
                let v = p[j * r + t].sub_mul(&yb_g, &p[i * r + t]);
                p[j * r + t] = self.checked(v)?;
            }
            self.p = Some(p);
        }
        if let Some(mut q) = self.q.take() {
            let c = self.cols;
            let minus_b_g = self.checked(b_g.neg())?;
            for t in 0..c {
                let ci = q[t * c + i].clone();
                let cj = q[t * c + j].clone();
                q[t * c + i] = self.checked(T::combine(x, &ci, y, &cj))?;
                q[t * c + j] = self.checked(T::combine(&minus_b_g, &ci, a_g, &cj))?;
            }
            self.q = Some(q);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn factors(rows: &[&[i64]]) -> Vec<u64> {
        let a = IntegerMatrix::from_rows(rows).unwrap();
        smith_normal_form(&a, false)
            .unwrap()
            .invariant_factors()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn diagonal_triple() {
        assert_eq!(factors(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), [2, 2, 2]);
        assert_eq!(factors(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]), [1, 2, 4]);
        assert_eq!(factors(&[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]), [1, 1, 8]);
    }

    #[test]
    fn product_example_at_two() {
        let a = IntegerMatrix::from_rows(&[[1, 0], [-2, 4]]).unwrap();
        let b = IntegerMatrix::from_rows(&[[2, 0], [1, 2]]).unwrap();
        let snf = |m: &IntegerMatrix| -> Vec<u64> {
            smith_normal_form(m, false).unwrap().invariant_factors().iter().map(|x| x.to_u64().unwrap()).collect()
        };
        assert_eq!(snf(&a), [1, 4]);
        assert_eq!(snf(&b), [1, 4]);
        assert_eq!(snf(&a.mul(&b).unwrap()), [2, 8]);
    }

    #[test]
    fn empty_and_zero() {
        assert_eq!(factors(&[]), Vec::<u64>::new());
        let z = IntegerMatrix::zeros(3, 3);
        assert_eq!(smith_normal_form(&z, true).unwrap().rank(), 0);
        let wide = IntegerMatrix::zeros(0, 4);
        let d = smith_normal_form(&wide, true).unwrap();
        assert_eq!(d.rank(), 0);
        assert_eq!(d.right_transform().unwrap().rows(), 4);
    }

    #[test]
    fn identity_is_all_ones() {
        let d = smith_normal_form(&IntegerMatrix::identity(5), false).unwrap();
        assert_eq!(d.rank(), 5);
        assert!(d.invariant_factors().iter().all(One::is_one));
    }

    #[test]
    fn transforms_verify_including_chain_fixups() {
        // diag(4, 6, 10) needs gcd/lcm fixups: chain (2, 2, 60).
        let a = IntegerMatrix::from_rows(&[[4, 0, 0], [0, 6, 0], [0, 0, -10]]).unwrap();
        let d = smith_normal_form(&a, true).unwrap();
        let f: Vec<u64> = d.invariant_factors().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(f, [2, 2, 60]);
        let ok = verify_equivalence(&a, d.left_transform().unwrap(), d.right_transform().unwrap(), &d.diagonal()).unwrap();
        assert!(ok);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2 + 7;
        let a = IntegerMatrix::from_rows(&[[big, 3], [5, big - 1]]).unwrap();
        let d = smith_normal_form(&a, true).unwrap();
        let det = determinant(&a).unwrap();
        let prod: BigUint = d.invariant_factors().iter().product();
        assert_eq!(BigInt::from(prod), det.abs());
        assert!(verify_equivalence(&a, d.left_transform().unwrap(), d.right_transform().unwrap(), &d.diagonal()).unwrap());
    }

    #[test]
    fn entry_limit_is_reported() {
        let a = IntegerMatrix::from_rows(&[[1 << 40, 3], [5, 1 << 41]]).unwrap();
        let opts = SnfOptions { want_transforms: false, max_entry_bits: 8 };
        assert_eq!(
            smith_normal_form_with(&a, &opts, &Unlimited).unwrap_err(),
            Error::EntryTooLarge { max_bits: 8 }
        );
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let a = IntegerMatrix::identity(3);
        let spent = || true;
        let err = smith_normal_form_with(&a, &SnfOptions::default(), &spent).unwrap_err();
        assert_eq!(err, Error::BudgetExhausted);
    }

    #[test]
    fn verify_rejects_non_unimodular() {
        let a = IntegerMatrix::identity(2);
        let p = IntegerMatrix::from_rows(&[[2, 0], [0, 1]]).unwrap();
        let d = IntegerMatrix::from_rows(&[[2, 0], [0, 1]]).unwrap();
        assert!(!verify_equivalence(&a, &p, &IntegerMatrix::identity(2), &d).unwrap());
        assert!(verify_equivalence(&a, &IntegerMatrix::identity(2), &IntegerMatrix::identity(2), &a).unwrap());
        assert!(verify_equivalence(&a, &IntegerMatrix::identity(3), &IntegerMatrix::identity(2), &a).is_err());
    }

    #[test]
    fn chain_constructor_validates() {
        let two = BigUint::from(2u32);
        let three = BigUint::from(3u32);
        assert!(SmithDecomposition::from_invariant_factors(2, 2, alloc::vec![two.clone(), three]).is_err());
        assert!(SmithDecomposition::from_invariant_factors(1, 2, alloc::vec![two.clone(), two]).is_err());
    }
}
