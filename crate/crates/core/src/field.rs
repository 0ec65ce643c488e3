//! Small finite fields `F_q`, `q = p^t`, by explicit tables.
//!
//! Elements are encoded `0..q` as `c_0 + c_1 p + ... + c_{t-1} p^{t-1}`, the
//! coefficient vector of a polynomial in `F_p[x]` reduced modulo the defining
//! polynomial. The defining polynomial is the monic irreducible of degree `t`
//! whose encoding `c_0 + c_1 p + ... + p^t` is smallest.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default bound on the field order.
pub const DEFAULT_FIELD_BOUND: u64 = 512;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `q = p^t` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    q: u64,
    p: u64,
    t: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let mut p = 2;
        while !q.is_multiple_of(p) {
            p += 1;
        }
        let (mut rest, mut t) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            t += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(PrimePower { q, p, t })
    }

    pub fn from_parts(p: u64, t: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 {
            return Err(Error::InvalidParameters("exponent must be positive".into()));
        }
        let q = p.checked_pow(t).ok_or_else(|| Error::InvalidParameters("prime power overflows u64".into()))?;
        Ok(PrimePower { q, p, t })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }
}

/// Addition and multiplication tables of `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTables {
    order: PrimePower,
    /// Coefficients `c_0..c_t` of the monic defining polynomial.
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

pub fn field_tables(p: u64, t: u32) -> Result<FieldTables> {
    field_tables_bounded(p, t, DEFAULT_FIELD_BOUND)
}

pub fn field_tables_bounded(p: u64, t: u32, bound: u64) -> Result<FieldTables> {
    let order = PrimePower::from_parts(p, t)?;
    if order.q() > bound || order.q() > u64::from(u16::MAX) {
        return Err(Error::FieldTooLarge { order: order.q(), bound });
    }
    let q = order.q() as usize;
    let t = t as usize;
    let modulus = smallest_irreducible(p, t);

    let digits = |x: usize| -> Vec<u64> {
        let mut d = vec![0u64; t];
        let mut x = x as u64;
        for c in d.iter_mut() {
            *c = x % p;
            x /= p;
        }
        d
    };
    let encode = |d: &[u64]| -> u16 { d.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u16 };

    let all: Vec<Vec<u64>> = (0..q).map(digits).collect();
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..q {
        for b in 0..q {
            let sum: Vec<u64> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&sum);
            let prod = poly_mulmod(&all[a], &all[b], &modulus, p);
            mul[a * q + b] = encode(&prod);
        }
    }
    let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).expect("additive inverse") as u16).collect();
    let mut inv = vec![0u16; q];
    for a in 1..q {
        inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).ok_or_else(|| {
            Error::InvalidParameters("defining polynomial is reducible".into())
        })? as u16;
    }
    Ok(FieldTables { order, modulus, add, mul, neg, inv })
}

impl FieldTables {
    pub fn order(&self) -> PrimePower {
        self.order
    }

    pub fn q(&self) -> usize {
        self.order.q() as usize
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u16) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Dot product of two vectors over the field.
    pub fn dot(&self, a: &[u16], b: &[u16]) -> u16 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// `a * b mod f` over `F_p`; `a`, `b` have `deg f` coefficients.
fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let t = f.len() - 1;
    let mut prod = vec![0u64; 2 * t.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod.truncate(t);
    prod.resize(t, 0);
    prod
}

/// Reduces `a` in place modulo monic `f`.
fn poly_rem(a: &mut [u64], f: &[u64], p: u64) {
    let t = f.len() - 1;
    for deg in (t..a.len()).rev() {
        let c = a[deg];
        if c == 0 {
            continue;
        }
        for (k, &fk) in f.iter().enumerate() {
            let idx = deg - t + k;
            a[idx] = (a[idx] + (p - c) * fk) % p;
        }
    }
}

/// Monic polynomial of degree `deg` with lower coefficients from `code`'s base-p digits.
fn monic_from_code(code: u64, deg: usize, p: u64) -> Vec<u64> {
    let mut f = vec![0u64; deg + 1];
    let mut c = code;
    for x in f.iter_mut().take(deg) {
        *x = c % p;
        c /= p;
    }
    f[deg] = 1;
    f
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let t = f.len() - 1;
    for deg in 1..=t / 2 {
        for code in 0..p.pow(deg as u32) {
            let g = monic_from_code(code, deg, p);
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            if r[..deg].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, t: usize) -> Vec<u64> {
    (0..p.pow(t as u32))
        .map(|code| monic_from_code(code, t, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
