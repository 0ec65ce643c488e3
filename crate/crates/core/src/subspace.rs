//! Subspaces of `F_q^dim` in canonical reduced row-echelon form.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::field::FieldTables;

/// Default bound on the number of enumerated subspaces.
pub const DEFAULT_SUBSPACE_BOUND: u128 = 1 << 20;

/// A `d`-dimensional subspace given by its RREF basis (`d x dim`, row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceRep {
    pivots: Vec<usize>,
    basis: Vec<u16>,
    dim: usize,
}

impl SubspaceRep {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_row(&self, i: usize) -> &[u16] {
        &self.basis[i * self.dim..(i + 1) * self.dim]
    }

    pub fn basis(&self) -> &[u16] {
        &self.basis
    }

    /// Whether `v` lies in the subspace.
    pub fn contains_vector(&self, ff: &FieldTables, v: &[u16]) -> bool {
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis_row(r)) {
                *x = ff.sub(*x, ff.mul(c, b));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`
    pub fn contains(&self, ff: &FieldTables, other: &SubspaceRep) -> bool {
        other.dim() <= self.dim() && (0..other.dim()).all(|i| self.contains_vector(ff, other.basis_row(i)))
    }

    /// Whether the intersection with `other` is the zero subspace.
    pub fn meets_trivially(&self, ff: &FieldTables, other: &SubspaceRep) -> bool {
        if self.dim() + other.dim() > self.dim {
            return false;
        }
        let mut rows: Vec<Vec<u16>> = Vec::with_capacity(self.dim() + other.dim());
        rows.extend((0..self.dim()).map(|i| self.basis_row(i).to_vec()));
        rows.extend((0..other.dim()).map(|i| other.basis_row(i).to_vec()));
        rank(ff, &mut rows) == self.dim() + other.dim()
    }

    /// Basis rows as `[a,b,c;d,e,f]`.
    pub fn label(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.dim() {
            if i > 0 {
                s.push(';');
            }
            for (j, x) in self.basis_row(i).iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{x}");
            }
        }
        s.push(']');
        s
    }
}

/// Rank over the field; `rows` is reduced in place.
pub fn rank(ff: &FieldTables, rows: &mut [Vec<u16>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ff.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = ff.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let v = ff.mul(f, rows[r][j]);
                    rows[i][j] = ff.sub(rows[i][j], v);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Number of `d`-subspaces of `F_q^dim` (Gaussian binomial), saturating.
pub fn subspace_count(dim: usize, d: usize, q: u64) -> u128 {
    if d > dim {
        return 0;
    }
    let q = u128::from(q);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        let a = q.saturating_pow((dim - i) as u32).saturating_sub(1);
        let b = q.saturating_pow((i + 1) as u32).saturating_sub(1);
        num = num.saturating_mul(a);
        den = den.saturating_mul(b);
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    if den == 0 {
        u128::MAX
    } else {
        num / den
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

pub fn enumerate_subspaces(dim: usize, d: usize, ff: &FieldTables) -> Result<Vec<SubspaceRep>> {
    enumerate_subspaces_bounded(dim, d, ff, DEFAULT_SUBSPACE_BOUND)
}

/// All `d`-subspaces of `F_q^dim`, ordered by pivot set and then by the
/// flattened RREF entries.
pub fn enumerate_subspaces_bounded(dim: usize, d: usize, ff: &FieldTables, bound: u128) -> Result<Vec<SubspaceRep>> {
    if d > dim {
        return Err(Error::InvalidParameters(format!("subspace dimension {d} exceeds ambient dimension {dim}")));
    }
    let q = ff.q();
    let count = subspace_count(dim, d, q as u64);
    if count > bound {
        return Err(Error::TooMany { what: "subspaces", count, bound });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // Free positions in flattened row-major order.
        let free: Vec<usize> = (0..d)
            .flat_map(|r| {
                let pv = &pivots;
                (pv[r] + 1..dim).filter(move |c| !pv.contains(c)).map(move |c| r * dim + c)
            })
            .collect();
        let mut base = vec![0u16; d * dim];
        for (r, &c) in pivots.iter().enumerate() {
            base[r * dim + c] = 1;
        }
        let mut digits = vec![0u16; free.len()];
        'assign: loop {
            let mut basis = base.clone();
            for (&pos, &x) in free.iter().zip(&digits) {
                basis[pos] = x;
            }
            out.push(SubspaceRep { pivots: pivots.clone(), basis, dim });
            // Odometer step, last free position least significant.
            let mut i = digits.len();
            loop {
                if i == 0 {
                    break 'assign;
                }
                i -= 1;
                digits[i] += 1;
                if (digits[i] as usize) < q {
                    continue 'assign;
                }
                digits[i] = 0;
            }
        }
        if !next_pivot_set(&mut pivots, dim) {
            break;
        }
    }
    Ok(out)
}

fn next_pivot_set(c: &mut [usize], n: usize) -> bool {
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
