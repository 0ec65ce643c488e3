//! Dense integer matrices with optional row/column labels.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries, row_labels: None, col_labels: None })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: alloc::vec![BigInt::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntegerMatrix { rows, cols, entries, row_labels: None, col_labels: None }
    }

    /// 0/1 matrix from an incidence predicate.
    pub fn from_relation(rows: usize, cols: usize, mut incident: impl FnMut(usize, usize) -> bool) -> Self {
        Self::from_fn(rows, cols, |i, j| if incident(i, j) { BigInt::one() } else { BigInt::zero() })
    }

    /// Builds a matrix from rows of machine integers. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::InvalidMatrix(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn with_labels(mut self, row_labels: Option<Vec<String>>, col_labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &row_labels {
            check_labels(l, self.rows, "row")?;
        }
        if let Some(l) = &col_labels {
            check_labels(l, self.cols, "column")?;
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn without_labels(mut self) -> Self {
        self.row_labels = None;
        self.col_labels = None;
        self
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Matrix product. Labels are carried over from the outer factors.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = rhs.col_labels.clone();
        Ok(out)
    }

    pub fn add(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &IntegerMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntegerMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(IntegerMatrix { entries, ..self.clone() })
    }

    pub fn scale(&self, c: &BigInt) -> IntegerMatrix {
        IntegerMatrix { entries: self.entries.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    /// `A - c I` for square `A`.
    pub fn shift_diagonal(&self, c: &BigInt) -> Result<IntegerMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.entries[i * self.cols + i] -= c;
        }
        Ok(out)
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(row_order[i], col_order[j])` of `self`.
    pub fn permute(&self, row_order: &[usize], col_order: &[usize]) -> Result<IntegerMatrix> {
        check_permutation(row_order, self.rows)?;
        check_permutation(col_order, self.cols)?;
        let mut out = Self::from_fn(self.rows, self.cols, |i, j| self.get(row_order[i], col_order[j]).clone());
        out.row_labels = self.row_labels.as_ref().map(|l| row_order.iter().map(|&i| l[i].clone()).collect());
        out.col_labels = self.col_labels.as_ref().map(|l| col_order.iter().map(|&j| l[j].clone()).collect());
        Ok(out)
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<BigInt> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_entries(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|x| x.to_i64()).collect()
    }

    /// Largest entry bit length.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|x| x.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

fn check_labels(labels: &[String], expected: usize, side: &str) -> Result<()> {
    if labels.len() != expected {
        return Err(Error::InvalidMatrix(format!("{} {side} labels for {expected} {side}s", labels.len())));
    }
    let distinct: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
    if distinct.len() != labels.len() {
        return Err(Error::InvalidMatrix(format!("duplicate {side} labels")));
    }
    Ok(())
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = alloc::vec![false; n];
    if order.len() != n {
        return Err(Error::Dimension(format!("permutation of length {} for dimension {n}", order.len())));
    }
    for &i in order {
        if i >= n || core::mem::replace(&mut seen[i], true) {
            return Err(Error::Dimension(String::from("not a permutation")));
        }
    }
    Ok(())
}
