//! Deterministic construction of 0/1 incidence matrices.
//!
//! Row and column orders are canonical: colex on subsets, RREF order on
//! subspaces, mixed-radix order on group elements.

mod spec;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use spec::{mixed_radix_element, mixed_radix_index, tuple_label, IncidenceSpec, FAMILY_TAGS, MAX_GROUND_SET, MAX_GROUP_ORDER};

use crate::error::{Error, Result};
use crate::field::{field_tables, FieldTables, PrimePower};
use crate::matrix::IntegerMatrix;
use crate::subspace::{enumerate_subspaces, SubspaceRep};

/// Default bound on `rows * cols` of a generated matrix.
pub const DEFAULT_MAX_ENTRIES: u128 = 2000 * 2000;

pub fn build(spec: &IncidenceSpec) -> Result<IntegerMatrix> {
    build_bounded(spec, DEFAULT_MAX_ENTRIES)
}

pub fn build_bounded(spec: &IncidenceSpec, max_entries: u128) -> Result<IntegerMatrix> {
    spec.validate()?;
    let (r, c) = spec.shape();
    let count = r.saturating_mul(c);
    if count > max_entries {
        return Err(Error::TooMany { what: "matrix entries", count, bound: max_entries });
    }
    match *spec {
        IncidenceSpec::SubsetInclusion { n, t, k } => subset_relation(n, t, k, |a, b| a & !b == 0),
        IncidenceSpec::SubsetDisjointness { n, t, k } => subset_relation(n, t, k, |a, b| a & b == 0),
        IncidenceSpec::SubsetIntersection { n, t, k, s } => {
            subset_relation(n, t, k, |a, b| (a & b).count_ones() as usize == s)
        }
        IncidenceSpec::Kneser { n, k } => subset_relation(n, k, k, |a, b| a & b == 0),
        IncidenceSpec::SubspaceInclusion { dim, d, e, q } => {
            subspace_relation(dim, d, e, q, |ff, x, y| y.contains(ff, x))
        }
        IncidenceSpec::SubspaceZeroMeet { dim, d, e, q } => {
            subspace_relation(dim, d, e, q, |ff, x, y| x.meets_trivially(ff, y))
        }
        IncidenceSpec::PointHyperplane { n, q } => point_hyperplane(n, q),
        IncidenceSpec::HammingMaxDistance { m, n } => {
            let orders = alloc::vec![n as u64; m];
            group_relation(&orders, |g, h| g.iter().zip(h).all(|(a, b)| a != b))
        }
        IncidenceSpec::AbelianCayley { ref orders, ref connecting_set } => {
            let members: BTreeSet<u64> = connecting_set.iter().map(|e| mixed_radix_index(orders, e)).collect();
            group_relation(orders, |g, h| {
                let diff: Vec<u64> = g.iter().zip(h).zip(orders).map(|((a, b), o)| (b + o - a) % o).collect();
                members.contains(&mixed_radix_index(orders, &diff))
            })
        }
    }
}

/// All `k`-subsets of `0..n` as bit masks in colex order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return alloc::vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut x = (1u64 << k) - 1;
    while x < limit {
        out.push(x);
        // Gosper's hack: next larger integer with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// `{0,2,5}`
pub fn subset_label(mask: u64) -> String {
    let elems: Vec<String> = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| format!("{i}")).collect();
    format!("{{{}}}", elems.join(","))
}

fn subset_relation(n: usize, t: usize, k: usize, incident: impl Fn(u64, u64) -> bool) -> Result<IntegerMatrix> {
    let rows = k_subsets(n, t);
    let cols = k_subsets(n, k);
    let m = IntegerMatrix::from_relation(rows.len(), cols.len(), |i, j| incident(rows[i], cols[j]));
    m.with_labels(
        Some(rows.iter().map(|&x| subset_label(x)).collect()),
        Some(cols.iter().map(|&x| subset_label(x)).collect()),
    )
}

fn field_for(q: u64) -> Result<FieldTables> {
    let pp = PrimePower::new(q)?;
    field_tables(pp.p(), pp.t())
}

fn subspace_relation(
    dim: usize,
    d: usize,
    e: usize,
    q: u64,
    incident: impl Fn(&FieldTables, &SubspaceRep, &SubspaceRep) -> bool,
) -> Result<IntegerMatrix> {
    let ff = field_for(q)?;
    let rows = enumerate_subspaces(dim, d, &ff)?;
    let cols = enumerate_subspaces(dim, e, &ff)?;
    let m = IntegerMatrix::from_relation(rows.len(), cols.len(), |i, j| incident(&ff, &rows[i], &cols[j]));
    m.with_labels(
        Some(rows.iter().map(SubspaceRep::label).collect()),
        Some(cols.iter().map(SubspaceRep::label).collect()),
    )
}

fn point_hyperplane(n: usize, q: u64) -> Result<IntegerMatrix> {
    let ff = field_for(q)?;
    let points = enumerate_subspaces(n + 1, 1, &ff)?;
    let m = IntegerMatrix::from_relation(points.len(), points.len(), |i, j| {
        ff.dot(points[i].basis_row(0), points[j].basis_row(0)) == 0
    });
    m.with_labels(
        Some(points.iter().map(SubspaceRep::label).collect()),
        Some(points.iter().map(|h| format!("{}^perp", h.label())).collect()),
    )
}

fn group_relation(orders: &[u64], incident: impl Fn(&[u64], &[u64]) -> bool) -> Result<IntegerMatrix> {
    let size: u64 = orders.iter().product();
    let elems: Vec<Vec<u64>> = (0..size).map(|i| mixed_radix_element(orders, i)).collect();
    let labels: Vec<String> = elems.iter().map(|e| tuple_label(e)).collect();
    let m = IntegerMatrix::from_relation(elems.len(), elems.len(), |i, j| incident(&elems[i], &elems[j]));
    m.with_labels(Some(labels.clone()), Some(labels))
}
