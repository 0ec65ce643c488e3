use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{PrimePower, DEFAULT_FIELD_BOUND};
use crate::subspace::subspace_count;

/// Largest ground set for the subset families (subsets are `u64` masks).
pub const MAX_GROUND_SET: usize = 63;
/// Largest group order for the abelian Cayley family.
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

/// A family of incidence matrices together with its parameters.
///
/// The canonical text form (`Display` / `FromStr`) is the family tag
/// followed by `key=value` pairs, e.g. `subspace-inclusion dim=4 d=1 e=2 q=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IncidenceSpec {
    /// `t`-subsets contained in `k`-subsets of an `n`-set.
    SubsetInclusion { n: usize, t: usize, k: usize },
    /// `t`-subsets disjoint from `k`-subsets.
    SubsetDisjointness { n: usize, t: usize, k: usize },
    /// `t`-subsets meeting `k`-subsets in exactly `s` points.
    SubsetIntersection { n: usize, t: usize, k: usize, s: usize },
    /// `d`-subspaces contained in `e`-subspaces of `F_q^dim`.
    SubspaceInclusion { dim: usize, d: usize, e: usize, q: u64 },
    /// `d`-subspaces meeting `e`-subspaces in zero.
    SubspaceZeroMeet { dim: usize, d: usize, e: usize, q: u64 },
    /// Points and hyperplanes of `PG(n, q)`; hyperplanes given by normal vectors.
    PointHyperplane { n: usize, q: u64 },
    /// Transversals of `m` parts of size `n`, incident when disjoint.
    HammingMaxDistance { m: usize, n: usize },
    /// `k`-subsets of an `n`-set, adjacent when disjoint.
    Kneser { n: usize, k: usize },
    /// Cayley graph of `Z_{n_1} x ... x Z_{n_r}`: `g ~ h` iff `h - g` is in the set.
    AbelianCayley { orders: Vec<u64>, connecting_set: Vec<Vec<u64>> },
}

pub const FAMILY_TAGS: [&str; 9] = [
    "subset-inclusion",
    "subset-disjointness",
    "subset-intersection",
    "subspace-inclusion",
    "subspace-zero-meet",
    "point-hyperplane",
    "hamming-max-distance",
    "kneser",
    "abelian-cayley",
];

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

/// `C(n, k)` saturating in `u128`.
pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

impl IncidenceSpec {
    /// Abelian Cayley spec with the connecting set sorted and deduplicated.
    pub fn abelian_cayley(orders: Vec<u64>, mut connecting_set: Vec<Vec<u64>>) -> Result<Self> {
        connecting_set.sort_by_key(|e| mixed_radix_index(&orders, e));
        connecting_set.dedup();
        let spec = IncidenceSpec::AbelianCayley { orders, connecting_set };
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> &'static str {
        match self {
            IncidenceSpec::SubsetInclusion { .. } => FAMILY_TAGS[0],
            IncidenceSpec::SubsetDisjointness { .. } => FAMILY_TAGS[1],
            IncidenceSpec::SubsetIntersection { .. } => FAMILY_TAGS[2],
            IncidenceSpec::SubspaceInclusion { .. } => FAMILY_TAGS[3],
            IncidenceSpec::SubspaceZeroMeet { .. } => FAMILY_TAGS[4],
            IncidenceSpec::PointHyperplane { .. } => FAMILY_TAGS[5],
            IncidenceSpec::HammingMaxDistance { .. } => FAMILY_TAGS[6],
            IncidenceSpec::Kneser { .. } => FAMILY_TAGS[7],
            IncidenceSpec::AbelianCayley { .. } => FAMILY_TAGS[8],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            IncidenceSpec::SubsetInclusion { n, t, k } | IncidenceSpec::SubsetDisjointness { n, t, k } => {
                check_subsets(n, t, k)
            }
            IncidenceSpec::SubsetIntersection { n, t, k, s } => {
                check_subsets(n, t, k)?;
                if s > t {
                    return Err(invalid(format!("intersection size s={s} exceeds t={t}")));
                }
                Ok(())
            }
            IncidenceSpec::SubspaceInclusion { dim, d, e, q } => {
                check_field(q)?;
                if !(1 <= d && d <= e && e <= dim) {
                    return Err(invalid(format!("need 1 <= d <= e <= dim, got d={d} e={e} dim={dim}")));
                }
                Ok(())
            }
            IncidenceSpec::SubspaceZeroMeet { dim, d, e, q } => {
                check_field(q)?;
                if !(1 <= d && d <= e && d + e <= dim) {
                    return Err(invalid(format!("need 1 <= d <= e and d + e <= dim, got d={d} e={e} dim={dim}")));
                }
                Ok(())
            }
            IncidenceSpec::PointHyperplane { n, q } => {
                check_field(q)?;
                if n < 1 {
                    return Err(invalid("point-hyperplane needs n >= 1".into()));
                }
                Ok(())
            }
            IncidenceSpec::HammingMaxDistance { m, n } => {
                if m < 1 || n < 2 {
                    return Err(invalid(format!("hamming needs m >= 1 and n >= 2, got m={m} n={n}")));
                }
                let size = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
                if size > u128::from(MAX_GROUP_ORDER) {
                    return Err(Error::TooMany { what: "transversals", count: size, bound: u128::from(MAX_GROUP_ORDER) });
                }
                Ok(())
            }
            IncidenceSpec::Kneser { n, k } => {
                if 2 * k > n || n > MAX_GROUND_SET {
                    return Err(invalid(format!("kneser needs 2k <= n <= {MAX_GROUND_SET}, got n={n} k={k}")));
                }
                Ok(())
            }
            IncidenceSpec::AbelianCayley { ref orders, ref connecting_set } => {
                if orders.is_empty() || orders.contains(&0) {
                    return Err(invalid("cyclic orders must be positive and nonempty".into()));
                }
                let size = orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o)).unwrap_or(u64::MAX);
                if size > MAX_GROUP_ORDER {
                    return Err(Error::TooMany { what: "group elements", count: u128::from(size), bound: u128::from(MAX_GROUP_ORDER) });
                }
                for e in connecting_set {
                    if e.len() != orders.len() || e.iter().zip(orders).any(|(x, o)| x >= o) {
                        return Err(invalid(format!("{e:?} is not an element of Z_{orders:?}")));
                    }
                }
                Ok(())
            }
        }
    }

    /// `(rows, cols)` of the generated matrix, computed without building it.
    pub fn shape(&self) -> (u128, u128) {
        match *self {
            IncidenceSpec::SubsetInclusion { n, t, k }
            | IncidenceSpec::SubsetDisjointness { n, t, k }
            | IncidenceSpec::SubsetIntersection { n, t, k, .. } => (binomial_u128(n, t), binomial_u128(n, k)),
            IncidenceSpec::SubspaceInclusion { dim, d, e, q } | IncidenceSpec::SubspaceZeroMeet { dim, d, e, q } => {
                (subspace_count(dim, d, q), subspace_count(dim, e, q))
            }
            IncidenceSpec::PointHyperplane { n, q } => {
                let v = subspace_count(n + 1, 1, q);
                (v, v)
            }
            IncidenceSpec::HammingMaxDistance { m, n } => {
                let v = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
                (v, v)
            }
            IncidenceSpec::Kneser { n, k } => {
                let v = binomial_u128(n, k);
                (v, v)
            }
            IncidenceSpec::AbelianCayley { ref orders, .. } => {
                let v = orders.iter().map(|&o| u128::from(o)).product();
                (v, v)
            }
        }
    }
}

fn check_subsets(n: usize, t: usize, k: usize) -> Result<()> {
    if !(t <= k && k <= n) {
        return Err(invalid(format!("need 0 <= t <= k <= n, got n={n} t={t} k={k}")));
    }
    if n > MAX_GROUND_SET {
        return Err(invalid(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
    }
    Ok(())
}

fn check_field(q: u64) -> Result<()> {
    PrimePower::new(q)?;
    if q > DEFAULT_FIELD_BOUND {
        return Err(Error::FieldTooLarge { order: q, bound: DEFAULT_FIELD_BOUND });
    }
    Ok(())
}

/// Position of `e` in the mixed-radix order (first coordinate most significant).
pub fn mixed_radix_index(orders: &[u64], e: &[u64]) -> u64 {
    orders.iter().zip(e).fold(0, |acc, (&o, &x)| acc * o + x)
}

/// Inverse of [`mixed_radix_index`].
pub fn mixed_radix_element(orders: &[u64], mut index: u64) -> Vec<u64> {
    let mut e = alloc::vec![0; orders.len()];
    for (x, &o) in e.iter_mut().zip(orders).rev() {
        *x = index % o;
        index /= o;
    }
    e
}

pub fn tuple_label(e: &[u64]) -> String {
    let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for IncidenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family())?;
        match self {
            IncidenceSpec::SubsetInclusion { n, t, k } | IncidenceSpec::SubsetDisjointness { n, t, k } => {
                write!(f, " n={n} t={t} k={k}")
            }
            IncidenceSpec::SubsetIntersection { n, t, k, s } => write!(f, " n={n} t={t} k={k} s={s}"),
            IncidenceSpec::SubspaceInclusion { dim, d, e, q } | IncidenceSpec::SubspaceZeroMeet { dim, d, e, q } => {
                write!(f, " dim={dim} d={d} e={e} q={q}")
            }
            IncidenceSpec::PointHyperplane { n, q } => write!(f, " n={n} q={q}"),
            IncidenceSpec::HammingMaxDistance { m, n } => write!(f, " m={m} n={n}"),
            IncidenceSpec::Kneser { n, k } => write!(f, " n={n} k={k}"),
            IncidenceSpec::AbelianCayley { orders, connecting_set } => {
                let orders: Vec<String> = orders.iter().map(ToString::to_string).collect();
                let set: Vec<String> = connecting_set
                    .iter()
                    .map(|e| e.iter().map(ToString::to_string).collect::<Vec<_>>().join("."))
                    .collect();
                write!(f, " orders={} set={}", orders.join(","), set.join(","))
            }
        }
    }
}

struct Params<'a> {
    family: &'a str,
    values: BTreeMap<&'a str, &'a str>,
}

impl<'a> Params<'a> {
    fn parse(s: &'a str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let family = tokens.next().ok_or_else(|| Error::Parse("empty spec".into()))?;
        let mut values = BTreeMap::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
            if values.insert(k, v).is_some() {
                return Err(Error::Parse(format!("duplicate key {k:?}")));
            }
        }
        Ok(Params { family, values })
    }

    fn take(&mut self, key: &str) -> Result<&'a str> {
        self.values
            .remove(key)
            .ok_or_else(|| Error::Parse(format!("{} requires {key}=", self.family)))
    }

    fn num<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.take(key)?;
        v.parse().map_err(|_| Error::Parse(format!("{key}={v:?} is not a non-negative integer")))
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(k) => Err(Error::Parse(format!("unknown key {k:?} for {}", self.family))),
            None => Ok(()),
        }
    }
}

fn number_list(s: &str, sep: char) -> Result<Vec<u64>> {
    s.split(sep)
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("{x:?} is not a non-negative integer"))))
        .collect()
}

impl FromStr for IncidenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Params::parse(s)?;
        let spec = match p.family {
            "subset-inclusion" => IncidenceSpec::SubsetInclusion { n: p.num("n")?, t: p.num("t")?, k: p.num("k")? },
            "subset-disjointness" => {
                IncidenceSpec::SubsetDisjointness { n: p.num("n")?, t: p.num("t")?, k: p.num("k")? }
            }
            "subset-intersection" => IncidenceSpec::SubsetIntersection {
                n: p.num("n")?,
                t: p.num("t")?,
                k: p.num("k")?,
                s: p.num("s")?,
            },
            "subspace-inclusion" => IncidenceSpec::SubspaceInclusion {
                dim: p.num("dim")?,
                d: p.num("d")?,
                e: p.num("e")?,
                q: p.num("q")?,
            },
            "subspace-zero-meet" => IncidenceSpec::SubspaceZeroMeet {
                dim: p.num("dim")?,
                d: p.num("d")?,
                e: p.num("e")?,
                q: p.num("q")?,
            },
            "point-hyperplane" => IncidenceSpec::PointHyperplane { n: p.num("n")?, q: p.num("q")? },
            "hamming-max-distance" => IncidenceSpec::HammingMaxDistance { m: p.num("m")?, n: p.num("n")? },
            "kneser" => IncidenceSpec::Kneser { n: p.num("n")?, k: p.num("k")? },
            "abelian-cayley" => {
                let orders = number_list(p.take("orders")?, ',')?;
                let set = p.take("set")?;
                let elements = if set.is_empty() {
                    Vec::new()
                } else {
                    set.split(',').map(|e| number_list(e, '.')).collect::<Result<Vec<_>>>()?
                };
                p.finish()?;
                return IncidenceSpec::abelian_cayley(orders, elements);
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        p.finish()?;
        spec.validate()?;
        Ok(spec)
    }
}
