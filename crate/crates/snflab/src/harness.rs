//! Cross-checks a computed Smith normal form against every closed form that
//! applies to a spec, plus spectral and strongly-regular-graph constraints.
//!
//! Comparison is prime by prime. A prediction local away from a set of
//! primes is compared only at the remaining primes and never earns more
//! than `PARTIAL`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use snflab_core::cayley::{cayley_spectrum, integral_spectrum, CharacterValue};
use snflab_core::divisors::{factorize, profile_of_factors, DEFAULT_TRIAL_LIMIT};
use snflab_core::formulas::{
    chandler_diagonal, eigenvalue_divisibility_check, hamming_snf_prediction, kneser_spectrum, point_subspace_eldiv,
    singer_trace_multiplicities, skew_lines_eldiv, srg_eldiv_check, strongly_regular_parameters, wilson_diagonal,
    PointSubspacePrediction, SrgParams,
};
use snflab_core::incidence::{build_bounded, mixed_radix_element, mixed_radix_index};
use snflab_core::{
    diagonal_form_to_invariant_factors, smith_normal_form_with, DiagonalFormPrediction, ElementaryDivisorProfile,
    Error as CoreError, IncidenceSpec, IntegerMatrix, Locality, PrimePower, SmithDecomposition,
};

use crate::cache::{Cache, Lookup};
use crate::error::{LabError, LabResult};
use crate::limits::{Deadline, Limits};

/// Largest order for which a symmetric matrix is tested for strong regularity.
pub const SRG_MAX_ORDER: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    Mismatch,
    Partial,
    NoPredictor,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Partial => "PARTIAL",
            Verdict::NoPredictor => "NO_PREDICTOR",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Ok,
    Mismatch,
    Error,
}

impl ReportStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportStatus::Ok => "ok",
            ReportStatus::Mismatch => "mismatch",
            ReportStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRecord {
    pub prime: u64,
    pub multiplicities: Vec<u64>,
}

impl From<&ElementaryDivisorProfile> for ProfileRecord {
    fn from(p: &ElementaryDivisorProfile) -> Self {
        ProfileRecord { prime: p.prime(), multiplicities: p.multiplicities().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalEntry {
    pub value: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictionRecord {
    /// `formula/<tag>`
    pub source: String,
    pub locality: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_form: Option<Vec<DiagonalEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_prime_factor: Option<String>,
    pub invariant_factors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub source: String,
    pub verdict: Verdict,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub spec: String,
    pub family: String,
    pub shape: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub invariant_factors: Vec<String>,
    pub profiles: Vec<ProfileRecord>,
    pub predictions: Vec<PredictionRecord>,
    pub verdicts: Vec<VerdictRecord>,
    pub checks: Vec<CheckRecord>,
    pub status: ReportStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub resource_error: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CrossCheckReport {
    /// Report for a spec that could not be checked.
    pub fn failed(spec: &str, family: &str, shape: [u64; 2], err: &LabError) -> Self {
        CrossCheckReport {
            spec: spec.to_string(),
            family: family.to_string(),
            shape,
            rank: None,
            invariant_factors: Vec::new(),
            profiles: Vec::new(),
            predictions: Vec::new(),
            verdicts: Vec::new(),
            checks: Vec::new(),
            status: ReportStatus::Error,
            error: Some(err.to_string()),
            resource_error: err.is_resource(),
            elapsed_ms: None,
        }
    }
}

/// A prediction reduced to the invariant-factor chain it claims.
#[derive(Clone, Debug)]
pub struct Prediction {
    pub record: PredictionRecord,
    pub locality: Locality,
    pub chain: Vec<BigUint>,
}

fn strings(v: &[BigUint]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn locality_label(l: &Locality) -> String {
    match l {
        Locality::AllPrimes => "all-primes".into(),
        Locality::CoprimeTo(ps) => {
            format!("coprime-to {}", ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        }
    }
}

impl Prediction {
    pub fn from_diagonal(source: &str, diag: &DiagonalFormPrediction, note: Option<String>) -> LabResult<Self> {
        let chain = diagonal_form_to_invariant_factors(diag)?;
        let entries =
            diag.entries().iter().map(|(v, m)| DiagonalEntry { value: v.to_string(), multiplicity: *m }).collect();
        Ok(Prediction {
            record: PredictionRecord {
                source: format!("formula/{source}"),
                locality: locality_label(diag.locality()),
                diagonal_form: Some(entries),
                profile: None,
                p_prime_factor: None,
                invariant_factors: strings(&chain),
                note,
            },
            locality: diag.locality().clone(),
            chain,
        })
    }

    pub fn from_point_subspace(source: &str, pred: &PointSubspacePrediction, note: Option<String>) -> Self {
        let chain = pred.invariant_factors();
        Prediction {
            record: PredictionRecord {
                source: format!("formula/{source}"),
                locality: locality_label(&Locality::AllPrimes),
                diagonal_form: None,
                profile: Some((&pred.profile).into()),
                p_prime_factor: Some(pred.p_prime_factor.to_string()),
                invariant_factors: strings(&chain),
                note,
            },
            locality: Locality::AllPrimes,
            chain,
        }
    }

    /// A chain of pure powers of the profile's prime.
    pub fn from_profile(source: &str, profile: &ElementaryDivisorProfile, note: Option<String>) -> Self {
        let chain: Vec<BigUint> = profile
            .to_entries()
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m as usize))
            .collect();
        Prediction {
            record: PredictionRecord {
                source: format!("formula/{source}"),
                locality: locality_label(&Locality::AllPrimes),
                diagonal_form: None,
                profile: Some(profile.into()),
                p_prime_factor: None,
                invariant_factors: strings(&chain),
                note,
            },
            locality: Locality::AllPrimes,
            chain,
        }
    }
}

fn primes_of(chain: &[BigUint]) -> LabResult<Vec<u64>> {
    match chain.last() {
        // Every prime of a divisibility chain divides its last entry.
        Some(last) => Ok(factorize(last, DEFAULT_TRIAL_LIMIT)?.into_iter().map(|(p, _)| p).collect()),
        None => Ok(Vec::new()),
    }
}

/// Compares a predicted chain with the computed one at every prime the
/// prediction covers.
pub fn compare(predicted: &[BigUint], locality: &Locality, computed: &[BigUint]) -> LabResult<(Verdict, String)> {
    if predicted.len() != computed.len() {
        return Ok((Verdict::Mismatch, format!("rank: predicted {}, computed {}", predicted.len(), computed.len())));
    }
    let mut primes: BTreeSet<u64> = primes_of(predicted)?.into_iter().collect();
    primes.extend(primes_of(computed)?);
    for p in primes.into_iter().filter(|&p| locality.covers(p)) {
        let a = profile_of_factors(predicted, p)?;
        let b = profile_of_factors(computed, p)?;
        if a != b {
            let len = a.multiplicities().len().max(b.multiplicities().len());
            let i = (0..len).find(|&i| a.multiplicity(i) != b.multiplicity(i)).unwrap_or(0);
            let details = format!("prime {p}: e_{i} predicted {}, computed {}", a.multiplicity(i), b.multiplicity(i));
            return Ok((Verdict::Mismatch, details));
        }
    }
    Ok(match locality {
        Locality::AllPrimes => (Verdict::Match, "invariant factors agree at every prime".into()),
        Locality::CoprimeTo(ex) => {
            let ex: Vec<String> = ex.iter().map(ToString::to_string).collect();
            (Verdict::Partial, format!("agree at every prime other than {}", ex.join(",")))
        }
    })
}

/// Eigenvalue data known for a spec without looking at its SNF.
#[derive(Clone, Debug)]
enum Spectrum {
    Integral { source: &'static str, eigenvalues: Vec<(BigInt, u64)> },
    /// Characters of an abelian group with some non-integral values.
    Characters { values: Vec<CharacterValue>, zero_in_set: bool },
}

fn prime_power(q: u64) -> LabResult<PrimePower> {
    Ok(PrimePower::new(q)?)
}

fn zero_prediction(source: &str, note: &str) -> LabResult<Prediction> {
    Prediction::from_diagonal(source, &DiagonalFormPrediction::new(Vec::new(), Locality::AllPrimes)?, Some(note.into()))
}

fn disjointness(n: usize, t: usize, k: usize) -> LabResult<Prediction> {
    if t + k > n {
        return zero_prediction("wilson-complement", "t + k > n: no disjoint pairs");
    }
    let diag = wilson_diagonal(n as u64, t as u64, (n - k) as u64)?;
    Prediction::from_diagonal("wilson-complement", &diag, Some("inclusion in the complementary (n-k)-subset".into()))
}

/// Singer cycle multiplicities turned into the point-hyperplane chain:
/// one extra unit at valuation zero and the p'-factor on the last entry.
pub fn singer_prediction(n: u64, q: PrimePower) -> LabResult<PointSubspacePrediction> {
    let a = singer_trace_multiplicities(n, q)?;
    let mut e = a
        .iter()
        .map(|x| x.to_u64().ok_or(CoreError::TooMany { what: "multiplicity", count: u128::MAX, bound: u64::MAX.into() }))
        .collect::<Result<Vec<u64>, _>>()?;
    e[0] += 1;
    let qq = BigUint::from(q.q());
    let p_prime_factor = (qq.pow(n as u32) - 1u32) / (qq - 1u32);
    Ok(PointSubspacePrediction { profile: ElementaryDivisorProfile::new(q.p(), e)?, p_prime_factor })
}

fn subspace_inclusion(dim: usize, d: usize, e: usize, q: u64) -> LabResult<Vec<Prediction>> {
    let pp = prime_power(q)?;
    let (dim, d, e) = (dim as u64, d as u64, e as u64);
    let n = dim - 1;
    let mut out = Vec::new();
    if d == 1 && e >= 2 && e < dim {
        out.push(Prediction::from_point_subspace("point-subspace", &point_subspace_eldiv(n, e, pp)?, None));
    }
    if d == 1 && e >= 2 && e + 1 == dim {
        out.push(Prediction::from_point_subspace("singer", &singer_prediction(n, pp)?, None));
    }
    if d + e <= dim {
        out.push(Prediction::from_diagonal("chandler", &chandler_diagonal(n, e, d, pp)?, None)?);
    }
    Ok(out)
}

fn predictions(spec: &IncidenceSpec, spectrum: Option<&Spectrum>) -> LabResult<Vec<Prediction>> {
    Ok(match *spec {
        IncidenceSpec::SubsetInclusion { n, t, k } => {
            vec![Prediction::from_diagonal("wilson", &wilson_diagonal(n as u64, t as u64, k as u64)?, None)?]
        }
        IncidenceSpec::SubsetDisjointness { n, t, k } => vec![disjointness(n, t, k)?],
        IncidenceSpec::Kneser { n, k } => vec![disjointness(n, k, k)?],
        IncidenceSpec::SubsetIntersection { n, t, k, s } => {
            if s == t {
                let diag = wilson_diagonal(n as u64, t as u64, k as u64)?;
                vec![Prediction::from_diagonal("wilson", &diag, Some("intersection size t is inclusion".into()))?]
            } else if s == 0 {
                vec![disjointness(n, t, k)?]
            } else if s + n < t + k {
                vec![zero_prediction("empty-relation", "s < t + k - n: no pairs")?]
            } else {
                Vec::new()
            }
        }
        IncidenceSpec::SubspaceInclusion { dim, d, e, q } => subspace_inclusion(dim, d, e, q)?,
        IncidenceSpec::PointHyperplane { n, q } => subspace_inclusion(n + 1, 1, n, q)?,
        IncidenceSpec::SubspaceZeroMeet { dim: 4, d: 2, e: 2, q } => {
            let profile = skew_lines_eldiv(prime_power(q)?)?;
            let note = "all eigenvalues are signed powers of p, so the p'-part is trivial";
            vec![Prediction::from_profile("skew-lines", &profile, Some(note.into()))]
        }
        IncidenceSpec::HammingMaxDistance { m, n } => {
            let h = hamming_snf_prediction(m as u64, n as u64)?;
            vec![Prediction::from_diagonal("hamming", &h.diagonal, None)?]
        }
        IncidenceSpec::AbelianCayley { ref orders, .. } => match spectrum {
            Some(Spectrum::Integral { eigenvalues, .. }) => {
                let entries: Vec<(BigUint, u64)> = eigenvalues
                    .iter()
                    .filter(|(v, _)| !v.is_zero())
                    .map(|(v, m)| (v.abs().to_biguint().expect("absolute value"), *m))
                    .collect();
                let size: u64 = orders.iter().product();
                let primes: Vec<u64> = factorize(&BigUint::from(size), DEFAULT_TRIAL_LIMIT)?.into_iter().map(|(p, _)| p).collect();
                let locality = if primes.is_empty() { Locality::AllPrimes } else { Locality::CoprimeTo(primes) };
                let diag = DiagonalFormPrediction::new(entries, locality)?;
                let note = "character table is invertible away from the group order";
                vec![Prediction::from_diagonal("character-values", &diag, Some(note.into()))?]
            }
            _ => Vec::new(),
        },
        _ => Vec::new(),
    })
}

/// Ascending by value, equal values merged.
fn sorted_spectrum(v: Vec<(BigInt, u64)>) -> Vec<(BigInt, u64)> {
    let mut map = std::collections::BTreeMap::new();
    for (x, m) in v {
        *map.entry(x).or_insert(0) += m;
    }
    map.into_iter().filter(|(_, m)| *m > 0).collect()
}

fn hamming_connecting_set(m: usize, n: usize) -> Vec<Vec<u64>> {
    let orders = vec![n as u64; m];
    let size: u64 = orders.iter().product();
    (0..size).map(|i| mixed_radix_element(&orders, i)).filter(|g| g.iter().all(|&x| x != 0)).collect()
}

fn known_spectrum(spec: &IncidenceSpec, checks: &mut Vec<CheckRecord>) -> LabResult<Option<Spectrum>> {
    Ok(match *spec {
        IncidenceSpec::HammingMaxDistance { m, n } => {
            let closed = sorted_spectrum(hamming_snf_prediction(m as u64, n as u64)?.eigenvalues);
            let values = cayley_spectrum(&vec![n as u64; m], &hamming_connecting_set(m, n))?;
            let exact: Option<Vec<(BigInt, u64)>> =
                integral_spectrum(&values).map(|s| s.into_iter().map(|(v, k)| (BigInt::from(v), k)).collect());
            let (status, details) = match exact {
                Some(ref s) if *s == closed => (CheckStatus::Pass, format!("character values {}", show_spectrum(s))),
                Some(ref s) => (CheckStatus::Fail, format!("characters give {}, closed form {}", show_spectrum(s), show_spectrum(&closed))),
                None => (CheckStatus::Fail, "a character value is not an integer".into()),
            };
            checks.push(CheckRecord { name: "hamming-character-values".into(), status, details });
            Some(Spectrum::Integral { source: "hamming", eigenvalues: closed })
        }
        IncidenceSpec::Kneser { n, k } => {
            Some(Spectrum::Integral { source: "kneser", eigenvalues: sorted_spectrum(kneser_spectrum(n as u64, k as u64)?) })
        }
        IncidenceSpec::AbelianCayley { ref orders, ref connecting_set } => {
            let values = cayley_spectrum(orders, connecting_set)?;
            match integral_spectrum(&values) {
                Some(s) => Some(Spectrum::Integral {
                    source: "cayley",
                    eigenvalues: s.into_iter().map(|(v, m)| (BigInt::from(v), m)).collect(),
                }),
                None => {
                    let zero = vec![0u64; orders.len()];
                    let zero_in_set = connecting_set.iter().any(|e| mixed_radix_index(orders, e) == mixed_radix_index(orders, &zero));
                    Some(Spectrum::Characters { values, zero_in_set })
                }
            }
        }
        _ => None,
    })
}

fn show_spectrum(s: &[(BigInt, u64)]) -> String {
    s.iter().map(|(v, m)| format!("{v}^{m}")).collect::<Vec<_>>().join(" ")
}

fn nullity(a: &IntegerMatrix, lambda: &BigInt, limits: &Limits, deadline: &Deadline) -> LabResult<usize> {
    let shifted = a.shift_diagonal(lambda)?;
    let d = smith_normal_form_with(&shifted, &limits.snf_options(false), deadline)?;
    Ok(a.rows() - d.rank())
}

fn spectrum_checks(
    source: &str,
    eigenvalues: &[(BigInt, u64)],
    a: &IntegerMatrix,
    d: &SmithDecomposition,
    limits: &Limits,
    deadline: &Deadline,
    checks: &mut Vec<CheckRecord>,
) -> LabResult<()> {
    let total: u64 = eigenvalues.iter().map(|(_, m)| m).sum();
    let mut problems = Vec::new();
    if total != a.rows() as u64 {
        problems.push(format!("multiplicities sum to {total}, order is {}", a.rows()));
    }
    for (lambda, m) in eigenvalues {
        let k = nullity(a, lambda, limits, deadline)?;
        if k as u64 != *m {
            problems.push(format!("nullity(A - {lambda}I) = {k}, expected {m}"));
        }
    }
    let (status, details) = if problems.is_empty() {
        (CheckStatus::Pass, format!("{} certified by nullities", show_spectrum(eigenvalues)))
    } else {
        (CheckStatus::Fail, problems.join("; "))
    };
    checks.push(CheckRecord { name: format!("spectrum/{source}"), status, details });

    let failing: Vec<String> = eigenvalues
        .iter()
        .filter(|(v, m)| !v.is_zero() && !eigenvalue_divisibility_check(v, *m, d))
        .map(|(v, m)| format!("{v} (multiplicity {m})"))
        .collect();
    let (status, details) = if failing.is_empty() {
        (CheckStatus::Pass, "each nonzero eigenvalue divides at least as many invariant factors as its multiplicity".into())
    } else {
        (CheckStatus::Fail, format!("too few invariant factors divisible by {}", failing.join(", ")))
    };
    checks.push(CheckRecord { name: "eigenvalue-divisibility".into(), status, details });
    Ok(())
}

fn srg_parameters(a: &IntegerMatrix) -> Option<SrgParams> {
    if a.rows() != a.cols() || a.rows() > SRG_MAX_ORDER {
        return None;
    }
    strongly_regular_parameters(a).ok()
}

fn srg_checks(params: &SrgParams, primes: &[u64], d: &SmithDecomposition, checks: &mut Vec<CheckRecord>) -> LabResult<()> {
    for &p in primes {
        let profile = profile_of_factors(d.invariant_factors(), p)?;
        let name = format!("srg-eldiv p={p}");
        let (status, details) = match srg_eldiv_check(params, p, &profile) {
            Ok(v) if v.is_empty() => (CheckStatus::Pass, "gap and symmetry constraints hold".to_string()),
            Ok(v) => (CheckStatus::Fail, v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")),
            Err(CoreError::Inapplicable(msg)) => (CheckStatus::Inapplicable, msg),
            Err(e) => return Err(e.into()),
        };
        checks.push(CheckRecord { name, status, details });
    }
    Ok(())
}

/// Everything a cross-check needs besides the spec.
#[derive(Clone, Debug, Default)]
pub struct Harness {
    pub limits: Limits,
    pub cache: Option<Cache>,
    pub timings: bool,
}

/// A report plus diagnostics that must not enter it (cache notices).
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: CrossCheckReport,
    pub diagnostics: Vec<String>,
}

fn shape_of(spec: &IncidenceSpec) -> [u64; 2] {
    let (r, c) = spec.shape();
    [r.min(u64::MAX.into()) as u64, c.min(u64::MAX.into()) as u64]
}

impl Harness {
    pub fn new(limits: Limits) -> Self {
        Harness { limits, cache: None, timings: true }
    }

    /// Generates the matrix and its SNF, going through the cache when one is set.
    pub fn matrix_and_snf(
        &self,
        spec: &IncidenceSpec,
        deadline: &Deadline,
        diagnostics: &mut Vec<String>,
    ) -> LabResult<(IntegerMatrix, SmithDecomposition)> {
        self.limits.admit(spec)?;
        if let Some(cache) = &self.cache {
            match cache.lookup(spec) {
                Lookup::Hit { matrix, decomposition, .. } => return Ok((matrix, decomposition)),
                Lookup::Miss => {}
                Lookup::Corrupt(msg) => diagnostics.push(format!("cache: bypassing corrupt entry {msg}")),
            }
        }
        let matrix = build_bounded(spec, self.limits.max_entries())?;
        let d = smith_normal_form_with(&matrix, &self.limits.snf_options(false), deadline)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.store(spec, &matrix, &d) {
                diagnostics.push(format!("cache: store failed: {e}"));
            }
        }
        Ok((matrix, d))
    }

    pub fn cross_check(&self, spec: &IncidenceSpec) -> Outcome {
        let start = Instant::now();
        let mut diagnostics = Vec::new();
        let mut report = match self.run(spec, &mut diagnostics) {
            Ok(r) => r,
            Err(e) => CrossCheckReport::failed(&spec.to_string(), spec.family(), shape_of(spec), &e),
        };
        if self.timings {
            report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        Outcome { report, diagnostics }
    }

    fn run(&self, spec: &IncidenceSpec, diagnostics: &mut Vec<String>) -> LabResult<CrossCheckReport> {
        let deadline = self.limits.deadline();
        let (matrix, d) = self.matrix_and_snf(spec, &deadline, diagnostics)?;
        let factors = d.invariant_factors();
        let primes = primes_of(factors)?;
        let profiles =
            primes.iter().map(|&p| profile_of_factors(factors, p).map(|x| (&x).into())).collect::<Result<Vec<_>, _>>()?;

        let mut checks = Vec::new();
        let mut spectrum = known_spectrum(spec, &mut checks)?;
        let srg = if matrix.is_symmetric() { srg_parameters(&matrix) } else { None };
        if let (None, Some(params)) = (&spectrum, &srg) {
            if let Some((f, g)) = params.multiplicities() {
                let eigenvalues = sorted_spectrum(vec![
                    (BigInt::from(params.k), 1),
                    (BigInt::from(params.r), f),
                    (BigInt::from(params.s), g),
                ]);
                spectrum = Some(Spectrum::Integral { source: "srg", eigenvalues });
            }
        }

        let preds = predictions(spec, spectrum.as_ref())?;
        let mut verdicts = Vec::with_capacity(preds.len().max(1));
        for p in &preds {
            let (verdict, details) = compare(&p.chain, &p.locality, factors)?;
            verdicts.push(VerdictRecord { source: p.record.source.clone(), verdict, details });
        }
        if preds.is_empty() {
            verdicts.push(VerdictRecord {
                source: "none".into(),
                verdict: Verdict::NoPredictor,
                details: format!("no closed form covers {spec}"),
            });
        }

        match &spectrum {
            Some(Spectrum::Integral { source, eigenvalues }) => {
                spectrum_checks(source, eigenvalues, &matrix, &d, &self.limits, &deadline, &mut checks)?
            }
            Some(Spectrum::Characters { values, zero_in_set }) => {
                let mut total = values[0].value.clone();
                for v in &values[1..] {
                    total = total.checked_add(&v.value)?;
                }
                let expected = if *zero_in_set { values.len() as i64 } else { 0 };
                let ok = total.as_integer() == Some(expected);
                let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
                let irrational = values.iter().filter(|v| !v.value.is_integral()).count();
                checks.push(CheckRecord {
                    name: "character-sum".into(),
                    status,
                    details: format!("sum of all character values is {total}, expected {expected}; {irrational} values are not integers"),
                });
            }
            None => {}
        }
        if let Some(params) = &srg {
            srg_checks(params, &primes, &d, &mut checks)?;
        }

        let mismatch = verdicts.iter().any(|v| v.verdict == Verdict::Mismatch)
            || checks.iter().any(|c| c.status == CheckStatus::Fail);
        Ok(CrossCheckReport {
            spec: spec.to_string(),
            family: spec.family().to_string(),
            shape: [matrix.rows() as u64, matrix.cols() as u64],
            rank: Some(d.rank()),
            invariant_factors: strings(factors),
            profiles,
            predictions: preds.into_iter().map(|p| p.record).collect(),
            verdicts,
            checks,
            status: if mismatch { ReportStatus::Mismatch } else { ReportStatus::Ok },
            error: None,
            resource_error: false,
            elapsed_ms: None,
        })
    }
}

/// Cross-check with default limits, no cache and no timings.
pub fn cross_check(spec: &IncidenceSpec) -> CrossCheckReport {
    let h = Harness { timings: false, ..Harness::default() };
    h.cross_check(spec).report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(s: &str) -> CrossCheckReport {
        cross_check(&s.parse().unwrap())
    }

    fn verdict_of(r: &CrossCheckReport, source: &str) -> Verdict {
        r.verdicts.iter().find(|v| v.source == source).unwrap_or_else(|| panic!("no {source} in {r:?}")).verdict
    }

    #[test]
    fn fano() {
        let r = check("subspace-inclusion dim=3 d=1 e=2 q=2");
        assert_eq!(r.invariant_factors, ["1", "1", "1", "1", "2", "2", "6"]);
        assert_eq!(verdict_of(&r, "formula/point-subspace"), Verdict::Match);
        assert_eq!(verdict_of(&r, "formula/singer"), Verdict::Match);
        assert_eq!(verdict_of(&r, "formula/chandler"), Verdict::Partial);
        assert_eq!(r.status, ReportStatus::Ok);
        assert_eq!(r.profiles, [ProfileRecord { prime: 2, multiplicities: vec![4, 3] }, ProfileRecord { prime: 3, multiplicities: vec![6, 1] }]);
    }

    #[test]
    fn triangle_and_complements() {
        let r = check("subset-inclusion n=3 t=1 k=2");
        assert_eq!(verdict_of(&r, "formula/wilson"), Verdict::Match);
        for s in ["subset-disjointness n=5 t=2 k=2", "subset-disjointness n=4 t=2 k=3", "subset-intersection n=5 t=2 k=3 s=2"] {
            assert_eq!(check(s).status, ReportStatus::Ok, "{s}");
        }
    }

    #[test]
    fn kneser_reports_spectrum() {
        let r = check("kneser n=5 k=2");
        assert_eq!(verdict_of(&r, "formula/wilson-complement"), Verdict::Match);
        let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"spectrum/kneser"));
        assert!(names.contains(&"eigenvalue-divisibility"));
        assert!(r.checks.iter().all(|c| c.status != CheckStatus::Fail), "{:?}", r.checks);
    }

    #[test]
    fn intersection_without_formula() {
        let r = check("subset-intersection n=5 t=2 k=2 s=1");
        assert_eq!(r.verdicts.len(), 1);
        assert_eq!(r.verdicts[0].verdict, Verdict::NoPredictor);
        assert_eq!(r.status, ReportStatus::Ok);
    }

    #[test]
    fn cayley_families() {
        let r = check("abelian-cayley orders=3,3 set=1.1,1.2,2.1,2.2");
        assert_eq!(verdict_of(&r, "formula/character-values"), Verdict::Partial);
        let r = check("abelian-cayley orders=5 set=1,4");
        assert_eq!(r.verdicts[0].verdict, Verdict::NoPredictor);
        assert!(r.checks.iter().any(|c| c.name == "character-sum" && c.status == CheckStatus::Pass));
    }

    #[test]
    fn mismatch_details_name_prime_and_index() {
        let computed: Vec<BigUint> = [1u32, 1, 2].iter().map(|&x| x.into()).collect();
        let predicted: Vec<BigUint> = [1u32, 2, 2].iter().map(|&x| x.into()).collect();
        let (v, d) = compare(&predicted, &Locality::AllPrimes, &computed).unwrap();
        assert_eq!(v, Verdict::Mismatch);
        assert_eq!(d, "prime 2: e_0 predicted 1, computed 2");
        let (v, d) = compare(&predicted[..2], &Locality::AllPrimes, &computed).unwrap();
        assert_eq!((v, d.as_str()), (Verdict::Mismatch, "rank: predicted 2, computed 3"));
        let (v, _) = compare(&predicted, &Locality::CoprimeTo(vec![2]), &computed).unwrap();
        assert_eq!(v, Verdict::Partial);
    }

    #[test]
    fn oversized_spec_is_a_resource_error() {
        let h = Harness { limits: Limits { max_dim: 10, ..Limits::default() }, timings: false, cache: None };
        let r = h.cross_check(&"subset-inclusion n=8 t=2 k=4".parse().unwrap()).report;
        assert_eq!(r.status, ReportStatus::Error);
        assert!(r.resource_error);
    }
}
