//! `snf-lab` command-line interface.
//!
//! Exit status: 0 success, 1 a prediction or check disagreed with the
//! computation, 2 usage or input errors, 3 resource limits exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde_json::json;
use snflab_core::cayley::{cayley_spectrum, integral_spectrum};
use snflab_core::formulas::{
    binomial, chandler_diagonal, composite_eldiv, d_lambda, gaussian_binomial, hamada_tuples, hamming_snf_prediction,
    kneser_spectrum, point_subspace_eldiv, singer_trace_multiplicities, skew_lines_eldiv, wilson_diagonal,
};
use snflab_core::incidence::build_bounded;
use snflab_core::smith::DEFAULT_MAX_ENTRY_BITS;
use snflab_core::{
    diagonal_form_to_invariant_factors, smith_normal_form_with, DiagonalFormPrediction, IncidenceSpec, IntegerMatrix,
    PrimePower, SmithDecomposition,
};

use crate::cache::Cache;
use crate::error::{LabError, LabResult};
use crate::harness::{CrossCheckReport, Harness, ReportStatus};
use crate::limits::{Limits, DEFAULT_MAX_DIM};
use crate::matrix_io::{format_matrix, read_matrix};
use crate::report;
use crate::sweep::{parse_axis, sweep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "snf-lab", version, about = "Smith normal forms of incidence matrices and the closed forms that predict them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Largest bit length of any intermediate entry during elimination.
    #[arg(long, default_value_t = DEFAULT_MAX_ENTRY_BITS)]
    max_bits: u64,
    /// Wall-clock budget per Smith normal form, in seconds.
    #[arg(long)]
    time_budget_s: Option<f64>,
    /// Largest accepted row or column count.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
}

impl LimitArgs {
    fn limits(&self) -> LabResult<Limits> {
        let time_budget = match self.time_budget_s {
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(LabError::Usage(format!("--time-budget-s must be positive, got {s}"))),
            None => None,
        };
        Ok(Limits { max_dim: self.max_dim, max_entry_bits: self.max_bits, time_budget })
    }
}

#[derive(Debug, Args)]
struct CacheArgs {
    /// Directory of cached matrices and invariant factors.
    #[arg(long, env = "SNFLAB_CACHE")]
    cache_dir: Option<PathBuf>,
}

impl CacheArgs {
    fn open(&self) -> LabResult<Option<Cache>> {
        self.cache_dir.as_ref().map(Cache::open).transpose()
    }
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Omit elapsed times so output is byte-for-byte reproducible.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the matrix of a spec in the text matrix format.
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print the invariant factors of a matrix file or spec.
    Snf {
        #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
        file: Option<PathBuf>,
        #[arg(long)]
        spec: Option<String>,
        /// Also print unimodular P, Q with P A Q diagonal.
        #[arg(long, overrides_with = "no_transforms")]
        transforms: bool,
        #[arg(long, overrides_with = "transforms")]
        no_transforms: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Evaluate a closed form: wilson, chandler, point-subspace, singer,
    /// skew-lines, composite, hamming, kneser, hamada, gaussian, d-lambda.
    Predict {
        formula: String,
        /// key=value parameters.
        params: Vec<String>,
        /// Print the invariant-factor chain instead of the diagonal form.
        #[arg(long)]
        chain: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check a spec's Smith normal form against every applicable formula.
    Check {
        spec: String,
        #[command(flatten)]
        report: ReportArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Cross-check every point of a parameter grid, e.g. `n=1..8 k=0..n t=0..k`.
    Sweep {
        family: String,
        ranges: Vec<String>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        report: ReportArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Eigenvalues of hamming-max-distance, kneser and abelian-cayley specs.
    Spectrum {
        spec: String,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource() {
                EXIT_RESOURCE
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn parse_spec(s: &str) -> LabResult<IncidenceSpec> {
    Ok(s.parse::<IncidenceSpec>()?)
}

fn emit(out: &mut dyn Write, text: &str) -> LabResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| LabError::io("<stdout>", e))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> LabResult<i32> {
    match cmd {
        Command::Gen { spec, output, limits } => {
            let spec = parse_spec(&spec)?;
            let limits = limits.limits()?;
            limits.admit(&spec)?;
            let text = format_matrix(&build_bounded(&spec, limits.max_entries())?);
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| LabError::io(path.display().to_string(), e))?,
                None => emit(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Snf { file, spec, transforms, json, limits, cache, .. } => {
            let limits = limits.limits()?;
            let d = match (file, spec) {
                (Some(path), _) => {
                    let a = read_matrix(&path)?;
                    if a.rows().max(a.cols()) > limits.max_dim {
                        return Err(snflab_core::Error::TooMany {
                            what: "matrix rows or columns",
                            count: a.rows().max(a.cols()) as u128,
                            bound: limits.max_dim as u128,
                        }
                        .into());
                    }
                    smith_normal_form_with(&a, &limits.snf_options(transforms), &limits.deadline())?
                }
                (None, Some(s)) => {
                    let spec = parse_spec(&s)?;
                    if transforms {
                        limits.admit(&spec)?;
                        let a = build_bounded(&spec, limits.max_entries())?;
                        smith_normal_form_with(&a, &limits.snf_options(true), &limits.deadline())?
                    } else {
                        let harness = Harness { limits, cache: cache.open()?, timings: false };
                        let mut diagnostics = Vec::new();
                        let (_, d) = harness.matrix_and_snf(&spec, &limits.deadline(), &mut diagnostics)?;
                        for line in diagnostics {
                            let _ = writeln!(err, "{line}");
                        }
                        d
                    }
                }
                (None, None) => return Err(LabError::Usage("snf needs --file or --spec".into())),
            };
            emit(out, &snf_output(&d, json)?)?;
            Ok(EXIT_OK)
        }
        Command::Predict { formula, params, chain, json } => {
            emit(out, &predict(&formula, &params, chain, json)?)?;
            Ok(EXIT_OK)
        }
        Command::Check { spec, report: fmt, limits, cache } => {
            let spec = parse_spec(&spec)?;
            let harness = Harness { limits: limits.limits()?, cache: cache.open()?, timings: !fmt.no_timings };
            let outcome = harness.cross_check(&spec);
            for line in &outcome.diagnostics {
                let _ = writeln!(err, "{line}");
            }
            let r = outcome.report;
            let text = if fmt.json {
                report::json(&r)?
            } else if fmt.csv {
                report::csv(std::slice::from_ref(&r), !fmt.no_timings)?
            } else {
                report::text(&r)
            };
            emit(out, &text)?;
            if let Some(e) = &r.error {
                let _ = writeln!(err, "error: {e}");
            }
            Ok(exit_for(&[r]))
        }
        Command::Sweep { family, ranges, jobs, report: fmt, limits, cache } => {
            let axes = ranges.iter().map(|r| parse_axis(r)).collect::<LabResult<Vec<_>>>()?;
            let harness = Harness { limits: limits.limits()?, cache: cache.open()?, timings: !fmt.no_timings };
            let outcomes = sweep(&harness, &family, &axes, jobs)?;
            let mut reports = Vec::with_capacity(outcomes.len());
            for o in outcomes {
                for line in &o.diagnostics {
                    let _ = writeln!(err, "{line}");
                }
                reports.push(o.report);
            }
            let text = if fmt.json {
                report::json_all(&reports)?
            } else if fmt.csv {
                report::csv(&reports, !fmt.no_timings)?
            } else {
                let mut s: String = reports.iter().map(|r| report::text(r) + "\n").collect();
                s.push_str(&summary(&reports));
                s
            };
            emit(out, &text)?;
            Ok(exit_for(&reports))
        }
        Command::Spectrum { spec, json } => {
            emit(out, &spectrum(&parse_spec(&spec)?, json)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn summary(reports: &[CrossCheckReport]) -> String {
    let count = |s: ReportStatus| reports.iter().filter(|r| r.status == s).count();
    format!(
        "{} points: {} ok, {} mismatch, {} error\n",
        reports.len(),
        count(ReportStatus::Ok),
        count(ReportStatus::Mismatch),
        count(ReportStatus::Error)
    )
}

/// Mismatches dominate input errors, which dominate resource errors.
fn exit_for(reports: &[CrossCheckReport]) -> i32 {
    if reports.iter().any(|r| r.status == ReportStatus::Mismatch) {
        EXIT_MISMATCH
    } else if reports.iter().any(|r| r.status == ReportStatus::Error && !r.resource_error) {
        EXIT_USAGE
    } else if reports.iter().any(|r| r.resource_error) {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    }
}

fn matrix_strings(m: &IntegerMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn snf_output(d: &SmithDecomposition, json: bool) -> LabResult<String> {
    let factors: Vec<String> = d.invariant_factors().iter().map(ToString::to_string).collect();
    if json {
        let (rows, cols) = d.shape();
        let mut v = json!({ "shape": [rows, cols], "rank": d.rank(), "invariant_factors": factors });
        if let (Some(p), Some(q)) = (d.left_transform(), d.right_transform()) {
            v["left_transform"] = json!(matrix_strings(p));
            v["right_transform"] = json!(matrix_strings(q));
        }
        return Ok(serde_json::to_string_pretty(&v)? + "\n");
    }
    let mut s = factors.join(" ") + "\n";
    if let (Some(p), Some(q)) = (d.left_transform(), d.right_transform()) {
        s.push_str("# left transform\n");
        s.push_str(&format_matrix(p));
        s.push_str("# right transform\n");
        s.push_str(&format_matrix(q));
    }
    Ok(s)
}

struct Params {
    formula: String,
    map: BTreeMap<String, String>,
}

impl Params {
    fn parse(formula: &str, raw: &[String], allowed: &[&str]) -> LabResult<Self> {
        let mut map = BTreeMap::new();
        for item in raw {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| LabError::Usage(format!("{formula}: parameter {item:?} is not key=value")))?;
            if !allowed.contains(&k) {
                return Err(LabError::Usage(format!("{formula}: unknown parameter {k}; expected {}", allowed.join(", "))));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(LabError::Usage(format!("{formula}: parameter {k} given twice")));
            }
        }
        Ok(Params { formula: formula.to_string(), map })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> LabResult<T> {
        let raw = self.map.get(key).ok_or_else(|| LabError::Usage(format!("{}: missing parameter {key}", self.formula)))?;
        raw.parse().map_err(|_| LabError::Usage(format!("{}: {key}={raw} is not a valid value", self.formula)))
    }

    fn q(&self) -> LabResult<PrimePower> {
        Ok(PrimePower::new(self.get("q")?)?)
    }
}

fn power_list(entries: &[(BigUint, u64)]) -> String {
    entries.iter().map(|(v, m)| format!("{v}^{m}")).collect::<Vec<_>>().join(" ")
}

fn signed_list(entries: &[(BigInt, u64)]) -> String {
    entries.iter().map(|(v, m)| format!("{v}^{m}")).collect::<Vec<_>>().join(" ")
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn diagonal_output(d: &DiagonalFormPrediction, chain: bool, json: bool) -> LabResult<String> {
    let factors = diagonal_form_to_invariant_factors(d)?;
    if json {
        let entries: Vec<_> = d.entries().iter().map(|(v, m)| json!({"value": v.to_string(), "multiplicity": m})).collect();
        let factors: Vec<String> = factors.iter().map(ToString::to_string).collect();
        let v = json!({ "diagonal_form": entries, "invariant_factors": factors, "rank": d.claimed_rank() });
        return Ok(serde_json::to_string_pretty(&v)? + "\n");
    }
    Ok(if chain { joined(&factors) } else { power_list(d.entries()) } + "\n")
}

fn predict(formula: &str, raw: &[String], chain: bool, json: bool) -> LabResult<String> {
    let p = |allowed: &[&str]| Params::parse(formula, raw, allowed);
    let value_json = |v: serde_json::Value| -> LabResult<String> { Ok(serde_json::to_string_pretty(&v)? + "\n") };
    match formula {
        "wilson" => {
            let a = p(&["n", "t", "k"])?;
            diagonal_output(&wilson_diagonal(a.get("n")?, a.get("t")?, a.get("k")?)?, chain, json)
        }
        "chandler" => {
            let a = p(&["n", "r", "s", "q"])?;
            diagonal_output(&chandler_diagonal(a.get("n")?, a.get("r")?, a.get("s")?, a.q()?)?, chain, json)
        }
        "point-subspace" | "singer" => {
            let pred = if formula == "singer" {
                let a = p(&["n", "q"])?;
                if !chain && !json {
                    return Ok(format!("a: {}\n", joined(&singer_trace_multiplicities(a.get("n")?, a.q()?)?)));
                }
                crate::harness::singer_prediction(a.get("n")?, a.q()?)?
            } else {
                let a = p(&["n", "r", "q"])?;
                point_subspace_eldiv(a.get("n")?, a.get("r")?, a.q()?)?
            };
            let factors = pred.invariant_factors();
            if json {
                return value_json(json!({
                    "prime": pred.profile.prime(),
                    "multiplicities": pred.profile.multiplicities(),
                    "p_prime_factor": pred.p_prime_factor.to_string(),
                    "invariant_factors": factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }));
            }
            if chain {
                return Ok(joined(&factors) + "\n");
            }
            Ok(format!("e: {}\np' factor: {}\n", joined(pred.profile.multiplicities()), pred.p_prime_factor))
        }
        "skew-lines" => {
            let a = p(&["q"])?;
            let profile = skew_lines_eldiv(a.q()?)?;
            if json {
                return value_json(json!({"prime": profile.prime(), "multiplicities": profile.multiplicities()}));
            }
            if chain {
                return Ok(power_list(&profile.to_entries()) + "\n");
            }
            Ok(format!("e: {}\n", joined(profile.multiplicities())))
        }
        "composite" => {
            let a = p(&["n", "r", "s", "q"])?;
            let c = composite_eldiv(a.get("n")?, a.get("r")?, a.get("s")?, a.q()?)?;
            if json {
                return value_json(json!({
                    "prime": c.profile.prime(),
                    "multiplicities": c.profile.multiplicities(),
                    "validated": c.validated,
                }));
            }
            let mut s = format!("e: {}\n", joined(c.profile.multiplicities()));
            if !c.validated {
                s.push_str("note: r + s > n + 1 lies outside the validated range\n");
            }
            Ok(s)
        }
        "hamming" => {
            let a = p(&["m", "n"])?;
            let h = hamming_snf_prediction(a.get("m")?, a.get("n")?)?;
            if json || chain {
                return diagonal_output(&h.diagonal, chain, json);
            }
            Ok(format!("eigenvalues: {}\ndiagonal: {}\n", signed_list(&h.eigenvalues), power_list(h.diagonal.entries())))
        }
        "kneser" => {
            let a = p(&["n", "k"])?;
            let s = kneser_spectrum(a.get("n")?, a.get("k")?)?;
            if json {
                let v: Vec<_> = s.iter().map(|(x, m)| json!({"value": x.to_string(), "multiplicity": m})).collect();
                return value_json(json!({ "eigenvalues": v }));
            }
            Ok(format!("eigenvalues: {}\n", signed_list(&s)))
        }
        "hamada" => {
            let a = p(&["n", "q"])?;
            let tuples = hamada_tuples(a.get("n")?, a.q()?)?;
            if json {
                let v: Vec<_> = tuples
                    .iter()
                    .map(|h| json!({"s": h.s, "lambda": h.lambda, "weight": h.weight.to_string()}))
                    .collect();
                return value_json(json!({ "tuples": v }));
            }
            Ok(tuples.iter().map(|h| format!("s=({}) lambda=({}) d={}\n", csv_list(&h.s), csv_list(&h.lambda), h.weight)).collect())
        }
        "gaussian" => {
            let a = p(&["a", "b", "q"])?;
            let (x, y): (u64, u64) = (a.get("a")?, a.get("b")?);
            if y > x {
                return Err(LabError::Usage("gaussian: need b <= a".into()));
            }
            let q: u64 = a.get("q")?;
            let v = if q == 1 { binomial(x, y) } else { gaussian_binomial(x, y, q) };
            if json {
                return value_json(json!({ "value": v.to_string() }));
            }
            Ok(format!("{v}\n"))
        }
        "d-lambda" => {
            let a = p(&["lambda", "p", "m"])?;
            let prime: u64 = a.get("p")?;
            if !snflab_core::field::is_prime(prime) {
                return Err(snflab_core::Error::NotPrime(prime).into());
            }
            let v = d_lambda(a.get("lambda")?, prime, a.get("m")?);
            if json {
                return value_json(json!({ "value": v.to_string() }));
            }
            Ok(format!("{v}\n"))
        }
        other => Err(LabError::Usage(format!(
            "unknown formula {other:?}; expected wilson, chandler, point-subspace, singer, skew-lines, composite, hamming, kneser, hamada, gaussian or d-lambda"
        ))),
    }
}

fn csv_list<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn spectrum(spec: &IncidenceSpec, json: bool) -> LabResult<String> {
    let eigen_json = |s: &[(BigInt, u64)]| -> Vec<serde_json::Value> {
        s.iter().map(|(v, m)| json!({"value": v.to_string(), "multiplicity": m})).collect()
    };
    match spec {
        IncidenceSpec::HammingMaxDistance { m, n } => {
            let h = hamming_snf_prediction(*m as u64, *n as u64)?;
            if json {
                let v = json!({ "spec": spec.to_string(), "eigenvalues": eigen_json(&h.eigenvalues) });
                return Ok(serde_json::to_string_pretty(&v)? + "\n");
            }
            Ok(format!("eigenvalues: {}\n", signed_list(&h.eigenvalues)))
        }
        IncidenceSpec::Kneser { n, k } => {
            let s = kneser_spectrum(*n as u64, *k as u64)?;
            if json {
                let v = json!({ "spec": spec.to_string(), "eigenvalues": eigen_json(&s) });
                return Ok(serde_json::to_string_pretty(&v)? + "\n");
            }
            Ok(format!("eigenvalues: {}\n", signed_list(&s)))
        }
        IncidenceSpec::AbelianCayley { orders, connecting_set } => {
            let values = cayley_spectrum(orders, connecting_set)?;
            let integral: Option<Vec<(BigInt, u64)>> =
                integral_spectrum(&values).map(|s| s.into_iter().map(|(v, m)| (BigInt::from(v), m)).collect());
            if json {
                let chars: Vec<_> = values
                    .iter()
                    .map(|c| json!({"character": c.label, "value": c.value.to_string(), "coefficients": c.value.coeffs(), "integral": c.value.is_integral()}))
                    .collect();
                let mut v = json!({ "spec": spec.to_string(), "root_of_unity_order": values.first().map(|c| c.value.order()), "characters": chars });
                if let Some(s) = &integral {
                    v["eigenvalues"] = json!(eigen_json(s));
                }
                return Ok(serde_json::to_string_pretty(&v)? + "\n");
            }
            let mut s: String = values.iter().map(|c| format!("{}: {}\n", c.label, c.value)).collect();
            match integral {
                Some(e) => s.push_str(&format!("eigenvalues: {}\n", signed_list(&e))),
                None => s.push_str("eigenvalues: not all integral (z is a primitive root of unity of the group exponent)\n"),
            }
            Ok(s)
        }
        other => Err(LabError::Usage(format!(
            "spectrum supports hamming-max-distance, kneser and abelian-cayley, not {}",
            other.family()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::cross_check;

    #[test]
    fn exit_status_precedence() {
        let ok = cross_check(&"subset-inclusion n=3 t=1 k=2".parse().unwrap());
        let mut mismatch = ok.clone();
        mismatch.status = ReportStatus::Mismatch;
        let mut resource = ok.clone();
        resource.status = ReportStatus::Error;
        resource.resource_error = true;
        let mut invalid = resource.clone();
        invalid.resource_error = false;
        assert_eq!(exit_for(std::slice::from_ref(&ok)), EXIT_OK);
        assert_eq!(exit_for(&[ok.clone(), resource.clone()]), EXIT_RESOURCE);
        assert_eq!(exit_for(&[resource.clone(), invalid.clone()]), EXIT_USAGE);
        assert_eq!(exit_for(&[invalid, resource, mismatch, ok]), EXIT_MISMATCH);
    }
}
