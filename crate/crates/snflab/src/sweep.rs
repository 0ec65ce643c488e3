//! Parameter-grid sweeps.
//!
//! A grid is a family tag plus one range per key, expanded in the order
//! given: `n=1..8 k=0..n t=0..k q=2,3`. Ranges are inclusive; bounds are
//! integer expressions over `+ - * /` and keys bound earlier in the list.

use std::collections::BTreeMap;

use rayon::prelude::*;
use snflab_core::incidence::FAMILY_TAGS;
use snflab_core::IncidenceSpec;

use crate::error::{LabError, LabResult};
use crate::harness::{CrossCheckReport, Harness, Outcome};

/// Largest number of grid points a sweep accepts.
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Values {
    Range(String, String),
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    key: String,
    values: Values,
}

fn usage(msg: impl Into<String>) -> LabError {
    LabError::Usage(msg.into())
}

pub fn parse_axis(token: &str) -> LabResult<Axis> {
    let (key, rhs) = token.split_once('=').ok_or_else(|| usage(format!("range {token:?} is not key=values")))?;
    if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(usage(format!("bad key in {token:?}")));
    }
    let values = match rhs.split_once("..") {
        Some((lo, hi)) => Values::Range(lo.trim().to_string(), hi.trim().to_string()),
        None => Values::List(rhs.split(',').map(|s| s.trim().to_string()).collect()),
    };
    Ok(Axis { key: key.to_string(), values })
}

/// Evaluates `expr` with integer arithmetic; `/` truncates toward zero.
fn eval(expr: &str, env: &BTreeMap<String, i64>) -> LabResult<i64> {
    let tokens = tokenize(expr)?;
    let mut pos = 0;
    let v = eval_sum(&tokens, &mut pos, env, expr)?;
    if pos != tokens.len() {
        return Err(usage(format!("trailing input in {expr:?}")));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Key(String),
    Op(char),
}

fn tokenize(expr: &str) -> LabResult<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| usage(format!("number {s} out of range")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Key(chars[start..i].iter().collect()));
        } else if "+-*/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(usage(format!("unexpected {c:?} in {expr:?}")));
        }
    }
    Ok(out)
}

fn eval_atom(t: &[Tok], pos: &mut usize, env: &BTreeMap<String, i64>, expr: &str) -> LabResult<i64> {
    let tok = t.get(*pos).ok_or_else(|| usage(format!("incomplete expression {expr:?}")))?;
    *pos += 1;
    match tok {
        Tok::Num(n) => Ok(*n),
        Tok::Key(k) => env.get(k).copied().ok_or_else(|| usage(format!("{k} is not bound before {expr:?}"))),
        Tok::Op('-') => Ok(-eval_atom(t, pos, env, expr)?),
        Tok::Op(c) => Err(usage(format!("unexpected {c:?} in {expr:?}"))),
    }
}

fn eval_product(t: &[Tok], pos: &mut usize, env: &BTreeMap<String, i64>, expr: &str) -> LabResult<i64> {
    let mut acc = eval_atom(t, pos, env, expr)?;
    while let Some(Tok::Op(c @ ('*' | '/'))) = t.get(*pos) {
        *pos += 1;
        let rhs = eval_atom(t, pos, env, expr)?;
        acc = match c {
            '*' => acc.checked_mul(rhs),
            _ => acc.checked_div(rhs),
        }
        .ok_or_else(|| usage(format!("arithmetic error in {expr:?}")))?;
    }
    Ok(acc)
}

fn eval_sum(t: &[Tok], pos: &mut usize, env: &BTreeMap<String, i64>, expr: &str) -> LabResult<i64> {
    let mut acc = eval_product(t, pos, env, expr)?;
    while let Some(Tok::Op(c @ ('+' | '-'))) = t.get(*pos) {
        *pos += 1;
        let rhs = eval_product(t, pos, env, expr)?;
        acc = if *c == '+' { acc.checked_add(rhs) } else { acc.checked_sub(rhs) }
            .ok_or_else(|| usage(format!("arithmetic overflow in {expr:?}")))?;
    }
    Ok(acc)
}

/// All grid points as spec text, in expansion order.
pub fn expand(family: &str, axes: &[Axis]) -> LabResult<Vec<String>> {
    if !FAMILY_TAGS.contains(&family) {
        return Err(usage(format!("unknown family {family:?}; expected one of {}", FAMILY_TAGS.join(", "))));
    }
    if family == "abelian-cayley" {
        return Err(usage("abelian-cayley specs cannot be swept; check them one at a time"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for a in axes {
        if !seen.insert(&a.key) {
            return Err(usage(format!("key {} given twice", a.key)));
        }
    }
    let mut out = Vec::new();
    let mut env = BTreeMap::new();
    let mut assigned = Vec::new();
    walk(family, axes, &mut env, &mut assigned, &mut out)?;
    Ok(out)
}

fn walk(
    family: &str,
    axes: &[Axis],
    env: &mut BTreeMap<String, i64>,
    assigned: &mut Vec<(String, i64)>,
    out: &mut Vec<String>,
) -> LabResult<()> {
    let Some((axis, rest)) = axes.split_first() else {
        let mut s = family.to_string();
        for (k, v) in assigned.iter() {
            s.push_str(&format!(" {k}={v}"));
        }
        out.push(s);
        if out.len() > MAX_GRID_POINTS {
            return Err(usage(format!("grid has more than {MAX_GRID_POINTS} points")));
        }
        return Ok(());
    };
    let values: Vec<i64> = match &axis.values {
        Values::Range(lo, hi) => {
            let (lo, hi) = (eval(lo, env)?, eval(hi, env)?);
            (lo..=hi).collect()
        }
        Values::List(items) => items.iter().map(|e| eval(e, env)).collect::<LabResult<_>>()?,
    };
    for v in values {
        env.insert(axis.key.clone(), v);
        assigned.push((axis.key.clone(), v));
        walk(family, rest, env, assigned, out)?;
        assigned.pop();
    }
    env.remove(&axis.key);
    Ok(())
}

fn check_point(harness: &Harness, text: &str) -> Outcome {
    match text.parse::<IncidenceSpec>() {
        Ok(spec) => harness.cross_check(&spec),
        Err(e) => {
            let family = text.split_whitespace().next().unwrap_or_default();
            let report = CrossCheckReport::failed(text, family, [0, 0], &LabError::Core(e));
            Outcome { report, diagnostics: Vec::new() }
        }
    }
}

/// Cross-checks every grid point on `jobs` threads (0 means all cores).
/// Results are sorted by spec text; failing points become error reports.
pub fn sweep(harness: &Harness, family: &str, axes: &[Axis], jobs: usize) -> LabResult<Vec<Outcome>> {
    let points = expand(family, axes)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {jobs} worker threads: {e}")))?;
    let mut outcomes: Vec<Outcome> = pool.install(|| points.par_iter().map(|p| check_point(harness, p)).collect());
    outcomes.sort_by(|a, b| a.report.spec.cmp(&b.report.spec));
    Ok(outcomes)
}
