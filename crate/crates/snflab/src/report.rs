//! Text, JSON and CSV renderings of cross-check reports.

use std::fmt::Write;

use crate::error::LabResult;
use crate::harness::CrossCheckReport;

/// Run-length form of a chain: `1^4 2^2 6^1`.
pub fn run_length<S: AsRef<str>>(values: &[S]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let v = values[i].as_ref();
        let mut j = i;
        while j < values.len() && values[j].as_ref() == v {
            j += 1;
        }
        parts.push(format!("{v}^{}", j - i));
        i = j;
    }
    parts.join(" ")
}

pub fn text(r: &CrossCheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "spec: {}", r.spec);
    let _ = writeln!(s, "shape: {}x{}", r.shape[0], r.shape[1]);
    if let Some(err) = &r.error {
        let _ = writeln!(s, "error: {err}");
    }
    if let Some(rank) = r.rank {
        let _ = writeln!(s, "rank: {rank}");
        let _ = writeln!(s, "invariant factors: {}", run_length(&r.invariant_factors));
    }
    for p in &r.profiles {
        let m: Vec<String> = p.multiplicities.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "profile p={}: {}", p.prime, m.join(" "));
    }
    for p in &r.predictions {
        let _ = write!(s, "prediction {} [{}]: {}", p.source, p.locality, run_length(&p.invariant_factors));
        if let Some(note) = &p.note {
            let _ = write!(s, " ({note})");
        }
        s.push('\n');
    }
    for v in &r.verdicts {
        let _ = writeln!(s, "{} {}: {}", v.verdict.as_str(), v.source, v.details);
    }
    for c in &r.checks {
        let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(s, "check {}: {status}: {}", c.name, c.details);
    }
    let _ = writeln!(s, "status: {}", r.status.as_str());
    if let Some(ms) = r.elapsed_ms {
        let _ = writeln!(s, "elapsed_ms: {ms}");
    }
    s
}

pub fn json(r: &CrossCheckReport) -> LabResult<String> {
    Ok(serde_json::to_string_pretty(r)? + "\n")
}

pub fn json_all(reports: &[CrossCheckReport]) -> LabResult<String> {
    Ok(serde_json::to_string_pretty(reports)? + "\n")
}

/// One row per (spec, verdict); reports without verdicts get a single
/// `ERROR` row.
pub fn csv(reports: &[CrossCheckReport], timings: bool) -> LabResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["spec", "family", "rows", "cols", "rank", "source", "verdict", "details", "status"];
    if timings {
        header.push("elapsed_ms");
    }
    w.write_record(&header)?;
    for r in reports {
        let base = [
            r.spec.clone(),
            r.family.clone(),
            r.shape[0].to_string(),
            r.shape[1].to_string(),
            r.rank.map(|x| x.to_string()).unwrap_or_default(),
        ];
        let mut rows: Vec<[String; 3]> = r
            .verdicts
            .iter()
            .map(|v| [v.source.clone(), v.verdict.as_str().to_string(), v.details.clone()])
            .collect();
        if rows.is_empty() {
            rows.push([String::new(), "ERROR".into(), r.error.clone().unwrap_or_default()]);
        }
        for row in rows {
            let mut record: Vec<String> = base.to_vec();
            record.extend(row);
            record.push(r.status.as_str().to_string());
            if timings {
                record.push(r.elapsed_ms.map(|x| x.to_string()).unwrap_or_default());
            }
            w.write_record(&record)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_lengths() {
        assert_eq!(run_length(&["1", "1", "2", "6"]), "1^2 2^1 6^1");
        assert_eq!(run_length::<&str>(&[]), "");
    }
}
