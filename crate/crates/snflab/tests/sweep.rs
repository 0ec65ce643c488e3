use snflab::harness::{ReportStatus, Verdict};
use snflab::sweep::{parse_axis, sweep, Axis};
use snflab::Harness;

fn axes(s: &str) -> Vec<Axis> {
    s.split_whitespace().map(|t| parse_axis(t).unwrap()).collect()
}

fn harness() -> Harness {
    Harness { timings: false, ..Harness::default() }
}

#[test]
fn subset_inclusion_all_match() {
    let out = sweep(&harness(), "subset-inclusion", &axes("n=0..8 k=0..n t=0..k"), 0).unwrap();
    assert_eq!(out.len(), (1..=9).map(|n| n * (n + 1) / 2).sum::<usize>());
    for o in &out {
        assert_eq!(o.report.verdicts.len(), 1);
        assert_eq!(o.report.verdicts[0].verdict, Verdict::Match, "{}", o.report.spec);
    }
    let specs: Vec<&str> = out.iter().map(|o| o.report.spec.as_str()).collect();
    let mut sorted = specs.clone();
    sorted.sort();
    assert_eq!(specs, sorted);
}

#[test]
fn skew_lines_match() {
    let out = sweep(&harness(), "subspace-zero-meet", &axes("dim=4 d=2 e=2 q=2,3"), 2).unwrap();
    assert_eq!(out.len(), 2);
    for o in &out {
        assert_eq!(o.report.verdicts[0].source, "formula/skew-lines");
        assert_eq!(o.report.verdicts[0].verdict, Verdict::Match);
        assert_eq!(o.report.status, ReportStatus::Ok, "{:?}", o.report.checks);
    }
}

#[test]
fn hamming_match() {
    let out = sweep(&harness(), "hamming-max-distance", &axes("m=1..3 n=2..4"), 0).unwrap();
    assert_eq!(out.len(), 9);
    for o in &out {
        assert_eq!(o.report.verdicts[0].verdict, Verdict::Match, "{}", o.report.spec);
        assert_eq!(o.report.status, ReportStatus::Ok, "{}: {:?}", o.report.spec, o.report.checks);
    }
}

#[test]
fn kneser_and_disjointness_match() {
    for (family, ranges) in [("kneser", "n=0..8 k=0..n/2"), ("subset-disjointness", "n=0..7 k=0..n t=0..k")] {
        for o in sweep(&harness(), family, &axes(ranges), 0).unwrap() {
            assert_eq!(o.report.status, ReportStatus::Ok, "{}: {:?} {:?}", o.report.spec, o.report.verdicts, o.report.checks);
            assert_eq!(o.report.verdicts[0].verdict, Verdict::Match);
        }
    }
}

#[test]
fn projective_spaces_agree() {
    let out = sweep(&harness(), "subspace-inclusion", &axes("dim=2..4 d=1..dim e=d..dim q=2,3,4"), 0).unwrap();
    for o in &out {
        assert_eq!(o.report.status, ReportStatus::Ok, "{}: {:?}", o.report.spec, o.report.verdicts);
    }
    let out = sweep(&harness(), "point-hyperplane", &axes("n=1..3 q=2,3,4,5"), 0).unwrap();
    for o in &out {
        assert_eq!(o.report.status, ReportStatus::Ok, "{}: {:?}", o.report.spec, o.report.verdicts);
    }
}

#[test]
fn over_budget_points_are_labeled_not_dropped() {
    let h = Harness { limits: snflab::limits::Limits { max_dim: 30, ..Default::default() }, timings: false, cache: None };
    let out = sweep(&h, "subset-inclusion", &axes("n=7 k=0..n t=0..k"), 0).unwrap();
    assert_eq!(out.len(), 36);
    let errors: Vec<_> = out.iter().filter(|o| o.report.status == ReportStatus::Error).collect();
    assert!(!errors.is_empty());
    assert!(errors.iter().all(|o| o.report.resource_error && o.report.error.is_some()));
}
