use std::sync::Arc;

use snflab::cache::{spec_hash, Cache, Lookup};
use snflab_core::{build, smith_normal_form, IncidenceSpec};

fn spec(s: &str) -> IncidenceSpec {
    s.parse().unwrap()
}

#[test]
fn store_then_lookup_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let s = spec("subspace-inclusion dim=3 d=1 e=2 q=2");
    assert!(matches!(cache.lookup(&s), Lookup::Miss));
    let a = build(&s).unwrap();
    let d = smith_normal_form(&a, false).unwrap();
    let entry = cache.store(&s, &a, &d).unwrap();
    assert_eq!(entry.spec_hash, spec_hash(&s));
    assert_eq!(entry.spec, s.to_string());
    match cache.lookup(&s) {
        Lookup::Hit { matrix, decomposition, entry: e } => {
            assert_eq!(matrix, a);
            assert_eq!(decomposition.invariant_factors(), d.invariant_factors());
            assert_eq!(e, entry);
        }
        other => panic!("expected hit, got {other:?}"),
    }
}

#[test]
fn hash_is_stable_and_canonical() {
    let a = spec("subspace-inclusion q=2 e=2 d=1 dim=3");
    let b = spec("subspace-inclusion dim=3 d=1 e=2 q=2");
    assert_eq!(spec_hash(&a), spec_hash(&b));
    assert_eq!(spec_hash(&a).len(), 64);
    assert_ne!(spec_hash(&a), spec_hash(&spec("subspace-inclusion dim=3 d=1 e=2 q=3")));
}

#[test]
fn version_change_misses() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec("kneser n=5 k=2");
    let a = build(&s).unwrap();
    let d = smith_normal_form(&a, false).unwrap();
    Cache::with_version(dir.path(), "0.0.1").unwrap().store(&s, &a, &d).unwrap();
    assert!(matches!(Cache::with_version(dir.path(), "0.0.2").unwrap().lookup(&s), Lookup::Miss));
    assert!(matches!(Cache::with_version(dir.path(), "0.0.1").unwrap().lookup(&s), Lookup::Hit { .. }));
}

#[test]
fn corrupt_entries_are_reported_and_bypassed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let s = spec("subset-inclusion n=4 t=1 k=2");
    let hash = spec_hash(&s);
    std::fs::write(dir.path().join(format!("{hash}.json")), "{ not json").unwrap();
    assert!(matches!(cache.lookup(&s), Lookup::Corrupt(_)));

    let harness = snflab::Harness { cache: Some(cache.clone()), timings: false, ..Default::default() };
    let outcome = harness.cross_check(&s);
    assert_eq!(outcome.report.invariant_factors, ["1", "1", "1", "2"]);
    assert!(outcome.diagnostics.iter().any(|d| d.contains("corrupt")));
    // The recomputed result replaced the corrupt entry.
    assert!(matches!(cache.lookup(&s), Lookup::Hit { .. }));

    // A damaged matrix file is also caught.
    std::fs::write(dir.path().join(format!("{hash}.mat")), "2 2\n1 0\n").unwrap();
    assert!(matches!(cache.lookup(&s), Lookup::Corrupt(_)));
}

#[test]
fn concurrent_stores_leave_one_entry() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Arc::new(Cache::open(dir.path()).unwrap());
    let s = spec("subspace-zero-meet dim=4 d=2 e=2 q=2");
    let a = Arc::new(build(&s).unwrap());
    let d = Arc::new(smith_normal_form(&a, false).unwrap());
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let (cache, s, a, d) = (cache.clone(), s.clone(), a.clone(), d.clone());
            std::thread::spawn(move || cache.store(&s, &a, &d).unwrap())
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 2, "{files:?}");
    match cache.lookup(&s) {
        Lookup::Hit { decomposition, .. } => assert_eq!(decomposition.invariant_factors(), d.invariant_factors()),
        other => panic!("expected hit, got {other:?}"),
    }
}

#[test]
fn cached_check_equals_fresh_check() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec("hamming-max-distance m=2 n=3");
    let harness = snflab::Harness { cache: Some(Cache::open(dir.path()).unwrap()), timings: false, ..Default::default() };
    let first = harness.cross_check(&s).report;
    let second = harness.cross_check(&s).report;
    assert_eq!(first, second);
    assert_eq!(first, snflab::cross_check(&s));
}
