use soergel::selftest::{criterion, run, CRITERIA};

#[test]
fn battery_passes_for_other_seeds() {
    for seed in [0, 1, 2026] {
        let report = run(seed);
        assert_eq!(report.criteria.len(), CRITERIA as usize);
        for c in &report.criteria {
            assert!(c.passed, "seed {seed}: {c}");
        }
    }
}

#[test]
fn reports_are_reproducible() {
    assert_eq!(run(9), run(9));
}

#[test]
fn unknown_criterion_fails_cleanly() {
    let c = criterion(99, 0);
    assert!(!c.passed);
    assert!(c.detail.contains("no criterion"));
}
