use kakeya_core::error::Error;
use kakeya_core::oracle::{
    self, find_h_threshold, find_h_threshold_with, h_min_at_zero, run_check, CheckId, DeltaCap,
    H_GRID_POINTS,
};

#[test]
fn every_check_passes_on_default_seed() {
    let reports = oracle::run_all(oracle::DEFAULT_SEED);
    assert_eq!(reports.len(), 9);
    for (rep, id) in reports.iter().zip(CheckId::ALL) {
        assert_eq!(rep.id, id);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.pass, rep.max_violation <= rep.tolerance);
    }
}

#[test]
fn parallel_and_serial_runs_agree() {
    let ids = [CheckId::ArcConsistency, CheckId::IsoscelesMinimality, CheckId::SectorMeasure];
    let par = oracle::run_checks(&ids, 11, Some(2_000));
    for (rep, id) in par.iter().zip(ids) {
        assert_eq!(*rep, run_check(id, 2_000, 11, id.default_tolerance()));
    }
}

#[test]
fn tiny_sector_run_is_consistent() {
    let rep = run_check(CheckId::SectorMeasure, 100, 7, 3.0);
    assert_eq!(rep.samples, 100);
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn sector_measure_seed_eleven() {
    let rep = run_check(CheckId::SectorMeasure, 1_000_000, 11, 3.0);
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn ext_disjoint_seed_seven() {
    let rep = run_check(CheckId::ExtDisjoint, 10_000, 7, 0.0);
    assert!(rep.pass);
    assert_eq!(rep.max_violation, 0.0);
}

#[test]
fn h_predicate() {
    assert_eq!(h_min_at_zero(0.15, DeltaCap::PiHalfF, H_GRID_POINTS), 0.0);
    assert!(h_min_at_zero(0.10, DeltaCap::PiHalfF, H_GRID_POINTS) > 0.0);
    assert!(matches!(
        find_h_threshold(0.15, 0.2, 1e-4),
        Err(Error::Bracket { .. })
    ));
}

#[test]
fn h_threshold_depends_on_delta_range() {
    // frozen from a 30-digit scan of the same predicate
    let cases = [
        (DeltaCap::PiHalfF, 0.1398),
        (DeltaCap::PiEighthF, 0.1358),
        (DeltaCap::Fixed(std::f64::consts::PI / 49.0), 0.1410),
    ];
    for (cap, expect) in cases {
        let t = find_h_threshold_with(0.10, 0.20, 1e-5, cap, H_GRID_POINTS).unwrap();
        assert!((t - expect).abs() < 5e-4, "{cap:?}: {t}");
    }
    let full = find_h_threshold_with(0.10, 0.30, 1e-5, DeltaCap::Radius, H_GRID_POINTS).unwrap();
    assert!((full - 0.2207).abs() < 5e-4, "{full}");
    // small-delta curvature of h changes sign at the root of 32r^4 + 4r^2 - 8r + 1
    let root = 0.135_53;
    assert!(find_h_threshold(0.10, 0.20, 1e-4).unwrap() > root);
}
