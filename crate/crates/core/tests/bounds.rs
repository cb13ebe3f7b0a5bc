use hyperqueens::bounds::{bounds_report, BoundsRecord, KnownTable, ReportOptions};
use hyperqueens::geometry::verify_certificate;

fn report(ns: std::ops::RangeInclusive<usize>, d: usize) -> Vec<BoundsRecord> {
    bounds_report(ns, d, &KnownTable::vendored(), &ReportOptions::default()).unwrap()
}

fn check_witnesses(records: &[BoundsRecord]) {
    for r in records {
        assert!(r.lower <= r.upper, "({}, {}) {} > {}", r.n, r.d, r.lower, r.upper);
        if let Some(w) = &r.witness {
            assert_eq!(w.len() as u64, r.lower, "({}, {})", r.n, r.d);
            assert!(verify_certificate(w, false).unwrap().is_valid(), "({}, {})", r.n, r.d);
        }
    }
}

#[test]
fn large_three_dimensional_row() {
    let r = report(27..=31, 3);
    check_witnesses(&r);
    let lower: Vec<u64> = r.iter().map(|r| r.lower).collect();
    assert_eq!(lower, [679, 757, 841, 871, 961]);
    assert!(r[0].lower_method.starts_with("crop:n=29,k=2"));
    assert!(r[2].is_exact() && r[4].is_exact());
    assert!(r.iter().all(|r| r.witness.is_some()));
}

#[test]
fn exact_values_from_regular_solutions_and_crops() {
    let r = report(9..=11, 3);
    check_witnesses(&r);
    let lower: Vec<u64> = r.iter().map(|r| r.lower).collect();
    assert_eq!(lower, [67, 91, 121]);
    assert!(r[2].is_exact());
    let r = report(4..=4, 4);
    assert_eq!((r[0].lower, r[0].upper), (16, 16));
}

#[test]
fn bounds_are_monotone() {
    let three = report(1..=12, 3);
    let four = report(1..=7, 4);
    check_witnesses(&three);
    check_witnesses(&four);
    for rows in [&three, &four] {
        for w in rows.windows(2) {
            assert!(w[1].lower >= w[0].lower, "n={} d={}", w[1].n, w[1].d);
        }
    }
    for (a, b) in three.iter().zip(&four) {
        assert!(b.lower >= a.lower, "n={}", a.n);
    }
    let lower: Vec<u64> = four.iter().map(|r| r.lower).collect();
    assert_eq!(lower, [1, 1, 6, 16, 38, 80, 145]);
}
