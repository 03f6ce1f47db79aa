use hyrobin::geometry::DomainSpec;
use hyrobin::radial_oracle::Numerics;
use hyrobin::verifier::{Status, Tolerances, VerificationReport, Verifier};
use hyrobin::Error;

fn verifier() -> Verifier {
    Verifier::new(Numerics::default(), Tolerances::default())
}

fn labels(report: &VerificationReport, status: Status) -> Vec<&str> {
    report
        .outcomes
        .iter()
        .filter(|o| o.status == status)
        .map(|o| o.label.as_str())
        .collect()
}

#[test]
fn disk_chain_collapses() {
    let disk = DomainSpec::disk(1.0).unwrap();
    let report = verifier().main_theorem(&disk, -2.0, Some(&[1.0])).unwrap();
    assert!(report.pass, "{report:#?}");
    let get = |label: &str| report.outcomes.iter().find(|o| o.label == label).unwrap();
    // g(c_Ω) and g(coth R) are the same number when Ω is the disk
    assert!(get("groundstate_quotient_monotone").margin.unwrap().abs() < 1e-12);
    assert!(get("groundstate_quotient_equals_disk").margin.unwrap().abs() < 1e-6);
    assert!(get("ub_le_groundstate_quotient").margin.unwrap().abs() < 5e-5);
}

#[test]
fn low_curvature_domain_admits_every_radius() {
    let spec = DomainSpec::new(10.0, 3.0);
    let report = verifier().main_theorem(&spec, -2.0, None).unwrap();
    assert!(report.pass);
    assert!(labels(&report, Status::Skipped).is_empty());
    assert_eq!(report.outcomes.iter().filter(|o| o.label == "gate_oracle_equivalence").count(), 3);
}

#[test]
fn radii_beyond_threshold_are_skipped() {
    let (area, perimeter) = (3.412_276_265, 7.384_006_873);
    let spec = DomainSpec::new(perimeter, area);
    let report = verifier().main_theorem(&spec, -1.0, Some(&[0.5, 1.5, 3.0])).unwrap();
    let skipped: Vec<f64> = report
        .outcomes
        .iter()
        .filter(|o| o.status == Status::Skipped)
        .map(|o| o.point["R"])
        .collect();
    assert_eq!(skipped, vec![1.5, 3.0]);
    assert!(report.pass);
}

#[test]
fn corollary_chain_on_sample_specs() {
    for spec in [DomainSpec::new(10.0, 3.0), DomainSpec::new(20.0, 10.0)] {
        let report = verifier().corollaries(&spec, -2.0).unwrap();
        assert!(report.pass, "{report:#?}");
    }
    let disk = verifier().corollaries(&DomainSpec::disk(1.0).unwrap(), -2.0).unwrap();
    let ordered = disk.outcomes.iter().find(|o| o.label == "perimeter_disk_le_area_disk").unwrap();
    assert!(ordered.margin.unwrap().abs() < 1e-12);
}

#[test]
fn corollary_rejects_non_isoperimetric_spec() {
    let err = verifier().corollaries(&DomainSpec::new(3.0, 3.0), -2.0).unwrap_err();
    assert!(matches!(err, Error::Validation(_)));
}

#[test]
fn alpha_star_report_pinpoints_failures() {
    let report = verifier().alpha_star_bounds(&[1.0, 2.0, 5.0]).unwrap();
    assert!(report.pass);
    let small = verifier().alpha_star_bounds(&[0.25]).unwrap();
    assert_eq!(small.first_failure.as_deref(), Some("alpha_star_le_upper_bound"));
    assert_eq!(labels(&small, Status::Fail), vec!["alpha_star_le_upper_bound"]);
}

#[test]
fn essential_bottom_profile() {
    let v = verifier();
    let report = v.essential_bottom(0.0, 1.0, &[20.0, 40.0, 80.0]).unwrap();
    let values: Vec<f64> = report
        .outcomes
        .iter()
        .filter(|o| o.label == "not_below_bottom")
        .map(|o| o.rhs.unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!(values.iter().all(|&x| x > 0.25));
    let near = v.solver.alpha_star(1.0).unwrap() + 0.05;
    let report = v.essential_bottom(near, 1.0, &[20.0, 40.0]).unwrap();
    assert!(labels(&report, Status::Fail).iter().all(|l| *l == "final_gap"));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let spec = DomainSpec::new(20.0, 10.0);
    let run = || {
        let v = verifier();
        (
            v.main_theorem(&spec, -1.0, None).unwrap(),
            v.oracle_equivalence(&[-2.0, -1.0], &[0.5, 1.0, 2.0]).unwrap(),
        )
    };
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(run);
    assert_eq!(single, many);
    let bits = |r: &VerificationReport| r.outcomes.iter().map(|o| o.lhs.map(f64::to_bits)).collect::<Vec<_>>();
    assert_eq!(bits(&single.0), bits(&many.0));
}
