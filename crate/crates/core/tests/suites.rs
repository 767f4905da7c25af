use zetaline_core::integral_reps::{nu_via_critical_line, nu_via_three_halves_line, REALNESS_TOL};
use zetaline_core::nu_series::{nu_direct, OmegaArgument, SeriesConfig};
use zetaline_core::quadrature::QuadratureConfig;
use zetaline_core::report::{run, serialize, Command, Format, RunConfig, RunOutput};
use zetaline_core::{Complex, Error};

fn bundle(cfg: &RunConfig) -> zetaline_core::report::ReportBundle {
    match run(cfg).unwrap() {
        RunOutput::Verification(b) => b,
        other => panic!("expected a verification report, got {other:?}"),
    }
}

#[test]
fn cross_suite_passes_and_is_reproducible() {
    let mut cfg = RunConfig::new(Command::VerifyCross);
    cfg.count = 6;
    let a = bundle(&cfg);
    let b = bundle(&cfg);
    assert_eq!(a.summary.failed, 0);
    // 6 points x 3 pairs, 10 extension points, omega = -1, its closed form
    assert_eq!(a.summary.total, 6 * 3 + 11 + 1);
    assert_eq!(
        serialize(&RunOutput::Verification(a), Format::Json).unwrap(),
        serialize(&RunOutput::Verification(b), Format::Json).unwrap()
    );
}

#[test]
fn different_seeds_draw_different_points() {
    let mut cfg = RunConfig::new(Command::VerifyCross);
    cfg.count = 2;
    let a = bundle(&cfg);
    cfg.seed += 1;
    let b = bundle(&cfg);
    assert_ne!(a.records[0].id, b.records[0].id);
}

#[test]
fn every_record_satisfies_pass_invariant() {
    let mut cfg = RunConfig::new(Command::VerifyProof);
    cfg.r_max = 12;
    cfg.omega = Some(Complex::new(0.2, -0.4));
    let b = bundle(&cfg);
    for r in &b.records {
        assert_eq!(r.pass, r.abs_diff <= r.tol, "{}", r.id);
        assert!(r.abs_diff >= 0.0);
    }
    assert!(b
        .records
        .iter()
        .any(|r| r.id.starts_with("assembly[w=0.2-0.4i")));
    assert!(b.records.iter().any(|r| r.id.starts_with("ir-decreasing")));
    assert_eq!(b.summary.failed, 0);
}

#[test]
fn real_omega_gives_real_values_on_both_lines() {
    let cfg = QuadratureConfig::with_tol(1e-10);
    for w in [-0.3, 0.0, 0.7, 2.0, 5.5] {
        let omega = OmegaArgument::real(w);
        let half = nu_via_critical_line(&omega, &cfg).unwrap().value;
        let three = nu_via_three_halves_line(&omega, &cfg).unwrap().value;
        assert!(half.im.abs() <= REALNESS_TOL, "w = {w}: {half}");
        assert!(three.im.abs() <= REALNESS_TOL, "w = {w}: {three}");
    }
}

#[test]
fn domains_are_enforced() {
    let cfg = QuadratureConfig::default();
    let outside_half = OmegaArgument::real(-0.6);
    assert!(matches!(
        nu_via_critical_line(&outside_half, &cfg),
        Err(Error::HalfLineDomain(_))
    ));
    assert!(nu_via_three_halves_line(&outside_half, &cfg).is_ok());
    let outside_both = OmegaArgument::real(-1.7);
    assert!(matches!(
        nu_via_three_halves_line(&outside_both, &cfg),
        Err(Error::ThreeHalvesLineDomain(_))
    ));
    assert!(nu_direct(&outside_both, &SeriesConfig::default()).is_ok());
    assert!(nu_direct(&OmegaArgument::real(-3.0), &SeriesConfig::default()).is_err());
}

#[test]
fn invalid_run_tolerance_is_rejected() {
    let mut cfg = RunConfig::new(Command::VerifyCorollary);
    cfg.tol = 0.0;
    assert!(run(&cfg).is_err());
    cfg.tol = 1e-7;
    cfg.max_nodes = 8;
    assert!(run(&cfg).is_err());
}
