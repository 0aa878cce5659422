use lipext_core::suite::{run_suite, SuiteConfig};

#[test]
fn default_profile_passes() {
    let start = std::time::Instant::now();
    let reports = run_suite(&SuiteConfig::default());
    for r in &reports {
        println!(
            "{:<26} {:>6} {:>10.3e} {:>10.3e} {} {:?}",
            r.check_name, r.instances_run, r.max_violation, r.tolerance, r.passed, r.witness
        );
    }
    println!("elapsed {:?}", start.elapsed());
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| &r.check_name).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
