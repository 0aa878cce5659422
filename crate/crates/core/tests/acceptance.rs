//! Acceptance criteria. Runs without the libtest harness so that every
//! `cargo test` prints one `[PASS]`/`[FAIL]` line per criterion; the process
//! fails if any criterion does.

use std::time::{Duration, Instant};

use lipext_core::density::{builtin, density_sigma, lipschitz_approximate};
use lipext_core::modulus::{nu_extend_lower, nu_extend_upper, Modulus};
use lipext_core::normed::{approx_extend, hahn_banach_like_with, GridOptions};
use lipext_core::suite::{line_in_plane_problem, line_oracle, run_check, CheckReport, SizeProfile, SuiteConfig};
use lipext_core::{ExtensionSpec, Metric, Norm, NormedSpace, Point, Profile, SampleSet, Side};

struct Verdict {
    id: &'static str,
    what: &'static str,
    ok: bool,
    detail: String,
}

fn verdict(id: &'static str, what: &'static str, ok: bool, detail: String) -> Verdict {
    Verdict { id, what, ok, detail }
}

fn config(instances: usize, set_sizes: Vec<usize>, queries: usize) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(2024, Profile::Default);
    cfg.sizes = SizeProfile {
        instances,
        dims: vec![1, 2, 3, 4, 5],
        set_sizes,
        queries,
    };
    cfg
}

fn run(cfg: &SuiteConfig, name: &str) -> CheckReport {
    run_check(cfg, name).unwrap_or_else(|| panic!("unknown check {name}"))
}

fn summarise(reports: &[CheckReport]) -> (bool, String) {
    let ok = reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| {
            format!(
                "{} n={} max={:.3e} tol={:.1e}",
                r.check_name, r.instances_run, r.max_violation, r.tolerance
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    (ok, detail)
}

fn x(v: f64) -> Point {
    Point::scalar(v).unwrap()
}

fn ac01_two_point_instance() -> Verdict {
    let start = Instant::now();
    let samples = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
    let spec = ExtensionSpec::new(samples, 1.0, Side::Lower, 1e-9).unwrap();
    let lo = spec.lower(&x(2.0)).unwrap();
    let hi = spec.upper(&x(2.0)).unwrap();
    let elapsed = start.elapsed();
    let ok = (lo - 0.0).abs() <= 1e-12 && (hi - 2.0).abs() <= 1e-12 && elapsed < Duration::from_millis(1);
    verdict(
        "AC-1",
        "two-point instance",
        ok,
        format!("lower(2)={lo} upper(2)={hi} in {elapsed:?}"),
    )
}

fn ac02_extension_suite() -> Verdict {
    let cfg = config(500, vec![1, 2, 20, 200], 50);
    let start = Instant::now();
    let reports: Vec<_> = ["agreement_on_samples", "lipschitz_bound", "sandwich"]
        .iter()
        .map(|n| run(&cfg, n))
        .collect();
    let elapsed = start.elapsed();
    let (ok, detail) = summarise(&reports);
    let ok = ok && reports.iter().all(|r| r.instances_run == 500) && elapsed < Duration::from_secs(30);
    verdict(
        "AC-2",
        "agreement, Lipschitz bound, sandwich",
        ok,
        format!("{detail}; {elapsed:?}"),
    )
}

fn ac03_step_invariance() -> Verdict {
    let cfg = config(200, vec![1, 2, 20, 200], 50);
    let r = run(&cfg, "step_invariance");
    let (ok, detail) = summarise(std::slice::from_ref(&r));
    verdict("AC-3", "step invariance", ok && r.instances_run == 200, detail)
}

fn ac04_constant_preservation() -> Verdict {
    let cfg = config(200, vec![2, 20, 200], 50);
    let r = run(&cfg, "constant_preservation");
    let (ok, detail) = summarise(std::slice::from_ref(&r));
    verdict("AC-4", "constant preservation", ok && r.instances_run == 200, detail)
}

fn ac05_distance_and_extrema() -> Verdict {
    let cfg = config(100, vec![1, 2, 20, 200], 50);
    let reports = [run(&cfg, "dist_to_set_identity"), run(&cfg, "extremum_preservation")];
    let (ok, detail) = summarise(&reports);
    let ok = ok && reports[0].instances_run == 100 && reports[1].tolerance == 0.0;
    verdict("AC-5", "distance identity and extrema", ok, detail)
}

fn ac06_algebra() -> Verdict {
    let cfg = config(200, vec![1, 2, 20, 200], 50);
    let reports = [run(&cfg, "sum_bound"), run(&cfg, "scaling_identity")];
    let (ok, detail) = summarise(&reports);
    let ok = ok && reports.iter().all(|r| r.instances_run == 200);
    verdict("AC-6", "sum bound and scaling", ok, detail)
}

fn ac07_density_sqrt() -> Verdict {
    let f = builtin("sqrt").unwrap();
    let pts: Vec<Point> = (0..201).map(|k| x(k as f64 / 200.0)).collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for eps in [0.3, 0.1, 0.05] {
        let start = Instant::now();
        let approx = lipschitz_approximate(&f, &pts, Metric::euclidean(1), eps).unwrap();
        let mut worst: f64 = 0.0;
        for p in &pts {
            let fv = f.eval(p);
            let lo = approx.minorant_at(p).unwrap();
            let hi = approx.majorant_at(p).unwrap();
            worst = worst
                .max((fv - eps) - lo)
                .max(lo - fv)
                .max(fv - hi)
                .max(hi - (fv + eps));
        }
        let elapsed = start.elapsed();
        let sigma_exact =
            approx.sigma == 2.0 * f.bound() / f.omega(eps).unwrap() && approx.sigma == density_sigma(&f, eps).unwrap();
        ok &= worst <= 0.0 && sigma_exact && elapsed < Duration::from_secs(1);
        detail.push(format!(
            "eps={eps} sigma={} worst={worst:.3e} {elapsed:?}",
            approx.sigma
        ));
    }
    verdict("AC-7", "density sandwich for sqrt", ok, detail.join("; "))
}

fn ac08_approximate_extension() -> Verdict {
    let prob = line_in_plane_problem().unwrap();
    let q = Point::new(vec![0.0, 1.0]).unwrap();
    let (olo, ohi) = line_oracle(0.0, 1.0, 1.0, 1_000_000);
    let mut slowest = Duration::ZERO;
    let mut timed = |side| {
        let start = Instant::now();
        let v = approx_extend(&prob, 1.0, &q, side, GridOptions::default())
            .unwrap()
            .value;
        slowest = slowest.max(start.elapsed());
        v
    };
    let lo = timed(Side::Lower);
    let hi = timed(Side::Upper);
    let oracle_gap = (lo - olo).abs().max((hi - ohi).abs());

    let cfg = config(100, vec![1], 1);
    let reports = [
        run(&cfg, "approx_oracle"),
        run(&cfg, "approx_lipschitz"),
        run(&cfg, "approx_shift_covariance"),
    ];
    let (ok, detail) = summarise(&reports);
    let ok = ok
        && oracle_gap <= 1e-4
        && reports[1].instances_run == 200
        && reports[1].tolerance == 1e-6
        && reports[2].tolerance == 1e-12
        && slowest < Duration::from_millis(100);
    verdict(
        "AC-8",
        "approximate extension",
        ok,
        format!("lower={lo} upper={hi} oracle gap={oracle_gap:.3e} slowest query {slowest:?}; {detail}"),
    )
}

fn ac09_hahn_banach() -> Verdict {
    let space = NormedSpace::new(2, Norm::L2).unwrap();
    let x0 = Point::new(vec![3.0, 4.0]).unwrap();
    let r = hahn_banach_like_with(&space, &x0, 401, 100, 9).unwrap();
    let value = (r.upper_at_x0 - 5.0).abs();
    let constant = (r.empirical_constant - 1.0).abs();
    let sub = r.sublinearity_violation.max(r.superlinearity_violation);
    let ok = value <= 1e-12 && constant <= 1e-9 && sub <= r.grid_tolerance && r.trials == 100;
    verdict(
        "AC-9",
        "extension of the norm along a segment",
        ok,
        format!(
            "upper(x0)={} L={} sublinearity={sub:.3e} grid tol={:.3e}",
            r.upper_at_x0, r.empirical_constant, r.grid_tolerance
        ),
    )
}

fn ac10_differential_oracle() -> Verdict {
    let cfg = config(10_000, vec![1, 2, 20, 200], 1);
    let r = run(&cfg, "differential_oracle");
    let (ok, detail) = summarise(std::slice::from_ref(&r));
    verdict("AC-10", "differential oracle", ok && r.instances_run >= 10_000, detail)
}

fn ac11_hoelder() -> Verdict {
    let samples = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
    let nu = Modulus::hoelder(1.0, 0.5).unwrap();
    let lo = nu_extend_lower(&samples, &nu, &x(4.0)).unwrap();
    let hi = nu_extend_upper(&samples, &nu, &x(4.0)).unwrap();
    let r = run(&config(100, vec![1, 2, 20, 200], 50), "nu_reduction");
    let ok = (lo - (1.0 - 3f64.sqrt())).abs() <= 1e-12 && (hi - 2.0).abs() <= 1e-12 && r.passed;
    verdict(
        "AC-11",
        "Hoelder extension",
        ok,
        format!(
            "lower(4)={lo} upper(4)={hi}; linear reduction max={:.3e}",
            r.max_violation
        ),
    )
}

fn ac12_shape_at_grid_scale() -> Verdict {
    let cfg = config(100, vec![1], 1);
    let reports = [
        run(&cfg, "convexity"),
        run(&cfg, "concavity"),
        run(&cfg, "hahn_banach_sublinearity"),
    ];
    let (ok, detail) = summarise(&reports);
    let ok = ok && reports.iter().all(|r| r.instances_run >= 100);
    verdict("AC-12", "convexity and sublinearity", ok, detail)
}

fn main() -> std::process::ExitCode {
    let criteria: [fn() -> Verdict; 12] = [
        ac01_two_point_instance,
        ac02_extension_suite,
        ac03_step_invariance,
        ac04_constant_preservation,
        ac05_distance_and_extrema,
        ac06_algebra,
        ac07_density_sqrt,
        ac08_approximate_extension,
        ac09_hahn_banach,
        ac10_differential_oracle,
        ac11_hoelder,
        ac12_shape_at_grid_scale,
    ];
    let mut failed = 0;
    for (i, run) in criteria.into_iter().enumerate() {
        let v = std::panic::catch_unwind(run).unwrap_or_else(|_| Verdict {
            id: "AC-?",
            what: "criterion",
            ok: false,
            detail: format!("criterion #{} panicked", i + 1),
        });
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {} {}: {}", v.id, v.what, v.detail);
        failed += usize::from(!v.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
