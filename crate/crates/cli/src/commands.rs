use std::fs;
use std::io::Write;
use std::path::Path;

use lipext_core::density::{builtin, lipschitz_approximate, sandwich_at_samples, UCFunction};
use lipext_core::suite::{run_suite, Profile, SuiteConfig};
use lipext_core::{
    approx_mcshane, approx_whitney, lipschitz_constant, ExtensionSpec, Metric, MetricKind, Modulus, Norm, NormedSpace,
    NuExtension, Point, SampleSet, Side, SubspaceFunction, SubspaceProblem,
};
use serde::{Deserialize, Serialize};

use crate::io::{coordinate_header, output, read_points, read_samples, write_csv};
use crate::{ApproxArgs, CheckArgs, CliError, DensityArgs, ExtendArgs, FitArgs};

fn metric_parser(spec: &str) -> Result<impl Fn(usize) -> Result<Metric, CliError>, CliError> {
    let kind: MetricKind = spec.parse()?;
    Ok(move |dim| Metric::new(kind, dim).map_err(CliError::from))
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| CliError::io(e.to_string()))
}

pub fn fit(args: &FitArgs) -> Result<(), CliError> {
    let samples = read_samples(&args.samples, metric_parser(&args.metric)?)?;
    let report = lipschitz_constant(&samples)?;
    print_json(&mut std::io::stdout(), &report)
}

enum Extender {
    Lipschitz(ExtensionSpec),
    Modulus(NuExtension),
}

impl Extender {
    fn at(&self, side: Side, x: &Point) -> lipext_core::Result<f64> {
        match (self, side) {
            (Extender::Lipschitz(s), Side::Lower) => s.lower(x),
            (Extender::Lipschitz(s), Side::Upper) => s.upper(x),
            (Extender::Lipschitz(s), Side::Midpoint) => s.with_side(Side::Midpoint).eval(x),
            (Extender::Modulus(n), Side::Lower) => n.lower(x),
            (Extender::Modulus(n), Side::Upper) => n.upper(x),
            (Extender::Modulus(n), Side::Midpoint) => n.midpoint(x),
        }
    }
}

pub fn extend(args: &ExtendArgs) -> Result<(), CliError> {
    let sides: Vec<Side> = if args.side == "both" {
        vec![Side::Lower, Side::Upper, Side::Midpoint]
    } else {
        vec![args.side.parse()?]
    };
    let samples = read_samples(&args.samples, metric_parser(&args.metric)?)?;
    let queries = read_points(&args.queries)?;
    let ext = match (&args.sigma, &args.modulus) {
        (Some(sigma), None) => Extender::Lipschitz(ExtensionSpec::new(samples.clone(), *sigma, Side::Lower, args.tol)?),
        (None, Some(spec)) => Extender::Modulus(NuExtension::new(samples.clone(), spec.parse::<Modulus>()?, args.tol)?),
        _ => return Err(CliError::parse("give exactly one of --sigma and --modulus".into())),
    };
    let dim = samples.dim();
    let mut header = coordinate_header(dim);
    if sides.len() == 1 {
        header.push("g".into());
    } else {
        header.extend(["lower", "upper", "midpoint"].map(String::from));
    }
    let mut rows = Vec::with_capacity(queries.len());
    for q in &queries {
        let mut row = q.coords().to_vec();
        for &side in &sides {
            row.push(ext.at(side, q)?);
        }
        rows.push(row);
    }
    write_csv(output(args.out.as_deref())?, &header, &rows)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    dimension: usize,
    #[serde(default = "default_norm")]
    norm: String,
    basis: Vec<Vec<f64>>,
    g: GFile,
    sigma: f64,
    #[serde(default)]
    max_subspace_dim: Option<usize>,
}

fn default_norm() -> String {
    "euclidean".into()
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum GFile {
    Linear(Vec<f64>),
    /// CSV of basis coordinates and values, relative to the problem file.
    Samples(String),
}

fn load_problem(path: &Path, tol: f64) -> Result<SubspaceProblem, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let file: ProblemFile =
        serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let norm: Norm = file.norm.parse()?;
    let space = NormedSpace::new(file.dimension, norm)?;
    let g = match file.g {
        GFile::Linear(w) => SubspaceFunction::Linear(w),
        GFile::Samples(rel) => {
            let csv = path.parent().unwrap_or(Path::new(".")).join(rel);
            let k = file.basis.len();
            let samples = read_samples(&csv, |dim| {
                if dim != k {
                    return Err(CliError::parse(format!(
                        "{}: expected {k} basis coordinates, found {dim}",
                        csv.display()
                    )));
                }
                Ok(Metric::new(norm.metric_kind(), dim)?)
            })?;
            SubspaceFunction::Samples(samples)
        }
    };
    let problem = match file.max_subspace_dim {
        Some(m) => SubspaceProblem::with_max_dim(space, file.basis, g, file.sigma, tol, m)?,
        None => SubspaceProblem::new(space, file.basis, g, file.sigma, tol)?,
    };
    Ok(problem)
}

pub fn approx_extend(args: &ApproxArgs) -> Result<(), CliError> {
    if !(args.epsilon > 0.0) || !args.epsilon.is_finite() {
        return Err(CliError::parse(format!(
            "--epsilon must be positive, got {}",
            args.epsilon
        )));
    }
    let problem = load_problem(&args.problem, args.tol)?;
    let queries = read_points(&args.queries)?;
    let mut header = coordinate_header(problem.space().dimension);
    header.extend(["lower", "upper", "radius_used", "grid_points"].map(String::from));
    let mut rows = Vec::with_capacity(queries.len());
    for q in &queries {
        let lo = approx_mcshane(&problem, args.epsilon, q, args.resolution)?;
        let hi = approx_whitney(&problem, args.epsilon, q, args.resolution)?;
        let mut row = q.coords().to_vec();
        row.extend([lo.value, hi.value, lo.radius_used, lo.grid_points_evaluated as f64]);
        rows.push(row);
    }
    write_csv(output(args.out.as_deref())?, &header, &rows)
}

#[derive(Serialize)]
struct DensitySummary {
    function: String,
    epsilon: f64,
    sigma: f64,
    omega: f64,
    bound: f64,
    points: usize,
    max_below: f64,
    max_above: f64,
    max_violation: f64,
    tolerance: f64,
    sandwich_passed: bool,
}

/// `power:C:P` as `eps -> C eps^P`.
fn parse_omega(spec: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::parse(format!("bad --omega '{spec}', expected power:C:P"));
    let rest = spec.strip_prefix("power:").ok_or_else(bad)?;
    let (c, p) = rest.split_once(':').ok_or_else(bad)?;
    let c: f64 = c.parse().map_err(|_| bad())?;
    let p: f64 = p.parse().map_err(|_| bad())?;
    if !(c > 0.0 && p > 0.0) || !c.is_finite() || !p.is_finite() {
        return Err(bad());
    }
    Ok((c, p))
}

fn grid(interval: &str, n: usize) -> Result<Vec<Point>, CliError> {
    let bad = || CliError::parse(format!("bad --interval '{interval}', expected a,b with a < b"));
    let (a, b) = interval.split_once(',').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if n < 2 {
        return Err(CliError::parse(format!("--n must be at least 2, got {n}")));
    }
    (0..n)
        .map(|i| Point::scalar(a + (b - a) * i as f64 / (n - 1) as f64).map_err(CliError::from))
        .collect()
}

pub fn density(args: &DensityArgs) -> Result<(), CliError> {
    if !(args.epsilon > 0.0) || !args.epsilon.is_finite() {
        return Err(CliError::parse(format!(
            "--epsilon must be positive, got {}",
            args.epsilon
        )));
    }
    let metric_of = metric_parser(&args.metric)?;
    let (name, f, points, metric) = match (&args.function, &args.samples) {
        (Some(name), None) => (
            name.clone(),
            builtin(name)?,
            grid(&args.interval, args.n)?,
            metric_of(1)?,
        ),
        (None, Some(path)) => {
            let samples: SampleSet = read_samples(path, &metric_of)?;
            let (c, p) = parse_omega(args.omega.as_deref().unwrap_or_default())?;
            let bound = args.bound.unwrap_or(f64::NAN);
            let table: Vec<(Vec<f64>, f64)> = samples.iter().map(|(x, v)| (x.coords().to_vec(), v)).collect();
            // only ever evaluated at the sample points themselves
            let f = UCFunction::new(
                move |x: &Point| {
                    table
                        .iter()
                        .find(|(c, _)| c.as_slice() == x.coords())
                        .map(|(_, v)| *v)
                        .unwrap_or(f64::NAN)
                },
                move |e| c * e.powf(p),
                bound,
            )?;
            (
                path.display().to_string(),
                f,
                samples.points().to_vec(),
                *samples.metric(),
            )
        }
        _ => return Err(CliError::parse("give exactly one of --function and --samples".into())),
    };
    let approx = lipschitz_approximate(&f, &points, metric, args.epsilon)?;
    let report = sandwich_at_samples(&approx, &f, args.tol)?;

    let mut header = coordinate_header(metric.dimension);
    if header.len() == 1 {
        header[0] = "x".into();
    }
    header.extend(["f", "minorant", "majorant"].map(String::from));
    let mut rows = Vec::with_capacity(points.len());
    for p in &points {
        let mut row = p.coords().to_vec();
        row.extend([f.eval(p), approx.minorant_at(p)?, approx.majorant_at(p)?]);
        rows.push(row);
    }
    write_csv(output(args.out.as_deref())?, &header, &rows)?;

    let summary = DensitySummary {
        function: name,
        epsilon: args.epsilon,
        sigma: approx.sigma,
        omega: f.omega(args.epsilon)?,
        bound: f.bound(),
        points: points.len(),
        max_below: report.max_below,
        max_above: report.max_above,
        max_violation: report.max_violation,
        tolerance: report.tolerance,
        sandwich_passed: report.passed,
    };
    match &args.summary {
        Some(path) => print_json(&mut output(Some(path))?, &summary)?,
        None => print_json(&mut std::io::stderr(), &summary)?,
    }
    if !report.passed {
        return Err(CliError::checks_failed(format!(
            "sandwich violated by {}",
            report.max_violation
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SuiteOutput<'a> {
    seed: u64,
    profile: Profile,
    passed: bool,
    checks: &'a [lipext_core::CheckReport],
}

pub fn check(args: &CheckArgs) -> Result<(), CliError> {
    let profile: Profile = args.profile.parse()?;
    let mut config = SuiteConfig::new(args.seed, profile);
    config.tolerance_override = args.tol;
    let reports = run_suite(&config);
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.check_name.as_str())
        .collect();
    let doc = SuiteOutput {
        seed: args.seed,
        profile,
        passed: failed.is_empty(),
        checks: &reports,
    };
    print_json(&mut output(args.out.as_deref())?, &doc)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::checks_failed(format!("failed checks: {}", failed.join(", "))))
    }
}
