//! Executable property checks over random instances.
//!
//! Every invariant of the library has exactly one entry in [`REGISTRY`]. A run
//! is fully determined by its seed: each check draws from its own generator
//! seeded from the run seed and the check's position in the registry, so
//! running a subset does not perturb the others.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::density::{builtin, extremality_check, lipschitz_approximate, sandwich_at_samples};
use crate::error::{Error, Result};
use crate::extension::{dist_to_set, extension_sum_bound_check, scale_extension, step_extend, ExtensionSpec, Side};
use crate::lipschitz::{is_lipschitz, lipschitz_constant};
use crate::metric::{Metric, MetricKind, Point, SampleSet};
use crate::modulus::{validate_modulus, Modulus, ModulusAxiom, NuExtension};
use crate::normed::{
    approx_extend, approx_mcshane, approx_whitney, concavity_check, convexity_check, hahn_banach_like_with,
    radius_cutoff_violation, GridOptions, Norm, NormedSpace, SubspaceFunction, SubspaceProblem, DEFAULT_RESOLUTION,
};
use crate::oracle::{brute_force_dist_to_set, brute_force_extension_oracle, brute_force_upper_oracle};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub instances_run: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Not run under the selected profile.
    pub skipped: bool,
    /// Description of the worst instance.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Default,
    Quick,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Profile::Default),
            "quick" => Ok(Profile::Quick),
            _ => Err(Error::InvalidParameter(format!("unknown profile '{s}'"))),
        }
    }
}

/// Instance sizes for the randomised checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeProfile {
    pub instances: usize,
    pub dims: Vec<usize>,
    pub set_sizes: Vec<usize>,
    pub queries: usize,
}

impl SizeProfile {
    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Default => Self {
                instances: 100,
                dims: vec![1, 2, 3, 5],
                set_sizes: vec![1, 2, 20, 200],
                queries: 50,
            },
            Profile::Quick => Self {
                instances: 16,
                dims: vec![1, 2, 3, 5],
                set_sizes: vec![1, 2, 20],
                queries: 16,
            },
        }
    }

    /// `(dimension, |A|)` for instance `k`, cycling through every combination.
    pub fn shape(&self, k: usize) -> (usize, usize) {
        let nd = self.dims.len().max(1);
        let dim = self.dims.get(k % nd).copied().unwrap_or(1);
        let n = self
            .set_sizes
            .get((k / nd) % self.set_sizes.len().max(1))
            .copied()
            .unwrap_or(2);
        (dim, n.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub profile: Profile,
    pub sizes: SizeProfile,
    /// Replaces every check's tolerance when set.
    pub tolerance_override: Option<f64>,
    /// Per-check tolerance replacements, applied after the global one.
    pub overrides: BTreeMap<String, f64>,
}

impl SuiteConfig {
    pub fn new(seed: u64, profile: Profile) -> Self {
        Self {
            seed,
            profile,
            sizes: SizeProfile::for_profile(profile),
            tolerance_override: None,
            overrides: BTreeMap::new(),
        }
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self::new(42, Profile::Default)
    }
}

type CheckFn = fn(&mut Ctx) -> Result<()>;

/// One registry entry.
pub struct CheckInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// Default tolerance; some checks derive theirs from the grid instead.
    pub tolerance: f64,
    pub quick: bool,
    run: CheckFn,
}

const EXACT: f64 = 1e-12;
const INEQ: f64 = 1e-9;
const DERIVED: f64 = f64::NAN;

macro_rules! check {
    ($name:literal, $desc:literal, $tol:expr, $quick:expr, $f:ident) => {
        CheckInfo {
            name: $name,
            description: $desc,
            tolerance: $tol,
            quick: $quick,
            run: $f,
        }
    };
}

/// Every check the suite knows about, in execution order.
pub const REGISTRY: &[CheckInfo] = &[
    check!(
        "metric_axioms",
        "non-negativity, symmetry and triangle inequality of every metric",
        EXACT,
        true,
        metric_axioms
    ),
    check!(
        "lipschitz_minimality",
        "the largest pairwise ratio is the least admissible constant",
        0.0,
        true,
        lipschitz_minimality
    ),
    check!(
        "lipschitz_scaling",
        "scaling values by l scales the constant by |l|",
        INEQ,
        false,
        lipschitz_scaling
    ),
    check!(
        "agreement_on_samples",
        "both extensions reproduce g on A",
        EXACT,
        true,
        agreement_on_samples
    ),
    check!(
        "lipschitz_bound",
        "both extensions are sigma-Lipschitz on queries and samples",
        INEQ,
        true,
        lipschitz_bound
    ),
    check!(
        "sandwich",
        "lower <= l lower + (1 - l) upper <= upper, agreeing with g on A",
        INEQ,
        true,
        sandwich
    ),
    check!(
        "step_invariance",
        "extending through an intermediate superset changes nothing",
        INEQ,
        false,
        step_invariance
    ),
    check!(
        "constant_preservation",
        "the extended graph keeps the Lipschitz constant of g",
        INEQ,
        false,
        constant_preservation
    ),
    check!(
        "sum_bound",
        "(g1 + g2) lower <= g1 lower + g2 lower and dually for upper",
        INEQ,
        false,
        sum_bound
    ),
    check!(
        "scaling_identity",
        "(l g) lower = l g lower for l > 0 and l g upper for l < 0",
        EXACT,
        false,
        scaling_identity
    ),
    check!(
        "extremum_preservation",
        "bounds on g transfer to the extensions and extrema are kept",
        0.0,
        false,
        extremum_preservation
    ),
    check!(
        "dist_to_set_identity",
        "upper extension of a constant r recovers r + sigma d(x, A)",
        EXACT,
        false,
        dist_to_set_identity
    ),
    check!(
        "differential_oracle",
        "kernels match the independent brute-force reference",
        EXACT,
        true,
        differential_oracle
    ),
    check!(
        "nu_reduction",
        "a linear modulus reproduces the Lipschitz kernels",
        EXACT,
        true,
        nu_reduction
    ),
    check!(
        "nu_extension",
        "Hoelder extensions agree on A, respect nu and are ordered",
        INEQ,
        false,
        nu_extension
    ),
    check!(
        "modulus_validation",
        "built-in moduli satisfy the axioms; a flat segment is reported",
        0.0,
        true,
        modulus_validation
    ),
    check!(
        "density_sandwich",
        "f - eps <= minorant <= f <= majorant <= f + eps for sqrt on [0, 1]",
        INEQ,
        false,
        density_sandwich
    ),
    check!(
        "density_extremality",
        "Lipschitz functions below f stay below the minorant, above f above the majorant",
        INEQ,
        false,
        density_extremality
    ),
    check!(
        "approx_oracle",
        "grid search matches a dense 1-D brute force at (0, 1), and within its certified bound elsewhere",
        1e-4,
        false,
        approx_oracle
    ),
    check!(
        "approx_lipschitz",
        "approximate extensions are (1 + eps) sigma-Lipschitz",
        1e-6,
        false,
        approx_lipschitz
    ),
    check!(
        "approx_agreement",
        "approximate extensions reproduce g on the subspace and are ordered",
        1e-6,
        false,
        approx_agreement
    ),
    check!(
        "approx_shift_covariance",
        "extending g + c shifts the result by c",
        EXACT,
        false,
        approx_shift_covariance
    ),
    check!(
        "radius_cutoff",
        "outside the radius the objective never beats the origin",
        EXACT,
        false,
        radius_cutoff
    ),
    check!(
        "grid_monotonicity",
        "refining a nested grid never lowers the lower extension",
        EXACT,
        false,
        grid_monotonicity
    ),
    check!(
        "convexity",
        "upper extension of convex data is convex up to 4h",
        DERIVED,
        false,
        convexity
    ),
    check!(
        "concavity",
        "lower extension of concave data is concave up to 4h",
        DERIVED,
        false,
        concavity
    ),
    check!(
        "hahn_banach_value",
        "both extensions of l x0 -> l ||x0|| hit ||x0|| at x0",
        EXACT,
        true,
        hahn_banach_value
    ),
    check!(
        "hahn_banach_constant",
        "the segment data has Lipschitz constant 1",
        INEQ,
        false,
        hahn_banach_constant
    ),
    check!(
        "hahn_banach_sublinearity",
        "upper is sublinear, lower superlinear, up to grid spacing",
        DERIVED,
        false,
        hahn_banach_sublinearity
    ),
    check!(
        "rejects_empty_samples",
        "empty sample sets are refused with a domain error",
        0.0,
        true,
        rejects_empty_samples
    ),
    check!(
        "rejects_small_sigma",
        "sigma below the empirical constant is refused at construction",
        0.0,
        true,
        rejects_small_sigma
    ),
];

/// Names of every registered check.
pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).collect()
}

struct Ctx<'a> {
    rng: ChaCha8Rng,
    sizes: &'a SizeProfile,
    instances: usize,
    worst: f64,
    witness: Option<String>,
    /// Set by checks whose tolerance depends on the instance.
    tolerance: Option<f64>,
}

impl Ctx<'_> {
    fn observe(&mut self, violation: f64, witness: impl FnOnce() -> String) {
        let v = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation.max(0.0)
        };
        if v > self.worst || self.witness.is_none() {
            self.worst = self.worst.max(v);
            self.witness = Some(witness());
        }
    }

    fn point(&mut self, dim: usize, half: f64) -> Point {
        let c = (0..dim).map(|_| self.rng.gen_range(-half..half)).collect();
        Point::new(c).expect("finite")
    }

    fn points(&mut self, dim: usize, n: usize, half: f64) -> Vec<Point> {
        (0..n).map(|_| self.point(dim, half)).collect()
    }

    fn instance(&mut self, k: usize) -> Result<Instance> {
        let (dim, n) = self.sizes.shape(k);
        let queries = self.sizes.queries;
        random_instance(&mut self.rng, dim, n, queries, metric_for(k))
    }
}

fn metric_for(k: usize) -> MetricKind {
    match (k / 7) % 4 {
        0 | 3 => MetricKind::Euclidean,
        1 => MetricKind::Manhattan,
        _ => MetricKind::Chebyshev,
    }
}

/// A random Lipschitz sample set with queries.
#[derive(Debug, Clone)]
pub struct Instance {
    pub samples: SampleSet,
    /// A constant the samples are guaranteed to satisfy.
    pub sigma: f64,
    pub queries: Vec<Point>,
}

impl Instance {
    pub fn spec(&self, side: Side) -> Result<ExtensionSpec> {
        ExtensionSpec::new(self.samples.clone(), self.sigma, side, INEQ)
    }

    pub fn describe(&self) -> String {
        format!(
            "dim={} |A|={} metric={} sigma={}",
            self.samples.dim(),
            self.samples.len(),
            self.samples.metric().kind,
            self.sigma
        )
    }
}

/// Points uniform in `[-5, 5]^dim` carrying values of a random Lipschitz
/// function: the upper extension of a few random anchors, evaluated with the
/// brute-force reference. Queries are uniform in `[-6, 6]^dim`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    dim: usize,
    n: usize,
    queries: usize,
    kind: MetricKind,
) -> Result<Instance> {
    let metric = Metric::new(kind, dim)?;
    let point = |rng: &mut ChaCha8Rng, half: f64| {
        Point::new((0..dim).map(|_| rng.gen_range(-half..half)).collect()).expect("finite")
    };
    let m = rng.gen_range(1..=6usize);
    let anchor_pts: Vec<Point> = (0..m).map(|_| point(rng, 5.0)).collect();
    let mut anchor_vals: Vec<f64> = (0..m).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let mut sigma = rng.gen_range(0.1..3.0);
    if m >= 2 {
        let anchors = SampleSet::new(metric, anchor_pts.clone(), anchor_vals.clone())?;
        let l = lipschitz_constant(&anchors)?.max_ratio;
        if l > 10.0 {
            for v in &mut anchor_vals {
                *v *= 10.0 / l;
            }
        }
        sigma = l.clamp(0.05, 10.0);
    }
    let anchors = SampleSet::new(metric, anchor_pts, anchor_vals)?;
    let pts: Vec<Point> = (0..n).map(|_| point(rng, 5.0)).collect();
    let vals = pts
        .iter()
        .map(|p| brute_force_upper_oracle(&anchors, sigma, p))
        .collect::<Result<Vec<_>>>()?;
    let samples = SampleSet::new(metric, pts, vals)?;
    let queries = (0..queries).map(|_| point(rng, 6.0)).collect();
    Ok(Instance {
        samples,
        sigma,
        queries,
    })
}

/// Runs every check enabled by the profile; the others are reported skipped.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckReport> {
    REGISTRY
        .iter()
        .enumerate()
        .map(|(index, info)| {
            if config.profile == Profile::Quick && !info.quick {
                return CheckReport {
                    check_name: info.name.to_string(),
                    instances_run: 0,
                    max_violation: 0.0,
                    tolerance: resolve_tolerance(config, info, None),
                    passed: true,
                    skipped: true,
                    witness: None,
                };
            }
            run_entry(config, index, info)
        })
        .collect()
}

/// Runs a single check by name regardless of the profile.
pub fn run_check(config: &SuiteConfig, name: &str) -> Option<CheckReport> {
    REGISTRY
        .iter()
        .enumerate()
        .find(|(_, c)| c.name == name)
        .map(|(index, info)| run_entry(config, index, info))
}

fn resolve_tolerance(config: &SuiteConfig, info: &CheckInfo, derived: Option<f64>) -> f64 {
    // derived tolerances are only known after a run
    let mut tol = derived.unwrap_or(if info.tolerance.is_nan() { 0.0 } else { info.tolerance });
    if let Some(t) = config.tolerance_override {
        tol = t;
    }
    if let Some(&t) = config.overrides.get(info.name) {
        tol = t;
    }
    tol
}

fn run_entry(config: &SuiteConfig, index: usize, info: &CheckInfo) -> CheckReport {
    let seed = config
        .seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64 + 1);
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        sizes: &config.sizes,
        instances: 0,
        worst: 0.0,
        witness: None,
        tolerance: None,
    };
    if let Err(e) = (info.run)(&mut ctx) {
        ctx.worst = f64::INFINITY;
        ctx.witness = Some(format!("unexpected error: {e}"));
    }
    let tolerance = resolve_tolerance(config, info, ctx.tolerance);
    CheckReport {
        check_name: info.name.to_string(),
        instances_run: ctx.instances,
        max_violation: ctx.worst,
        tolerance,
        passed: ctx.worst <= tolerance,
        skipped: false,
        witness: ctx.witness,
    }
}

// ---------------------------------------------------------------------------
// metric and Lipschitz constant
// ---------------------------------------------------------------------------

fn metric_axioms(ctx: &mut Ctx) -> Result<()> {
    let kinds = [
        MetricKind::Euclidean,
        MetricKind::Manhattan,
        MetricKind::Chebyshev,
        MetricKind::PNorm { p: 3.0 },
        MetricKind::Discrete,
    ];
    for k in 0..ctx.sizes.instances {
        let kind = kinds[k % kinds.len()];
        let dim = ctx.sizes.shape(k).0;
        for _ in 0..10 {
            let mut x = ctx.point(dim, 5.0);
            let y = ctx.point(dim, 5.0);
            let z = ctx.point(dim, 5.0);
            if kind == MetricKind::Discrete && ctx.rng.gen_bool(0.3) {
                x = y.clone();
            }
            let (dxy, dyx, dyz, dxz) = (
                kind.eval(x.coords(), y.coords()),
                kind.eval(y.coords(), x.coords()),
                kind.eval(y.coords(), z.coords()),
                kind.eval(x.coords(), z.coords()),
            );
            let scale = 1.0f64.max(dxz);
            let mut v = (-dxy).max(0.0);
            v = v.max((dxy - dyx).abs() / scale);
            v = v.max((dxz - dxy - dyz) / scale);
            v = v.max(kind.eval(x.coords(), x.coords()));
            if kind == MetricKind::Discrete && dxy != 0.0 && dxy != 1.0 {
                v = f64::INFINITY;
            }
            ctx.observe(v, || format!("metric={kind} dim={dim}"));
            ctx.instances += 1;
        }
    }
    Ok(())
}

fn lipschitz_minimality(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let Ok(r) = lipschitz_constant(&inst.samples) else {
            continue;
        };
        ctx.instances += 1;
        let mut v = 0.0;
        if !is_lipschitz(&inst.samples, r.max_ratio, EXACT) {
            v = 1.0;
        }
        if r.max_ratio > 0.0 && is_lipschitz(&inst.samples, r.max_ratio * (1.0 - 1e-9), 0.0) {
            v = 1.0;
        }
        if r.min_ratio > r.max_ratio {
            v = 1.0;
        }
        ctx.observe(v, || inst.describe());
    }
    Ok(())
}

fn lipschitz_scaling(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let Ok(r) = lipschitz_constant(&inst.samples) else {
            continue;
        };
        ctx.instances += 1;
        let lambda = ctx.rng.gen_range(-4.0..4.0);
        let scaled = inst
            .samples
            .with_values(inst.samples.values().iter().map(|v| lambda * v).collect())?;
        let s = lipschitz_constant(&scaled)?.max_ratio;
        let v = (s - lambda.abs() * r.max_ratio).abs() / 1.0f64.max(s);
        ctx.observe(v, || format!("{} lambda={lambda}", inst.describe()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// McShane-Whitney kernels
// ---------------------------------------------------------------------------

fn agreement_on_samples(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        ctx.instances += 1;
        for (i, (a, g)) in inst.samples.iter().enumerate() {
            let lo = spec.lower(a)?;
            let hi = spec.upper(a)?;
            let v = (lo - g).abs().max((hi - g).abs());
            ctx.observe(v, || format!("{} sample {i}", inst.describe()));
        }
    }
    Ok(())
}

fn lipschitz_bound(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        ctx.instances += 1;
        let metric = *inst.samples.metric();
        let mut pts: Vec<Point> = inst.queries.clone();
        pts.extend(inst.samples.points().iter().cloned());
        let lo: Vec<f64> = pts.iter().map(|p| spec.lower(p)).collect::<Result<_>>()?;
        let hi: Vec<f64> = pts.iter().map(|p| spec.upper(p)).collect::<Result<_>>()?;
        let nq = inst.queries.len();
        for i in 0..nq {
            for j in (i + 1)..pts.len() {
                let d = metric.distance(&pts[i], &pts[j])?;
                let bound = inst.sigma * d;
                let v = ((lo[i] - lo[j]).abs() - bound).max((hi[i] - hi[j]).abs() - bound);
                ctx.observe(v, || format!("{} pair ({i}, {j})", inst.describe()));
            }
        }
    }
    Ok(())
}

fn sandwich(ctx: &mut Ctx) -> Result<()> {
    const LAMBDAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        ctx.instances += 1;
        for q in &inst.queries {
            let (lo, hi) = (spec.lower(q)?, spec.upper(q)?);
            for l in LAMBDAS {
                let f = l * lo + (1.0 - l) * hi;
                let v = (lo - f).max(f - hi);
                ctx.observe(v, || format!("{} lambda={l}", inst.describe()));
            }
        }
        for (a, g) in inst.samples.iter() {
            let (lo, hi) = (spec.lower(a)?, spec.upper(a)?);
            for l in LAMBDAS {
                let f = l * lo + (1.0 - l) * hi;
                ctx.observe((f - g).abs(), || format!("{} on A lambda={l}", inst.describe()));
            }
        }
    }
    Ok(())
}

fn step_invariance(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let dim = inst.samples.dim();
        let extra = inst.samples.len() / 2 + 3;
        let mut b: Vec<Point> = inst.samples.points().to_vec();
        b.extend(ctx.points(dim, extra, 5.5));
        let r = step_extend(&inst.samples, &b, inst.sigma, &inst.queries)?;
        ctx.instances += 1;
        ctx.observe(r.max_gap(), || inst.describe());
    }
    Ok(())
}

fn constant_preservation(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let Ok(r) = lipschitz_constant(&inst.samples) else {
            continue;
        };
        ctx.instances += 1;
        let sigma = r.max_ratio;
        let spec = ExtensionSpec::new(inst.samples.clone(), sigma, Side::Lower, INEQ)?;
        let mut pts = inst.samples.points().to_vec();
        pts.extend(inst.queries.iter().cloned());
        for side in [Side::Lower, Side::Upper] {
            let vals: Vec<f64> = pts
                .iter()
                .map(|p| spec.with_side(side).eval(p))
                .collect::<Result<_>>()?;
            let graph = SampleSet::new(*inst.samples.metric(), pts.clone(), vals)?;
            let l = lipschitz_constant(&graph)?.max_ratio;
            ctx.observe((l - sigma).abs(), || format!("{} side={side}", inst.describe()));
        }
    }
    Ok(())
}

fn sum_bound(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let (dim, n) = (inst.samples.dim(), inst.samples.len());
        let other = random_instance(&mut ctx.rng, dim, 1, 0, inst.samples.metric().kind)?;
        // second function on the same points: a cone around a random anchor
        let anchor = other.samples.points()[0].clone();
        let slope = ctx.rng.gen_range(0.1..2.0);
        let vals: Vec<f64> = inst
            .samples
            .points()
            .iter()
            .map(|p| inst.samples.metric().distance(p, &anchor).map(|d| slope * d))
            .collect::<Result<_>>()?;
        let g1 = inst.spec(Side::Lower)?;
        let g2 = ExtensionSpec::new(inst.samples.with_values(vals)?, slope, Side::Lower, INEQ)?;
        let r = extension_sum_bound_check(&g1, &g2, &inst.queries)?;
        ctx.instances += 1;
        ctx.observe(r.max_violation(), || format!("{} n={n}", inst.describe()));
    }
    Ok(())
}

fn scaling_identity(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        let lambda: f64 = ctx.rng.gen_range(-3.0..3.0);
        let scaled = scale_extension(&spec, lambda)?;
        ctx.instances += 1;
        for q in &inst.queries {
            let (lo, hi) = (spec.lower(q)?, spec.upper(q)?);
            // the lower extension of l g is l times the lower (l > 0) or upper (l < 0) one of g
            let expected = if lambda >= 0.0 { lambda * lo } else { lambda * hi };
            let direct = (scaled.with_side(Side::Lower).eval(q)? - expected).abs();
            let tracked = (scaled.eval(q)? - lambda * lo).abs();
            let v = direct.max(tracked);
            ctx.observe(v, || format!("{} lambda={lambda}", inst.describe()));
        }
    }
    Ok(())
}

fn extremum_preservation(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        ctx.instances += 1;
        let vals = inst.samples.values();
        let hi_bound = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo_bound = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let mut max_lower = f64::NEG_INFINITY;
        let mut min_upper = f64::INFINITY;
        for p in inst.queries.iter().chain(inst.samples.points()) {
            let (lo, hi) = (spec.lower(p)?, spec.upper(p)?);
            ctx.observe((lo - hi_bound).max(lo_bound - hi), || inst.describe());
            max_lower = max_lower.max(lo);
            min_upper = min_upper.min(hi);
        }
        let v = (max_lower - hi_bound).abs().max((min_upper - lo_bound).abs());
        ctx.observe(v, || format!("{} extrema", inst.describe()));
    }
    Ok(())
}

fn dist_to_set_identity(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let r: f64 = ctx.rng.gen_range(-10.0..10.0);
        // sigma in (0, 10]
        let sigma = 10.0 * (1.0 - ctx.rng.gen::<f64>());
        let constant = inst.samples.with_values(vec![r; inst.samples.len()])?;
        let spec = ExtensionSpec::new(constant, sigma, Side::Upper, 0.0)?;
        let x = &inst.queries[k % inst.queries.len().max(1)];
        let d = dist_to_set(&inst.samples, x)?;
        let identity = ((spec.upper(x)? - r) - sigma * d).abs();
        let reference = (d - brute_force_dist_to_set(&inst.samples, x)?).abs();
        ctx.instances += 1;
        ctx.observe(identity.max(reference), || {
            format!("{} r={r} sigma={sigma}", inst.describe())
        });
    }
    Ok(())
}

fn differential_oracle(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        for q in &inst.queries {
            let lo = (spec.lower(q)? - brute_force_extension_oracle(&inst.samples, inst.sigma, q)?).abs();
            let hi = (spec.upper(q)? - brute_force_upper_oracle(&inst.samples, inst.sigma, q)?).abs();
            ctx.instances += 1;
            ctx.observe(lo.max(hi), || inst.describe());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// moduli
// ---------------------------------------------------------------------------

fn nu_reduction(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let spec = inst.spec(Side::Lower)?;
        let nu = NuExtension::new(inst.samples.clone(), Modulus::linear(inst.sigma)?, INEQ)?;
        ctx.instances += 1;
        for q in &inst.queries {
            let v = (nu.lower(q)? - spec.lower(q)?)
                .abs()
                .max((nu.upper(q)? - spec.upper(q)?).abs());
            ctx.observe(v, || inst.describe());
        }
    }
    Ok(())
}

fn nu_extension(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let (dim, n) = ctx.sizes.shape(k);
        let metric = Metric::new(metric_for(k), dim)?;
        let alpha = ctx.rng.gen_range(0.3..1.0);
        let anchors_n = ctx.rng.gen_range(2..=5usize);
        let anchor_pts = ctx.points(dim, anchors_n, 5.0);
        let anchor_vals: Vec<f64> = (0..anchors_n).map(|_| ctx.rng.gen_range(-3.0..3.0)).collect();
        let mut sigma: f64 = 0.05;
        for i in 0..anchors_n {
            for j in (i + 1)..anchors_n {
                let d = metric.distance(&anchor_pts[i], &anchor_pts[j])?;
                sigma = sigma.max((anchor_vals[i] - anchor_vals[j]).abs() / d.powf(alpha));
            }
        }
        let nu = Modulus::hoelder(sigma, alpha)?;
        let anchors = NuExtension::new(SampleSet::new(metric, anchor_pts, anchor_vals)?, nu.clone(), INEQ)?;
        let pts = ctx.points(dim, n, 5.0);
        let vals: Vec<f64> = pts.iter().map(|p| anchors.upper(p)).collect::<Result<_>>()?;
        let ext = NuExtension::new(SampleSet::new(metric, pts, vals)?, nu.clone(), INEQ)?;
        ctx.instances += 1;
        let describe = || format!("dim={dim} |A|={n} nu={nu}");
        for (a, g) in ext.samples().iter() {
            ctx.observe((ext.lower(a)? - g).abs().max((ext.upper(a)? - g).abs()), describe);
        }
        let queries = ctx.points(dim, ctx.sizes.queries.min(25), 6.0);
        let lo: Vec<f64> = queries.iter().map(|q| ext.lower(q)).collect::<Result<_>>()?;
        let hi: Vec<f64> = queries.iter().map(|q| ext.upper(q)).collect::<Result<_>>()?;
        for i in 0..queries.len() {
            ctx.observe(lo[i] - hi[i], describe);
            let mid = 0.5 * (lo[i] + hi[i]);
            ctx.observe((lo[i] - mid).max(mid - hi[i]), describe);
            for j in (i + 1)..queries.len() {
                let bound = nu.eval(metric.distance(&queries[i], &queries[j])?);
                let v = ((lo[i] - lo[j]).abs() - bound).max((hi[i] - hi[j]).abs() - bound);
                ctx.observe(v, describe);
            }
        }
    }
    Ok(())
}

fn modulus_validation(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.sizes.instances.min(20) {
        let sigma = ctx.rng.gen_range(0.1..5.0);
        let alpha = ctx.rng.gen_range(0.1..=1.0);
        let grid_max = ctx.rng.gen_range(0.5..20.0);
        for nu in [Modulus::linear(sigma)?, Modulus::hoelder(sigma, alpha)?] {
            let r = validate_modulus(&nu, grid_max, 1024)?;
            ctx.instances += 1;
            ctx.observe(r.violations.len() as f64, || format!("{nu} on [0, {grid_max}]"));
        }
    }
    let flat = Modulus::piecewise(vec![(1.0, 1.0), (2.0, 1.0)])?;
    let r = validate_modulus(&flat, 4.0, 64)?;
    ctx.instances += 1;
    let missed = if r.violates(ModulusAxiom::StrictlyIncreasing) {
        0.0
    } else {
        1.0
    };
    ctx.observe(missed, || "flat segment not reported".into());
    Ok(())
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

fn unit_grid(n: usize) -> Vec<Point> {
    (0..n)
        .map(|k| Point::scalar(k as f64 / (n - 1) as f64).expect("finite"))
        .collect()
}

fn density_sandwich(ctx: &mut Ctx) -> Result<()> {
    let f = builtin("sqrt")?;
    let pts = unit_grid(201);
    for eps in [0.3, 0.1, 0.05] {
        let approx = lipschitz_approximate(&f, &pts, Metric::euclidean(1), eps)?;
        let again = lipschitz_approximate(&f, &pts, Metric::euclidean(1), eps)?;
        ctx.instances += 1;
        let r = sandwich_at_samples(&approx, &f, INEQ)?;
        ctx.observe(r.max_violation, || format!("eps={eps} sandwich"));
        ctx.observe((approx.sigma - 2.0 / (eps * eps)).abs(), || format!("eps={eps} sigma"));
        let mut mino = Vec::new();
        let mut majo = Vec::new();
        for p in &pts {
            let (lo, hi) = (approx.minorant_at(p)?, approx.majorant_at(p)?);
            let uniq = (lo - again.minorant_at(p)?)
                .abs()
                .max((hi - again.majorant_at(p)?).abs());
            ctx.observe(uniq, || format!("eps={eps} rebuild"));
            let mid = 0.5 * (lo + hi);
            ctx.observe((f.eval(p) - mid).abs() - eps, || format!("eps={eps} midpoint"));
            mino.push(lo);
            majo.push(hi);
        }
        for vals in [mino, majo] {
            let graph = approx.samples().with_values(vals)?;
            let l = lipschitz_constant(&graph)?.max_ratio;
            ctx.observe(l - approx.sigma, || format!("eps={eps} constant {l}"));
        }
    }
    Ok(())
}

fn density_extremality(ctx: &mut Ctx) -> Result<()> {
    let f = builtin("sqrt")?;
    let pts = unit_grid(101);
    for eps in [0.3, 0.1] {
        let approx = lipschitz_approximate(&f, &pts, Metric::euclidean(1), eps)?;
        let mut candidates = vec![approx.minorant.clone(), approx.majorant.clone()];
        for _ in 0..5 {
            let shift = ctx.rng.gen_range(0.0..1.0);
            for (base, sign) in [(&approx.minorant, -1.0), (&approx.majorant, 1.0)] {
                let vals: Vec<f64> = pts
                    .iter()
                    .map(|p| base.eval(p).map(|v| v + sign * shift))
                    .collect::<Result<_>>()?;
                let set = approx.samples().with_values(vals)?;
                candidates.push(ExtensionSpec::new(set, approx.sigma, Side::Lower, INEQ)?);
            }
        }
        let r = extremality_check(&approx, &candidates, INEQ)?;
        ctx.instances += candidates.len();
        let missing = if r.lower_candidates >= 6 && r.upper_candidates >= 6 {
            0.0
        } else {
            1.0
        };
        ctx.observe(r.max_violation.max(missing), || format!("eps={eps}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// normed spaces
// ---------------------------------------------------------------------------

/// `span{e1}` in the Euclidean plane with `g(t e1) = t` and `sigma = 1`.
pub fn line_in_plane_problem() -> Result<SubspaceProblem> {
    SubspaceProblem::new(
        NormedSpace::new(2, Norm::L2)?,
        vec![vec![1.0, 0.0]],
        SubspaceFunction::Linear(vec![1.0]),
        1.0,
        INEQ,
    )
}

/// Dense 1-D brute force of `sup_t t - (1 + eps) sqrt(t^2 + y^2)` and
/// `inf_t t + (1 + eps) sqrt(t^2 + y^2)` for the query `(x1, y)`, over
/// `t in [-r, r]` at `samples` points.
pub fn line_oracle(x1: f64, y: f64, eps: f64, samples: usize) -> (f64, f64) {
    let r = 2.0 * (1.0 + eps) / eps * (x1 * x1 + y * y).sqrt();
    let slope = 1.0 + eps;
    let mut best_lo = f64::NEG_INFINITY;
    let mut best_hi = f64::INFINITY;
    for i in 0..samples {
        let t = -r + 2.0 * r * i as f64 / (samples - 1) as f64;
        let d = ((t - x1) * (t - x1) + y * y).sqrt();
        best_lo = best_lo.max(t - slope * d);
        best_hi = best_hi.min(t + slope * d);
    }
    (best_lo, best_hi)
}

fn approx_oracle(ctx: &mut Ctx) -> Result<()> {
    let prob = line_in_plane_problem()?;
    let mut queries = vec![(0.0, 1.0)];
    for _ in 0..3 {
        queries.push((ctx.rng.gen_range(-2.0..2.0), ctx.rng.gen_range(-2.0..2.0)));
    }
    for (i, (x1, y)) in queries.into_iter().enumerate() {
        let x = Point::new(vec![x1, y])?;
        let (lo, hi) = line_oracle(x1, y, 1.0, 1_000_000);
        let a = approx_mcshane(&prob, 1.0, &x, DEFAULT_RESOLUTION)?;
        let b = approx_whitney(&prob, 1.0, &x, DEFAULT_RESOLUTION)?;
        let gap = (a.value - lo).abs().max((b.value - hi).abs());
        // the worked query is held to the absolute tolerance, the random ones
        // to the certified grid bound
        let v = if i == 0 {
            gap
        } else {
            gap - a.error_bound.max(b.error_bound)
        };
        ctx.instances += 1;
        ctx.observe(v, || format!("x=({x1}, {y}) gap={gap:e}"));
    }
    Ok(())
}

fn approx_lipschitz(ctx: &mut Ctx) -> Result<()> {
    let prob = line_in_plane_problem()?;
    for eps in [0.25, 1.0] {
        let bound = (1.0 + eps) * prob.sigma();
        for _ in 0..ctx.sizes.instances.min(100) {
            let x = ctx.point(2, 5.0);
            let y = ctx.point(2, 5.0);
            let d = prob
                .space()
                .norm_of(&[x.coords()[0] - y.coords()[0], x.coords()[1] - y.coords()[1]]);
            for side in [Side::Lower, Side::Upper] {
                let fx = approx_extend(&prob, eps, &x, side, GridOptions::default())?.value;
                let fy = approx_extend(&prob, eps, &y, side, GridOptions::default())?.value;
                ctx.observe((fx - fy).abs() / d - bound, || format!("eps={eps} side={side}"));
            }
            ctx.instances += 1;
        }
    }
    Ok(())
}

fn approx_agreement(ctx: &mut Ctx) -> Result<()> {
    let problems = [
        line_in_plane_problem()?,
        SubspaceProblem::new(
            NormedSpace::new(3, Norm::L1)?,
            vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, -1.0]],
            SubspaceFunction::Linear(vec![0.5, -0.25]),
            1.0,
            INEQ,
        )?,
    ];
    for prob in &problems {
        let k = prob.subspace_dim();
        for _ in 0..10 {
            let c: Vec<f64> = (0..k).map(|_| ctx.rng.gen_range(-3.0..3.0)).collect();
            let a = prob.point_at(&c)?;
            let g = prob.g_at_basis_coords(&c)?;
            let eps = ctx.rng.gen_range(0.2..2.0);
            let res = if k == 1 { DEFAULT_RESOLUTION } else { 33 };
            let lo = approx_mcshane(prob, eps, &a, res)?;
            let hi = approx_whitney(prob, eps, &a, res)?;
            ctx.instances += 1;
            ctx.observe((lo.value - g).abs().max((hi.value - g).abs()), || {
                format!("k={k} c={c:?}")
            });
            let off = ctx.point(prob.space().dimension, 4.0);
            let lo = approx_mcshane(prob, eps, &off, res)?;
            let hi = approx_whitney(prob, eps, &off, res)?;
            ctx.observe(lo.value - hi.value, || format!("k={k} order at {off:?}"));
        }
    }
    Ok(())
}

fn approx_shift_covariance(ctx: &mut Ctx) -> Result<()> {
    let prob = line_in_plane_problem()?;
    for _ in 0..ctx.sizes.instances.min(20) {
        let c = ctx.rng.gen_range(-10.0..10.0);
        let shifted = prob.shifted(c);
        let x = ctx.point(2, 5.0);
        let eps = ctx.rng.gen_range(0.2..2.0);
        for side in [Side::Lower, Side::Upper] {
            let base = approx_extend(&prob, eps, &x, side, GridOptions::default())?.value;
            let moved = approx_extend(&shifted, eps, &x, side, GridOptions::default())?.value;
            ctx.observe((moved - base - c).abs(), || format!("c={c} side={side}"));
        }
        ctx.instances += 1;
    }
    Ok(())
}

fn radius_cutoff(ctx: &mut Ctx) -> Result<()> {
    let prob = line_in_plane_problem()?;
    for _ in 0..ctx.sizes.instances.min(50) {
        let x = ctx.point(2, 5.0);
        let eps = ctx.rng.gen_range(0.05..3.0);
        let seed = ctx.rng.gen();
        let v = radius_cutoff_violation(&prob, eps, &x, 200, seed)?;
        ctx.instances += 1;
        ctx.observe(v, || format!("x={x:?} eps={eps}"));
    }
    Ok(())
}

fn grid_monotonicity(ctx: &mut Ctx) -> Result<()> {
    let prob = line_in_plane_problem()?;
    for _ in 0..ctx.sizes.instances.min(20) {
        let x = ctx.point(2, 5.0);
        let mut prev = f64::NEG_INFINITY;
        for res in [3, 5, 9, 17, 33, 65, 129] {
            let opts = GridOptions {
                resolution: res,
                refinement_rounds: 0,
            };
            let v = approx_extend(&prob, 1.0, &x, Side::Lower, opts)?.value;
            ctx.observe(prev - v, || format!("x={x:?} res={res}"));
            prev = v;
        }
        ctx.instances += 1;
    }
    Ok(())
}

fn convex_grid(values: impl Fn(f64) -> f64) -> Result<(SampleSet, f64)> {
    let n = 401;
    let h = 2.0 / (n - 1) as f64;
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = -1.0 + h * i as f64;
            (t, values(t))
        })
        .collect();
    Ok((SampleSet::from_scalars(&pairs)?, h))
}

fn convexity(ctx: &mut Ctx) -> Result<()> {
    let (samples, h) = convex_grid(|t| t * t)?;
    let spec = ExtensionSpec::tight(samples, Side::Upper)?;
    ctx.tolerance = Some(4.0 * h);
    let seed = ctx.rng.gen();
    let trials = 100;
    let v = convexity_check(
        |p| spec.upper(p).expect("1-D"),
        |rng| Point::scalar(rng.gen_range(-1.5..1.5)).expect("finite"),
        trials,
        seed,
    );
    ctx.instances += trials;
    ctx.observe(v, || "g = t^2 on 401 points".into());
    let (affine, _) = convex_grid(|t| 2.0 * t - 0.5)?;
    let spec = ExtensionSpec::tight(affine, Side::Upper)?;
    let sampler = |rng: &mut ChaCha8Rng| Point::scalar(rng.gen_range(-1.0..1.0)).expect("finite");
    let v = convexity_check(|p| spec.upper(p).expect("1-D"), sampler, trials, seed).max(concavity_check(
        |p| spec.upper(p).expect("1-D"),
        sampler,
        trials,
        seed,
    ));
    ctx.instances += trials;
    ctx.observe(v, || "affine g".into());
    Ok(())
}

fn concavity(ctx: &mut Ctx) -> Result<()> {
    let (samples, h) = convex_grid(|t| 1.0 - t * t)?;
    let spec = ExtensionSpec::tight(samples, Side::Lower)?;
    ctx.tolerance = Some(4.0 * h);
    let seed = ctx.rng.gen();
    let trials = 100;
    let v = concavity_check(
        |p| spec.lower(p).expect("1-D"),
        |rng| Point::scalar(rng.gen_range(-1.5..1.5)).expect("finite"),
        trials,
        seed,
    );
    ctx.instances += trials;
    ctx.observe(v, || "g = 1 - t^2 on 401 points".into());
    Ok(())
}

fn hahn_banach_cases(ctx: &mut Ctx) -> Result<Vec<(NormedSpace, Point)>> {
    let mut cases = vec![(NormedSpace::new(2, Norm::L2)?, Point::new(vec![3.0, 4.0])?)];
    for norm in [Norm::L1, Norm::LInf, Norm::P { p: 3.0 }, Norm::L2] {
        let dim = ctx.rng.gen_range(1..=4usize);
        let mut x0 = ctx.point(dim, 5.0);
        while NormedSpace::new(dim, norm)?.norm_of(x0.coords()) < 0.1 {
            x0 = ctx.point(dim, 5.0);
        }
        cases.push((NormedSpace::new(dim, norm)?, x0));
    }
    Ok(cases)
}

fn hahn_banach_value(ctx: &mut Ctx) -> Result<()> {
    for (space, x0) in hahn_banach_cases(ctx)? {
        let r = hahn_banach_like_with(&space, &x0, 401, 0, 0)?;
        let v = (r.upper_at_x0 - r.norm_x0)
            .abs()
            .max((r.lower_at_x0 - r.norm_x0).abs())
            .max((r.lower_at_minus_x0 + r.norm_x0).abs())
            .max((r.upper_at_minus_x0 + r.norm_x0).abs());
        ctx.instances += 1;
        ctx.observe(v, || format!("x0={:?} norm={:?}", x0.coords(), space.norm));
    }
    Ok(())
}

fn hahn_banach_constant(ctx: &mut Ctx) -> Result<()> {
    for (space, x0) in hahn_banach_cases(ctx)? {
        let r = hahn_banach_like_with(&space, &x0, 401, 0, 0)?;
        ctx.instances += 1;
        ctx.observe((r.empirical_constant - 1.0).abs(), || format!("x0={:?}", x0.coords()));
    }
    Ok(())
}

fn hahn_banach_sublinearity(ctx: &mut Ctx) -> Result<()> {
    let mut tol = f64::INFINITY;
    for (space, x0) in hahn_banach_cases(ctx)? {
        let seed = ctx.rng.gen();
        let r = hahn_banach_like_with(&space, &x0, 401, 100, seed)?;
        tol = tol.min(r.grid_tolerance);
        let v = r
            .sublinearity_violation
            .max(r.superlinearity_violation)
            .max(r.homogeneity_violation)
            .max(r.reflection_violation);
        ctx.instances += r.trials;
        ctx.observe(v, || format!("x0={:?} norm={:?}", x0.coords(), space.norm));
    }
    ctx.tolerance = Some(tol);
    Ok(())
}

// ---------------------------------------------------------------------------
// expected errors
// ---------------------------------------------------------------------------

fn rejects_empty_samples(ctx: &mut Ctx) -> Result<()> {
    let metric = Metric::euclidean(2);
    let empty = SampleSet::new(metric, vec![], vec![]);
    ctx.instances += 1;
    let ok = matches!(empty, Err(Error::EmptySamples));
    ctx.observe(if ok { 0.0 } else { 1.0 }, || format!("empty set gave {empty:?}"));
    let fine = SampleSet::from_scalars(&[(0.0, 1.0)])?;
    let wrong_dim = Point::new(vec![1.0, 2.0])?;
    let spec = ExtensionSpec::new(fine, 1.0, Side::Lower, INEQ)?;
    ctx.instances += 1;
    let ok = matches!(spec.lower(&wrong_dim), Err(Error::DimensionMismatch { .. }));
    ctx.observe(if ok { 0.0 } else { 1.0 }, || "dimension mismatch not reported".into());
    Ok(())
}

fn rejects_small_sigma(ctx: &mut Ctx) -> Result<()> {
    for k in 0..ctx.sizes.instances {
        let inst = ctx.instance(k)?;
        let Ok(r) = lipschitz_constant(&inst.samples) else {
            continue;
        };
        if r.max_ratio <= 1e-6 {
            continue;
        }
        ctx.instances += 1;
        let corrupted = ExtensionSpec::new(inst.samples.clone(), 0.5 * r.max_ratio, Side::Lower, INEQ);
        let ok = matches!(corrupted, Err(Error::SigmaTooSmall { .. }));
        ctx.observe(if ok { 0.0 } else { 1.0 }, || inst.describe());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn registry_names_are_unique() {
        let names: BTreeSet<_> = check_names().into_iter().collect();
        assert_eq!(names.len(), REGISTRY.len());
    }

    #[test]
    fn quick_profile_runs_and_skips() {
        let reports = run_suite(&SuiteConfig::new(7, Profile::Quick));
        assert_eq!(reports.len(), REGISTRY.len());
        for (r, info) in reports.iter().zip(REGISTRY) {
            assert_eq!(r.check_name, info.name);
            assert_eq!(r.skipped, !info.quick);
            assert!(r.passed, "{r:?}");
            assert_eq!(r.passed, r.max_violation <= r.tolerance);
        }
    }

    #[test]
    fn zero_tolerance_override_fails_something() {
        let mut cfg = SuiteConfig::new(7, Profile::Quick);
        cfg.tolerance_override = Some(0.0);
        let reports = run_suite(&cfg);
        assert!(reports.iter().any(|r| !r.passed));
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = SuiteConfig::new(11, Profile::Quick);
        assert_eq!(run_suite(&cfg), run_suite(&cfg));
    }

    #[test]
    fn instance_values_are_lipschitz() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (dim, n) in [(1, 2), (2, 20), (5, 200)] {
            let inst = random_instance(&mut rng, dim, n, 5, MetricKind::Euclidean).unwrap();
            assert!(is_lipschitz(&inst.samples, inst.sigma, 1e-9));
            assert_eq!(inst.queries.len(), 5);
        }
    }

    #[test]
    fn line_oracle_closed_form() {
        let (lo, hi) = line_oracle(0.0, 1.0, 1.0, 1_000_001);
        assert!((lo + 3f64.sqrt()).abs() < 1e-9);
        assert!((hi - 3f64.sqrt()).abs() < 1e-9);
    }
}
