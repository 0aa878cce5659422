//! Extensions from finite-dimensional linear subspaces of a normed space.
//!
//! For `g` that is `sigma`-Lipschitz on a subspace `A` of `R^n` and `eps > 0`,
//!
//! ```text
//! lower_eps(x) = sup_{a in A} g(a) - (1 + eps) sigma ||a - x||
//! upper_eps(x) = inf_{a in A} g(a) + (1 + eps) sigma ||x - a||
//! ```
//!
//! are `(1 + eps) sigma`-Lipschitz extensions of `g`. When `g(0) = 0` the
//! optimum over `A` is attained in the ball `||a|| <= r` with
//! `r = 2 (1 + eps) / eps * ||x||`; the general case is reduced to that one
//! by extending `g - g(0)` and adding `g(0)` back.
//!
//! The optimisation over the ball is a uniform grid in orthonormal subspace
//! coordinates followed by a few rounds of local refinement around the
//! incumbent. The objective is `(2 + eps) sigma`-Lipschitz, so a grid of
//! spacing `h` in `k` dimensions misses the optimum by at most
//! `(2 + eps) sigma h sqrt(k)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{ExtensionSpec, Side};
use crate::lipschitz::lipschitz_constant;
use crate::metric::{Metric, MetricKind, Point, SampleSet};

/// Largest subspace dimension accepted unless overridden.
pub const DEFAULT_MAX_SUBSPACE_DIM: usize = 4;
pub const DEFAULT_RESOLUTION: usize = 129;
pub const DEFAULT_REFINEMENT_ROUNDS: usize = 3;

/// Relative threshold below which a Gram-Schmidt residual counts as zero.
const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Norm {
    L2,
    L1,
    LInf,
    P { p: f64 },
}

impl Norm {
    pub fn eval(&self, v: &[f64]) -> f64 {
        match *self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::LInf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            Norm::L2 => scaled_power_sum(v, 2.0),
            Norm::P { p } => scaled_power_sum(v, p),
        }
    }

    /// `||a - b||`.
    pub fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        self.metric_kind().eval(a, b)
    }

    pub fn metric_kind(&self) -> MetricKind {
        match *self {
            Norm::L2 => MetricKind::Euclidean,
            Norm::L1 => MetricKind::Manhattan,
            Norm::LInf => MetricKind::Chebyshev,
            Norm::P { p } => MetricKind::PNorm { p },
        }
    }

    /// `sup ||v||_2 / ||v||` over nonzero `v` in `R^n`.
    pub fn l2_inflation(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            Norm::L1 | Norm::L2 => 1.0,
            Norm::LInf => n.sqrt(),
            Norm::P { p } => {
                if p <= 2.0 {
                    1.0
                } else {
                    n.powf(0.5 - 1.0 / p)
                }
            }
        }
    }
}

fn scaled_power_sum(v: &[f64], p: f64) -> f64 {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        let sum: f64 = v.iter().map(|x| (x.abs() / scale) * (x.abs() / scale)).sum();
        return scale * sum.sqrt();
    }
    let sum: f64 = v.iter().map(|x| (x.abs() / scale).powf(p)).sum();
    scale * sum.powf(1.0 / p)
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().parse::<MetricKind>()? {
            MetricKind::Euclidean => Ok(Norm::L2),
            MetricKind::Manhattan => Ok(Norm::L1),
            MetricKind::Chebyshev => Ok(Norm::LInf),
            MetricKind::PNorm { p } => Ok(Norm::P { p }),
            MetricKind::Discrete => Err(Error::InvalidParameter("the discrete metric is not a norm".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormedSpace {
    pub dimension: usize,
    pub norm: Norm,
}

impl NormedSpace {
    pub fn new(dimension: usize, norm: Norm) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if let Norm::P { p } = norm {
            MetricKind::p_norm(p)?;
        }
        Ok(Self { dimension, norm })
    }

    pub fn metric(&self) -> Metric {
        Metric {
            kind: self.norm.metric_kind(),
            dimension: self.dimension,
        }
    }

    pub fn norm_of(&self, v: &[f64]) -> f64 {
        self.norm.eval(v)
    }

    fn check(&self, x: &Point) -> Result<()> {
        self.metric().check_dim(x)
    }
}

type CoordFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A function on the subspace, given in the coordinates of the user basis.
#[derive(Clone)]
pub enum SubspaceFunction {
    /// `g(sum c_j b_j) = sum w_j c_j`.
    Linear(Vec<f64>),
    /// Samples in basis coordinates, extended over the subspace by the
    /// midpoint extension with the problem's `sigma` and the ambient norm.
    Samples(SampleSet),
    /// Arbitrary function of the basis coordinates.
    Custom(CoordFn),
}

impl fmt::Debug for SubspaceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceFunction::Linear(w) => f.debug_tuple("Linear").field(w).finish(),
            SubspaceFunction::Samples(s) => f.debug_tuple("Samples").field(&s.len()).finish(),
            SubspaceFunction::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
enum Evaluator {
    Linear(Vec<f64>),
    Samples(ExtensionSpec),
    Custom,
}

/// A `sigma`-Lipschitz function on a finite-dimensional subspace of `R^n`.
#[derive(Debug, Clone)]
pub struct SubspaceProblem {
    space: NormedSpace,
    basis: Vec<Vec<f64>>,
    /// Orthonormal (l2) rows spanning the subspace.
    frame: Vec<Vec<f64>>,
    /// `basis_j = sum_i r[i][j] frame_i`, upper triangular.
    r: Vec<Vec<f64>>,
    g: SubspaceFunction,
    eval: Evaluator,
    sigma: f64,
}

impl SubspaceProblem {
    pub fn new(space: NormedSpace, basis: Vec<Vec<f64>>, g: SubspaceFunction, sigma: f64, tol: f64) -> Result<Self> {
        Self::with_max_dim(space, basis, g, sigma, tol, DEFAULT_MAX_SUBSPACE_DIM)
    }

    pub fn with_max_dim(
        space: NormedSpace,
        basis: Vec<Vec<f64>>,
        g: SubspaceFunction,
        sigma: f64,
        tol: f64,
        max_dim: usize,
    ) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::DegenerateBasis("the subspace must be non-trivial".into()));
        }
        if basis.len() > max_dim {
            return Err(Error::InvalidParameter(format!(
                "subspace dimension {} exceeds the cap {max_dim}",
                basis.len()
            )));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        for b in &basis {
            if b.len() != space.dimension {
                return Err(Error::DimensionMismatch {
                    expected: space.dimension,
                    found: b.len(),
                });
            }
            if b.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite("basis vector".into()));
            }
        }
        let (frame, r) = gram_schmidt(&basis)?;
        let k = basis.len();
        let eval = match &g {
            SubspaceFunction::Linear(w) => {
                if w.len() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        found: w.len(),
                    });
                }
                Evaluator::Linear(w.clone())
            }
            SubspaceFunction::Samples(s) => {
                if s.dim() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        found: s.dim(),
                    });
                }
                let embedded = s
                    .points()
                    .iter()
                    .map(|c| Point::new(combine(&basis, c.coords())))
                    .collect::<Result<Vec<_>>>()?;
                let ambient = SampleSet::new(space.metric(), embedded, s.values().to_vec())?;
                Evaluator::Samples(ExtensionSpec::new(ambient, sigma, Side::Midpoint, tol)?)
            }
            SubspaceFunction::Custom(_) => Evaluator::Custom,
        };
        let problem = Self {
            space,
            basis,
            frame,
            r,
            g,
            eval,
            sigma,
        };
        problem.validate_sigma(tol)?;
        Ok(problem)
    }

    /// Checks the constant on a 5-per-axis grid of basis coordinates in `[-1, 1]^k`.
    fn validate_sigma(&self, tol: f64) -> Result<()> {
        let k = self.subspace_dim();
        let mut coords = Vec::new();
        let mut values = Vec::new();
        for_each_grid_point(k, 5, |idx| {
            let c: Vec<f64> = idx.iter().map(|&j| -1.0 + 0.5 * j as f64).collect();
            let a = combine(&self.basis, &c);
            values.push(self.g_at_ambient_in_subspace(&a, &c));
            coords.push(a);
        });
        for i in 0..coords.len() {
            for j in (i + 1)..coords.len() {
                let d = self.space.norm.dist(&coords[i], &coords[j]);
                if (values[i] - values[j]).abs() > self.sigma * d + tol {
                    let pts = coords
                        .iter()
                        .map(|c| Point::new(c.clone()))
                        .collect::<Result<Vec<_>>>()?;
                    let required = SampleSet::new(self.space.metric(), pts, values.clone())
                        .and_then(|s| lipschitz_constant(&s))
                        .map(|r| r.max_ratio)
                        .unwrap_or(f64::INFINITY);
                    return Err(Error::SigmaTooSmall {
                        sigma: self.sigma,
                        required,
                        pair: (i, j),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn subspace_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn function(&self) -> &SubspaceFunction {
        &self.g
    }

    /// Same subspace and constant, `g` replaced by `g + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let inner = Arc::new(self.clone());
        let g = SubspaceFunction::Custom(Arc::new(move |coeffs: &[f64]| {
            inner
                .g_at_basis_coords(coeffs)
                .expect("coordinates sized by the problem")
                + c
        }));
        // differences are unchanged, so the constant stays valid
        Self {
            g,
            eval: Evaluator::Custom,
            ..self.clone()
        }
    }

    /// The point of the subspace with orthonormal coordinates `y`.
    fn embed(&self, y: &[f64]) -> Vec<f64> {
        let mut a = vec![0.0; self.space.dimension];
        for (yi, q) in y.iter().zip(&self.frame) {
            for (aj, qj) in a.iter_mut().zip(q) {
                *aj += yi * qj;
            }
        }
        a
    }

    /// Basis coordinates from orthonormal ones: solve `r c = y`.
    fn basis_coords(&self, y: &[f64]) -> Vec<f64> {
        let k = y.len();
        let mut c = vec![0.0; k];
        for i in (0..k).rev() {
            let s: f64 = ((i + 1)..k).map(|j| self.r[i][j] * c[j]).sum();
            c[i] = (y[i] - s) / self.r[i][i];
        }
        c
    }

    fn g_at_ambient_in_subspace(&self, a: &[f64], c: &[f64]) -> f64 {
        match &self.eval {
            Evaluator::Linear(w) => w.iter().zip(c).map(|(w, c)| w * c).sum(),
            Evaluator::Samples(spec) => spec.eval_unchecked(a),
            Evaluator::Custom => eval_function(&self.g, c),
        }
    }

    /// `g` at orthonormal coordinates `y`, with the embedded point.
    fn g_at(&self, y: &[f64]) -> (f64, Vec<f64>) {
        let a = self.embed(y);
        let c = self.basis_coords(y);
        (self.g_at_ambient_in_subspace(&a, &c), a)
    }

    /// `g` at the point with basis coordinates `coeffs`.
    pub fn g_at_basis_coords(&self, coeffs: &[f64]) -> Result<f64> {
        if coeffs.len() != self.subspace_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.subspace_dim(),
                found: coeffs.len(),
            });
        }
        let a = combine(&self.basis, coeffs);
        Ok(self.g_at_ambient_in_subspace(&a, coeffs))
    }

    /// Ambient point with the given basis coordinates.
    pub fn point_at(&self, coeffs: &[f64]) -> Result<Point> {
        if coeffs.len() != self.subspace_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.subspace_dim(),
                found: coeffs.len(),
            });
        }
        Point::new(combine(&self.basis, coeffs))
    }
}

fn eval_function(g: &SubspaceFunction, c: &[f64]) -> f64 {
    match g {
        SubspaceFunction::Linear(w) => w.iter().zip(c).map(|(w, c)| w * c).sum(),
        SubspaceFunction::Custom(f) => f(c),
        SubspaceFunction::Samples(_) => unreachable!("sample-backed functions are evaluated through their extension"),
    }
}

fn combine(basis: &[Vec<f64>], c: &[f64]) -> Vec<f64> {
    let n = basis[0].len();
    let mut a = vec![0.0; n];
    for (cj, b) in c.iter().zip(basis) {
        for (ai, bi) in a.iter_mut().zip(b) {
            *ai += cj * bi;
        }
    }
    a
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt with one reorthogonalisation pass. Returns the
/// orthonormal frame and the triangular factor.
#[allow(clippy::type_complexity)]
fn gram_schmidt(basis: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let k = basis.len();
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r = vec![vec![0.0; k]; k];
    for (j, b) in basis.iter().enumerate() {
        let original = dot(b, b).sqrt();
        if original == 0.0 {
            return Err(Error::DegenerateBasis(format!("basis vector {j} is zero")));
        }
        let mut v = b.clone();
        for _pass in 0..2 {
            for (i, q) in frame.iter().enumerate() {
                let proj = dot(q, &v);
                r[i][j] += proj;
                for (vl, ql) in v.iter_mut().zip(q) {
                    *vl -= proj * ql;
                }
            }
        }
        let len = dot(&v, &v).sqrt();
        if len <= DEGENERACY_TOL * original {
            return Err(Error::DegenerateBasis(format!(
                "basis vector {j} is linearly dependent on the previous ones"
            )));
        }
        r[j][j] = len;
        frame.push(v.iter().map(|x| x / len).collect());
    }
    Ok((frame, r))
}

/// Calls `f` with every multi-index in `{0..res}^k`.
fn for_each_grid_point(k: usize, res: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; k];
    loop {
        f(&idx);
        let mut axis = 0;
        loop {
            if axis == k {
                return;
            }
            idx[axis] += 1;
            if idx[axis] < res {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}

/// `2 (1 + eps) / eps * ||x||`.
pub fn approx_radius(x: &Point, epsilon: f64, space: &NormedSpace) -> Result<f64> {
    check_epsilon(epsilon)?;
    space.check(x)?;
    Ok(2.0 * (1.0 + epsilon) / epsilon * space.norm_of(x.coords()))
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(())
}

/// Grid settings for the ball search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridOptions {
    /// Points per axis of the coarse grid.
    pub resolution: usize,
    /// Rounds of local search, each halving the spacing.
    pub refinement_rounds: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            resolution: DEFAULT_RESOLUTION,
            refinement_rounds: DEFAULT_REFINEMENT_ROUNDS,
        }
    }
}

impl GridOptions {
    pub fn with_resolution(resolution: usize) -> Self {
        Self {
            resolution,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxExtensionResult {
    pub value: f64,
    /// The ball radius `r` searched for this query.
    pub radius_used: f64,
    pub grid_points_evaluated: usize,
    pub epsilon: f64,
    /// `(1 + eps) sigma`.
    pub effective_sigma: f64,
    /// `(2 + eps) sigma h sqrt(k)` for the coarse spacing `h`.
    pub error_bound: f64,
    /// Ambient point of the subspace where the optimum was found.
    pub optimizer: Vec<f64>,
}

/// Lower approximate extension at `x`.
pub fn approx_mcshane(
    problem: &SubspaceProblem,
    epsilon: f64,
    x: &Point,
    resolution: usize,
) -> Result<ApproxExtensionResult> {
    approx_extend(
        problem,
        epsilon,
        x,
        Side::Lower,
        GridOptions::with_resolution(resolution),
    )
}

/// Upper approximate extension at `x`.
pub fn approx_whitney(
    problem: &SubspaceProblem,
    epsilon: f64,
    x: &Point,
    resolution: usize,
) -> Result<ApproxExtensionResult> {
    approx_extend(
        problem,
        epsilon,
        x,
        Side::Upper,
        GridOptions::with_resolution(resolution),
    )
}

/// Grid search for either side. `Side::Midpoint` averages the two.
pub fn approx_extend(
    problem: &SubspaceProblem,
    epsilon: f64,
    x: &Point,
    side: Side,
    opts: GridOptions,
) -> Result<ApproxExtensionResult> {
    check_epsilon(epsilon)?;
    problem.space.check(x)?;
    if opts.resolution < 3 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be >= 3, got {}",
            opts.resolution
        )));
    }
    if side == Side::Midpoint {
        let lo = approx_extend(problem, epsilon, x, Side::Lower, opts)?;
        let hi = approx_extend(problem, epsilon, x, Side::Upper, opts)?;
        return Ok(ApproxExtensionResult {
            value: 0.5 * (lo.value + hi.value),
            grid_points_evaluated: lo.grid_points_evaluated + hi.grid_points_evaluated,
            error_bound: lo.error_bound.max(hi.error_bound),
            ..lo
        });
    }

    let k = problem.subspace_dim();
    let norm = problem.space.norm;
    let x = x.coords();
    let radius = approx_radius_raw(norm.eval(x), epsilon);
    let slope = (1.0 + epsilon) * problem.sigma;
    let g0 = problem.g_at(&vec![0.0; k]).0;
    // maximise `sign * objective`, so the upper side becomes a maximisation too
    let sign = if side == Side::Lower { 1.0 } else { -1.0 };
    let ball = radius * (1.0 + 1e-12);
    let objective = |y: &[f64]| -> Option<(f64, Vec<f64>)> {
        let (g, a) = problem.g_at(y);
        if norm.eval(&a) > ball {
            return None;
        }
        let h = g - g0;
        let v = if side == Side::Lower {
            h - slope * norm.dist(&a, x)
        } else {
            h + slope * norm.dist(x, &a)
        };
        Some((sign * v, a))
    };

    let origin = vec![0.0; k];
    let (mut best, mut best_a) = objective(&origin).expect("origin lies in the ball");
    let mut best_y = origin;
    let mut evaluated = 1;
    // the orthogonal projection of x is exact whenever x lies in the subspace
    let proj: Vec<f64> = problem.frame.iter().map(|q| dot(q, x)).collect();
    if let Some((v, a)) = objective(&proj).filter(|_| radius > 0.0) {
        evaluated += 1;
        if v > best {
            best = v;
            best_a = a;
            best_y.copy_from_slice(&proj);
        }
    }
    let half = radius * norm.l2_inflation(problem.space.dimension);
    let h0 = if half > 0.0 {
        2.0 * half / (opts.resolution - 1) as f64
    } else {
        0.0
    };

    if half > 0.0 {
        let mut y = vec![0.0; k];
        for_each_grid_point(k, opts.resolution, |idx| {
            for (yi, &j) in y.iter_mut().zip(idx) {
                *yi = -half + h0 * j as f64;
            }
            if let Some((v, a)) = objective(&y) {
                evaluated += 1;
                if v > best {
                    best = v;
                    best_a = a;
                    best_y.copy_from_slice(&y);
                }
            }
        });

        let mut h = h0;
        for _ in 0..opts.refinement_rounds {
            h *= 0.5;
            let centre = best_y.clone();
            let mut y = vec![0.0; k];
            for_each_grid_point(k, 5, |idx| {
                for ((yi, &j), c) in y.iter_mut().zip(idx).zip(&centre) {
                    *yi = c + h * (j as f64 - 2.0);
                }
                if let Some((v, a)) = objective(&y) {
                    evaluated += 1;
                    if v > best {
                        best = v;
                        best_a = a;
                        best_y.copy_from_slice(&y);
                    }
                }
            });
        }
    }

    Ok(ApproxExtensionResult {
        value: sign * best + g0,
        radius_used: radius,
        grid_points_evaluated: evaluated,
        epsilon,
        effective_sigma: slope,
        error_bound: (problem.sigma + slope) * h0 * (k as f64).sqrt(),
        optimizer: best_a,
    })
}

fn approx_radius_raw(norm_x: f64, epsilon: f64) -> f64 {
    2.0 * (1.0 + epsilon) / epsilon * norm_x
}

/// Samples subspace points with `||a|| >= r` and returns the largest amount
/// by which `phi(a) > phi(0)` or `theta(a) < theta(0)` (for `g - g(0)`).
///
/// Zero means the radius cut-off held at every sampled point.
pub fn radius_cutoff_violation(
    problem: &SubspaceProblem,
    epsilon: f64,
    x: &Point,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    check_epsilon(epsilon)?;
    problem.space.check(x)?;
    let k = problem.subspace_dim();
    let norm = problem.space.norm;
    let xc = x.coords();
    let radius = approx_radius_raw(norm.eval(xc), epsilon);
    let slope = (1.0 + epsilon) * problem.sigma;
    let g0 = problem.g_at(&vec![0.0; k]).0;
    let phi0 = -slope * norm.eval(xc);
    let theta0 = slope * norm.eval(xc);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let dir: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a_dir = problem.embed(&dir);
        let len = norm.eval(&a_dir);
        if len == 0.0 {
            continue;
        }
        let scale = (radius / len) * (1.0 + 3.0 * rng.gen::<f64>());
        let y: Vec<f64> = dir.iter().map(|d| d * scale).collect();
        let (g, a) = problem.g_at(&y);
        let h = g - g0;
        let phi = h - slope * norm.dist(&a, xc);
        let theta = h + slope * norm.dist(xc, &a);
        worst = worst.max(phi - phi0).max(theta0 - theta);
    }
    Ok(worst)
}

/// Output of [`hahn_banach_like`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HahnBanachReport {
    pub norm_x0: f64,
    /// `g(l x0) = l ||x0||` on the grid `l in [-1, 1]`, `sigma = 1`.
    pub upper: ExtensionSpec,
    pub lower: ExtensionSpec,
    pub upper_at_x0: f64,
    pub lower_at_x0: f64,
    pub upper_at_minus_x0: f64,
    pub lower_at_minus_x0: f64,
    /// Empirical Lipschitz constant of the grid samples.
    pub empirical_constant: f64,
    /// Sampled breaches of subadditivity of the upper extension.
    pub sublinearity_violation: f64,
    /// Sampled breaches of superadditivity of the lower extension.
    pub superlinearity_violation: f64,
    /// `|upper(l x) - l upper(x)|` for `l > 0`, and the lower side likewise.
    pub homogeneity_violation: f64,
    /// `|upper(l x) - l lower(x)|` for `l < 0`.
    pub reflection_violation: f64,
    /// Spacing of the grid in the ambient norm.
    pub grid_tolerance: f64,
    pub trials: usize,
}

/// Extends `l x0 -> l ||x0||` from a grid on the segment `[-x0, x0]`.
pub fn hahn_banach_like(space: &NormedSpace, x0: &Point, grid: usize) -> Result<HahnBanachReport> {
    hahn_banach_like_with(space, x0, grid, 100, 0)
}

/// [`hahn_banach_like`] with an explicit number of random trials and seed.
///
/// Additivity and homogeneity are sampled at points `m x0` whose sums and
/// multiples stay inside the segment, where the grid is a faithful model of
/// the line through `x0`.
pub fn hahn_banach_like_with(
    space: &NormedSpace,
    x0: &Point,
    grid: usize,
    trials: usize,
    seed: u64,
) -> Result<HahnBanachReport> {
    space.check(x0)?;
    if grid < 3 || grid.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "grid must be odd and >= 3, got {grid}"
        )));
    }
    let c = space.norm_of(x0.coords());
    if !(c > 1e-12) {
        return Err(Error::InvalidParameter("x0 must have positive norm".into()));
    }
    let step = 2.0 / (grid - 1) as f64;
    let mut points = Vec::with_capacity(grid);
    let mut values = Vec::with_capacity(grid);
    for i in 0..grid {
        // exact -1, 0 and 1 at the ends and the centre
        let l = if i == grid - 1 { 1.0 } else { -1.0 + step * i as f64 };
        let l = if 2 * i == grid - 1 { 0.0 } else { l };
        points.push(Point::new(x0.coords().iter().map(|x| l * x).collect())?);
        values.push(l * c);
    }
    let samples = SampleSet::new(space.metric(), points, values)?;
    let empirical_constant = lipschitz_constant(&samples)?.max_ratio;
    let upper = ExtensionSpec::new(samples.clone(), 1.0, Side::Upper, 1e-9)?;
    let lower = ExtensionSpec::new(samples, 1.0, Side::Lower, 1e-9)?;
    let at = |m: f64| Point::new(x0.coords().iter().map(|x| m * x).collect());
    let minus = at(-1.0)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sub: f64 = 0.0;
    let mut sup: f64 = 0.0;
    let mut homo: f64 = 0.0;
    let mut refl: f64 = 0.0;
    for _ in 0..trials {
        let m1: f64 = rng.gen_range(-1.0..1.0);
        let lo = (-1.0 - m1).max(-1.0);
        let hi = (1.0 - m1).min(1.0);
        let m2: f64 = rng.gen_range(lo..hi);
        let (p1, p2, p12) = (at(m1)?, at(m2)?, at(m1 + m2)?);
        sub = sub.max(upper.upper(&p12)? - upper.upper(&p1)? - upper.upper(&p2)?);
        sup = sup.max(lower.lower(&p1)? + lower.lower(&p2)? - lower.lower(&p12)?);

        let m: f64 = rng.gen_range(-1.0..1.0);
        let p = at(m)?;
        let lam: f64 = rng.gen_range(0.0..1.0) / m.abs().max(1e-300);
        let lam = lam.min(1e6);
        let lp = at(lam * m)?;
        homo = homo
            .max((upper.upper(&lp)? - lam * upper.upper(&p)?).abs())
            .max((lower.lower(&lp)? - lam * lower.lower(&p)?).abs());
        let lp_neg = at(-lam * m)?;
        refl = refl.max((upper.upper(&lp_neg)? - (-lam) * lower.lower(&p)?).abs());
    }

    Ok(HahnBanachReport {
        norm_x0: c,
        upper_at_x0: upper.upper(x0)?,
        lower_at_x0: lower.lower(x0)?,
        upper_at_minus_x0: upper.upper(&minus)?,
        lower_at_minus_x0: lower.lower(&minus)?,
        upper,
        lower,
        empirical_constant,
        sublinearity_violation: sub,
        superlinearity_violation: sup,
        homogeneity_violation: homo,
        reflection_violation: refl,
        grid_tolerance: step * c,
        trials,
    })
}

/// Largest sampled breach of midpoint-free convexity,
/// `f(l x + (1 - l) y) - [l f(x) + (1 - l) f(y)]`, clipped at zero.
pub fn convexity_check<F, S>(f: F, mut sample: S, trials: usize, seed: u64) -> f64
where
    F: Fn(&Point) -> f64,
    S: FnMut(&mut ChaCha8Rng) -> Point,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let x = sample(&mut rng);
        let y = sample(&mut rng);
        let l: f64 = rng.gen();
        let z: Vec<f64> = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| l * a + (1.0 - l) * b)
            .collect();
        let z = Point::new(z).expect("convex combination of finite points");
        let gap = f(&z) - (l * f(&x) + (1.0 - l) * f(&y));
        worst = worst.max(gap);
    }
    worst
}

/// [`convexity_check`] applied to `-f`.
pub fn concavity_check<F, S>(f: F, sample: S, trials: usize, seed: u64) -> f64
where
    F: Fn(&Point) -> f64,
    S: FnMut(&mut ChaCha8Rng) -> Point,
{
    convexity_check(|p| -f(p), sample, trials, seed)
}
