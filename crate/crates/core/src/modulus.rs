//! Moduli of continuity and the extensions they govern.
//!
//! A modulus `nu: [0, inf) -> [0, inf)` satisfies `nu(0) = 0`, is subadditive
//! and strictly increasing. A function is `nu`-continuous when
//! `|f(x) - f(y)| <= nu(d(x, y))`. The linear modulus `sigma t` recovers the
//! Lipschitz case and `sigma t^alpha` the Hoelder case.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{Point, SampleSet};

/// Absolute slack used by the grid validation.
const VALIDATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modulus {
    Linear {
        sigma: f64,
    },
    Hoelder {
        sigma: f64,
        alpha: f64,
    },
    /// Linear interpolation through `(0, 0)` and the breakpoints, continued
    /// with the last slope.
    ConcavePiecewiseLinear {
        breakpoints: Vec<(f64, f64)>,
    },
}

impl Modulus {
    pub fn linear(sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "linear modulus needs sigma >= 0, got {sigma}"
            )));
        }
        Ok(Modulus::Linear { sigma })
    }

    pub fn hoelder(sigma: f64, alpha: f64) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "hoelder modulus needs sigma >= 0, got {sigma}"
            )));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "hoelder exponent must lie in (0, 1], got {alpha}"
            )));
        }
        Ok(Modulus::Hoelder { sigma, alpha })
    }

    /// Breakpoints must have strictly increasing positive abscissae,
    /// non-negative values and non-increasing slopes (concavity). A leading
    /// `(0, 0)` is accepted and dropped.
    pub fn piecewise(mut breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.first().is_some_and(|&(t, v)| t == 0.0 && v == 0.0) {
            breakpoints.remove(0);
        }
        if breakpoints.is_empty() {
            return Err(Error::InvalidParameter(
                "piecewise modulus needs at least one breakpoint".into(),
            ));
        }
        let mut prev = (0.0, 0.0);
        let mut prev_slope = f64::INFINITY;
        for &(t, v) in &breakpoints {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::NonFinite(format!("breakpoint ({t}, {v})")));
            }
            if t <= prev.0 {
                return Err(Error::InvalidParameter(format!(
                    "breakpoints must be strictly increasing in t and positive (at t = {t})"
                )));
            }
            if v < 0.0 {
                return Err(Error::InvalidParameter(format!("negative modulus value at t = {t}")));
            }
            let slope = (v - prev.1) / (t - prev.0);
            if slope > prev_slope * (1.0 + 1e-12) + 1e-15 {
                return Err(Error::InvalidParameter(format!(
                    "breakpoints are not concave: slope rises to {slope} at t = {t}"
                )));
            }
            prev_slope = slope;
            prev = (t, v);
        }
        Ok(Modulus::ConcavePiecewiseLinear { breakpoints })
    }

    /// `nu(t)` for `t >= 0`.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Modulus::Linear { sigma } => sigma * t,
            Modulus::Hoelder { sigma, alpha } => {
                if *alpha == 1.0 {
                    sigma * t
                } else {
                    sigma * t.powf(*alpha)
                }
            }
            Modulus::ConcavePiecewiseLinear { breakpoints } => {
                let mut prev = (0.0, 0.0);
                for &(bt, bv) in breakpoints {
                    if t <= bt {
                        return prev.1 + (bv - prev.1) * (t - prev.0) / (bt - prev.0);
                    }
                    prev = (bt, bv);
                }
                // past the last breakpoint: continue with the last slope
                let n = breakpoints.len();
                let before = if n >= 2 { breakpoints[n - 2] } else { (0.0, 0.0) };
                let last = breakpoints[n - 1];
                let slope = (last.1 - before.1) / (last.0 - before.0);
                last.1 + slope * (t - last.0)
            }
        }
    }
}

impl FromStr for Modulus {
    type Err = Error;

    /// Parses `linear:SIGMA`, `hoelder:SIGMA:ALPHA` or `pwl:t1,v1;t2,v2;...`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse modulus '{s}'"));
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
        let (head, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        match head {
            "linear" => Modulus::linear(num(rest)?),
            "hoelder" | "holder" => {
                let (sigma, alpha) = rest.split_once(':').ok_or_else(bad)?;
                Modulus::hoelder(num(sigma)?, num(alpha)?)
            }
            "pwl" => {
                let breakpoints = rest
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        let (t, v) = p.split_once(',').ok_or_else(bad)?;
                        Ok((num(t)?, num(v)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Modulus::piecewise(breakpoints)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Linear { sigma } => write!(f, "linear:{sigma}"),
            Modulus::Hoelder { sigma, alpha } => write!(f, "hoelder:{sigma}:{alpha}"),
            Modulus::ConcavePiecewiseLinear { breakpoints } => {
                let parts: Vec<String> = breakpoints.iter().map(|(t, v)| format!("{t},{v}")).collect();
                write!(f, "pwl:{}", parts.join(";"))
            }
        }
    }
}

/// Which modulus axiom failed on the validation grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusAxiom {
    ZeroAtOrigin,
    NonNegative,
    Subadditive,
    StrictlyIncreasing,
    BoundedIncrement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusViolation {
    pub axiom: ModulusAxiom,
    pub s: f64,
    pub t: f64,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ModulusReport {
    pub violations: Vec<ModulusViolation>,
}

impl ModulusReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: ModulusAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks the modulus axioms on the uniform grid `k * grid_max / grid_steps`.
///
/// Only the first violation of each kind is recorded.
pub fn validate_modulus(nu: &Modulus, grid_max: f64, grid_steps: usize) -> Result<ModulusReport> {
    if !(grid_max > 0.0) || !grid_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "grid_max must be positive, got {grid_max}"
        )));
    }
    if grid_steps < 2 {
        return Err(Error::InvalidParameter("grid_steps must be >= 2".into()));
    }
    let h = grid_max / grid_steps as f64;
    let vals: Vec<f64> = (0..=grid_steps).map(|k| nu.eval(k as f64 * h)).collect();
    let slack = |x: f64| VALIDATION_TOL * (1.0 + x.abs());
    let mut report = ModulusReport::default();
    let record = |report: &mut ModulusReport, axiom, s, t, excess| {
        if !report.violates(axiom) {
            report.violations.push(ModulusViolation { axiom, s, t, excess });
        }
    };

    if vals[0].abs() > VALIDATION_TOL {
        record(&mut report, ModulusAxiom::ZeroAtOrigin, 0.0, 0.0, vals[0].abs());
    }
    for (k, &v) in vals.iter().enumerate() {
        if v < 0.0 {
            record(&mut report, ModulusAxiom::NonNegative, k as f64 * h, k as f64 * h, -v);
        }
    }
    for k in 1..vals.len() {
        if vals[k] <= vals[k - 1] {
            record(
                &mut report,
                ModulusAxiom::StrictlyIncreasing,
                (k - 1) as f64 * h,
                k as f64 * h,
                vals[k - 1] - vals[k],
            );
        }
        // nu(t + h) - nu(t) <= nu(h)
        let inc = vals[k] - vals[k - 1] - vals[1];
        if inc > slack(vals[k]) {
            record(&mut report, ModulusAxiom::BoundedIncrement, (k - 1) as f64 * h, h, inc);
        }
    }
    for i in 1..=grid_steps {
        for j in i..=(grid_steps - i) {
            let excess = vals[i + j] - vals[i] - vals[j];
            if excess > slack(vals[i + j]) {
                record(
                    &mut report,
                    ModulusAxiom::Subadditive,
                    i as f64 * h,
                    j as f64 * h,
                    excess,
                );
                break;
            }
        }
    }
    Ok(report)
}

fn check_membership(samples: &SampleSet, nu: &Modulus, tol: f64) -> Result<()> {
    let v = samples.values();
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            let bound = nu.eval(samples.pair_distance(i, j));
            let delta = (v[i] - v[j]).abs();
            if delta > bound + tol {
                return Err(Error::ModulusViolated {
                    pair: (i, j),
                    delta,
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// True iff every sample pair satisfies `|dg| <= nu(d) + tol`.
pub fn is_nu_continuous(samples: &SampleSet, nu: &Modulus, tol: f64) -> bool {
    check_membership(samples, nu, tol).is_ok()
}

/// Samples validated against a modulus, evaluable on both sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuExtension {
    samples: SampleSet,
    nu: Modulus,
}

impl NuExtension {
    pub fn new(samples: SampleSet, nu: Modulus, tol: f64) -> Result<Self> {
        check_membership(&samples, &nu, tol)?;
        Ok(Self { samples, nu })
    }

    pub fn samples(&self) -> &SampleSet {
        &self.samples
    }

    pub fn modulus(&self) -> &Modulus {
        &self.nu
    }

    /// `max_a g(a) - nu(d(x, a))`.
    pub fn lower(&self, x: &Point) -> Result<f64> {
        let metric = self.samples.metric();
        metric.check_dim(x)?;
        Ok(self
            .samples
            .iter()
            .map(|(a, g)| g - self.nu.eval(metric.kind.eval(x.coords(), a.coords())))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// `min_a g(a) + nu(d(x, a))`.
    pub fn upper(&self, x: &Point) -> Result<f64> {
        let metric = self.samples.metric();
        metric.check_dim(x)?;
        Ok(self
            .samples
            .iter()
            .map(|(a, g)| g + self.nu.eval(metric.kind.eval(x.coords(), a.coords())))
            .fold(f64::INFINITY, f64::min))
    }

    pub fn midpoint(&self, x: &Point) -> Result<f64> {
        Ok(0.5 * (self.lower(x)? + self.upper(x)?))
    }
}

/// Lower `nu`-extension at `x`; the samples must be `nu`-continuous.
pub fn nu_extend_lower(samples: &SampleSet, nu: &Modulus, x: &Point) -> Result<f64> {
    NuExtension::new(samples.clone(), nu.clone(), crate::extension::DEFAULT_TOL)?.lower(x)
}

/// Upper `nu`-extension at `x`; the samples must be `nu`-continuous.
pub fn nu_extend_upper(samples: &SampleSet, nu: &Modulus, x: &Point) -> Result<f64> {
    NuExtension::new(samples.clone(), nu.clone(), crate::extension::DEFAULT_TOL)?.upper(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{mcshane_extend, whitney_extend, ExtensionSpec, Side};

    fn pt(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn identity_pair() -> SampleSet {
        SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn builtins_validate() {
        assert!(validate_modulus(&Modulus::linear(2.0).unwrap(), 10.0, 1024)
            .unwrap()
            .is_ok());
        assert!(validate_modulus(&Modulus::hoelder(1.0, 0.5).unwrap(), 10.0, 1024)
            .unwrap()
            .is_ok());
        let pwl = Modulus::piecewise(vec![(1.0, 2.0), (3.0, 3.0)]).unwrap();
        assert!(validate_modulus(&pwl, 10.0, 512).unwrap().is_ok());
    }

    #[test]
    fn flat_segment_breaks_strict_increase() {
        let pwl = Modulus::piecewise(vec![(1.0, 1.0), (2.0, 1.0)]).unwrap();
        let r = validate_modulus(&pwl, 4.0, 64).unwrap();
        assert!(r.violates(ModulusAxiom::StrictlyIncreasing));
        assert!(!r.violates(ModulusAxiom::Subadditive));
    }

    #[test]
    fn zero_modulus_and_convex_breakpoints() {
        let r = validate_modulus(&Modulus::linear(0.0).unwrap(), 1.0, 8).unwrap();
        assert!(r.violates(ModulusAxiom::StrictlyIncreasing));
        assert!(Modulus::piecewise(vec![(1.0, 1.0), (2.0, 3.0)]).is_err());
    }

    #[test]
    fn validate_rejects_bad_grid() {
        let nu = Modulus::linear(1.0).unwrap();
        assert!(validate_modulus(&nu, 0.0, 10).is_err());
        assert!(validate_modulus(&nu, 1.0, 1).is_err());
    }

    #[test]
    fn parse_specs() {
        assert_eq!("linear:2".parse::<Modulus>().unwrap(), Modulus::Linear { sigma: 2.0 });
        assert_eq!(
            "hoelder:1:0.5".parse::<Modulus>().unwrap(),
            Modulus::Hoelder { sigma: 1.0, alpha: 0.5 }
        );
        let pwl: Modulus = "pwl:1,2;3,3".parse().unwrap();
        assert_eq!(pwl.eval(0.5), 1.0);
        assert_eq!(pwl.eval(2.0), 2.5);
        assert_eq!(pwl.eval(5.0), 4.0);
        assert!("hoelder:1:1.5".parse::<Modulus>().is_err());
        assert!("cubic:1".parse::<Modulus>().is_err());
        assert!("pwl:".parse::<Modulus>().is_err());
    }

    #[test]
    fn hoelder_extension_examples() {
        let nu = Modulus::hoelder(1.0, 0.5).unwrap();
        let a = identity_pair();
        let lo = nu_extend_lower(&a, &nu, &pt(4.0)).unwrap();
        assert!((lo - (1.0 - 3f64.sqrt())).abs() < 1e-12);
        assert_eq!(nu_extend_lower(&a, &nu, &pt(1.0)).unwrap(), 1.0);
        assert_eq!(nu_extend_upper(&a, &nu, &pt(4.0)).unwrap(), 2.0);
        assert_eq!(nu_extend_upper(&a, &nu, &pt(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn linear_modulus_reduces_to_lipschitz_kernels() {
        let a = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0), (3.0, 0.5)]).unwrap();
        let nu = Modulus::linear(1.0).unwrap();
        let spec = ExtensionSpec::new(a.clone(), 1.0, Side::Lower, 0.0).unwrap();
        for k in -20..=20 {
            let x = pt(k as f64 * 0.37);
            assert_eq!(
                nu_extend_lower(&a, &nu, &x).unwrap(),
                mcshane_extend(&spec, &x).unwrap()
            );
            assert_eq!(
                nu_extend_upper(&a, &nu, &x).unwrap(),
                whitney_extend(&spec, &x).unwrap()
            );
        }
        assert_eq!(nu_extend_upper(&identity_pair(), &nu, &pt(2.0)).unwrap(), 2.0);
    }

    #[test]
    fn hoelder_one_is_lipschitz() {
        let nu = Modulus::hoelder(1.5, 1.0).unwrap();
        let lin = Modulus::linear(1.5).unwrap();
        for k in 0..50 {
            let t = k as f64 * 0.3;
            assert_eq!(nu.eval(t), lin.eval(t));
        }
    }

    #[test]
    fn nu_continuity_checks() {
        let nu = Modulus::hoelder(1.0, 0.5).unwrap();
        let sqrt = SampleSet::from_scalars(&[(0.0, 0.0), (1.0, 1.0), (4.0, 2.0)]).unwrap();
        assert!(is_nu_continuous(&sqrt, &nu, 0.0));
        let id = SampleSet::from_scalars(&[(0.0, 0.0), (4.0, 4.0)]).unwrap();
        assert!(!is_nu_continuous(&id, &nu, 0.0));
        let c = SampleSet::from_scalars(&[(0.0, 3.0), (4.0, 3.0), (9.0, 3.0)]).unwrap();
        assert!(is_nu_continuous(&c, &nu, 0.0));
        assert!(matches!(
            nu_extend_lower(&id, &nu, &pt(1.0)),
            Err(Error::ModulusViolated { pair: (0, 1), .. })
        ));
    }
}
