//! Brute-force checks on complex disks.
//!
//! The minimum of `Re J(alpha, u(z))` over a circle `|z| = r` should sit on
//! the positive real axis, and a computed radius should be sharp: the circle
//! minimum is above `beta` just inside it and below `beta` just outside.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bessel::Order;
use crate::error::{Error, Result};
use crate::functional::{Evaluator, Family, FunctionalParams};

pub const MIN_SAMPLES: usize = 64;
pub const DEFAULT_SAMPLES: usize = 1024;
pub const INTERIOR_POINTS: usize = 128;
pub const INTERIOR_SLACK: f64 = 1e-9;
pub const MEAN_VALUE_TOL: f64 = 1e-6;
const INTERIOR_SEED: u64 = 0x6265_7373_656c;

#[derive(Debug, Clone, Serialize)]
pub struct CircleScan {
    pub family: Family,
    pub order: Order,
    pub alpha: f64,
    pub r: f64,
    pub samples: usize,
    pub min_value: f64,
    /// In `[0, 2 pi)`.
    pub argmin_angle: f64,
    pub value_at_zero: f64,
    /// Average of `Re J` over the samples; equals 1 for an analytic `J` with `J(0) = 1`.
    pub mean_value: f64,
}

impl CircleScan {
    pub fn step(&self) -> f64 {
        TAU / self.samples as f64
    }

    /// Distance of the argmin from the positive axis, modulo the symmetry
    /// period (`pi` for the even families F and G, `2 pi` for H).
    pub fn argmin_deviation(&self) -> f64 {
        let period = if self.family == Family::H { TAU } else { PI };
        let a = self.argmin_angle.rem_euclid(period);
        a.min(period - a)
    }

    pub fn argmin_on_axis(&self) -> bool {
        self.argmin_deviation() <= self.step() * (1.0 + 1e-9)
    }
}

pub fn min_re_on_circle(family: Family, order: Order, alpha: f64, r: f64, samples: usize) -> Result<CircleScan> {
    scan_circle(&Evaluator::new(family, order)?, alpha, r, samples)
}

/// Samples `Re J(alpha, u(r e^{i theta_k}))` at `theta_k = 2 pi k / samples`.
pub fn scan_circle(ev: &Evaluator, alpha: f64, r: f64, samples: usize) -> Result<CircleScan> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter { name: "samples", value: samples as f64, reason: "must be at least 64" });
    }
    if !(r > 0.0) {
        return Err(Error::OutOfInterval { r, lo: 0.0, hi: ev.evaluation_limit(alpha) });
    }
    let even = ev.family() != Family::H;
    let n = samples as f64;
    let mut min_value = f64::INFINITY;
    let mut argmin = 0;
    let mut total = 0.0;
    let mut value_at_zero = f64::NAN;
    for k in 0..samples {
        // F and G depend on z^2 only: feed both z and -z the same point so
        // exact ties resolve to the lower index.
        let phase = if even { PI * ((2 * k) % samples) as f64 / n } else { TAU * k as f64 / n };
        let v = ev.ratio_complex(alpha, Complex64::from_polar(r, phase))?.re;
        if k == 0 {
            value_at_zero = v;
        }
        total += v;
        if v < min_value {
            min_value = v;
            argmin = k;
        }
    }
    Ok(CircleScan {
        family: ev.family(),
        order: ev.order(),
        alpha,
        r,
        samples,
        min_value,
        argmin_angle: TAU * argmin as f64 / n,
        value_at_zero,
        mean_value: total / n,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Signed distance from failure; positive when the check holds.
    pub margin: f64,
}

impl Check {
    fn new(name: &'static str, margin: f64) -> Self {
        Check { name, passed: margin > 0.0, margin }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiusVerification {
    pub family: Family,
    pub order: Order,
    pub alpha: f64,
    pub beta: f64,
    pub radius: f64,
    pub margin: f64,
    pub inner: CircleScan,
    pub outer: Option<CircleScan>,
    /// Set when `(1 + margin) radius` reaches the evaluation limit; the outer
    /// circle is then replaced by a divergence check just below the limit.
    pub cap_exceeded: bool,
    pub near_cap_value: Option<f64>,
    pub interior_points: usize,
    pub interior_min_value: f64,
    /// `min Re J(z) - J(|z|)` over the interior points.
    pub interior_min_excess: f64,
    pub checks: Vec<Check>,
}

impl RadiusVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

pub fn verify_radius(
    family: Family,
    order: Order,
    params: FunctionalParams,
    radius: f64,
    margin: f64,
) -> Result<RadiusVerification> {
    verify_radius_with(&Evaluator::new(family, order)?, params, radius, margin, DEFAULT_SAMPLES)
}

pub fn verify_radius_with(
    ev: &Evaluator,
    params: FunctionalParams,
    radius: f64,
    margin: f64,
    samples: usize,
) -> Result<RadiusVerification> {
    if !(margin > 0.0 && margin < 0.1) {
        return Err(Error::InvalidParameter { name: "margin", value: margin, reason: "must lie in (0, 0.1)" });
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let limit = ev.evaluation_limit(alpha);
    if !(radius > 0.0 && radius <= limit) {
        return Err(Error::OutOfInterval { r: radius, lo: 0.0, hi: limit });
    }
    let mut checks = Vec::new();

    let r_in = (1.0 - margin) * radius;
    let inner = scan_circle(ev, alpha, r_in, samples)?;
    checks.push(Check::new("inner circle above beta", inner.min_value - beta));
    checks.push(Check::new("inner argmin on real axis", inner.step() * (1.0 + 1e-9) - inner.argmin_deviation()));
    checks.push(Check::new("mean value", MEAN_VALUE_TOL - (inner.mean_value - 1.0).abs()));

    let r_out = (1.0 + margin) * radius;
    let (outer, near_cap_value) = if r_out < limit {
        let outer = scan_circle(ev, alpha, r_out, samples)?;
        checks.push(Check::new("outer circle below beta", beta - outer.min_value));
        checks.push(Check::new("outer argmin on real axis", outer.step() * (1.0 + 1e-9) - outer.argmin_deviation()));
        (Some(outer), None)
    } else {
        let v = ev.ratio(alpha, 0.999 * limit)?;
        checks.push(Check::new("below beta near the limit", beta - v));
        (None, Some(v))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(INTERIOR_SEED);
    let mut interior_min_value = f64::INFINITY;
    let mut interior_min_excess = f64::INFINITY;
    for _ in 0..INTERIOR_POINTS {
        let u: f64 = 1.0 - rng.random::<f64>();
        let theta = TAU * rng.random::<f64>();
        let z = Complex64::from_polar(r_in * u.sqrt(), theta);
        let v = ev.ratio_complex(alpha, z)?.re;
        let on_axis = ev.ratio(alpha, z.norm())?;
        interior_min_value = interior_min_value.min(v);
        interior_min_excess = interior_min_excess.min(v - on_axis);
    }
    checks.push(Check::new("interior dominates real axis", interior_min_excess + INTERIOR_SLACK));
    checks.push(Check::new("interior above beta", interior_min_value - beta));

    Ok(RadiusVerification {
        family: ev.family(),
        order: ev.order(),
        alpha,
        beta,
        radius,
        margin,
        inner,
        outer,
        cap_exceeded: r_out >= limit,
        near_cap_value,
        interior_points: INTERIOR_POINTS,
        interior_min_value,
        interior_min_excess,
        checks,
    })
}
