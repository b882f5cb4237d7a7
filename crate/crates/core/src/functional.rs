//! The alpha-convexity functional
//!
//! ```text
//! J(alpha, u(z)) = (1 - alpha) z u'(z)/u(z) + alpha (1 + z u''(z)/u'(z))
//! ```
//!
//! for the three normalized Bessel functions
//!
//! * `f_nu(z) = (2^nu Gamma(nu+1) J_nu(z))^(1/nu)`, `nu > 0`,
//! * `g_nu(z) = 2^nu Gamma(nu+1) z^(1-nu) J_nu(z)`, `nu > -1`,
//! * `h_nu(z) = 2^nu Gamma(nu+1) z^(1-nu/2) J_nu(sqrt z)`, `nu > -1`,
//!
//! together with the radius of alpha-convexity of order beta, i.e. the smallest
//! positive root of `J(alpha, u(r)) = beta`.
//!
//! Two independent evaluations are provided. [`EvalMethod::RatioForm`] works
//! from Bessel function ratios, written in terms of the normalized even series
//! in `t = z^2` (families F and G) or `t = z` (family H), so no square root of
//! the argument is ever taken. [`EvalMethod::ZeroSum`] uses the partial
//! fraction expansions over the zeros,
//!
//! ```text
//! F: 1 - (1/nu - alpha) sum 2r^2/(j_n^2 - r^2)  - alpha sum 2r^2/(j'_n^2 - r^2)
//! G: 1 + (alpha - 1)    sum 2r^2/(j_n^2 - r^2)  - alpha sum 2r^2/(alpha_n^2 - r^2)
//! H: 1 + (alpha - 1)    sum r/(j_n^2 - r)       - alpha sum r/(beta_n^2 - r)
//! ```
//!
//! truncated after a fixed number of zeros, with the remainder enclosed by an
//! integral bound.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::{series_complex, series_real, EvalAccuracy, Order};
use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};
use crate::zeros::{compute_zeros_with, ZeroKind, ZeroScan, ZeroTable, MAX_SCAN_ORDER};

/// Smallest order accepted for family F; the weight `1/nu - alpha` blows up
/// as `nu -> 0`.
pub const MIN_F_ORDER: f64 = 1e-3;
pub const DEFAULT_ZERO_SUM_TERMS: usize = 500;
pub const DEFAULT_RADIUS_TOL: f64 = 1e-12;
/// Denominators below this magnitude are treated as a pole.
pub const NEAR_POLE: f64 = 1e-13;
/// Bound on `|J(alpha, u(radius)) - beta|` for a solved radius.
pub const RESIDUAL_TOL: f64 = 1e-9;

const TABLE_ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F,
    G,
    H,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F, Family::G, Family::H];

    pub fn name(self) -> &'static str {
        match self {
            Family::F => "f",
            Family::G => "g",
            Family::H => "h",
        }
    }

    pub fn check_order(self, order: Order) -> Result<()> {
        let nu = order.nu();
        if self == Family::F && nu < MIN_F_ORDER {
            return Err(Error::InvalidOrder { nu, reason: "family f requires nu >= 1e-3" });
        }
        if nu > MAX_SCAN_ORDER {
            return Err(Error::InvalidOrder { nu, reason: "orders above 10 are not supported" });
        }
        Ok(())
    }

    /// Zeros that bound the domain: `j'`, `alpha` or `beta`.
    pub fn partner_kind(self) -> ZeroKind {
        match self {
            Family::F => ZeroKind::BesselJPrime,
            Family::G => ZeroKind::DiniG,
            Family::H => ZeroKind::DiniH,
        }
    }

    /// F and G are even in `z` and live in `t = z^2`; H lives in `t = z`.
    fn squared(self) -> bool {
        !matches!(self, Family::H)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f" => Ok(Family::F),
            "g" => Ok(Family::G),
            "h" => Ok(Family::H),
            other => Err(format!("unknown family '{other}' (expected f, g or h)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalParams {
    alpha: f64,
    beta: f64,
}

impl FunctionalParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter { name: "beta", value: beta, reason: "must lie in [0, 1)" });
        }
        Ok(FunctionalParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidParameter { name: "alpha", value: alpha, reason: "must be finite and >= 0" });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    None,
    IntegralBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    RatioForm,
    ZeroSum { terms: usize, tail: Tail },
}

impl EvalMethod {
    pub const fn zero_sum() -> Self {
        EvalMethod::ZeroSum { terms: DEFAULT_ZERO_SUM_TERMS, tail: Tail::IntegralBound }
    }
}

/// A functional value; `tail_half_width` is the half-width of the truncation
/// interval (zero for the ratio form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalValue {
    pub value: f64,
    pub tail_half_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub radius: f64,
    pub bracket: (f64, f64),
    /// `|J - beta|` at the radius, ratio form.
    pub residual: f64,
    /// `|J - beta|` at the radius, zero-sum form.
    pub zero_sum_residual: f64,
    pub iterations: usize,
    /// `j'_{nu,1}`, `alpha_{nu,1}` or `beta_{nu,1}^2`.
    pub domain_cap_value: f64,
}

/// Minimal arithmetic shared by the real and complex ratio forms.
trait Scalar: Copy + From<f64> + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Series values at one point: `a = S_nu`, `b = S_{nu+1}`, `c = S_{nu+2}` and
/// the partner combination `den = c0 a - t b / (2(nu+1))`.
struct SeriesPoint<T> {
    t: T,
    a: T,
    b: T,
    c: T,
    den: T,
}

struct ZeroTables {
    bessel: ZeroTable,
    partner: ZeroTable,
}

/// Evaluator for one family and order. Holds the domain cap and lazily
/// computed zero tables, so repeated evaluations share the work.
pub struct Evaluator {
    family: Family,
    order: Order,
    acc: EvalAccuracy,
    cap: f64,
    pole: f64,
    tables: Mutex<Option<Arc<ZeroTables>>>,
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Evaluator")
            .field("family", &self.family)
            .field("order", &self.order)
            .field("cap", &self.cap)
            .field("pole", &self.pole)
            .finish()
    }
}

impl Evaluator {
    pub fn new(family: Family, order: Order) -> Result<Self> {
        Self::with_accuracy(family, order, EvalAccuracy::tight())
    }

    pub fn with_accuracy(family: Family, order: Order, acc: EvalAccuracy) -> Result<Self> {
        family.check_order(order)?;
        acc.validate()?;
        let scan = ZeroScan { zero_tol: TABLE_ZERO_TOL, accuracy: acc, ..Default::default() };
        let partner = compute_zeros_with(family.partner_kind(), order, 1, &scan)?.first();
        let first_j = compute_zeros_with(ZeroKind::BesselJ, order, 1, &scan)?.first();
        let lift = |x: f64| if family.squared() { x } else { x * x };
        Ok(Evaluator { family, order, acc, cap: lift(partner), pole: lift(first_j), tables: Mutex::new(None) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// Proven upper bound of the radius: `j'_{nu,1}`, `alpha_{nu,1}` or `beta_{nu,1}^2`.
    pub fn cap(&self) -> f64 {
        self.cap
    }

    /// First singularity of the starlikeness functional (`alpha = 0`):
    /// `j_{nu,1}`, or `j_{nu,1}^2` for family H.
    pub fn pole(&self) -> f64 {
        self.pole
    }

    /// Right end of the interval on which `J(alpha, u(r))` is evaluated: the cap
    /// when `alpha > 0`, otherwise [`Evaluator::pole`].
    pub fn evaluation_limit(&self, alpha: f64) -> f64 {
        if alpha > 0.0 {
            self.cap
        } else {
            self.pole
        }
    }

    fn check_r(&self, alpha: f64, r: f64) -> Result<()> {
        let hi = self.evaluation_limit(alpha);
        if !(r > 0.0 && r < hi) {
            return Err(Error::OutOfInterval { r, lo: 0.0, hi });
        }
        Ok(())
    }

    fn dini_coefficient(&self) -> f64 {
        match self.family {
            Family::F => self.order.nu(),
            Family::G => 1.0,
            Family::H => 2.0,
        }
    }

    pub fn eval(&self, alpha: f64, r: f64, method: EvalMethod) -> Result<f64> {
        Ok(self.eval_detailed(alpha, r, method)?.value)
    }

    pub fn eval_detailed(&self, alpha: f64, r: f64, method: EvalMethod) -> Result<FunctionalValue> {
        match method {
            EvalMethod::RatioForm => Ok(FunctionalValue { value: self.ratio(alpha, r)?, tail_half_width: 0.0 }),
            EvalMethod::ZeroSum { terms, tail } => self.zero_sum(alpha, r, terms, tail),
        }
    }

    /// Ratio form on the positive real axis.
    pub fn ratio(&self, alpha: f64, r: f64) -> Result<f64> {
        check_alpha(alpha)?;
        self.check_r(alpha, r)?;
        let nu = self.order.nu();
        let t = if self.family.squared() { Dd::from_prod(r, r) } else { Dd::from(r) };
        let a = series_real(nu, t, &self.acc)?;
        let b = series_real(nu + 1.0, t, &self.acc)?;
        let c = if alpha > 0.0 && self.family != Family::F { series_real(nu + 2.0, t, &self.acc)? } else { Dd::ZERO };
        let p = Dd::from_sum(nu, 1.0).mul_f64(2.0);
        let den = a.mul_f64(self.dini_coefficient()) - (t * b).div(p);
        let point = SeriesPoint { t: t.to_f64(), a: a.to_f64(), b: b.to_f64(), c: c.to_f64(), den: den.to_f64() };
        combine(self.family, nu, alpha, &point, r)
    }

    /// Ratio form at a complex point of the disk.
    pub fn ratio_complex(&self, alpha: f64, z: Complex64) -> Result<Complex64> {
        check_alpha(alpha)?;
        let hi = self.evaluation_limit(alpha);
        let modulus = z.norm();
        if !(modulus < hi) {
            return Err(Error::OutOfInterval { r: modulus, lo: 0.0, hi });
        }
        let nu = self.order.nu();
        let t =
            if self.family.squared() { CDd::square_of(z.re, z.im) } else { CDd::new(Dd::from(z.re), Dd::from(z.im)) };
        let a = series_complex(nu, t, &self.acc)?;
        let b = series_complex(nu + 1.0, t, &self.acc)?;
        let c = if alpha > 0.0 && self.family != Family::F {
            series_complex(nu + 2.0, t, &self.acc)?
        } else {
            CDd::default()
        };
        let p = Dd::from_sum(nu, 1.0).mul_f64(2.0);
        let c0 = self.dini_coefficient();
        let den = CDd::new(a.re.mul_f64(c0), a.im.mul_f64(c0)) - (t * b).div_real(p);
        let point = SeriesPoint { t: t.to_c64(), a: a.to_c64(), b: b.to_c64(), c: c.to_c64(), den: den.to_c64() };
        combine(self.family, nu, alpha, &point, modulus)
    }

    fn tables(&self, terms: usize) -> Result<Arc<ZeroTables>> {
        let mut guard = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = guard.as_ref() {
            if t.bessel.len() >= terms {
                return Ok(Arc::clone(t));
            }
        }
        let scan = ZeroScan { zero_tol: TABLE_ZERO_TOL, accuracy: self.acc, ..Default::default() };
        let tables = Arc::new(ZeroTables {
            bessel: compute_zeros_with(ZeroKind::BesselJ, self.order, terms, &scan)?,
            partner: compute_zeros_with(self.family.partner_kind(), self.order, terms, &scan)?,
        });
        *guard = Some(Arc::clone(&tables));
        Ok(tables)
    }

    /// Zero-sum form, truncated after `terms` zeros of each kind.
    pub fn zero_sum(&self, alpha: f64, r: f64, terms: usize, tail: Tail) -> Result<FunctionalValue> {
        check_alpha(alpha)?;
        self.check_r(alpha, r)?;
        if terms == 0 {
            return Err(Error::InvalidParameter { name: "terms", value: 0.0, reason: "must be at least 1" });
        }
        let tables = self.tables(terms)?;
        let nu = self.order.nu();
        let weight_j = match self.family {
            Family::F => 1.0 / nu - alpha,
            _ => 1.0 - alpha,
        };
        let (sum_j, hw_j) = self.pole_sum(&tables.bessel, r, terms, tail);
        let (sum_p, hw_p) = if alpha > 0.0 { self.pole_sum(&tables.partner, r, terms, tail) } else { (0.0, 0.0) };
        Ok(FunctionalValue {
            value: 1.0 - weight_j * sum_j - alpha * sum_p,
            tail_half_width: weight_j.abs() * hw_j + alpha * hw_p,
        })
    }

    /// `sum_n c w/(z_n^2 - w)` over the first `terms` zeros, with `w = r^2, c = 2`
    /// (F, G) or `w = r, c = 1` (H); returns the estimate and the half-width of
    /// the tail interval.
    fn pole_sum(&self, table: &ZeroTable, r: f64, terms: usize, tail: Tail) -> (f64, f64) {
        let (w, s, factor) = if self.family.squared() { (r * r, r, 2.0) } else { (r, r.sqrt(), 1.0) };
        let zs = &table.values()[..terms];
        let partial: f64 = zs.iter().rev().map(|&z| w / ((z - s) * (z + s))).sum();
        let (mid, hw) = match tail {
            Tail::None => (0.0, 0.0),
            Tail::IntegralBound => {
                let d = table.kind().mcmahon_shift(self.order.nu());
                tail_interval(zs[terms - 1], terms, d, w)
            }
        };
        (factor * (partial + mid), factor * hw)
    }

    /// `d/d alpha J(alpha, u(r))`: the difference of the two truncated zero sums.
    pub fn d_dalpha(&self, r: f64, terms: usize) -> Result<f64> {
        self.check_r(1.0, r)?;
        if terms == 0 {
            return Err(Error::InvalidParameter { name: "terms", value: 0.0, reason: "must be at least 1" });
        }
        let tables = self.tables(terms)?;
        let (sj, _) = self.pole_sum(&tables.bessel, r, terms, Tail::None);
        let (sp, _) = self.pole_sum(&tables.partner, r, terms, Tail::None);
        Ok(sj - sp)
    }

    /// Radius of alpha-convexity of order beta, by bisection on the ratio form.
    pub fn radius(&self, params: FunctionalParams, tol: f64) -> Result<RadiusResult> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter { name: "tol", value: tol, reason: "must be positive" });
        }
        let (alpha, beta) = (params.alpha(), params.beta());
        let f = |r: f64| self.ratio(alpha, r).map(|v| v - beta);

        let mut lo = 1e-6 * self.cap;
        let f_lo = f(lo)?;
        let mut hi;
        if alpha > 0.0 {
            // J -> -infinity at the cap; step towards it until the sign flips.
            let mut gap = 1e-3 * self.cap;
            loop {
                hi = self.cap - gap;
                let f_hi = f(hi)?;
                if f_hi < 0.0 {
                    break;
                }
                gap *= 0.1;
                if gap < 1e-15 * self.cap {
                    return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
                }
            }
        } else {
            // The starlikeness functional equals 0 <= beta exactly at the cap.
            hi = self.cap;
            let f_hi = f(hi)?;
            if f_hi > 1e-9 {
                return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
            }
        }
        if !(f_lo > 0.0) {
            return Err(Error::BracketFailure { lo, hi, f_lo, f_hi: f(hi)? });
        }

        let mut iterations = 0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            iterations += 1;
            if f(mid)? > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let radius = 0.5 * (lo + hi);
        let residual = f(radius)?.abs();
        let zero_sum_residual =
            (self.zero_sum(alpha, radius, DEFAULT_ZERO_SUM_TERMS, Tail::IntegralBound)?.value - beta).abs();
        Ok(RadiusResult {
            radius,
            bracket: (lo, hi),
            residual,
            zero_sum_residual,
            iterations,
            domain_cap_value: self.cap,
        })
    }
}

fn near_pole<T: Scalar>(x: T, r: f64) -> Result<()> {
    let magnitude = x.magnitude();
    if magnitude < NEAR_POLE {
        Err(Error::NearPole { r, magnitude })
    } else {
        Ok(())
    }
}

fn combine<T: Scalar>(family: Family, nu: f64, alpha: f64, s: &SeriesPoint<T>, r: f64) -> Result<T> {
    let one = T::from(1.0);
    let al = T::from(alpha);
    let two_p = T::from(2.0 * (nu + 1.0));
    let four_pq = T::from(4.0 * (nu + 1.0) * (nu + 2.0));
    near_pole(s.a, r)?;
    // t J_{nu+1}/J_nu expressed through the even series: (t/(2p)) b/a.
    let rho1 = s.t * s.b / (two_p * s.a);
    let value = match family {
        Family::F => {
            // z J'/J = den/a, and 1 + z J''/J' = (nu^2 - t)/(z J'/J) by the Bessel equation.
            let log_deriv = s.den / s.a;
            let star = T::from(1.0 / nu - alpha) * log_deriv;
            if alpha > 0.0 {
                near_pole(s.den, r)?;
                al * ((T::from(nu * nu) - s.t) * s.a / s.den) + star
            } else {
                star
            }
        }
        Family::G => {
            let star = T::from(alpha - 1.0) * rho1;
            if alpha > 0.0 {
                near_pole(s.den, r)?;
                let num = s.t * s.t * s.c / four_pq - T::from(3.0) * s.t * s.b / two_p;
                one + star + al * (num / s.den)
            } else {
                one + star
            }
        }
        Family::H => {
            let star = T::from(1.0 - alpha) * (one - rho1 / T::from(2.0));
            if alpha > 0.0 {
                near_pole(s.den, r)?;
                let num = s.t * s.t * s.c / four_pq - T::from(4.0) * s.t * s.b / two_p;
                star + al * (one + num / (T::from(2.0) * s.den))
            } else {
                star
            }
        }
    };
    Ok(value)
}

/// Enclosure of `sum_{n > N} w / (z_n^2 - w)`.
///
/// The zeros follow `z(x) = y - d/y` with `y = pi (x + c)` and `c` fitted so
/// that `z(N)` is the last tabulated zero. The summand is then convex and
/// decreasing in `x`, so
/// `int_{N+1}^inf f + f(N+1)/2 <= tail <= int_{N+1/2}^inf f`.
/// Returns the midpoint and half-width.
fn tail_interval(z_last: f64, n_last: usize, d: f64, w: f64) -> (f64, f64) {
    let n = n_last as f64;
    let y_last = 0.5 * (z_last + (z_last * z_last + 4.0 * d).sqrt());
    let c = y_last / PI - n;
    // 1/(z^2 - w) ~ 1/(y^2 - (w + 2d)), dropping d^2/y^2.
    let s2 = w + 2.0 * d;
    let integral_from = |x: f64| -> f64 {
        let y = PI * (x + c);
        let g = if s2 > 0.0 {
            let s = s2.sqrt();
            w / (2.0 * s) * (2.0 * s / (y - s)).ln_1p()
        } else if s2 < 0.0 {
            let k = (-s2).sqrt();
            w / k * (k / y).atan()
        } else {
            w / y
        };
        g / PI
    };
    let z_next = {
        let y = PI * (n + 1.0 + c);
        y - d / y
    };
    let f_next = w / (z_next * z_next - w);
    let lower = integral_from(n + 1.0) + 0.5 * f_next;
    let upper = integral_from(n + 0.5);
    let (lo, hi) = if lower <= upper { (lower, upper) } else { (upper, lower) };
    (0.5 * (lo + hi), 0.5 * (hi - lo))
}

pub fn eval_functional(family: Family, order: Order, alpha: f64, r: f64, method: EvalMethod) -> Result<f64> {
    Evaluator::new(family, order)?.eval(alpha, r, method)
}

pub fn functional_domain_cap(family: Family, order: Order) -> Result<f64> {
    Ok(Evaluator::new(family, order)?.cap())
}

pub fn radius_alpha_convexity(
    family: Family,
    order: Order,
    params: FunctionalParams,
    tol: f64,
) -> Result<RadiusResult> {
    Evaluator::new(family, order)?.radius(params, tol)
}

pub fn d_dalpha_functional(family: Family, order: Order, r: f64, terms: usize) -> Result<f64> {
    Evaluator::new(family, order)?.d_dalpha(r, terms)
}

/// `[lambda Re(z/(a-z)) - Re(z/(b-z))] - [lambda |z|/(a-|z|) - |z|/(b-|z|)]`,
/// which is non-negative whenever `a > b > 0`, `|z| < b` and `lambda <= 1`.
pub fn lemma21_gap(lambda: f64, a: f64, b: f64, z: Complex64) -> Result<f64> {
    let m = z.norm();
    if !(lambda.is_finite() && lambda <= 1.0) {
        return Err(Error::PreconditionViolated(format!("lambda = {lambda} must be finite and <= 1")));
    }
    if !(b > 0.0 && a > b && a.is_finite()) {
        return Err(Error::PreconditionViolated(format!("need a > b > 0, got a = {a}, b = {b}")));
    }
    if !(m < b) {
        return Err(Error::PreconditionViolated(format!("need |z| < b, got |z| = {m}, b = {b}")));
    }
    let lhs = lambda * (z / (a - z)).re - (z / (b - z)).re;
    let rhs = lambda * m / (a - m) - m / (b - m);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn order(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn family_f_rejects_tiny_order() {
        assert!(matches!(Evaluator::new(Family::F, order(1e-4)), Err(Error::InvalidOrder { .. })));
        assert!(matches!(Evaluator::new(Family::F, order(-0.5)), Err(Error::InvalidOrder { .. })));
        assert!(Evaluator::new(Family::G, order(-0.5)).is_ok());
    }

    #[test]
    fn params_validation() {
        assert!(FunctionalParams::new(-0.1, 0.5).is_err());
        assert!(FunctionalParams::new(0.5, 1.0).is_err());
        assert!(FunctionalParams::new(0.5, -0.01).is_err());
        assert!(FunctionalParams::new(f64::NAN, 0.5).is_err());
        assert!(FunctionalParams::new(3.0, 0.0).is_ok());
    }

    #[test]
    fn g_half_starlike_is_r_cot_r() {
        let e = Evaluator::new(Family::G, order(0.5)).unwrap();
        let r = std::f64::consts::FRAC_PI_4;
        assert!((e.ratio(0.0, r).unwrap() - r).abs() < 1e-15);
        for r in [0.2f64, 1.0, 2.0, 3.0] {
            let want = r / r.tan();
            assert!((e.ratio(0.0, r).unwrap() - want).abs() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn g_half_convex_closed_form() {
        // g_{1/2}(z) = sin z, so 1 + z g''/g' = 1 - z tan z.
        let e = Evaluator::new(Family::G, order(0.5)).unwrap();
        for r in [0.3f64, 1.0, 1.5] {
            let want = 1.0 - r * r.tan();
            assert!((e.ratio(1.0, r).unwrap() - want).abs() < 1e-12, "r={r}");
        }
    }

    #[test]
    fn limit_at_origin() {
        let e = Evaluator::new(Family::F, order(1.0)).unwrap();
        assert!((e.ratio(0.5, 1e-8).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn out_of_interval() {
        let e = Evaluator::new(Family::G, order(0.5)).unwrap();
        assert!(matches!(e.ratio(0.5, 0.0), Err(Error::OutOfInterval { .. })));
        assert!(matches!(e.ratio(0.5, 1.6), Err(Error::OutOfInterval { .. })));
        // alpha = 0 extends to j_{1/2,1} = pi.
        assert!(e.ratio(0.0, 1.6).is_ok());
        assert!(matches!(e.ratio(0.0, 3.2), Err(Error::OutOfInterval { .. })));
    }

    #[test]
    fn caps() {
        let g = functional_domain_cap(Family::G, order(0.5)).unwrap();
        assert!((g - FRAC_PI_2).abs() < 1e-13);
        let f = functional_domain_cap(Family::F, order(1.0)).unwrap();
        assert!((f - 1.841_183_781_340_659_3).abs() < 1e-13);
        let h = functional_domain_cap(Family::H, order(-0.5)).unwrap();
        assert!((h - 1.159_657_582_395_074_7).abs() < 1e-13);
    }

    #[test]
    fn f_ratio_matches_mpmath() {
        // 30-digit evaluation of the displayed equation with mpmath.besselj.
        let v = eval_functional(Family::F, order(1.0), 0.2, 1.0, EvalMethod::RatioForm).unwrap();
        assert!((v - 0.591_108_588_595_763).abs() < 1e-14, "{v}");
    }

    #[test]
    fn f_dual_method_agreement() {
        let e = Evaluator::new(Family::F, order(1.0)).unwrap();
        let zs = e.eval_detailed(0.2, 1.0, EvalMethod::zero_sum()).unwrap();
        let rf = e.ratio(0.2, 1.0).unwrap();
        assert!((zs.value - rf).abs() < 1e-8, "{} vs {rf}", zs.value);
        assert!(zs.tail_half_width > 0.0 && zs.tail_half_width < 1e-8);
    }

    #[test]
    fn tail_bound_beats_plain_truncation() {
        let e = Evaluator::new(Family::H, order(2.0)).unwrap();
        let r = 0.8 * e.cap();
        let exact = e.ratio(0.5, r).unwrap();
        let bare = e.zero_sum(0.5, r, 500, Tail::None).unwrap().value;
        let bounded = e.zero_sum(0.5, r, 500, Tail::IntegralBound).unwrap();
        assert!((bare - exact).abs() > 1e-5);
        assert!((bounded.value - exact).abs() < bounded.tail_half_width + 1e-10);
    }

    #[test]
    fn tail_interval_brackets_closed_form_tail() {
        // j_{1/2,n} = n pi: sum_{n>N} w/(n^2 pi^2 - w) is known through cot.
        let w: f64 = 1.7;
        let s = w.sqrt();
        let full = 0.5 * (1.0 - s / s.tan()); // sum_{n>=1} w/(n^2 pi^2 - w)
        let n = 50;
        let partial: f64 = (1..=n).map(|k| w / ((k as f64 * PI).powi(2) - w)).sum();
        let (mid, hw) = tail_interval(n as f64 * PI, n, 0.0, w);
        let tail = full - partial;
        assert!((mid - tail).abs() <= hw, "{mid} +- {hw} vs {tail}");
    }

    #[test]
    fn d_dalpha_g_half() {
        // Closed-form zeros: j = n pi, alpha = (n - 1/2) pi.
        let v = d_dalpha_functional(Family::G, order(0.5), 1.0, 500).unwrap();
        let want: f64 = (1..=500)
            .map(|n| {
                let n = n as f64;
                2.0 / (n * n * PI * PI - 1.0) - 2.0 / ((n - 0.5).powi(2) * PI * PI - 1.0)
            })
            .sum();
        assert!(v < 0.0);
        assert!((v - want).abs() < 1e-12, "{v} vs {want}");
    }

    #[test]
    fn d_dalpha_signs() {
        assert!(d_dalpha_functional(Family::F, order(1.0), 1e-4, 50).unwrap() < 0.0);
        assert!(d_dalpha_functional(Family::H, order(-0.5), 0.5, 500).unwrap() < 0.0);
    }

    #[test]
    fn radius_g_half_starlike_order_zero() {
        let p = FunctionalParams::new(0.0, 0.0).unwrap();
        let r = radius_alpha_convexity(Family::G, order(0.5), p, 1e-12).unwrap();
        assert!((r.radius - FRAC_PI_2).abs() < 1e-9);
        assert!(r.bracket.0 < r.radius && r.radius < r.bracket.1);
        assert!(r.bracket.1 <= r.domain_cap_value);
    }

    #[test]
    fn radius_f_figure_one_values() {
        // mpmath: first root of the displayed equation, 30 digits.
        let want = [
            (0.0, 1.416_935_577_278_391_1),
            (0.1, 1.229_775_745_232_956_7),
            (0.2, 1.127_020_316_348_495),
            (0.5, 0.947_509_043_267_923_6),
            (1.0, 0.788_570_539_477_026_6),
        ];
        let e = Evaluator::new(Family::F, order(1.0)).unwrap();
        for (alpha, r) in want {
            let res = e.radius(FunctionalParams::new(alpha, 0.45).unwrap(), 1e-12).unwrap();
            assert!((res.radius - r).abs() < 1e-10, "alpha={alpha}: {} vs {r}", res.radius);
            assert!(res.residual < RESIDUAL_TOL);
            assert!(res.zero_sum_residual < 1e-8);
        }
    }

    #[test]
    fn radius_rejects_bad_tol() {
        let e = Evaluator::new(Family::G, order(0.5)).unwrap();
        assert!(e.radius(FunctionalParams::new(0.5, 0.3).unwrap(), 0.0).is_err());
    }

    #[test]
    fn lemma_gap_cases() {
        // Positive real axis: equality.
        let g = lemma21_gap(0.3, 3.0, 1.0, Complex64::new(0.6, 0.0)).unwrap();
        assert!(g.abs() < 1e-15);
        // lambda = -2, a = 3, b = 1, z = i/2 (direct complex arithmetic).
        let g = lemma21_gap(-2.0, 3.0, 1.0, Complex64::new(0.0, 0.5)).unwrap();
        let want = -2.0 * (-0.25 / 9.25) + 0.25 / 1.25 - (-2.0 * 0.5 / 2.5 - 1.0);
        assert!((g - want).abs() < 1e-15);
        assert!(g > 0.0);
        assert!(lemma21_gap(1.5, 3.0, 1.0, Complex64::new(0.1, 0.0)).is_err());
        assert!(lemma21_gap(0.5, 1.0, 3.0, Complex64::new(0.1, 0.0)).is_err());
        assert!(lemma21_gap(0.5, 3.0, 1.0, Complex64::new(1.0, 0.0)).is_err());
    }
}
