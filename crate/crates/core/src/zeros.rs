//! Positive zeros of `J_nu`, `J'_nu` and the two Dini combinations.
//!
//! Zeros are bracketed by scanning a uniform grid of step `pi/8` for sign
//! changes and then bisected. Below the series domain cap the target is the
//! normalized series with its positive prefactor removed; past the cap the
//! scan continues on the Hankel asymptotic form of `J_nu`, which is what lets
//! zero tables run to hundreds of entries.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bessel::{gamma_real, reduced_dini, series_real, EvalAccuracy, Order};
use crate::dd::Dd;
use crate::error::{Error, Result};

/// Largest order for which the `pi/8` scan is known to separate all zeros.
pub const MAX_SCAN_ORDER: f64 = 10.0;
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;
pub const SCAN_STEP: f64 = PI / 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ZeroKind {
    /// `j_{nu,n}`
    #[serde(rename = "j")]
    BesselJ,
    /// `j'_{nu,n}`
    #[serde(rename = "jprime")]
    BesselJPrime,
    /// `alpha_{nu,n}`, zeros of `(1 - nu) J_nu(x) + x J'_nu(x)`
    #[serde(rename = "dini-g")]
    DiniG,
    /// `beta_{nu,n}`, zeros of `(2 - nu) J_nu(x) + x J'_nu(x)`
    #[serde(rename = "dini-h")]
    DiniH,
}

impl ZeroKind {
    pub const ALL: [ZeroKind; 4] = [ZeroKind::BesselJ, ZeroKind::BesselJPrime, ZeroKind::DiniG, ZeroKind::DiniH];

    pub fn name(self) -> &'static str {
        match self {
            ZeroKind::BesselJ => "j",
            ZeroKind::BesselJPrime => "jprime",
            ZeroKind::DiniG => "dini-g",
            ZeroKind::DiniH => "dini-h",
        }
    }

    /// Coefficient `c` in `(c - nu) J_nu + x J'_nu`, for the Dini kinds.
    fn dini_coefficient(self) -> Option<f64> {
        match self {
            ZeroKind::DiniG => Some(1.0),
            ZeroKind::DiniH => Some(2.0),
            _ => None,
        }
    }

    /// Shift `d` in the large-`n` law `z_n ~ y - d/y`, `y = pi (n + c)`.
    pub(crate) fn mcmahon_shift(self, nu: f64) -> f64 {
        let mu = 4.0 * nu * nu;
        match self {
            ZeroKind::BesselJ => (mu - 1.0) / 8.0,
            ZeroKind::BesselJPrime => (mu + 3.0) / 8.0,
            ZeroKind::DiniG => (mu + 3.0 - 8.0 * (1.0 - nu)) / 8.0,
            ZeroKind::DiniH => (mu + 3.0 - 8.0 * (2.0 - nu)) / 8.0,
        }
    }
}

impl fmt::Display for ZeroKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZeroKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "j" | "bessel-j" => Ok(ZeroKind::BesselJ),
            "jprime" | "j-prime" | "bessel-j-prime" => Ok(ZeroKind::BesselJPrime),
            "dini-g" | "alpha" => Ok(ZeroKind::DiniG),
            "dini-h" | "beta" => Ok(ZeroKind::DiniH),
            other => Err(format!("unknown zero kind '{other}' (expected j, jprime, dini-g, dini-h)")),
        }
    }
}

/// Ordered positive zeros of one kind for a fixed order. Index `n` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    kind: ZeroKind,
    order: Order,
    values: Vec<f64>,
}

impl ZeroTable {
    pub fn kind(&self) -> ZeroKind {
        self.kind
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `n`-th zero, `n >= 1`.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }
}

/// Scan configuration for [`compute_zeros_with`].
#[derive(Debug, Clone, Copy)]
pub struct ZeroScan {
    pub zero_tol: f64,
    pub step: f64,
    /// Upper end of the scan; `None` picks a bound from the requested count.
    pub limit: Option<f64>,
    pub accuracy: EvalAccuracy,
}

impl Default for ZeroScan {
    fn default() -> Self {
        ZeroScan { zero_tol: DEFAULT_ZERO_TOL, step: SCAN_STEP, limit: None, accuracy: EvalAccuracy::tight() }
    }
}

pub fn compute_zeros(kind: ZeroKind, order: Order, count: usize, zero_tol: f64) -> Result<ZeroTable> {
    compute_zeros_with(kind, order, count, &ZeroScan { zero_tol, ..Default::default() })
}

pub fn compute_zeros_with(kind: ZeroKind, order: Order, count: usize, scan: &ZeroScan) -> Result<ZeroTable> {
    let nu = order.nu();
    if nu > MAX_SCAN_ORDER {
        return Err(Error::InvalidOrder { nu, reason: "zero scan is validated for nu <= 10" });
    }
    if count == 0 {
        return Err(Error::InvalidParameter { name: "count", value: 0.0, reason: "must be at least 1" });
    }
    if !(scan.zero_tol > 0.0) {
        return Err(Error::InvalidParameter { name: "zero_tol", value: scan.zero_tol, reason: "must be positive" });
    }
    scan.accuracy.validate()?;

    let target = Target { kind, nu, acc: scan.accuracy };
    let limit = scan.limit.unwrap_or_else(|| PI * (count as f64 + nu.abs() + 4.0) + 10.0);
    let x0 = match kind {
        ZeroKind::BesselJPrime if nu > 1.0 => nu - 1.0,
        _ => 0.0,
    };

    let mut values = Vec::with_capacity(count);
    let mut a = x0;
    let mut fa = target.reduced(a)?;
    if fa == 0.0 {
        // J'_0 vanishes at the origin; step off it.
        a = x0 + 1e-3 * scan.step;
        fa = target.reduced(a)?;
    }
    let mut k = 1usize;
    while values.len() < count {
        let b = x0 + k as f64 * scan.step;
        if b > limit {
            return Err(Error::ScanExhausted { kind, found: values.len(), requested: count, limit });
        }
        let fb = target.reduced(b)?;
        if fb == 0.0 {
            values.push(b);
            // Continue from just past the exact zero.
            a = b + 1e-3 * scan.step;
            fa = target.reduced(a)?;
        } else {
            if (fa > 0.0) != (fb > 0.0) {
                values.push(target.bisect(a, fa, b, scan.zero_tol)?);
            }
            a = b;
            fa = fb;
        }
        k += 1;
    }
    Ok(ZeroTable { kind, order, values })
}

/// The function whose zeros are tabulated: `J_nu`, `J'_nu`,
/// `(1 - nu) J_nu + x J'_nu` or `(2 - nu) J_nu + x J'_nu`, at `x > 0`.
pub fn target_value(kind: ZeroKind, order: Order, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter { name: "x", value: x, reason: "must be positive" });
    }
    let t = Target { kind, nu: order.nu(), acc: EvalAccuracy::tight() };
    Ok(t.reduced(x)? * t.prefactor(x)?)
}

struct Target {
    kind: ZeroKind,
    nu: f64,
    acc: EvalAccuracy,
}

impl Target {
    /// Positive factor separating the true function from [`Target::reduced`].
    fn prefactor(&self, x: f64) -> Result<f64> {
        let nu = self.nu;
        let g = gamma_real(nu + 1.0)?;
        Ok(match self.kind {
            ZeroKind::BesselJPrime => (0.5 * x).powf(nu - 1.0) / (2.0 * g),
            _ => (0.5 * x).powf(nu) / g,
        })
    }

    /// Target with the positive prefactor removed; finite and of fixed sign
    /// near the origin.
    fn reduced(&self, x: f64) -> Result<f64> {
        let nu = self.nu;
        if x <= self.acc.domain_cap {
            let t = Dd::from_prod(x, x);
            let v = match self.kind {
                ZeroKind::BesselJ => series_real(nu, t, &self.acc)?,
                ZeroKind::BesselJPrime => reduced_dini(nu, t, nu, &self.acc)?,
                ZeroKind::DiniG => reduced_dini(nu, t, 1.0, &self.acc)?,
                ZeroKind::DiniH => reduced_dini(nu, t, 2.0, &self.acc)?,
            };
            return Ok(v.to_f64());
        }
        let j0 = hankel_j(nu, x);
        let j1 = hankel_j(nu + 1.0, x);
        let full = match self.kind {
            ZeroKind::BesselJ => j0,
            ZeroKind::BesselJPrime => nu / x * j0 - j1,
            ZeroKind::DiniG | ZeroKind::DiniH => {
                let c = self.kind.dini_coefficient().unwrap_or(0.0);
                c * j0 - x * j1
            }
        };
        Ok(full / self.prefactor(x)?)
    }

    fn bisect(&self, mut a: f64, mut fa: f64, mut b: f64, tol: f64) -> Result<f64> {
        while b - a > tol {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = self.reduced(m)?;
            if fm == 0.0 {
                return Ok(m);
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }
}

/// `J_nu(x)` for large real `x` from the Hankel expansion
/// `sqrt(2/(pi x)) (P cos chi - Q sin chi)`, summed up to its smallest term.
fn hankel_j(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0_f64;
    for k in 1..200usize {
        let odd = ((2 * k - 1) * (2 * k - 1)) as f64;
        let next = term * (mu - odd) / (k as f64 * 8.0 * x);
        if odd > mu && next.abs() > term.abs() {
            break;
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// One inequality `lower < upper` (or `<=` when not strict).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub lower: f64,
    pub upper: f64,
    pub strict: bool,
}

impl Inequality {
    pub fn margin(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn holds(&self) -> bool {
        if self.strict {
            self.margin() > 0.0
        } else {
            self.margin() >= 0.0
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlacingReport {
    pub nu: f64,
    pub count: usize,
    pub checks: Vec<Inequality>,
}

impl InterlacingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Inequality::holds)
    }

    pub fn min_margin(&self) -> f64 {
        self.checks.iter().map(Inequality::margin).fold(f64::INFINITY, f64::min)
    }
}

/// Check `nu <= j'_1 < j_1 < j'_2 < ... < j_count < j'_{count+1}` (for
/// `nu > 0`) and `j_{n-1} < alpha_n < j_n`, `j_{n-1} < beta_n < j_n` with
/// `j_0 = 0`.
pub fn verify_interlacing(order: Order, count: usize) -> Result<InterlacingReport> {
    let scan = ZeroScan::default();
    let nu = order.nu();
    let j = compute_zeros_with(ZeroKind::BesselJ, order, count, &scan)?;
    let mut checks = Vec::new();
    let lt = |label: String, lower: f64, upper: f64| Inequality { label, lower, upper, strict: true };

    if nu > 0.0 {
        let jp = compute_zeros_with(ZeroKind::BesselJPrime, order, count + 1, &scan)?;
        checks.push(Inequality { label: "nu <= j'_1".into(), lower: nu, upper: jp.values[0], strict: false });
        for n in 1..=count {
            checks.push(lt(format!("j'_{n} < j_{n}"), jp.values[n - 1], j.values[n - 1]));
            checks.push(lt(format!("j_{n} < j'_{}", n + 1), j.values[n - 1], jp.values[n]));
        }
    }

    for (kind, sym) in [(ZeroKind::DiniG, "alpha"), (ZeroKind::DiniH, "beta")] {
        let d = compute_zeros_with(kind, order, count, &scan)?;
        for n in 1..=count {
            let below = if n == 1 { 0.0 } else { j.values[n - 2] };
            checks.push(lt(format!("j_{} < {sym}_{n}", n - 1), below, d.values[n - 1]));
            checks.push(lt(format!("{sym}_{n} < j_{n}"), d.values[n - 1], j.values[n - 1]));
        }
    }
    Ok(InterlacingReport { nu, count, checks })
}
