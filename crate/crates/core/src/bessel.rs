//! Bessel functions of the first kind from the defining power series.
//!
//! Everything here is built on the normalized even series
//!
//! ```text
//! S_nu(t) = sum_{n>=0} (-t/4)^n / (n! (nu+1)_n) = Gamma(nu+1) (2/z)^nu J_nu(z),   t = z^2,
//! ```
//!
//! which is entire in `t` and free of any branch cut. Terms are generated and
//! accumulated in double-double arithmetic, so the cancellation of the
//! alternating series near `|z| = 30` (about 12 digits) still leaves a result
//! accurate to working precision. Large-argument asymptotics are not used.

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};

/// Real Bessel order `nu > -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Order> {
        if !nu.is_finite() {
            return Err(Error::InvalidOrder { nu, reason: "order must be finite" });
        }
        if nu <= -1.0 {
            return Err(Error::InvalidOrder { nu, reason: "order must exceed -1" });
        }
        Ok(Order(nu))
    }

    #[inline]
    pub fn nu(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Stopping rule and domain for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalAccuracy {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Largest admissible `|z|`.
    pub domain_cap: f64,
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        EvalAccuracy { rel_tol: 1e-13, max_terms: 200, domain_cap: 30.0 }
    }
}

impl EvalAccuracy {
    /// Settings used internally by zero finding and the functionals: the series
    /// is carried until the tail is below double precision.
    pub fn tight() -> Self {
        EvalAccuracy { rel_tol: 1e-17, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter { name: "rel_tol", value: self.rel_tol, reason: "must be positive" });
        }
        if self.max_terms < 10 {
            return Err(Error::InvalidParameter {
                name: "max_terms",
                value: self.max_terms as f64,
                reason: "must be at least 10",
            });
        }
        if !(self.domain_cap > 0.0) {
            return Err(Error::InvalidParameter {
                name: "domain_cap",
                value: self.domain_cap,
                reason: "must be positive",
            });
        }
        Ok(())
    }

    fn check_modulus(&self, modulus: f64) -> Result<()> {
        if modulus > self.domain_cap {
            Err(Error::DomainCapExceeded { modulus, cap: self.domain_cap })
        } else {
            Ok(())
        }
    }
}

/// `S_nu(t)` for real `t` given in double-double.
pub(crate) fn series_real(nu: f64, t: Dd, acc: &EvalAccuracy) -> Result<Dd> {
    let q = (-t).scale(0.25);
    let q_abs = q.abs();
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut peak = 1.0_f64;
    for n in 1..=acc.max_terms {
        let k = n as f64;
        let denom = Dd::from_sum(k, nu).mul_f64(k);
        term = (term * q).div(denom);
        sum = sum + term;
        let mag = term.abs();
        peak = peak.max(mag);
        if mag == 0.0 {
            return Ok(sum);
        }
        let past_peak = q_abs < k * (k + nu);
        if past_peak && mag <= acc.rel_tol * sum.abs().max(1e-16 * peak) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { max_terms: acc.max_terms })
}

/// `S_nu(t)` for complex `t`.
pub(crate) fn series_complex(nu: f64, t: CDd, acc: &EvalAccuracy) -> Result<CDd> {
    let q = t.scale(-0.25);
    let q_abs = q.norm_hi();
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut peak = 1.0_f64;
    for n in 1..=acc.max_terms {
        let k = n as f64;
        let denom = Dd::from_sum(k, nu).mul_f64(k);
        term = (term * q).div_real(denom);
        sum = sum + term;
        let mag = term.norm_hi();
        peak = peak.max(mag);
        if mag == 0.0 {
            return Ok(sum);
        }
        let past_peak = q_abs < k * (k + nu);
        if past_peak && mag <= acc.rel_tol * sum.norm_hi().max(1e-16 * peak) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { max_terms: acc.max_terms })
}

/// The normalized even series `Gamma(nu+1) (2/z)^nu J_nu(z)` as a function of
/// `t = z^2`.
pub fn normalized_series(order: Order, t: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    acc.validate()?;
    acc.check_modulus(t.norm().sqrt())?;
    let t = CDd::new(Dd::from(t.re), Dd::from(t.im));
    Ok(series_complex(order.nu(), t, acc)?.to_c64())
}

/// `(z/2)^p` on the principal branch.
fn half_power(z: Complex64, p: f64) -> Complex64 {
    if z.im == 0.0 && z.re > 0.0 {
        Complex64::new((0.5 * z.re).powf(p), 0.0)
    } else {
        (0.5 * z).powf(p)
    }
}

/// `J_nu(z)` with default accuracy.
pub fn bessel_j(order: Order, z: Complex64) -> Result<Complex64> {
    bessel_j_with(order, z, &EvalAccuracy::default())
}

pub fn bessel_j_with(order: Order, z: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    acc.validate()?;
    acc.check_modulus(z.norm())?;
    let nu = order.nu();
    if z == Complex64::new(0.0, 0.0) {
        return if nu == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else if nu > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::ZeroArgument { nu })
        };
    }
    let s = series_complex(nu, CDd::square_of(z.re, z.im), acc)?.to_c64();
    Ok(half_power(z, nu) * s / gamma_real(nu + 1.0)?)
}

/// `J'_nu(z)` with default accuracy.
pub fn bessel_j_dz(order: Order, z: Complex64) -> Result<Complex64> {
    bessel_j_dz_with(order, z, &EvalAccuracy::default())
}

/// `J'_nu(z) = (nu/z) J_nu(z) - J_{nu+1}(z)`.
///
/// The recurrence is applied to the normalized series, where it reads
/// `J'_nu(z) = (z/2)^(nu-1) / (2 Gamma(nu+1)) * [nu S_nu - t S_{nu+1} / (2(nu+1))]`,
/// so no cancellation between the two terms occurs for small `|z|`.
pub fn bessel_j_dz_with(order: Order, z: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    acc.validate()?;
    acc.check_modulus(z.norm())?;
    let nu = order.nu();
    if z == Complex64::new(0.0, 0.0) {
        return if nu == 1.0 {
            Ok(Complex64::new(0.5, 0.0))
        } else if nu > 1.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::ZeroArgument { nu })
        };
    }
    let t = CDd::square_of(z.re, z.im);
    let s0 = series_complex(nu, t, acc)?;
    let s1 = series_complex(nu + 1.0, t, acc)?;
    let p = Dd::from_sum(nu, 1.0).mul_f64(2.0);
    let bracket = CDd::new(s0.re.mul_f64(nu), s0.im.mul_f64(nu)) - (t * s1).div_real(p);
    Ok(half_power(z, nu - 1.0) * bracket.to_c64() / (2.0 * gamma_real(nu + 1.0)?))
}

/// Real `(x/2)^nu / Gamma(nu+1)` times the bracket `c0 S_nu - t S_{nu+1} / (2(nu+1))`.
fn dini_combination(order: Order, x: f64, c0: f64, acc: &EvalAccuracy) -> Result<f64> {
    acc.validate()?;
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter { name: "x", value: x, reason: "must be non-negative" });
    }
    acc.check_modulus(x)?;
    let nu = order.nu();
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(c0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::ZeroArgument { nu })
        };
    }
    let bracket = reduced_dini(nu, Dd::from_prod(x, x), c0, acc)?;
    Ok((0.5 * x).powf(nu) * bracket.to_f64() / gamma_real(nu + 1.0)?)
}

/// `c0 S_nu(t) - t S_{nu+1}(t) / (2(nu+1))`: the Dini combination
/// `(c0 - nu) J_nu + x J'_nu` with the positive factor `(x/2)^nu / Gamma(nu+1)`
/// removed.
pub(crate) fn reduced_dini(nu: f64, t: Dd, c0: f64, acc: &EvalAccuracy) -> Result<Dd> {
    let s0 = series_real(nu, t, acc)?;
    let s1 = series_real(nu + 1.0, t, acc)?;
    let p = Dd::from_sum(nu, 1.0).mul_f64(2.0);
    Ok(s0.mul_f64(c0) - (t * s1).div(p))
}

/// `(1 - nu) J_nu(x) + x J'_nu(x)`, whose zeros are `alpha_{nu,n}`.
pub fn dini_g_fn(order: Order, x: f64) -> Result<f64> {
    dini_combination(order, x, 1.0, &EvalAccuracy::default())
}

/// `(2 - nu) J_nu(x) + x J'_nu(x)`, whose zeros are `beta_{nu,n}`.
pub fn dini_h_fn(order: Order, x: f64) -> Result<f64> {
    dini_combination(order, x, 2.0, &EvalAccuracy::default())
}

/// Gamma function for positive real arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            reason: "gamma_real needs a finite positive argument",
        });
    }
    Ok(libm::tgamma(x))
}
