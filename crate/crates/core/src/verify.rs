//! The full verification suite over a parameter grid.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bessel::{bessel_j, bessel_j_dz, EvalAccuracy, Order};
use crate::error::{Error, Result};
use crate::functional::{
    lemma21_gap, EvalMethod, Evaluator, Family, FunctionalParams, Tail, DEFAULT_RADIUS_TOL, RESIDUAL_TOL,
};
use crate::oracle::verify_radius_with;
use crate::zeros::verify_interlacing;

/// Strict inequalities between radii must clear this margin.
pub const SANDWICH_MARGIN: f64 = 1e-10;
pub const DIVERGENCE_LEVEL: f64 = -10.0;
pub const LEMMA_SLACK: f64 = 1e-12;
pub const CORRECTED_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct GridSpec {
    pub nus_f: Vec<f64>,
    pub nus_gh: Vec<f64>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub interlacing_nus: Vec<f64>,
    pub count: usize,
    pub r_points: usize,
    pub monotone_points: usize,
    pub samples: usize,
    pub margin: f64,
    pub lemma_tuples: usize,
    pub zero_sum_terms: usize,
    pub dual_tol: f64,
    pub radius_tol: f64,
    pub accuracy: EvalAccuracy,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            nus_f: vec![0.25, 0.5, 1.0, 2.0, 5.0],
            nus_gh: vec![-0.9, -0.5, 0.5, 1.0, 2.0, 5.0],
            alphas: vec![0.0, 0.25, 0.5, 1.0, 2.0],
            betas: vec![0.0, 0.5],
            interlacing_nus: vec![-0.9, -0.5, 0.25, 0.5, 1.0, 2.0, 5.0],
            count: 10,
            r_points: 20,
            monotone_points: 50,
            samples: 512,
            margin: 0.02,
            lemma_tuples: 10_000,
            zero_sum_terms: 500,
            dual_tol: 1e-8,
            radius_tol: DEFAULT_RADIUS_TOL,
            accuracy: EvalAccuracy::tight(),
            seed: 2024,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        for &nu in &self.nus_f {
            Family::F.check_order(Order::new(nu)?)?;
        }
        for &nu in self.nus_gh.iter().chain(&self.interlacing_nus) {
            Family::G.check_order(Order::new(nu)?)?;
        }
        for &a in &self.alphas {
            FunctionalParams::new(a, 0.0)?;
        }
        for &b in &self.betas {
            FunctionalParams::new(0.0, b)?;
        }
        let positive = [
            ("count", self.count),
            ("r_points", self.r_points),
            ("monotone_points", self.monotone_points),
            ("zero_sum_terms", self.zero_sum_terms),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::InvalidParameter { name, value: 0.0, reason: "must be at least 1" });
            }
        }
        if self.samples < crate::oracle::MIN_SAMPLES {
            return Err(Error::InvalidParameter {
                name: "samples",
                value: self.samples as f64,
                reason: "must be at least 64",
            });
        }
        if !(self.margin > 0.0 && self.margin < 0.1) {
            return Err(Error::InvalidParameter { name: "margin", value: self.margin, reason: "must lie in (0, 0.1)" });
        }
        if !(self.radius_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "radius_tol",
                value: self.radius_tol,
                reason: "must be positive",
            });
        }
        self.accuracy.validate()?;
        if !(self.dual_tol > 0.0) {
            return Err(Error::InvalidParameter { name: "dual_tol", value: self.dual_tol, reason: "must be positive" });
        }
        Ok(())
    }

    fn families(&self) -> Vec<(Family, f64)> {
        let mut out: Vec<(Family, f64)> = self.nus_f.iter().map(|&nu| (Family::F, nu)).collect();
        for family in [Family::G, Family::H] {
            out.extend(self.nus_gh.iter().map(|&nu| (family, nu)));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// Smallest margin seen; positive when every check passed.
    pub worst_margin: f64,
    pub worst_case: String,
    /// The first few failing cases.
    pub failed: Vec<String>,
}

impl Section {
    fn new(name: &'static str) -> Self {
        Section {
            name,
            checks: 0,
            failures: 0,
            worst_margin: f64::INFINITY,
            worst_case: String::new(),
            failed: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }

    fn record(&mut self, margin: f64, passed: bool, case: impl FnOnce() -> String) {
        self.checks += 1;
        let passed = passed && !margin.is_nan();
        let lower = margin.is_nan() || margin < self.worst_margin;
        if !passed || lower {
            let label = case();
            if lower {
                self.worst_margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
                self.worst_case = label.clone();
            }
            if !passed {
                self.failures += 1;
                if self.failed.len() < 10 {
                    self.failed.push(format!("{label} (margin {margin:e})"));
                }
            }
        }
    }

    fn margin(&mut self, margin: f64, case: impl FnOnce() -> String) {
        self.record(margin, margin > 0.0, case);
    }

    fn result(&mut self, r: Result<f64>, case: impl FnOnce() -> String) {
        match r {
            Ok(m) => self.margin(m, case),
            Err(e) => self.record(f64::NAN, false, || format!("{}: {e}", case())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub sections: Vec<SectionSummary>,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionSummary {
    pub passed: bool,
    #[serde(flatten)]
    pub section: Section,
}

impl VerifyReport {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().map(|s| &s.section).find(|s| s.name == name)
    }
}

fn case(family: Family, nu: f64, extra: String) -> String {
    format!("{family} nu={nu} {extra}")
}

pub fn run_verification(grid: &GridSpec) -> Result<VerifyReport> {
    grid.validate()?;
    let evaluators = grid
        .families()
        .into_iter()
        .map(|(f, nu)| Evaluator::with_accuracy(f, Order::new(nu)?, grid.accuracy))
        .collect::<Result<Vec<_>>>()?;

    let sections = vec![
        interlacing(grid),
        dual_method(grid, &evaluators),
        monotone_in_r(grid, &evaluators),
        monotone_in_alpha(grid, &evaluators),
        divergence(grid, &evaluators),
        radii(grid, &evaluators),
        circle_oracle(grid, &evaluators),
        lemma_gap(grid),
        corrected_h_starlike(grid),
    ];
    let sections: Vec<SectionSummary> =
        sections.into_iter().map(|s| SectionSummary { passed: s.passed(), section: s }).collect();
    Ok(VerifyReport { passed: sections.iter().all(|s| s.passed), sections, grid: grid.clone() })
}

fn interlacing(grid: &GridSpec) -> Section {
    let mut s = Section::new("interlacing");
    for &nu in &grid.interlacing_nus {
        match Order::new(nu).and_then(|o| verify_interlacing(o, grid.count)) {
            Ok(rep) => {
                for ineq in rep.checks {
                    s.record(ineq.margin(), ineq.holds(), || format!("nu={nu} {}", ineq.label));
                }
            }
            Err(e) => s.record(f64::NAN, false, || format!("nu={nu}: {e}")),
        }
    }
    s
}

fn dual_method(grid: &GridSpec, evs: &[Evaluator]) -> Section {
    let mut s = Section::new("dual_method");
    let zs = EvalMethod::ZeroSum { terms: grid.zero_sum_terms, tail: Tail::IntegralBound };
    for ev in evs {
        let hi = 0.95 * ev.cap();
        let lo = 0.1f64.min(hi);
        for &alpha in &grid.alphas {
            for i in 0..grid.r_points {
                let r = if grid.r_points == 1 { lo } else { lo + (hi - lo) * i as f64 / (grid.r_points - 1) as f64 };
                let diff =
                    ev.eval(alpha, r, EvalMethod::RatioForm).and_then(|a| Ok((a - ev.eval(alpha, r, zs)?).abs()));
                s.result(diff.map(|d| grid.dual_tol - d), || {
                    case(ev.family(), ev.order().nu(), format!("alpha={alpha} r={r}"))
                });
            }
        }
    }
    s
}

fn monotone_in_r(grid: &GridSpec, evs: &[Evaluator]) -> Section {
    let mut s = Section::new("monotone_in_r");
    let m = grid.monotone_points;
    for ev in evs {
        for &alpha in &grid.alphas {
            let values: Result<Vec<f64>> =
                (1..=m).map(|k| ev.ratio(alpha, ev.cap() * k as f64 / (m + 1) as f64)).collect();
            let gap = values.map(|v| v.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min));
            s.result(gap, || case(ev.family(), ev.order().nu(), format!("alpha={alpha}")));
        }
    }
    s
}

fn monotone_in_alpha(grid: &GridSpec, evs: &[Evaluator]) -> Section {
    let mut s = Section::new("monotone_in_alpha");
    let mut alphas = grid.alphas.clone();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    for ev in evs {
        for k in 1..=5 {
            let r = ev.cap() * k as f64 / 6.0;
            let label = || case(ev.family(), ev.order().nu(), format!("r={r}"));
            s.result(ev.d_dalpha(r, grid.zero_sum_terms).map(|d| -d), || format!("{} d/dalpha", label()));
            let values: Result<Vec<f64>> = alphas.iter().map(|&a| ev.ratio(a, r)).collect();
            let gap = values.map(|v| v.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min));
            if alphas.len() > 1 {
                s.result(gap, || format!("{} across alpha", label()));
            }
        }
    }
    s
}

fn divergence(grid: &GridSpec, evs: &[Evaluator]) -> Section {
    let mut s = Section::new("divergence_at_cap");
    for ev in evs {
        for &alpha in grid.alphas.iter().filter(|&&a| a > 0.01) {
            let v = ev.ratio(alpha, 0.999 * ev.cap());
            s.result(v.map(|v| DIVERGENCE_LEVEL - v), || case(ev.family(), ev.order().nu(), format!("alpha={alpha}")));
        }
    }
    s
}

/// Residuals of every radius and the sandwich `r(1) < r(alpha) < r(0)`.
fn radii(grid: &GridSpec, evs: &[Evaluator]) -> Section {
    let mut s = Section::new("radii");
    let radius = |ev: &Evaluator, a: f64, b: f64| ev.radius(FunctionalParams::new(a, b)?, grid.radius_tol);
    for ev in evs {
        for &beta in &grid.betas {
            let label = |extra: String| case(ev.family(), ev.order().nu(), format!("beta={beta} {extra}"));
            for &alpha in &grid.alphas {
                match radius(ev, alpha, beta) {
                    Ok(r) => {
                        s.margin(RESIDUAL_TOL - r.residual, || label(format!("alpha={alpha} residual")));
                        s.margin(1e-8 - r.zero_sum_residual, || label(format!("alpha={alpha} zero-sum residual")));
                    }
                    Err(e) => s.record(f64::NAN, false, || label(format!("alpha={alpha}: {e}"))),
                }
            }
            let ends = radius(ev, 1.0, beta).and_then(|r1| Ok((r1.radius, radius(ev, 0.0, beta)?.radius)));
            for alpha in [0.25, 0.5, 0.75] {
                let gap = ends.clone().and_then(|(r1, r0)| {
                    let ra = radius(ev, alpha, beta)?.radius;
                    Ok((ra - r1).min(r0 - ra) - SANDWICH_MARGIN)
                });
                s.result(gap, || label(format!("sandwich alpha={alpha}")));
            }
        }
    }
    s
}

fn circle_oracle(grid: &GridSpec, evs: &[Evaluator]) -> Section {
    let mut s = Section::new("circle_oracle");
    for ev in evs {
        for &beta in &grid.betas {
            for &alpha in &grid.alphas {
                let label = || case(ev.family(), ev.order().nu(), format!("alpha={alpha} beta={beta}"));
                let rep = FunctionalParams::new(alpha, beta).and_then(|p| {
                    let r = ev.radius(p, grid.radius_tol)?.radius;
                    verify_radius_with(ev, p, r, grid.margin, grid.samples)
                });
                match rep {
                    Ok(rep) => {
                        let worst = rep.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
                        s.record(worst, rep.passed(), || format!("{} [{}]", label(), rep.failures().join("; ")));
                    }
                    Err(e) => s.record(f64::NAN, false, || format!("{}: {e}", label())),
                }
            }
        }
    }
    s
}

fn lemma_gap(grid: &GridSpec) -> Section {
    let mut s = Section::new("lemma_gap");
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for _ in 0..grid.lemma_tuples {
        let lambda = rng.random_range(-5.0..=1.0);
        let b = rng.random_range(0.1..5.0);
        let a = b * (1.0 + rng.random_range(1e-3..4.0));
        let z = Complex64::from_polar(b * rng.random_range(0.0..0.999), TAU * rng.random::<f64>());
        s.result(lemma21_gap(lambda, a, b, z).map(|g| g + LEMMA_SLACK), || {
            format!("lambda={lambda} a={a} b={b} z={z}")
        });
    }
    s
}

fn corrected_h_starlike(grid: &GridSpec) -> Section {
    let mut s = Section::new("corrected_h_starlike");
    for &nu in &grid.nus_gh {
        for &beta in &grid.betas {
            let diff = Order::new(nu).and_then(|o| {
                let ev = Evaluator::with_accuracy(Family::H, o, grid.accuracy)?;
                let r = ev.radius(FunctionalParams::new(0.0, beta)?, grid.radius_tol)?;
                Ok((r.radius - corrected_h_starlike_root(o, beta)?).abs())
            });
            s.result(diff.map(|d| CORRECTED_ROOT_TOL - d), || format!("nu={nu} beta={beta}"));
        }
    }
    s
}

/// Smallest positive root `z` of `z^(1/2) J'_nu(z^(1/2)) + (2 - 2 beta - nu) J_nu(z^(1/2)) = 0`,
/// found by scanning and bisecting in `w = z^(1/2)` on the plain Bessel
/// function and its derivative.
pub fn corrected_h_starlike_root(order: Order, beta: f64) -> Result<f64> {
    let nu = order.nu();
    let c = 2.0 - 2.0 * beta - nu;
    let f = |w: f64| -> Result<f64> {
        let x = Complex64::new(w, 0.0);
        Ok(w * bessel_j_dz(order, x)?.re + c * bessel_j(order, x)?.re)
    };
    let step = 0.01;
    let limit = 30.0;
    let mut a = step;
    let mut fa = f(a)?;
    loop {
        let b = a + step;
        if b > limit {
            return Err(Error::PreconditionViolated(format!("no root of the starlikeness equation below w = {limit}")));
        }
        let fb = f(b)?;
        if fa == 0.0 {
            return Ok(a * a);
        }
        if fa.signum() != fb.signum() {
            let (mut lo, mut hi) = (a, b);
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid)?.signum() == fa.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let w = 0.5 * (lo + hi);
            return Ok(w * w);
        }
        a = b;
        fa = fb;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_f_order() {
        let grid = GridSpec { nus_f: vec![1e-4], ..GridSpec::default() };
        assert!(matches!(grid.validate(), Err(Error::InvalidOrder { .. })));
        assert!(matches!(run_verification(&grid), Err(Error::InvalidOrder { .. })));
    }

    #[test]
    fn corrected_root_half_order() {
        // nu = 1/2, beta = 1/2: w cos w = 0 after simplification, so w = pi/2.
        let z = corrected_h_starlike_root(Order::new(0.5).unwrap(), 0.5).unwrap();
        assert!((z - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn small_grid_passes() {
        let grid = GridSpec {
            nus_f: vec![1.0],
            nus_gh: vec![0.5],
            alphas: vec![0.0, 1.0],
            betas: vec![0.3],
            interlacing_nus: vec![1.0],
            count: 3,
            r_points: 3,
            monotone_points: 10,
            samples: 128,
            lemma_tuples: 100,
            ..GridSpec::default()
        };
        let rep = run_verification(&grid).unwrap();
        for s in &rep.sections {
            assert!(s.passed, "{:?}", s.section);
        }
        assert!(rep.passed);
    }
}
