//! Acceptance suite: runs every criterion and prints one PASS/FAIL line each.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bessel_radii::bessel::Order;
use bessel_radii::cli::{run, Cli};
use bessel_radii::figure::FIGURES;
use bessel_radii::functional::{lemma21_gap, EvalMethod, Evaluator, Family, FunctionalParams, DEFAULT_RADIUS_TOL};
use bessel_radii::oracle::verify_radius_with;
use bessel_radii::verify::corrected_h_starlike_root;
use bessel_radii::zeros::{compute_zeros, verify_interlacing, ZeroKind};
use clap::Parser;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn order(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_form_zeros() -> Outcome {
    let j = compute_zeros(ZeroKind::BesselJ, order(0.5), 10, 1e-14).map_err(|e| e.to_string())?;
    let a = compute_zeros(ZeroKind::DiniG, order(0.5), 10, 1e-14).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        worst = worst.max((j.get(n).unwrap() - n as f64 * PI).abs());
        worst = worst.max((a.get(n).unwrap() - (n as f64 - 0.5) * PI).abs());
    }
    ensure(worst < 1e-10, || format!("max error {worst:e}"))?;
    Ok(format!("max error {worst:e}"))
}

fn interlacing() -> Outcome {
    let mut checks = 0;
    let mut min_margin = f64::INFINITY;
    for nu in [-0.9, -0.5, 0.25, 0.5, 1.0, 2.0, 5.0] {
        let rep = verify_interlacing(order(nu), 10).map_err(|e| e.to_string())?;
        let bad: Vec<_> = rep.checks.iter().filter(|c| !c.holds() || c.margin() <= 0.0).collect();
        ensure(bad.is_empty(), || format!("nu={nu}: {:?}", bad[0]))?;
        checks += rep.checks.len();
        min_margin = min_margin.min(rep.min_margin());
    }
    Ok(format!("{checks} inequalities, min margin {min_margin:.3e}"))
}

fn closed_form_radius() -> Outcome {
    let ev = Evaluator::new(Family::G, order(0.5)).map_err(|e| e.to_string())?;
    let p = FunctionalParams::new(0.0, 0.0).unwrap();
    let r = ev.radius(p, DEFAULT_RADIUS_TOL).map_err(|e| e.to_string())?.radius;
    let err = (r - PI / 2.0).abs();
    ensure(err <= 1e-9, || format!("radius {r}, error {err:e}"))?;
    Ok(format!("error {err:e}"))
}

fn dual_method() -> Outcome {
    let grid: Vec<(Family, f64)> = [0.25, 0.5, 1.0, 2.0, 5.0]
        .iter()
        .map(|&nu| (Family::F, nu))
        .chain(
            [Family::G, Family::H]
                .iter()
                .flat_map(|&f| [-0.9, -0.5, 0.5, 1.0, 2.0, 5.0].into_iter().map(move |nu| (f, nu))),
        )
        .collect();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (family, nu) in grid {
        let ev = Evaluator::new(family, order(nu)).map_err(|e| e.to_string())?;
        let hi = 0.95 * ev.cap();
        for alpha in [0.0, 0.25, 0.5, 1.0, 2.0] {
            for i in 0..20 {
                let r = 0.1 + (hi - 0.1) * i as f64 / 19.0;
                let a = ev.eval(alpha, r, EvalMethod::RatioForm).map_err(|e| e.to_string())?;
                let b = ev.eval(alpha, r, EvalMethod::zero_sum()).map_err(|e| e.to_string())?;
                let d = (a - b).abs();
                ensure(d < 1e-8, || format!("{family} nu={nu} alpha={alpha} r={r}: diff {d:e}"))?;
                worst = worst.max(d);
                count += 1;
            }
        }
    }
    Ok(format!("{count} points, max diff {worst:e}"))
}

fn monotone_and_sandwich() -> Outcome {
    let mut min_gap = f64::INFINITY;
    for spec in FIGURES {
        let ev = spec.evaluator().map_err(|e| e.to_string())?;
        let radii = spec
            .alphas
            .iter()
            .map(|&a| ev.radius(FunctionalParams::new(a, spec.beta).unwrap(), DEFAULT_RADIUS_TOL).map(|r| r.radius))
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| e.to_string())?;
        for w in radii.windows(2) {
            let gap = w[0] - w[1];
            ensure(gap > 1e-10, || format!("figure {}: radii {radii:?} not decreasing", spec.id))?;
            min_gap = min_gap.min(gap);
        }
        // alphas are listed from 0 to 1, so the ends are r(0) and r(1).
        let (r0, r1) = (radii[0], radii[radii.len() - 1]);
        for &r in &radii[1..radii.len() - 1] {
            ensure(r1 + 1e-10 < r && r < r0 - 1e-10, || format!("figure {}: {r} outside ({r1}, {r0})", spec.id))?;
        }
    }
    Ok(format!("min gap between consecutive radii {min_gap:.3e}"))
}

fn figures() -> Outcome {
    let mut rows = 0;
    for spec in FIGURES {
        let id = spec.id.to_string();
        let cli = Cli::try_parse_from(["bessel-radii", "figure", id.as_str(), "--points", "180"]).unwrap();
        let mut buf = Vec::new();
        let code = run(&cli, &mut buf).map_err(|e| e.to_string())?;
        ensure(code == 0, || format!("figure {id}: exit code {code}"))?;
        let text = String::from_utf8(buf).unwrap();
        let table: Vec<Vec<Option<f64>>> = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .map(|l| l.split(',').map(|c| c.parse().ok()).collect())
            .collect();
        for (i, row) in table.iter().enumerate() {
            let vals: Vec<f64> = row[1..].iter().flatten().copied().collect();
            ensure(vals.windows(2).all(|w| w[1] < w[0]), || format!("figure {id} row {i}: not decreasing in alpha"))?;
            if let Some(next) = table.get(i + 1) {
                for c in 1..row.len() {
                    if let (Some(a), Some(b)) = (row[c], next[c]) {
                        ensure(b < a, || format!("figure {id} column {c}: not decreasing at row {i}"))?;
                    }
                }
            }
        }
        rows += table.len();

        let ev = spec.evaluator().map_err(|e| e.to_string())?;
        for &alpha in spec.alphas {
            let v0 = ev.ratio(alpha, 1e-6).map_err(|e| e.to_string())?;
            ensure((v0 - 1.0).abs() < 1e-5, || format!("figure {id} alpha={alpha}: {v0} at r=1e-6"))?;
            if alpha > 0.01 {
                let v = ev.ratio(alpha, 0.999 * ev.cap()).map_err(|e| e.to_string())?;
                ensure(v < -10.0, || format!("figure {id} alpha={alpha}: {v} at 0.999 cap"))?;
            }
        }
    }
    Ok(format!("{rows} rows over 3 figures"))
}

fn oracle_sharpness() -> Outcome {
    let mut n = 0;
    for spec in FIGURES {
        let ev = spec.evaluator().map_err(|e| e.to_string())?;
        for &alpha in spec.alphas {
            let p = FunctionalParams::new(alpha, spec.beta).unwrap();
            let r = ev.radius(p, DEFAULT_RADIUS_TOL).map_err(|e| e.to_string())?.radius;
            let rep = verify_radius_with(&ev, p, r, 0.02, 1024).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("figure {} alpha={alpha}: {:?}", spec.id, rep.failures()))?;
            ensure(rep.outer.is_some(), || format!("figure {} alpha={alpha}: outer circle skipped", spec.id))?;
            n += 1;
        }
    }
    Ok(format!("{n} radii sharp at 1024 samples"))
}

fn lemma_gap() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = f64::INFINITY;
    let mut negative_lambda = 0;
    for _ in 0..10_000 {
        let lambda: f64 = rng.random_range(-5.0..=1.0);
        let b: f64 = rng.random_range(0.05..5.0);
        let a = b * (1.0 + rng.random_range(1e-4..5.0));
        let z = Complex64::from_polar(b * rng.random_range(0.0..0.9999), TAU * rng.random::<f64>());
        let g = lemma21_gap(lambda, a, b, z).map_err(|e| e.to_string())?;
        ensure(g >= -1e-12, || format!("gap {g:e} at lambda={lambda} a={a} b={b} z={z}"))?;
        worst = worst.min(g);
        negative_lambda += usize::from(lambda < 0.0);
    }
    Ok(format!("10000 tuples ({negative_lambda} with lambda < 0), min gap {worst:e}"))
}

fn corrected_h_starlike() -> Outcome {
    let mut worst: f64 = 0.0;
    for nu in [-0.5, 0.5, 2.0] {
        let ev = Evaluator::new(Family::H, order(nu)).map_err(|e| e.to_string())?;
        for beta in [0.0, 0.29, 0.5] {
            let r = ev
                .radius(FunctionalParams::new(0.0, beta).unwrap(), DEFAULT_RADIUS_TOL)
                .map_err(|e| e.to_string())?
                .radius;
            let root = corrected_h_starlike_root(order(nu), beta).map_err(|e| e.to_string())?;
            let d = (r - root).abs();
            ensure(d < 1e-9, || format!("nu={nu} beta={beta}: {r} vs {root}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("max diff {worst:e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("closed-form zeros", 1, closed_form_zeros),
        ("interlacing", 10, interlacing),
        ("closed-form radius", 1, closed_form_radius),
        ("dual-method agreement", 60, dual_method),
        ("monotonicity and sandwich", 30, monotone_and_sandwich),
        ("figure reproduction", 30, figures),
        ("oracle sharpness", 120, oracle_sharpness),
        ("lemma gap", 5, lemma_gap),
        ("corrected h starlikeness", 5, corrected_h_starlike),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
            } else {
                Ok(msg)
            }
        });
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {}: {tag} {name} ({:.2} s): {msg}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
