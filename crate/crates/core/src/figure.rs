//! Tables of `r -> J(alpha, u(r))` for the three reference figures.

use serde::Serialize;

use crate::bessel::{EvalAccuracy, Order};
use crate::error::{Error, Result};
use crate::functional::{Evaluator, Family, FunctionalParams, DEFAULT_RADIUS_TOL};
use crate::output::{fmt_num, fmt_opt, Csv};

/// Curves stop at this fraction of the evaluation limit.
pub const CLIP: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureSpec {
    pub id: u8,
    pub family: Family,
    pub nu: f64,
    pub beta: f64,
    pub alphas: &'static [f64],
    pub r_max: f64,
}

pub const FIGURES: [FigureSpec; 3] = [
    FigureSpec { id: 1, family: Family::F, nu: 1.0, beta: 0.45, alphas: &[0.0, 0.1, 0.2, 0.5, 1.0], r_max: 1.8 },
    FigureSpec { id: 2, family: Family::G, nu: 0.5, beta: 0.37, alphas: &[0.0, 0.5, 0.6, 0.7, 1.0], r_max: 1.5 },
    FigureSpec { id: 3, family: Family::H, nu: -0.5, beta: 0.29, alphas: &[0.0, 0.3, 0.4, 0.8, 1.0], r_max: 1.1 },
];

pub fn figure_spec(id: u8) -> Result<FigureSpec> {
    FIGURES.iter().copied().find(|f| f.id == id).ok_or(Error::InvalidParameter {
        name: "figure",
        value: id as f64,
        reason: "must be 1, 2 or 3",
    })
}

impl FigureSpec {
    pub fn order(&self) -> Order {
        Order::new(self.nu).expect("figure orders are valid")
    }

    pub fn evaluator(&self) -> Result<Evaluator> {
        Evaluator::new(self.family, self.order())
    }

    pub fn evaluator_with(&self, acc: EvalAccuracy) -> Result<Evaluator> {
        Evaluator::with_accuracy(self.family, self.order(), acc)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FigureTable {
    pub spec: FigureSpec,
    pub r: Vec<f64>,
    /// One column per alpha; `None` past the clipped evaluation limit.
    pub columns: Vec<Vec<Option<f64>>>,
    /// Radius of alpha-convexity of order beta for each column.
    pub radii: Vec<f64>,
}

/// Samples `r_k = r_max k / points`, `k = 1..=points`.
pub fn figure_table(id: u8, points: usize) -> Result<FigureTable> {
    figure_table_with(id, points, EvalAccuracy::tight(), DEFAULT_RADIUS_TOL)
}

pub fn figure_table_with(id: u8, points: usize, acc: EvalAccuracy, tol: f64) -> Result<FigureTable> {
    if points == 0 {
        return Err(Error::InvalidParameter { name: "points", value: 0.0, reason: "must be at least 1" });
    }
    let spec = figure_spec(id)?;
    let ev = spec.evaluator_with(acc)?;
    let r: Vec<f64> = (1..=points).map(|k| spec.r_max * k as f64 / points as f64).collect();
    let mut columns = Vec::with_capacity(spec.alphas.len());
    let mut radii = Vec::with_capacity(spec.alphas.len());
    for &alpha in spec.alphas {
        let limit = CLIP * ev.evaluation_limit(alpha);
        let col = r
            .iter()
            .map(|&x| if x <= limit { ev.ratio(alpha, x).map(Some) } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;
        columns.push(col);
        radii.push(ev.radius(FunctionalParams::new(alpha, spec.beta)?, tol)?.radius);
    }
    Ok(FigureTable { spec, r, columns, radii })
}

impl FigureTable {
    pub fn to_csv(&self) -> Csv {
        let s = &self.spec;
        let header = std::iter::once("r".to_string()).chain(s.alphas.iter().map(|a| format!("alpha={}", fmt_num(*a))));
        let mut csv = Csv::new(header);
        csv.comment(format!("figure={} family={} nu={} beta={}", s.id, s.family, fmt_num(s.nu), fmt_num(s.beta)));
        let radii: Vec<String> = self.radii.iter().map(|r| fmt_num(*r)).collect();
        csv.comment(format!("radii={}", radii.join(",")));
        for (i, &r) in self.r.iter().enumerate() {
            let mut row = vec![fmt_num(r)];
            row.extend(self.columns.iter().map(|c| fmt_opt(c[i])));
            csv.push(row);
        }
        csv
    }
}
