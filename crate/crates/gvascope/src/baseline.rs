//! Equilibrium regression baselines over an industry spectrum.
//!
//! The baseline is an ordinary least-squares line fitted either to the
//! values themselves (`raw`) or to their natural logarithms (`log`),
//! against scree rank. A log-space model records the transform so that
//! [`predict`] inverts it, which keeps predictions strictly positive.

use serde::{Deserialize, Serialize};

use crate::accounts::{AccountsPanel, IndustryId};
use crate::error::{Error, Result};

/// Space a regression line was fitted in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FitSpace {
    Raw,
    #[default]
    Log,
}

impl std::fmt::Display for FitSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FitSpace::Raw => "raw",
            FitSpace::Log => "log",
        })
    }
}

/// Fitted least-squares line. `sse` and `r_squared` are diagnostics over
/// the training data, in the fit space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionModel {
    pub space: FitSpace,
    pub slope: f64,
    pub intercept: f64,
    pub sse: f64,
    pub r_squared: f64,
    pub n: usize,
}

/// Industries sorted by value, descending: rank 1 is the largest. Ties
/// are broken by ordinal, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreeOrdering {
    pub ranked: Vec<(u32, IndustryId, f64)>,
}

impl ScreeOrdering {
    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.ranked.iter().map(|(_, _, v)| *v)
    }
}

/// Sorts the year's industries by GVA, descending.
pub fn scree_order(panel: &AccountsPanel, year: i32) -> Result<ScreeOrdering> {
    if !panel.has_year(year) {
        return Err(Error::UnknownYear(year));
    }
    let mut rows = panel.records_for_year(year);
    rows.sort_by(|a, b| {
        b.gva
            .partial_cmp(&a.gva)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.id.ordinal.cmp(&b.id.ordinal))
    });
    Ok(ScreeOrdering {
        ranked: rows
            .iter()
            .enumerate()
            .map(|(i, rec)| (i as u32 + 1, rec.id.clone(), rec.gva))
            .collect(),
    })
}

/// Closed-form ordinary least squares in raw space.
///
/// Requires equal-length inputs with `n >= 2` and non-constant `xs`.
pub fn fit_ols(xs: &[f64], ys: &[f64]) -> Result<RegressionModel> {
    if xs.len() != ys.len() {
        return Err(Error::DegenerateFit(format!(
            "length mismatch ({} xs, {} ys)",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::DegenerateFit(format!("need at least 2 points, got {n}")));
    }
    let x_mean = xs.iter().sum::<f64>() / n as f64;
    let y_mean = ys.iter().sum::<f64>() / n as f64;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("constant regressor".to_string()));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mut sse = 0.0;
    let mut sst = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let residual = y - (intercept + slope * x);
        sse += residual * residual;
        sst += (y - y_mean) * (y - y_mean);
    }
    let r_squared = if sst > 0.0 {
        (1.0 - sse / sst).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(RegressionModel {
        space: FitSpace::Raw,
        slope,
        intercept,
        sse,
        r_squared,
        n,
    })
}

/// Fits the equilibrium baseline over a scree ordering: value (raw) or
/// ln(value) (log) against rank 1..n.
pub fn fit_equilibrium_baseline(ordering: &ScreeOrdering, space: FitSpace) -> Result<RegressionModel> {
    if ordering.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need at least 2 industries, got {}",
            ordering.len()
        )));
    }
    let xs: Vec<f64> = ordering.ranked.iter().map(|(r, _, _)| *r as f64).collect();
    let ys: Vec<f64> = match space {
        FitSpace::Raw => ordering.values().collect(),
        FitSpace::Log => {
            for value in ordering.values() {
                if !(value > 0.0) {
                    return Err(Error::NonPositiveValue {
                        what: "log-space baseline value",
                        value,
                    });
                }
            }
            ordering.values().map(f64::ln).collect()
        }
    };
    let mut model = fit_ols(&xs, &ys)?;
    model.space = space;
    Ok(model)
}

/// Baseline prediction at `x`. Log-space models return
/// `exp(slope*x + intercept)`, hence always a positive value.
pub fn predict(model: &RegressionModel, x: f64) -> f64 {
    let line = model.slope * x + model.intercept;
    match model.space {
        FitSpace::Raw => line,
        FitSpace::Log => line.exp(),
    }
}
