//! Irregularity coefficients and investment-bubble detection.
//!
//! The irregularity coefficient of an industry is the logarithm of the
//! ratio between its observed gross value added and the equilibrium
//! baseline prediction at its scree rank. A value near zero means the
//! industry sits on the equilibrium trend; values above the configured
//! threshold flag it as a candidate investment bubble.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::accounts::{AccountsPanel, IndustryId};
use crate::baseline::{fit_equilibrium_baseline, predict, scree_order, FitSpace};
use crate::batch;
use crate::error::{Error, Result};

/// Per-industry irregularity coefficient with its baseline value and
/// flag status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrregularityEntry {
    pub id: IndustryId,
    pub year: i32,
    /// Observed gross value added.
    pub gva_exp: f64,
    /// Equilibrium baseline prediction at this industry's scree rank.
    pub gva_reg: f64,
    pub k_irr: f64,
    pub flagged: bool,
}

/// Detection parameters.
///
/// The log base and flag threshold are configurable because neither is
/// pinned down by the indicator's definition; defaults are base 10 and
/// `tau = 0.1` (about 26% above baseline). Flagging is one-sided by
/// default; `symmetric` flags deviations in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionConfig {
    pub log_base: f64,
    pub tau: f64,
    pub baseline_space: FitSpace,
    pub symmetric: bool,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            log_base: 10.0,
            tau: 0.1,
            baseline_space: FitSpace::Log,
            symmetric: false,
        }
    }
}

impl DetectionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.log_base.is_finite() && self.log_base > 1.0) {
            return Err(Error::InvalidLogBase(self.log_base));
        }
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return Err(Error::InvalidThreshold(self.tau));
        }
        Ok(())
    }

    /// Flag decision for a coefficient: strictly above `tau` (or, in
    /// symmetric mode, strictly outside `[-tau, tau]`). No rounding at
    /// the boundary.
    pub fn flags(&self, k_irr: f64) -> bool {
        if self.symmetric {
            k_irr.abs() > self.tau
        } else {
            k_irr > self.tau
        }
    }
}

/// `log(gva_exp / gva_reg)` in the given base.
///
/// Positive iff the observed value exceeds the baseline; zero at
/// equilibrium.
pub fn irregularity(gva_exp: f64, gva_reg: f64, log_base: f64) -> Result<f64> {
    if !(gva_exp > 0.0) || !gva_exp.is_finite() {
        return Err(Error::NonPositiveValue {
            what: "observed value",
            value: gva_exp,
        });
    }
    if !(gva_reg > 0.0) || !gva_reg.is_finite() {
        return Err(Error::NonPositiveValue {
            what: "baseline value",
            value: gva_reg,
        });
    }
    if !(log_base.is_finite() && log_base > 1.0) {
        return Err(Error::InvalidLogBase(log_base));
    }
    Ok((gva_exp / gva_reg).ln() / log_base.ln())
}

/// Fits the equilibrium baseline for the year and computes one
/// [`IrregularityEntry`] per industry, sorted by observed GVA descending
/// (ties by ordinal).
pub fn detect_bubbles(
    panel: &AccountsPanel,
    year: i32,
    config: &DetectionConfig,
) -> Result<Vec<IrregularityEntry>> {
    config.validate()?;
    let ordering = scree_order(panel, year)?;
    let model = fit_equilibrium_baseline(&ordering, config.baseline_space)?;
    batch::try_map_ordered(&ordering.ranked, |(rank, id, value)| {
        let gva_reg = predict(&model, *rank as f64);
        let k_irr = irregularity(*value, gva_reg, config.log_base)?;
        Ok(IrregularityEntry {
            id: id.clone(),
            year,
            gva_exp: *value,
            gva_reg,
            k_irr,
            flagged: config.flags(k_irr),
        })
    })
}

/// Runs [`detect_bubbles`] for every year of the panel, ascending. Years
/// are processed concurrently under the `parallel` feature; results are
/// identical either way.
pub fn detect_bubbles_all_years(
    panel: &AccountsPanel,
    config: &DetectionConfig,
) -> Result<Vec<(i32, Vec<IrregularityEntry>)>> {
    batch::try_map_ordered(panel.years(), |&year| {
        Ok((year, detect_bubbles(panel, year, config)?))
    })
}

/// Industries with the smallest and largest increase of `k_irr` between
/// the first and last year, as `(min, max)`. Ties go to the lowest
/// ordinal.
pub fn growth_extremes(per_year: &[Vec<IrregularityEntry>]) -> Result<(IndustryId, IndustryId)> {
    if per_year.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 years, got {}",
            per_year.len()
        )));
    }
    let year_of = |entries: &Vec<IrregularityEntry>| -> Result<i32> {
        entries
            .first()
            .map(|e| e.year)
            .ok_or_else(|| Error::InsufficientData("empty detection run".to_string()))
    };
    let mut groups: Vec<(i32, &Vec<IrregularityEntry>)> = Vec::with_capacity(per_year.len());
    for entries in per_year {
        groups.push((year_of(entries)?, entries));
    }
    groups.sort_by_key(|(year, _)| *year);
    let (_, first) = groups[0];
    let (_, last) = groups[groups.len() - 1];

    let first_by_ordinal: HashMap<u32, f64> =
        first.iter().map(|e| (e.id.ordinal, e.k_irr)).collect();
    let mut deltas: Vec<(&IndustryId, f64)> = last
        .iter()
        .filter_map(|e| {
            first_by_ordinal
                .get(&e.id.ordinal)
                .map(|k0| (&e.id, e.k_irr - k0))
        })
        .collect();
    if deltas.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 industries present in both endpoint years, got {}",
            deltas.len()
        )));
    }
    deltas.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(Ordering::Equal)
            .then(a.0.ordinal.cmp(&b.0.ordinal))
    });
    let min = deltas[0].0.clone();
    // equal deltas are contiguous and ordinal-ascending after the sort, so
    // the first element of the max run carries the lowest ordinal
    let max_delta = deltas[deltas.len() - 1].1;
    let max = deltas
        .iter()
        .find(|(_, d)| *d == max_delta)
        .expect("non-empty deltas")
        .0
        .clone();
    Ok((min, max))
}
