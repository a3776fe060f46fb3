//! Gross-value-added shares and their spectrum across industries.

use serde::{Deserialize, Serialize};

use crate::accounts::{AccountsPanel, IndustryId, IndustryRecord};
use crate::batch;
use crate::error::{Error, Result};

/// Share of value added in output for one industry-year: `gva / obp`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareEntry {
    pub id: IndustryId,
    pub year: i32,
    pub k_gva: f64,
}

/// Min, max, and mean of a share spectrum. Ties for min/max go to the
/// lowest ordinal.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub min_entry: ShareEntry,
    pub max_entry: ShareEntry,
    pub mean: f64,
    pub count: usize,
}

/// Computes the value-added share of one record at full floating
/// precision; no rounding.
pub fn gva_share(record: &IndustryRecord) -> ShareEntry {
    ShareEntry {
        id: record.id.clone(),
        year: record.year,
        k_gva: record.gva / record.obp,
    }
}

/// Shares of every industry in the given year, ordered by ordinal.
pub fn share_spectrum(panel: &AccountsPanel, year: i32) -> Result<Vec<ShareEntry>> {
    if !panel.has_year(year) {
        return Err(Error::UnknownYear(year));
    }
    let rows = panel.records_for_year(year);
    Ok(batch::map_ordered(&rows, |rec| gva_share(rec)))
}

/// Min, max, and arithmetic mean over `k_gva`.
pub fn summarize_spectrum(entries: &[ShareEntry]) -> Result<SpectrumSummary> {
    let first = entries.first().ok_or(Error::EmptyInput)?;
    let mut min_entry = first;
    let mut max_entry = first;
    let mut sum = 0.0;
    for entry in entries {
        if (entry.k_gva, entry.id.ordinal) < (min_entry.k_gva, min_entry.id.ordinal) {
            min_entry = entry;
        }
        if entry.k_gva > max_entry.k_gva
            || (entry.k_gva == max_entry.k_gva && entry.id.ordinal < max_entry.id.ordinal)
        {
            max_entry = entry;
        }
        sum += entry.k_gva;
    }
    Ok(SpectrumSummary {
        min_entry: min_entry.clone(),
        max_entry: max_entry.clone(),
        mean: sum / entries.len() as f64,
        count: entries.len(),
    })
}
