//! Analysis report assembly and emission.
//!
//! An [`AnalysisReport`] bundles the share spectrum, the scree ordering
//! with per-rank baseline predictions, the irregularity entries, and (for
//! multi-year panels) the growth extremes, together with a config echo
//! that makes the report self-describing and re-runnable.
//!
//! JSON output carries a versioned `schema` field (see
//! `docs/report-schema.md`); emission is deterministic and round-trips
//! structurally. Markdown output renders one table per section, ratios
//! and irregularity coefficients with 4 decimal places, monetary values
//! as integers.

use serde::{Deserialize, Serialize};

use crate::accounts::{AccountsPanel, IndustryId};
use crate::baseline::{fit_equilibrium_baseline, predict, scree_order, RegressionModel};
use crate::error::Result;
use crate::indicators::{share_spectrum, ShareEntry};
use crate::irregularity::{
    detect_bubbles, detect_bubbles_all_years, growth_extremes, DetectionConfig, IrregularityEntry,
};

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA: &str = "gvascope-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// Input identifier: a file path or `builtin:table1`.
    pub dataset: String,
    /// Distinct years of the panel, ascending.
    pub years: Vec<i32>,
    /// Year the spectra and irregularities refer to.
    pub focus_year: i32,
    /// Echo of every detection parameter used.
    pub config: DetectionConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreeRow {
    pub rank: u32,
    pub id: IndustryId,
    pub value: f64,
    /// Baseline prediction at this rank.
    pub baseline: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreeSection {
    pub model: RegressionModel,
    pub ranked: Vec<ScreeRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthExtremes {
    pub min: IndustryId,
    pub max: IndustryId,
}

/// Serializable bundle of spectra, baselines, and flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub metadata: ReportMetadata,
    pub share_spectrum: Vec<ShareEntry>,
    pub scree: ScreeSection,
    pub irregularities: Vec<IrregularityEntry>,
    /// Present only for multi-year panels.
    pub extremes: Option<GrowthExtremes>,
}

impl AnalysisReport {
    /// Runs the full pipeline for one focus year of a panel.
    pub fn build(
        panel: &AccountsPanel,
        focus_year: i32,
        config: &DetectionConfig,
        dataset: &str,
    ) -> Result<Self> {
        config.validate()?;
        let share = share_spectrum(panel, focus_year)?;
        let ordering = scree_order(panel, focus_year)?;
        let model = fit_equilibrium_baseline(&ordering, config.baseline_space)?;
        let ranked = ordering
            .ranked
            .iter()
            .map(|(rank, id, value)| ScreeRow {
                rank: *rank,
                id: id.clone(),
                value: *value,
                baseline: predict(&model, *rank as f64),
            })
            .collect();
        let irregularities = detect_bubbles(panel, focus_year, config)?;
        let extremes = if panel.years().len() >= 2 {
            let runs: Vec<Vec<IrregularityEntry>> = detect_bubbles_all_years(panel, config)?
                .into_iter()
                .map(|(_, entries)| entries)
                .collect();
            let (min, max) = growth_extremes(&runs)?;
            Some(GrowthExtremes { min, max })
        } else {
            None
        };
        Ok(Self {
            schema: REPORT_SCHEMA.to_string(),
            metadata: ReportMetadata {
                dataset: dataset.to_string(),
                years: panel.years().to_vec(),
                focus_year,
                config: *config,
            },
            share_spectrum: share,
            scree: ScreeSection { model, ranked },
            irregularities,
            extremes,
        })
    }
}

/// Output format of [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

/// Emits a report as a document. Identical reports produce byte-identical
/// output; the JSON form parses back into an equal report.
pub fn emit_report(report: &AnalysisReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text =
                serde_json::to_string_pretty(report).expect("report serialization is infallible");
            text.push('\n');
            text
        }
        ReportFormat::Markdown => render_markdown(report),
    }
}

fn ratio(v: f64) -> String {
    format!("{v:.4}")
}

fn money(v: f64) -> String {
    format!("{v:.0}")
}

fn render_markdown(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let meta = &report.metadata;
    out.push_str("# Industry spectrum report\n\n");
    out.push_str(&format!(
        "Dataset `{}`, years {}-{}, focus year {}.\n\n",
        meta.dataset,
        meta.years.first().copied().unwrap_or(meta.focus_year),
        meta.years.last().copied().unwrap_or(meta.focus_year),
        meta.focus_year,
    ));

    out.push_str("## Configuration\n\n");
    out.push_str("| log_base | tau | baseline_space | symmetric |\n");
    out.push_str("|---:|---:|---|---|\n");
    out.push_str(&format!(
        "| {} | {} | {} | {} |\n\n",
        meta.config.log_base,
        ratio(meta.config.tau),
        meta.config.baseline_space,
        meta.config.symmetric,
    ));

    out.push_str("## Value added shares\n\n");
    out.push_str("| N | industry | year | K_GVA |\n");
    out.push_str("|---:|---|---:|---:|\n");
    for entry in &report.share_spectrum {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            entry.id.ordinal,
            entry.id.slug,
            entry.year,
            ratio(entry.k_gva),
        ));
    }
    out.push('\n');

    out.push_str("## Scree spectrum\n\n");
    let model = &report.scree.model;
    out.push_str(&format!(
        "Baseline: {} space, slope {}, intercept {}, r_squared {}.\n\n",
        model.space,
        ratio(model.slope),
        ratio(model.intercept),
        ratio(model.r_squared),
    ));
    out.push_str("| rank | industry | GVA | baseline |\n");
    out.push_str("|---:|---|---:|---:|\n");
    for row in &report.scree.ranked {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            row.rank,
            row.id.slug,
            money(row.value),
            money(row.baseline),
        ));
    }
    out.push('\n');

    out.push_str("## Irregularities\n\n");
    if report.irregularities.is_empty() {
        out.push_str("none flagged\n\n");
    } else {
        out.push_str("| M | industry | GVA_exp | GVA_reg | K_irr | flagged |\n");
        out.push_str("|---:|---|---:|---:|---:|---|\n");
        for (i, entry) in report.irregularities.iter().enumerate() {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                i + 1,
                entry.id.slug,
                money(entry.gva_exp),
                money(entry.gva_reg),
                ratio(entry.k_irr),
                if entry.flagged { "yes" } else { "no" },
            ));
        }
        out.push('\n');
    }

    if let Some(extremes) = &report.extremes {
        out.push_str("## Growth extremes\n\n");
        out.push_str("| extreme | industry |\n");
        out.push_str("|---|---|\n");
        out.push_str(&format!("| min | {} |\n", extremes.min.slug));
        out.push_str(&format!("| max | {} |\n", extremes.max.slug));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accounts::reference_table1;

    fn reference_report() -> AnalysisReport {
        AnalysisReport::build(
            &reference_table1(),
            2022,
            &DetectionConfig::default(),
            "builtin:table1",
        )
        .unwrap()
    }

    fn section<'a>(markdown: &'a str, heading: &str) -> &'a str {
        let start = markdown.find(heading).expect("section present");
        let rest = &markdown[start + heading.len()..];
        match rest.find("\n## ") {
            Some(end) => &rest[..end],
            None => rest,
        }
    }

    #[test]
    fn markdown_share_table_has_nineteen_rows() {
        let markdown = emit_report(&reference_report(), ReportFormat::Markdown);
        let shares = section(&markdown, "## Value added shares");
        let rows = shares
            .lines()
            .filter(|l| l.starts_with("| ") && !l.starts_with("| N "))
            .count();
        assert_eq!(rows, 19);
    }

    #[test]
    fn empty_irregularities_print_sentinel() {
        let mut report = reference_report();
        report.irregularities.clear();
        let markdown = emit_report(&report, ReportFormat::Markdown);
        assert!(section(&markdown, "## Irregularities").contains("none flagged"));
    }

    #[test]
    fn json_round_trip_is_structural_identity() {
        let report = reference_report();
        let json = emit_report(&report, ReportFormat::Json);
        let parsed: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn json_emission_is_byte_stable() {
        let report = reference_report();
        let first = emit_report(&report, ReportFormat::Json);
        let parsed: AnalysisReport = serde_json::from_str(&first).unwrap();
        let second = emit_report(&parsed, ReportFormat::Json);
        assert_eq!(first, second);
    }

    #[test]
    fn config_echo_reproduces_every_field() {
        let config = DetectionConfig {
            log_base: std::f64::consts::E,
            tau: 0.25,
            baseline_space: crate::baseline::FitSpace::Log,
            symmetric: true,
        };
        let report = AnalysisReport::build(&reference_table1(), 2022, &config, "builtin:table1")
            .unwrap();
        let json = emit_report(&report, ReportFormat::Json);
        let parsed: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.metadata.config, config);
    }

    #[test]
    fn raw_space_build_works_on_linear_spectra() {
        use crate::accounts::{AccountsPanel, IndustryId, IndustryRecord};
        let records = (1..=5)
            .map(|i| IndustryRecord {
                id: IndustryId::new(i, format!("i{i}")),
                name: format!("I{i}"),
                year: 2022,
                gva: 1000.0 - 100.0 * i as f64,
                obp: 2000.0,
            })
            .collect();
        let panel = AccountsPanel::from_records(records);
        let config = DetectionConfig {
            baseline_space: crate::baseline::FitSpace::Raw,
            ..DetectionConfig::default()
        };
        let report = AnalysisReport::build(&panel, 2022, &config, "synthetic").unwrap();
        assert_eq!(report.scree.model.space, crate::baseline::FitSpace::Raw);
        assert!(report.irregularities.iter().all(|e| e.k_irr.abs() < 1e-9));
    }

    #[test]
    fn schema_field_is_versioned() {
        let json = emit_report(&reference_report(), ReportFormat::Json);
        assert!(json.contains("\"schema\": \"gvascope-report/1\""));
    }

    #[test]
    fn single_year_panel_has_no_extremes() {
        assert_eq!(reference_report().extremes, None);
    }

    #[test]
    fn monetary_values_render_as_integers() {
        let markdown = emit_report(&reference_report(), ReportFormat::Markdown);
        let scree = section(&markdown, "## Scree spectrum");
        assert!(scree.contains("| 1 | manufacturing | 18926 |"));
    }
}
