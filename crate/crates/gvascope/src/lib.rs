//! Industry-spectrum analytics over national production accounts.
//!
//! The library takes a panel of per-industry production accounts (gross
//! value added and output at basic prices), computes the value-added share
//! of each industry, fits an equilibrium regression baseline over the
//! sorted (scree) spectrum, and flags industries whose observed value
//! added sits far enough above the baseline to look like an investment
//! bubble. Results can be rendered as SVG charts and emitted as JSON or
//! Markdown reports.
//!
//! # Modules
//!
//! - [`accounts`] — panel ingestion, validation, and the built-in
//!   19-industry reference dataset
//! - [`indicators`] — per-record value-added shares and spectrum summaries
//! - [`baseline`] — scree ordering and closed-form least-squares baselines
//! - [`irregularity`] — log-ratio irregularity coefficients and bubble
//!   detection
//! - [`report`] — analysis report assembly and JSON/Markdown emission
//! - [`svg`] — dependency-free SVG chart rendering
//!
//! # Example
//!
//! ```
//! use gvascope::accounts::reference_table1;
//! use gvascope::irregularity::{detect_bubbles, DetectionConfig};
//!
//! let panel = reference_table1();
//! let entries = detect_bubbles(&panel, 2022, &DetectionConfig::default()).unwrap();
//! assert_eq!(entries.len(), 19);
//! ```
//!
//! With the default `parallel` feature, batch computations (spectra,
//! per-industry coefficients, per-year detection runs) fan out over a
//! rayon thread pool as order-preserving element-wise maps, so output is
//! byte-identical to the sequential build (`--no-default-features`).

pub mod accounts;
pub mod baseline;
mod batch;
pub mod error;
pub mod indicators;
pub mod irregularity;
pub mod report;
pub mod svg;

pub use accounts::{
    parse_accounts_csv, reference_table1, validate_panel, write_accounts_csv, AccountsPanel,
    DecimalPolicy, IndustryId, IndustryRecord, ParseOptions, Rule, Violation,
};
pub use baseline::{
    fit_equilibrium_baseline, fit_ols, predict, scree_order, FitSpace, RegressionModel,
    ScreeOrdering,
};
pub use error::{Error, Result};
pub use indicators::{gva_share, share_spectrum, summarize_spectrum, ShareEntry, SpectrumSummary};
pub use irregularity::{
    detect_bubbles, detect_bubbles_all_years, growth_extremes, irregularity, DetectionConfig,
    IrregularityEntry,
};
pub use report::{emit_report, AnalysisReport, ReportFormat};
