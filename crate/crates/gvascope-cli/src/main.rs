//! Command-line front door: ingest -> indicators -> baseline ->
//! irregularity -> report, as reproducible runs.
//!
//! Exit codes: 0 success, 1 operational failure (I/O, parse, upstream
//! module error), 2 data-validation failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gvascope::accounts::{
    parse_accounts_csv_lenient, reference_table1, validate_panel, write_accounts_csv,
    AccountsPanel, ParseOptions,
};
use gvascope::baseline::{fit_ols, FitSpace};
use gvascope::irregularity::DetectionConfig;
use gvascope::report::{emit_report, AnalysisReport, ReportFormat};
use gvascope::svg::{render_irregularity_svg, render_scree_svg, render_share_svg};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID_DATA: u8 = 2;

/// Pseudo-path addressing the embedded reference dataset.
const BUILTIN_TABLE1: &str = "builtin:table1";

#[derive(Parser)]
#[command(
    name = "gvascope",
    version,
    about = "Industry-spectrum analytics over production accounts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a production-account panel
    Ingest(IngestArgs),
    /// Run the full analysis pipeline and write report files
    Analyze(AnalyzeArgs),
    /// Write the built-in reference dataset as CSV
    Export(ExportArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Input CSV path, or `builtin:table1`
    input: String,
    #[command(flatten)]
    parse: ParseFlags,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input CSV path, or `builtin:table1`
    input: String,
    /// Year to analyze (defaults to the panel's latest year)
    #[arg(long)]
    year: Option<i32>,
    /// Flag threshold on the irregularity coefficient
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    /// Logarithm base for the irregularity coefficient
    #[arg(long, value_enum, default_value_t = LogBase::Ten)]
    log_base: LogBase,
    /// Space the equilibrium baseline is fitted in
    #[arg(long, value_enum, default_value_t = SpaceFlag::Log)]
    baseline_space: SpaceFlag,
    /// Flag deviations on both sides of the baseline
    #[arg(long)]
    symmetric_flags: bool,
    /// Output directory (falls back to $GVASCOPE_OUT, then ./gvascope-out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated output formats
    #[arg(long, value_delimiter = ',', default_values_t = vec![Format::Json, Format::Md, Format::Svg])]
    format: Vec<Format>,
    #[command(flatten)]
    parse: ParseFlags,
}

#[derive(Args)]
struct ExportArgs {
    /// Output file (standard output when omitted)
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParseFlags {
    /// Field delimiter (auto-detected when omitted)
    #[arg(long)]
    delimiter: Option<char>,
    /// Decimal mark accepted in numerals
    #[arg(long, value_enum, default_value_t = DecimalFlag::Auto)]
    decimal: DecimalFlag,
    /// Year assigned to rows when the input has no year column
    #[arg(long)]
    default_year: Option<i32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogBase {
    #[value(name = "10")]
    Ten,
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceFlag {
    Raw,
    Log,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecimalFlag {
    Point,
    Comma,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Svg,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Md => "md",
            Format::Svg => "svg",
        })
    }
}

impl ParseFlags {
    fn options(&self) -> ParseOptions {
        ParseOptions {
            delimiter: self.delimiter.map(|c| c as u8),
            decimal: match self.decimal {
                DecimalFlag::Point => gvascope::accounts::DecimalPolicy::Point,
                DecimalFlag::Comma => gvascope::accounts::DecimalPolicy::Comma,
                DecimalFlag::Auto => gvascope::accounts::DecimalPolicy::Auto,
            },
            default_year: self.default_year,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Ingest(args) => cmd_ingest(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Export(args) => cmd_export(&args),
    }
}

fn load_panel(input: &str, options: &ParseOptions) -> Result<AccountsPanel, String> {
    if input == BUILTIN_TABLE1 {
        return Ok(reference_table1());
    }
    let bytes = std::fs::read(input).map_err(|e| format!("cannot read '{input}': {e}"))?;
    parse_accounts_csv_lenient(&bytes, options).map_err(|e| format!("cannot parse '{input}': {e}"))
}

fn fail(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_FAILURE)
}

fn cmd_ingest(args: &IngestArgs) -> ExitCode {
    let panel = match load_panel(&args.input, &args.parse.options()) {
        Ok(panel) => panel,
        Err(message) => return fail(message),
    };
    let violations = validate_panel(&panel);
    if violations.is_empty() {
        println!(
            "{} {}, {} {}",
            panel.industries().len(),
            plural(panel.industries().len(), "industry", "industries"),
            panel.years().len(),
            plural(panel.years().len(), "year", "years"),
        );
        ExitCode::SUCCESS
    } else {
        for violation in &violations {
            println!("violation: {violation}");
        }
        ExitCode::from(EXIT_INVALID_DATA)
    }
}

fn plural<'a>(n: usize, one: &'a str, many: &'a str) -> &'a str {
    if n == 1 {
        one
    } else {
        many
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> ExitCode {
    let panel = match load_panel(&args.input, &args.parse.options()) {
        Ok(panel) => panel,
        Err(message) => return fail(message),
    };
    let violations = validate_panel(&panel);
    if !violations.is_empty() {
        for violation in &violations {
            eprintln!("violation: {violation}");
        }
        return ExitCode::from(EXIT_INVALID_DATA);
    }
    let focus_year = match args.year.or_else(|| panel.years().last().copied()) {
        Some(year) => year,
        None => return fail("panel has no years".to_string()),
    };
    let config = DetectionConfig {
        log_base: match args.log_base {
            LogBase::Ten => 10.0,
            LogBase::E => std::f64::consts::E,
        },
        tau: args.tau,
        baseline_space: match args.baseline_space {
            SpaceFlag::Raw => FitSpace::Raw,
            SpaceFlag::Log => FitSpace::Log,
        },
        symmetric: args.symmetric_flags,
    };

    let report = match AnalysisReport::build(&panel, focus_year, &config, &args.input) {
        Ok(report) => report,
        Err(e) => return fail(e.to_string()),
    };

    let out_dir = args
        .out
        .clone()
        .or_else(|| std::env::var_os("GVASCOPE_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("gvascope-out"));
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        return fail(format!("cannot create '{}': {e}", out_dir.display()));
    }

    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if args.format.contains(&Format::Json) {
        files.push((
            out_dir.join("report.json"),
            emit_report(&report, ReportFormat::Json),
        ));
    }
    if args.format.contains(&Format::Md) {
        files.push((
            out_dir.join("report.md"),
            emit_report(&report, ReportFormat::Markdown),
        ));
    }
    if args.format.contains(&Format::Svg) {
        let ordering = gvascope::baseline::ScreeOrdering {
            ranked: report
                .scree
                .ranked
                .iter()
                .map(|row| (row.rank, row.id.clone(), row.value))
                .collect(),
        };
        let scree_svg = match render_scree_svg(&ordering, &report.scree.model) {
            Ok(svg) => svg,
            Err(e) => return fail(e.to_string()),
        };
        // K_GVA baseline: raw-space fit against industry ordinal
        let share_xs: Vec<f64> = report
            .share_spectrum
            .iter()
            .map(|e| e.id.ordinal as f64)
            .collect();
        let share_ys: Vec<f64> = report.share_spectrum.iter().map(|e| e.k_gva).collect();
        let share_model = match fit_ols(&share_xs, &share_ys) {
            Ok(model) => model,
            Err(e) => return fail(e.to_string()),
        };
        let share_svg = match render_share_svg(&report.share_spectrum, &share_model) {
            Ok(svg) => svg,
            Err(e) => return fail(e.to_string()),
        };
        let irr_svg = match render_irregularity_svg(&report.irregularities, config.tau) {
            Ok(svg) => svg,
            Err(e) => return fail(e.to_string()),
        };
        files.push((out_dir.join("scree.svg"), scree_svg));
        files.push((out_dir.join("kgva.svg"), share_svg));
        files.push((out_dir.join("kirr.svg"), irr_svg));
    }
    for (path, content) in &files {
        if let Err(e) = std::fs::write(path, content) {
            return fail(format!("cannot write '{}': {e}", path.display()));
        }
    }

    let flagged: Vec<_> = report
        .irregularities
        .iter()
        .filter(|e| e.flagged)
        .collect();
    if flagged.is_empty() {
        println!("none flagged");
    } else {
        for entry in flagged {
            println!("{}: k_irr = {:.4}", entry.id.slug, entry.k_irr);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_export(args: &ExportArgs) -> ExitCode {
    let csv = write_accounts_csv(&reference_table1(), b';');
    match &args.out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                if !Path::new(parent).exists() {
                    if let Err(e) = std::fs::create_dir_all(parent) {
                        return fail(format!("cannot create '{}': {e}", parent.display()));
                    }
                }
            }
            if let Err(e) = std::fs::write(path, csv) {
                return fail(format!("cannot write '{}': {e}", path.display()));
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{csv}");
            ExitCode::SUCCESS
        }
    }
}
