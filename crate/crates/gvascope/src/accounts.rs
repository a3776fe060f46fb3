//! Production-account panels: parsing, validation, and the built-in
//! reference dataset.
//!
//! A panel is a collection of per-industry, per-year records pairing gross
//! value added (GVA) with output at basic prices (OBP), both in billions of
//! currency units. Input is delimited text with a header row; the delimiter
//! is auto-detected and numerals are accepted with either a decimal point
//! or a decimal comma (see [`DecimalPolicy`]).
//!
//! Two ingestion paths exist:
//!
//! - [`parse_accounts_csv`] is strict: any violated record invariant is an
//!   error carrying the offending row number.
//! - [`parse_accounts_csv_lenient`] keeps structurally parseable records
//!   even when invariants fail, so that [`validate_panel`] can report every
//!   violation as data rather than aborting on the first one.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifies an industry within a panel: a 1-based ordinal (the row index
/// of the source table) plus a slug derived from the industry name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndustryId {
    pub ordinal: u32,
    pub slug: String,
}

impl IndustryId {
    pub fn new(ordinal: u32, slug: impl Into<String>) -> Self {
        Self {
            ordinal,
            slug: slug.into(),
        }
    }
}

impl fmt::Display for IndustryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.ordinal, self.slug)
    }
}

/// One industry-year row of a production account.
///
/// Invariants (enforced by [`parse_accounts_csv`], reported by
/// [`validate_panel`]): `gva > 0`, `obp > 0`, and `gva <= obp`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndustryRecord {
    pub id: IndustryId,
    pub name: String,
    pub year: i32,
    /// Gross value added, billions of currency units.
    pub gva: f64,
    /// Output at basic prices, billions of currency units.
    pub obp: f64,
}

/// Validated collection of records indexed by industry and year.
///
/// Immutable after construction; safe to share read-only across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct AccountsPanel {
    records: Vec<IndustryRecord>,
    years: Vec<i32>,
    industries: Vec<IndustryId>,
}

impl AccountsPanel {
    /// Builds a panel from records without checking invariants. Derived
    /// year and industry lists are sorted and deduplicated; record order
    /// is preserved. Use [`validate_panel`] to obtain violations.
    pub fn from_records(records: Vec<IndustryRecord>) -> Self {
        let mut years: Vec<i32> = records.iter().map(|r| r.year).collect();
        years.sort_unstable();
        years.dedup();
        let mut industries: Vec<IndustryId> = records.iter().map(|r| r.id.clone()).collect();
        industries.sort();
        industries.dedup();
        Self {
            records,
            years,
            industries,
        }
    }

    pub fn records(&self) -> &[IndustryRecord] {
        &self.records
    }

    /// Distinct years, ascending.
    pub fn years(&self) -> &[i32] {
        &self.years
    }

    /// Distinct industry ids, ordered by ordinal.
    pub fn industries(&self) -> &[IndustryId] {
        &self.industries
    }

    pub fn has_year(&self, year: i32) -> bool {
        self.years.binary_search(&year).is_ok()
    }

    /// Records for one year, ordered by industry ordinal.
    pub fn records_for_year(&self, year: i32) -> Vec<&IndustryRecord> {
        let mut rows: Vec<&IndustryRecord> =
            self.records.iter().filter(|r| r.year == year).collect();
        rows.sort_by_key(|r| r.id.ordinal);
        rows
    }

    pub fn record(&self, ordinal: u32, year: i32) -> Option<&IndustryRecord> {
        self.records
            .iter()
            .find(|r| r.id.ordinal == ordinal && r.year == year)
    }
}

/// Normalizes an industry name into a slug: lowercase ASCII letters and
/// digits, with every other run of characters collapsed to one hyphen.
/// Returns an empty string when the name has no ASCII alphanumerics.
pub fn slug_from_name(name: &str) -> String {
    let mut slug = String::with_capacity(name.len());
    let mut pending_sep = false;
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            if pending_sep && !slug.is_empty() {
                slug.push('-');
            }
            pending_sep = false;
            slug.push(ch.to_ascii_lowercase());
        } else {
            pending_sep = true;
        }
    }
    slug
}

// ---------------------------------------------------------------------------
// Numeral parsing
// ---------------------------------------------------------------------------

/// Decimal-mark policy for numerals in delimited input.
///
/// `Auto` accepts both `0.15` and `0,15` style numerals. Ambiguity with
/// thousands separators is resolved by rejecting any numeral containing
/// more than one comma or point in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecimalPolicy {
    /// Decimal point only; commas are rejected.
    Point,
    /// Decimal comma only; points are rejected.
    Comma,
    /// Either mark, at most one occurrence of either.
    #[default]
    Auto,
}

impl DecimalPolicy {
    /// Parses a numeral under this policy. An optional exponent suffix
    /// (`1.5e3`) is accepted; the separator rules apply to the mantissa.
    pub fn parse(self, text: &str) -> Option<f64> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return None;
        }
        let mantissa_end = trimmed
            .find(['e', 'E'])
            .unwrap_or(trimmed.len());
        let mantissa = &trimmed[..mantissa_end];
        let mut points = 0usize;
        let mut commas = 0usize;
        for (i, ch) in mantissa.char_indices() {
            match ch {
                '0'..='9' => {}
                '.' => points += 1,
                ',' => commas += 1,
                '+' | '-' if i == 0 => {}
                _ => return None,
            }
        }
        let ok = match self {
            DecimalPolicy::Point => commas == 0 && points <= 1,
            DecimalPolicy::Comma => points == 0 && commas <= 1,
            DecimalPolicy::Auto => points + commas <= 1,
        };
        if !ok {
            return None;
        }
        let normalized = trimmed.replace(',', ".");
        normalized.parse::<f64>().ok().filter(|v| v.is_finite())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Options for [`parse_accounts_csv`].
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Field delimiter. `None` auto-detects among `;`, `,`, and tab by
    /// checking which one splits the header into the required columns.
    pub delimiter: Option<u8>,
    pub decimal: DecimalPolicy,
    /// Year applied to rows when the input has no `year` column.
    pub default_year: Option<i32>,
}

const DELIMITER_CANDIDATES: [u8; 3] = [b';', b',', b'\t'];

#[derive(Debug, Clone, Copy)]
struct ColumnMap {
    ordinal: Option<usize>,
    industry: usize,
    name: Option<usize>,
    year: Option<usize>,
    gva: usize,
    obp: usize,
}

fn map_header(fields: &[String]) -> std::result::Result<ColumnMap, Vec<String>> {
    let find = |names: &[&str]| {
        fields
            .iter()
            .position(|f| names.contains(&f.trim().to_ascii_lowercase().as_str()))
    };
    let industry = find(&["industry"]);
    let gva = find(&["gva"]);
    let obp = find(&["obp"]);
    let mut missing = Vec::new();
    if industry.is_none() {
        missing.push("industry".to_string());
    }
    if gva.is_none() {
        missing.push("gva".to_string());
    }
    if obp.is_none() {
        missing.push("obp".to_string());
    }
    if !missing.is_empty() {
        return Err(missing);
    }
    Ok(ColumnMap {
        ordinal: find(&["ordinal", "n"]),
        industry: industry.unwrap(),
        name: find(&["name"]),
        year: find(&["year"]),
        gva: gva.unwrap(),
        obp: obp.unwrap(),
    })
}

fn header_fields(text: &str, delimiter: u8) -> Vec<String> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(text.as_bytes());
    match reader.headers() {
        Ok(h) => h.iter().map(|s| s.to_string()).collect(),
        Err(_) => Vec::new(),
    }
}

fn detect_delimiter(text: &str) -> std::result::Result<(u8, ColumnMap), Vec<String>> {
    let mut best_missing: Option<Vec<String>> = None;
    for &delim in &DELIMITER_CANDIDATES {
        match map_header(&header_fields(text, delim)) {
            Ok(map) => return Ok((delim, map)),
            Err(missing) => {
                let better = best_missing
                    .as_ref()
                    .map(|b| missing.len() < b.len())
                    .unwrap_or(true);
                if better {
                    best_missing = Some(missing);
                }
            }
        }
    }
    Err(best_missing.unwrap_or_default())
}

struct ParsedRow {
    row: usize,
    record: IndustryRecord,
}

/// Structural parse: header mapping, numeral and year parsing, ordinal
/// assignment. Record invariants are not checked here.
fn parse_rows(bytes: &[u8], options: &ParseOptions) -> Result<Vec<ParsedRow>> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::InvalidUtf8)?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);

    let (delimiter, columns) = match options.delimiter {
        Some(d) => {
            let map = map_header(&header_fields(text, d))
                .map_err(|missing| Error::MalformedHeader { missing })?;
            (d, map)
        }
        None => detect_delimiter(text).map_err(|missing| Error::MalformedHeader { missing })?,
    };

    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let numeral = |row: usize, column: &str, value: &str| -> Result<f64> {
        options
            .decimal
            .parse(value)
            .ok_or_else(|| Error::Numeral {
                row,
                column: column.to_string(),
                value: value.to_string(),
            })
    };

    let mut rows = Vec::new();
    // slug -> ordinal of first appearance, for files without an ordinal column
    let mut auto_ordinals: HashMap<String, u32> = HashMap::new();

    for (idx, result) in reader.records().enumerate() {
        let row = idx + 1;
        let record = result.map_err(|_| Error::Numeral {
            row,
            column: "<record>".to_string(),
            value: "<unreadable>".to_string(),
        })?;
        let field = |i: usize| record.get(i).unwrap_or("");

        let raw_name = field(columns.industry).to_string();
        let slug = slug_from_name(&raw_name);
        let name = columns
            .name
            .map(|i| field(i).to_string())
            .filter(|n| !n.is_empty())
            .unwrap_or(raw_name);

        let year = match columns.year {
            Some(i) => field(i)
                .trim()
                .parse::<i32>()
                .map_err(|_| Error::Numeral {
                    row,
                    column: "year".to_string(),
                    value: field(i).to_string(),
                })?,
            None => options.default_year.ok_or(Error::MissingYear { row })?,
        };

        let ordinal = match columns.ordinal {
            Some(i) => field(i)
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Numeral {
                    row,
                    column: "ordinal".to_string(),
                    value: field(i).to_string(),
                })?,
            None => {
                // i-th distinct industry gets ordinal i; repeated industries
                // (multi-year files) keep their first ordinal
                let next = auto_ordinals.len() as u32 + 1;
                *auto_ordinals.entry(slug.clone()).or_insert(next)
            }
        };

        let gva = numeral(row, "gva", field(columns.gva))?;
        let obp = numeral(row, "obp", field(columns.obp))?;

        rows.push(ParsedRow {
            row,
            record: IndustryRecord {
                id: IndustryId::new(ordinal, slug),
                name,
                year,
                gva,
                obp,
            },
        });
    }
    Ok(rows)
}

/// Parses and validates a production-account panel from delimited text.
///
/// The header row must name at least `industry`, `gva`, and `obp` columns
/// (matched case-insensitively after trimming); `year`, `name`, and
/// `ordinal`/`n` columns are optional. Any violated record invariant,
/// duplicate (industry, year) pair, or id conflict is an error carrying
/// the 1-based data-row number.
pub fn parse_accounts_csv(bytes: &[u8], options: &ParseOptions) -> Result<AccountsPanel> {
    let rows = parse_rows(bytes, options)?;
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut seen: HashMap<(String, i32), usize> = HashMap::new();
    let mut ordinal_to_slug: HashMap<u32, String> = HashMap::new();
    let mut slug_to_ordinal: HashMap<String, u32> = HashMap::new();

    for parsed in &rows {
        let rec = &parsed.record;
        let row = parsed.row;
        let fail = |rule: Rule| Err(Error::InvalidRecord { row, rule });

        if rec.id.ordinal < 1 {
            return fail(Rule::OrdinalPositive);
        }
        if !slug_is_valid(&rec.id.slug) {
            return fail(Rule::SlugValid);
        }
        if !(rec.gva > 0.0) {
            return fail(Rule::GvaPositive);
        }
        if !(rec.obp > 0.0) {
            return fail(Rule::ObpPositive);
        }
        if !(rec.gva <= rec.obp) {
            return fail(Rule::GvaLeObp);
        }
        if seen
            .insert((rec.id.slug.clone(), rec.year), row)
            .is_some()
        {
            return Err(Error::DuplicateRecord {
                row,
                slug: rec.id.slug.clone(),
                year: rec.year,
            });
        }
        match ordinal_to_slug.get(&rec.id.ordinal) {
            Some(slug) if slug != &rec.id.slug => return fail(Rule::OrdinalUnique),
            _ => {
                ordinal_to_slug.insert(rec.id.ordinal, rec.id.slug.clone());
            }
        }
        match slug_to_ordinal.get(&rec.id.slug) {
            Some(ord) if *ord != rec.id.ordinal => return fail(Rule::IdConflict),
            _ => {
                slug_to_ordinal.insert(rec.id.slug.clone(), rec.id.ordinal);
            }
        }
    }

    Ok(AccountsPanel::from_records(
        rows.into_iter().map(|p| p.record).collect(),
    ))
}

/// Like [`parse_accounts_csv`] but keeps invariant-violating records in
/// the returned panel. Structural failures (bad header, unparseable
/// numerals, missing year) are still errors.
pub fn parse_accounts_csv_lenient(bytes: &[u8], options: &ParseOptions) -> Result<AccountsPanel> {
    let rows = parse_rows(bytes, options)?;
    Ok(AccountsPanel::from_records(
        rows.into_iter().map(|p| p.record).collect(),
    ))
}

/// Serializes a panel as delimited text with columns
/// `ordinal{d}industry{d}year{d}gva{d}obp`, decimal points, and one data
/// row per record in stored order. Re-parsing the output yields an equal
/// panel.
pub fn write_accounts_csv(panel: &AccountsPanel, delimiter: u8) -> String {
    let mut writer = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(Vec::new());
    writer
        .write_record(["ordinal", "industry", "year", "gva", "obp"])
        .expect("in-memory write");
    for rec in panel.records() {
        writer
            .write_record([
                rec.id.ordinal.to_string(),
                rec.name.clone(),
                rec.year.to_string(),
                format_value(rec.gva),
                format_value(rec.obp),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8 output")
}

/// Shortest decimal representation that round-trips through `f64` parsing.
fn format_value(v: f64) -> String {
    let mut s = format!("{v}");
    // `Display` drops the fractional part of whole numbers; keep it that
    // way (Table 1 style), but make sure "1e300"-like output stays parseable
    // by the numeral grammar, which it is (exponent suffix accepted).
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Identifier of a violated invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    GvaPositive,
    ObpPositive,
    GvaLeObp,
    OrdinalPositive,
    SlugValid,
    DuplicateRecord,
    OrdinalUnique,
    IdConflict,
    PanelNonEmpty,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::GvaPositive => "gva-positive",
            Rule::ObpPositive => "obp-positive",
            Rule::GvaLeObp => "gva-le-obp",
            Rule::OrdinalPositive => "ordinal-positive",
            Rule::SlugValid => "slug-valid",
            Rule::DuplicateRecord => "duplicate-record",
            Rule::OrdinalUnique => "ordinal-unique",
            Rule::IdConflict => "industry-id-conflict",
            Rule::PanelNonEmpty => "panel-non-empty",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One violated invariant, as data. Panel-level violations carry no
/// industry or year.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub rule: Rule,
    pub industry: Option<IndustryId>,
    pub year: Option<i32>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if let Some(id) = &self.industry {
            write!(f, " industry={}", id.slug)?;
        }
        if let Some(year) = self.year {
            write!(f, " year={year}")?;
        }
        Ok(())
    }
}

fn slug_is_valid(slug: &str) -> bool {
    !slug.is_empty()
        && slug
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}

/// Checks every panel invariant and reports violations as data. An empty
/// report means the panel is valid.
pub fn validate_panel(panel: &AccountsPanel) -> Vec<Violation> {
    let mut violations = Vec::new();
    if panel.records().is_empty() {
        violations.push(Violation {
            rule: Rule::PanelNonEmpty,
            industry: None,
            year: None,
        });
        return violations;
    }

    let mut seen: HashMap<(String, i32), ()> = HashMap::new();
    let mut ordinal_to_slug: HashMap<u32, String> = HashMap::new();
    let mut slug_to_ordinal: HashMap<String, u32> = HashMap::new();

    for rec in panel.records() {
        let mut push = |rule: Rule| {
            violations.push(Violation {
                rule,
                industry: Some(rec.id.clone()),
                year: Some(rec.year),
            })
        };
        if rec.id.ordinal < 1 {
            push(Rule::OrdinalPositive);
        }
        if !slug_is_valid(&rec.id.slug) {
            push(Rule::SlugValid);
        }
        if !(rec.gva > 0.0) {
            push(Rule::GvaPositive);
        }
        if !(rec.obp > 0.0) {
            push(Rule::ObpPositive);
        }
        if !(rec.gva <= rec.obp) {
            push(Rule::GvaLeObp);
        }
        if seen
            .insert((rec.id.slug.clone(), rec.year), ())
            .is_some()
        {
            push(Rule::DuplicateRecord);
        }
        match ordinal_to_slug.get(&rec.id.ordinal) {
            Some(slug) if slug != &rec.id.slug => push(Rule::OrdinalUnique),
            _ => {
                ordinal_to_slug.insert(rec.id.ordinal, rec.id.slug.clone());
            }
        }
        match slug_to_ordinal.get(&rec.id.slug) {
            Some(ord) if *ord != rec.id.ordinal => push(Rule::IdConflict),
            _ => {
                slug_to_ordinal.insert(rec.id.slug.clone(), rec.id.ordinal);
            }
        }
    }
    violations
}

// ---------------------------------------------------------------------------
// Reference dataset
// ---------------------------------------------------------------------------

/// Reference year of the built-in production account.
pub const REFERENCE_YEAR: i32 = 2022;

const REFERENCE_ACCOUNTS: [(&str, f64, f64); 19] = [
    ("Education", 3724.0, 4712.0),
    ("Real estate activities", 11711.0, 14831.0),
    ("Mining and quarrying", 15031.0, 23265.0),
    ("Financial and insurance activities", 5384.0, 7621.0),
    (
        "Public administration and defence; compulsory social security",
        8404.0,
        12343.0,
    ),
    ("Administrative and support service activities", 2214.0, 3323.0),
    ("Human health and social work activities", 3958.0, 6051.0),
    ("Arts, entertainment and recreation", 1066.0, 1727.0),
    (
        "Professional, scientific and technical activities",
        5256.0,
        9034.0,
    ),
    (
        "Wholesale and retail trade; repair of motor vehicles and motorcycles",
        15270.0,
        26688.0,
    ),
    ("Other services", 627.0, 1369.0),
    ("Agriculture, forestry and fishing", 4974.0, 9603.0),
    ("Information and communication", 3235.0, 6314.0),
    ("Accommodation and food service activities", 955.0, 2097.0),
    ("Transportation and storage", 7070.0, 16176.0),
    ("Construction", 5964.0, 14529.0),
    (
        "Water supply; sewerage, waste management and remediation activities",
        657.0,
        1999.0,
    ),
    (
        "Electricity, gas, steam and air conditioning supply",
        2866.0,
        9704.0,
    ),
    ("Manufacturing", 18926.0, 68530.0),
];

/// The built-in 19-industry production account (single year,
/// [`REFERENCE_YEAR`]).
pub fn reference_table1() -> AccountsPanel {
    let records = REFERENCE_ACCOUNTS
        .iter()
        .enumerate()
        .map(|(i, &(name, gva, obp))| IndustryRecord {
            id: IndustryId::new(i as u32 + 1, slug_from_name(name)),
            name: name.to_string(),
            year: REFERENCE_YEAR,
            gva,
            obp,
        })
        .collect();
    AccountsPanel::from_records(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<AccountsPanel> {
        parse_accounts_csv(text.as_bytes(), &ParseOptions::default())
    }

    #[test]
    fn parses_semicolon_row() {
        let panel = parse("industry;year;gva;obp\nEducation;2022;3724;4712\n").unwrap();
        let rec = &panel.records()[0];
        assert_eq!(rec.gva, 3724.0);
        assert_eq!(rec.obp, 4712.0);
        assert_eq!(rec.name, "Education");
        assert_eq!(rec.id, IndustryId::new(1, "education"));
        assert_eq!(rec.year, 2022);
    }

    #[test]
    fn accepts_gva_equal_obp_boundary() {
        let panel = parse("industry;year;gva;obp\nX;2022;1;1\n").unwrap();
        assert_eq!(panel.records()[0].gva, 1.0);
        assert_eq!(panel.records()[0].obp, 1.0);
    }

    #[test]
    fn auto_policy_accepts_decimal_comma() {
        let panel = parse("industry;year;gva;obp\nY;2022;0,15;1,5\n").unwrap();
        assert_eq!(panel.records()[0].gva, 0.15);
        assert_eq!(panel.records()[0].obp, 1.5);
    }

    #[test]
    fn detects_comma_delimiter() {
        let panel = parse("industry,year,gva,obp\nEducation,2022,3724,4712\n").unwrap();
        assert_eq!(panel.records()[0].gva, 3724.0);
    }

    #[test]
    fn header_names_match_case_insensitively() {
        let panel = parse("Industry; Year ;GVA;OBP\nX;2022;1;2\n").unwrap();
        assert_eq!(panel.records()[0].obp, 2.0);
    }

    #[test]
    fn missing_columns_reported() {
        let err = parse("industry;year;gva\nX;2022;1\n").unwrap_err();
        assert_eq!(
            err,
            Error::MalformedHeader {
                missing: vec!["obp".to_string()]
            }
        );
    }

    #[test]
    fn unparseable_numeral_reports_row_and_column() {
        let err = parse("industry;year;gva;obp\nX;2022;1;2\nY;2022;abc;2\n").unwrap_err();
        assert_eq!(
            err,
            Error::Numeral {
                row: 2,
                column: "gva".to_string(),
                value: "abc".to_string()
            }
        );
    }

    #[test]
    fn thousands_separator_ambiguity_rejected() {
        let err = parse("industry;year;gva;obp\nX;2022;1,234.5;2000\n").unwrap_err();
        assert!(matches!(err, Error::Numeral { row: 1, .. }));
    }

    #[test]
    fn strict_parse_rejects_gva_above_obp_with_row() {
        let err = parse("industry;year;gva;obp\nX;2022;1;2\nY;2022;10;5\n").unwrap_err();
        assert_eq!(
            err,
            Error::InvalidRecord {
                row: 2,
                rule: Rule::GvaLeObp
            }
        );
    }

    #[test]
    fn strict_parse_rejects_duplicate_pair() {
        let err = parse("industry;year;gva;obp\nX;2022;1;2\nX;2022;1;3\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateRecord { row: 2, .. }));
    }

    #[test]
    fn missing_year_column_without_default_is_error() {
        let err = parse("industry;gva;obp\nX;1;2\n").unwrap_err();
        assert_eq!(err, Error::MissingYear { row: 1 });
    }

    #[test]
    fn default_year_option_fills_missing_column() {
        let options = ParseOptions {
            default_year: Some(2022),
            ..ParseOptions::default()
        };
        let panel = parse_accounts_csv(b"industry;gva;obp\nX;1;2\n", &options).unwrap();
        assert_eq!(panel.records()[0].year, 2022);
    }

    #[test]
    fn explicit_ordinal_column_used() {
        let panel = parse("n;industry;year;gva;obp\n7;X;2022;1;2\n").unwrap();
        assert_eq!(panel.records()[0].id.ordinal, 7);
    }

    #[test]
    fn rows_receive_sequential_ordinals() {
        let panel = parse("industry;year;gva;obp\nA;2022;1;2\nB;2022;1;2\nC;2022;1;2\n").unwrap();
        let ordinals: Vec<u32> = panel.records().iter().map(|r| r.id.ordinal).collect();
        assert_eq!(ordinals, vec![1, 2, 3]);
    }

    #[test]
    fn repeated_industry_keeps_ordinal_across_years() {
        let panel = parse("industry;year;gva;obp\nA;2019;1;2\nB;2019;1;2\nA;2020;1;2\n").unwrap();
        assert_eq!(panel.records()[2].id.ordinal, 1);
        assert_eq!(panel.industries().len(), 2);
        assert_eq!(panel.years(), &[2019, 2020]);
    }

    #[test]
    fn point_policy_rejects_comma() {
        let policy = DecimalPolicy::Point;
        assert_eq!(policy.parse("0.15"), Some(0.15));
        assert_eq!(policy.parse("0,15"), None);
    }

    #[test]
    fn comma_policy_rejects_point() {
        let policy = DecimalPolicy::Comma;
        assert_eq!(policy.parse("0,15"), Some(0.15));
        assert_eq!(policy.parse("0.15"), None);
    }

    #[test]
    fn exponent_suffix_parses() {
        assert_eq!(DecimalPolicy::Auto.parse("1,5e3"), Some(1500.0));
        assert_eq!(DecimalPolicy::Auto.parse("2e-3"), Some(0.002));
    }

    #[test]
    fn reference_table_matches_source_rows() {
        let panel = reference_table1();
        assert_eq!(panel.industries().len(), 19);
        assert_eq!(panel.years(), &[2022]);
        let mining = panel.record(3, 2022).unwrap();
        assert_eq!(mining.name, "Mining and quarrying");
        assert_eq!(mining.gva, 15031.0);
        assert_eq!(mining.obp, 23265.0);
        let manufacturing = panel.record(19, 2022).unwrap();
        assert_eq!(manufacturing.gva, 18926.0);
        assert_eq!(manufacturing.obp, 68530.0);
    }

    #[test]
    fn reference_table_validates_clean() {
        assert!(validate_panel(&reference_table1()).is_empty());
    }

    #[test]
    fn gva_equal_obp_is_legal_in_validation() {
        let panel = AccountsPanel::from_records(vec![IndustryRecord {
            id: IndustryId::new(1, "x"),
            name: "X".to_string(),
            year: 2022,
            gva: 5.0,
            obp: 5.0,
        }]);
        assert!(validate_panel(&panel).is_empty());
    }

    #[test]
    fn gva_above_obp_yields_single_violation() {
        let panel = AccountsPanel::from_records(vec![IndustryRecord {
            id: IndustryId::new(1, "x"),
            name: "X".to_string(),
            year: 2022,
            gva: 10.0,
            obp: 5.0,
        }]);
        let report = validate_panel(&panel);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].rule, Rule::GvaLeObp);
        assert_eq!(report[0].industry.as_ref().unwrap().slug, "x");
        assert_eq!(report[0].year, Some(2022));
    }

    #[test]
    fn empty_panel_reports_panel_rule() {
        let report = validate_panel(&AccountsPanel::from_records(Vec::new()));
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].rule, Rule::PanelNonEmpty);
    }

    #[test]
    fn slug_normalization() {
        assert_eq!(
            slug_from_name("Wholesale and retail trade; repair of motor vehicles"),
            "wholesale-and-retail-trade-repair-of-motor-vehicles"
        );
        assert_eq!(slug_from_name("  Mining & quarrying  "), "mining-quarrying");
        assert_eq!(slug_from_name("---"), "");
    }

    #[test]
    fn csv_round_trip_preserves_reference_panel() {
        let panel = reference_table1();
        let text = write_accounts_csv(&panel, b';');
        let reparsed = parse(&text).unwrap();
        assert_eq!(reparsed, panel);
    }
}
