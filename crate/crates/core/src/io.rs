//! Dataset loading and result serialization.
//!
//! Two input formats are supported: FIMI transaction files (one
//! transaction per line, whitespace-separated item ids) and dense 0/1 text.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bitmatrix::{AttributeSet, BooleanMatrix, ObjectSet};
use crate::error::{BmfError, Result};
use crate::factorization::Factorization;

/// First item id of a FIMI file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IndexBase {
    Zero,
    #[default]
    One,
}

impl IndexBase {
    pub fn offset(self) -> usize {
        match self {
            IndexBase::Zero => 0,
            IndexBase::One => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FimiOptions {
    pub index_base: IndexBase,
    /// Declared attribute count, for files whose highest items never occur.
    pub n_cols: Option<usize>,
}

pub fn load_fimi(path: impl AsRef<Path>, options: FimiOptions) -> Result<BooleanMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| BmfError::io(path, e))?;
    parse_fimi(&text, &path.display().to_string(), options)
}

/// Parses FIMI text; `origin` names the source in error messages.
pub fn parse_fimi(text: &str, origin: &str, options: FimiOptions) -> Result<BooleanMatrix> {
    // blank lines are zero rows, so only a file without lines is empty
    if text.is_empty() {
        return Err(BmfError::EmptyInput(origin.to_string()));
    }
    let offset = options.index_base.offset();
    let parse_error = |line: usize, message: String| BmfError::Parse {
        path: origin.to_string(),
        line,
        message,
    };

    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut width = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let mut items = Vec::new();
        for token in line.split_whitespace() {
            let id: usize = token
                .parse()
                .map_err(|_| parse_error(lineno + 1, format!("invalid item id {token:?}")))?;
            let col = id.checked_sub(offset).ok_or_else(|| {
                parse_error(
                    lineno + 1,
                    format!("item id {id} below index base {offset}"),
                )
            })?;
            width = width.max(col + 1);
            items.push(col);
        }
        rows.push(items);
    }

    let cols = match options.n_cols {
        Some(n) if n < width => {
            return Err(BmfError::DimensionMismatch(format!(
                "{origin}: declared {n} attributes but item ids reach {width}"
            )))
        }
        Some(n) => n,
        None => width,
    };
    BooleanMatrix::from_index_rows(cols, rows)
}

pub fn load_dense(path: impl AsRef<Path>) -> Result<BooleanMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| BmfError::io(path, e))?;
    parse_dense(&text, &path.display().to_string())
}

/// Parses rows of `0`/`1` characters, optionally separated by spaces,
/// tabs or commas. Blank lines are ignored; all rows must have one width.
pub fn parse_dense(text: &str, origin: &str) -> Result<BooleanMatrix> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(line.len());
        for ch in line.chars() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                ' ' | '\t' | ',' => {}
                other => {
                    return Err(BmfError::Parse {
                        path: origin.to_string(),
                        line: lineno + 1,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(BmfError::Parse {
                    path: origin.to_string(),
                    line: lineno + 1,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(BmfError::EmptyInput(origin.to_string()));
    }
    let cols = rows[0].len();
    Ok(BooleanMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

pub fn render_dense(matrix: &BooleanMatrix) -> String {
    let mut out = String::with_capacity(matrix.rows() * (matrix.cols() + 1));
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            out.push(if matrix.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn write_dense(matrix: &BooleanMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_dense(matrix)).map_err(|e| BmfError::io(path, e))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

/// Serialized form of a factorization run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationReport {
    pub k: usize,
    pub error: u64,
    pub total_ones: u64,
    pub coverage_per_factor: Vec<u64>,
    pub factors: Vec<FactorRecord>,
    pub wall_ms: f64,
    pub cell_appends: u64,
}

impl FactorizationReport {
    pub fn new(f: &Factorization, wall_ms: f64) -> Self {
        FactorizationReport {
            k: f.k(),
            error: f.error,
            total_ones: f.total_ones,
            coverage_per_factor: f.new_coverage.clone(),
            factors: f
                .factors
                .iter()
                .map(|c| FactorRecord {
                    extent: c.extent.clone(),
                    intent: c.intent.clone(),
                })
                .collect(),
            wall_ms,
            cell_appends: f.stats.cell_appends,
        }
    }
}

fn join(items: &[u32]) -> String {
    let mut s = String::new();
    for (p, x) in items.iter().enumerate() {
        if p > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s
}

/// One `extent | intent` line per factor, indices ascending.
pub fn render_factorization(
    f: &Factorization,
    format: OutputFormat,
    wall_ms: f64,
) -> Result<String> {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for c in &f.factors {
                let _ = writeln!(
                    out,
                    "{} | {}",
                    join(c.extent.as_slice()),
                    join(c.intent.as_slice())
                );
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&FactorizationReport::new(f, wall_ms))?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn write_factorization(
    f: &Factorization,
    format: OutputFormat,
    path: impl AsRef<Path>,
    wall_ms: f64,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_factorization(f, format, wall_ms)?).map_err(|e| BmfError::io(path, e))
}

/// Shape statistics of a dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub name: String,
    pub objects: usize,
    pub attributes: usize,
    pub density_percent: f64,
    pub ones: u64,
    pub expected_concepts: Option<u64>,
}

impl DatasetMeta {
    pub fn of(name: impl Into<String>, matrix: &BooleanMatrix) -> Self {
        DatasetMeta {
            name: name.into(),
            objects: matrix.rows(),
            attributes: matrix.cols(),
            density_percent: 100.0 * matrix.density(),
            ones: matrix.ones_count(),
            expected_concepts: None,
        }
    }

    /// Same shape as `reference`, density within 0.01 percentage points.
    pub fn matches(&self, reference: &ReferenceDataset) -> bool {
        self.objects == reference.objects
            && self.attributes == reference.attributes
            && (self.density_percent - reference.density_percent).abs() <= 0.01
    }
}

/// Published characteristics of a benchmark dataset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceDataset {
    pub name: &'static str,
    pub objects: usize,
    pub attributes: usize,
    pub density_percent: f64,
    pub concepts: u64,
}

const fn reference(
    name: &'static str,
    objects: usize,
    attributes: usize,
    density_percent: f64,
    concepts: u64,
) -> ReferenceDataset {
    ReferenceDataset {
        name,
        objects,
        attributes,
        density_percent,
        concepts,
    }
}

pub const REFERENCE_DATASETS: &[ReferenceDataset] = &[
    reference("advertisement", 3_279, 1_557, 0.88, 9_192),
    reference("americas_large", 10_127, 3_485, 52.50, 36_992),
    reference("americas_small", 3_477, 1_587, 1.91, 2_764),
    reference("apj", 2_044, 1_164, 0.29, 798),
    reference("customer", 10_961, 277, 1.50, 47_848),
    reference("dna", 4_590, 392, 1.47, 4_483),
    reference("mushroom", 8_124, 119, 17.65, 221_525),
    reference("nfs", 12_841, 4_894, 89.82, 24_303_286),
    reference("T10I4D100K", 100_000, 1_000, 1.01, 2_347_376),
    reference("ord5bike_day", 731, 58, 35.18, 81_277),
    reference("nom20magic", 19_020, 202, 5.45, 1_376_212),
    reference("nom15magic", 19_020, 152, 7.24, 1_149_717),
    reference("inter6shuttle", 43_500, 106, 43.44, 381_636),
    reference("inter10crx", 653, 139, 44.10, 10_199_818),
];

pub fn find_reference(name: &str) -> Option<&'static ReferenceDataset> {
    REFERENCE_DATASETS
        .iter()
        .find(|r| r.name.eq_ignore_ascii_case(name))
}
