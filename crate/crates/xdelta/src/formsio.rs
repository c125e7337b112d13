//! Cusp-form basis files.
//!
//! ```text
//! # provenance comments
//! level 21
//! delta 1 8 13 20
//! genus 3
//! precision 10
//! form 0 1 -1 1 -1 -2 -1 -1 3 1 2
//! ...
//! ```
//!
//! Headers come in exactly this order, each once. Every `form` line holds
//! `a₀ … a_P` as integers or `p/q`, with `a₀ = 0`. Fields are separated by
//! single spaces and the file ends with a newline.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;
use xdelta_core::arith::{ArithError, SubgroupDelta};
use xdelta_core::canonical::{CanonicalBasis, CanonicalError, Mode};
use xdelta_core::modcurve::{self, CurveError};
use xdelta_core::qlinalg::QSeries;

const HEADERS: [&str; 4] = ["level", "delta", "genus", "precision"];

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate header `{key}`")]
    DuplicateHeader { line: usize, key: &'static str },
    #[error("line {line}: expected header `{expected}`")]
    HeaderOrder { line: usize, expected: &'static str },
    #[error("line {line}: coefficient `{token}` is not an exact rational")]
    BadCoefficient { line: usize, token: String },
    #[error("line {line}: expected {expected} coefficients (a0..a{precision}), got {got}", precision = expected - 1)]
    RowLength {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: constant term must be 0 for a cusp form")]
    NotCuspForm { line: usize },
    #[error("declared genus {declared} but {rows} form rows")]
    RowCount { declared: u64, rows: usize },
    #[error("declared genus {declared} but X_Δ({level}) has genus {computed}")]
    GenusMismatch {
        level: u64,
        declared: u64,
        computed: u64,
    },
    #[error("a forms file needs at least one form")]
    Empty,
    #[error("invalid delta: {0}")]
    Delta(#[from] ArithError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        source: Box<FormsError>,
    },
}

/// A validated basis of weight-2 cusp forms on one `X_Δ(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormsFile {
    comments: Vec<String>,
    delta: SubgroupDelta,
    genus: u64,
    precision: usize,
    rows: Vec<Vec<BigRational>>,
}

impl FormsFile {
    /// Builds a file from rows `a₀ … a_P`, checking every invariant.
    /// `comments` are stored without the leading `#`.
    pub fn new(
        delta: SubgroupDelta,
        precision: usize,
        rows: Vec<Vec<BigRational>>,
        comments: Vec<String>,
    ) -> Result<Self, FormsError> {
        if rows.is_empty() {
            return Err(FormsError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != precision + 1 {
                return Err(FormsError::RowLength {
                    line: i + 1,
                    expected: precision + 1,
                    got: row.len(),
                });
            }
            if !row[0].is_zero() {
                return Err(FormsError::NotCuspForm { line: i + 1 });
            }
        }
        let level = delta.level();
        let computed = modcurve::genus(level, &delta)?.genus;
        if computed != rows.len() as u64 {
            return Err(FormsError::GenusMismatch {
                level,
                declared: rows.len() as u64,
                computed,
            });
        }
        Ok(Self {
            comments,
            delta,
            genus: computed,
            precision,
            rows,
        })
    }

    pub fn level(&self) -> u64 {
        self.delta.level()
    }

    pub fn delta(&self) -> &SubgroupDelta {
        &self.delta
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn series(&self) -> Vec<QSeries> {
        self.rows
            .iter()
            .map(|r| QSeries::new(r.clone()).expect("rows are nonempty"))
            .collect()
    }

    pub fn to_basis(&self, mode: Mode) -> Result<CanonicalBasis, CanonicalError> {
        CanonicalBasis::new(self.delta.clone(), self.series(), mode)
    }
}

fn parse_coefficient(line: usize, token: &str) -> Result<BigRational, FormsError> {
    let bad = || FormsError::BadCoefficient {
        line,
        token: token.to_owned(),
    };
    let int = |s: &str| -> Result<BigInt, FormsError> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    match token.split_once('/') {
        None => Ok(BigRational::from_integer(int(token)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(p)?, q))
        }
    }
}

fn format_coefficient(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse(text: &str) -> Result<FormsFile, FormsError> {
    let line_count = text.lines().count();
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(FormsError::Malformed {
            line: line_count,
            reason: "missing trailing newline".into(),
        });
    }
    let mut comments = Vec::new();
    let mut headers: Vec<(usize, String)> = Vec::new();
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let malformed = |reason: &str| FormsError::Malformed {
            line,
            reason: reason.to_owned(),
        };
        if let Some(comment) = raw.strip_prefix('#') {
            comments.push(comment.to_owned());
            continue;
        }
        if raw.is_empty() {
            continue;
        }
        if raw.starts_with(' ') || raw.ends_with(' ') || raw.contains("  ") || raw.contains('\t') {
            return Err(malformed("fields must be separated by single spaces"));
        }
        let mut fields = raw.split(' ');
        let key = fields.next().unwrap_or_default();
        let values: Vec<&str> = fields.collect();
        if key == "form" {
            if headers.len() < HEADERS.len() {
                return Err(FormsError::HeaderOrder {
                    line,
                    expected: HEADERS[headers.len()],
                });
            }
            let row = values
                .iter()
                .map(|t| parse_coefficient(line, t))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((line, row));
            continue;
        }
        let Some(slot) = HEADERS.iter().position(|h| *h == key) else {
            return Err(malformed(&format!("unknown key `{key}`")));
        };
        if slot < headers.len() {
            return Err(FormsError::DuplicateHeader {
                line,
                key: HEADERS[slot],
            });
        }
        if slot != headers.len() || !rows.is_empty() {
            return Err(FormsError::HeaderOrder {
                line,
                expected: HEADERS.get(headers.len()).copied().unwrap_or("form"),
            });
        }
        if key != "delta" && values.len() != 1 {
            return Err(malformed(&format!("`{key}` takes one value")));
        }
        headers.push((line, values.join(" ")));
    }
    if headers.len() < HEADERS.len() {
        return Err(FormsError::HeaderOrder {
            line: line_count,
            expected: HEADERS[headers.len()],
        });
    }
    let number = |idx: usize| -> Result<u64, FormsError> {
        let (line, value) = &headers[idx];
        value.parse().map_err(|_| FormsError::Malformed {
            line: *line,
            reason: format!("`{}` must be a nonnegative integer", HEADERS[idx]),
        })
    };
    let level = number(0)?;
    let declared = number(2)?;
    let precision = number(3)? as usize;
    let residues = headers[1]
        .1
        .split(' ')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<u64>, _>>()
        .map_err(|_| FormsError::Malformed {
            line: headers[1].0,
            reason: "delta residues must be integers".into(),
        })?;
    let delta = SubgroupDelta::from_residues(level, &residues)?;
    for (line, row) in &rows {
        if row.len() != precision + 1 {
            return Err(FormsError::RowLength {
                line: *line,
                expected: precision + 1,
                got: row.len(),
            });
        }
        if !row[0].is_zero() {
            return Err(FormsError::NotCuspForm { line: *line });
        }
    }
    if declared != rows.len() as u64 {
        return Err(FormsError::RowCount {
            declared,
            rows: rows.len(),
        });
    }
    let computed = modcurve::genus(level, &delta)?.genus;
    if computed != declared {
        return Err(FormsError::GenusMismatch {
            level,
            declared,
            computed,
        });
    }
    FormsFile::new(
        delta,
        precision,
        rows.into_iter().map(|(_, r)| r).collect(),
        comments,
    )
}

/// Canonical text. `parse(&serialize(f))` returns `f`.
pub fn serialize(file: &FormsFile) -> String {
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "#{c}");
    }
    let residues: Vec<String> = file.delta.residues().iter().map(u64::to_string).collect();
    let _ = writeln!(out, "level {}", file.level());
    let _ = writeln!(out, "delta {}", residues.join(" "));
    let _ = writeln!(out, "genus {}", file.genus);
    let _ = writeln!(out, "precision {}", file.precision);
    for row in &file.rows {
        let coeffs: Vec<String> = row.iter().map(format_coefficient).collect();
        let _ = writeln!(out, "form {}", coeffs.join(" "));
    }
    out
}

const FIXTURE_21: &str = include_str!("../../../fixtures/21-d1.forms");
const FIXTURE_30: &str = include_str!("../../../fixtures/30-d1.forms");

/// The published expansions for `Δ = {±1, ±8}` at level 21 and
/// `Δ = {±1, ±11}` at level 30, both cut at `q^10`.
pub fn fixtures() -> Vec<FormsFile> {
    [FIXTURE_21, FIXTURE_30]
        .into_iter()
        .map(|t| parse(t).expect("bundled fixtures parse"))
        .collect()
}

/// Reads a forms file, trying `path.forms` when `path` does not exist.
pub fn load(path: &Path) -> Result<FormsFile, FormsError> {
    let resolved = if !path.exists() && path.extension().is_none_or(|e| e != "forms") {
        let mut with_ext = path.as_os_str().to_owned();
        with_ext.push(".forms");
        PathBuf::from(with_ext)
    } else {
        path.to_path_buf()
    };
    let text = fs::read_to_string(&resolved).map_err(|source| FormsError::Io {
        path: resolved.clone(),
        source,
    })?;
    parse(&text).map_err(|e| FormsError::InFile {
        path: resolved,
        source: Box::new(e),
    })
}

/// Every `*.forms` file in a directory, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<FormsFile>, FormsError> {
    let io = |source| FormsError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "forms"));
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}
