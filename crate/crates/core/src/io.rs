//! Indicator files and the file-to-file marking runner.
//!
//! Two formats, chosen by extension:
//!
//! * `.f64`: raw little-endian IEEE-754 doubles, no header;
//! * anything else (conventionally `.txt`): one decimal float per line.
//!   Blank lines and lines starting with `#` are skipped.
//!
//! Marked sets are written as 0-based indices, one per line, ascending.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::algorithm::{mark, Algorithm};
use crate::error::MarkError;
use crate::indicator::{goal_value, IndicatorVector, MarkingOutcome};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: line {line}: cannot parse `{text}` as a number")]
    Parse {
        path: PathBuf,
        line: usize,
        text: String,
    },

    #[error("{path}: no values found")]
    Empty { path: PathBuf },

    #[error("{path}: binary length {len} is not a multiple of 8")]
    Binary { path: PathBuf, len: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        #[source]
        source: MarkError,
    },
}

impl FileError {
    fn io(path: &Path, source: io::Error) -> Self {
        FileError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn invalid(path: &Path, source: MarkError) -> Self {
        FileError::Invalid {
            path: path.to_path_buf(),
            source,
        }
    }
}

fn is_binary(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("f64"))
}

/// Parses text-format indicators. Line numbers in errors are 1-based.
pub fn parse_text(path: &Path, text: &str) -> Result<Vec<f64>, FileError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line.parse::<f64>().map_err(|_| FileError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            text: line.to_string(),
        })?;
        values.push(v);
    }
    Ok(values)
}

pub fn parse_binary(path: &Path, bytes: &[u8]) -> Result<Vec<f64>, FileError> {
    if !bytes.len().is_multiple_of(8) {
        return Err(FileError::Binary {
            path: path.to_path_buf(),
            len: bytes.len(),
        });
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect())
}

/// Reads and validates an indicator file.
pub fn read_indicators(path: &Path) -> Result<IndicatorVector, FileError> {
    let values = if is_binary(path) {
        parse_binary(path, &fs::read(path).map_err(|e| FileError::io(path, e))?)?
    } else {
        parse_text(path, &fs::read_to_string(path).map_err(|e| FileError::io(path, e))?)?
    };
    if values.is_empty() {
        return Err(FileError::Empty {
            path: path.to_path_buf(),
        });
    }
    IndicatorVector::new(values).map_err(|e| FileError::invalid(path, e))
}

/// Writes an indicator file in the format implied by the extension. Text
/// output uses the shortest representation that round-trips.
pub fn write_indicators(path: &Path, values: &[f64]) -> Result<(), FileError> {
    let file = fs::File::create(path).map_err(|e| FileError::io(path, e))?;
    let mut out = BufWriter::new(file);
    let result = if is_binary(path) {
        values.iter().try_for_each(|v| out.write_all(&v.to_le_bytes()))
    } else {
        values.iter().try_for_each(|v| writeln!(out, "{v:?}"))
    };
    result.and_then(|_| out.flush()).map_err(|e| FileError::io(path, e))
}

pub fn write_marked(path: &Path, marked: &[usize]) -> Result<(), FileError> {
    let file = fs::File::create(path).map_err(|e| FileError::io(path, e))?;
    let mut out = BufWriter::new(file);
    marked
        .iter()
        .try_for_each(|i| writeln!(out, "{i}"))
        .and_then(|_| out.flush())
        .map_err(|e| FileError::io(path, e))
}

/// Default output path for [`mark_file`]: the input path with `.marked`
/// appended.
pub fn default_output(input: &Path) -> PathBuf {
    let mut name = input.as_os_str().to_os_string();
    name.push(".marked");
    PathBuf::from(name)
}

/// Summary of one file marking run.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkReport {
    pub algorithm: Algorithm,
    pub len: usize,
    pub theta: f64,
    pub goal: f64,
    pub outcome: MarkingOutcome,
    pub x_star: Option<f64>,
    pub output: PathBuf,
}

impl std::fmt::Display for MarkReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "algorithm:    {}", self.algorithm)?;
        writeln!(f, "N:            {}", self.len)?;
        writeln!(f, "theta:        {}", self.theta)?;
        writeln!(f, "cardinality:  {}", self.outcome.cardinality())?;
        writeln!(f, "achieved sum: {:e}", self.outcome.achieved_sum)?;
        writeln!(f, "goal value:   {:e}", self.goal)?;
        if let Some(x_star) = self.x_star {
            writeln!(f, "x*:           {x_star:e}")?;
        }
        write!(f, "marked set:   {}", self.output.display())
    }
}

/// Reads `input`, marks it and writes the marked indices to `output`
/// (default [`default_output`]).
pub fn mark_file(
    input: &Path,
    algorithm: Algorithm,
    theta: f64,
    nu: f64,
    output: Option<&Path>,
) -> Result<MarkReport, FileError> {
    let x = read_indicators(input)?;
    let marked = mark(algorithm, &x, theta, nu).map_err(|e| FileError::invalid(input, e))?;
    let goal = goal_value(&x, theta).map_err(|e| FileError::invalid(input, e))?;
    let output = output.map_or_else(|| default_output(input), Path::to_path_buf);
    write_marked(&output, &marked.outcome.marked)?;
    Ok(MarkReport {
        algorithm,
        len: x.len(),
        theta,
        goal,
        outcome: marked.outcome,
        x_star: marked.x_star,
        output,
    })
}
