//! Dataset ingestion and the persisted binary format.
//!
//! Layout of a persisted dataset: magic `RSEL`, one format-version byte
//! (currently 1), one element-kind byte (0 = int64, 1 = float64), the
//! element count as a little-endian u64, then the raw little-endian 8-byte
//! values. Loading is bit-exact with saving. The range-minimum index is
//! never persisted; building it is linear-time, so it is rebuilt on load.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rsel_core::{FiniteF64, FloatSequence, IntSequence};

use crate::error::CliError;

pub const MAGIC: [u8; 4] = *b"RSEL";
pub const FORMAT_VERSION: u8 = 1;
const HEADER_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Int64,
    Float64,
}

impl ElementKind {
    fn code(self) -> u8 {
        match self {
            ElementKind::Int64 => 0,
            ElementKind::Float64 => 1,
        }
    }

    fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(ElementKind::Int64),
            1 => Some(ElementKind::Float64),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Int64 => "int64",
            ElementKind::Float64 => "float64",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceData {
    Int64(IntSequence),
    Float64(FloatSequence),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub data: SequenceData,
}

impl Dataset {
    pub fn kind(&self) -> ElementKind {
        match self.data {
            SequenceData::Int64(_) => ElementKind::Int64,
            SequenceData::Float64(_) => ElementKind::Float64,
        }
    }

    pub fn len(&self) -> usize {
        match &self.data {
            SequenceData::Int64(seq) => seq.len(),
            SequenceData::Float64(seq) => seq.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A persisted dataset that cannot be decoded. Each shape of damage gets its
/// own variant so diagnostics can say exactly what is wrong.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetFormatError {
    BadMagic { found: [u8; 4] },
    UnsupportedVersion { found: u8 },
    UnknownElementKind { found: u8 },
    Truncated { expected: usize, actual: usize },
    NonFinitePayload { position: usize, value: f64 },
}

impl fmt::Display for DatasetFormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetFormatError::BadMagic { found } => {
                write!(f, "bad magic {:?}, expected {:?}", found, MAGIC)
            }
            DatasetFormatError::UnsupportedVersion { found } => {
                write!(
                    f,
                    "unsupported format version {found}, expected {FORMAT_VERSION}"
                )
            }
            DatasetFormatError::UnknownElementKind { found } => {
                write!(f, "unknown element kind byte {found}")
            }
            DatasetFormatError::Truncated { expected, actual } => {
                write!(
                    f,
                    "truncated dataset: expected {expected} bytes, found {actual}"
                )
            }
            DatasetFormatError::NonFinitePayload { position, value } => {
                write!(f, "non-finite value {value} at element {position}")
            }
        }
    }
}

impl std::error::Error for DatasetFormatError {}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Reads raw values (one text value per line, or packed little-endian
/// 8-byte values when `binary` is set) into a dataset of the given kind.
pub fn ingest(path: &Path, kind: ElementKind, binary: bool) -> Result<Dataset, CliError> {
    let data = if binary {
        ingest_binary(path, kind)?
    } else {
        ingest_text(path, kind)?
    };
    Ok(Dataset {
        name: stem_of(path),
        data,
    })
}

fn ingest_text(path: &Path, kind: ElementKind) -> Result<SequenceData, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let located = |line: usize, message: String| CliError::Parse {
        path: path.display().to_string(),
        line,
        message,
    };
    match kind {
        ElementKind::Int64 => {
            let mut values = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let token = line.trim();
                let value: i64 = token
                    .parse()
                    .map_err(|_| located(idx + 1, format!("invalid int64 value {token:?}")))?;
                values.push(value);
            }
            Ok(SequenceData::Int64(IntSequence::new(values)))
        }
        ElementKind::Float64 => {
            let mut values = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let token = line.trim();
                let raw: f64 = token
                    .parse()
                    .map_err(|_| located(idx + 1, format!("invalid float64 value {token:?}")))?;
                let value = FiniteF64::new(raw).map_err(|e| located(idx + 1, e.to_string()))?;
                values.push(value);
            }
            Ok(SequenceData::Float64(FloatSequence::new(values)))
        }
    }
}

fn ingest_binary(path: &Path, kind: ElementKind) -> Result<SequenceData, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    if bytes.len() % 8 != 0 {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            line: bytes.len() / 8 + 1,
            message: format!("byte length {} is not a multiple of 8", bytes.len()),
        });
    }
    match kind {
        ElementKind::Int64 => {
            let values = bytes
                .chunks_exact(8)
                .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            Ok(SequenceData::Int64(IntSequence::new(values)))
        }
        ElementKind::Float64 => {
            let mut values = Vec::with_capacity(bytes.len() / 8);
            for (idx, chunk) in bytes.chunks_exact(8).enumerate() {
                let raw = f64::from_le_bytes(chunk.try_into().unwrap());
                let value = FiniteF64::new(raw).map_err(|e| CliError::Parse {
                    path: path.display().to_string(),
                    line: idx + 1,
                    message: e.to_string(),
                })?;
                values.push(value);
            }
            Ok(SequenceData::Float64(FloatSequence::new(values)))
        }
    }
}

pub fn save(dataset: &Dataset, path: &Path) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_dataset(dataset, &mut out).map_err(|e| CliError::io(path, e))?;
    out.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_dataset(dataset: &Dataset, out: &mut impl Write) -> io::Result<()> {
    out.write_all(&MAGIC)?;
    out.write_all(&[FORMAT_VERSION, dataset.kind().code()])?;
    out.write_all(&(dataset.len() as u64).to_le_bytes())?;
    match &dataset.data {
        SequenceData::Int64(seq) => {
            for value in seq.values() {
                out.write_all(&value.to_le_bytes())?;
            }
        }
        SequenceData::Float64(seq) => {
            for value in seq.values() {
                out.write_all(&value.get().to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn load(path: &Path) -> Result<Dataset, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let data = decode_dataset(&bytes).map_err(|source| CliError::Dataset {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Dataset {
        name: stem_of(path),
        data,
    })
}

pub fn decode_dataset(bytes: &[u8]) -> Result<SequenceData, DatasetFormatError> {
    if bytes.len() >= 4 && bytes[..4] != MAGIC {
        return Err(DatasetFormatError::BadMagic {
            found: bytes[..4].try_into().unwrap(),
        });
    }
    if bytes.len() < HEADER_LEN {
        return Err(DatasetFormatError::Truncated {
            expected: HEADER_LEN,
            actual: bytes.len(),
        });
    }
    if bytes[4] != FORMAT_VERSION {
        return Err(DatasetFormatError::UnsupportedVersion { found: bytes[4] });
    }
    let kind = ElementKind::from_code(bytes[5])
        .ok_or(DatasetFormatError::UnknownElementKind { found: bytes[5] })?;
    let count = u64::from_le_bytes(bytes[6..14].try_into().unwrap()) as usize;
    let expected = HEADER_LEN + count * 8;
    if bytes.len() != expected {
        return Err(DatasetFormatError::Truncated {
            expected,
            actual: bytes.len(),
        });
    }
    let payload = &bytes[HEADER_LEN..];
    match kind {
        ElementKind::Int64 => {
            let values = payload
                .chunks_exact(8)
                .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            Ok(SequenceData::Int64(IntSequence::new(values)))
        }
        ElementKind::Float64 => {
            let mut values = Vec::with_capacity(count);
            for (idx, chunk) in payload.chunks_exact(8).enumerate() {
                let raw = f64::from_le_bytes(chunk.try_into().unwrap());
                let value =
                    FiniteF64::new(raw).map_err(|_| DatasetFormatError::NonFinitePayload {
                        position: idx + 1,
                        value: raw,
                    })?;
                values.push(value);
            }
            Ok(SequenceData::Float64(FloatSequence::new(values)))
        }
    }
}
