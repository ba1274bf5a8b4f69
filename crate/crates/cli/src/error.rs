use std::fmt;
use std::io;
use std::path::Path;

use rsel_core::RangeError;

use crate::dataset::DatasetFormatError;

/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 1;
// 2 is clap's code for command-line usage errors.
/// Exit code for invalid query ranges (and k > n in the bench harness).
pub const EXIT_RANGE: i32 = 3;
/// Exit code for unparseable input: text values, batch lines, dataset files.
pub const EXIT_PARSE: i32 = 4;
/// Exit code for an engine/oracle disagreement under `--verify`.
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Range(RangeError),
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    Dataset {
        path: String,
        source: DatasetFormatError,
    },
    VerifyMismatch {
        start: usize,
        end: usize,
        count: usize,
    },
    BatchLine {
        line: usize,
        source: Box<CliError>,
    },
    KExceedsN {
        k: usize,
        n: usize,
    },
    Io {
        context: String,
        source: io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            context: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Range(_) | CliError::KExceedsN { .. } => EXIT_RANGE,
            CliError::Parse { .. } | CliError::Dataset { .. } => EXIT_PARSE,
            CliError::VerifyMismatch { .. } => EXIT_MISMATCH,
            CliError::BatchLine { source, .. } => source.exit_code(),
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Range(err) => err.fmt(f),
            CliError::Parse {
                path,
                line,
                message,
            } => write!(f, "{path}:{line}: {message}"),
            CliError::Dataset { path, source } => write!(f, "{path}: {source}"),
            CliError::VerifyMismatch { start, end, count } => write!(
                f,
                "verification mismatch for query {start} {end} {count}: \
                 engine and oracle value sequences disagree"
            ),
            CliError::BatchLine { line, source } => write!(f, "batch line {line}: {source}"),
            CliError::KExceedsN { k, n } => write!(f, "k {k} exceeds data size n {n}"),
            CliError::Io { context, source } => write!(f, "{context}: {source}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<RangeError> for CliError {
    fn from(err: RangeError) -> Self {
        CliError::Range(err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let range = CliError::Range(RangeError::EmptySequence);
        let parse = CliError::Parse {
            path: "x".into(),
            line: 1,
            message: "bad".into(),
        };
        let mismatch = CliError::VerifyMismatch {
            start: 1,
            end: 2,
            count: 1,
        };
        let codes = [range.exit_code(), parse.exit_code(), mismatch.exit_code()];
        assert_eq!(codes, [EXIT_RANGE, EXIT_PARSE, EXIT_MISMATCH]);
        assert!(codes.iter().all(|&c| c != 0));
        assert_eq!(
            codes.iter().collect::<std::collections::HashSet<_>>().len(),
            3
        );
    }

    #[test]
    fn batch_wrapper_keeps_inner_code() {
        let wrapped = CliError::BatchLine {
            line: 7,
            source: Box::new(CliError::Range(RangeError::InvertedRange {
                start: 5,
                end: 2,
            })),
        };
        assert_eq!(wrapped.exit_code(), EXIT_RANGE);
        assert!(wrapped.to_string().contains("batch line 7"));
    }
}
