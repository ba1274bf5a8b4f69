use std::fmt;

/// Rejected query range. All indices in messages are 1-based, matching the
/// public interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeError {
    /// The sequence is empty; no range is valid.
    EmptySequence,
    /// Start index is zero or past the end of the sequence.
    StartOutOfBounds { start: usize, len: usize },
    /// End index is past the end of the sequence.
    EndOutOfBounds { end: usize, len: usize },
    /// Start index exceeds end index.
    InvertedRange { start: usize, end: usize },
}

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RangeError::EmptySequence => write!(f, "sequence is empty, no range is valid"),
            RangeError::StartOutOfBounds { start, len } => {
                write!(f, "start index {start} out of bounds 1..={len}")
            }
            RangeError::EndOutOfBounds { end, len } => {
                write!(f, "end index {end} out of bounds 1..={len}")
            }
            RangeError::InvertedRange { start, end } => {
                write!(f, "start index {start} exceeds end index {end}")
            }
        }
    }
}

impl std::error::Error for RangeError {}

/// Validates a 1-based inclusive range against a sequence length.
pub(crate) fn check_range(len: usize, start: usize, end: usize) -> Result<(), RangeError> {
    if len == 0 {
        return Err(RangeError::EmptySequence);
    }
    if start == 0 || start > len {
        return Err(RangeError::StartOutOfBounds { start, len });
    }
    if end > len {
        return Err(RangeError::EndOutOfBounds { end, len });
    }
    if start > end {
        return Err(RangeError::InvertedRange { start, end });
    }
    Ok(())
}
