use std::cmp::Ordering;
use std::fmt;

/// A finite `f64` with a total order.
///
/// `f64` on its own is only partially ordered (NaN breaks every comparison),
/// so float sequences store this wrapper instead. Non-finite values are
/// rejected when the wrapper is constructed, which is what lets the rest of
/// the crate require plain `Ord`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteF64(f64);

impl FiniteF64 {
    /// Wraps `value`, rejecting NaN and the infinities.
    pub fn new(value: f64) -> Result<Self, NonFiniteValueError> {
        if value.is_finite() {
            Ok(FiniteF64(value))
        } else {
            Err(NonFiniteValueError { value })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for FiniteF64 {}

impl PartialOrd for FiniteF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        // Finite values always compare.
        self.0
            .partial_cmp(&other.0)
            .expect("finite float comparison")
    }
}

impl fmt::Display for FiniteF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for FiniteF64 {
    type Error = NonFiniteValueError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        FiniteF64::new(value)
    }
}

impl From<FiniteF64> for f64 {
    fn from(value: FiniteF64) -> f64 {
        value.0
    }
}

/// A NaN or infinity was offered where a totally ordered float is required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonFiniteValueError {
    pub value: f64,
}

impl fmt::Display for NonFiniteValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "non-finite value {} cannot be ordered", self.value)
    }
}

impl std::error::Error for NonFiniteValueError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(FiniteF64::new(f64::NAN).is_err());
        assert!(FiniteF64::new(f64::INFINITY).is_err());
        assert!(FiniteF64::new(f64::NEG_INFINITY).is_err());
        assert!(FiniteF64::new(0.0).is_ok());
        assert!(FiniteF64::new(f64::MAX).is_ok());
    }

    #[test]
    fn orders_totally() {
        let a = FiniteF64::new(-1.5).unwrap();
        let b = FiniteF64::new(2.0).unwrap();
        assert!(a < b);
        assert_eq!(a.cmp(&a), Ordering::Equal);
        assert_eq!(FiniteF64::new(0.0).unwrap(), FiniteF64::new(-0.0).unwrap());
    }
}
