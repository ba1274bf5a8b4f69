use crate::value::{FiniteF64, NonFiniteValueError};

/// An immutable array of totally ordered values, indexed 1-based.
///
/// The `Ord` bound on construction is what keeps every query well-defined:
/// values that do not admit a total order (floating NaN) cannot be stored at
/// all. Float data goes through [`FiniteF64`], which rejects non-orderable
/// values when it is created.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSequence<T> {
    values: Box<[T]>,
}

impl<T: Ord> ValueSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        ValueSequence {
            values: values.into_boxed_slice(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at a 1-based index.
    pub fn get(&self, index: usize) -> Option<&T> {
        index.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// 0-based view of the underlying values.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// 1-based access on a caller-validated index.
    pub(crate) fn at(&self, index: usize) -> &T {
        &self.values[index - 1]
    }
}

impl<T: Ord> From<Vec<T>> for ValueSequence<T> {
    fn from(values: Vec<T>) -> Self {
        ValueSequence::new(values)
    }
}

impl ValueSequence<FiniteF64> {
    /// Builds a float sequence, rejecting non-finite inputs.
    pub fn try_from_f64s(values: Vec<f64>) -> Result<Self, NonFiniteValueError> {
        let wrapped = values
            .into_iter()
            .map(FiniteF64::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ValueSequence::new(wrapped))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_based_access() {
        let seq = ValueSequence::new(vec![3, 1, 4]);
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.get(0), None);
        assert_eq!(seq.get(1), Some(&3));
        assert_eq!(seq.get(3), Some(&4));
        assert_eq!(seq.get(4), None);
    }

    #[test]
    fn empty_sequence_builds() {
        let seq: ValueSequence<i64> = ValueSequence::new(Vec::new());
        assert!(seq.is_empty());
        assert_eq!(seq.get(1), None);
    }

    #[test]
    fn float_sequence_rejects_nan() {
        assert!(ValueSequence::try_from_f64s(vec![1.0, f64::NAN]).is_err());
        let seq = ValueSequence::try_from_f64s(vec![1.5, -0.5]).unwrap();
        assert_eq!(seq.len(), 2);
    }
}
