//! Sorted range selection over immutable arrays.
//!
//! Preprocess an array of totally ordered values in linear time and space,
//! then answer queries `(i, j, k)`, reporting the `k` smallest elements of
//! `A[i..=j]` in non-decreasing order, in `O(k log k)` time. A query runs off a
//! constant-time range-minimum index and a min-heap of candidate
//! subintervals, so results can also be pulled lazily one element at a time
//! through [`SelectionCursor`].
//!
//! All public indices are 1-based and all ranges inclusive.
//!
//! ```
//! use rsel_core::{IntSequence, QueryRequest, RmqIndex, sorted_select};
//!
//! let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
//! let index = RmqIndex::build(&seq);
//! let result = sorted_select(&index, QueryRequest::new(2, 7, 3)).unwrap();
//! let pairs: Vec<(i64, usize)> = result.items.iter().map(|it| (it.value, it.index)).collect();
//! assert_eq!(pairs, [(1, 2), (1, 4), (2, 7)]);
//! ```

mod error;
pub mod oracle;
mod rmq;
mod select;
mod seq;
mod value;

pub use error::RangeError;
pub use oracle::{oracle_rmq, oracle_select};
pub use rmq::{RmqBuild, RmqIndex};
pub use select::{
    open_selection, sorted_select, HeapNode, QueryRequest, QueryResult, QueryStats, SelectedItem,
    SelectionCursor,
};
pub use seq::ValueSequence;
pub use value::{FiniteF64, NonFiniteValueError};

/// Sequence of 64-bit signed integers.
pub type IntSequence = ValueSequence<i64>;

/// Sequence of finite 64-bit floats.
pub type FloatSequence = ValueSequence<FiniteF64>;

/// Range-minimum index over an [`IntSequence`].
pub type IntRmqIndex<'a> = RmqIndex<'a, i64>;

/// Range-minimum index over a [`FloatSequence`].
pub type FloatRmqIndex<'a> = RmqIndex<'a, FiniteF64>;
