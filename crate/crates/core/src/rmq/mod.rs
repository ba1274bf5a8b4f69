//! Constant-time leftmost range-minimum queries over a value sequence.

mod block;
mod sparse;

use std::cmp::Ordering;

use crate::error::{check_range, RangeError};
use crate::seq::ValueSequence;
use block::BlockTables;
use sparse::SparseTable;

/// Table layout selected at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmqBuild {
    /// Block decomposition with in-word masks and a sparse table over the
    /// doubly-reduced block minima: O(n) preprocessing, O(n) words of
    /// auxiliary space, O(1) queries. The default.
    #[default]
    BlockDecomposition,
    /// Plain sparse table over the whole sequence: O(1) queries but
    /// O(n log n) preprocessing and space. Debugging baseline only; it does
    /// not meet the linear-space bound of the default build.
    SparseTable,
}

enum Tables {
    Block(BlockTables),
    Sparse(SparseTable),
}

/// Range-minimum index over a borrowed [`ValueSequence`].
///
/// Immutable once built; any number of threads may query one index
/// concurrently. Query indices are 1-based and ranges inclusive; the answer
/// is always the leftmost position holding the range minimum.
pub struct RmqIndex<'a, T> {
    seq: &'a ValueSequence<T>,
    tables: Tables,
    build: RmqBuild,
}

fn pick_leftmost<T: Ord>(values: &[T]) -> impl FnMut(usize, usize) -> usize + '_ {
    move |a, b| match values[a].cmp(&values[b]) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => a.min(b),
    }
}

impl<'a, T: Ord> RmqIndex<'a, T> {
    /// Builds the default linear-space index.
    pub fn build(seq: &'a ValueSequence<T>) -> Self {
        Self::build_with(seq, RmqBuild::default())
    }

    pub fn build_with(seq: &'a ValueSequence<T>, build: RmqBuild) -> Self {
        let values = seq.values();
        let tables = match build {
            RmqBuild::BlockDecomposition => Tables::Block(BlockTables::build(values)),
            RmqBuild::SparseTable => {
                Tables::Sparse(SparseTable::build(values.len(), pick_leftmost(values)))
            }
        };
        RmqIndex { seq, tables, build }
    }

    /// 1-based index of the leftmost minimum of `values[start..=end]`.
    pub fn query(&self, start: usize, end: usize) -> Result<usize, RangeError> {
        check_range(self.seq.len(), start, end)?;
        Ok(self.min_index_unchecked(start, end))
    }

    /// As [`Self::query`] without validation; `1 ≤ start ≤ end ≤ len` required.
    pub(crate) fn min_index_unchecked(&self, start: usize, end: usize) -> usize {
        let (lo, hi) = (start - 1, end - 1);
        let values = self.seq.values();
        let pos = match &self.tables {
            Tables::Block(tables) => tables.query(values, lo, hi),
            Tables::Sparse(table) => table.query(lo, hi, pick_leftmost(values)),
        };
        pos + 1
    }

    pub fn sequence(&self) -> &'a ValueSequence<T> {
        self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn build_kind(&self) -> RmqBuild {
        self.build
    }

    /// Machine words of auxiliary table data, the sequence itself excluded.
    pub fn space_in_words(&self) -> usize {
        match &self.tables {
            Tables::Block(tables) => tables.word_count(),
            Tables::Sparse(table) => (table.entry_count() * std::mem::size_of::<usize>())
                .div_ceil(std::mem::size_of::<usize>()),
        }
    }
}
