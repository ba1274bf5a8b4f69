//! Brute-force reference implementations.
//!
//! These are the ground truth the test suites compare against, and they back
//! the CLI's verification flag. They favor obviousness over speed: a scan
//! for range minima, a full copy-and-sort for selection.

use crate::error::{check_range, RangeError};
use crate::select::{QueryRequest, QueryResult, QueryStats, SelectedItem};
use crate::seq::ValueSequence;

/// Leftmost minimum index of `values[start..=end]` by direct scan.
/// 1-based inclusive, like the indexed implementation it checks.
pub fn oracle_rmq<T: Ord>(
    seq: &ValueSequence<T>,
    start: usize,
    end: usize,
) -> Result<usize, RangeError> {
    check_range(seq.len(), start, end)?;
    let values = seq.values();
    let mut best = start - 1;
    for pos in start..end {
        if values[pos] < values[best] {
            best = pos;
        }
    }
    Ok(best + 1)
}

/// Selection by copy and full sort: takes `(value, index)` pairs from the
/// range, sorts them by `(value, index)`, and keeps the first
/// `min(count, range size)`. Stats are zeroed; the oracle does no heap or
/// RMQ work.
pub fn oracle_select<T: Ord + Clone>(
    seq: &ValueSequence<T>,
    request: QueryRequest,
) -> Result<QueryResult<T>, RangeError> {
    check_range(seq.len(), request.start, request.end)?;
    let mut items: Vec<SelectedItem<T>> = (request.start..=request.end)
        .map(|index| SelectedItem {
            value: seq.at(index).clone(),
            index,
        })
        .collect();
    items.sort_unstable_by(|a, b| a.value.cmp(&b.value).then_with(|| a.index.cmp(&b.index)));
    items.truncate(request.count.min(request.end - request.start + 1));
    Ok(QueryResult {
        items,
        stats: QueryStats::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntSequence;

    #[test]
    fn rmq_scan_cases() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5]);
        assert_eq!(oracle_rmq(&seq, 1, 5), Ok(2));
        assert_eq!(oracle_rmq(&seq, 3, 5), Ok(4));

        let one = IntSequence::new(vec![9]);
        assert_eq!(oracle_rmq(&one, 1, 1), Ok(1));

        let falling = IntSequence::new(vec![5, 4, 3]);
        assert_eq!(oracle_rmq(&falling, 2, 3), Ok(3));

        assert!(oracle_rmq(&falling, 3, 1).is_err());
        assert!(oracle_rmq(&falling, 1, 4).is_err());
    }

    #[test]
    fn select_sorts_and_truncates() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let result = oracle_select(&seq, QueryRequest::new(2, 7, 3)).unwrap();
        let pairs: Vec<_> = result.items.iter().map(|it| (it.value, it.index)).collect();
        assert_eq!(pairs, [(1, 2), (1, 4), (2, 7)]);
        assert_eq!(result.stats, QueryStats::default());
    }

    #[test]
    fn select_edge_counts() {
        let seq = IntSequence::new(vec![3, 1, 4]);
        let single = oracle_select(&seq, QueryRequest::new(2, 2, 1)).unwrap();
        assert_eq!(single.items.len(), 1);
        assert_eq!(single.items[0].index, 2);

        let none = oracle_select(&seq, QueryRequest::new(1, 3, 0)).unwrap();
        assert!(none.items.is_empty());
    }

    #[test]
    fn select_output_is_sorted_by_construction() {
        let seq = IntSequence::new(vec![5, 3, 5, 1, 3, 1]);
        let result = oracle_select(&seq, QueryRequest::new(1, 6, 6)).unwrap();
        let values: Vec<_> = result.items.iter().map(|it| it.value).collect();
        let mut sorted = values.clone();
        sorted.sort_unstable();
        assert_eq!(values, sorted);
    }
}
