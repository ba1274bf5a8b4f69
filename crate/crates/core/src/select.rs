//! Sorted range selection driven by a heap of candidate subintervals.
//!
//! A query seeds the heap with the range-minimum node of `[i, j]`. Popping
//! the minimum node emits its value and splits its range at the minimum
//! position; the up-to-two non-empty child ranges are located with one RMQ
//! call each and pushed back. The next smallest element of the range is
//! always in the heap, so emissions come out in non-decreasing order, and
//! after `t` emissions the heap holds at most `t + 1` nodes, so the `t`-th
//! element costs `O(log t)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{check_range, RangeError};
use crate::rmq::RmqIndex;

/// A `(start, end, count)` selection query; indices are 1-based and the
/// range inclusive. `count` may exceed the range size, in which case the
/// whole range is returned sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryRequest {
    pub start: usize,
    pub end: usize,
    pub count: usize,
}

impl QueryRequest {
    pub fn new(start: usize, end: usize, count: usize) -> Self {
        QueryRequest { start, end, count }
    }
}

/// One emitted element: its value and its 1-based position in the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectedItem<T> {
    pub value: T,
    pub index: usize,
}

/// A candidate subinterval: the range `[left, right]` together with the
/// position and value of its leftmost minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapNode<T> {
    pub left: usize,
    pub right: usize,
    pub pos: usize,
    pub value: T,
}

/// Instrumentation counters recorded while answering one query.
///
/// For a query that emitted `m` elements: `heap_pops == m`,
/// `heap_peak ≤ m + 1` (hence never more than `2m` for `m ≥ 1`), and
/// `rmq_calls` and `heap_pushes` are at most `2m + 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub heap_peak: usize,
    pub rmq_calls: usize,
    pub heap_pushes: usize,
    pub heap_pops: usize,
}

/// Query answer: items in non-decreasing value order, plus the counters
/// recorded while producing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult<T> {
    pub items: Vec<SelectedItem<T>>,
    pub stats: QueryStats,
}

// BinaryHeap is a max-heap; entries order by reversed (value, pos) so that
// the smallest value (leftmost position on ties) pops first.
struct MinEntry<T>(HeapNode<T>);

impl<T: Ord> PartialEq for MinEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.value == other.0.value && self.0.pos == other.0.pos
    }
}

impl<T: Ord> Eq for MinEntry<T> {}

impl<T: Ord> PartialOrd for MinEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for MinEntry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .value
            .cmp(&self.0.value)
            .then_with(|| other.0.pos.cmp(&self.0.pos))
    }
}

/// The `count` smallest elements of `values[start..=end]`, values
/// non-decreasing, each with its original index.
///
/// `count` is clamped to the range size; `count == 0` returns an empty
/// result without touching the heap or the RMQ tables.
pub fn sorted_select<T: Ord + Clone>(
    index: &RmqIndex<'_, T>,
    request: QueryRequest,
) -> Result<QueryResult<T>, RangeError> {
    check_range(index.len(), request.start, request.end)?;
    if request.count == 0 {
        return Ok(QueryResult {
            items: Vec::new(),
            stats: QueryStats::default(),
        });
    }
    let take = request.count.min(request.end - request.start + 1);
    let mut cursor = SelectionCursor::seed(index, request.start, request.end);
    let mut items = Vec::with_capacity(take);
    while items.len() < take {
        let item = cursor
            .next_smallest()
            .expect("heap covers the unreported remainder of the range");
        items.push(item);
    }
    Ok(QueryResult {
        items,
        stats: cursor.stats(),
    })
}

/// Opens a lazy cursor over `[start, end]`: each [`SelectionCursor::next_smallest`]
/// call emits one element in non-decreasing order until the range is
/// exhausted. The heap is seeded with the range's minimum node; nothing is
/// consumed yet.
pub fn open_selection<'r, T: Ord + Clone>(
    index: &'r RmqIndex<'r, T>,
    start: usize,
    end: usize,
) -> Result<SelectionCursor<'r, T>, RangeError> {
    check_range(index.len(), start, end)?;
    Ok(SelectionCursor::seed(index, start, end))
}

/// Lazy selection over a fixed range. Borrows the index it reads from, so
/// it cannot outlive the index or the sequence.
pub struct SelectionCursor<'r, T> {
    index: &'r RmqIndex<'r, T>,
    heap: BinaryHeap<MinEntry<T>>,
    stats: QueryStats,
    emitted: usize,
}

impl<'r, T: Ord + Clone> SelectionCursor<'r, T> {
    fn seed(index: &'r RmqIndex<'r, T>, start: usize, end: usize) -> Self {
        let mut cursor = SelectionCursor {
            index,
            heap: BinaryHeap::new(),
            stats: QueryStats::default(),
            emitted: 0,
        };
        let root = cursor.locate(start, end);
        cursor.push(root);
        cursor
    }

    /// Pops the smallest remaining element of the range; `None` once every
    /// element has been emitted, and on every call after that.
    pub fn next_smallest(&mut self) -> Option<SelectedItem<T>> {
        let MinEntry(node) = self.heap.pop()?;
        self.stats.heap_pops += 1;
        self.emitted += 1;
        let HeapNode {
            left,
            right,
            pos,
            value,
        } = node;
        self.split_and_push(left, pos, right);
        debug_assert!(self.heap.len() <= self.emitted + 1);
        Some(SelectedItem { value, index: pos })
    }

    /// Counters accumulated so far.
    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    /// Pushes the child intervals of a popped node, skipping empty ranges.
    fn split_and_push(&mut self, left: usize, pos: usize, right: usize) {
        if pos > left {
            let child = self.locate(left, pos - 1);
            self.push(child);
        }
        if pos < right {
            let child = self.locate(pos + 1, right);
            self.push(child);
        }
    }

    fn locate(&mut self, left: usize, right: usize) -> HeapNode<T> {
        self.stats.rmq_calls += 1;
        let pos = self.index.min_index_unchecked(left, right);
        let value = self.index.sequence().at(pos).clone();
        HeapNode {
            left,
            right,
            pos,
            value,
        }
    }

    fn push(&mut self, node: HeapNode<T>) {
        self.stats.heap_pushes += 1;
        self.heap.push(MinEntry(node));
        self.stats.heap_peak = self.stats.heap_peak.max(self.heap.len());
    }
}

impl<T: Ord + Clone> Iterator for SelectionCursor<'_, T> {
    type Item = SelectedItem<T>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_smallest()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmq::RmqIndex;
    use crate::IntSequence;

    fn pairs<T: Copy>(result: &QueryResult<T>) -> Vec<(T, usize)> {
        result.items.iter().map(|it| (it.value, it.index)).collect()
    }

    #[test]
    fn selects_k_smallest_sorted() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let index = RmqIndex::build(&seq);
        let result = sorted_select(&index, QueryRequest::new(2, 7, 3)).unwrap();
        assert_eq!(pairs(&result), [(1, 2), (1, 4), (2, 7)]);
    }

    #[test]
    fn single_element_range() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let index = RmqIndex::build(&seq);
        let result = sorted_select(&index, QueryRequest::new(3, 3, 1)).unwrap();
        assert_eq!(pairs(&result), [(4, 3)]);
    }

    #[test]
    fn count_clamps_to_range_size() {
        let seq = IntSequence::new(vec![7, 8]);
        let index = RmqIndex::build(&seq);
        let result = sorted_select(&index, QueryRequest::new(1, 2, 5)).unwrap();
        assert_eq!(pairs(&result), [(7, 1), (8, 2)]);
    }

    #[test]
    fn zero_count_does_no_work() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let index = RmqIndex::build(&seq);
        let result = sorted_select(&index, QueryRequest::new(1, 8, 0)).unwrap();
        assert!(result.items.is_empty());
        assert_eq!(result.stats, QueryStats::default());
    }

    #[test]
    fn cursor_drains_in_order_then_stays_exhausted() {
        let seq = IntSequence::new(vec![5, 4]);
        let index = RmqIndex::build(&seq);
        let mut cursor = open_selection(&index, 1, 2).unwrap();
        assert_eq!(
            cursor.next_smallest(),
            Some(SelectedItem { value: 4, index: 2 })
        );
        assert_eq!(
            cursor.next_smallest(),
            Some(SelectedItem { value: 5, index: 1 })
        );
        assert_eq!(cursor.next_smallest(), None);
        assert_eq!(cursor.next_smallest(), None);
    }

    #[test]
    fn cursor_on_singleton() {
        let seq = IntSequence::new(vec![9]);
        let index = RmqIndex::build(&seq);
        let mut cursor = open_selection(&index, 1, 1).unwrap();
        assert_eq!(
            cursor.next_smallest(),
            Some(SelectedItem { value: 9, index: 1 })
        );
        assert_eq!(cursor.next_smallest(), None);
    }

    #[test]
    fn cursor_emits_each_tied_index_once() {
        let seq = IntSequence::new(vec![4, 4]);
        let index = RmqIndex::build(&seq);
        let cursor = open_selection(&index, 1, 2).unwrap();
        let items: Vec<_> = cursor.collect();
        assert_eq!(items.len(), 2);
        assert!(items.iter().all(|it| it.value == 4));
        let mut indices: Vec<_> = items.iter().map(|it| it.index).collect();
        indices.sort_unstable();
        assert_eq!(indices, [1, 2]);
    }

    #[test]
    fn cursor_walks_three_elements() {
        let seq = IntSequence::new(vec![2, 1, 3]);
        let index = RmqIndex::build(&seq);
        let mut cursor = open_selection(&index, 1, 3).unwrap();
        assert_eq!(
            cursor.next_smallest(),
            Some(SelectedItem { value: 1, index: 2 })
        );
        assert_eq!(
            cursor.next_smallest(),
            Some(SelectedItem { value: 2, index: 1 })
        );
        assert_eq!(
            cursor.next_smallest(),
            Some(SelectedItem { value: 3, index: 3 })
        );
        assert_eq!(cursor.next_smallest(), None);
    }

    #[test]
    fn rejects_invalid_ranges() {
        let seq = IntSequence::new(vec![1, 2]);
        let index = RmqIndex::build(&seq);
        assert_eq!(
            open_selection(&index, 2, 1).err(),
            Some(RangeError::InvertedRange { start: 2, end: 1 })
        );
        assert!(sorted_select(&index, QueryRequest::new(0, 1, 1)).is_err());
        assert!(sorted_select(&index, QueryRequest::new(1, 3, 1)).is_err());

        let empty = IntSequence::new(Vec::new());
        let index = RmqIndex::build(&empty);
        assert_eq!(
            sorted_select(&index, QueryRequest::new(1, 1, 1)).err(),
            Some(RangeError::EmptySequence)
        );
    }

    fn drain_nodes(cursor: &mut SelectionCursor<'_, i64>) -> Vec<HeapNode<i64>> {
        let mut nodes: Vec<_> = cursor.heap.drain().map(|entry| entry.0).collect();
        nodes.sort_by_key(|node| node.pos);
        nodes
    }

    #[test]
    fn split_skips_empty_children() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let index = RmqIndex::build(&seq);
        let mut cursor = open_selection(&index, 1, 8).unwrap();
        cursor.heap.clear();
        cursor.stats = QueryStats::default();

        // Both child ranges empty: no pushes at all.
        cursor.split_and_push(3, 3, 3);
        assert!(cursor.heap.is_empty());
        assert_eq!(cursor.stats.heap_pushes, 0);
        assert_eq!(cursor.stats.rmq_calls, 0);

        // Left child empty: a single push for [2, 5].
        cursor.split_and_push(1, 1, 5);
        let nodes = drain_nodes(&mut cursor);
        assert_eq!(
            nodes,
            [HeapNode {
                left: 2,
                right: 5,
                pos: 2,
                value: 1
            }]
        );
        assert_eq!(cursor.stats.heap_pushes, 1);
        assert_eq!(cursor.stats.rmq_calls, 1);
    }

    #[test]
    fn split_pushes_both_children() {
        // Children of (left=2, pos=4, right=7): the scan minima of [2, 3]
        // and [5, 7] are value 1 at 2 and value 2 at 7.
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let index = RmqIndex::build(&seq);
        let mut cursor = open_selection(&index, 1, 8).unwrap();
        cursor.heap.clear();
        cursor.stats = QueryStats::default();

        cursor.split_and_push(2, 4, 7);
        let nodes = drain_nodes(&mut cursor);
        assert_eq!(
            nodes,
            [
                HeapNode {
                    left: 2,
                    right: 3,
                    pos: 2,
                    value: 1
                },
                HeapNode {
                    left: 5,
                    right: 7,
                    pos: 7,
                    value: 2
                },
            ]
        );
        assert_eq!(cursor.stats.heap_pushes, 2);
        assert_eq!(cursor.stats.rmq_calls, 2);
    }

    #[test]
    fn stats_track_paper_bounds() {
        let seq = IntSequence::new(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        let index = RmqIndex::build(&seq);
        for count in 1..=8 {
            let result = sorted_select(&index, QueryRequest::new(1, 8, count)).unwrap();
            let emitted = result.items.len();
            let stats = result.stats;
            assert_eq!(stats.heap_pops, emitted);
            assert!(stats.heap_peak <= 2 * count);
            assert!(stats.heap_peak <= emitted + 1);
            assert!(stats.rmq_calls <= 2 * count + 1);
            assert!(stats.heap_pushes <= 2 * count + 1);
        }
    }
}
