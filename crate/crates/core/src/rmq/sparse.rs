/// Position-valued sparse table: row `l`, column `i` holds the index of the
/// leftmost minimum in the window of length `2^l` starting at `i`.
///
/// The table stores indices only; callers supply the comparison through a
/// `pick` function, so one implementation serves both the whole-array
/// baseline and the block-minima level of the default build.
pub(crate) struct SparseTable {
    rows: Vec<Vec<usize>>,
}

impl SparseTable {
    /// `pick(a, b)` must return whichever of two candidate indices holds the
    /// smaller value, preferring the smaller index on ties.
    pub(crate) fn build(len: usize, mut pick: impl FnMut(usize, usize) -> usize) -> Self {
        let mut rows = Vec::new();
        if len == 0 {
            return SparseTable { rows };
        }
        rows.push((0..len).collect::<Vec<usize>>());
        let mut width = 1usize;
        while width * 2 <= len {
            let prev = rows.last().unwrap();
            let row: Vec<usize> = (0..=len - width * 2)
                .map(|i| pick(prev[i], prev[i + width]))
                .collect();
            rows.push(row);
            width *= 2;
        }
        SparseTable { rows }
    }

    /// Leftmost-minimum index over the 0-based inclusive range `lo..=hi`.
    pub(crate) fn query(
        &self,
        lo: usize,
        hi: usize,
        mut pick: impl FnMut(usize, usize) -> usize,
    ) -> usize {
        debug_assert!(lo <= hi && hi < self.rows[0].len());
        let level = (hi - lo + 1).ilog2() as usize;
        let row = &self.rows[level];
        pick(row[lo], row[hi + 1 - (1usize << level)])
    }

    pub(crate) fn entry_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}
