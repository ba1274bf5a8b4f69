//! Linear-space tables behind the default build.
//!
//! The array is cut into blocks of at most one word of positions. Within a
//! block, every position stores a bitmask of the monotone stack of the
//! block prefix ending there: bit `j` is set when no later element of the
//! prefix is strictly smaller than the element at block offset `j`. The
//! leftmost minimum of any in-block range `[lo, hi]` is then the lowest set
//! bit of `mask[hi]` at offset `≥ lo`: one shift and a count-trailing-zeros.
//!
//! Per-block minima form a second array that is reduced the same way, and a
//! sparse table tops off the doubly-reduced array. Auxiliary space is a
//! little over one word per element (the top table is sub-linear), and a
//! query is a fixed number of table lookups regardless of range length.

use super::sparse::SparseTable;

pub(crate) struct BlockTables {
    level1: MaskLevel,
    level2: MaskLevel,
    top: SparseTable,
}

struct MaskLevel {
    block_len: usize,
    masks: Vec<u64>,
    /// Per block: the index (into this level's array) of its leftmost minimum.
    min_pos: Vec<usize>,
}

/// Block width Θ(log n), capped at the mask word width.
fn block_len_for(len: usize) -> usize {
    let bits = (usize::BITS - len.leading_zeros()) as usize;
    bits.clamp(1, 64)
}

fn build_mask_level(
    len: usize,
    block_len: usize,
    mut less: impl FnMut(usize, usize) -> bool,
) -> MaskLevel {
    let mut masks = vec![0u64; len];
    let mut min_pos = Vec::with_capacity(len.div_ceil(block_len));
    let mut stack: Vec<usize> = Vec::with_capacity(block_len);
    let mut start = 0;
    while start < len {
        let end = (start + block_len).min(len);
        stack.clear();
        let mut mask = 0u64;
        for (offset, slot) in masks[start..end].iter_mut().enumerate() {
            let pos = start + offset;
            // Strictly smaller elements evict stack entries; equal values
            // stay so that the earlier index keeps winning ties.
            while let Some(&top) = stack.last() {
                if less(pos, top) {
                    mask &= !(1u64 << (top - start));
                    stack.pop();
                } else {
                    break;
                }
            }
            mask |= 1u64 << offset;
            stack.push(pos);
            *slot = mask;
        }
        min_pos.push(start + masks[end - 1].trailing_zeros() as usize);
        start = end;
    }
    MaskLevel {
        block_len,
        masks,
        min_pos,
    }
}

impl MaskLevel {
    /// Leftmost minimum of `lo..=hi`, both inside the same block.
    fn in_block(&self, lo: usize, hi: usize) -> usize {
        let shifted = self.masks[hi] >> (lo % self.block_len);
        debug_assert!(shifted != 0);
        lo + shifted.trailing_zeros() as usize
    }

    fn block_of(&self, pos: usize) -> usize {
        pos / self.block_len
    }

    fn block_last(&self, block: usize) -> usize {
        (block + 1) * self.block_len - 1
    }

    fn block_first(&self, block: usize) -> usize {
        block * self.block_len
    }
}

impl BlockTables {
    pub(crate) fn build<T: Ord>(values: &[T]) -> BlockTables {
        let n = values.len();
        let level1 = build_mask_level(n, block_len_for(n), |a, b| values[a] < values[b]);
        let m1 = level1.min_pos.len();
        let level2 = {
            let blocks = &level1.min_pos;
            build_mask_level(m1, block_len_for(m1), |a, b| {
                values[blocks[a]] < values[blocks[b]]
            })
        };
        let top = {
            let source = |i: usize| level1.min_pos[level2.min_pos[i]];
            SparseTable::build(level2.min_pos.len(), |a, b| {
                match values[source(a)].cmp(&values[source(b)]) {
                    std::cmp::Ordering::Less => a,
                    std::cmp::Ordering::Greater => b,
                    std::cmp::Ordering::Equal => a.min(b),
                }
            })
        };
        BlockTables {
            level1,
            level2,
            top,
        }
    }

    /// Leftmost minimum of `values[lo..=hi]`, 0-based inclusive. The range
    /// must be valid and `values` must be the slice the tables were built on.
    pub(crate) fn query<T: Ord>(&self, values: &[T], lo: usize, hi: usize) -> usize {
        let (block_lo, block_hi) = (self.level1.block_of(lo), self.level1.block_of(hi));
        if block_lo == block_hi {
            return self.level1.in_block(lo, hi);
        }
        let mut best = self.level1.in_block(lo, self.level1.block_last(block_lo));
        if block_lo < block_hi - 1 {
            let block = self.query_blocks(values, block_lo + 1, block_hi - 1);
            let cand = self.level1.min_pos[block];
            if values[cand] < values[best] {
                best = cand;
            }
        }
        let cand = self.level1.in_block(self.level1.block_first(block_hi), hi);
        if values[cand] < values[best] {
            best = cand;
        }
        best
    }

    /// Leftmost minimal level-1 block among blocks `lo..=hi`.
    fn query_blocks<T: Ord>(&self, values: &[T], lo: usize, hi: usize) -> usize {
        let blocks = &self.level1.min_pos;
        let (cell_lo, cell_hi) = (self.level2.block_of(lo), self.level2.block_of(hi));
        if cell_lo == cell_hi {
            return self.level2.in_block(lo, hi);
        }
        let mut best = self.level2.in_block(lo, self.level2.block_last(cell_lo));
        if cell_lo < cell_hi - 1 {
            let source = |i: usize| blocks[self.level2.min_pos[i]];
            let cell = self.top.query(cell_lo + 1, cell_hi - 1, |a, b| {
                match values[source(a)].cmp(&values[source(b)]) {
                    std::cmp::Ordering::Less => a,
                    std::cmp::Ordering::Greater => b,
                    std::cmp::Ordering::Equal => a.min(b),
                }
            });
            let cand = self.level2.min_pos[cell];
            if values[blocks[cand]] < values[blocks[best]] {
                best = cand;
            }
        }
        let cand = self.level2.in_block(self.level2.block_first(cell_hi), hi);
        if values[blocks[cand]] < values[blocks[best]] {
            best = cand;
        }
        best
    }

    pub(crate) fn word_count(&self) -> usize {
        let bytes = self.level1.masks.len() * std::mem::size_of::<u64>()
            + self.level1.min_pos.len() * std::mem::size_of::<usize>()
            + self.level2.masks.len() * std::mem::size_of::<u64>()
            + self.level2.min_pos.len() * std::mem::size_of::<usize>()
            + self.top.entry_count() * std::mem::size_of::<usize>();
        bytes.div_ceil(std::mem::size_of::<usize>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_min(values: &[i64], lo: usize, hi: usize) -> usize {
        (lo..=hi).min_by_key(|&i| (&values[i], i)).unwrap()
    }

    fn check_all_ranges(values: &[i64]) {
        let tables = BlockTables::build(values);
        for lo in 0..values.len() {
            for hi in lo..values.len() {
                assert_eq!(
                    tables.query(values, lo, hi),
                    scan_min(values, lo, hi),
                    "range [{lo}, {hi}] of {values:?}"
                );
            }
        }
    }

    #[test]
    fn small_arrays_exhaustively() {
        check_all_ranges(&[5]);
        check_all_ranges(&[2, 2, 2]);
        check_all_ranges(&[3, 1, 4, 1, 5]);
        check_all_ranges(&[9, 8, 7, 6, 5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn spans_multiple_blocks_and_cells() {
        // Long enough that queries cross level-1 blocks, level-2 cells, and
        // reach the top sparse table (block length is 10 at this size).
        let values: Vec<i64> = (0..600i64).map(|i| ((i * 37) % 101) - 50).collect();
        let tables = BlockTables::build(&values);
        for lo in (0..values.len()).step_by(7) {
            for hi in (lo..values.len()).step_by(5) {
                assert_eq!(tables.query(&values, lo, hi), scan_min(&values, lo, hi));
            }
        }
        assert_eq!(
            tables.query(&values, 0, values.len() - 1),
            scan_min(&values, 0, 599)
        );
    }

    #[test]
    fn duplicate_heavy_input_keeps_leftmost() {
        let values: Vec<i64> = (0..300).map(|i| (i % 3) as i64).collect();
        let tables = BlockTables::build(&values);
        for lo in 0..values.len() {
            let hi = values.len() - 1;
            assert_eq!(tables.query(&values, lo, hi), scan_min(&values, lo, hi));
        }
    }

    #[test]
    fn block_len_grows_with_input() {
        assert_eq!(block_len_for(0), 1);
        assert_eq!(block_len_for(1), 1);
        assert_eq!(block_len_for(2), 2);
        assert_eq!(block_len_for(1024), 11);
        assert_eq!(block_len_for((1 << 20) - 1), 20);
    }
}
