//! Prefix count table giving O(1) per-symbol counts over any span.

use crate::alphabet::{chi_square_kernel, Alphabet, CountVector, Sequence};
use crate::error::{Error, Result};

/// Cumulative per-symbol counts: cell `(i, j)` is the number of occurrences of
/// symbol `i` among the first `j` positions. Column 0 is all zeros, so the table
/// has `l + 1` columns.
///
/// Stored column-major (`m` consecutive counts per column) so a range query
/// touches two contiguous slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCountTable {
    m: usize,
    len: usize,
    cells: Vec<u32>,
}

impl PrefixCountTable {
    pub fn new(seq: &Sequence, alphabet: &Alphabet) -> Self {
        Self::from_symbols(seq.as_slice(), alphabet.len())
    }

    pub fn from_symbols(symbols: &[usize], m: usize) -> Self {
        let len = symbols.len();
        let mut cells = vec![0u32; (len + 1) * m];
        for (j, &s) in symbols.iter().enumerate() {
            let (prev, next) = cells.split_at_mut((j + 1) * m);
            let next = &mut next[..m];
            next.copy_from_slice(&prev[j * m..]);
            next[s] += 1;
        }
        Self { m, len, cells }
    }

    /// Number of symbols in the underlying sequence (`l`).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    /// Occurrences of `symbol` in the first `column` positions.
    pub fn get(&self, symbol: usize, column: usize) -> u32 {
        self.cells[column * self.m + symbol]
    }

    #[inline]
    fn column(&self, j: usize) -> &[u32] {
        &self.cells[j * self.m..(j + 1) * self.m]
    }

    fn check(&self, start: usize, end: usize) -> Result<()> {
        if start == 0 || start > end || end > self.len {
            return Err(Error::InvalidRange {
                start,
                end,
                len: self.len,
            });
        }
        Ok(())
    }

    /// Per-symbol counts of the 1-based inclusive span `[start, end]`.
    pub fn range_counts(&self, start: usize, end: usize) -> Result<CountVector> {
        self.check(start, end)?;
        let lo = self.column(start - 1);
        let hi = self.column(end);
        Ok(CountVector::new(
            hi.iter().zip(lo).map(|(&h, &l)| u64::from(h - l)).collect(),
        ))
    }

    /// Chi-square of `[start, end]` with bounds already validated by the caller.
    ///
    /// Bit-identical to `chi_square(range_counts(start, end))`.
    #[inline]
    pub fn score(&self, probs: &[f64], start: usize, end: usize) -> f64 {
        debug_assert!(start >= 1 && start <= end && end <= self.len);
        let lo = self.column(start - 1);
        let hi = self.column(end);
        chi_square_kernel(
            (end - start + 1) as u64,
            hi.iter().zip(lo).map(|(&h, &l)| u64::from(h - l)),
            probs,
        )
    }
}

/// Chi-square of the 1-based inclusive span `[start, end]`.
pub fn chi_square_range(
    table: &PrefixCountTable,
    alphabet: &Alphabet,
    start: usize,
    end: usize,
) -> Result<f64> {
    table.check(start, end)?;
    Ok(table.score(alphabet.probs(), start, end))
}
