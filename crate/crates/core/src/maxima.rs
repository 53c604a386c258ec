//! Run-length blocking, the local maxima scan, best-suffix positions and the
//! candidate start/end position lists.
//!
//! A local maximum is grown block by block. The decision to grow looks at one
//! symbol of the next block: if appending it does not lower the chi-square of
//! the current span, the whole block is taken (appending further copies of the
//! same symbol can only keep raising the score, since the score is convex in
//! the number of copies appended). A strict decrease closes the span and the
//! block opens the next local maximum.

use crate::alphabet::{Alphabet, Sequence};
use crate::error::{Error, Result};
use crate::prefix::PrefixCountTable;

/// A maximal run of one symbol. Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub symbol: usize,
    pub start: usize,
    pub length: usize,
}

impl Block {
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }
}

/// A span produced by the local maxima scan, 1-based inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMaximum {
    pub start: usize,
    pub end: usize,
    pub score: f64,
}

/// Candidate start and end positions, ascending and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PositionLists {
    pub start_pos: Vec<usize>,
    pub end_pos: Vec<usize>,
}

/// Best suffix of one local maximum: every start position reaching the top score.
#[derive(Debug, Clone, PartialEq)]
pub struct BestSuffix {
    pub positions: Vec<usize>,
    pub end: usize,
    pub score: f64,
}

pub fn compress_to_blocks(seq: &Sequence) -> Result<Vec<Block>> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(blocks_of(seq.as_slice()))
}

fn blocks_of(data: &[usize]) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, &s) in data.iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if b.symbol == s => b.length += 1,
            _ => blocks.push(Block {
                symbol: s,
                start: i + 1,
                length: 1,
            }),
        }
    }
    blocks
}

/// Scans `blocks` (in the scan's own coordinates) with `score(start, end)`.
fn scan_blocks(blocks: &[Block], score: impl Fn(usize, usize) -> f64) -> Vec<LocalMaximum> {
    let mut out = Vec::new();
    let Some(first) = blocks.first() else {
        return out;
    };
    let mut cur = LocalMaximum {
        start: first.start,
        end: first.end(),
        score: score(first.start, first.end()),
    };
    for b in &blocks[1..] {
        let probe = score(cur.start, b.start);
        if probe < cur.score {
            out.push(cur);
            cur = LocalMaximum {
                start: b.start,
                end: b.end(),
                score: score(b.start, b.end()),
            };
        } else {
            let grown = score(cur.start, b.end());
            debug_assert!(
                grown >= cur.score - 1e-9 * cur.score.max(1.0),
                "block-prefix score fell from {} to {grown}",
                cur.score
            );
            cur.end = b.end();
            cur.score = grown;
        }
    }
    out.push(cur);
    out
}

/// Every candidate start in `starts` that maximizes `score(start, end)`.
fn best_suffix_among(
    starts: impl Iterator<Item = usize>,
    end: usize,
    score: impl Fn(usize, usize) -> f64,
) -> BestSuffix {
    let mut best = f64::NEG_INFINITY;
    let mut positions = Vec::new();
    for s in starts {
        let v = score(s, end);
        if v > best {
            best = v;
            positions.clear();
            positions.push(s);
        } else if v == best {
            positions.push(s);
        }
    }
    positions.sort_unstable();
    BestSuffix {
        positions,
        end,
        score: best,
    }
}

/// Local maxima of `seq`, tiling `[1, l]` in order.
pub fn find_local_maxima(seq: &Sequence, alphabet: &Alphabet) -> Result<Vec<LocalMaximum>> {
    let blocks = compress_to_blocks(seq)?;
    let table = PrefixCountTable::new(seq, alphabet);
    let probs = alphabet.probs();
    Ok(scan_blocks(&blocks, |s, e| table.score(probs, s, e)))
}

/// Start positions of the highest-scoring suffixes of `lm`, all ties kept.
///
/// Only suffixes beginning on a block boundary are scored: a suffix that
/// starts inside a block never beats both the suffix taking the whole block and
/// the one skipping it.
pub fn best_suffix_position(
    lm: &LocalMaximum,
    table: &PrefixCountTable,
    alphabet: &Alphabet,
) -> Result<Vec<usize>> {
    if lm.start == 0 || lm.start > lm.end || lm.end > table.len() {
        return Err(Error::InvalidRange {
            start: lm.start,
            end: lm.end,
            len: table.len(),
        });
    }
    let symbol_at = |p: usize| (0..table.alphabet_size()).find(|&i| table.get(i, p) != table.get(i, p - 1));
    let starts = (lm.start..=lm.end).filter(|&p| p == lm.start || symbol_at(p) != symbol_at(p - 1));
    let probs = alphabet.probs();
    Ok(best_suffix_among(starts, lm.end, |s, e| table.score(probs, s, e)).positions)
}

/// Everything the heuristics need from one pass over the input: the prefix
/// table, blocks, forward local maxima with their best suffixes, and the
/// start/end position lists.
#[derive(Debug, Clone)]
pub struct MaximaAnalysis {
    pub table: PrefixCountTable,
    pub blocks: Vec<Block>,
    pub local_maxima: Vec<LocalMaximum>,
    pub best_suffixes: Vec<BestSuffix>,
    pub reverse_local_maxima: usize,
    pub positions: PositionLists,
}

impl MaximaAnalysis {
    pub fn new(seq: &Sequence, alphabet: &Alphabet) -> Result<Self> {
        let blocks = compress_to_blocks(seq)?;
        let table = PrefixCountTable::new(seq, alphabet);
        let probs = alphabet.probs();
        let l = seq.len();
        let fwd = |s: usize, e: usize| table.score(probs, s, e);
        // Reverse coordinates r map to forward l - r + 1; a reversed span has
        // the same counts as its mirror, so the forward table scores it.
        let rev = |s: usize, e: usize| table.score(probs, l - e + 1, l - s + 1);

        let local_maxima = scan_blocks(&blocks, fwd);
        let best_suffixes = suffixes(&blocks, &local_maxima, fwd);

        let rev_blocks: Vec<Block> = blocks
            .iter()
            .rev()
            .map(|b| Block {
                symbol: b.symbol,
                start: l - b.end() + 1,
                length: b.length,
            })
            .collect();
        let rev_maxima = scan_blocks(&rev_blocks, rev);
        let rev_suffixes = suffixes(&rev_blocks, &rev_maxima, rev);

        let mut start_pos: Vec<usize> = best_suffixes
            .iter()
            .flat_map(|b| b.positions.iter().copied())
            .collect();
        let mut end_pos: Vec<usize> = rev_suffixes
            .iter()
            .flat_map(|b| b.positions.iter().map(|&r| l - r + 1))
            .collect();
        start_pos.sort_unstable();
        start_pos.dedup();
        end_pos.sort_unstable();
        end_pos.dedup();

        Ok(Self {
            table,
            blocks,
            local_maxima,
            best_suffixes,
            reverse_local_maxima: rev_maxima.len(),
            positions: PositionLists { start_pos, end_pos },
        })
    }
}

fn suffixes(
    blocks: &[Block],
    maxima: &[LocalMaximum],
    score: impl Fn(usize, usize) -> f64 + Copy,
) -> Vec<BestSuffix> {
    let mut out = Vec::with_capacity(maxima.len());
    let mut bi = 0;
    for lm in maxima {
        while blocks[bi].start < lm.start {
            bi += 1;
        }
        let first = bi;
        while bi < blocks.len() && blocks[bi].end() <= lm.end {
            bi += 1;
        }
        let starts = blocks[first..bi].iter().map(|b| b.start);
        out.push(best_suffix_among(starts, lm.end, score));
    }
    out
}

pub fn build_position_lists(seq: &Sequence, alphabet: &Alphabet) -> Result<PositionLists> {
    Ok(MaximaAnalysis::new(seq, alphabet)?.positions)
}

/// Expected number of dissimilar adjacent pairs in a random string of length
/// `l`: `2 (l - 1) sum_{j<k} p_j p_k`. Local maxima can only end at such pairs,
/// so this bounds the expected local maxima count.
pub fn expected_local_maxima(alphabet: &Alphabet, l: usize) -> f64 {
    let p = alphabet.probs();
    let mut pairs = 0.0;
    for j in 0..p.len() {
        for k in j + 1..p.len() {
            pairs += p[j] * p[k];
        }
    }
    2.0 * l.saturating_sub(1) as f64 * pairs
}
