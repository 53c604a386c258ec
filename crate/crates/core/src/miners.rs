//! Top-k miners: the exhaustive oracle, the block-aligned baseline, and the
//! two local-maxima heuristics (all-pairs over the position lists, and the
//! greedy walk outward from the best local maximum).

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Sequence};
use crate::error::{Error, Result};
use crate::maxima::{compress_to_blocks, MaximaAnalysis};
use crate::prefix::PrefixCountTable;
use crate::topk::{ScoredSpan, TopK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Naive,
    Blocking,
    Arlm,
    Agmm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Naive,
        Algorithm::Blocking,
        Algorithm::Arlm,
        Algorithm::Agmm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Blocking => "blocking",
            Algorithm::Arlm => "arlm",
            Algorithm::Agmm => "agmm",
        }
    }

    pub fn mine(self, seq: &Sequence, alphabet: &Alphabet, k: usize) -> Result<Vec<ScoredSpan>> {
        match self {
            Algorithm::Naive => mine_naive(seq, alphabet, k),
            Algorithm::Blocking => mine_blocking(seq, alphabet, k),
            Algorithm::Arlm => mine_arlm(seq, alphabet, k),
            Algorithm::Agmm => mine_agmm(seq, alphabet, k),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Algorithm::Naive),
            "blocking" => Ok(Algorithm::Blocking),
            "arlm" => Ok(Algorithm::Arlm),
            "agmm" => Ok(Algorithm::Agmm),
            other => Err(format!(
                "unknown algorithm `{other}` (expected naive, blocking, arlm or agmm)"
            )),
        }
    }
}

fn check(seq: &Sequence, k: usize) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(())
}

/// Exact top-k over all `l (l + 1) / 2` spans.
pub fn mine_naive(seq: &Sequence, alphabet: &Alphabet, k: usize) -> Result<Vec<ScoredSpan>> {
    check(seq, k)?;
    let table = PrefixCountTable::new(seq, alphabet);
    let probs = alphabet.probs();
    let l = seq.len();
    let mut top = TopK::new(k);
    for start in 1..=l {
        for end in start..=l {
            top.offer(ScoredSpan::new(start, end, table.score(probs, start, end)));
        }
    }
    Ok(top.into_sorted())
}

/// Top-k over spans that start at a block start and end at a block end.
pub fn mine_blocking(seq: &Sequence, alphabet: &Alphabet, k: usize) -> Result<Vec<ScoredSpan>> {
    check(seq, k)?;
    let blocks = compress_to_blocks(seq)?;
    let table = PrefixCountTable::new(seq, alphabet);
    let probs = alphabet.probs();
    let mut top = TopK::new(k);
    for (i, first) in blocks.iter().enumerate() {
        for last in &blocks[i..] {
            let end = last.end();
            top.offer(ScoredSpan::new(first.start, end, table.score(probs, first.start, end)));
        }
    }
    Ok(top.into_sorted())
}

/// Every `(g, h)` pair with `g` from the start list, `h` from the end list and
/// `g <= h`.
pub fn arlm_candidates(analysis: &MaximaAnalysis) -> Vec<(usize, usize)> {
    let lists = &analysis.positions;
    let mut out = Vec::new();
    for &g in &lists.start_pos {
        let from = lists.end_pos.partition_point(|&h| h < g);
        out.extend(lists.end_pos[from..].iter().map(|&h| (g, h)));
    }
    out
}

pub fn mine_arlm(seq: &Sequence, alphabet: &Alphabet, k: usize) -> Result<Vec<ScoredSpan>> {
    check(seq, k)?;
    let analysis = MaximaAnalysis::new(seq, alphabet)?;
    Ok(arlm_from(&analysis, alphabet, k))
}

/// ARLM over an existing analysis.
pub fn arlm_from(analysis: &MaximaAnalysis, alphabet: &Alphabet, k: usize) -> Vec<ScoredSpan> {
    let table = &analysis.table;
    let probs = alphabet.probs();
    let lists = &analysis.positions;
    let mut top = TopK::new(k.max(1));
    for &g in &lists.start_pos {
        let from = lists.end_pos.partition_point(|&h| h < g);
        for &h in &lists.end_pos[from..] {
            top.offer(ScoredSpan::new(g, h, table.score(probs, g, h)));
        }
    }
    top.into_sorted()
}

pub fn mine_agmm(seq: &Sequence, alphabet: &Alphabet, k: usize) -> Result<Vec<ScoredSpan>> {
    check(seq, k)?;
    let analysis = MaximaAnalysis::new(seq, alphabet)?;
    Ok(agmm_from(&analysis, alphabet, k))
}

/// Every span AGMM scores, in the order it scores them.
///
/// 1. `max` is the best-scoring local-maximum suffix (leftmost on ties).
/// 2. Extend left: the start `g <= max.start` from the start list maximizing
///    the score of `(g, max.end)`.
/// 3. Extend right: holding `g`, the end `h >= max.end` from the end list
///    maximizing the score of `(g, h)`.
pub fn agmm_candidates(analysis: &MaximaAnalysis, alphabet: &Alphabet) -> Vec<ScoredSpan> {
    let table = &analysis.table;
    let probs = alphabet.probs();
    let lists = &analysis.positions;

    let mut anchor: Option<ScoredSpan> = None;
    for b in &analysis.best_suffixes {
        let s = ScoredSpan::new(b.positions[0], b.end, b.score);
        if anchor.is_none_or(|a| s.score > a.score) {
            anchor = Some(s);
        }
    }
    let Some(anchor) = anchor else {
        return Vec::new();
    };

    let mut scored = Vec::new();
    let mut left = anchor;
    for &g in lists.start_pos.iter().take_while(|&&g| g <= anchor.start) {
        let s = ScoredSpan::new(g, anchor.end, table.score(probs, g, anchor.end));
        if s.rank_cmp(&left).is_lt() {
            left = s;
        }
        scored.push(s);
    }
    let from = lists.end_pos.partition_point(|&h| h < anchor.end);
    for &h in &lists.end_pos[from..] {
        scored.push(ScoredSpan::new(left.start, h, table.score(probs, left.start, h)));
    }
    // The end list need not reach past `max.end`; the left-extended span is
    // then the answer.
    if from == lists.end_pos.len() {
        scored.push(left);
    }
    scored
}

/// AGMM over an existing analysis.
pub fn agmm_from(analysis: &MaximaAnalysis, alphabet: &Alphabet, k: usize) -> Vec<ScoredSpan> {
    let mut top = TopK::new(k.max(1));
    for s in agmm_candidates(analysis, alphabet) {
        top.offer(s);
    }
    top.into_sorted()
}
