//! Independent reference implementations used as test oracles. Nothing here
//! calls into the scoring, scanning or mining code under test.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const REL_TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Chi-square by recounting the slice from scratch.
pub fn direct_chi(slice: &[usize], probs: &[f64]) -> f64 {
    let len = slice.len() as f64;
    let mut total = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        let observed = slice.iter().filter(|&&s| s == i).count() as f64;
        total += (p * len - observed).powi(2) / (p * len);
    }
    total
}

/// Symbol-at-a-time local maxima scan: append one symbol, close on a strict
/// decrease. Returns 1-based inclusive spans.
pub fn symbol_level_maxima(data: &[usize], probs: &[f64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut cur = direct_chi(&data[0..1], probs);
    for i in 1..data.len() {
        let next = direct_chi(&data[start..=i], probs);
        if next < cur && !close(next, cur) {
            out.push((start + 1, i));
            start = i;
            cur = direct_chi(&data[i..=i], probs);
        } else {
            cur = next;
        }
    }
    out.push((start + 1, data.len()));
    out
}

/// Start positions of every suffix of `[s, e]` within tolerance of the best.
pub fn all_best_suffixes(data: &[usize], probs: &[f64], s: usize, e: usize) -> (Vec<usize>, f64) {
    let scores: Vec<(usize, f64)> = (s..=e)
        .map(|p| (p, direct_chi(&data[p - 1..e], probs)))
        .collect();
    let best = scores.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
    (
        scores.iter().filter(|x| close(x.1, best)).map(|x| x.0).collect(),
        best,
    )
}

/// Start and end candidate lists built symbol by symbol, the end list from a
/// literal reversal of the data.
pub fn reference_lists(data: &[usize], probs: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let l = data.len();
    let mut starts: Vec<usize> = symbol_level_maxima(data, probs)
        .into_iter()
        .flat_map(|(s, e)| all_best_suffixes(data, probs, s, e).0)
        .collect();
    let rev: Vec<usize> = data.iter().rev().copied().collect();
    let mut ends: Vec<usize> = symbol_level_maxima(&rev, probs)
        .into_iter()
        .flat_map(|(s, e)| all_best_suffixes(&rev, probs, s, e).0)
        .map(|r| l - r + 1)
        .collect();
    starts.sort_unstable();
    starts.dedup();
    ends.sort_unstable();
    ends.dedup();
    (starts, ends)
}

/// Every span with its directly recounted score, best first (score desc,
/// start asc, end asc).
pub fn all_spans_ranked(data: &[usize], probs: &[f64]) -> Vec<(usize, usize, f64)> {
    let l = data.len();
    let mut v = Vec::with_capacity(l * (l + 1) / 2);
    for s in 1..=l {
        for e in s..=l {
            v.push((s, e, direct_chi(&data[s - 1..e], probs)));
        }
    }
    v.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    v
}

/// A random non-degenerate distribution over `m` symbols.
pub fn random_probs(rng: &mut impl Rng, m: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

pub fn random_data(rng: &mut impl Rng, m: usize, l: usize) -> Vec<usize> {
    (0..l).map(|_| rng.random_range(0..m)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("s{i}")).collect()
}
