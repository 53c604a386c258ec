//! Benchmark harness: timings, block and local-maxima counts, and per-rank
//! approximation ratios against the exhaustive oracle.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::alphabet::{Alphabet, Sequence};
use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::maxima::MaximaAnalysis;
use crate::miners::{mine_naive, Algorithm};
use crate::topk::ScoredSpan;

pub const DEFAULT_ORACLE_CAP: usize = 20_000;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub k: usize,
    pub repeats: usize,
    /// Compute approximation ratios against the naive oracle.
    pub ratio: bool,
    /// Longest sequence the oracle may run on unless `force_oracle` is set.
    pub oracle_cap: usize,
    pub force_oracle: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            k: 1,
            repeats: 1,
            ratio: true,
            oracle_cap: DEFAULT_ORACLE_CAP,
            force_oracle: false,
        }
    }
}

/// Per-rank ratios of a heuristic against the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub ratios: Vec<f64>,
    /// Ranks (0-based) the heuristic did not fill; reported as ratio 0.
    pub missing: Vec<usize>,
}

impl RatioReport {
    pub fn min(&self) -> f64 {
        self.ratios.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `heuristic[r].score / oracle[r].score` for every oracle rank.
pub fn approximation_ratio(heuristic: &[ScoredSpan], oracle: &[ScoredSpan]) -> Result<RatioReport> {
    if oracle.is_empty() {
        return Err(Error::EmptyOracle);
    }
    let mut ratios = Vec::with_capacity(oracle.len());
    let mut missing = Vec::new();
    for (r, o) in oracle.iter().enumerate() {
        match heuristic.get(r) {
            Some(h) if o.score > 0.0 => ratios.push(h.score / o.score),
            // Both spans score zero only when every span does.
            Some(_) => ratios.push(1.0),
            None => {
                ratios.push(0.0);
                missing.push(r);
            }
        }
    }
    Ok(RatioReport { ratios, missing })
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    /// Median over repeats.
    pub elapsed: Duration,
    pub blocks: usize,
    pub local_maxima: usize,
    pub topk: Vec<ScoredSpan>,
    pub ratio: Option<RatioReport>,
}

impl BenchResult {
    pub fn topk_scores(&self) -> Vec<f64> {
        self.topk.iter().map(|s| s.score).collect()
    }

    pub fn median_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

/// Runs each configured algorithm `repeats` times on one dataset. Timings cover
/// the whole mining call, preprocessing included.
pub fn run_benchmark(
    dataset: &str,
    seq: &Sequence,
    alphabet: &Alphabet,
    config: &BenchConfig,
) -> Result<Vec<BenchResult>> {
    if config.k == 0 {
        return Err(Error::ZeroK);
    }
    let l = seq.len();
    if config.ratio && l > config.oracle_cap && !config.force_oracle {
        return Err(Error::OracleTooLarge {
            len: l,
            cap: config.oracle_cap,
        });
    }
    let analysis = MaximaAnalysis::new(seq, alphabet)?;
    let repeats = config.repeats.max(1);

    let mut runs = Vec::with_capacity(config.algorithms.len());
    for &algo in &config.algorithms {
        let mut times = Vec::with_capacity(repeats);
        let mut topk = Vec::new();
        for _ in 0..repeats {
            let t = Instant::now();
            topk = algo.mine(seq, alphabet, config.k)?;
            times.push(t.elapsed().max(Duration::from_nanos(1)));
        }
        times.sort_unstable();
        runs.push((algo, times[times.len() / 2], topk));
    }

    let oracle = if config.ratio {
        match runs.iter().find(|r| r.0 == Algorithm::Naive) {
            Some(r) => Some(r.2.clone()),
            None => Some(mine_naive(seq, alphabet, config.k)?),
        }
    } else {
        None
    };

    runs.into_iter()
        .map(|(algorithm, elapsed, topk)| {
            let ratio = oracle
                .as_deref()
                .map(|o| approximation_ratio(&topk, o))
                .transpose()?;
            Ok(BenchResult {
                dataset: dataset.to_string(),
                algorithm,
                k: config.k,
                l,
                m: alphabet.len(),
                elapsed,
                blocks: analysis.blocks.len(),
                local_maxima: analysis.local_maxima.len(),
                topk,
                ratio,
            })
        })
        .collect()
}

pub const TSV_HEADER: &str =
    "dataset\talgo\tk\tl\tm\tblocks\tlocal_maxima\tmedian_ms\tmin_ratio\tratios";

fn ratio_cells(r: &BenchResult) -> (String, String) {
    match &r.ratio {
        Some(rep) => (
            fmt_sig(rep.min(), 6),
            rep.ratios.iter().map(|&x| fmt_sig(x, 6)).collect::<Vec<_>>().join(","),
        ),
        None => ("NA".into(), "NA".into()),
    }
}

pub fn to_tsv(results: &[BenchResult]) -> String {
    let mut out = format!("{TSV_HEADER}\n");
    for r in results {
        let (min, all) = ratio_cells(r);
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{}\t{}",
            r.dataset, r.algorithm, r.k, r.l, r.m, r.blocks, r.local_maxima, r.median_ms(), min, all
        );
    }
    out
}

/// Aligned plain-text table of the same columns.
pub fn to_table(results: &[BenchResult]) -> String {
    let header: Vec<String> = TSV_HEADER.split('\t').map(str::to_string).collect();
    let mut rows = vec![header];
    for r in results {
        let (min, all) = ratio_cells(r);
        rows.push(vec![
            r.dataset.clone(),
            r.algorithm.to_string(),
            r.k.to_string(),
            r.l.to_string(),
            r.m.to_string(),
            r.blocks.to_string(),
            r.local_maxima.to_string(),
            format!("{:.3}", r.median_ms()),
            min,
            all,
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&rule.join("  "));
            out.push('\n');
        }
    }
    out
}

/// Long-format rows for plotting a sweep: one row per (point, algorithm).
pub fn plot_data(sweep: &str, points: &[(String, Vec<BenchResult>)]) -> String {
    let mut out = String::from("sweep\tvalue\talgo\tmedian_ms\tmin_ratio\tblocks\tlocal_maxima\n");
    for (value, results) in points {
        for r in results {
            let (min, _) = ratio_cells(r);
            let _ = writeln!(
                out,
                "{sweep}\t{value}\t{}\t{:.3}\t{min}\t{}\t{}",
                r.algorithm,
                r.median_ms(),
                r.blocks,
                r.local_maxima
            );
        }
    }
    out
}
