//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line to stderr
//! (bypassing output capture) and then asserts.
//!
//! The tests share one lock so the timing criterion is not disturbed by the
//! others running concurrently.

mod common;

use std::collections::HashSet;
use std::io::Write;
use std::sync::Mutex;
use std::time::Duration;

use chisub_core::bench::{approximation_ratio, run_benchmark, BenchConfig};
use chisub_core::datagen::{gen_uniform, generate, GenSpec};
use chisub_core::miners::arlm_candidates;
use chisub_core::{
    chi_square, chi_square_range, compress_to_blocks, expected_local_maxima, find_local_maxima,
    mine_agmm, mine_arlm, mine_blocking, mine_naive, Algorithm, Alphabet, CountVector,
    MaximaAnalysis, PrefixCountTable, ScoredSpan, Sequence, TopK,
};
use common::*;
use rand::Rng;

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "\n[{tag}] criterion {n}: {title}: {detail}");
}

fn note(line: &str) {
    let _ = writeln!(std::io::stderr(), "    {line}");
}

fn pos(v: &[ScoredSpan]) -> Vec<(usize, usize)> {
    v.iter().map(|s| (s.start, s.end)).collect()
}

#[test]
fn criterion_1_worked_example() {
    let _g = serial();
    let a = Alphabet::new(vec!["a", "b"], vec![0.2, 0.8]).unwrap();
    let s = a.encode_chars("aaaabbba").unwrap();
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let chi = |x: u64, y: u64| chi_square(&CountVector::new(vec![x, y]), &a).unwrap();
    check(chi(1, 0) == 4.0, "chi(a) = 4");
    check(chi(2, 0) == 8.0, "chi(aa) = 8");
    check(chi(4, 0) == 16.0, "chi(aaaa) = 16");
    check(chi(4, 1) == 11.25, "chi(aaaab) = 11.25");

    let lms: Vec<_> = find_local_maxima(&s, &a).unwrap().iter().map(|m| (m.start, m.end)).collect();
    check(lms == vec![(1, 4), (5, 7), (8, 8)], "local maxima");

    let an = MaximaAnalysis::new(&s, &a).unwrap();
    check(an.positions.start_pos == vec![1, 5, 8], "start_pos");
    check(an.positions.end_pos == vec![4, 7, 8], "end_pos");
    let pairs: HashSet<_> = arlm_candidates(&an).into_iter().collect();
    let listed: HashSet<_> = [(1, 8), (1, 7), (1, 4), (5, 8), (5, 7), (8, 8)].into_iter().collect();
    check(pairs == listed, "ARLM candidate pairs");

    for algo in Algorithm::ALL {
        let top = algo.mine(&s, &a, 1).unwrap();
        check(top == vec![ScoredSpan::new(1, 4, 16.0)], &format!("{algo} top-1"));
    }
    for f in [mine_arlm, mine_agmm] {
        let top = f(&s, &a, 2).unwrap();
        check(
            pos(&top) == vec![(1, 4), (1, 8)] && (top[1].score - 9.03125).abs() <= 1e-9,
            "ARLM/AGMM top-2",
        );
    }
    let t = PrefixCountTable::new(&s, &a);
    check(chi_square_range(&t, &a, 1, 8).unwrap() == 9.03125, "chi(1,8)");

    let pass = failures.is_empty();
    report(1, "worked example", pass, &if pass { "all values match".into() } else { failures.join(", ") });
    assert!(pass, "{failures:?}");
}

/// An ARLM miss is genuine when even symbol-level reference lists, scored by
/// direct recount, cannot reach the exhaustive best.
fn genuine_counterexample(data: &[usize], probs: &[f64]) -> (bool, (usize, usize, f64)) {
    let best = all_spans_ranked(data, probs)[0];
    let (starts, ends) = reference_lists(data, probs);
    let reachable = starts
        .iter()
        .flat_map(|&g| ends.iter().filter(move |&&h| h >= g).map(move |&h| (g, h)))
        .map(|(g, h)| direct_chi(&data[g - 1..h], probs))
        .fold(f64::NEG_INFINITY, f64::max);
    (reachable < best.2 && !close(reachable, best.2), best)
}

#[test]
fn criterion_2_oracle_equivalence_sweep() {
    let _g = serial();
    let mut rng = rng(2024);
    let instances = 1_000;
    let mut exact = 0;
    let mut genuine = Vec::new();
    let mut unexplained = Vec::new();
    let mut worst_ratio = 1.0f64;
    for i in 0..instances {
        let m = rng.random_range(2..=6);
        let l = rng.random_range(1..=200);
        let probs = random_probs(&mut rng, m);
        let data = random_data(&mut rng, m, l);
        let a = Alphabet::new(labels(m), probs.clone()).unwrap();
        let s = Sequence::new(data.clone(), m).unwrap();
        let naive = mine_naive(&s, &a, 1).unwrap()[0];
        let arlm = mine_arlm(&s, &a, 1).unwrap()[0];
        let ratio = arlm.score / naive.score;
        worst_ratio = worst_ratio.min(ratio);
        if ratio == 1.0 {
            exact += 1;
            continue;
        }
        let (is_genuine, best) = genuine_counterexample(&data, &probs);
        let entry = format!(
            "instance {i}: m={m} l={l} best=({},{},{:.6}) arlm=({},{},{:.6}) ratio={ratio:.6}",
            best.0, best.1, best.2, arlm.start, arlm.end, arlm.score
        );
        if is_genuine && close(best.2, naive.score) {
            genuine.push(entry);
        } else {
            unexplained.push(entry);
        }
    }

    // Smallest documented counterexample, checked by hand:
    // p = (0.6, 0.3, 0.1), "bcb" is one local maximum (1,3) with chi 4.777...,
    // so both lists hold a single position and ARLM returns (1,3); the lone
    // `c` at (2,2) scores 0.6 + 0.3 + 8.1 = 9.
    let small = Alphabet::new(vec!["a", "b", "c"], vec![0.6, 0.3, 0.1]).unwrap();
    let bcb = small.encode_chars("bcb").unwrap();
    let small_lists = MaximaAnalysis::new(&bcb, &small).unwrap().positions;
    let small_ok = small_lists.start_pos == vec![1]
        && small_lists.end_pos == vec![3]
        && pos(&mine_arlm(&bcb, &small, 1).unwrap()) == vec![(1, 3)]
        && close(mine_naive(&bcb, &small, 1).unwrap()[0].score, 9.0);

    let pass = unexplained.is_empty() && small_ok;
    report(
        2,
        "ARLM vs exhaustive top-1",
        pass,
        &format!(
            "exact on {exact}/{instances}; {} misses, all confirmed genuine counterexamples to the \
             start-position conjecture by symbol-level reference lists; {} unexplained; worst ratio {worst_ratio:.6}",
            genuine.len(),
            unexplained.len()
        ),
    );
    note("documented counterexample: p=(0.6,0.3,0.1), \"bcb\": ARLM (1,3) 4.77778, exact (2,2) 9");
    for e in genuine.iter().take(10) {
        note(&format!("counterexample {e}"));
    }
    for e in &unexplained {
        note(&format!("UNEXPLAINED {e}"));
    }
    assert!(pass);
}

#[test]
fn criterion_3_approximation_ratio() {
    let _g = serial();
    let datasets = 50u64;
    let ks = [1usize, 2, 5, 10];
    let kmax = 10;
    let (mut cells, mut good) = (0usize, 0usize);
    let mut arlm_exact = 0;
    let mut worst = Vec::new();
    for seed in 0..datasets {
        let (s, a) = generate(&GenSpec::new(10_000, 5, seed)).unwrap();
        let oracle = mine_naive(&s, &a, kmax).unwrap();
        // Per-rank ratios for every k; a (dataset, rank) cell passes when the
        // ratio at that rank is at least 0.96 for every k that covers it.
        let mut rank_ok = vec![true; kmax];
        for &k in &ks {
            let agmm = mine_agmm(&s, &a, k).unwrap();
            let rep = approximation_ratio(&agmm, &oracle[..k]).unwrap();
            for (r, &x) in rep.ratios.iter().enumerate() {
                rank_ok[r] &= x >= 0.96;
            }
        }
        cells += kmax;
        good += rank_ok.iter().filter(|&&ok| ok).count();
        let arlm = mine_arlm(&s, &a, 1).unwrap()[0];
        if arlm.score == oracle[0].score {
            arlm_exact += 1;
        }
        let agmm1 = mine_agmm(&s, &a, 1).unwrap()[0];
        worst.push((agmm1.score / oracle[0].score, seed));
    }
    worst.sort_by(|x, y| x.0.total_cmp(&y.0));
    let share = good as f64 / cells as f64;
    let pass = share >= 0.95 && arlm_exact == datasets as usize;
    report(
        3,
        "approximation ratio on perturbed l=10^4, m=5",
        pass,
        &format!(
            "AGMM ratio >= 0.96 in {good}/{cells} (dataset, rank) cells ({:.1}%, need >= 95%); \
             ARLM top-1 exact on {arlm_exact}/{datasets}",
            share * 100.0
        ),
    );
    let lowest: Vec<String> = worst.iter().take(5).map(|(r, s)| format!("seed {s}: {r:.3}")).collect();
    note(&format!("lowest AGMM top-1 ratios: {}", lowest.join(", ")));
    assert!(pass, "AGMM share {share}, ARLM exact {arlm_exact}");
}

#[test]
fn criterion_4_count_inequality() {
    let _g = serial();
    let mut violations = 0;
    let mut checked = 0;
    for seed in 0..50 {
        let (s, a) = generate(&GenSpec::new(10_000, 5, seed)).unwrap();
        let an = MaximaAnalysis::new(&s, &a).unwrap();
        checked += 1;
        violations += usize::from(an.local_maxima.len() > an.blocks.len());
    }
    let (reference_blocks, reference_lm) = (7_821.0, 6_740.0);
    let band = |x: f64, target: f64| (x - target).abs() <= 0.25 * target;
    let mut in_band = true;
    let mut seen = Vec::new();
    for seed in 100..105 {
        let (s, a) = gen_uniform(&GenSpec::new(10_000, 5, seed)).unwrap();
        let an = MaximaAnalysis::new(&s, &a).unwrap();
        let (b, d) = (an.blocks.len(), an.local_maxima.len());
        checked += 1;
        violations += usize::from(d > b);
        in_band &= band(b as f64, reference_blocks) && band(d as f64, reference_lm);
        seen.push(format!("{b}/{d}"));
    }
    let pass = violations == 0 && in_band;
    report(
        4,
        "local maxima <= blocks",
        pass,
        &format!(
            "{violations} violations over {checked} datasets; uniform l=10^4 m=5 blocks/local maxima = {} \
             (band 7821 +-25% / 6740 +-25%)",
            seen.join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_expected_count_formula() {
    let _g = serial();
    let (l, strings) = (10_001, 100u64);
    let mut total = 0usize;
    let mut alphabet = None;
    for seed in 0..strings {
        let (s, a) = gen_uniform(&GenSpec::new(l, 2, 5_000 + seed)).unwrap();
        total += compress_to_blocks(&s).unwrap().len() - 1;
        alphabet = Some(a);
    }
    let mean = total as f64 / strings as f64;
    let formula = expected_local_maxima(&alphabet.unwrap(), l);
    let pass = (mean - 5_000.0).abs() <= 150.0 && formula == 5_000.0;
    report(
        5,
        "expected dissimilar-pair count",
        pass,
        &format!("mean {mean:.2} over {strings} strings (target 5000 +- 150), closed form {formula}"),
    );
    assert!(pass);
}

#[test]
fn criterion_6_property_suites() {
    let _g = serial();
    let cases = 10_000;
    let mut rng = rng(6);
    let mut results: Vec<(&str, usize)> = Vec::new();

    let random_alphabet = |rng: &mut rand_chacha::ChaCha8Rng| {
        let m = rng.random_range(2..=6);
        Alphabet::new(labels(m), random_probs(rng, m)).unwrap()
    };
    let counts = |a: &Alphabet, d: &[usize]| CountVector::from_symbols(a.len(), d);

    let mut fails = 0;
    for _ in 0..cases {
        let a = random_alphabet(&mut rng);
        let (la, lb) = (rng.random_range(1..100), rng.random_range(1..100));
        let x = random_data(&mut rng, a.len(), la);
        let y = random_data(&mut rng, a.len(), lb);
        let xy: Vec<usize> = x.iter().chain(&y).copied().collect();
        let (cx, cy, cxy) = (
            chi_square(&counts(&a, &x), &a).unwrap(),
            chi_square(&counts(&a, &y), &a).unwrap(),
            chi_square(&counts(&a, &xy), &a).unwrap(),
        );
        fails += usize::from(cx + cy < cxy - 1e-9 * cxy.max(1.0));
    }
    results.push(("subadditivity", fails));

    let mut fails = 0;
    let mut n = 0;
    while n < cases {
        let a = random_alphabet(&mut rng);
        let sym = rng.random_range(0..a.len());
        let mut prev = f64::NEG_INFINITY;
        for run in 1..=1000u64 {
            let mut c = vec![0u64; a.len()];
            c[sym] = run;
            let v = chi_square(&CountVector::new(c), &a).unwrap();
            fails += usize::from(v <= prev);
            prev = v;
            n += 1;
        }
    }
    results.push(("single-symbol monotonicity", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let a = random_alphabet(&mut rng);
        let (la, lb) = (rng.random_range(1..100), rng.random_range(1..100));
        let x = random_data(&mut rng, a.len(), la);
        let y = random_data(&mut rng, a.len(), lb);
        let xy: Vec<usize> = x.iter().chain(&y).copied().collect();
        let yx: Vec<usize> = y.iter().chain(&x).copied().collect();
        fails += usize::from(
            chi_square(&counts(&a, &xy), &a).unwrap() != chi_square(&counts(&a, &yx), &a).unwrap(),
        );
    }
    results.push(("concatenation commutativity", fails));

    let mut fails = 0;
    let mut n = 0;
    while n < cases {
        let a = random_alphabet(&mut rng);
        let l = rng.random_range(1..=500);
        let s = Sequence::new(random_data(&mut rng, a.len(), l), a.len()).unwrap();
        let t = PrefixCountTable::new(&s, &a);
        for _ in 0..100 {
            let st = rng.random_range(1..=l);
            let en = rng.random_range(st..=l);
            fails += usize::from(t.range_counts(st, en).unwrap() != s.count_span(a.len(), st, en));
            n += 1;
        }
    }
    results.push(("prefix-table range counts", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let k = rng.random_range(1..8);
        let mut seen = HashSet::new();
        let spans: Vec<ScoredSpan> = (0..rng.random_range(0..40))
            .map(|_| {
                let s = rng.random_range(1..15);
                ScoredSpan::new(s, s + rng.random_range(0..5), rng.random_range(0..6) as f64)
            })
            .filter(|sp| seen.insert((sp.start, sp.end)))
            .collect();
        let (mut fwd, mut rev) = (TopK::new(k), TopK::new(k));
        spans.iter().for_each(|&sp| {
            fwd.offer(sp);
        });
        spans.iter().rev().for_each(|&sp| {
            rev.offer(sp);
        });
        let mut expected = spans.clone();
        expected.sort_by(ScoredSpan::rank_cmp);
        expected.truncate(k);
        let (f, r) = (fwd.into_sorted(), rev.into_sorted());
        fails += usize::from(f != expected || r != expected);
    }
    results.push(("top-k total order determinism", fails));

    let pass = results.iter().all(|r| r.1 == 0);
    let detail: Vec<String> = results.iter().map(|(n, f)| format!("{n} {f} failures")).collect();
    report(6, &format!("property suites, >= {cases} cases each"), pass, &detail.join("; "));
    assert!(pass);
}

#[test]
fn criterion_7_runtime_ordering() {
    let _g = serial();
    let (big, a_big) = generate(&GenSpec::new(100_000, 5, 7)).unwrap();
    let cfg = |algorithms: Vec<Algorithm>, repeats| BenchConfig {
        algorithms,
        k: 1,
        repeats,
        ratio: false,
        ..BenchConfig::default()
    };
    let agmm = run_benchmark("l=1e5", &big, &a_big, &cfg(vec![Algorithm::Agmm], 5)).unwrap();
    let heavy = run_benchmark(
        "l=1e5",
        &big,
        &a_big,
        &cfg(vec![Algorithm::Arlm, Algorithm::Blocking], 3),
    )
    .unwrap();
    let (small, a_small) = generate(&GenSpec::new(20_000, 5, 7)).unwrap();
    let naive_small =
        run_benchmark("l=2e4", &small, &a_small, &cfg(vec![Algorithm::Naive], 3)).unwrap();
    let naive_extrapolated = naive_small[0].elapsed.mul_f64(25.0);

    let an = MaximaAnalysis::new(&big, &a_big).unwrap();
    let ends = &an.positions.end_pos;
    let arlm_pairs: usize = an
        .positions
        .start_pos
        .iter()
        .map(|&g| ends.len() - ends.partition_point(|&h| h < g))
        .sum();
    let b = an.blocks.len();
    let blocking_pairs = b * (b + 1) / 2;

    let t_agmm = agmm[0].elapsed;
    let (t_arlm, t_block) = (heavy[0].elapsed, heavy[1].elapsed);
    let pass = t_agmm < t_arlm && t_arlm < t_block && t_block < naive_extrapolated;
    let ms = |d: Duration| format!("{:.1} ms", d.as_secs_f64() * 1e3);
    report(
        7,
        "runtime ordering at l=10^5, m=5, k=1",
        pass,
        &format!(
            "agmm {} < arlm {} < blocking {} < naive (extrapolated from l=2*10^4) {}; blocks {} local maxima {}",
            ms(t_agmm),
            ms(t_arlm),
            ms(t_block),
            ms(naive_extrapolated),
            heavy[0].blocks,
            heavy[0].local_maxima
        ),
    );
    note(&format!(
        "scored pairs: arlm {arlm_pairs} (|start_pos| {} x |end_pos| {}), blocking {blocking_pairs}",
        an.positions.start_pos.len(),
        an.positions.end_pos.len()
    ));
    assert!(pass);
}

#[test]
fn blocking_top1_never_exceeds_naive() {
    let _g = serial();
    let mut rng = rng(77);
    for _ in 0..300 {
        let m = rng.random_range(2..=4);
        let a = Alphabet::new(labels(m), random_probs(&mut rng, m)).unwrap();
        let l = rng.random_range(1..=120);
        let s = Sequence::new(random_data(&mut rng, m, l), m).unwrap();
        assert!(mine_blocking(&s, &a, 1).unwrap()[0].score <= mine_naive(&s, &a, 1).unwrap()[0].score);
    }
}
