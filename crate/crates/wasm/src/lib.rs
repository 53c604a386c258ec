//! wasm-bindgen surface for the demo page in `www/`. Every export takes and
//! returns plain strings; results are JSON.

use chisub_core::datagen::{generate as gen_dataset, GenSpec};
use chisub_core::io::{parse_alphabet, parse_sequence, write_alphabet, write_sequence};
use chisub_core::{expected_local_maxima, Algorithm, Alphabet, MaximaAnalysis, Sequence};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn load(seq: &str, alphabet: &str) -> Result<(Sequence, Alphabet), String> {
    let a = parse_alphabet(alphabet).map_err(|e| format!("alphabet: {e}"))?;
    let s = parse_sequence(seq, &a).map_err(|e| format!("sequence: {e}"))?;
    Ok((s, a))
}

pub fn probe_json(seq: &str, alphabet: &str) -> Result<String, String> {
    let (s, a) = load(seq, alphabet)?;
    let an = MaximaAnalysis::new(&s, &a).map_err(|e| e.to_string())?;
    let maxima: Vec<_> = an
        .local_maxima
        .iter()
        .map(|m| json!({ "start": m.start, "end": m.end, "score": m.score }))
        .collect();
    Ok(json!({
        "length": s.len(),
        "symbols": s.as_slice(),
        "blocks": an.blocks.len(),
        "local_maxima": maxima,
        "expected_local_maxima": expected_local_maxima(&a, s.len()),
        "start_pos": an.positions.start_pos,
        "end_pos": an.positions.end_pos,
    })
    .to_string())
}

pub fn mine_json(seq: &str, alphabet: &str, algo: &str, k: usize) -> Result<String, String> {
    let algorithm: Algorithm = algo.parse()?;
    let (s, a) = load(seq, alphabet)?;
    let started = now_ms();
    let top = algorithm.mine(&s, &a, k).map_err(|e| e.to_string())?;
    let elapsed = now_ms() - started;
    let spans: Vec<_> = top
        .iter()
        .map(|t| {
            json!({
                "start": t.start,
                "end": t.end,
                "score": t.score,
                "text": a.render(&s.as_slice()[t.start - 1..t.end]),
            })
        })
        .collect();
    Ok(json!({ "algo": algorithm.name(), "k": k, "elapsed_ms": elapsed, "top": spans }).to_string())
}

pub fn generate_json(length: usize, m: usize, seed: u64, chunks: usize, geom_p: f64) -> Result<String, String> {
    let mut spec = GenSpec::new(length, m, seed);
    spec.perturb_chunks = chunks;
    spec.geometric_p = geom_p;
    let (s, a) = gen_dataset(&spec).map_err(|e| e.to_string())?;
    Ok(json!({
        "sequence": write_sequence(&s, &a, &spec.header()),
        "alphabet": write_alphabet(&a),
    })
    .to_string())
}

#[cfg(target_arch = "wasm32")]
fn now_ms() -> f64 {
    #[wasm_bindgen]
    extern "C" {
        #[wasm_bindgen(js_namespace = performance, js_name = now)]
        fn performance_now() -> f64;
    }
    performance_now()
}

#[cfg(not(target_arch = "wasm32"))]
fn now_ms() -> f64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64() * 1e3)
}

#[wasm_bindgen]
pub fn probe(seq: &str, alphabet: &str) -> Result<String, JsValue> {
    probe_json(seq, alphabet).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn mine(seq: &str, alphabet: &str, algo: &str, k: usize) -> Result<String, JsValue> {
    mine_json(seq, alphabet, algo, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(length: usize, m: usize, seed: u64, chunks: usize, geom_p: f64) -> Result<String, JsValue> {
    generate_json(length, m, seed, chunks, geom_p).map_err(|e| JsValue::from_str(&e))
}
