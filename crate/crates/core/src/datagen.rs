//! Synthetic corpora (uniform background with geometric-skewed chunks) and
//! quantization of numeric series into symbol strings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::alphabet::{Alphabet, Sequence};
use crate::error::{Error, Result};

/// Name of the generator written into dataset headers.
pub const RNG_NAME: &str = "chacha8";

pub const DEFAULT_GEOMETRIC_P: f64 = 0.3;
pub const DEFAULT_CHUNKS: usize = 3;

/// Parameters of a synthetic dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub length: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    pub perturb_chunks: usize,
    /// Inclusive bounds on chunk length.
    pub chunk_len_range: (usize, usize),
    pub geometric_p: f64,
}

impl GenSpec {
    /// Defaults: 3 chunks, chunk lengths in `[l/100, l/20]`, `p = 0.3`.
    pub fn new(length: usize, alphabet_size: usize, seed: u64) -> Self {
        Self {
            length,
            alphabet_size,
            seed,
            perturb_chunks: DEFAULT_CHUNKS,
            chunk_len_range: default_chunk_range(length),
            geometric_p: DEFAULT_GEOMETRIC_P,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidSpec("length must be at least 1".into()));
        }
        if self.alphabet_size < 2 {
            return Err(Error::InvalidSpec("alphabet size must be at least 2".into()));
        }
        if !(self.geometric_p > 0.0 && self.geometric_p < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "geometric p must lie in (0, 1), got {}",
                self.geometric_p
            )));
        }
        let (lo, hi) = self.chunk_len_range;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidSpec(format!("bad chunk length range {lo}..{hi}")));
        }
        Ok(())
    }

    /// Header line recording every parameter needed to replay the dataset.
    pub fn header(&self) -> String {
        format!(
            "# seed={} m={} l={} chunks={} p_geom={}\n# rng={} chunk_len={}..{} chunk_symbol=(G-1)%m\n",
            self.seed,
            self.alphabet_size,
            self.length,
            self.perturb_chunks,
            self.geometric_p,
            RNG_NAME,
            self.chunk_len_range.0,
            self.chunk_len_range.1,
        )
    }
}

pub fn default_chunk_range(length: usize) -> (usize, usize) {
    let lo = (length / 100).max(1);
    let hi = (length / 20).max(lo);
    (lo, hi)
}

/// Labels for a generated alphabet: `a..z` when they fit, else `s0, s1, ...`.
pub fn symbol_labels(m: usize) -> Vec<String> {
    if m <= 26 {
        (b'a'..b'a' + m as u8).map(|c| (c as char).to_string()).collect()
    } else {
        (0..m).map(|i| format!("s{i}")).collect()
    }
}

/// I.i.d. uniform symbols; the alphabet carries `p_i = 1/m`.
pub fn gen_uniform(spec: &GenSpec) -> Result<(Sequence, Alphabet)> {
    spec.validate()?;
    let m = spec.alphabet_size;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let data: Vec<usize> = (0..spec.length).map(|_| rng.random_range(0..m)).collect();
    let alphabet = Alphabet::uniform(symbol_labels(m))?;
    Ok((Sequence::new(data, m)?, alphabet))
}

/// Overwrites `spec.perturb_chunks` chunks with symbols `(G - 1) mod m`,
/// `G ~ Geometric(p)` on `{1, 2, ...}`. Chunk lengths are uniform over
/// `chunk_len_range` (clipped to the sequence), placements uniform such that
/// the chunk lies fully inside.
///
/// Uses its own stream derived from the seed, so perturbing is reproducible
/// independently of how the background was drawn.
pub fn perturb_geometric(seq: &Sequence, spec: &GenSpec) -> Result<Sequence> {
    spec.validate()?;
    let m = spec.alphabet_size;
    let mut data = seq.as_slice().to_vec();
    if data.is_empty() || spec.perturb_chunks == 0 {
        return Sequence::new(data, m);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(1);
    let geom = Geometric::new(spec.geometric_p)
        .map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let l = data.len();
    let (lo, hi) = spec.chunk_len_range;
    for _ in 0..spec.perturb_chunks {
        let len = rng.random_range(lo..=hi).min(l);
        let start = rng.random_range(0..=l - len);
        for slot in &mut data[start..start + len] {
            // rand_distr counts failures before the first success, i.e. G - 1.
            *slot = (geom.sample(&mut rng) % m as u64) as usize;
        }
    }
    Sequence::new(data, m)
}

/// `gen_uniform` followed by `perturb_geometric`.
pub fn generate(spec: &GenSpec) -> Result<(Sequence, Alphabet)> {
    let (seq, alphabet) = gen_uniform(spec)?;
    Ok((perturb_geometric(&seq, spec)?, alphabet))
}

/// Ordered bins mapping numbers to labels; each bin covers
/// `[lower_bound, next_lower_bound)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationScheme {
    pub name: String,
    pub bins: Vec<(f64, String)>,
}

impl QuantizationScheme {
    pub fn new(name: impl Into<String>, bins: Vec<(f64, String)>) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::InvalidScheme("no bins".into()));
        }
        for w in bins.windows(2) {
            if w[0].0.partial_cmp(&w[1].0) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidScheme(format!(
                    "bounds must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        let mut labels: Vec<&str> = bins.iter().map(|b| b.1.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidScheme("duplicate label".into()));
        }
        Ok(Self {
            name: name.into(),
            bins,
        })
    }

    /// Runs per innings: 0-9 A, 10-24 B, 25-49 C, 50-99 D, 100+ E.
    pub fn cricket() -> Self {
        Self::preset("cricket", &[(0.0, "A"), (10.0, "B"), (25.0, "C"), (50.0, "D"), (100.0, "E")])
    }

    /// Clicks per session: 1-3 A, 4-9 B, 10+ C.
    pub fn clicks() -> Self {
        Self::preset("clicks", &[(1.0, "A"), (4.0, "B"), (10.0, "C")])
    }

    fn preset(name: &str, bins: &[(f64, &str)]) -> Self {
        Self::new(name, bins.iter().map(|&(b, l)| (b, l.to_string())).collect())
            .expect("preset schemes are valid")
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "cricket" => Some(Self::cricket()),
            "clicks" => Some(Self::clicks()),
            _ => None,
        }
    }

    /// Bin index of `value`.
    pub fn bin_of(&self, value: f64) -> Result<usize> {
        if value.is_nan() || value < self.bins[0].0 {
            return Err(Error::ValueOutOfRange(value));
        }
        Ok(self.bins.partition_point(|b| b.0 <= value) - 1)
    }
}

/// A quantized series before alphabet validation: only bins that occur are
/// kept as symbols, with their empirical frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantized {
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
    pub data: Vec<usize>,
}

impl Quantized {
    /// Validates into an alphabet and sequence. Fails with
    /// [`Error::TooFewSymbols`] when the whole series fell in one bin.
    pub fn into_parts(self) -> Result<(Sequence, Alphabet)> {
        let alphabet = Alphabet::new(self.labels, self.probs)?;
        let seq = Sequence::new(self.data, alphabet.len())?;
        Ok((seq, alphabet))
    }

    /// Replaces the empirical probabilities, keyed by label.
    pub fn with_probs(mut self, probs: &[(String, f64)]) -> Result<Self> {
        for (label, p) in self.labels.iter().zip(self.probs.iter_mut()) {
            *p = probs
                .iter()
                .find(|(l, _)| l == label)
                .map(|&(_, p)| p)
                .ok_or_else(|| Error::UnknownSymbol(label.clone()))?;
        }
        Ok(self)
    }
}

pub fn quantize_series(values: &[f64], scheme: &QuantizationScheme) -> Result<Quantized> {
    let bins = values
        .iter()
        .map(|&v| scheme.bin_of(v))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0usize; scheme.bins.len()];
    for &b in &bins {
        counts[b] += 1;
    }
    // Dense re-indexing over the bins that actually occur, in bin order.
    let mut remap = vec![usize::MAX; counts.len()];
    let mut labels = Vec::new();
    let mut probs = Vec::new();
    let n = values.len() as f64;
    for (b, &c) in counts.iter().enumerate() {
        if c > 0 {
            remap[b] = labels.len();
            labels.push(scheme.bins[b].1.clone());
            probs.push(c as f64 / n);
        }
    }
    let data = bins.iter().map(|&b| remap[b]).collect();
    Ok(Quantized {
        labels,
        probs,
        data,
    })
}
