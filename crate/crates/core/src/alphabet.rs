//! Alphabets, sequences and the Pearson chi-square score of a symbol count.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Tolerance on `|sum(p) - 1|` accepted by [`Alphabet::new`].
pub const PROB_SUM_TOLERANCE: f64 = 1e-9;

/// A symbol set together with its occurrence probabilities (a "universe").
///
/// Labels are interned to dense indices `0..m`; everything downstream works on
/// indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    symbols: Vec<String>,
    probs: Vec<f64>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: Vec<S>, probs: Vec<f64>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() != probs.len() {
            return Err(Error::LengthMismatch {
                symbols: symbols.len(),
                probs: probs.len(),
            });
        }
        if symbols.len() < 2 {
            return Err(Error::TooFewSymbols(symbols.len()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        for (s, &p) in symbols.iter().zip(&probs) {
            // `!(p > 0)` also rejects NaN.
            if p.is_nan() || p <= 0.0 || !p.is_finite() {
                return Err(Error::ZeroOrNegativeProbability {
                    label: s.clone(),
                    prob: p,
                });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
            return Err(Error::ProbabilitySumMismatch { sum });
        }
        Ok(Self {
            symbols,
            probs,
            index,
        })
    }

    /// `m` equiprobable symbols.
    pub fn uniform<S: Into<String>>(symbols: Vec<S>) -> Result<Self> {
        let m = symbols.len();
        let p = if m == 0 { 0.0 } else { 1.0 / m as f64 };
        let probs = vec![p; m];
        // 1/m summed m times can drift by a few ulps; that is well inside tolerance.
        Self::new(symbols, probs)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn label(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// True when every label is exactly one character, so sequences can be
    /// written as a single line.
    pub fn single_char_labels(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Interns a slice of labels into a [`Sequence`].
    pub fn encode<S: AsRef<str>>(&self, labels: &[S]) -> Result<Sequence> {
        let data = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sequence { data })
    }

    /// Interns each character of `text` as a label.
    pub fn encode_chars(&self, text: &str) -> Result<Sequence> {
        let mut buf = [0u8; 4];
        let data = text
            .chars()
            .map(|c| {
                let s = c.encode_utf8(&mut buf);
                self.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sequence { data })
    }

    /// Renders symbol indices back into labels.
    pub fn render(&self, data: &[usize]) -> String {
        let sep = if self.single_char_labels() { "" } else { " " };
        data.iter()
            .map(|&i| self.symbols[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A string of symbol indices into some [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequence {
    data: Vec<usize>,
}

impl Sequence {
    /// Builds a sequence, checking every index against an alphabet of size `m`.
    pub fn new(data: Vec<usize>, m: usize) -> Result<Self> {
        if let Some(&index) = data.iter().find(|&&i| i >= m) {
            return Err(Error::SymbolOutOfRange { index, m });
        }
        Ok(Self { data })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn reversed(&self) -> Sequence {
        let mut data = self.data.clone();
        data.reverse();
        Sequence { data }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.data
    }

    /// Direct per-symbol count of the 1-based inclusive span `[start, end]`.
    pub fn count_span(&self, m: usize, start: usize, end: usize) -> CountVector {
        CountVector::from_symbols(m, &self.data[start - 1..end])
    }
}

/// Observed occurrences of each symbol in some substring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountVector {
    counts: Vec<u64>,
    total: u64,
}

impl CountVector {
    pub fn new(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn from_symbols(m: usize, symbols: &[usize]) -> Self {
        let mut counts = vec![0u64; m];
        for &s in symbols {
            counts[s] += 1;
        }
        Self::new(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Pearson chi-square of `counts` against the alphabet's expected composition:
/// `sum_i (p_i L - theta_i)^2 / (p_i L)` with `L = counts.total()`.
pub fn chi_square(counts: &CountVector, alphabet: &Alphabet) -> Result<f64> {
    if counts.total == 0 {
        return Err(Error::EmptySubstring);
    }
    debug_assert_eq!(counts.counts.len(), alphabet.len());
    Ok(chi_square_kernel(
        counts.total,
        counts.counts.iter().copied(),
        &alphabet.probs,
    ))
}

/// Shared scoring kernel. Every scoring path funnels through here so that
/// identical counts always produce bit-identical scores.
#[inline]
pub(crate) fn chi_square_kernel(
    total: u64,
    observed: impl Iterator<Item = u64>,
    probs: &[f64],
) -> f64 {
    let len = total as f64;
    let mut acc = 0.0;
    for (theta, &p) in observed.zip(probs) {
        let expected = p * len;
        let dev = theta as f64 - expected;
        acc += dev * (dev / expected);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["a", "b"], vec![0.2, 0.8]).unwrap()
    }

    #[test]
    fn validates_alphabets() {
        assert_eq!(ab().len(), 2);
        let abc = Alphabet::new(vec!["a", "b", "c"], vec![0.43, 0.36, 0.21]).unwrap();
        assert_eq!(abc.len(), 3);
        assert!(matches!(
            Alphabet::new(vec!["a", "b"], vec![0.5, 0.6]),
            Err(Error::ProbabilitySumMismatch { .. })
        ));
        assert!(matches!(
            Alphabet::new(vec!["a", "a"], vec![0.5, 0.5]),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Alphabet::new(vec!["a", "b"], vec![1.0, 0.0]),
            Err(Error::ZeroOrNegativeProbability { .. })
        ));
        assert!(matches!(
            Alphabet::new(vec!["a", "b"], vec![1.5, -0.5]),
            Err(Error::ZeroOrNegativeProbability { .. })
        ));
        assert!(matches!(
            Alphabet::new(vec!["a"], vec![1.0]),
            Err(Error::TooFewSymbols(1))
        ));
        assert!(Alphabet::uniform((0..7).map(|i| i.to_string()).collect()).is_ok());
    }

    #[test]
    fn worked_example_scores() {
        let a = ab();
        let score = |x: u64, y: u64| chi_square(&CountVector::new(vec![x, y]), &a).unwrap();
        assert_eq!(score(1, 0), 4.0);
        assert_eq!(score(2, 0), 8.0);
        assert_eq!(score(4, 0), 16.0);
        assert_eq!(score(4, 1), 11.25);
        assert_eq!(score(2, 8), 0.0);
    }

    #[test]
    fn empty_substring_is_an_error() {
        assert_eq!(
            chi_square(&CountVector::new(vec![0, 0]), &ab()),
            Err(Error::EmptySubstring)
        );
    }

    #[test]
    fn encode_and_render() {
        let a = ab();
        let s = a.encode_chars("aaaabbba").unwrap();
        assert_eq!(s.as_slice(), &[0, 0, 0, 0, 1, 1, 1, 0]);
        assert_eq!(a.render(&s.as_slice()[3..6]), "abb");
        assert_eq!(a.encode_chars("abc"), Err(Error::UnknownSymbol("c".into())));
        let words = Alphabet::new(vec!["lo", "hi"], vec![0.5, 0.5]).unwrap();
        let s = words.encode(&["hi", "lo"]).unwrap();
        assert_eq!(words.render(s.as_slice()), "hi lo");
        assert!(Sequence::new(vec![0, 2], 2).is_err());
    }
}
