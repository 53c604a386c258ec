//! Text formats: alphabet files, sequence files, quantization bins, numeric
//! series and mining result rows.

use crate::alphabet::{Alphabet, Sequence};
use crate::datagen::QuantizationScheme;
use crate::error::{Error, Result};
use crate::topk::ScoredSpan;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn two_fields(line: &str) -> Option<(&str, &str)> {
    match line.split_once('\t') {
        Some((a, b)) => Some((a.trim(), b.trim())),
        None => {
            let mut it = line.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Some((a, b)),
                _ => None,
            }
        }
    }
}

/// `label<TAB>probability` per line; `#` lines are comments.
pub fn parse_alphabet(text: &str) -> Result<Alphabet> {
    let mut labels = Vec::new();
    let mut probs = Vec::new();
    for (n, line) in content_lines(text) {
        let (label, prob) = two_fields(line).ok_or_else(|| Error::Parse {
            line: n,
            msg: "expected `label<TAB>probability`".into(),
        })?;
        let p: f64 = prob.parse().map_err(|_| Error::Parse {
            line: n,
            msg: format!("bad probability `{prob}`"),
        })?;
        labels.push(label.to_string());
        probs.push(p);
    }
    Alphabet::new(labels, probs)
}

pub fn write_alphabet(alphabet: &Alphabet) -> String {
    alphabet
        .symbols()
        .iter()
        .zip(alphabet.probs())
        .map(|(s, p)| format!("{s}\t{p}\n"))
        .collect()
}

/// Reads a sequence. With single-character labels, every non-whitespace
/// character of the content lines is a symbol (so both one-line and
/// one-per-line layouts work); otherwise each content line is one label.
pub fn parse_sequence(text: &str, alphabet: &Alphabet) -> Result<Sequence> {
    let mut data = Vec::new();
    let unknown = |n: usize, s: &str| Error::Parse {
        line: n,
        msg: format!("unknown symbol `{s}`"),
    };
    if alphabet.single_char_labels() {
        let mut buf = [0u8; 4];
        for (n, line) in content_lines(text) {
            for c in line.chars().filter(|c| !c.is_whitespace()) {
                let s = c.encode_utf8(&mut buf);
                data.push(alphabet.index_of(s).ok_or_else(|| unknown(n, s))?);
            }
        }
    } else {
        for (n, line) in content_lines(text) {
            data.push(alphabet.index_of(line).ok_or_else(|| unknown(n, line))?);
        }
    }
    Sequence::new(data, alphabet.len())
}

/// Writes `header` verbatim, then the sequence: one line when labels are single
/// characters, one label per line otherwise.
pub fn write_sequence(seq: &Sequence, alphabet: &Alphabet, header: &str) -> String {
    let mut out = String::from(header);
    if alphabet.single_char_labels() {
        out.push_str(&alphabet.render(seq.as_slice()));
        out.push('\n');
    } else {
        for &i in seq.as_slice() {
            out.push_str(alphabet.label(i));
            out.push('\n');
        }
    }
    out
}

/// Bins file: `lower_bound<TAB>label` per line.
pub fn parse_scheme(name: &str, text: &str) -> Result<QuantizationScheme> {
    let mut bins = Vec::new();
    for (n, line) in content_lines(text) {
        let (bound, label) = two_fields(line).ok_or_else(|| Error::Parse {
            line: n,
            msg: "expected `lower_bound<TAB>label`".into(),
        })?;
        let b: f64 = bound.parse().map_err(|_| Error::Parse {
            line: n,
            msg: format!("bad bound `{bound}`"),
        })?;
        bins.push((b, label.to_string()));
    }
    QuantizationScheme::new(name, bins)
}

/// One number per content line.
pub fn parse_numbers(text: &str) -> Result<Vec<f64>> {
    content_lines(text)
        .map(|(n, line)| {
            line.parse().map_err(|_| Error::Parse {
                line: n,
                msg: format!("bad number `{line}`"),
            })
        })
        .collect()
}

/// `%g`-style rendering with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `rank<TAB>start<TAB>end<TAB>score<TAB>substring` rows, ranks from 1.
pub fn format_results(spans: &[ScoredSpan], seq: &Sequence, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for (r, s) in spans.iter().enumerate() {
        let text = alphabet.render(&seq.as_slice()[s.start - 1..s.end]);
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r + 1,
            s.start,
            s.end,
            fmt_sig(s.score, 6),
            text
        ));
    }
    out
}
