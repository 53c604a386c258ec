use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chisub_core::bench::{plot_data, run_benchmark, to_table, to_tsv, BenchConfig, BenchResult};
use chisub_core::datagen::{generate, quantize_series, GenSpec, QuantizationScheme};
use chisub_core::io::{
    fmt_sig, format_results, parse_alphabet, parse_numbers, parse_scheme, parse_sequence,
    write_alphabet, write_sequence,
};
use chisub_core::{expected_local_maxima, Alphabet, MaximaAnalysis, Sequence};

use crate::{
    BenchArgs, Command, GenArgs, MineArgs, ProbeArgs, QuantizeArgs, ReportFormat, SweepParam,
};

#[derive(Debug)]
pub enum CommandError {
    FileNotFound(PathBuf),
    Io { path: PathBuf, source: io::Error },
    /// Invalid data or parameters; `context` names the file or flag involved.
    Data { context: String, source: chisub_core::Error },
    Usage(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FileNotFound(p) => write!(f, "file not found: {}", p.display()),
            Self::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Self::Data { context, source } => write!(f, "{context}: {source}"),
            Self::Usage(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CommandError {}

type Result<T> = std::result::Result<T, CommandError>;

trait Context<T> {
    fn context(self, what: impl fmt::Display) -> Result<T>;
}

impl<T> Context<T> for chisub_core::Result<T> {
    fn context(self, what: impl fmt::Display) -> Result<T> {
        self.map_err(|source| CommandError::Data {
            context: what.to_string(),
            source,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| {
        if source.kind() == io::ErrorKind::NotFound {
            CommandError::FileNotFound(path.to_path_buf())
        } else {
            CommandError::Io {
                path: path.to_path_buf(),
                source,
            }
        }
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CommandError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> Result<()> {
    match dest {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(|source| CommandError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn echo(err: &mut dyn Write, line: &str) {
    let _ = writeln!(err, "# {line}");
}

fn shown(p: Option<&Path>) -> String {
    p.map_or_else(|| "-".to_string(), |p| p.display().to_string())
}

fn load_input(seq: &Path, alphabet: &Path) -> Result<(Sequence, Alphabet)> {
    let a = parse_alphabet(&read(alphabet)?).context(format!("--alphabet {}", alphabet.display()))?;
    let s = parse_sequence(&read(seq)?, &a).context(format!("--seq {}", seq.display()))?;
    Ok((s, a))
}

fn sibling_alphabet(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".alphabet");
    PathBuf::from(p)
}

pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Gen(a) => gen(a, out, err),
        Command::Quantize(a) => quantize(a, out, err),
        Command::Probe(a) => probe(a, out, err),
        Command::Mine(a) => mine(a, out, err),
        Command::Bench(a) => bench(a, out, err),
    }
}

fn gen_spec(length: usize, m: usize, seed: u64, chunks: usize, geom_p: f64) -> GenSpec {
    let mut spec = GenSpec::new(length, m, seed);
    spec.perturb_chunks = chunks;
    spec.geometric_p = geom_p;
    spec
}

fn gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let mut spec = gen_spec(args.length, args.m, args.seed, args.chunks, args.geom_p);
    if let Some(lo) = args.chunk_min {
        spec.chunk_len_range.0 = lo;
        spec.chunk_len_range.1 = spec.chunk_len_range.1.max(lo);
    }
    if let Some(hi) = args.chunk_max {
        spec.chunk_len_range.1 = hi;
    }
    let (seq, alphabet) = generate(&spec).context("gen parameters")?;
    let header = spec.header();
    let alphabet_path = args
        .alphabet
        .clone()
        .or_else(|| args.out.as_deref().map(sibling_alphabet));

    for line in header.lines() {
        echo(err, line.trim_start_matches("# "));
    }
    echo(
        err,
        &format!("out={} alphabet={}", shown(args.out.as_deref()), shown(alphabet_path.as_deref())),
    );

    emit(out, args.out.as_deref(), &write_sequence(&seq, &alphabet, &header))?;
    if let Some(p) = alphabet_path {
        write_file(&p, &write_alphabet(&alphabet))?;
    }
    Ok(())
}

fn csv_column(text: &str, column: &str, path: &Path) -> Result<Vec<f64>> {
    let ctx = |msg: String| CommandError::Data {
        context: format!("--input {}", path.display()),
        source: chisub_core::Error::Parse { line: 0, msg },
    };
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| ctx(e.to_string()))?.clone();
    let index = headers
        .iter()
        .position(|h| h == column)
        .or_else(|| column.parse().ok().filter(|&i: &usize| i < headers.len()))
        .ok_or_else(|| CommandError::Usage(format!("--column {column}: no such column in {}", path.display())))?;
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ctx(e.to_string()))?;
        let cell = record.get(index).unwrap_or("");
        if cell.is_empty() {
            continue;
        }
        let v = cell
            .parse()
            .map_err(|_| ctx(format!("row {}: bad number `{cell}`", row + 2)))?;
        values.push(v);
    }
    Ok(values)
}

fn quantize(args: &QuantizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let scheme = match QuantizationScheme::by_name(&args.scheme) {
        Some(s) => s,
        None => {
            let path = Path::new(&args.scheme);
            let name = path.file_stem().map_or(args.scheme.clone(), |s| s.to_string_lossy().into_owned());
            parse_scheme(&name, &read(path)?).context(format!("--scheme {}", args.scheme))?
        }
    };
    let text = read(&args.input)?;
    let values = match &args.column {
        Some(c) => csv_column(&text, c, &args.input)?,
        None => parse_numbers(&text).context(format!("--input {}", args.input.display()))?,
    };
    let mut q = quantize_series(&values, &scheme).context(format!("--input {}", args.input.display()))?;
    if let Some(p) = &args.probs {
        let given = parse_alphabet(&read(p)?).context(format!("--probs {}", p.display()))?;
        let pairs: Vec<(String, f64)> = given
            .symbols()
            .iter()
            .cloned()
            .zip(given.probs().iter().copied())
            .collect();
        q = q.with_probs(&pairs).context(format!("--probs {}", p.display()))?;
    }
    let (seq, alphabet) = q.into_parts().context(format!("--input {}", args.input.display()))?;
    let alphabet_path = args
        .alphabet
        .clone()
        .or_else(|| args.out.as_deref().map(sibling_alphabet));

    let header = format!(
        "# quantize scheme={} input={} column={} n={} probs={}\n",
        scheme.name,
        args.input.display(),
        args.column.as_deref().unwrap_or("-"),
        seq.len(),
        args.probs.as_deref().map_or("empirical".into(), |p| p.display().to_string()),
    );
    echo(err, header.trim_start_matches("# ").trim_end());
    echo(
        err,
        &format!("out={} alphabet={}", shown(args.out.as_deref()), shown(alphabet_path.as_deref())),
    );
    for (s, p) in alphabet.symbols().iter().zip(alphabet.probs()) {
        echo(err, &format!("symbol {s} p={}", fmt_sig(*p, 6)));
    }

    emit(out, args.out.as_deref(), &write_sequence(&seq, &alphabet, &header))?;
    if let Some(p) = alphabet_path {
        write_file(&p, &write_alphabet(&alphabet))?;
    }
    Ok(())
}

fn probe(args: &ProbeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (seq, alphabet) = load_input(&args.input.seq, &args.input.alphabet)?;
    echo(
        err,
        &format!(
            "probe seq={} alphabet={} l={} m={}",
            args.input.seq.display(),
            args.input.alphabet.display(),
            seq.len(),
            alphabet.len()
        ),
    );
    let an = MaximaAnalysis::new(&seq, &alphabet).context(format!("--seq {}", args.input.seq.display()))?;
    let mut text = format!(
        "blocks={}\nlocal_maxima={}\nexpected_local_maxima={}\n",
        an.blocks.len(),
        an.local_maxima.len(),
        fmt_sig(expected_local_maxima(&alphabet, seq.len()), 6)
    );
    for lm in &an.local_maxima {
        text.push_str(&format!("{}\t{}\t{}\n", lm.start, lm.end, fmt_sig(lm.score, 6)));
    }
    emit(out, args.out.as_deref(), &text)
}

fn mine(args: &MineArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if args.k == 0 {
        return Err(CommandError::Usage("--k must be at least 1".into()));
    }
    let (seq, alphabet) = load_input(&args.input.seq, &args.input.alphabet)?;
    let algorithms = args.algo.algorithms();
    echo(
        err,
        &format!(
            "mine seq={} alphabet={} algo={} k={} l={} m={}",
            args.input.seq.display(),
            args.input.alphabet.display(),
            algorithms.iter().map(|a| a.name()).collect::<Vec<_>>().join(","),
            args.k,
            seq.len(),
            alphabet.len()
        ),
    );
    let mut text = String::new();
    for algo in &algorithms {
        let top = algo
            .mine(&seq, &alphabet, args.k)
            .context(format!("--seq {}", args.input.seq.display()))?;
        if algorithms.len() > 1 {
            text.push_str(&format!("# algo={algo}\n"));
        }
        text.push_str(&format_results(&top, &seq, &alphabet));
    }
    emit(out, args.out.as_deref(), &text)
}

fn bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if args.k == 0 {
        return Err(CommandError::Usage("--k must be at least 1".into()));
    }
    let base = BenchConfig {
        algorithms: args.algo.algorithms(),
        k: args.k,
        repeats: args.repeats,
        ratio: args.ratio_enabled(),
        oracle_cap: args.oracle_cap,
        force_oracle: args.force_oracle,
    };
    let names: Vec<&str> = base.algorithms.iter().map(|a| a.name()).collect();
    echo(
        err,
        &format!(
            "bench algo={} k={} repeats={} ratio={} oracle_cap={} force_oracle={}",
            names.join(","),
            base.k,
            base.repeats,
            base.ratio,
            base.oracle_cap,
            base.force_oracle
        ),
    );

    let mut points: Vec<(String, Vec<BenchResult>)> = Vec::new();
    if let (Some(seq_path), Some(alpha_path)) = (&args.seq, &args.alphabet) {
        let (seq, alphabet) = load_input(seq_path, alpha_path)?;
        echo(err, &format!("dataset seq={} alphabet={}", seq_path.display(), alpha_path.display()));
        let name = seq_path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
        let results = run_benchmark(&name, &seq, &alphabet, &base).context(format!("--seq {}", seq_path.display()))?;
        points.push(("-".into(), results));
    } else {
        echo(
            err,
            &format!(
                "generated len={} m={} seed={} chunks={} geom_p={} datasets={} sweep={} values={}",
                args.length,
                args.m,
                args.seed,
                args.chunks,
                args.geom_p,
                args.datasets,
                args.sweep.map_or("none".into(), |s| format!("{s:?}").to_lowercase()),
                args.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
        );
        let values: Vec<Option<usize>> = match args.sweep {
            Some(_) => args.values.iter().copied().map(Some).collect(),
            None => vec![None],
        };
        for value in values {
            let (mut length, mut m, mut chunks, mut config) = (args.length, args.m, args.chunks, base.clone());
            match (args.sweep, value) {
                (Some(SweepParam::Len), Some(v)) => length = v,
                (Some(SweepParam::M), Some(v)) => m = v,
                (Some(SweepParam::Chunks), Some(v)) => chunks = v,
                (Some(SweepParam::K), Some(v)) => config.k = v,
                _ => {}
            }
            if config.k == 0 {
                return Err(CommandError::Usage("--values: k must be at least 1".into()));
            }
            let mut results = Vec::new();
            for d in 0..args.datasets.max(1) {
                let seed = args.seed + d;
                let spec = gen_spec(length, m, seed, chunks, args.geom_p);
                let ctx = format!("dataset len={length} m={m} seed={seed}");
                let (seq, alphabet) = generate(&spec).context(&ctx)?;
                let name = format!("gen-l{length}-m{m}-s{seed}");
                results.extend(run_benchmark(&name, &seq, &alphabet, &config).context(&ctx)?);
            }
            points.push((value.map_or("-".into(), |v| v.to_string()), results));
        }
    }

    let all: Vec<BenchResult> = points.iter().flat_map(|p| p.1.iter().cloned()).collect();
    let report = match args.format {
        ReportFormat::Table => to_table(&all),
        ReportFormat::Tsv => to_tsv(&all),
    };
    emit(out, None, &report)?;
    if let Some(path) = &args.emit_plot_data {
        let sweep = args.sweep.map_or("dataset".into(), |s| format!("{s:?}").to_lowercase());
        write_file(path, &plot_data(&sweep, &points))?;
        echo(err, &format!("plot data written to {}", path.display()));
    }
    Ok(())
}
