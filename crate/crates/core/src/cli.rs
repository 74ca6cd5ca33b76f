//! Command-line front end: `compute`, `verify` and `stats`.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ballsize::{evaluate, formula_threshold, BallReport, EvalMode, EvalOptions, CLOSED_FORM_CHANNELS};
use crate::error::{Error, Result};
use crate::oracle::DEFAULT_BUDGET;
use crate::seqcore::{ChannelSpec, Sequence};
use crate::Method;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

/// Inclusive range of word lengths, written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthRange {
    pub start: usize,
    pub end: usize,
}

impl LengthRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for LengthRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |p: &str| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad length `{p}` in `{s}`")));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(Error::Parse(format!("length range `{s}` is empty")));
        }
        Ok(LengthRange { start, end })
    }
}

impl fmt::Display for LengthRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Parser)]
#[command(name = "errball", version, about = "Exact error-ball sizes for deletion/insertion/substitution channels")]
pub struct Cli {
    /// Alphabet size.
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Candidate cap for each enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ball sizes for given sequences.
    Compute {
        /// Sequence text; repeatable.
        #[arg(long)]
        seq: Vec<String>,
        /// File with one sequence per line; `#` starts a comment, `-` reads stdin.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Channel as t1,t2,t3 (substitutions, deletions, insertions).
        #[arg(long, default_value = "0,1,2")]
        channel: ChannelSpec,
        /// Recompute through the oracle and report agreement.
        #[arg(long)]
        check: bool,
        /// Skip the closed forms.
        #[arg(long)]
        oracle_only: bool,
    },
    /// Exhaustive formula-vs-oracle sweep.
    Verify {
        #[arg(long)]
        n: LengthRange,
        /// Channel to check; repeatable. Defaults to every closed-form channel.
        #[arg(long = "channel")]
        channels: Vec<ChannelSpec>,
        /// Emit every record, not only mismatches.
        #[arg(long)]
        all: bool,
        /// Skip words up to and including this one.
        #[arg(long)]
        resume_after: Option<String>,
    },
    /// Minimum, maximum and mean ball size over all words.
    Stats {
        #[arg(long)]
        n: LengthRange,
        #[arg(long, default_value = "0,1,2")]
        channel: ChannelSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub seq: String,
    pub q: u8,
    pub n: usize,
    pub rho: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub formula_size: Option<u64>,
    pub oracle_size: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub method: Method,
}

impl VerificationRecord {
    pub const HEADER: [&'static str; 11] =
        ["seq", "q", "n", "rho", "t1", "t2", "t3", "formula_size", "oracle_size", "match", "method"];

    pub fn from_report(seq: &Sequence, report: &BallReport) -> Self {
        VerificationRecord {
            seq: seq.to_string(),
            q: seq.q(),
            n: seq.len(),
            rho: seq.rho(),
            t1: report.spec.t1,
            t2: report.spec.t2,
            t3: report.spec.t3,
            formula_size: report.formula_size,
            oracle_size: report.oracle_size,
            matches: report.matches(),
            method: report.method,
        }
    }

    pub fn is_mismatch(&self) -> bool {
        self.matches == Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checked: u64,
    pub mismatches: u64,
    pub seconds: f64,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "checked={} mismatches={} seconds={:.3}", self.checked, self.mismatches, self.seconds)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub q: u8,
    pub n: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub count: u64,
    pub min: u64,
    pub argmin: String,
    pub max: u64,
    pub argmax: String,
    pub mean: f64,
}

impl StatsRecord {
    pub const HEADER: [&'static str; 11] = ["q", "n", "t1", "t2", "t3", "count", "min", "argmin", "max", "argmax", "mean"];
}

#[derive(Debug, Deserialize)]
struct Envelope<T> {
    records: Vec<T>,
    #[serde(default)]
    summary: Option<Summary>,
}

#[derive(Serialize)]
struct EnvelopeRef<'a, T> {
    records: &'a [T],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub q: u32,
    pub lengths: LengthRange,
    pub channels: Vec<ChannelSpec>,
    pub jobs: usize,
    pub budget: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::InvalidAlphabet(self.q));
        }
        if self.budget == 0 {
            return Err(Error::Precondition("budget must be positive".into()));
        }
        if self.channels.is_empty() {
            return Err(Error::InvalidChannel("no channel given".into()));
        }
        for spec in &self.channels {
            spec.validate_for(self.lengths.start)?;
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
    }
}

/// Where a sweep stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct Interruption {
    pub error: Error,
    /// Last word whose every channel was checked.
    pub resume_after: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Every record in lexicographic order of word, then channel order.
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
    pub interrupted: Option<Interruption>,
}

/// Run `f` over `Σ_q^n` in parallel and return results in lexicographic order.
fn sweep_words<T, F>(pool: &rayon::ThreadPool, n: usize, q: u32, f: F) -> Result<Vec<(Sequence, T)>>
where
    T: Send,
    F: Fn(&Sequence) -> Option<T> + Sync,
{
    let mut k = 0;
    while k < n && (q as u64).pow(k as u32) < 64 {
        k += 1;
    }
    let prefixes: Vec<Sequence> = Sequence::all(k, q)?.collect();
    let chunks: Vec<Result<Vec<(Sequence, T)>>> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut out = Vec::new();
                for suffix in Sequence::all(n - k, q)? {
                    let mut symbols = prefix.symbols().to_vec();
                    symbols.extend_from_slice(suffix.symbols());
                    let word = Sequence::new(symbols, q)?;
                    if let Some(v) = f(&word) {
                        out.push((word, v));
                    }
                }
                Ok(out)
            })
            .collect()
    });
    let mut merged = Vec::new();
    for chunk in chunks {
        merged.extend(chunk?);
    }
    Ok(merged)
}

fn after_cursor(word: &Sequence, cursor: Option<&Sequence>) -> bool {
    match cursor {
        None => true,
        Some(c) => (word.len(), word.symbols()) > (c.len(), c.symbols()),
    }
}

/// Formula-vs-oracle sweep over every word in the configured range.
pub fn run_verify(config: &SweepConfig, resume_after: Option<&Sequence>) -> Result<SweepOutcome> {
    config.validate()?;
    let pool = config.pool()?;
    let started = Instant::now();
    let opts = EvalOptions { mode: EvalMode::FormulaPreferred, check: true, budget: config.budget };
    let mut records = Vec::new();
    let mut last_done = resume_after.map(Sequence::to_string);
    let mut interrupted = None;
    'lengths: for n in config.lengths.iter() {
        let results = sweep_words(&pool, n, config.q, |word| {
            if !after_cursor(word, resume_after) {
                return None;
            }
            let per_channel: Result<Vec<VerificationRecord>> = config
                .channels
                .iter()
                .map(|&spec| evaluate(word, spec, opts).map(|r| VerificationRecord::from_report(word, &r)))
                .collect();
            Some(per_channel)
        })?;
        for (word, result) in results {
            match result {
                Ok(recs) => {
                    records.extend(recs);
                    last_done = Some(word.to_string());
                }
                Err(error) => {
                    interrupted = Some(Interruption { error, resume_after: last_done.clone() });
                    break 'lengths;
                }
            }
        }
    }
    let mismatches = records.iter().filter(|r| r.is_mismatch()).count() as u64;
    let summary = Summary { checked: records.len() as u64, mismatches, seconds: started.elapsed().as_secs_f64() };
    Ok(SweepOutcome { records, summary, interrupted })
}

/// Size distribution of one channel for each length in the range.
pub fn run_stats(config: &SweepConfig) -> Result<Vec<StatsRecord>> {
    config.validate()?;
    let pool = config.pool()?;
    let opts = EvalOptions { mode: EvalMode::FormulaPreferred, check: false, budget: config.budget };
    let mut out = Vec::new();
    for &spec in &config.channels {
        for n in config.lengths.iter() {
            let sizes = sweep_words(&pool, n, config.q, |word| Some(evaluate(word, spec, opts).map(|r| r.size)))?;
            let mut rec: Option<StatsRecord> = None;
            let mut total: u128 = 0;
            for (word, size) in sizes {
                let size = size?;
                total += u128::from(size);
                let r = rec.get_or_insert_with(|| StatsRecord {
                    q: word.q(),
                    n,
                    t1: spec.t1,
                    t2: spec.t2,
                    t3: spec.t3,
                    count: 0,
                    min: size,
                    argmin: word.to_string(),
                    max: size,
                    argmax: word.to_string(),
                    mean: 0.0,
                });
                r.count += 1;
                if size < r.min {
                    r.min = size;
                    r.argmin = word.to_string();
                }
                if size > r.max {
                    r.max = size;
                    r.argmax = word.to_string();
                }
            }
            if let Some(mut r) = rec {
                r.mean = total as f64 / r.count as f64;
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Sequences from a text source, skipping blanks and `#` comments.
pub fn read_sequences<R: BufRead>(reader: R, q: u32) -> std::result::Result<Vec<Sequence>, Vec<String>> {
    let mut seqs = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                errors.push(format!("line {}: {e}", idx + 1));
                continue;
            }
        };
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        match Sequence::parse(text, q) {
            Ok(s) => seqs.push(s),
            Err(e) => errors.push(format!("line {}: {e}", idx + 1)),
        }
    }
    if errors.is_empty() {
        Ok(seqs)
    } else {
        Err(errors)
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("json: {e}"))
}

fn string_rows<T: Serialize>(records: &[T]) -> Result<Vec<Vec<String>>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    let mut rd = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes.as_slice());
    rd.records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_owned).collect()).map_err(csv_error))
        .collect()
}

fn io_error(e: io::Error) -> Error {
    Error::Parse(format!("io: {e}"))
}

/// Write records in the chosen format. CSV and table put the summary on
/// `summary_sink`; JSON embeds it.
pub fn write_records<T: Serialize>(
    out: &mut dyn Write,
    summary_sink: &mut dyn Write,
    format: OutputFormat,
    header: &[&str],
    records: &[T],
    summary: Option<Summary>,
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            let env = EnvelopeRef { records, summary };
            serde_json::to_writer_pretty(&mut *out, &env).map_err(json_error)?;
            writeln!(out).map_err(io_error)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *out);
            w.write_record(header).map_err(csv_error)?;
            for r in records {
                w.serialize(r).map_err(csv_error)?;
            }
            w.flush().map_err(io_error)?;
        }
        OutputFormat::Table => {
            let rows = string_rows(records)?;
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            writeln!(out, "{}", line(header.to_vec())).map_err(io_error)?;
            for row in &rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).map_err(io_error)?;
            }
        }
    }
    if let (Some(s), false) = (summary, format == OutputFormat::Json) {
        writeln!(summary_sink, "{s}").map_err(io_error)?;
    }
    Ok(())
}

/// Parse records written with [`OutputFormat::Csv`].
pub fn read_csv_records<R: Read>(reader: R) -> Result<Vec<VerificationRecord>> {
    csv::Reader::from_reader(reader).deserialize().map(|r| r.map_err(csv_error)).collect()
}

/// Parse records and summary written with [`OutputFormat::Json`].
pub fn read_json_records<R: Read>(reader: R) -> Result<(Vec<VerificationRecord>, Option<Summary>)> {
    let env: Envelope<VerificationRecord> = serde_json::from_reader(reader).map_err(json_error)?;
    Ok((env.records, env.summary))
}

fn usage(err: &mut dyn Write, msg: impl fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

fn exit_for(error: &Error) -> i32 {
    match error {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if cli.q < 2 {
        return usage(err, Error::InvalidAlphabet(cli.q));
    }
    if cli.budget == 0 {
        return usage(err, "budget must be positive");
    }
    let result = match cli.command {
        Command::Compute { ref seq, ref file, channel, check, oracle_only } => {
            compute(&cli, seq, file.as_ref(), channel, check, oracle_only, out, err)
        }
        Command::Verify { n, ref channels, all, ref resume_after } => {
            verify(&cli, n, channels, all, resume_after.as_deref(), out, err)
        }
        Command::Stats { n, channel } => stats(&cli, n, channel, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn compute(
    cli: &Cli,
    seq_args: &[String],
    file: Option<&PathBuf>,
    channel: ChannelSpec,
    check: bool,
    oracle_only: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut seqs = Vec::new();
    let mut errors = Vec::new();
    for (k, text) in seq_args.iter().enumerate() {
        match Sequence::parse(text, cli.q) {
            Ok(s) => seqs.push(s),
            Err(e) => errors.push(format!("--seq #{}: {e}", k + 1)),
        }
    }
    if let Some(path) = file {
        let parsed = if path.as_os_str() == "-" {
            read_sequences(io::stdin().lock(), cli.q)
        } else {
            let f = std::fs::File::open(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            read_sequences(io::BufReader::new(f), cli.q)
        };
        match parsed {
            Ok(s) => seqs.extend(s),
            Err(e) => errors.extend(e),
        }
    }
    if !errors.is_empty() {
        for e in errors {
            let _ = writeln!(err, "error: {e}");
        }
        return Ok(EXIT_USAGE);
    }
    if seqs.is_empty() {
        return Ok(usage(err, "no sequences given (use --seq or --file)"));
    }
    let mode = if oracle_only { EvalMode::OracleOnly } else { EvalMode::FormulaPreferred };
    let opts = EvalOptions { mode, check, budget: cli.budget };
    let mut records = Vec::new();
    let mut code = EXIT_OK;
    for s in &seqs {
        match evaluate(s, channel, opts) {
            Ok(r) => records.push(VerificationRecord::from_report(s, &r)),
            Err(e @ Error::BudgetExceeded { .. }) => {
                let _ = writeln!(err, "error: {s}: {e}");
                code = EXIT_BUDGET;
            }
            Err(e) => return Err(e),
        }
    }
    let mismatches = records.iter().filter(|r| r.is_mismatch()).count() as u64;
    write_records(out, err, cli.output, &VerificationRecord::HEADER, &records, None)?;
    if mismatches > 0 && code == EXIT_OK {
        code = EXIT_MISMATCH;
    }
    Ok(code)
}

fn verify(
    cli: &Cli,
    n: LengthRange,
    channels: &[ChannelSpec],
    all: bool,
    resume_after: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let channels = if channels.is_empty() { CLOSED_FORM_CHANNELS.to_vec() } else { channels.to_vec() };
    let config = SweepConfig { q: cli.q, lengths: n, channels, jobs: cli.jobs, budget: cli.budget };
    let cursor = resume_after.map(|c| Sequence::parse(c, cli.q)).transpose()?;
    let outcome = run_verify(&config, cursor.as_ref())?;
    let shown: Vec<VerificationRecord> =
        outcome.records.into_iter().filter(|r| all || r.is_mismatch()).collect();
    write_records(out, err, cli.output, &VerificationRecord::HEADER, &shown, Some(outcome.summary))?;
    if let Some(stop) = outcome.interrupted {
        let _ = writeln!(err, "error: {}", stop.error);
        if let Some(c) = stop.resume_after {
            let _ = writeln!(err, "resume with --resume-after {c}");
        }
        return Ok(exit_for(&stop.error));
    }
    Ok(if outcome.summary.mismatches > 0 { EXIT_MISMATCH } else { EXIT_OK })
}

fn stats(cli: &Cli, n: LengthRange, channel: ChannelSpec, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let config = SweepConfig { q: cli.q, lengths: n, channels: vec![channel], jobs: cli.jobs, budget: cli.budget };
    let records = run_stats(&config)?;
    write_records(out, err, cli.output, &StatsRecord::HEADER, &records, None)?;
    Ok(EXIT_OK)
}

/// Whether `spec` at length `n` is answered by a closed form.
pub fn uses_formula(spec: ChannelSpec, n: usize) -> bool {
    formula_threshold(spec).is_some_and(|min| n >= min)
}
