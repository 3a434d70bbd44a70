//! `palk`: find maximal approximate palindromes and measure how much the
//! pruning variants save.
//!
//! Exit codes: 0 on success, 1 for usage or parameter errors, 2 for input
//! that cannot be read or parsed.

pub mod input;
pub mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use palk_core::bench::{self, ExperimentConfig, DEFAULT_PAIRS};
use palk_core::expected::{self, ExpectedConfig, Method};
use palk_core::palindromes::{centers, scan_all, ScanOptions};
use palk_core::symbols::{encode_text, gen_corpus, CorpusKind, CorpusSpec, EncodeMode, MatchRelation, SymbolString};
use palk_core::{build_lce, k_differences_scan, CenterConfig, Error, Parity, Variant};

#[derive(Debug, Parser)]
#[command(name = "palk", version, about = "Maximal approximate palindromes with up to k edit errors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report one maximal palindrome per center and parity.
    ///
    /// Coordinates are 1-based and inclusive: a row `c even s e` covers
    /// S[s..e]. An empty palindrome has start = end + 1.
    Find(FindArgs),
    /// Count iterations of the three variants on benchmark corpora and print gains as CSV.
    Bench(BenchArgs),
    /// Expected iterations and gains over uniformly random strings, as CSV.
    Expected(ExpectedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Fasta,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alphabet {
    Dna,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityChoice {
    Even,
    Odd,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FindFormat {
    Tsv,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "text", "corpus"])))]
pub struct FindArgs {
    /// FASTA or plain-text file.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Inline subject string.
    #[arg(long)]
    pub text: Option<String>,
    /// Generate a benchmark corpus instead of reading input.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Corpus length.
    #[arg(long, requires = "corpus")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// Alphabet for text input (default: dna with --complement, ascii otherwise).
    #[arg(long, value_enum)]
    pub alphabet: Option<Alphabet>,
    /// 1-based record to read from a multi-record FASTA file.
    #[arg(long)]
    pub record: Option<usize>,
    /// Maximum number of edit errors.
    #[arg(short, long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ParityChoice::Both)]
    pub parity: ParityChoice,
    #[arg(long, default_value = "imp2", value_parser = parse_variant)]
    pub variant: Variant,
    /// Match a with t and c with g instead of equal symbols.
    #[arg(long)]
    pub complement: bool,
    #[arg(long, short, value_enum, default_value_t = FindFormat::Tsv)]
    pub output: FindFormat,
    /// Also report the odd center 1 and both centers n.
    #[arg(long)]
    pub include_trivial: bool,
    /// Append a run-length edit script (M, S, I, D) to every row.
    #[arg(long)]
    pub scripts: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// paper50 or paper2500: all ten corpora over the six-point k grid.
    #[arg(long, value_parser = ["paper50", "paper2500"])]
    pub preset: Option<String>,
    /// Comma-separated corpus kinds.
    #[arg(long, value_delimiter = ',', conflicts_with = "preset")]
    pub corpus: Vec<String>,
    #[arg(long, conflicts_with = "preset")]
    pub n: Option<usize>,
    /// Comma-separated k values (default: ceil of 1, 5, 10, 20, 40, 80 percent of n).
    #[arg(short, long, value_delimiter = ',', conflicts_with = "preset")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, short, value_enum, default_value_t = TableFormat::Csv)]
    pub output: TableFormat,
    /// -v: per-cell totals and trend diagnostics; -vv: also per-center counts (stderr).
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Args)]
pub struct ExpectedArgs {
    /// fig9-12-desk: n in 2..=10, sigma in 2..=8, k in {1, 2}.
    #[arg(long, value_parser = ["fig9-12-desk"])]
    pub preset: Option<String>,
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    pub sigma: Option<u32>,
    #[arg(short, long, default_value_t = 1, conflicts_with = "preset")]
    pub k: usize,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    pub method: Method,
    #[arg(long, default_value_t = expected::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest sigma^n enumerated exactly.
    #[arg(long, default_value_t = expected::DEFAULT_GUARD)]
    pub guard: u128,
    /// Print trend diagnostics to stderr.
    #[arg(short, long)]
    pub verbose: bool,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 1 }, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// Parses `args` and runs the command, writing results to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return ExitCode::from(1);
            }
            let _ = write!(out, "{}", e.render());
            return ExitCode::SUCCESS;
        }
    };
    if let Some(threads) = std::env::var("PALK_THREADS").ok().and_then(|t| t.parse::<usize>().ok()) {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let result = match cli.command {
        Command::Find(a) => cmd_find(&a, out, err),
        Command::Bench(a) => cmd_bench(&a, out, err),
        Command::Expected(a) => cmd_expected(&a, out, err),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = writeln!(err, "palk: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_subject(a: &FindArgs) -> Result<(SymbolString, EncodeMode), Failure> {
    let mode = match (a.alphabet, a.complement) {
        (Some(Alphabet::Ascii), true) => {
            return Err(Failure::usage("--complement needs the dna alphabet"));
        }
        (Some(Alphabet::Dna), _) | (None, true) => EncodeMode::Dna,
        (Some(Alphabet::Ascii), false) | (None, false) => EncodeMode::Ascii,
    };
    if let Some(kind) = &a.corpus {
        let kind: CorpusKind = kind.parse()?;
        let n = a.n.ok_or_else(|| Failure::usage("--corpus needs --n"))?;
        let s = gen_corpus(&CorpusSpec::new(kind, n, a.seed))?;
        let mode = if kind.sigma(n) <= 4 { EncodeMode::Dna } else { EncodeMode::Ascii };
        return Ok((s, mode));
    }
    if let Some(text) = &a.text {
        return Ok((encode_text(text.as_bytes(), mode)?, mode));
    }
    let path = a.input.as_ref().expect("clap enforces one source");
    let bytes = fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let fasta = match a.format {
        InputFormat::Fasta => true,
        InputFormat::Text => false,
        InputFormat::Auto => input::looks_like_fasta(&bytes),
    };
    if fasta {
        if a.alphabet == Some(Alphabet::Ascii) {
            return Err(Failure::usage("FASTA input is always read with the dna alphabet"));
        }
        Ok((input::parse_fasta(&bytes, a.record)?, EncodeMode::Dna))
    } else {
        if a.record.is_some() {
            return Err(Failure::usage("--record only applies to FASTA input"));
        }
        Ok((input::parse_text(&bytes, mode)?, mode))
    }
}

pub fn cmd_find(a: &FindArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let (s, mode) = load_subject(a)?;
    if a.complement && s.as_slice().iter().any(|&c| c > 3) {
        return Err(Failure::usage("--complement needs a DNA subject"));
    }
    let mut opts = ScanOptions::new(a.k, a.variant);
    opts.parities = match a.parity {
        ParityChoice::Even => vec![Parity::Even],
        ParityChoice::Odd => vec![Parity::Odd],
        ParityChoice::Both => Parity::BOTH.to_vec(),
    };
    if a.complement {
        opts.relation = MatchRelation::dna_complement();
    }
    opts.want_script = a.scripts;
    opts.include_trivial = a.include_trivial;
    let report = scan_all(&s, &opts)?;
    if let Some(w) = &report.warning {
        writeln!(err, "palk: warning: {w}")?;
    }
    let rows: Vec<output::FindRow> = report.results.iter().map(output::FindRow::from).collect();
    match a.output {
        FindFormat::Tsv => output::write_find_table(&rows, '\t', a.scripts, out)?,
        FindFormat::Csv => output::write_find_table(&rows, ',', a.scripts, out)?,
        FindFormat::Json => {
            let doc = output::FindDocument {
                coordinates: "1-based inclusive".into(),
                n: s.len(),
                k: a.k,
                variant: a.variant,
                relation: if a.complement { "complement" } else { "identity" }.into(),
                alphabet: match mode {
                    EncodeMode::Dna => "dna",
                    EncodeMode::Ascii => "ascii",
                }
                .into(),
                iterations: report.stats.iterations,
                results: rows,
            };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let cfg = match a.preset.as_deref() {
        Some("paper50") => ExperimentConfig::paper(50, a.seed),
        Some("paper2500") => ExperimentConfig::paper(2500, a.seed),
        Some(other) => return Err(Failure::usage(format!("unknown preset {other}"))),
        None => {
            let n = a.n.ok_or_else(|| Failure::usage("bench needs --preset or --n"))?;
            let corpora = if a.corpus.is_empty() {
                CorpusKind::ALL.to_vec()
            } else {
                a.corpus.iter().map(|c| c.parse()).collect::<Result<Vec<CorpusKind>, Error>>()?
            };
            // An explicitly requested corpus that cannot be generated is a usage error.
            for &kind in &corpora {
                if kind.period(n) == Some(0) || n == 0 {
                    return Err(Failure::usage(format!(
                        "corpus {kind} cannot be generated at n = {n}: its period floor(fraction * n) is 0"
                    )));
                }
            }
            let ks = if a.k.is_empty() { bench::paper_k_grid(n) } else { a.k.clone() };
            ExperimentConfig { corpora, n, seed: a.seed, ks, pairs: DEFAULT_PAIRS.to_vec() }
        }
    };
    let result = bench::run_gain_experiment(&cfg)?;
    for w in &result.warnings {
        writeln!(err, "palk: warning: {w}")?;
    }
    if a.verbose > 0 {
        for c in &result.cells {
            writeln!(
                err,
                "cell {} n={} k={}: original={} imp1={} imp2={}",
                c.corpus, c.n, c.k, c.original.iterations, c.imp1.iterations, c.imp2.iterations
            )?;
        }
        for v in bench::trend_report(&result.rows) {
            writeln!(err, "trend: {}", v.description)?;
        }
    }
    if a.verbose > 1 {
        write_per_center(&cfg, err)?;
    }
    match a.output {
        TableFormat::Csv => bench::emit_csv(&result.rows, out)?,
        TableFormat::Json => bench::emit_json(&result.rows, out)?,
    }
    Ok(())
}

fn write_per_center(cfg: &ExperimentConfig, err: &mut dyn Write) -> Result<(), Failure> {
    writeln!(err, "corpus\tn\tk\tparity\tcenter\toriginal\timp1\timp2")?;
    for &kind in &cfg.corpora {
        let Ok(s) = gen_corpus(&CorpusSpec::new(kind, cfg.n, cfg.seed)) else { continue };
        let oracle = build_lce(&s, &MatchRelation::Identity)?;
        for &k in &cfg.ks {
            for parity in Parity::BOTH {
                for c in centers(s.len(), parity, false) {
                    let center = CenterConfig::new(s.len(), c, parity)?;
                    let counts =
                        Variant::ALL.map(|v| k_differences_scan(&oracle, &center, k, v, false).stats.iterations);
                    writeln!(
                        err,
                        "{kind}\t{}\t{k}\t{parity}\t{c}\t{}\t{}\t{}",
                        cfg.n, counts[0], counts[1], counts[2]
                    )?;
                }
            }
        }
    }
    Ok(())
}

pub fn cmd_expected(a: &ExpectedArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let cells = match a.preset.as_deref() {
        Some(_) => expected::desk_preset(),
        None => vec![(a.n.unwrap_or(0), a.sigma.unwrap_or(0), a.k)],
    };
    let mut rows = Vec::new();
    for (n, sigma, k) in cells {
        let cfg = ExpectedConfig {
            n,
            sigma,
            k,
            variant: Variant::Original,
            method: a.method,
            samples: a.samples,
            seed: a.seed,
            guard: a.guard,
        };
        rows.extend(expected::expected_pairs(&cfg, &DEFAULT_PAIRS)?);
    }
    if a.verbose || a.preset.is_some() {
        for v in expected::trend_report(&rows) {
            writeln!(err, "trend: {}", v.description)?;
        }
    }
    expected::emit_csv(&rows, out)?;
    Ok(())
}
