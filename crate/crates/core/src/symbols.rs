//! Alphabets, match relations and benchmark corpora.
//!
//! Symbols are opaque `u32` codes. Algorithms only ever compare them for
//! equality, after the left half of the search text has been mapped through
//! the active [`MatchRelation`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// Number of printable ASCII codes (33..=126) used by the text corpora.
pub const ASCII_SIGMA: u32 = 94;
pub const DNA_SIGMA: u32 = 4;

/// A string of symbol codes. Indexing through [`SymbolString::at`] is
/// 1-based; slices are 0-based as usual.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolString(Vec<Symbol>);

impl SymbolString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        SymbolString(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<Symbol> {
        i.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// S[i..j] with 1-based inclusive bounds, empty when i > j.
    pub fn substring(&self, i: usize, j: usize) -> &[Symbol] {
        if i > j || i == 0 {
            return &[];
        }
        &self.0[i - 1..j.min(self.0.len())]
    }

    pub fn reverse(&self) -> SymbolString {
        reverse(self)
    }

    /// Number of distinct codes in the string.
    pub fn distinct(&self) -> usize {
        let mut codes = self.0.clone();
        codes.sort_unstable();
        codes.dedup();
        codes.len()
    }
}

impl From<Vec<Symbol>> for SymbolString {
    fn from(v: Vec<Symbol>) -> Self {
        SymbolString(v)
    }
}

impl From<&[Symbol]> for SymbolString {
    fn from(v: &[Symbol]) -> Self {
        SymbolString(v.to_vec())
    }
}

pub fn reverse(s: &SymbolString) -> SymbolString {
    SymbolString(s.0.iter().rev().copied().collect())
}

/// When two symbols on opposite sides of a center count as a match.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum MatchRelation {
    #[default]
    Identity,
    /// Involutive complement over the dense alphabet `0..map.len()`.
    Complement(Vec<Symbol>),
}

impl MatchRelation {
    /// a <-> t, c <-> g under the `encode_text` DNA codes.
    pub fn dna_complement() -> Self {
        MatchRelation::Complement(vec![3, 2, 1, 0])
    }

    /// Maps a left-half symbol into the space where equality means a match.
    pub fn apply(&self, s: Symbol) -> Result<Symbol> {
        match self {
            MatchRelation::Identity => Ok(s),
            MatchRelation::Complement(map) => {
                map.get(s as usize).copied().ok_or(Error::OutsideRelation { symbol: s })
            }
        }
    }

    pub fn matches(&self, a: Symbol, b: Symbol) -> bool {
        match self {
            MatchRelation::Identity => a == b,
            MatchRelation::Complement(map) => map.get(a as usize) == Some(&b),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, MatchRelation::Identity)
    }
}

/// Builds the complement relation induced by unordered symbol pairs.
///
/// The alphabet is the dense range `0..=max code`; every code must occur in
/// exactly one pair (a self-pair `(s, s)` is allowed).
pub fn make_complement_relation(pairs: &[(Symbol, Symbol)]) -> Result<MatchRelation> {
    let Some(max) = pairs.iter().map(|&(a, b)| a.max(b)).max() else {
        return Err(Error::EmptyInput);
    };
    let mut map: Vec<Option<Symbol>> = vec![None; max as usize + 1];
    for &(a, b) in pairs {
        for (from, to) in [(a, b), (b, a)] {
            match map[from as usize] {
                Some(prev) if prev != to => {
                    return Err(Error::NotInvolution { symbol: from, first: prev, second: to })
                }
                _ => map[from as usize] = Some(to),
            }
        }
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(s, m)| m.ok_or(Error::IncompleteRelation { symbol: s as Symbol }))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatchRelation::Complement(map))
}

/// The ten benchmark string families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Dna,
    Dnap1,
    Dnap2,
    Dnap3,
    Txt,
    Txtp1,
    Txtp2,
    Txtp3,
    Cnst,
    Diff,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 10] = [
        CorpusKind::Dna,
        CorpusKind::Dnap1,
        CorpusKind::Dnap2,
        CorpusKind::Dnap3,
        CorpusKind::Txt,
        CorpusKind::Txtp1,
        CorpusKind::Txtp2,
        CorpusKind::Txtp3,
        CorpusKind::Cnst,
        CorpusKind::Diff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Dna => "dna",
            CorpusKind::Dnap1 => "dnap1",
            CorpusKind::Dnap2 => "dnap2",
            CorpusKind::Dnap3 => "dnap3",
            CorpusKind::Txt => "txt",
            CorpusKind::Txtp1 => "txtp1",
            CorpusKind::Txtp2 => "txtp2",
            CorpusKind::Txtp3 => "txtp3",
            CorpusKind::Cnst => "cnst",
            CorpusKind::Diff => "diff",
        }
    }

    /// Fraction of n giving the period, for periodic kinds.
    fn period_fraction(self) -> Option<f64> {
        match self {
            CorpusKind::Dnap1 | CorpusKind::Txtp1 => Some(0.05),
            CorpusKind::Dnap2 | CorpusKind::Txtp2 => Some(0.25),
            CorpusKind::Dnap3 | CorpusKind::Txtp3 => Some(0.5),
            _ => None,
        }
    }

    pub fn sigma(self, n: usize) -> u32 {
        match self {
            CorpusKind::Dna | CorpusKind::Dnap1 | CorpusKind::Dnap2 | CorpusKind::Dnap3 => DNA_SIGMA,
            CorpusKind::Txt | CorpusKind::Txtp1 | CorpusKind::Txtp2 | CorpusKind::Txtp3 => ASCII_SIGMA,
            CorpusKind::Cnst => 1,
            CorpusKind::Diff => n as u32,
        }
    }

    /// floor(fraction * n) for periodic kinds; `None` for the others.
    pub fn period(self, n: usize) -> Option<usize> {
        // n * 5 / 100 etc. avoids float rounding at exact multiples.
        self.period_fraction().map(|f| (n * (f * 100.0).round() as usize) / 100)
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorpusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown corpus kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    pub n: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(kind: CorpusKind, n: usize, seed: u64) -> Self {
        CorpusSpec { kind, n, seed }
    }

    pub fn sigma(&self) -> u32 {
        self.kind.sigma(self.n)
    }
}

/// Seeded generator shared by corpora and Monte Carlo sampling.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform i.i.d. string over `0..sigma`.
pub fn random_string<R: Rng>(rng: &mut R, n: usize, sigma: u32) -> SymbolString {
    SymbolString((0..n).map(|_| rng.gen_range(0..sigma)).collect())
}

/// Generates one of the benchmark strings. Pure in `(kind, n, seed)`.
///
/// Periodic kinds draw the period string uniformly, rejecting draws whose
/// repetition has a smaller period than requested.
pub fn gen_corpus(spec: &CorpusSpec) -> Result<SymbolString> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::Parameter("corpus length must be at least 1".into()));
    }
    let mut rng = seeded_rng(spec.seed);
    let s = match spec.kind {
        CorpusKind::Cnst => SymbolString(vec![0; n]),
        CorpusKind::Diff => SymbolString((0..n as Symbol).collect()),
        CorpusKind::Dna | CorpusKind::Txt => random_string(&mut rng, n, spec.sigma()),
        kind => {
            let period = kind.period(n).unwrap_or(0);
            if period == 0 {
                return Err(Error::Parameter(format!(
                    "corpus {kind} needs period floor({}*n) >= 1, but n = {n} gives 0",
                    kind.period_fraction().unwrap_or(0.0)
                )));
            }
            loop {
                let p = random_string(&mut rng, period, spec.sigma());
                let s: Vec<Symbol> = p.0.iter().copied().cycle().take(n).collect();
                if smallest_period(&s) == period {
                    break SymbolString(s);
                }
            }
        }
    };
    Ok(s)
}

/// Smallest p such that s[i] == s[i - p] for all i >= p.
pub fn smallest_period(s: &[Symbol]) -> usize {
    if s.is_empty() {
        return 0;
    }
    let mut fail = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    s.len() - fail[s.len() - 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodeMode {
    /// a/c/g/t (any case) to 0..=3.
    Dna,
    /// Printable ASCII 33..=126 to 0..=93.
    Ascii,
}

pub fn encode_byte(b: u8, mode: EncodeMode) -> Option<Symbol> {
    match mode {
        EncodeMode::Dna => match b.to_ascii_lowercase() {
            b'a' => Some(0),
            b'c' => Some(1),
            b'g' => Some(2),
            b't' => Some(3),
            _ => None,
        },
        EncodeMode::Ascii => (33..=126).contains(&b).then(|| (b - 33) as Symbol),
    }
}

pub fn decode_symbol(s: Symbol, mode: EncodeMode) -> Option<char> {
    match mode {
        EncodeMode::Dna => b"ACGT".get(s as usize).map(|&b| b as char),
        EncodeMode::Ascii => (s < ASCII_SIGMA).then(|| (s as u8 + 33) as char),
    }
}

/// Encodes raw bytes, one symbol per byte. Error offsets are 1-based.
pub fn encode_text(bytes: &[u8], mode: EncodeMode) -> Result<SymbolString> {
    bytes
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            encode_byte(b, mode).ok_or(Error::InvalidByte {
                byte: b,
                offset: i + 1,
                alphabet: match mode {
                    EncodeMode::Dna => "dna",
                    EncodeMode::Ascii => "ascii",
                },
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(SymbolString)
}
