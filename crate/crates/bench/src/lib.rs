//! Shared inputs for the criterion benchmarks.

use palk_core::{gen_corpus, CorpusKind, CorpusSpec, SymbolString};

/// Seed used for every benchmark corpus.
pub const SEED: u64 = 1;

/// Corpora measured by default: random DNA plus the two extremes.
pub const KINDS: [CorpusKind; 3] = [CorpusKind::Dna, CorpusKind::Cnst, CorpusKind::Diff];

pub fn fixture(kind: CorpusKind, n: usize) -> SymbolString {
    gen_corpus(&CorpusSpec::new(kind, n, SEED)).expect("benchmark corpora are generable")
}
