//! Maximal approximate palindromes with up to `k` edit errors.
//!
//! For every center of a string the search finds the longest stretch whose
//! reversed left part can be edited into its right part with at most `k`
//! substitutions, insertions and deletions, in `O(k^2)` time per center on
//! top of a shared longest-common-extension index. The scan comes in three
//! pruning variants that give identical answers but differ in how many
//! diagonal iterations they spend; [`bench`] and [`expected`] measure that
//! difference on benchmark corpora and on uniformly random strings.

pub mod bench;
pub mod engine;
pub mod error;
pub mod expected;
pub mod lce;
pub mod palindromes;
pub mod symbols;

pub use engine::{
    approx_pattern_match, dp_oracle, k_differences_scan, oracle_maximal, reconstruct_script, CenterConfig,
    CenterOutcome, DiagonalFrontier, DiagonalStatus, EditOp, EditScript, IterationStats, Parity, Variant,
};
pub use error::{Error, Result};
pub use lce::{build_lce, ConcatText, Extension, LceOracle, ScanLce};
pub use palindromes::{maximal_at_center, scan_all, verify_result, PalindromeResult, ScanOptions, ScanReport};
pub use symbols::{
    encode_text, gen_corpus, make_complement_relation, reverse, CorpusKind, CorpusSpec, EncodeMode, MatchRelation,
    Symbol, SymbolString,
};
