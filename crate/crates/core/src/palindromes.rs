//! Whole-string search for maximal approximate palindromes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{
    dp_oracle, k_differences_scan, reconstruct_script, CenterConfig, CenterOutcome, EditOp, EditScript,
    IterationStats, Parity, Variant,
};
use crate::error::{Error, Result};
use crate::lce::{build_lce, Extension};
use crate::symbols::{MatchRelation, Symbol, SymbolString};

/// One maximal approximate palindrome. `start..=end` is 1-based inclusive
/// and is empty (`start == end + 1`) when nothing extends from the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalindromeResult {
    pub center: usize,
    pub parity: Parity,
    pub p_star: usize,
    pub q_star: usize,
    pub start: usize,
    pub end: usize,
    pub size: usize,
    pub errors: usize,
    pub iterations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<EditScript>,
}

impl PalindromeResult {
    fn from_outcome(outcome: &CenterOutcome, script: Option<EditScript>) -> Self {
        let cfg = outcome.cfg;
        let (p, q) = outcome.best;
        let odd = usize::from(cfg.parity == Parity::Odd);
        PalindromeResult {
            center: cfg.c,
            parity: cfg.parity,
            p_star: p,
            q_star: q,
            start: cfg.x - p + 1,
            end: cfg.c + q,
            size: p + q + odd,
            errors: outcome.e_best,
            iterations: outcome.stats.iterations,
            script,
        }
    }
}

/// Centers that are searched for a string of length `n`.
///
/// Without `include_trivial` this is even `1..n` and odd `2..n`; with it,
/// every `1..=n` for both parities.
pub fn centers(n: usize, parity: Parity, include_trivial: bool) -> std::ops::RangeInclusive<usize> {
    match (include_trivial, parity) {
        (true, _) => 1..=n,
        (false, Parity::Even) => 1..=n.saturating_sub(1),
        (false, Parity::Odd) => 2..=n.saturating_sub(1),
    }
}

pub fn is_trivial_center(n: usize, c: usize, parity: Parity) -> bool {
    !centers(n, parity, false).contains(&c)
}

/// Maximal palindrome around one nontrivial center.
pub fn maximal_at_center<L: Extension + ?Sized>(
    s: &SymbolString,
    oracle: &L,
    c: usize,
    parity: Parity,
    k: usize,
    variant: Variant,
    want_script: bool,
) -> Result<PalindromeResult> {
    if is_trivial_center(s.len(), c, parity) {
        return Err(Error::Parameter(format!(
            "{parity} center {c} is trivial for n = {}; its script is all insertions or deletions",
            s.len()
        )));
    }
    center_result(s.len(), oracle, c, parity, k, variant, want_script)
}

fn center_result<L: Extension + ?Sized>(
    n: usize,
    oracle: &L,
    c: usize,
    parity: Parity,
    k: usize,
    variant: Variant,
    want_script: bool,
) -> Result<PalindromeResult> {
    let cfg = CenterConfig::new(n, c, parity)?;
    let outcome = k_differences_scan(oracle, &cfg, k, variant, want_script);
    let script = if want_script { Some(reconstruct_script(&outcome)?) } else { None };
    Ok(PalindromeResult::from_outcome(&outcome, script))
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub k: usize,
    pub variant: Variant,
    pub parities: Vec<Parity>,
    pub relation: MatchRelation,
    pub want_script: bool,
    pub include_trivial: bool,
}

impl ScanOptions {
    pub fn new(k: usize, variant: Variant) -> Self {
        ScanOptions {
            k,
            variant,
            parities: Parity::BOTH.to_vec(),
            relation: MatchRelation::Identity,
            want_script: false,
            include_trivial: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    /// Ordered by parity (even first), then center.
    pub results: Vec<PalindromeResult>,
    pub stats: IterationStats,
    pub warning: Option<String>,
}

/// Scans every center of `s` and returns one maximal palindrome per center
/// and parity.
pub fn scan_all(s: &SymbolString, opts: &ScanOptions) -> Result<ScanReport> {
    if s.len() < 2 && !(opts.include_trivial && s.len() == 1) {
        return Ok(ScanReport {
            warning: Some(format!("string of length {} has no nontrivial centers", s.len())),
            ..ScanReport::default()
        });
    }
    let oracle = build_lce(s, &opts.relation)?;
    scan_with(s.len(), &oracle, opts)
}

/// [`scan_all`] over a prebuilt LCE index of a string of length `n`.
pub fn scan_with<L: Extension + ?Sized>(n: usize, oracle: &L, opts: &ScanOptions) -> Result<ScanReport> {
    let mut parities = opts.parities.clone();
    parities.sort();
    parities.dedup();
    let jobs: Vec<(Parity, usize)> = parities
        .iter()
        .flat_map(|&p| centers(n, p, opts.include_trivial).map(move |c| (p, c)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(parity, c)| center_result(n, oracle, c, parity, opts.k, opts.variant, opts.want_script))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = IterationStats::default();
    for r in &results {
        stats.merge(&IterationStats { iterations: r.iterations, max_diagonal_visits: 0 });
    }
    Ok(ScanReport { results, stats, warning: None })
}

/// Total iterations over all nontrivial centers, both parities, without
/// building result records. Also reports the largest per-diagonal visit count.
pub fn total_iterations<L: Extension + ?Sized>(n: usize, oracle: &L, k: usize, variant: Variant) -> IterationStats {
    let mut stats = IterationStats::default();
    for parity in Parity::BOTH {
        for c in centers(n, parity, false) {
            stats.merge(&center_stats(n, oracle, c, parity, k, variant));
        }
    }
    stats
}

/// Parallel form of [`total_iterations`] for long strings.
pub fn total_iterations_par<L: Extension + ?Sized>(n: usize, oracle: &L, k: usize, variant: Variant) -> IterationStats {
    Parity::BOTH
        .par_iter()
        .flat_map(|&parity| centers(n, parity, false).into_par_iter().map(move |c| (parity, c)))
        .map(|(parity, c)| center_stats(n, oracle, c, parity, k, variant))
        .reduce(IterationStats::default, |mut a, b| {
            a.merge(&b);
            a
        })
}

fn center_stats<L: Extension + ?Sized>(
    n: usize,
    oracle: &L,
    c: usize,
    parity: Parity,
    k: usize,
    variant: Variant,
) -> IterationStats {
    let cfg = CenterConfig { c, parity, x: parity.left_len(c), y: n - c };
    k_differences_scan(oracle, &cfg, k, variant, false).stats
}

/// Left part `S[1..u]^R` and right part `S[c+1..n]` of a center.
pub fn center_views(s: &SymbolString, c: usize, parity: Parity) -> (Vec<Symbol>, Vec<Symbol>) {
    let u = parity.left_len(c);
    let left = s.as_slice()[..u].iter().rev().copied().collect();
    let right = s.as_slice()[c..].to_vec();
    (left, right)
}

/// Why a result failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Replays the result's script over the center's two parts and checks it
/// ends at `(p*, q*)`, matches only related symbols and pays `errors` edits.
pub fn verify_result(s: &SymbolString, r: &PalindromeResult, relation: &MatchRelation) -> Verdict {
    let Some(script) = r.script.as_ref() else {
        return Verdict::Invalid("result carries no script".into());
    };
    if r.center == 0 || r.center > s.len() {
        return Verdict::Invalid(format!("center {} outside 1..={}", r.center, s.len()));
    }
    let (left, right) = center_views(s, r.center, r.parity);
    let (mut p, mut q) = (0usize, 0usize);
    for (i, &op) in script.ops().iter().enumerate() {
        let (dp, dq) = op.step();
        if p + dp > left.len() || q + dq > right.len() {
            return Verdict::Invalid(format!("op {} ({}) runs past the end of a part", i + 1, op.letter()));
        }
        if op == EditOp::Match && !relation.matches(left[p], right[q]) {
            return Verdict::Invalid(format!("op {} matches unrelated symbols", i + 1));
        }
        p += dp;
        q += dq;
    }
    if (p, q) != (r.p_star, r.q_star) {
        return Verdict::Invalid(format!("replay ends at ({p}, {q}), expected ({}, {})", r.p_star, r.q_star));
    }
    if script.errors() != r.errors {
        return Verdict::Invalid(format!("script pays {} edits, result claims {}", script.errors(), r.errors));
    }
    Verdict::Valid
}

/// Edit distance between the reported prefixes, via the full DP matrix.
pub fn reported_distance(s: &SymbolString, r: &PalindromeResult, relation: &MatchRelation) -> usize {
    let (left, right) = center_views(s, r.center, r.parity);
    dp_oracle(&left[..r.p_star], &right[..r.q_star], relation)[r.p_star][r.q_star]
}
