//! Gain experiments over the benchmark corpora.
//!
//! A cell is one `(corpus, k)` pair. Each cell generates its corpus string
//! once, counts whole-string iterations (every nontrivial center, both
//! parities) for all three variants, and reports
//! `gain = (t_base - t_test) / t_base` for each configured variant pair.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::engine::{IterationStats, Variant};
use crate::error::{Error, Result};
use crate::lce::build_lce;
use crate::palindromes::total_iterations_par;
use crate::symbols::{gen_corpus, CorpusKind, CorpusSpec, MatchRelation};

/// k as percentages of n: ceil(0.01n), ceil(0.05n), ..., ceil(0.8n).
pub const PAPER_K_PERCENTS: [usize; 6] = [1, 5, 10, 20, 40, 80];

pub const DEFAULT_PAIRS: [(Variant, Variant); 3] = [
    (Variant::Original, Variant::Improve1),
    (Variant::Original, Variant::Improve2),
    (Variant::Improve1, Variant::Improve2),
];

pub fn paper_k_grid(n: usize) -> Vec<usize> {
    PAPER_K_PERCENTS.iter().map(|&pct| (n * pct).div_ceil(100)).collect()
}

/// `(t_base - t_test) / t_base`.
pub fn gain(t_base: u64, t_test: u64) -> Result<f64> {
    if t_base == 0 {
        return Err(Error::Parameter("gain needs a positive base iteration count".into()));
    }
    if t_test > t_base {
        return Err(Error::Invariant(format!("test variant used {t_test} iterations, more than base {t_base}")));
    }
    Ok((t_base - t_test) as f64 / t_base as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainRow {
    pub corpus: CorpusKind,
    pub n: usize,
    pub k: usize,
    pub base: Variant,
    pub test: Variant,
    pub t_base: u64,
    pub t_test: u64,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub corpora: Vec<CorpusKind>,
    pub n: usize,
    pub seed: u64,
    pub ks: Vec<usize>,
    pub pairs: Vec<(Variant, Variant)>,
}

impl ExperimentConfig {
    /// All ten corpora over the six-point k grid for length `n`.
    pub fn paper(n: usize, seed: u64) -> Self {
        ExperimentConfig {
            corpora: CorpusKind::ALL.to_vec(),
            n,
            seed,
            ks: paper_k_grid(n),
            pairs: DEFAULT_PAIRS.to_vec(),
        }
    }
}

/// Whole-string totals for one cell, per variant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTotals {
    pub corpus: CorpusKind,
    pub n: usize,
    pub k: usize,
    pub original: IterationStats,
    pub imp1: IterationStats,
    pub imp2: IterationStats,
}

impl CellTotals {
    pub fn get(&self, v: Variant) -> &IterationStats {
        match v {
            Variant::Original => &self.original,
            Variant::Improve1 => &self.imp1,
            Variant::Improve2 => &self.imp2,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentOutput {
    /// In configuration order: corpus, then k, then pair.
    pub rows: Vec<GainRow>,
    pub cells: Vec<CellTotals>,
    pub warnings: Vec<String>,
}

/// Iteration totals of every variant for one corpus string and k.
pub fn cell_totals(spec: &CorpusSpec, k: usize) -> Result<CellTotals> {
    let s = gen_corpus(spec)?;
    let oracle = build_lce(&s, &MatchRelation::Identity)?;
    let [original, imp1, imp2] = Variant::ALL.map(|v| total_iterations_par(s.len(), &oracle, k, v));
    Ok(CellTotals { corpus: spec.kind, n: spec.n, k, original, imp1, imp2 })
}

pub fn run_gain_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut out = ExperimentOutput::default();
    for &kind in &cfg.corpora {
        let spec = CorpusSpec::new(kind, cfg.n, cfg.seed);
        let s = match gen_corpus(&spec) {
            Ok(s) => s,
            Err(Error::Parameter(msg)) => {
                out.warnings.push(format!("skipped {kind}: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let oracle = build_lce(&s, &MatchRelation::Identity)?;
        for &k in &cfg.ks {
            let [original, imp1, imp2] = Variant::ALL.map(|v| total_iterations_par(s.len(), &oracle, k, v));
            let cell = CellTotals { corpus: kind, n: cfg.n, k, original, imp1, imp2 };
            for &(base, test) in &cfg.pairs {
                let (t_base, t_test) = (cell.get(base).iterations, cell.get(test).iterations);
                out.rows.push(GainRow { corpus: kind, n: cfg.n, k, base, test, t_base, t_test, gain: gain(t_base, t_test)? });
            }
            out.cells.push(cell);
        }
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "corpus,n,k,base,test,t_base,t_test,gain";

/// Writes rows as CSV, sorted by corpus name and then k. Rows with equal keys
/// keep their input order.
pub fn emit_csv<W: Write>(rows: &[GainRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in sorted(rows) {
        writeln!(w, "{},{},{},{},{},{},{},{:.6}", r.corpus, r.n, r.k, r.base, r.test, r.t_base, r.t_test, r.gain)?;
    }
    Ok(())
}

/// JSON array mirroring [`emit_csv`] row for row.
pub fn emit_json<W: Write>(rows: &[GainRow], mut w: W) -> io::Result<()> {
    let rows: Vec<&GainRow> = sorted(rows);
    serde_json::to_writer_pretty(&mut w, &rows)?;
    writeln!(w)
}

fn sorted(rows: &[GainRow]) -> Vec<&GainRow> {
    let mut v: Vec<&GainRow> = rows.iter().collect();
    v.sort_by(|a, b| a.corpus.name().cmp(b.corpus.name()).then(a.k.cmp(&b.k)));
    v
}

/// A trend the measurements were expected to follow but did not.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendViolation {
    pub description: String,
}

/// Walks each series in increasing axis order and reports every step that
/// moves against `increasing`. Series are keyed by `group`.
pub fn monotone_violations<T, G, A>(
    items: &[T],
    group: impl Fn(&T) -> G,
    axis: impl Fn(&T) -> A,
    value: impl Fn(&T) -> f64,
    increasing: bool,
    label: impl Fn(&T, &T) -> String,
) -> Vec<TrendViolation>
where
    G: Ord,
    A: PartialOrd,
{
    let mut groups: BTreeMap<G, Vec<&T>> = BTreeMap::new();
    for it in items {
        groups.entry(group(it)).or_default().push(it);
    }
    let mut out = Vec::new();
    for (_, mut series) in groups {
        series.sort_by(|a, b| axis(a).partial_cmp(&axis(b)).unwrap_or(std::cmp::Ordering::Equal));
        for w in series.windows(2) {
            let (a, b) = (value(w[0]), value(w[1]));
            let bad = if increasing { b < a - 1e-12 } else { b > a + 1e-12 };
            if bad {
                out.push(TrendViolation { description: label(w[0], w[1]) });
            }
        }
    }
    out
}

/// Gains should tend to grow with k and shrink with n. Rows from several
/// lengths are compared at matching positions of their k grids.
pub fn trend_report(rows: &[GainRow]) -> Vec<TrendViolation> {
    let pair = |r: &GainRow| (r.corpus, r.base, r.test);
    let mut v = monotone_violations(
        rows,
        |r| (pair(r), r.n),
        |r| r.k,
        |r| r.gain,
        true,
        |a, b| {
            format!(
                "{} {}->{} n={}: gain fell from {:.6} (k={}) to {:.6} (k={})",
                a.corpus, a.base, a.test, a.n, a.gain, a.k, b.gain, b.k
            )
        },
    );
    // Position of each row's k within its own length's grid.
    let mut grids: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in rows {
        grids.entry(r.n).or_default().push(r.k);
    }
    for ks in grids.values_mut() {
        ks.sort_unstable();
        ks.dedup();
    }
    let rank = |r: &GainRow| grids[&r.n].binary_search(&r.k).unwrap_or(0);
    v.extend(monotone_violations(
        rows,
        |r| (pair(r), rank(r)),
        |r| r.n,
        |r| r.gain,
        false,
        |a, b| {
            format!(
                "{} {}->{} k-grid point {}: gain rose from {:.6} (n={}) to {:.6} (n={})",
                a.corpus,
                a.base,
                a.test,
                rank(a),
                a.gain,
                a.n,
                b.gain,
                b.n
            )
        },
    ));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gain_formula() {
        assert_eq!(gain(10, 8).unwrap(), 0.2);
        assert_eq!(gain(7, 7).unwrap(), 0.0);
        assert!(matches!(gain(5, 6), Err(Error::Invariant(_))));
        assert!(gain(0, 0).is_err());
    }

    #[test]
    fn k_grid() {
        assert_eq!(paper_k_grid(50), vec![1, 3, 5, 10, 20, 40]);
        assert_eq!(paper_k_grid(2500), vec![25, 125, 250, 500, 1000, 2000]);
        assert_eq!(paper_k_grid(10), vec![1, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn csv_shapes() {
        let mut buf = Vec::new();
        emit_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));

        let row = GainRow {
            corpus: CorpusKind::Cnst,
            n: 50,
            k: 3,
            base: Variant::Original,
            test: Variant::Improve1,
            t_base: 400,
            t_test: 100,
            gain: 0.75,
        };
        let mut buf = Vec::new();
        emit_csv(&[row], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\ncnst,50,3,original,imp1,400,100,0.750000\n"));
    }

    #[test]
    fn small_experiment() {
        let cfg = ExperimentConfig {
            corpora: vec![CorpusKind::Cnst, CorpusKind::Dnap1],
            n: 8,
            seed: 1,
            ks: vec![2],
            pairs: DEFAULT_PAIRS.to_vec(),
        };
        let out = run_gain_experiment(&cfg).unwrap();
        assert_eq!(out.rows.len(), 3);
        assert_eq!(out.warnings.len(), 1);
        for r in &out.rows {
            assert!((0.0..1.0).contains(&r.gain));
        }
        let mut buf = Vec::new();
        emit_json(&out.rows, &mut buf).unwrap();
        let back: Vec<GainRow> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, out.rows);
    }

    #[test]
    fn trend_detection() {
        let mk = |n, k, gain| GainRow {
            corpus: CorpusKind::Dna,
            n,
            k,
            base: Variant::Original,
            test: Variant::Improve1,
            t_base: 1,
            t_test: 1,
            gain,
        };
        let rows = vec![mk(10, 1, 0.2), mk(10, 2, 0.1), mk(20, 1, 0.3), mk(20, 4, 0.4)];
        let v = trend_report(&rows);
        // k trend broken at n=10; n trend broken at both grid points.
        assert_eq!(v.len(), 3, "{v:?}");
    }
}
