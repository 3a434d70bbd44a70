//! Expected iteration counts over uniformly random strings.
//!
//! `t̄` is the mean whole-string iteration total (every nontrivial center,
//! both parities) over all `sigma^n` strings of length `n`. Small cases are
//! enumerated exactly; larger ones are estimated by seeded Monte Carlo
//! sampling. Gains are ratios of expectations, `(t̄_base - t̄_test) / t̄_base`.

use std::io::{self, Write};

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bench::{monotone_violations, TrendViolation, DEFAULT_PAIRS};
use crate::engine::Variant;
use crate::error::{Error, Result};
use crate::lce::{ConcatText, ScanLce};
use crate::palindromes::total_iterations;
use crate::symbols::{random_string, seeded_rng, MatchRelation, Symbol, SymbolString};

pub const DEFAULT_GUARD: u128 = 10_000_000;
pub const DEFAULT_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    MonteCarlo,
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "montecarlo",
            Method::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "montecarlo" | "mc" => Ok(Method::MonteCarlo),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Parameter(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedConfig {
    pub n: usize,
    pub sigma: u32,
    pub k: usize,
    pub variant: Variant,
    pub method: Method,
    pub samples: usize,
    pub seed: u64,
    /// Largest `sigma^n` that exact enumeration accepts.
    pub guard: u128,
}

impl ExpectedConfig {
    pub fn new(n: usize, sigma: u32, k: usize, variant: Variant) -> Self {
        ExpectedConfig {
            n,
            sigma,
            k,
            variant,
            method: Method::Auto,
            samples: DEFAULT_SAMPLES,
            seed: 1,
            guard: DEFAULT_GUARD,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_samples(mut self, samples: usize, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }

    /// `sigma^n`, or `None` past `u128`.
    pub fn string_count(&self) -> Option<u128> {
        (self.sigma as u128).checked_pow(self.n as u32)
    }

    /// Exact or Monte Carlo, with `Auto` settled against the guard.
    pub fn resolved_method(&self) -> Method {
        match self.method {
            Method::Auto if self.string_count().is_some_and(|c| c <= self.guard) => Method::Exact,
            Method::Auto => Method::MonteCarlo,
            m => m,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sigma == 0 {
            return Err(Error::Parameter("sigma must be at least 1".into()));
        }
        Ok(())
    }
}

/// `total / strings`, kept as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMean {
    pub total: u128,
    pub strings: u128,
}

impl ExactMean {
    pub fn value(&self) -> f64 {
        self.total as f64 / self.strings as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Standard error of the mean; zero for exact results.
    pub stderr: f64,
    /// Strings enumerated or sampled.
    pub samples: u64,
}

fn string_totals(s: &[Symbol], k: usize) -> [u64; 3] {
    if s.len() < 2 {
        return [0; 3];
    }
    let lce = ScanLce::new(ConcatText::palindromic(&SymbolString::from(s), &MatchRelation::Identity).unwrap());
    Variant::ALL.map(|v| total_iterations(s.len(), &lce, k, v).iterations)
}

fn check_guard(cfg: &ExpectedConfig) -> Result<u128> {
    match cfg.string_count() {
        Some(c) if c <= cfg.guard => Ok(c),
        _ => Err(Error::Parameter(format!(
            "exact enumeration of {}^{} strings exceeds the guard of {}; use the montecarlo method instead",
            cfg.sigma, cfg.n, cfg.guard
        ))),
    }
}

/// Sums of whole-string totals over all `sigma^n` strings, per variant.
fn enumerate_all(cfg: &ExpectedConfig) -> Result<([u128; 3], u128)> {
    cfg.validate()?;
    let count = check_guard(cfg)?;
    let (n, sigma, k) = (cfg.n, cfg.sigma, cfg.k);
    let sums = (0..count as u64)
        .into_par_iter()
        .map_init(
            || vec![0 as Symbol; n],
            |buf, mut idx| {
                for slot in buf.iter_mut() {
                    *slot = (idx % sigma as u64) as Symbol;
                    idx /= sigma as u64;
                }
                string_totals(buf, k).map(|t| t as u128)
            },
        )
        .reduce(|| [0u128; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
    Ok((sums, count))
}

pub fn expected_iterations_exact(cfg: &ExpectedConfig) -> Result<ExactMean> {
    let (sums, strings) = enumerate_all(cfg)?;
    Ok(ExactMean { total: sums[variant_index(cfg.variant)], strings })
}

fn variant_index(v: Variant) -> usize {
    Variant::ALL.iter().position(|&w| w == v).unwrap()
}

fn sample_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(i as u64);
    rng
}

/// Per-variant Monte Carlo estimates from one shared set of samples.
fn sample_all(cfg: &ExpectedConfig) -> Result<[Estimate; 3]> {
    cfg.validate()?;
    if cfg.samples < 2 {
        return Err(Error::Parameter("Monte Carlo needs at least 2 samples".into()));
    }
    let totals: Vec<[u64; 3]> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let s = random_string(&mut sample_rng(cfg.seed, i), cfg.n, cfg.sigma);
            string_totals(s.as_slice(), cfg.k)
        })
        .collect();
    let m = totals.len() as f64;
    Ok(std::array::from_fn(|v| {
        let mean = totals.iter().map(|t| t[v] as f64).sum::<f64>() / m;
        let var = totals.iter().map(|t| (t[v] as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0);
        Estimate { mean, stderr: (var / m).sqrt(), samples: totals.len() as u64 }
    }))
}

/// Mean and standard error over `cfg.samples` seeded uniform strings.
pub fn expected_iterations_mc(cfg: &ExpectedConfig) -> Result<Estimate> {
    Ok(sample_all(cfg)?[variant_index(cfg.variant)])
}

/// Estimates for all three variants under the configured method.
pub fn expected_all(cfg: &ExpectedConfig) -> Result<(Method, [Estimate; 3])> {
    match cfg.resolved_method() {
        Method::Exact => {
            let (sums, strings) = enumerate_all(cfg)?;
            let est = sums.map(|t| Estimate {
                mean: ExactMean { total: t, strings }.value(),
                stderr: 0.0,
                samples: strings as u64,
            });
            Ok((Method::Exact, est))
        }
        _ => Ok((Method::MonteCarlo, sample_all(cfg)?)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedReport {
    pub n: usize,
    pub sigma: u32,
    pub k: usize,
    pub base: Variant,
    pub test: Variant,
    pub method: Method,
    pub samples: u64,
    pub tbar_base: f64,
    pub tbar_test: f64,
    pub stderr_base: f64,
    pub stderr_test: f64,
    pub gain: f64,
}

fn ratio_gain(base: f64, test: f64) -> f64 {
    if base > 0.0 {
        (base - test) / base
    } else {
        0.0
    }
}

fn report(cfg: &ExpectedConfig, method: Method, est: &[Estimate; 3], base: Variant, test: Variant) -> ExpectedReport {
    let (b, t) = (est[variant_index(base)], est[variant_index(test)]);
    ExpectedReport {
        n: cfg.n,
        sigma: cfg.sigma,
        k: cfg.k,
        base,
        test,
        method,
        samples: b.samples,
        tbar_base: b.mean,
        tbar_test: t.mean,
        stderr_base: b.stderr,
        stderr_test: t.stderr,
        gain: ratio_gain(b.mean, t.mean),
    }
}

/// Gain of `test.variant` over `base.variant`. Both configurations must
/// agree on everything but the variant, so they share one string population.
pub fn expected_gain(base: &ExpectedConfig, test: &ExpectedConfig) -> Result<ExpectedReport> {
    if base.resolved_method() != test.resolved_method() {
        return Err(Error::Parameter(format!(
            "base uses {} but test uses {}; both variants need the same method",
            base.resolved_method().name(),
            test.resolved_method().name()
        )));
    }
    let same_population = ExpectedConfig { variant: base.variant, method: base.method, ..*test } == *base;
    if !same_population {
        return Err(Error::Parameter("base and test configurations differ beyond the variant".into()));
    }
    let (method, est) = expected_all(base)?;
    Ok(report(base, method, &est, base.variant, test.variant))
}

/// Reports for every configured pair from one evaluation.
pub fn expected_pairs(cfg: &ExpectedConfig, pairs: &[(Variant, Variant)]) -> Result<Vec<ExpectedReport>> {
    let (method, est) = expected_all(cfg)?;
    Ok(pairs.iter().map(|&(b, t)| report(cfg, method, &est, b, t)).collect())
}

/// Desk-scale sweep: n in 2..=10, sigma in 2..=8, k in {1, 2}.
pub fn desk_preset() -> Vec<(usize, u32, usize)> {
    let mut cells = Vec::new();
    for n in 2..=10 {
        for sigma in 2..=8 {
            for k in 1..=2 {
                cells.push((n, sigma, k));
            }
        }
    }
    cells
}

pub fn run_preset(
    cells: &[(usize, u32, usize)],
    method: Method,
    samples: usize,
    seed: u64,
) -> Result<Vec<ExpectedReport>> {
    let mut out = Vec::new();
    for &(n, sigma, k) in cells {
        let cfg = ExpectedConfig::new(n, sigma, k, Variant::Original).with_method(method).with_samples(samples, seed);
        out.extend(expected_pairs(&cfg, &DEFAULT_PAIRS)?);
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "n,sigma,k,base,test,method,samples,tbar_base,tbar_test,stderr_base,stderr_test,gain";

pub fn emit_csv<W: Write>(rows: &[ExpectedReport], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.n,
            r.sigma,
            r.k,
            r.base,
            r.test,
            r.method.name(),
            r.samples,
            r.tbar_base,
            r.tbar_test,
            r.stderr_base,
            r.stderr_test,
            r.gain
        )?;
    }
    Ok(())
}

/// Gains should tend to grow with k and shrink as sigma or n grow.
pub fn trend_report(rows: &[ExpectedReport]) -> Vec<TrendViolation> {
    let pair = |r: &ExpectedReport| (r.base, r.test);
    let fmt = |what: &str, a: &ExpectedReport, b: &ExpectedReport| {
        format!(
            "{}->{} {what}: gain {:.6} at (n={}, sigma={}, k={}) then {:.6} at (n={}, sigma={}, k={})",
            a.base, a.test, a.gain, a.n, a.sigma, a.k, b.gain, b.n, b.sigma, b.k
        )
    };
    let mut v = monotone_violations(
        rows,
        |r| (pair(r), r.n, r.sigma),
        |r| r.k,
        |r| r.gain,
        true,
        |a, b| fmt("fell as k grew", a, b),
    );
    v.extend(monotone_violations(
        rows,
        |r| (pair(r), r.n, r.k),
        |r| r.sigma,
        |r| r.gain,
        false,
        |a, b| fmt("rose as sigma grew", a, b),
    ));
    v.extend(monotone_violations(
        rows,
        |r| (pair(r), r.sigma, r.k),
        |r| r.n,
        |r| r.gain,
        false,
        |a, b| fmt("rose as n grew", a, b),
    ));
    v
}
