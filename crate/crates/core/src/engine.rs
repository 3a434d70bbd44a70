//! Diagonal dynamic programming over the edit grid of two strings.
//!
//! Grid node `(i, j)` stands for the prefixes `X[1..i]` and `Y[1..j]`; nodes
//! are grouped into diagonals `d = j - i`. For each error level `e` the scan
//! keeps the farthest row reachable on every diagonal with at most `e` edit
//! operations, then slides down the diagonal with an LCE query.
//!
//! Three pruning variants share the same recurrence:
//!
//! * [`Variant::Original`] visits every diagonal in `-min(e,x)..=min(e,y)`.
//! * [`Variant::Improve1`] stops visiting a diagonal once its farthest node
//!   lies on row `x` or column `y` (kept in a doubly-linked list).
//! * [`Variant::Improve2`] additionally drops every diagonal left of one that
//!   hit row `x` and right of one that hit column `y`, so work stays inside a
//!   contiguous strip.
//!
//! A stopped diagonal keeps its final row, and neighbours keep reading it as a
//! predecessor. All variants abort as soon as the corner `(x, y)` is reached.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lce::{ConcatText, Extension, LceOracle};
use crate::symbols::{MatchRelation, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// Length `u` of the left part for center `c`.
    pub fn left_len(self, c: usize) -> usize {
        match self {
            Parity::Even => c,
            Parity::Odd => c.saturating_sub(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Parameter(format!("unknown parity `{s}`"))),
        }
    }
}

/// One center of a string of length `n`: the left part has `x` symbols, the
/// right part `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterConfig {
    pub c: usize,
    pub parity: Parity,
    pub x: usize,
    pub y: usize,
}

impl CenterConfig {
    pub fn new(n: usize, c: usize, parity: Parity) -> Result<Self> {
        if c == 0 || c > n {
            return Err(Error::OutOfBounds { pos: c, len: n });
        }
        Ok(CenterConfig { c, parity, x: parity.left_len(c), y: n - c })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "original")]
    Original,
    #[serde(rename = "imp1")]
    Improve1,
    #[serde(rename = "imp2")]
    Improve2,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Original, Variant::Improve1, Variant::Improve2];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Improve1 => "imp1",
            Variant::Improve2 => "imp2",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" | "orig" => Ok(Variant::Original),
            "imp1" | "improve1" => Ok(Variant::Improve1),
            "imp2" | "improve2" => Ok(Variant::Improve2),
            _ => Err(Error::Parameter(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditOp {
    /// Advance both cursors over relation-matching symbols.
    Match,
    /// Advance both cursors, paying one error.
    Substitute,
    /// Advance the right cursor.
    Insert,
    /// Advance the left cursor.
    Delete,
}

impl EditOp {
    pub fn letter(self) -> char {
        match self {
            EditOp::Match => 'M',
            EditOp::Substitute => 'S',
            EditOp::Insert => 'I',
            EditOp::Delete => 'D',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'M' => Some(EditOp::Match),
            'S' => Some(EditOp::Substitute),
            'I' => Some(EditOp::Insert),
            'D' => Some(EditOp::Delete),
            _ => None,
        }
    }

    /// Cursor advance `(dp, dq)`.
    pub fn step(self) -> (usize, usize) {
        match self {
            EditOp::Match | EditOp::Substitute => (1, 1),
            EditOp::Insert => (0, 1),
            EditOp::Delete => (1, 0),
        }
    }
}

/// Ops in left-to-right replay order. Renders run-length encoded, e.g. `2M1S1I`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EditScript(pub Vec<EditOp>);

impl EditScript {
    pub fn ops(&self) -> &[EditOp] {
        &self.0
    }

    pub fn errors(&self) -> usize {
        self.0.iter().filter(|&&op| op != EditOp::Match).count()
    }

    /// Final cursor position after replaying from `(0, 0)`.
    pub fn endpoint(&self) -> (usize, usize) {
        self.0.iter().fold((0, 0), |(p, q), op| {
            let (dp, dq) = op.step();
            (p + dp, q + dq)
        })
    }
}

impl fmt::Display for EditScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ops = self.0.iter().peekable();
        while let Some(&op) = ops.next() {
            let mut run = 1;
            while ops.peek() == Some(&&op) {
                ops.next();
                run += 1;
            }
            write!(f, "{run}{}", op.letter())?;
        }
        Ok(())
    }
}

impl Serialize for EditScript {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EditScript {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for EditScript {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut ops = Vec::new();
        let mut run = 0usize;
        let mut digits = 0;
        for (i, ch) in s.chars().enumerate() {
            if let Some(d) = ch.to_digit(10) {
                run = run * 10 + d as usize;
                digits += 1;
            } else {
                let op = EditOp::from_letter(ch).filter(|_| digits > 0).ok_or_else(|| Error::Parse {
                    line: 1,
                    column: i + 1,
                    reason: format!("bad edit script `{s}`"),
                })?;
                ops.extend(std::iter::repeat_n(op, run));
                run = 0;
                digits = 0;
            }
        }
        if digits > 0 {
            return Err(Error::Parse { line: 1, column: s.len(), reason: format!("dangling count in `{s}`") });
        }
        Ok(EditScript(ops))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationStats {
    /// Step-1 executions plus processed `(e, d)` pairs.
    pub iterations: u64,
    /// Largest number of times any single diagonal was processed in one scan.
    pub max_diagonal_visits: u32,
}

impl IterationStats {
    pub fn merge(&mut self, other: &IterationStats) {
        self.iterations += other.iterations;
        self.max_diagonal_visits = self.max_diagonal_visits.max(other.max_diagonal_visits);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalStatus {
    /// Not reached yet.
    Absent,
    Alive,
    /// Removed from processing; its row stays readable.
    Frozen,
}

const ABSENT: isize = -1;

/// Farthest-row table over diagonals `-lo..=hi` for one error level, plus the
/// pruning state of the running variant.
#[derive(Debug, Clone)]
pub struct DiagonalFrontier {
    lo: isize,
    hi: isize,
    rows: Vec<isize>,
    status: Vec<DiagonalStatus>,
    visits: Vec<u32>,
    // Improve1: doubly-linked list over alive slots; slot 0 and the last
    // slot act as head and tail sentinels.
    next: Vec<usize>,
    prev: Vec<usize>,
    // Improve2: alive diagonals lie in `strip_left..=strip_right`.
    strip_left: isize,
    strip_right: isize,
}

impl DiagonalFrontier {
    fn new(lo: isize, hi: isize) -> Self {
        let slots = (hi - lo + 1) as usize + 2;
        let mut next = vec![0; slots];
        let mut prev = vec![0; slots];
        next[0] = slots - 1;
        prev[slots - 1] = 0;
        DiagonalFrontier {
            lo,
            hi,
            rows: vec![ABSENT; slots],
            status: vec![DiagonalStatus::Absent; slots],
            visits: vec![0; slots],
            next,
            prev,
            strip_left: lo,
            strip_right: hi,
        }
    }

    #[inline]
    fn slot(&self, d: isize) -> usize {
        (d - self.lo + 1) as usize
    }

    /// Farthest row on `d`, or `None` when `d` has not been reached.
    pub fn row(&self, d: isize) -> Option<usize> {
        if d < self.lo || d > self.hi {
            return None;
        }
        let r = self.rows[self.slot(d)];
        (r >= 0).then_some(r as usize)
    }

    pub fn status(&self, d: isize) -> DiagonalStatus {
        if d < self.lo || d > self.hi {
            return DiagonalStatus::Absent;
        }
        self.status[self.slot(d)]
    }

    pub fn visits(&self, d: isize) -> u32 {
        if d < self.lo || d > self.hi {
            return 0;
        }
        self.visits[self.slot(d)]
    }

    fn link_front(&mut self, s: usize) {
        let first = self.next[0];
        self.next[s] = first;
        self.prev[s] = 0;
        self.prev[first] = s;
        self.next[0] = s;
    }

    fn link_back(&mut self, s: usize) {
        let tail = self.next.len() - 1;
        let last = self.prev[tail];
        self.prev[s] = last;
        self.next[s] = tail;
        self.next[last] = s;
        self.prev[tail] = s;
    }

    fn unlink(&mut self, s: usize) {
        let (p, n) = (self.prev[s], self.next[s]);
        self.next[p] = n;
        self.prev[n] = p;
    }
}

/// A stretch of one diagonal computed at one error level: the row reached
/// through the predecessors and the row after sliding over matches.
#[derive(Debug, Clone, Copy)]
struct Segment {
    level: u32,
    start: isize,
    end: isize,
}

/// Per-diagonal segment history, kept only when scripts are requested.
#[derive(Debug, Clone)]
pub struct Trace {
    lo: isize,
    segments: Vec<Vec<Segment>>,
}

impl Trace {
    fn new(lo: isize, hi: isize) -> Self {
        Trace { lo, segments: vec![Vec::new(); (hi - lo + 1) as usize] }
    }

    fn push(&mut self, d: isize, seg: Segment) {
        self.segments[(d - self.lo) as usize].push(seg);
    }

    fn latest(&self, d: isize, level: u32) -> Option<&Segment> {
        let idx = d - self.lo;
        if idx < 0 || idx as usize >= self.segments.len() {
            return None;
        }
        let segs = &self.segments[idx as usize];
        let k = segs.partition_point(|s| s.level <= level);
        k.checked_sub(1).map(|k| &segs[k])
    }

    /// Farthest row on `d` using at most `level` errors.
    fn farthest(&self, d: isize, level: u32) -> isize {
        self.latest(d, level).map_or(ABSENT, |s| s.end)
    }
}

#[derive(Debug, Clone)]
pub struct CenterOutcome {
    pub cfg: CenterConfig,
    /// Best node `(i*, j*)`, maximizing `i* + j*`.
    pub best: (usize, usize),
    /// Error level at which `best` was first reached.
    pub e_best: usize,
    pub stats: IterationStats,
    pub trace: Option<Trace>,
}

/// Runs the k-differences scan for one center of the string indexed by `lce`.
pub fn k_differences_scan<L: Extension + ?Sized>(
    lce: &L,
    cfg: &CenterConfig,
    k: usize,
    variant: Variant,
    want_script: bool,
) -> CenterOutcome {
    let n = lce.concat().left_len();
    let left_base = n - cfg.x;
    let right_base = n + cfg.c + 1;
    scan_grid(cfg, k, variant, want_script, |i, j| lce.view_extend(left_base + i, right_base + j)).0
}

/// Same as [`k_differences_scan`] but also returns the final frontier.
pub fn k_differences_frontier<L: Extension + ?Sized>(
    lce: &L,
    cfg: &CenterConfig,
    k: usize,
    variant: Variant,
) -> (CenterOutcome, DiagonalFrontier) {
    let n = lce.concat().left_len();
    let left_base = n - cfg.x;
    let right_base = n + cfg.c + 1;
    scan_grid(cfg, k, variant, false, |i, j| lce.view_extend(left_base + i, right_base + j))
}

fn scan_grid<F>(
    cfg: &CenterConfig,
    k: usize,
    variant: Variant,
    want_script: bool,
    extend: F,
) -> (CenterOutcome, DiagonalFrontier)
where
    F: Fn(usize, usize) -> usize,
{
    let x = cfg.x as isize;
    let y = cfg.y as isize;
    let lo = -(k.min(cfg.x) as isize);
    let hi = k.min(cfg.y) as isize;
    let mut fr = DiagonalFrontier::new(lo, hi);
    let mut trace = want_script.then(|| Trace::new(lo, hi));
    let mut cur = fr.rows.clone();

    let mut stats = IterationStats { iterations: 1, max_diagonal_visits: 1 };
    let row0 = extend(0, 0) as isize;
    let s0 = fr.slot(0);
    fr.rows[s0] = row0;
    fr.status[s0] = DiagonalStatus::Alive;
    fr.visits[s0] = 1;
    if let Some(t) = trace.as_mut() {
        t.push(0, Segment { level: 0, start: 0, end: row0 });
    }
    let mut best = (row0, row0);
    let mut e_best = 0;
    let mut done = row0 == x && row0 == y;

    if !done {
        match variant {
            Variant::Original => {}
            Variant::Improve1 => {
                fr.link_back(s0);
                freeze_if_bordered(&mut fr, variant, 0, row0, x, y);
            }
            Variant::Improve2 => {
                freeze_if_bordered(&mut fr, variant, 0, row0, x, y);
                drop_outside_strip(&mut fr);
            }
        }
    }

    let mut e = 0usize;
    while !done && e < k {
        e += 1;
        let ei = e as isize;
        let (level_lo, level_hi) = (-(ei.min(x)), ei.min(y));
        cur.copy_from_slice(&fr.rows);

        // Visit order for this level, ascending in d.
        let mut process = |fr: &mut DiagonalFrontier, cur: &mut [isize], d: isize| -> bool {
            let s = fr.slot(d);
            stats.iterations += 1;
            fr.visits[s] += 1;
            stats.max_diagonal_visits = stats.max_diagonal_visits.max(fr.visits[s]);

            let (ins, sub, del) = (fr.rows[s - 1], fr.rows[s], fr.rows[s + 1]);
            let mut cand = ABSENT;
            if ins >= 0 {
                cand = ins;
            }
            if sub >= 0 {
                cand = cand.max(sub + 1);
            }
            if del >= 0 {
                cand = cand.max(del + 1);
            }
            if cand < 0 {
                return false;
            }
            let start = cand.min(x).min(y - d);
            let row = start + extend(start as usize, (start + d) as usize) as isize;
            cur[s] = row;
            fr.status[s] = DiagonalStatus::Alive;
            if let Some(t) = trace.as_mut() {
                t.push(d, Segment { level: e as u32, start, end: row });
            }
            if 2 * row + d > best.0 + best.1 {
                best = (row, row + d);
                e_best = e;
            }
            row == x && row + d == y
        };

        match variant {
            Variant::Original => {
                for d in level_lo..=level_hi {
                    if process(&mut fr, &mut cur, d) {
                        done = true;
                        break;
                    }
                }
            }
            Variant::Improve1 => {
                if ei <= x {
                    let s = fr.slot(-ei);
                    fr.link_front(s);
                }
                if ei <= y {
                    let s = fr.slot(ei);
                    fr.link_back(s);
                }
                let tail = fr.next.len() - 1;
                let mut s = fr.next[0];
                while s != tail {
                    let following = fr.next[s];
                    let d = s as isize - 1 + fr.lo;
                    if process(&mut fr, &mut cur, d) {
                        done = true;
                        break;
                    }
                    if cur[s] >= 0 {
                        freeze_if_bordered(&mut fr, variant, d, cur[s], x, y);
                    }
                    s = following;
                }
            }
            Variant::Improve2 => {
                let (first, last) = (level_lo.max(fr.strip_left), level_hi.min(fr.strip_right));
                let mut d = first;
                while d <= last {
                    if process(&mut fr, &mut cur, d) {
                        done = true;
                        break;
                    }
                    let s = fr.slot(d);
                    if cur[s] >= 0 {
                        freeze_if_bordered(&mut fr, variant, d, cur[s], x, y);
                    }
                    d += 1;
                }
                drop_outside_strip(&mut fr);
            }
        }
        std::mem::swap(&mut fr.rows, &mut cur);
        if variant == Variant::Improve2 && fr.strip_left > fr.strip_right {
            break;
        }
    }

    let outcome = CenterOutcome {
        cfg: *cfg,
        best: (best.0 as usize, best.1 as usize),
        e_best,
        stats,
        trace,
    };
    (outcome, fr)
}

fn freeze_if_bordered(fr: &mut DiagonalFrontier, variant: Variant, d: isize, row: isize, x: isize, y: isize) {
    let on_row = row == x;
    let on_col = row + d == y;
    if !(on_row || on_col) {
        return;
    }
    let s = fr.slot(d);
    fr.status[s] = DiagonalStatus::Frozen;
    match variant {
        Variant::Original => {}
        Variant::Improve1 => fr.unlink(s),
        Variant::Improve2 => {
            // Everything left of a row-x hit and right of a column-y hit
            // leaves the strip from the next level on.
            if on_row {
                fr.strip_left = fr.strip_left.max(d + 1);
            }
            if on_col {
                fr.strip_right = fr.strip_right.min(d - 1);
            }
        }
    }
}

fn drop_outside_strip(fr: &mut DiagonalFrontier) {
    for d in fr.lo..=fr.hi {
        let s = fr.slot(d);
        if (d < fr.strip_left || d > fr.strip_right) && fr.status[s] == DiagonalStatus::Alive {
            fr.status[s] = DiagonalStatus::Frozen;
        }
    }
}

/// Rebuilds an optimal edit script from `(0, 0)` to the outcome's best node.
pub fn reconstruct_script(outcome: &CenterOutcome) -> Result<EditScript> {
    let trace = outcome.trace.as_ref().ok_or(Error::ScriptNotRequested)?;
    let min_row = |d: isize| (-d).max(0);
    let mut d = outcome.best.1 as isize - outcome.best.0 as isize;
    let mut t = outcome.best.0 as isize;
    let mut level = outcome.e_best as u32;
    let mut rev = Vec::new();
    loop {
        let seg = trace
            .latest(d, level)
            .ok_or_else(|| Error::Invariant(format!("no segment on diagonal {d} at level {level}")))?;
        if t >= seg.start {
            rev.extend(std::iter::repeat_n(EditOp::Match, (t - seg.start) as usize));
            t = seg.start;
        }
        if seg.level == 0 {
            if d != 0 || t != 0 {
                return Err(Error::Invariant(format!("traceback ended at ({t}, {}) instead of the origin", t + d)));
            }
            break;
        }
        level = seg.level - 1;
        // Any predecessor whose farthest row covers the needed node works,
        // since rows reachable on a diagonal form a prefix.
        if trace.farthest(d, level) >= t {
            continue;
        }
        if t > min_row(d) && trace.farthest(d, level) >= t - 1 {
            rev.push(EditOp::Substitute);
            t -= 1;
        } else if t >= min_row(d - 1) && trace.farthest(d - 1, level) >= t {
            rev.push(EditOp::Insert);
            d -= 1;
        } else if t > min_row(d + 1) && trace.farthest(d + 1, level) >= t - 1 {
            rev.push(EditOp::Delete);
            d += 1;
            t -= 1;
        } else {
            return Err(Error::Invariant(format!("no predecessor for row {t} on diagonal {d}")));
        }
    }
    rev.reverse();
    Ok(EditScript(rev))
}

/// All end columns `j` where `X` occurs in `Y` with at most `k` differences,
/// paired with the fewest differences ending there. Occurrences may start at
/// any column of `Y`.
pub fn approx_pattern_match(x_str: &[Symbol], y_str: &[Symbol], k: usize) -> Result<Vec<(usize, usize)>> {
    let (x, y) = (x_str.len() as isize, y_str.len() as isize);
    if k as isize > y {
        return Err(Error::Parameter(format!("k = {k} exceeds text length {y}")));
    }
    let oracle = LceOracle::new(ConcatText::new(x_str, y_str));
    let right = x_str.len() + 1;
    let extend = |i: isize, d: isize| oracle.extend(i as usize, right + (i + d) as usize) as isize;

    let lo = -(k.min(x_str.len()) as isize);
    let slot = |d: isize| (d - lo + 1) as usize;
    let mut rows = vec![ABSENT; (y - lo + 1) as usize + 2];
    let mut best_e: Vec<Option<usize>> = vec![None; y_str.len() + 1];
    let mut note = |d: isize, row: isize, e: usize| {
        if row == x {
            let j = (x + d) as usize;
            if best_e[j].is_none() {
                best_e[j] = Some(e);
            }
        }
    };
    for d in 0..=y {
        let row = extend(0, d);
        rows[slot(d)] = row;
        note(d, row, 0);
    }
    let mut cur = rows.clone();
    for e in 1..=k {
        cur.copy_from_slice(&rows);
        for d in -((e as isize).min(x))..=y {
            let s = slot(d);
            let (ins, sub, del) = (rows[s - 1], rows[s], rows[s + 1]);
            let mut cand = ABSENT;
            if ins >= 0 {
                cand = ins;
            }
            if sub >= 0 {
                cand = cand.max(sub + 1);
            }
            if del >= 0 {
                cand = cand.max(del + 1);
            }
            if cand < 0 {
                continue;
            }
            let start = cand.min(x).min(y - d);
            let row = start + extend(start, d);
            cur[s] = row;
            note(d, row, e);
        }
        std::mem::swap(&mut rows, &mut cur);
    }
    Ok(best_e.into_iter().enumerate().filter_map(|(j, e)| e.map(|e| (j, e))).collect())
}

/// Full edit-distance matrix: `D[i][j]` is the distance between `X[1..i]` and
/// `Y[1..j]`, where a relation match costs nothing.
pub fn dp_oracle(x_str: &[Symbol], y_str: &[Symbol], relation: &MatchRelation) -> Vec<Vec<usize>> {
    let (x, y) = (x_str.len(), y_str.len());
    let mut dp = vec![vec![0usize; y + 1]; x + 1];
    for (j, cell) in dp[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=x {
        dp[i][0] = i;
        for j in 1..=y {
            let diag = dp[i - 1][j - 1] + usize::from(!relation.matches(x_str[i - 1], y_str[j - 1]));
            dp[i][j] = diag.min(dp[i - 1][j] + 1).min(dp[i][j - 1] + 1);
        }
    }
    dp
}

/// Brute-force maximality: the largest `p + q` with `D[p][q] <= k`, and the
/// fewest errors among nodes attaining it.
pub fn oracle_maximal(x_str: &[Symbol], y_str: &[Symbol], k: usize, relation: &MatchRelation) -> (usize, usize) {
    let dp = dp_oracle(x_str, y_str, relation);
    let mut best = (0, 0);
    for (p, row) in dp.iter().enumerate() {
        for (q, &dist) in row.iter().enumerate() {
            if dist > k {
                continue;
            }
            let size = p + q;
            if size > best.0 || (size == best.0 && dist < best.1) {
                best = (size, dist);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lce::build_lce;
    use crate::symbols::{encode_text, EncodeMode, SymbolString};
    use proptest::prelude::*;

    fn ascii(s: &str) -> Vec<Symbol> {
        encode_text(s.as_bytes(), EncodeMode::Ascii).unwrap().into_vec()
    }

    fn scan(s: &str, c: usize, parity: Parity, k: usize, variant: Variant) -> CenterOutcome {
        let s = SymbolString::new(ascii(s));
        let o = build_lce(&s, &MatchRelation::Identity).unwrap();
        let cfg = CenterConfig::new(s.len(), c, parity).unwrap();
        k_differences_scan(&o, &cfg, k, variant, true)
    }

    /// Free-start pattern matching DP: D[0][j] = 0.
    fn free_start_row(x_str: &[Symbol], y_str: &[Symbol]) -> Vec<usize> {
        let (x, y) = (x_str.len(), y_str.len());
        let mut dp = vec![vec![0usize; y + 1]; x + 1];
        for i in 1..=x {
            dp[i][0] = i;
            for j in 1..=y {
                let diag = dp[i - 1][j - 1] + usize::from(x_str[i - 1] != y_str[j - 1]);
                dp[i][j] = diag.min(dp[i - 1][j] + 1).min(dp[i][j - 1] + 1);
            }
        }
        dp[x].clone()
    }

    #[test]
    fn scan_examples() {
        for v in Variant::ALL {
            let o = scan("bbaabac", 3, Parity::Even, 0, v);
            assert_eq!((o.best, o.e_best), ((2, 2), 0));
            let o = scan("bbaabac", 3, Parity::Even, 1, v);
            assert_eq!((o.best, o.e_best), ((3, 3), 1));
            let o = scan("bbaabac", 3, Parity::Even, 2, v);
            assert_eq!((o.best, o.e_best), ((3, 4), 2));
        }
    }

    #[test]
    fn corner_abort_stops_iteration() {
        // Reaching (3, 4) at e = 2 means raising k changes nothing.
        let a = scan("bbaabac", 3, Parity::Even, 2, Variant::Original);
        let b = scan("bbaabac", 3, Parity::Even, 9, Variant::Original);
        assert_eq!(a.stats, b.stats);
        assert_eq!(a.best, b.best);
    }

    #[test]
    fn diff_string_hits_quadratic_count() {
        let s = SymbolString::new((0..12).collect());
        let o = build_lce(&s, &MatchRelation::Identity).unwrap();
        for k in 0..=4 {
            let cfg = CenterConfig::new(12, 6, Parity::Even).unwrap();
            let out = k_differences_scan(&o, &cfg, k, Variant::Original, false);
            assert_eq!(out.stats.iterations, ((k + 1) * (k + 1)) as u64);
        }
        let cfg = CenterConfig::new(12, 6, Parity::Even).unwrap();
        assert_eq!(k_differences_scan(&o, &cfg, 2, Variant::Original, false).stats.iterations, 9);
    }

    #[test]
    fn degenerate_sides() {
        // Odd center 1 has an empty left part; even center n an empty right.
        let s = SymbolString::new(ascii("abcab"));
        let o = build_lce(&s, &MatchRelation::Identity).unwrap();
        for v in Variant::ALL {
            let cfg = CenterConfig::new(5, 1, Parity::Odd).unwrap();
            let out = k_differences_scan(&o, &cfg, 3, v, true);
            assert_eq!((out.best, out.e_best), ((0, 3), 3));
            assert_eq!(reconstruct_script(&out).unwrap().to_string(), "3I");

            let cfg = CenterConfig::new(5, 5, Parity::Even).unwrap();
            let out = k_differences_scan(&o, &cfg, 2, v, true);
            assert_eq!((out.best, out.e_best), ((2, 0), 2));
            assert_eq!(reconstruct_script(&out).unwrap().to_string(), "2D");

            let one = SymbolString::new(vec![4]);
            let o1 = build_lce(&one, &MatchRelation::Identity).unwrap();
            let cfg = CenterConfig::new(1, 1, Parity::Odd).unwrap();
            let out = k_differences_scan(&o1, &cfg, 2, v, true);
            assert_eq!((out.best, out.e_best, out.stats.iterations), ((0, 0), 0, 1));
            assert_eq!(reconstruct_script(&out).unwrap(), EditScript::default());
        }
    }

    #[test]
    fn script_examples() {
        let o = scan("bbaabac", 3, Parity::Even, 2, Variant::Original);
        let script = reconstruct_script(&o).unwrap();
        assert_eq!(script.endpoint(), (3, 4));
        assert_eq!(script.errors(), 2);

        let o = scan("bbaabac", 3, Parity::Even, 0, Variant::Improve2);
        assert_eq!(reconstruct_script(&o).unwrap().to_string(), "2M");

        let s = SymbolString::new(ascii("bbaabac"));
        let lce = build_lce(&s, &MatchRelation::Identity).unwrap();
        let cfg = CenterConfig::new(7, 3, Parity::Even).unwrap();
        let out = k_differences_scan(&lce, &cfg, 2, Variant::Original, false);
        assert_eq!(reconstruct_script(&out).unwrap_err(), Error::ScriptNotRequested);
    }

    #[test]
    fn script_text_round_trip() {
        let s: EditScript = "2M1S1I".parse().unwrap();
        assert_eq!(s.ops(), &[EditOp::Match, EditOp::Match, EditOp::Substitute, EditOp::Insert]);
        assert_eq!(s.to_string(), "2M1S1I");
        assert_eq!("".parse::<EditScript>().unwrap(), EditScript::default());
        assert!("M".parse::<EditScript>().is_err());
        assert!("2X".parse::<EditScript>().is_err());
        assert!("3".parse::<EditScript>().is_err());
    }

    #[test]
    fn dp_oracle_examples() {
        let id = MatchRelation::Identity;
        assert_eq!(dp_oracle(&ascii("bb"), &ascii("aaba"), &id)[2][4], 3);
        assert_eq!(dp_oracle(&ascii("abb"), &ascii("abac"), &id)[3][4], 2);
        let d = dp_oracle(&ascii("abcd"), &ascii("abcd"), &id);
        assert!((0..=4).all(|i| d[i][i] == 0));

        assert_eq!(oracle_maximal(&ascii("abb"), &ascii("bac"), 2, &id), (5, 2));
        assert_eq!(oracle_maximal(&ascii("abb"), &ascii("bac"), 3, &id), (6, 3));
        assert_eq!(oracle_maximal(&ascii("abcx"), &ascii("abyy"), 0, &id), (4, 0));
    }

    #[test]
    fn pattern_match_examples() {
        assert_eq!(approx_pattern_match(&ascii("bb"), &ascii("aabac"), 1).unwrap(), vec![(3, 1), (4, 1)]);
        assert_eq!(approx_pattern_match(&ascii("b"), &ascii("bbb"), 0).unwrap(), vec![(1, 0), (2, 0), (3, 0)]);
        let hits = approx_pattern_match(&ascii("bb"), &ascii("aabac"), 3).unwrap();
        assert!(hits.contains(&(4, 1)));
        assert!(!hits.iter().any(|&(j, e)| j == 4 && e != 1));
        assert!(approx_pattern_match(&ascii("bb"), &ascii("a"), 2).is_err());
    }

    #[test]
    fn frozen_rows_stay_readable() {
        // cnst: every diagonal is frozen right after its first visit.
        let s = SymbolString::new(vec![0; 9]);
        let o = build_lce(&s, &MatchRelation::Identity).unwrap();
        let cfg = CenterConfig::new(9, 3, Parity::Even).unwrap();
        for v in [Variant::Improve1, Variant::Improve2] {
            let (out, fr) = k_differences_frontier(&o, &cfg, 4, v);
            assert_eq!(out.stats.max_diagonal_visits, 1);
            assert_eq!(fr.status(0), DiagonalStatus::Frozen);
            assert_eq!(fr.row(0), Some(3));
            assert_eq!(fr.row(1), Some(3));
            assert_eq!(out.best, (3, 6));
        }
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<Symbol>, Vec<Symbol>, usize)> {
        (1u32..5).prop_flat_map(|sigma| {
            (
                proptest::collection::vec(0..sigma, 0..14),
                proptest::collection::vec(0..sigma, 0..14),
                0usize..8,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn scan_agrees_with_dp((xs, ys, k) in arb_pair()) {
            // Lay X^R and Y out as one string around an even center.
            let mut s: Vec<Symbol> = xs.iter().rev().copied().collect();
            s.extend(&ys);
            prop_assume!(!s.is_empty() && !xs.is_empty());
            let s = SymbolString::new(s);
            let o = build_lce(&s, &MatchRelation::Identity).unwrap();
            let cfg = CenterConfig::new(s.len(), xs.len(), Parity::Even).unwrap();
            let expect = oracle_maximal(&xs, &ys, k, &MatchRelation::Identity);
            let dp = dp_oracle(&xs, &ys, &MatchRelation::Identity);
            let mut counts = Vec::new();
            for v in Variant::ALL {
                let out = k_differences_scan(&o, &cfg, k, v, true);
                prop_assert_eq!((out.best.0 + out.best.1, out.e_best), expect);
                prop_assert_eq!(dp[out.best.0][out.best.1], out.e_best);
                let script = reconstruct_script(&out).unwrap();
                prop_assert_eq!(script.endpoint(), out.best);
                prop_assert_eq!(script.errors(), out.e_best);
                prop_assert!(out.stats.iterations <= ((k + 1) * (k + 1)) as u64);
                counts.push(out.stats.iterations);
            }
            prop_assert!(counts[2] <= counts[1] && counts[1] <= counts[0]);
        }

        #[test]
        fn farthest_rows_grow_with_e((xs, ys, k) in arb_pair()) {
            let mut s: Vec<Symbol> = xs.iter().rev().copied().collect();
            s.extend(&ys);
            prop_assume!(!xs.is_empty());
            let s = SymbolString::new(s);
            let o = build_lce(&s, &MatchRelation::Identity).unwrap();
            let cfg = CenterConfig::new(s.len(), xs.len(), Parity::Even).unwrap();
            let out = k_differences_scan(&o, &cfg, k, Variant::Original, true);
            let trace = out.trace.unwrap();
            for segs in &trace.segments {
                for w in segs.windows(2) {
                    prop_assert!(w[0].end <= w[1].end);
                    prop_assert!(w[0].level < w[1].level);
                }
            }
        }

        #[test]
        fn pattern_match_agrees_with_dp(
            xs in proptest::collection::vec(0u32..3, 0..12),
            ys in proptest::collection::vec(0u32..3, 1..30),
            k in 0usize..6,
        ) {
            let k = k.min(ys.len());
            let row = free_start_row(&xs, &ys);
            let expect: Vec<(usize, usize)> =
                row.iter().enumerate().filter(|&(_, &e)| e <= k).map(|(j, &e)| (j, e)).collect();
            prop_assert_eq!(approx_pattern_match(&xs, &ys, k).unwrap(), expect);
        }
    }
}
