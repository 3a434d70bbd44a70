//! Longest-common-extension queries over `left $1 right $2`.
//!
//! For palindrome search the left block is the reversed subject string mapped
//! through the match relation, and the right block is the subject itself, so
//! a prefix of any left-half view `S[1..u]^R` and any right-half view
//! `S[c+1..n]` can be compared with one query.
//!
//! [`LceOracle`] answers queries in O(1) after an O(n log n) build
//! (prefix-doubling suffix array, Kasai LCP, sparse-table range minimum).
//! [`ScanLce`] compares symbols directly and is only meant for very short
//! texts, where building the index costs more than it saves.

use crate::engine::Parity;
use crate::error::{Error, Result};
use crate::symbols::{MatchRelation, Symbol, SymbolString};

/// The concatenated text `left $1 right $2` with two fresh sentinel codes.
#[derive(Debug, Clone)]
pub struct ConcatText {
    text: Vec<Symbol>,
    left_len: usize,
    right_len: usize,
}

impl ConcatText {
    pub fn new(left: &[Symbol], right: &[Symbol]) -> Self {
        let max = left.iter().chain(right).copied().max().unwrap_or(0);
        let mut text = Vec::with_capacity(left.len() + right.len() + 2);
        text.extend_from_slice(left);
        text.push(max + 1);
        text.extend_from_slice(right);
        text.push(max + 2);
        ConcatText { text, left_len: left.len(), right_len: right.len() }
    }

    /// `rho(S^R) $1 S $2`.
    pub fn palindromic(s: &SymbolString, relation: &MatchRelation) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let left = s.as_slice().iter().rev().map(|&c| relation.apply(c)).collect::<Result<Vec<_>>>()?;
        Ok(ConcatText::new(&left, s.as_slice()))
    }

    pub fn text(&self) -> &[Symbol] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn left_len(&self) -> usize {
        self.left_len
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }
}

/// Anything that can report the longest common extension of two suffixes of
/// a [`ConcatText`]. Positions are 0-based and must be in range.
pub trait Extension: Sync {
    fn concat(&self) -> &ConcatText;

    fn extend(&self, a: usize, b: usize) -> usize;

    /// 1-based, bounds-checked query.
    fn lce_query(&self, a: usize, b: usize) -> Result<usize> {
        let len = self.concat().len();
        for pos in [a, b] {
            if pos == 0 || pos > len {
                return Err(Error::OutOfBounds { pos, len });
            }
        }
        Ok(self.extend(a - 1, b - 1))
    }

    /// Common prefix of `S_l^c[p+1..u]` and `S_r^c[q+1..n-c]` where the
    /// text was built by [`ConcatText::palindromic`].
    fn lce_views(&self, c: usize, parity: Parity, p: usize, q: usize) -> Result<usize> {
        let n = self.concat().left_len();
        if c == 0 || c > n {
            return Err(Error::OutOfBounds { pos: c, len: n });
        }
        let u = parity.left_len(c);
        if p > u {
            return Err(Error::OutOfBounds { pos: p, len: u });
        }
        if q > n - c {
            return Err(Error::OutOfBounds { pos: q, len: n - c });
        }
        Ok(self.view_extend(n - u + p, n + c + q + 1))
    }

    /// Unchecked form of the view query on 0-based text positions.
    #[inline]
    fn view_extend(&self, a: usize, b: usize) -> usize {
        self.extend(a, b)
    }
}

/// Suffix-array backed LCE index.
#[derive(Debug, Clone)]
pub struct LceOracle {
    concat: ConcatText,
    rank: Vec<u32>,
    rmq: SparseMin,
}

impl LceOracle {
    pub fn new(concat: ConcatText) -> Self {
        let sa = suffix_array(concat.text());
        let mut rank = vec![0u32; sa.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = lcp_array(concat.text(), &sa, &rank);
        LceOracle { rmq: SparseMin::new(&lcp), concat, rank }
    }
}

/// Builds the oracle for `rho(S^R) $1 S $2`.
pub fn build_lce(s: &SymbolString, relation: &MatchRelation) -> Result<LceOracle> {
    Ok(LceOracle::new(ConcatText::palindromic(s, relation)?))
}

impl Extension for LceOracle {
    fn concat(&self) -> &ConcatText {
        &self.concat
    }

    #[inline]
    fn extend(&self, a: usize, b: usize) -> usize {
        let text = self.concat.text();
        if a == b {
            return text.len() - a;
        }
        if text[a] != text[b] {
            return 0;
        }
        let (ra, rb) = (self.rank[a] as usize, self.rank[b] as usize);
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.rmq.min(lo + 1, hi) as usize
    }
}

/// Direct symbol comparison, O(length) per query.
#[derive(Debug, Clone)]
pub struct ScanLce {
    concat: ConcatText,
}

impl ScanLce {
    pub fn new(concat: ConcatText) -> Self {
        ScanLce { concat }
    }
}

impl Extension for ScanLce {
    fn concat(&self) -> &ConcatText {
        &self.concat
    }

    #[inline]
    fn extend(&self, a: usize, b: usize) -> usize {
        let text = self.concat.text();
        text[a..].iter().zip(&text[b..]).take_while(|(x, y)| x == y).count()
    }
}

/// Suffix array by prefix doubling with two counting-sort passes per round.
pub(crate) fn suffix_array(s: &[Symbol]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    // Compress the alphabet so the counting sorts stay O(n).
    let mut codes: Vec<Symbol> = s.to_vec();
    codes.sort_unstable();
    codes.dedup();
    let mut rank: Vec<usize> = s.iter().map(|c| codes.binary_search(c).unwrap()).collect();
    let mut classes = codes.len();

    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| rank[i]);
    let mut by_second = vec![0usize; n];
    let mut count = vec![0usize; n.max(classes) + 1];
    let mut next = vec![0usize; n];
    let mut width = 1;
    while classes < n {
        // Order by the second half: suffixes without one come first.
        let mut t = 0;
        for i in n - width..n {
            by_second[t] = i;
            t += 1;
        }
        for &p in &sa {
            if p >= width {
                by_second[t] = p - width;
                t += 1;
            }
        }
        count[..=classes].iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            count[r + 1] += 1;
        }
        for i in 1..=classes {
            count[i] += count[i - 1];
        }
        for &p in &by_second {
            sa[count[rank[p]]] = p;
            count[rank[p]] += 1;
        }
        let key = |i: usize| (rank[i], if i + width < n { rank[i + width] as isize } else { -1 });
        next[sa[0]] = 0;
        classes = 1;
        for w in 1..n {
            if key(sa[w]) != key(sa[w - 1]) {
                classes += 1;
            }
            next[sa[w]] = classes - 1;
        }
        std::mem::swap(&mut rank, &mut next);
        width *= 2;
    }
    sa.into_iter().map(|p| p as u32).collect()
}

/// Kasai: `lcp[r]` is the common prefix of suffixes `sa[r-1]` and `sa[r]`.
fn lcp_array(s: &[Symbol], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

#[derive(Debug, Clone)]
struct SparseMin {
    levels: Vec<Vec<u32>>,
}

impl SparseMin {
    fn new(values: &[u32]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let level = (0..prev.len() - width).map(|i| prev[i].min(prev[i + width])).collect();
            levels.push(level);
            width *= 2;
        }
        SparseMin { levels }
    }

    /// Minimum over `lo..=hi`.
    #[inline]
    fn min(&self, lo: usize, hi: usize) -> u32 {
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi + 1 - (1 << level)])
    }
}
