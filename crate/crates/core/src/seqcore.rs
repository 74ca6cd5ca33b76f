//! Sequences over `Σ_q`, distances, and the run / alternating-segment
//! decompositions that the closed forms are written in terms of.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet (`0-9` then `a-z`).
pub const MAX_Q: u8 = 36;

const CHARSET: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn symbol_to_char(symbol: u8) -> char {
    CHARSET[symbol as usize] as char
}

pub fn char_to_symbol(c: char) -> Option<u8> {
    match c.to_ascii_lowercase() {
        d @ '0'..='9' => Some(d as u8 - b'0'),
        l @ 'a'..='z' => Some(l as u8 - b'a' + 10),
        _ => None,
    }
}

fn check_q(q: u32) -> Result<u8> {
    if (2..=u32::from(MAX_Q)).contains(&q) {
        Ok(q as u8)
    } else {
        Err(Error::InvalidAlphabet(q))
    }
}

/// A word over `Σ_q = {0, …, q-1}`, one byte per symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    q: u8,
    symbols: Vec<u8>,
}

impl Sequence {
    pub fn new(symbols: Vec<u8>, q: u32) -> Result<Self> {
        let q = check_q(q)?;
        if let Some(pos) = symbols.iter().position(|&s| s >= q) {
            let s = symbols[pos];
            return Err(Error::MalformedInput {
                position: pos + 1,
                symbol: if s < MAX_Q { symbol_to_char(s) } else { '?' },
                q,
            });
        }
        Ok(Sequence { q, symbols })
    }

    /// Caller guarantees every symbol is below `q`.
    pub(crate) fn from_raw(symbols: Vec<u8>, q: u8) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < q));
        Sequence { q, symbols }
    }

    pub fn empty(q: u32) -> Result<Self> {
        Ok(Sequence { q: check_q(q)?, symbols: Vec::new() })
    }

    /// Parse the textual encoding (`0-9a-z`, case-insensitive).
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let q = check_q(q)?;
        let mut symbols = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            match char_to_symbol(c) {
                Some(s) if s < q => symbols.push(s),
                _ => return Err(Error::MalformedInput { position: i + 1, symbol: c, q }),
            }
        }
        Ok(Sequence { q, symbols })
    }

    /// The constant word `0^n`.
    pub fn zeros(n: usize, q: u32) -> Result<Self> {
        Ok(Sequence { q: check_q(q)?, symbols: vec![0; n] })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// Number of runs; zero for the empty word.
    pub fn rho(&self) -> usize {
        if self.symbols.is_empty() {
            0
        } else {
            1 + self.symbols.windows(2).filter(|w| w[0] != w[1]).count()
        }
    }

    pub fn runs(&self) -> Result<RunsDecomposition> {
        runs_decompose(self)
    }

    pub fn segments(&self) -> Result<SegmentsProfile> {
        alternating_segments(self)
    }

    pub fn reversed(&self) -> Sequence {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Sequence { q: self.q, symbols }
    }

    /// Apply a symbol permutation; `perm[a]` is the image of `a`.
    pub fn relabeled(&self, perm: &[u8]) -> Result<Sequence> {
        let q = self.q as usize;
        let mut seen = vec![false; q];
        if perm.len() != q || perm.iter().any(|&p| (p as usize) >= q || std::mem::replace(&mut seen[p as usize], true)) {
            return Err(Error::Precondition(format!("{perm:?} is not a permutation of Σ_{q}")));
        }
        Ok(Sequence { q: self.q, symbols: self.symbols.iter().map(|&s| perm[s as usize]).collect() })
    }

    /// Iterate over all of `Σ_q^n` in lexicographic order.
    pub fn all(n: usize, q: u32) -> Result<AllWords> {
        let q = check_q(q)?;
        Ok(AllWords { q, next: Some(vec![0; n]) })
    }

    /// Lexicographic successor within `Σ_q^n`, if any.
    pub fn successor(&self) -> Option<Sequence> {
        let mut symbols = self.symbols.clone();
        for i in (0..symbols.len()).rev() {
            if symbols[i] + 1 < self.q {
                symbols[i] += 1;
                return Some(Sequence { q: self.q, symbols });
            }
            symbols[i] = 0;
        }
        None
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", symbol_to_char(s))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({self}, q={})", self.q)
    }
}

/// Lexicographic enumeration of `Σ_q^n`.
pub struct AllWords {
    q: u8,
    next: Option<Vec<u8>>,
}

impl Iterator for AllWords {
    type Item = Sequence;

    fn next(&mut self) -> Option<Sequence> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut advanced = false;
        for i in (0..succ.len()).rev() {
            if succ[i] + 1 < self.q {
                succ[i] += 1;
                advanced = true;
                break;
            }
            succ[i] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(Sequence { q: self.q, symbols: current })
    }
}

pub fn parse_sequence(text: &str, q: u32) -> Result<Sequence> {
    Sequence::parse(text, q)
}

/// One run `σ^ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub symbol: u8,
    pub length: usize,
}

/// The factorization `σ_1^{ℓ_1} … σ_ρ^{ℓ_ρ}` with `σ_i ≠ σ_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunsDecomposition {
    runs: Vec<Run>,
}

impl RunsDecomposition {
    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn rho(&self) -> usize {
        self.runs.len()
    }

    /// `ℓ_i`, 1-based.
    pub fn length(&self, i: usize) -> usize {
        self.runs[i - 1].length
    }

    /// `σ_i`, 1-based.
    pub fn symbol(&self, i: usize) -> u8 {
        self.runs[i - 1].symbol
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.length).collect()
    }

    /// 0-based position of the first symbol of run `i` (1-based).
    pub fn start(&self, i: usize) -> usize {
        self.runs[..i - 1].iter().map(|r| r.length).sum()
    }
}

pub fn runs_decompose(seq: &Sequence) -> Result<RunsDecomposition> {
    let mut runs: Vec<Run> = Vec::new();
    for &s in seq.symbols() {
        match runs.last_mut() {
            Some(r) if r.symbol == s => r.length += 1,
            _ => runs.push(Run { symbol: s, length: 1 }),
        }
    }
    if runs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(RunsDecomposition { runs })
}

/// A maximal alternating window, 0-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentsProfile {
    segments: Vec<Segment>,
}

impl SegmentsProfile {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `(s_1, …, s_ψ)`.
    pub fn lengths(&self) -> Vec<usize> {
        self.segments.iter().map(Segment::len).collect()
    }

    pub fn psi(&self) -> usize {
        self.segments.len()
    }

    /// The profile with length-one segments dropped, `(s'_1, …, s'_ψ')`.
    pub fn modified(&self) -> Vec<usize> {
        self.segments.iter().map(Segment::len).filter(|&l| l >= 2).collect()
    }

    pub fn psi_prime(&self) -> usize {
        self.segments.iter().filter(|s| s.len() >= 2).count()
    }
}

/// Linear scan: grow each window to the right while `ω_k = ω_{k+2}`; the next
/// maximal window starts on the last symbol of the previous one when the
/// boundary symbols differ, and just after it otherwise.
pub fn alternating_segments(seq: &Sequence) -> Result<SegmentsProfile> {
    let w = seq.symbols();
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut segments = Vec::new();
    let mut start = 0;
    loop {
        let mut end = start;
        if end + 1 < n && w[end] != w[end + 1] {
            end += 1;
            while end + 1 < n && w[end + 1] == w[end - 1] {
                end += 1;
            }
        }
        segments.push(Segment { start, end });
        if end + 1 >= n {
            break;
        }
        start = if w[end] != w[end + 1] { end } else { end + 1 };
    }
    Ok(SegmentsProfile { segments })
}

fn check_same_alphabet(x: &Sequence, y: &Sequence) -> Result<()> {
    if x.q != y.q {
        return Err(Error::Dimension(format!("alphabet sizes {} and {} differ", x.q, y.q)));
    }
    Ok(())
}

pub(crate) fn check_same_shape(x: &Sequence, y: &Sequence) -> Result<()> {
    check_same_alphabet(x, y)?;
    if x.len() != y.len() {
        return Err(Error::Dimension(format!("lengths {} and {} differ", x.len(), y.len())));
    }
    Ok(())
}

pub fn hamming_distance(x: &Sequence, y: &Sequence) -> Result<usize> {
    check_same_shape(x, y)?;
    Ok(x.symbols.iter().zip(&y.symbols).filter(|(a, b)| a != b).count())
}

fn lcs_len(a: &[u8], b: &[u8]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Insertion/deletion distance, `|x| + |y| - 2·LCS(x, y)`.
pub fn levenshtein_distance(x: &Sequence, y: &Sequence) -> Result<usize> {
    check_same_alphabet(x, y)?;
    Ok(x.len() + y.len() - 2 * lcs_len(&x.symbols, &y.symbols))
}

/// Insertions, deletions and substitutions, unit cost each.
pub fn edit_distance(x: &Sequence, y: &Sequence) -> Result<usize> {
    check_same_alphabet(x, y)?;
    let (a, b) = (&x.symbols, &y.symbols);
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[b.len()])
}

/// `ω^(i)`: one symbol deleted from run `i` (1-based).
pub fn delete_from_run(seq: &Sequence, i: usize) -> Result<Sequence> {
    let rho = seq.rho();
    if i == 0 || i > rho {
        return Err(Error::Index { index: i as i64, min: 1, max: rho as i64 });
    }
    let runs = seq.runs()?;
    let pos = runs.start(i);
    let mut symbols = seq.symbols.clone();
    symbols.remove(pos);
    Ok(Sequence { q: seq.q, symbols })
}

/// Valid range of [`insertion_variant`] indices: `-(q-1) ..= n(q-1)`.
pub fn insertion_index_range(seq: &Sequence) -> (i64, i64) {
    let qm = i64::from(seq.q) - 1;
    (-qm, seq.len() as i64 * qm)
}

/// The candidate symbols inserted after position `i` (1-based) in the order
/// the indexing uses: every symbol other than `ω_i`, ascending, except that
/// when `ω_{i+1}` starts a new run it is moved to the last slot so that slot
/// extends that run.
pub(crate) fn insertion_choices(w: &[u8], q: u8, i: usize) -> Vec<u8> {
    let here = w[i - 1];
    let mut others: Vec<u8> = (0..q).filter(|&a| a != here).collect();
    if i < w.len() && w[i] != here {
        let next = w[i];
        others.retain(|&a| a != next);
        others.push(next);
    }
    others
}

/// Decompose an insertion index `k > 0` into `(position i, choice j)`, both 1-based.
pub(crate) fn split_insertion_index(k: i64, q: u8) -> (usize, usize) {
    let qm = i64::from(q) - 1;
    (((k - 1) / qm + 1) as usize, ((k - 1) % qm + 1) as usize)
}

/// The indexed 1-supersequence `ω^(index)`.
///
/// `0` duplicates `ω_1`; `-1 ..= -(q-1)` prepend each other symbol;
/// `(i-1)(q-1) + j` inserts the `j`-th choice after position `i`.
pub fn insertion_variant(seq: &Sequence, index: i64) -> Result<Sequence> {
    let (min, max) = insertion_index_range(seq);
    if seq.is_empty() || index < min || index > max {
        return Err(Error::Index { index, min, max });
    }
    let w = &seq.symbols;
    let mut symbols = Vec::with_capacity(w.len() + 1);
    if index == 0 {
        symbols.push(w[0]);
        symbols.extend_from_slice(w);
    } else if index < 0 {
        let others: Vec<u8> = (0..seq.q).filter(|&a| a != w[0]).collect();
        symbols.push(others[(-index - 1) as usize]);
        symbols.extend_from_slice(w);
    } else {
        let (i, j) = split_insertion_index(index, seq.q);
        symbols.extend_from_slice(&w[..i]);
        symbols.push(insertion_choices(w, seq.q, i)[j - 1]);
        symbols.extend_from_slice(&w[i..]);
    }
    Ok(Sequence { q: seq.q, symbols })
}

/// Channel `B_{t1,t2,t3}`: at most `t1` substitutions, exactly `t2`
/// deletions and exactly `t3` insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
}

impl ChannelSpec {
    pub const fn new(t1: usize, t2: usize, t3: usize) -> Self {
        ChannelSpec { t1, t2, t3 }
    }

    pub fn total(&self) -> usize {
        self.t1 + self.t2 + self.t3
    }

    /// Reject the identity channel and deletions longer than the word.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        if self.total() == 0 {
            return Err(Error::InvalidChannel("at least one edit is required".into()));
        }
        if self.t2 > n {
            return Err(Error::Range { t: self.t2, n });
        }
        Ok(())
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.t1, self.t2, self.t3)
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("channel `{s}` must be t1,t2,t3")));
        }
        let mut t = [0usize; 3];
        for (slot, p) in t.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| Error::Parse(format!("channel `{s}`: `{p}` is not a count")))?;
        }
        Ok(ChannelSpec::new(t[0], t[1], t[2]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn s(text: &str, q: u32) -> Sequence {
        Sequence::parse(text, q).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("0101", 2).symbols(), &[0, 1, 0, 1]);
        assert_eq!(s("0021202", 3).symbols(), &[0, 0, 2, 1, 2, 0, 2]);
        assert_eq!(
            Sequence::parse("012", 2),
            Err(Error::MalformedInput { position: 3, symbol: '2', q: 2 })
        );
        assert_eq!(s("aB", 12).symbols(), &[10, 11]);
        assert_eq!(s("aB", 12).to_string(), "ab");
        assert!(matches!(Sequence::parse("0", 1), Err(Error::InvalidAlphabet(1))));
        assert!(matches!(Sequence::parse("0", 37), Err(Error::InvalidAlphabet(37))));
        assert!(matches!(Sequence::parse("0-1", 2), Err(Error::MalformedInput { position: 2, .. })));
    }

    #[test]
    fn runs_examples() {
        let r = s("01011010", 2).runs().unwrap();
        let pairs: Vec<(u8, usize)> = r.runs().iter().map(|r| (r.symbol, r.length)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 1), (0, 1), (1, 2), (0, 1), (1, 1), (0, 1)]);
        assert_eq!(r.rho(), 7);

        let r = s("0000", 2).runs().unwrap();
        assert_eq!(r.runs(), &[Run { symbol: 0, length: 4 }]);

        let r = s("01110021", 3).runs().unwrap();
        let pairs: Vec<(u8, usize)> = r.runs().iter().map(|r| (r.symbol, r.length)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 3), (0, 2), (2, 1), (1, 1)]);

        assert_eq!(Sequence::empty(2).unwrap().runs(), Err(Error::EmptyInput));
    }

    #[test]
    fn segment_examples() {
        let p = s("0021202", 3).segments().unwrap();
        assert_eq!(p.lengths(), vec![1, 2, 3, 3]);
        assert_eq!(p.psi(), 4);

        let p = s("01011010", 2).segments().unwrap();
        assert_eq!(p.lengths(), vec![4, 4]);

        let p = s("0000", 2).segments().unwrap();
        assert_eq!(p.lengths(), vec![1, 1, 1, 1]);
        assert_eq!(p.psi(), 4);
        assert!(p.modified().is_empty());
        assert_eq!(p.psi_prime(), 0);

        let p = s("01110021", 3).segments().unwrap();
        assert_eq!(p.lengths(), vec![2, 1, 2, 2, 2]);
        assert_eq!(p.modified(), vec![2, 2, 2, 2]);

        assert_eq!(Sequence::empty(2).unwrap().segments(), Err(Error::EmptyInput));
    }

    fn is_alternating(w: &[u8]) -> bool {
        match w.len() {
            0 => false,
            1 => true,
            _ => w[0] != w[1] && (0..w.len() - 2).all(|k| w[k] == w[k + 2]),
        }
    }

    /// Every window tested against the definition directly.
    fn brute_segments(w: &[u8]) -> Vec<(usize, usize)> {
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if is_alternating(&w[i..=j])
                    && !(i > 0 && is_alternating(&w[i - 1..=j]))
                    && !(j + 1 < n && is_alternating(&w[i..=j + 1]))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn segments_match_definition_exhaustively() {
        for (q, max_n) in [(2u32, 12usize), (3, 9), (4, 7)] {
            for n in 1..=max_n {
                for seq in Sequence::all(n, q).unwrap() {
                    let got: Vec<(usize, usize)> =
                        seq.segments().unwrap().segments().iter().map(|g| (g.start, g.end)).collect();
                    assert_eq!(got, brute_segments(seq.symbols()), "{seq}");
                    // consecutive segments share a position iff the boundary symbols differ
                    let w = seq.symbols();
                    for pair in got.windows(2) {
                        let (a, b) = (pair[0], pair[1]);
                        let expected = if w[a.1] != w[a.1 + 1] { a.1 } else { a.1 + 1 };
                        assert_eq!(b.0, expected, "{seq}");
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = Sequence> {
            (2u32..=5).prop_flat_map(|q| {
                proptest::collection::vec(0..q as u8, 1..40)
                    .prop_map(move |v| Sequence::new(v, q).unwrap())
            })
        }

        proptest! {
            #[test]
            fn runs_reassemble(seq in word()) {
                let runs = seq.runs().unwrap();
                let mut rebuilt = Vec::new();
                for r in runs.runs() {
                    rebuilt.extend(std::iter::repeat_n(r.symbol, r.length));
                }
                prop_assert_eq!(&rebuilt[..], seq.symbols());
                prop_assert!(runs.runs().windows(2).all(|p| p[0].symbol != p[1].symbol));
                prop_assert_eq!(runs.rho(), seq.rho());
            }

            #[test]
            fn segments_cover_and_overlap_at_most_one(seq in word()) {
                let segs = seq.segments().unwrap();
                let s = segs.segments();
                prop_assert_eq!(s[0].start, 0);
                prop_assert_eq!(s[s.len() - 1].end, seq.len() - 1);
                for p in s.windows(2) {
                    prop_assert!(p[1].start == p[0].end || p[1].start == p[0].end + 1);
                }
                let total: usize = segs.lengths().iter().sum();
                let overlaps = s.windows(2).filter(|p| p[1].start == p[0].end).count();
                prop_assert_eq!(total - overlaps, seq.len());
            }

            #[test]
            fn distances_are_symmetric_and_ordered(a in word(), b in word()) {
                let b = Sequence::new(
                    b.symbols().iter().map(|&s| s % a.q()).collect(), u32::from(a.q())).unwrap();
                let lev = levenshtein_distance(&a, &b).unwrap();
                let ed = edit_distance(&a, &b).unwrap();
                prop_assert_eq!(lev, levenshtein_distance(&b, &a).unwrap());
                prop_assert_eq!(ed, edit_distance(&b, &a).unwrap());
                prop_assert!(ed <= lev);
                prop_assert!(a.len().abs_diff(b.len()) <= ed);
                if a.len() == b.len() {
                    prop_assert!(ed <= hamming_distance(&a, &b).unwrap());
                }
            }

            #[test]
            fn reversal_preserves_run_count(seq in word()) {
                prop_assert_eq!(seq.reversed().rho(), seq.rho());
                prop_assert_eq!(seq.reversed().reversed(), seq);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let x = s("0101", 2);
        let y = s("1010", 2);
        assert_eq!(hamming_distance(&x, &y).unwrap(), 4);
        assert_eq!(levenshtein_distance(&x, &y).unwrap(), 2);
        assert_eq!(edit_distance(&x, &y).unwrap(), 2);
        assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
        assert_eq!(edit_distance(&x, &x).unwrap(), 0);

        let a = s("0111", 2);
        let b = s("1110", 2);
        assert_eq!(hamming_distance(&a, &b).unwrap(), 2);
        assert_eq!(levenshtein_distance(&a, &b).unwrap(), 2);

        assert_eq!(levenshtein_distance(&x, &Sequence::empty(2).unwrap()).unwrap(), 4);
        assert_eq!(edit_distance(&s("00", 2), &s("01", 2)).unwrap(), 1);

        assert!(matches!(hamming_distance(&x, &s("010", 2)), Err(Error::Dimension(_))));
        assert!(matches!(levenshtein_distance(&x, &s("0101", 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn delete_from_run_examples() {
        assert_eq!(delete_from_run(&s("01011010", 2), 4).unwrap(), s("0101010", 2));
        assert_eq!(delete_from_run(&s("000", 2), 1).unwrap(), s("00", 2));
        assert!(matches!(delete_from_run(&s("000", 2), 2), Err(Error::Index { .. })));
        assert!(matches!(delete_from_run(&s("000", 2), 0), Err(Error::Index { .. })));

        // d_H(ω^(i), ω^(j)) = j - i
        let w = s("0112220102", 3);
        let rho = w.rho();
        for i in 1..=rho {
            for j in i + 1..=rho {
                let a = delete_from_run(&w, i).unwrap();
                let b = delete_from_run(&w, j).unwrap();
                assert_eq!(hamming_distance(&a, &b).unwrap(), j - i);
            }
        }
    }

    #[test]
    fn delete_from_run_is_a_bijection_onto_single_deletions() {
        for seq in Sequence::all(7, 3).unwrap() {
            let mut brute = BTreeSet::new();
            for p in 0..seq.len() {
                let mut v = seq.symbols().to_vec();
                v.remove(p);
                brute.insert(v);
            }
            let ours: BTreeSet<Vec<u8>> =
                (1..=seq.rho()).map(|i| delete_from_run(&seq, i).unwrap().into_symbols()).collect();
            assert_eq!(ours.len(), seq.rho());
            assert_eq!(ours, brute);
        }
    }

    #[test]
    fn insertion_variant_examples() {
        assert_eq!(insertion_variant(&s("01", 2), 0).unwrap(), s("001", 2));
        assert_eq!(insertion_variant(&s("01", 2), -1).unwrap(), s("101", 2));
        // the last choice after the end of a run extends the next run
        let w = s("0012", 3);
        assert_eq!(insertion_variant(&w, 4).unwrap(), s("00112", 3));
        assert_eq!(insertion_variant(&w, 3).unwrap(), s("00212", 3));
        assert!(matches!(insertion_variant(&w, 9), Err(Error::Index { .. })));
        assert!(matches!(insertion_variant(&w, -3), Err(Error::Index { .. })));
    }

    #[test]
    fn insertion_variants_enumerate_single_insertions() {
        for (q, n) in [(2u32, 6usize), (3, 5), (4, 4)] {
            for seq in Sequence::all(n, q).unwrap() {
                let mut brute = BTreeSet::new();
                for p in 0..=n {
                    for a in 0..q as u8 {
                        let mut v = seq.symbols().to_vec();
                        v.insert(p, a);
                        brute.insert(v);
                    }
                }
                let (lo, hi) = insertion_index_range(&seq);
                let ours: Vec<Vec<u8>> =
                    (lo..=hi).map(|k| insertion_variant(&seq, k).unwrap().into_symbols()).collect();
                let distinct: BTreeSet<Vec<u8>> = ours.iter().cloned().collect();
                assert_eq!(ours.len(), 1 + (n + 1) * (q as usize - 1));
                assert_eq!(distinct.len(), ours.len(), "duplicate variant for {seq}");
                assert_eq!(distinct, brute);
            }
        }
    }

    #[test]
    fn channel_parsing() {
        assert_eq!("0,1,2".parse::<ChannelSpec>().unwrap(), ChannelSpec::new(0, 1, 2));
        assert_eq!(ChannelSpec::new(2, 1, 0).to_string(), "2,1,0");
        assert!("0,1".parse::<ChannelSpec>().is_err());
        assert!("a,1,2".parse::<ChannelSpec>().is_err());
        assert!(ChannelSpec::new(0, 0, 0).validate_for(3).is_err());
        assert_eq!(ChannelSpec::new(0, 4, 0).validate_for(3), Err(Error::Range { t: 4, n: 3 }));
    }

    #[test]
    fn enumeration_and_successor() {
        let all: Vec<String> = Sequence::all(2, 3).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(all, ["00", "01", "02", "10", "11", "12", "20", "21", "22"]);
        assert_eq!(s("12", 3).successor().unwrap(), s("20", 3));
        assert!(s("22", 3).successor().is_none());
        assert_eq!(Sequence::all(0, 2).unwrap().count(), 1);
    }
}
