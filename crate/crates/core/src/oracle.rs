//! Brute-force enumeration of spheres, balls and their intersections.
//!
//! Nothing here uses a closed form: every set is built by applying edits
//! position by position and deduplicating. The rest of the crate is tested
//! against these functions.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::seqcore::{levenshtein_distance, ChannelSpec, Sequence};

/// Default cap on generated candidate sequences per query.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A deduplicated set of words sharing one length and one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSet {
    n: usize,
    q: u8,
    elements: BTreeSet<Vec<u8>>,
}

impl SequenceSet {
    pub fn empty(n: usize, q: u8) -> Self {
        SequenceSet { n, q, elements: BTreeSet::new() }
    }

    pub fn singleton(seq: &Sequence) -> Self {
        let mut elements = BTreeSet::new();
        elements.insert(seq.symbols().to_vec());
        SequenceSet { n: seq.len(), q: seq.q(), elements }
    }

    /// Build from sequences; all must share length and alphabet.
    pub fn from_sequences<I: IntoIterator<Item = Sequence>>(n: usize, q: u8, items: I) -> Result<Self> {
        let mut set = SequenceSet::empty(n, q);
        for s in items {
            if s.len() != n || s.q() != q {
                return Err(Error::Dimension(format!(
                    "{s} does not have length {n} over an alphabet of size {q}"
                )));
            }
            set.elements.insert(s.into_symbols());
        }
        Ok(set)
    }

    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, seq: &Sequence) -> bool {
        seq.q() == self.q && self.elements.contains(seq.symbols())
    }

    pub fn is_subset(&self, other: &SequenceSet) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Elements in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Sequence> + '_ {
        self.elements.iter().map(move |v| Sequence::from_raw(v.clone(), self.q))
    }

    pub(crate) fn raw(&self) -> &BTreeSet<Vec<u8>> {
        &self.elements
    }

    fn from_raw_set(n: usize, q: u8, elements: BTreeSet<Vec<u8>>) -> Self {
        SequenceSet { n, q, elements }
    }
}

/// One edit stage of a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Delete,
    Substitute,
    Insert,
}

/// Deletions, then substitutions, then insertions.
pub const CANONICAL_ORDER: [Stage; 3] = [Stage::Delete, Stage::Substitute, Stage::Insert];

/// All six stage orders.
pub const ALL_ORDERS: [[Stage; 3]; 6] = [
    [Stage::Delete, Stage::Substitute, Stage::Insert],
    [Stage::Delete, Stage::Insert, Stage::Substitute],
    [Stage::Substitute, Stage::Delete, Stage::Insert],
    [Stage::Substitute, Stage::Insert, Stage::Delete],
    [Stage::Insert, Stage::Delete, Stage::Substitute],
    [Stage::Insert, Stage::Substitute, Stage::Delete],
];

/// Counts generated candidates against a cap.
#[derive(Debug)]
struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    fn new(limit: u64) -> Self {
        Meter { limit, used: 0 }
    }

    fn charge(&mut self, k: u64) -> Result<()> {
        self.used = self.used.saturating_add(k);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

type Words = BTreeSet<Vec<u8>>;
type Inverse = Box<dyn Fn(&Vec<u8>, &mut Meter) -> Result<Words>>;

fn delete_positions(words: &Words, t: usize, meter: &mut Meter) -> Result<Words> {
    let mut out = Words::new();
    for w in words {
        let n = w.len();
        if t > n {
            return Err(Error::Range { t, n });
        }
        // position subsets of size t in lexicographic order
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            meter.charge(1)?;
            let mut keep = Vec::with_capacity(n - t);
            let mut next = 0;
            for (p, &s) in w.iter().enumerate() {
                if next < t && idx[next] == p {
                    next += 1;
                } else {
                    keep.push(s);
                }
            }
            out.insert(keep);
            let mut k = t;
            while k > 0 && idx[k - 1] == n - t + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for m in k..t {
                idx[m] = idx[m - 1] + 1;
            }
        }
    }
    Ok(out)
}

fn substitute_upto(words: &Words, t: usize, q: u8, meter: &mut Meter) -> Result<Words> {
    fn rec(
        w: &mut Vec<u8>,
        from: usize,
        left: usize,
        q: u8,
        out: &mut Words,
        meter: &mut Meter,
    ) -> Result<()> {
        meter.charge(1)?;
        out.insert(w.clone());
        if left == 0 {
            return Ok(());
        }
        for p in from..w.len() {
            let orig = w[p];
            for a in 0..q {
                if a != orig {
                    w[p] = a;
                    rec(w, p + 1, left - 1, q, out, meter)?;
                }
            }
            w[p] = orig;
        }
        Ok(())
    }
    let mut out = Words::new();
    for w in words {
        rec(&mut w.clone(), 0, t, q, &mut out, meter)?;
    }
    Ok(out)
}

fn insert_exactly(words: &Words, t: usize, q: u8, meter: &mut Meter) -> Result<Words> {
    let mut level = words.clone();
    for _ in 0..t {
        let mut next = Words::new();
        for w in &level {
            for p in 0..=w.len() {
                for a in 0..q {
                    meter.charge(1)?;
                    let mut v = Vec::with_capacity(w.len() + 1);
                    v.extend_from_slice(&w[..p]);
                    v.push(a);
                    v.extend_from_slice(&w[p..]);
                    next.insert(v);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Brute-force enumerator with a candidate budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { budget: DEFAULT_BUDGET }
    }
}

impl Oracle {
    pub fn new(budget: u64) -> Self {
        Oracle { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// `D_t(ω)`.
    pub fn deletion_sphere(&self, seq: &Sequence, t: usize) -> Result<SequenceSet> {
        if t > seq.len() {
            return Err(Error::Range { t, n: seq.len() });
        }
        let mut meter = Meter::new(self.budget);
        let set = delete_positions(SequenceSet::singleton(seq).raw(), t, &mut meter)?;
        Ok(SequenceSet::from_raw_set(seq.len() - t, seq.q(), set))
    }

    /// `I_t(ω)`.
    pub fn insertion_sphere(&self, seq: &Sequence, t: usize) -> Result<SequenceSet> {
        let mut meter = Meter::new(self.budget);
        let set = insert_exactly(SequenceSet::singleton(seq).raw(), t, seq.q(), &mut meter)?;
        Ok(SequenceSet::from_raw_set(seq.len() + t, seq.q(), set))
    }

    /// `H_t(ω)`.
    pub fn hamming_ball(&self, seq: &Sequence, t: usize) -> Result<SequenceSet> {
        let mut meter = Meter::new(self.budget);
        let set = substitute_upto(SequenceSet::singleton(seq).raw(), t, seq.q(), &mut meter)?;
        Ok(SequenceSet::from_raw_set(seq.len(), seq.q(), set))
    }

    /// `B_{t1,t2,t3}(ω)` in the canonical stage order.
    pub fn error_ball(&self, seq: &Sequence, spec: ChannelSpec) -> Result<SequenceSet> {
        self.error_ball_with_order(seq, spec, CANONICAL_ORDER)
    }

    /// `B_{t1,t2,t3}(ω)` with the stages applied in `order`.
    pub fn error_ball_with_order(
        &self,
        seq: &Sequence,
        spec: ChannelSpec,
        order: [Stage; 3],
    ) -> Result<SequenceSet> {
        let n = seq.len();
        if spec.t2 > n {
            return Err(Error::Range { t: spec.t2, n });
        }
        let mut stages = order.to_vec();
        stages.sort_by_key(|s| *s as u8);
        stages.dedup();
        if stages.len() != 3 {
            return Err(Error::Precondition(format!("{order:?} is not an ordering of the three stages")));
        }
        let q = seq.q();
        let mut meter = Meter::new(self.budget);
        let mut words = SequenceSet::singleton(seq).elements;
        for stage in order {
            words = match stage {
                Stage::Delete => delete_positions(&words, spec.t2, &mut meter)?,
                Stage::Substitute => substitute_upto(&words, spec.t1, q, &mut meter)?,
                Stage::Insert => insert_exactly(&words, spec.t3, q, &mut meter)?,
            };
        }
        Ok(SequenceSet::from_raw_set(n - spec.t2 + spec.t3, q, words))
    }

    /// `max |I_t(x) ∩ I_t(y)|` over `x ≠ y` in `Σ_q^n` with `d_L(x, y) ≥ 2ℓ`.
    ///
    /// With `allow_equal` the pair `x = y` is admitted as well.
    pub fn max_insertion_intersection(
        &self,
        n: usize,
        q: u32,
        t: usize,
        ell: usize,
        allow_equal: bool,
    ) -> Result<u64> {
        if ell > t || ell > n {
            return Err(Error::Precondition(format!("need n, t ≥ ℓ, got n={n}, t={t}, ℓ={ell}")));
        }
        let mut meter = Meter::new(self.budget);
        let mut best = 0u64;
        for x in Sequence::all(n, q)? {
            let counts = overlap_counts_metered(&x, Sphere::Insertion(t), &mut meter)?;
            for (y, c) in counts {
                let y = Sequence::from_raw(y, x.q());
                let equal = y == x;
                if (equal && !allow_equal) || (!equal && levenshtein_distance(&x, &y)? < 2 * ell) {
                    continue;
                }
                best = best.max(c as u64);
            }
        }
        Ok(best)
    }

    /// [`max_insertion_intersection`](Self::max_insertion_intersection) over distinct pairs.
    pub fn brute_max_intersection(&self, n: usize, q: u32, t: usize, ell: usize) -> Result<u64> {
        self.max_insertion_intersection(n, q, t, ell, false)
    }

    /// For every `y` of the same length, `|S(x) ∩ S(y)|` where it is non-zero.
    pub fn overlap_counts(&self, x: &Sequence, sphere: Sphere) -> Result<BTreeMap<Vec<u8>, usize>> {
        let mut meter = Meter::new(self.budget);
        overlap_counts_metered(x, sphere, &mut meter)
    }
}

/// A sphere or ball family whose membership relation can be inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sphere {
    Deletion(usize),
    Insertion(usize),
    Hamming(usize),
}

/// Enumerate `S(x)`, then for each element `z` enumerate every `y` with
/// `z ∈ S(y)`; the number of times `y` is reached is `|S(x) ∩ S(y)|`.
fn overlap_counts_metered(
    x: &Sequence,
    sphere: Sphere,
    meter: &mut Meter,
) -> Result<BTreeMap<Vec<u8>, usize>> {
    let q = x.q();
    let start = SequenceSet::singleton(x).elements;
    let mut counts = BTreeMap::new();
    let (forward, back): (Words, Inverse) = match sphere {
        Sphere::Deletion(t) => {
            if t > x.len() {
                return Err(Error::Range { t, n: x.len() });
            }
            (
                delete_positions(&start, t, meter)?,
                Box::new(move |z: &Vec<u8>, m: &mut Meter| insert_exactly(&[z.clone()].into(), t, q, m)),
            )
        }
        Sphere::Insertion(t) => (
            insert_exactly(&start, t, q, meter)?,
            Box::new(move |z: &Vec<u8>, m: &mut Meter| delete_positions(&[z.clone()].into(), t, m)),
        ),
        Sphere::Hamming(t) => (
            substitute_upto(&start, t, q, meter)?,
            Box::new(move |z: &Vec<u8>, m: &mut Meter| substitute_upto(&[z.clone()].into(), t, q, m)),
        ),
    };
    for z in &forward {
        for y in back(z, meter)? {
            *counts.entry(y).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

pub fn deletion_sphere(seq: &Sequence, t: usize) -> Result<SequenceSet> {
    Oracle::default().deletion_sphere(seq, t)
}

pub fn insertion_sphere(seq: &Sequence, t: usize) -> Result<SequenceSet> {
    Oracle::default().insertion_sphere(seq, t)
}

pub fn hamming_ball(seq: &Sequence, t: usize) -> Result<SequenceSet> {
    Oracle::default().hamming_ball(seq, t)
}

pub fn error_ball(seq: &Sequence, spec: ChannelSpec) -> Result<SequenceSet> {
    Oracle::default().error_ball(seq, spec)
}

pub fn brute_max_intersection(n: usize, q: u32, t: usize, ell: usize) -> Result<u64> {
    Oracle::default().brute_max_intersection(n, q, t, ell)
}

/// Intersection of one or more sets of uniform shape.
pub fn intersection(sets: &[SequenceSet]) -> Result<SequenceSet> {
    let first = sets.first().ok_or_else(|| Error::Precondition("no sets to intersect".into()))?;
    let mut acc = first.elements.clone();
    for s in &sets[1..] {
        if s.n != first.n || s.q != first.q {
            return Err(Error::Dimension(format!(
                "sets of length {} over q={} and length {} over q={}",
                first.n, first.q, s.n, s.q
            )));
        }
        acc.retain(|w| s.elements.contains(w));
    }
    Ok(SequenceSet::from_raw_set(first.n, first.q, acc))
}

/// Union of one or more sets of uniform shape.
pub fn union(sets: &[SequenceSet]) -> Result<SequenceSet> {
    let first = sets.first().ok_or_else(|| Error::Precondition("no sets to unite".into()))?;
    let mut acc = first.elements.clone();
    for s in &sets[1..] {
        if s.n != first.n || s.q != first.q {
            return Err(Error::Dimension("sets differ in length or alphabet".into()));
        }
        acc.extend(s.elements.iter().cloned());
    }
    Ok(SequenceSet::from_raw_set(first.n, first.q, acc))
}

/// `|S(x) ∩ S(y)|` through two enumerations.
pub fn sphere_intersection_size(x: &Sequence, y: &Sequence, sphere: Sphere) -> Result<usize> {
    let o = Oracle::default();
    let build = |s: &Sequence| match sphere {
        Sphere::Deletion(t) => o.deletion_sphere(s, t),
        Sphere::Insertion(t) => o.insertion_sphere(s, t),
        Sphere::Hamming(t) => o.hamming_ball(s, t),
    };
    Ok(intersection(&[build(x)?, build(y)?])?.len())
}

/// `|B(ω)|` via enumeration, deduplicating through a hash set.
pub fn error_ball_size(seq: &Sequence, spec: ChannelSpec, budget: u64) -> Result<u64> {
    let set = Oracle::new(budget).error_ball(seq, spec)?;
    let distinct: HashSet<&Vec<u8>> = set.raw().iter().collect();
    Ok(distinct.len() as u64)
}
