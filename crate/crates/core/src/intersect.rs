//! Closed-form intersection sizes.
//!
//! Three families are covered: insertion 2-spheres of words (and of the
//! 1-subsequences of a common word), double-substitution balls of
//! 1-subsequences, and single-substitution balls of 1-supersequences. The
//! maxima `N+(n, q, t)` and `N+(n, q, t, ℓ)` live here as well.

use serde::{Deserialize, Serialize};

use crate::combin::{binom_i, hamming_ball_size, pow_i, Acc};
use crate::confusability::{check_run_pair, classify_raw, i1_overlap_raw, PairKind};
use crate::error::{Error, Result};
use crate::oracle::{sphere_intersection_size, Sphere};
use crate::seqcore::{
    check_same_shape, delete_from_run, hamming_distance, insertion_index_range, insertion_choices,
    split_insertion_index, RunsDecomposition, Sequence,
};
use crate::Method;

/// A size together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluated {
    pub size: u64,
    pub method: Method,
}

/// `|I_1(ω)| = 1 + (n+1)(q-1)` for `|ω| = n`.
pub fn i1_size(n: usize, q: u8) -> Result<u64> {
    let mut acc = Acc::new("|I_1|");
    acc.add(1)?;
    acc.add(acc.mul3(n as i128 + 1, i128::from(q) - 1, 1)?)?;
    acc.finish()
}

/// `N+(n, q, t)`: largest `|I_t(x) ∩ I_t(y)|` over distinct `x, y ∈ Σ_q^n`.
pub fn n_plus(n: usize, q: u32, t: usize) -> Result<u64> {
    if n < 1 || q < 2 || t < 1 {
        return Err(Error::Precondition(format!("need n ≥ 1, q ≥ 2, t ≥ 1; got n={n}, q={q}, t={t}")));
    }
    let mut acc = Acc::new("N+(n, q, t)");
    for i in 0..t {
        let sign = if (t - i) % 2 == 1 { 2 } else { 0 };
        let term = acc.mul3(binom_i((n + t) as i128, i as i128)?, sign, pow_i(i128::from(q) - 1, i as u32)?)?;
        acc.add(term)?;
    }
    acc.finish()
}

/// `N+(n, q, t, ℓ)`: largest `|I_t(x) ∩ I_t(y)|` with `d_L(x, y) ≥ 2ℓ`.
///
/// At `ℓ = 0` the pair `x = y` is admissible, so the value is `|I_t|`.
pub fn n_plus_ell(n: usize, q: u32, t: usize, ell: usize) -> Result<u64> {
    if ell > n || ell > t || q < 2 {
        return Err(Error::Precondition(format!("need n, t ≥ ℓ ≥ 0 and q ≥ 2; got n={n}, t={t}, ℓ={ell}")));
    }
    let mut acc = Acc::new("N+(n, q, t, l)");
    let qm = i128::from(q) - 1;
    for j in ell..=t {
        for i in 0..=t - j {
            let sign = if (t + j - i).is_multiple_of(2) { 1 } else { -1 };
            let a = binom_i(2 * j as i128, j as i128)?;
            let b = binom_i((t + j - i) as i128, 2 * j as i128)?;
            let c = binom_i((n + t) as i128, i as i128)?;
            let p = pow_i(qm, i as u32)?;
            let term = acc.mul3(a, b, c)?;
            let term = acc.mul3(term, p, sign)?;
            acc.add(term)?;
        }
    }
    acc.finish()
}

/// `|I_2(x) ∩ I_2(y)|` for an oriented Type-B pair whose middles satisfy
/// `v_{[2,m]} = v'_{[1,m-1]}`.
fn type_b_i2(n: usize, q: u8, v: &[u8], v_prime: &[u8]) -> Result<u64> {
    let m = v.len();
    let inner = i1_overlap_raw(&v[..m - 1], &v_prime[1..]);
    let mut acc = Acc::new("|I_2 ∩ I_2|");
    acc.add(1 + i128::from(inner))?;
    acc.add(acc.mul3(n as i128 + 2, i128::from(q) - 1, 1)?)?;
    acc.finish()
}

fn i2_closed_raw(x: &[u8], y: &[u8], q: u8) -> Result<Option<u64>> {
    let n = x.len();
    let full = || -> Result<u64> {
        let mut acc = Acc::new("|I_2 ∩ I_2|");
        acc.add(acc.mul3(2, n as i128 + 2, i128::from(q) - 1)?)?;
        acc.finish()
    };
    match classify_raw(x, y) {
        PairKind::Equal => Err(Error::DegeneratePair),
        PairKind::HammingOne | PairKind::TypeA => full().map(Some),
        PairKind::TypeB => {
            let a = x.iter().zip(y).position(|(p, r)| p != r).unwrap_or(0);
            let b = (0..n).rev().find(|&k| x[k] != y[k]).unwrap_or(0);
            let (v, vp) = (&x[a..=b], &y[a..=b]);
            let m = v.len();
            if v[1..] == vp[..m - 1] {
                type_b_i2(n, q, v, vp).map(Some)
            } else {
                type_b_i2(n, q, vp, v).map(Some)
            }
        }
        PairKind::Other => Ok(None),
    }
}

/// `|I_2(x) ∩ I_2(y)|` for distinct `x, y ∈ Σ_q^n`, `n ≥ 4`.
///
/// Pairs with disjoint single-insertion spheres have no closed form and are
/// enumerated.
pub fn i2_pair_size(x: &Sequence, y: &Sequence) -> Result<Evaluated> {
    check_same_shape(x, y)?;
    if x.len() < 4 {
        return Err(Error::Precondition(format!(
            "closed form needs n ≥ 4, got n={}; use the oracle",
            x.len()
        )));
    }
    match i2_closed_raw(x.symbols(), y.symbols(), x.q())? {
        Some(size) => Ok(Evaluated { size, method: Method::Formula }),
        None => Ok(Evaluated {
            size: sphere_intersection_size(x, y, Sphere::Insertion(2))? as u64,
            method: Method::Oracle,
        }),
    }
}

/// Run-pattern indicators for a Type-B pair `(ω^(i), ω^(j))`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlags {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub c4: bool,
    pub c5: bool,
    /// First run index witnessing the first condition that fired.
    pub t: Option<usize>,
    /// Second run index, set only for `C1`.
    pub s: Option<usize>,
    /// `j = i+2`, `ℓ_{i+1} = 1`, `σ_i ≠ σ_j`.
    pub near_unit: bool,
    /// `j = i+2`, `ℓ_{i+1} = 2`, `σ_i = σ_j`.
    pub near_double: bool,
}

impl ConditionFlags {
    pub fn fired(&self) -> usize {
        [self.c1, self.c2, self.c3, self.c4, self.c5, self.near_unit, self.near_double]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// Offset `k` in `k + (n+1)(q-1)` predicted by the run patterns.
    pub fn offset(&self, adjacent: bool) -> u64 {
        if adjacent {
            if self.near_unit || self.near_double {
                3
            } else {
                2
            }
        } else if self.c1 || self.c2 || self.c3 {
            2
        } else if self.c4 || self.c5 {
            3
        } else {
            1
        }
    }
}

struct RunView {
    sig: Vec<u8>,
    len: Vec<usize>,
}

impl RunView {
    fn new(runs: &RunsDecomposition) -> Self {
        let mut sig = vec![0];
        let mut len = vec![0];
        for r in runs.runs() {
            sig.push(r.symbol);
            len.push(r.length);
        }
        RunView { sig, len }
    }

    /// `σ_k = σ_{k+2}` for every `a ≤ k ≤ b`.
    fn alternates(&self, a: usize, b: usize) -> bool {
        (a..=b).all(|k| self.sig[k] == self.sig[k + 2])
    }

    fn all_len(&self, ks: impl IntoIterator<Item = usize>, l: usize) -> bool {
        ks.into_iter().all(|k| self.len[k] == l)
    }
}

/// Evaluate the run-pattern conditions for `(ω^(i), ω^(j))`; `None` unless
/// the pair is Type-B.
pub fn subseq_pair_flags(seq: &Sequence, i: usize, j: usize) -> Result<Option<ConditionFlags>> {
    check_run_pair(seq, i, j)?;
    let rv = RunView::new(&seq.runs()?);
    if j == i + 1 {
        return Ok(None);
    }
    let mids = i + 1..j;
    if rv.all_len(mids.clone(), 1) && rv.alternates(i, j - 2) {
        return Ok(None);
    }
    let mut f = ConditionFlags::default();
    if j == i + 2 {
        f.near_unit = rv.len[i + 1] == 1 && rv.sig[i] != rv.sig[j];
        f.near_double = rv.len[i + 1] == 2 && rv.sig[i] == rv.sig[j];
        return Ok(Some(f));
    }
    let mut first: Option<(usize, usize, Option<usize>)> = None;
    let mut note = |c: usize, t: usize, s: Option<usize>| {
        if first.is_none_or(|(fc, _, _)| c < fc) {
            first = Some((c, t, s));
        }
    };
    for t in mids.clone() {
        let others_unit = rv.all_len(mids.clone().filter(|&k| k != t), 1);
        let split_alt = rv.alternates(i, t - 2) && rv.alternates(t, j - 2);
        if others_unit && rv.len[t] >= 3 && split_alt {
            f.c2 = true;
            note(2, t, None);
        }
        if others_unit && rv.len[t] == 2 && rv.sig[t - 1] != rv.sig[t + 1] && split_alt {
            f.c3 = true;
            note(3, t, None);
        }
        if others_unit && rv.len[t] == 2 && rv.alternates(i, j - 2) {
            f.c4 = true;
            note(4, t, None);
        }
        for s in (t + 2..j).step_by(2) {
            let ok = rv.all_len(i + 1..t, 1)
                && rv.all_len(s + 1..j, 1)
                && rv.all_len((t..=s).step_by(2), 2)
                && rv.all_len((t + 1..s).step_by(2), 1)
                && rv.alternates(i, j - 2);
            if ok {
                f.c1 = true;
                note(1, t, Some(s));
            }
        }
    }
    if rv.all_len(mids, 1) {
        for t in i..=j - 2 {
            if rv.sig[t] != rv.sig[t + 2] && rv.alternates(i, t - 1) && rv.alternates(t + 1, j - 2) {
                f.c5 = true;
                note(5, t, None);
            }
        }
    }
    if let Some((_, t, s)) = first {
        f.t = Some(t);
        f.s = s;
    }
    Ok(Some(f))
}

/// `|I_2(ω^(i)) ∩ I_2(ω^(j))|` read off the run patterns alone.
///
/// Exact over the binary alphabet; for `q ≥ 3` some Type-B pairs are
/// misjudged (see [`subseq_pair_i2_size`], which is exact for every `q`).
pub fn subseq_pair_i2_run_pattern(seq: &Sequence, i: usize, j: usize) -> Result<u64> {
    check_subseq_len(seq)?;
    let n = seq.len();
    let base = i1_size(n, seq.q())? - 1;
    match subseq_pair_flags(seq, i, j)? {
        None => Ok(2 * base),
        Some(f) => Ok(base + f.offset(j == i + 2)),
    }
}

fn check_subseq_len(seq: &Sequence) -> Result<()> {
    if seq.len() < 4 {
        return Err(Error::Precondition(format!(
            "closed form needs n ≥ 4, got n={}; use the oracle",
            seq.len()
        )));
    }
    Ok(())
}

pub(crate) fn subseq_pair_i2_unchecked(seq: &Sequence, i: usize, j: usize) -> Result<u64> {
    let a = delete_from_run(seq, i)?;
    let b = delete_from_run(seq, j)?;
    i2_closed_raw(a.symbols(), b.symbols(), seq.q())?
        .ok_or_else(|| Error::Precondition("1-subsequences of one word always share it".into()))
}

/// `|I_2(ω^(i)) ∩ I_2(ω^(j))|` for `1 ≤ i < j ≤ ρ(ω)`, `n ≥ 4`.
///
/// Type-B pairs are reduced to a single-insertion question on the
/// shifted middles, which settles every alphabet size.
pub fn subseq_pair_i2_size(seq: &Sequence, i: usize, j: usize) -> Result<u64> {
    check_subseq_len(seq)?;
    check_run_pair(seq, i, j)?;
    subseq_pair_i2_unchecked(seq, i, j)
}

fn pair_overlaps_twice(seq: &Sequence, i: usize, j: usize) -> Result<bool> {
    let a = delete_from_run(seq, i)?;
    let b = delete_from_run(seq, j)?;
    Ok(matches!(classify_raw(a.symbols(), b.symbols()), PairKind::HammingOne | PairKind::TypeA))
}

/// `|I_2(ω^(i)) ∩ I_2(ω^(j)) ∩ I_2(ω^(k))|` for `i < j < k`.
pub fn subseq_triple_i2_size(seq: &Sequence, i: usize, j: usize, k: usize) -> Result<u64> {
    check_run_pair(seq, i, j)?;
    check_run_pair(seq, j, k)?;
    let base = i1_size(seq.len(), seq.q())?;
    if pair_overlaps_twice(seq, i, j)? && pair_overlaps_twice(seq, j, k)? {
        Ok(base + 1)
    } else {
        Ok(base)
    }
}

/// Intersection of the insertion 2-spheres of four or more distinct
/// 1-subsequences; always `|I_1(ω)|`.
pub fn subseq_quad_i2(seq: &Sequence, indices: &[usize]) -> Result<u64> {
    let rho = seq.rho();
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() || sorted.len() < 4 {
        return Err(Error::Precondition("need at least four distinct run indices".into()));
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k == 0 || k > rho) {
        return Err(Error::Index { index: bad as i64, min: 1, max: rho as i64 });
    }
    i1_size(seq.len(), seq.q())
}

/// `|H_2(x) ∩ H_2(y)|` by Hamming distance.
pub fn sub2_pair_size(x: &Sequence, y: &Sequence) -> Result<u64> {
    let d = hamming_distance(x, y)?;
    let (n, q) = (x.len() as i128, i128::from(x.q()));
    let mut acc = Acc::new("|H_2 ∩ H_2|");
    match d {
        0 => return hamming_ball_size(x.len(), x.q(), 2),
        1 => acc.add(acc.mul3(q, 1 + (n - 1) * (q - 1), 1)?)?,
        2 => acc.add(q * q + 2 * (n - 2) * (q - 1))?,
        3 => acc.add(6 * (q - 1))?,
        4 => acc.add(6)?,
        _ => {}
    }
    acc.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiIntersection {
    pub size: u64,
    /// The pattern spans five or more runs, so two members are at Hamming
    /// distance at least five and the intersection is empty.
    pub vanishes_by_span: bool,
}

/// `|⋂_k H_2(ω^(base + offsets[k]))|` for three to five 1-subsequences.
pub fn sub2_multi_size(seq: &Sequence, base: usize, offsets: &[usize]) -> Result<MultiIntersection> {
    let rho = seq.rho();
    let well_formed = offsets.len() >= 3
        && offsets[0] == 0
        && offsets.windows(2).all(|w| w[0] < w[1]);
    if !well_formed {
        return Err(Error::Pattern(offsets.to_vec()));
    }
    let span = offsets[offsets.len() - 1];
    if base == 0 || base + span > rho {
        return Err(Error::Index { index: (base + span) as i64, min: 1, max: rho as i64 });
    }
    let (n, q) = (seq.len() as i128, i128::from(seq.q()));
    let size: i128 = match offsets {
        [0, 1, 2] => q * q + (n - 3) * (q - 1),
        [0, 1, 3] | [0, 2, 3] => 4 * q - 3,
        [0, 1, 4] | [0, 3, 4] => 3,
        [0, 2, 4] => 5,
        [0, 1, 2, 3] => 3 * q - 2,
        [0, 2, 3, 4] => 3,
        [0, 1, 3, 4] => 2,
        [0, 1, 2, 3, 4] => 2,
        _ if span >= 5 => return Ok(MultiIntersection { size: 0, vanishes_by_span: true }),
        _ => return Err(Error::Pattern(offsets.to_vec())),
    };
    Ok(MultiIntersection { size: u64::try_from(size).map_err(|_| Error::Overflow("multi-ball intersection size"))?, vanishes_by_span: false })
}

/// Where an insertion index puts its new symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct InsertionSite {
    /// 1-based position the symbol follows.
    pos: usize,
    /// 1-based run containing `pos`.
    run: usize,
    /// 1-based rank of `pos` inside its run.
    rank: usize,
    last_of_run: bool,
    extends_next: bool,
}

fn insertion_site(seq: &Sequence, runs: &RunsDecomposition, k: i64) -> InsertionSite {
    let q = seq.q();
    let (pos, j) = split_insertion_index(k, q);
    let mut run = 1;
    let mut start = 1;
    while start + runs.length(run) <= pos {
        start += runs.length(run);
        run += 1;
    }
    let rank = pos - start + 1;
    let last_of_run = rank == runs.length(run);
    let choices = insertion_choices(seq.symbols(), q, pos);
    let extends_next = pos < seq.len() && choices[j - 1] == seq.symbols()[pos];
    InsertionSite { pos, run, rank, last_of_run, extends_next }
}

fn check_insertion_index(seq: &Sequence, k: i64) -> Result<()> {
    let (min, max) = insertion_index_range(seq);
    if seq.is_empty() || k < min || k > max {
        return Err(Error::Index { index: k, min, max });
    }
    Ok(())
}

/// `d_H(ω^(a), ω^(b))` for two indexed 1-supersequences.
pub fn ins1_hamming(seq: &Sequence, a: i64, b: i64) -> Result<u64> {
    check_insertion_index(seq, a)?;
    check_insertion_index(seq, b)?;
    if a == b {
        return Ok(0);
    }
    let (a, b) = (a.min(b), a.max(b));
    if b <= 0 {
        return Ok(1);
    }
    let runs = seq.runs()?;
    let sb = insertion_site(seq, &runs, b);
    if a <= 0 {
        let h = sb.run as u64;
        return Ok(if a == 0 { h } else { h + 1 });
    }
    let sa = insertion_site(seq, &runs, a);
    if sa.pos == sb.pos {
        return Ok(1);
    }
    let t = (sb.run - sa.run) as u64;
    Ok(if !sa.last_of_run {
        t + 2
    } else if sa.extends_next {
        t
    } else {
        t + 1
    })
}

/// `|H_1(z) ∩ H_1(z̃)|` by Hamming distance.
pub fn sub1_pair_size(z: &Sequence, zt: &Sequence) -> Result<u64> {
    Ok(match hamming_distance(z, zt)? {
        0 => hamming_ball_size(z.len(), z.q(), 1)?,
        1 => u64::from(z.q()),
        2 => 2,
        _ => 0,
    })
}

/// `|H_1(ω^(k)) ∩ ⋃_{k' < k} H_1(ω^(k'))|` over the indexed 1-supersequences.
pub fn sub1_prefix_union_size(seq: &Sequence, k: i64) -> Result<u64> {
    check_insertion_index(seq, k)?;
    let q = u64::from(seq.q());
    let (min, _) = insertion_index_range(seq);
    if k == min {
        return Ok(0);
    }
    if k <= 0 {
        return Ok(q);
    }
    let site = insertion_site(seq, &seq.runs()?, k);
    Ok(site.rank as u64 * (q - 1) + q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        brute_max_intersection, hamming_ball, insertion_sphere, intersection, union, Oracle,
    };
    use crate::seqcore::insertion_variant;

    fn s(text: &str, q: u32) -> Sequence {
        Sequence::parse(text, q).unwrap()
    }

    fn oracle_i2_subseqs(seq: &Sequence, idx: &[usize]) -> u64 {
        let sets: Vec<_> = idx
            .iter()
            .map(|&k| insertion_sphere(&delete_from_run(seq, k).unwrap(), 2).unwrap())
            .collect();
        intersection(&sets).unwrap().len() as u64
    }

    fn oracle_h2_subseqs(seq: &Sequence, idx: &[usize]) -> u64 {
        let sets: Vec<_> = idx
            .iter()
            .map(|&k| hamming_ball(&delete_from_run(seq, k).unwrap(), 2).unwrap())
            .collect();
        intersection(&sets).unwrap().len() as u64
    }

    #[test]
    fn n_plus_examples() {
        for n in 1..8 {
            assert_eq!(n_plus(n, 3, 1).unwrap(), 2);
        }
        assert_eq!(n_plus(4, 2, 2).unwrap(), 12);
        assert_eq!(n_plus(7, 3, 2).unwrap(), 2 * 9 * 2);
        assert_eq!(n_plus_ell(4, 2, 2, 2).unwrap(), 6);
        assert!(n_plus(0, 2, 1).is_err());
        assert!(n_plus_ell(4, 2, 1, 2).is_err());
    }

    #[test]
    fn n_plus_ell_at_zero_is_sphere_size() {
        for n in 1..8 {
            for t in 1..4 {
                let sphere = crate::combin::insertion_sphere_size(n, 3, t).unwrap();
                assert_eq!(n_plus_ell(n, 3, t, 0).unwrap(), sphere);
                assert!(n_plus_ell(n, 3, t, 0).unwrap() >= n_plus(n, 3, t).unwrap());
            }
        }
    }

    #[test]
    fn maxima_match_brute_force() {
        for n in 1..=5 {
            for t in 1..=2 {
                assert_eq!(n_plus(n, 2, t).unwrap(), brute_max_intersection(n, 2, t, 0).unwrap(), "n={n} t={t}");
                for ell in 1..=t.min(n) {
                    assert_eq!(
                        n_plus_ell(n, 2, t, ell).unwrap(),
                        brute_max_intersection(n, 2, t, ell).unwrap(),
                        "n={n} t={t} l={ell}"
                    );
                }
            }
        }
        assert_eq!(n_plus_ell(5, 3, 2, 1).unwrap(), brute_max_intersection(5, 3, 2, 1).unwrap());
    }

    #[test]
    fn i2_pair_examples() {
        let r = i2_pair_size(&s("0101", 2), &s("1010", 2)).unwrap();
        assert_eq!(r, Evaluated { size: 12, method: Method::Formula });
        // x = u αβ w, y = u βγ w with middles of length two
        let x = s("0012", 3);
        let y = s("0122", 3);
        assert_eq!(i2_pair_size(&x, &y).unwrap().size, 3 + 6 * 2);
        assert_eq!(
            i2_pair_size(&x, &y).unwrap().size as usize,
            sphere_intersection_size(&x, &y, Sphere::Insertion(2)).unwrap()
        );
        let far = i2_pair_size(&s("0000", 2), &s("1111", 2)).unwrap();
        assert_eq!(far.method, Method::Oracle);
        assert!(far.size <= 6);
        assert!(matches!(i2_pair_size(&s("010", 2), &s("011", 2)), Err(Error::Precondition(_))));
        assert_eq!(i2_pair_size(&s("0101", 2), &s("0101", 2)), Err(Error::DegeneratePair));
    }

    #[test]
    fn i2_pairs_match_oracle_exhaustively() {
        for (q, n) in [(2u32, 5usize), (2, 6), (3, 4)] {
            let cap = n_plus(n, q, 2).unwrap();
            for x in Sequence::all(n, q).unwrap() {
                let counts = Oracle::default().overlap_counts(&x, Sphere::Insertion(2)).unwrap();
                let i1 = Oracle::default().overlap_counts(&x, Sphere::Insertion(1)).unwrap();
                for y in Sequence::all(n, q).unwrap().filter(|y| *y != x) {
                    let expected = counts.get(y.symbols()).copied().unwrap_or(0) as u64;
                    let got = i2_pair_size(&x, &y).unwrap();
                    assert_eq!(got.size, expected, "{x} {y}");
                    assert!(got.size <= cap);
                    let two = i1.get(y.symbols()).copied().unwrap_or(0) == 2;
                    assert_eq!(got.size == cap, two, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn subseq_pair_examples() {
        let w = s("01011010", 2);
        assert_eq!(subseq_pair_i2_size(&w, 1, 2).unwrap(), 18);
        assert_eq!(oracle_i2_subseqs(&w, &[1, 2]), 18);
        let w = s("01110021", 3);
        let i1 = i1_size(8, 3).unwrap();
        let mut at2 = 0;
        let mut at1 = 0;
        for i in 1..=w.rho() {
            for j in i + 1..=w.rho() {
                let v = subseq_pair_i2_size(&w, i, j).unwrap();
                at2 += usize::from(v == i1 + 2);
                at1 += usize::from(v == i1 + 1);
            }
        }
        assert_eq!((at2, at1), (1, 2));
        assert!(matches!(subseq_pair_i2_size(&s("010", 2), 1, 2), Err(Error::Precondition(_))));
        assert!(matches!(subseq_pair_i2_size(&w, 3, 3), Err(Error::Index { .. })));
    }

    #[test]
    fn subseq_pairs_match_oracle_and_take_four_values() {
        for (q, ns) in [(2u32, 4..=9usize), (3, 4..=6)] {
            for n in ns {
                let i1 = i1_size(n, q as u8).unwrap();
                let allowed = [i1, i1 + 1, i1 + 2, 2 * i1 - 2];
                for w in Sequence::all(n, q).unwrap() {
                    let subs: Vec<_> = (1..=w.rho())
                        .map(|k| insertion_sphere(&delete_from_run(&w, k).unwrap(), 2).unwrap())
                        .collect();
                    for i in 1..=w.rho() {
                        for j in i + 1..=w.rho() {
                            let got = subseq_pair_i2_size(&w, i, j).unwrap();
                            let expected =
                                intersection(&[subs[i - 1].clone(), subs[j - 1].clone()]).unwrap().len() as u64;
                            assert_eq!(got, expected, "{w} {i} {j}");
                            assert!(allowed.contains(&got));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn run_patterns_are_exact_for_binary_words() {
        for n in 4..=10 {
            for w in Sequence::all(n, 2).unwrap() {
                for i in 1..=w.rho() {
                    for j in i + 1..=w.rho() {
                        let exact = subseq_pair_i2_size(&w, i, j).unwrap();
                        assert_eq!(subseq_pair_i2_run_pattern(&w, i, j).unwrap(), exact, "{w} {i} {j}");
                        if let Some(f) = subseq_pair_flags(&w, i, j).unwrap() {
                            assert!(f.fired() <= 1, "{w} {i} {j} {f:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn run_patterns_miss_some_ternary_pairs() {
        // all middle runs have length one but the symbols do not alternate
        let w = s("0120", 3);
        assert_eq!(subseq_pair_i2_size(&w, 1, 4).unwrap(), oracle_i2_subseqs(&w, &[1, 4]));
        assert_ne!(subseq_pair_i2_run_pattern(&w, 1, 4).unwrap(), oracle_i2_subseqs(&w, &[1, 4]));
    }

    #[test]
    fn c3_and_c4_never_coincide() {
        for (q, n) in [(2u32, 10usize), (3, 7)] {
            for w in Sequence::all(n, q).unwrap() {
                for i in 1..=w.rho() {
                    for j in i + 3..=w.rho() {
                        if let Some(f) = subseq_pair_flags(&w, i, j).unwrap() {
                            assert!(!(f.c3 && f.c4), "{w} {i} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn triples_and_quads_match_oracle() {
        for (q, max_n) in [(2u32, 8usize), (3, 6)] {
            for n in 3..=max_n {
                let i1 = i1_size(n, q as u8).unwrap();
                for w in Sequence::all(n, q).unwrap() {
                    let rho = w.rho();
                    let subs: Vec<_> = (1..=rho)
                        .map(|k| insertion_sphere(&delete_from_run(&w, k).unwrap(), 2).unwrap())
                        .collect();
                    for i in 1..=rho {
                        for j in i + 1..=rho {
                            for k in j + 1..=rho {
                                let sets = [subs[i - 1].clone(), subs[j - 1].clone(), subs[k - 1].clone()];
                                let expected = intersection(&sets).unwrap().len() as u64;
                                assert_eq!(subseq_triple_i2_size(&w, i, j, k).unwrap(), expected, "{w}");
                                if q == 2 {
                                    for l in k + 1..=rho {
                                        let mut four = sets.to_vec();
                                        four.push(subs[l - 1].clone());
                                        assert_eq!(intersection(&four).unwrap().len() as u64, i1);
                                        assert_eq!(subseq_quad_i2(&w, &[i, j, k, l]).unwrap(), i1);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn triple_and_quad_examples() {
        let w = s("010101", 2);
        assert_eq!(subseq_triple_i2_size(&w, 1, 2, 3).unwrap(), 1 + i1_size(6, 2).unwrap());
        assert_eq!(oracle_i2_subseqs(&w, &[1, 2, 3]), 1 + i1_size(6, 2).unwrap());
        let w = s("01110021", 3);
        assert_eq!(subseq_triple_i2_size(&w, 1, 2, 3).unwrap(), 1 + i1_size(8, 3).unwrap());
        assert_eq!(oracle_i2_subseqs(&w, &[1, 2, 3]), 1 + i1_size(8, 3).unwrap());
        assert_eq!(subseq_triple_i2_size(&w, 2, 3, 5).unwrap(), i1_size(8, 3).unwrap());
        assert_eq!(oracle_i2_subseqs(&w, &[2, 3, 5]), i1_size(8, 3).unwrap());
        let w = s("0101010", 2);
        assert_eq!(subseq_quad_i2(&w, &[1, 2, 3, 4]).unwrap(), 9);
        let all: Vec<usize> = (1..=w.rho()).collect();
        assert_eq!(subseq_quad_i2(&w, &all).unwrap(), 9);
        assert_eq!(oracle_i2_subseqs(&w, &all), 9);
        assert!(subseq_quad_i2(&w, &[1, 2, 3]).is_err());
        assert!(subseq_quad_i2(&w, &[1, 2, 3, 3]).is_err());
    }

    #[test]
    fn sub2_pair_examples() {
        assert_eq!(sub2_pair_size(&s("00000", 2), &s("11110", 2)).unwrap(), 6);
        assert_eq!(sub2_pair_size(&s("00000", 2), &s("11111", 2)).unwrap(), 0);
        assert_eq!(sub2_pair_size(&s("00000", 3), &s("12100", 3)).unwrap(), 12);
        assert!(matches!(sub2_pair_size(&s("00", 2), &s("000", 2)), Err(Error::Dimension(_))));
    }

    #[test]
    fn sub2_pairs_match_oracle() {
        for (q, n) in [(2u32, 5usize), (3, 5), (2, 2), (3, 3)] {
            for x in Sequence::all(n, q).unwrap() {
                let counts = Oracle::default().overlap_counts(&x, Sphere::Hamming(2)).unwrap();
                for y in Sequence::all(n, q).unwrap() {
                    let expected = counts.get(y.symbols()).copied().unwrap_or(0) as u64;
                    assert_eq!(sub2_pair_size(&x, &y).unwrap(), expected, "{x} {y}");
                }
            }
        }
    }

    const PATTERNS: [&[usize]; 10] = [
        &[0, 1, 2],
        &[0, 1, 3],
        &[0, 2, 3],
        &[0, 1, 4],
        &[0, 3, 4],
        &[0, 2, 4],
        &[0, 1, 2, 3],
        &[0, 2, 3, 4],
        &[0, 1, 3, 4],
        &[0, 1, 2, 3, 4],
    ];

    #[test]
    fn sub2_multi_examples() {
        let w = s("010101", 2);
        assert_eq!(sub2_multi_size(&w, 1, &[0, 1, 2]).unwrap().size, 7);
        assert_eq!(oracle_h2_subseqs(&w, &[1, 2, 3]), 7);
        assert_eq!(sub2_multi_size(&w, 1, &[0, 1, 2, 3, 4]).unwrap().size, 2);
        let far = sub2_multi_size(&w, 1, &[0, 1, 5]).unwrap();
        assert_eq!(far, MultiIntersection { size: 0, vanishes_by_span: true });
        assert_eq!(oracle_h2_subseqs(&w, &[1, 2, 6]), 0);
        assert_eq!(sub2_multi_size(&w, 1, &[0, 1, 2, 4]), Err(Error::Pattern(vec![0, 1, 2, 4])));
        assert!(matches!(sub2_multi_size(&w, 1, &[0, 1]), Err(Error::Pattern(_))));
        assert!(matches!(sub2_multi_size(&w, 3, &[0, 1, 2, 3, 4]), Err(Error::Index { .. })));
    }

    #[test]
    fn sub2_multi_matches_oracle() {
        for (q, max_n) in [(2u32, 8usize), (3, 7)] {
            for n in 5..=max_n {
                for w in Sequence::all(n, q).unwrap().filter(|w| w.rho() >= 3) {
                    let rho = w.rho();
                    for pat in PATTERNS {
                        let span = pat[pat.len() - 1];
                        for base in 1..=rho.saturating_sub(span) {
                            let idx: Vec<usize> = pat.iter().map(|o| base + o).collect();
                            let got = sub2_multi_size(&w, base, pat).unwrap();
                            assert_eq!(got.size, oracle_h2_subseqs(&w, &idx), "{w} {base} {pat:?}");
                            if pat.len() == 3 {
                                for a in 0..3 {
                                    for b in a + 1..3 {
                                        let x = delete_from_run(&w, idx[a]).unwrap();
                                        let y = delete_from_run(&w, idx[b]).unwrap();
                                        assert!(got.size <= sub2_pair_size(&x, &y).unwrap());
                                    }
                                }
                            }
                        }
                    }
                    for base in 1..=rho.saturating_sub(5) {
                        let idx = [base, base + 2, base + 5];
                        assert_eq!(oracle_h2_subseqs(&w, &idx), 0);
                        assert!(sub2_multi_size(&w, base, &[0, 2, 5]).unwrap().vanishes_by_span);
                    }
                }
            }
        }
    }

    #[test]
    fn ins1_hamming_examples() {
        let w = s("0011", 2);
        assert_eq!(ins1_hamming(&w, 0, -1).unwrap(), 1);
        // position 3 lies in run 2
        assert_eq!(ins1_hamming(&w, 0, 3).unwrap(), 2);
        assert_eq!(ins1_hamming(&w, 3, 3).unwrap(), 0);
        assert!(matches!(ins1_hamming(&w, 0, 5), Err(Error::Index { .. })));
    }

    #[test]
    fn ins1_hamming_matches_direct_distance() {
        for (q, max_n) in [(2u32, 8usize), (3, 6), (4, 4)] {
            for n in 1..=max_n {
                for w in Sequence::all(n, q).unwrap() {
                    let (lo, hi) = insertion_index_range(&w);
                    let vars: Vec<_> = (lo..=hi).map(|k| insertion_variant(&w, k).unwrap()).collect();
                    for a in lo..=hi {
                        for b in lo..=hi {
                            let d = hamming_distance(&vars[(a - lo) as usize], &vars[(b - lo) as usize]).unwrap();
                            assert_eq!(ins1_hamming(&w, a, b).unwrap(), d as u64, "{w} {a} {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sub1_pair_examples() {
        assert_eq!(sub1_pair_size(&s("0123", 4), &s("0133", 4)).unwrap(), 4);
        assert_eq!(sub1_pair_size(&s("0123", 4), &s("1133", 4)).unwrap(), 2);
        assert_eq!(sub1_pair_size(&s("0123", 4), &s("1033", 4)).unwrap(), 0);
        for (q, n) in [(2u32, 5usize), (3, 4)] {
            for x in Sequence::all(n, q).unwrap() {
                let counts = Oracle::default().overlap_counts(&x, Sphere::Hamming(1)).unwrap();
                for y in Sequence::all(n, q).unwrap() {
                    let expected = counts.get(y.symbols()).copied().unwrap_or(0) as u64;
                    assert_eq!(sub1_pair_size(&x, &y).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn sub1_prefix_union_examples() {
        let w = s("0011", 2);
        assert_eq!(sub1_prefix_union_size(&w, 0).unwrap(), 2);
        assert_eq!(sub1_prefix_union_size(&w, 2).unwrap(), 4);
        assert_eq!(sub1_prefix_union_size(&w, -1).unwrap(), 0);
        assert!(sub1_prefix_union_size(&w, 5).is_err());
    }

    #[test]
    fn sub1_prefix_union_matches_oracle() {
        for (q, max_n) in [(2u32, 7usize), (3, 5)] {
            for n in 1..=max_n {
                for w in Sequence::all(n, q).unwrap() {
                    let (lo, hi) = insertion_index_range(&w);
                    let balls: Vec<_> =
                        (lo..=hi).map(|k| hamming_ball(&insertion_variant(&w, k).unwrap(), 1).unwrap()).collect();
                    for k in lo + 1..=hi {
                        let prior = union(&balls[..(k - lo) as usize]).unwrap();
                        let expected =
                            intersection(&[balls[(k - lo) as usize].clone(), prior]).unwrap().len() as u64;
                        assert_eq!(sub1_prefix_union_size(&w, k).unwrap(), expected, "{w} {k}");
                    }
                }
            }
        }
    }
}
