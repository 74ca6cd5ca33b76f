//! Pair classification for equal-length words and the single-edit
//! intersection sizes that follow from it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::{check_same_shape, delete_from_run, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairKind {
    Equal,
    HammingOne,
    TypeA,
    TypeB,
    Other,
}

/// The decomposition `x = u v w`, `y = u v' w` with `u` the longest common
/// prefix and `w` the longest common suffix of what remains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub prefix_len: usize,
    pub v: Vec<u8>,
    pub v_prime: Vec<u8>,
    pub suffix_len: usize,
}

impl Witness {
    /// `v_{[2,|v|]} = v'_{[1,|v|-1]}`.
    pub fn left_shift(&self) -> bool {
        let m = self.v.len();
        m >= 1 && self.v[1..] == self.v_prime[..m - 1]
    }

    /// `v_{[1,|v|-1]} = v'_{[2,|v|]}`.
    pub fn right_shift(&self) -> bool {
        let m = self.v.len();
        m >= 1 && self.v[..m - 1] == self.v_prime[1..]
    }

    fn swapped(&self) -> Witness {
        Witness {
            prefix_len: self.prefix_len,
            v: self.v_prime.clone(),
            v_prime: self.v.clone(),
            suffix_len: self.suffix_len,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRelation {
    pub kind: PairKind,
    /// Absent only for equal words.
    pub witness: Option<Witness>,
}

impl PairRelation {
    pub fn swapped(&self) -> PairRelation {
        PairRelation { kind: self.kind, witness: self.witness.as_ref().map(Witness::swapped) }
    }
}

fn witness(x: &[u8], y: &[u8]) -> Option<Witness> {
    let n = x.len();
    let a = x.iter().zip(y).position(|(p, q)| p != q)?;
    let mut b = n - 1;
    while x[b] == y[b] {
        b -= 1;
    }
    Some(Witness {
        prefix_len: a,
        v: x[a..=b].to_vec(),
        v_prime: y[a..=b].to_vec(),
        suffix_len: n - 1 - b,
    })
}

fn kind_of(x: &[u8], y: &[u8], w: &Option<Witness>) -> PairKind {
    let Some(w) = w else { return PairKind::Equal };
    if x.iter().zip(y).filter(|(p, q)| p != q).count() == 1 {
        return PairKind::HammingOne;
    }
    match (w.left_shift(), w.right_shift()) {
        (true, true) => PairKind::TypeA,
        (true, false) | (false, true) => PairKind::TypeB,
        (false, false) => PairKind::Other,
    }
}

pub(crate) fn classify_raw(x: &[u8], y: &[u8]) -> PairKind {
    kind_of(x, y, &witness(x, y))
}

/// Classify `(x, y)` with precedence Equal, HammingOne, TypeA, TypeB, Other.
pub fn classify_pair(x: &Sequence, y: &Sequence) -> Result<PairRelation> {
    check_same_shape(x, y)?;
    let w = witness(x.symbols(), y.symbols());
    Ok(PairRelation { kind: kind_of(x.symbols(), y.symbols(), &w), witness: w })
}

/// Which single-edit sphere to intersect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingleEdit {
    Deletion1,
    Insertion1,
}

/// `|D_1(x) ∩ D_1(y)|` or `|I_1(x) ∩ I_1(y)|` for distinct `x`, `y`.
pub fn single_intersection_size(x: &Sequence, y: &Sequence, edit: SingleEdit) -> Result<u64> {
    let rel = classify_pair(x, y)?;
    Ok(match rel.kind {
        PairKind::Equal => return Err(Error::DegeneratePair),
        PairKind::HammingOne => match edit {
            SingleEdit::Deletion1 => 1,
            SingleEdit::Insertion1 => 2,
        },
        PairKind::TypeA => 2,
        PairKind::TypeB => 1,
        PairKind::Other => 0,
    })
}

/// `|I_1(x) ∩ I_1(y)|` for distinct equal-length raw words.
pub(crate) fn i1_overlap_raw(x: &[u8], y: &[u8]) -> u64 {
    match classify_raw(x, y) {
        PairKind::Equal | PairKind::HammingOne | PairKind::TypeA => 2,
        PairKind::TypeB => 1,
        PairKind::Other => 0,
    }
}

pub(crate) fn check_run_pair(seq: &Sequence, i: usize, j: usize) -> Result<()> {
    let rho = seq.rho() as i64;
    if i == 0 || i as i64 > rho {
        return Err(Error::Index { index: i as i64, min: 1, max: rho });
    }
    if j <= i || j as i64 > rho {
        return Err(Error::Index { index: j as i64, min: i as i64 + 1, max: rho });
    }
    Ok(())
}

/// Relation between `ω^(i)` and `ω^(j)` read off the run structure.
pub fn classify_subsequence_pair(seq: &Sequence, i: usize, j: usize) -> Result<PairRelation> {
    check_run_pair(seq, i, j)?;
    let runs = seq.runs()?;
    let kind = if j == i + 1 {
        PairKind::HammingOne
    } else {
        let unit_middle = (i + 1..j).all(|k| runs.length(k) == 1);
        let alternating = (i..=j - 2).all(|k| runs.symbol(k) == runs.symbol(k + 2));
        if unit_middle && alternating {
            PairKind::TypeA
        } else {
            PairKind::TypeB
        }
    };
    let a = delete_from_run(seq, i)?;
    let b = delete_from_run(seq, j)?;
    Ok(PairRelation { kind, witness: witness(a.symbols(), b.symbols()) })
}
