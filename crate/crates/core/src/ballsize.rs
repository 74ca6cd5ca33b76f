//! Closed-form error-ball sizes and the dispatcher that picks between them
//! and the oracle.

use serde::{Deserialize, Serialize};

use crate::combin::{binom_i, hamming_ball_size, insertion_sphere_size, pow_i, Acc};
use crate::error::{Error, Result};
use crate::intersect::subseq_pair_i2_unchecked;
use crate::intersect::i1_size;
use crate::oracle::{error_ball_size, DEFAULT_BUDGET};
use crate::seqcore::{ChannelSpec, Sequence};
use crate::Method;

/// Pair and triple counts among the 1-subsequences of a word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCounts {
    /// Pairs whose insertion 2-spheres meet in `2|I_1(ω)| - 2` words.
    pub a: u64,
    /// Pairs meeting in `|I_1(ω)| + 2` words.
    pub b: u64,
    /// Pairs meeting in `|I_1(ω)| + 1` words.
    pub c: u64,
    /// Triples meeting in `|I_1(ω)| + 1` words.
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub rho: usize,
    pub psi: usize,
    pub psi_prime: usize,
    pub counts: Option<PairCounts>,
}

impl Diagnostics {
    fn of(seq: &Sequence) -> Self {
        match seq.segments() {
            Ok(p) => Diagnostics { rho: seq.rho(), psi: p.psi(), psi_prime: p.psi_prime(), counts: None },
            Err(_) => Diagnostics { rho: 0, psi: 0, psi_prime: 0, counts: None },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallReport {
    pub spec: ChannelSpec,
    pub size: u64,
    pub method: Method,
    /// Closed-form value, when one was evaluated.
    pub formula_size: Option<u64>,
    /// Enumerated value, when the oracle ran.
    pub oracle_size: Option<u64>,
    pub diagnostics: Diagnostics,
}

impl BallReport {
    /// `Some(formula == oracle)` once both are known.
    pub fn matches(&self) -> Option<bool> {
        Some(self.formula_size? == self.oracle_size?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    FormulaPreferred,
    OracleOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub mode: EvalMode,
    /// Recompute formula paths through the oracle as well.
    pub check: bool,
    pub budget: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { mode: EvalMode::FormulaPreferred, check: false, budget: DEFAULT_BUDGET }
    }
}

/// `(A, B, C, D)` for `ω`, `n ≥ 2`.
pub fn count_abcd(seq: &Sequence) -> Result<PairCounts> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::Precondition(format!("pair counts need n ≥ 2, got n={n}")));
    }
    let profile = seq.segments()?;
    let c2 = |s: usize| binom_i(s as i128, 2);
    let c3 = |s: usize| binom_i(s as i128, 3);

    let mut a = Acc::new("A(ω)");
    for s in profile.lengths() {
        a.add(c2(s)?)?;
    }

    let modified = profile.modified();
    let mut d = Acc::new("D(ω)");
    for &s in &modified {
        d.add(c3(s)?)?;
    }
    for w in modified.windows(2) {
        d.add(d.mul3(w[0] as i128 - 1, w[1] as i128 - 1, 1)?)?;
    }

    let i1 = i1_size(n, seq.q())?;
    let (mut b, mut c) = (0u64, 0u64);
    let rho = seq.rho();
    for i in 1..=rho {
        for j in i + 1..=rho {
            let v = subseq_pair_i2_unchecked(seq, i, j)?;
            if v == i1 + 2 && v != 2 * i1 - 2 {
                b += 1;
            } else if v == i1 + 1 && v != 2 * i1 - 2 {
                c += 1;
            }
        }
    }
    Ok(PairCounts { a: a.finish()?, b, c, d: d.finish()? })
}

/// `B` and `C` from the segment profile of a binary word, `n ≥ 3`.
pub fn binary_bc(seq: &Sequence) -> Result<(u64, u64)> {
    if seq.q() != 2 || seq.len() < 3 {
        return Err(Error::Precondition("segment-profile counts need q = 2 and n ≥ 3".into()));
    }
    let s = seq.segments()?.lengths();
    let psi = s.len();
    let b: usize = s.windows(2).map(|w| (w[0] - 1) * (w[1] - 1)).sum();
    let mut c = 0usize;
    for i in 0..psi {
        for j in i + 2..psi {
            let between = &s[i + 1..j];
            let all3 = between.iter().all(|&x| x == 3);
            let all1 = between.iter().all(|&x| x == 1);
            c += (s[i] - 1) * (usize::from(all3) + usize::from(all1)) * (s[j] - 1);
        }
    }
    Ok((b as u64, c as u64))
}

fn qm(seq: &Sequence) -> i128 {
    i128::from(seq.q()) - 1
}

/// `|B_{0,1,2}(ω)|` from the closed form, any `n ≥ 2`.
pub fn b012_formula(seq: &Sequence) -> Result<(u64, PairCounts)> {
    let counts = count_abcd(seq)?;
    let n = seq.len() as i128;
    let rho = seq.rho() as i128;
    let qm = qm(seq);
    let (a, b, c, d) = (counts.a as i128, counts.b as i128, counts.c as i128, counts.d as i128);
    let mut acc = Acc::new("|B_{0,1,2}|");
    let lead = acc.mul3(rho, binom_i(n + 1, 2)?, qm * qm)?;
    acc.add(lead)?;
    let i1 = 1 + (n + 1) * qm;
    acc.add(-acc.mul3(a - 1, i1, 1)?)?;
    acc.add(2 * a - 2 * b - c + d)?;
    Ok((acc.finish()?, counts))
}

/// `|B_{2,1,0}(ω)|` from the run-count case split, any `n ≥ 1`.
pub fn b210_formula(seq: &Sequence) -> Result<u64> {
    let n = seq.len() as i128;
    if n < 1 {
        return Err(Error::Range { t: 1, n: 0 });
    }
    let rho = seq.rho() as i128;
    let qm = qm(seq);
    let q2 = qm * qm;
    let mut acc = Acc::new("|B_{2,1,0}|");
    match rho {
        1 => {
            acc.add(1 + (n - 1) * qm)?;
            acc.add(acc.mul3(binom_i(n - 1, 2)?, q2, 1)?)?;
        }
        2 => {
            acc.add(1 + (n - 1) * qm)?;
            acc.add(acc.mul3((n - 2) * (n - 2), q2, 1)?)?;
        }
        3 => {
            acc.add(1 + 2 * qm)?;
            acc.add(acc.mul3((3 * n - 7) * (n - 2) / 2, q2, 1)?)?;
        }
        4 => {
            acc.add(2 - (n - 4) * qm)?;
            acc.add(acc.mul3(2 * n * n - 9 * n + 10, q2, 1)?)?;
        }
        _ => {
            acc.add(2)?;
            acc.add(acc.mul3((3 - rho) * n + 2 * rho - 4, qm, 1)?)?;
            let quad = acc.mul3(rho, binom_i(n - 1, 2)?, 1)? - (rho - 1) * (n - 2);
            acc.add(acc.mul3(quad, q2, 1)?)?;
        }
    }
    acc.finish()
}

/// `|B_{1,0,1}(ω)|` from the runs profile, `n ≥ 1`.
pub fn b101_formula(seq: &Sequence) -> Result<u64> {
    let n = seq.len() as i128;
    let runs = seq.runs()?;
    let qm = qm(seq);
    let mut acc = Acc::new("|B_{1,0,1}|");
    acc.add(1)?;
    acc.add(acc.mul3(n + 1, qm, 1)?)?;
    let mut quad = n * n;
    for l in runs.lengths() {
        quad -= binom_i(l as i128, 2)?;
    }
    acc.add(acc.mul3(quad, qm, qm)?)?;
    acc.finish()
}

/// `|B_{0,1,1}(ω)|` from runs and segments, `n ≥ 1`.
pub fn b011_formula(seq: &Sequence) -> Result<u64> {
    let n = seq.len() as i128;
    let rho = seq.rho() as i128;
    let profile = seq.segments()?;
    let mut acc = Acc::new("|B_{0,1,1}|");
    acc.add(acc.mul3(rho, n * qm(seq) - 1, 1)?)?;
    acc.add(2)?;
    for s in profile.lengths() {
        acc.add(-binom_i(s as i128 - 1, 2)?)?;
    }
    acc.finish()
}

fn oracle_report(seq: &Sequence, spec: ChannelSpec, budget: u64, diagnostics: Diagnostics) -> Result<BallReport> {
    let size = error_ball_size(seq, spec, budget)?;
    Ok(BallReport { spec, size, method: Method::Oracle, formula_size: None, oracle_size: Some(size), diagnostics })
}

fn formula_report(spec: ChannelSpec, size: u64, diagnostics: Diagnostics) -> BallReport {
    BallReport { spec, size, method: Method::Formula, formula_size: Some(size), oracle_size: None, diagnostics }
}

/// Smallest `n` at which each closed form is reported as such.
pub fn formula_threshold(spec: ChannelSpec) -> Option<usize> {
    match (spec.t1, spec.t2, spec.t3) {
        (0, 1, 2) | (2, 1, 0) => Some(5),
        (1, 0, 1) => Some(1),
        (0, 1, 1) => Some(2),
        (_, 0, 0) | (0, 0, _) => Some(0),
        (0, 1, 0) => Some(1),
        _ => None,
    }
}

fn closed_form(seq: &Sequence, spec: ChannelSpec, diag: &mut Diagnostics) -> Result<u64> {
    let n = seq.len();
    let q = seq.q();
    match (spec.t1, spec.t2, spec.t3) {
        (0, 1, 2) => {
            let (size, counts) = b012_formula(seq)?;
            diag.counts = Some(counts);
            Ok(size)
        }
        (2, 1, 0) => b210_formula(seq),
        (1, 0, 1) => b101_formula(seq),
        (0, 1, 1) => b011_formula(seq),
        (t, 0, 0) => hamming_ball_size(n, q, t),
        (0, 0, t) => insertion_sphere_size(n, q, t),
        (0, 1, 0) => Ok(seq.rho() as u64),
        _ => Err(Error::InvalidChannel(format!("no closed form for ({spec})"))),
    }
}

/// Size of `B_{t1,t2,t3}(ω)` with full control over routing and checking.
pub fn evaluate(seq: &Sequence, spec: ChannelSpec, opts: EvalOptions) -> Result<BallReport> {
    spec.validate_for(seq.len())?;
    let mut diag = Diagnostics::of(seq);
    let use_formula = opts.mode == EvalMode::FormulaPreferred
        && formula_threshold(spec).is_some_and(|min| seq.len() >= min);
    if !use_formula {
        return oracle_report(seq, spec, opts.budget, diag);
    }
    let size = closed_form(seq, spec, &mut diag)?;
    let mut report = formula_report(spec, size, diag);
    if opts.check {
        report.oracle_size = Some(error_ball_size(seq, spec, opts.budget)?);
    }
    Ok(report)
}

/// Dispatch over the closed forms, falling back to enumeration.
pub fn size_generic(seq: &Sequence, spec: ChannelSpec, mode: EvalMode) -> Result<BallReport> {
    evaluate(seq, spec, EvalOptions { mode, ..EvalOptions::default() })
}

pub fn size_b012(seq: &Sequence) -> Result<BallReport> {
    size_generic(seq, ChannelSpec::new(0, 1, 2), EvalMode::FormulaPreferred)
}

pub fn size_b210(seq: &Sequence) -> Result<BallReport> {
    size_generic(seq, ChannelSpec::new(2, 1, 0), EvalMode::FormulaPreferred)
}

pub fn size_b101(seq: &Sequence) -> Result<BallReport> {
    size_generic(seq, ChannelSpec::new(1, 0, 1), EvalMode::FormulaPreferred)
}

pub fn size_b011(seq: &Sequence) -> Result<BallReport> {
    size_generic(seq, ChannelSpec::new(0, 1, 1), EvalMode::FormulaPreferred)
}

/// The four channels with dedicated closed forms.
pub const CLOSED_FORM_CHANNELS: [ChannelSpec; 4] = [
    ChannelSpec::new(0, 1, 2),
    ChannelSpec::new(2, 1, 0),
    ChannelSpec::new(1, 0, 1),
    ChannelSpec::new(0, 1, 1),
];

/// `|B_{0,1,2}(ω)|` as `c2·(q-1)² + c1·(q-1) + c0`, valid while the pair
/// counts do not depend on `q` (true for words over `{0, 1}`).
pub fn b012_coefficients(seq: &Sequence) -> Result<[i128; 3]> {
    let counts = count_abcd(seq)?;
    let n = seq.len() as i128;
    let rho = seq.rho() as i128;
    let (a, b, c, d) = (counts.a as i128, counts.b as i128, counts.c as i128, counts.d as i128);
    let c2 = rho * binom_i(n + 1, 2)?;
    let c1 = -(a - 1) * (n + 1);
    let c0 = -(a - 1) + 2 * a - 2 * b - c + d;
    Ok([c2, c1, c0])
}

/// Evaluate `c2·x² + c1·x + c0`.
pub fn eval_quadratic(coeffs: [i128; 3], x: i128) -> Result<i128> {
    pow_i(x, 2)?
        .checked_mul(coeffs[0])
        .and_then(|v| v.checked_add(coeffs[1].checked_mul(x)?))
        .and_then(|v| v.checked_add(coeffs[2]))
        .ok_or(Error::Overflow("quadratic"))
}
