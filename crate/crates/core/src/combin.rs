//! Small exact-integer helpers shared by the closed forms.

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// `C(n, k)` as a signed value, for use inside alternating sums.
pub fn binom_i(n: i128, k: i128) -> Result<i128> {
    if n < 0 || k < 0 || k > n {
        return Ok(0);
    }
    let b = binom(n as u64, k as u64)?;
    i128::try_from(b).map_err(|_| Error::Overflow("binomial coefficient"))
}

pub fn pow_i(base: i128, exp: u32) -> Result<i128> {
    base.checked_pow(exp).ok_or(Error::Overflow("power"))
}

/// Narrow a signed intermediate to a size.
pub fn to_size(v: i128, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Checked accumulation of signed terms.
pub(crate) struct Acc {
    value: i128,
    what: &'static str,
}

impl Acc {
    pub(crate) fn new(what: &'static str) -> Self {
        Acc { value: 0, what }
    }

    pub(crate) fn add(&mut self, term: i128) -> Result<()> {
        self.value = self.value.checked_add(term).ok_or(Error::Overflow(self.what))?;
        Ok(())
    }

    pub(crate) fn mul3(&self, a: i128, b: i128, c: i128) -> Result<i128> {
        a.checked_mul(b)
            .and_then(|x| x.checked_mul(c))
            .ok_or(Error::Overflow(self.what))
    }

    pub(crate) fn finish(self) -> Result<u64> {
        to_size(self.value, self.what)
    }
}

/// Size of the Hamming ball of radius `t` in `Σ_q^n`.
pub fn hamming_ball_size(n: usize, q: u8, t: usize) -> Result<u64> {
    let mut acc = Acc::new("hamming ball size");
    for i in 0..=t.min(n) {
        let term = acc.mul3(binom_i(n as i128, i as i128)?, pow_i(i128::from(q) - 1, i as u32)?, 1)?;
        acc.add(term)?;
    }
    acc.finish()
}

/// Size of the insertion sphere of radius `t` around any word of length `n`.
pub fn insertion_sphere_size(n: usize, q: u8, t: usize) -> Result<u64> {
    let mut acc = Acc::new("insertion sphere size");
    for i in 0..=t {
        let term = acc.mul3(
            binom_i((n + t) as i128, i as i128)?,
            pow_i(i128::from(q) - 1, i as u32)?,
            1,
        )?;
        acc.add(term)?;
    }
    acc.finish()
}
