//! F-factorials, F-nomials and multi F-nomials.
//!
//! Every quotient is an exact big-integer division whose remainder is
//! checked. A non-zero remainder surfaces as [`Error::InexactDivision`]
//! rather than being truncated, so a non-admissible sequence can never
//! produce a silently wrong coefficient.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::fseq::FSequence;
use crate::{Error, Result};

/// Key: total plus the parts sorted ascending with zeros removed. Multi
/// F-nomials are symmetric in their parts and `0_F! = 1`, so every
/// reordering and zero-padding of a multi-index shares one entry.
type MemoKey = (usize, Vec<usize>);

/// Memo table for multi F-nomials, owned by an [`FSequence`].
#[derive(Default)]
pub(crate) struct Memo {
    multi: RwLock<HashMap<MemoKey, BigInt>>,
}

impl Memo {
    fn get(&self, key: &MemoKey) -> Option<BigInt> {
        self.multi.read().unwrap().get(key).cloned()
    }

    fn insert(&self, key: MemoKey, value: BigInt) {
        self.multi.write().unwrap().entry(key).or_insert(value);
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.multi.read().unwrap().len()
    }
}

/// `n_F! = n_F (n-1)_F ... 1_F`; the empty product `0_F! = 1`.
pub fn f_factorial(seq: &FSequence, n: usize) -> Result<BigInt> {
    seq.factorial(n)
}

/// `n_F (n-1)_F ... (n-k+1)_F`, the product of `k` terms descending from `n_F`.
pub fn falling_factorial(seq: &FSequence, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::InvalidParts {
            parts: vec![n, k],
            reason: format!("falling factorial needs k <= n, got n = {n}, k = {k}"),
        });
    }
    (n - k + 1..=n).try_fold(BigInt::one(), |acc, i| Ok(acc * seq.value(i)?))
}

fn exact_div(numer: BigInt, denom: BigInt, n: usize, parts: &[usize]) -> Result<BigInt> {
    if denom.is_zero() {
        return Err(Error::ZeroDenominator {
            n,
            parts: parts.to_vec(),
        });
    }
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            n,
            parts: parts.to_vec(),
            remainder: r,
        });
    }
    Ok(q)
}

/// `C(n,k)_F = n_F! / (k_F! (n-k)_F!)`, and 0 for `k > n`.
pub fn fnomial(seq: &FSequence, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::zero());
    }
    if k == 0 || k == n {
        return Ok(BigInt::one());
    }
    let denom = f_factorial(seq, k)? * f_factorial(seq, n - k)?;
    exact_div(f_factorial(seq, n)?, denom, n, &[k, n - k])
}

/// `C(n,k)_F` through the falling-factorial form `n_F^(k) / k_F!`.
pub fn fnomial_via_falling(seq: &FSequence, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::zero());
    }
    exact_div(
        falling_factorial(seq, n, k)?,
        f_factorial(seq, k)?,
        n,
        &[k, n - k],
    )
}

/// `n_F! / ((k_1)_F! ... (k_s)_F!)` when the parts sum to `n`, otherwise 0.
/// Zero parts contribute `0_F! = 1`.
pub fn multi_fnomial(seq: &FSequence, n: usize, parts: &[usize]) -> Result<BigInt> {
    if parts.iter().sum::<usize>() != n {
        return Ok(BigInt::zero());
    }
    let mut key_parts: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    key_parts.sort_unstable();
    let key = (n, key_parts);
    if let Some(v) = seq.memo.get(&key) {
        return Ok(v);
    }
    let denom = key.1.iter().try_fold(BigInt::one(), |acc, &p| {
        Ok::<_, Error>(acc * f_factorial(seq, p)?)
    })?;
    let value = exact_div(f_factorial(seq, n)?, denom, n, parts)?;
    seq.memo.insert(key, value.clone());
    Ok(value)
}

/// [`multi_fnomial`] without any cache: the factorials are rebuilt from raw
/// sequence values on every call.
pub fn multi_fnomial_uncached(seq: &FSequence, n: usize, parts: &[usize]) -> Result<BigInt> {
    if parts.iter().sum::<usize>() != n {
        return Ok(BigInt::zero());
    }
    let product = |m: usize| -> Result<BigInt> {
        (1..=m).try_fold(BigInt::one(), |acc, i| Ok(acc * seq.value(i)?))
    };
    let mut denom = BigInt::one();
    for &p in parts {
        denom *= product(p)?;
    }
    exact_div(product(n)?, denom, n, parts)
}
