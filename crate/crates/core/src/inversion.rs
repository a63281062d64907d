//! Inverse of the F-nomial matrix.
//!
//! Two independent routes produce the entries `C(n,k)_F^{-1}`:
//!
//! * [`fnomial_inverse_direct`] folds a signed sum of multi F-nomials over
//!   all compositions of `n - k`, with no division beyond the coefficients
//!   themselves;
//! * [`invert_unitriangular`] runs forward substitution on the matrix from
//!   [`fnomial_matrix`].
//!
//! Row and column 0 are included, so `C(n,0)_F = 1` and the inverse has
//! entries `(n, 0)` as well.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeffs::{fnomial, multi_fnomial};
use crate::compositions::all_compositions;
use crate::fseq::FSequence;
use crate::report::{json_int, VerificationReport};
use crate::{Error, Result};

/// Square lower-triangular big-integer matrix indexed `(n, k)`, `0 <= k <= n`.
/// Only the lower triangle is stored; entries above the diagonal are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl TriMatrix {
    /// Row `n` must hold exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::MalformedMatrix {
                    row: n,
                    len: row.len(),
                    expected: n + 1,
                });
            }
        }
        Ok(TriMatrix { rows })
    }

    pub fn identity(order: usize) -> Self {
        let rows = (0..order)
            .map(|n| {
                let mut row = vec![BigInt::zero(); n + 1];
                row[n] = BigInt::one();
                row
            })
            .collect();
        TriMatrix { rows }
    }

    /// Number of rows, `N + 1` for a matrix indexed up to `N`.
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Stored entry, or `None` above the diagonal or outside the matrix.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.rows.get(n)?.get(k)
    }

    /// Entry `(n, k)` with the implicit zeros above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        self.get(n, k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| row[n].is_one())
    }

    /// Product `self * other` of two lower-triangular matrices of the same order.
    pub fn mul(&self, other: &TriMatrix) -> TriMatrix {
        assert_eq!(self.order(), other.order(), "matrix orders differ");
        let rows = (0..self.order())
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|j| &self.rows[n][j] * &other.rows[j][k]).sum())
                    .collect()
            })
            .collect();
        TriMatrix { rows }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(k, v)| if k == n { v.is_one() } else { v.is_zero() })
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|row| serde_json::Value::Array(row.iter().map(json_int).collect()))
                .collect(),
        )
    }

    /// Compact JSON array of rows, row `n` holding its `n + 1` stored entries.
    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// One line per row with `order` cells; cells above the diagonal are empty.
    pub fn to_csv(&self) -> String {
        let order = self.order();
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = (0..order)
                .map(|k| row.get(k).map(ToString::to_string).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Lower triangle, space separated, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

/// `C(n,k)_F` for `0 <= k <= n <= bound`.
pub fn fnomial_matrix(seq: &FSequence, bound: usize) -> Result<TriMatrix> {
    let rows = (0..=bound)
        .map(|n| {
            (0..=n)
                .map(|k| fnomial(seq, n, k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TriMatrix { rows })
}

/// Exact inverse of a unit lower-triangular matrix by forward substitution.
///
/// Column by column, `X[n][k] = -sum_{j=k}^{n-1} M[n][j] X[j][k]`. The unit
/// diagonal means no division ever happens, so the result stays integral.
#[allow(clippy::needless_range_loop)]
pub fn invert_unitriangular(matrix: &TriMatrix) -> Result<TriMatrix> {
    for (n, row) in matrix.rows.iter().enumerate() {
        if !row[n].is_one() {
            return Err(Error::NonUnitDiagonal {
                index: n,
                value: row[n].clone(),
            });
        }
    }
    let order = matrix.order();
    let mut inv: Vec<Vec<BigInt>> = (0..order).map(|n| vec![BigInt::zero(); n + 1]).collect();
    for k in 0..order {
        inv[k][k] = BigInt::one();
        for n in k + 1..order {
            let mut acc = BigInt::zero();
            for j in k..n {
                acc += &matrix.rows[n][j] * &inv[j][k];
            }
            inv[n][k] = -acc;
        }
    }
    Ok(TriMatrix { rows: inv })
}

/// `C(n,k)_F^{-1}` as the signed composition sum
///
/// ```text
/// sum_{s=1}^{n-k} (-1)^s  sum_{k_1+...+k_s = n-k, k_i >= 1}  C(n; k, k_1, ..., k_s)_F
/// ```
///
/// with `C(n,n)_F^{-1} = 1` and 0 above the diagonal. The sign of each
/// term is taken from its composition's length in a single pass.
pub fn fnomial_inverse_direct(seq: &FSequence, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::zero());
    }
    if k == n {
        return Ok(BigInt::one());
    }
    let mut index = Vec::with_capacity(n - k + 1);
    let mut total = BigInt::zero();
    for composition in all_compositions(n - k) {
        index.clear();
        index.push(k);
        index.extend_from_slice(composition.parts());
        let term = multi_fnomial(seq, n, &index)?;
        if composition.len() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// The factored form `C(n,k)_F * sum_s (-1)^s sum C(n-k; k_1, ..., k_s)_F`
/// of the same inverse entry.
pub fn fnomial_inverse_factored(seq: &FSequence, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::zero());
    }
    if k == n {
        return Ok(BigInt::one());
    }
    let m = n - k;
    let mut inner = BigInt::zero();
    for composition in all_compositions(m) {
        let term = multi_fnomial(seq, m, composition.parts())?;
        if composition.len() % 2 == 0 {
            inner += term;
        } else {
            inner -= term;
        }
    }
    Ok(fnomial(seq, n, k)? * inner)
}

/// Inverse matrix up to `bound` from [`fnomial_inverse_direct`]. Entries are
/// computed in parallel; the result does not depend on evaluation order.
pub fn inverse_matrix_direct(seq: &FSequence, bound: usize) -> Result<TriMatrix> {
    let rows = (0..=bound)
        .into_par_iter()
        .map(|n| {
            (0..=n)
                .into_par_iter()
                .map(|k| fnomial_inverse_direct(seq, n, k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TriMatrix { rows })
}

/// Inverse matrix up to `bound` by forward substitution.
pub fn inverse_matrix_oracle(seq: &FSequence, bound: usize) -> Result<TriMatrix> {
    invert_unitriangular(&fnomial_matrix(seq, bound)?)
}

/// A row/column where the delta-convolution sum is wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaFailure {
    pub n: usize,
    pub k: usize,
    pub sum: BigInt,
}

/// Checks `sum_{s=k}^{n} C(n,s)_F C(s,k)_F^{-1} = delta_{n,k}` for all
/// `0 <= k <= n <= bound`, with the inverse taken from the composition sum.
pub fn verify_delta_convolution(
    seq: &FSequence,
    bound: usize,
) -> Result<VerificationReport<DeltaFailure>> {
    let forward = fnomial_matrix(seq, bound)?;
    let inverse = inverse_matrix_direct(seq, bound)?;
    let mut checked = 0;
    for n in 0..=bound {
        for k in 0..=n {
            let sum: BigInt = (k..=n)
                .map(|s| forward.entry(n, s) * inverse.entry(s, k))
                .sum();
            checked += 1;
            let expected = if n == k {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if sum != expected {
                return Ok(VerificationReport {
                    checked,
                    first_failure: Some(DeltaFailure { n, k, sum }),
                });
            }
        }
    }
    Ok(VerificationReport {
        checked,
        first_failure: None,
    })
}
