//! The polynomial sequence `Phi_n(x) = sum_k C(n,k)_F^{-1} x^k` and the
//! change of basis between `{x^n}` and `{Phi_n}`.
//!
//! Because the coefficient matrices are mutually inverse,
//! `x^n = sum_k C(n,k)_F Phi_k(x)`. For the natural numbers
//! `Phi_n = (x - 1)^n`; for Gaussian q-integers `Phi_n = prod_{s<n} (x - q^s)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeffs::fnomial;
use crate::fseq::FSequence;
use crate::inversion::{fnomial_inverse_direct, inverse_matrix_direct, inverse_matrix_oracle};
use crate::report::{json_int, VerificationReport};
use crate::Result;

/// Dense polynomial in one variable; `coeffs[i]` is the coefficient of `x^i`.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Polynomial { coeffs }
    }

    /// Expands `prod (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a BigInt>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| {
            acc * Polynomial::new(vec![-r.clone(), BigInt::one()])
        })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// JSON array of coefficients, lowest power first.
    pub fn to_json(&self) -> String {
        let coeffs = if self.is_zero() {
            vec![BigInt::zero()]
        } else {
            self.coeffs.clone()
        };
        serde_json::Value::Array(coeffs.iter().map(json_int).collect()).to_string()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

/// Descending powers, e.g. `x^3 - 2x^2 + 1`. Zero terms are omitted and unit
/// coefficients are implicit.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if power == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        Ok(())
    }
}

/// Which computation supplies the inverse coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InversePath {
    /// Forward substitution on the F-nomial matrix.
    #[default]
    Oracle,
    /// The signed composition sum.
    Direct,
}

/// `Phi_n(x)`; monic of degree `n`, `Phi_0 = 1`.
pub fn phi_polynomial(seq: &FSequence, n: usize, path: InversePath) -> Result<Polynomial> {
    match path {
        InversePath::Oracle => {
            let inv = inverse_matrix_oracle(seq, n)?;
            Ok(Polynomial::new(inv.row(n).to_vec()))
        }
        InversePath::Direct => {
            let coeffs = (0..=n)
                .map(|k| fnomial_inverse_direct(seq, n, k))
                .collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::new(coeffs))
        }
    }
}

/// `Phi_0 ..= Phi_bound` from a single matrix inversion.
pub fn phi_table(seq: &FSequence, bound: usize, path: InversePath) -> Result<Vec<Polynomial>> {
    let inv = match path {
        InversePath::Oracle => inverse_matrix_oracle(seq, bound)?,
        InversePath::Direct => inverse_matrix_direct(seq, bound)?,
    };
    Ok(inv
        .rows()
        .iter()
        .map(|row| Polynomial::new(row.clone()))
        .collect())
}

/// Coefficients `(k, C(n,k)_F)` of `x^n` in the `Phi` basis.
pub fn expand_monomial(seq: &FSequence, n: usize) -> Result<Vec<(usize, BigInt)>> {
    (0..=n).map(|k| Ok((k, fnomial(seq, n, k)?))).collect()
}

/// Rewrites `p(x) = sum a_n x^n` as `sum b_k Phi_k(x)`; returns `b`, lowest index first.
pub fn to_phi_basis(seq: &FSequence, p: &Polynomial) -> Result<Vec<BigInt>> {
    let mut b = vec![BigInt::zero(); p.coeffs().len()];
    for (n, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, c) in expand_monomial(seq, n)? {
            b[k] += a * c;
        }
    }
    Ok(b)
}

/// Evaluates `sum b_k Phi_k(x)` back into the monomial basis.
pub fn from_phi_basis(seq: &FSequence, b: &[BigInt]) -> Result<Polynomial> {
    if b.is_empty() {
        return Ok(Polynomial::zero());
    }
    let table = phi_table(seq, b.len() - 1, InversePath::Oracle)?;
    Ok(b.iter()
        .zip(&table)
        .fold(Polynomial::zero(), |acc, (c, phi)| &acc + &phi.scale(c)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripFailure {
    pub n: usize,
    pub expanded: Polynomial,
}

/// For each `n <= bound`, expands `sum_k C(n,k)_F Phi_k(x)` with polynomial
/// arithmetic and checks it is exactly `x^n`.
pub fn roundtrip_check(
    seq: &FSequence,
    bound: usize,
) -> Result<VerificationReport<RoundtripFailure>> {
    let phis = phi_table(seq, bound, InversePath::Oracle)?;
    for n in 0..=bound {
        let mut expanded = Polynomial::zero();
        for (k, c) in expand_monomial(seq, n)? {
            expanded = &expanded + &phis[k].scale(&c);
        }
        if expanded != Polynomial::monomial(n) {
            return Ok(VerificationReport {
                checked: n + 1,
                first_failure: Some(RoundtripFailure { n, expanded }),
            });
        }
    }
    Ok(VerificationReport {
        checked: bound + 1,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exact inverse rows for the Fibonacci sequence, `Phi_0 ..= Phi_8`,
    /// lowest power first. Values were produced by rational Gauss-Jordan
    /// elimination of the Fibonomial matrix, independently of this crate.
    /// The commonly printed listing of `Phi_8` carries `8301` as the linear
    /// coefficient; the exact value is `3801`.
    pub(crate) const FIBONACCI_PHI: [&[i64]; 9] = [
        &[1],
        &[-1, 1],
        &[0, -1, 1],
        &[1, 0, -2, 1],
        &[-1, 3, 0, -3, 1],
        &[-6, -5, 15, 0, -5, 1],
        &[35, -48, -40, 60, 0, -8, 1],
        &[181, 455, -624, -260, 260, 0, -13, 1],
        &[-6056, 3801, 9555, -6552, -1820, 1092, 0, -21, 1],
    ];

    #[test]
    fn fibonacci_phi_table_both_paths() {
        let fib = FSequence::fibonacci();
        for path in [InversePath::Oracle, InversePath::Direct] {
            for (n, expected) in FIBONACCI_PHI.iter().enumerate() {
                let phi = phi_polynomial(&fib, n, path).unwrap();
                assert_eq!(phi, Polynomial::from_i64(expected), "Phi_{n} via {path:?}");
                assert_eq!(phi.degree(), Some(n));
                assert!(phi.is_monic());
            }
        }
    }

    #[test]
    fn display_matches_conventional_notation() {
        let fib = FSequence::fibonacci();
        let phi = |n| {
            phi_polynomial(&fib, n, InversePath::Oracle)
                .unwrap()
                .to_string()
        };
        assert_eq!(phi(0), "1");
        assert_eq!(phi(1), "x - 1");
        assert_eq!(phi(2), "x^2 - x");
        assert_eq!(phi(3), "x^3 - 2x^2 + 1");
        assert_eq!(phi(4), "x^4 - 3x^3 + 3x - 1");
        assert_eq!(phi(6), "x^6 - 8x^5 + 60x^3 - 40x^2 - 48x + 35");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_i64(&[0, -1]).to_string(), "-x");
        assert_eq!(Polynomial::from_i64(&[-4]).to_string(), "-4");
    }

    #[test]
    fn dense_storage_keeps_inner_zeros() {
        let phi3 = phi_polynomial(&FSequence::fibonacci(), 3, InversePath::Oracle).unwrap();
        assert_eq!(phi3.coeffs(), Polynomial::from_i64(&[1, 0, -2, 1]).coeffs());
        assert_eq!(phi3.coeffs().len(), 4);
        assert_eq!(phi3.to_json(), "[1,0,-2,1]");
        assert_eq!(Polynomial::zero().to_json(), "[0]");
    }

    #[test]
    fn gaussian_phi_is_product_of_linear_factors() {
        let g2 = FSequence::gaussian(2).unwrap();
        assert_eq!(
            phi_polynomial(&g2, 3, InversePath::Oracle).unwrap(),
            Polynomial::from_i64(&[-8, 14, -7, 1])
        );
        for q in [2u64, 3] {
            let g = FSequence::gaussian(q).unwrap();
            for n in 0..=6u32 {
                let roots: Vec<BigInt> = (0..n).map(|s| BigInt::from(q).pow(s)).collect();
                assert_eq!(
                    phi_polynomial(&g, n as usize, InversePath::Direct).unwrap(),
                    Polynomial::from_roots(&roots)
                );
            }
        }
    }

    #[test]
    fn natural_phi_is_shifted_power() {
        let nat = FSequence::natural();
        let x_minus_one = Polynomial::from_i64(&[-1, 1]);
        let mut power = Polynomial::one();
        for n in 0..=10 {
            assert_eq!(phi_polynomial(&nat, n, InversePath::Oracle).unwrap(), power);
            power = &power * &x_minus_one;
        }
    }

    #[test]
    fn expand_monomial_examples() {
        let pairs = |v: &[i64]| -> Vec<(usize, BigInt)> {
            v.iter()
                .enumerate()
                .map(|(k, &c)| (k, BigInt::from(c)))
                .collect()
        };
        assert_eq!(
            expand_monomial(&FSequence::natural(), 2).unwrap(),
            pairs(&[1, 2, 1])
        );
        assert_eq!(
            expand_monomial(&FSequence::gaussian(3).unwrap(), 0).unwrap(),
            pairs(&[1])
        );
        assert_eq!(
            expand_monomial(&FSequence::fibonacci(), 5).unwrap(),
            pairs(&[1, 5, 15, 15, 5, 1])
        );
    }

    #[test]
    fn roundtrips() {
        assert!(roundtrip_check(&FSequence::fibonacci(), 8)
            .unwrap()
            .passed());
        assert!(roundtrip_check(&FSequence::natural(), 10).unwrap().passed());
        assert!(roundtrip_check(&FSequence::gaussian(3).unwrap(), 6)
            .unwrap()
            .passed());
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::from_i64(&[1, 2]);
        let b = Polynomial::from_i64(&[-1, 0, 3]);
        assert_eq!(&a * &b, Polynomial::from_i64(&[-1, -2, 3, 6]));
        assert_eq!(&a + &b, Polynomial::from_i64(&[0, 2, 3]));
        assert_eq!(&a - &a, Polynomial::zero());
        assert_eq!(b.eval(&BigInt::from(2)), BigInt::from(11));
        assert_eq!(Polynomial::from_i64(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(Polynomial::zero().degree(), None);
    }

    proptest! {
        #[test]
        fn basis_conversion_is_involutive(
            coeffs in prop::collection::vec(-50i64..50, 0..9),
            which in 0usize..4,
        ) {
            let seq = match which {
                0 => FSequence::natural(),
                1 => FSequence::fibonacci(),
                2 => FSequence::gaussian(2).unwrap(),
                _ => FSequence::gaussian(3).unwrap(),
            };
            let p = Polynomial::from_i64(&coeffs);
            let b = to_phi_basis(&seq, &p).unwrap();
            prop_assert_eq!(from_phi_basis(&seq, &b).unwrap(), p);
        }
    }
}
