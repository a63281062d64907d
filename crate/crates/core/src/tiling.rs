//! Additive lambda-decompositions and the multi F-nomial recurrence.
//!
//! A sequence is in the T-lambda family when every term splits as
//! `(a+b)_F = lambda_a a_F + lambda_b b_F` with non-negative integer
//! coefficients. Splitting repeatedly gives
//! `(k_1+...+k_s)_F = sum_j lambda_j (k_j)_F`, and any such vector yields
//!
//! ```text
//! C(n; k_1..k_s)_F = sum_j lambda_j C(n-1; k_1, .., k_j - 1, .., k_s)_F
//! ```
//!
//! Lambda vectors are not unique. [`lambda_decompose`] fixes left-to-right
//! splitting; [`LambdaVector::satisfies_identity`] accepts any valid vector.
//!
//! Registered rules: natural (`lambda = 1`) and Fibonacci, via
//! `F_{a+b} = F_{b+1} F_a + F_{a-1} F_b`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeffs::multi_fnomial;
use crate::fseq::{FSequence, SequenceKind};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaVector {
    pub parts: Vec<usize>,
    pub lambdas: Vec<BigInt>,
}

impl LambdaVector {
    /// `sum_j lambda_j (k_j)_F`
    pub fn weighted_sum(&self, seq: &FSequence) -> Result<BigInt> {
        self.parts
            .iter()
            .zip(&self.lambdas)
            .try_fold(BigInt::zero(), |acc, (&k, l)| Ok(acc + l * seq.value(k)?))
    }

    /// Whether `sum_j lambda_j (k_j)_F = (sum_j k_j)_F` holds for `seq`.
    pub fn satisfies_identity(&self, seq: &FSequence) -> Result<bool> {
        let total: usize = self.parts.iter().sum();
        Ok(self.parts.len() == self.lambdas.len()
            && self.lambdas.iter().all(|l| l >= &BigInt::zero())
            && self.weighted_sum(seq)? == seq.value(total)?)
    }
}

fn check_positive(parts: &[usize]) -> Result<()> {
    if parts.is_empty() {
        return Err(Error::InvalidParts {
            parts: Vec::new(),
            reason: "at least one part is required".into(),
        });
    }
    if parts.contains(&0) {
        return Err(Error::InvalidParts {
            parts: parts.to_vec(),
            reason: "parts must be positive".into(),
        });
    }
    Ok(())
}

/// `(lambda_a, lambda_b)` with `lambda_a a_F + lambda_b b_F = (a+b)_F`.
pub fn lambda_two_part(seq: &FSequence, a: usize, b: usize) -> Result<LambdaVector> {
    check_positive(&[a, b])?;
    let lambdas = match seq.kind() {
        SequenceKind::Natural => vec![BigInt::one(), BigInt::one()],
        SequenceKind::Fibonacci => vec![seq.value(b + 1)?, seq.value(a - 1)?],
        _ => return Err(Error::UnsupportedLambda(seq.name().to_string())),
    };
    Ok(LambdaVector {
        parts: vec![a, b],
        lambdas,
    })
}

/// Splits off one part at a time from the left: the remainder's running
/// multiplier is distributed over the next two-part split.
pub fn lambda_decompose(seq: &FSequence, parts: &[usize]) -> Result<LambdaVector> {
    check_positive(parts)?;
    if !matches!(seq.kind(), SequenceKind::Natural | SequenceKind::Fibonacci) {
        return Err(Error::UnsupportedLambda(seq.name().to_string()));
    }
    let mut lambdas = Vec::with_capacity(parts.len());
    let mut carry = BigInt::one();
    let mut rest: usize = parts.iter().sum();
    for &k in &parts[..parts.len() - 1] {
        rest -= k;
        let split = lambda_two_part(seq, k, rest)?;
        lambdas.push(&carry * &split.lambdas[0]);
        carry *= &split.lambdas[1];
    }
    lambdas.push(carry);
    Ok(LambdaVector {
        parts: parts.to_vec(),
        lambdas,
    })
}

/// Fibonacci three-part coefficients in closed form:
/// `lambda_a = F_{c+1} F_{b-1}`, `lambda_b = F_{c+1} F_{a+1}`,
/// `lambda_c = F_a F_b + F_{a-1} F_{b-1}`.
pub fn fibonacci_three_part(a: usize, b: usize, c: usize) -> Result<LambdaVector> {
    check_positive(&[a, b, c])?;
    let f = FSequence::fibonacci();
    let v = |i: usize| f.value(i);
    let lambdas = vec![
        v(c + 1)? * v(b - 1)?,
        v(c + 1)? * v(a + 1)?,
        v(a)? * v(b)? + v(a - 1)? * v(b - 1)?,
    ];
    Ok(LambdaVector {
        parts: vec![a, b, c],
        lambdas,
    })
}

/// Both sides of the recurrence for one multi-index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub n: usize,
    pub parts: Vec<usize>,
    pub lambdas: Vec<BigInt>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl RecurrenceCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates `C(n; parts)_F` and `sum_j lambda_j C(n-1; parts - e_j)_F` with
/// lambdas from [`lambda_decompose`]. A part reduced to zero stays in the
/// multi-index and contributes `0_F! = 1`.
pub fn verify_theorem1_recurrence(
    seq: &FSequence,
    n: usize,
    parts: &[usize],
) -> Result<RecurrenceCheck> {
    check_positive(parts)?;
    if parts.iter().sum::<usize>() != n {
        return Err(Error::InvalidParts {
            parts: parts.to_vec(),
            reason: format!("parts must sum to {n}"),
        });
    }
    let lambda = lambda_decompose(seq, parts)?;
    let lhs = multi_fnomial(seq, n, parts)?;
    let mut rhs = BigInt::zero();
    let mut reduced = parts.to_vec();
    for (j, l) in lambda.lambdas.iter().enumerate() {
        reduced[j] -= 1;
        rhs += l * multi_fnomial(seq, n - 1, &reduced)?;
        reduced[j] += 1;
    }
    Ok(RecurrenceCheck {
        n,
        parts: parts.to_vec(),
        lambdas: lambda.lambdas,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::all_compositions;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Every `(x, y)` with `x a_F + y b_F = (a+b)_F`, found by exhaustive search.
    fn brute_force_pairs(seq: &FSequence, a: usize, b: usize) -> Vec<(BigInt, BigInt)> {
        let target = seq.value(a + b).unwrap();
        let (fa, fb) = (seq.value(a).unwrap(), seq.value(b).unwrap());
        let limit: i64 = target.to_string().parse().unwrap();
        let mut found = Vec::new();
        for x in 0..=limit {
            for y in 0..=limit {
                if big(x) * &fa + big(y) * &fb == target {
                    found.push((big(x), big(y)));
                }
            }
        }
        found
    }

    #[test]
    fn fibonacci_rule_is_among_brute_force_solutions() {
        let fib = FSequence::fibonacci();
        for a in 1..=7 {
            for b in 1..=7 {
                let rule = lambda_two_part(&fib, a, b).unwrap();
                let pair = (rule.lambdas[0].clone(), rule.lambdas[1].clone());
                let found = brute_force_pairs(&fib, a, b);
                assert!(
                    found.contains(&pair),
                    "a={a} b={b}: {pair:?} not in {found:?}"
                );
            }
        }
    }

    #[test]
    fn two_part_examples() {
        let nat = lambda_two_part(&FSequence::natural(), 3, 4).unwrap();
        assert_eq!(nat.lambdas, vec![big(1), big(1)]);
        let fib = FSequence::fibonacci();
        for a in 1..=30 {
            for b in 1..=30 {
                assert!(lambda_two_part(&fib, a, b)
                    .unwrap()
                    .satisfies_identity(&fib)
                    .unwrap());
            }
        }
        let one_one = lambda_two_part(&fib, 1, 1).unwrap();
        assert_eq!(one_one.weighted_sum(&fib).unwrap(), big(1));
    }

    #[test]
    fn unsupported_sequences() {
        let g = FSequence::gaussian(2).unwrap();
        assert!(matches!(
            lambda_two_part(&g, 1, 2),
            Err(Error::UnsupportedLambda(_))
        ));
        assert!(matches!(
            lambda_decompose(&g, &[1, 2]),
            Err(Error::UnsupportedLambda(_))
        ));
        assert!(lambda_decompose(&FSequence::natural(), &[]).is_err());
        assert!(lambda_decompose(&FSequence::natural(), &[2, 0]).is_err());
    }

    #[test]
    fn decompose_examples() {
        let nat = FSequence::natural();
        assert_eq!(
            lambda_decompose(&nat, &[2, 3, 5]).unwrap().lambdas,
            vec![big(1), big(1), big(1)]
        );
        let fib = FSequence::fibonacci();
        for seq in [&nat, &fib] {
            assert_eq!(lambda_decompose(seq, &[6]).unwrap().lambdas, vec![big(1)]);
        }
        for a in 1..=10 {
            for b in 1..=10 {
                for c in 1..=10 {
                    let v = lambda_decompose(&fib, &[a, b, c]).unwrap();
                    assert!(v.satisfies_identity(&fib).unwrap(), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn closed_form_three_part() {
        let fib = FSequence::fibonacci();
        for a in 1..=10 {
            for b in 1..=10 {
                for c in 1..=10 {
                    let v = fibonacci_three_part(a, b, c).unwrap();
                    assert!(v.satisfies_identity(&fib).unwrap(), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn identity_rejects_wrong_vectors() {
        let fib = FSequence::fibonacci();
        let wrong = LambdaVector {
            parts: vec![2, 3],
            lambdas: vec![big(1), big(1)],
        };
        assert!(!wrong.satisfies_identity(&fib).unwrap());
        let negative = LambdaVector {
            parts: vec![1, 1],
            lambdas: vec![big(2), big(-1)],
        };
        assert!(!negative.satisfies_identity(&fib).unwrap());
    }

    #[test]
    fn recurrence_examples() {
        let nat = FSequence::natural();
        let check = verify_theorem1_recurrence(&nat, 4, &[2, 1, 1]).unwrap();
        assert_eq!(check.lhs, big(12));
        assert_eq!(check.rhs, big(12));
        assert!(verify_theorem1_recurrence(&nat, 5, &[2, 1, 1]).is_err());

        let fib = FSequence::fibonacci();
        let single = verify_theorem1_recurrence(&fib, 1, &[1]).unwrap();
        assert_eq!(single.lambdas, vec![big(1)]);
        assert!(single.passed());

        for seq in [&nat, &fib] {
            for n in 1..=8 {
                for c in all_compositions(n) {
                    let check = verify_theorem1_recurrence(seq, n, c.parts()).unwrap();
                    assert!(check.passed(), "{} {c}", seq.name());
                }
            }
        }
    }
}
