//! Integer sequences `n -> n_F` and the cobweb-admissibility test.
//!
//! Index 0 is always defined (`0_F = 0` for every built-in sequence). It never
//! enters an F-factorial, which runs over `1_F .. n_F`, so `0_F! = 1`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeffs::Memo;
use crate::{Error, Result};

/// Which sequence an [`FSequence`] evaluates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceKind {
    /// `n_F = n`; F-nomials are the ordinary binomials.
    Natural,
    /// `0, 1, 1, 2, 3, 5, ...`
    Fibonacci,
    /// The q-integer `n_F = 1 + q + ... + q^(n-1)` for a fixed integer `q >= 2`.
    Gaussian { q: u64 },
    /// A finite list of values, entry `i` holding `i_F`.
    Explicit(Vec<BigInt>),
}

/// A non-negative integer sequence with lazily extended caches.
///
/// Values, F-factorials and multi F-nomials are memoized inside the
/// sequence. The caches sit behind `RwLock`s: lookups take the shared lock
/// and only misses take the exclusive one, so concurrent callers always
/// observe the same values a sequential caller would.
pub struct FSequence {
    name: String,
    kind: SequenceKind,
    values: RwLock<Vec<BigInt>>,
    factorials: RwLock<Vec<BigInt>>,
    pub(crate) memo: Memo,
}

impl FSequence {
    pub fn natural() -> Self {
        Self::with_kind("natural".into(), SequenceKind::Natural)
    }

    pub fn fibonacci() -> Self {
        Self::with_kind("fibonacci".into(), SequenceKind::Fibonacci)
    }

    pub fn gaussian(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidGaussianBase(q));
        }
        Ok(Self::with_kind(
            format!("gaussian:{q}"),
            SequenceKind::Gaussian { q },
        ))
    }

    pub fn explicit(values: Vec<BigInt>) -> Result<Self> {
        Self::explicit_named("explicit".into(), values)
    }

    pub fn explicit_named(name: String, values: Vec<BigInt>) -> Result<Self> {
        if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeValue {
                index,
                value: value.clone(),
            });
        }
        Ok(Self::with_kind(name, SequenceKind::Explicit(values)))
    }

    /// Parses one non-negative decimal integer per line; line `i` holds `i_F`.
    /// Blank lines and surrounding whitespace are ignored.
    pub fn parse_values(source_name: &str, text: &str) -> Result<Vec<BigInt>> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: BigInt = line.parse().map_err(|_| Error::Parse {
                source_name: source_name.to_string(),
                line: lineno + 1,
                message: format!("`{line}` is not a decimal integer"),
            })?;
            if value.is_negative() {
                return Err(Error::NegativeValue {
                    index: values.len(),
                    value,
                });
            }
            values.push(value);
        }
        Ok(values)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = format!("file:{}", path.display());
        let values = Self::parse_values(&path.display().to_string(), &text)?;
        Self::explicit_named(name, values)
    }

    fn with_kind(name: String, kind: SequenceKind) -> Self {
        let values = match &kind {
            SequenceKind::Explicit(v) => v.clone(),
            _ => vec![BigInt::zero()],
        };
        FSequence {
            name,
            kind,
            values: RwLock::new(values),
            factorials: RwLock::new(vec![BigInt::one()]),
            memo: Memo::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// Number of defined indices, or `None` for the unbounded built-ins.
    pub fn defined_len(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// Returns `n_F`.
    pub fn value(&self, n: usize) -> Result<BigInt> {
        {
            let values = self.values.read().unwrap();
            if let Some(v) = values.get(n) {
                return Ok(v.clone());
            }
        }
        if let SequenceKind::Explicit(v) = &self.kind {
            return Err(Error::IndexOutOfRange {
                name: self.name.clone(),
                index: n,
                len: v.len(),
            });
        }
        let mut values = self.values.write().unwrap();
        while values.len() <= n {
            let next = self.next_value(&values);
            values.push(next);
        }
        Ok(values[n].clone())
    }

    /// Extends an unbounded built-in by one term given its current prefix.
    fn next_value(&self, prefix: &[BigInt]) -> BigInt {
        let i = prefix.len();
        match &self.kind {
            SequenceKind::Natural => BigInt::from(i),
            SequenceKind::Fibonacci => match i {
                0 => BigInt::zero(),
                1 | 2 => BigInt::one(),
                _ => &prefix[i - 1] + &prefix[i - 2],
            },
            // [n]_q = 1 + q [n-1]_q, [0]_q = 0
            SequenceKind::Gaussian { q } => BigInt::one() + &prefix[i - 1] * BigInt::from(*q),
            SequenceKind::Explicit(_) => unreachable!("explicit sequences are fully preloaded"),
        }
    }

    /// Returns `n_F! = n_F (n-1)_F ... 1_F`, with `0_F! = 1`.
    pub(crate) fn factorial(&self, n: usize) -> Result<BigInt> {
        {
            let facts = self.factorials.read().unwrap();
            if let Some(f) = facts.get(n) {
                return Ok(f.clone());
            }
        }
        // Fetch values before taking the factorial lock so the two locks never nest.
        let start = self.factorials.read().unwrap().len();
        let terms = (start..=n)
            .map(|i| self.value(i))
            .collect::<Result<Vec<_>>>()?;
        let mut facts = self.factorials.write().unwrap();
        for (i, term) in (start..=n).zip(terms) {
            if i == facts.len() {
                let next = &facts[i - 1] * term;
                facts.push(next);
            }
        }
        Ok(facts[n].clone())
    }
}

impl Clone for FSequence {
    /// Clones the definition with empty caches.
    fn clone(&self) -> Self {
        Self::with_kind(self.name.clone(), self.kind.clone())
    }
}

impl fmt::Debug for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FSequence")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

/// Builds a sequence from its descriptor, validating parameters.
pub fn make_sequence(kind: SequenceKind) -> Result<FSequence> {
    match kind {
        SequenceKind::Natural => Ok(FSequence::natural()),
        SequenceKind::Fibonacci => Ok(FSequence::fibonacci()),
        SequenceKind::Gaussian { q } => FSequence::gaussian(q),
        SequenceKind::Explicit(values) => FSequence::explicit(values),
    }
}

/// Why a coefficient failed the admissibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    /// `C(n,k)_F` reduces to this non-integral rational.
    NonInteger {
        n: usize,
        k: usize,
        value: BigRational,
    },
    /// `k_F! (n-k)_F! = 0`, leaving `C(n,k)_F` undefined.
    ZeroDenominator { n: usize, k: usize },
}

impl AdmissibilityFailure {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            AdmissibilityFailure::NonInteger { n, k, .. }
            | AdmissibilityFailure::ZeroDenominator { n, k } => (n, k),
        }
    }
}

impl fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityFailure::NonInteger { n, k, value } => {
                write!(f, "C({n},{k}) = {value} is not an integer")
            }
            AdmissibilityFailure::ZeroDenominator { n, k } => {
                write!(f, "C({n},{k}) has a zero denominator")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub bound: usize,
    pub first_failure: Option<AdmissibilityFailure>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Evaluates every `C(n,k)_F`, `0 <= k <= n <= bound`, as a reduced rational
/// and reports the first one (row-major order) that is not an integer.
/// The border entries `k = 0` and `k = n` are 1 by definition.
///
/// This path is independent of [`crate::coeffs`]: it multiplies raw
/// sequence values and never performs integer division.
pub fn check_admissible(seq: &FSequence, bound: usize) -> Result<AdmissibilityReport> {
    let mut factorials = Vec::with_capacity(bound + 1);
    factorials.push(BigInt::one());
    for i in 1..=bound {
        let next = &factorials[i - 1] * seq.value(i)?;
        factorials.push(next);
    }
    for n in 0..=bound {
        // C(n,0) = C(n,n) = 1 by convention, even if some n_F vanishes
        for k in 1..n {
            let denom = &factorials[k] * &factorials[n - k];
            if denom.is_zero() {
                return Ok(AdmissibilityReport {
                    bound,
                    first_failure: Some(AdmissibilityFailure::ZeroDenominator { n, k }),
                });
            }
            let value = BigRational::new(factorials[n].clone(), denom);
            if !value.is_integer() {
                return Ok(AdmissibilityReport {
                    bound,
                    first_failure: Some(AdmissibilityFailure::NonInteger { n, k, value }),
                });
            }
        }
    }
    Ok(AdmissibilityReport {
        bound,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn builtin_values() {
        assert_eq!(FSequence::fibonacci().value(5).unwrap(), BigInt::from(5));
        assert_eq!(FSequence::natural().value(7).unwrap(), BigInt::from(7));
        assert_eq!(
            FSequence::gaussian(2).unwrap().value(4).unwrap(),
            BigInt::from(15)
        );
        for seq in [
            FSequence::natural(),
            FSequence::fibonacci(),
            FSequence::gaussian(3).unwrap(),
        ] {
            assert!(seq.value(0).unwrap().is_zero());
        }
    }

    #[test]
    fn fibonacci_recurrence_and_seeds() {
        let f = FSequence::fibonacci();
        assert_eq!(f.value(1).unwrap(), BigInt::one());
        assert_eq!(f.value(2).unwrap(), BigInt::one());
        for n in 3..=64 {
            assert_eq!(
                f.value(n).unwrap(),
                f.value(n - 1).unwrap() + f.value(n - 2).unwrap()
            );
        }
        assert_eq!(
            f.value(64).unwrap(),
            "10610209857723".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn gaussian_is_geometric_sum() {
        for q in [2u64, 3, 7] {
            let g = FSequence::gaussian(q).unwrap();
            for n in 0..=20usize {
                let expected: BigInt = (0..n).map(|i| BigInt::from(q).pow(i as u32)).sum();
                assert_eq!(g.value(n).unwrap(), expected);
            }
        }
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(matches!(
            make_sequence(SequenceKind::Gaussian { q: 1 }),
            Err(Error::InvalidGaussianBase(1))
        ));
        assert!(matches!(
            make_sequence(SequenceKind::Gaussian { q: 0 }),
            Err(Error::InvalidGaussianBase(0))
        ));
        assert!(matches!(
            make_sequence(SequenceKind::Explicit(ints(&[0, 1, -2]))),
            Err(Error::NegativeValue { index: 2, .. })
        ));
    }

    #[test]
    fn explicit_out_of_range() {
        let s = FSequence::explicit(ints(&[0, 1, 3])).unwrap();
        assert_eq!(s.value(2).unwrap(), BigInt::from(3));
        assert!(matches!(
            s.value(3),
            Err(Error::IndexOutOfRange {
                index: 3,
                len: 3,
                ..
            })
        ));
    }

    #[test]
    fn parses_value_files() {
        let v = FSequence::parse_values("t", "0\n 1\n\n2\n3 \n").unwrap();
        assert_eq!(v, ints(&[0, 1, 2, 3]));
        assert!(matches!(
            FSequence::parse_values("t", "0\nx\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            FSequence::parse_values("t", "0\n-4\n"),
            Err(Error::NegativeValue { index: 1, .. })
        ));
    }

    #[test]
    fn admissibility_examples() {
        assert!(check_admissible(&FSequence::fibonacci(), 12)
            .unwrap()
            .is_admissible());
        assert!(check_admissible(&FSequence::natural(), 12)
            .unwrap()
            .is_admissible());
        let ok = FSequence::explicit(ints(&[0, 1, 3])).unwrap();
        assert!(check_admissible(&ok, 2).unwrap().is_admissible());

        let bad = FSequence::explicit(ints(&[0, 2, 3])).unwrap();
        let report = check_admissible(&bad, 2).unwrap();
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.position(), (2, 1));
        assert_eq!(
            failure,
            AdmissibilityFailure::NonInteger {
                n: 2,
                k: 1,
                value: BigRational::new(BigInt::from(3), BigInt::from(2)),
            }
        );
    }

    #[test]
    fn zero_term_is_reported_not_panicking() {
        let s = FSequence::explicit(ints(&[0, 1, 0, 5])).unwrap();
        let failure = check_admissible(&s, 3).unwrap().first_failure.unwrap();
        assert_eq!(
            failure,
            AdmissibilityFailure::ZeroDenominator { n: 3, k: 1 }
        );
    }

    #[test]
    fn concurrent_queries_match_sequential() {
        let shared = FSequence::fibonacci();
        let reference: Vec<BigInt> = {
            let fresh = FSequence::fibonacci();
            (0..=200).map(|n| fresh.value(n).unwrap()).collect()
        };
        std::thread::scope(|scope| {
            for t in 0..8 {
                let shared = &shared;
                let reference = &reference;
                scope.spawn(move || {
                    for n in (0..=200).rev().skip(t) {
                        assert_eq!(&shared.value(n).unwrap(), &reference[n]);
                        assert_eq!(
                            shared.factorial(n.min(60)).unwrap(),
                            FSequence::fibonacci().factorial(n.min(60)).unwrap()
                        );
                    }
                });
            }
        });
    }

    proptest! {
        #[test]
        fn admissibility_is_monotone(values in prop::collection::vec(1u32..6, 1..8)) {
            let mut all = vec![BigInt::zero()];
            all.extend(values.iter().map(|&v| BigInt::from(v)));
            let seq = FSequence::explicit(all.clone()).unwrap();
            let top = all.len() - 1;
            let reports: Vec<bool> = (0..=top)
                .map(|n| check_admissible(&seq, n).unwrap().is_admissible())
                .collect();
            for n in 1..=top {
                if reports[n] {
                    prop_assert!(reports[..n].iter().all(|&ok| ok));
                }
            }
        }

        #[test]
        fn builtins_are_pure_functions_of_index(n in 0usize..=64) {
            for make in [FSequence::natural, FSequence::fibonacci] {
                let a = make();
                let b = make();
                let _ = a.value(64).unwrap();
                prop_assert_eq!(a.value(n).unwrap(), b.value(n).unwrap());
            }
        }
    }
}
