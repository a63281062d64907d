//! Streaming enumeration of integer compositions.
//!
//! A composition of `m` into `s` parts is an ordered tuple of `s` positive
//! integers summing to `m`; there are `C(m-1, s-1)` of them, `2^(m-1)` in all.
//! The iterators hold a single composition in memory and step to its
//! lexicographic successor.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    /// Returns `None` if any part is zero.
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        parts
            .iter()
            .all(|&p| p >= 1)
            .then_some(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Compositions of a fixed total into a fixed number of parts, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Compositions {
    fn new(total: usize, len: usize) -> Self {
        let first = if len == 0 {
            (total == 0).then(Vec::new)
        } else if len > total {
            None
        } else {
            // lexicographically smallest: 1, 1, ..., 1, total - len + 1
            let mut parts = vec![1; len];
            parts[len - 1] = total - len + 1;
            Some(parts)
        };
        Compositions { next: first }
    }
}

/// Successor in lexicographic order, or `None` at the last composition.
fn advance(parts: &mut [usize]) -> bool {
    let len = parts.len();
    if len < 2 {
        return false;
    }
    // Rightmost position whose suffix can give up one unit while staying positive.
    let mut suffix_sum = parts[len - 1];
    for i in (0..len - 1).rev() {
        let suffix_len = len - 1 - i;
        if suffix_sum > suffix_len {
            parts[i] += 1;
            let rest = suffix_sum - 1;
            for p in &mut parts[i + 1..len - 1] {
                *p = 1;
            }
            parts[len - 1] = rest - (suffix_len - 1);
            return true;
        }
        suffix_sum += parts[i];
    }
    false
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if advance(&mut successor) {
            self.next = Some(successor);
        }
        Some(Composition { parts: current })
    }
}

/// Every composition of `total` into exactly `len` positive parts.
///
/// Yields the empty composition once for `(0, 0)` and nothing when
/// `len > total` or when `total > 0 = len`.
pub fn compositions_of(total: usize, len: usize) -> Compositions {
    Compositions::new(total, len)
}

/// All compositions of `total`, grouped by part count `1..=total`.
pub fn all_compositions(total: usize) -> impl Iterator<Item = Composition> {
    (1..=total).flat_map(move |len| compositions_of(total, len))
}

/// `2^(total-1)` for `total >= 1`, and 0 for `total = 0`.
pub fn composition_count(total: usize) -> u128 {
    if total == 0 {
        0
    } else {
        1u128 << (total - 1)
    }
}
