//! Exact F-nomial arithmetic for cobweb-admissible sequences.
//!
//! An F-nomial coefficient replaces every factor of `n!` in the binomial
//! coefficient by the terms of an integer sequence `F`:
//!
//! ```text
//! C(n,k)_F = n_F! / (k_F! (n-k)_F!),   n_F! = n_F (n-1)_F ... 1_F
//! ```
//!
//! The crate computes these coefficients (and their multinomial analogue)
//! in big integers, inverts the lower-triangular F-nomial matrix two
//! independent ways (a signed sum over integer compositions, and plain
//! forward substitution), and exposes the polynomial sequence `Phi_n(x)`
//! whose coefficients are the rows of that inverse.
//!
//! Modules:
//! - [`fseq`] defines sequences (natural, Fibonacci, Gaussian q-integers, explicit lists)
//!   and the admissibility check.
//! - [`coeffs`] computes F-factorials, falling factorials, F-nomials, multi F-nomials.
//! - [`compositions`] streams the enumeration of integer compositions.
//! - [`inversion`] holds the composition-sum inverse, the triangular oracle, and
//!   the delta-convolution verifier.
//! - [`polybasis`] builds `Phi_n(x)` and converts between `{x^n}` and `{Phi_n}`.
//! - [`tiling`] covers additive lambda-decompositions and the multi F-nomial recurrence.
//! - [`cli`] is the command-line front end.

pub mod cli;
pub mod coeffs;
pub mod compositions;
mod error;
pub mod fseq;
pub mod inversion;
pub mod polybasis;
pub mod report;
pub mod tiling;

pub use error::{Error, Result};
pub use fseq::{FSequence, SequenceKind};
