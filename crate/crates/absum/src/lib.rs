//! Summatory functions of `a(n)`, the number of non-isomorphic abelian groups
//! of order `n`.
//!
//! `a` is multiplicative with `a(p^e) = P(e)`, the number of partitions of the
//! exponent, so everything here reduces to prime-exponent bookkeeping:
//!
//! * [`sieve`] produces windows of `a(n)` (and of the k-fold divisor function
//!   `d_k`) over a range, and streams the summatory quantities built from
//!   them: `Q(x) = sum_{n<=x} a(n + a(n))`, progression sums
//!   `T(x; k, r) = sum_{m<=x, m = k mod r} a(m)`, shifted divisor sums
//!   `sum_{n<=x} d_k(n + a(n))`, the running maximum `A(x)`, and counts of
//!   squarefull numbers.
//! * [`constants`] evaluates the Euler products behind the mean values: the
//!   progression density `c(r, k)` and the leading coefficient `C` of `Q(x)`,
//!   both under explicit, configurable truncation with tail estimates.
//! * [`fit`] checks the computed sums against their predicted main terms by
//!   least squares (slope through the origin, polynomials in `log x`,
//!   residual growth exponents).
//! * [`checkpoint`] persists sieved windows so long runs can resume.
//! * [`suite`] bundles the acceptance criteria behind a pass/fail report.
//!
//! Integer results are exact (`u64` with checked arithmetic; overflow is an
//! error, never a wrap). Floating-point results are deterministic: summation
//! orders are fixed, so repeated runs with different thread counts or segment
//! sizes produce bit-identical output.

// divisibility tests read better as explicit remainders in this codebase
#![allow(clippy::manual_is_multiple_of)]

pub mod arith;
pub mod checkpoint;
pub mod constants;
pub mod fit;
pub mod primes;
pub mod report;
pub mod sieve;
pub mod suite;
