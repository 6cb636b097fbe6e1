//! Pointwise arithmetic: factorizations, partition numbers, and the
//! multiplicative functions built from them.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("partition number overflows u64 at index {index}")]
    PartitionOverflow { index: u32 },
    #[error("cannot factorize 0")]
    FactorizeZero,
    #[error("exponent {exponent} exceeds partition table bound {bound}")]
    ExponentOutOfRange { exponent: u32, bound: u32 },
    #[error("k-fold divisor order must be at least 2, got {k}")]
    BadDivisorOrder { k: u32 },
    #[error("arithmetic overflow in {what}")]
    Overflow { what: &'static str },
}

/// A prime factorization: pairs `(p, e)` with strictly increasing primes and
/// exponents `>= 1`. The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Factorization {
        Factorization { pairs: Vec::new() }
    }

    /// Wraps a pair list, checking the ordering and exponent invariants.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Factorization {
        for w in pairs.windows(2) {
            assert!(w[0].0 < w[1].0, "primes must be strictly increasing");
        }
        for &(p, e) in &pairs {
            assert!(p >= 2, "factor {p} is not a prime candidate");
            assert!(e >= 1, "exponent must be at least 1");
        }
        Factorization { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        match self.pairs.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.pairs[i].1,
            Err(_) => 0,
        }
    }

    /// Reconstructs the integer, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        let mut n = 1u64;
        for &(p, e) in &self.pairs {
            for _ in 0..e {
                n = n.checked_mul(p)?;
            }
        }
        Some(n)
    }

    /// Componentwise minimum of exponents, i.e. the gcd.
    pub fn gcd(&self, other: &Factorization) -> Factorization {
        let mut pairs = Vec::new();
        for &(p, e) in &self.pairs {
            let f = other.exponent_of(p);
            if f > 0 {
                pairs.push((p, e.min(f)));
            }
        }
        Factorization { pairs }
    }

    /// Exponentwise difference `self / other`; requires `other` to divide
    /// `self` componentwise.
    pub fn div_exact(&self, other: &Factorization) -> Factorization {
        let mut pairs = Vec::new();
        for &(p, e) in &self.pairs {
            let f = other.exponent_of(p);
            assert!(f <= e, "divisor does not divide");
            if e - f > 0 {
                pairs.push((p, e - f));
            }
        }
        Factorization { pairs }
    }

    /// Merges `self^m * other^k` into one factorization.
    pub fn pow_merge(&self, m: u32, other: &Factorization, k: u32) -> Factorization {
        let mut pairs: Vec<(u64, u32)> = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() || j < other.pairs.len() {
            let a = self.pairs.get(i).copied();
            let b = other.pairs.get(j).copied();
            match (a, b) {
                (Some((pa, ea)), Some((pb, eb))) => {
                    if pa < pb {
                        pairs.push((pa, ea * m));
                        i += 1;
                    } else if pb < pa {
                        pairs.push((pb, eb * k));
                        j += 1;
                    } else {
                        pairs.push((pa, ea * m + eb * k));
                        i += 1;
                        j += 1;
                    }
                }
                (Some((pa, ea)), None) => {
                    pairs.push((pa, ea * m));
                    i += 1;
                }
                (None, Some((pb, eb))) => {
                    pairs.push((pb, eb * k));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        pairs.retain(|&(_, e)| e > 0);
        Factorization { pairs }
    }

    /// All squarefree divisors `(delta, mu(delta))`, in no particular order.
    pub fn squarefree_divisors(&self) -> Vec<(u64, i32)> {
        let ps: Vec<u64> = self.pairs.iter().map(|&(p, _)| p).collect();
        let mut out = Vec::with_capacity(1 << ps.len());
        for mask in 0u32..(1 << ps.len()) {
            let mut d = 1u64;
            let mut mu = 1i32;
            for (i, &p) in ps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d *= p;
                    mu = -mu;
                }
            }
            out.push((d, mu));
        }
        out
    }
}

/// Factorizes `n >= 1` by trial division (2, 3, then 6k+-1).
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::FactorizeZero);
    }
    let mut m = n;
    let mut pairs = Vec::new();
    for p in [2u64, 3] {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    let mut p = 5u64;
    let mut step = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(Factorization { pairs })
}

/// Partition numbers `P(0..=bound)`, computed by Euler's pentagonal number
/// recurrence; errors at the first index whose value exceeds `u64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<u64>,
}

impl PartitionTable {
    pub fn bound(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn get(&self, i: u32) -> Option<u64> {
        self.values.get(i as usize).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

pub fn partition_table(bound: u32) -> Result<PartitionTable, ArithError> {
    let mut values = Vec::with_capacity(bound as usize + 1);
    values.push(1u64);
    for n in 1..=bound as usize {
        // i128 accumulator: partial sums stay far below its range while each
        // stored value must fit u64, so overflow is detected exactly at the
        // first index whose value does not fit.
        let mut acc: i128 = 0;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * values[n - g1] as i128;
            if g2 <= n {
                acc += sign * values[n - g2] as i128;
            }
            k += 1;
        }
        let v = u64::try_from(acc)
            .map_err(|_| ArithError::PartitionOverflow { index: n as u32 })?;
        values.push(v);
    }
    Ok(PartitionTable { values })
}

/// `a(n)` from a factorization of `n`: the product of `P(e)` over prime
/// exponents `e`. Errors if an exponent exceeds the table.
pub fn a_of(f: &Factorization, pt: &PartitionTable) -> Result<u64, ArithError> {
    let mut v = 1u64;
    for &(_, e) in f.pairs() {
        let part = pt.get(e).ok_or(ArithError::ExponentOutOfRange {
            exponent: e,
            bound: pt.bound(),
        })?;
        v = v
            .checked_mul(part)
            .ok_or(ArithError::Overflow { what: "a_of product" })?;
    }
    Ok(v)
}

/// The k-fold divisor function `d_k(n)`: local factor `C(e + k - 1, k - 1)`.
/// Requires `k >= 2`.
pub fn dk_of(f: &Factorization, k: u32) -> Result<u64, ArithError> {
    if k < 2 {
        return Err(ArithError::BadDivisorOrder { k });
    }
    let mut v = 1u64;
    for &(_, e) in f.pairs() {
        v = v
            .checked_mul(binomial(e as u64 + k as u64 - 1, k as u64 - 1)?)
            .ok_or(ArithError::Overflow { what: "dk_of product" })?;
    }
    Ok(v)
}

/// `C(n, r)` exactly, erroring on u64 overflow.
fn binomial(n: u64, r: u64) -> Result<u64, ArithError> {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc
            .checked_mul((n - r + i) as u128)
            .ok_or(ArithError::Overflow { what: "binomial" })?
            / i as u128;
    }
    u64::try_from(acc).map_err(|_| ArithError::Overflow { what: "binomial" })
}

/// Möbius function from a factorization.
pub fn mobius(f: &Factorization) -> i32 {
    for &(_, e) in f.pairs() {
        if e >= 2 {
            return 0;
        }
    }
    if f.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Splits `n = q * s` with `q` squarefree, `s` squarefull, `gcd(q, s) = 1`:
/// exponent-1 primes go to `q`, the rest to `s`. The split is unique.
pub fn sf_decompose(f: &Factorization) -> (u64, u64) {
    let mut q = 1u64;
    let mut s = 1u64;
    for &(p, e) in f.pairs() {
        if e == 1 {
            q *= p;
        } else {
            s *= p.pow(e);
        }
    }
    (q, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partition count by direct enumeration (parts bounded above), used as
    /// an oracle independent of the pentagonal recurrence.
    fn brute_partitions(n: u64, max_part: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=n.min(max_part))
            .map(|k| brute_partitions(n - k, k))
            .sum()
    }

    #[test]
    fn partition_table_matches_enumeration() {
        let pt = partition_table(30).unwrap();
        for n in 0..=30u64 {
            assert_eq!(pt.get(n as u32).unwrap(), brute_partitions(n, n), "P({n})");
        }
    }

    #[test]
    fn partition_known_values() {
        let pt = partition_table(100).unwrap();
        assert_eq!(pt.get(4), Some(5));
        assert_eq!(pt.get(10), Some(42));
        assert_eq!(pt.get(100), Some(190_569_292));
    }

    #[test]
    fn partition_overflow_is_reported_at_first_bad_index() {
        // u128 shadow of the same recurrence, to locate the true overflow point
        let mut wide: Vec<u128> = vec![1];
        let mut first_over = None;
        for n in 1..600usize {
            let mut s: i128 = 0;
            let mut k = 1usize;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let g2 = k * (3 * k + 1) / 2;
                let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
                s += sign * wide[n - g1] as i128;
                if g2 <= n {
                    s += sign * wide[n - g2] as i128;
                }
                k += 1;
            }
            wide.push(s as u128);
            if s as u128 > u64::MAX as u128 {
                first_over = Some(n as u32);
                break;
            }
        }
        let first_over = first_over.expect("overflow index in scan range");
        assert_eq!(
            partition_table(first_over),
            Err(ArithError::PartitionOverflow { index: first_over })
        );
        let ok = partition_table(first_over - 1).unwrap();
        assert_eq!(ok.get(first_over - 1).unwrap() as u128, wide[first_over as usize - 1]);
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1).unwrap().pairs(), &[]);
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap().pairs(), &[(97, 1)]);
        assert_eq!(factorize(2u64.pow(40)).unwrap().pairs(), &[(2, 40)]);
        assert_eq!(factorize(0), Err(ArithError::FactorizeZero));
    }

    #[test]
    fn factorize_round_trips() {
        for n in 1..=5000u64 {
            assert_eq!(factorize(n).unwrap().value(), Some(n));
        }
    }

    #[test]
    fn a_of_anchors() {
        let pt = partition_table(64).unwrap();
        let a = |n: u64| a_of(&factorize(n).unwrap(), &pt).unwrap();
        assert_eq!(a(1), 1);
        assert_eq!(a(4), 2);
        assert_eq!(a(8), 3);
        assert_eq!(a(36), 4);
        assert_eq!(a(64), 11); // P(6)
        let window: Vec<u64> = (1..=10).map(a).collect();
        assert_eq!(window, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1]);
    }

    #[test]
    fn a_of_rejects_exponent_beyond_table() {
        let pt = partition_table(5).unwrap();
        let f = factorize(64).unwrap(); // 2^6
        assert_eq!(
            a_of(&f, &pt),
            Err(ArithError::ExponentOutOfRange { exponent: 6, bound: 5 })
        );
    }

    /// d_k by direct enumeration of ordered k-tuples with product n.
    fn brute_dk(n: u64, k: u32) -> u64 {
        if k == 1 {
            return 1;
        }
        (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| brute_dk(n / d, k - 1))
            .sum()
    }

    #[test]
    fn dk_matches_tuple_enumeration() {
        for n in 1..=60u64 {
            let f = factorize(n).unwrap();
            for k in 2..=4u32 {
                assert_eq!(dk_of(&f, k).unwrap(), brute_dk(n, k), "d_{k}({n})");
            }
        }
    }

    #[test]
    fn dk_anchors_and_validation() {
        let d = |n: u64, k: u32| dk_of(&factorize(n).unwrap(), k).unwrap();
        assert_eq!(d(12, 2), 6);
        assert_eq!(d(4, 3), 6);
        assert_eq!(d(2, 4), 4);
        assert_eq!(
            dk_of(&factorize(10).unwrap(), 1),
            Err(ArithError::BadDivisorOrder { k: 1 })
        );
        assert_eq!(
            dk_of(&factorize(10).unwrap(), 0),
            Err(ArithError::BadDivisorOrder { k: 0 })
        );
    }

    #[test]
    fn mobius_agrees_with_square_divisibility() {
        for n in 1..=2000u64 {
            let f = factorize(n).unwrap();
            let mu = mobius(&f);
            let squarefree = (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0);
            if squarefree {
                assert_eq!(mu.abs(), 1, "mu({n})");
                assert_eq!(mu, if f.pairs().len() % 2 == 0 { 1 } else { -1 });
            } else {
                assert_eq!(mu, 0, "mu({n})");
            }
        }
    }

    #[test]
    fn sf_decompose_anchors_and_roundtrip() {
        let sf = |n: u64| sf_decompose(&factorize(n).unwrap());
        assert_eq!(sf(12), (3, 4));
        assert_eq!(sf(360), (5, 72));
        assert_eq!(sf(1), (1, 1));
        assert_eq!(sf(30), (30, 1));
        assert_eq!(sf(64), (1, 64));
        for n in 1..=5000u64 {
            let (q, s) = sf(n);
            assert_eq!(q * s, n);
            assert_eq!(gcd(q, s), 1);
            let fq = factorize(q).unwrap();
            assert!(fq.pairs().iter().all(|&(_, e)| e == 1), "q not squarefree for {n}");
            let fs = factorize(s).unwrap();
            assert!(fs.pairs().iter().all(|&(_, e)| e >= 2), "s not squarefull for {n}");
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn factorization_set_ops() {
        let a = factorize(360).unwrap(); // 2^3 3^2 5
        let b = factorize(300).unwrap(); // 2^2 3 5^2
        assert_eq!(a.gcd(&b).value(), Some(60));
        assert_eq!(a.div_exact(&a.gcd(&b)).value(), Some(6));
        assert_eq!(a.pow_merge(2, &b, 1).value(), Some(360 * 360 * 300));
        assert_eq!(a.exponent_of(2), 3);
        assert_eq!(a.exponent_of(7), 0);
        let mut divs: Vec<(u64, i32)> = factorize(12).unwrap().squarefree_divisors();
        divs.sort();
        assert_eq!(divs, vec![(1, 1), (2, -1), (3, -1), (6, 1)]);
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn factorize_value_roundtrip(n in 1u64..1_000_000_000_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.value(), Some(n));
            // canonical form: strictly increasing primes, positive exponents
            for w in f.pairs().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            prop_assert!(f.pairs().iter().all(|&(_, e)| e >= 1));
        }

        #[test]
        fn a_and_dk_multiplicative_on_coprime_pairs(
            m in 1u64..100_000,
            n in 1u64..100_000,
        ) {
            prop_assume!(gcd(m, n) == 1);
            let pt = partition_table(64).unwrap();
            let (fm, fn_, fmn) = (
                factorize(m).unwrap(),
                factorize(n).unwrap(),
                factorize(m * n).unwrap(),
            );
            prop_assert_eq!(
                a_of(&fmn, &pt).unwrap(),
                a_of(&fm, &pt).unwrap() * a_of(&fn_, &pt).unwrap()
            );
            for k in 2..=4u32 {
                prop_assert_eq!(
                    dk_of(&fmn, k).unwrap(),
                    dk_of(&fm, k).unwrap() * dk_of(&fn_, k).unwrap()
                );
            }
        }

        #[test]
        fn sf_split_is_a_coprime_squarefree_squarefull_factorization(
            n in 1u64..100_000_000,
        ) {
            let f = factorize(n).unwrap();
            let (q, s) = sf_decompose(&f);
            prop_assert_eq!(q * s, n);
            prop_assert_eq!(gcd(q, s), 1);
            let fq = factorize(q).unwrap();
            prop_assert!(fq.pairs().iter().all(|&(_, e)| e == 1));
            let fs = factorize(s).unwrap();
            prop_assert!(fs.pairs().iter().all(|&(_, e)| e >= 2));
        }

        #[test]
        fn mobius_detects_square_divisibility(n in 1u64..1_000_000) {
            let f = factorize(n).unwrap();
            let squarefree = f.pairs().iter().all(|&(_, e)| e == 1);
            prop_assert_eq!(mobius(&f) != 0, squarefree);
            if squarefree {
                let expect = if f.pairs().len() % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(mobius(&f), expect);
            }
        }
    }
}
