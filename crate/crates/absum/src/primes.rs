//! Prime generation and smallest-prime-factor tables.

/// Primes `<= limit` by a plain sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for `n <= limit`, for bulk factorization.
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    /// Builds the table. `limit` must fit in `u32`.
    pub fn new(limit: usize) -> SpfTable {
        assert!(limit <= u32::MAX as usize, "SpfTable limit exceeds u32");
        let mut spf = vec![0u32; limit + 1];
        let mut i = 2usize;
        while i <= limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                if let Some(sq) = i.checked_mul(i) {
                    let mut j = sq;
                    while j <= limit {
                        if spf[j] == 0 {
                            spf[j] = i as u32;
                        }
                        j += i;
                    }
                }
            }
            i += 1;
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Prime exponent pairs of `n` in increasing prime order. `n` must lie in
    /// `1..=limit`.
    pub fn factor_pairs(&self, n: u64) -> Vec<(u64, u32)> {
        assert!(n >= 1 && (n as usize) < self.spf.len(), "n out of table range");
        let mut m = n as usize;
        let mut pairs = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            pairs.push((p as u64, e));
        }
        pairs
    }

    /// Möbius value of `n` (1, -1, or 0).
    pub fn mobius(&self, n: u64) -> i32 {
        assert!(n >= 1 && (n as usize) < self.spf.len(), "n out of table range");
        let mut m = n as usize;
        let mut parity = 0u32;
        while m > 1 {
            let p = self.spf[m] as usize;
            m /= p;
            if m % p == 0 {
                return 0;
            }
            parity ^= 1;
        }
        if parity == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_known_list() {
        assert_eq!(small_primes(1), Vec::<u64>::new());
        assert_eq!(small_primes(2), vec![2]);
        assert_eq!(
            small_primes(30),
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        );
        assert_eq!(small_primes(100).len(), 25);
    }

    #[test]
    fn spf_factorizations_multiply_back() {
        let t = SpfTable::new(10_000);
        for n in 1..=10_000u64 {
            let pairs = t.factor_pairs(n);
            let mut prod = 1u64;
            for &(p, e) in &pairs {
                assert!(e >= 1);
                prod *= p.pow(e);
            }
            assert_eq!(prod, n);
            for w in pairs.windows(2) {
                assert!(w[0].0 < w[1].0, "primes not increasing for {n}");
            }
        }
    }

    #[test]
    fn mobius_small_values() {
        let t = SpfTable::new(100);
        let expect = [
            (1, 1),
            (2, -1),
            (3, -1),
            (4, 0),
            (5, -1),
            (6, 1),
            (7, -1),
            (8, 0),
            (9, 0),
            (10, 1),
            (30, -1),
            (36, 0),
        ];
        for (n, mu) in expect {
            assert_eq!(t.mobius(n), mu, "mu({n})");
        }
    }
}
