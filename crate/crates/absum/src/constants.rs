//! Euler products attached to the mean values of `a(n)`.
//!
//! Everything is built from the local series
//! `S_p(l) = sum_{alpha >= 0} P(l + alpha) p^(-alpha)`:
//!
//! * `l2_principal(r1)` is `zeta(2)` with the factors at primes of `r1`
//!   removed: the value at 2 of the squared principal L-function mod `r1`.
//! * `g1_principal(r1)` is the product over primes away from `r1` of
//!   `g_p = (1 - 1/p)(1 - 1/p^2) S_p(0)`; with no excluded primes it equals
//!   `prod_{j>=3} zeta(j)`.
//! * `f_u_principal(u, r1)` carries the local corrections at primes of `u`:
//!   factor `P(l)` where the principal character vanishes (p | r1), else
//!   `S_p(l) / S_p(0)`.
//! * `c_rk(r, k)` composes the three with `u = gcd(r, k)`, `r1 = r / u`; it is
//!   the density constant in `T(x; k, r) ~ c(r, k) x / r`.
//! * `c_series` sums `c` over squarefull moduli against Moebius weights,
//!   giving the leading coefficient `C` of `Q(x)`.
//!
//! Products and series are truncated under an explicit [`TruncationConfig`];
//! every result carries a heuristic tail estimate and possible warnings
//! instead of silently losing accuracy. Summation order is fixed, so values
//! are bit-reproducible.

use thiserror::Error;

use crate::arith::{a_of, factorize, mobius, partition_table, ArithError, Factorization, PartitionTable};
use crate::primes::{small_primes, SpfTable};
use crate::sieve::squarefull_iter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstError {
    #[error("zeta argument must be at least 2, got {j}")]
    BadZetaArg { j: u32 },
    #[error("invalid truncation config: {reason}")]
    BadConfig { reason: String },
    #[error("modulus arguments must be at least 1")]
    BadModulus,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Truncation bounds for the constant evaluations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationConfig {
    /// Euler products run over primes `<= prime_cutoff`.
    pub prime_cutoff: u64,
    /// Local series `S_p(l)` keep `exponent_cutoff + 1` terms.
    pub exponent_cutoff: u32,
    /// The zeta-product reference identity is truncated at this `j`.
    pub zeta_cutoff: u32,
    /// The squarefull modulus series stops at `s <= squarefull_cutoff`.
    pub squarefull_cutoff: u64,
    /// The coprime Moebius sum stops at `d <= d_cutoff`.
    pub d_cutoff: u64,
}

impl Default for TruncationConfig {
    fn default() -> TruncationConfig {
        TruncationConfig {
            prime_cutoff: 100_000,
            exponent_cutoff: 64,
            zeta_cutoff: 64,
            squarefull_cutoff: 1_000_000,
            d_cutoff: 10_000,
        }
    }
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<(), ConstError> {
        let bad = |reason: &str| {
            Err(ConstError::BadConfig {
                reason: reason.to_string(),
            })
        };
        if self.prime_cutoff < 2 || self.prime_cutoff > 100_000_000 {
            return bad("prime_cutoff must be in [2, 1e8]");
        }
        if self.exponent_cutoff < 2 {
            return bad("exponent_cutoff must be at least 2");
        }
        if self.zeta_cutoff < 2 {
            return bad("zeta_cutoff must be at least 2");
        }
        if self.squarefull_cutoff < 2 || self.squarefull_cutoff > 1_000_000_000_000 {
            return bad("squarefull_cutoff must be in [2, 1e12]");
        }
        if self.d_cutoff < 2 || self.d_cutoff > 10_000_000 {
            return bad("d_cutoff must be in [2, 1e7]");
        }
        Ok(())
    }
}

/// A truncated evaluation: the value, a heuristic bound on what the
/// truncation dropped, and any configuration warnings.
#[derive(Debug, Clone)]
pub struct ConstantResult {
    pub value: f64,
    pub tail_estimate: f64,
    pub config: TruncationConfig,
    pub warnings: Vec<String>,
}

/// Partition indices are capped here; `P(alpha) p^(-alpha)` is below 1e-90
/// by then, so longer series cannot move an f64.
const PT_CAP: u32 = 400;

/// `zeta(j)` for integer `j >= 2`: direct series plus an Euler-Maclaurin
/// tail, accurate to f64 precision.
pub fn zeta_int(j: u32) -> Result<f64, ConstError> {
    if j < 2 {
        return Err(ConstError::BadZetaArg { j });
    }
    let n: u64 = match j {
        2 | 3 => 10_000,
        4..=7 => 1_000,
        _ => 64,
    };
    let je = -(j as f64);
    let mut sum = 0.0;
    for m in (1..=n).rev() {
        sum += (m as f64).powf(je);
    }
    // tail: N^(1-j)/(j-1) - N^(-j)/2 + j N^(-j-1)/12 - j(j+1)(j+2) N^(-j-3)/720
    let nf = n as f64;
    let jf = j as f64;
    let tail = nf.powf(1.0 - jf) / (jf - 1.0) - nf.powf(-jf) / 2.0
        + jf * nf.powf(-jf - 1.0) / 12.0
        - jf * (jf + 1.0) * (jf + 2.0) * nf.powf(-jf - 3.0) / 720.0;
    Ok(sum + tail)
}

/// `prod_{j=j_from..=j_to} zeta(j)`.
pub fn zeta_product(j_from: u32, j_to: u32) -> Result<f64, ConstError> {
    if j_from < 2 || j_to < j_from {
        return Err(ConstError::BadZetaArg { j: j_from.min(j_to) });
    }
    let mut prod = 1.0;
    for j in j_from..=j_to {
        prod *= zeta_int(j)?;
    }
    Ok(prod)
}

/// `zeta(2)` with the local factors at primes dividing `r1` removed.
pub fn l2_principal(r1: u64) -> Result<f64, ConstError> {
    if r1 < 1 {
        return Err(ConstError::BadModulus);
    }
    let mut v = zeta_int(2)?;
    for &(p, _) in factorize(r1)?.pairs() {
        let pf = p as f64;
        v *= 1.0 - 1.0 / (pf * pf);
    }
    Ok(v)
}

/// Neumaier compensated summation; the running error term keeps long
/// alternating series accurate without arbitrary precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    s: f64,
    c: f64,
}

impl KahanSum {
    pub fn new() -> KahanSum {
        KahanSum::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Precomputed local data shared by every `c(r, k)` evaluation under one
/// config: the full truncated product `G(1)` and per-prime factors, so a
/// single evaluation is a handful of multiplications.
pub(crate) struct ConstantEngine {
    cfg: TruncationConfig,
    pt: PartitionTable,
    zeta2: f64,
    g1_full: f64,
    /// relative tail of `g1_full` (prime cutoff plus series truncation)
    g1_rel_tail: f64,
    dense_bound: u64,
    /// `(1 - p^-2) / g_p` for primes below `dense_bound` (when `p <= prime_cutoff`)
    g_over: Vec<f64>,
    /// `1 / S_p(0)` for primes below `dense_bound`
    s0_inv: Vec<f64>,
}

impl ConstantEngine {
    pub(crate) fn new(cfg: &TruncationConfig) -> Result<ConstantEngine, ConstError> {
        cfg.validate()?;
        let pt = partition_table(PT_CAP)?;
        let zeta2 = zeta_int(2)?;

        let primes = small_primes(cfg.prime_cutoff);
        let mut g1_full = 1.0;
        for &p in &primes {
            g1_full *= local_g(p, &pt, cfg.exponent_cutoff);
        }
        // log g_p ~ p^-3 beyond the cutoff; the series truncation at
        // exponent_cutoff is dominated by p = 2
        let pc = cfg.prime_cutoff as f64;
        let prime_tail = 0.5 / (pc * pc * pc.ln().max(1.0));
        let series_tail = series_rel_tail(2, 0, &pt, cfg.exponent_cutoff);
        let g1_rel_tail = prime_tail + series_tail;

        let dense_bound = cfg
            .d_cutoff
            .max(cfg.squarefull_cutoff.isqrt())
            .clamp(4096, 1 << 21)
            + 1;
        let mut g_over = vec![0.0f64; dense_bound as usize];
        let mut s0_inv = vec![0.0f64; dense_bound as usize];
        for &p in small_primes(dense_bound - 1).iter() {
            let pf = p as f64;
            let s0 = s_series(p, 0, &pt, cfg.exponent_cutoff);
            s0_inv[p as usize] = 1.0 / s0;
            g_over[p as usize] = if p <= cfg.prime_cutoff {
                (1.0 - 1.0 / (pf * pf)) / local_g(p, &pt, cfg.exponent_cutoff)
            } else {
                1.0 - 1.0 / (pf * pf)
            };
        }

        Ok(ConstantEngine {
            cfg: cfg.clone(),
            pt,
            zeta2,
            g1_full,
            g1_rel_tail,
            dense_bound,
            g_over,
            s0_inv,
        })
    }

    pub(crate) fn pt(&self) -> &PartitionTable {
        &self.pt
    }

    fn g_over_at(&self, p: u64) -> f64 {
        if p < self.dense_bound {
            let v = self.g_over[p as usize];
            debug_assert!(v != 0.0, "dense table miss at {p}");
            return v;
        }
        let pf = p as f64;
        let no_g = 1.0 - 1.0 / (pf * pf);
        if p <= self.cfg.prime_cutoff {
            no_g / local_g(p, &self.pt, self.cfg.exponent_cutoff)
        } else {
            no_g
        }
    }

    fn s0_inv_at(&self, p: u64) -> f64 {
        if p < self.dense_bound {
            let v = self.s0_inv[p as usize];
            debug_assert!(v != 0.0, "dense table miss at {p}");
            return v;
        }
        1.0 / s_series(p, 0, &self.pt, self.cfg.exponent_cutoff)
    }

    /// `c(r, k)` from the factorizations of `r` (as a pair slice) and `k`.
    /// The modulus never has to exist as an integer, so huge composite
    /// moduli (e.g. `d^2 * delta * s`) are fine.
    pub(crate) fn c_pairs(&self, r_pairs: &[(u64, u32)], kf: &Factorization) -> f64 {
        let mut v = self.zeta2 * self.g1_full;
        for &(p, vr) in r_pairs {
            let vk = kf.exponent_of(p);
            let l = vr.min(vk);
            if l < vr {
                // p | r1: strip g_p from the product, apply the removed zeta(2)
                // factor; the local correction is P(l) (empty when l = 0)
                v *= self.g_over_at(p);
                if l >= 1 {
                    v *= self.pt.get(l).expect("l within partition cap") as f64;
                }
            } else {
                // l = v_p(r) >= 1: p divides u = gcd(r, k) only; local
                // correction S_p(l) / S_p(0)
                v *= s_series(p, l, &self.pt, self.cfg.exponent_cutoff) * self.s0_inv_at(p);
            }
        }
        v
    }

    /// Relative series-truncation tail for the correction factors of the
    /// primes in `r_pairs` (the prime-product tail is already in
    /// `g1_rel_tail`).
    fn rel_tail_pairs(&self, r_pairs: &[(u64, u32)], kf: &Factorization) -> f64 {
        let mut t = self.g1_rel_tail;
        for &(p, vr) in r_pairs {
            let vk = kf.exponent_of(p);
            let l = vr.min(vk);
            if l == vr {
                t += series_rel_tail(p, l, &self.pt, self.cfg.exponent_cutoff);
            }
        }
        t
    }
}

/// `S_p(l)` truncated at `terms` extra exponents, by Horner in `1/p`.
fn s_series(p: u64, l: u32, pt: &PartitionTable, terms: u32) -> f64 {
    let t = 1.0 / p as f64;
    let hi = (l + terms).min(pt.bound());
    let mut acc = pt.get(hi).expect("within cap") as f64;
    for i in (l..hi).rev() {
        acc = acc * t + pt.get(i).expect("within cap") as f64;
    }
    acc
}

/// Relative size of what `s_series(p, l, ..)` dropped, roughly the first
/// omitted term over the kept sum (with a slack factor for the geometric
/// rest).
fn series_rel_tail(p: u64, l: u32, pt: &PartitionTable, terms: u32) -> f64 {
    let next = l + terms + 1;
    if next > pt.bound() {
        return 0.0; // dropped terms are below 1e-90
    }
    let first = pt.get(next).expect("within cap") as f64 * (p as f64).powi(-(terms as i32 + 1));
    2.5 * first / s_series(p, l, pt, terms)
}

/// `g_p = (1 - 1/p)(1 - 1/p^2) S_p(0)`.
fn local_g(p: u64, pt: &PartitionTable, terms: u32) -> f64 {
    let pf = p as f64;
    (1.0 - 1.0 / pf) * (1.0 - 1.0 / (pf * pf)) * s_series(p, 0, pt, terms)
}

fn config_warnings(cfg: &TruncationConfig, value: f64, tail: f64) -> Vec<String> {
    let mut w = Vec::new();
    if cfg.prime_cutoff < 1000 {
        w.push(format!(
            "prime_cutoff {} is small; tail estimates are unreliable below 1000",
            cfg.prime_cutoff
        ));
    }
    if cfg.exponent_cutoff < 16 {
        w.push(format!(
            "exponent_cutoff {} truncates local series aggressively",
            cfg.exponent_cutoff
        ));
    }
    if value != 0.0 && tail.abs() > 0.05 * value.abs() {
        w.push("tail estimate exceeds 5% of the value; raise the cutoffs".to_string());
    }
    w
}

/// `G(1)` for the principal character mod `r1`: the `g_p` product over
/// primes `p <= prime_cutoff` not dividing `r1`.
pub fn g1_principal(r1: u64, cfg: &TruncationConfig) -> Result<ConstantResult, ConstError> {
    if r1 < 1 {
        return Err(ConstError::BadModulus);
    }
    cfg.validate()?;
    let pt = partition_table(PT_CAP)?;
    let mut v = 1.0;
    for &p in small_primes(cfg.prime_cutoff).iter() {
        if r1 % p != 0 {
            v *= local_g(p, &pt, cfg.exponent_cutoff);
        }
    }
    let pc = cfg.prime_cutoff as f64;
    let rel_tail = 0.5 / (pc * pc * pc.ln().max(1.0))
        + series_rel_tail(2, 0, &pt, cfg.exponent_cutoff);
    let tail = v * rel_tail;
    Ok(ConstantResult {
        value: v,
        tail_estimate: tail,
        config: cfg.clone(),
        warnings: config_warnings(cfg, v, tail),
    })
}

/// `F_u(1)` for the principal character mod `r1`: local factor `P(l)` at
/// primes of `u` dividing `r1`, `S_p(l)/S_p(0)` at the rest.
pub fn f_u_principal(
    u: &Factorization,
    r1: u64,
    cfg: &TruncationConfig,
) -> Result<ConstantResult, ConstError> {
    if r1 < 1 {
        return Err(ConstError::BadModulus);
    }
    cfg.validate()?;
    let pt = partition_table(PT_CAP)?;
    let mut v = 1.0;
    let mut rel_tail = 0.0;
    for &(p, l) in u.pairs() {
        if r1 % p == 0 {
            v *= pt.get(l).ok_or(ArithError::ExponentOutOfRange {
                exponent: l,
                bound: pt.bound(),
            })? as f64;
        } else {
            v *= s_series(p, l, &pt, cfg.exponent_cutoff)
                / s_series(p, 0, &pt, cfg.exponent_cutoff);
            rel_tail += series_rel_tail(p, l, &pt, cfg.exponent_cutoff);
        }
    }
    let tail = v * rel_tail;
    Ok(ConstantResult {
        value: v,
        tail_estimate: tail,
        config: cfg.clone(),
        warnings: config_warnings(cfg, v, tail),
    })
}

/// The progression density `c(r, k)`: with `u = gcd(r, k)` and `r1 = r/u`,
/// the product `L(2) * G(1) * F_u(1)` for the principal character mod `r1`.
pub fn c_rk(r: u64, k: u64, cfg: &TruncationConfig) -> Result<ConstantResult, ConstError> {
    if r < 1 || k < 1 {
        return Err(ConstError::BadModulus);
    }
    let engine = ConstantEngine::new(cfg)?;
    let rf = factorize(r)?;
    let kf = factorize(k)?;
    let value = engine.c_pairs(rf.pairs(), &kf);
    let tail = value.abs() * engine.rel_tail_pairs(rf.pairs(), &kf);
    Ok(ConstantResult {
        value,
        tail_estimate: tail,
        config: cfg.clone(),
        warnings: config_warnings(cfg, value, tail),
    })
}

/// The leading coefficient `C` of `Q(x)`: for each squarefull `s` (with
/// `k = a(s)`), sum `mu(d)/d^2 * mu(delta)/delta * c(d^2 delta s, k) / s`
/// over `d <= d_cutoff` coprime to `s` and squarefree `delta | s`, then sum
/// over `s <= squarefull_cutoff`. Term order is fixed; summation is
/// compensated.
pub fn c_series(cfg: &TruncationConfig) -> Result<ConstantResult, ConstError> {
    cfg.validate()?;
    let engine = ConstantEngine::new(cfg)?;

    // squarefree d with mu and prime support, ascending
    struct DEntry {
        d: u64,
        mu: f64,
        primes: Vec<u64>,
    }
    let spf = SpfTable::new(cfg.d_cutoff as usize);
    let mut dlist: Vec<DEntry> = Vec::new();
    for d in 1..=cfg.d_cutoff {
        let pairs = spf.factor_pairs(d);
        if pairs.iter().any(|&(_, e)| e >= 2) {
            continue;
        }
        let f = Factorization::from_pairs(pairs.clone());
        dlist.push(DEntry {
            d,
            mu: mobius(&f) as f64,
            primes: pairs.iter().map(|&(p, _)| p).collect(),
        });
    }

    let mut sum = KahanSum::new();
    let mut merged: Vec<(u64, u32)> = Vec::with_capacity(16);
    for (s, fs) in squarefull_iter(cfg.squarefull_cutoff) {
        let k = a_of(&fs, engine.pt())?;
        let kf = factorize(k)?;
        let s_inv = 1.0 / s as f64;
        let coprime: Vec<&DEntry> = dlist
            .iter()
            .filter(|e| e.primes.iter().all(|p| fs.exponent_of(*p) == 0))
            .collect();
        let mut divisors = fs.squarefree_divisors();
        divisors.sort(); // fixed term order regardless of enumeration details
        for (delta, mu_delta) in divisors {
            // s with the exponents of delta's primes bumped: delta * s
            let bumped: Vec<(u64, u32)> = fs
                .pairs()
                .iter()
                .map(|&(p, e)| (p, e + u32::from(delta % p == 0)))
                .collect();
            let w_delta = mu_delta as f64 / delta as f64;
            for entry in &coprime {
                // d^2 * delta * s as a merged pair list (d coprime to s)
                merged.clear();
                let mut di = entry.primes.iter().peekable();
                let mut si = bumped.iter().peekable();
                loop {
                    match (di.peek(), si.peek()) {
                        (Some(&&dp), Some(&&(sp, se))) => {
                            if dp < sp {
                                merged.push((dp, 2));
                                di.next();
                            } else {
                                merged.push((sp, se));
                                si.next();
                            }
                        }
                        (Some(&&dp), None) => {
                            merged.push((dp, 2));
                            di.next();
                        }
                        (None, Some(&&(sp, se))) => {
                            merged.push((sp, se));
                            si.next();
                        }
                        (None, None) => break,
                    }
                }
                let c = engine.c_pairs(&merged, &kf);
                let df = entry.d as f64;
                sum.add(entry.mu / (df * df) * w_delta * c * s_inv);
            }
        }
    }

    let value = sum.value();
    // heuristic truncation tails: omitted squarefull moduli carry O(c/s)
    // terms with sum_{s>S} 1/s ~ 2 * 2.17 / sqrt(S); the d tail uses
    // sum_{squarefull} d(s)/s ~ 6.3 and sum_{d>D} 1/d^2 ~ 1/D
    let c11 = engine.zeta2 * engine.g1_full;
    let tail_s = 2.0 * 2.17 * c11 / (cfg.squarefull_cutoff as f64).sqrt();
    let tail_d = 6.3 * c11 / cfg.d_cutoff as f64;
    let tail = tail_s + tail_d + value.abs() * engine.g1_rel_tail;
    Ok(ConstantResult {
        value,
        tail_estimate: tail,
        config: cfg.clone(),
        warnings: config_warnings(cfg, value, tail),
    })
}

#[cfg(test)]
mod tests {
    // reference values keep every digit produced by the external oracle
    #![allow(clippy::excessive_precision)]

    use super::*;

    fn cfg() -> TruncationConfig {
        TruncationConfig::default()
    }

    fn assert_close(got: f64, want: f64, rel: f64, what: &str) {
        let err = (got - want).abs() / want.abs().max(1e-300);
        assert!(
            err <= rel,
            "{what}: got {got:.17e}, want {want:.17e}, rel err {err:.3e}"
        );
    }

    #[test]
    fn zeta_int_known_values() {
        assert_close(zeta_int(2).unwrap(), 1.6449340668482264, 1e-14, "zeta(2)");
        assert_close(zeta_int(3).unwrap(), 1.2020569031595943, 1e-14, "zeta(3)");
        assert_close(zeta_int(4).unwrap(), 1.0823232337111382, 1e-14, "zeta(4)");
        // zeta(64) - 1 ~ 5.4e-20 is below f64 resolution around 1.0
        let z64 = zeta_int(64).unwrap() - 1.0;
        assert!((0.0..1e-19).contains(&z64), "zeta(64) - 1 = {z64:e}");
        assert!(matches!(zeta_int(1), Err(ConstError::BadZetaArg { j: 1 })));
        assert!(matches!(zeta_int(0), Err(ConstError::BadZetaArg { j: 0 })));
    }

    #[test]
    fn zeta_product_matches_reference() {
        // prod_{j>=2} zeta(j), truncation beyond 64 is ~2^-65
        assert_close(
            zeta_product(2, 64).unwrap(),
            2.2948565916733138,
            1e-13,
            "zeta product",
        );
        assert_close(
            zeta_product(3, 64).unwrap(),
            1.3951055169465670,
            1e-13,
            "zeta product from 3",
        );
        assert!(zeta_product(2, 1).is_err());
    }

    #[test]
    fn l2_principal_values() {
        assert_close(l2_principal(1).unwrap(), 1.6449340668482264, 1e-14, "L2(1)");
        // (1 - 1/4) zeta(2)
        assert_close(l2_principal(2).unwrap(), 1.2337005501361697, 1e-14, "L2(2)");
        assert_close(
            l2_principal(4).unwrap(),
            1.2337005501361697,
            1e-14,
            "L2(4) = L2(2): same radical",
        );
        assert!(l2_principal(0).is_err());
    }

    #[test]
    fn kahan_recovers_cancelled_small_term() {
        let mut k = KahanSum::new();
        for x in [1e100, 1.0, -1e100] {
            k.add(x);
        }
        assert_eq!(k.value(), 1.0);
        let mut naive = 0.0;
        for x in [1e100f64, 1.0, -1e100] {
            naive += x;
        }
        assert_eq!(naive, 0.0); // this is why compensation is needed
    }

    #[test]
    fn g1_identity_with_zeta_product() {
        // with nothing excluded, G(1) is prod_{j>=3} zeta(j)
        let g = g1_principal(1, &cfg()).unwrap();
        assert_close(g.value, 1.3951055169465670, 2e-9, "G(1) mod 1");
        assert!(g.warnings.is_empty(), "unexpected warnings: {:?}", g.warnings);
        assert!(g.tail_estimate > 0.0 && g.tail_estimate < 1e-8);
    }

    #[test]
    fn g1_factor_removal_consistency() {
        // removing a prime from the product is exactly division by g_p
        let pt = partition_table(PT_CAP).unwrap();
        let c = cfg();
        let g1 = g1_principal(1, &c).unwrap().value;
        for r1 in [2u64, 3, 6, 30] {
            let removed = g1_principal(r1, &c).unwrap().value;
            let mut back = removed;
            for &(p, _) in factorize(r1).unwrap().pairs() {
                back *= local_g(p, &pt, c.exponent_cutoff);
            }
            assert_close(back, g1, 1e-12, &format!("factor removal r1={r1}"));
        }
    }

    #[test]
    fn f_u_anchors() {
        let c = cfg();
        let one = f_u_principal(&factorize(1).unwrap(), 7, &c).unwrap();
        assert_eq!(one.value, 1.0); // empty product, exactly

        // u = 8, r1 even: the character kills p = 2, factor is P(3) = 3
        let f8 = f_u_principal(&factorize(8).unwrap(), 2, &c).unwrap();
        assert_eq!(f8.value, 3.0);

        // u = 4, r1 odd: factor is S_2(2) / S_2(0)
        let f4 = f_u_principal(&factorize(4).unwrap(), 3, &c).unwrap();
        assert_close(f4.value, 2.2672714294803855, 1e-10, "F_4 odd r1");
    }

    #[test]
    fn c_rk_reference_values() {
        // frozen from an independent high-precision evaluation
        let cases = [
            (1u64, 1u64, 2.2948565916733138),
            (2, 1, 1.3254545272112344),
            (3, 1, 1.9281135331497136),
            (4, 1, 1.3254545272112344), // same radical as r = 2
            (4, 2, 1.3254545272112344), // u = 2, r1 = 2: F = P(1) = 1
            (8, 2, 1.3254545272112344),
            (9, 2, 1.9281135331497136),
            (9, 3, 1.9281135331497136),
            (5, 1, 2.1810684105859762),
            (6, 2, 2.7425945976014183),
            (12, 4, 4.3715567265048277),
            (2, 2, 3.2642586561308770), // k multiple of r: c11 * F_r trivial
            (4, 4, 5.2030627850505197),
        ];
        let c = cfg();
        for (r, k, want) in cases {
            let got = c_rk(r, k, &c).unwrap();
            assert_close(got.value, want, 2e-9, &format!("c({r},{k})"));
            assert!(got.tail_estimate < 1e-6);
        }
    }

    #[test]
    fn c_rk_zeta_identity_within_1e8() {
        let got = c_rk(1, 1, &cfg()).unwrap().value;
        let reference = zeta_product(2, cfg().zeta_cutoff).unwrap();
        assert!(
            (got - reference).abs() / reference <= 1e-8,
            "two routes differ: {got} vs {reference}"
        );
    }

    #[test]
    fn c_rk_engine_matches_direct_composition() {
        let c = cfg();
        for (r, k) in [(1u64, 1u64), (2, 1), (12, 4), (9, 3), (8, 2), (60, 45), (49, 7), (100, 10)] {
            let engine_val = c_rk(r, k, &c).unwrap().value;
            let u = gcd(r, k);
            let r1 = r / u;
            let direct = l2_principal(r1).unwrap()
                * g1_principal(r1, &c).unwrap().value
                * f_u_principal(&factorize(u).unwrap(), r1, &c).unwrap().value;
            assert_close(engine_val, direct, 1e-11, &format!("c({r},{k}) routes"));
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
    fn c_rk_divisor_bound_sweep() {
        use crate::arith::dk_of;
        // |c(r, k)| <= K d(r): the max ratio over this sweep is 3.372
        let c = cfg();
        let mut max_ratio: f64 = 0.0;
        for r in 1..=100u64 {
            let dr = dk_of(&factorize(r).unwrap(), 2).unwrap() as f64;
            for k in 1..=r {
                let v = c_rk(r, k, &c).unwrap().value;
                assert!(v.is_finite() && v > 0.0);
                max_ratio = max_ratio.max(v / dr);
            }
        }
        assert!(max_ratio < 3.5, "ratio {max_ratio} exceeds fitted bound");
        assert!(max_ratio > 1.0, "sweep degenerate");
    }

    #[test]
    fn f_u_divisor_bound_sweep() {
        use crate::arith::dk_of;
        // F_u(1) <= K' d(u) over u <= 1e4 with trivial character (r1 = 1);
        // the max ratio over this sweep is 6.041
        let c = cfg();
        let mut max_ratio: f64 = 0.0;
        for u in 1..=10_000u64 {
            let f = factorize(u).unwrap();
            let v = f_u_principal(&f, 1, &c).unwrap().value;
            let du = dk_of(&f, 2).unwrap() as f64;
            max_ratio = max_ratio.max(v / du);
        }
        assert!(max_ratio < 6.5, "ratio {max_ratio} exceeds fitted bound");
        assert!(max_ratio > 1.0, "sweep degenerate");
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(c_rk(0, 1, &cfg()), Err(ConstError::BadModulus)));
        assert!(matches!(c_rk(1, 0, &cfg()), Err(ConstError::BadModulus)));
        let mut bad = cfg();
        bad.prime_cutoff = 1;
        assert!(matches!(c_rk(2, 1, &bad), Err(ConstError::BadConfig { .. })));
        let mut bad2 = cfg();
        bad2.d_cutoff = 0;
        assert!(matches!(c_series(&bad2), Err(ConstError::BadConfig { .. })));
    }

    #[test]
    fn small_cutoffs_warn() {
        let small = TruncationConfig {
            prime_cutoff: 50,
            exponent_cutoff: 8,
            ..cfg()
        };
        let g = g1_principal(1, &small).unwrap();
        assert!(g.warnings.len() >= 2, "warnings: {:?}", g.warnings);
    }

    #[test]
    fn c_series_converges_and_is_stable() {
        let coarse = TruncationConfig {
            prime_cutoff: 20_000,
            squarefull_cutoff: 20_000,
            d_cutoff: 500,
            ..cfg()
        };
        let fine = TruncationConfig {
            prime_cutoff: 20_000,
            squarefull_cutoff: 200_000,
            d_cutoff: 2_000,
            ..cfg()
        };
        let a = c_series(&coarse).unwrap();
        let b = c_series(&fine).unwrap();
        assert!(a.value.is_finite() && b.value.is_finite());
        assert!(a.value > 1.0 && a.value < 4.0, "C out of range: {}", a.value);
        let drift = (a.value - b.value).abs() / b.value;
        assert!(drift < 0.02, "cutoff drift {drift} too large");
        assert!(drift <= a.tail_estimate.abs() * 20.0 + 1e-3);
    }
}
