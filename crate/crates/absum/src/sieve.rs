//! Segmented sieves over `a(n)` and `d_k(n)`, and the summatory functions
//! built on them.
//!
//! A segment `[lo, hi)` keeps two arrays: the residual cofactor of each `n`
//! (primes `<= sqrt(hi-1)` divided out) and the running multiplicative value.
//! Any residual `> 1` at the end is a single prime to the first power, so it
//! contributes `P(1) = 1` to `a` and `k` to `d_k`.
//!
//! The shifted sums `Q(x) = sum a(n + a(n))` and `sum d_k(n + a(n))` need
//! values beyond the current position. Segments are produced in order with a
//! bounded lookahead window of `margin` extra values; `a(n) > margin` for
//! some `n <= x` aborts the pass with the observed maximum so the caller can
//! retry with a bigger margin.
//!
//! All sums are exact `u64` integers accumulated in a fixed order, so results
//! are identical across thread counts and segment sizes.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{factorize, partition_table, ArithError, Factorization, PartitionTable};
use crate::primes::{small_primes, SpfTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SieveError {
    #[error("a({n}) exceeds 16-bit storage")]
    ValueOverflow { n: u64 },
    #[error("d_k({n}) overflows u64")]
    DkOverflow { n: u64 },
    #[error("lookahead margin {margin} exceeded: max a-value seen is {observed}")]
    MarginExceeded { margin: u64, observed: u64 },
    #[error("sum overflows u64")]
    SumOverflow,
    #[error("empty or inverted range [{lo}, {hi})")]
    BadRange { lo: u64, hi: u64 },
    #[error("x = {x} plus margin {margin} overflows u64")]
    WindowTooLarge { x: u64, margin: u64 },
    #[error("modulus r must be nonzero")]
    ZeroModulus,
    #[error("segment length must be at least 65536, got {given}")]
    BadSegmentLen { given: usize },
    #[error("sieved divisor order must be 2, 3, or 4, got {k}")]
    BadSieveK { k: u32 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub const MIN_SEGMENT_LEN: usize = 1 << 16;

/// Tuning knobs for the segmented sieves. Defaults suit ranges up to ~1e9.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    segment_len: usize,
    margin: u64,
    threads: Option<usize>,
}

impl Default for SieveConfig {
    fn default() -> SieveConfig {
        SieveConfig {
            segment_len: 1 << 18,
            margin: u16::MAX as u64,
            threads: None,
        }
    }
}

impl SieveConfig {
    pub fn new() -> SieveConfig {
        SieveConfig::default()
    }

    pub fn with_segment_len(mut self, len: usize) -> Result<SieveConfig, SieveError> {
        if len < MIN_SEGMENT_LEN {
            return Err(SieveError::BadSegmentLen { given: len });
        }
        self.segment_len = len;
        Ok(self)
    }

    /// Lookahead margin for shifted sums; must be at least `A(x)`.
    pub fn with_margin(mut self, margin: u64) -> SieveConfig {
        self.margin = margin;
        self
    }

    /// Worker count; `None` uses the global rayon pool.
    pub fn with_threads(mut self, threads: usize) -> SieveConfig {
        self.threads = Some(threads);
        self
    }

    pub fn segment_len(&self) -> usize {
        self.segment_len
    }

    pub fn margin(&self) -> u64 {
        self.margin
    }

    pub fn threads(&self) -> Option<usize> {
        self.threads
    }
}

/// Runs `f` on a dedicated pool when a thread count is pinned.
fn run_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// A window of 16-bit `a`-values for `n` in `[offset, offset + len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AValueWindow {
    offset: u64,
    values: Vec<u16>,
}

impl AValueWindow {
    pub(crate) fn new(offset: u64, values: Vec<u16>) -> AValueWindow {
        AValueWindow { offset, values }
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<u16> {
        let i = n.checked_sub(self.offset)?;
        self.values.get(i as usize).copied()
    }
}

/// A window of `d_k` values for `n` in `[offset, offset + len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DkWindow {
    offset: u64,
    values: Vec<u64>,
}

impl DkWindow {
    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        let i = n.checked_sub(self.offset)?;
        self.values.get(i as usize).copied()
    }
}

/// Shared per-run tables: primes to the sieving bound and partition values
/// for every exponent a u64 can carry.
struct SieveCtx {
    primes: Vec<u64>,
    pt: PartitionTable,
}

impl SieveCtx {
    fn new(hi: u64) -> Result<SieveCtx, SieveError> {
        let bound = if hi <= 1 { 0 } else { (hi - 1).isqrt() };
        Ok(SieveCtx {
            primes: small_primes(bound),
            pt: partition_table(64)?,
        })
    }
}

/// Sieves `a(n)` over `[lo, hi)`. On 16-bit overflow reports the smallest
/// offending `n`, independent of segmentation.
fn sieve_a_segment(lo: u64, hi: u64, ctx: &SieveCtx) -> Result<Vec<u16>, SieveError> {
    let len = (hi - lo) as usize;
    let mut rem: Vec<u64> = (lo..hi).collect();
    let mut val: Vec<u64> = vec![1; len];
    let cap = u16::MAX as u64;
    for &p in &ctx.primes {
        if p.saturating_mul(p) >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p; // lo >= 1, so m >= p
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0u32;
            while rem[i] % p == 0 {
                rem[i] /= p;
                e += 1;
            }
            let part = ctx.pt.get(e).expect("exponent within u64 range");
            val[i] = val[i].saturating_mul(part);
            m += p;
        }
    }
    // residual cofactors are 1 or a single prime: factor P(1) = 1
    let mut out = vec![0u16; len];
    for i in 0..len {
        if val[i] > cap {
            // ascending scan, so this is the smallest offending n
            return Err(SieveError::ValueOverflow { n: lo + i as u64 });
        }
        out[i] = val[i] as u16;
    }
    Ok(out)
}

/// Per-exponent local factors of `d_k`: `C(e + k - 1, k - 1)` for `e <= 63`.
fn dk_local_table(k: u32) -> Vec<u64> {
    let mut t = Vec::with_capacity(64);
    for e in 0u64..64 {
        let mut acc: u128 = 1;
        for i in 1..=(k as u128 - 1) {
            acc = acc * (e as u128 + i) / i;
        }
        t.push(acc as u64);
    }
    t
}

fn sieve_dk_segment(
    lo: u64,
    hi: u64,
    ctx: &SieveCtx,
    local: &[u64],
) -> Result<Vec<u64>, SieveError> {
    let len = (hi - lo) as usize;
    let mut rem: Vec<u64> = (lo..hi).collect();
    let mut val: Vec<u64> = vec![1; len];
    let mut saturated = false;
    for &p in &ctx.primes {
        if p.saturating_mul(p) >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p; // lo >= 1, so m >= p
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0usize;
            while rem[i] % p == 0 {
                rem[i] /= p;
                e += 1;
            }
            val[i] = match val[i].checked_mul(local[e]) {
                Some(v) => v,
                None => {
                    saturated = true;
                    u64::MAX
                }
            };
            m += p;
        }
    }
    for i in 0..len {
        if rem[i] > 1 {
            val[i] = match val[i].checked_mul(local[1]) {
                Some(v) => v,
                None => {
                    saturated = true;
                    u64::MAX
                }
            };
        }
    }
    if saturated {
        // locate the smallest n whose true value overflowed
        if let Some(i) = val.iter().position(|&v| v == u64::MAX) {
            return Err(SieveError::DkOverflow { n: lo + i as u64 });
        }
    }
    Ok(val)
}

/// Splits `[lo, hi)` into segments of at most `b`.
fn segment_bounds(lo: u64, hi: u64, b: usize) -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    let mut cur = lo;
    while cur < hi {
        let end = hi.min(cur + b as u64);
        v.push((cur, end));
        cur = end;
    }
    v
}

/// Sieves segments in parallel, keeping segment order; the error from the
/// earliest segment wins, which keeps reported `n` values deterministic.
fn sieve_segments_par<T: Send>(
    bounds: &[(u64, u64)],
    f: impl Fn(u64, u64) -> Result<T, SieveError> + Sync,
) -> Result<Vec<T>, SieveError> {
    let results: Vec<Result<T, SieveError>> =
        bounds.par_iter().map(|&(lo, hi)| f(lo, hi)).collect();
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        out.push(r?);
    }
    Ok(out)
}

fn check_range(lo: u64, hi: u64) -> Result<(), SieveError> {
    if lo < 1 || hi <= lo {
        return Err(SieveError::BadRange { lo, hi });
    }
    Ok(())
}

/// `a(n)` for all `n` in `[lo, hi)`.
pub fn sieve_a(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<AValueWindow, SieveError> {
    check_range(lo, hi)?;
    run_pool(cfg.threads, || {
        let ctx = SieveCtx::new(hi)?;
        let bounds = segment_bounds(lo, hi, cfg.segment_len);
        let parts = sieve_segments_par(&bounds, |s, e| sieve_a_segment(s, e, &ctx))?;
        let mut values = Vec::with_capacity((hi - lo) as usize);
        for p in parts {
            values.extend_from_slice(&p);
        }
        Ok(AValueWindow::new(lo, values))
    })
}

/// `d_k(n)` for all `n` in `[lo, hi)`, `k` in `{2, 3, 4}`.
pub fn sieve_dk(lo: u64, hi: u64, k: u32, cfg: &SieveConfig) -> Result<DkWindow, SieveError> {
    check_range(lo, hi)?;
    if !(2..=4).contains(&k) {
        return Err(SieveError::BadSieveK { k });
    }
    run_pool(cfg.threads, || {
        let ctx = SieveCtx::new(hi)?;
        let local = dk_local_table(k);
        let bounds = segment_bounds(lo, hi, cfg.segment_len);
        let parts = sieve_segments_par(&bounds, |s, e| sieve_dk_segment(s, e, &ctx, &local))?;
        let mut values = Vec::with_capacity((hi - lo) as usize);
        for p in parts {
            values.extend_from_slice(&p);
        }
        Ok(DkWindow {
            offset: lo,
            values,
        })
    })
}

/// An exact summatory value together with the largest `a(n)` seen for
/// `n <= x` (useful for choosing a margin on retry).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumResult {
    pub value: u64,
    pub observed_max: u64,
}

/// Exact values of a shifted summatory function at several cut points, plus
/// the observed `A(x)` for the largest cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridResult {
    pub values: Vec<u64>,
    pub observed_max: u64,
}

fn check_grid(xs: &[u64]) -> Result<(), SieveError> {
    if xs.is_empty() || xs[0] < 1 {
        return Err(SieveError::BadRange {
            lo: xs.first().copied().unwrap_or(0),
            hi: 0,
        });
    }
    for w in xs.windows(2) {
        if w[0] >= w[1] {
            return Err(SieveError::BadRange { lo: w[1], hi: w[0] });
        }
    }
    Ok(())
}

/// Core streaming pass shared by `q_sum` and `dk_shift_sum`: walks
/// `n = 1..=x` in segment order, reading the summand at `n + a(n)` from a
/// lookahead window of segments. `dk_local` selects `d_k`; `None` sums `a`
/// itself (`Q`).
fn shifted_grid(
    xs: &[u64],
    dk_local: Option<&[u64]>,
    cfg: &SieveConfig,
) -> Result<GridResult, SieveError> {
    check_grid(xs)?;
    let x = *xs.last().expect("nonempty grid");
    let margin = cfg.margin;
    let hi = x
        .checked_add(margin)
        .and_then(|v| v.checked_add(1))
        .ok_or(SieveError::WindowTooLarge { x, margin })?;
    run_pool(cfg.threads, || {
        let ctx = SieveCtx::new(hi)?;
        let b = cfg.segment_len as u64;
        let nblocks = (hi - 1).div_ceil(b) as usize;
        let scan_blocks = x.div_ceil(b) as usize; // block of n: (n - 1) / b
        let kahead = (margin.div_ceil(b)) as usize;
        let batch = rayon::current_num_threads().max(2);

        // block i holds [1 + i*b, min(1 + (i+1)*b, hi))
        let bounds = |i: usize| -> (u64, u64) {
            let lo = 1 + i as u64 * b;
            (lo, hi.min(lo + b))
        };

        // deque[d] is the sieved block front_idx + d; target values are u64
        // (either widened a-values or d_k values)
        let mut deque: VecDeque<(Option<Vec<u16>>, Vec<u64>)> = VecDeque::new();
        let mut front_idx = 0usize;
        let mut produced = 0usize;

        let mut value: u64 = 0;
        let mut observed: u64 = 0;
        let mut exceeded = false;
        let mut results = Vec::with_capacity(xs.len());
        let mut ti = 0usize;

        for i in 0..scan_blocks {
            let need = (i + kahead).min(nblocks - 1);
            while produced <= need {
                let end = (produced + batch).min(nblocks);
                let ranges: Vec<(u64, u64)> = (produced..end).map(bounds).collect();
                let parts = sieve_segments_par(&ranges, |s, e| {
                    let blk = ((s - 1) / b) as usize;
                    match dk_local {
                        Some(local) => {
                            // a-values drive the scan, d_k values are summed
                            let avals = if blk < scan_blocks {
                                Some(sieve_a_segment(s, e, &ctx)?)
                            } else {
                                None
                            };
                            Ok((avals, sieve_dk_segment(s, e, &ctx, local)?))
                        }
                        None => {
                            // Q case: the summand is a itself, one array serves both
                            let av = sieve_a_segment(s, e, &ctx)?;
                            Ok((None, av.iter().map(|&v| v as u64).collect()))
                        }
                    }
                })?;
                deque.extend(parts);
                produced = end;
            }
            while front_idx < i {
                deque.pop_front();
                front_idx += 1;
            }

            let (lo_i, hi_i) = bounds(i);
            let scan_hi = hi_i.min(x + 1);
            let front = &deque[0];
            for n in lo_i..scan_hi {
                let idx0 = (n - lo_i) as usize;
                let av = match &front.0 {
                    Some(a16) => a16[idx0] as u64,
                    None => front.1[idx0],
                };
                if av > observed {
                    observed = av;
                }
                if av > margin {
                    exceeded = true;
                } else {
                    let j = (n - 1) + av; // 0-based offset of n + a(n)
                    let db = (j / b) as usize - i;
                    let idx = (j % b) as usize;
                    let term = deque[db].1[idx];
                    value = value.checked_add(term).ok_or(SieveError::SumOverflow)?;
                }
                while ti < xs.len() && xs[ti] == n {
                    results.push(value);
                    ti += 1;
                }
            }
        }
        if exceeded {
            return Err(SieveError::MarginExceeded { margin, observed });
        }
        Ok(GridResult {
            values: results,
            observed_max: observed,
        })
    })
}

/// `Q(x) = sum_{n<=x} a(n + a(n))` at each cut in `xs` (strictly increasing).
pub fn q_sum_grid(xs: &[u64], cfg: &SieveConfig) -> Result<GridResult, SieveError> {
    shifted_grid(xs, None, cfg)
}

/// `q_sum_grid` with one automatic retry at margin `2 * A(x)` if the
/// configured margin is too small.
pub fn q_sum_grid_auto(xs: &[u64], cfg: &SieveConfig) -> Result<GridResult, SieveError> {
    match q_sum_grid(xs, cfg) {
        Err(SieveError::MarginExceeded { observed, .. }) => {
            let retry = cfg.clone().with_margin(observed.saturating_mul(2));
            q_sum_grid(xs, &retry)
        }
        other => other,
    }
}

/// Exact `Q(x)`.
pub fn q_sum(x: u64, cfg: &SieveConfig) -> Result<SumResult, SieveError> {
    let g = q_sum_grid(&[x], cfg)?;
    Ok(SumResult {
        value: g.values[0],
        observed_max: g.observed_max,
    })
}

/// `q_sum` with one automatic margin retry.
pub fn q_sum_auto(x: u64, cfg: &SieveConfig) -> Result<SumResult, SieveError> {
    let g = q_sum_grid_auto(&[x], cfg)?;
    Ok(SumResult {
        value: g.values[0],
        observed_max: g.observed_max,
    })
}

/// `sum_{n<=x} d_k(n + a(n))` at each cut in `xs`, `k` in `{2, 3, 4}`.
pub fn dk_shift_grid(xs: &[u64], k: u32, cfg: &SieveConfig) -> Result<GridResult, SieveError> {
    if !(2..=4).contains(&k) {
        return Err(SieveError::BadSieveK { k });
    }
    let local = dk_local_table(k);
    shifted_grid(xs, Some(&local), cfg)
}

pub fn dk_shift_grid_auto(
    xs: &[u64],
    k: u32,
    cfg: &SieveConfig,
) -> Result<GridResult, SieveError> {
    match dk_shift_grid(xs, k, cfg) {
        Err(SieveError::MarginExceeded { observed, .. }) => {
            let retry = cfg.clone().with_margin(observed.saturating_mul(2));
            dk_shift_grid(xs, k, &retry)
        }
        other => other,
    }
}

/// Exact `sum_{n<=x} d_k(n + a(n))`.
pub fn dk_shift_sum(x: u64, k: u32, cfg: &SieveConfig) -> Result<SumResult, SieveError> {
    let g = dk_shift_grid(&[x], k, cfg)?;
    Ok(SumResult {
        value: g.values[0],
        observed_max: g.observed_max,
    })
}

pub fn dk_shift_sum_auto(x: u64, k: u32, cfg: &SieveConfig) -> Result<SumResult, SieveError> {
    let g = dk_shift_grid_auto(&[x], k, cfg)?;
    Ok(SumResult {
        value: g.values[0],
        observed_max: g.observed_max,
    })
}

/// `T(x; k, r) = sum_{m<=x, m == k mod r} a(m)` for several `(r, k)` pairs at
/// several cuts, in one sieve pass. Returns `out[pair][cut]`.
pub fn t_sum_multi(
    xs: &[u64],
    pairs: &[(u64, u64)],
    cfg: &SieveConfig,
) -> Result<Vec<Vec<u64>>, SieveError> {
    check_grid(xs)?;
    for &(r, _) in pairs {
        if r == 0 {
            return Err(SieveError::ZeroModulus);
        }
    }
    let x = *xs.last().expect("nonempty grid");
    let hi = x
        .checked_add(1)
        .ok_or(SieveError::WindowTooLarge { x, margin: 0 })?;
    run_pool(cfg.threads, || {
        let ctx = SieveCtx::new(hi)?;
        let bounds = segment_bounds(1, hi, cfg.segment_len);
        let batch = rayon::current_num_threads().max(2);

        struct PairState {
            next_m: u64,
            acc: u64,
            ti: usize,
        }
        let mut state: Vec<PairState> = pairs
            .iter()
            .map(|&(r, k)| {
                let k = k % r;
                PairState {
                    next_m: if k == 0 { r } else { k },
                    acc: 0,
                    ti: 0,
                }
            })
            .collect();
        let mut out: Vec<Vec<u64>> = vec![Vec::with_capacity(xs.len()); pairs.len()];

        for chunk in bounds.chunks(batch) {
            let parts = sieve_segments_par(chunk, |s, e| sieve_a_segment(s, e, &ctx))?;
            for ((lo, seg_hi), vals) in chunk.iter().zip(parts) {
                for (pi, st) in state.iter_mut().enumerate() {
                    let r = pairs[pi].0;
                    let mut m = st.next_m;
                    while m < *seg_hi {
                        while st.ti < xs.len() && xs[st.ti] < m {
                            out[pi].push(st.acc);
                            st.ti += 1;
                        }
                        st.acc = st
                            .acc
                            .checked_add(vals[(m - lo) as usize] as u64)
                            .ok_or(SieveError::SumOverflow)?;
                        m += r;
                    }
                    st.next_m = m;
                }
            }
        }
        for (pi, st) in state.iter_mut().enumerate() {
            while st.ti < xs.len() {
                out[pi].push(st.acc);
                st.ti += 1;
            }
        }
        Ok(out)
    })
}

/// Exact `T(x; k, r)`. `k` is reduced mod `r`; `r = 0` is rejected.
pub fn t_sum(x: u64, k: u64, r: u64, cfg: &SieveConfig) -> Result<u64, SieveError> {
    let v = t_sum_multi(&[x], &[(r, k)], cfg)?;
    Ok(v[0][0])
}

/// `A(x) = max_{n<=x} a(n)`.
pub fn max_a(x: u64, cfg: &SieveConfig) -> Result<u64, SieveError> {
    let hi = x
        .checked_add(1)
        .ok_or(SieveError::WindowTooLarge { x, margin: 0 })?;
    check_range(1, hi)?;
    run_pool(cfg.threads, || {
        let ctx = SieveCtx::new(hi)?;
        let bounds = segment_bounds(1, hi, cfg.segment_len);
        let parts = sieve_segments_par(&bounds, |s, e| {
            let v = sieve_a_segment(s, e, &ctx)?;
            Ok(v.into_iter().max().unwrap_or(0))
        })?;
        Ok(parts.into_iter().max().unwrap_or(0) as u64)
    })
}

/// Exact integer cube root.
fn icbrt(n: u64) -> u64 {
    let mut r = (n as f64).cbrt().round() as u64;
    while r > 0 && (r as u128) * (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// Number of squarefull `s <= u` (1 counts). Every squarefull number is
/// uniquely `a^2 b^3` with `b` squarefree, so the count is
/// `sum over squarefree b^3 <= u of floor(sqrt(u / b^3))`.
pub fn squarefull_count(u: u64) -> u64 {
    if u == 0 {
        return 0;
    }
    let bmax = icbrt(u);
    let spf = SpfTable::new(bmax as usize);
    let mut count = 0u64;
    for b in 1..=bmax {
        if b > 1 && spf.mobius(b) == 0 {
            continue;
        }
        count += (u / (b * b * b)).isqrt();
    }
    count
}

/// Squarefull numbers `s <= s_max` in increasing order, with factorizations.
pub fn squarefull_iter(s_max: u64) -> impl Iterator<Item = (u64, Factorization)> {
    let mut items: Vec<(u64, Factorization)> = Vec::new();
    if s_max >= 1 {
        let bmax = icbrt(s_max);
        let spf = SpfTable::new(bmax as usize);
        for b in 1..=bmax {
            if b > 1 && spf.mobius(b) == 0 {
                continue;
            }
            let b3 = b * b * b;
            let fb = factorize(b).expect("b >= 1");
            let amax = (s_max / b3).isqrt();
            for a in 1..=amax {
                let s = a * a * b3;
                let fa = factorize(a).expect("a >= 1");
                items.push((s, fa.pow_merge(2, &fb, 3)));
            }
        }
    }
    items.sort_by_key(|&(s, _)| s);
    items.into_iter()
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::arith::{a_of, factorize};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn window_matches_pointwise_evaluation(
            lo in 1u64..2_000_000,
            len in 1u64..1000,
        ) {
            let cfg = SieveConfig::default();
            let w = sieve_a(lo, lo + len, &cfg).unwrap();
            let pt = partition_table(64).unwrap();
            for n in lo..lo + len {
                let expect = a_of(&factorize(n).unwrap(), &pt).unwrap();
                prop_assert_eq!(w.get(n).map(u64::from), Some(expect));
            }
        }

        #[test]
        fn q_is_additive_at_random_cuts(x in 2u64..4000) {
            let cfg = SieveConfig::default();
            let pt = partition_table(64).unwrap();
            let q1 = q_sum(x, &cfg).unwrap().value;
            let q0 = q_sum(x - 1, &cfg).unwrap().value;
            let ax = a_of(&factorize(x).unwrap(), &pt).unwrap();
            let term = a_of(&factorize(x + ax).unwrap(), &pt).unwrap();
            prop_assert_eq!(q1, q0 + term);
        }

        #[test]
        fn residue_classes_partition_the_sum(r in 1u64..16, x in 1u64..4000) {
            let cfg = SieveConfig::default();
            let total = t_sum(x, 1, 1, &cfg).unwrap();
            let pairs: Vec<(u64, u64)> = (0..r).map(|k| (r, k)).collect();
            let parts = t_sum_multi(&[x], &pairs, &cfg).unwrap();
            prop_assert_eq!(parts.iter().map(|v| v[0]).sum::<u64>(), total);
        }
    }
}
