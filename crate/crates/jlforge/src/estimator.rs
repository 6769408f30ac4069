//! Monte Carlo measurement of distortion-tail probabilities.
//!
//! A trial draws one realization `(T, D)` from the stream keyed by
//! `(master_seed, trial_index)` and counts a failure when
//! `| ||(1/sqrt(m)) T D x||^2 - 1 | > epsilon`. Only the variables that can
//! influence the statistic are sampled: for support `lo..=hi` these are the
//! diagonals `lo-m ..= hi-1` (in ascending order) followed by `d_lo ..= d_hi`.
//!
//! Vectors whose nonzero entries are exactly `+-1/sqrt(L)` on a contiguous
//! support take an exact integer path: each row's contribution is
//! `L - 2*popcount(t_window XOR sigma)`, squares are accumulated in `u64`,
//! and the failure test `|sum - m*L| > epsilon*m*L` involves no rounding.
//! This keeps Monte Carlo tie-breaking identical to the exhaustive
//! sign-assignment oracle. Other vectors take a float path over the same
//! stream layout.
//!
//! Aggregation is a sum of counts, so results are independent of thread
//! scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::instances::{family_is_disjoint, hard_vector, ShiftedFamily};
use crate::rng::{derive_stream, sample_rademacher, sample_sign_words};
use crate::transforms::TransformKind;
use crate::{Error, Result};

/// Two-sided 95% normal quantile for the Wilson score interval.
const Z95: f64 = 1.959963984540054;

/// Result of a tail estimation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub epsilon: f64,
    pub m: usize,
    pub trials: u64,
    pub failures: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl TailEstimate {
    fn from_counts(epsilon: f64, m: usize, trials: u64, failures: u64) -> Self {
        let p_hat = failures as f64 / trials as f64;
        let (ci_low, ci_high) = wilson_bounds(failures, trials);
        TailEstimate {
            epsilon,
            m,
            trials,
            failures,
            p_hat,
            ci_low,
            ci_high,
        }
    }
}

/// 95% Wilson score interval for `failures` out of `trials`.
pub fn wilson_bounds(failures: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let rad = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // The bounds are exactly 0 and 1 at the extremes; avoid rounding dust.
    let lo = if failures == 0 {
        0.0
    } else {
        ((center - rad) / denom).max(0.0)
    };
    let hi = if failures == trials {
        1.0
    } else {
        ((center + rad) / denom).min(1.0)
    };
    (lo, hi)
}

/// Contiguous `+-1/sqrt(len)` pattern extracted from a vector; bit `o` of
/// `bits` is 1 when the `o`'th support entry is negative. Sampling is
/// relative to the support, so the absolute offset does not appear.
#[derive(Debug, Clone)]
struct SignPattern {
    len: usize,
    bits: Vec<u64>,
}

fn detect_pattern(x: &[f64]) -> Option<SignPattern> {
    let lo0 = x.iter().position(|&v| v != 0.0)?;
    let hi0 = x.iter().rposition(|&v| v != 0.0)?;
    let len = hi0 - lo0 + 1;
    let mag = 1.0 / (len as f64).sqrt();
    let mut bits = vec![0u64; len.div_ceil(64)];
    for (o, &v) in x[lo0..=hi0].iter().enumerate() {
        if v == -mag {
            bits[o / 64] |= 1u64 << (o % 64);
        } else if v != mag {
            return None;
        }
    }
    Some(SignPattern { len, bits })
}

/// Extract `chunks` 64-bit windows of `words` starting at bit `start`.
/// `words` must have one guard word past the last referenced index.
#[inline]
fn window_chunk(words: &[u64], start: usize, chunk: usize) -> u64 {
    let q = start + 64 * chunk;
    let idx = q >> 6;
    let off = q & 63;
    if off == 0 {
        words[idx]
    } else {
        (words[idx] >> off) | (words[idx + 1] << (64 - off))
    }
}

/// Sum over rows `i = 1..=m` of `c_i^2` where
/// `c_i = L - 2 * popcount(window_i XOR sigma)` and window `i` starts at bit
/// `base + (m - i)` of `t_words`.
fn row_square_sum(t_words: &[u64], base: usize, m: usize, sigma: &[u64], len: usize) -> u64 {
    let n_chunks = len.div_ceil(64);
    let tail = len % 64;
    let tail_mask = if tail == 0 { u64::MAX } else { (1u64 << tail) - 1 };
    let mut acc = 0u64;
    for i in 1..=m {
        let start = base + (m - i);
        let mut ones = 0u32;
        for (c, sig) in sigma.iter().enumerate().take(n_chunks) {
            let mut w = window_chunk(t_words, start, c) ^ sig;
            if c + 1 == n_chunks {
                w &= tail_mask;
            }
            ones += w.count_ones();
        }
        let ci = len as i64 - 2 * ones as i64;
        acc += (ci * ci) as u64;
    }
    acc
}

/// One integer trial for the Toeplitz/circulant statistic: returns
/// `sum_i c_i^2` (so `||(1/sqrt(m))TDx||^2 = acc / (m * L)`).
fn toeplitz_trial_acc(master_seed: u64, trial: u64, m: usize, pattern: &SignPattern) -> u64 {
    let len = pattern.len;
    let mut stream = derive_stream(master_seed, trial);
    let mut t_words = sample_sign_words(&mut stream, m + len - 1);
    t_words.push(0); // guard for unaligned window reads
    let d_words = sample_sign_words(&mut stream, len);
    let sigma: Vec<u64> = d_words
        .iter()
        .zip(pattern.bits.iter())
        .map(|(d, p)| d ^ p)
        .collect();
    row_square_sum(&t_words, 0, m, &sigma, len)
}

fn dense_trial_acc(master_seed: u64, trial: u64, m: usize, pattern: &SignPattern) -> u64 {
    let len = pattern.len;
    let n_words = len.div_ceil(64);
    let tail = len % 64;
    let tail_mask = if tail == 0 { u64::MAX } else { (1u64 << tail) - 1 };
    let mut stream = derive_stream(master_seed, trial);
    let mut acc = 0u64;
    for _ in 0..m {
        let mut ones = 0u32;
        for (c, p) in pattern.bits.iter().enumerate().take(n_words) {
            let mut w = stream.next_u64() ^ p;
            if c + 1 == n_words {
                w &= tail_mask;
            }
            ones += w.count_ones();
        }
        let ci = len as i64 - 2 * ones as i64;
        acc += (ci * ci) as u64;
    }
    acc
}

#[inline]
fn acc_fails(acc: u64, m: usize, len: usize, epsilon: f64) -> bool {
    let target = (m * len) as f64;
    ((acc as f64) - target).abs() > epsilon * target
}

/// One float trial over the same stream layout as the integer path:
/// returns `||(1/sqrt(m)) T D x||^2`.
fn toeplitz_trial_float(
    master_seed: u64,
    trial: u64,
    m: usize,
    x: &[f64],
    lo: usize,
    hi: usize,
) -> f64 {
    let len = hi - lo + 1;
    let mut stream = derive_stream(master_seed, trial);
    let t = sample_rademacher(&mut stream, lo as i64 - m as i64, (m + len - 1) as i64)
        .expect("count is nonnegative");
    let d = sample_rademacher(&mut stream, lo as i64, len as i64).expect("count is nonnegative");
    let mut ssq = 0.0;
    for i in 1..=m as i64 {
        let mut yi = 0.0;
        for o in 0..len as i64 {
            let j = lo as i64 + o;
            yi += t.sign(j - i) as f64 * d.sign(j) as f64 * x[(j - 1) as usize];
        }
        ssq += yi * yi;
    }
    ssq / m as f64
}

fn dense_trial_float(master_seed: u64, trial: u64, m: usize, x: &[f64], lo: usize, hi: usize) -> f64 {
    let len = hi - lo + 1;
    let mut stream = derive_stream(master_seed, trial);
    let mut ssq = 0.0;
    for _ in 0..m {
        let row = sample_rademacher(&mut stream, 0, len as i64).expect("count is nonnegative");
        let mut yi = 0.0;
        for o in 0..len {
            yi += row.sign(o as i64) as f64 * x[lo - 1 + o];
        }
        ssq += yi * yi;
    }
    ssq / m as f64
}

fn validate_unit(x: &[f64]) -> Result<(usize, usize)> {
    let norm_sq: f64 = x.iter().map(|v| v * v).sum();
    if (norm_sq.sqrt() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "x must be a unit vector, got ||x|| = {}",
            norm_sq.sqrt()
        )));
    }
    let lo = x.iter().position(|&v| v != 0.0).expect("unit vector is nonzero");
    let hi = x.iter().rposition(|&v| v != 0.0).expect("unit vector is nonzero");
    Ok((lo + 1, hi + 1))
}

fn validate_tail_args(m: usize, epsilon: f64, trials: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0,1), got {epsilon}"
        )));
    }
    Ok(())
}

/// Estimate `Pr[ | ||(1/sqrt(m)) T D x||^2 - 1 | > epsilon ]` for the
/// Toeplitz transform over `trials` independent realizations.
pub fn estimate_tail(
    x: &[f64],
    m: usize,
    epsilon: f64,
    trials: u64,
    master_seed: u64,
) -> Result<TailEstimate> {
    estimate_tail_with(TransformKind::Toeplitz, x, m, epsilon, trials, master_seed)
}

/// As [`estimate_tail`] for a chosen transform kind. Circulant estimation
/// requires the support to stay within the first `n - m` coordinates, where
/// it coincides exactly with the Toeplitz statistic under the realization's
/// draw identification.
pub fn estimate_tail_with(
    kind: TransformKind,
    x: &[f64],
    m: usize,
    epsilon: f64,
    trials: u64,
    master_seed: u64,
) -> Result<TailEstimate> {
    validate_tail_args(m, epsilon, trials)?;
    let (lo, hi) = validate_unit(x)?;
    if kind == TransformKind::Circulant {
        let n = x.len();
        if hi + m > n {
            return Err(Error::InvalidArgument(format!(
                "circulant estimation needs support within the first n-m \
                 coordinates (support ends at {hi}, n={n}, m={m})"
            )));
        }
    }
    let failures = match detect_pattern(x) {
        Some(pattern) => {
            let len = pattern.len;
            match kind {
                TransformKind::Dense => (0..trials)
                    .into_par_iter()
                    .map(|t| acc_fails(dense_trial_acc(master_seed, t, m, &pattern), m, len, epsilon) as u64)
                    .sum(),
                _ => (0..trials)
                    .into_par_iter()
                    .map(|t| acc_fails(toeplitz_trial_acc(master_seed, t, m, &pattern), m, len, epsilon) as u64)
                    .sum(),
            }
        }
        None => match kind {
            TransformKind::Dense => (0..trials)
                .into_par_iter()
                .map(|t| {
                    let v = dense_trial_float(master_seed, t, m, x, lo, hi);
                    ((v - 1.0).abs() > epsilon) as u64
                })
                .sum(),
            _ => (0..trials)
                .into_par_iter()
                .map(|t| {
                    let v = toeplitz_trial_float(master_seed, t, m, x, lo, hi);
                    ((v - 1.0).abs() > epsilon) as u64
                })
                .sum(),
        },
    };
    Ok(TailEstimate::from_counts(epsilon, m, trials, failures))
}

/// Per-trial values of `||(1/sqrt(m)) T D x||^2` over the same streams as
/// [`estimate_tail`], in trial order.
pub fn norm_statistic_samples(
    x: &[f64],
    m: usize,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let (lo, hi) = validate_unit(x)?;
    match detect_pattern(x) {
        Some(pattern) => {
            let scale = (m * pattern.len) as f64;
            Ok((0..trials)
                .into_par_iter()
                .map(|t| toeplitz_trial_acc(master_seed, t, m, &pattern) as f64 / scale)
                .collect())
        }
        None => Ok((0..trials)
            .into_par_iter()
            .map(|t| toeplitz_trial_float(master_seed, t, m, x, lo, hi))
            .collect()),
    }
}

/// One row of a scaling sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub transform: TransformKind,
    pub epsilon: f64,
    pub m: usize,
    pub k: usize,
    pub trials: u64,
    pub failures: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub wall_time_s: f64,
}

/// Outcome per grid point: a completed row, or a skip with its reason.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepEntry {
    Row(SweepRow),
    Skipped { m: usize, reason: String },
}

impl SweepEntry {
    pub fn row(&self) -> Option<&SweepRow> {
        match self {
            SweepEntry::Row(r) => Some(r),
            SweepEntry::Skipped { .. } => None,
        }
    }
}

/// Largest even `k` with `2 <= k <= cap`, or `None` when `cap < 2`.
fn even_floor(cap: f64) -> Option<usize> {
    if cap < 2.0 {
        return None;
    }
    let k = (cap.floor() as usize) & !1;
    if k >= 2 {
        Some(k)
    } else {
        None
    }
}

/// `k` used at grid point `m`: the largest even `k <= c0 * epsilon *
/// sqrt(m)`, clamped to at least 2 and to the theorem regime `k < m/4`.
/// `None` when no even `k >= 2` fits the regime.
pub fn sweep_k(m: usize, epsilon: f64, c0: f64) -> Option<usize> {
    let regime_cap = even_floor((m as f64) / 4.0 - 1.0)?;
    let target = even_floor(c0 * epsilon * (m as f64).sqrt()).unwrap_or(2);
    Some(target.clamp(2, regime_cap))
}

fn instance_n(kind: TransformKind, m: usize, s: usize) -> usize {
    match kind {
        TransformKind::Circulant => m + s,
        _ => s,
    }
}

/// Tail estimates for the per-`m` hard instance over an increasing grid,
/// with `k` rescaled by each `c0` in `c0_grid` (one row per `(m, c0)`).
pub fn scaling_sweep(
    kind: TransformKind,
    epsilon: f64,
    m_grid: &[usize],
    trials: u64,
    master_seed: u64,
    c0_grid: &[f64],
) -> Result<Vec<SweepEntry>> {
    if m_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "m grid must be strictly increasing".into(),
        ));
    }
    if c0_grid.is_empty() {
        return Err(Error::InvalidArgument("c0 grid must be nonempty".into()));
    }
    let mut out = Vec::new();
    for &m in m_grid {
        for &c0 in c0_grid {
            let Some(k) = sweep_k(m, epsilon, c0) else {
                out.push(SweepEntry::Skipped {
                    m,
                    reason: format!("no even k >= 2 fits the regime k < m/4 at m={m}"),
                });
                continue;
            };
            let s = 4 * k;
            let inst = hard_vector(k, instance_n(kind, m, s), 0)?;
            let started = std::time::Instant::now();
            let est = estimate_tail_with(kind, &inst.x, m, epsilon, trials, master_seed)?;
            out.push(SweepEntry::Row(SweepRow {
                transform: kind,
                epsilon,
                m,
                k,
                trials,
                failures: est.failures,
                p_hat: est.p_hat,
                ci_low: est.ci_low,
                ci_high: est.ci_high,
                seed: master_seed,
                wall_time_s: started.elapsed().as_secs_f64(),
            }));
        }
    }
    Ok(out)
}

/// Ordinary least squares fit of `y` against `x`.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// OLS fit; with fewer than 3 points (or zero variance in `y`) the fit
/// interpolates and `r_squared` is reported as 1.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> LineFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.is_empty() {
        return LineFit {
            slope: 0.0,
            intercept: 0.0,
            r_squared: 1.0,
        };
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys.iter()).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r_squared = if xs.len() < 3 || ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    LineFit {
        slope,
        intercept,
        r_squared,
    }
}

/// Smallest `m <= m_max` (on a doubling-then-bisection grid) whose worst
/// hard-instance failure estimate has `ci_high <= delta`. `None` when no
/// tested `m` passes.
pub fn min_m_for(
    epsilon: f64,
    delta: f64,
    kind: TransformKind,
    trials: u64,
    master_seed: u64,
    m_max: usize,
) -> Result<Option<usize>> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0,1], got {delta}"
        )));
    }
    if (trials as f64) * delta < 100.0 {
        return Err(Error::InvalidArgument(format!(
            "trials={trials} cannot resolve delta={delta}; need trials >= 100/delta"
        )));
    }
    if m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be positive".into()));
    }
    validate_tail_args(1, epsilon, trials)?;

    let passes = |m: usize| -> Result<bool> {
        let cap = (m as f64).sqrt().min(m as f64 / 4.0 - 1.0);
        let mut worst: Option<f64> = None;
        let mut k = 2usize;
        while (k as f64) <= cap {
            let s = 4 * k;
            let inst = hard_vector(k, instance_n(kind, m, s), 0)?;
            let est = estimate_tail_with(kind, &inst.x, m, epsilon, trials, master_seed)?;
            worst = Some(worst.unwrap_or(0.0).max(est.ci_high));
            k += 2;
        }
        // With no feasible hard instance the only upper bound on the
        // failure probability is the trivial 1.
        Ok(worst.unwrap_or(1.0) <= delta)
    };

    // Doubling phase.
    let mut grid = Vec::new();
    let mut m = 1usize;
    while m < m_max {
        grid.push(m);
        m = m.saturating_mul(2);
    }
    grid.push(m_max);
    grid.dedup();

    let mut first_pass = None;
    let mut last_fail = None;
    for &g in &grid {
        if passes(g)? {
            first_pass = Some(g);
            break;
        }
        last_fail = Some(g);
    }
    let Some(hi) = first_pass else {
        return Ok(None);
    };
    let Some(mut lo) = last_fail else {
        return Ok(Some(hi)); // m = 1 already passes
    };
    // Bisection between the last failing and first passing grid points.
    let mut hi = hi;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Result of the all-pairs experiment over a shifted family.
#[derive(Debug, Clone)]
pub struct AllPairsResult {
    pub epsilon: f64,
    pub m: usize,
    pub trials: u64,
    /// Trials in which every nonzero member passed.
    pub successes: u64,
    pub success_hat: f64,
    /// Per-member single-vector estimates (same trials, shared realization).
    pub per_member: Vec<TailEstimate>,
    /// Mean per-member failure fraction.
    pub p_bar: f64,
    /// `(1 - p_bar)^N`, the prediction under independence.
    pub predicted: f64,
}

impl AllPairsResult {
    /// Standard error of `success_hat - predicted` propagated from the
    /// binomial errors of both terms.
    pub fn gap_standard_error(&self) -> f64 {
        let t = self.trials as f64;
        let n = self.per_member.len() as f64;
        let se_succ = (self.success_hat * (1.0 - self.success_hat) / t).sqrt();
        let se_pbar = (self.p_bar * (1.0 - self.p_bar) / (n * t)).sqrt();
        let se_pred = n * (1.0 - self.p_bar).powf(n - 1.0) * se_pbar;
        (se_succ * se_succ + se_pred * se_pred).sqrt()
    }
}

/// Per trial, one `(T, D)` realization shared by the whole family; success
/// iff every nonzero member has `| ||(1/sqrt(m))TDx||^2 - 1 | <= epsilon`.
///
/// The trial draws the full touched window `t_{1-m} ..= t_{n-1}` then
/// `d_1 ..= d_n`, so members read their own disjoint sub-windows of one
/// realization.
pub fn allpairs_experiment(
    family: &ShiftedFamily,
    m: usize,
    epsilon: f64,
    trials: u64,
    master_seed: u64,
) -> Result<AllPairsResult> {
    validate_tail_args(m, epsilon, trials)?;
    if !family_is_disjoint(family, m) {
        return Err(Error::InvalidArgument(
            "family members do not touch disjoint variable sets; the \
             independence prediction would not hold"
            .into(),
        ));
    }
    let n = family.base.n;
    let s = family.base.s;
    let count = family.count;
    let pattern_bits: Vec<u64> = {
        let mut bits = vec![0u64; s.div_ceil(64)];
        for (o, &v) in family.base.sign_pattern.values().iter().enumerate() {
            if v == -1 {
                bits[o / 64] |= 1u64 << (o % 64);
            }
        }
        bits
    };
    let n_chunks = s.div_ceil(64);

    let trial_fails = |trial: u64| -> (u64, Vec<u64>) {
        let mut stream = derive_stream(master_seed, trial);
        let mut t_words = sample_sign_words(&mut stream, n + m - 1);
        t_words.push(0);
        let mut d_words = sample_sign_words(&mut stream, n);
        d_words.push(0);
        let mut member_fail = vec![0u64; count];
        let mut all_ok = true;
        for (idx, fail_slot) in member_fail.iter_mut().enumerate() {
            let shift = idx * family.spacing;
            // Support lo = 1 + shift; lowest diagonal lo - m sits at packed
            // bit (lo - m) - (1 - m) = shift.
            let sigma: Vec<u64> = (0..n_chunks)
                .map(|c| window_chunk(&d_words, shift, c) ^ pattern_bits[c])
                .collect();
            let acc = row_square_sum(&t_words, shift, m, &sigma, s);
            if acc_fails(acc, m, s, epsilon) {
                *fail_slot = 1;
                all_ok = false;
            }
        }
        (all_ok as u64, member_fail)
    };

    let (successes, fails) = (0..trials)
        .into_par_iter()
        .map(trial_fails)
        .reduce(
            || (0u64, vec![0u64; count]),
            |(sa, fa), (sb, fb)| {
                let sum: Vec<u64> = fa.iter().zip(fb.iter()).map(|(a, b)| a + b).collect();
                (sa + sb, sum)
            },
        );

    let per_member: Vec<TailEstimate> = fails
        .iter()
        .map(|&f| TailEstimate::from_counts(epsilon, m, trials, f))
        .collect();
    let p_bar = fails.iter().sum::<u64>() as f64 / (count as u64 * trials) as f64;
    let success_hat = successes as f64 / trials as f64;
    Ok(AllPairsResult {
        epsilon,
        m,
        trials,
        successes,
        success_hat,
        per_member,
        p_bar,
        predicted: (1.0 - p_bar).powi(count as i32),
    })
}

/// Distortion indicator for the pair `(x, y)` given embeddings and the
/// target squared distance: `| ||ex - ey||^2 - target | > epsilon * target`.
/// For pairs involving the zero vector this is literally the norm check
/// with `target = ||x||^2`.
pub fn pair_distorted(ex: &[f64], ey: &[f64], target_dist_sq: f64, epsilon: f64) -> bool {
    let d: f64 = ex
        .iter()
        .zip(ey.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    (d - target_dist_sq).abs() > epsilon * target_dist_sq
}
