//! Exact verification of the moment machinery behind the lower bound.
//!
//! Everything here is exact: tuple counts are integers, moments are
//! rationals computed by exhausting sign assignments, and the tail oracle
//! counts failures over every assignment of the touched variables. Floating
//! point appears only in the final `f64` conveniences.
//!
//! A triple `(row, col_a, col_b)` with distinct columns is viewed as two
//! entries of an `m x s` matrix; it touches columns `col_a`, `col_b` and
//! diagonals `col_a - row`, `col_b - row`. `Gamma_k` counts ordered
//! `k`-tuples of such triples in which every column of `[s]` and every
//! diagonal of `-(m-1)..=s-1` is touched an even number of times; it equals
//! `s^k m^k E[Z_k]` for `Z_k = (||(1/sqrt(m))TDx||^2 - 1)^k` with `x` the
//! uniform-magnitude vector on the first `s` coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::codec::{Triple, Tuple};
use crate::{Error, Result};

/// Elementary-step budget for enumeration calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Default for Budget {
    fn default() -> Self {
        Budget(100_000_000)
    }
}

impl Budget {
    fn check(&self, cost: u128, what: &str) -> Result<()> {
        if cost > self.0 {
            return Err(Error::ResourceLimit(format!(
                "{what} needs {cost} elementary steps, budget is {}",
                self.0
            )));
        }
        Ok(())
    }
}

/// Parameters of a Gamma enumeration: `m` rows, `s` columns, tuple length
/// `k`. The theorem regime has `s = 4k`, but enumeration accepts any
/// `s >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaParams {
    pub m: usize,
    pub s: usize,
    pub k: usize,
}

impl GammaParams {
    pub fn new(m: usize, s: usize, k: usize) -> Result<Self> {
        if m < 1 || s < 2 {
            return Err(Error::InvalidArgument(format!(
                "need m >= 1 and s >= 2, got m={m} s={s}"
            )));
        }
        Ok(GammaParams { m, s, k })
    }

    fn triples_per_position(&self) -> u128 {
        (self.m * self.s * (self.s - 1)) as u128
    }

    /// `(m s (s-1))^len`, saturating.
    fn enumeration_cost(&self, len: usize) -> u128 {
        let base = self.triples_per_position();
        let mut cost: u128 = 1;
        for _ in 0..len {
            cost = cost.saturating_mul(base);
        }
        cost
    }

    fn diag_count(&self) -> usize {
        self.m + self.s - 1
    }

    /// Diagonal `a` (in `-(m-1)..=s-1`) as an array slot.
    fn diag_slot(&self, a: i64) -> usize {
        (a + self.m as i64 - 1) as usize
    }
}

struct ParityState {
    col_odd: Vec<bool>,
    diag_odd: Vec<bool>,
    odd_total: usize,
}

impl ParityState {
    fn new(p: &GammaParams) -> Self {
        ParityState {
            col_odd: vec![false; p.s],
            diag_odd: vec![false; p.diag_count()],
            odd_total: 0,
        }
    }

    fn flip(&mut self, p: &GammaParams, t: &Triple) {
        for col in [t.col_a, t.col_b] {
            let slot = &mut self.col_odd[col];
            self.odd_total = if *slot {
                self.odd_total - 1
            } else {
                self.odd_total + 1
            };
            *slot = !*slot;
        }
        for diag in [t.diag_a(), t.diag_b()] {
            let slot = &mut self.diag_odd[p.diag_slot(diag)];
            self.odd_total = if *slot {
                self.odd_total - 1
            } else {
                self.odd_total + 1
            };
            *slot = !*slot;
        }
    }
}

fn all_triples(p: &GammaParams) -> Vec<Triple> {
    let mut out = Vec::with_capacity(p.m * p.s * (p.s - 1));
    for row in 0..p.m {
        for col_a in 0..p.s {
            for col_b in 0..p.s {
                if col_a != col_b {
                    out.push(Triple { row, col_a, col_b });
                }
            }
        }
    }
    out
}

fn gamma_count_dfs(p: &GammaParams, triples: &[Triple], state: &mut ParityState, depth: usize) -> u128 {
    if depth == 0 {
        return (state.odd_total == 0) as u128;
    }
    // Each triple can fix at most 4 odd parities.
    if state.odd_total > 4 * depth {
        return 0;
    }
    let mut count = 0u128;
    for t in triples {
        state.flip(p, t);
        count += gamma_count_dfs(p, triples, state, depth - 1);
        state.flip(p, t);
    }
    count
}

fn gamma_collect_dfs(
    p: &GammaParams,
    triples: &[Triple],
    state: &mut ParityState,
    depth: usize,
    stack: &mut Vec<Triple>,
    out: &mut Vec<Tuple>,
) {
    if depth == 0 {
        if state.odd_total == 0 {
            out.push(Tuple::new(stack.clone()));
        }
        return;
    }
    if state.odd_total > 4 * depth {
        return;
    }
    for t in triples {
        state.flip(p, t);
        stack.push(*t);
        gamma_collect_dfs(p, triples, state, depth - 1, stack, out);
        stack.pop();
        state.flip(p, t);
    }
}

/// Exact number of ordered `k`-tuples meeting the even-touch parity
/// conditions on all columns and diagonals.
pub fn enumerate_gamma(p: GammaParams, budget: Budget) -> Result<u128> {
    budget.check(p.enumeration_cost(p.k), "gamma enumeration")?;
    let triples = all_triples(&p);
    let mut state = ParityState::new(&p);
    Ok(gamma_count_dfs(&p, &triples, &mut state, p.k))
}

/// The members behind [`enumerate_gamma`], as explicit tuples.
pub fn gamma_family(p: GammaParams, budget: Budget) -> Result<Vec<Tuple>> {
    budget.check(p.enumeration_cost(p.k), "gamma family enumeration")?;
    let triples = all_triples(&p);
    let mut state = ParityState::new(&p);
    let mut stack = Vec::new();
    let mut out = Vec::new();
    gamma_collect_dfs(&p, &triples, &mut state, p.k, &mut stack, &mut out);
    Ok(out)
}

/// Bit width of the touched sign variables: `m + s - 1` diagonals plus `s`
/// diagonal-matrix entries.
fn assignment_bits(p: &GammaParams) -> u32 {
    (p.m + 2 * p.s - 1) as u32
}

/// Lookup table `sq[x] = (s - 2 popcount(x))^2` over `x in 0..2^s`.
fn square_table(s: usize) -> Vec<u32> {
    (0u64..(1 << s))
        .map(|x| {
            let c = s as i64 - 2 * x.count_ones() as i64;
            (c * c) as u32
        })
        .collect()
}

#[inline]
fn assignment_acc(t: u64, d: u64, m: usize, mask: u64, sq: &[u32]) -> u64 {
    let mut acc = 0u64;
    for i in 1..=m {
        acc += sq[(((t >> (m - i)) ^ d) & mask) as usize] as u64;
    }
    acc
}

/// Exact `E[Z_k]` for `x` the uniform-magnitude vector on the first `s`
/// coordinates, by exhausting all `2^(m+2s-1)` assignments of the touched
/// `t` and `d` signs. The sign pattern of `x` is irrelevant: flipping
/// `x_j` is the measure-preserving flip of `d_j`.
pub fn exact_moment(p: GammaParams, budget: Budget) -> Result<BigRational> {
    let bits = assignment_bits(&p);
    if bits > 127 {
        return Err(Error::ResourceLimit(format!(
            "moment exhaustion needs 2^{bits} assignments"
        )));
    }
    budget.check(1u128 << bits, "moment exhaustion")?;
    let sq = square_table(p.s);
    let mask = (1u64 << p.s) - 1;
    let ms = (p.m * p.s) as i64;
    let t_lim = 1u64 << (p.m + p.s - 1);
    let d_lim = 1u64 << p.s;
    let mut total = BigInt::zero();
    let mut partial: i128 = 0;
    for d in 0..d_lim {
        for t in 0..t_lim {
            let dev = assignment_acc(t, d, p.m, mask, &sq) as i64 - ms;
            let term = checked_pow_i128(dev as i128, p.k);
            match term.and_then(|v| partial.checked_add(v)) {
                Some(sum) => partial = sum,
                None => {
                    total += BigInt::from(partial);
                    partial = 0;
                    match checked_pow_i128(dev as i128, p.k) {
                        Some(v) => partial = v,
                        None => total += BigInt::from(dev).pow(p.k as u32),
                    }
                }
            }
        }
        total += BigInt::from(partial);
        partial = 0;
    }
    let denom = BigInt::from(ms).pow(p.k as u32) * (BigInt::one() << bits);
    Ok(BigRational::new(total, denom))
}

fn checked_pow_i128(base: i128, exp: usize) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Exhaustive tail probability over all sign assignments of the touched
/// variables: the exact `Pr[ | ||(1/sqrt(m))TDx||^2 - 1 | > epsilon ]` for
/// the hard instance with support `s`. The failure rule
/// `|acc - m s| > epsilon * m s` is the same integer comparison the Monte
/// Carlo path uses.
pub fn exact_tail_probability(
    m: usize,
    s: usize,
    epsilon: f64,
    budget: Budget,
) -> Result<ExactTail> {
    let p = GammaParams::new(m, s, 0)?;
    let bits = assignment_bits(&p);
    if bits > 63 {
        return Err(Error::ResourceLimit(format!(
            "tail exhaustion needs 2^{bits} assignments"
        )));
    }
    budget.check(1u128 << bits, "tail exhaustion")?;
    let sq = square_table(s);
    let mask = (1u64 << s) - 1;
    let target = (m * s) as f64;
    let t_lim = 1u64 << (m + s - 1);
    let d_lim = 1u64 << s;
    let failures: u64 = (0..d_lim)
        .into_par_iter()
        .map(|d| {
            let mut fails = 0u64;
            for t in 0..t_lim {
                let acc = assignment_acc(t, d, m, mask, &sq);
                if ((acc as f64) - target).abs() > epsilon * target {
                    fails += 1;
                }
            }
            fails
        })
        .sum();
    let total = 1u64 << bits;
    Ok(ExactTail {
        failures,
        total,
        probability: failures as f64 / total as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactTail {
    pub failures: u64,
    pub total: u64,
    pub probability: f64,
}

/// Exact `Pr[Z_k > threshold]` over all sign assignments, with the
/// comparison done in rational arithmetic.
pub fn exact_exceedance_probability(
    p: GammaParams,
    threshold: &BigRational,
    budget: Budget,
) -> Result<BigRational> {
    let bits = assignment_bits(&p);
    if bits > 63 {
        return Err(Error::ResourceLimit(format!(
            "exceedance exhaustion needs 2^{bits} assignments"
        )));
    }
    budget.check(1u128 << bits, "exceedance exhaustion")?;
    let sq = square_table(p.s);
    let mask = (1u64 << p.s) - 1;
    let ms = BigInt::from(p.m * p.s);
    let t_lim = 1u64 << (p.m + p.s - 1);
    let d_lim = 1u64 << p.s;
    let mut exceed = 0u64;
    for d in 0..d_lim {
        for t in 0..t_lim {
            let acc = assignment_acc(t, d, p.m, mask, &sq);
            let z = BigRational::new(BigInt::from(acc) - &ms, ms.clone()).pow(p.k as i32);
            if z > *threshold {
                exceed += 1;
            }
        }
    }
    Ok(BigRational::new(
        BigInt::from(exceed),
        BigInt::one() << bits,
    ))
}

/// Result of enumerating the half-tuple set of Definition-6 type: tuples of
/// length `k/2` touching every column and diagonal at most once, grouped by
/// signature (the set of touched columns and diagonals).
#[derive(Debug, Clone)]
pub struct HalfEnumeration {
    /// `|S|`: the number of half tuples.
    pub half_count: u128,
    /// Tuples per nonempty signature, descending.
    pub signature_counts: Vec<u128>,
}

impl HalfEnumeration {
    /// `B`: the number of nonempty signatures.
    pub fn num_signatures(&self) -> usize {
        self.signature_counts.len()
    }

    /// `sum b_i^2`, the pairs of same-signature halves.
    pub fn sum_b_squared(&self) -> u128 {
        self.signature_counts.iter().map(|b| b * b).sum()
    }
}

/// Enumerate the half tuples for even `k`: length `k/2`, each column and
/// diagonal touched at most once.
pub fn enumerate_half(p: GammaParams, budget: Budget) -> Result<HalfEnumeration> {
    if !p.k.is_multiple_of(2) || p.k == 0 {
        return Err(Error::InvalidArgument(format!(
            "half enumeration needs positive even k, got {}",
            p.k
        )));
    }
    let half = p.k / 2;
    budget.check(p.enumeration_cost(half), "half enumeration")?;
    let triples = all_triples(&p);
    let mut sigs: BTreeMap<(Vec<usize>, Vec<i64>), u128> = BTreeMap::new();
    let mut col_used = vec![false; p.s];
    let mut diag_used = vec![false; p.diag_count()];
    let mut stack: Vec<Triple> = Vec::new();

    fn dfs(
        p: &GammaParams,
        triples: &[Triple],
        col_used: &mut [bool],
        diag_used: &mut [bool],
        stack: &mut Vec<Triple>,
        depth: usize,
        sigs: &mut BTreeMap<(Vec<usize>, Vec<i64>), u128>,
    ) {
        if depth == 0 {
            let mut cols: Vec<usize> = Vec::with_capacity(2 * stack.len());
            let mut diags: Vec<i64> = Vec::with_capacity(2 * stack.len());
            for t in stack.iter() {
                cols.push(t.col_a);
                cols.push(t.col_b);
                diags.push(t.diag_a());
                diags.push(t.diag_b());
            }
            cols.sort_unstable();
            diags.sort_unstable();
            *sigs.entry((cols, diags)).or_insert(0) += 1;
            return;
        }
        for t in triples {
            let da = p.diag_slot(t.diag_a());
            let db = p.diag_slot(t.diag_b());
            if col_used[t.col_a] || col_used[t.col_b] || diag_used[da] || diag_used[db] {
                continue;
            }
            col_used[t.col_a] = true;
            col_used[t.col_b] = true;
            diag_used[da] = true;
            diag_used[db] = true;
            stack.push(*t);
            dfs(p, triples, col_used, diag_used, stack, depth - 1, sigs);
            stack.pop();
            col_used[t.col_a] = false;
            col_used[t.col_b] = false;
            diag_used[da] = false;
            diag_used[db] = false;
        }
    }

    dfs(
        &p,
        &triples,
        &mut col_used,
        &mut diag_used,
        &mut stack,
        half,
        &mut sigs,
    );
    let mut signature_counts: Vec<u128> = sigs.into_values().collect();
    signature_counts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(HalfEnumeration {
        half_count: signature_counts.iter().sum(),
        signature_counts,
    })
}

/// The counting recurrence behind the half-tuple lower bound:
/// `F(r, c, t) = r * c * (c-1) * F(r, c-4, t-1)`, `F(_, _, 0) = 1`.
/// Negative factors are evaluated as written; callers check the regime.
pub fn lemma7_bound(r: i64, c: i64, t: u32) -> i128 {
    let mut acc: i128 = 1;
    let mut c = c as i128;
    for _ in 0..t {
        acc *= r as i128 * c * (c - 1);
        c -= 4;
    }
    acc
}

/// All quantities of the Cauchy-Schwarz step:
/// `Gamma_k >= sum b_i^2 >= |S|^2 / B`.
#[derive(Debug, Clone)]
pub struct CauchySchwarzReport {
    pub gamma: u128,
    pub sum_b_squared: u128,
    pub half_count: u128,
    pub num_signatures: usize,
    /// `|S|^2 / B` as an exact rational.
    pub lower_bound: BigRational,
}

impl CauchySchwarzReport {
    pub fn holds(&self) -> bool {
        let gamma = BigRational::from_integer(BigInt::from(self.gamma));
        let sum_sq = BigRational::from_integer(BigInt::from(self.sum_b_squared));
        gamma >= sum_sq && sum_sq >= self.lower_bound
    }
}

pub fn cauchy_schwarz_check(p: GammaParams, budget: Budget) -> Result<CauchySchwarzReport> {
    let gamma = enumerate_gamma(p, budget)?;
    let half = enumerate_half(p, budget)?;
    let lower_bound = BigRational::new(
        BigInt::from(half.half_count) * BigInt::from(half.half_count),
        BigInt::from(half.num_signatures().max(1)),
    );
    Ok(CauchySchwarzReport {
        gamma,
        sum_b_squared: half.sum_b_squared(),
        half_count: half.half_count,
        num_signatures: half.num_signatures(),
        lower_bound,
    })
}

/// Paley-Zygmund lower bound `(1 - theta)^2 e1^2 / e2` on
/// `Pr[X > theta E[X]]` for nonnegative `X` with `E[X] = e1`,
/// `E[X^2] = e2`.
pub fn paley_zygmund(
    e1: &BigRational,
    e2: &BigRational,
    theta: &BigRational,
) -> Result<BigRational> {
    if e1.is_negative() {
        return Err(Error::InvalidArgument("e1 must be nonnegative".into()));
    }
    if !e2.is_positive() {
        return Err(Error::InvalidArgument("e2 must be positive".into()));
    }
    if theta.is_negative() || *theta > BigRational::one() {
        return Err(Error::InvalidArgument("theta must lie in [0, 1]".into()));
    }
    if *e2 < e1 * e1 {
        return Err(Error::InvalidArgument(
            "inconsistent moments: e2 < e1^2".into(),
        ));
    }
    let one_minus = BigRational::one() - theta;
    Ok(&one_minus * &one_minus * e1 * e1 / e2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: usize, s: usize, k: usize) -> GammaParams {
        GammaParams::new(m, s, k).unwrap()
    }

    #[test]
    fn gamma_empty_tuple() {
        assert_eq!(enumerate_gamma(params(3, 4, 0), Budget::default()).unwrap(), 1);
    }

    #[test]
    fn gamma_single_triple_is_zero() {
        for (m, s) in [(1, 2), (2, 2), (3, 4), (5, 3)] {
            assert_eq!(enumerate_gamma(params(m, s, 1), Budget::default()).unwrap(), 0);
        }
    }

    #[test]
    fn gamma_2_2_2_is_8() {
        assert_eq!(enumerate_gamma(params(2, 2, 2), Budget::default()).unwrap(), 8);
    }

    #[test]
    fn gamma_budget_enforced() {
        let err = enumerate_gamma(params(10, 10, 8), Budget(1000)).unwrap_err();
        match err {
            Error::ResourceLimit(msg) => assert!(msg.contains("budget is 1000")),
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn gamma_family_matches_count() {
        let p = params(4, 4, 2);
        let count = enumerate_gamma(p, Budget::default()).unwrap();
        let family = gamma_family(p, Budget::default()).unwrap();
        assert_eq!(family.len() as u128, count);
        // Every member satisfies the parity conditions.
        for tuple in &family {
            assert!(tuple.satisfies_parity(p.m, p.s));
        }
    }

    #[test]
    fn moment_k1_is_zero() {
        for (m, s) in [(2, 2), (3, 2), (4, 4)] {
            let mom = exact_moment(params(m, s, 1), Budget::default()).unwrap();
            assert!(mom.is_zero(), "E[Z_1] at ({m},{s}) = {mom}");
        }
    }

    #[test]
    fn moment_2_2_2_is_half() {
        let mom = exact_moment(params(2, 2, 2), Budget::default()).unwrap();
        assert_eq!(mom, BigRational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn moment_identity_eq1() {
        // E[Z_k] * s^k * m^k = Gamma_k exactly.
        for (m, s, k) in [(2, 2, 2), (3, 2, 2), (4, 4, 2), (2, 2, 4), (2, 3, 2), (3, 3, 2)] {
            let p = params(m, s, k);
            let gamma = enumerate_gamma(p, Budget::default()).unwrap();
            let mom = exact_moment(p, Budget::default()).unwrap();
            let scaled = mom * BigRational::from_integer(BigInt::from((s * m) as u64).pow(k as u32));
            assert_eq!(
                scaled,
                BigRational::from_integer(BigInt::from(gamma)),
                "Eq.(1) fails at ({m},{s},{k})"
            );
        }
    }

    #[test]
    fn half_2_2_2() {
        let half = enumerate_half(params(2, 2, 2), Budget::default()).unwrap();
        assert_eq!(half.half_count, 4);
        assert_eq!(half.num_signatures(), 2);
        assert_eq!(half.signature_counts, vec![2, 2]);
        assert_eq!(half.sum_b_squared(), 8);
    }

    #[test]
    fn half_partition_identity() {
        for (m, s, k) in [(2, 2, 2), (3, 2, 2), (4, 4, 2), (2, 2, 4), (3, 4, 2)] {
            let half = enumerate_half(params(m, s, k), Budget::default()).unwrap();
            let total: u128 = half.signature_counts.iter().sum();
            assert_eq!(total, half.half_count);
        }
    }

    #[test]
    fn half_rejects_odd_k() {
        assert!(enumerate_half(params(2, 2, 3), Budget::default()).is_err());
    }

    #[test]
    fn sum_b_squared_below_gamma() {
        for (m, s, k) in [(2, 2, 2), (3, 2, 2), (4, 4, 2), (2, 2, 4)] {
            let p = params(m, s, k);
            let gamma = enumerate_gamma(p, Budget::default()).unwrap();
            let half = enumerate_half(p, Budget::default()).unwrap();
            assert!(
                half.sum_b_squared() <= gamma,
                "sum b^2 = {} > gamma = {gamma} at ({m},{s},{k})",
                half.sum_b_squared()
            );
        }
    }

    #[test]
    fn lemma7_values() {
        assert_eq!(lemma7_bound(5, 9, 0), 1);
        assert_eq!(lemma7_bound(2, 2, 1), 4);
        assert_eq!(lemma7_bound(3, 8, 2), 3 * 8 * 7 * 3 * 4 * 3);
        // |S|(2,2,2) = 4 >= F(2,2,1) = 4.
        let half = enumerate_half(params(2, 2, 2), Budget::default()).unwrap();
        assert!(half.half_count as i128 >= lemma7_bound(2, 2, 1));
    }

    #[test]
    fn cauchy_schwarz_chain() {
        let report = cauchy_schwarz_check(params(2, 2, 2), Budget::default()).unwrap();
        assert_eq!(report.gamma, 8);
        assert_eq!(report.sum_b_squared, 8);
        assert_eq!(
            report.lower_bound,
            BigRational::from_integer(BigInt::from(8))
        );
        assert!(report.holds());
        for (m, s, k) in [(3, 2, 2), (4, 4, 2), (2, 2, 4)] {
            let r = cauchy_schwarz_check(params(m, s, k), Budget::default()).unwrap();
            assert!(r.holds(), "chain fails at ({m},{s},{k}): {r:?}");
        }
    }

    #[test]
    fn paley_zygmund_edges() {
        let one = BigRational::one();
        let e1 = BigRational::new(BigInt::from(1), BigInt::from(2));
        let e2 = BigRational::new(BigInt::from(3), BigInt::from(4));
        // theta = 1 vanishes.
        assert!(paley_zygmund(&e1, &e2, &one).unwrap().is_zero());
        // Constant variable at theta = 0 gives exactly 1.
        let e2c = &e1 * &e1;
        assert_eq!(paley_zygmund(&e1, &e2c, &BigRational::zero()).unwrap(), one);
        // Inconsistent moments rejected.
        let too_small = &e2c - BigRational::new(BigInt::from(1), BigInt::from(100));
        assert!(paley_zygmund(&e1, &too_small, &BigRational::zero()).is_err());
    }

    #[test]
    fn paley_zygmund_against_exhaustive_distribution() {
        // (m,s,k) = (2,2,2): bound = (1/4) E[Z2]^2 / E[Z4] must lower-bound
        // the exhaustively computed Pr[Z2 > E[Z2]/2].
        let p2 = params(2, 2, 2);
        let p4 = params(2, 2, 4);
        let e1 = exact_moment(p2, Budget::default()).unwrap();
        let e2 = exact_moment(p4, Budget::default()).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let bound = paley_zygmund(&e1, &e2, &half).unwrap();
        assert!(bound > BigRational::zero() && bound <= BigRational::one());
        let threshold = &e1 * &half;
        let true_prob =
            exact_exceedance_probability(p2, &threshold, Budget::default()).unwrap();
        assert!(
            true_prob >= bound,
            "Pr[Z2 > E/2] = {true_prob} below PZ bound {bound}"
        );
    }

    #[test]
    fn exact_tail_degenerate_m1_s2() {
        // m=1: acc = c^2 with c = +-2 or 0; ||y||^2 in {0, 2}; at eps=0.5
        // every assignment fails (|0-2|=2 > 1 and |4-2|=2 > 1).
        let tail = exact_tail_probability(1, 2, 0.5, Budget::default()).unwrap();
        assert_eq!(tail.total, 1 << 4);
        assert_eq!(tail.failures, tail.total);
    }

    #[test]
    fn exact_tail_budget() {
        assert!(matches!(
            exact_tail_probability(16, 8, 0.5, Budget(1000)),
            Err(Error::ResourceLimit(_))
        ));
    }
}
