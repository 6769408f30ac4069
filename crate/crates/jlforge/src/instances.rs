//! Hard instances for the distortion-tail lower bound.
//!
//! The hard vector has `s = 4k` leading coordinates of magnitude
//! `1/sqrt(s)` (signs free, all-plus by default) and zeros elsewhere; its
//! embedding norm concentrates much more slowly than for generic vectors.
//! Shifted copies spaced `m + ceil(C sqrt(m))` apart touch pairwise disjoint
//! sets of `t` and `d` variables, so their embeddings are independent.

use crate::rng::{derive_stream, sample_rademacher, SignSequence, STREAM_SIGN};
use crate::{Error, Result};

/// The Theorem-3-style unit vector: `s = 4k` nonzero entries of magnitude
/// `1/sqrt(s)` at indices `1..=s`.
#[derive(Debug, Clone)]
pub struct HardInstance {
    pub k: usize,
    pub s: usize,
    pub n: usize,
    pub x: Vec<f64>,
    pub sign_pattern: SignSequence,
}

/// Construct the hard vector. `sign_seed = 0` is reserved for the all-plus
/// pattern; any other seed draws the signs from it.
pub fn hard_vector(k: usize, n: usize, sign_seed: u64) -> Result<HardInstance> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "k must be even and >= 2, got {k}"
        )));
    }
    let s = 4 * k;
    if n < s {
        return Err(Error::InvalidArgument(format!(
            "n={n} is too small for support s=4k={s}"
        )));
    }
    let sign_pattern = if sign_seed == 0 {
        SignSequence::new(1, vec![1i8; s])?
    } else {
        sample_rademacher(&mut derive_stream(sign_seed, STREAM_SIGN), 1, s as i64)?
    };
    let mag = 1.0 / (s as f64).sqrt();
    let mut x = vec![0.0; n];
    for (j0, v) in x.iter_mut().take(s).enumerate() {
        *v = sign_pattern.sign(j0 as i64 + 1) as f64 * mag;
    }
    Ok(HardInstance {
        k,
        s,
        n,
        x,
        sign_pattern,
    })
}

/// Round a real-valued k request up to the nearest even integer >= 2.
pub fn round_k(k: f64) -> usize {
    let k = k.ceil().max(2.0) as usize;
    if k.is_multiple_of(2) {
        k
    } else {
        k + 1
    }
}

fn support_bounds(x: &[f64]) -> Option<(usize, usize)> {
    let lo = x.iter().position(|&v| v != 0.0)?;
    let hi = x.iter().rposition(|&v| v != 0.0)?;
    Some((lo + 1, hi + 1)) // 1-based
}

/// `x` shifted up by `i` positions, zeros below.
pub fn shift_vector(x: &[f64], i: usize) -> Result<Vec<f64>> {
    let n = x.len();
    if let Some((_, hi)) = support_bounds(x) {
        if hi + i > n {
            return Err(Error::InvalidArgument(format!(
                "shift by {i} pushes nonzeros past n={n} (last nonzero at {hi})"
            )));
        }
    }
    let mut y = vec![0.0; n];
    for (j0, &v) in x.iter().enumerate() {
        if j0 + i < n {
            y[j0 + i] = v;
        }
    }
    Ok(y)
}

/// The exact index intervals of the `t` and `d` variables that influence
/// `TDx` (1-based support `lo..=hi`): diagonals `lo-m ..= hi-1` and
/// `d`-indices `lo ..= hi`. Empty ranges for the zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TouchedIndices {
    pub t_range: Option<(i64, i64)>,
    pub d_range: Option<(i64, i64)>,
}

pub fn touched_indices(x: &[f64], m: usize) -> TouchedIndices {
    match support_bounds(x) {
        None => TouchedIndices {
            t_range: None,
            d_range: None,
        },
        Some((lo, hi)) => TouchedIndices {
            t_range: Some((lo as i64 - m as i64, hi as i64 - 1)),
            d_range: Some((lo as i64, hi as i64)),
        },
    }
}

fn ranges_disjoint(a: (i64, i64), b: (i64, i64)) -> bool {
    a.1 < b.0 || b.1 < a.0
}

/// The shifted family `{0, x, x_shifted, ...}` of Theorem 5. `count` is the
/// number of nonzero members; the zero vector is always member 0.
#[derive(Debug, Clone)]
pub struct ShiftedFamily {
    pub base: HardInstance,
    pub spacing: usize,
    pub count: usize,
    /// Member 0 is the zero vector; members `1..=count` are the shifts.
    pub vectors: Vec<Vec<f64>>,
}

impl ShiftedFamily {
    /// 1-based support offset of nonzero member `idx` (1-based among the
    /// nonzero members).
    pub fn shift_of(&self, idx: usize) -> usize {
        (idx - 1) * self.spacing
    }
}

/// Build the family `{0, x, x_{->spacing}, ..., x_{->(N-1) spacing}}` with
/// `spacing = m + ceil(C sqrt(m))`. Fails when the family does not fit in
/// `n` dimensions or the spacing does not separate the touched variables.
pub fn hard_family(k: usize, n: usize, m: usize, c: f64, count: usize) -> Result<ShiftedFamily> {
    if count == 0 {
        return Err(Error::InvalidArgument("family needs at least one member".into()));
    }
    if c.is_nan() || c < 0.0 {
        return Err(Error::InvalidArgument(format!("C must be >= 0, got {c}")));
    }
    let base = hard_vector(k, n, 0)?;
    let s = base.s;
    let spacing = m + (c * (m as f64).sqrt()).ceil() as usize;
    let need = (count - 1) * spacing + s;
    if need > n {
        let max_feasible = if n >= s { (n - s) / spacing + 1 } else { 0 };
        return Err(Error::InvalidArgument(format!(
            "family of {count} members at spacing {spacing} needs n >= {need}, \
             got n={n}; maximum feasible N is {max_feasible}"
        )));
    }
    // Exact minimal disjoint spacing from touched_indices: consecutive
    // t-ranges [1 + delta - m, s + delta - 1] are disjoint iff
    // delta >= s + m - 1 (which also separates the d-ranges).
    if count > 1 && spacing < s + m - 1 {
        return Err(Error::InvalidArgument(format!(
            "spacing {spacing} does not separate touched variables; \
             minimal disjoint spacing is {}",
            s + m - 1
        )));
    }
    let mut vectors = vec![vec![0.0; n]];
    for i in 0..count {
        vectors.push(shift_vector(&base.x, i * spacing)?);
    }
    Ok(ShiftedFamily {
        base,
        spacing,
        count,
        vectors,
    })
}

/// Check that all nonzero members of the family touch pairwise disjoint
/// `t` and `d` index sets.
pub fn family_is_disjoint(family: &ShiftedFamily, m: usize) -> bool {
    let touched: Vec<TouchedIndices> = family.vectors[1..]
        .iter()
        .map(|v| touched_indices(v, m))
        .collect();
    for (a, ta) in touched.iter().enumerate() {
        for tb in touched.iter().skip(a + 1) {
            let (Some(at), Some(bt)) = (ta.t_range, tb.t_range) else {
                return false;
            };
            let (Some(ad), Some(bd)) = (ta.d_range, tb.d_range) else {
                return false;
            };
            if !ranges_disjoint(at, bt) || !ranges_disjoint(ad, bd) {
                return false;
            }
        }
    }
    true
}
