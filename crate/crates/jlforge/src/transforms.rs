//! The embedding `f(x) = (1/sqrt(m)) T D x` and its relatives.
//!
//! `T` is an `m x n` Toeplitz matrix with entry `(i, j) = t[j - i]` drawn
//! from Rademacher variables `t_{-(m-1)}, ..., t_{n-1}`, and `D` is diagonal
//! with Rademacher entries `d_1, ..., d_n`. The partial circulant variant
//! wraps the negative diagonals around (`entry (i, j) = t[(j - i) mod n]`),
//! and the dense variant is the classic i.i.d. Rademacher matrix baseline.
//!
//! Applying `T` is a correlation, so besides the quadratic naive path there
//! is a blocked-FFT path: the input is split into blocks of length `m`, each
//! block is correlated against a `2m-1`-long slice of the generating
//! sequence (adjacent slices overlap by `m-1` entries) at FFT size
//! `next_power_of_two(2m)`, and the `m` valid lags are accumulated. Total
//! cost is `O(n lg m)` for any target dimension.

use std::sync::OnceLock;

use crate::fft::{correlate_with_kernel_freq, fft_real, Cx};
use crate::rng::{derive_stream, sample_rademacher, SignSequence, STREAM_D, STREAM_DENSE, STREAM_T};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Toeplitz,
    Circulant,
    Dense,
}

impl TransformKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransformKind::Toeplitz => "toeplitz",
            TransformKind::Circulant => "circulant",
            TransformKind::Dense => "dense",
        }
    }
}

impl std::str::FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toeplitz" => Ok(TransformKind::Toeplitz),
            "circulant" => Ok(TransformKind::Circulant),
            "dense" => Ok(TransformKind::Dense),
            other => Err(Error::InvalidArgument(format!(
                "unknown transform kind '{other}'"
            ))),
        }
    }
}

impl std::fmt::Display for TransformKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dimensions, kind and master seed; fully determines the realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingSpec {
    pub n: usize,
    pub m: usize,
    pub kind: TransformKind,
    pub master_seed: u64,
}

impl EmbeddingSpec {
    pub fn new(n: usize, m: usize, kind: TransformKind, master_seed: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "dimensions must be positive, got n={n} m={m}"
            )));
        }
        if m > n && kind != TransformKind::Dense {
            return Err(Error::InvalidArgument(format!(
                "m={m} > n={n} is only supported for the dense transform"
            )));
        }
        Ok(EmbeddingSpec {
            n,
            m,
            kind,
            master_seed,
        })
    }
}

fn check_len(x: &[f64], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::InvalidArgument(format!(
            "input length {} does not match n={n}",
            x.len()
        )));
    }
    Ok(())
}

/// A realized Toeplitz transform: `t` over diagonals `-(m-1)..=n-1` and `d`
/// over `1..=n`. Immutable; safe to apply from many threads.
#[derive(Debug)]
pub struct ToeplitzRealization {
    pub t: SignSequence,
    pub d: SignSequence,
    pub n: usize,
    pub m: usize,
    kernel_freqs: OnceLock<Vec<Vec<Cx>>>,
}

impl ToeplitzRealization {
    pub fn new(t: SignSequence, d: SignSequence, n: usize, m: usize) -> Result<Self> {
        if m > n || n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "toeplitz realization requires 1 <= m <= n, got n={n} m={m}"
            )));
        }
        if t.offset() != -(m as i64 - 1) || t.len() != n + m - 1 {
            return Err(Error::InvalidArgument(
                "t must cover diagonals -(m-1)..=n-1".into(),
            ));
        }
        if d.offset() != 1 || d.len() != n {
            return Err(Error::InvalidArgument("d must cover 1..=n".into()));
        }
        Ok(ToeplitzRealization {
            t,
            d,
            n,
            m,
            kernel_freqs: OnceLock::new(),
        })
    }

    /// Realize from a master seed: `t` comes from stream 0, `d` from
    /// stream 1, in ascending index order.
    pub fn from_seed(n: usize, m: usize, master_seed: u64) -> Result<Self> {
        if m > n || n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "toeplitz realization requires 1 <= m <= n, got n={n} m={m}"
            )));
        }
        let t = sample_rademacher(
            &mut derive_stream(master_seed, STREAM_T),
            -(m as i64 - 1),
            (n + m - 1) as i64,
        )?;
        let d = sample_rademacher(&mut derive_stream(master_seed, STREAM_D), 1, n as i64)?;
        Self::new(t, d, n, m)
    }

    /// `y_i = sum_j t[j-i] d_j x_j` by direct summation, cost `Theta(n m)`.
    pub fn apply_naive(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(x, self.n)?;
        let mut y = vec![0.0; self.m];
        for (i0, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j0, &xj) in x.iter().enumerate() {
                let a = j0 as i64 - i0 as i64;
                acc += self.t.sign(a) as f64 * self.d.sign(j0 as i64 + 1) as f64 * xj;
            }
            *yi = acc;
        }
        Ok(y)
    }

    fn fft_size(&self) -> usize {
        (2 * self.m).next_power_of_two()
    }

    /// FFTs of the kernel slices, computed once per realization. Slice `b`
    /// covers diagonals `b*m + 1 - m ..= b*m + m - 1`; adjacent slices share
    /// `m-1` diagonals.
    fn kernel_freqs(&self) -> &Vec<Vec<Cx>> {
        self.kernel_freqs.get_or_init(|| {
            let m = self.m;
            let size = self.fft_size();
            let blocks = self.n.div_ceil(m);
            (0..blocks)
                .map(|b| {
                    let mut kernel = vec![0.0; 2 * m - 1];
                    for (p, kp) in kernel.iter_mut().enumerate() {
                        let a = (b * m) as i64 + p as i64 - m as i64 + 1;
                        if let Some(v) = self.t.get(a) {
                            *kp = v as f64;
                        }
                    }
                    fft_real(&kernel, size)
                })
                .collect()
        })
    }

    /// Same product as [`Self::apply_naive`] via blocked FFT correlation,
    /// cost `O(n lg m)`.
    pub fn apply_fft(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(x, self.n)?;
        let m = self.m;
        let kernels = self.kernel_freqs();
        let mut y = vec![0.0; m];
        let mut z_block = vec![0.0; m];
        for (b, kernel) in kernels.iter().enumerate() {
            let lo = b * m;
            let hi = (lo + m).min(self.n);
            z_block.iter_mut().for_each(|v| *v = 0.0);
            for (off, j0) in (lo..hi).enumerate() {
                z_block[off] = self.d.sign(j0 as i64 + 1) as f64 * x[j0];
            }
            // w(beta) = sum_a z[a] kernel[a + beta]; row i (1-based) takes
            // lag beta = m - i.
            let w = correlate_with_kernel_freq(&z_block, kernel, m);
            for (i0, yi) in y.iter_mut().enumerate() {
                *yi += w[m - 1 - i0];
            }
        }
        Ok(y)
    }
}

/// A realized partial circulant transform: `t` over `0..=n-1`, entry
/// `(i, j) = t[(j - i) mod n]`.
///
/// The realization draws the same `n + m - 1` stream values as the Toeplitz
/// realization, in diagonal order, and identifies the wrapped slots with the
/// negative diagonals (`t[n - a] := draw of diagonal -a`). The draws for
/// diagonals above `n - m` are discarded. This makes matched-seed circulant
/// and Toeplitz transforms agree exactly on vectors supported on the first
/// `n - m` coordinates, which is the regime where the two are
/// interchangeable.
#[derive(Debug)]
pub struct CirculantRealization {
    pub t: SignSequence,
    pub d: SignSequence,
    pub n: usize,
    pub m: usize,
    equivalent: ToeplitzRealization,
}

impl CirculantRealization {
    pub fn from_seed(n: usize, m: usize, master_seed: u64) -> Result<Self> {
        if m > n || n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "circulant realization requires 1 <= m <= n, got n={n} m={m}"
            )));
        }
        let draws = sample_rademacher(
            &mut derive_stream(master_seed, STREAM_T),
            -(m as i64 - 1),
            (n + m - 1) as i64,
        )?;
        let d = sample_rademacher(&mut derive_stream(master_seed, STREAM_D), 1, n as i64)?;
        let mut values = Vec::with_capacity(n);
        for c in 0..n {
            let a = if c + m <= n {
                c as i64
            } else {
                c as i64 - n as i64
            };
            values.push(draws.sign(a));
        }
        let t = SignSequence::new(0, values)?;
        // The equivalent Toeplitz generating sequence g[a] = t[a mod n]
        // drives both apply paths.
        let mut g = Vec::with_capacity(n + m - 1);
        for a in -(m as i64 - 1)..=(n as i64 - 1) {
            g.push(t.sign(a.rem_euclid(n as i64)));
        }
        let equivalent = ToeplitzRealization::new(
            SignSequence::new(-(m as i64 - 1), g)?,
            d.clone(),
            n,
            m,
        )?;
        Ok(CirculantRealization {
            t,
            d,
            n,
            m,
            equivalent,
        })
    }

    /// `y_i = sum_j t[(j-i) mod n] d_j x_j` by direct summation.
    pub fn apply_naive(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.equivalent.apply_naive(x)
    }

    pub fn apply_fft(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.equivalent.apply_fft(x)
    }
}

/// A realized dense Rademacher matrix, row-major from stream 2.
#[derive(Debug)]
pub struct DenseRealization {
    pub entries: SignSequence,
    pub n: usize,
    pub m: usize,
}

impl DenseRealization {
    pub fn from_seed(n: usize, m: usize, master_seed: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "dimensions must be positive, got n={n} m={m}"
            )));
        }
        let entries = sample_rademacher(
            &mut derive_stream(master_seed, STREAM_DENSE),
            0,
            (n * m) as i64,
        )?;
        Ok(DenseRealization { entries, n, m })
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(x, self.n)?;
        let mut y = vec![0.0; self.m];
        for (i0, yi) in y.iter_mut().enumerate() {
            let row = &self.entries.values()[i0 * self.n..(i0 + 1) * self.n];
            *yi = row
                .iter()
                .zip(x.iter())
                .map(|(&a, &xj)| a as f64 * xj)
                .sum();
        }
        Ok(y)
    }
}

fn scale(mut y: Vec<f64>, m: usize) -> Vec<f64> {
    let s = 1.0 / (m as f64).sqrt();
    for v in y.iter_mut() {
        *v *= s;
    }
    y
}

/// `f(x) = (1/sqrt(m)) T D x`, dispatching on `spec.kind`. The FFT path is
/// used for Toeplitz and circulant kinds.
pub fn embed(spec: &EmbeddingSpec, x: &[f64]) -> Result<Vec<f64>> {
    match spec.kind {
        TransformKind::Toeplitz => {
            let r = ToeplitzRealization::from_seed(spec.n, spec.m, spec.master_seed)?;
            Ok(scale(r.apply_fft(x)?, spec.m))
        }
        TransformKind::Circulant => embed_circulant(spec, x),
        TransformKind::Dense => embed_dense(spec, x),
    }
}

/// `embed` with `T` replaced by the partial circulant matrix.
pub fn embed_circulant(spec: &EmbeddingSpec, x: &[f64]) -> Result<Vec<f64>> {
    let r = CirculantRealization::from_seed(spec.n, spec.m, spec.master_seed)?;
    Ok(scale(r.apply_fft(x)?, spec.m))
}

/// `(1/sqrt(m)) A x` with dense i.i.d. Rademacher `A`.
pub fn embed_dense(spec: &EmbeddingSpec, x: &[f64]) -> Result<Vec<f64>> {
    let r = DenseRealization::from_seed(spec.n, spec.m, spec.master_seed)?;
    Ok(scale(r.apply(x)?, spec.m))
}
