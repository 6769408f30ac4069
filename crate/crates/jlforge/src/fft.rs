//! Minimal iterative radix-2 complex FFT over f64, power-of-two sizes only.
//!
//! This is all the transform layer needs: block convolutions are carried out
//! at size `next_power_of_two(2m)`, so no mixed-radix support is required.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl Cx {
    #[inline]
    pub fn new(re: f64, im: f64) -> Self {
        Cx { re, im }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Cx::new(self.re, -self.im)
    }
}

impl std::ops::Mul for Cx {
    type Output = Cx;
    #[inline]
    fn mul(self, o: Cx) -> Cx {
        Cx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl std::ops::Add for Cx {
    type Output = Cx;
    #[inline]
    fn add(self, o: Cx) -> Cx {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}

impl std::ops::Sub for Cx {
    type Output = Cx;
    #[inline]
    fn sub(self, o: Cx) -> Cx {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}

/// In-place FFT of power-of-two length. `inverse` applies the conjugate
/// transform and the 1/n scale.
pub fn fft_in_place(data: &mut [Cx], inverse: bool) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length {n} not a power of two");
    if n <= 1 {
        return;
    }

    // Bit-reversal permutation.
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Cx::new(ang.cos(), ang.sin());
        let mut start = 0;
        while start < n {
            let mut w = Cx::new(1.0, 0.0);
            for off in 0..len / 2 {
                let a = data[start + off];
                let b = data[start + off + len / 2] * w;
                data[start + off] = a + b;
                data[start + off + len / 2] = a - b;
                w = w * wlen;
            }
            start += len;
        }
        len <<= 1;
    }

    if inverse {
        let scale = 1.0 / n as f64;
        for v in data.iter_mut() {
            v.re *= scale;
            v.im *= scale;
        }
    }
}

/// Forward FFT of a real signal zero-padded to `size`.
pub fn fft_real(signal: &[f64], size: usize) -> Vec<Cx> {
    let mut buf = vec![Cx::default(); size];
    for (b, &s) in buf.iter_mut().zip(signal.iter()) {
        b.re = s;
    }
    fft_in_place(&mut buf, false);
    buf
}

/// Cross-correlation lags of `z` against `kernel`:
/// `out[beta] = sum_a z[a] * kernel[a + beta]` for `beta in 0..lags`,
/// computed by pointwise `conj(FFT(z)) * FFT(kernel)` at `size >= z.len() +
/// lags` (no wraparound reaches the requested lags). `kernel_freq` must be
/// `fft_real(kernel, size)`.
pub fn correlate_with_kernel_freq(z: &[f64], kernel_freq: &[Cx], lags: usize) -> Vec<f64> {
    let size = kernel_freq.len();
    debug_assert!(z.len() + lags <= size + 1);
    let mut buf = fft_real(z, size);
    for (v, k) in buf.iter_mut().zip(kernel_freq.iter()) {
        *v = v.conj() * *k;
    }
    fft_in_place(&mut buf, true);
    buf.iter().take(lags).map(|c| c.re).collect()
}
