//! Deterministic, splittable randomness.
//!
//! The generator is a Philox-style counter-based construction (4x64, 10
//! rounds). A stream is keyed by `(master_seed, stream_id)` and produces a
//! sequence of 64-bit words as a pure function of `(master_seed, stream_id,
//! counter)`. Distinct stream ids give statistically independent streams, so
//! Monte Carlo trial `i` can use `stream_id = i` with no sequential
//! dependency and bit-reproducible results for any thread count.
//!
//! The word mapping is fixed: word `w` of stream `(seed, id)` is lane
//! `w % 4` of the Philox block with counter `[w / 4, 0, 0, 0]` and key
//! `[seed, id]`. Rademacher values consume one bit each, 64 per word,
//! least-significant bit first; bit 0 maps to +1 and bit 1 to -1.

use crate::{Error, Result};

const PHILOX_M0: u64 = 0xD2E7_470E_E14C_6C93;
const PHILOX_M1: u64 = 0xCA5A_8263_9512_1157;
const PHILOX_W0: u64 = 0x9E37_79B9_7F4A_7C15;
const PHILOX_W1: u64 = 0xBB67_AE85_84CA_A73B;
const ROUNDS: usize = 10;

/// Reserved stream ids for transform realizations. Trial streams in the
/// estimator use the trial index directly under a separate master seed.
pub const STREAM_T: u64 = 0;
pub const STREAM_D: u64 = 1;
pub const STREAM_DENSE: u64 = 2;
pub const STREAM_SIGN: u64 = 3;

#[inline]
fn mul_wide(a: u64, b: u64) -> (u64, u64) {
    let p = (a as u128) * (b as u128);
    (p as u64, (p >> 64) as u64)
}

/// One Philox 4x64-10 block: maps `(key, counter)` to four output words.
#[inline]
pub fn philox4x64(key: [u64; 2], counter: [u64; 4]) -> [u64; 4] {
    let mut c = counter;
    let mut k = key;
    for _ in 0..ROUNDS {
        let (lo0, hi0) = mul_wide(PHILOX_M0, c[0]);
        let (lo1, hi1) = mul_wide(PHILOX_M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
        k[0] = k[0].wrapping_add(PHILOX_W0);
        k[1] = k[1].wrapping_add(PHILOX_W1);
    }
    c
}

/// A positioned view into the word stream keyed by `(master_seed, stream_id)`.
///
/// Copyable value type; copies advance independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stream {
    key: [u64; 2],
    block: u64,
    buf: [u64; 4],
    pos: usize,
}

impl Stream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut s = Stream {
            key: [master_seed, stream_id],
            block: 0,
            buf: [0; 4],
            pos: 4,
        };
        s.refill();
        s.pos = 0;
        s
    }

    fn refill(&mut self) {
        self.buf = philox4x64(self.key, [self.block, 0, 0, 0]);
        self.block += 1;
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        if self.pos == 4 {
            self.refill();
            self.pos = 0;
        }
        let w = self.buf[self.pos];
        self.pos += 1;
        w
    }

    /// Fill `out` with the next words of the stream.
    pub fn fill_words(&mut self, out: &mut [u64]) {
        for w in out.iter_mut() {
            *w = self.next_u64();
        }
    }
}

/// Derive the deterministic stream for `(master_seed, stream_id)`.
pub fn derive_stream(master_seed: u64, stream_id: u64) -> Stream {
    Stream::new(master_seed, stream_id)
}

/// A finite sequence of +-1 values indexed from `offset` upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    offset: i64,
    values: Vec<i8>,
}

impl SignSequence {
    /// Build from raw values; every element must be +-1.
    pub fn new(offset: i64, values: Vec<i8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| **v != 1 && **v != -1) {
            return Err(Error::InvalidArgument(format!(
                "sign sequence element {v} is not +-1"
            )));
        }
        Ok(SignSequence { offset, values })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sign at index `a`, or `None` when `a` is outside
    /// `[offset, offset + len)`.
    #[inline]
    pub fn get(&self, a: i64) -> Option<i8> {
        if a < self.offset {
            return None;
        }
        self.values.get((a - self.offset) as usize).copied()
    }

    /// Sign at index `a`; panics out of range.
    #[inline]
    pub fn sign(&self, a: i64) -> i8 {
        match self.get(a) {
            Some(v) => v,
            None => panic!(
                "sign index {a} out of range [{}, {})",
                self.offset,
                self.offset + self.values.len() as i64
            ),
        }
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i8)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.offset + i as i64, v))
    }
}

/// Draw `count` Rademacher values from `stream`, one bit per value,
/// consuming whole words. The result is indexed from `offset`.
pub fn sample_rademacher(stream: &mut Stream, offset: i64, count: i64) -> Result<SignSequence> {
    if count < 0 {
        return Err(Error::InvalidArgument(format!(
            "rademacher count {count} is negative"
        )));
    }
    let count = count as usize;
    let mut values = Vec::with_capacity(count);
    let mut produced = 0;
    while produced < count {
        let word = stream.next_u64();
        let take = (count - produced).min(64);
        for bit in 0..take {
            values.push(if (word >> bit) & 1 == 0 { 1 } else { -1 });
        }
        produced += take;
    }
    Ok(SignSequence { offset, values })
}

/// Draw `count` Rademacher values as packed words: bit `b` of word `w` is
/// value `64*w + b`, with 0 meaning +1. Bits past `count` in the final word
/// are zeroed. Consumes exactly the same stream words as
/// [`sample_rademacher`].
pub fn sample_sign_words(stream: &mut Stream, count: usize) -> Vec<u64> {
    let n_words = count.div_ceil(64);
    let mut words = vec![0u64; n_words];
    stream.fill_words(&mut words);
    let tail = count % 64;
    if tail != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
    words
}
