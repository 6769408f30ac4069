//! Toeplitz Johnson-Lindenstrauss embeddings and their failure modes.
//!
//! The library has three layers:
//!
//! * [`transforms`] applies `f(x) = (1/sqrt(m)) T D x` for Toeplitz, partial
//!   circulant and dense Rademacher matrices, with a naive reference path and
//!   a blocked-FFT fast path running in `O(n lg m)`.
//! * [`instances`] and [`estimator`] build the hard unit vectors whose
//!   distortion tail decays only like `2^-O(eps sqrt(m))` and measure that
//!   tail by Monte Carlo, including minimal-m searches, scaling sweeps and
//!   the all-pairs experiment over a shifted vector family.
//! * [`combinatorics`] and [`codec`] verify the underlying moment identities
//!   exactly: tuple enumeration under parity constraints, exact moments by
//!   sign-assignment exhaustion, signature counting, the Paley-Zygmund bound
//!   and the head/mid/last cycle codec, all in exact integer/rational
//!   arithmetic.
//!
//! Everything taking a seed is a pure function of its arguments; trials are
//! keyed by `(master_seed, trial_index)` so results do not depend on thread
//! count.

pub mod cli;
pub mod codec;
pub mod combinatorics;
pub mod estimator;
pub mod fft;
pub mod instances;
pub mod rng;
pub mod transforms;

pub use codec::{build_cycles, codec_decode, codec_encode, CycleCode, Triple, Tuple};
pub use combinatorics::{
    cauchy_schwarz_check, enumerate_gamma, enumerate_half, exact_moment, exact_tail_probability,
    lemma7_bound, paley_zygmund, Budget, GammaParams,
};
pub use estimator::{
    allpairs_experiment, estimate_tail, estimate_tail_with, min_m_for, norm_statistic_samples,
    scaling_sweep, AllPairsResult, SweepEntry, SweepRow, TailEstimate,
};
pub use instances::{hard_family, hard_vector, shift_vector, touched_indices, HardInstance, ShiftedFamily};
pub use rng::{derive_stream, sample_rademacher, SignSequence, Stream};
pub use transforms::{
    embed, embed_circulant, embed_dense, CirculantRealization, DenseRealization, EmbeddingSpec,
    ToeplitzRealization, TransformKind,
};

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: usage errors exit 2, resource limits 3,
    /// everything else 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) => 2,
            Error::ResourceLimit(_) => 3,
            _ => 1,
        }
    }
}
