//! Numerical toolkit for monogamy inequalities between local quantum
//! resources (nonuniformity, coherence, entanglement within a subsystem)
//! and the entanglement of that subsystem with the rest of the world.
//!
//! The crate is organised around the pipeline
//!
//! 1. [`qcore`] — dense complex-matrix primitives: density matrices,
//!    spectra, partial trace/transpose, Haar and Hilbert-Schmidt sampling;
//! 2. [`entropies`] — spectrum entropies (von Neumann, Rényi, Tsallis)
//!    and majorization predicates;
//! 3. [`measures`] — concrete resource measures and entanglement
//!    monotone evaluators (relative entropy of coherence, nonuniformity,
//!    negativity, Wootters concurrence);
//! 4. [`gbound`] — the orbit-supremum function G, the derived entropy
//!    S = R_sup − G, the constrained minimisation h(y), lower convex
//!    envelopes, and the bound functions g (analytic and numeric);
//! 5. [`convexroof`] — convex-roof estimation over pure-state
//!    decompositions;
//! 6. [`monogamy`] — evaluators for every supported inequality plus the
//!    three-qubit comparison bounds and crossover finder;
//! 7. [`harness`] — seeded, deterministic Monte Carlo campaigns, the
//!    dephasing example, and table emission backing the CLI.
//!
//! All entropic quantities are computed and stored in nats; conversion to
//! bits is a display concern (see the CLI's `--nats` flag).

use thiserror::Error;

pub mod convexroof;
pub mod entropies;
pub mod gbound;
pub mod harness;
pub mod measures;
pub mod monogamy;
pub mod qcore;
pub mod tolerances;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("trace deviates from one by {0:.3e}")]
    BadTrace(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank {rank} out of range for dimension {dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("state vector is not normalized (norm deviation {0:.3e})")]
    NotNormalized(f64),

    #[error("entropy order must be positive (got {0})")]
    BadOrder(f64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("spectrum has {0} entries, at most 4 supported")]
    TooManyEntries(usize),

    #[error("spectrum rank {rank} exceeds measure dimension {dim}")]
    RankTooLarge { rank: usize, dim: usize },

    #[error("optimizer failed to converge: {0}")]
    OptimizerFailed(String),

    #[error("grid must be strictly ascending with at least 3 points")]
    BadGrid,

    #[error("ensemble size {k} is below the state rank {rank}")]
    BadEnsembleSize { k: usize, rank: usize },

    #[error("decomposition does not reconstruct the state (Frobenius error {0:.3e})")]
    ReconstructionFailed(f64),

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("unsupported d* = {0}; closed forms exist for 2, 3, 4")]
    UnsupportedDStar(usize),

    #[error("environment overlap must satisfy |overlap| <= 1 (got {0})")]
    BadOverlap(f64),

    #[error("invalid campaign config: {0}")]
    BadConfig(String),

    #[error("unknown inequality id `{0}`")]
    UnknownInequality(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
