//! Numerical tolerances shared across the crate.

/// Absolute tolerance for symmetry checks on assembled operators.
pub const SYM_ABS: f64 = 1e-10;

/// Relative tolerance (times the largest eigenvalue) below which a
/// quadratic form is still accepted as positive semidefinite.
pub const PSD_REL: f64 = 1e-8;

/// Relative tolerance (times the largest eigenvalue or singular value)
/// separating numerical rank from numerical kernel.
pub const RANK_REL: f64 = 1e-8;

/// Tolerance for orthogonality / reconstruction identities.
pub const ORTH: f64 = 1e-8;

/// Default absolute cutoff on Slepian concentration values; eigenpairs at or
/// below it are treated as rank deficiency (concentrations live in (0, 1]).
pub const SLEPIAN_RANK_ABS: f64 = 1e-8;

/// Matching pursuit declares a stall when the best residual correlation
/// drops below this value while the stopping criterion is unmet.
pub const OMP_NO_PROGRESS: f64 = 1e-14;

/// Relative residual norm under which matching pursuit treats the signal
/// as exactly reconstructed.
pub const OMP_ZERO_RESIDUAL_REL: f64 = 1e-13;

/// Jitter added to the support Gram diagonal when its conditioning
/// exceeds `GRAM_COND_LIMIT`.
pub const GRAM_JITTER: f64 = 1e-12;

/// Conditioning threshold for the least-squares refit inside matching pursuit.
pub const GRAM_COND_LIMIT: f64 = 1e12;
