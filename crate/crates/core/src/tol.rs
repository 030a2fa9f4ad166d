//! Numerical tolerances used across the crate.
//!
//! Two tiers: structural checks (Hermiticity, normalization,
//! orthonormality) sit close to f64 roundoff for sums over at most
//! 2^20 amplitudes; verdict checks (entanglement maximality) are looser
//! and overridable per call.

/// Normalization promised by state constructors: |Σ|a|² − 1| below this.
pub const NORM_TOL: f64 = 1e-12;

/// Hermiticity and unit-trace validation of density matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Density-matrix eigenvalues may undershoot zero by at most this much.
pub const PSD_TOL: f64 = 1e-10;

/// General structural tolerance: orthonormality, projector completeness,
/// membership sums.
pub const STRUCTURAL_TOL: f64 = 1e-10;

/// Default tolerance for the maximality verdict: the max-abs deviation of
/// every single-particle reduced density matrix from (1/n)·Identity.
/// Entropy is flat near its maximum, so the verdict compares matrix
/// entries instead.
pub const VERDICT_TOL: f64 = 1e-8;
