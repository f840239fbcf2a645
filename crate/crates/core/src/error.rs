//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while building or verifying a solution.
///
/// Numeric payloads are carried as f64 regardless of the scalar type the
/// computation ran at; they are diagnostic only.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ratio of specific heats must satisfy 1 < gamma < 3, got {0}")]
    InvalidGamma(f64),

    #[error("heating parameter k must be positive, got {0}")]
    InvalidHeating(f64),

    #[error("state is not physical: {0}")]
    NonPhysical(String),

    #[error("Mach number must be positive, got {0}")]
    NonPositiveMach(f64),

    #[error("pressure must be positive, got {0}")]
    NonPositivePressure(f64),

    #[error("flow through the heating point must move in +x, got u = {0}")]
    BackflowUnsupported(f64),

    #[error("upstream flow is sonic; no heat can be added at M = 1")]
    SonicUpstream,

    #[error("heating parameter {k} exceeds the admissible maximum {k_max} at M = {mach}")]
    MaxHeatExceeded { k: f64, k_max: f64, mach: f64 },

    #[error("critical-Mach pairing requires k (gamma^2 - 1) < 1")]
    BranchUnavailable,

    #[error("states separate too fast; a vacuum region would form")]
    VacuumGenerated,

    #[error("iteration failed to converge")]
    NoConvergence,

    #[error("no sign change found while bracketing {0}")]
    NoBracket(&'static str),

    #[error("shock frame violates the entropy condition: relative Mach {0} < 1")]
    LaxViolation(f64),

    #[error("target Mach {m4} is outside (0, {m1}]")]
    DomainViolation { m1: f64, m4: f64 },

    #[error("constructed wave pattern disagrees with the requested structure: {0}")]
    StructureMismatch(String),

    #[error("Type 2 and Type 3 regions overlap at M1 = {m1}; classification is ambiguous")]
    AmbiguousClassification { m1: f64 },

    #[error("wave-fan invariant violated: {0}")]
    InvariantViolation(String),

    #[error("cell {cell} lost positivity at t = {t}")]
    PositivityLoss { cell: usize, t: f64 },

    #[error("waves reach the domain edge: half-width {have} < required {needed}")]
    BoundaryContaminated { needed: f64, have: f64 },

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
