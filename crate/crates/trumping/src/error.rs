use thiserror::Error;

/// Errors shared across the order-decision modules.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("length mismatch: left has {left} entries, right has {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("mixed scalar regimes: one vector is exact-rational, the other is float")]
    MixedRegimes,
    #[error("vector entry at position {index} is zero or negative")]
    NonPositiveEntry { index: usize },
}

/// Errors from the exact polynomial certificate machinery.
#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("entries cannot be placed on an integer lattice: {0}")]
    NonIntegerEntries(String),
    #[error("polynomial is not strictly positive on the positive axis: {0}")]
    NotPositiveOnPositiveAxis(String),
    #[error("divided difference nodes must be pairwise distinct")]
    DuplicateNodes,
}

/// Errors from the Dirichlet-polynomial analysis module.
#[derive(Debug, Error)]
pub enum DirichletError {
    #[error("all entries must be strictly greater than 1 (entry at position {index} is not)")]
    EntriesNotAboveOne { index: usize },
    #[error("vector entry at position {index} is zero; Dirichlet machinery needs positive entries")]
    ZeroEntry { index: usize },
    #[error("moment condition failed: zeta(-{k}) = {value} is not zero within tolerance")]
    MomentConditionFailed { k: u32, value: f64 },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Errors from trumping decisions and catalyst certification.
#[derive(Debug, Error)]
pub enum TrumpingError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("x has a zero entry at position {index}; the trumping criteria require x > 0")]
    XHasZeroEntry { index: usize },
    #[error("internal disagreement between decision procedures: {0}")]
    InternalDisagreement(String),
    #[error("snapped pair is not trumped: {0}")]
    NotTrumpedAfterSnap(String),
    #[error("lattice division is not exact (moment conditions fail on the lattice): {0}")]
    DivisionNotExact(String),
    #[error("Polya multiplier search exhausted at n = {0}")]
    PolyaSearchExhausted(usize),
    #[error("catalyst lattice ratio q must be a rational greater than 1")]
    BadLatticeRatio,
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
