//! Decision procedures for majorization, catalytic majorization (trumping),
//! and higher-order convex ordering of finite positive vectors, together with
//! construction of explicit, independently checkable catalyst certificates.
//!
//! Five mutually cross-validating routes are implemented:
//! partial-sum comparison, the root-and-quotient polynomial certificate, the
//! nested-sum conditions, the complete-monotonicity test on an associated
//! Dirichlet polynomial, and a convex-function sampling oracle. Trumping is
//! decided through power-mean and entropy inequalities, cross-checked against
//! positivity of the Dirichlet quotient on the real line, and certified by an
//! exact lattice polynomial factorization with a Polya multiplier.

pub mod dirichlet;
pub mod error;
pub mod instance;
pub mod means;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod sturm;
pub mod trumping;
pub mod vector;

pub use error::{DirichletError, OrderError, PolyError, TrumpingError};
pub use scalar::Rational;
pub use vector::{catalyzes, convex_order_oracle, majorizes, sort_desc, tensor};
pub use vector::{OrderVerdict, PositiveVector, Relation};
