//! Finite-dimensional nilpotent quotients of ℚ[generators].
//!
//! An infinitesimal vector `v` in ℝⁿ is modeled by `n` coordinate generators
//! `v₁ … vₙ`. Declaring `v` of order `r` adds every product of `r + 1` of its
//! coordinates to the ideal; pair constraints do the same for a difference
//! `q − p`, and thin faces add all cubic products of the coordinates of the
//! two edge vectors of a 2-simplex. Free *symbol* generators carry generic
//! coefficients (metric entries, form coefficients, …) and take part in no
//! relation.
//!
//! Normal forms come from one exact row reduction per context: the ideal is
//! a subspace of the (finite) span of standard monomials, and each monomial
//! is either kept or rewritten as a combination of smaller ones.

mod context;
mod element;
mod multigraded;
mod taylor;

pub use context::{ContextBuilder, ContextStats, JetContext, VertexRef};
pub use element::JetElement;
pub use multigraded::{Degree, MultiGradedElement};
pub use taylor::{taylor_apply, taylor_parts, FormalFunction, FormalTerm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("unknown vector `{0}`")]
    UnknownVector(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("order {0} is not supported (use 1 or 2)")]
    BadOrder(u32),
    #[error("name `{0}` is declared twice")]
    DuplicateName(String),
    #[error("degree bound {requested} is below the nilpotency degree {required}")]
    DegreeBoundTooSmall { requested: u32, required: u32 },
    #[error("a discarded Taylor term of degree {degree} does not vanish")]
    OrderTooSmall { degree: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different contexts")]
    ContextMismatch,
}
