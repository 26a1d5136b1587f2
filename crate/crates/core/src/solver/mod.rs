//! Verification, synthesis and search over finite interpretations.

mod eval;
mod gemini;
mod hyper;
mod search;
mod synth;

use thiserror::Error;

use crate::branches::BranchError;
use crate::catalog::{CatalogError, EquationId};
use crate::finalg::AlgebraError;

pub use eval::{verify_equation, Compiled, Counterexample, Interpretation, VarValue, Verdict};
pub use gemini::{gemini_bank, gemini_refute, GeminiVerdict};
pub use hyper::{
    check_hyperidentity, check_hyperidentity_equation, represent_hyperalgebra, Algebra,
    ConstCompatCheck, HyperVerdict, Representation, Substitution,
};
pub use search::{exhaustive_search, exhaustive_search_equation, SEARCH_BOUND};
pub use synth::{synthesize, OpSolution, SolutionPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("operation symbol `{0}` has no table")]
    Unassigned(String),
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("group {0} is not abelian but the conditions require an abelian group")]
    NotAbelian(String),
    #[error("order {order} outside the supported range 1..={bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("equation is not quadratic")]
    NotQuadratic,
    #[error("algebra has no operations")]
    EmptyAlgebra,
    #[error("search supports one or two operation symbols, found {0}")]
    TooManyOperations(usize),
    #[error("the algebra does not satisfy the hyperidentity {0}")]
    HyperidentityFails(EquationId),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
