//! Quadratic functional equations on quasigroups.
//!
//! Syntax and classifiers live in [`equation`] and [`parse`], the equation
//! catalog in [`catalog`], branch words and solvability conditions in
//! [`branches`], Krstić graphs in [`krstic`], finite algebras in [`finalg`]
//! and the semantic search engine in [`solver`].

pub mod branches;
pub mod catalog;
pub mod equation;
pub mod finalg;
pub mod krstic;
pub mod parse;
pub mod solver;

pub use catalog::{catalog, EquationId, Named};
pub use equation::{Equation, Term};
pub use parse::{parse_equation, ParseError};
