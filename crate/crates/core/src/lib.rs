//! Exact computation of involutive bases and reduced Gröbner bases of
//! polynomial ideals over the rationals.
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`]: monomials, admissible orders, primitive integer polynomials and
//!   the elementary fraction-free reduction step.
//! - [`division`]: Janet, Pommaret and lexicographically induced divisions,
//!   separations of variables and the division axioms.
//! - [`janet_tree`]: the Janet tree used for fast Janet-divisor search.
//! - [`monomial_completion`]: cones, local involutivity and completion of
//!   monomial sets.
//! - [`reduce`]: conventional and involutive normal forms.
//! - [`engine`]: the completion algorithms, criteria and statistics.
//! - [`buchberger`]: an independent Buchberger implementation used as oracle.
//! - [`hilbert`]: Hilbert function and polynomial from an involutive basis.
//! - [`input`] and [`bench`]: problem files and benchmark generators.

pub mod bench;
pub mod buchberger;
pub mod division;
pub mod engine;
mod error;
pub mod hilbert;
pub mod input;
pub mod janet_tree;
pub mod monomial_completion;
pub mod poly;
pub mod reduce;

pub use division::{Division, Separation};
pub use engine::{CompletionStats, Criteria, EngineConfig, OutputKind, Selection};
pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, Polynomial, Term, VarSet};
