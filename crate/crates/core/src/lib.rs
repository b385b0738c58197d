//! Exact computations with socle deformed weighted surface algebras over finite fields.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod field;
pub mod homology;
pub mod isocheck;
pub mod linalg;
pub mod presentation;
pub mod quiver;
pub mod rewrite;
pub mod suites;

pub use error::{Error, Result};
