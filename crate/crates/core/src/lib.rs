//! Finite categories given by composition tables, with decision procedures
//! for fibration classes, correspondences and profunctors, replacement and
//! transport constructions, finality checks and nerve homology.

// Index loops mirror the table layout; cell tuples read better inline.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod category;
pub mod constructions;
pub mod corr;
pub mod error;
pub mod fib;
pub mod functor;
pub mod gen;
pub mod homology;
pub mod io;
pub mod search;
pub mod suite;
pub mod transport;

pub use category::{CategoryBuilder, FiniteCategory, ValidationReport, Violation};
pub use corr::{Correspondence, Profunctor, TwoSidedDiscreteFibration};
pub use error::{CatError, Result};
pub use fib::{Verdict, Witness};
pub use functor::Functor;
pub use homology::FinalityMode;
