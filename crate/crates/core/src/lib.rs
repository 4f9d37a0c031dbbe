//! Feasible sign conditions of univariate polynomials on the real zeros of
//! another polynomial, computed over exact rationals.
//!
//! The pipeline introduces `P_s, ..., P_1` one at a time. At every step the
//! candidate sign conditions are tested through Tarski queries and the
//! resulting structured linear system is solved by a recursive block
//! elimination that needs at most `2r²` rational operations.

pub mod cli;
pub mod dense;
pub mod driver;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod poly;
pub mod signcond;
pub mod solver;
pub mod tarski;

pub use driver::{signdet_incremental, signdet_naive, Row, SignDetResult};
pub use error::{Error, Result};
pub use poly::{Poly, Rat};
pub use signcond::{MultiDeg, SignCond, SignList};
pub use tarski::Sign;
