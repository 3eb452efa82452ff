//! Exact computer algebra for the double affine Hecke algebra of type
//! `(C1^v, C1)` and the Askey–Wilson polynomials.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: coefficient towers, the parameter system and label shifts;
//! - [`laurent`]: Laurent polynomials, rational functions, involutions;
//! - [`ops`]: difference-reflection operators in normal form;
//! - [`daha`]: the basic representation and creation operators;
//! - [`families`]: the polynomials `E_n` and `P_m`;
//! - [`symshift`]: symmetric shift operators and their symbols;
//! - [`matshift`]: matrix-valued machinery and non-symmetric shift operators;
//! - [`quadrature`]: high-precision weights, inner products and norms;
//! - [`speclimit`]: exact `q -> 1` limits through dual-number jets;
//! - [`cli`]: the verification front end.

pub mod cli;
pub mod daha;
pub mod error;
pub mod families;
pub mod laurent;
pub mod matshift;
pub mod ops;
pub mod quadrature;
pub mod report;
pub mod scalars;
pub mod speclimit;
pub mod suites;
pub mod symshift;

pub use error::{Error, Result};
