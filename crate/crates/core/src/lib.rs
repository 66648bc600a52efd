//! Grassmannians over finite fields.
//!
//! Every subspace of `F^n` has exactly one row-reduced echelon basis, so the
//! set of `d`-dimensional subspaces (the Grassmannian `Gr(d, n)`) can be
//! enumerated by walking echelon forms, one pivot pattern at a time. This
//! crate provides:
//!
//! - [`field`]: arithmetic in `GF(p^k)` with a fixed integer encoding;
//! - [`matrix`]: dense matrices, row reduction, rank and row-space queries;
//! - [`pivots`]: pivot sequences and the size of each echelon stratum;
//! - [`grassmannian`]: canonical subspaces and stratified enumeration;
//! - [`counting`]: `|Gr(d, n)|` via the Gaussian product, the pivot sum and
//!   the coefficient polynomial;
//! - [`oracle`]: a brute-force subspace enumerator used to certify the rest.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use grassmann_core::counting::{count, Method};
//!
//! let n = count(2, 4, 2, Method::PivotSum).unwrap();
//! assert_eq!(n.to_string(), "35");
//! ```
#![no_std]

extern crate alloc;

pub mod counting;
pub mod error;
pub mod field;
pub mod grassmannian;
pub mod matrix;
pub mod oracle;
pub mod pivots;

pub use counting::{BigCount, Method, QPoly};
pub use error::Error;
pub use field::{Fe, FieldSpec};
pub use grassmannian::{EchelonForm, EnumLimit, Subspace};
pub use matrix::{Mat, RrefResult};
pub use pivots::PivotSeq;

pub type Result<T, E = Error> = core::result::Result<T, E>;
