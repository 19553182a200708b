//! Pseudo-codewords of binary LDPC codes with respect to a fixed
//! parity-check matrix.
//!
//! The crate covers GF(2) code enumeration, Tanner and normal graphs, finite
//! graph covers given by permutation assignments, the fundamental cone, the
//! constructive path-lifting realization of cone points as cover codewords,
//! and exact edge zeta functions whose series expansions list the
//! pseudo-codewords of cycle codes and of bit-even Tanner graphs.

pub mod cone;
pub mod covers;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod gf2;
pub mod lifting;
pub mod tanner;
pub mod zeta;

pub use error::{Error, Result};
