//! Implicit equations of tensor-product surfaces from moving-plane syzygies.
//!
//! Given four bihomogeneous forms of bidegree `(a, b)` over a prime field, the
//! crate finds a minimal syzygy of bidegree `(0, n)`, builds the remaining
//! syzygies needed for a square linear strand, and certifies that the strand
//! determinant is a power of the implicit equation.

pub mod bipoly;
pub mod cases;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gen;
pub mod hburch;
pub mod job;
pub mod linalg;
pub mod membership;
pub mod oracle;
pub mod pipeline;
pub mod poly4;
pub mod strand;
pub mod polymat;
pub mod syzygy;
pub mod upoly;

pub use error::{Error, Result};
pub use field::PrimeField;
