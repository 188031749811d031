//! Positive-existential definitions in concrete commutative rings: ring
//! arithmetic, formula ASTs, constructions producing certificates, and a
//! verifier combining exhaustive evaluation with bounded witness search.

pub mod constructions;
pub mod error;
pub mod formula;
pub mod rings;
pub mod verifier;

pub use error::{Error, Result};
pub use rings::{Elem, RingSpec};
