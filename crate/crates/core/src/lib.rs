//! Rank distributions of persymmetric matrices over GF(2), their block
//! generalisations, and the exponential sums and polynomial counts that
//! reduce to them.

pub mod census;
pub mod error;
pub mod families;
pub mod formulas;
pub mod gf2;
pub mod laurent;
pub mod polycount;

pub use error::{Error, Result};
pub use families::{FamilyShape, ParamVec, Truncation};
pub use gf2::BitMatrix;
