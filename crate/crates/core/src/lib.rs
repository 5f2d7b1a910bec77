//! Exact degreewise computations in large graded commutative rings.
//!
//! Everything here is exact: linear algebra over F2 with bit-packed rows,
//! ordinal arithmetic in Cantor normal form, rational exponents as
//! arbitrary-precision fractions, and p-adic data truncated at an explicit
//! level. Every computation that depends on a degree bound carries that
//! bound in its result; nothing silently truncates.

pub mod adjust;
pub mod baer;
pub mod engine;
pub mod error;
pub mod gf2;
pub mod ideal;
pub mod jring;
pub mod ordinal;
pub mod rootalg;
pub mod zoo;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
