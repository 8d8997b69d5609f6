//! Graded commutative rings: representation, validation, ideals and structure.

pub mod build;
mod graded;
mod ideal;
pub mod spec;
mod structure;

pub use graded::{BasisElem, GradedRing, Periodicity, RingElement};
pub use ideal::Ideal;
pub use spec::RingSpec;
pub use structure::{DoubleAnnihilator, DEFAULT_ENUM_CAP};

#[cfg(test)]
mod tests;
