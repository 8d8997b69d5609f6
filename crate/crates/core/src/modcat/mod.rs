//! Finite modules over finite ungraded commutative rings and their stable category.

mod category;
mod module;
pub mod spec;

pub use category::{HomGroup, Limits, ModuleCategory, StableHom};
pub use module::{FiniteModule, ModuleMap};

#[cfg(test)]
mod tests;
