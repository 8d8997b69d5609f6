//! The differential graded algebra realizing triangulations of projective
//! modules over exterior algebras, its semifree modules, homology and cones.

mod algebra;
mod homology;
mod module;
mod triangle;

pub use algebra::{
    check_confluence, rewrite, DgAlgebra, DgElem, Letter, Mono, Strategy, DEFAULT_WEIGHT_BOUND,
};
pub use homology::{needed_weight, Homology, HomologySlice, Window, PAD};
pub use module::{DgMap, DgModule, ModElem};
pub use triangle::{
    lift_map, projective_ring, ExactnessReport, Failure, Position, ProjMap, Triangle,
};

#[cfg(test)]
mod tests;
