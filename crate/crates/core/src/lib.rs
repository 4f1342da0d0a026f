//! Borel–Moore homology of toric varieties from their fans.
//!
//! The equivariant Chow module `A^T_*(X)` of the toric variety of a fan is
//! built with an explicit normal-form basis, tensored with the exterior
//! algebra of the character lattice, and the resulting Koszul complex is
//! reduced over ℤ, ℚ or a prime field. Homology is graded by degree and by
//! weight, and each torsion prime carries a certification flag.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod chow;
pub mod fan;
pub mod homology;
pub mod koszul;
pub mod lattice;

pub use chow::{ChowBasisElement, ChowElement, ChowModule};
pub use fan::{Cone, Fan, FanError, FanInput, Incidence};
pub use homology::{bm_homology_report, certification_thresholds, Coefficients, HomologyGroup, HomologyReport};
pub use koszul::{assemble_subcomplexes, WeightSubcomplex};
pub use lattice::{IntegerMatrix, SmithDecomposition};
