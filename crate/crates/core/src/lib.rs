//! Exact computations with finite-dimensional algebras graded by a finite
//! abelian group and carrying a graded involution.

pub mod algebra;
pub mod budget;
pub mod constructions;
pub mod cyclo;
pub mod error;
pub mod groupkit;
pub mod identities;
pub mod json;
pub mod linalg;
pub mod structure;

pub use algebra::{GradedStarAlgebra, Projection, Violation};
pub use budget::Budget;
pub use cyclo::CycloScalar;
pub use error::{Error, Result};
pub use groupkit::{CompleteDegree, FiniteAbelianGroup, GroupElement, Sign, TwoCocycle};
