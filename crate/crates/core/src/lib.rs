//! Hopf algebras of set compositions, their braid and adjoint braid
//! realizations, and the Steinmann relations, in exact rational arithmetic.

pub mod adjoint;
pub mod braid;
pub mod cli;
pub mod composition;
pub mod error;
pub mod json;
pub mod labels;
pub mod preposet;
pub mod ratgeom;
pub mod rational;
pub mod sigma;
pub mod verify;
pub mod zie;

pub use composition::{SetComposition, SetPartition};
pub use error::{Error, Result};
pub use labels::{GroundSet, LabelSet, Relabel, Relabeling};
pub use preposet::{AdjointFamily, PartialProduct, Preposet, TwoBlock};
pub use rational::Rational;
