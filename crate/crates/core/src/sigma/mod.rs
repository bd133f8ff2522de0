//! The Hopf algebras `Σ*` (bases `M`, `P`, `C`) and `Σ` (bases `H`, `Q`).

pub mod basis;
pub mod element;
pub mod hopf;

pub use basis::{change_basis, cone_element, cone_in_m, eulerian_series, tits_h};
pub use element::{Algebra, Basis, Element, TensorElement};
pub use hopf::{
    antipode, comultiply, counit, is_primitive, multiply, multiply_tensor, pairing, pairing_tensor, quasishuffles,
};
