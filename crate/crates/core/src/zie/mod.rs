//! The Lie algebra `Zie` of primitives of `Σ` and its dual Lie coalgebra.

mod dual;
mod lie;
mod tree;

pub use dual::{cobracket, pair, project, rebase, DualBasis, ZieDualElement, ZieTensor};
pub use lie::{
    based_compositions, bracket, dimension, embed, embed_tree, is_based, p_eval, reduce, reduce_combination, ZieElement,
};
pub use tree::Tree;
