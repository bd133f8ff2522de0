//! The adjoint braid arrangement and functionals on its chambers.

mod arrangement;
mod derivative;
mod dynkin;
mod functional;

pub use arrangement::{
    cache_path, hyperplanes, parse_signs, read_cache, sign_string, signature_blocks, signs_of, write_cache,
    Arrangement, Atlas, Chamber, CACHE_FORMAT, DEFAULT_MAX_N, HARD_MAX_N,
};
pub use derivative::{
    chambers_by_facet_size, comb_coefficients, derivative, derivative_with_seed, eulerian_element, is_eulerian,
    reconstruct, ChamberTensor,
};
pub use dynkin::{c_value, dynkin, egs_expansion, m_value};
pub use functional::{
    c_functional, c_of, from_c_coords, is_steinmann, m_functional, p_functional, relation_matrix, relation_rank,
    stein_quotient_dim, steinmann_coords, steinmann_relations, transversal_pairs, ChamberFunctional, SteinmannRelation,
};
