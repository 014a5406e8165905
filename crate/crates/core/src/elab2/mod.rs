//! Elementary abelian 2-groups: diagonal ±1 representations given by a
//! GF(2) matrix, their γ character, and the cut polytopes of graphs.

mod cut;
mod gf2;
mod graph;

pub use cut::{
    admissible_perms, affine_symmetry_order_of_cut_polytope, cut_matrix, cut_size_bounds_check, cut_space,
    induced_admissible_perms, verify_admissible, CutSizeReport, CutSpace, EdgeSet, DEFAULT_CUT_DIM_CAP,
    HARD_CUT_DIM_CAP,
};
pub use gf2::{
    count_ideal_orbit_bound, diag_rep, hamming_gamma, index_to_vector, is_ideal_character, permutation_rep,
    GF2Matrix, IdealOrbitBound,
};
pub use graph::{caterpillar_complement, class_t_check, ClassTCertificate, Graph};
