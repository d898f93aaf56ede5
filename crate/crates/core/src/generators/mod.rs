//! Example families: `Q6`, projective and affine planes over prime fields,
//! vertex-cut clutters of graphs, and a clutter isomorphism test.

mod graph;
mod iso;
mod planes;

pub use graph::{is_brick, vertex_cut_clutter, Graph, BRICK_MAX_VERTICES};
pub use iso::{is_isomorphic, isomorphism};
pub use planes::{
    affine_plane, affine_plane_from, fano, projective_plane, q6, verify_affine_axioms, verify_projective_axioms,
    AxiomCheck,
};
