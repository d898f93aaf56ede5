//! Exact computations on clutters: blockers, packings, minors, the polytope
//! `I(C)` and the conditions used to search for ideal minimally
//! non-packing clutters.
//!
//! Everything is exact: rationals are arbitrary precision and every
//! enumeration is exhaustive under an explicit cap.

pub mod blocker;
pub mod clutter;
pub mod conditions;
pub mod error;
pub mod family;
pub mod generators;
pub mod lp;
pub mod minor;
pub mod packing;
pub mod polytope;
pub mod rational;
pub mod set;
pub mod solution;

pub use blocker::{
    blocker, blocking_number, is_minimum_transversal_covered, min_transversals, packing_number, packs, tilde,
};
pub use clutter::{make_clutter, Clutter, ClutterJson};
pub use conditions::{is_precore, PrecoreReport, Verdict, SCHEMA_VERSION};
pub use error::{Error, Result};
pub use family::ExtendedCount;
pub use minor::{contract, delete, has_packing_property, is_minimally_non_packing, minor, restrict};
pub use packing::{fpn, is_unique_max_packing, max_fractional_packing, FractionalPacking};
pub use polytope::{build_ic, is_ideal, vertices, HPolyhedron, VertexSet};
pub use rational::Rational;
pub use set::ElementSet;
pub use solution::{
    affine_obstruction, check_solution, search_solutions, ObstructionReport, SearchLimits, SearchOutcome, SearchStatus,
    SolutionReport,
};
