//! Exact DP-coloring (correspondence coloring) on small graphs.
//!
//! The crate models covers `(L, H)` of a base graph, decides whether a cover
//! admits an `(L, H)`-coloring, computes the DP-chromatic number and the
//! join parameter `Z_DP` exactly on desk-scale graphs, evaluates the known
//! closed-form bounds and builds the quadratic lower-bound instance.
//!
//! Every search is exact. When a configured resource cap is hit the call
//! fails with [`DpError::NodeCap`] (or a sibling variant) instead of
//! returning an approximate answer.

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod cover;
pub mod dp;
mod error;
pub mod family;
pub mod graph;
pub mod io;
mod limits;
pub mod solver;

pub use bounds::{
    chi_equals_chidp_guaranteed, sigma_report, zdp_exact, zdp_n_bounds, zdp_upper, BoundsReport,
    SigmaReport, ZdpNBounds,
};
pub use coloring::{chromatic_number, degeneracy, DegeneracyOrder};
pub use constructions::{
    hard_instance, verify_hard_instance, CoverLabel, HardInstance, HardInstanceReport, Labeling,
};
pub use cover::{
    complete_matchings, cover_from_lists, gauge_fix, list_coloring_to_transversal,
    remove_and_restrict, transversal_to_list_coloring, validate_cover, validate_explicit_cover,
    Cover, ListAssignment, ListCover, Restriction, Transversal, ValidationReport, Violation,
};
pub use dp::{chi_dp, is_dp_colorable_at, DpVerdict};
pub use error::{DpError, Result};
pub use family::{enumerate_covers, perm_rank, perm_unrank, CoverFamily};
pub use graph::{join, make_graph, min_degree, Graph};
pub use limits::Limits;
pub use solver::{check_transversal, find_transversal, greedy_transversal, SolveResult, Status};
