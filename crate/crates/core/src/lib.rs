//! Exact tools for lattice polytopes: minimal-volume bounds, constructive
//! triangulations with stellar insertions, and Castelnuovo searches.

pub mod exact;
pub mod lp;
pub mod polytope;
pub mod regularity;
pub mod search;
pub mod triangulation;
