//! Decides existence of, and synthesizes, linear and lexicographic-linear
//! ranking functions for single-path and multipath linear-constraint loops,
//! over rational and integer variable domains. Produces machine-checkable
//! ranking functions, nonexistence witnesses, and iteration bounds.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating point anywhere in the pipeline.

pub mod linalg;
pub mod lp;
pub mod polyhedra;
pub mod inthull;
pub mod loopmodel;
pub mod lrf;
pub mod llrf;
