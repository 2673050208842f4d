//! Exact computation with finite Coxeter groups, twisted conjugacy classes,
//! and Hecke algebras.
//!
//! The crate enumerates a finite Coxeter group from its matrix, computes
//! δ-twisted conjugacy classes and their minimal/maximal-length strata,
//! parametrizes those strata by pairs (J, C) of δ-stable generator subsets
//! with elliptic classes, and uses the combinatorics to produce and verify:
//!
//! * an explicit triangular basis of the center of the 0-Hecke algebra and a
//!   basis of its cocenter with a coordinate solver,
//! * class polynomials for the generic Hecke algebra, the central elements
//!   they induce, and specialization checks at concrete parameter values,
//! * the ring of one-dimensional representations and the induced trace maps.
//!
//! All algebra downstream of the group build is exact (big integers and
//! rationals); floating point appears only while closing up the root system,
//! guarded by a separation check.

pub mod conjugacy;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod poly;
pub mod reps;
pub mod verify;

pub use coxeter::{
    build_group, diagram_aut, identity_aut, parse_delta_spec, parse_group_spec, CoxeterGroup,
    CoxeterMatrix, DiagramAut, Element, GenSet, Side, DEFAULT_SIZE_LIMIT,
};
pub use error::{Error, Result};
