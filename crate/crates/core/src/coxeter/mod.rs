//! Finite Coxeter groups: matrices and spec parsing, exact group
//! enumeration, and diagram automorphisms.

pub mod automorphism;
pub mod group;
pub mod matrix;

pub use automorphism::{
    compose_ad_longest, diagram_aut, diagram_automorphisms, identity_aut, DiagramAut,
};
pub use group::{
    build_group, CoxeterGroup, Element, GenSet, ParabolicEmbedding, Side, DEFAULT_SIZE_LIMIT,
};
pub use matrix::{
    matrix_from_file, matrix_from_json, parse_delta_spec, parse_group_spec, CoxeterMatrix,
};
