//! Shared helpers for the benchmark targets: building named groups once.

use hecke0::coxeter::{build_group, parse_group_spec, CoxeterGroup, DEFAULT_SIZE_LIMIT};

/// Build a group from its label, panicking on bad input (bench-only code).
pub fn group(spec: &str) -> CoxeterGroup {
    build_group(parse_group_spec(spec).expect("valid spec"), DEFAULT_SIZE_LIMIT)
        .expect("finite group")
}
