//! Coxeter matrices and the textual group-spec grammar.
//!
//! A Coxeter matrix is a symmetric integer matrix with 1 on the diagonal and
//! entries ≥ 2 off it; it presents the group ⟨s ∈ S | (st)^{m(s,t)} = 1⟩.
//! This artifact only handles finite entries (and only matrices whose group
//! turns out to be finite, which the builder checks by enumeration).
//!
//! Spec grammar accepted by [`parse_group_spec`]:
//!
//! ```text
//! TYPE := NAME RANK        e.g. "A3", "B2", "H4", "E7"
//!       | "I2(" m ")"      dihedral of order 2m
//!       | TYPE "x" TYPE    direct product (block-diagonal matrix)
//!       | "matrix:" path   explicit JSON matrix file
//! ```
//!
//! Matrix JSON files look like `{"size": n, "m": [[1,3],[3,1]]}`.  A 0 entry
//! conventionally encodes ∞ and is rejected here.  Automorphism specs are
//! comma-separated 0-based generator images, e.g. `"1,0"` for the rank-2
//! swap.

use crate::error::{Error, Result};

/// Symmetric Coxeter matrix; ranks up to 63 (generator subsets are bitmasks).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    /// Row-major `rank × rank` entries.
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Validate and build.  The empty (rank 0) matrix is allowed: it presents
    /// the trivial group and shows up as the parabolic subgroup W_∅.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<CoxeterMatrix> {
        let rank = rows.len();
        if rank > 63 {
            return Err(Error::InvalidMatrix(format!(
                "rank {rank} exceeds the supported maximum of 63"
            )));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {rank}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let m = CoxeterMatrix { rank, entries };
        for i in 0..rank {
            if m.entry(i, i) != 1 {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry m({i},{i}) = {} must be 1",
                    m.entry(i, i)
                )));
            }
            for j in 0..i {
                let (a, b) = (m.entry(i, j), m.entry(j, i));
                if a != b {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entries m({i},{j}) = {a}, m({j},{i}) = {b}"
                    )));
                }
                if a == 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "m({i},{j}) = 0 encodes an infinite bond, which is not supported"
                    )));
                }
                if a < 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "off-diagonal entry m({i},{j}) = {a} must be ≥ 2"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bond order m(s,t).
    pub fn entry(&self, s: usize, t: usize) -> u32 {
        self.entries[s * self.rank + t]
    }

    /// Block-diagonal sum: the matrix of the direct product, with m = 2
    /// (commutation) between the factors.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let rank = self.rank + other.rank;
        let mut entries = vec![2u32; rank * rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                entries[i * rank + j] = self.entry(i, j);
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                entries[(self.rank + i) * rank + (self.rank + j)] = other.entry(i, j);
            }
        }
        CoxeterMatrix { rank, entries }
    }

    /// Restriction to a sorted list of generator indices.
    pub fn submatrix(&self, gens: &[usize]) -> Result<CoxeterMatrix> {
        for &g in gens {
            if g >= self.rank {
                return Err(Error::InvalidSubset {
                    index: g,
                    rank: self.rank,
                });
            }
        }
        let rows = gens
            .iter()
            .map(|&i| gens.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        CoxeterMatrix::new(rows)
    }
}

fn invalid(spec: &str, reason: impl Into<String>) -> Error {
    Error::InvalidSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Matrix of a named type or a path chain / branched diagram, by family.
fn named_type(spec: &str, family: char, rank: usize) -> Result<CoxeterMatrix> {
    // Start from a path with all bonds 3 and adjust.
    let path = |bonds: &[u32]| -> Vec<Vec<u32>> {
        let n = bonds.len() + 1;
        let mut rows = vec![vec![2u32; n]; n];
        for i in 0..n {
            rows[i][i] = 1;
        }
        for (i, &b) in bonds.iter().enumerate() {
            rows[i][i + 1] = b;
            rows[i + 1][i] = b;
        }
        rows
    };
    let check_rank = |min: usize, max: Option<usize>| -> Result<()> {
        if rank < min || max.is_some_and(|m| rank > m) {
            return Err(invalid(
                spec,
                match max {
                    Some(m) if m == min => format!("{family}{min} is the only valid rank"),
                    Some(m) => format!("rank must be between {min} and {m}"),
                    None => format!("rank must be at least {min}"),
                },
            ));
        }
        Ok(())
    };
    let rows = match family {
        'A' => {
            check_rank(1, None)?;
            path(&vec![3; rank - 1])
        }
        'B' => {
            check_rank(2, None)?;
            let mut bonds = vec![3; rank - 1];
            bonds[rank - 2] = 4;
            path(&bonds)
        }
        'D' => {
            // Path 0-1-…-(n-2) plus node n-1 bonded to node n-3.
            check_rank(3, None)?;
            let mut rows = path(&vec![3; rank - 1]);
            rows[rank - 2][rank - 1] = 2;
            rows[rank - 1][rank - 2] = 2;
            rows[rank - 3][rank - 1] = 3;
            rows[rank - 1][rank - 3] = 3;
            rows
        }
        'E' => {
            // Path 0-1-…-(n-2) plus node n-1 bonded to node 2.
            check_rank(6, Some(8))?;
            let mut rows = path(&vec![3; rank - 1]);
            rows[rank - 2][rank - 1] = 2;
            rows[rank - 1][rank - 2] = 2;
            rows[2][rank - 1] = 3;
            rows[rank - 1][2] = 3;
            rows
        }
        'F' => {
            check_rank(4, Some(4))?;
            path(&[3, 4, 3])
        }
        'G' => {
            check_rank(2, Some(2))?;
            path(&[6])
        }
        'H' => {
            check_rank(3, Some(4))?;
            let mut bonds = vec![3; rank - 1];
            bonds[0] = 5;
            path(&bonds)
        }
        _ => {
            return Err(invalid(
                spec,
                "unknown family; expected one of A, B, D, E, F, G, H, I2(m), or matrix:",
            ))
        }
    };
    CoxeterMatrix::new(rows)
}

fn parse_atom(spec: &str) -> Result<CoxeterMatrix> {
    let atom = spec.trim();
    if atom.is_empty() {
        return Err(invalid(spec, "empty factor"));
    }
    if let Some(path) = atom.strip_prefix("matrix:") {
        return matrix_from_file(path);
    }
    if let Some(inner) = atom.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = inner
            .parse()
            .map_err(|_| invalid(atom, "I2(m) requires an integer m"))?;
        if m < 2 {
            return Err(invalid(atom, "I2(m) requires m ≥ 2"));
        }
        return CoxeterMatrix::new(vec![vec![1, m], vec![m, 1]]);
    }
    let family = atom.chars().next().unwrap();
    let rank: usize = atom[family.len_utf8()..]
        .parse()
        .map_err(|_| invalid(atom, "expected NAME RANK, I2(m), or matrix:path"))?;
    named_type(atom, family, rank)
}

/// Parse a group spec string (see the module docs for the grammar).
///
/// Product factors are separated by `x`; a file path inside a product
/// therefore must not contain `x` (use a standalone `matrix:` spec for such
/// paths).
pub fn parse_group_spec(spec: &str) -> Result<CoxeterMatrix> {
    let trimmed = spec.trim();
    if trimmed.is_empty() {
        return Err(invalid(spec, "empty spec"));
    }
    if let Some(path) = trimmed.strip_prefix("matrix:") {
        return matrix_from_file(path);
    }
    let mut result: Option<CoxeterMatrix> = None;
    for part in trimmed.split('x') {
        let m = parse_atom(part)?;
        result = Some(match result {
            None => m,
            Some(acc) => acc.direct_sum(&m),
        });
    }
    Ok(result.unwrap())
}

/// Read and validate an explicit matrix from a JSON file.
pub fn matrix_from_file(path: &str) -> Result<CoxeterMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    matrix_from_json(&text).map_err(|e| match e {
        Error::InvalidMatrix(msg) => Error::InvalidMatrix(format!("{path}: {msg}")),
        other => other,
    })
}

/// Parse `{"size": n, "m": [[…]]}`.  Entry 0 (the ∞ convention) is rejected.
pub fn matrix_from_json(text: &str) -> Result<CoxeterMatrix> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidMatrix(format!("not valid JSON: {e}")))?;
    let size = value
        .get("size")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::InvalidMatrix("missing integer field \"size\"".into()))?;
    let rows_json = value
        .get("m")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::InvalidMatrix("missing array field \"m\"".into()))?;
    if rows_json.len() as u64 != size {
        return Err(Error::InvalidMatrix(format!(
            "\"size\" is {size} but \"m\" has {} rows",
            rows_json.len()
        )));
    }
    let mut rows = Vec::with_capacity(rows_json.len());
    for (i, row) in rows_json.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::InvalidMatrix(format!("row {i} is not an array")))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, entry) in row.iter().enumerate() {
            let e = entry.as_u64().ok_or_else(|| {
                Error::InvalidMatrix(format!("entry ({i},{j}) is not a nonnegative integer"))
            })?;
            out.push(u32::try_from(e).map_err(|_| {
                Error::InvalidMatrix(format!("entry ({i},{j}) = {e} is out of range"))
            })?);
        }
        rows.push(out);
    }
    CoxeterMatrix::new(rows)
}

/// Parse an automorphism spec: comma-separated 0-based generator images.
pub fn parse_delta_spec(spec: &str, rank: usize) -> Result<Vec<usize>> {
    let images: Vec<usize> = spec
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| invalid(spec, format!("`{}` is not a generator index", part.trim())))
        })
        .collect::<Result<_>>()?;
    if images.len() != rank {
        return Err(invalid(
            spec,
            format!("{} images given for rank {rank}", images.len()),
        ));
    }
    let mut seen = vec![false; rank];
    for &i in &images {
        if i >= rank {
            return Err(invalid(spec, format!("index {i} out of range for rank {rank}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(invalid(spec, format!("index {i} appears twice")));
        }
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types_have_expected_bonds() {
        let a2 = parse_group_spec("A2").unwrap();
        assert_eq!((a2.rank(), a2.entry(0, 1)), (2, 3));
        let b3 = parse_group_spec("B3").unwrap();
        assert_eq!((b3.entry(0, 1), b3.entry(1, 2)), (3, 4));
        let g2 = parse_group_spec("G2").unwrap();
        assert_eq!(g2.entry(0, 1), 6);
        let h3 = parse_group_spec("H3").unwrap();
        assert_eq!((h3.entry(0, 1), h3.entry(1, 2)), (5, 3));
        let d4 = parse_group_spec("D4").unwrap();
        // Central node 1 bonded to 0, 2, 3; outer nodes pairwise commuting.
        assert_eq!(
            [d4.entry(0, 1), d4.entry(1, 2), d4.entry(1, 3), d4.entry(0, 2), d4.entry(0, 3), d4.entry(2, 3)],
            [3, 3, 3, 2, 2, 2]
        );
        let i7 = parse_group_spec("I2(7)").unwrap();
        assert_eq!(i7.entry(0, 1), 7);
    }

    #[test]
    fn products_are_block_diagonal() {
        let m = parse_group_spec("A2xA1").unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!((m.entry(0, 1), m.entry(0, 2), m.entry(1, 2)), (3, 2, 2));
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["", "Z3", "A0", "E9", "I2(1)", "A2x", "Ax"] {
            assert!(parse_group_spec(bad).is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn matrix_json_roundtrip_and_infinity_rejection() {
        let m = matrix_from_json(r#"{"size": 2, "m": [[1,5],[5,1]]}"#).unwrap();
        assert_eq!(m.entry(0, 1), 5);
        assert!(matrix_from_json(r#"{"size": 2, "m": [[1,0],[0,1]]}"#).is_err());
        assert!(matrix_from_json(r#"{"size": 2, "m": [[1,3],[4,1]]}"#).is_err());
        assert!(matrix_from_json(r#"{"size": 3, "m": [[1,3],[3,1]]}"#).is_err());
    }

    #[test]
    fn delta_spec_parsing() {
        assert_eq!(parse_delta_spec("1,0", 2).unwrap(), vec![1, 0]);
        assert_eq!(parse_delta_spec(" 0 , 1 ", 2).unwrap(), vec![0, 1]);
        assert!(parse_delta_spec("0,0", 2).is_err());
        assert!(parse_delta_spec("0,2", 2).is_err());
        assert!(parse_delta_spec("0", 2).is_err());
    }
}
