//! Exact rational linear algebra over sparse vectors.
//!
//! Everything downstream that claims "this set is a basis" or "this space has
//! dimension d" is checked through this module, so it trades generality for
//! exactness and determinism:
//!
//! * coefficients are arbitrary-precision rationals ([`Q`]);
//! * echelon bases are kept in *fully reduced* row echelon form at all times,
//!   so a [`Subspace`] only depends on the span, never on insertion order;
//! * elimination is fraction-free internally: rows are stored as primitive
//!   integer vectors (content 1, positive leading coefficient) and combined
//!   by cross-multiplication followed by content division, which keeps
//!   intermediate entries small at ambient dimensions of a few hundred.
//!   Pivot normalization to 1 happens only when rational rows are exported.
//!
//! Vectors are sparse `(index, coefficient)` lists because almost everything
//! this crate feeds in here (structure-constant rows, commutators of basis
//! elements) has a handful of nonzero entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Sparse vector with exact rational entries: strictly increasing indices,
/// no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QVec {
    entries: Vec<(usize, Q)>,
}

impl QVec {
    /// The zero vector.
    pub fn new() -> Self {
        QVec::default()
    }

    /// Unit vector `e_i`.
    pub fn unit(i: usize) -> Self {
        QVec {
            entries: vec![(i, Q::one())],
        }
    }

    /// Build from arbitrary (index, coefficient) pairs: sorts, merges
    /// duplicate indices, and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut entries: Vec<(usize, Q)> = pairs.into_iter().collect();
        entries.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Q)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        QVec { entries: merged }
    }

    /// Build from a dense slice.
    pub fn from_dense(row: &[Q]) -> Self {
        QVec {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Dense form of length `dim`.  Panics if an index is out of range.
    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient at index `i` (zero if absent).
    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// Iterate over the nonzero entries in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Largest index with a nonzero entry, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + c * other`, exactly.
    pub fn add_scaled(&self, c: &Q, other: &QVec) -> QVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let v = x.clone() + c.clone() * y.clone();
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (Some(_), Some((j, y))) => {
                    out.push((*j, c.clone() * y.clone()));
                    b.next();
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c.clone() * y.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        QVec { entries: out }
    }

    /// Restriction to an index set: entries outside `keep` are dropped.
    pub fn project(&self, keep: impl Fn(usize) -> bool) -> QVec {
        QVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| keep(*i))
                .cloned()
                .collect(),
        }
    }
}

/// Internal primitive integer row: strictly increasing indices, content 1,
/// leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntRow {
    entries: Vec<(usize, BigInt)>,
}

impl IntRow {
    fn pivot(&self) -> usize {
        self.entries[0].0
    }

    fn pivot_coeff(&self) -> &BigInt {
        &self.entries[0].1
    }

    fn coeff_at(&self, i: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    /// Divide by the (positive) gcd of the entries and make the leading
    /// coefficient positive.  `entries` must already be sorted and nonzero.
    fn normalize(mut entries: Vec<(usize, BigInt)>) -> Option<IntRow> {
        entries.retain(|(_, c)| !c.is_zero());
        if entries.is_empty() {
            return None;
        }
        let mut content = BigInt::zero();
        for (_, c) in &entries {
            content = content.gcd(c);
        }
        let negate = entries[0].1.is_negative();
        for (_, c) in &mut entries {
            *c = &*c / &content;
            if negate {
                *c = -std::mem::take(c);
            }
        }
        Some(IntRow { entries })
    }

    /// `self * a - other * b`, merged sparsely (not normalized).
    fn cross(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> Vec<(usize, BigInt)> {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, c)), Some((j, d))) if i == j => {
                    out.push((*i, c * a - d * b));
                    x.next();
                    y.next();
                }
                (Some((i, c)), Some((j, _))) if i < j => {
                    out.push((*i, c * a));
                    x.next();
                }
                (Some(_), Some((j, d))) => {
                    out.push((*j, -(d * b)));
                    y.next();
                }
                (Some((i, c)), None) => {
                    out.push((*i, c * a));
                    x.next();
                }
                (None, Some((j, d))) => {
                    out.push((*j, -(d * b)));
                    y.next();
                }
                (None, None) => break,
            }
        }
        out
    }

    /// Rational form with pivot normalized to 1.
    fn to_qvec(&self) -> QVec {
        let p = self.pivot_coeff().clone();
        QVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (*i, Q::new(c.clone(), p.clone())))
                .collect(),
        }
    }
}

/// Clear denominators and divide out the content: the primitive integer
/// vector spanning the same line as `v` (None for the zero vector).
fn primitive(v: &QVec) -> Option<IntRow> {
    if v.is_zero() {
        return None;
    }
    let mut lcm = BigInt::one();
    for (_, c) in v.iter() {
        lcm = lcm.lcm(c.denom());
    }
    let entries = v
        .iter()
        .map(|(i, c)| (i, c.numer() * (&lcm / c.denom())))
        .collect();
    IntRow::normalize(entries)
}

/// A linear subspace of ℚ^ambient held as a canonical reduced echelon basis.
///
/// Rows are kept sorted by pivot column and fully reduced against one
/// another, so the stored basis is the (unique) reduced echelon basis of the
/// span — inserting the same set of vectors in any order yields identical
/// internal state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<IntRow>,
}

impl Subspace {
    /// The zero subspace of ℚ^ambient.
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    /// Span of the given vectors.
    pub fn from_rows<'a>(ambient: usize, rows: impl IntoIterator<Item = &'a QVec>) -> Self {
        let mut s = Subspace::new(ambient);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot()).collect()
    }

    fn check_index(&self, v: &QVec) {
        if let Some(i) = v.max_index() {
            assert!(
                i < self.ambient,
                "vector index {i} out of range for ambient dimension {}",
                self.ambient
            );
        }
    }

    fn row_with_pivot(&self, col: usize) -> Option<usize> {
        self.rows.binary_search_by_key(&col, |r| r.pivot()).ok()
    }

    /// Forward-reduce an integer vector against the current rows.
    fn forward_reduce(&self, mut w: Option<IntRow>) -> Option<IntRow> {
        loop {
            let row = match &w {
                None => return None,
                Some(r) => match self.row_with_pivot(r.pivot()) {
                    None => return w,
                    Some(k) => &self.rows[k],
                },
            };
            let v = w.as_ref().unwrap();
            let combined = v.cross(row.pivot_coeff(), row, v.pivot_coeff());
            w = IntRow::normalize(combined);
        }
    }

    /// Add `v` to the span.  Returns true iff the rank grew.
    pub fn insert(&mut self, v: &QVec) -> bool {
        self.check_index(v);
        let mut w = match self.forward_reduce(primitive(v)) {
            None => return false,
            Some(w) => w,
        };
        // Clear every remaining pivot column from the new row (forward
        // reduction only chases the leading column; pivots to its right can
        // survive it).  Existing rows have no entries left of their pivots,
        // so this cannot disturb w's leading entry.
        for row in &self.rows {
            if row.pivot() <= w.pivot() {
                continue;
            }
            if let Some(c) = w.coeff_at(row.pivot()) {
                let c = c.clone();
                let combined = w.cross(row.pivot_coeff(), row, &c);
                w = IntRow::normalize(combined)
                    .expect("clearing a later pivot cannot kill the row");
            }
        }
        // Back-eliminate the new pivot column from every existing row, then
        // keep rows ordered by pivot: this maintains full reduction, which is
        // what makes the representation canonical.
        let col = w.pivot();
        for row in &mut self.rows {
            if let Some(c) = row.coeff_at(col) {
                let c = c.clone();
                let combined = row.cross(w.pivot_coeff(), &w, &c);
                *row = IntRow::normalize(combined)
                    .expect("back-elimination cannot kill a pivot row");
            }
        }
        let at = self
            .rows
            .binary_search_by_key(&col, |r| r.pivot())
            .unwrap_err();
        self.rows.insert(at, w);
        true
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, v: &QVec) -> bool {
        self.check_index(v);
        self.forward_reduce(primitive(v)).is_none()
    }

    /// Canonical residual of `v` modulo the subspace: the unique vector in
    /// `v + self` supported away from the pivot columns.
    pub fn reduce(&self, v: &QVec) -> QVec {
        self.check_index(v);
        let mut out = v.clone();
        // Rows are fully reduced and to_qvec() scales each pivot entry to 1,
        // so each pivot column needs one elimination and later steps never
        // reintroduce an earlier pivot.
        for row in &self.rows {
            let c = out.get(row.pivot());
            if !c.is_zero() {
                out = out.add_scaled(&(-c), &row.to_qvec());
            }
        }
        out
    }

    /// The reduced echelon basis as rational rows with pivot entries 1.
    pub fn basis(&self) -> Vec<QVec> {
        self.rows.iter().map(|r| r.to_qvec()).collect()
    }

    /// Exact equality of subspaces (mutual containment of bases).
    pub fn equals(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.rank() == other.rank()
            && other.rows.iter().all(|r| self.contains(&r.to_qvec()))
    }
}

/// Reduced row echelon form of a matrix given as a list of rows.
///
/// Returns the canonical reduced echelon rows (pivot entries 1, pivot
/// columns cleared, rows ordered by pivot column, zero rows dropped) and the
/// rank.
pub fn rref(rows: &[QVec], ambient: usize) -> Result<(Vec<QVec>, usize)> {
    for r in rows {
        validate_dim(r, ambient)?;
    }
    let s = Subspace::from_rows(ambient, rows);
    let rank = s.rank();
    Ok((s.basis(), rank))
}

fn validate_dim(v: &QVec, ambient: usize) -> Result<()> {
    match v.max_index() {
        Some(i) if i >= ambient => Err(Error::DimensionMismatch {
            expected: ambient,
            found: i + 1,
        }),
        _ => Ok(()),
    }
}

/// Whether `v` lies in the row space of `s`.
pub fn member_of(v: &QVec, s: &Subspace) -> Result<bool> {
    validate_dim(v, s.ambient())?;
    Ok(s.contains(v))
}

/// Mutual containment of two subspaces of the same ambient space.
pub fn spaces_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient() != b.ambient() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient(),
            found: b.ambient(),
        });
    }
    Ok(a.equals(b))
}

/// Expresses vectors as exact linear combinations of a fixed generating list.
///
/// Construction echelonizes the generators while tracking coordinates, so
/// each [`SpanSolver::solve`] afterwards is a single reduction pass.  When
/// the generators are linearly dependent the returned coefficients are the
/// ones produced by eliminating in list order (earlier generators are
/// preferred); they always reconstruct the input exactly.
pub struct SpanSolver {
    ambient: usize,
    n_inputs: usize,
    /// Echelon rows: main part (pivot coefficient 1) and dense coordinates
    /// of the row in terms of the input generators.
    rows: Vec<(QVec, Vec<Q>)>,
}

impl SpanSolver {
    pub fn new(ambient: usize, generators: &[QVec]) -> Self {
        let mut solver = SpanSolver {
            ambient,
            n_inputs: generators.len(),
            rows: Vec::new(),
        };
        for (k, g) in generators.iter().enumerate() {
            let mut aug = vec![Q::zero(); generators.len()];
            aug[k] = Q::one();
            if let Some(i) = g.max_index() {
                assert!(i < ambient, "generator index {i} out of ambient {ambient}");
            }
            solver.insert(g.clone(), aug);
        }
        solver
    }

    /// Rank of the generator list.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut main: QVec, mut aug: Vec<Q>) -> (QVec, Vec<Q>) {
        for (row_main, row_aug) in &self.rows {
            let pivot = row_main.iter().next().expect("rows are nonzero").0;
            let c = main.get(pivot);
            if !c.is_zero() {
                let neg = -c;
                main = main.add_scaled(&neg, row_main);
                for (a, b) in aug.iter_mut().zip(row_aug) {
                    *a += neg.clone() * b.clone();
                }
            }
        }
        (main, aug)
    }

    fn insert(&mut self, main: QVec, aug: Vec<Q>) {
        let (main, aug) = self.reduce(main, aug);
        if main.is_zero() {
            return; // dependent generator; coordinates fall on earlier ones
        }
        let lead = main.iter().next().unwrap().1.clone();
        let inv = Q::one() / lead;
        let main = QVec::from_pairs(main.iter().map(|(i, c)| (i, c * &inv)));
        let aug = aug.into_iter().map(|c| c * inv.clone()).collect();
        let pivot = main.iter().next().unwrap().0;
        let at = self
            .rows
            .partition_point(|(m, _)| m.iter().next().unwrap().0 < pivot);
        self.rows.insert(at, (main, aug));
    }

    /// Exact coefficients expressing `v` over the generators, if `v` lies in
    /// their span.
    pub fn solve(&self, v: &QVec) -> Option<Vec<Q>> {
        if let Some(i) = v.max_index() {
            assert!(i < self.ambient, "index {i} out of ambient {}", self.ambient);
        }
        let (main, aug) = self.reduce(v.clone(), vec![Q::zero(); self.n_inputs]);
        if !main.is_zero() {
            return None;
        }
        Some(aug.into_iter().map(|c| -c).collect())
    }
}

/// Exact coefficients of `v` over `basis`, or `None` when `v` is outside the
/// span.
pub fn solve_in_span(v: &QVec, basis: &[QVec], ambient: usize) -> Result<Option<Vec<Q>>> {
    validate_dim(v, ambient)?;
    for b in basis {
        validate_dim(b, ambient)?;
    }
    Ok(SpanSolver::new(ambient, basis).solve(v))
}

/// Canonical basis of the solution space {x : r·x = 0 for every row r}.
///
/// Computed from the reduced echelon form of the equation rows: one basis
/// vector per free column, with a 1 in the free column and the pivot columns
/// back-substituted.  Deterministic by construction.
pub fn kernel(equations: &[QVec], ambient: usize) -> Result<Vec<QVec>> {
    for r in equations {
        validate_dim(r, ambient)?;
    }
    let s = Subspace::from_rows(ambient, equations);
    let pivot_rows: Vec<(usize, QVec)> = s
        .rows
        .iter()
        .map(|r| (r.pivot(), r.to_qvec()))
        .collect();
    let is_pivot: std::collections::HashSet<usize> =
        pivot_rows.iter().map(|(p, _)| *p).collect();
    let mut out = Vec::new();
    for free in 0..ambient {
        if is_pivot.contains(&free) {
            continue;
        }
        let mut pairs = vec![(free, Q::one())];
        for (p, row) in &pivot_rows {
            let c = row.get(free);
            if !c.is_zero() {
                pairs.push((*p, -c));
            }
        }
        out.push(QVec::from_pairs(pairs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from(BigInt::from(n))
    }

    fn qv(dense: &[i64]) -> QVec {
        QVec::from_dense(&dense.iter().map(|&n| q(n)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_identity_is_fixed() {
        let rows = vec![qv(&[1, 0]), qv(&[0, 1])];
        let (r, rank) = rref(&rows, 2).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(r, rows);
    }

    #[test]
    fn rref_zero_matrix() {
        let rows = vec![QVec::new(), QVec::new()];
        let (r, rank) = rref(&rows, 3).unwrap();
        assert_eq!(rank, 0);
        assert!(r.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let rows = vec![qv(&[1, 2]), qv(&[2, 4])];
        let (r, rank) = rref(&rows, 2).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(r, vec![qv(&[1, 2])]);
    }

    #[test]
    fn membership_basics() {
        let s = Subspace::from_rows(2, &[qv(&[1, 2])]);
        assert!(member_of(&QVec::new(), &s).unwrap());
        assert!(member_of(&qv(&[2, 4]), &s).unwrap());
        assert!(!member_of(&qv(&[2, -1]), &s).unwrap());
        assert!(member_of(&qv(&[0, 0, 1]), &s).is_err());
    }

    #[test]
    fn solve_in_span_roundtrip() {
        let basis = vec![qv(&[1, 1, 0]), qv(&[0, 1, 1])];
        let v = qv(&[2, 5, 3]);
        let coeffs = solve_in_span(&v, &basis, 3).unwrap().unwrap();
        assert_eq!(coeffs, vec![q(2), q(3)]);
        assert!(solve_in_span(&qv(&[1, 0, 0]), &basis, 3).unwrap().is_none());
    }

    #[test]
    fn spaces_equal_row_permutation_and_scaling() {
        let a = Subspace::from_rows(3, &[qv(&[1, 0, 1]), qv(&[0, 2, 2])]);
        let b = Subspace::from_rows(3, &[qv(&[0, 1, 1]), qv(&[3, 0, 3])]);
        assert!(spaces_equal(&a, &b).unwrap());
        let c = Subspace::from_rows(3, &[qv(&[1, 0, 0]), qv(&[0, 1, 1])]);
        assert!(!spaces_equal(&a, &c).unwrap());
        assert!(spaces_equal(&a, &Subspace::new(2)).is_err());
    }

    #[test]
    fn insertion_order_is_irrelevant() {
        let vecs = [qv(&[1, 2, 3]), qv(&[0, 1, 7]), qv(&[1, 3, 10]), qv(&[2, 0, 5])];
        let fwd = Subspace::from_rows(3, vecs.iter());
        let rev = Subspace::from_rows(3, vecs.iter().rev());
        assert_eq!(fwd, rev); // canonical representation, not just equal spans
    }

    #[test]
    fn kernel_of_simple_system() {
        // x0 + x1 - x2 = 0 has kernel of dimension 2.
        let eqs = vec![qv(&[1, 1, -1])];
        let k = kernel(&eqs, 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Q = v.iter().map(|(i, c)| eqs[0].get(i) * c).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn reduce_clears_pivots_with_nonunit_pivot_coefficients() {
        // Stored primitive rows keep integer pivot coefficients (here 2);
        // the residual must still be zero on every pivot column.
        let s = Subspace::from_rows(3, &[qv(&[2, 0, 1]), qv(&[0, 2, 1])]);
        let r = s.reduce(&qv(&[1, 1, 0]));
        for p in s.pivots() {
            assert!(r.get(p).is_zero(), "pivot column {p} not cleared");
        }
        // v - residual must lie in the subspace.
        let diff = qv(&[1, 1, 0]).add_scaled(&-q(1), &r);
        assert!(s.contains(&diff));
        // Membership and reduce must agree.
        assert!(s.reduce(&qv(&[2, 2, 2])).is_zero());
    }

    #[test]
    fn late_insert_stays_fully_reduced() {
        // The third row arrives with an entry in an already-taken later
        // pivot column; the stored basis must still come out fully reduced
        // (each pivot column zero outside its own row), or downstream
        // back-substitution in `kernel` produces vectors outside the
        // solution space.
        let eqs = vec![
            qv(&[0, 0, -1, 0, 1, 0]),
            qv(&[0, 0, 0, -1, 1, 0]),
            qv(&[0, -1, 0, 1, 0, 0]),
        ];
        let s = Subspace::from_rows(6, eqs.iter());
        let pivots = s.pivots();
        for row in s.basis() {
            for &p in &pivots {
                let c = row.get(p);
                assert!(c.is_zero() || c.is_one(), "unreduced pivot column {p}");
            }
        }
        let k = kernel(&eqs, 6).unwrap();
        assert_eq!(k.len(), 3);
        for v in &k {
            for e in &eqs {
                let dot: Q = e.iter().map(|(i, c)| v.get(i) * c).sum();
                assert!(dot.is_zero(), "kernel vector fails equation");
            }
        }
    }
}
