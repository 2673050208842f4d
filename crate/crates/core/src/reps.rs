//! The 2^{|S|} one-dimensional representations λ_J of the 0-Hecke algebra,
//! the trace pairing between the cocenter basis and those representations,
//! and the parity property of elliptic classes that makes the pairing
//! well-behaved.

use num_traits::{One, Zero};

use crate::conjugacy::{GammaSet, TwistedClasses};
use crate::coxeter::{identity_aut, CoxeterGroup, DiagramAut, GenSet};
use crate::error::{Error, Result};
use crate::hecke::zero::h0_basis_mult;
use crate::hecke::HeckeElt;
use crate::linalg::{kernel, spaces_equal, QVec, Subspace, Q};

/// λ_J(t_w): each generator in J acts by −1 and every other generator by 0,
/// so t_w maps to (−1)^{ℓ(w)} when supp(w) ⊆ J and to 0 otherwise.
pub fn rep_value(g: &CoxeterGroup, j: GenSet, w: usize) -> Q {
    if !g.support_idx(w).is_subset_of(j) {
        return Q::zero();
    }
    if g.len_idx(w) % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Evaluate λ_J on a general element, coefficient-linearly.
pub fn eval_rep(g: &CoxeterGroup, j: GenSet, h: &HeckeElt<Q>) -> Q {
    h.iter()
        .map(|(w, c)| c.clone() * rep_value(g, j, w))
        .fold(Q::zero(), |a, b| a + b)
}

/// Multiplicativity of λ_J over the given basis pairs:
/// λ_J(t_x·t_y) = λ_J(t_x)·λ_J(t_y).
pub fn rep_is_algebra_map_on(
    g: &CoxeterGroup,
    j: GenSet,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> bool {
    for (x, y) in pairs {
        let (d, neg) = h0_basis_mult(g, x, y);
        let prod = if neg {
            -rep_value(g, j, d)
        } else {
            rep_value(g, j, d)
        };
        if prod != rep_value(g, j, x) * rep_value(g, j, y) {
            return false;
        }
    }
    true
}

/// The ♯Γ × 2^{|S|} integer matrix of the trace pairing
/// tr(t_{(J,C)}, λ_K) = (−1)^{ℓ(C)}·[J ⊆ K], rows in Γ order, columns over
/// subsets K in binary-counter order.
#[derive(Debug)]
pub struct TraceMatrix {
    pub rank_size: usize,
    /// entries[pair][subset-bits] ∈ {−1, 0, 1}.
    pub entries: Vec<Vec<i64>>,
}

impl TraceMatrix {
    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        1usize << self.rank_size
    }

    fn row_qvec(&self, i: usize) -> QVec {
        QVec::from_pairs(
            self.entries[i]
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| (k, Q::from(num_bigint::BigInt::from(e)))),
        )
    }

    /// Rank of the matrix over ℚ.
    pub fn rank(&self) -> usize {
        let mut s = Subspace::new(self.num_cols());
        for i in 0..self.num_rows() {
            s.insert(&self.row_qvec(i));
        }
        s.rank()
    }

    /// Basis of {v : Σ_i v_i·row_i = 0}, the kernel of the induced map from
    /// the cocenter into functions on representations.
    pub fn left_kernel(&self) -> Result<Vec<QVec>> {
        // One linear equation per column.
        let equations: Vec<QVec> = (0..self.num_cols())
            .map(|k| {
                QVec::from_pairs(
                    (0..self.num_rows())
                        .filter(|&i| self.entries[i][k] != 0)
                        .map(|i| {
                            (i, Q::from(num_bigint::BigInt::from(self.entries[i][k])))
                        }),
                )
            })
            .collect();
        kernel(&equations, self.num_rows())
    }
}

fn require_identity(delta: &DiagramAut, what: &str) -> Result<()> {
    if delta.is_identity() {
        Ok(())
    } else {
        Err(Error::DeltaUnsupported(format!(
            "{what} is defined for the untwisted cocenter only"
        )))
    }
}

/// Build the trace matrix for the untwisted cocenter, verifying the closed
/// form against direct evaluation of λ_K on the stored representatives.
pub fn trace_matrix(
    g: &CoxeterGroup,
    delta: &DiagramAut,
    gamma: &GammaSet,
) -> Result<TraceMatrix> {
    require_identity(delta, "the trace matrix")?;
    let n = g.rank();
    let mut entries = Vec::with_capacity(gamma.pairs.len());
    for pair in &gamma.pairs {
        let rep = pair.rep as usize;
        let mut row = Vec::with_capacity(1usize << n);
        for bits in 0..(1u64 << n) {
            let k = GenSet::from_bits(bits);
            let closed: i64 = if pair.j.is_subset_of(k) {
                if pair.length % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            let direct = eval_rep(g, k, &HeckeElt::basis(g, rep));
            if direct != Q::from(num_bigint::BigInt::from(closed)) {
                return Err(Error::TheoremViolation(format!(
                    "trace entry mismatch at pair (J={:?}, rep {rep}), K bits {bits}: \
                     closed form {closed}, direct {direct}",
                    pair.j.iter().collect::<Vec<_>>()
                )));
            }
            row.push(closed);
        }
        entries.push(row);
    }
    Ok(TraceMatrix { rank_size: n, entries })
}

/// Surjectivity and kernel structure of the trace map: rank 2^{|S|}, and the
/// left kernel is spanned by differences of pairs sharing the same J.
pub fn trace_rank_and_kernel_check(
    gamma: &GammaSet,
    m: &TraceMatrix,
) -> Result<bool> {
    let full = 1usize << m.rank_size;
    if m.rank() != full {
        return Ok(false);
    }
    let ker = m.left_kernel()?;
    if ker.len() != m.num_rows() - full {
        return Ok(false);
    }
    let ker_space = Subspace::from_rows(m.num_rows(), ker.iter());
    let mut diff_space = Subspace::new(m.num_rows());
    for a in 0..gamma.pairs.len() {
        for b in (a + 1)..gamma.pairs.len() {
            if gamma.pairs[a].j == gamma.pairs[b].j {
                let v = QVec::unit(a).add_scaled(&-Q::one(), &QVec::unit(b));
                diff_space.insert(&v);
            }
        }
    }
    spaces_equal(&ker_space, &diff_space)
}

/// For every J ⊆ S, the minimal lengths of the elliptic conjugacy classes of
/// W_J are congruent mod 2.
pub fn parity_check(g: &CoxeterGroup) -> Result<bool> {
    for bits in 0..(1u64 << g.rank()) {
        let j = GenSet::from_bits(bits);
        let embed = g.parabolic(j)?;
        let sub_delta = identity_aut(&embed.subgroup);
        let classes = TwistedClasses::compute(&embed.subgroup, &sub_delta)?;
        let parities: Vec<u32> = classes
            .classes
            .iter()
            .filter(|c| c.elliptic)
            .map(|c| c.min_length % 2)
            .collect();
        if parities.windows(2).any(|w| w[0] != w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The trace is well defined on the cocenter: λ_K vanishes on every basis
/// vector of the commutator space, for every K ⊆ S.
pub fn trace_kills_commutators(g: &CoxeterGroup, commutators: &Subspace) -> bool {
    let basis = commutators.basis();
    for bits in 0..(1u64 << g.rank()) {
        let k = GenSet::from_bits(bits);
        for v in &basis {
            let h = HeckeElt::from_qvec(g, v);
            if !eval_rep(g, k, &h).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::gamma_set;
    use crate::coxeter::{build_group, parse_group_spec, DEFAULT_SIZE_LIMIT};
    use crate::hecke::zero::commutator_space;

    fn group(spec: &str) -> CoxeterGroup {
        build_group(parse_group_spec(spec).unwrap(), DEFAULT_SIZE_LIMIT).unwrap()
    }

    fn setup(spec: &str) -> (CoxeterGroup, DiagramAut) {
        let g = group(spec);
        let d = identity_aut(&g);
        (g, d)
    }

    #[test]
    fn rep_values_closed_form() {
        let (g, _) = setup("A2");
        let empty = GenSet::empty();
        let full = GenSet::full(2);
        assert_eq!(rep_value(&g, empty, 0), Q::one());
        let w0 = g.longest_index();
        // ℓ(w0) = 3 in A2.
        assert_eq!(rep_value(&g, full, w0), -Q::one());
        // J = {first generator} does not contain supp(s0·s1).
        let j0 = GenSet::singleton(0);
        let s0s1 = g.mult_idx(1, 2);
        assert_eq!(rep_value(&g, j0, s0s1), Q::zero());
    }

    #[test]
    fn rep_is_multiplicative_all_pairs_small() {
        for spec in ["A2", "B2"] {
            let (g, _) = setup(spec);
            for bits in 0..(1u64 << g.rank()) {
                let j = GenSet::from_bits(bits);
                let pairs =
                    (0..g.order()).flat_map(|x| (0..g.order()).map(move |y| (x, y)));
                assert!(rep_is_algebra_map_on(&g, j, pairs), "{spec}, J bits {bits}");
            }
        }
    }

    #[test]
    fn a1_trace_matrix_is_the_two_by_two() {
        let (g, d) = setup("A1");
        let cl = TwistedClasses::compute(&g, &d).unwrap();
        let gamma = gamma_set(&g, &d, &cl).unwrap();
        let m = trace_matrix(&g, &d, &gamma).unwrap();
        assert_eq!(m.entries, vec![vec![1, 1], vec![0, -1]]);
        assert_eq!(m.rank(), 2);
        assert!(trace_rank_and_kernel_check(&gamma, &m).unwrap());
    }

    #[test]
    fn a2_trace_matrix_square_full_rank() {
        let (g, d) = setup("A2");
        let cl = TwistedClasses::compute(&g, &d).unwrap();
        let gamma = gamma_set(&g, &d, &cl).unwrap();
        let m = trace_matrix(&g, &d, &gamma).unwrap();
        assert_eq!(m.num_rows(), 4);
        assert_eq!(m.num_cols(), 4);
        assert_eq!(m.rank(), 4);
        assert!(m.left_kernel().unwrap().is_empty());
        assert!(trace_rank_and_kernel_check(&gamma, &m).unwrap());
    }

    #[test]
    fn b2_trace_kernel_is_the_same_j_difference() {
        let (g, d) = setup("B2");
        let cl = TwistedClasses::compute(&g, &d).unwrap();
        let gamma = gamma_set(&g, &d, &cl).unwrap();
        let m = trace_matrix(&g, &d, &gamma).unwrap();
        assert_eq!(m.num_rows(), 5);
        assert_eq!(m.num_cols(), 4);
        assert_eq!(m.rank(), 4);
        let ker = m.left_kernel().unwrap();
        assert_eq!(ker.len(), 1);
        assert!(trace_rank_and_kernel_check(&gamma, &m).unwrap());
        // The two S-pairs have min lengths 2 (rotation) and 4 (longest
        // element), both even, so the kernel vector is their difference.
        let full = GenSet::full(2);
        let s_pairs: Vec<usize> = gamma
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.j == full)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(s_pairs.len(), 2);
        let expect = QVec::unit(s_pairs[0]).add_scaled(&-Q::one(), &QVec::unit(s_pairs[1]));
        let ker_space = Subspace::from_rows(5, ker.iter());
        assert!(ker_space.contains(&expect));
    }

    #[test]
    fn delta_twist_is_rejected() {
        let g = group("A2");
        let swap = crate::coxeter::diagram_aut(&g, &[1, 0]).unwrap();
        let cl = TwistedClasses::compute(&g, &swap).unwrap();
        let gamma = gamma_set(&g, &swap, &cl).unwrap();
        let err = trace_matrix(&g, &swap, &gamma).unwrap_err();
        assert_eq!(err.kind(), "DeltaUnsupported");
    }

    #[test]
    fn parity_holds_on_small_groups() {
        for spec in ["A2", "B2", "G2", "A3"] {
            let g = group(spec);
            assert!(parity_check(&g).unwrap(), "{spec}");
        }
    }

    #[test]
    fn traces_vanish_on_commutators() {
        for spec in ["A2", "B2"] {
            let (g, d) = setup(spec);
            let comm = commutator_space(&g, &d);
            assert!(trace_kills_commutators(&g, &comm), "{spec}");
        }
    }
}
