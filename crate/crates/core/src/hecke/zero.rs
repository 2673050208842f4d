//! The 0-Hecke algebra: Demazure products, the triangular center basis, the
//! twisted commutator subspace, and the cocenter with its coordinate solver.
//!
//! Basis elements are written t_w; the defining relations are the braid
//! relations together with t_s² = −t_s.  Products of basis elements are
//! again ±basis: t_x·t_y = (−1)^{ℓ(x)+ℓ(y)−ℓ(x*y)}·t_{x*y} with x*y the
//! Demazure product.

use std::collections::BTreeMap;

use num_traits::One;

use crate::conjugacy::{supp_delta, ApproxClass, ApproxKind, GammaSet, SigmaTable, TwistedClasses};
use crate::coxeter::{CoxeterGroup, DiagramAut, GenSet};
use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::linalg::{QVec, SpanSolver, Subspace, Q};

/// The Demazure product x*y: fold a reduced word s₁…s_k of x from the right
/// into y via acc ↦ max(s_i·acc, acc).
pub fn demazure_idx(g: &CoxeterGroup, x: usize, y: usize) -> usize {
    let mut acc = y;
    for &s in g.word_idx(x).iter().rev() {
        let t = g.left_mult(acc, s);
        if g.len_idx(t) > g.len_idx(acc) {
            acc = t;
        }
    }
    acc
}

/// Definitional Demazure product: the unique Bruhat-maximal element of
/// {u·v : u ≤ x, v ≤ y}.  Quadratic in |W|; used as an independent oracle.
pub fn demazure_definitional(g: &CoxeterGroup, x: usize, y: usize) -> Result<usize> {
    let below = |w: usize| -> Vec<usize> {
        (0..g.order()).filter(|&u| g.bruhat_leq_idx(u, w)).collect()
    };
    let mut products: Vec<usize> = Vec::new();
    for &u in &below(x) {
        for &v in &below(y) {
            products.push(g.mult_idx(u, v));
        }
    }
    products.sort_unstable();
    products.dedup();
    products
        .iter()
        .copied()
        .find(|&m| products.iter().all(|&p| g.bruhat_leq_idx(p, m)))
        .ok_or_else(|| {
            Error::TheoremViolation(
                "the set {uv : u ≤ x, v ≤ y} has no unique maximum".into(),
            )
        })
}

/// Basis product t_x·t_y = ±t_{x*y}; returns (x*y, negative?).
pub fn h0_basis_mult(g: &CoxeterGroup, x: usize, y: usize) -> (usize, bool) {
    let d = demazure_idx(g, x, y);
    let exponent = g.len_idx(x) + g.len_idx(y) - g.len_idx(d);
    (d, exponent % 2 == 1)
}

/// Bilinear 0-Hecke product via the sign/Demazure formula.
pub fn h0_mult(
    g: &CoxeterGroup,
    a: &HeckeElt<Q>,
    b: &HeckeElt<Q>,
) -> Result<HeckeElt<Q>> {
    if a.group_id() != g.group_id() || a.group_id() != b.group_id() {
        return Err(Error::GroupMismatch {
            expected: g.group_id(),
            found: if a.group_id() != g.group_id() { a.group_id() } else { b.group_id() },
        });
    }
    let mut out = HeckeElt::zero_elt(g);
    for (x, ca) in a.iter() {
        for (y, cb) in b.iter() {
            let (d, neg) = h0_basis_mult(g, x, y);
            let c = ca.clone() * cb.clone();
            out.add_term(d, if neg { -c } else { c });
        }
    }
    Ok(out)
}

/// Generator-folding oracle for t_x·t_y, using only the defining relations
/// t_s·t_w = t_{sw} if ℓ(sw) > ℓ(w), else −t_w.  Independent of the
/// Demazure code path.
pub fn h0_basis_mult_folding(g: &CoxeterGroup, x: usize, y: usize) -> (usize, bool) {
    let mut acc = y;
    let mut neg = false;
    for &s in g.word_idx(x).iter().rev() {
        let sw = g.left_mult(acc, s);
        if g.len_idx(sw) > g.len_idx(acc) {
            acc = sw;
        } else {
            neg = !neg;
        }
    }
    (acc, neg)
}

/// Downward Bruhat closure of a max block: {x : x ≤ w for some w ∈ Σ}.
pub fn bruhat_closure(g: &CoxeterGroup, block: &ApproxClass) -> Result<Vec<u32>> {
    if block.kind != ApproxKind::Max {
        return Err(Error::KindMismatch);
    }
    Ok((0..g.order() as u32)
        .filter(|&x| {
            block.members.iter().any(|&w| g.bruhat_leq_idx(x as usize, w as usize))
        })
        .collect())
}

/// The central element t_{≤Σ} = Σ_{x ≤ Σ} t_x of one max block.
pub fn t_below(g: &CoxeterGroup, block: &ApproxClass) -> Result<HeckeElt<Q>> {
    let closure = bruhat_closure(g, block)?;
    Ok(HeckeElt::from_terms(
        g,
        closure.into_iter().map(|x| (x as usize, Q::one())),
    ))
}

/// The explicit center basis {t_{≤Σ}}, one per max block (block order).
pub fn center_basis(
    g: &CoxeterGroup,
    classes: &TwistedClasses,
) -> Result<Vec<HeckeElt<Q>>> {
    classes.max_approx.iter().map(|b| t_below(g, b)).collect()
}

/// Is h δ-central in the 0-Hecke algebra?  Checked against the generators:
/// t_s·h = h·t_{δ(s)} for every s (sufficient: the t_s generate).
pub fn is_central(
    g: &CoxeterGroup,
    delta: &DiagramAut,
    h: &HeckeElt<Q>,
) -> Result<bool> {
    for s in 0..g.rank() {
        let left = h0_mult(g, &HeckeElt::basis(g, s + 1), h)?;
        let right = h0_mult(g, h, &HeckeElt::basis(g, delta.gen_image(s) + 1))?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The δ-center as a solved linear system: the kernel of
/// h ↦ (t_s·h − h·t_{δ(s)})_s over ℚ.  Independent oracle for
/// [`center_basis`].
pub fn center_space(g: &CoxeterGroup, delta: &DiagramAut) -> Result<Subspace> {
    let order = g.order();
    // Equations live in the coordinates of h: one row per (s, output index).
    // Column y of the map h ↦ t_s·h − h·t_{δ(s)} has the two signed basis
    // outputs of the products with t_y.
    let mut rows: Vec<BTreeMap<usize, Q>> = Vec::new();
    for s in 0..g.rank() {
        let mut eq: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); order];
        for y in 0..order {
            let (d1, n1) = h0_basis_mult(g, s + 1, y);
            let c1 = if n1 { -Q::one() } else { Q::one() };
            *eq[d1].entry(y).or_insert_with(num_traits::Zero::zero) += c1;
            let (d2, n2) = h0_basis_mult(g, y, delta.gen_image(s) + 1);
            let c2 = if n2 { Q::one() } else { -Q::one() };
            *eq[d2].entry(y).or_insert_with(num_traits::Zero::zero) += c2;
        }
        rows.extend(eq);
    }
    let equations: Vec<QVec> = rows
        .into_iter()
        .map(|m| QVec::from_pairs(m.into_iter()))
        .filter(|v| !v.is_zero())
        .collect();
    let kernel = crate::linalg::kernel(&equations, order)?;
    Ok(Subspace::from_rows(order, kernel.iter()))
}

/// The δ-twisted commutator subspace [H₀, H₀]_δ: the span of all
/// t_x·t_y − t_y·t_{δ(x)} over basis pairs (bilinearity reduces general
/// commutators to these).
pub fn commutator_space(g: &CoxeterGroup, delta: &DiagramAut) -> Subspace {
    let order = g.order();
    let mut space = Subspace::new(order);
    for x in 0..order {
        let dx = delta.apply_idx(x);
        for y in 0..order {
            let (d1, n1) = h0_basis_mult(g, x, y);
            let (d2, n2) = h0_basis_mult(g, y, dx);
            if d1 == d2 && n1 == n2 {
                continue;
            }
            let c1 = if n1 { -Q::one() } else { Q::one() };
            let c2 = if n2 { Q::one() } else { -Q::one() };
            space.insert(&QVec::from_pairs([(d1, c1), (d2, c2)]));
        }
    }
    space
}

/// The 0-Hecke cocenter: commutator space plus the basis of minimal
/// representatives t_{(J,C)} with an exact coordinate solver.
pub struct Cocenter {
    group: u64,
    pub commutators: Subspace,
    /// Minimal representative element per pair, in Γ order.
    pub reps: Vec<u32>,
    solver: SpanSolver,
}

/// Build the cocenter, asserting the two dimension facts: the commutator
/// space has dimension |W| − ♯Γ, and the ♯Γ representative images are
/// independent modulo it.
pub fn cocenter(
    g: &CoxeterGroup,
    delta: &DiagramAut,
    gamma: &GammaSet,
) -> Result<Cocenter> {
    let commutators = commutator_space(g, delta);
    let expected = g.order() - gamma.pairs.len();
    if commutators.rank() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: commutators.rank(),
        });
    }
    let reps: Vec<u32> = gamma.pairs.iter().map(|p| p.rep).collect();
    let residuals: Vec<QVec> = reps
        .iter()
        .map(|&r| commutators.reduce(&QVec::unit(r as usize)))
        .collect();
    let solver = SpanSolver::new(g.order(), &residuals);
    if solver.rank() != reps.len() {
        return Err(Error::DimensionMismatch {
            expected: reps.len(),
            found: solver.rank(),
        });
    }
    Ok(Cocenter { group: g.group_id(), commutators, reps, solver })
}

impl Cocenter {
    /// Exact coordinates of h in the basis {t_{(J,C)}} modulo commutators.
    pub fn coords(&self, h: &HeckeElt<Q>) -> Result<Vec<Q>> {
        if h.group_id() != self.group {
            return Err(Error::GroupMismatch { expected: self.group, found: h.group_id() });
        }
        let residual = self.commutators.reduce(&h.to_qvec());
        self.solver.solve(&residual).ok_or_else(|| {
            Error::SolveFailure(
                "element does not reduce to the minimal-representative span".into(),
            )
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

/// The cocenter image of t_w as ±one basis pair: delegates to the σ
/// recursion and maps the block to its Γ pair.
pub fn reduce_tw(
    gamma: &GammaSet,
    sigma: &SigmaTable,
    w: usize,
) -> Result<(usize, i8)> {
    let block = sigma.block_of(w);
    let pair = gamma.pair_for_block(block).ok_or_else(|| {
        Error::TheoremViolation(format!(
            "no Γ pair for the minimal block {block} of element {w}"
        ))
    })?;
    Ok((pair, sigma.sign_of(w)))
}

/// Check the grading of the commutator space by δ-support: every basis
/// vector, projected onto each supp_δ-level, must stay inside the space, and
/// the per-level ranks must sum to the total rank.
pub fn grading_check(
    g: &CoxeterGroup,
    delta: &DiagramAut,
    commutators: &Subspace,
) -> Result<bool> {
    let levels: Vec<GenSet> = (0..g.order()).map(|w| supp_delta(g, delta, w)).collect();
    let mut present: Vec<GenSet> = levels.clone();
    present.sort_unstable();
    present.dedup();
    let basis = commutators.basis();
    let mut rank_sum = 0;
    for &j in &present {
        let mut level_space = Subspace::new(g.order());
        for row in &basis {
            let proj = row.project(|i| levels[i] == j);
            if proj.is_zero() {
                continue;
            }
            if !commutators.contains(&proj) {
                return Ok(false);
            }
            level_space.insert(&proj);
        }
        rank_sum += level_space.rank();
    }
    Ok(rank_sum == commutators.rank())
}

/// Per-level commutator ranks, keyed by δ-support level, for the dimension
/// bookkeeping against Γ.  Levels run over the δ-stable supports realized by
/// group elements.
pub fn commutator_level_ranks(
    g: &CoxeterGroup,
    delta: &DiagramAut,
    commutators: &Subspace,
) -> Result<Vec<(GenSet, usize, usize)>> {
    let levels: Vec<GenSet> = (0..g.order()).map(|w| supp_delta(g, delta, w)).collect();
    let mut present: Vec<GenSet> = levels.clone();
    present.sort_unstable();
    present.dedup();
    let basis = commutators.basis();
    let mut out = Vec::new();
    for &j in &present {
        let elements = levels.iter().filter(|&&l| l == j).count();
        let mut level_space = Subspace::new(g.order());
        for row in &basis {
            let proj = row.project(|i| levels[i] == j);
            if proj.is_zero() {
                continue;
            }
            if !commutators.contains(&proj) {
                return Err(Error::TheoremViolation(
                    "a commutator basis vector projects outside the space".into(),
                ));
            }
            level_space.insert(&proj);
        }
        out.push((j, elements, level_space.rank()));
    }
    Ok(out)
}
