//! Hecke algebras over exact coefficient rings.
//!
//! [`HeckeElt`] is a sparse linear combination of the standard basis
//! elements indexed by group elements; the coefficient ring is any exact
//! ring implementing [`crate::poly::Coeff`] (rationals, polynomials, Laurent
//! polynomials).  Multiplication is parametrized by the ring's value of q:
//!
//! * T_w·T_s = T_{ws} when the length goes up,
//! * T_w·T_s = q·T_{ws} + (q−1)·T_w when it goes down,
//!
//! and symmetrically on the left.  q = 0 gives the 0-Hecke algebra (written
//! with basis letters t_w), q = 1 the group algebra, symbolic q the generic
//! algebra.

pub mod generic;
pub mod zero;

use std::collections::BTreeMap;

use crate::coxeter::{CoxeterGroup, Side};
use crate::error::{Error, Result};
use crate::linalg::{QVec, Q};
use crate::poly::Coeff;

/// A sparse element Σ c_w·T_w of a Hecke algebra over coefficient ring `R`.
///
/// The map is keyed by element index; no zero coefficients are stored, and
/// iteration order (ascending index) is deterministic.
#[derive(Clone, PartialEq, Debug)]
pub struct HeckeElt<R> {
    group: u64,
    coeffs: BTreeMap<u32, R>,
}

impl<R: Coeff> HeckeElt<R> {
    pub fn zero_elt(g: &CoxeterGroup) -> Self {
        HeckeElt { group: g.group_id(), coeffs: BTreeMap::new() }
    }

    /// The basis element T_w.
    pub fn basis(g: &CoxeterGroup, w: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w as u32, R::one());
        HeckeElt { group: g.group_id(), coeffs }
    }

    pub fn from_terms(
        g: &CoxeterGroup,
        terms: impl IntoIterator<Item = (usize, R)>,
    ) -> Self {
        let mut out = Self::zero_elt(g);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn group_id(&self) -> u64 {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of T_w (zero if absent).
    pub fn coeff(&self, w: usize) -> R {
        self.coeffs.get(&(w as u32)).cloned().unwrap_or_else(R::zero)
    }

    /// Terms in ascending element order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().map(|(&w, c)| (w as usize, c))
    }

    pub(crate) fn add_term(&mut self, w: usize, c: R) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w as u32);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch { expected: self.group, found: other.group })
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (&w, c) in &other.coeffs {
            out.add_term(w as usize, c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (&w, c) in &other.coeffs {
            out.add_term(w as usize, -c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &R) -> Self {
        if c.is_zero() {
            return HeckeElt { group: self.group, coeffs: BTreeMap::new() };
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&w, x)| (w, x.clone() * c.clone()))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        HeckeElt { group: self.group, coeffs }
    }

    pub fn negated(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(&w, x)| (w, -x.clone())).collect();
        HeckeElt { group: self.group, coeffs }
    }

    /// Apply a coefficient map, dropping zeros (e.g. specialization).
    pub fn map_coeffs<S: Coeff>(&self, mut f: impl FnMut(&R) -> S) -> HeckeElt<S> {
        let mut coeffs = BTreeMap::new();
        for (&w, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                coeffs.insert(w, v);
            }
        }
        HeckeElt { group: self.group, coeffs }
    }
}

impl HeckeElt<Q> {
    /// Coordinate vector in the standard basis.
    pub fn to_qvec(&self) -> QVec {
        QVec::from_pairs(self.coeffs.iter().map(|(&w, c)| (w as usize, c.clone())))
    }

    pub fn from_qvec(g: &CoxeterGroup, v: &QVec) -> Self {
        HeckeElt {
            group: g.group_id(),
            coeffs: v.iter().map(|(i, c)| (i as u32, c.clone())).collect(),
        }
    }
}

/// Multiply by a single generator on the chosen side, with parameter q:
/// T_s·h (left) or h·T_s (right).
pub fn mult_by_gen<R: Coeff>(
    g: &CoxeterGroup,
    h: &HeckeElt<R>,
    s: usize,
    side: Side,
    q: &R,
) -> Result<HeckeElt<R>> {
    if h.group != g.group_id() {
        return Err(Error::GroupMismatch { expected: g.group_id(), found: h.group });
    }
    if s >= g.rank() {
        return Err(Error::InvalidSubset { index: s, rank: g.rank() });
    }
    let q_minus_one = q.clone() - R::one();
    let mut out = HeckeElt::zero_elt(g);
    for (w, c) in h.iter() {
        let ws = g.gen_mult(w, s, side);
        if g.len_idx(ws) > g.len_idx(w) {
            out.add_term(ws, c.clone());
        } else {
            out.add_term(ws, q.clone() * c.clone());
            out.add_term(w, q_minus_one.clone() * c.clone());
        }
    }
    Ok(out)
}

/// Right-multiply by the basis element T_y, folding y's reduced word.
pub fn mult_by_basis<R: Coeff>(
    g: &CoxeterGroup,
    h: &HeckeElt<R>,
    y: usize,
    q: &R,
) -> Result<HeckeElt<R>> {
    let mut acc = h.clone();
    for s in g.word_idx(y) {
        acc = mult_by_gen(g, &acc, s, Side::Right, q)?;
    }
    Ok(acc)
}

/// Full product a·b with parameter q, bilinear over b's terms.
pub fn mult<R: Coeff>(
    g: &CoxeterGroup,
    a: &HeckeElt<R>,
    b: &HeckeElt<R>,
    q: &R,
) -> Result<HeckeElt<R>> {
    a.same_group(b)?;
    let mut out = HeckeElt::zero_elt(g);
    for (y, c) in b.iter() {
        let part = mult_by_basis(g, &a.scaled(c), y, q)?;
        out = out.plus(&part)?;
    }
    Ok(out)
}

/// The δ-twisted commutator [a, b]_δ = a·b − b·δ(a), where δ acts on basis
/// indices.
pub fn twisted_commutator<R: Coeff>(
    g: &CoxeterGroup,
    delta: &crate::coxeter::DiagramAut,
    a: &HeckeElt<R>,
    b: &HeckeElt<R>,
    q: &R,
) -> Result<HeckeElt<R>> {
    let delta_a = HeckeElt::from_terms(
        g,
        a.iter().map(|(w, c)| (delta.apply_idx(w), c.clone())),
    );
    let ab = mult(g, a, b, q)?;
    let b_da = mult(g, b, &delta_a, q)?;
    ab.minus(&b_da)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_group, parse_group_spec, DEFAULT_SIZE_LIMIT};
    use crate::poly::Poly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn group(spec: &str) -> CoxeterGroup {
        build_group(parse_group_spec(spec).unwrap(), DEFAULT_SIZE_LIMIT).unwrap()
    }

    fn q_of(n: i64) -> Q {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn quadratic_relation_symbolic() {
        // T_s·T_s = q·T_e + (q−1)·T_s.
        let g = group("A1");
        let ts: HeckeElt<Poly> = HeckeElt::basis(&g, 1);
        let sq = mult(&g, &ts, &ts, &Poly::q()).unwrap();
        assert_eq!(sq.coeff(0), Poly::q());
        assert_eq!(sq.coeff(1), Poly::q_minus_one());
    }

    #[test]
    fn lengths_add_in_a2() {
        let g = group("A2");
        let s0: HeckeElt<Poly> = HeckeElt::basis(&g, 1);
        let s1: HeckeElt<Poly> = HeckeElt::basis(&g, 2);
        let prod = mult(&g, &s0, &s1, &Poly::q()).unwrap();
        let s0s1 = g.element_from_word_idx(&[0, 1]).unwrap();
        assert_eq!(prod, HeckeElt::basis(&g, s0s1));
    }

    #[test]
    fn q_one_is_the_group_algebra() {
        let g = group("B2");
        let one = q_of(1);
        for x in 0..g.order() {
            for y in [0usize, 1, 3, g.order() - 1] {
                let prod = mult(
                    &g,
                    &HeckeElt::<Q>::basis(&g, x),
                    &HeckeElt::<Q>::basis(&g, y),
                    &one,
                )
                .unwrap();
                assert_eq!(prod, HeckeElt::basis(&g, g.mult_idx(x, y)));
            }
        }
    }

    #[test]
    fn left_and_right_generator_actions_are_associative() {
        // (T_s·h)·T_t = T_s·(h·T_t) for symbolic q over a sample of h.
        let g = group("B2");
        let q = Poly::q();
        for w in 0..g.order() {
            let h: HeckeElt<Poly> = HeckeElt::basis(&g, w);
            for s in 0..2 {
                for t in 0..2 {
                    let lhs = mult_by_gen(
                        &g,
                        &mult_by_gen(&g, &h, s, Side::Left, &q).unwrap(),
                        t,
                        Side::Right,
                        &q,
                    )
                    .unwrap();
                    let rhs = mult_by_gen(
                        &g,
                        &mult_by_gen(&g, &h, t, Side::Right, &q).unwrap(),
                        s,
                        Side::Left,
                        &q,
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let g = group("A1");
        let ts: HeckeElt<Q> = HeckeElt::basis(&g, 1);
        let diff = ts.minus(&ts).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.num_terms(), 0);
        let v = ts.to_qvec();
        assert_eq!(HeckeElt::from_qvec(&g, &v), ts);
    }
}
