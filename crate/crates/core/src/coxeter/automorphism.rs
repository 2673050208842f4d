//! Diagram automorphisms δ of a Coxeter system.
//!
//! A diagram automorphism is a permutation of the generators preserving all
//! bond orders: m(δs, δt) = m(s,t).  It extends to a group automorphism by
//! δ(s₁⋯s_k) = δ(s₁)⋯δ(s_k); the extension is length-preserving.  The
//! element-level action is tabulated once at construction.

use crate::coxeter::group::{CoxeterGroup, Element, GenSet, ParabolicEmbedding};
use crate::error::{Error, Result};

/// A diagram automorphism of a specific built group, with its action
/// tabulated on every element.
#[derive(Clone)]
pub struct DiagramAut {
    group: u64,
    gen_image: Vec<usize>,
    elem_image: Vec<u32>,
    order: u32,
}

/// Validate a generator permutation as a diagram automorphism and tabulate
/// its action on the whole group.
pub fn diagram_aut(g: &CoxeterGroup, gen_image: &[usize]) -> Result<DiagramAut> {
    let n = g.rank();
    if gen_image.len() != n {
        return Err(Error::InvalidSpec {
            spec: format!("{gen_image:?}"),
            reason: format!("{} generator images for rank {n}", gen_image.len()),
        });
    }
    let mut seen = vec![false; n];
    for &i in gen_image {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidSpec {
                spec: format!("{gen_image:?}"),
                reason: "generator images must be a permutation of 0..rank".into(),
            });
        }
    }
    for s in 0..n {
        for t in 0..n {
            let (ds, dt) = (gen_image[s], gen_image[t]);
            if g.matrix().entry(ds, dt) != g.matrix().entry(s, t) {
                return Err(Error::NotAnAutomorphism {
                    s,
                    t,
                    ds,
                    dt,
                    m_st: g.matrix().entry(s, t),
                    m_image: g.matrix().entry(ds, dt),
                });
            }
        }
    }
    // Tabulate δ breadth-first: δ(w·s) = δ(w)·δ(s), and parents precede
    // children in index order, so each image is one table lookup.
    let mut elem_image = vec![0u32; g.order()];
    for w in 1..g.order() {
        let word_step = {
            // Smallest right descent links w to a shorter parent w·s.
            let s = g.right_descents_idx(w).iter().next().expect("nonidentity");
            (g.right_mult(w, s), s)
        };
        let (p, s) = word_step;
        elem_image[w] = g.right_mult(elem_image[p] as usize, gen_image[s]) as u32;
        if g.len_idx(elem_image[w] as usize) != g.len_idx(w) {
            return Err(Error::TheoremViolation(
                "diagram automorphism failed to preserve length".into(),
            ));
        }
    }
    // Permutation order of the generator action = order of the automorphism
    // (the extension is determined by the generator images).
    let mut order = 1u32;
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = gen_image[cur];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    Ok(DiagramAut {
        group: g.group_id(),
        gen_image: gen_image.to_vec(),
        elem_image,
        order,
    })
}

/// The identity automorphism.
pub fn identity_aut(g: &CoxeterGroup) -> DiagramAut {
    diagram_aut(g, &(0..g.rank()).collect::<Vec<_>>()).expect("identity is an automorphism")
}

impl DiagramAut {
    pub fn gen_image(&self, s: usize) -> usize {
        self.gen_image[s]
    }

    pub fn gen_images(&self) -> &[usize] {
        &self.gen_image
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.gen_image.iter().enumerate().all(|(s, &i)| s == i)
    }

    pub fn apply_idx(&self, w: usize) -> usize {
        self.elem_image[w] as usize
    }

    pub fn apply(&self, g: &CoxeterGroup, w: Element) -> Result<Element> {
        if g.group_id() != self.group {
            return Err(Error::GroupMismatch { expected: self.group, found: g.group_id() });
        }
        let idx = g.own(w)?;
        g.element(self.apply_idx(idx))
    }

    /// Image of a generator subset.
    pub fn image_of_set(&self, j: GenSet) -> GenSet {
        let mut out = GenSet::empty();
        for s in j.iter() {
            out.insert(self.gen_image[s]);
        }
        out
    }

    /// Is J setwise δ-stable?
    pub fn stabilizes(&self, j: GenSet) -> bool {
        self.image_of_set(j) == j
    }

    /// Restrict to a δ-stable parabolic subgroup.
    pub fn restrict(&self, parab: &ParabolicEmbedding) -> Result<DiagramAut> {
        let gens = &parab.gens;
        let mut image = Vec::with_capacity(gens.len());
        for &s in gens {
            let ds = self.gen_image[s];
            match gens.binary_search(&ds) {
                Ok(pos) => image.push(pos),
                Err(_) => {
                    return Err(Error::InvalidSpec {
                        spec: format!("{gens:?}"),
                        reason: format!(
                            "generator subset is not stable: image of {s} is {ds}"
                        ),
                    })
                }
            }
        }
        diagram_aut(&parab.subgroup, &image)
    }
}

/// The automorphism w ↦ w₀·δ(w)·w₀ (conjugation by the longest element
/// composed with δ).  This is again a diagram automorphism because Ad(w₀)
/// permutes the simple reflections.
pub fn compose_ad_longest(g: &CoxeterGroup, delta: &DiagramAut) -> Result<DiagramAut> {
    let w0 = g.longest_index();
    let mut image = Vec::with_capacity(g.rank());
    for s in 0..g.rank() {
        let ds = delta.gen_image(s);
        // w₀ · s_{δ(s)} · w₀ is again a simple reflection.
        let t = g.mult_idx(g.right_mult(w0, ds), w0);
        if g.len_idx(t) != 1 {
            return Err(Error::TheoremViolation(
                "conjugation by the longest element did not permute the generators".into(),
            ));
        }
        image.push(t - 1);
    }
    diagram_aut(g, &image)
}

/// All generator permutations preserving the bond matrix, in lexicographic
/// order (the identity first).  Found by backtracking.
pub fn diagram_automorphisms(g: &CoxeterGroup) -> Vec<Vec<usize>> {
    let n = g.rank();
    let m = g.matrix();
    let mut found = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        s: usize,
        n: usize,
        m: &crate::coxeter::matrix::CoxeterMatrix,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if s == n {
            found.push(image.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            if (0..s).all(|t| m.entry(image[t], cand) == m.entry(t, s)) {
                image[s] = cand;
                used[cand] = true;
                go(s + 1, n, m, image, used, found);
                used[cand] = false;
                image[s] = usize::MAX;
            }
        }
    }
    go(0, n, m, &mut image, &mut used, &mut found);
    found.sort();
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::group::{build_group, DEFAULT_SIZE_LIMIT};
    use crate::coxeter::matrix::parse_group_spec;

    fn group(spec: &str) -> CoxeterGroup {
        build_group(parse_group_spec(spec).unwrap(), DEFAULT_SIZE_LIMIT).unwrap()
    }

    #[test]
    fn a2_swap_is_an_automorphism() {
        let g = group("A2");
        let d = diagram_aut(&g, &[1, 0]).unwrap();
        assert_eq!(d.order(), 2);
        assert!(!d.is_identity());
        // δ(s0 s1) = s1 s0.
        let w = g.element_from_word_idx(&[0, 1]).unwrap();
        let expect = g.element_from_word_idx(&[1, 0]).unwrap();
        assert_eq!(d.apply_idx(w), expect);
        // Longest element is δ-fixed here.
        assert_eq!(d.apply_idx(g.longest_index()), g.longest_index());
    }

    #[test]
    fn b2_swap_is_rejected() {
        // In B3 the bond orders along the path differ, so reversing it is
        // not an automorphism.
        let g = group("B3");
        assert!(matches!(
            diagram_aut(&g, &[2, 1, 0]),
            Err(Error::NotAnAutomorphism { .. })
        ));
        assert!(diagram_aut(&g, &[0, 1]).is_err());
        assert!(diagram_aut(&g, &[0, 0, 1]).is_err());
    }

    #[test]
    fn automorphism_is_multiplicative() {
        let g = group("A3");
        let d = diagram_aut(&g, &[2, 1, 0]).unwrap();
        for a in 0..g.order() {
            for b in [0usize, 1, 5, g.order() - 1] {
                let lhs = d.apply_idx(g.mult_idx(a, b));
                let rhs = g.mult_idx(d.apply_idx(a), d.apply_idx(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn enumerating_diagram_automorphisms() {
        assert_eq!(diagram_automorphisms(&group("A1")), vec![vec![0]]);
        assert_eq!(diagram_automorphisms(&group("A2")), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(diagram_automorphisms(&group("B2")), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(diagram_automorphisms(&group("B3")).len(), 1);
        // D4 has S3 on the three outer nodes {0, 2, 3} around center 1.
        assert_eq!(diagram_automorphisms(&group("D4")).len(), 6);
        // A1×A1: swap of identical factors.
        assert_eq!(diagram_automorphisms(&group("A1xA1")).len(), 2);
    }

    #[test]
    fn ad_longest_matches_known_types() {
        // A2: Ad(w₀) is the flip; composed with identity it is the swap.
        let g = group("A2");
        let tw = compose_ad_longest(&g, &identity_aut(&g)).unwrap();
        assert_eq!(tw.gen_images(), &[1, 0]);
        // B2: w₀ is central, Ad(w₀) = id.
        let g = group("B2");
        let tw = compose_ad_longest(&g, &identity_aut(&g)).unwrap();
        assert!(tw.is_identity());
        // Composing the A2 flip with Ad(w₀) gives the identity.
        let g = group("A2");
        let flip = diagram_aut(&g, &[1, 0]).unwrap();
        let tw = compose_ad_longest(&g, &flip).unwrap();
        assert!(tw.is_identity());
    }

    #[test]
    fn restriction_to_stable_parabolic() {
        let g = group("A3");
        let d = diagram_aut(&g, &[2, 1, 0]).unwrap();
        let j = GenSet::from_indices(&[0, 2], 3).unwrap();
        assert!(d.stabilizes(j));
        let p = g.parabolic(j).unwrap();
        let dj = d.restrict(&p).unwrap();
        assert_eq!(dj.gen_images(), &[1, 0]);
        let j_unstable = GenSet::from_indices(&[0, 1], 3).unwrap();
        assert!(!d.stabilizes(j_unstable));
        assert!(d.restrict(&g.parabolic(j_unstable).unwrap()).is_err());
    }
}
