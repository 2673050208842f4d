//! Randomized structural properties, driven by proptest over words and
//! element indices in a fixed family of small groups.

use std::sync::OnceLock;

use hecke0::conjugacy::{supp_delta, twisted_conjugate, TwistedClasses};
use hecke0::coxeter::{
    build_group, diagram_automorphisms, diagram_aut, parse_group_spec,
    CoxeterGroup, DiagramAut, DEFAULT_SIZE_LIMIT,
};
use hecke0::hecke::zero::{demazure_idx, h0_mult};
use hecke0::hecke::{mult, HeckeElt};
use hecke0::linalg::{QVec, Subspace, Q};
use hecke0::poly::Poly;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

const SPECS: [&str; 5] = ["A2", "A3", "B2", "B3", "G2"];

fn groups() -> &'static Vec<CoxeterGroup> {
    static CELL: OnceLock<Vec<CoxeterGroup>> = OnceLock::new();
    CELL.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| build_group(parse_group_spec(s).unwrap(), DEFAULT_SIZE_LIMIT).unwrap())
            .collect()
    })
}

fn classes_for(gi: usize, di: usize) -> &'static (DiagramAut, TwistedClasses) {
    static CELL: OnceLock<Vec<Vec<(DiagramAut, TwistedClasses)>>> = OnceLock::new();
    &CELL.get_or_init(|| {
        groups()
            .iter()
            .map(|g| {
                diagram_automorphisms(g)
                    .iter()
                    .map(|images| {
                        let d = diagram_aut(g, images).unwrap();
                        let c = TwistedClasses::compute(g, &d).unwrap();
                        (d, c)
                    })
                    .collect()
            })
            .collect()
    })[gi][di]
}

/// Strategy: a group index and a generator word of bounded length.
fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..SPECS.len()).prop_flat_map(|gi| {
        let rank = groups()[gi].rank();
        (Just(gi), proptest::collection::vec(0..rank, 0..12))
    })
}

fn elements_strategy() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..SPECS.len()).prop_flat_map(|gi| {
        let n = groups()[gi].order();
        (Just(gi), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn words_replay_and_lengths_behave((gi, word) in word_strategy()) {
        let g = &groups()[gi];
        let w = g.element_from_word_idx(&word).unwrap();
        // Length is bounded by the word and has the same parity.
        prop_assert!((g.len_idx(w) as usize) <= word.len());
        prop_assert_eq!((g.len_idx(w) as usize) % 2, word.len() % 2);
        // The stored reduced word replays to the same element.
        prop_assert_eq!(g.element_from_word_idx(&g.word_idx(w)).unwrap(), w);
        // Inversion is an anti-automorphism of the same length.
        let winv = g.inverse_idx(w);
        prop_assert_eq!(g.len_idx(winv), g.len_idx(w));
        prop_assert_eq!(g.mult_idx(w, winv), 0);
    }

    #[test]
    fn multiplication_respects_length_and_inverse((gi, x, y) in elements_strategy()) {
        let g = &groups()[gi];
        let xy = g.mult_idx(x, y);
        let lx = g.len_idx(x) as i64;
        let ly = g.len_idx(y) as i64;
        let lxy = g.len_idx(xy) as i64;
        prop_assert!(lxy <= lx + ly);
        prop_assert!(lxy >= (lx - ly).abs());
        prop_assert_eq!(lxy % 2, (lx + ly) % 2);
        prop_assert_eq!(
            g.inverse_idx(xy),
            g.mult_idx(g.inverse_idx(y), g.inverse_idx(x))
        );
    }

    #[test]
    fn bruhat_is_an_order_compatible_with_length((gi, x, y) in elements_strategy()) {
        let g = &groups()[gi];
        prop_assert!(g.bruhat_leq_idx(x, x));
        prop_assert!(g.bruhat_leq_idx(0, x));
        prop_assert!(g.bruhat_leq_idx(x, g.longest_index()));
        if g.bruhat_leq_idx(x, y) && x != y {
            prop_assert!(g.len_idx(x) < g.len_idx(y));
            prop_assert!(!g.bruhat_leq_idx(y, x));
        }
    }

    #[test]
    fn demazure_dominates_and_projects((gi, x, y) in elements_strategy()) {
        let g = &groups()[gi];
        let d = demazure_idx(g, x, y);
        prop_assert!(g.bruhat_leq_idx(x, d));
        prop_assert!(g.bruhat_leq_idx(y, d));
        // Folding with the identity on either side is the identity map.
        prop_assert_eq!(demazure_idx(g, x, 0), x);
        prop_assert_eq!(demazure_idx(g, 0, y), y);
        // The longest element absorbs.
        let w0 = g.longest_index();
        prop_assert_eq!(demazure_idx(g, x, w0), w0);
    }

    #[test]
    fn twisted_conjugation_preserves_classes_and_cocycle(
        (gi, x, w) in elements_strategy(),
        di_seed in 0usize..4,
    ) {
        let g = &groups()[gi];
        let auts = diagram_automorphisms(g);
        let (delta, classes) = classes_for(gi, di_seed % auts.len());
        let v = twisted_conjugate(g, delta, x, w);
        prop_assert_eq!(classes.class_of(v), classes.class_of(w));
        // Cocycle: conjugating by xy equals conjugating by y then x.
        let y = g.inverse_idx(x);
        let back = twisted_conjugate(g, delta, y, v);
        prop_assert_eq!(back, w);
        // δ-support never grows under conjugation by a generator of it.
        for s in supp_delta(g, delta, w).iter() {
            let u = twisted_conjugate(g, delta, s + 1, w);
            prop_assert!(supp_delta(g, delta, u).is_subset_of(
                supp_delta(g, delta, w)
            ));
        }
    }

    #[test]
    fn hecke_products_associate((gi, x, y) in elements_strategy(), z_seed in 0usize..384) {
        let g = &groups()[gi];
        let z = z_seed % g.order();
        // 0-Hecke associativity on basis triples.
        let tx: HeckeElt<Q> = HeckeElt::basis(g, x);
        let ty: HeckeElt<Q> = HeckeElt::basis(g, y);
        let tz: HeckeElt<Q> = HeckeElt::basis(g, z);
        let left = h0_mult(g, &h0_mult(g, &tx, &ty).unwrap(), &tz).unwrap();
        let right = h0_mult(g, &tx, &h0_mult(g, &ty, &tz).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // Generic coefficients associate as well.
        let q = Poly::q();
        let px: HeckeElt<Poly> = HeckeElt::basis(g, x);
        let py: HeckeElt<Poly> = HeckeElt::basis(g, y);
        let pz: HeckeElt<Poly> = HeckeElt::basis(g, z);
        let l = mult(g, &mult(g, &px, &py, &q).unwrap(), &pz, &q).unwrap();
        let r = mult(g, &px, &mult(g, &py, &pz, &q).unwrap(), &q).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn subspace_insertion_is_sound(
        rows in proptest::collection::vec(
            proptest::collection::vec(-4i64..5, 6),
            1..6,
        ),
        probe in proptest::collection::vec(-4i64..5, 6),
    ) {
        let to_qvec = |ints: &[i64]| {
            QVec::from_pairs(
                ints.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, &v)| (i, Q::from(BigInt::from(v)))),
            )
        };
        let mut space = Subspace::new(6);
        let mut rank_before;
        for r in &rows {
            let v = to_qvec(r);
            rank_before = space.rank();
            let grew = space.insert(&v);
            prop_assert_eq!(space.rank(), rank_before + usize::from(grew));
            prop_assert!(space.contains(&v));
            // The reduction residual of a member vanishes.
            prop_assert!(space.reduce(&v).is_zero());
        }
        prop_assert!(space.rank() <= 6);
        // Residuals are idempotent: reduce(reduce(v)) = reduce(v).
        let p = to_qvec(&probe);
        let r1 = space.reduce(&p);
        let r2 = space.reduce(&r1);
        prop_assert_eq!(r1.clone(), r2);
        // v − reduce(v) always lies in the space.
        let diff = p.add_scaled(&-Q::from(BigInt::from(1)), &r1);
        prop_assert!(space.contains(&diff));
    }

    #[test]
    fn class_polynomial_degrees_and_indicators((gi, w) in (0usize..SPECS.len())
        .prop_flat_map(|gi| (Just(gi), 0..groups()[gi].order())))
    {
        let g = &groups()[gi];
        let (delta, classes) = classes_for(gi, 0);
        let table = hecke0::conjugacy::class_polynomials(g, delta, classes).unwrap();
        let mut ones = 0;
        for (o, f) in table.rows[w].iter().enumerate() {
            if let Some(d) = f.degree() {
                prop_assert!(d <= g.len_idx(w) as usize);
            }
            let at_one = f.eval(&Q::from(BigInt::from(1)));
            if classes.class_of(w) == o {
                prop_assert_eq!(&at_one, &Q::from(BigInt::from(1)));
                ones += 1;
            } else {
                prop_assert!(at_one.is_zero());
            }
        }
        prop_assert_eq!(ones, 1);
    }
}
