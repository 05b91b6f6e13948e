use std::collections::BTreeSet;

use homat::category::{GradedCategory, Morphism};
use homat::graded::linear_combine;
use homat::homatrix::{CobordismElement, HomMatrix};
use homat::operad::operad_compose;
use homat::perm::Permutation;
use homat::random::{self, CategoryParams};
use homat::sympower::{canonicalize, printed_sign_exponent, Canonical};
use homat::Rational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_morphism<R: Rng>(rng: &mut R, cat: &GradedCategory, x: &homat::category::ObjectId, y: &homat::category::ObjectId, max_len: usize) -> Morphism {
    let basis = cat.hom(x, y).unwrap();
    let keys: Vec<_> = basis.keys().filter(|k| k.len() <= max_len).cloned().collect();
    let terms: Vec<_> = (0..rng.gen_range(0..=3)).filter_map(|_| keys.choose(rng).map(|k| (k.clone(), random::rational(rng)))).collect();
    cat.morphism(x, y, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_bilinear(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cat = random::free_category(&mut rng, &CategoryParams::default());
        let ids: Vec<_> = cat.objects().map(|o| o.id.clone()).collect();
        let (x, y, z) = (ids.choose(&mut rng).unwrap().clone(), ids.choose(&mut rng).unwrap().clone(), ids.choose(&mut rng).unwrap().clone());
        let lens = random::budgets(&mut rng, cat.max_path_length().unwrap(), 2);
        let g = random_morphism(&mut rng, &cat, &y, &z, lens[0]);
        let (f1, f2) = (random_morphism(&mut rng, &cat, &x, &y, lens[1]), random_morphism(&mut rng, &cat, &x, &y, lens[1]));
        let (a, b) = (random::rational(&mut rng), random::rational(&mut rng));
        let f = Morphism { source: x.clone(), target: y.clone(), value: linear_combine([(a.clone(), &f1.value), (b.clone(), &f2.value)]).unwrap() };
        let lhs = cat.compose(&g, &f).unwrap().value;
        let (gf1, gf2) = (cat.compose(&g, &f1).unwrap().value, cat.compose(&g, &f2).unwrap().value);
        prop_assert_eq!(lhs, linear_combine([(a.clone(), &gf1), (b.clone(), &gf2)]).unwrap());

        let g2 = random_morphism(&mut rng, &cat, &y, &z, lens[0]);
        let gs = Morphism { source: y.clone(), target: z.clone(), value: linear_combine([(a.clone(), &g.value), (b.clone(), &g2.value)]).unwrap() };
        let lhs = cat.compose(&gs, &f1).unwrap().value;
        let (g1f, g2f) = (cat.compose(&g, &f1).unwrap().value, cat.compose(&g2, &f1).unwrap().value);
        prop_assert_eq!(lhs, linear_combine([(a, &g1f), (b, &g2f)]).unwrap());
    }

    #[test]
    fn product_degrees_add(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cat = random::free_category(&mut rng, &CategoryParams::default());
        let lens = random::budgets(&mut rng, cat.max_path_length().unwrap(), 2);
        let idx: Vec<_> = (0..3).map(|_| { let n = rng.gen_range(1..=3); random::index_map(&mut rng, &cat, n) }).collect();
        let a = random::matrix(&mut rng, &cat, &idx[1], &idx[2], lens[0], false);
        let b = random::matrix(&mut rng, &cat, &idx[0], &idx[1], lens[1], false);
        let ab = a.product(&cat, &b).unwrap();
        // every term of (AB)_{ki} is a path through some j of degree |A_kj term| + |B_ji term|
        for ((k, i), v) in ab.entries() {
            for (key, d, _) in v.graded_terms() {
                let found = (0..idx[1].len()).any(|j| {
                    let (Some(akj), Some(bji)) = (a.entry(k, j), b.entry(j, i)) else { return false };
                    akj.graded_terms().any(|(p, dp, _)| bji.graded_terms().any(|(q, dq, _)| &p.concat(q) == key && dp + dq == d))
                });
                prop_assert!(found, "term {} of degree {} at ({}, {})", key, d, k, i);
            }
        }
    }

    #[test]
    fn cobordism_embedding_is_functorial(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cat = random::free_category(&mut rng, &CategoryParams::default());
        let n = rng.gen_range(1..=4);
        let c = random::index_map(&mut rng, &cat, n);
        let lens = random::budgets(&mut rng, cat.max_path_length().unwrap(), 2);
        let a = random::cobordism(&mut rng, &cat, &c, lens[0], false);
        let b = random::cobordism(&mut rng, &cat, &c, lens[1], false);
        let ab = CobordismElement::compose(&cat, &a, &b).unwrap();
        let (ma, mb, mab) = (a.to_matrix(&cat).unwrap(), b.to_matrix(&cat).unwrap(), ab.to_matrix(&cat).unwrap());
        prop_assert_eq!(&ma.product(&cat, &mb).unwrap(), &mab);
        if (0..n).all(|i| !ab.component(i).is_zero()) {
            let rows: BTreeSet<usize> = mab.entries().map(|((r, _), _)| r).collect();
            let cols: BTreeSet<usize> = mab.entries().map(|((_, c), _)| c).collect();
            prop_assert_eq!(mab.entries().count(), n);
            prop_assert_eq!(rows.len(), n);
            prop_assert_eq!(cols.len(), n);
        }
    }

    #[test]
    fn cobordism_embedding_is_injective(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cat = random::free_category(&mut rng, &CategoryParams::default());
        let n = rng.gen_range(1..=3);
        let c = random::index_map(&mut rng, &cat, n);
        let a = random::cobordism(&mut rng, &cat, &c, 4, false);
        let b = random::cobordism(&mut rng, &cat, &c, 4, false);
        let full = |e: &CobordismElement| (0..n).all(|i| !e.component(i).is_zero());
        if full(&a) && full(&b) && a != b {
            prop_assert_ne!(a.to_matrix(&cat).unwrap(), b.to_matrix(&cat).unwrap());
        }
        prop_assert_eq!(a.to_matrix(&cat).unwrap() == HomMatrix::identity(&cat, &c).unwrap(), a == CobordismElement::identity(&cat, &c).unwrap());
    }

    #[test]
    fn canonicalize_is_idempotent(factors in proptest::collection::vec((0u8..5, -3i64..=3), 1..7)) {
        let deg = |f: &(u8, i64)| Some(f.1 + i64::from(f.0));
        if let Canonical::Term { factors: sorted, .. } = canonicalize(&factors, deg).unwrap() {
            prop_assert_eq!(canonicalize(&sorted, deg).unwrap(), Canonical::Term { negative: false, factors: sorted.clone() });
        }
    }

    #[test]
    fn even_degrees_give_trivial_signs(
        a in proptest::collection::vec(-3i64..=3, 1..6),
        b in proptest::collection::vec(-3i64..=3, 1..6),
        seed in any::<u64>(),
    ) {
        let m = a.len().min(b.len());
        let (a, b): (Vec<i64>, Vec<i64>) = (a[..m].iter().map(|x| 2 * x).collect(), b[..m].iter().map(|x| 2 * x).collect());
        let sigma = random::permutation(&mut random::rng(seed), m);
        prop_assert_eq!(printed_sign_exponent(&a, &b, &sigma).rem_euclid(2), 0);
    }

    #[test]
    fn betti_bounded_by_dimension(seed in any::<u64>()) {
        let (c, _) = random::complex(&mut random::rng(seed));
        for (k, b) in c.homology_betti().unwrap() {
            prop_assert!(b <= c.degree_basis(k).len());
        }
    }

    #[test]
    fn operad_blocks_stay_ordered(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k = rng.gen_range(1..=4);
        let outer = random::config(&mut rng, k);
        let inners: Vec<_> = (0..k).map(|_| { let n = rng.gen_range(1..=3); random::config(&mut rng, n) }).collect();
        let out = operad_compose(&outer, &inners).unwrap();
        prop_assert!(out.is_valid());
        let mut start = 0;
        for (i, inner) in inners.iter().enumerate() {
            let block = &out.intervals[start..start + inner.arity()];
            let (lo, hi) = (outer.intervals[i].left(), outer.intervals[i].right());
            prop_assert!(block.iter().all(|t| t.left() >= lo && t.right() <= hi));
            if i + 1 < inners.len() {
                prop_assert!(block.last().unwrap().right() < out.intervals[start + inner.arity()].left());
            }
            start += inner.arity();
        }
    }

    #[test]
    fn permutation_group_laws(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = random::rng(seed);
        let (p, q, r) = (random::permutation(&mut rng, n), random::permutation(&mut rng, n), random::permutation(&mut rng, n));
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&Permutation::identity(n)), p.clone());
    }

    #[test]
    fn rationals_round_trip(p in any::<i64>(), q in 1i64..i64::MAX) {
        let x = Rational::new(p, q);
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }
}
