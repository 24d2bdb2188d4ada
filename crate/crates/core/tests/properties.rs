mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gitcurve_core::basin_calculus::enumerate_c_replacements;
use gitcurve_core::curve_model::{classify, find_elliptic_bridges, find_elliptic_tails, GraphBuilder};
use gitcurve_core::divisor_classes::{proportional, viehweg_class, DivisorClass};
use gitcurve_core::families::OneParamSubgroup;
use gitcurve_core::ideal_engine::{extrapolate_index, Monomial, MonomialOrder};
use gitcurve_core::rational::{frac, q};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn stability_lattice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(g) = common::random_graph(&mut rng, 12) {
            let f = classify(&g).unwrap();
            prop_assert!(!f.h_stable || f.h_semistable);
            prop_assert!(!f.h_semistable || f.c_semistable);
            prop_assert!(!f.c_stable || f.c_semistable);
            prop_assert!(!f.c_stable || f.pseudostable);
            prop_assert!(!f.pseudostable || f.c_semistable);
            let bridges = find_elliptic_bridges(&g).unwrap();
            prop_assert_eq!(f.c_stable, f.pseudostable && bridges.is_empty());
            let tails = find_elliptic_tails(&g).unwrap();
            if f.dm_stable && tails.is_empty() {
                prop_assert!(f.pseudostable);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn replacements_double_per_bridge(counts in proptest::collection::vec(0usize..=3, 1..=3)) {
        let n: usize = counts.iter().sum();
        prop_assume!(n >= 1 && n <= 5);
        let g = common::bridge_fixture(&counts);
        let reps = enumerate_c_replacements(&g).unwrap();
        prop_assert_eq!(reps.len(), 1 << n);
        for r in &reps {
            prop_assert!(classify(r).unwrap().c_semistable);
        }
    }

    #[test]
    fn rosary_and_chain_genera(r in 2usize..=10) {
        let mut b = GraphBuilder::new();
        let beads: Vec<_> = (0..r).map(|_| b.component(0, 0)).collect();
        for w in beads.windows(2) {
            b.tacnode(w[0], w[1]);
        }
        let open = b.build().unwrap();
        prop_assert_eq!(open.arithmetic_genus(), r as i64 - 1);

        let mut b = GraphBuilder::new();
        let beads: Vec<_> = (0..r).map(|_| b.component(0, 0)).collect();
        for i in 0..r {
            b.tacnode(beads[i], beads[(i + 1) % r]);
        }
        prop_assert_eq!(b.build().unwrap().arithmetic_genus(), r as i64 + 1);

        let mut b = GraphBuilder::new();
        let links: Vec<_> = (0..r).map(|_| b.component(1, 0)).collect();
        for w in links.windows(2) {
            b.tacnode(w[0], w[1]);
        }
        prop_assert_eq!(b.build().unwrap().arithmetic_genus(), 2 * r as i64 - 1);
    }

    #[test]
    fn divisor_arithmetic_is_linear(g in 3u32..=20, a in -50i64..50, b in -50i64..50, c in 1i64..9, m in 2u32..=12) {
        let x = DivisorClass::total(g, q(a), q(b)).unwrap();
        let y = viehweg_class(2, m, g).unwrap();
        let k = frac(c, 7);
        let lhs = x.add(&y).unwrap().scale(&k);
        let rhs = x.scale(&k).add(&y.scale(&k)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert!(proportional(&y.scale(&k), &y).unwrap());
        let split = x.to_split();
        prop_assert_eq!(split.delta_total(), x.delta_total());
    }

    #[test]
    fn extrapolation_reproduces_its_inputs(a in -100i64..100, b in -100i64..100) {
        let (mu2, mu3) = (frac(a, 3), frac(b, 5));
        prop_assert_eq!(extrapolate_index(&mu2, &mu3, 2), mu2.clone());
        prop_assert_eq!(extrapolate_index(&mu2, &mu3, 3), mu3.clone());
    }

    #[test]
    fn monomial_order_is_total(w in proptest::collection::vec(-5i64..6, 6), xs in proptest::collection::vec(proptest::collection::vec(0usize..6, 2), 3)) {
        let ord = MonomialOrder::new(OneParamSubgroup::new(w));
        let m: Vec<Monomial> = xs.into_iter().map(Monomial::new).collect();
        for a in &m {
            for b in &m {
                prop_assert_eq!(ord.compare(a, b), ord.compare(b, a).reverse());
                prop_assert_eq!(ord.compare(a, b) == std::cmp::Ordering::Equal, a == b);
                for c in &m {
                    if ord.compare(a, b).is_le() && ord.compare(b, c).is_le() {
                        prop_assert!(ord.compare(a, c).is_le());
                    }
                }
            }
        }
    }
}
