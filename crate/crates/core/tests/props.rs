//! Randomized law checks: group axioms for permutations and isostrophisms,
//! functoriality of the slot action on tables, and agreement between the
//! nucleus computations and the definitions they implement.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigma_nuclei::{
    compute_all_nuclei, derive_all_nuclei, random_quasigroup, DerivedNucleus, Isostrophism, Perm,
    Quasigroup, ALL_S3,
};

fn seeded_perm(n: usize, seed: u64) -> Perm {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(&mut rng);
    Perm::from_images(images).expect("shuffling preserves bijectivity")
}

fn seeded_isostrophism(n: usize, seed: u64) -> Isostrophism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Isostrophism::random(n, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutations_form_a_group(
        n in 1usize..=8,
        seeds in [any::<u64>(), any::<u64>(), any::<u64>()],
    ) {
        let f = seeded_perm(n, seeds[0]);
        let g = seeded_perm(n, seeds[1]);
        let h = seeded_perm(n, seeds[2]);
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(
            fg.compose(&h).unwrap(),
            f.compose(&g.compose(&h).unwrap()).unwrap()
        );
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert!(f.inverse().compose(&f).unwrap().is_identity());
        prop_assert_eq!(f.compose(&Perm::identity(n)).unwrap(), f.clone());
        prop_assert_eq!(fg.inverse(), g.inverse().compose(&f.inverse()).unwrap());
    }

    #[test]
    fn permutation_literals_round_trip(n in 1usize..=8, seed in any::<u64>()) {
        let p = seeded_perm(n, seed);
        prop_assert_eq!(Perm::parse_literal(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn quasigroup_text_round_trips(order in 1usize..=6, seed in any::<u64>()) {
        let q = random_quasigroup(order, seed);
        prop_assert_eq!(Quasigroup::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn translations_read_off_the_table(order in 1usize..=6, seed in any::<u64>()) {
        let q = random_quasigroup(order, seed);
        for a in 0..order {
            let l = q.left_translation(a);
            let r = q.right_translation(a);
            let p = q.middle_translation(a);
            for x in 0..order {
                prop_assert_eq!(l.apply(x), q.get(a, x));
                prop_assert_eq!(r.apply(x), q.get(x, a));
                prop_assert_eq!(q.get(x, p.apply(x)), a);
            }
        }
    }

    #[test]
    fn parastrophes_compose_functorially(
        order in 2usize..=5,
        seed in any::<u64>(),
        i in 0usize..6,
        j in 0usize..6,
    ) {
        let q = random_quasigroup(order, seed);
        let (s, t) = (ALL_S3[i], ALL_S3[j]);
        prop_assert_eq!(
            q.parastrophe(s.compose(t)),
            q.parastrophe(s).parastrophe(t)
        );
        prop_assert_eq!(q.parastrophe(s).parastrophe(s.inverse()), q);
    }

    #[test]
    fn isostrophism_inverses_cancel(
        n in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let t = seeded_isostrophism(n, seed);
        prop_assert!(t.compose(&t.inverse()).unwrap().is_identity());
        prop_assert!(t.inverse().compose(&t).unwrap().is_identity());
        prop_assert_eq!(t.inverse().inverse(), t);
    }

    #[test]
    fn isostrophism_product_is_sequential_application(
        order in 2usize..=5,
        seed in any::<u64>(),
        s1 in any::<u64>(),
        s2 in any::<u64>(),
    ) {
        let q = random_quasigroup(order, seed);
        let t1 = seeded_isostrophism(order, s1);
        let t2 = seeded_isostrophism(order, s2);
        let sequential = t2.apply(&t1.apply(&q).unwrap()).unwrap();
        prop_assert_eq!(t1.compose(&t2).unwrap().apply(&q).unwrap(), sequential);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nucleus_members_fix_the_quasigroup(order in 2usize..=5, seed in any::<u64>()) {
        let q = random_quasigroup(order, seed);
        for ((sigma, kind), nucleus) in &compute_all_nuclei(&q) {
            for member in nucleus.members() {
                prop_assert_eq!(member.sigma, *sigma);
                prop_assert!(member.triple.get(kind.identity_slot()).is_identity());
                prop_assert!(member.is_autostrophism_of(&q));
            }
        }
    }

    #[test]
    fn derivation_agrees_with_recomputation(
        order in 2usize..=4,
        seed in any::<u64>(),
        theta_seed in any::<u64>(),
    ) {
        let q = random_quasigroup(order, seed);
        let theta = seeded_isostrophism(order, theta_seed);
        let image = theta.apply(&q).unwrap();
        let nuclei = compute_all_nuclei(&q);
        let image_nuclei = compute_all_nuclei(&image);
        for (key, derived) in &derive_all_nuclei(&nuclei, &theta).unwrap() {
            match derived {
                DerivedNucleus::Derived(nucleus) => {
                    prop_assert_eq!(nucleus, &image_nuclei[key]);
                }
                DerivedNucleus::NotDerivable => {
                    let s = key.1.identity_slot();
                    prop_assert_ne!(
                        theta.triple.get(key.0.apply(s)),
                        theta.triple.get(s)
                    );
                }
            }
        }
    }
}
