use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadgerm::arrangements::{
    hirzebruch_b1_zero, intersection_profile, is_general_position, pair_count_holds, random_arrangement, tayama_b,
    tayama_lower_bound,
};
use quadgerm::mhs::fixtures::{random_filtered_complex, random_mhs};
use quadgerm::mhs::{check_mhs, dec_filtration, deligne_splitting, gr_weight, is_pure};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn graded_pieces_fill_the_space(seed in any::<u64>()) {
        let fx = random_mhs(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(gr_weight(&fx.space).values().sum::<usize>(), fx.space.dim());
    }

    #[test]
    fn pure_exactly_when_one_weight(seed in any::<u64>(), n in 0i64..=4) {
        let fx = random_mhs(&mut ChaCha8Rng::seed_from_u64(seed));
        let gr = gr_weight(&fx.space);
        let nonzero: Vec<i64> = gr.iter().filter(|(_, &d)| d > 0).map(|(k, _)| *k).collect();
        prop_assert_eq!(is_pure(&fx.space, n), nonzero.iter().all(|&k| k == n));
    }

    #[test]
    fn splitting_reconstructs(seed in any::<u64>()) {
        let fx = random_mhs(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(check_mhs(&fx.space).unwrap(), fx.hodge_numbers.clone());
        let s = deligne_splitting(&fx.space).unwrap();
        prop_assert!(s.checks.all());
        for (&(p, q), &h) in &fx.hodge_numbers {
            prop_assert_eq!(s.dim(p, q), h);
            prop_assert_eq!(s.dim(q, p), h);
        }
    }

    #[test]
    fn dec_identity(seed in any::<u64>()) {
        let c = random_filtered_complex(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = dec_filtration(&c).unwrap();
        prop_assert!(r.preserved_by_d);
        prop_assert!(r.cohomology_identity, "{:?}", r.failure);
    }

    #[test]
    fn pair_count(seed in any::<u64>(), n in 1usize..=9) {
        let l = random_arrangement(&mut ChaCha8Rng::seed_from_u64(seed), n);
        prop_assert!(pair_count_holds(&l));
        let pairs: usize = intersection_profile(l.lines()).m.iter().map(|(r, m)| m * r * (r - 1) / 2).sum();
        prop_assert_eq!(pairs, n * (n - 1) / 2);
    }

    #[test]
    fn bound_vanishes_on_general_position(seed in any::<u64>(), n in 3usize..=8, big_n in 3u64..=6) {
        let l = random_arrangement(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let zero = tayama_lower_bound(&l, big_n).unwrap() == 0.into();
        prop_assert_eq!(zero, is_general_position(&l));
        if hirzebruch_b1_zero(&l, big_n).unwrap() {
            prop_assert!(zero);
        }
    }
}

#[test]
fn tayama_sign_table() {
    for big_n in 2..=12u64 {
        for n in 2..=9u64 {
            let b = tayama_b(big_n, n).unwrap();
            let expect_zero = n == 2 || (big_n == 2 && n == 3);
            assert_eq!(b == 0.into(), expect_zero, "b({big_n},{n}) = {b}");
            assert!(b >= 0.into());
        }
    }
    assert_eq!(tayama_b(1, 5).unwrap(), 0.into());
}
