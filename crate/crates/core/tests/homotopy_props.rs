use moore_l::homotopy::{homotopy_order, leopoldt_sequence, periodicity_witness, HomotopyPattern};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config {
        cases: 256,
        rng_seed: RngSeed::Fixed(0x0407_0b07),
        failure_persistence: None,
        ..Config::default()
    }
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13), Just(101)]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn two_nontrivial_degrees_per_window(p in prime(), start in -10_000i64..10_000) {
        let pattern = HomotopyPattern::new(p).unwrap();
        let nontrivial = (start..start + pattern.period())
            .filter(|&n| pattern.order(n) != 1)
            .count();
        prop_assert_eq!(nontrivial, 2);
    }

    #[test]
    fn orders_are_one_or_p(p in prime(), n in -10_000i64..10_000) {
        let o = homotopy_order(p, n).unwrap();
        prop_assert!(o == 1 || o == p);
    }

    #[test]
    fn pairing_at_multiples_of_p_minus_one(p in prime(), k in -500i64..500) {
        let n = k * (p as i64 - 1);
        prop_assert_eq!(homotopy_order(p, 2 * n).unwrap(), p);
        prop_assert_eq!(homotopy_order(p, 2 * n - 1).unwrap(), p);
    }

    #[test]
    fn periodic(p in prime(), n in -10_000i64..10_000) {
        prop_assert!(periodicity_witness(p, n, 5).unwrap());
    }
}

#[test]
fn leopoldt_sequences_are_constant() {
    assert_eq!(leopoldt_sequence(3, 6).unwrap(), vec![3; 7]);
    assert_eq!(leopoldt_sequence(5, 4).unwrap(), vec![5; 5]);
    assert!(homotopy_order(2, 0).is_err());
}
