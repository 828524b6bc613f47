use moore_l::analytic::{classify_prime, primes_up_to, PrimeClass, Splitting};
use moore_l::arith::modular::{euler_phi, multiplicative_order};
use moore_l::lvalues::moore_generator;
use moore_l::{CharacterGroup, Cyclotomic, DirichletCharacter};
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

const MODULI: [u64; 8] = [1, 3, 5, 7, 9, 25, 27, 49];

fn is_primitive_pth_root(x: &Cyclotomic, p: u64) -> bool {
    let one = Cyclotomic::one(x.order());
    x != &one && x.pow(p as u32) == one
}

#[test]
fn character_axioms() {
    for f in MODULI {
        for chi in CharacterGroup::full(f).unwrap().iter() {
            let fi = f as i64;
            assert_eq!(chi.eval(1), Cyclotomic::one(chi.order()));
            for n in -2 * fi..=2 * fi {
                let v = chi.eval(n);
                if n.gcd(&fi) != 1 {
                    assert!(v.is_zero(), "chi({n}) mod {f}");
                    continue;
                }
                assert_eq!(v, chi.eval(n + fi), "periodicity at {n} mod {f}");
                let d = chi.order();
                let en = chi.exponent(n).unwrap();
                for m in -2 * fi..=2 * fi {
                    let expected = chi.exponent(m).map(|em| (en + em) % d);
                    assert_eq!(chi.exponent(n * m), expected);
                }
            }
        }
    }
}

#[test]
fn group_closure_and_order() {
    for f in MODULI {
        let g = CharacterGroup::full(f).unwrap();
        assert_eq!(g.len() as u64, euler_phi(f));
        for a in g.iter() {
            for b in g.iter() {
                assert!(g.contains(&a.product(b).unwrap()));
            }
        }
    }
    for p in [3u64, 5, 7, 11] {
        let h = CharacterGroup::torsion_subgroup(p).unwrap();
        assert_eq!(h.len() as u64, p);
        for a in h.iter() {
            for b in h.iter() {
                assert!(h.contains(&a.product(b).unwrap()));
            }
        }
    }
}

#[test]
fn torsion_characters_are_even_primitive_and_order_p() {
    for p in [3u64, 5, 7, 11, 13] {
        for chi in CharacterGroup::torsion_subgroup(p).unwrap().nonprincipal() {
            assert_eq!(chi.eval(-1), Cyclotomic::one(p));
            assert!(chi.is_even());
            assert_eq!(chi.order(), p);
            assert_eq!(chi.conductor(), p * p);
            assert!(is_primitive_pth_root(&chi.eval(1 + p as i64), p));
        }
    }
}

#[test]
fn value_at_prime_follows_splitting() {
    // χ(ℓ) = 1 exactly when ℓ^{p-1} ≡ 1 mod p²; primitive roots mod p² are
    // never split, but some non-primitive roots are inert (ℓ = 7 for p = 3).
    for p in [3u64, 5, 7] {
        let chi = moore_generator(p).unwrap();
        for ell in primes_up_to(2_000).into_iter().filter(|&l| l != p) {
            let c = classify_prime(ell, p).unwrap();
            let v = chi.eval(ell as i64);
            match c.splitting {
                Splitting::Split => assert_eq!(v, Cyclotomic::one(p)),
                Splitting::Inert => assert!(is_primitive_pth_root(&v, p)),
                Splitting::Ramified => unreachable!(),
            }
            if c.class == PrimeClass::PrimitiveRoot {
                assert_eq!(multiplicative_order(ell, p * p), Some(p * (p - 1)));
                assert!(is_primitive_pth_root(&v, p));
            }
        }
    }
    let seven = classify_prime(7, 3).unwrap();
    assert_eq!(seven.class, PrimeClass::NonPrimitiveRoot);
    assert_eq!(seven.splitting, Splitting::Inert);
}

#[test]
fn unsupported_moduli_rejected() {
    assert!(DirichletCharacter::principal(15).is_err());
    assert!(DirichletCharacter::principal(8).is_err());
    assert!(CharacterGroup::torsion_subgroup(4).is_err());
}

fn config() -> Config {
    Config {
        cases: 128,
        rng_seed: RngSeed::Fixed(0x0d1c_41e7),
        failure_persistence: None,
        ..Config::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn multiplicativity_on_large_arguments(
        fi in 1usize..MODULI.len(),
        j in 0u64..64,
        a in -100_000i64..100_000,
        b in -100_000i64..100_000,
    ) {
        let f = MODULI[fi];
        let chi = DirichletCharacter::new(f, j % euler_phi(f)).unwrap();
        prop_assert_eq!(chi.eval(a * b), &chi.eval(a) * &chi.eval(b));
    }

    #[test]
    fn galois_conjugate_character_values(j in 1u64..5, k in 1i64..25, n in -200i64..200) {
        let p = 5u64;
        let chi = DirichletCharacter::new(25, j * (p - 1)).unwrap();
        prop_assume!(k % 5 != 0);
        let conj = chi.galois_conj(k).unwrap();
        prop_assert_eq!(conj.eval(n), chi.eval(n).galois_conj(k).unwrap());
    }
}
