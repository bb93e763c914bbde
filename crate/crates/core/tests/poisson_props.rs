use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use rinehart::{div_std, sample, CoefficientField, PolyRing, Polynomial, Ring, Vec3};

fn q3() -> Ring {
    PolyRing::new(&["x", "y", "z"], CoefficientField::Rationals).unwrap()
}

fn q2() -> Ring {
    PolyRing::new(&["x", "y"], CoefficientField::Rationals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_antisymmetry_and_leibniz(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = q3();
        let (_, ps) = sample::sparse_vector_poisson(&mut rng, &r);
        let f = sample::poly(&mut rng, &r, 3, 3);
        let g = sample::poly(&mut rng, &r, 3, 3);
        let h = sample::poly(&mut rng, &r, 3, 3);
        prop_assert_eq!(ps.bracket(&f, &g).unwrap(), -ps.bracket(&g, &f).unwrap());
        prop_assert_eq!(
            ps.bracket(&f, &(&g * &h)).unwrap(),
            &(&g * &ps.bracket(&f, &h).unwrap()) + &(&ps.bracket(&f, &g).unwrap() * &h)
        );
    }

    #[test]
    fn jacobiator_is_totally_antisymmetric(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = q3();
        let (_, ps) = sample::sparse_vector_poisson(&mut rng, &r);
        let f = sample::poly(&mut rng, &r, 2, 2);
        let g = sample::poly(&mut rng, &r, 2, 2);
        let h = sample::poly(&mut rng, &r, 2, 2);
        let j = ps.jacobiator(&f, &g, &h).unwrap();
        prop_assert_eq!(ps.jacobiator(&g, &f, &h).unwrap(), -&j);
        prop_assert_eq!(ps.jacobiator(&f, &h, &g).unwrap(), -&j);
        prop_assert_eq!(ps.jacobiator(&g, &h, &f).unwrap(), j);
    }

    #[test]
    fn jacobi_verdict_matches_integrability(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = q3();
        let (v, ps) = if seed % 2 == 0 {
            sample::sparse_vector_poisson(&mut rng, &r)
        } else {
            let f = sample::poly(&mut rng, &r, 2, 1);
            let g = sample::poly(&mut rng, &r, 3, 3);
            let v = Vec3::grad(&g).unwrap().map(|c| &f * c);
            let ps = v.to_poisson();
            (v, ps)
        };
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let defect = v.integrability_defect();
        prop_assert_eq!(ps.jacobiator(&x, &y, &z).unwrap(), -&defect);
        prop_assert_eq!(ps.check_jacobi().passed(), defect.is_zero());
    }

    #[test]
    fn passing_structures_vanish_on_random_triples(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for r in [q2(), q3()] {
            let ps = sample::jacobi_poisson(&mut rng, &r);
            prop_assert!(ps.check_jacobi().passed());
            for _ in 0..5 {
                let f = sample::poly(&mut rng, &r, 2, 2);
                let g = sample::poly(&mut rng, &r, 2, 2);
                let h = sample::poly(&mut rng, &r, 2, 2);
                prop_assert!(ps.jacobiator(&f, &g, &h).unwrap().is_zero());
            }
            prop_assert!(ps.to_lie_rinehart().validate().passed());
        }
    }

    #[test]
    fn potentials_are_exact(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = q3();
        let q = sample::poly(&mut rng, &r, 4, 4);
        let v = Vec3::grad(&q).unwrap();
        let found = v.recover_potential().unwrap().expect("gradient fields have potentials");
        prop_assert_eq!(Vec3::grad(&found).unwrap(), v);
        prop_assert!(found.constant_term().is_zero());
        prop_assert_eq!(&q - &found, Polynomial::constant(&r, q.constant_term()));
    }

    #[test]
    fn trace_equals_hamiltonian_divergence(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for r in [q2(), q3()] {
            let ps = sample::jacobi_poisson(&mut rng, &r);
            let lr = ps.to_lie_rinehart();
            for i in 0..r.nvars() {
                prop_assert_eq!(lr.trace_ad_basis(i), div_std(ps.hamiltonian(i)));
            }
        }
    }
}

#[test]
fn curl_of_gradient_vanishes() {
    let mut rng = StdRng::seed_from_u64(3);
    let r = q3();
    for _ in 0..50 {
        let f = sample::poly(&mut rng, &r, 5, 5);
        assert!(Vec3::grad(&f).unwrap().curl().is_zero());
    }
}
