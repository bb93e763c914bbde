use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rinehart::{
    parse_poly, sample, CoefficientField, HDerivation, HypersurfaceRing, KForm, PolyRing,
    Polynomial, Ring,
};

fn q3() -> Ring {
    PolyRing::new(&["x", "y", "z"], CoefficientField::Rationals).unwrap()
}

fn one_form<R: Rng>(rng: &mut R, h: &HypersurfaceRing) -> KForm {
    let r = h.ambient();
    h.form(1, (0..3).map(|_| sample::poly(rng, r, 2, 2)).collect()).unwrap()
}

/// A derivation preserving `(P)`: a random combination of the `δ_i`.
fn derivation<R: Rng>(rng: &mut R, h: &HypersurfaceRing) -> HDerivation {
    let r = h.ambient();
    let mut comps = [Polynomial::zero(r), Polynomial::zero(r), Polynomial::zero(r)];
    for i in 0..3 {
        let f = sample::poly(rng, r, 2, 1);
        let d = h.delta(i).scale(&f, h);
        for (c, e) in comps.iter_mut().zip(d.components()) {
            *c = &*c + e;
        }
    }
    HDerivation::new(h, comps).unwrap()
}

fn ratio(h: &HypersurfaceRing, w: &KForm) -> Polynomial {
    h.twoform_to_volume_ratio(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_identity_and_volume(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (h, _) = sample::admissible_hypersurface(&mut rng, &q3());
        let r = h.ambient();
        prop_assert_eq!(h.euler_sum(), Polynomial::constant(r, -h.t()));
        prop_assert!(ratio(&h, &h.volume_form()).is_one());
        let g = sample::poly(&mut rng, r, 3, 3);
        prop_assert!(h.qequal(&ratio(&h, &h.volume_form().scale(&g, &h)), &g).unwrap());
        // dP ∧ α vanishes in Λ²Ω_S
        let a = one_form(&mut rng, &h);
        prop_assert!(ratio(&h, &h.wedge(&h.dp(), &a).unwrap()).is_zero());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (h, _) = sample::admissible_hypersurface(&mut rng, &q3());
        let f = sample::poly(&mut rng, h.ambient(), 4, 4);
        let f0 = h.form(0, vec![f]).unwrap();
        let dd = h.ext_d(&h.ext_d(&f0).unwrap()).unwrap();
        prop_assert!(ratio(&h, &dd).is_zero());
    }

    #[test]
    fn multiples_of_dp_are_recognized(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (h, _) = sample::admissible_hypersurface(&mut rng, &q3());
        let a = one_form(&mut rng, &h);
        let g = sample::poly(&mut rng, h.ambient(), 3, 2);
        let b = a.add(&h.dp().scale(&g, &h), &h);
        prop_assert!(h.oneform_equiv_mod_dp(&a, &b).unwrap());
        prop_assert!(h.oneform_equiv_mod_dp(&a, &a).unwrap());
    }

    #[test]
    fn lie_derivative_respects_wedges(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (h, _) = sample::admissible_hypersurface(&mut rng, &q3());
        let d = derivation(&mut rng, &h);
        let a = one_form(&mut rng, &h);
        let b = one_form(&mut rng, &h);
        let lhs = h.lie_derivative(&d, &h.wedge(&a, &b).unwrap()).unwrap();
        let rhs = h
            .wedge(&h.lie_derivative(&d, &a).unwrap(), &b)
            .unwrap()
            .add(&h.wedge(&a, &h.lie_derivative(&d, &b).unwrap()).unwrap(), &h);
        prop_assert!(h.qequal(&ratio(&h, &lhs), &ratio(&h, &rhs)).unwrap());
    }

    #[test]
    fn divergence_is_a_derivation_law(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (h, _) = sample::admissible_hypersurface(&mut rng, &q3());
        for i in 0..3 {
            prop_assert!(h.divergence(&h.delta(i)).unwrap().is_zero());
        }
        let d = derivation(&mut rng, &h);
        let f = sample::poly(&mut rng, h.ambient(), 3, 2);
        let lhs = h.divergence(&d.scale(&f, &h)).unwrap();
        let rhs = &(&f * &h.divergence(&d).unwrap()) + &d.apply(&f);
        prop_assert!(h.qequal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn nambu_divergences_match_closed_form(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (h, q) = sample::admissible_hypersurface(&mut rng, &q3());
        let nb = h.nambu_bracket(&q).unwrap();
        let closed = h.div_hamiltonian_closed_form(&q).unwrap();
        for (d, c) in nb.hamiltonians.iter().zip(closed.components()) {
            prop_assert!(h.qequal(&h.divergence(d).unwrap(), c).unwrap());
        }
        let r = h.ambient();
        let [x, y, z] = [0, 1, 2].map(|i| Polynomial::var(r, i));
        let jac = nb.as_poisson().jacobiator(&x, &y, &z).unwrap();
        prop_assert!(h.qreduce(&jac).unwrap().is_zero());
        let f = sample::poly(&mut rng, r, 2, 2);
        let g = sample::poly(&mut rng, r, 2, 2);
        prop_assert!(h
            .qequal(&nb.bracket(&h, &f, &g).unwrap(), &-nb.bracket(&h, &g, &f).unwrap())
            .unwrap());
    }
}

#[test]
fn fixed_instance_forms() {
    let r = q3();
    let p = parse_poly("1 + x*y*z", &r).unwrap();
    let h = HypersurfaceRing::new(&r, &p, [1, 1, 1]).unwrap();
    let dx = h.form(1, vec![Polynomial::one(&r), Polynomial::zero(&r), Polynomial::zero(&r)]).unwrap();
    assert!(!h.oneform_equiv_mod_dp(&dx, &h.zero_form(1).unwrap()).unwrap());
    assert!(h.ext_d(&h.volume_form()).is_ok());
    assert!(h.form(4, vec![]).is_err());
    let not_preserving = HDerivation::new(&h, [Polynomial::one(&r), Polynomial::zero(&r), Polynomial::zero(&r)]);
    assert!(not_preserving.is_err());
}
