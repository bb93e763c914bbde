use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rinehart::{sample, CoefficientField, DualForm, FreeLieRinehart, LElement, PolyRing, Ring};

fn ring(n: usize) -> Ring {
    let vars = ["x", "y", "z"];
    PolyRing::new(&vars[..n], CoefficientField::Rationals).unwrap()
}

fn element<R: Rng>(rng: &mut R, lr: &FreeLieRinehart) -> LElement {
    LElement::new((0..lr.rank()).map(|_| sample::poly(rng, lr.ring(), 2, 2)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn trace_map_lemma(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(2 + (seed % 2) as usize);
        let lr = sample::valid_lie_rinehart(&mut rng, &r);
        let a = element(&mut rng, &lr);
        let b = element(&mut rng, &lr);
        let s = sample::poly(&mut rng, &r, 3, 2);
        // λ(sα) = sλ(α) − α(s)
        prop_assert_eq!(
            lr.trace_ad(&a.scale(&s)).unwrap(),
            &(&s * &lr.trace_ad(&a).unwrap()) - &lr.anchor_apply(&a, &s).unwrap()
        );
        // λ([α,β]) = α(λ(β)) − β(λ(α))
        let ab = lr.bracket_elements(&a, &b).unwrap();
        prop_assert_eq!(
            lr.trace_ad(&ab).unwrap(),
            &lr.anchor_apply(&a, &lr.trace_ad(&b).unwrap()).unwrap()
                - &lr.anchor_apply(&b, &lr.trace_ad(&a).unwrap()).unwrap()
        );
    }

    #[test]
    fn brackets_satisfy_jacobi_and_leibniz(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(2 + (seed % 2) as usize);
        let lr = sample::valid_lie_rinehart(&mut rng, &r);
        let a = element(&mut rng, &lr);
        let b = element(&mut rng, &lr);
        let c = element(&mut rng, &lr);
        let br = |u: &LElement, v: &LElement| lr.bracket_elements(u, v).unwrap();
        let jac = br(&a, &br(&b, &c)).add(&br(&b, &br(&c, &a))).add(&br(&c, &br(&a, &b)));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(br(&a, &b), LElement::zero(&r, lr.rank()).sub(&br(&b, &a)));
        let s = sample::poly(&mut rng, &r, 2, 2);
        prop_assert_eq!(
            br(&a, &b.scale(&s)),
            br(&a, &b).scale(&s).add(&b.scale(&lr.anchor_apply(&a, &s).unwrap()))
        );
        // anchor is a Lie homomorphism on general elements
        let f = sample::poly(&mut rng, &r, 3, 3);
        prop_assert_eq!(
            &lr.anchor_apply(&a, &lr.anchor_apply(&b, &f).unwrap()).unwrap()
                - &lr.anchor_apply(&b, &lr.anchor_apply(&a, &f).unwrap()).unwrap(),
            lr.anchor_apply(&br(&a, &b), &f).unwrap()
        );
    }

    #[test]
    fn dual_lie_derivative_is_a_derivation(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(2 + (seed % 2) as usize);
        let lr = sample::valid_lie_rinehart(&mut rng, &r);
        let phi = DualForm::new((0..lr.rank()).map(|_| sample::poly(&mut rng, &r, 2, 2)).collect());
        let g = sample::poly(&mut rng, &r, 2, 2);
        for i in 0..lr.rank() {
            let lhs = lr.lie_derivative_dual(i, &phi.scale(&g)).unwrap();
            let d = lr.anchor_apply(&lr.basis(i), &g).unwrap();
            let rhs = phi.scale(&d).add(&lr.lie_derivative_dual(i, &phi).unwrap().scale(&g));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
