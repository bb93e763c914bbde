//! Seeded random fixtures: polynomials, valid Lie-Rinehart algebras,
//! Jacobi-passing Poisson structures, admissible hypersurfaces and
//! enveloping-algebra elements. Used by the property suites and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::envelope::{Algebra, Terms, UElement};
use crate::hypersurface::HypersurfaceRing;
use crate::lierinehart::{FreeLieRinehart, LElement};
use crate::poisson::{PoissonStructure, Vec3};
use crate::ring::{Polynomial, Ring};

/// A polynomial with up to `max_terms` terms of total degree at most
/// `max_degree` and small nonzero integer coefficients.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, max_terms: usize, max_degree: u32) -> Polynomial {
    let n = ring.nvars();
    let count = rng.gen_range(0..=max_terms);
    let mut out = Polynomial::zero(ring);
    for _ in 0..count {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let mut c = rng.gen_range(-4i64..=4);
        if c == 0 {
            c = 1;
        }
        out = &out + &Polynomial::from_terms(ring, [(e, ring.field().from_i64(c))]);
    }
    out
}

/// Like [`poly`] but never zero.
pub fn nonzero_poly<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, max_terms: usize, max_degree: u32) -> Polynomial {
    loop {
        let p = poly(rng, ring, max_terms.max(1), max_degree);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A Poisson structure that satisfies Jacobi. In two variables any `{x,y}`
/// works; in three variables `P = f grad(g)` has `P . curl(P) = 0`.
pub fn jacobi_poisson<R: Rng + ?Sized>(rng: &mut R, ring: &Ring) -> PoissonStructure {
    match ring.nvars() {
        2 => PoissonStructure::from_upper(ring, [(0, 1, poly(rng, ring, 3, 3))]).expect("2 vars"),
        3 => {
            let f = poly(rng, ring, 2, 1);
            let g = poly(rng, ring, 3, 3);
            let v = Vec3::grad(&g).expect("3 vars");
            v.map(|c| &f * c).to_poisson()
        }
        n => panic!("jacobi_poisson supports 2 or 3 variables, got {n}"),
    }
}

/// A 3-variable structure from an arbitrary sparse vector; Jacobi may fail.
pub fn sparse_vector_poisson<R: Rng + ?Sized>(rng: &mut R, ring: &Ring) -> (Vec3, PoissonStructure) {
    let v = Vec3::new(poly(rng, ring, 2, 2), poly(rng, ring, 2, 2), poly(rng, ring, 2, 2))
        .expect("3 vars");
    let ps = v.to_poisson();
    (v, ps)
}

/// `L = Der(S)` presented in a unitriangular frame
/// `a_i = d/dx_i + sum_{m > i} A_{im} d/dx_m`. The brackets of the frame
/// vector fields are re-expanded in the frame by back substitution.
pub fn derivation_frame<R: Rng + ?Sized>(rng: &mut R, ring: &Ring) -> FreeLieRinehart {
    let n = ring.nvars();
    let mut anchor = vec![vec![Polynomial::zero(ring); n]; n];
    for (i, row) in anchor.iter_mut().enumerate() {
        row[i] = Polynomial::one(ring);
        for entry in row.iter_mut().skip(i + 1) {
            *entry = poly(rng, ring, 2, 2);
        }
    }
    let apply = |row: &[Polynomial], f: &Polynomial| {
        row.iter()
            .enumerate()
            .fold(Polynomial::zero(ring), |acc, (m, c)| &acc + &(c * &f.partial(m)))
    };
    let mut brackets = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let field: Vec<Polynomial> = (0..n)
                .map(|m| &apply(&anchor[i], &anchor[k][m]) - &apply(&anchor[k], &anchor[i][m]))
                .collect();
            // solve field_m = sum_j c_j A_{jm}, A unitriangular
            let mut c = vec![Polynomial::zero(ring); n];
            for m in 0..n {
                let mut v = field[m].clone();
                for j in 0..m {
                    v = &v - &(&c[j] * &anchor[j][m]);
                }
                c[m] = v;
            }
            brackets.push((i, k, LElement::new(c)));
        }
    }
    let names = (1..=n).map(|i| format!("a{i}")).collect();
    FreeLieRinehart::from_brackets(ring, names, anchor, brackets).expect("shapes")
}

/// Rank one with an arbitrary anchor; always a Lie-Rinehart algebra.
pub fn rank_one<R: Rng + ?Sized>(rng: &mut R, ring: &Ring) -> FreeLieRinehart {
    let row = (0..ring.nvars()).map(|_| poly(rng, ring, 2, 2)).collect();
    FreeLieRinehart::from_brackets(ring, vec!["a1".into()], vec![row], std::iter::empty())
        .expect("shapes")
}

/// A random valid free Lie-Rinehart algebra of rank at most 3 over `ring`
/// (2 or 3 variables), drawn from the families above.
pub fn valid_lie_rinehart<R: Rng + ?Sized>(rng: &mut R, ring: &Ring) -> FreeLieRinehart {
    match rng.gen_range(0..3) {
        0 => jacobi_poisson(rng, ring).to_lie_rinehart(),
        1 => derivation_frame(rng, ring),
        _ => rank_one(rng, ring),
    }
}

/// An element of `U` with at most `max_terms` terms, L-degree at most
/// `max_l_degree` and coefficients of degree at most `coeff_degree`.
pub fn u_element<R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &Algebra,
    max_terms: usize,
    max_l_degree: u32,
    coeff_degree: u32,
) -> UElement {
    let d = algebra.rank();
    let mut terms = Terms::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut e = vec![0u32; d];
        for _ in 0..rng.gen_range(0..=max_l_degree) {
            e[rng.gen_range(0..d)] += 1;
        }
        let c = nonzero_poly(rng, algebra.ring(), 2, coeff_degree);
        let prev = terms.remove(&e).unwrap_or_else(|| Polynomial::zero(algebra.ring()));
        terms.insert(e, &prev + &c);
    }
    terms.retain(|_, c| !c.is_zero());
    UElement::from_terms(algebra, terms).expect("consistent algebra")
}

/// `P = 1 + T` with `T` weighted homogeneous for random positive weights,
/// together with a random `Q`. Requires characteristic 0 or a prime not
/// dividing the chosen degree; retries until the ring validates.
pub fn admissible_hypersurface<R: Rng + ?Sized>(rng: &mut R, ring: &Ring) -> (HypersurfaceRing, Polynomial) {
    loop {
        let weights = [rng.gen_range(1..=3i64), rng.gen_range(1..=3i64), rng.gen_range(1..=3i64)];
        let t = rng.gen_range(2..=7i64);
        let mut monomials = Vec::new();
        for a in 0..=t {
            for b in 0..=t {
                for c in 0..=t {
                    if a * weights[0] + b * weights[1] + c * weights[2] == t {
                        monomials.push(vec![a as u32, b as u32, c as u32]);
                    }
                }
            }
        }
        if monomials.is_empty() {
            continue;
        }
        monomials.shuffle(rng);
        let count = rng.gen_range(1..=monomials.len().min(3));
        let field = ring.field();
        let mut p = Polynomial::one(ring);
        for e in monomials.into_iter().take(count) {
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            p = &p + &Polynomial::from_terms(ring, [(e, field.from_i64(c))]);
        }
        if let Ok(h) = HypersurfaceRing::new(ring, &p, weights) {
            let q = poly(rng, ring, 3, 2);
            return (h, q);
        }
    }
}
