//! The enveloping algebra `U` of a free Lie-Rinehart algebra.
//!
//! Elements are kept in PBW normal form: a finite sum of terms
//! `s * a_1^{e_1} ... a_d^{e_d}` with the polynomial coefficient `s` on the
//! left and the generators in increasing index order. Products are
//! normalized with the rewriting rules
//!
//! ```text
//! a_i * s   -> s * a_i + a_i(s)
//! a_i * a_j -> a_j * a_i + [a_i, a_j]        (i > j)
//! ```
//!
//! Each rule lowers the measure (L-degree, generator inversions, scalars to
//! the right of a generator) in the lexicographic order, so normalization
//! terminates; associativity of the resulting product is property-tested and
//! cross-checked against the word-rewriting engine in [`rewrite`].

pub mod expr;
pub mod rewrite;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lierinehart::{FreeLieRinehart, LElement};
use crate::ring::{same_ring, Polynomial};

pub type Algebra = Arc<FreeLieRinehart>;

/// Normal-form terms: exponent vector over the basis of `L` to left coefficient.
pub type Terms = BTreeMap<Vec<u32>, Polynomial>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    algebra: Algebra,
    terms: Terms,
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_into(terms: &mut Terms, e: Vec<u32>, s: Polynomial) {
    if s.is_zero() {
        return;
    }
    match terms.get_mut(&e) {
        Some(c) => {
            let sum = &*c + &s;
            if sum.is_zero() {
                terms.remove(&e);
            } else {
                *c = sum;
            }
        }
        None => {
            terms.insert(e, s);
        }
    }
}

fn l_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl UElement {
    pub fn zero(algebra: &Algebra) -> Self {
        UElement {
            algebra: algebra.clone(),
            terms: Terms::new(),
        }
    }

    pub fn from_terms(algebra: &Algebra, terms: Terms) -> Result<Self> {
        let d = algebra.rank();
        let mut out = Terms::new();
        for (e, s) in terms {
            if e.len() != d {
                return Err(Error::Dimension(format!("exponent vector of length {}", e.len())));
            }
            if !same_ring(s.ring(), algebra.ring()) {
                return Err(Error::RingMismatch);
            }
            add_into(&mut out, e, s);
        }
        Ok(UElement {
            algebra: algebra.clone(),
            terms: out,
        })
    }

    pub fn scalar(algebra: &Algebra, s: Polynomial) -> Self {
        let mut terms = Terms::new();
        add_into(&mut terms, vec![0; algebra.rank()], s);
        UElement {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::scalar(algebra, Polynomial::one(algebra.ring()))
    }

    pub fn generator(algebra: &Algebra, i: usize) -> Self {
        let mut e = vec![0; algebra.rank()];
        e[i] = 1;
        let mut terms = Terms::new();
        terms.insert(e, Polynomial::one(algebra.ring()));
        UElement {
            algebra: algebra.clone(),
            terms,
        }
    }

    /// The image of `sum_i f_i a_i` in `U`.
    pub fn from_l_element(algebra: &Algebra, a: &LElement) -> Self {
        let mut terms = Terms::new();
        for (i, f) in a.coeffs().iter().enumerate() {
            let mut e = vec![0; algebra.rank()];
            e[i] = 1;
            add_into(&mut terms, e, f.clone());
        }
        UElement {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest L-degree among the terms; `None` for zero.
    pub fn l_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| l_degree(e)).max()
    }

    /// The component of L-degree zero.
    pub fn scalar_part(&self) -> Polynomial {
        self.terms
            .get(&vec![0; self.algebra.rank()])
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.algebra.ring()))
    }

    /// The terms of top L-degree (the principal symbol in `Sym_S(L)`).
    pub fn symbol(&self) -> Terms {
        match self.l_degree() {
            None => Terms::new(),
            Some(top) => self
                .terms
                .iter()
                .filter(|(e, _)| l_degree(e) == top)
                .map(|(e, s)| (e.clone(), s.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &UElement) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &UElement) -> Result<UElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, s) in &other.terms {
            add_into(&mut terms, e.clone(), s.clone());
        }
        Ok(UElement {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &UElement) -> Result<UElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UElement {
        UElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(e, s)| (e.clone(), -s)).collect(),
        }
    }

    /// Left multiplication by a polynomial; no reordering needed.
    pub fn scale_left(&self, s: &Polynomial) -> UElement {
        let mut terms = Terms::new();
        for (e, c) in &self.terms {
            add_into(&mut terms, e.clone(), s * c);
        }
        UElement {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    /// The product in `U`, in normal form.
    pub fn mul(&self, other: &UElement) -> Result<UElement> {
        self.check(other)?;
        let mut normalizer = Normalizer::new(&self.algebra);
        Ok(UElement {
            algebra: self.algebra.clone(),
            terms: normalizer.mul(&self.terms, &other.terms),
        })
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &UElement) -> Result<UElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> UElement {
        let mut acc = UElement::one(&self.algebra);
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Degree-zero and degree-one parts as `(s, sum_i f_i a_i)` when the
    /// element has L-degree at most one.
    pub fn as_affine(&self) -> Option<(Polynomial, LElement)> {
        if self.l_degree().unwrap_or(0) > 1 {
            return None;
        }
        let d = self.algebra.rank();
        let mut coeffs = vec![Polynomial::zero(self.algebra.ring()); d];
        for (e, s) in &self.terms {
            if let Some(i) = e.iter().position(|&x| x == 1) {
                coeffs[i] = s.clone();
            }
        }
        Some((self.scalar_part(), LElement::new(coeffs)))
    }
}

/// Sorting key for printing: higher L-degree first, then exponent vectors
/// in decreasing lexicographic order.
fn print_order(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    l_degree(b).cmp(&l_degree(a)).then_with(|| b.cmp(a))
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.algebra.names();
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| print_order(a, b));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let s = &self.terms[e];
                let mut factors = Vec::new();
                let is_scalar = e.iter().all(|&x| x == 0);
                if !s.is_one() || is_scalar {
                    factors.push(format!("({s})"));
                }
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => factors.push(names[i].clone()),
                        _ => factors.push(format!("{}^{}", names[i], k)),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Memoized PBW multiplication for one algebra.
pub(crate) struct Normalizer<'a> {
    lr: &'a FreeLieRinehart,
    memo: HashMap<(usize, Vec<u32>), Terms>,
}

impl<'a> Normalizer<'a> {
    pub(crate) fn new(lr: &'a FreeLieRinehart) -> Self {
        Normalizer {
            lr,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn mul(&mut self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (e, s) in a {
            let mut x = b.clone();
            for (i, &k) in e.iter().enumerate().rev() {
                for _ in 0..k {
                    x = self.gen_times(i, &x);
                }
            }
            for (f, t) in x {
                add_into(&mut out, f, s * &t);
            }
        }
        out
    }

    /// `a_i * x`.
    fn gen_times(&mut self, i: usize, x: &Terms) -> Terms {
        let mut out = Terms::new();
        for (f, t) in x {
            for (g, c) in self.gen_times_monomial(i, f) {
                add_into(&mut out, g, t * &c);
            }
            add_into(&mut out, f.clone(), self.lr.anchor_basis(i, t));
        }
        out
    }

    /// `a_i * a^f` for a normal monomial `a^f`.
    fn gen_times_monomial(&mut self, i: usize, f: &[u32]) -> Terms {
        let first = f.iter().position(|&x| x > 0);
        match first {
            Some(j) if j < i => {
                let key = (i, f.to_vec());
                if let Some(hit) = self.memo.get(&key) {
                    return hit.clone();
                }
                let mut rest = f.to_vec();
                rest[j] -= 1;
                // a_i a_j w = a_j (a_i w) + [a_i, a_j] w
                let inner = self.gen_times_monomial(i, &rest);
                let mut out = self.gen_times(j, &inner);
                for k in 0..self.lr.rank() {
                    let c = self.lr.structure_constant(i, k, j);
                    if c.is_zero() {
                        continue;
                    }
                    for (g, t) in self.gen_times_monomial(k, &rest) {
                        add_into(&mut out, g, c * &t);
                    }
                }
                self.memo.insert(key, out.clone());
                out
            }
            _ => {
                let mut g = f.to_vec();
                g[i] += 1;
                let mut out = Terms::new();
                out.insert(g, Polynomial::one(self.lr.ring()));
                out
            }
        }
    }
}

/// Images `nu(a_i)` of the generators under an `S`-fixing endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    images: Vec<UElement>,
}

/// First relation violated by a set of generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationWitness {
    /// `[nu(a_i), x_m] != a_i(x_m)`
    Anchor {
        generator: usize,
        variable: usize,
        lhs: String,
        rhs: String,
    },
    /// `[nu(a_i), nu(a_j)] != nu([a_i, a_j])`
    Bracket {
        i: usize,
        j: usize,
        lhs: String,
        rhs: String,
    },
}

impl fmt::Display for RelationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationWitness::Anchor {
                generator,
                variable,
                lhs,
                rhs,
            } => write!(
                f,
                "[nu(a{}), x{}] = {lhs} but anchor gives {rhs}",
                generator + 1,
                variable + 1
            ),
            RelationWitness::Bracket { i, j, lhs, rhs } => write!(
                f,
                "[nu(a{}), nu(a{})] = {lhs} but nu of the bracket is {rhs}",
                i + 1,
                j + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationCheck {
    Pass,
    Fail(RelationWitness),
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        matches!(self, RelationCheck::Pass)
    }
}

impl GeneratorImages {
    pub fn new(algebra: &Algebra, images: Vec<UElement>) -> Result<Self> {
        if images.len() != algebra.rank() {
            return Err(Error::Dimension(format!(
                "{} images for rank {}",
                images.len(),
                algebra.rank()
            )));
        }
        if images.iter().any(|u| !same_algebra(u.algebra(), algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(GeneratorImages { images })
    }

    pub fn identity(algebra: &Algebra) -> Self {
        GeneratorImages {
            images: (0..algebra.rank())
                .map(|i| UElement::generator(algebra, i))
                .collect(),
        }
    }

    /// `a_i -> a_i + c_i`.
    pub fn shifts(algebra: &Algebra, shifts: &[Polynomial]) -> Result<Self> {
        let images = shifts
            .iter()
            .enumerate()
            .map(|(i, c)| UElement::generator(algebra, i).add(&UElement::scalar(algebra, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, images)
    }

    pub fn images(&self) -> &[UElement] {
        &self.images
    }

    fn algebra(&self) -> &Algebra {
        self.images[0].algebra()
    }

    /// The free multiplicative extension fixing `S`:
    /// `s a^e -> s nu(a_1)^{e_1} ... nu(a_d)^{e_d}`.
    pub fn apply(&self, a: &UElement) -> Result<UElement> {
        let algebra = a.algebra().clone();
        if self.images.is_empty() {
            return Ok(a.clone());
        }
        if !same_algebra(&algebra, self.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut normalizer = Normalizer::new(&algebra);
        let mut out = Terms::new();
        for (e, s) in a.terms() {
            let mut acc = Terms::new();
            acc.insert(vec![0; algebra.rank()], s.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    acc = normalizer.mul(&acc, self.images[i].terms());
                }
            }
            for (f, t) in acc {
                add_into(&mut out, f, t);
            }
        }
        Ok(UElement { algebra, terms: out })
    }

    /// Checks the defining relations of `U` on the images: for every basis
    /// index `i` and variable `x_m`, `[nu(a_i), x_m] = a_i(x_m)`, and for
    /// `i < j`, `[nu(a_i), nu(a_j)] = nu([a_i, a_j])`. Passing means the
    /// images extend to a well-defined `S`-fixing algebra endomorphism.
    pub fn check_relations(&self) -> RelationCheck {
        if self.images.is_empty() {
            return RelationCheck::Pass;
        }
        let algebra = self.algebra().clone();
        let ring = algebra.ring().clone();
        for (i, img) in self.images.iter().enumerate() {
            for m in 0..ring.nvars() {
                let x = UElement::scalar(&algebra, Polynomial::var(&ring, m));
                let lhs = img.commutator(&x).expect("same algebra");
                let rhs = UElement::scalar(
                    &algebra,
                    algebra.anchor_basis(i, &Polynomial::var(&ring, m)),
                );
                if lhs != rhs {
                    return RelationCheck::Fail(RelationWitness::Anchor {
                        generator: i,
                        variable: m,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                let lhs = self.images[i]
                    .commutator(&self.images[j])
                    .expect("same algebra");
                let bracket = UElement::from_l_element(&algebra, &algebra.basis_bracket(i, j));
                let rhs = self.apply(&bracket).expect("same algebra");
                if lhs != rhs {
                    return RelationCheck::Fail(RelationWitness::Bracket {
                        i,
                        j,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        RelationCheck::Pass
    }

    /// The shift parts `c_i` when every image has the shape `a_i + c_i`
    /// with `c_i` in `S`.
    pub fn shift_parts(&self) -> Option<Vec<Polynomial>> {
        let algebra = self.algebra().clone();
        self.images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let (c, lin) = img.as_affine()?;
                (lin == algebra.basis(i)).then_some(c)
            })
            .collect()
    }

    /// For shift-shaped images `a_i -> a_i + c_i`, the inverse
    /// `a_i -> a_i - c_i`, verified to compose to the identity on the
    /// generators in both orders. `None` if the shape does not match or the
    /// compositions fail.
    pub fn shift_inverse(&self) -> Option<GeneratorImages> {
        if self.images.is_empty() {
            return Some(self.clone());
        }
        let algebra = self.algebra().clone();
        let shifts = self.shift_parts()?;
        let negated: Vec<Polynomial> = shifts.iter().map(|c| -c).collect();
        let inverse = GeneratorImages::shifts(&algebra, &negated).ok()?;
        for i in 0..algebra.rank() {
            let gen = UElement::generator(&algebra, i);
            let there = inverse.apply(&self.images[i]).ok()?;
            let back = self.apply(&inverse.images[i]).ok()?;
            if there != gen || back != gen {
                return None;
            }
        }
        Some(inverse)
    }
}
