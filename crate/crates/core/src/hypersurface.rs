//! Weighted-homogeneous surfaces `S = k[x,y,z]/(P)` with `P = 1 + T`.
//!
//! Differential forms are handled through free-module representatives over
//! the ambient ring, in the basis `dx, dy, dz` and their wedges, with every
//! coefficient reduced modulo `P`. Equality in `Λ^• Ω_{S/k}` is decided with
//! the weighted Euler identity
//!
//! ```text
//! p x P_x + q y P_y + r z P_z = -t   (mod P)
//! ```
//!
//! which gives an explicit solve for membership in `S dP`, and identifies
//! `Λ^2 Ω` with `S` through the volume form
//! `ω_S = p x dy∧dz + q y dz∧dx + r z dx∧dy`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poisson::{PoissonStructure, Vec3};
use crate::ring::{same_ring, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceRing {
    ambient: Ring,
    p: Polynomial,
    weights: [i64; 3],
    weighted_degree: i64,
    t: Coeff,
    t_inv: Coeff,
    grad: [Polynomial; 3],
}

impl HypersurfaceRing {
    /// Validates `P = 1 + T` with `T` weighted homogeneous of unit degree and
    /// checks the Euler identity by reduction.
    pub fn new(ambient: &Ring, p: &Polynomial, weights: [i64; 3]) -> Result<Self> {
        if ambient.nvars() != 3 {
            return Err(Error::WrongVariableCount {
                expected: 3,
                found: ambient.nvars(),
            });
        }
        if !same_ring(p.ring(), ambient) {
            return Err(Error::RingMismatch);
        }
        let field = ambient.field();
        if !p.constant_term().is_one() {
            return Err(Error::InvalidHypersurface(format!(
                "constant term of P is {}, expected 1",
                p.constant_term()
            )));
        }
        let t_poly = p - &Polynomial::one(ambient);
        let mut degree = None;
        for (m, _) in t_poly.sorted_terms() {
            let w: i64 = m.0.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum();
            match degree {
                None => degree = Some(w),
                Some(d) if d != w => {
                    return Err(Error::InvalidHypersurface(format!(
                        "weighted degrees {d} and {w} differ"
                    )))
                }
                _ => {}
            }
        }
        let Some(weighted_degree) = degree else {
            return Err(Error::InvalidHypersurface("T = P - 1 is zero".into()));
        };
        let t = field.from_i64(weighted_degree);
        let Some(t_inv) = t.inv() else {
            return Err(Error::InvalidHypersurface(format!(
                "t = {weighted_degree} is not a unit in {field}"
            )));
        };
        let grad = [p.partial(0), p.partial(1), p.partial(2)];
        let h = HypersurfaceRing {
            ambient: ambient.clone(),
            p: p.clone(),
            weights,
            weighted_degree,
            t,
            t_inv,
            grad,
        };
        let euler = h.euler_sum();
        if euler != Polynomial::constant(ambient, -&h.t) {
            return Err(Error::InvalidHypersurface(format!(
                "Euler identity reduces to {euler}, expected {}",
                -&h.t
            )));
        }
        Ok(h)
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn weights(&self) -> [i64; 3] {
        self.weights
    }

    /// The weighted degree `t` as an integer.
    pub fn weighted_degree(&self) -> i64 {
        self.weighted_degree
    }

    pub fn t(&self) -> &Coeff {
        &self.t
    }

    /// `(P_x, P_y, P_z)`.
    pub fn grad_p(&self) -> &[Polynomial; 3] {
        &self.grad
    }

    pub fn grad_p_vec(&self) -> Vec3 {
        let [a, b, c] = self.grad.clone();
        Vec3::new(a, b, c).expect("three variables")
    }

    fn weight(&self, i: usize) -> Polynomial {
        Polynomial::from_i64(&self.ambient, self.weights[i])
    }

    /// `qreduce(p x P_x + q y P_y + r z P_z)`; equals `-t` for a valid ring.
    pub fn euler_sum(&self) -> Polynomial {
        let sum = (0..3).fold(Polynomial::zero(&self.ambient), |acc, i| {
            &acc + &(&(&self.weight(i) * &Polynomial::var(&self.ambient, i)) * &self.grad[i])
        });
        self.reduce(&sum)
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        f.remainder(&self.p).expect("P is nonzero and in the ambient ring")
    }

    /// Normal form modulo `P`.
    pub fn qreduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ambient) {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(f))
    }

    pub fn qequal(&self, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        Ok(self.qreduce(&f.try_sub(g)?)?.is_zero())
    }

    fn check_form(&self, w: &KForm) -> Result<()> {
        if w.components.iter().all(|c| same_ring(c.ring(), &self.ambient)) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Builds a form from free-module components, reducing them modulo `P`.
    pub fn form(&self, degree: usize, components: Vec<Polynomial>) -> Result<KForm> {
        if degree > 3 {
            return Err(Error::FormDegree(format!("degree {degree} exceeds 3")));
        }
        if components.len() != basis(degree).len() {
            return Err(Error::FormDegree(format!(
                "degree {degree} form needs {} components",
                basis(degree).len()
            )));
        }
        let components = components
            .iter()
            .map(|c| self.qreduce(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(KForm { degree, components })
    }

    pub fn zero_form(&self, degree: usize) -> Result<KForm> {
        self.form(degree, vec![Polynomial::zero(&self.ambient); basis(degree.min(3)).len()])
    }

    /// `ω_S = p x dy∧dz + q y dz∧dx + r z dx∧dy`.
    pub fn volume_form(&self) -> KForm {
        let comps = (0..3)
            .map(|i| &self.weight(i) * &Polynomial::var(&self.ambient, i))
            .collect();
        self.form(2, comps).expect("degree 2")
    }

    /// `dP = P_x dx + P_y dy + P_z dz`.
    pub fn dp(&self) -> KForm {
        self.form(1, self.grad.to_vec()).expect("degree 1")
    }

    pub fn wedge(&self, a: &KForm, b: &KForm) -> Result<KForm> {
        self.check_form(a)?;
        self.check_form(b)?;
        let degree = a.degree + b.degree;
        if degree > 3 {
            return Err(Error::FormDegree(format!(
                "wedge of degrees {} and {} exceeds 3",
                a.degree, b.degree
            )));
        }
        let mut out = BTreeMap::new();
        for (ma, fa) in a.to_masks() {
            for (mb, fb) in b.to_masks() {
                if ma & mb != 0 {
                    continue;
                }
                let sign = wedge_sign(ma, mb);
                accumulate(&mut out, ma | mb, (&fa * &fb).scale_i64(sign));
            }
        }
        Ok(self.collect_masks(degree, out))
    }

    /// Interior product `ι_∂ ω`.
    pub fn contract(&self, d: &HDerivation, w: &KForm) -> Result<KForm> {
        self.check_form(w)?;
        if w.degree == 0 {
            return Err(Error::FormDegree("cannot contract a 0-form".into()));
        }
        let mut out = BTreeMap::new();
        for (m, f) in w.to_masks() {
            for (r, v) in bits(m).into_iter().enumerate() {
                let sign = if r % 2 == 0 { 1 } else { -1 };
                accumulate(&mut out, m & !(1 << v), (&f * &d.components[v]).scale_i64(sign));
            }
        }
        Ok(self.collect_masks(w.degree - 1, out))
    }

    /// Exterior derivative of a representative.
    pub fn ext_d(&self, w: &KForm) -> Result<KForm> {
        self.check_form(w)?;
        if w.degree == 3 {
            return Err(Error::FormDegree("d of a 3-form leaves the degree range".into()));
        }
        let mut out = BTreeMap::new();
        for (m, f) in w.to_masks() {
            for v in 0..3 {
                if m & (1 << v) != 0 {
                    continue;
                }
                let below = bits(m).into_iter().filter(|&b| b < v).count();
                let sign = if below % 2 == 0 { 1 } else { -1 };
                accumulate(&mut out, m | (1 << v), f.partial(v).scale_i64(sign));
            }
        }
        Ok(self.collect_masks(w.degree + 1, out))
    }

    /// Cartan formula `L_∂ ω = ι_∂ dω + d ι_∂ ω`; the first term is dropped
    /// for 3-forms and the second for 0-forms.
    pub fn lie_derivative(&self, d: &HDerivation, w: &KForm) -> Result<KForm> {
        self.check_form(w)?;
        let first = if w.degree < 3 {
            Some(self.contract(d, &self.ext_d(w)?)?)
        } else {
            None
        };
        let second = if w.degree > 0 {
            Some(self.ext_d(&self.contract(d, w)?)?)
        } else {
            None
        };
        match (first, second) {
            (Some(a), Some(b)) => Ok(a.add(&b, self)),
            (Some(a), None) | (None, Some(a)) => Ok(a),
            (None, None) => unreachable!(),
        }
    }

    /// Whether `f - g` lies in `S dP`. The only candidate multiplier is
    /// `h = -t^{-1} (p x u_x + q y u_y + r z u_z)` for `u = f - g`, since
    /// contracting `h dP` with the weighted Euler derivation gives `-t h`.
    pub fn oneform_equiv_mod_dp(&self, f: &KForm, g: &KForm) -> Result<bool> {
        if f.degree != 1 || g.degree != 1 {
            return Err(Error::FormDegree("expected 1-forms".into()));
        }
        self.check_form(f)?;
        self.check_form(g)?;
        let u: Vec<Polynomial> = f.components.iter().zip(&g.components).map(|(a, b)| a - b).collect();
        let h = self.dp_multiplier(&u);
        Ok((0..3).all(|i| self.reduce(&(&u[i] - &(&h * &self.grad[i]))).is_zero()))
    }

    fn dp_multiplier(&self, u: &[Polynomial]) -> Polynomial {
        let euler = (0..3).fold(Polynomial::zero(&self.ambient), |acc, i| {
            &acc + &(&(&self.weight(i) * &Polynomial::var(&self.ambient, i)) * &u[i])
        });
        self.reduce(&euler.scale(&-&self.t_inv))
    }

    /// `g` with `ω = g ω_S` in `Λ^2 Ω`: for `A dy∧dz + B dz∧dx + C dx∧dy`,
    /// `g = -t^{-1} (A P_x + B P_y + C P_z)` modulo `P`.
    pub fn twoform_to_volume_ratio(&self, w: &KForm) -> Result<Polynomial> {
        if w.degree != 2 {
            return Err(Error::FormDegree("expected a 2-form".into()));
        }
        self.check_form(w)?;
        let dot = (0..3).fold(Polynomial::zero(&self.ambient), |acc, i| {
            &acc + &(&w.components[i] * &self.grad[i])
        });
        Ok(self.reduce(&dot.scale(&-&self.t_inv)))
    }

    /// `div(∂)` defined by `L_∂ ω_S = div(∂) ω_S`.
    pub fn divergence(&self, d: &HDerivation) -> Result<Polynomial> {
        let lie = self.lie_derivative(d, &self.volume_form())?;
        self.twoform_to_volume_ratio(&lie)
    }

    /// `δ_x = P_z ∂/∂y - P_y ∂/∂z`, `δ_y = P_x ∂/∂z - P_z ∂/∂x`,
    /// `δ_z = P_y ∂/∂x - P_x ∂/∂y`, indexed by 0, 1, 2.
    pub fn delta(&self, i: usize) -> HDerivation {
        let z = Polynomial::zero(&self.ambient);
        let [px, py, pz] = self.grad.clone();
        let comps = match i {
            0 => [z, pz, -py],
            1 => [-pz, z, px],
            2 => [py, -px, z],
            _ => panic!("delta index {i} out of range"),
        };
        HDerivation::new(self, comps).expect("δ derivations preserve (P)")
    }

    /// The bracket `{x,y} = Q P_z, {y,z} = Q P_x, {z,x} = Q P_y` on `S`.
    pub fn nambu_bracket(&self, q: &Polynomial) -> Result<NambuBracket> {
        if !same_ring(q.ring(), &self.ambient) {
            return Err(Error::RingMismatch);
        }
        let [px, py, pz] = &self.grad;
        let xy = self.reduce(&(q * pz));
        let yz = self.reduce(&(q * px));
        let zx = self.reduce(&(q * py));
        let hamiltonians = [0, 1, 2].map(|i| self.delta(i).scale(q, self));
        Ok(NambuBracket {
            q: q.clone(),
            xy,
            yz,
            zx,
            hamiltonians,
        })
    }

    /// `(div{x,-}, div{y,-}, div{z,-})` by the closed formula: the components
    /// of `grad(Q) × grad(P)`, reduced modulo `P`.
    pub fn div_hamiltonian_closed_form(&self, q: &Polynomial) -> Result<Vec3> {
        let cross = Vec3::grad(q)?.cross(&self.grad_p_vec())?;
        Ok(cross.map(|c| self.reduce(c)))
    }

    fn collect_masks(&self, degree: usize, masks: BTreeMap<u8, Polynomial>) -> KForm {
        let components = basis(degree)
            .iter()
            .map(|&(m, sign)| {
                masks
                    .get(&m)
                    .map(|f| self.reduce(&f.scale_i64(sign)))
                    .unwrap_or_else(|| Polynomial::zero(&self.ambient))
            })
            .collect();
        KForm { degree, components }
    }
}

fn accumulate(map: &mut BTreeMap<u8, Polynomial>, mask: u8, f: Polynomial) {
    match map.get_mut(&mask) {
        Some(g) => *g = &*g + &f,
        None => {
            map.insert(mask, f);
        }
    }
}

fn bits(mask: u8) -> Vec<usize> {
    (0..3).filter(|&v| mask & (1 << v) != 0).collect()
}

fn wedge_sign(a: u8, b: u8) -> i64 {
    let inversions = bits(a)
        .iter()
        .map(|&i| bits(b).iter().filter(|&&j| j < i).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Basis wedges per degree as `(sorted mask, sign)`; bit 0 is `dx`.
/// Degree 2 uses the cyclic basis `dy∧dz, dz∧dx, dx∧dy`.
fn basis(degree: usize) -> &'static [(u8, i64)] {
    match degree {
        0 => &[(0b000, 1)],
        1 => &[(0b001, 1), (0b010, 1), (0b100, 1)],
        2 => &[(0b110, 1), (0b101, -1), (0b011, 1)],
        3 => &[(0b111, 1)],
        _ => &[],
    }
}

/// A differential form of degree 0..=3 given by reduced free-module
/// components: `[f]`, `[dx, dy, dz]`, `[dy∧dz, dz∧dx, dx∧dy]` or
/// `[dx∧dy∧dz]` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    components: Vec<Polynomial>,
}

impl KForm {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    fn to_masks(&self) -> Vec<(u8, Polynomial)> {
        basis(self.degree)
            .iter()
            .zip(&self.components)
            .map(|(&(m, sign), f)| (m, f.scale_i64(sign)))
            .collect()
    }

    pub fn add(&self, other: &KForm, h: &HypersurfaceRing) -> KForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        KForm {
            degree: self.degree,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| h.reduce(&(a + b)))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial, h: &HypersurfaceRing) -> KForm {
        KForm {
            degree: self.degree,
            components: self.components.iter().map(|c| h.reduce(&(f * c))).collect(),
        }
    }
}

/// A derivation of the ambient ring preserving `(P)`, given by its values
/// on `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDerivation {
    components: [Polynomial; 3],
}

impl HDerivation {
    pub fn new(h: &HypersurfaceRing, components: [Polynomial; 3]) -> Result<Self> {
        if components.iter().any(|c| !same_ring(c.ring(), &h.ambient)) {
            return Err(Error::RingMismatch);
        }
        let d = HDerivation {
            components: components.map(|c| h.reduce(&c)),
        };
        if !h.reduce(&d.apply(&h.p)).is_zero() {
            return Err(Error::NotIdealPreserving);
        }
        Ok(d)
    }

    pub fn zero(h: &HypersurfaceRing) -> Self {
        let z = Polynomial::zero(&h.ambient);
        HDerivation {
            components: [z.clone(), z.clone(), z],
        }
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.components
    }

    /// `∂(f)` in the ambient ring (not reduced).
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        (0..3).fold(Polynomial::zero(f.ring()), |acc, i| {
            &acc + &(&self.components[i] * &f.partial(i))
        })
    }

    pub fn scale(&self, f: &Polynomial, h: &HypersurfaceRing) -> HDerivation {
        HDerivation {
            components: self.components.clone().map(|c| h.reduce(&(f * &c))),
        }
    }
}

/// The bracket of [`HypersurfaceRing::nambu_bracket`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NambuBracket {
    pub q: Polynomial,
    /// `{x,y}` reduced.
    pub xy: Polynomial,
    /// `{y,z}` reduced.
    pub yz: Polynomial,
    /// `{z,x}` reduced.
    pub zx: Polynomial,
    /// `{x,-} = Q δ_x`, `{y,-} = Q δ_y`, `{z,-} = Q δ_z`.
    pub hamiltonians: [HDerivation; 3],
}

impl NambuBracket {
    /// The reduced bracket viewed as a structure on the ambient ring; it
    /// satisfies Jacobi modulo `P`.
    pub fn as_poisson(&self) -> PoissonStructure {
        let ring = self.xy.ring().clone();
        PoissonStructure::from_upper(
            &ring,
            [
                (0, 1, self.xy.clone()),
                (1, 2, self.yz.clone()),
                (0, 2, -&self.zx),
            ],
        )
        .expect("three variables")
    }

    /// Bracket of two functions, reduced modulo `P`.
    pub fn bracket(&self, h: &HypersurfaceRing, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let b = self.as_poisson().bracket(f, g)?;
        h.qreduce(&b)
    }
}
