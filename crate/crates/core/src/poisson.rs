//! Poisson structures on polynomial rings.
//!
//! A structure is stored as the antisymmetric matrix `pi[i][j] = {x_i, x_j}`
//! and extended to arbitrary polynomials as a biderivation:
//! `{f, g} = sum_{i,j} pi[i][j] * df/dx_i * dg/dx_j`.
//!
//! The Jacobi identity only needs checking on variable triples. The
//! jacobiator of a biderivation bracket with antisymmetric `pi` is a
//! derivation in each argument, so it is determined by its values on the
//! generators, and it vanishes whenever two arguments coincide.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::lierinehart::FreeLieRinehart;
use crate::ring::{same_ring, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    ring: Ring,
    pi: Vec<Vec<Polynomial>>,
}

/// Outcome of [`PoissonStructure::check_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobiCheck {
    Pass,
    Fail {
        /// Variable indices `(i, j, k)`, `i < j < k`.
        triple: (usize, usize, usize),
        jacobiator: Polynomial,
    },
}

impl JacobiCheck {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiCheck::Pass)
    }
}

impl PoissonStructure {
    /// Builds the structure from its strictly upper-triangular entries
    /// `(i, j, {x_i, x_j})` with `i < j`; unspecified entries are zero.
    pub fn from_upper<I>(ring: &Ring, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Polynomial)>,
    {
        let n = ring.nvars();
        let mut pi = vec![vec![Polynomial::zero(ring); n]; n];
        for (i, j, p) in entries {
            if !same_ring(p.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if i >= j || j >= n {
                return Err(Error::Dimension(format!(
                    "entry ({i}, {j}) is not strictly upper triangular in {n} variables"
                )));
            }
            pi[j][i] = -&p;
            pi[i][j] = p;
        }
        Ok(PoissonStructure {
            ring: ring.clone(),
            pi,
        })
    }

    /// Builds the structure from a full matrix, checking antisymmetry.
    pub fn from_matrix(ring: &Ring, pi: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = ring.nvars();
        if pi.len() != n || pi.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("expected a {n}x{n} matrix")));
        }
        for (i, row) in pi.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !same_ring(p.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                if *p != -&pi[j][i] {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(PoissonStructure {
            ring: ring.clone(),
            pi,
        })
    }

    pub fn trivial(ring: &Ring) -> Self {
        PoissonStructure::from_upper(ring, std::iter::empty()).expect("empty entries")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.pi[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Polynomial>] {
        &self.pi
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let n = self.ring.nvars();
        let df: Vec<_> = (0..n).map(|i| f.partial(i)).collect();
        let dg: Vec<_> = (0..n).map(|j| g.partial(j)).collect();
        let mut out = Polynomial::zero(&self.ring);
        for (i, fi) in df.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in dg.iter().enumerate() {
                if i == j || gj.is_zero() || self.pi[i][j].is_zero() {
                    continue;
                }
                out = &out + &(&(&self.pi[i][j] * fi) * gj);
            }
        }
        Ok(out)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<Polynomial> {
        let a = self.bracket(f, &self.bracket(g, h)?)?;
        let b = self.bracket(g, &self.bracket(h, f)?)?;
        let c = self.bracket(h, &self.bracket(f, g)?)?;
        Ok(&(&a + &b) + &c)
    }

    pub fn check_jacobi(&self) -> JacobiCheck {
        let n = self.ring.nvars();
        let vars: Vec<_> = (0..n).map(|i| Polynomial::var(&self.ring, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = self
                        .jacobiator(&vars[i], &vars[j], &vars[k])
                        .expect("same ring");
                    if !jac.is_zero() {
                        return JacobiCheck::Fail {
                            triple: (i, j, k),
                            jacobiator: jac,
                        };
                    }
                }
            }
        }
        JacobiCheck::Pass
    }

    /// Components of the Hamiltonian derivation `{x_i, -}` in the basis
    /// `d/dx_1, ..., d/dx_n`, i.e. row `i` of the matrix.
    pub fn hamiltonian(&self, i: usize) -> &[Polynomial] {
        &self.pi[i]
    }

    /// The Lie-Rinehart algebra on the module of Kähler differentials, with
    /// basis `dx_1, ..., dx_n`, `[dx_i, dx_j] = d{x_i, x_j}` and anchor
    /// `dx_i -> {x_i, -}`.
    pub fn to_lie_rinehart(&self) -> FreeLieRinehart {
        let n = self.ring.nvars();
        let anchor = self.pi.clone();
        // s^i_{k,j} = d pi_ij / dx_k
        let mut structure = vec![vec![vec![Polynomial::zero(&self.ring); n]; n]; n];
        for (i, plane) in structure.iter_mut().enumerate() {
            for (k, row) in plane.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    *entry = self.pi[i][j].partial(k);
                }
            }
        }
        let names = self
            .ring
            .variables()
            .iter()
            .map(|v| format!("d{v}"))
            .collect();
        FreeLieRinehart::new(&self.ring, names, anchor, structure)
            .expect("dimensions consistent by construction")
    }
}

/// Divergence of `sum_m g_m d/dx_m` for the standard volume form.
pub fn div_std(components: &[Polynomial]) -> Polynomial {
    let ring = components
        .first()
        .map(|p| p.ring().clone())
        .expect("at least one component");
    components
        .iter()
        .enumerate()
        .fold(Polynomial::zero(&ring), |acc, (m, g)| &acc + &g.partial(m))
}

/// A vector of three polynomials over a ring in three variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec3 {
    components: [Polynomial; 3],
}

fn require_three(ring: &Ring) -> Result<()> {
    if ring.nvars() == 3 {
        Ok(())
    } else {
        Err(Error::WrongVariableCount {
            expected: 3,
            found: ring.nvars(),
        })
    }
}

impl Vec3 {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial) -> Result<Self> {
        require_three(a.ring())?;
        if !same_ring(a.ring(), b.ring()) || !same_ring(a.ring(), c.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(Vec3 {
            components: [a, b, c],
        })
    }

    pub fn zero(ring: &Ring) -> Result<Self> {
        let z = Polynomial::zero(ring);
        Vec3::new(z.clone(), z.clone(), z)
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.components
    }

    pub fn x(&self) -> &Polynomial {
        &self.components[0]
    }

    pub fn y(&self) -> &Polynomial {
        &self.components[1]
    }

    pub fn z(&self) -> &Polynomial {
        &self.components[2]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    fn check(&self, other: &Vec3) -> Result<()> {
        if same_ring(self.ring(), other.ring()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn dot(&self, other: &Vec3) -> Result<Polynomial> {
        self.check(other)?;
        let [a, b, c] = &self.components;
        let [u, v, w] = &other.components;
        Ok(&(&(a * u) + &(b * v)) + &(c * w))
    }

    pub fn cross(&self, other: &Vec3) -> Result<Vec3> {
        self.check(other)?;
        let [a, b, c] = &self.components;
        let [u, v, w] = &other.components;
        Ok(Vec3 {
            components: [&(b * w) - &(c * v), &(c * u) - &(a * w), &(a * v) - &(b * u)],
        })
    }

    pub fn scale_i64(&self, n: i64) -> Vec3 {
        Vec3 {
            components: self.components.clone().map(|p| p.scale_i64(n)),
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Vec3 {
        Vec3 {
            components: [
                f(&self.components[0]),
                f(&self.components[1]),
                f(&self.components[2]),
            ],
        }
    }

    pub fn grad(f: &Polynomial) -> Result<Vec3> {
        require_three(f.ring())?;
        Ok(Vec3 {
            components: [f.partial(0), f.partial(1), f.partial(2)],
        })
    }

    pub fn curl(&self) -> Vec3 {
        let [a, b, c] = &self.components;
        Vec3 {
            components: [
                &c.partial(1) - &b.partial(2),
                &a.partial(2) - &c.partial(0),
                &b.partial(0) - &a.partial(1),
            ],
        }
    }

    pub fn div(&self) -> Polynomial {
        div_std(&self.components)
    }

    /// The structure `{x,y} = P_z, {y,z} = P_x, {z,x} = P_y`. Jacobi is not
    /// checked here.
    pub fn to_poisson(&self) -> PoissonStructure {
        let [px, py, pz] = self.components.clone();
        let ring = self.ring().clone();
        PoissonStructure::from_upper(&ring, [(0, 1, pz), (1, 2, px), (0, 2, -py)])
            .expect("3 variables")
    }

    /// Integrability fast path: `P . curl(P) = 0`. For a structure built by
    /// [`Vec3::to_poisson`] the jacobiator of `(x, y, z)` equals
    /// `-P . curl(P)`.
    pub fn integrability_defect(&self) -> Polynomial {
        self.dot(&self.curl()).expect("same ring")
    }

    /// A potential `Q` with `grad(Q) = self` and zero constant term, or
    /// `None` when the curl is nonzero. Uses the radial homotopy: each
    /// monomial `m` of `P . (x, y, z)` contributes `m / deg(m)`.
    pub fn recover_potential(&self) -> Result<Option<Polynomial>> {
        let ring = self.ring().clone();
        if ring.field() != CoefficientField::Rationals {
            return Err(Error::CharacteristicZeroRequired);
        }
        if !self.curl().is_zero() {
            return Ok(None);
        }
        let radial = (0..3).fold(Polynomial::zero(&ring), |acc, i| {
            &acc + &(&self.components[i] * &Polynomial::var(&ring, i))
        });
        let field = ring.field();
        let q = Polynomial::from_terms(
            &ring,
            radial.terms().map(|(m, c)| {
                let inv = field
                    .from_fraction(&BigInt::from(1), &BigInt::from(m.degree()))
                    .expect("radial terms have positive degree");
                (m.0.clone(), c * &inv)
            }),
        );
        Ok(Some(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::PolyRing;

    fn ring(vars: &[&str]) -> Ring {
        PolyRing::new(vars, CoefficientField::Rationals).unwrap()
    }

    fn p(s: &str, r: &Ring) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    fn vec3(a: &str, b: &str, c: &str, r: &Ring) -> Vec3 {
        Vec3::new(p(a, r), p(b, r), p(c, r)).unwrap()
    }

    #[test]
    fn antisymmetric_completion() {
        let r = ring(&["x", "y"]);
        let ps = PoissonStructure::from_upper(&r, [(0, 1, p("x*y", &r))]).unwrap();
        assert_eq!(ps.entry(0, 1), &p("x*y", &r));
        assert_eq!(ps.entry(1, 0), &p("-x*y", &r));
        assert!(ps.entry(0, 0).is_zero());

        let other = ring(&["u", "v"]);
        assert_eq!(
            PoissonStructure::from_upper(&r, [(0, 1, p("u", &other))]),
            Err(Error::RingMismatch)
        );
        let bad = vec![vec![p("0", &r), p("x", &r)], vec![p("x", &r), p("0", &r)]];
        assert_eq!(
            PoissonStructure::from_matrix(&r, bad),
            Err(Error::NotAntisymmetric(0, 1))
        );
    }

    #[test]
    fn bracket_examples() {
        let r = ring(&["x", "y"]);
        let ps = PoissonStructure::from_upper(&r, [(0, 1, p("x*y", &r))]).unwrap();
        assert_eq!(ps.bracket(&p("x^2", &r), &p("y", &r)).unwrap(), p("2*x^2*y", &r));
        assert!(ps.bracket(&p("x^3 + y", &r), &p("1", &r)).unwrap().is_zero());

        let r3 = ring(&["x", "y", "z"]);
        let ps = vec3("0", "0", "x", &r3).to_poisson();
        assert!(ps.bracket(&p("y", &r3), &p("z", &r3)).unwrap().is_zero());
        assert_eq!(ps.bracket(&p("x", &r3), &p("y", &r3)).unwrap(), p("x", &r3));
    }

    #[test]
    fn jacobi_examples() {
        let r = ring(&["x", "y"]);
        let ps = PoissonStructure::from_upper(&r, [(0, 1, p("x^2 + y^3", &r))]).unwrap();
        assert!(ps.jacobiator(&p("x", &r), &p("y", &r), &p("x", &r)).unwrap().is_zero());
        assert!(ps.check_jacobi().passed());

        let r3 = ring(&["x", "y", "z"]);
        let bad = vec3("z", "x", "0", &r3).to_poisson();
        let (x, y, z) = (p("x", &r3), p("y", &r3), p("z", &r3));
        assert_eq!(bad.jacobiator(&x, &y, &z).unwrap(), p("-x", &r3));
        assert_eq!(
            bad.check_jacobi(),
            JacobiCheck::Fail {
                triple: (0, 1, 2),
                jacobiator: p("-x", &r3)
            }
        );
        let ok = vec3("0", "0", "x", &r3).to_poisson();
        assert!(ok.jacobiator(&x, &y, &z).unwrap().is_zero());
        assert!(vec3("y*z", "x*z", "x*y", &r3).to_poisson().check_jacobi().passed());
    }

    #[test]
    fn vector_calculus() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(
            vec3("1", "0", "0", &r).cross(&vec3("0", "1", "0", &r)).unwrap(),
            vec3("0", "0", "1", &r)
        );
        assert_eq!(
            vec3("0", "0", "1", &r).cross(&vec3("y*z", "x*z", "x*y", &r)).unwrap(),
            vec3("-x*z", "y*z", "0", &r)
        );
        assert_eq!(
            vec3("z", "x", "0", &r).dot(&vec3("0", "1", "1", &r)).unwrap(),
            p("x", &r)
        );
        assert_eq!(vec3("0", "0", "x", &r).curl(), vec3("0", "-1", "0", &r));
        assert!(Vec3::grad(&p("x^3*y + z^2*y - 7*x*z", &r)).unwrap().curl().is_zero());
        assert!(matches!(
            Vec3::grad(&p("x", &ring(&["x", "y"]))),
            Err(Error::WrongVariableCount { .. })
        ));

        let r2 = ring(&["x", "y"]);
        let ps = PoissonStructure::from_upper(&r2, [(0, 1, p("x*y", &r2))]).unwrap();
        assert_eq!(div_std(ps.hamiltonian(0)), p("x", &r2));
    }

    #[test]
    fn poisson3d_pattern() {
        let r = ring(&["x", "y", "z"]);
        let ps = Vec3::grad(&p("x*y*z", &r)).unwrap().to_poisson();
        assert_eq!(ps.entry(0, 1), &p("x*y", &r));
        assert_eq!(ps.entry(1, 2), &p("y*z", &r));
        assert_eq!(ps.entry(2, 0), &p("x*z", &r));
        assert_eq!(Vec3::zero(&r).unwrap().to_poisson(), PoissonStructure::trivial(&r));
    }

    #[test]
    fn potentials() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(
            vec3("y*z", "x*z", "x*y", &r).recover_potential().unwrap(),
            Some(p("x*y*z", &r))
        );
        assert_eq!(vec3("0", "0", "x", &r).recover_potential().unwrap(), None);
        assert_eq!(
            Vec3::zero(&r).unwrap().recover_potential().unwrap(),
            Some(Polynomial::zero(&r))
        );
        let f5 = PolyRing::new(&["x", "y", "z"], CoefficientField::prime(5).unwrap()).unwrap();
        assert_eq!(
            Vec3::zero(&f5).unwrap().recover_potential(),
            Err(Error::CharacteristicZeroRequired)
        );
    }

    #[test]
    fn lie_rinehart_from_poisson() {
        let r = ring(&["x", "y"]);
        let lr = PoissonStructure::from_upper(&r, [(0, 1, p("x*y", &r))])
            .unwrap()
            .to_lie_rinehart();
        let br = lr.basis_bracket(0, 1);
        assert_eq!(br.coeffs(), &[p("y", &r), p("x", &r)]);
        assert_eq!(lr.anchor_row(0), &[p("0", &r), p("x*y", &r)]);

        let r3 = ring(&["x", "y", "z"]);
        let lr = vec3("0", "0", "x", &r3).to_poisson().to_lie_rinehart();
        assert_eq!(lr.basis_bracket(0, 1).coeffs(), &[p("1", &r3), p("0", &r3), p("0", &r3)]);
        assert!(lr.basis_bracket(1, 2).is_zero());
        assert!(lr.basis_bracket(0, 2).is_zero());

        let trivial = PoissonStructure::trivial(&r).to_lie_rinehart();
        assert!(trivial.is_abelian_with_zero_anchor());
    }
}
