//! Lie-Rinehart algebras that are free over a polynomial ring.
//!
//! With basis `a_1, ..., a_d` the algebra is described by
//!
//! * the anchor, a `d x n` matrix whose row `i` holds the coefficients of the
//!   derivation `a_i(-)` in `d/dx_1, ..., d/dx_n`;
//! * the structure tensor `s[i][j][k]`, with `[a_i, a_k] = sum_j s[i][j][k] a_j`.
//!
//! Brackets of general elements follow from the Leibniz rule
//! `[a, s b] = s [a, b] + a(s) b`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{same_ring, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLieRinehart {
    ring: Ring,
    names: Vec<String>,
    anchor: Vec<Vec<Polynomial>>,
    structure: Vec<Vec<Vec<Polynomial>>>,
}

/// An element `sum_i f_i a_i` of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LElement {
    coeffs: Vec<Polynomial>,
}

/// An element `sum_j g_j a_j^*` of the dual module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualForm {
    coeffs: Vec<Polynomial>,
}

/// Which axiom [`FreeLieRinehart::validate`] found violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `s[i][j][k] = -s[k][j][i]`
    Antisymmetry,
    /// Jacobi identity on a basis triple.
    Jacobi,
    /// `[a_i(-), a_k(-)] = [a_i, a_k](-)` on a variable.
    AnchorHomomorphism,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Jacobi => "jacobi",
            Axiom::AnchorHomomorphism => "anchor-homomorphism",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Pass,
    Fail {
        axiom: Axiom,
        /// Antisymmetry: `(i, j, k)`; Jacobi: `(i, j, k)`; anchor: `(i, k, m)`
        /// with `m` the variable index. Zero-based.
        indices: (usize, usize, usize),
        /// The nonzero defect, printed.
        defect: String,
    },
}

impl Validation {
    pub fn passed(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

impl LElement {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        LElement { coeffs }
    }

    pub fn zero(ring: &Ring, d: usize) -> Self {
        LElement {
            coeffs: vec![Polynomial::zero(ring); d],
        }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &LElement) -> LElement {
        LElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LElement) -> LElement {
        LElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Polynomial) -> LElement {
        LElement {
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
        }
    }
}

impl DualForm {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        DualForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, s: &Polynomial) -> DualForm {
        DualForm {
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
        }
    }

    pub fn add(&self, other: &DualForm) -> DualForm {
        DualForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl FreeLieRinehart {
    /// Assembles an algebra from raw data. Only shapes and rings are checked;
    /// use [`FreeLieRinehart::validate`] for the axioms.
    pub fn new(
        ring: &Ring,
        names: Vec<String>,
        anchor: Vec<Vec<Polynomial>>,
        structure: Vec<Vec<Vec<Polynomial>>>,
    ) -> Result<Self> {
        let d = names.len();
        let n = ring.nvars();
        if anchor.len() != d || anchor.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("anchor must be {d}x{n}")));
        }
        if structure.len() != d
            || structure
                .iter()
                .any(|plane| plane.len() != d || plane.iter().any(|row| row.len() != d))
        {
            return Err(Error::Dimension(format!("structure tensor must be {d}x{d}x{d}")));
        }
        let all = anchor
            .iter()
            .flatten()
            .chain(structure.iter().flatten().flatten());
        for p in all {
            if !same_ring(p.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(FreeLieRinehart {
            ring: ring.clone(),
            names,
            anchor,
            structure,
        })
    }

    /// Builds the structure tensor from the brackets `[a_i, a_k]` for `i < k`;
    /// the remaining entries follow by antisymmetry.
    pub fn from_brackets<I>(
        ring: &Ring,
        names: Vec<String>,
        anchor: Vec<Vec<Polynomial>>,
        brackets: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, LElement)>,
    {
        let d = names.len();
        let mut structure = vec![vec![vec![Polynomial::zero(ring); d]; d]; d];
        for (i, k, b) in brackets {
            if i >= k || k >= d || b.coeffs.len() != d {
                return Err(Error::Dimension(format!("bad bracket entry ({i}, {k})")));
            }
            for (j, c) in b.coeffs.into_iter().enumerate() {
                structure[k][j][i] = -&c;
                structure[i][j][k] = c;
            }
        }
        Self::new(ring, names, anchor, structure)
    }

    /// The abelian algebra of rank `d` with zero anchor.
    pub fn abelian(ring: &Ring, names: Vec<String>) -> Self {
        let d = names.len();
        let anchor = vec![vec![Polynomial::zero(ring); ring.nvars()]; d];
        Self::from_brackets(ring, names, anchor, std::iter::empty()).expect("shapes")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn anchor_row(&self, i: usize) -> &[Polynomial] {
        &self.anchor[i]
    }

    /// `s^i_{j,k}`, zero-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Polynomial {
        &self.structure[i][j][k]
    }

    pub fn is_abelian_with_zero_anchor(&self) -> bool {
        self.anchor.iter().flatten().all(Polynomial::is_zero)
            && self.structure.iter().flatten().flatten().all(Polynomial::is_zero)
    }

    pub fn basis(&self, i: usize) -> LElement {
        let mut coeffs = vec![Polynomial::zero(&self.ring); self.rank()];
        coeffs[i] = Polynomial::one(&self.ring);
        LElement { coeffs }
    }

    /// `[a_i, a_k]` expanded in the basis.
    pub fn basis_bracket(&self, i: usize, k: usize) -> LElement {
        LElement {
            coeffs: (0..self.rank()).map(|j| self.structure[i][j][k].clone()).collect(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.rank(),
            })
        }
    }

    fn check_poly(&self, s: &Polynomial) -> Result<()> {
        if same_ring(s.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_element(&self, coeffs: &[Polynomial]) -> Result<()> {
        if coeffs.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "element has {} coefficients, rank is {}",
                coeffs.len(),
                self.rank()
            )));
        }
        coeffs.iter().try_for_each(|c| self.check_poly(c))
    }

    /// `a_i(s)` for a basis element.
    pub fn anchor_basis(&self, i: usize, s: &Polynomial) -> Polynomial {
        self.anchor[i]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Polynomial::zero(&self.ring), |acc, (m, c)| &acc + &(c * &s.partial(m)))
    }

    /// `a(s) = sum_i f_i * a_i(s)`.
    pub fn anchor_apply(&self, a: &LElement, s: &Polynomial) -> Result<Polynomial> {
        self.check_element(&a.coeffs)?;
        self.check_poly(s)?;
        Ok(self.anchor_apply_unchecked(a, s))
    }

    fn anchor_apply_unchecked(&self, a: &LElement, s: &Polynomial) -> Polynomial {
        a.coeffs
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .fold(Polynomial::zero(&self.ring), |acc, (i, f)| {
                &acc + &(f * &self.anchor_basis(i, s))
            })
    }

    /// Components of the derivation `a(-)` in `d/dx_1, ..., d/dx_n`.
    pub fn anchor_components(&self, a: &LElement) -> Vec<Polynomial> {
        (0..self.ring.nvars())
            .map(|m| {
                a.coeffs
                    .iter()
                    .zip(&self.anchor)
                    .fold(Polynomial::zero(&self.ring), |acc, (f, row)| &acc + &(f * &row[m]))
            })
            .collect()
    }

    /// `[f a_i, g a_j] = fg [a_i, a_j] + f a_i(g) a_j - g a_j(f) a_i`,
    /// extended bilinearly.
    pub fn bracket_elements(&self, a: &LElement, b: &LElement) -> Result<LElement> {
        self.check_element(&a.coeffs)?;
        self.check_element(&b.coeffs)?;
        Ok(self.bracket_unchecked(a, b))
    }

    fn bracket_unchecked(&self, a: &LElement, b: &LElement) -> LElement {
        let d = self.rank();
        let mut out = LElement::zero(&self.ring, d);
        for (i, f) in a.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in b.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let fg = f * g;
                for (k, c) in out.coeffs.iter_mut().enumerate() {
                    let s = &self.structure[i][k][j];
                    if !s.is_zero() {
                        *c = &*c + &(&fg * s);
                    }
                }
                out.coeffs[j] = &out.coeffs[j] + &(f * &self.anchor_basis(i, g));
                out.coeffs[i] = &out.coeffs[i] - &(g * &self.anchor_basis(j, f));
            }
        }
        out
    }

    /// Checks antisymmetry of the structure tensor, the Jacobi identity on
    /// basis triples and that the anchor preserves brackets.
    pub fn validate(&self) -> Validation {
        let d = self.rank();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let defect = &self.structure[i][j][k] + &self.structure[k][j][i];
                    if !defect.is_zero() {
                        return Validation::Fail {
                            axiom: Axiom::Antisymmetry,
                            indices: (i, j, k),
                            defect: defect.to_string(),
                        };
                    }
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let jac = self
                        .bracket_unchecked(&a, &self.bracket_unchecked(&b, &c))
                        .add(&self.bracket_unchecked(&b, &self.bracket_unchecked(&c, &a)))
                        .add(&self.bracket_unchecked(&c, &self.bracket_unchecked(&a, &b)));
                    if !jac.is_zero() {
                        return Validation::Fail {
                            axiom: Axiom::Jacobi,
                            indices: (i, j, k),
                            defect: self.display_element(&jac),
                        };
                    }
                }
            }
        }
        for i in 0..d {
            for k in i + 1..d {
                let bracket = self.basis_bracket(i, k);
                for m in 0..self.ring.nvars() {
                    let x = Polynomial::var(&self.ring, m);
                    let lhs = &self.anchor_basis(i, &self.anchor_basis(k, &x))
                        - &self.anchor_basis(k, &self.anchor_basis(i, &x));
                    let rhs = self.anchor_apply_unchecked(&bracket, &x);
                    let defect = &lhs - &rhs;
                    if !defect.is_zero() {
                        return Validation::Fail {
                            axiom: Axiom::AnchorHomomorphism,
                            indices: (i, k, m),
                            defect: defect.to_string(),
                        };
                    }
                }
            }
        }
        Validation::Pass
    }

    /// Lie derivative of a dual form along `a_i`:
    /// `sum_j [a_i(g_j) a_j^* - g_j sum_k s^i_{j,k} a_k^*]`.
    pub fn lie_derivative_dual(&self, i: usize, phi: &DualForm) -> Result<DualForm> {
        self.check_index(i)?;
        self.check_element(&phi.coeffs)?;
        let d = self.rank();
        let mut out: Vec<Polynomial> = phi.coeffs.iter().map(|g| self.anchor_basis(i, g)).collect();
        for (j, g) in phi.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for (k, c) in out.iter_mut().enumerate().take(d) {
                let s = &self.structure[i][j][k];
                if !s.is_zero() {
                    *c = &*c - &(g * s);
                }
            }
        }
        Ok(DualForm { coeffs: out })
    }

    /// `Tr(ad_{a_i}) = sum_j s^i_{j,j}`.
    pub fn trace_ad_basis(&self, i: usize) -> Polynomial {
        (0..self.rank()).fold(Polynomial::zero(&self.ring), |acc, j| {
            &acc + &self.structure[i][j][j]
        })
    }

    /// The trace map on a general element,
    /// `sum_i (f_i Tr(ad_{a_i}) - a_i(f_i))`.
    pub fn trace_ad(&self, a: &LElement) -> Result<Polynomial> {
        self.check_element(&a.coeffs)?;
        Ok(a.coeffs
            .iter()
            .enumerate()
            .fold(Polynomial::zero(&self.ring), |acc, (i, f)| {
                &(&acc + &(f * &self.trace_ad_basis(i))) - &self.anchor_basis(i, f)
            }))
    }

    pub fn display_element(&self, a: &LElement) -> String {
        let parts: Vec<String> = a
            .coeffs
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| {
                if c.is_one() {
                    name.clone()
                } else {
                    format!("({c})*{name}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::parse::parse_poly;
    use crate::poisson::{PoissonStructure, Vec3};
    use crate::ring::PolyRing;

    fn ring(vars: &[&str]) -> Ring {
        PolyRing::new(vars, CoefficientField::Rationals).unwrap()
    }

    fn p(s: &str, r: &Ring) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    fn xy_algebra() -> (Ring, FreeLieRinehart) {
        let r = ring(&["x", "y"]);
        let lr = PoissonStructure::from_upper(&r, [(0, 1, p("x*y", &r))])
            .unwrap()
            .to_lie_rinehart();
        (r, lr)
    }

    fn el(lr: &FreeLieRinehart, parts: &[&str]) -> LElement {
        LElement::new(parts.iter().map(|s| p(s, lr.ring())).collect())
    }

    #[test]
    fn validation_examples() {
        let (_, lr) = xy_algebra();
        assert!(lr.validate().passed());
        let r = ring(&["x", "y"]);
        assert!(FreeLieRinehart::abelian(&r, vec!["a1".into(), "a2".into()])
            .validate()
            .passed());

        // s^1_{1,2} = 1 without the matching s^2_{1,1} = -1
        let zero = Polynomial::zero(&r);
        let mut structure = vec![vec![vec![zero.clone(); 2]; 2]; 2];
        structure[0][0][1] = Polynomial::one(&r);
        let anchor = vec![vec![zero.clone(); 2]; 2];
        let broken =
            FreeLieRinehart::new(&r, vec!["a1".into(), "a2".into()], anchor, structure).unwrap();
        match broken.validate() {
            Validation::Fail { axiom, indices, .. } => {
                assert_eq!(axiom, Axiom::Antisymmetry);
                assert_eq!(indices, (0, 0, 1));
            }
            Validation::Pass => panic!("broken tensor passed"),
        }
    }

    #[test]
    fn anchor_examples() {
        let (r, lr) = xy_algebra();
        assert_eq!(lr.anchor_apply(&lr.basis(0), &p("y", &r)).unwrap(), p("x*y", &r));
        assert!(lr.anchor_apply(&lr.basis(1), &p("1", &r)).unwrap().is_zero());

        let r3 = ring(&["x", "y", "z"]);
        let lr3 = Vec3::new(p("0", &r3), p("0", &r3), p("x", &r3))
            .unwrap()
            .to_poisson()
            .to_lie_rinehart();
        assert_eq!(lr3.anchor_apply(&lr3.basis(1), &p("x", &r3)).unwrap(), p("-x", &r3));
        assert_eq!(
            lr.anchor_apply(&lr.basis(0), &p("x", &r3)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn bracket_examples() {
        let (_, lr) = xy_algebra();
        let a = el(&lr, &["x^2 + y", "3*x*y"]);
        assert!(lr.bracket_elements(&a, &a).unwrap().is_zero());
        assert_eq!(
            lr.bracket_elements(&lr.basis(0), &lr.basis(1)).unwrap(),
            el(&lr, &["y", "x"])
        );
        let xdx = el(&lr, &["x", "0"]);
        assert_eq!(
            lr.bracket_elements(&xdx, &lr.basis(1)).unwrap(),
            el(&lr, &["2*x*y", "x^2"])
        );
    }

    #[test]
    fn dual_lie_derivative() {
        let r = ring(&["x", "y"]);
        let ab = FreeLieRinehart::abelian(&r, vec!["a1".into(), "a2".into()]);
        let phi = DualForm::new(vec![p("x", &r), p("y^2", &r)]);
        assert!(ab.lie_derivative_dual(0, &phi).unwrap().is_zero());
        assert!(matches!(
            ab.lie_derivative_dual(2, &phi),
            Err(Error::IndexOutOfRange { .. })
        ));

        let (r, lr) = xy_algebra();
        let dx_star = DualForm::new(vec![p("1", &r), p("0", &r)]);
        let dy_star = DualForm::new(vec![p("0", &r), p("1", &r)]);
        assert_eq!(
            lr.lie_derivative_dual(0, &dx_star).unwrap(),
            DualForm::new(vec![p("0", &r), p("-y", &r)])
        );
        assert_eq!(
            lr.lie_derivative_dual(0, &dy_star).unwrap(),
            DualForm::new(vec![p("0", &r), p("-x", &r)])
        );
    }

    #[test]
    fn dual_pairing_formula() {
        // (lambda_{a_i}(phi))(a_k) = a_i(phi(a_k)) - phi([a_i, a_k])
        let (r, lr) = xy_algebra();
        let phi = DualForm::new(vec![p("x^2", &r), p("x + y", &r)]);
        let pair = |f: &DualForm, a: &LElement| {
            f.coeffs()
                .iter()
                .zip(a.coeffs())
                .fold(Polynomial::zero(&r), |acc, (g, c)| &acc + &(g * c))
        };
        for i in 0..2 {
            let lam = lr.lie_derivative_dual(i, &phi).unwrap();
            for k in 0..2 {
                let lhs = pair(&lam, &lr.basis(k));
                let rhs = &lr.anchor_basis(i, &pair(&phi, &lr.basis(k)))
                    - &pair(&phi, &lr.basis_bracket(i, k));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_examples() {
        let (r, lr) = xy_algebra();
        assert_eq!(lr.trace_ad_basis(0), p("x", &r));
        assert_eq!(lr.trace_ad_basis(1), p("-y", &r));
        let ab = FreeLieRinehart::abelian(&r, vec!["a1".into()]);
        assert!(ab.trace_ad(&LElement::new(vec![p("x^3", &r)])).unwrap().is_zero());

        let r3 = ring(&["x", "y", "z"]);
        let pv = Vec3::new(p("0", &r3), p("0", &r3), p("x", &r3)).unwrap();
        let lr3 = pv.to_poisson().to_lie_rinehart();
        let traces: Vec<_> = (0..3).map(|i| lr3.trace_ad_basis(i)).collect();
        assert_eq!(traces, pv.curl().components().to_vec());
    }
}
