//! Nakayama automorphisms `ν(s) = s`, `ν(a) = a + c_a` with `c_a` in `S`.
//!
//! * Free `L` over a polynomial ring: `c_i = Tr(ad_{a_i}) + div(a_i(-))`.
//! * Poisson structures (`L` = Kähler differentials): `c_i = 2 div({x_i,-})`.
//! * Nambu hypersurfaces: `(c_x, c_y, c_z) = 2 grad(Q) × grad(P)` modulo `P`.
//!
//! Divergences on polynomial rings are taken with respect to the standard
//! volume form `dx_1 ∧ ... ∧ dx_n`, so `div(Σ g_m ∂/∂x_m) = Σ ∂g_m/∂x_m`.
//! A different volume form changes `ν` by an inner automorphism.
//!
//! The enveloping algebra of a free `L` has units `k^×` only, so it has no
//! nontrivial inner automorphisms and is Calabi-Yau exactly when every
//! shift vanishes.

use std::fmt;
use std::sync::Arc;

use crate::envelope::{GeneratorImages, RelationCheck};
use crate::error::{Error, Result};
use crate::hypersurface::HypersurfaceRing;
use crate::lierinehart::{FreeLieRinehart, Validation};
use crate::poisson::{div_std, JacobiCheck, PoissonStructure};
use crate::ring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftKind {
    /// A verified algebra automorphism of `U`.
    Automorphism,
    /// Images of the generators only (hypersurface case, `L` not free).
    GeneratorImages,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaResult {
    pub kind: ShiftKind,
    pub generators: Vec<String>,
    /// `c_i` with `ν(a_i) = a_i + c_i`.
    pub shifts: Vec<Polynomial>,
    pub checks: Vec<Check>,
    pub verified: bool,
    pub calabi_yau: bool,
    pub reason: String,
}

impl fmt::Display for NakayamaResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, c) in self.generators.iter().zip(&self.shifts) {
            writeln!(f, "nu({g}) = {g} + ({c})")?;
        }
        for check in &self.checks {
            let mark = if check.passed { "ok" } else { "FAILED" };
            writeln!(f, "check {}: {mark}", check.name)?;
        }
        writeln!(f, "verified: {}", self.verified)?;
        write!(f, "calabi-yau: {} ({})", self.calabi_yau, self.reason)
    }
}

fn verdict(generators: &[String], shifts: &[Polynomial], undoubled: &[Polynomial]) -> (bool, String) {
    if let Some((g, c)) = generators.iter().zip(shifts).find(|(_, c)| !c.is_zero()) {
        return (false, format!("nonzero shift on {g}: {c}"));
    }
    let char2 = shifts
        .first()
        .is_some_and(|c| c.ring().field().characteristic() == 2);
    if char2 && undoubled.iter().any(|c| !c.is_zero()) {
        (
            true,
            "characteristic 2: the doubled divergence terms vanish".to_string(),
        )
    } else {
        (true, "trace and divergence data vanish".to_string())
    }
}

/// Relation and inverse checks for shift images in the free case.
fn verify_shifts(lr: &FreeLieRinehart, shifts: &[Polynomial]) -> Vec<Check> {
    let algebra = Arc::new(lr.clone());
    let nu = GeneratorImages::shifts(&algebra, shifts).expect("rank matches");
    let relations = nu.check_relations();
    let inverse = nu.shift_inverse();
    vec![
        Check {
            name: "relations",
            passed: relations.passed(),
            detail: match relations {
                RelationCheck::Pass => "images satisfy the defining relations of U".into(),
                RelationCheck::Fail(w) => w.to_string(),
            },
        },
        Check {
            name: "inverse",
            passed: inverse.is_some(),
            detail: match inverse {
                Some(_) => "a_i - c_i composes to the identity both ways".into(),
                None => "no shift inverse".into(),
            },
        },
    ]
}

/// `ν(a_i) = a_i + Tr(ad_{a_i}) + div(a_i(-))`.
pub fn nakayama_free(lr: &FreeLieRinehart) -> Result<NakayamaResult> {
    if let Validation::Fail {
        axiom,
        indices,
        defect,
    } = lr.validate()
    {
        return Err(Error::InvalidLieRinehart(format!(
            "{axiom} fails at {indices:?}: {defect}"
        )));
    }
    let traces: Vec<_> = (0..lr.rank()).map(|i| lr.trace_ad_basis(i)).collect();
    let divs: Vec<_> = (0..lr.rank()).map(|i| div_std(lr.anchor_row(i))).collect();
    let shifts: Vec<_> = traces.iter().zip(&divs).map(|(a, b)| a + b).collect();
    let checks = verify_shifts(lr, &shifts);
    let verified = checks.iter().all(|c| c.passed);
    let mut parts = traces.clone();
    parts.extend(divs);
    let (calabi_yau, reason) = verdict(lr.names(), &shifts, &parts);
    Ok(NakayamaResult {
        kind: ShiftKind::Automorphism,
        generators: lr.names().to_vec(),
        shifts,
        checks,
        verified,
        calabi_yau,
        reason,
    })
}

/// `ν(dx_i) = dx_i + 2 div({x_i,-})`.
pub fn nakayama_poisson(ps: &PoissonStructure) -> Result<NakayamaResult> {
    if let JacobiCheck::Fail { triple, jacobiator } = ps.check_jacobi() {
        let vars = ps.ring().variables();
        return Err(Error::JacobiFailure(format!(
            "jacobiator({}, {}, {}) = {jacobiator}",
            vars[triple.0], vars[triple.1], vars[triple.2]
        )));
    }
    let n = ps.ring().nvars();
    let divs: Vec<_> = (0..n).map(|i| div_std(ps.hamiltonian(i))).collect();
    let shifts: Vec<_> = divs.iter().map(|d| d.scale_i64(2)).collect();
    let lr = ps.to_lie_rinehart();
    let checks = verify_shifts(&lr, &shifts);
    let verified = checks.iter().all(|c| c.passed);
    let (calabi_yau, mut reason) = verdict(lr.names(), &shifts, &divs);
    if calabi_yau && divs.iter().all(Polynomial::is_zero) {
        // in three variables the shifts are 2 curl(P)
        reason = if n == 3 {
            "Poisson bracket is Jacobian (curl vanishes)".into()
        } else {
            "Poisson bracket is unimodular (Hamiltonian divergences vanish)".into()
        };
    }
    Ok(NakayamaResult {
        kind: ShiftKind::Automorphism,
        generators: lr.names().to_vec(),
        shifts,
        checks,
        verified,
        calabi_yau,
        reason,
    })
}

/// `ν(dx, dy, dz) = (dx, dy, dz) + 2 grad(Q) × grad(P)`, cross-checked
/// against the closed divergence formula, the Cartan-formula divergence of
/// the Hamiltonian derivations, and compatibility with `dP = 0`.
pub fn nakayama_hypersurface(h: &HypersurfaceRing, q: &Polynomial) -> Result<NakayamaResult> {
    let ambient = h.ambient();
    let q_grad = crate::poisson::Vec3::grad(q)?;
    let cross = q_grad.cross(&h.grad_p_vec())?;
    let shifts: Vec<Polynomial> = cross
        .components()
        .iter()
        .map(|c| h.qreduce(&c.scale_i64(2)))
        .collect::<Result<_>>()?;

    let closed = h.div_hamiltonian_closed_form(q)?;
    let closed_ok = closed
        .components()
        .iter()
        .zip(&shifts)
        .all(|(c, s)| h.qequal(&c.scale_i64(2), s).unwrap_or(false));

    let nambu = h.nambu_bracket(q)?;
    let cartan: Vec<Polynomial> = nambu
        .hamiltonians
        .iter()
        .map(|d| h.divergence(d))
        .collect::<Result<_>>()?;
    let cartan_ok = cartan
        .iter()
        .zip(&shifts)
        .all(|(c, s)| h.qequal(&c.scale_i64(2), s).unwrap_or(false));

    let relation = h
        .grad_p()
        .iter()
        .zip(&shifts)
        .fold(Polynomial::zero(ambient), |acc, (p, c)| &acc + &(p * c));
    let relation = h.qreduce(&relation)?;

    let checks = vec![
        Check {
            name: "closed-form",
            passed: closed_ok,
            detail: "shifts equal twice the closed divergence formula".into(),
        },
        Check {
            name: "cartan",
            passed: cartan_ok,
            detail: "shifts equal twice the Cartan-formula divergences".into(),
        },
        Check {
            name: "dP-relation",
            passed: relation.is_zero(),
            detail: format!("P_x c_x + P_y c_y + P_z c_z = {relation} mod P"),
        },
    ];
    let verified = checks.iter().all(|c| c.passed);
    let generators: Vec<String> = ambient.variables().iter().map(|v| format!("d{v}")).collect();
    let (calabi_yau, reason) = verdict(&generators, &shifts, cross.components());
    Ok(NakayamaResult {
        kind: ShiftKind::GeneratorImages,
        generators,
        shifts,
        checks,
        verified,
        calabi_yau,
        reason,
    })
}

/// Calabi-Yau verdict of a verified result.
pub fn is_calabi_yau(result: &NakayamaResult) -> Result<(bool, String)> {
    if !result.verified {
        return Err(Error::Unverified);
    }
    Ok((result.calabi_yau, result.reason.clone()))
}
