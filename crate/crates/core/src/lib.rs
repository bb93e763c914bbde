//! Exact symbolic computation with Lie-Rinehart algebras.
//!
//! The crate builds the enveloping algebra `U` of a Lie-Rinehart algebra
//! `(S, L)` that is free over a polynomial ring `S`, checks the structure
//! axioms, and constructs Nakayama automorphisms of `U` from closed
//! formulas:
//!
//! * free `L`: `ν(a) = a + Tr(ad_a) + div(a(-))`;
//! * Poisson structures on `k[x_1..x_n]`: `ν(dx_i) = dx_i + 2 div({x_i,-})`;
//! * Nambu brackets on `k[x,y,z]/(1+T)`: `ν(d⃗) = d⃗ + 2 grad(Q) × grad(P)`.
//!
//! Every result is verified mechanically (relations of `U`, inverse shift,
//! agreement of independent formulas), and the Calabi-Yau property is read
//! off from the vanishing of the shifts.
//!
//! Coefficients are exact: arbitrary-precision rationals or a prime field.

pub mod envelope;
pub mod error;
pub mod field;
pub mod hypersurface;
pub mod lierinehart;
pub mod nakayama;
pub mod parse;
pub mod poisson;
pub mod ring;
pub mod sample;

pub use envelope::expr::parse_u_expr;
pub use envelope::{Algebra, GeneratorImages, RelationCheck, UElement};
pub use error::{Error, Result};
pub use field::{Coeff, CoefficientField};
pub use hypersurface::{HDerivation, HypersurfaceRing, KForm, NambuBracket};
pub use lierinehart::{Axiom, DualForm, FreeLieRinehart, LElement, Validation};
pub use nakayama::{
    is_calabi_yau, nakayama_free, nakayama_hypersurface, nakayama_poisson, NakayamaResult,
    ShiftKind,
};
pub use parse::parse_poly;
pub use poisson::{div_std, JacobiCheck, PoissonStructure, Vec3};
pub use ring::{Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
