//! Coefficient fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field the polynomial coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

impl CoefficientField {
    /// Builds a prime field, rejecting composite or too-large moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(CoefficientField::PrimeField(p))
    }

    /// Field from a characteristic: 0 is the rationals, anything else must be prime.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(CoefficientField::Rationals)
        } else {
            Self::prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::zero()),
            CoefficientField::PrimeField(p) => Coeff::Modular { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            CoefficientField::PrimeField(p) => Coeff::Modular {
                value: reduce_bigint(n, *p),
                p: *p,
            },
        }
    }

    /// The image of `num/den`; `None` when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        match self {
            CoefficientField::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(Coeff::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            CoefficientField::PrimeField(_) => {
                let d = self.from_bigint(den);
                d.inv().map(|di| self.from_bigint(num) * di)
            }
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A single field element. Prime-field elements carry their modulus so the
/// arithmetic operators need no external context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> CoefficientField {
        match self {
            Coeff::Rational(_) => CoefficientField::Rationals,
            Coeff::Modular { p, .. } => CoefficientField::PrimeField(*p),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Rational(q) => Coeff::Rational(q.recip()),
            Coeff::Modular { value, p } => Coeff::Modular {
                value: mod_pow(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    /// True if the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }

    fn check_same(&self, other: &Coeff) {
        if let (Coeff::Modular { p, .. }, Coeff::Modular { p: q, .. }) = (self, other) {
            assert_eq!(p, q, "coefficients from different prime fields");
        } else {
            assert_eq!(
                self.field().characteristic() == 0,
                other.field().characteristic() == 0,
                "coefficients from different fields"
            );
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.check_same(rhs);
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, p }, Coeff::Modular { value: b, .. }) => Coeff::Modular {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.check_same(rhs);
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, p }, Coeff::Modular { value: b, .. }) => Coeff::Modular {
                value: a * b % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, p } => Coeff::Modular {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(CoefficientField::prime(7).is_ok());
        assert!(CoefficientField::prime(2).is_ok());
        assert!(CoefficientField::prime(9).is_err());
        assert!(CoefficientField::prime(1).is_err());
        assert!(CoefficientField::prime(0).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = CoefficientField::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a * &b, f.from_i64(6));
        assert_eq!(-&a, f.from_i64(2));
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn fractions() {
        let q = CoefficientField::Rationals;
        let half = q.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert!(q.from_fraction(&BigInt::from(1), &BigInt::from(0)).is_none());
        let f3 = CoefficientField::prime(3).unwrap();
        assert!(f3.from_fraction(&BigInt::from(1), &BigInt::from(6)).is_none());
        assert_eq!(
            f3.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            f3.from_i64(2)
        );
    }
}
