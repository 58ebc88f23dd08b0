//! Exact scalar fields: the rationals and prime fields of odd characteristic.
//!
//! All of the algebra in this crate is generic over [`Scalar`]. A scalar knows
//! the field it lives in ([`Scalar::field`]), and a [`Field`] value is the
//! context used to create constants, parse text and sample random elements.
//! Prime-field moduli are runtime values, so constants cannot be produced out
//! of thin air the way `num_traits::Zero::zero()` would require.

mod prime;
mod rational;

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

pub use prime::{is_prime, Fp, PrimeField};
pub use rational::{Rational, Rationals};

/// An element of an exact field.
///
/// The operator impls panic on mixed-field operands; use [`arith`] for the
/// checked form.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Field: Field<Elem = Self>;

    fn field(&self) -> Self::Field;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// A square root inside the field, if one exists.
    ///
    /// Rationals return the nonnegative root; prime fields return the smaller
    /// of the two residues.
    fn sqrt_in_field(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Context object for a field: constants, parsing, sampling.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Scalar<Field = Self>;

    fn spec(&self) -> FieldSpec;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    /// Random element with small height: small integers and fractions over the
    /// rationals, uniform residues in a prime field.
    fn sample_small<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn zero(&self) -> Self::Elem {
        self.from_i64(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn ratio(&self, num: i64, den: i64) -> Result<Self::Elem> {
        let d = self.from_i64(den);
        let inv = d.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.from_i64(num) * inv)
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }
}

/// Runtime description of a supported field, text form `Q` or `Fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Build a spec from a characteristic, rejecting 2 and composites.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        field_guard(if c == 0 {
            FieldSpec::Rationals
        } else {
            FieldSpec::PrimeField(c)
        })
    }
}

/// Accepts characteristic 0 or an odd prime.
pub fn field_guard(spec: FieldSpec) -> Result<FieldSpec> {
    match spec {
        FieldSpec::Rationals => Ok(spec),
        FieldSpec::PrimeField(2) => Err(Error::CharacteristicTwo),
        FieldSpec::PrimeField(p) if !is_prime(p) => Err(Error::NotPrime(p)),
        FieldSpec::PrimeField(_) => Ok(spec),
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| Error::Parse(format!("unknown field '{s}', expected Q or Fp:<p>")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field spec '{s}'")))?;
        field_guard(FieldSpec::PrimeField(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn arith<S: Scalar>(x: &S, y: &S, op: ArithOp) -> Result<S> {
    let (fx, fy) = (x.field(), y.field());
    if fx != fy {
        return Err(Error::FieldMismatch(
            fx.spec().to_string(),
            fy.spec().to_string(),
        ));
    }
    let (x, y) = (x.clone(), y.clone());
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => {
            let inv = y.inverse().ok_or(Error::DivisionByZero)?;
            x * inv
        }
    })
}

/// Convenience: `sqrt_in_field` as a free function.
pub fn sqrt_in_field<S: Scalar>(x: &S) -> Option<S> {
    x.sqrt_in_field()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_text_forms() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "Fp:7".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(7)
        );
        assert_eq!(FieldSpec::PrimeField(11).to_string(), "Fp:11");
        assert_eq!(
            "Fp:2".parse::<FieldSpec>().unwrap_err(),
            Error::CharacteristicTwo
        );
        assert_eq!("Fp:9".parse::<FieldSpec>().unwrap_err(), Error::NotPrime(9));
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn guard_accepts_zero_and_odd_primes() {
        assert_eq!(
            FieldSpec::from_characteristic(0).unwrap(),
            FieldSpec::Rationals
        );
        assert_eq!(
            FieldSpec::from_characteristic(7).unwrap(),
            FieldSpec::PrimeField(7)
        );
        assert_eq!(
            FieldSpec::from_characteristic(2).unwrap_err(),
            Error::CharacteristicTwo
        );
        assert_eq!(
            FieldSpec::from_characteristic(1).unwrap_err(),
            Error::NotPrime(1)
        );
    }

    #[test]
    fn checked_arith() {
        let q = Rationals;
        let half = q.ratio(1, 2).unwrap();
        let third = q.ratio(1, 3).unwrap();
        assert_eq!(
            arith(&half, &third, ArithOp::Add).unwrap(),
            q.ratio(5, 6).unwrap()
        );
        assert_eq!(
            arith(&half, &q.zero(), ArithOp::Div).unwrap_err(),
            Error::DivisionByZero
        );

        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(
            arith(&f7.from_i64(3), &f7.from_i64(5), ArithOp::Mul).unwrap(),
            f7.one()
        );
        let f11 = PrimeField::new(11).unwrap();
        assert!(matches!(
            arith(&f7.one(), &f11.one(), ArithOp::Add),
            Err(Error::FieldMismatch(..))
        ));
        let x = f7.from_i64(4);
        assert_eq!(arith(&x, &x, ArithOp::Div).unwrap(), f7.one());
    }
}
