use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Field, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Arbitrary-precision rational; always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn parse(&self, s: &str) -> Result<Rational> {
        s.trim()
            .parse::<Rational>()
            .map_err(|e| Error::Parse(format!("bad rational '{s}': {e}")))
    }

    fn sample_small<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let num: i64 = rng.random_range(-4..=4);
        let den: i64 = rng.random_range(1..=3);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl Scalar for Rational {
    type Field = Rationals;

    fn field(&self) -> Rationals {
        Rationals
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }
}
