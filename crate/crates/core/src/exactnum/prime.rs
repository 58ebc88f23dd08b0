use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{field_guard, Field, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// The prime field F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        field_guard(FieldSpec::PrimeField(p))?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, residue: u64) -> Fp {
        Fp {
            value: residue % self.p,
            modulus: self.p,
        }
    }
}

/// Residue modulo a prime, kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn residue(&self) -> u64 {
        self.value
    }

    fn check(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "field mismatch: F_{} vs F_{}",
            self.modulus, other.modulus
        );
    }

    fn with(&self, value: u64) -> Fp {
        Fp {
            value,
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, p);
            }
            base = mul_mod(base, base, p);
            e >>= 1;
        }
        self.with(acc)
    }

    /// Legendre symbol as 0, 1 or p-1.
    fn euler_criterion(&self) -> u64 {
        self.pow((self.modulus - 1) / 2).value
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Tonelli-Shanks; `x` must be a nonzero quadratic residue.
fn tonelli_shanks(x: Fp) -> Fp {
    let p = x.modulus;
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    if s == 1 {
        return x.pow((p + 1) / 4);
    }
    let mut z = x.with(2);
    while z.euler_criterion() != p - 1 {
        z = z.with(z.value + 1);
    }
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = x.pow(q);
    let mut r = x.pow(q.div_ceil(2));
    while t.value != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2.value != 1 {
            t2 = t2 * t2;
            i += 1;
        }
        let b = c.pow(1 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    r
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let (s, overflow) = self.value.overflowing_add(rhs.value);
        let v = if overflow || s >= self.modulus {
            s.wrapping_sub(self.modulus)
        } else {
            s
        };
        self.with(v)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        self.with(v)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        self.with(mul_mod(self.value, rhs.value, self.modulus))
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            self.with(self.modulus - self.value)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for Fp {
    type Field = PrimeField;

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inverse(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        if self.value == 0 {
            return Some(*self);
        }
        if self.euler_criterion() != 1 {
            return None;
        }
        let r = tonelli_shanks(*self);
        let other = -r;
        Some(if other.value < r.value { other } else { r })
    }
}

fn parse_int_mod(s: &str, p: u64) -> Result<u64> {
    let n: BigInt = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer '{s}'")))?;
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    Ok(r.to_u64().expect("residue fits in u64"))
}

impl Field for PrimeField {
    type Elem = Fp;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn from_i64(&self, n: i64) -> Fp {
        let p = self.p as i128;
        self.element((((n as i128) % p + p) % p) as u64)
    }

    fn parse(&self, s: &str) -> Result<Fp> {
        let mut parts = s.splitn(2, '/');
        let num = self.element(parse_int_mod(parts.next().unwrap_or(""), self.p)?);
        match parts.next() {
            None => Ok(num),
            Some(d) => {
                let den = self.element(parse_int_mod(d, self.p)?);
                let inv = den.inverse().ok_or(Error::DivisionByZero)?;
                Ok(num * inv)
            }
        }
    }

    fn sample_small<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        self.element(rng.random_range(0..self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rationals;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(65_537));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(65_536));
    }

    #[test]
    fn basic_ops() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.from_i64(3) * f7.from_i64(5), f7.one());
        assert_eq!(f7.from_i64(-1).residue(), 6);
        assert_eq!(f7.parse("1/2").unwrap(), f7.from_i64(4));
        assert_eq!(f7.parse("-3").unwrap(), f7.from_i64(4));
        assert!(f7.parse("1/7").is_err());
        assert_eq!(f7.from_i64(2).sqrt_in_field(), Some(f7.from_i64(3)));
        assert_eq!(f7.from_i64(3).sqrt_in_field(), None);
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(15).is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_moduli_panic() {
        let a = PrimeField::new(7).unwrap().one();
        let b = PrimeField::new(11).unwrap().one();
        let _ = a + b;
    }

    fn brute_sqrt(x: u64, p: u64) -> Option<u64> {
        (0..p).find(|s| s * s % p == x)
    }

    #[test]
    fn sqrt_matches_exhaustive_search() {
        // p = 17, 41, 97, 257 exercise the Tonelli-Shanks loop (p = 1 mod 8).
        for p in [3u64, 5, 7, 11, 13, 17, 41, 97, 257, 7681] {
            let f = PrimeField::new(p).unwrap();
            for x in 0..p {
                let got = f.element(x).sqrt_in_field().map(|s| s.residue());
                let want = brute_sqrt(x, p);
                assert_eq!(got, want, "sqrt({x}) mod {p}");
            }
        }
    }

    #[test]
    fn large_prime_sqrt() {
        let p = 18_446_744_073_709_551_557u64;
        let f = PrimeField::new(p).unwrap();
        let x = f.element(123_456_789_123);
        let s = x.square().sqrt_in_field().unwrap();
        assert_eq!(s.square(), x.square());
        assert!(s.residue() <= p / 2);
    }

    proptest! {
        #[test]
        fn agrees_with_rational_reduction(
            a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60,
        ) {
            let f = PrimeField::new(61).unwrap();
            let qa = Rationals.ratio(a, b).unwrap();
            let qc = Rationals.ratio(c, d).unwrap();
            let reduce = |x: &crate::exactnum::Rational| {
                f.parse(&x.to_string()).unwrap()
            };
            let fa = reduce(&qa);
            let fc = reduce(&qc);
            prop_assert_eq!(reduce(&(qa.clone() + qc.clone())), fa + fc);
            prop_assert_eq!(reduce(&(qa.clone() * qc.clone())), fa * fc);
            prop_assert_eq!(reduce(&(qa.clone() - qc.clone())), fa - fc);
            if !Scalar::is_zero(&fc) {
                prop_assert_eq!(reduce(&(qa / qc)), fa / fc);
            }
        }
    }
}
