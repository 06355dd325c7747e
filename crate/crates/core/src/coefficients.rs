//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Every value carries its field, so mixing fields is caught at runtime.
//! Rationals are kept as reduced fractions with a positive denominator and
//! residues as least non-negative representatives, which makes derived
//! equality and hashing canonical.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    PrimeField(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::PrimeField(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::PrimeField(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Residue { p, value: r }
            }
        }
    }

    /// Embed the fraction `num/den`; fails when `den` vanishes in the field.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parse `"a"` or `"a/b"` into this field.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        self.from_bigint(&num).checked_div(&self.from_bigint(&den))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts the CLI spellings `Q` and `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("fp:"))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; expected Q or Fp:<p>")))?;
        let p: u64 = rest.parse().map_err(|_| Error::Parse(format!("bad prime {rest:?}")))?;
        Field::prime(p)
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { p, .. } => Field::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field().to_string(), right: other.field().to_string() })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { p: *p, value: ((*a as u128 + *b as u128) % *p as u128) as u64 }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { p: *p, value: ((*a as u128 * *b as u128) % *p as u128) as u64 }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { p, value } => Scalar::Residue { p: *p, value: (p - value) % p },
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { p, value } => {
                Scalar::Residue { p: *p, value: crate::numtheory::mod_pow(*value, p - 2, *p) }
            }
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    /// The rational value, if this lives in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }
}

// Operator sugar. Panics on a field mismatch; library code only combines
// scalars whose field was checked when the owning object was built.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scalar::Rational(q) if q.denom().is_one() => q.numer().to_string(),
            Scalar::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => value.to_string(),
        };
        f.pad(&s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `c^n` for an exact rational `c`.
pub fn rational_pow(c: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= c;
    }
    acc
}

pub fn is_positive_proper_fraction(c: &BigRational) -> bool {
    c.is_positive() && c < &BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rationals.from_fraction(n, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(3, 7) + &Field::Rationals.zero(), q(3, 7));
    }

    #[test]
    fn prime_field_product() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));
    }

    #[test]
    fn inverses() {
        assert_eq!(q(2, 3).inverse().unwrap(), q(3, 2));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_i64(3).inverse().unwrap(), f7.from_i64(5));
        assert_eq!(q(1, 1).inverse().unwrap(), q(1, 1));
        assert_eq!(Field::Rationals.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn characteristic() {
        assert_eq!(Field::Rationals.characteristic(), 0);
        assert_eq!(Field::prime(7).unwrap().characteristic(), 7);
        assert_eq!(Field::prime(2).unwrap().characteristic(), 2);
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn mismatched_fields_error() {
        let a = q(1, 2);
        let b = Field::prime(3).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn parsing_is_canonical() {
        assert_eq!(Field::Rationals.parse("6/-4").unwrap(), q(-3, 2));
        assert_eq!(Field::Rationals.parse(" 10 ").unwrap().to_string(), "10");
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse("1/3").unwrap(), f7.from_i64(5));
        assert!(Field::Rationals.parse("1/0").is_err());
        assert_eq!("Fp:11".parse::<Field>().unwrap(), Field::PrimeField(11));
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert!("Fp:12".parse::<Field>().is_err());
    }
}
