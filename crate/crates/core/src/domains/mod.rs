//! Concrete Dedekind domains with exact ideal arithmetic: `Z`, `F_p[x]`,
//! quadratic orders `Z[sqrt(d)]`, and semi-local localizations of these.
//!
//! Ideals are handled through their prime factorization, a
//! [`MonoidElement`] over the domain's prime keys. Quadratic orders also
//! expose HNF ideals directly through [`QuadIdeal`].

mod hom;
mod polyfp;
mod quadratic;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

pub use hom::{DomainHom, HomRule};
pub use polyfp::FpPoly;
pub use quadratic::{factor_ideal, splitting_type, validate_discriminant, QuadIdeal, QuadInt, SplitType};

use crate::error::{Error, Result};
use crate::monoid::{MonoidElement, PrimeIndex};
use crate::numtheory::{is_prime, primes_up_to};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DomainDescriptor {
    Integers,
    PolyOverFp(u64),
    QuadraticOrder(i64),
    /// `S^{-1} A` for a global `A`, where `S` is the complement of the union
    /// of the listed maximal ideals; those are then all of `Max`.
    Localized {
        base: Box<DomainDescriptor>,
        max: Vec<PrimeIndex>,
    },
}

/// An element of a domain. Elements of a localization are represented by
/// elements of its base ring; every element of `S^{-1}A` is a unit multiple
/// of one of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainElement {
    Int(i64),
    Poly(FpPoly),
    Quad(QuadInt),
}

impl DomainElement {
    pub fn is_zero(&self) -> bool {
        match self {
            DomainElement::Int(n) => *n == 0,
            DomainElement::Poly(f) => f.is_zero(),
            DomainElement::Quad(x) => x.is_zero(),
        }
    }

    pub fn mul(&self, other: &DomainElement) -> Result<DomainElement> {
        Ok(match (self, other) {
            (DomainElement::Int(a), DomainElement::Int(b)) => {
                DomainElement::Int(a.checked_mul(*b).ok_or_else(|| Error::Unsupported("integer overflow".into()))?)
            }
            (DomainElement::Poly(a), DomainElement::Poly(b)) => DomainElement::Poly(a.mul(b)),
            (DomainElement::Quad(a), DomainElement::Quad(b)) => DomainElement::Quad(a.mul(b)),
            _ => return Err(Error::InvalidDomain(format!("cannot multiply {self} by {other}"))),
        })
    }

    pub fn pow(&self, k: u32) -> Result<DomainElement> {
        let mut acc = match self {
            DomainElement::Int(_) => DomainElement::Int(1),
            DomainElement::Poly(f) => DomainElement::Poly(FpPoly::constant(f.modulus(), 1)),
            DomainElement::Quad(x) => DomainElement::Quad(QuadInt::from_int(x.d, 1)),
        };
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainElement::Int(n) => write!(f, "{n}"),
            DomainElement::Poly(p) => write!(f, "{p}"),
            DomainElement::Quad(x) => write!(f, "{x}"),
        }
    }
}

impl DomainDescriptor {
    pub fn integers() -> Self {
        DomainDescriptor::Integers
    }

    pub fn poly_over_fp(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(DomainDescriptor::PolyOverFp(p))
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        validate_discriminant(d)?;
        Ok(DomainDescriptor::QuadraticOrder(d))
    }

    /// Localize a global domain at finitely many maximal ideals.
    pub fn localized(base: DomainDescriptor, max: Vec<PrimeIndex>) -> Result<Self> {
        if matches!(base, DomainDescriptor::Localized { .. }) {
            return Err(Error::InvalidDomain("base of a localization must be global".into()));
        }
        let mut max = max;
        max.sort();
        max.dedup();
        for p in &max {
            if !base.is_max_ideal(p) {
                return Err(Error::InvalidDomain(format!("{p} is not a maximal ideal of {base}")));
            }
        }
        Ok(DomainDescriptor::Localized { base: Box::new(base), max })
    }

    /// Semi-local `Z` at the given rational primes.
    pub fn z_localized(primes: &[u64]) -> Result<Self> {
        DomainDescriptor::localized(
            DomainDescriptor::Integers,
            primes.iter().map(|&p| PrimeIndex::Rational(p)).collect(),
        )
    }

    /// The global ring underneath (itself when global).
    pub fn base(&self) -> &DomainDescriptor {
        match self {
            DomainDescriptor::Localized { base, .. } => base,
            d => d,
        }
    }

    pub fn is_semi_local(&self) -> bool {
        matches!(self, DomainDescriptor::Localized { .. })
    }

    /// `Max(A)` when finite.
    pub fn max_ideals(&self) -> Option<Vec<PrimeIndex>> {
        match self {
            DomainDescriptor::Localized { max, .. } => Some(max.clone()),
            _ => None,
        }
    }

    pub fn is_max_ideal(&self, p: &PrimeIndex) -> bool {
        match (self, p) {
            (DomainDescriptor::Integers, PrimeIndex::Rational(q)) => is_prime(*q),
            (DomainDescriptor::PolyOverFp(m), PrimeIndex::Poly(f)) => {
                f.modulus() == *m && f.leading() == 1 && f.is_irreducible()
            }
            (DomainDescriptor::QuadraticOrder(d), PrimeIndex::Quad(q)) => {
                q.d == *d
                    && is_prime(q.rational_prime())
                    && splitting_type(*d, q.rational_prime()).map(|s| s.primes().contains(q)).unwrap_or(false)
            }
            (DomainDescriptor::Localized { max, .. }, p) => max.contains(p),
            _ => false,
        }
    }

    /// Maximal ideals of norm at most `bound`, in canonical order.
    pub fn primes_up_to_norm(&self, bound: u64) -> Vec<PrimeIndex> {
        let mut out: Vec<PrimeIndex> = match self {
            DomainDescriptor::Integers => primes_up_to(bound).into_iter().map(PrimeIndex::Rational).collect(),
            DomainDescriptor::QuadraticOrder(d) => primes_up_to(bound)
                .into_iter()
                .flat_map(|p| splitting_type(*d, p).expect("valid order").primes())
                .filter(|q| q.norm() <= bound)
                .map(PrimeIndex::Quad)
                .collect(),
            DomainDescriptor::PolyOverFp(p) => {
                let mut v = Vec::new();
                let mut deg = 1usize;
                while p.checked_pow(deg as u32).is_some_and(|n| n <= bound) {
                    v.extend(FpPoly::monic_irreducibles(*p, deg).into_iter().map(PrimeIndex::Poly));
                    deg += 1;
                }
                v
            }
            DomainDescriptor::Localized { max, .. } => {
                max.iter().filter(|p| p.norm().is_some_and(|n| n <= BigUint::from(bound))).cloned().collect()
            }
        };
        out.sort();
        out
    }

    pub fn parse_element(&self, s: &str) -> Result<DomainElement> {
        match self.base() {
            DomainDescriptor::Integers => {
                s.trim().parse::<i64>().map(DomainElement::Int).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
            }
            DomainDescriptor::PolyOverFp(p) => Ok(DomainElement::Poly(FpPoly::parse(*p, s)?)),
            DomainDescriptor::QuadraticOrder(d) => Ok(DomainElement::Quad(QuadInt::parse(*d, s)?)),
            DomainDescriptor::Localized { .. } => unreachable!("base is global"),
        }
    }

    /// Parse a prime label: `P5` or `5` over `Z`, `P3+` over a quadratic
    /// order, `P(x+1)` or `(x+1)` over `F_p[x]`.
    pub fn parse_prime_label(&self, s: &str) -> Result<PrimeIndex> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad prime label {s:?} for {self}"));
        let p = match self.base() {
            DomainDescriptor::Integers => {
                let body = s.strip_prefix('P').unwrap_or(s).trim_matches(|c| c == '(' || c == ')');
                PrimeIndex::Rational(body.parse().map_err(|_| bad())?)
            }
            DomainDescriptor::QuadraticOrder(d) => {
                let body = s.strip_prefix('P').ok_or_else(bad)?;
                let (num, sign) = match body.strip_suffix('+') {
                    Some(n) => (n, Some(true)),
                    None => match body.strip_suffix('-') {
                        Some(n) => (n, Some(false)),
                        None => (body, None),
                    },
                };
                let p: u64 = num.parse().map_err(|_| bad())?;
                match (splitting_type(*d, p)?, sign) {
                    (SplitType::Split(a, _), Some(true)) => PrimeIndex::Quad(a),
                    (SplitType::Split(_, b), Some(false)) => PrimeIndex::Quad(b),
                    (SplitType::Inert(a), None) | (SplitType::Ramified(a), None) => PrimeIndex::Quad(a),
                    _ => return Err(bad()),
                }
            }
            DomainDescriptor::PolyOverFp(p) => {
                let body = s.strip_prefix('P').unwrap_or(s).trim_start_matches('(').trim_end_matches(')');
                let f = FpPoly::parse(*p, body)?;
                PrimeIndex::Poly(f.monic())
            }
            DomainDescriptor::Localized { .. } => unreachable!("base is global"),
        };
        if !self.is_max_ideal(&p) {
            return Err(Error::Parse(format!("{s} is not a maximal ideal of {self}")));
        }
        Ok(p)
    }

    /// Prime-ideal factorization of `(x)` in the global base ring.
    fn factor_in_base(&self, x: &DomainElement) -> Result<MonoidElement> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        match (self.base(), x) {
            (DomainDescriptor::Integers, DomainElement::Int(n)) => MonoidElement::from_u64(n.unsigned_abs()),
            (DomainDescriptor::PolyOverFp(_), DomainElement::Poly(f)) => {
                Ok(MonoidElement::from_pairs(f.factor()?.into_iter().map(|(q, e)| (PrimeIndex::Poly(q), e))))
            }
            (DomainDescriptor::QuadraticOrder(_), DomainElement::Quad(q)) => {
                let ideal = QuadIdeal::principal(q)?;
                Ok(MonoidElement::from_pairs(factor_ideal(&ideal)?.into_iter().map(|(p, e)| (PrimeIndex::Quad(p), e))))
            }
            _ => Err(Error::InvalidDomain(format!("{x} is not an element of {self}"))),
        }
    }

    /// Factor the principal ideal `(x)` into maximal ideals of this domain.
    /// In a localization only the surviving maximal ideals appear.
    pub fn factor_principal(&self, x: &DomainElement) -> Result<MonoidElement> {
        let global = self.factor_in_base(x)?;
        Ok(match self.max_ideals() {
            Some(max) => global.restrict_to(&max),
            None => global,
        })
    }

    pub fn is_unit(&self, x: &DomainElement) -> Result<bool> {
        Ok(self.factor_principal(x)?.is_one())
    }

    /// `N(a) = #(A/a)` for an ideal given by its factorization.
    pub fn ideal_norm(&self, ideal: &MonoidElement) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for (p, k) in ideal.exponents() {
            let n = p.norm().ok_or_else(|| Error::InvalidDomain(format!("{p} has no norm")))?;
            acc *= n.pow(*k);
        }
        Ok(acc)
    }

    /// `#(A/a)^x`, multiplicative with `N(p)^k - N(p)^{k-1}` on prime powers.
    pub fn euler_phi(&self, ideal: &MonoidElement) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for (p, k) in ideal.exponents() {
            let n = p.norm().ok_or_else(|| Error::InvalidDomain(format!("{p} has no norm")))?;
            acc *= n.pow(*k) - n.pow(*k - 1);
        }
        Ok(acc)
    }

    /// The HNF of an ideal of a quadratic order, multiplied out from its factorization.
    pub fn quad_ideal(&self, ideal: &MonoidElement) -> Result<QuadIdeal> {
        let DomainDescriptor::QuadraticOrder(d) = self.base() else {
            return Err(Error::InvalidDomain(format!("{self} is not a quadratic order")));
        };
        let mut acc = QuadIdeal::unit(*d);
        for (p, k) in ideal.exponents() {
            let PrimeIndex::Quad(q) = p else {
                return Err(Error::InvalidDomain(format!("{p} is not a quadratic prime")));
            };
            acc = acc.mul(&q.pow(*k));
        }
        Ok(acc)
    }

    /// An element generating the maximal ideal `p` in this domain, i.e. whose
    /// factorization here is exactly `p`. Always exists in a semi-local
    /// domain; in a global quadratic order only when `p` is principal.
    pub fn prime_element(&self, p: &PrimeIndex) -> Result<DomainElement> {
        if !self.is_max_ideal(p) {
            return Err(Error::InvalidDomain(format!("{p} is not a maximal ideal of {self}")));
        }
        let target = MonoidElement::prime(p.clone());
        match p {
            PrimeIndex::Rational(q) => return Ok(DomainElement::Int(*q as i64)),
            PrimeIndex::Poly(f) => return Ok(DomainElement::Poly(f.clone())),
            _ => {}
        }
        let PrimeIndex::Quad(q) = p else { unreachable!() };
        // Search small elements of the prime ideal itself.
        let bound = 4 * q.norm() as i64 + 20;
        for radius in 0..=bound {
            for re in -radius..=radius {
                for im in [radius - re.abs(), -(radius - re.abs())] {
                    let x = QuadInt::new(q.d, re, im);
                    if x.is_zero() || !q.contains(&x) {
                        continue;
                    }
                    let el = DomainElement::Quad(x);
                    if self.factor_principal(&el)? == target {
                        return Ok(el);
                    }
                }
            }
        }
        Err(Error::Unsupported(format!("no generator of {p} found in {self}")))
    }

    /// An element whose principal ideal here is exactly `ideal`.
    pub fn element_for(&self, ideal: &MonoidElement) -> Result<DomainElement> {
        let mut acc = self.one();
        for (p, k) in ideal.exponents() {
            acc = acc.mul(&self.prime_element(p)?.pow(*k)?)?;
        }
        Ok(acc)
    }

    pub fn one(&self) -> DomainElement {
        match self.base() {
            DomainDescriptor::Integers => DomainElement::Int(1),
            DomainDescriptor::PolyOverFp(p) => DomainElement::Poly(FpPoly::constant(*p, 1)),
            DomainDescriptor::QuadraticOrder(d) => DomainElement::Quad(QuadInt::from_int(*d, 1)),
            DomainDescriptor::Localized { .. } => unreachable!("base is global"),
        }
    }
}

impl fmt::Display for DomainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainDescriptor::Integers => write!(f, "z"),
            DomainDescriptor::PolyOverFp(p) => write!(f, "fpx:{p}"),
            DomainDescriptor::QuadraticOrder(d) => write!(f, "qsqrt:{d}"),
            DomainDescriptor::Localized { base, max } => {
                let labels: Vec<String> = max.iter().map(|p| p.to_string()).collect();
                match base.as_ref() {
                    DomainDescriptor::Integers => write!(f, "zloc:{}", labels.join(",")),
                    DomainDescriptor::QuadraticOrder(d) => write!(f, "qsqrtloc:{d}:{}", labels.join(",")),
                    DomainDescriptor::PolyOverFp(p) => write!(f, "fpxloc:{p}:{}", labels.join(",")),
                    DomainDescriptor::Localized { .. } => unreachable!(),
                }
            }
        }
    }
}

impl FromStr for DomainDescriptor {
    type Err = Error;

    /// `z`, `qsqrt:-5`, `fpx:3`, `zloc:2,3,5`, `qsqrtloc:-1:P5+,P5-`,
    /// `fpxloc:2:x+1,x^2+x+1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown domain {s:?}"));
        let labels = |rest: &str, base: &DomainDescriptor| -> Result<Vec<PrimeIndex>> {
            rest.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| base.parse_prime_label(t)).collect()
        };
        if s == "z" || s == "Z" {
            return Ok(DomainDescriptor::Integers);
        }
        if let Some(rest) = s.strip_prefix("qsqrt:") {
            return DomainDescriptor::quadratic(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("fpx:") {
            return DomainDescriptor::poly_over_fp(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("zloc:") {
            let base = DomainDescriptor::Integers;
            let max = labels(rest, &base)?;
            return DomainDescriptor::localized(base, max);
        }
        if let Some(rest) = s.strip_prefix("qsqrtloc:") {
            let (d, primes) = rest.split_once(':').ok_or_else(bad)?;
            let base = DomainDescriptor::quadratic(d.parse().map_err(|_| bad())?)?;
            let max = labels(primes, &base)?;
            return DomainDescriptor::localized(base, max);
        }
        if let Some(rest) = s.strip_prefix("fpxloc:") {
            let (p, primes) = rest.split_once(':').ok_or_else(bad)?;
            let base = DomainDescriptor::poly_over_fp(p.parse().map_err(|_| bad())?)?;
            let max = labels(primes, &base)?;
            return DomainDescriptor::localized(base, max);
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(d: i64, re: i64, im: i64) -> DomainElement {
        DomainElement::Quad(QuadInt::new(d, re, im))
    }

    #[test]
    fn factor_integers() {
        let z = DomainDescriptor::Integers;
        let f = z.factor_principal(&DomainElement::Int(12)).unwrap();
        assert_eq!(f.to_string(), "2^2 * 3");
        assert!(z.factor_principal(&DomainElement::Int(0)).is_err());
    }

    #[test]
    fn factor_sqrt_minus5() {
        let a = DomainDescriptor::quadratic(-5).unwrap();
        assert_eq!(a.factor_principal(&zi(-5, 3, 0)).unwrap().to_string(), "P3+ * P3-");
        assert_eq!(a.factor_principal(&zi(-5, 1, 1)).unwrap().to_string(), "P2 * P3+");
        assert_eq!(a.factor_principal(&zi(-5, 1, -1)).unwrap().to_string(), "P2 * P3-");
    }

    #[test]
    fn norms_and_phi() {
        let a = DomainDescriptor::quadratic(-5).unwrap();
        let p3 = a.parse_prime_label("P3+").unwrap();
        assert_eq!(a.ideal_norm(&MonoidElement::prime(p3.clone())).unwrap(), BigUint::from(3u32));
        let gen = a.factor_principal(&zi(-5, 1, 1)).unwrap();
        assert_eq!(a.ideal_norm(&gen).unwrap(), BigUint::from(6u32));
        assert_eq!(a.ideal_norm(&MonoidElement::one()).unwrap(), BigUint::one());
        assert_eq!(a.euler_phi(&MonoidElement::prime(p3)).unwrap(), BigUint::from(2u32));
        let z = DomainDescriptor::Integers;
        let twelve = z.factor_principal(&DomainElement::Int(12)).unwrap();
        assert_eq!(z.euler_phi(&twelve).unwrap(), BigUint::from(4u32));
        assert_eq!(z.euler_phi(&MonoidElement::one()).unwrap(), BigUint::one());
    }

    #[test]
    fn localization_drops_inverted_primes() {
        let s = DomainDescriptor::z_localized(&[2, 3]).unwrap();
        assert!(s.factor_principal(&DomainElement::Int(5)).unwrap().is_one());
        assert_eq!(s.factor_principal(&DomainElement::Int(60)).unwrap().to_string(), "2^2 * 3");
        assert_eq!(s.to_string(), "zloc:2,3");
        assert_eq!("zloc:3,2".parse::<DomainDescriptor>().unwrap(), s);
    }

    #[test]
    fn prime_elements_in_semilocal_quadratic() {
        let base = DomainDescriptor::quadratic(-5).unwrap();
        let plus = base.parse_prime_label("P3+").unwrap();
        let minus = base.parse_prime_label("P3-").unwrap();
        let loc = DomainDescriptor::localized(base.clone(), vec![plus.clone(), minus]).unwrap();
        let g = loc.prime_element(&plus).unwrap();
        assert_eq!(loc.factor_principal(&g).unwrap(), MonoidElement::prime(plus.clone()));
        // Globally P3+ is not principal.
        assert!(base.prime_element(&plus).is_err());
    }

    #[test]
    fn domain_strings_round_trip() {
        for s in ["z", "qsqrt:-5", "fpx:3", "zloc:2,3,5", "qsqrtloc:-1:P5+,P5-", "fpxloc:2:x+1"] {
            let d: DomainDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string().parse::<DomainDescriptor>().unwrap(), d, "{s}");
        }
        assert!("qsqrt:-3".parse::<DomainDescriptor>().is_err());
        assert!("qsqrt:5".parse::<DomainDescriptor>().is_err());
    }

    #[test]
    fn polynomial_domain() {
        let a = DomainDescriptor::poly_over_fp(2).unwrap();
        let x = a.parse_element("x^3+x").unwrap();
        let f = a.factor_principal(&x).unwrap();
        // x^3 + x = x (x+1)^2 over F_2
        assert_eq!(f.lambda(), 3);
        assert_eq!(a.ideal_norm(&f).unwrap(), BigUint::from(8u32));
        assert_eq!(a.primes_up_to_norm(4).len(), 3);
    }
}
