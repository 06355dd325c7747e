//! Injective homomorphisms between the supported domains, with ideal
//! extension and prime contraction.

use std::fmt;

use super::{DomainDescriptor, DomainElement, QuadInt};
use crate::error::{Error, Result};
use crate::monoid::{MonoidElement, PrimeIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomRule {
    Identity,
    /// `Z -> Z[sqrt(d)]`, possibly localized on either side.
    Inclusion,
    /// `A -> A_T` (or `A_S -> A_T` with `T` inside `S`).
    Localization,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainHom {
    source: DomainDescriptor,
    target: DomainDescriptor,
    rule: HomRule,
}

impl DomainHom {
    pub fn identity(domain: DomainDescriptor) -> Self {
        DomainHom { source: domain.clone(), target: domain, rule: HomRule::Identity }
    }

    /// The canonical map `source -> target`, if there is one.
    ///
    /// Maps out of a localization only exist when every maximal ideal of the
    /// target contracts to a surviving maximal ideal of the source, which is
    /// exactly quasi-integrality here; otherwise the offending target prime
    /// is returned as a witness.
    pub fn new(source: DomainDescriptor, target: DomainDescriptor) -> Result<Self> {
        if source == target {
            return Ok(DomainHom::identity(source));
        }
        let rule = match (source.base(), target.base()) {
            (s, t) if s == t => {
                if target.max_ideals().is_none() {
                    return Err(Error::InvalidDomain(format!("no localization map {source} -> {target}")));
                }
                HomRule::Localization
            }
            (DomainDescriptor::Integers, DomainDescriptor::QuadraticOrder(_)) => HomRule::Inclusion,
            _ => return Err(Error::InvalidDomain(format!("no supported map {source} -> {target}"))),
        };
        let hom = DomainHom { source, target, rule };
        hom.check_quasi_integral()?;
        Ok(hom)
    }

    pub fn source(&self) -> &DomainDescriptor {
        &self.source
    }

    pub fn target(&self) -> &DomainDescriptor {
        &self.target
    }

    pub fn rule(&self) -> HomRule {
        self.rule
    }

    fn check_quasi_integral(&self) -> Result<()> {
        let Some(source_max) = self.source.max_ideals() else {
            // Global source: every nonzero prime of the target lies over a
            // nonzero prime (its norm is a prime power).
            return Ok(());
        };
        let witness = match self.target.max_ideals() {
            Some(target_max) => target_max
                .into_iter()
                .find(|q| self.contraction_unchecked(q).map(|p| !source_max.contains(&p)).unwrap_or(true)),
            None => {
                // Global target over a semi-local source: the smallest target
                // prime lying over an inverted prime is a witness.
                let mut bound = 2;
                loop {
                    let found = self
                        .target
                        .primes_up_to_norm(bound)
                        .into_iter()
                        .find(|q| self.contraction_unchecked(q).map(|p| !source_max.contains(&p)).unwrap_or(true));
                    if found.is_some() {
                        break found;
                    }
                    bound *= 2;
                }
            }
        };
        match witness {
            Some(q) => Err(Error::NotQuasiIntegral(format!("{q} contracts to a prime inverted in {}", self.source))),
            None => Ok(()),
        }
    }

    /// True for every constructible hom; kept for reporting.
    pub fn is_quasi_integral(&self) -> bool {
        self.check_quasi_integral().is_ok()
    }

    pub fn apply(&self, x: &DomainElement) -> Result<DomainElement> {
        match (self.rule, x, self.target.base()) {
            (HomRule::Identity | HomRule::Localization, x, _) => Ok(x.clone()),
            (HomRule::Inclusion, DomainElement::Int(n), DomainDescriptor::QuadraticOrder(d)) => {
                Ok(DomainElement::Quad(QuadInt::from_int(*d, *n)))
            }
            _ => Err(Error::InvalidDomain(format!("{x} is not an element of {}", self.source))),
        }
    }

    /// `p B` for a maximal ideal `p` of the source, factored in the target.
    pub fn extend_prime(&self, p: &PrimeIndex) -> Result<MonoidElement> {
        if !self.source.is_max_ideal(p) {
            return Err(Error::InvalidDomain(format!("{p} is not a maximal ideal of {}", self.source)));
        }
        match (self.rule, p) {
            (HomRule::Identity, p) => Ok(MonoidElement::prime(p.clone())),
            (HomRule::Localization, p) => {
                Ok(if self.target.is_max_ideal(p) { MonoidElement::prime(p.clone()) } else { MonoidElement::one() })
            }
            (HomRule::Inclusion, PrimeIndex::Rational(q)) => {
                self.target.factor_principal(&self.apply(&DomainElement::Int(*q as i64))?)
            }
            _ => Err(Error::InvalidDomain(format!("cannot extend {p}"))),
        }
    }

    /// The extension `a B`, multiplicative in `a`.
    pub fn extend_ideal(&self, ideal: &MonoidElement) -> Result<MonoidElement> {
        let mut acc = MonoidElement::one();
        for (p, k) in ideal.exponents() {
            acc = acc.mul(&self.extend_prime(p)?.pow(*k));
        }
        Ok(acc)
    }

    fn contraction_unchecked(&self, q: &PrimeIndex) -> Option<PrimeIndex> {
        match (self.rule, q) {
            (HomRule::Identity | HomRule::Localization, q) => Some(q.clone()),
            (HomRule::Inclusion, PrimeIndex::Quad(i)) => Some(PrimeIndex::Rational(i.rational_prime())),
            _ => None,
        }
    }

    /// `phi^{-1}(q)` for a maximal ideal `q` of the target.
    pub fn contract_prime(&self, q: &PrimeIndex) -> Result<PrimeIndex> {
        if !self.target.is_max_ideal(q) {
            return Err(Error::InvalidDomain(format!("{q} is not a maximal ideal of {}", self.target)));
        }
        let p = self.contraction_unchecked(q).ok_or_else(|| Error::InvalidDomain(format!("cannot contract {q}")))?;
        if !self.source.is_max_ideal(&p) {
            return Err(Error::NotQuasiIntegral(format!("{q} contracts to a prime inverted in {}", self.source)));
        }
        Ok(p)
    }

    /// The maximal ideals of the target lying over `p`.
    pub fn primes_over(&self, p: &PrimeIndex) -> Result<Vec<PrimeIndex>> {
        Ok(self.extend_prime(p)?.support().cloned().collect())
    }
}

impl fmt::Display for DomainHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_m5() -> DomainDescriptor {
        DomainDescriptor::quadratic(-5).unwrap()
    }

    #[test]
    fn extension_of_three() {
        let a = sqrt_m5();
        let phi = DomainHom::new(DomainDescriptor::Integers, a.clone()).unwrap();
        let ext = phi.extend_prime(&PrimeIndex::Rational(3)).unwrap();
        assert_eq!(ext.to_string(), "P3+ * P3-");
        let p2 = a.parse_prime_label("P2").unwrap();
        assert_eq!(phi.extend_prime(&PrimeIndex::Rational(2)).unwrap(), MonoidElement::prime_power(p2, 2));
    }

    #[test]
    fn contraction() {
        let a = sqrt_m5();
        let phi = DomainHom::new(DomainDescriptor::Integers, a.clone()).unwrap();
        let plus = a.parse_prime_label("P3+").unwrap();
        assert_eq!(phi.contract_prime(&plus).unwrap(), PrimeIndex::Rational(3));
        let p2 = a.parse_prime_label("P2").unwrap();
        assert_eq!(phi.contract_prime(&p2).unwrap(), PrimeIndex::Rational(2));
        let id = DomainHom::identity(a);
        assert_eq!(id.contract_prime(&plus).unwrap(), plus);
    }

    #[test]
    fn localization_extends_outside_primes_to_unit() {
        let loc = DomainDescriptor::z_localized(&[2, 3]).unwrap();
        let phi = DomainHom::new(DomainDescriptor::Integers, loc).unwrap();
        assert_eq!(phi.rule(), HomRule::Localization);
        assert!(phi.extend_prime(&PrimeIndex::Rational(5)).unwrap().is_one());
        let six = MonoidElement::from_u64(6).unwrap();
        assert_eq!(phi.extend_ideal(&six).unwrap(), six);
    }

    #[test]
    fn semilocal_inclusion_requires_primes_over_surviving() {
        let gauss = DomainDescriptor::quadratic(-1).unwrap();
        let over5 = DomainHom::new(DomainDescriptor::Integers, gauss.clone())
            .unwrap()
            .primes_over(&PrimeIndex::Rational(5))
            .unwrap();
        let target = DomainDescriptor::localized(gauss.clone(), over5.clone()).unwrap();
        let source = DomainDescriptor::z_localized(&[5]).unwrap();
        let phi = DomainHom::new(source.clone(), target).unwrap();
        assert_eq!(phi.contract_prime(&over5[0]).unwrap(), PrimeIndex::Rational(5));

        let p3 = gauss.parse_prime_label("P3").unwrap();
        let bad_target = DomainDescriptor::localized(gauss, vec![p3]).unwrap();
        assert!(matches!(DomainHom::new(source, bad_target), Err(Error::NotQuasiIntegral(_))));
    }
}
