//! The arithmetic spaces `M(A)` and `M_1(A)` of a Dedekind domain.
//!
//! A point of `M_1(A)` is the zero set `Z(f)` of a totally multiplicative
//! function `f` on the ideals of `A`. Everything here works with those zero
//! sets directly: `f((a)) = 0` exactly when some prime factor of `(a)` lies
//! in `Z(f)`, so closed sets are described by prime supports of elements.
//!
//! For semi-local `A` the space is finite and [`FiniteSpace`] computes its
//! whole topology. For a global `A` only the representable slice is
//! available: finite zero sets with all other primes nonzero, plus `[e]`.

mod finite;
mod morphism;
mod sheaf;
mod witness;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use finite::{ClosedSetCensus, FiniteSpace, PointSet, SpectralReport};
pub use morphism::{induced_morphism, zero_contraction_check, MorphismReport, ZeroContractionReport};
pub use sheaf::{
    open_immersion_check, spec_embedding, LocalizationDescriptor, LocalizationKind, SpecEmbedding, SpecPoint,
};
pub use witness::{witness_check_sqrtm5, WitnessReport, WitnessStep};

use crate::dirichlet::ArithFn;
use crate::domains::{DomainDescriptor, DomainElement};
use crate::error::{Error, Result};
use crate::monoid::{MonoidKind, PrimeIndex};

/// A set of maximal ideals that is either finite or everything.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeSet {
    Finite(BTreeSet<PrimeIndex>),
    All,
}

impl PrimeSet {
    pub fn contains(&self, p: &PrimeIndex) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(p),
            PrimeSet::All => true,
        }
    }

    /// Whether the set meets `support`.
    pub fn hits(&self, support: &BTreeSet<PrimeIndex>) -> bool {
        support.iter().any(|p| self.contains(p))
    }
}

/// A point `[f]` of `M_1(A)`, stored as its zero set.
///
/// For a global domain the zeros are finite and every other prime is
/// nonzero (`cofinite_flag`), or `zeros` is [`PrimeSet::All`] for `[e]`.
/// For a semi-local domain `zeros` is always a finite subset of `Max`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroSetPoint {
    pub domain: DomainDescriptor,
    pub zeros: PrimeSet,
}

impl ZeroSetPoint {
    pub fn new(domain: &DomainDescriptor, zeros: impl IntoIterator<Item = PrimeIndex>) -> Result<ZeroSetPoint> {
        let zeros: BTreeSet<PrimeIndex> = zeros.into_iter().collect();
        if let Some(p) = zeros.iter().find(|p| !domain.is_max_ideal(p)) {
            return Err(Error::InvalidDomain(format!("{p} is not a maximal ideal of {domain}")));
        }
        Ok(ZeroSetPoint { domain: domain.clone(), zeros: PrimeSet::Finite(zeros) })
    }

    /// The point `[e]`, zero at every maximal ideal.
    pub fn everything(domain: &DomainDescriptor) -> ZeroSetPoint {
        let zeros = match domain.max_ideals() {
            Some(max) => PrimeSet::Finite(max.into_iter().collect()),
            None => PrimeSet::All,
        };
        ZeroSetPoint { domain: domain.clone(), zeros }
    }

    /// True when every prime outside `zeros` is nonzero, i.e. the zero set is finite.
    pub fn cofinite_flag(&self) -> bool {
        matches!(self.zeros, PrimeSet::Finite(_))
    }

    pub fn is_zero_at(&self, p: &PrimeIndex) -> bool {
        self.zeros.contains(p)
    }
}

impl fmt::Display for ZeroSetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.zeros {
            PrimeSet::All => write!(f, "[e]"),
            PrimeSet::Finite(s) => {
                let labels: Vec<String> = s.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", labels.join(","))
            }
        }
    }
}

impl Serialize for ZeroSetPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Z(f)` for a totally multiplicative `f` on the ideal monoid of a domain.
pub fn zero_set(f: &ArithFn) -> Result<ZeroSetPoint> {
    let MonoidKind::IdealMonoid(domain) = f.monoid().kind() else {
        return Err(Error::Unsupported(format!("zero sets need an ideal monoid, not {}", f.monoid())));
    };
    let (values, default) =
        f.prime_values().ok_or_else(|| Error::Unsupported("zero sets need a totally multiplicative literal".into()))?;
    if let Some(max) = domain.max_ideals() {
        let zeros = max.into_iter().filter(|p| values.get(p).unwrap_or(default).is_zero());
        return ZeroSetPoint::new(domain, zeros);
    }
    if default.is_zero() {
        if values.values().any(|v| !v.is_zero()) {
            return Err(Error::Unsupported(
                "zero set with infinite zeros and nonzero exceptions is outside the representable slice".into(),
            ));
        }
        return Ok(ZeroSetPoint::everything(domain));
    }
    ZeroSetPoint::new(domain, values.iter().filter(|(_, v)| v.is_zero()).map(|(p, _)| p.clone()))
}

/// `V(S)`, described by the prime supports of the elements of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedSetRepr {
    pub domain: DomainDescriptor,
    pub generators: BTreeSet<BTreeSet<PrimeIndex>>,
}

impl ClosedSetRepr {
    /// The whole space, `V({})`.
    pub fn whole(domain: &DomainDescriptor) -> ClosedSetRepr {
        ClosedSetRepr { domain: domain.clone(), generators: BTreeSet::new() }
    }

    /// `V(S) u V(T) = V(ST)`: supports of products are unions.
    pub fn union(&self, other: &ClosedSetRepr) -> ClosedSetRepr {
        let mut generators = BTreeSet::new();
        for s in &self.generators {
            for t in &other.generators {
                generators.insert(s.union(t).cloned().collect());
            }
        }
        ClosedSetRepr { domain: self.domain.clone(), generators }
    }

    /// `V(S) n V(T) = V(S u T)`.
    pub fn intersection(&self, other: &ClosedSetRepr) -> ClosedSetRepr {
        let generators = self.generators.union(&other.generators).cloned().collect();
        ClosedSetRepr { domain: self.domain.clone(), generators }
    }

    /// True when some generator is a unit, so the set is empty.
    pub fn is_empty_by_unit(&self) -> bool {
        self.generators.iter().any(BTreeSet::is_empty)
    }
}

/// The prime support of `(a)`.
pub fn support_of(domain: &DomainDescriptor, a: &DomainElement) -> Result<BTreeSet<PrimeIndex>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(domain.factor_principal(a)?.support().cloned().collect())
}

pub fn v_of(domain: &DomainDescriptor, elements: &[DomainElement]) -> Result<ClosedSetRepr> {
    let generators = elements.iter().map(|a| support_of(domain, a)).collect::<Result<_>>()?;
    Ok(ClosedSetRepr { domain: domain.clone(), generators })
}

/// Whether the point lies in the closed set: it must hit every generator.
pub fn membership(closed: &ClosedSetRepr, x: &ZeroSetPoint) -> Result<bool> {
    if closed.domain != x.domain {
        return Err(Error::InvalidDomain(format!("point of {} tested against {}", x.domain, closed.domain)));
    }
    Ok(closed.generators.iter().all(|g| x.zeros.hits(g)))
}
