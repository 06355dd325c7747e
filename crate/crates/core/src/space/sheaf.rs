//! Sections and stalks of the structure sheaf, as localizations of `A`.
//!
//! `O(D_1(a)) = A_a` inverts exactly the primes dividing `(a)`, and the
//! stalk at `[f]` is `A` localized at the complement of the union of
//! `Z(f)`. Both are described by the maximal ideals that survive.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::finite::{FiniteSpace, PointSet};
use super::{PrimeSet, ZeroSetPoint};
use crate::domains::{DomainDescriptor, DomainElement};
use crate::error::Result;
use crate::monoid::PrimeIndex;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LocalizationKind {
    FractionField,
    LocalRing(PrimeIndex),
    SemiLocalPID(Vec<PrimeIndex>),
    WholeRing,
}

impl fmt::Display for LocalizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalizationKind::FractionField => write!(f, "fraction field"),
            LocalizationKind::LocalRing(p) => write!(f, "local ring at {p}"),
            LocalizationKind::SemiLocalPID(ps) => {
                let labels: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "semi-local PID at {}", labels.join(","))
            }
            LocalizationKind::WholeRing => write!(f, "whole ring"),
        }
    }
}

/// A localization of `domain` keeping exactly the maximal ideals in `surviving_max`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalizationDescriptor {
    pub domain: DomainDescriptor,
    pub surviving_max: PrimeSet,
    pub kind: LocalizationKind,
}

impl LocalizationDescriptor {
    /// Classify by the surviving maximal ideals; all of `Max` means `A` itself.
    pub fn new(domain: &DomainDescriptor, surviving: PrimeSet) -> LocalizationDescriptor {
        let whole = match (&surviving, domain.max_ideals()) {
            (PrimeSet::All, _) => true,
            (PrimeSet::Finite(s), Some(max)) => s.len() == max.len(),
            (PrimeSet::Finite(_), None) => false,
        };
        let kind = match &surviving {
            _ if whole => LocalizationKind::WholeRing,
            PrimeSet::Finite(s) if s.is_empty() => LocalizationKind::FractionField,
            PrimeSet::Finite(s) if s.len() == 1 => LocalizationKind::LocalRing(s.iter().next().cloned().unwrap()),
            PrimeSet::Finite(s) => LocalizationKind::SemiLocalPID(s.iter().cloned().collect()),
            PrimeSet::All => unreachable!(),
        };
        LocalizationDescriptor { domain: domain.clone(), surviving_max: surviving, kind }
    }

    /// The localization as a domain in its own right.
    pub fn as_domain(&self) -> Result<DomainDescriptor> {
        match &self.surviving_max {
            PrimeSet::All => Ok(self.domain.clone()),
            PrimeSet::Finite(s) => DomainDescriptor::localized(self.domain.base().clone(), s.iter().cloned().collect()),
        }
    }

    /// Whether there is a localization map from this ring to `other`,
    /// i.e. `other` keeps only primes this one keeps.
    pub fn maps_to(&self, other: &LocalizationDescriptor) -> bool {
        self.domain == other.domain
            && match (&self.surviving_max, &other.surviving_max) {
                (PrimeSet::All, _) => true,
                (PrimeSet::Finite(_), PrimeSet::All) => false,
                (PrimeSet::Finite(a), PrimeSet::Finite(b)) => b.is_subset(a),
            }
    }
}

impl fmt::Display for LocalizationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, self.as_domain()) {
            (LocalizationKind::FractionField, _) | (_, Err(_)) => write!(f, "{}", self.kind),
            (_, Ok(d)) => write!(f, "{} ({d})", self.kind),
        }
    }
}

impl Serialize for LocalizationDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The stalk at a point: keep the primes where the point vanishes.
pub fn stalk(x: &ZeroSetPoint) -> LocalizationDescriptor {
    LocalizationDescriptor::new(&x.domain, x.zeros.clone())
}

impl FiniteSpace {
    pub fn stalk(&self, z: u32) -> LocalizationDescriptor {
        stalk(&self.point(z))
    }

    /// `O(D_1(a))` for `a` with the given support.
    pub fn sections_over(&self, support: u32) -> LocalizationDescriptor {
        let kept = self.primes_of(self.full_mask() & !support);
        LocalizationDescriptor::new(self.domain(), PrimeSet::Finite(kept.into_iter().collect()))
    }

    /// `O(D_1(a)) = A_a`.
    pub fn sections(&self, a: &DomainElement) -> Result<LocalizationDescriptor> {
        Ok(self.sections_over(self.support_mask(a)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenImmersionReport {
    pub element: String,
    pub bijection: bool,
    pub topology: bool,
    pub sections: bool,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Check that `M_1(A_a)` maps isomorphically onto `D_1(a)`.
pub fn open_immersion_check(space: &FiniteSpace, a: &DomainElement) -> Result<OpenImmersionReport> {
    let s = space.support_mask(a)?;
    let open = space.basic_open(s);
    let local = space.sections(a)?;
    let sub = FiniteSpace::new(&local.as_domain()?)?;
    let mut failures = Vec::new();

    let embed = |w: u32| -> Result<u32> { space.mask_of(&sub.primes_of(w).into_iter().collect()) };
    let mut image = PointSet::empty();
    for w in 0..sub.point_count() {
        image.insert(embed(w)?);
    }
    let bijection = image == open && image.len() == sub.point_count();
    if !bijection {
        failures.push(format!("points of M_1(A_a) map onto {:?}, not D_1(a)", space.point_labels(image)));
    }

    let mut topology = true;
    for t in 0..space.point_count() {
        let b = space.element_with_support(t);
        let mut mapped = PointSet::empty();
        for w in sub.basic_open_of(b)?.points() {
            mapped.insert(embed(w)?);
        }
        if mapped != open.intersection(space.basic_open(t)) {
            topology = false;
            failures.push(format!("D({b}) in M_1(A_a) does not match D_1({a}) n D_1({b})"));
        }
    }

    let mut sections = sub.domain() == &local.as_domain()?;
    for w in 0..sub.point_count() {
        let z = embed(w)?;
        if sub.stalk(w).surviving_max != space.stalk(z).surviving_max {
            sections = false;
            failures.push(format!("stalks at {} differ", space.label(z)));
        }
    }

    let passed = bijection && topology && sections;
    Ok(OpenImmersionReport { element: a.to_string(), bijection, topology, sections, passed, failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecPoint {
    Zero,
    Max(PrimeIndex),
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecPoint::Zero => write!(f, "(0)"),
            SpecPoint::Max(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecEmbedding {
    pub table: Vec<(SpecPoint, u32)>,
    pub image_is_small_points: bool,
    pub preimages_match: bool,
    pub open_onto_image: bool,
    pub failures: Vec<String>,
}

impl SpecEmbedding {
    pub fn passed(&self) -> bool {
        self.image_is_small_points && self.preimages_match && self.open_onto_image
    }
}

/// The map `Spec(A) -> M_1(A)` sending `(0)` to the generic point and `p` to `{p}`.
pub fn spec_embedding(space: &FiniteSpace) -> Result<SpecEmbedding> {
    let mut spec = vec![SpecPoint::Zero];
    spec.extend(space.max().iter().cloned().map(SpecPoint::Max));
    let f = |p: &SpecPoint| -> Result<u32> {
        match p {
            SpecPoint::Zero => Ok(0),
            SpecPoint::Max(q) => space.mask_of(&BTreeSet::from([q.clone()])),
        }
    };
    let table: Vec<(SpecPoint, u32)> = spec.iter().map(|p| Ok((p.clone(), f(p)?))).collect::<Result<_>>()?;
    let mut failures = Vec::new();

    let mut image = PointSet::empty();
    for (_, z) in &table {
        image.insert(*z);
    }
    let small = PointSet((0..space.point_count()).filter(|z| z.count_ones() <= 1).fold(0, |acc, z| acc | 1 << z));
    let image_is_small_points = image == small && image.len() as usize == table.len();
    if !image_is_small_points {
        failures.push("image is not the set of points with at most one zero".into());
    }

    let mut preimages_match = true;
    let mut open_onto_image = true;
    for t in 0..space.point_count() {
        let a = space.element_with_support(t);
        let factors = space.domain().factor_principal(a)?;
        // D(a) in Spec(A): primes not containing a.
        let d_spec: Vec<&SpecPoint> = spec
            .iter()
            .filter(|p| match p {
                SpecPoint::Zero => !a.is_zero(),
                SpecPoint::Max(q) => factors.exponent(q) == 0,
            })
            .collect();
        let open = space.basic_open_of(a)?;
        let pre: Vec<&SpecPoint> = table.iter().filter(|(_, z)| open.contains(*z)).map(|(p, _)| p).collect();
        if pre != d_spec {
            preimages_match = false;
            failures.push(format!("preimage of D_1({a}) is not D({a})"));
        }
        let mut forward = PointSet::empty();
        for p in &d_spec {
            forward.insert(f(p)?);
        }
        if forward != open.intersection(image) {
            open_onto_image = false;
            failures.push(format!("image of D({a}) is not D_1({a}) n image"));
        }
    }
    Ok(SpecEmbedding { table, image_is_small_points, preimages_match, open_onto_image, failures })
}
