//! The finite space `M_1(A)` of a semi-local Dedekind domain.
//!
//! With `Max(A) = {p_1, ..., p_n}` a point is a subset of `Max(A)`, stored
//! as an `n`-bit mask, and a set of points is a `2^n`-bit mask. Every subset
//! `T` of `Max(A)` is the support of some element; one such element is kept
//! per `T` and all operators below are computed from their factorizations.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use super::{support_of, ClosedSetRepr, ZeroSetPoint};
use crate::domains::{DomainDescriptor, DomainElement};
use crate::error::{Error, Result};
use crate::monoid::{MonoidElement, PrimeIndex};

/// Largest `#Max(A)` handled; `2^7` points fit in a `u128`.
pub const MAX_PRIMES: usize = 7;
/// Largest `#Max(A)` for the exhaustive closed-set enumerations.
pub const ENUMERATION_LIMIT: usize = 4;

/// A set of points, bit `z` standing for the point with zero mask `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u128);

impl PointSet {
    pub fn empty() -> Self {
        PointSet(0)
    }

    pub fn singleton(z: u32) -> Self {
        PointSet(1 << z)
    }

    pub fn contains(self, z: u32) -> bool {
        self.0 >> z & 1 == 1
    }

    pub fn insert(&mut self, z: u32) {
        self.0 |= 1 << z;
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn points(self) -> impl Iterator<Item = u32> {
        (0..128).filter(move |&z| self.contains(z))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedSetCensus {
    pub primes: usize,
    pub via_generators: usize,
    pub via_up_sets: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub t0: bool,
    pub unique_generic_points: bool,
    pub quasi_compact_basis: bool,
    pub basis_closed_under_intersection: bool,
    pub spectral: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct FiniteSpace {
    domain: DomainDescriptor,
    max: Vec<PrimeIndex>,
    /// `elements[t]` generates an ideal with support exactly `t`.
    elements: Vec<DomainElement>,
}

impl FiniteSpace {
    pub fn new(domain: &DomainDescriptor) -> Result<FiniteSpace> {
        let mut max = domain
            .max_ideals()
            .ok_or_else(|| Error::Unsupported(format!("{domain} has infinitely many maximal ideals")))?;
        if max.len() > MAX_PRIMES {
            return Err(Error::Unsupported(format!("at most {MAX_PRIMES} maximal ideals, {domain} has {}", max.len())));
        }
        max.sort_by_key(|p| (p.norm(), p.clone()));
        let mut space = FiniteSpace { domain: domain.clone(), max, elements: Vec::new() };
        for t in 0..space.point_count() {
            let ideal = MonoidElement::from_pairs(space.primes_of(t).into_iter().map(|p| (p, 1)));
            let a = domain.element_for(&ideal)?;
            if space.support_mask(&a)? != t {
                return Err(Error::Verification(format!("{a} does not have support {}", space.label(t))));
            }
            space.elements.push(a);
        }
        Ok(space)
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    /// `Max(A)` in canonical norm order; bit `i` of a mask is `max()[i]`.
    pub fn max(&self) -> &[PrimeIndex] {
        &self.max
    }

    pub fn n(&self) -> usize {
        self.max.len()
    }

    pub fn point_count(&self) -> u32 {
        1 << self.n()
    }

    pub fn all_points(&self) -> PointSet {
        PointSet(if self.point_count() == 128 { u128::MAX } else { (1u128 << self.point_count()) - 1 })
    }

    /// The mask of `Max(A)`, which is the point `[e]`.
    pub fn full_mask(&self) -> u32 {
        self.point_count() - 1
    }

    pub fn primes_of(&self, mask: u32) -> Vec<PrimeIndex> {
        self.max.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect()
    }

    pub fn mask_of(&self, primes: &BTreeSet<PrimeIndex>) -> Result<u32> {
        let mut mask = 0;
        for p in primes {
            let i = self
                .max
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| Error::InvalidDomain(format!("{p} is not a maximal ideal of {}", self.domain)))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub fn support_mask(&self, a: &DomainElement) -> Result<u32> {
        self.mask_of(&support_of(&self.domain, a)?)
    }

    /// An element whose support is exactly `mask`.
    pub fn element_with_support(&self, mask: u32) -> &DomainElement {
        &self.elements[mask as usize]
    }

    pub fn point(&self, mask: u32) -> ZeroSetPoint {
        ZeroSetPoint::new(&self.domain, self.primes_of(mask)).expect("primes of Max")
    }

    pub fn mask_of_point(&self, x: &ZeroSetPoint) -> Result<u32> {
        match &x.zeros {
            super::PrimeSet::Finite(s) => self.mask_of(s),
            super::PrimeSet::All => Ok(self.full_mask()),
        }
    }

    pub fn label(&self, mask: u32) -> String {
        let labels: Vec<String> = self.primes_of(mask).iter().map(|p| p.to_string()).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// `D_1(a)` for `a` with the given support: the points avoiding it.
    pub fn basic_open(&self, support: u32) -> PointSet {
        self.filter(|z| z & support == 0)
    }

    pub fn basic_open_of(&self, a: &DomainElement) -> Result<PointSet> {
        Ok(self.basic_open(self.support_mask(a)?))
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> PointSet {
        let mut out = PointSet::empty();
        for z in (0..self.point_count()).filter(|&z| keep(z)) {
            out.insert(z);
        }
        out
    }

    /// `V(S)` for elements with the given supports.
    pub fn vanishing(&self, supports: &[u32]) -> PointSet {
        self.filter(|z| supports.iter().all(|t| z & t != 0))
    }

    pub fn closed_of(&self, c: &ClosedSetRepr) -> Result<PointSet> {
        let supports = c.generators.iter().map(|g| self.mask_of(g)).collect::<Result<Vec<_>>>()?;
        Ok(self.vanishing(&supports))
    }

    /// `I(Y)` up to associates, as the supports of its elements.
    pub fn ideal_of(&self, y: PointSet) -> Vec<u32> {
        (0..self.point_count()).filter(|&t| y.points().all(|z| z & t != 0)).collect()
    }

    /// `V(I(Y))`.
    pub fn closure(&self, y: PointSet) -> PointSet {
        self.vanishing(&self.ideal_of(y))
    }

    pub fn closure_of_point(&self, z: u32) -> PointSet {
        self.closure(PointSet::singleton(z))
    }

    /// `y` lies in the closure of `x`.
    pub fn specializes(&self, x: u32, y: u32) -> bool {
        self.closure_of_point(x).contains(y)
    }

    fn require_enumerable(&self) -> Result<()> {
        if self.n() > ENUMERATION_LIMIT {
            return Err(Error::Unsupported(format!(
                "closed-set enumeration is limited to {ENUMERATION_LIMIT} maximal ideals"
            )));
        }
        Ok(())
    }

    /// Every `V(S)`, running over all families of supports.
    pub fn closed_sets(&self) -> Result<Vec<PointSet>> {
        self.require_enumerable()?;
        let supports = self.point_count();
        let mut out = BTreeSet::new();
        for family in 0..(1u64 << supports) {
            let gens: Vec<u32> = (0..supports).filter(|t| family >> t & 1 == 1).collect();
            out.insert(self.vanishing(&gens));
        }
        Ok(out.into_iter().collect())
    }

    /// Every family of points closed under taking supersets of zero sets.
    pub fn up_closed_families(&self) -> Result<Vec<PointSet>> {
        self.require_enumerable()?;
        let n = self.point_count();
        let mut out = Vec::new();
        for bits in 0..(1u64 << n) {
            let fam = PointSet(bits as u128);
            let up = fam.points().all(|z| (0..n).filter(|w| w & z == z).all(|w| fam.contains(w)));
            if up {
                out.push(fam);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn closed_set_census(&self) -> Result<ClosedSetCensus> {
        let a = self.closed_sets()?;
        let b = self.up_closed_families()?;
        Ok(ClosedSetCensus { primes: self.n(), via_generators: a.len(), via_up_sets: b.len(), agree: a == b })
    }

    /// Nonempty closed sets that are not a union of two smaller closed sets.
    pub fn irreducible_closed_sets(&self) -> Result<Vec<PointSet>> {
        let closed = self.closed_sets()?;
        Ok(closed
            .iter()
            .copied()
            .filter(|&c| {
                !c.is_empty() && {
                    let smaller: Vec<PointSet> = closed.iter().copied().filter(|&d| d != c && d.is_subset(c)).collect();
                    !smaller.iter().any(|&d| smaller.iter().any(|&e| d.union(e) == c))
                }
            })
            .collect())
    }

    /// Whether `I(C)` is prime: no units, and `ab in I(C)` forces `a` or `b` in it.
    pub fn ideal_is_prime(&self, c: PointSet) -> bool {
        let ideal: BTreeSet<u32> = self.ideal_of(c).into_iter().collect();
        if ideal.contains(&0) {
            return false;
        }
        let n = self.point_count();
        (0..n).all(|s| (0..n).all(|t| !ideal.contains(&(s | t)) || ideal.contains(&s) || ideal.contains(&t)))
    }

    /// Krull dimension: the longest strictly decreasing chain of irreducible closed sets.
    pub fn dimension(&self) -> Result<usize> {
        let mut irr = self.irreducible_closed_sets()?;
        irr.sort_by_key(|c| c.len());
        let mut longest = vec![0usize; irr.len()];
        for i in 0..irr.len() {
            for j in 0..i {
                if irr[j] != irr[i] && irr[j].is_subset(irr[i]) {
                    longest[i] = longest[i].max(longest[j] + 1);
                }
            }
        }
        Ok(longest.into_iter().max().unwrap_or(0))
    }

    /// The chain `X = V(P_0) > V(P_1) > ... > V(P_n)` with `P_m` the union
    /// of the first `m` maximal ideals. Each member is checked to be
    /// irreducible, and `I(V(P_m)) = P_m`.
    pub fn witness_chain(&self) -> Result<Vec<PointSet>> {
        let n = self.point_count();
        let mut chain = Vec::new();
        for m in 0..=self.n() {
            let head = (1u32 << m) - 1;
            let p_m: Vec<u32> = (0..n).filter(|t| t & head != 0).collect();
            let z = self.vanishing(&p_m);
            if self.ideal_of(z) != p_m {
                return Err(Error::Verification(format!("I(V(P_{m})) differs from P_{m}")));
            }
            if !self.ideal_is_prime(z) || self.generic_points(z).len() != 1 {
                return Err(Error::Verification(format!("V(P_{m}) is not irreducible")));
            }
            if let Some(prev) = chain.last() {
                if z == *prev || !z.is_subset(*prev) {
                    return Err(Error::Verification(format!("V(P_{m}) is not strictly smaller")));
                }
            }
            chain.push(z);
        }
        Ok(chain)
    }

    /// Points of `c` whose closure is all of `c`.
    pub fn generic_points(&self, c: PointSet) -> Vec<u32> {
        c.points().filter(|&z| self.closure_of_point(z) == c).collect()
    }

    pub fn closed_points(&self) -> Vec<u32> {
        (0..self.point_count()).filter(|&z| self.closure_of_point(z) == PointSet::singleton(z)).collect()
    }

    /// `[e]` is a closed point.
    pub fn closed_point_check(&self) -> bool {
        let e = self.full_mask();
        self.closure_of_point(e) == PointSet::singleton(e)
    }

    /// An element `a` with exactly one of the two points in `D_1(a)`.
    pub fn separating_element(&self, x: u32, y: u32) -> Option<&DomainElement> {
        let mut supports: Vec<u32> = (0..self.point_count()).collect();
        supports.sort_by_key(|t| (t.count_ones(), *t));
        supports
            .into_iter()
            .find(|&t| self.basic_open(t).contains(x) != self.basic_open(t).contains(y))
            .map(|t| self.element_with_support(t))
    }

    pub fn spectral_report(&self) -> Result<SpectralReport> {
        let n = self.point_count();
        let mut failures = Vec::new();

        let mut t0 = true;
        for x in 0..n {
            for y in x + 1..n {
                if self.separating_element(x, y).is_none() {
                    t0 = false;
                    failures.push(format!("{} and {} are not separated", self.label(x), self.label(y)));
                }
            }
        }

        let mut unique_generic_points = true;
        for c in self.irreducible_closed_sets()? {
            let g = self.generic_points(c);
            if g.len() != 1 {
                unique_generic_points = false;
                failures.push(format!("irreducible closed set with {} generic points", g.len()));
            }
        }

        let mut basis_closed_under_intersection = true;
        for s in 0..n {
            for t in 0..n {
                let a = self.element_with_support(s);
                let b = self.element_with_support(t);
                let ab = a.mul(b)?;
                if self.basic_open(s).intersection(self.basic_open(t)) != self.basic_open_of(&ab)? {
                    basis_closed_under_intersection = false;
                    failures.push(format!("D({a}) n D({b}) != D({ab})"));
                }
            }
        }

        // A finite space is quasi-compact; the content is that each basic
        // open admits a singleton subcover from any basic cover.
        self.require_enumerable()?;
        let mut quasi_compact_basis = true;
        for x in 0..n {
            let target = self.basic_open(x);
            for family in 1..(1u64 << n) {
                let opens: Vec<PointSet> =
                    (0..n).filter(|t| family >> t & 1 == 1).map(|t| self.basic_open(t)).collect();
                let cover = opens.iter().fold(PointSet::empty(), |acc, &o| acc.union(o));
                if target.is_subset(cover) && !opens.iter().any(|&o| target.is_subset(o)) {
                    quasi_compact_basis = false;
                    failures.push(format!("D_1 of support {} has no singleton subcover", self.label(x)));
                }
            }
        }

        let spectral = t0 && unique_generic_points && quasi_compact_basis && basis_closed_under_intersection;
        Ok(SpectralReport {
            t0,
            unique_generic_points,
            quasi_compact_basis,
            basis_closed_under_intersection,
            spectral,
            failures,
        })
    }

    /// Covering pairs `(x, y)` of the specialization order, `y` in the closure of `x`.
    pub fn covering_relations(&self) -> Vec<(u32, u32)> {
        let n = self.point_count();
        let closures: Vec<PointSet> = (0..n).map(|z| self.closure_of_point(z)).collect();
        let mut out = Vec::new();
        for x in 0..n {
            for y in closures[x as usize].points().filter(|&y| y != x) {
                let between =
                    closures[x as usize].points().any(|z| z != x && z != y && closures[z as usize].contains(y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Graphviz source of the specialization poset.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph specialization {\n  rankdir=BT;\n");
        for z in 0..self.point_count() {
            s.push_str(&format!("  p{z} [label=\"{}\"];\n", self.label(z)));
        }
        for (x, y) in self.covering_relations() {
            s.push_str(&format!("  p{x} -> p{y};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn point_labels(&self, set: PointSet) -> Vec<String> {
        set.points().map(|z| self.label(z)).collect()
    }

    /// The closed-set lattice as JSON.
    pub fn closed_sets_json(&self) -> Result<Value> {
        let sets: Vec<Value> = self.closed_sets()?.into_iter().map(|c| json!(self.point_labels(c))).collect();
        Ok(json!({
            "domain": self.domain.to_string(),
            "points": self.point_labels(self.all_points()),
            "closed_sets": sets,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(primes: &[u64]) -> FiniteSpace {
        FiniteSpace::new(&DomainDescriptor::z_localized(primes).unwrap()).unwrap()
    }

    #[test]
    fn global_domains_are_rejected() {
        assert!(FiniteSpace::new(&DomainDescriptor::integers()).is_err());
    }

    #[test]
    fn dvr_is_a_two_point_chain() {
        let x = space(&[5]);
        assert_eq!(x.point_count(), 2);
        assert_eq!(x.covering_relations(), vec![(0, 1)]);
        assert_eq!(x.closed_sets().unwrap().len(), 3);
        assert_eq!(x.dimension().unwrap(), 1);
    }

    #[test]
    fn field_is_one_point() {
        let k = FiniteSpace::new(&DomainDescriptor::z_localized(&[]).unwrap()).unwrap();
        assert_eq!(k.point_count(), 1);
        assert_eq!(k.dimension().unwrap(), 0);
        assert!(k.closed_point_check());
    }

    #[test]
    fn six_vanishes_where_two_or_three_do() {
        let x = space(&[2, 3]);
        let six = x.vanishing(&[x.support_mask(&DomainElement::Int(6)).unwrap()]);
        assert_eq!(x.point_labels(six), vec!["{2}", "{3}", "{2,3}"]);
    }

    #[test]
    fn closure_is_superset_order() {
        let x = space(&[2, 3, 5]);
        for z in 0..8 {
            for w in 0..8 {
                assert_eq!(x.specializes(z, w), w & z == z);
            }
        }
        assert_eq!(x.generic_points(x.all_points()), vec![0]);
        assert_eq!(x.closed_points(), vec![7]);
    }

    #[test]
    fn separating_two_from_generic() {
        let x = space(&[2, 3]);
        assert_eq!(x.separating_element(1, 0), Some(&DomainElement::Int(2)));
    }

    #[test]
    fn dot_lists_covering_edges() {
        let dot = space(&[2, 3]).to_dot();
        assert_eq!(dot.matches("->").count(), 4);
    }
}
