//! Unique factorization monoids with trivial unit group.
//!
//! Elements are always stored factored, as finitely supported exponent
//! vectors over prime keys. Which primes exist, and in what canonical order,
//! is the business of a [`MonoidDescriptor`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::domains::{DomainDescriptor, FpPoly, QuadIdeal};
use crate::error::{Error, Result};

/// Key identifying a prime element of a monoid.
///
/// Keys of one monoid always share a variant, and the derived order inside a
/// variant is the canonical prime order: numeric for integers, index order
/// for free generators, norm-then-HNF for quadratic ideals, degree-then-
/// coefficients for polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeIndex {
    /// A rational prime `p`, or the ideal `(p)` of `Z`.
    Rational(u64),
    /// The `i`-th generator of a free monoid, 1-based.
    Free(u32),
    /// A prime ideal of a quadratic order.
    Quad(QuadIdeal),
    /// A monic irreducible of `F_p[x]`.
    Poly(FpPoly),
}

impl PrimeIndex {
    /// Absolute norm of the prime, when the monoid has one.
    pub fn norm(&self) -> Option<BigUint> {
        match self {
            PrimeIndex::Rational(p) => Some(BigUint::from(*p)),
            PrimeIndex::Free(_) => None,
            PrimeIndex::Quad(q) => Some(BigUint::from(q.norm())),
            PrimeIndex::Poly(f) => Some(BigUint::from(f.modulus()).pow(f.degree().unwrap_or(0) as u32)),
        }
    }
}

impl fmt::Display for PrimeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIndex::Rational(p) => write!(f, "{p}"),
            PrimeIndex::Free(i) => write!(f, "g{i}"),
            PrimeIndex::Quad(q) => write!(f, "{}", q.prime_label()),
            PrimeIndex::Poly(p) => write!(f, "({p})"),
        }
    }
}

/// `a = prod p^{n_p}`, with every stored exponent positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonoidElement {
    exps: BTreeMap<PrimeIndex, u32>,
}

impl MonoidElement {
    pub fn one() -> Self {
        MonoidElement::default()
    }

    pub fn prime(p: PrimeIndex) -> Self {
        MonoidElement::prime_power(p, 1)
    }

    pub fn prime_power(p: PrimeIndex, k: u32) -> Self {
        MonoidElement::from_pairs([(p, k)])
    }

    /// Build from `(prime, exponent)` pairs; zero exponents are dropped and
    /// repeated primes accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (PrimeIndex, u32)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (p, k) in pairs {
            if k > 0 {
                *exps.entry(p).or_insert(0) += k;
            }
        }
        MonoidElement { exps }
    }

    /// Positive integer `n >= 1` as an element of `Z+`.
    pub fn from_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(MonoidElement::from_pairs(
            crate::numtheory::factor_u64(n).into_iter().map(|(p, e)| (PrimeIndex::Rational(p), e)),
        ))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, p: &PrimeIndex) -> u32 {
        self.exps.get(p).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<PrimeIndex, u32> {
        &self.exps
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeIndex> {
        self.exps.keys()
    }

    /// Number of prime factors counted with multiplicity.
    pub fn lambda(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn mul(&self, other: &MonoidElement) -> MonoidElement {
        let mut exps = self.exps.clone();
        for (p, k) in &other.exps {
            *exps.entry(p.clone()).or_insert(0) += k;
        }
        MonoidElement { exps }
    }

    pub fn pow(&self, k: u32) -> MonoidElement {
        MonoidElement::from_pairs(self.exps.iter().map(|(p, e)| (p.clone(), e * k)))
    }

    pub fn divides(&self, a: &MonoidElement) -> bool {
        self.exps.iter().all(|(p, k)| a.exponent(p) >= *k)
    }

    /// `d^{-1} a` for a divisor `d = self`.
    pub fn quotient(&self, a: &MonoidElement) -> Result<MonoidElement> {
        if !self.divides(a) {
            return Err(Error::NotADivisor { divisor: self.to_string(), dividend: a.to_string() });
        }
        Ok(MonoidElement::from_pairs(a.exps.iter().map(|(p, k)| (p.clone(), k - self.exponent(p)))))
    }

    pub fn coprime(&self, other: &MonoidElement) -> bool {
        self.exps.keys().all(|p| !other.exps.contains_key(p))
    }

    pub fn gcd(&self, other: &MonoidElement) -> MonoidElement {
        MonoidElement::from_pairs(self.exps.iter().map(|(p, k)| (p.clone(), (*k).min(other.exponent(p)))))
    }

    /// The part of `self` supported on the primes of `other`.
    pub fn restrict_to_support_of(&self, other: &MonoidElement) -> MonoidElement {
        MonoidElement::from_pairs(
            self.exps.iter().filter(|(p, _)| other.exps.contains_key(*p)).map(|(p, k)| (p.clone(), *k)),
        )
    }

    pub fn restrict_to(&self, primes: &[PrimeIndex]) -> MonoidElement {
        MonoidElement::from_pairs(self.exps.iter().filter(|(p, _)| primes.contains(p)).map(|(p, k)| (p.clone(), *k)))
    }

    /// Every divisor exactly once; there are `prod (n_p + 1)` of them.
    pub fn divisors(&self) -> Vec<MonoidElement> {
        let mut out = vec![MonoidElement::one()];
        for (p, &k) in &self.exps {
            let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
            for d in &out {
                for j in 0..=k {
                    let mut e = d.exps.clone();
                    if j > 0 {
                        e.insert(p.clone(), j);
                    }
                    next.push(MonoidElement { exps: e });
                }
            }
            out = next;
        }
        out
    }

    /// Every factorization `a = d * (a/d)`, as pairs `(d, a/d)`.
    pub fn divisor_pairs(&self) -> Vec<(MonoidElement, MonoidElement)> {
        let mut out = vec![(MonoidElement::one(), MonoidElement::one())];
        for (p, &k) in &self.exps {
            let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
            for (d, r) in &out {
                for j in 0..=k {
                    let (mut de, mut re) = (d.exps.clone(), r.exps.clone());
                    if j > 0 {
                        de.insert(p.clone(), j);
                    }
                    if j < k {
                        re.insert(p.clone(), k - j);
                    }
                    next.push((MonoidElement { exps: de }, MonoidElement { exps: re }));
                }
            }
            out = next;
        }
        out
    }

    /// Exponent vector over an ordered window of primes.
    pub fn exponent_vector(&self, window: &[PrimeIndex]) -> Vec<u32> {
        window.iter().map(|p| self.exponent(p)).collect()
    }

    pub fn from_exponent_vector(window: &[PrimeIndex], v: &[u32]) -> MonoidElement {
        MonoidElement::from_pairs(window.iter().cloned().zip(v.iter().copied()))
    }

    pub fn supported_in(&self, window: &[PrimeIndex]) -> bool {
        self.exps.keys().all(|p| window.contains(p))
    }

    /// Integer value of an element of `Z+`.
    pub fn to_biguint(&self) -> Option<BigUint> {
        let mut acc = BigUint::one();
        for (p, k) in &self.exps {
            match p {
                PrimeIndex::Rational(p) => acc *= BigUint::from(*p).pow(*k),
                _ => return None,
            }
        }
        Some(acc)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.pad("1");
        }
        let parts: Vec<String> =
            self.exps.iter().map(|(p, k)| if *k == 1 { p.to_string() } else { format!("{p}^{k}") }).collect();
        f.pad(&parts.join(" * "))
    }
}

impl Serialize for MonoidElement {
    /// `{"exponents": {"2": 3, "5": 1}}`
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Exps<'a>(&'a BTreeMap<PrimeIndex, u32>);
        impl Serialize for Exps<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (p, k) in self.0 {
                    m.serialize_entry(&p.to_string(), k)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("exponents", &Exps(&self.exps))?;
        m.end()
    }
}

/// All exponent vectors over `window` with total degree at most `depth`,
/// ordered by total degree and then descending lexicographically, so that
/// `U({2,3}, 2) = [1, 2, 3, 4, 6, 9]`.
pub fn exponent_vectors(width: usize, depth: u32) -> Vec<Vec<u32>> {
    fn rec(width: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == width {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(width, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(width, depth, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let (la, lb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        la.cmp(&lb).then_with(|| b.cmp(a))
    });
    out
}

/// The finite test universe `U(window, depth)`.
pub fn enumerate_universe(window: &[PrimeIndex], depth: u32) -> Vec<MonoidElement> {
    exponent_vectors(window.len(), depth).into_iter().map(|v| MonoidElement::from_exponent_vector(window, &v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidKind {
    PositiveIntegers,
    IdealMonoid(DomainDescriptor),
    FreeFinite(u32),
}

/// Which monoid a function or element lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidDescriptor {
    kind: MonoidKind,
}

impl MonoidDescriptor {
    pub fn positive_integers() -> Self {
        MonoidDescriptor { kind: MonoidKind::PositiveIntegers }
    }

    pub fn free(n: u32) -> Self {
        MonoidDescriptor { kind: MonoidKind::FreeFinite(n) }
    }

    pub fn ideals(domain: DomainDescriptor) -> Self {
        MonoidDescriptor { kind: MonoidKind::IdealMonoid(domain) }
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.kind
    }

    pub fn domain(&self) -> Option<&DomainDescriptor> {
        match &self.kind {
            MonoidKind::IdealMonoid(d) => Some(d),
            _ => None,
        }
    }

    /// The complete prime list, when the monoid has finitely many primes.
    pub fn finite_primes(&self) -> Option<Vec<PrimeIndex>> {
        match &self.kind {
            MonoidKind::PositiveIntegers => None,
            MonoidKind::FreeFinite(n) => Some((1..=*n).map(PrimeIndex::Free).collect()),
            MonoidKind::IdealMonoid(d) => d.max_ideals(),
        }
    }

    pub fn has_norm(&self) -> bool {
        !matches!(self.kind, MonoidKind::FreeFinite(_))
    }

    /// Primes in canonical order. Infinite for `Z+` and global domains.
    pub fn primes(&self) -> PrimeStream {
        PrimeStream { monoid: self.clone(), buffer: Vec::new(), pos: 0, bound: 0, done: false }
    }

    /// The first `n` primes in canonical order (fewer if the monoid runs out).
    pub fn first_primes(&self, n: usize) -> Vec<PrimeIndex> {
        self.primes().take(n).collect()
    }

    /// Primes of norm at most `bound`, in canonical order.
    pub fn primes_up_to_norm(&self, bound: u64) -> Vec<PrimeIndex> {
        match &self.kind {
            MonoidKind::PositiveIntegers => {
                crate::numtheory::primes_up_to(bound).into_iter().map(PrimeIndex::Rational).collect()
            }
            MonoidKind::FreeFinite(n) => (1..=*n).map(PrimeIndex::Free).collect(),
            MonoidKind::IdealMonoid(d) => d.primes_up_to_norm(bound),
        }
    }

    pub fn contains(&self, a: &MonoidElement) -> bool {
        a.support().all(|p| self.contains_prime(p))
    }

    pub fn contains_prime(&self, p: &PrimeIndex) -> bool {
        match (&self.kind, p) {
            (MonoidKind::PositiveIntegers, PrimeIndex::Rational(q)) => crate::numtheory::is_prime(*q),
            (MonoidKind::FreeFinite(n), PrimeIndex::Free(i)) => (1..=*n).contains(i),
            (MonoidKind::IdealMonoid(d), p) => d.is_max_ideal(p),
            _ => false,
        }
    }

    /// Parse an element: an integer or factored text for `Z+`, prime labels
    /// like `g1^2 * g3` for free monoids, and for ideal monoids either prime
    /// labels (`P2 * P3+`) or a domain element whose principal ideal is used.
    pub fn parse_element(&self, s: &str) -> Result<MonoidElement> {
        let s = s.trim();
        if s == "1" {
            return Ok(MonoidElement::one());
        }
        match &self.kind {
            MonoidKind::PositiveIntegers => {
                if let Ok(n) = s.parse::<u64>() {
                    return MonoidElement::from_u64(n);
                }
                self.parse_factored(s, |t| {
                    let p: u64 = t.parse().map_err(|_| Error::Parse(format!("bad prime {t:?}")))?;
                    Ok(PrimeIndex::Rational(p))
                })
            }
            MonoidKind::FreeFinite(_) => self.parse_factored(s, |t| {
                let i: u32 = t
                    .strip_prefix('g')
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad generator {t:?}; expected g<i>")))?;
                Ok(PrimeIndex::Free(i))
            }),
            MonoidKind::IdealMonoid(d) => {
                if s.starts_with('P') {
                    self.parse_factored(s, |t| d.parse_prime_label(t))
                } else {
                    let x = d.parse_element(s)?;
                    d.factor_principal(&x)
                }
            }
        }
    }

    fn parse_factored(&self, s: &str, prime: impl Fn(&str) -> Result<PrimeIndex>) -> Result<MonoidElement> {
        let mut pairs = Vec::new();
        for part in s.split('*').map(str::trim).filter(|t| !t.is_empty()) {
            let (base, exp) = match part.rsplit_once('^') {
                Some((b, e)) => {
                    (b.trim(), e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?)
                }
                None => (part, 1),
            };
            let p = prime(base)?;
            if !self.contains_prime(&p) {
                return Err(Error::Parse(format!("{base} is not a prime of {self}")));
            }
            pairs.push((p, exp));
        }
        Ok(MonoidElement::from_pairs(pairs))
    }
}

impl fmt::Display for MonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MonoidKind::PositiveIntegers => write!(f, "Z+"),
            MonoidKind::FreeFinite(n) => write!(f, "free({n})"),
            MonoidKind::IdealMonoid(d) => write!(f, "I({d})"),
        }
    }
}

impl FromStr for MonoidDescriptor {
    type Err = Error;

    /// `Z+`, `free(3)` or `free:3`, and `I(<domain>)` or a bare domain for its ideals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z+") {
            return Ok(MonoidDescriptor::positive_integers());
        }
        let free = s.strip_prefix("free(").and_then(|r| r.strip_suffix(')')).or_else(|| s.strip_prefix("free:"));
        if let Some(n) = free {
            return n.parse().map(MonoidDescriptor::free).map_err(|_| Error::Parse(format!("bad rank in {s:?}")));
        }
        let domain = s.strip_prefix("I(").and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        Ok(MonoidDescriptor::ideals(domain.parse()?))
    }
}

/// Lazily enumerates primes in canonical order by doubling a norm bound.
pub struct PrimeStream {
    monoid: MonoidDescriptor,
    buffer: Vec<PrimeIndex>,
    pos: usize,
    bound: u64,
    done: bool,
}

impl Iterator for PrimeStream {
    type Item = PrimeIndex;

    fn next(&mut self) -> Option<PrimeIndex> {
        loop {
            if self.pos < self.buffer.len() {
                self.pos += 1;
                return Some(self.buffer[self.pos - 1].clone());
            }
            if self.done {
                return None;
            }
            if let Some(all) = self.monoid.finite_primes() {
                self.buffer = all;
                self.done = true;
                continue;
            }
            let lo = self.bound;
            self.bound = if lo == 0 { 16 } else { lo * 2 };
            let norm = |p: &PrimeIndex| p.norm().expect("infinite monoids have norms");
            self.buffer =
                self.monoid.primes_up_to_norm(self.bound).into_iter().filter(|p| norm(p) > BigUint::from(lo)).collect();
            self.pos = 0;
        }
    }
}
